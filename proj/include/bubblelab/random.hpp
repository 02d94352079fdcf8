#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bubblelab {

/// Seedable generator whose output stream is fully specified: the engine is
/// std::mt19937_64 (identical on every conforming standard library), uniforms
/// take the top 53 bits, and normals use the polar Box-Muller transform.
/// std::normal_distribution is avoided because its algorithm is unspecified.
class Rng {
public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/u53/polar-box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bubblelab
