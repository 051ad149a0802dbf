#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace secular {

// PCG64 (XSL-RR 128/64) with Box-Muller normals. The stream is fixed by the
// seed and independent of the standard library in use.
class Pcg64 {
 public:
  explicit Pcg64(std::uint64_t seed, std::uint64_t stream = 0x5851f42d4c957f2dULL) {
    inc_ = (static_cast<u128>(stream) << 1u) | 1u;
    state_ = 0;
    step();
    state_ += seed;
    step();
  }

  std::uint64_t next() {
    u128 old = state_;
    step();
    auto xored = static_cast<std::uint64_t>(old >> 64u) ^ static_cast<std::uint64_t>(old);
    auto rot = static_cast<unsigned>(old >> 122u);
    return (xored >> rot) | (xored << ((-rot) & 63u));
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11u) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  using u128 = unsigned __int128;
  static constexpr u128 kMultiplier =
      (static_cast<u128>(0x2360ed051fc65da4ULL) << 64u) | 0x4385df649fccf645ULL;

  void step() { state_ = state_ * kMultiplier + inc_; }

  u128 state_{};
  u128 inc_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace secular
