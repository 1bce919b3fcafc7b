#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "gaugepack/types.hpp"

namespace gaugepack {

// Counter-based substream generator. A stream is a pure function of
// (seed, stream index), so trial i produces the same draws no matter which
// worker runs it or in what order. That is what makes parallel Monte Carlo
// results bitwise reproducible for any thread count.
//
// Core transform is SplitMix64 (Steele et al.), which is well distributed for
// this use and has a trivially seekable state.
class SubStream {
 public:
  SubStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : state_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL))) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform on (0, 1]; never returns 0 so log() is safe.
  double next_unit() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard real normal via Box-Muller (explicit so the stream is portable;
  // std::normal_distribution sequences are implementation-defined).
  double next_normal() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Circularly symmetric complex normal CN(0, 1).
  cplx next_cnormal() noexcept {
    const double s = std::numbers::sqrt2;
    return {next_normal() / s, next_normal() / s};
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) noexcept {
    // Multiply-shift rejection-free map; bias is < 2^-64 * n, negligible here.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline Mat random_cgaussian(SubStream& g, int rows, int cols) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = g.next_cnormal();
  return m;
}

}  // namespace gaugepack
