#pragma once

// Counter-based random stream.
//
// Output k of a stream with key K is mix64(K + (k + 1)·γ) where γ is the
// 64-bit golden-ratio increment and mix64 is the SplitMix64 finalizer, so any
// element can be computed independently of the others. A stream derived for
// trial i of master seed s has key mix64(s ^ mix64(i·γ + c)). Uniform doubles
// take the top 53 bits; normal deviates use Box–Muller. The standard library
// distributions are avoided because their output differs between
// implementations.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace symqm {

class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  explicit constexpr CounterRng(std::uint64_t seed) : key_(mix64(seed)) {}

  /// Independent stream for (master_seed, index).
  static constexpr CounterRng stream(std::uint64_t master_seed, std::uint64_t index) {
    return CounterRng(master_seed ^ mix64(index * kGamma + 0xD1B54A32D192ED03ULL));
  }

  /// Child stream keyed by this stream's key and `index`; does not advance.
  constexpr CounterRng split(std::uint64_t index) const { return stream(key_, index); }

  constexpr std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate. Uses one Box–Muller pair per call.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [0, n), n ≥ 1, via rejection (no modulo bias).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t position() const { return counter_; }

  friend constexpr bool operator==(const CounterRng&, const CounterRng&) = default;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace symqm
