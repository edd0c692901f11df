#pragma once

#include <cstdint>
#include <random>

namespace twlab {

/// (master, stream_index) fully determines every draw of one generation call.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream_index = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Stream contract, fixed because golden outputs depend on it:
//   key    = splitmix64(master ^ splitmix64(stream_index + 0x9E3779B97F4A7C15))
//   engine = std::mt19937_64(key)
// Integers in [0, bound) use Lemire's multiply-shift with rejection; reals in
// [0, 1) take the top 53 bits. None of the <random> distributions are used,
// since their output is implementation-defined.
class Rng {
 public:
  explicit Rng(Seed seed);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 1).
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace twlab
