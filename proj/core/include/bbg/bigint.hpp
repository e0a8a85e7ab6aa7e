#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bbg {

using Bigint = boost::multiprecision::cpp_int;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;
using boost::multiprecision::powm;

/// Number of significant bits (0 for 0).
std::size_t bit_length(const Bigint& x);

/// Fixed-width big-endian encoding of a non-negative integer; throws if it
/// does not fit.
void encode_fixed(const Bigint& x, std::size_t width, std::uint8_t* out);
Bigint decode_fixed(const std::uint8_t* in, std::size_t width);

/// Inverse of a mod m (m > 1, gcd(a, m) = 1); throws when not invertible.
Bigint mod_inverse(const Bigint& a, const Bigint& m);

Bigint mod_reduce(const Bigint& a, const Bigint& m);  // result in [0, m)

/// Deterministic RNG used across the library. All bounded draws are rejection
/// sampled from a mt19937_64 stream so sequences do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, n); n must be positive.
  std::size_t below(std::size_t n);

  bool coin() { return next() & 1u; }

  /// Uniform in [0, n); n must be positive.
  Bigint below_big(const Bigint& n);

  /// Independent stream derived from this one.
  Rng fork(std::uint64_t salt);

 private:
  std::mt19937_64 eng_;
};

}  // namespace bbg
