#include "bbg/bigint.hpp"

#include <stdexcept>

namespace bbg {

std::size_t bit_length(const Bigint& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(x) + 1;
}

void encode_fixed(const Bigint& x, std::size_t width, std::uint8_t* out) {
  if (x < 0) throw std::invalid_argument("encode_fixed: negative value");
  Bigint v = x;
  for (std::size_t i = 0; i < width; ++i) {
    out[width - 1 - i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  if (v != 0) throw std::invalid_argument("encode_fixed: value does not fit");
}

Bigint decode_fixed(const std::uint8_t* in, std::size_t width) {
  Bigint v = 0;
  for (std::size_t i = 0; i < width; ++i) {
    v <<= 8;
    v |= in[i];
  }
  return v;
}

Bigint mod_reduce(const Bigint& a, const Bigint& m) {
  Bigint r = a % m;
  if (r < 0) r += m;
  return r;
}

Bigint mod_inverse(const Bigint& a, const Bigint& m) {
  // extended Euclid
  Bigint r0 = m, r1 = mod_reduce(a, m);
  Bigint t0 = 0, t1 = 1;
  while (r1 != 0) {
    Bigint q = r0 / r1;
    Bigint r2 = r0 - q * r1;
    Bigint t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: not invertible");
  return mod_reduce(t0, m);
}

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  if (n == 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t v = next();
    if (v < limit) return static_cast<std::size_t>(v % n);
  }
}

Bigint Rng::below_big(const Bigint& n) {
  if (n <= 0) throw std::invalid_argument("Rng::below_big: empty range");
  const std::size_t bits = bit_length(n - 1);
  const std::size_t words = (bits + 63) / 64;
  for (;;) {
    Bigint v = 0;
    for (std::size_t i = 0; i < words; ++i) {
      v <<= 64;
      v |= Bigint(next());
    }
    if (bits % 64 != 0) v >>= (64 - bits % 64);
    if (v < n) return v;
  }
}

Rng Rng::fork(std::uint64_t salt) {
  // splitmix-style mixing of a fresh draw with the salt
  std::uint64_t z = next() + 0x9e3779b97f4a7c15ull + salt;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z = z ^ (z >> 31);
  return Rng(z);
}

}  // namespace bbg
