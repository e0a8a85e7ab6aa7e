#include "bbg/cyclic.hpp"

#include <stdexcept>

namespace bbg {

bool is_probable_prime(const Bigint& n, int rounds, std::uint64_t seed) {
  if (n < 2) return false;
  for (int small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    if (n == small) return true;
    if (n % small == 0) return false;
  }
  const auto [s, m] = split_two_part(n - 1);
  Rng rng(seed ^ static_cast<std::uint64_t>(n % Bigint(0x7fffffffffffffffull)));
  for (int round = 0; round < rounds; ++round) {
    const Bigint a = rng.below_big(n - 3) + 2;  // in [2, n-2]
    Bigint x = powm(a, m, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = powm(x, Bigint(2), n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

FactoredInteger::FactoredInteger(Bigint value, std::vector<std::pair<Bigint, unsigned>> factors)
    : value_(std::move(value)), factors_(std::move(factors)) {
  if (value_ < 1) throw std::invalid_argument("FactoredInteger: value must be >= 1");
  Bigint prod = 1;
  for (const auto& [prime, mult] : factors_) {
    if (mult == 0) throw std::invalid_argument("FactoredInteger: zero multiplicity");
    if (!is_probable_prime(prime))
      throw std::invalid_argument("FactoredInteger: listed factor is not prime");
    for (unsigned i = 0; i < mult; ++i) prod *= prime;
  }
  if (prod != value_)
    throw std::invalid_argument("FactoredInteger: incomplete factorization");
}

std::optional<FactoredInteger> FactoredInteger::trial_division(const Bigint& value,
                                                               std::uint64_t bound) {
  if (value < 1) throw std::invalid_argument("trial_division: value must be >= 1");
  Bigint rest = value;
  std::vector<std::pair<Bigint, unsigned>> fs;
  auto peel = [&](const Bigint& d) {
    unsigned m = 0;
    while (rest % d == 0) {
      rest /= d;
      ++m;
    }
    if (m) fs.emplace_back(d, m);
  };
  peel(2);
  peel(3);
  for (Bigint d = 5; d <= bound && d * d <= rest; d += 6) {
    peel(d);
    peel(d + 2);
  }
  if (rest > 1) {
    if (is_probable_prime(rest)) {
      fs.emplace_back(rest, 1);
    } else {
      return std::nullopt;
    }
  }
  return FactoredInteger(value, std::move(fs));
}

std::pair<unsigned, Bigint> split_two_part(const Bigint& E) {
  if (E < 1) throw std::invalid_argument("split_two_part: E must be >= 1");
  unsigned s = 0;
  Bigint m = E;
  while ((m & 1) == 0) {
    m >>= 1;
    ++s;
  }
  return {s, m};
}

namespace {

IdentityPredicate default_identity(const BlackBox& X) {
  const GroupString id = X.identity();
  return [&X, id](const GroupString& s) { return X.eq(s, id); };
}

}  // namespace

Bigint order_exact(const BlackBox& X, const GroupString& x, const FactoredInteger& E,
                   const IdentityPredicate& is_identity) {
  if (!is_identity(bb_pow(X, x, E.value())))
    throw std::invalid_argument("order_exact: x^E is not the identity");
  Bigint d = E.value();
  for (const auto& [prime, mult] : E.factors()) {
    for (unsigned i = 0; i < mult; ++i) {
      if (d % prime != 0) break;
      const Bigint cand = d / prime;
      if (is_identity(bb_pow(X, x, cand)))
        d = cand;
      else
        break;
    }
  }
  return d;
}

Bigint order_exact(const BlackBox& X, const GroupString& x, const FactoredInteger& E) {
  return order_exact(X, x, E, default_identity(X));
}

std::vector<GroupString> rho(const BlackBox& X, const GroupString& x, const GroupString& y,
                             const FactoredInteger& E) {
  const Bigint d = order_exact(X, x, E);
  const auto [s, m] = split_two_part(d);

  if (s == 0) {
    // odd cyclic group: unique root
    return {bb_pow(X, y, (m + 1) / 2)};
  }
  // square test: y^(d/2) = 1
  if (!X.is_identity(bb_pow(X, y, d / 2))) return {};

  // Tonelli-Shanks inside <x>; x generates, hence is a non-square, and
  // z0 = x^m generates the Sylow 2-subgroup.
  GroupString r = bb_pow(X, y, (m + 1) / 2);
  GroupString t = bb_pow(X, y, m);
  GroupString z = bb_pow(X, x, m);
  unsigned big_m = s;
  while (!X.is_identity(t)) {
    // least i with t^(2^i) = 1
    unsigned i = 0;
    GroupString tt = t;
    while (!X.is_identity(tt)) {
      tt = X.mul(tt, tt);
      ++i;
      if (i > big_m) throw std::logic_error("rho: escape from Sylow 2-subgroup");
    }
    GroupString b = z;
    for (unsigned j = 0; j + i + 1 < big_m; ++j) b = X.mul(b, b);
    r = X.mul(r, b);
    z = X.mul(b, b);
    t = X.mul(t, z);
    big_m = i;
  }
  const GroupString invol = bb_pow(X, x, d / 2);
  return {r, X.mul(r, invol)};
}

GroupString odd_sqrt(const BlackBox& X, const GroupString& /*x*/, const GroupString& y,
                     const Bigint& m) {
  if (m < 1 || (m & 1) == 0) throw std::invalid_argument("odd_sqrt: even order");
  return bb_pow(X, y, (m + 1) / 2);
}

std::optional<GroupString> involution_from(const BlackBox& X, const GroupString& x,
                                           const Bigint& E, const IdentityPredicate& is_identity) {
  const auto [s, m] = split_two_part(E);
  GroupString z = bb_pow(X, x, m);
  if (is_identity(z)) return std::nullopt;
  for (unsigned i = 0; i <= s; ++i) {
    GroupString z2 = X.mul(z, z);
    if (is_identity(z2)) return z;
    z = std::move(z2);
  }
  throw std::invalid_argument("involution_from: x^E is not the identity");
}

std::optional<GroupString> involution_from(const BlackBox& X, const GroupString& x,
                                           const Bigint& E) {
  return involution_from(X, x, E, default_identity(X));
}

GroupString zeta_sample(BlackBox& X, const GroupString& i, const FactoredInteger& E,
                        const IdentityPredicate& is_identity) {
  if (is_identity(i) || !is_identity(X.mul(i, i)))
    throw std::invalid_argument("zeta_sample: not an involution");
  const GroupString g = X.rand();
  // t = i * i^g
  const GroupString t = X.mul(i, X.mul(X.inv(g), X.mul(i, g)));
  const Bigint o = order_exact(X, t, E, is_identity);
  if ((o & 1) != 0) {
    return X.mul(g, bb_pow(X, t, (o - 1) / 2));  // zeta_1
  }
  return bb_pow(X, t, o / 2);  // zeta_0: an involution commuting with i
}

GroupString zeta_sample(BlackBox& X, const GroupString& i, const FactoredInteger& E) {
  return zeta_sample(X, i, E, default_identity(X));
}

}  // namespace bbg
