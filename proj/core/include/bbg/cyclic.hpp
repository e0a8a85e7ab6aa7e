#pragma once

#include <functional>
#include <optional>

#include "bbg/blackbox.hpp"

namespace bbg {

/// Strong-pseudoprime test; "false" is a proof of compositeness, "true" means
/// probably prime. Witnesses are drawn from a deterministic stream derived
/// from n and the seed.
bool is_probable_prime(const Bigint& n, int rounds = 32, std::uint64_t seed = 0x6d72u);

/// Integer together with its complete prime factorization; the constructor
/// checks that the listed primes multiply back to the value and that each
/// passes Miller-Rabin.
class FactoredInteger {
 public:
  FactoredInteger(Bigint value, std::vector<std::pair<Bigint, unsigned>> factors);

  /// Trial division up to the bound; nullopt when a cofactor > 1 remains.
  static std::optional<FactoredInteger> trial_division(const Bigint& value,
                                                       std::uint64_t bound = 1'000'000);

  const Bigint& value() const { return value_; }
  const std::vector<std::pair<Bigint, unsigned>>& factors() const { return factors_; }

 private:
  Bigint value_;
  std::vector<std::pair<Bigint, unsigned>> factors_;
};

/// E = 2^s * m with m odd; E >= 1.
std::pair<unsigned, Bigint> split_two_part(const Bigint& E);

using IdentityPredicate = std::function<bool(const GroupString&)>;

/// Least d dividing E.value with x^d = 1, found by peeling prime factors.
/// Throws when x^E != 1 (wrong or incompletely factored exponent).
Bigint order_exact(const BlackBox& X, const GroupString& x, const FactoredInteger& E);
Bigint order_exact(const BlackBox& X, const GroupString& x, const FactoredInteger& E,
                   const IdentityPredicate& is_identity);

/// The set of all z in <x> with z^2 = y, by Tonelli-Shanks inside <x>
/// (x itself is a non-square of even-order <x>, so no non-residue search is
/// needed). Empty when y is a non-square in <x>; at most 2 elements.
/// Behavior is undefined when y lies outside <x>.
std::vector<GroupString> rho(const BlackBox& X, const GroupString& x, const GroupString& y,
                             const FactoredInteger& E);

/// Unique square root y^((m+1)/2) of y in <x> for odd m = |x|.
GroupString odd_sqrt(const BlackBox& X, const GroupString& x, const GroupString& y,
                     const Bigint& m);

/// The involution in <x> obtained by powering x into its 2-part: z = x^m for
/// the odd part m of E, then squaring until the next square is the identity.
/// none when <x> has odd order.
std::optional<GroupString> involution_from(const BlackBox& X, const GroupString& x,
                                           const Bigint& E);
std::optional<GroupString> involution_from(const BlackBox& X, const GroupString& x,
                                           const Bigint& E, const IdentityPredicate& is_identity);

/// One zeta-sample of the centralizer of the involution i: draw g, form
/// t = i * i^g; for |t| = 2k+1 return g * t^k, for |t| = 2k return t^k.
/// The returned string commutes with i. Consumes the box's randomness.
GroupString zeta_sample(BlackBox& X, const GroupString& i, const FactoredInteger& E);
GroupString zeta_sample(BlackBox& X, const GroupString& i, const FactoredInteger& E,
                        const IdentityPredicate& is_identity);

}  // namespace bbg
