#pragma once

#include "bbg/frobenius.hpp"

namespace bbg {

/// Involution in a box encrypting SL_2(2^n): draw g, h; order-2 draws are
/// returned directly; both are powered into odd order; for non-commuting
/// draws, t = f^{-1} f^w with f = gh and the virtual involution w inverting
/// the tori through g and h, so t = (gh)^{-1} g^{-1} h^{-1}. |t| = 2 gives t
/// itself (same-Borel case); odd |t| = m gives f t^((m+1)/2), which lands in
/// the 2-group C(w). Retries up to `budget` draws.
GroupString kk_involution(BlackBox& X, const FactoredInteger& E, int budget);

/// One subgroup with a clean involutive action: +1 centralized, -1 inverted.
struct CleanLocal {
  std::vector<GroupString> gens;
  int sign = 1;
};

/// Reification input: evaluators are the identity (sign +1) or inversion
/// (sign -1), amalgamated with k = 2. The signed data must extend to an
/// involutive automorphism of the generated group (caller's contract).
EnrichedBox reify_clean(const BlackBox& X, std::span<const CleanLocal> locals,
                        PrParams params = {}, std::uint64_t seed = 0);

/// Inverse-transpose morphism on a box encrypting (P)SL_n(q), q odd: local
/// evaluators are conjugation by the Weyl elements w_i on the K_i, k = 2.
/// Encrypts the inverse-transpose map composed with an inner automorphism.
EnrichedBox inverse_transpose(const BlackBox& X, const CurtisTitsDatum& datum,
                              PrParams params = {}, std::uint64_t seed = 0);

struct SuOptions {
  int zeta_samples_per_node = 6;
  int budget = 64;  // draws allowed per zeta sample
  std::uint64_t seed = 0;
};

/// Subgroup of a box encrypting SL_n(q^2), q odd, cut out as the centralizer
/// of the inverse-transpose map composed with the q-power Frobenius: per node
/// the fixed torus parts u_i = t_split^(o/gcd(o, eps q + 1)) and
/// v_i = t_twisted^(o'/gcd(o', eps q - 1)) (q = eps mod 4), completed by
/// zeta-samples of the fixed subgroup of w_i o phi_i taken through the
/// bundled pair box over each K_i. Returns a box encrypting a conjugate of
/// SU_n(q).
BlackBox su_subgroup(BlackBox& X, const CurtisTitsDatum& datum, const Bigint& q,
                     SuOptions options = {});

}  // namespace bbg
