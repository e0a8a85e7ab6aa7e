#pragma once

#include "bbg/cyclic.hpp"
#include "bbg/morphisms.hpp"
#include "bbg/twisted_datum.hpp"

namespace bbg {

/// Raised when a randomized search runs out of attempts; pipelines catch it
/// to retry with fresh randomness.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of one Frobenius construction run on (P)SL_2(p^k).
struct FrobeniusJob {
  Bigint p;                 // odd, known characteristic
  unsigned k = 0;           // extension degree, > 1
  FactoredInteger exponent; // global exponent of the box, factored
  int retry_budget = 10;
  int search_budget = 4096;     // random draws for the 4-group search
  int torus_budget_per_k = 64;  // zeta samples per involution = 64 * k
  std::uint64_t seed = 0;

  /// Sign with p = eps mod 4.
  int eps() const { return p % 4 == 1 ? 1 : -1; }
};

struct KleinFour {
  GroupString e1, e2;  // commuting involutions, e2 not in {1, e1}
};

/// Random search for a 4-subgroup: even-order element -> involution e1, then
/// zeta-samples of C(e1) until a second involution distinct from e1 appears.
KleinFour find_klein_four(BlackBox& X, const FactoredInteger& E, int budget);
KleinFour find_klein_four(BlackBox& X, const FactoredInteger& E, int budget,
                          const IdentityPredicate& is_identity);

struct MaxCyclic {
  GroupString generator;
  Bigint order;
};

/// Best generator of a cyclic subgroup of C(e) found among `budget`
/// zeta-samples, with its exact order; first element achieving the maximum
/// wins. Throws BudgetExhausted when nothing of order > 2 appears.
MaxCyclic max_cyclic_generator(BlackBox& X, const GroupString& e, const FactoredInteger& E,
                               int budget);
MaxCyclic max_cyclic_generator(BlackBox& X, const GroupString& e, const FactoredInteger& E,
                               int budget, const IdentityPredicate& is_identity);

struct FrobeniusResult {
  EnrichedBox box;
  GroupString e1, e2;  // the 4-group involutions
  GroupString c1, c2;  // maximal cyclic generators in their centralizers
  Bigint order1, order2;
  int attempts = 1;
  bool accepted = false;  // true when an acceptance predicate approved the box
};

/// Construction of a Frobenius morphism on a box encrypting (P)SL_2(p^k),
/// k > 1, p odd and known: find a 4-group, take maximal cyclic subgroups of
/// the two involution centralizers, equip them with the power maps
/// c -> c^(eps p), and amalgamate with tuple length k. The shift encrypts a
/// Frobenius map composed with an inner automorphism.
///
/// `accept` (usually a white-box trace-law check from the harness) triggers
/// retries with fresh involutions, up to retry_budget; without it the first
/// constructed box is returned with accepted = false ("generation
/// unverified").
FrobeniusResult frobenius_psl2(BlackBox& X, const FrobeniusJob& job,
                               const std::function<bool(EnrichedBox&)>& accept = {});

/// Rank-n amalgamation over a Frobenius-aligned Curtis-Tits datum: every
/// K_gens string must encrypt a Frobenius-fixed generator (subfield entries)
/// and each split torus must be Frobenius-invariant with the p-power action.
/// Locals are the split tori with the power map c -> c^p together with the
/// fixed generators; a single-node datum falls back to the rank-1 pipeline on
/// the subgroup box generated by that node.
FrobeniusResult frobenius_rank_n(BlackBox& X, const CurtisTitsDatum& datum,
                                 const FrobeniusJob& job,
                                 const std::function<bool(EnrichedBox&)>& accept = {});

}  // namespace bbg
