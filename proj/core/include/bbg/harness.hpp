#pragma once

#include <map>
#include <string>

#include "bbg/matrix_backend.hpp"
#include "bbg/morphisms.hpp"

namespace bbg {

/// Test-only projection capability for matrix and central-quotient backends.
/// Held separately from the boxes so algorithm modules can never reach it;
/// the canonical form of a quotient string is the lexicographically least
/// encoding among its center multiples.
class WhiteBox {
 public:
  explicit WhiteBox(std::shared_ptr<const MatrixOps> ops) : ops_(std::move(ops)) {}

  /// nullopt when the ops are not a matrix backend.
  static std::optional<WhiteBox> try_from(const OpsPtr& ops);

  Matrix project(const GroupString& s) const { return ops_->decode(s); }
  Matrix canonical(const GroupString& s) const;
  std::vector<std::uint8_t> canonical_key(const GroupString& s) const;
  std::vector<std::uint8_t> canonical_key(const Matrix& m) const;

  const ExplicitField& field() const { return ops_->field(); }
  const FieldPtr& field_ptr() const { return ops_->field_ptr(); }
  unsigned dim() const { return ops_->dim(); }
  bool quotient() const { return ops_->quotient(); }
  const std::vector<FieldElement>& center_scalars() const { return ops_->center_scalars(); }
  const MatrixOps& ops() const { return *ops_; }

 private:
  std::shared_ptr<const MatrixOps> ops_;
};

/// Structured result of one verification experiment. Reports are
/// deterministic given seed and configuration; the serialized line carries
/// key=value pairs in fixed order (wall time is opt-in, so that default
/// report lines are byte-identical across runs).
struct Report {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> witnesses;  // up to 10 failing samples (hex)
  std::uint64_t wall_time_ms = 0;

  void add_param(std::string key, std::string value);
  void add_witness(const GroupString& s);
  bool passed() const { return failures == 0; }
  std::string line(bool include_timing = false) const;
};

/// Collects graph samples, builds the partial map pi_X(x) -> pi_Y(y), and
/// asserts functionality plus multiplicativity on all composable sampled
/// pairs (a pair is composable when the product of the projections was itself
/// sampled).
Report verify_homomorphism(Morphism& M, const WhiteBox& wx, const WhiteBox& wy,
                           std::uint64_t trials, std::uint64_t seed = 0);

/// Trace law of a Frobenius enrichment: tr(pi(shift(y))) = (tr pi(y))^p, up
/// to a global sign for central-quotient backends. A prime-field backend is
/// flagged vacuous (the law degenerates to tr = tr).
Report verify_frobenius(EnrichedBox& E, const WhiteBox& W, const Bigint& p,
                        std::uint64_t trials, std::uint64_t seed = 0);

/// Trace law of an inverse-transpose enrichment:
/// tr(pi(shift(y))) = tr(pi(y)^{-1}), center-aware for quotient backends.
Report verify_inverse_transpose(EnrichedBox& E, const WhiteBox& W, std::uint64_t trials,
                                std::uint64_t seed = 0);

struct HermitianOutcome {
  enum class Status { found, none, inconclusive } status;
  std::optional<Matrix> form;  // nonzero, J^bar-transpose = J, det != 0
};

/// Solves the homogeneous system M^bar-T J M = J over all samples (bar is the
/// entrywise q-power); `found` carries a nondegenerate Hermitian solution,
/// `inconclusive` reports a solution space of dimension > 1.
HermitianOutcome find_hermitian_form(const ExplicitField& F, std::span<const Matrix> samples,
                                     const Bigint& q);

enum class MrVerdict { composite, probably_prime };

/// Strong-pseudoprime demo on odd n >= 3: one-sided ("composite" is always
/// correct). Uses the two-part split of n-1 and modular power maps.
MrVerdict miller_rabin(const Bigint& n, int rounds, std::uint64_t seed = 0);

// ---- white-box census helpers -------------------------------------------

/// Order of the subgroup generated by the matrices (BFS closure); throws when
/// the closure exceeds `limit`.
std::size_t closure_order(const ExplicitField& F, std::span<const Matrix> gens,
                          std::size_t limit);

/// lcm of the element orders of the closure (exponent of the generated
/// group).
Bigint closure_exponent(const ExplicitField& F, std::span<const Matrix> gens,
                        std::size_t limit);

/// Counts canonical projections of `trials` samples.
std::map<std::vector<std::uint8_t>, std::uint64_t> sample_census(BlackBox& X, const WhiteBox& W,
                                                                 std::uint64_t trials);

/// Chi-square statistic against the uniform distribution on `classes`
/// equally likely outcomes.
double chi_square_uniform(const std::map<std::vector<std::uint8_t>, std::uint64_t>& counts,
                          std::size_t classes, std::uint64_t trials);

/// 1 - alpha quantile of the chi-square distribution with df degrees of
/// freedom (Wilson-Hilferty approximation; adequate for the df used here).
double chi_square_quantile(double df, double alpha);

}  // namespace bbg
