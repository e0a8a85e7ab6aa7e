#pragma once

#include <functional>

#include "bbg/blackbox.hpp"

namespace bbg {

/// Structurally given pointwise map on strings (power map, inversion,
/// conjugation, shift of an enriched box). Arbitrary homomorphisms have no
/// pointwise form here; they exist only as sampled graphs.
using PointwiseMap = std::function<GroupString(const GroupString&)>;

PointwiseMap identity_map();
PointwiseMap power_map(OpsPtr ops, Bigint e);
PointwiseMap inversion_map(OpsPtr ops);
PointwiseMap conjugation_map(OpsPtr ops, GroupString h);

/// Morphism of black boxes, realized as a sampled graph subgroup of the
/// direct product of source and target. Samples are pairs (x, zeta(x)); a
/// pointwise evaluator is attached only when the map is structurally given.
class Morphism {
 public:
  Morphism(OpsPtr source_ops, OpsPtr target_ops, BlackBox graph,
           std::optional<PointwiseMap> evaluator);

  /// One graph sample, split into (x, zeta(x)).
  std::pair<GroupString, GroupString> sample_pair();
  std::pair<GroupString, GroupString> split(const GroupString& graph_string) const;

  BlackBox& graph() { return graph_; }
  const BlackBox& graph() const { return graph_; }
  const OpsPtr& source_ops() const { return source_ops_; }
  const OpsPtr& target_ops() const { return target_ops_; }
  const std::optional<PointwiseMap>& evaluator() const { return evaluator_; }

 private:
  OpsPtr source_ops_, target_ops_;
  BlackBox graph_;
  std::optional<PointwiseMap> evaluator_;
};

/// Graph box generated by the given (x_j, y_j) pairs inside X x Y. Random
/// sampling returns x with its image attached.
Morphism morphism_from_pairs(const BlackBox& X, const BlackBox& Y,
                             std::span<const std::pair<GroupString, GroupString>> pairs,
                             PrParams params = {}, std::uint64_t seed = 0);

/// Black box enriched by an order-k automorphism: a box over k-tuples inside
/// X^k whose pointwise cyclic shift encrypts the automorphism. The base group
/// is encrypted via projection on the first component.
class EnrichedBox {
 public:
  EnrichedBox(std::shared_ptr<const PowerOps> tuple_ops, BlackBox bundled);

  std::size_t k() const { return tuple_ops_->k(); }
  const OpsPtr& base_ops() const { return tuple_ops_->base(); }
  const std::shared_ptr<const PowerOps>& tuple_ops() const { return tuple_ops_; }

  BlackBox& bundled() { return bundled_; }
  const BlackBox& bundled() const { return bundled_; }
  GroupString rand() { return bundled_.rand(); }

  /// (y_0, ..., y_{k-1}) -> (y_1, ..., y_{k-1}, y_0); exact and deterministic.
  GroupString shift(const GroupString& y) const;
  /// First component, a string of the base box.
  GroupString project_first(const GroupString& y) const;
  GroupString component(const GroupString& y, std::size_t i) const;

  EnrichedBox clone(std::uint64_t seed) const;

 private:
  std::shared_ptr<const PowerOps> tuple_ops_;
  BlackBox bundled_;
};

GroupString shift_apply(const EnrichedBox& E, const GroupString& y);
GroupString project_first(const EnrichedBox& E, const GroupString& y);

/// Bundle explicit k-tuples (generator images under successive powers of the
/// target automorphism) into a box over X^k with the cyclic shift.
EnrichedBox enrich(const BlackBox& X, std::size_t k,
                   std::span<const std::vector<GroupString>> tuples, PrParams params = {},
                   std::uint64_t seed = 0);

/// Local datum for amalgamation: generators of one subgroup together with a
/// pointwise evaluator defined on it.
struct Local {
  std::vector<GroupString> gens;
  PointwiseMap eval;
};

/// Amalgamation of local automorphisms: for each local generator g build the
/// k-tuple (g, eval(g), eval^2(g), ...) and enrich. Encrypts the group
/// generated by all locals together with the amalgamated automorphism as the
/// shift; whether the data extends to an automorphism of order dividing k is
/// the caller's mathematical contract.
EnrichedBox amalgamate(const BlackBox& X, std::span<const Local> locals, std::size_t k,
                       PrParams params = {}, std::uint64_t seed = 0);

}  // namespace bbg
