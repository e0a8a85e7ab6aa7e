#include "bbg/morphisms.hpp"

#include <stdexcept>

namespace bbg {

PointwiseMap identity_map() {
  return [](const GroupString& s) { return s; };
}

PointwiseMap power_map(OpsPtr ops, Bigint e) {
  return [ops = std::move(ops), e = std::move(e)](const GroupString& s) {
    return bb_pow(*ops, s, e);
  };
}

PointwiseMap inversion_map(OpsPtr ops) {
  return [ops = std::move(ops)](const GroupString& s) { return ops->inv(s); };
}

PointwiseMap conjugation_map(OpsPtr ops, GroupString h) {
  // s -> h s h^{-1}
  GroupString hinv = ops->inv(h);
  return [ops = std::move(ops), h = std::move(h), hinv = std::move(hinv)](const GroupString& s) {
    return ops->mul(h, ops->mul(s, hinv));
  };
}

Morphism::Morphism(OpsPtr source_ops, OpsPtr target_ops, BlackBox graph,
                   std::optional<PointwiseMap> evaluator)
    : source_ops_(std::move(source_ops)),
      target_ops_(std::move(target_ops)),
      graph_(std::move(graph)),
      evaluator_(std::move(evaluator)) {}

std::pair<GroupString, GroupString> Morphism::split(const GroupString& s) const {
  const std::size_t ls = source_ops_->string_length();
  const std::size_t lt = target_ops_->string_length();
  if (s.size() != ls + lt) throw std::invalid_argument("Morphism::split: length mismatch");
  return {s.slice(0, ls), s.slice(ls, lt)};
}

std::pair<GroupString, GroupString> Morphism::sample_pair() { return split(graph_.rand()); }

Morphism morphism_from_pairs(const BlackBox& X, const BlackBox& Y,
                             std::span<const std::pair<GroupString, GroupString>> pairs,
                             PrParams params, std::uint64_t seed) {
  if (pairs.empty()) throw std::invalid_argument("morphism_from_pairs: empty pair list");
  auto ops = std::make_shared<DirectProductOps>(X.ops(), Y.ops());
  std::optional<Bigint> e;
  if (X.exponent() && Y.exponent()) e = lcm(*X.exponent(), *Y.exponent());
  std::vector<GroupString> seeds;
  seeds.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    const GroupString parts[] = {x, y};
    seeds.push_back(GroupString::concat(parts));
  }
  BlackBox graph = bb_generated(ops, std::move(e), seeds, params, seed);
  return Morphism(X.ops(), Y.ops(), std::move(graph), std::nullopt);
}

EnrichedBox::EnrichedBox(std::shared_ptr<const PowerOps> tuple_ops, BlackBox bundled)
    : tuple_ops_(std::move(tuple_ops)), bundled_(std::move(bundled)) {}

GroupString EnrichedBox::shift(const GroupString& y) const { return tuple_ops_->rotate_left(y); }

GroupString EnrichedBox::project_first(const GroupString& y) const {
  return tuple_ops_->component(y, 0);
}

GroupString EnrichedBox::component(const GroupString& y, std::size_t i) const {
  return tuple_ops_->component(y, i);
}

EnrichedBox EnrichedBox::clone(std::uint64_t seed) const {
  return EnrichedBox(tuple_ops_, bundled_.clone(seed));
}

GroupString shift_apply(const EnrichedBox& E, const GroupString& y) { return E.shift(y); }
GroupString project_first(const EnrichedBox& E, const GroupString& y) {
  return E.project_first(y);
}

EnrichedBox enrich(const BlackBox& X, std::size_t k,
                   std::span<const std::vector<GroupString>> tuples, PrParams params,
                   std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("enrich: k must be >= 1");
  if (tuples.empty()) throw std::invalid_argument("enrich: no tuples");
  auto ops = std::make_shared<PowerOps>(X.ops(), k);
  std::vector<GroupString> seeds;
  seeds.reserve(tuples.size());
  for (const auto& tup : tuples) {
    if (tup.size() != k) throw std::invalid_argument("enrich: ragged tuple");
    seeds.push_back(GroupString::concat(tup));
  }
  std::optional<Bigint> e = X.exponent();
  BlackBox bundled = bb_generated(ops, std::move(e), seeds, params, seed);
  return EnrichedBox(std::move(ops), std::move(bundled));
}

EnrichedBox amalgamate(const BlackBox& X, std::span<const Local> locals, std::size_t k,
                       PrParams params, std::uint64_t seed) {
  if (locals.empty()) throw std::invalid_argument("amalgamate: empty locals");
  if (k < 1) throw std::invalid_argument("amalgamate: k must be >= 1");
  std::vector<std::vector<GroupString>> tuples;
  for (const auto& local : locals) {
    if (!local.eval) throw std::invalid_argument("amalgamate: missing evaluator");
    for (const auto& g : local.gens) {
      std::vector<GroupString> tup;
      tup.reserve(k);
      tup.push_back(g);
      for (std::size_t j = 1; j < k; ++j) tup.push_back(local.eval(tup.back()));
      tuples.push_back(std::move(tup));
    }
  }
  return enrich(X, k, tuples, params, seed);
}

}  // namespace bbg
