#include "bbg/frobenius.hpp"

namespace bbg {

namespace {

IdentityPredicate plain_identity(const BlackBox& X) {
  const GroupString id = X.identity();
  return [&X, id](const GroupString& s) { return X.eq(s, id); };
}

}  // namespace

KleinFour find_klein_four(BlackBox& X, const FactoredInteger& E, int budget,
                          const IdentityPredicate& is_identity) {
  if (budget <= 0) throw BudgetExhausted("find_klein_four: zero budget");
  std::optional<GroupString> e1;
  int draws = 0;
  while (!e1) {
    if (draws++ >= budget)
      throw BudgetExhausted("find_klein_four: no involution found (odd-order group?)");
    e1 = involution_from(X, X.rand(), E.value(), is_identity);
  }
  // second involution inside C(e1), distinct from e1
  while (draws++ < budget) {
    const GroupString z = zeta_sample(X, *e1, E, is_identity);
    const auto e2 = involution_from(X, z, E.value(), is_identity);
    if (!e2) continue;
    if (X.eq(*e2, *e1)) continue;
    // commutation holds by construction; check defensively at oracle level
    if (!is_identity(X.mul(X.mul(*e1, *e2), X.mul(X.inv(*e1), X.inv(*e2))))) continue;
    return KleinFour{*e1, *e2};
  }
  throw BudgetExhausted("find_klein_four: budget exhausted");
}

KleinFour find_klein_four(BlackBox& X, const FactoredInteger& E, int budget) {
  return find_klein_four(X, E, budget, plain_identity(X));
}

MaxCyclic max_cyclic_generator(BlackBox& X, const GroupString& e, const FactoredInteger& E,
                               int budget, const IdentityPredicate& is_identity) {
  if (is_identity(e) || !is_identity(X.mul(e, e)))
    throw std::invalid_argument("max_cyclic_generator: e is not an involution");
  std::optional<MaxCyclic> best;
  for (int t = 0; t < budget; ++t) {
    GroupString z = zeta_sample(X, e, E, is_identity);
    const Bigint o = order_exact(X, z, E, is_identity);
    if (!best || o > best->order) best = MaxCyclic{std::move(z), o};
  }
  if (!best || best->order <= 2)
    throw BudgetExhausted("max_cyclic_generator: no element of order > 2 found");
  return *best;
}

MaxCyclic max_cyclic_generator(BlackBox& X, const GroupString& e, const FactoredInteger& E,
                               int budget) {
  return max_cyclic_generator(X, e, E, budget, plain_identity(X));
}

namespace {

FrobeniusResult frobenius_attempt(BlackBox& X, const FrobeniusJob& job,
                                  const IdentityPredicate& is_identity,
                                  std::uint64_t attempt_seed) {
  const Bigint ep = Bigint(job.eps()) * job.p;
  const KleinFour v = find_klein_four(X, job.exponent, job.search_budget, is_identity);
  const int torus_budget = job.torus_budget_per_k * static_cast<int>(job.k);
  MaxCyclic c1 = max_cyclic_generator(X, v.e1, job.exponent, torus_budget, is_identity);
  MaxCyclic c2 = max_cyclic_generator(X, v.e2, job.exponent, torus_budget, is_identity);

  const Local locals[] = {
      Local{{c1.generator}, power_map(X.ops(), ep)},
      Local{{c2.generator}, power_map(X.ops(), ep)},
  };
  EnrichedBox box = amalgamate(X, locals, job.k, {}, attempt_seed);

  FrobeniusResult r{std::move(box),         v.e1,     v.e2,
                    std::move(c1.generator), std::move(c2.generator),
                    c1.order,                c2.order};
  return r;
}

FrobeniusResult frobenius_psl2_impl(BlackBox& X, const FrobeniusJob& job,
                                    const std::function<bool(EnrichedBox&)>& accept,
                                    const IdentityPredicate& is_identity) {
  if (job.k <= 1) throw std::invalid_argument("frobenius: construction requires k > 1");
  if (job.p < 3 || job.p % 2 == 0) throw std::invalid_argument("frobenius: p must be odd");
  Rng rng(job.seed ^ 0xf20bu);
  const int tries = accept ? std::max(1, job.retry_budget) : 1;
  std::optional<FrobeniusResult> last;
  for (int attempt = 1; attempt <= tries; ++attempt) {
    FrobeniusResult r = frobenius_attempt(X, job, is_identity, rng.next());
    r.attempts = attempt;
    if (!accept) return r;  // generation unverified
    if (accept(r.box)) {
      r.accepted = true;
      return r;
    }
    last = std::move(r);
  }
  last->accepted = false;
  return std::move(*last);
}

}  // namespace

FrobeniusResult frobenius_psl2(BlackBox& X, const FrobeniusJob& job,
                               const std::function<bool(EnrichedBox&)>& accept) {
  return frobenius_psl2_impl(X, job, accept, plain_identity(X));
}

FrobeniusResult frobenius_rank_n(BlackBox& X, const CurtisTitsDatum& datum,
                                 const FrobeniusJob& job,
                                 const std::function<bool(EnrichedBox&)>& accept) {
  if (job.k <= 1) throw std::invalid_argument("frobenius: construction requires k > 1");
  if (datum.nodes.empty()) throw std::invalid_argument("frobenius: empty datum");
  if (datum.rank() == 1) {
    // rank-1 reduction: (P)SL_2 pipeline on the node subgroup, with equality
    // taken modulo the node center <w^2>
    const auto& node = datum.nodes.front();
    std::vector<GroupString> seeds = node.k_gens;
    seeds.push_back(node.t_split);
    auto K = std::make_shared<BlackBox>(bb_generated(X, seeds, {}, job.seed ^ 0x5eedu));
    const GroupString z = K->mul(node.weyl, node.weyl);
    IdentityPredicate is_id;
    if (K->is_identity(z)) {
      const GroupString id = K->identity();
      is_id = [K, id](const GroupString& s) { return K->eq(s, id); };
    } else {
      const GroupString id = K->identity();
      is_id = [K, id, z](const GroupString& s) { return K->eq(s, id) || K->eq(s, z); };
    }
    return frobenius_psl2_impl(*K, job, accept, is_id);
  }

  // Frobenius-aligned locals: fixed root generators (identity action) and the
  // split tori (p-power action). Coherence across nodes needs a single global
  // map, which per-node randomized constructions cannot provide.
  std::vector<Local> locals;
  for (const auto& node : datum.nodes) {
    locals.push_back(Local{node.k_gens, identity_map()});
    locals.push_back(Local{{node.t_split}, power_map(X.ops(), job.p)});
  }
  Rng rng(job.seed ^ 0xf20bu);
  const int tries = accept ? std::max(1, job.retry_budget) : 1;
  std::optional<FrobeniusResult> last;
  for (int attempt = 1; attempt <= tries; ++attempt) {
    EnrichedBox box = amalgamate(X, locals, job.k, {}, rng.next());
    FrobeniusResult r{std::move(box),
                      X.identity(),
                      X.identity(),
                      datum.nodes.front().t_split,
                      datum.nodes.back().t_split,
                      datum.nodes.front().split_order.value,
                      datum.nodes.back().split_order.value};
    r.attempts = attempt;
    if (!accept) return r;
    if (accept(r.box)) {
      r.accepted = true;
      return r;
    }
    last = std::move(r);
  }
  last->accepted = false;
  return std::move(*last);
}

}  // namespace bbg
