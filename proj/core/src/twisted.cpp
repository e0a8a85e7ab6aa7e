#include "bbg/twisted.hpp"

namespace bbg {

void check_datum(const BlackBox& X, const CurtisTitsDatum& datum) {
  for (const auto& node : datum.nodes) {
    if (node.k_gens.empty()) throw std::invalid_argument("datum: node without generators");
    // w inverts the split torus
    const GroupString conj =
        X.mul(X.inv(node.weyl), X.mul(node.t_split, node.weyl));
    if (!X.eq(conj, X.inv(node.t_split)))
      throw std::invalid_argument("datum: weyl element does not invert the split torus");
    if (!X.is_identity(bb_pow(X, node.t_split, node.split_order.value)))
      throw std::invalid_argument("datum: declared split-torus order fails oracle check");
    if (!X.is_identity(bb_pow(X, node.t_twisted, node.twisted_order.value)))
      throw std::invalid_argument("datum: declared twisted-torus order fails oracle check");
    if (node.split_order.factored) {
      const Bigint o = order_exact(X, node.t_split, *node.split_order.factored);
      if (o != node.split_order.value)
        throw std::invalid_argument("datum: split torus has a proper-divisor order");
    }
    if (node.twisted_order.factored) {
      const Bigint o = order_exact(X, node.t_twisted, *node.twisted_order.factored);
      if (o != node.twisted_order.value)
        throw std::invalid_argument("datum: twisted torus has a proper-divisor order");
    }
  }
}

GroupString kk_involution(BlackBox& X, const FactoredInteger& E, int budget) {
  if (budget <= 0) throw BudgetExhausted("kk_involution: zero budget");
  auto odd_part_of = [&](const GroupString& g) -> std::optional<GroupString> {
    // powers g into odd order; nullopt when the result is the identity
    const Bigint o = order_exact(X, g, E);
    const auto [s, m] = split_two_part(o);
    (void)m;
    GroupString r = g;
    for (unsigned i = 0; i < s; ++i) r = X.mul(r, r);
    if (X.is_identity(r)) return std::nullopt;
    return r;
  };

  for (int attempt = 0; attempt < budget; ++attempt) {
    GroupString g = X.rand();
    GroupString h = X.rand();
    // a draw that is already an involution is the answer
    if (!X.is_identity(g) && X.is_identity(X.mul(g, g))) return g;
    if (!X.is_identity(h) && X.is_identity(X.mul(h, h))) return h;
    const auto go = odd_part_of(g);
    const auto ho = odd_part_of(h);
    if (!go || !ho) continue;
    g = *go;
    h = *ho;
    if (X.eq(X.mul(g, h), X.mul(h, g))) continue;  // gh = hg is excluded
    const GroupString f = X.mul(g, h);
    // t = f^{-1} f^w, with f^w = g^{-1} h^{-1} for the virtual involution w
    const GroupString fw = X.mul(X.inv(g), X.inv(h));
    const GroupString t = X.mul(X.inv(f), fw);
    if (X.is_identity(t)) continue;
    const Bigint m = order_exact(X, t, E);
    GroupString z;
    if (m == 2) {
      z = t;  // same-Borel case: the commutator data is already unipotent
    } else if ((m & 1) != 0) {
      z = X.mul(f, bb_pow(X, t, (m + 1) / 2));
    } else {
      continue;  // not reachable over SL_2(2^n); redraw defensively
    }
    if (!X.is_identity(z) && X.is_identity(X.mul(z, z))) return z;
  }
  throw BudgetExhausted("kk_involution: budget exhausted");
}

EnrichedBox reify_clean(const BlackBox& X, std::span<const CleanLocal> locals,
                        PrParams params, std::uint64_t seed) {
  if (locals.empty()) throw std::invalid_argument("reify_clean: empty locals");
  std::vector<Local> ls;
  ls.reserve(locals.size());
  for (const auto& cl : locals) {
    if (cl.sign != 1 && cl.sign != -1)
      throw std::invalid_argument("reify_clean: sign must be +1 or -1");
    ls.push_back(Local{cl.gens, cl.sign == 1 ? identity_map() : inversion_map(X.ops())});
  }
  return amalgamate(X, ls, 2, params, seed);
}

EnrichedBox inverse_transpose(const BlackBox& X, const CurtisTitsDatum& datum,
                              PrParams params, std::uint64_t seed) {
  if (datum.nodes.empty()) throw std::invalid_argument("inverse_transpose: datum rank 0");
  std::vector<Local> locals;
  for (const auto& node : datum.nodes) {
    std::vector<GroupString> gens = node.k_gens;
    gens.push_back(node.t_split);
    locals.push_back(Local{std::move(gens), conjugation_map(X.ops(), node.weyl)});
  }
  return amalgamate(X, locals, 2, params, seed);
}

BlackBox su_subgroup(BlackBox& X, const CurtisTitsDatum& datum, const Bigint& q,
                     SuOptions options) {
  if (q % 2 == 0) throw std::invalid_argument("su_subgroup: odd q required");
  if (datum.nodes.empty()) throw std::invalid_argument("su_subgroup: empty datum");
  if (!X.exponent())
    throw std::invalid_argument("su_subgroup: the box must declare a global exponent");
  const int eps = (q % 4 == 1) ? 1 : -1;
  const Bigint split_cond = eps == 1 ? Bigint(q + 1) : Bigint(q - 1);    // |eps q + 1|
  const Bigint twisted_cond = eps == 1 ? Bigint(q - 1) : Bigint(q + 1);  // |eps q - 1|
  const auto [s2, modd] = split_two_part(*X.exponent());
  (void)s2;

  std::vector<GroupString> seeds;
  Rng rng(options.seed ^ 0x50ba5eedull);

  for (std::size_t ni = 0; ni < datum.nodes.size(); ++ni) {
    const auto& node = datum.nodes[ni];
    // declared orders must annihilate the tori
    if (!X.is_identity(bb_pow(X, node.t_split, node.split_order.value)))
      throw std::invalid_argument("su_subgroup: declared split order fails oracle check");
    if (!X.is_identity(bb_pow(X, node.t_twisted, node.twisted_order.value)))
      throw std::invalid_argument("su_subgroup: declared twisted order fails oracle check");

    // fixed torus parts of w o phi: t^(eps q + 1) = 1 on T, t^(eps q - 1) = 1
    // on T_w
    const Bigint& o = node.split_order.value;
    const Bigint& ot = node.twisted_order.value;
    seeds.push_back(bb_pow(X, node.t_split, o / gcd(o, split_cond)));
    seeds.push_back(bb_pow(X, node.t_twisted, ot / gcd(ot, twisted_cond)));

    // zeta-samples of C_{K_i}(w_i o phi_i), taken through the bundled pair
    // box carrying (g, (w o phi)(g)): the composed map acts on the tori as
    // the power maps t -> t^(-eps q) and t -> t^(eps q)
    const Local locals[] = {
        Local{{node.t_split}, power_map(X.ops(), -Bigint(eps) * q)},
        Local{{node.t_twisted}, power_map(X.ops(), Bigint(eps) * q)},
    };
    EnrichedBox pairs = amalgamate(X, locals, 2, {}, rng.next());
    int collected = 0;
    for (int draws = 0; collected < options.zeta_samples_per_node; ++draws) {
      if (draws >= options.budget * options.zeta_samples_per_node)
        throw BudgetExhausted("su_subgroup: zeta sampling budget exhausted");
      const GroupString y = pairs.rand();
      const GroupString g = pairs.component(y, 0);
      const GroupString ig = pairs.component(y, 1);  // (w o phi)(g)
      const GroupString tau = X.mul(X.inv(g), ig);
      GroupString z;
      if (X.is_identity(tau)) {
        z = g;  // g already fixed
      } else if (X.is_identity(bb_pow(X, tau, modd))) {
        // odd order: unique square root of tau lands the Bray correction
        z = X.mul(g, bb_pow(X, tau, (modd + 1) / 2));
      } else {
        const auto invol = involution_from(X, tau, *X.exponent());
        if (!invol) continue;
        z = *invol;
      }
      seeds.push_back(std::move(z));
      ++collected;
    }
  }
  return bb_generated(X, seeds, {}, options.seed);
}

}  // namespace bbg
