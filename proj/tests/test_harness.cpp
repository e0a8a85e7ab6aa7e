#include "doctest.h"

#include "bbg/harness.hpp"
#include "bbg/standard.hpp"
#include "bbg/twisted.hpp"

using namespace bbg;

namespace {

FieldPtr make_field(long p, unsigned n) {
  return ExplicitField::from_polynomial(p, n, find_irreducible(p, n));
}

}  // namespace

TEST_CASE("verify_homomorphism: identity morphism on SL2(F5) has no failures") {
  auto F = make_field(5, 1);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 40);
  std::vector<std::pair<GroupString, GroupString>> pairs;
  for (const auto& g : sl_generators(*F, 2)) {
    const GroupString s = handle.ops->encode(g);
    pairs.emplace_back(s, s);
  }
  Morphism M = morphism_from_pairs(handle.box, handle.box, pairs, {}, 2);
  WhiteBox W(handle.ops);
  Report rep = verify_homomorphism(M, W, W, 10000, 1);
  CHECK(rep.failures == 0);
  CHECK(rep.trials >= 10000);
}

TEST_CASE("verify_homomorphism: squaring on C5 has no failures") {
  auto F = make_field(11, 1);
  const Matrix g(1, {F->scalar(3)});
  auto handle = bb_matrix(F, 1, {{g}}, false, {}, 41);
  const GroupString gs = handle.ops->encode(g);
  const std::vector<std::pair<GroupString, GroupString>> pairs = {
      {gs, handle.box.mul(gs, gs)}};
  Morphism M = morphism_from_pairs(handle.box, handle.box, pairs, {}, 5);
  WhiteBox W(handle.ops);
  Report rep = verify_homomorphism(M, W, W, 2000, 2);
  CHECK(rep.failures == 0);
}

TEST_CASE("verify_homomorphism: corrupted pairs are reported") {
  auto F = make_field(11, 1);
  const Matrix g(1, {F->scalar(3)});
  auto handle = bb_matrix(F, 1, {{g}}, false, {}, 42);
  const GroupString gs = handle.ops->encode(g);
  // (g, g^2) and (g^2, g^2): not the graph of any homomorphism of C5
  const std::vector<std::pair<GroupString, GroupString>> pairs = {
      {gs, handle.box.mul(gs, gs)}, {handle.box.mul(gs, gs), handle.box.mul(gs, gs)}};
  Morphism M = morphism_from_pairs(handle.box, handle.box, pairs, {}, 6);
  WhiteBox W(handle.ops);
  Report rep = verify_homomorphism(M, W, W, 2000, 3);
  CHECK(rep.failures > 0);
}

TEST_CASE("verify_frobenius flags the vacuous prime-field case") {
  auto F = make_field(7, 1);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 43);
  std::vector<std::vector<GroupString>> tuples;
  for (const auto& g : sl_generators(*F, 2)) {
    const GroupString s = handle.ops->encode(g);
    tuples.push_back({s, s});
  }
  EnrichedBox E = enrich(handle.box, 2, tuples, {}, 3);
  WhiteBox W(handle.ops);
  Report rep = verify_frobenius(E, W, 7, 200, 4);
  CHECK(rep.failures == 0);  // tr = tr^7 holds identically over F7
  bool vacuous = false;
  for (const auto& [k, v] : rep.params)
    if (k == "vacuous" && v == "1") vacuous = true;
  CHECK(vacuous);
}

TEST_CASE("verify_frobenius negative control: identity shift over F9 fails") {
  auto F = make_field(3, 2);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), true, {}, 44);
  std::vector<std::vector<GroupString>> tuples;
  for (const auto& g : sl_generators(*F, 2)) {
    const GroupString s = handle.ops->encode(g);
    tuples.push_back({s, s});
  }
  EnrichedBox E = enrich(handle.box, 2, tuples, {}, 5);
  WhiteBox W(handle.ops);
  Report rep = verify_frobenius(E, W, 3, 500, 5);
  CHECK(rep.failures > 0);
  CHECK(!rep.witnesses.empty());
  CHECK(rep.witnesses.size() <= 10);
}

TEST_CASE("find_hermitian_form: standard SU3(5) block generators give J ~ I") {
  auto F = make_field(5, 2);
  // unitary block generators for J = I: [[a, b], [-b^bar, a^bar]] with
  // a abar + b bbar = 1, embedded at nodes (0,1) and (1,2)
  const Bigint q = 5;
  auto bar = [&](const FieldElement& x) { return F->pow(x, q); };
  auto su2_block = [&](unsigned node, const FieldElement& a, const FieldElement& b) {
    Matrix m = Matrix::identity(*F, 3);
    m.at(node, node) = a;
    m.at(node, node + 1) = b;
    m.at(node + 1, node) = F->neg(bar(b));
    m.at(node + 1, node + 1) = bar(a);
    return m;
  };
  // generic norm-1 pairs (both coordinates nonzero) generate the full block
  // SU_2(5) subgroups
  std::vector<std::pair<FieldElement, FieldElement>> pairs;
  for (std::uint32_t ia = 1; ia < 25; ++ia) {
    for (std::uint32_t ib = 1; ib < 25; ++ib) {
      const FieldElement a = F->element_at(ia), b = F->element_at(ib);
      if (F->add(F->mul(a, bar(a)), F->mul(b, bar(b))) == F->one()) pairs.emplace_back(a, b);
    }
  }
  REQUIRE(pairs.size() >= 6);
  std::vector<Matrix> gens;
  for (unsigned node = 0; node < 2; ++node) {
    gens.push_back(su2_block(node, pairs[0].first, pairs[0].second));
    gens.push_back(su2_block(node, pairs[pairs.size() / 2].first, pairs[pairs.size() / 2].second));
    gens.push_back(su2_block(node, pairs.back().first, pairs.back().second));
  }
  REQUIRE(gens.size() == 6);
  for (const auto& g : gens) REQUIRE(mat_det(*F, g) == F->one());
  auto handle = bb_matrix(F, 3, gens, false, {}, 45);
  std::vector<Matrix> samples;
  WhiteBox W(handle.ops);
  for (int t = 0; t < 60; ++t) samples.push_back(W.project(handle.box.rand()));
  const auto outcome = find_hermitian_form(*F, samples, q);
  REQUIRE(outcome.status == HermitianOutcome::Status::found);
  // J is the identity up to a scalar
  const Matrix& J = *outcome.form;
  const FieldElement s = J.at(0, 0);
  CHECK(!F->is_zero(s));
  CHECK(J == mat_scalar_mul(*F, s, Matrix::identity(*F, 3)));
}

TEST_CASE("find_hermitian_form: identity samples are inconclusive, generic SL3(F25) has none") {
  auto F = make_field(5, 2);
  const std::vector<Matrix> ids(2, Matrix::identity(*F, 3));
  CHECK(find_hermitian_form(*F, ids, 5).status == HermitianOutcome::Status::inconclusive);
  auto handle = bb_matrix(F, 3, sl_generators(*F, 3), false, {}, 46);
  WhiteBox W(handle.ops);
  std::vector<Matrix> samples;
  for (int t = 0; t < 40; ++t) samples.push_back(W.project(handle.box.rand()));
  CHECK(find_hermitian_form(*F, samples, 5).status == HermitianOutcome::Status::none);
}

TEST_CASE("miller_rabin verdicts") {
  CHECK(miller_rabin(561, 20) == MrVerdict::composite);   // Carmichael number
  CHECK(miller_rabin(97, 20) == MrVerdict::probably_prime);
  CHECK(miller_rabin(9, 20) == MrVerdict::composite);
  CHECK_THROWS_AS(miller_rabin(8, 20), std::invalid_argument);
  CHECK_THROWS_AS(miller_rabin(1, 20), std::invalid_argument);
  const Bigint p60("622288097498926496141095869268883999563096063592498055290461");
  CHECK(miller_rabin(p60, 20) == MrVerdict::probably_prime);
}

TEST_CASE("report lines are byte-identical across runs and carry fixed field order") {
  auto F = make_field(3, 2);
  auto mk = [&](std::uint64_t seed) {
    auto handle = bb_matrix(F, 2, sl_generators(*F, 2), true, {}, seed);
    std::vector<std::vector<GroupString>> tuples;
    for (const auto& g : sl_generators(*F, 2)) {
      const GroupString s = handle.ops->encode(g);
      tuples.push_back({s, handle.ops->encode(mat_frobenius(*F, g, 1))});
    }
    EnrichedBox E = enrich(handle.box, 2, tuples, {}, seed);
    WhiteBox W(handle.ops);
    Report rep = verify_frobenius(E, W, 3, 300, seed);
    return rep.line();
  };
  CHECK(mk(9) == mk(9));
  CHECK(mk(9) != mk(10));  // seed is part of the line
  const std::string line = mk(9);
  CHECK(line.find("experiment=verify_frobenius") == 0);
  CHECK(line.find("wall_time_ms") == std::string::npos);  // timing is opt-in
  Report r;
  r.name = "x";
  r.wall_time_ms = 5;
  CHECK(r.line(true).find("wall_time_ms=5") != std::string::npos);
}

TEST_CASE("closure census and exponent on SL2(F5)") {
  auto F = make_field(5, 1);
  const auto gens = sl_generators(*F, 2);
  CHECK(closure_order(*F, gens, 1000) == 120);
  CHECK(closure_exponent(*F, gens, 1000) == 60);  // lcm of element orders of SL2(5)
  CHECK_THROWS_AS(closure_order(*F, gens, 50), std::runtime_error);
}

TEST_CASE("chi-square quantile approximation matches pinned reference values") {
  // reference 1e-3 upper quantiles: 172.418 (df = 119), 10.828 (df = 1)
  CHECK(chi_square_quantile(119, 1e-3) == doctest::Approx(172.418).epsilon(0.005));
  CHECK(chi_square_quantile(1, 1e-3) == doctest::Approx(10.828).epsilon(0.05));
}

TEST_CASE("morphism evaluators are checked against graph samples") {
  auto F = make_field(11, 1);
  const Matrix g(1, {F->scalar(3)});  // order 5
  auto handle = bb_matrix(F, 1, {{g}}, false, {}, 48);
  const GroupString gs = handle.ops->encode(g);
  const std::vector<std::pair<GroupString, GroupString>> pairs = {
      {gs, handle.box.mul(gs, gs)}};
  WhiteBox W(handle.ops);
  Morphism base = morphism_from_pairs(handle.box, handle.box, pairs, {}, 8);
  // matching evaluator: squaring
  Morphism good(base.source_ops(), base.target_ops(), base.graph().clone(1),
                power_map(handle.box.ops(), 2));
  Report ok = verify_homomorphism(good, W, W, 500, 9);
  CHECK(ok.failures == 0);
  // wrong evaluator: cubing disagrees with the sampled graph
  Morphism bad(base.source_ops(), base.target_ops(), base.graph().clone(2),
               power_map(handle.box.ops(), 3));
  Report fail = verify_homomorphism(bad, W, W, 500, 9);
  CHECK(fail.failures > 0);
}
