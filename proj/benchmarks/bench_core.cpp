#include <benchmark/benchmark.h>

#include "bbg/cyclic.hpp"
#include "bbg/matrix_backend.hpp"
#include "bbg/standard.hpp"
#include "bbg/twisted.hpp"

using namespace bbg;

namespace {

FieldPtr make_field(long p, unsigned n) {
  return ExplicitField::from_polynomial(p, n, find_irreducible(p, n));
}

FieldPtr big_field() {
  static FieldPtr F = [] {
    const Bigint p("622288097498926496141095869268883999563096063592498055290461");
    return ExplicitField::from_polynomial(p, 2, find_irreducible(p, 2));
  }();
  return F;
}

void BM_field_mul_small(benchmark::State& state) {
  auto F = make_field(5, 2);
  Rng rng(1);
  FieldElement a = F->element({rng.below_big(5), rng.below_big(5)});
  FieldElement b = F->element({rng.below_big(5), rng.below_big(5)});
  for (auto _ : state) {
    a = F->mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_field_mul_small);

void BM_field_mul_60_digit(benchmark::State& state) {
  auto F = big_field();
  Rng rng(1);
  FieldElement a = F->element({rng.below_big(F->p()), rng.below_big(F->p())});
  FieldElement b = F->element({rng.below_big(F->p()), rng.below_big(F->p())});
  for (auto _ : state) {
    a = F->mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_field_mul_60_digit);

void BM_matrix_oracle_mul(benchmark::State& state) {
  auto F = make_field(5, 2);
  auto handle = bb_matrix(F, 3, sl_generators(*F, 3), false, {}, 2);
  const GroupString a = handle.box.rand();
  const GroupString b = handle.box.rand();
  for (auto _ : state) {
    benchmark::DoNotOptimize(handle.box.mul(a, b));
  }
}
BENCHMARK(BM_matrix_oracle_mul);

void BM_product_replacement_rand(benchmark::State& state) {
  auto F = make_field(5, 2);
  auto handle = bb_matrix(F, 3, sl_generators(*F, 3), false, {}, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(handle.box.rand());
  }
}
BENCHMARK(BM_product_replacement_rand);

void BM_rho_order_1024(benchmark::State& state) {
  // cyclic group of order 1024 inside GL_1(12289)
  auto F = ExplicitField::from_polynomial(12289, 1, {Bigint(0), Bigint(1)});
  const Bigint gen = powm(Bigint(11), Bigint(12288 / 1024), Bigint(12289));
  Matrix g(1, {F->element({gen})});
  auto handle = bb_matrix(F, 1, {{g}}, false, {}, 4);
  const GroupString x = handle.ops->encode(g);
  const GroupString y = bb_pow(handle.box, x, 6);
  const auto E = FactoredInteger::trial_division(1024);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho(handle.box, x, y, *E));
  }
}
BENCHMARK(BM_rho_order_1024);

void BM_kk_involution_sl2_256(benchmark::State& state) {
  auto F = make_field(2, 8);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 5);
  const auto E = FactoredInteger::trial_division(*handle.box.exponent());
  for (auto _ : state) {
    benchmark::DoNotOptimize(kk_involution(handle.box, *E, 64));
  }
}
BENCHMARK(BM_kk_involution_sl2_256);

void BM_su_subgroup_sample_60_digit(benchmark::State& state) {
  auto F = big_field();
  auto handle = bb_matrix(F, 3, sl_generators(*F, 3), false, {}, 6);
  const CurtisTitsDatum datum = standard_sl_datum(*handle.ops, 6);
  const Bigint p = F->p();
  BlackBox su = su_subgroup(handle.box, datum, p, SuOptions{4, 64, 7});
  for (auto _ : state) {
    benchmark::DoNotOptimize(su.rand());
  }
}
BENCHMARK(BM_su_subgroup_sample_60_digit);

}  // namespace

BENCHMARK_MAIN();
