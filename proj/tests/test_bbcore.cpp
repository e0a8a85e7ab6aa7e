#include "doctest.h"

#include "bbg/harness.hpp"
#include "bbg/matrix_backend.hpp"

#include <map>
#include <set>

using namespace bbg;

namespace {

FieldPtr make_field(long p, unsigned n) {
  return ExplicitField::from_polynomial(p, n, find_irreducible(p, n));
}

Matrix mat2(const ExplicitField& F, long a, long b, long c, long d) {
  return Matrix(2, {F.scalar(a), F.scalar(b), F.scalar(c), F.scalar(d)});
}

// brute force: enumerate all of GL_n(q) and take the lcm of element orders
Bigint gl_exponent_census(const ExplicitField& F, unsigned dim) {
  REQUIRE(F.order() <= 16);
  std::vector<Matrix> all;
  const long q = static_cast<long>(F.order());
  long total = 1;
  for (unsigned i = 0; i < dim * dim; ++i) total *= q;
  for (long idx = 0; idx < total; ++idx) {
    long v = idx;
    std::vector<FieldElement> entries;
    for (unsigned e = 0; e < dim * dim; ++e) {
      entries.push_back(F.element_at(static_cast<std::uint32_t>(v % q)));
      v /= q;
    }
    Matrix m(dim, std::move(entries));
    if (!F.is_zero(mat_det(F, m))) all.push_back(std::move(m));
  }
  Bigint e = 1;
  for (const auto& m : all) {
    Bigint o = 1;
    Matrix r = m;
    while (!mat_is_identity(F, r)) {
      r = mat_mul(F, r, m);
      ++o;
    }
    e = lcm(e, o);
  }
  return e;
}

}  // namespace

TEST_CASE("global exponent formula against brute-force element-order lcm") {
  auto F3 = make_field(3, 1);
  CHECK(gl_exponent_census(*F3, 2) == 24);
  CHECK(global_exponent_gl(2, 3, 1) == 24);
  auto F4 = make_field(2, 2);
  CHECK(gl_exponent_census(*F4, 2) == 30);
  CHECK(global_exponent_gl(2, 2, 2) == 30);
  // GL_1(q) is the multiplicative group
  CHECK(global_exponent_gl(1, 7, 1) == 6);
  CHECK(global_exponent_gl(1, 3, 2) == 8);
}

TEST_CASE("SL2(F4) box from the standard transvections has l = 4 field elements") {
  auto F = make_field(2, 2);
  const std::vector<Matrix> gens = {mat2(*F, 1, 1, 0, 1), mat2(*F, 1, 0, 1, 1)};
  auto handle = bb_matrix(F, 2, gens, false);
  CHECK(handle.box.string_length() == 4 * F->element_byte_width());
  CHECK(handle.box.string_length() == 8);
  CHECK(handle.box.exponent() == Bigint(30));
}

TEST_CASE("singular generators are rejected") {
  auto F = make_field(7, 1);
  const std::vector<Matrix> gens = {mat2(*F, 1, 1, 2, 2)};
  CHECK_THROWS_AS(bb_matrix(F, 2, gens, false), std::invalid_argument);
  CHECK_THROWS_AS(bb_matrix(F, 0, gens, false), std::invalid_argument);
}

TEST_CASE("central quotient equality: M and -M encrypt the same PSL element") {
  auto F = make_field(3, 2);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), true);
  const auto& ops = *handle.ops;
  const Matrix m = mat2(*F, 1, 1, 0, 1);
  const Matrix neg = mat_scalar_mul(*F, F->neg(F->one()), m);
  CHECK(ops.eq(ops.encode(m), ops.encode(neg)));
  CHECK(!(ops.encode(m) == ops.encode(neg)));  // strings differ, eq identifies
  // without the quotient flag the strings are inequivalent
  auto plain = bb_matrix(F, 2, sl_generators(*F, 2), false);
  CHECK(!plain.ops->eq(plain.ops->encode(m), plain.ops->encode(neg)));
}

TEST_CASE("bb_eq distinguishes distinct diagonals in SL2(F7)") {
  auto F = make_field(7, 1);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false);
  const auto& ops = *handle.ops;
  CHECK(!ops.eq(ops.encode(mat2(*F, 3, 0, 0, 5)), ops.encode(mat2(*F, 5, 0, 0, 3))));
  CHECK(ops.eq(ops.encode(mat2(*F, 3, 0, 0, 5)), ops.encode(mat2(*F, 3, 0, 0, 5))));
}

TEST_CASE("oracle laws: x * x^-1 = 1, associativity on random triples") {
  auto F = make_field(5, 1);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 11);
  BlackBox& X = handle.box;
  for (int t = 0; t < 1000; ++t) {
    const GroupString x = X.rand(), y = X.rand(), z = X.rand();
    CHECK(X.eq(X.mul(x, X.inv(x)), X.identity()));
    CHECK(X.eq(X.mul(X.mul(x, y), z), X.mul(x, X.mul(y, z))));
  }
}

TEST_CASE("x^E = 1 for the declared global exponent") {
  auto F = make_field(3, 2);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 3);
  BlackBox& X = handle.box;
  REQUIRE(X.exponent().has_value());
  for (int t = 0; t < 100; ++t)
    CHECK(X.is_identity(bb_pow(X, X.rand(), *X.exponent())));
}

TEST_CASE("identical seeds give identical sample sequences; clones are independent") {
  auto F = make_field(5, 1);
  auto h1 = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 99);
  auto h2 = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 99);
  for (int t = 0; t < 20; ++t) CHECK(h1.box.rand() == h2.box.rand());
  BlackBox c1 = h1.box.clone(1), c2 = h1.box.clone(1), c3 = h1.box.clone(2);
  bool all_equal_13 = true;
  for (int t = 0; t < 20; ++t) {
    const GroupString a = c1.rand(), b = c2.rand(), c = c3.rand();
    CHECK(a == b);
    all_equal_13 = all_equal_13 && (a == c);
  }
  CHECK(!all_equal_13);
}

TEST_CASE("white-box census: SL2(F5) sampling reaches all 120 elements within 5 sigma") {
  auto F = make_field(5, 1);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 2024);
  WhiteBox W(handle.ops);
  auto counts = sample_census(handle.box, W, 12000);
  CHECK(counts.size() == 120);
  const double expect = 12000.0 / 120.0;
  const double sigma = std::sqrt(12000.0 * (1.0 / 120.0) * (119.0 / 120.0));
  for (const auto& [key, c] : counts) {
    CHECK(std::abs(static_cast<double>(c) - expect) <= 5.0 * sigma);
  }
}

TEST_CASE("direct product: lengths add, eq is componentwise, census covers C2 x C3") {
  auto F = make_field(7, 1);
  const std::vector<Matrix> g2 = {Matrix(1, {F->scalar(6)})};  // order 2 in F7*
  const std::vector<Matrix> g3 = {Matrix(1, {F->scalar(2)})};  // order 3 in F7*
  auto h2 = bb_matrix(F, 1, g2, false, {}, 5);
  auto h3 = bb_matrix(F, 1, g3, false, {}, 6);
  const std::size_t l2 = h2.box.string_length(), l3 = h3.box.string_length();
  BlackBox prod = bb_direct_product(std::move(h2.box), std::move(h3.box));
  CHECK(prod.string_length() == l2 + l3);
  CHECK(prod.exponent() == Bigint(6));

  std::set<std::vector<std::uint8_t>> seen;
  for (int t = 0; t < 600; ++t) seen.insert(prod.rand().bytes());
  CHECK(seen.size() == 6);

  const GroupString s = prod.rand();
  CHECK(prod.eq(s, s));
  CHECK(prod.eq(prod.mul(s, prod.inv(s)), prod.identity()));
}

TEST_CASE("generated subgroup: identity seeds sample only the identity") {
  auto F = make_field(5, 1);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 1);
  const std::vector<GroupString> seeds = {handle.box.identity()};
  BlackBox sub = bb_generated(handle.box, seeds);
  for (int t = 0; t < 50; ++t) CHECK(sub.is_identity(sub.rand()));
}

TEST_CASE("generated subgroup: transvection seeds reach all of SL2(F5)") {
  auto F = make_field(5, 1);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 1);
  const std::vector<GroupString> seeds = {handle.ops->encode(mat2(*F, 1, 1, 0, 1)),
                                          handle.ops->encode(mat2(*F, 1, 0, 1, 1))};
  BlackBox sub = bb_generated(handle.box, seeds, {}, 17);
  WhiteBox W(handle.ops);
  auto counts = sample_census(sub, W, 12000);
  CHECK(counts.size() == 120);
}

TEST_CASE("generated subgroup: single seed of order 6 stays inside the cyclic group") {
  auto F = make_field(7, 1);
  auto handle = bb_matrix(F, 1, {{Matrix(1, {F->scalar(3)})}}, false, {}, 1);
  const std::vector<GroupString> seeds = {handle.ops->encode(Matrix(1, {F->scalar(3)}))};
  BlackBox sub = bb_generated(handle.box, seeds, {}, 23);
  std::set<std::vector<std::uint8_t>> cyc;
  Matrix r = Matrix::identity(*F, 1);
  for (int i = 0; i < 6; ++i) {
    cyc.insert(handle.ops->encode(r).bytes());
    r = mat_mul(*F, r, Matrix(1, {F->scalar(3)}));
  }
  std::set<std::vector<std::uint8_t>> seen;
  for (int t = 0; t < 400; ++t) {
    const GroupString s = sub.rand();
    CHECK(cyc.count(s.bytes()));
    seen.insert(s.bytes());
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("empty seed list is rejected") {
  auto F = make_field(5, 1);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false);
  CHECK_THROWS_AS(bb_generated(handle.box, {}), std::invalid_argument);
}

TEST_CASE("product replacement slots stay inside the seeded subgroup") {
  auto F = make_field(5, 1);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false);
  const Matrix g = mat2(*F, 2, 0, 0, 3);  // order 4
  const std::vector<GroupString> seeds = {handle.ops->encode(g)};
  GeneratedSampler sampler(handle.ops, seeds, {}, 7);
  std::set<std::vector<std::uint8_t>> cyc;
  Matrix r = Matrix::identity(*F, 2);
  for (int i = 0; i < 4; ++i) {
    cyc.insert(handle.ops->encode(r).bytes());
    r = mat_mul(*F, r, g);
  }
  for (const auto& slot : sampler.state().slots()) CHECK(cyc.count(slot.bytes()));
  CHECK(sampler.state().steps_taken() == 50);
}

TEST_CASE("quotient eq-classes have size |{lambda : lambda^dim = 1}|") {
  auto F = make_field(13, 1);
  auto plain = bb_matrix(F, 2, sl_generators(*F, 2), false, {}, 4);
  auto quot = bb_matrix(F, 2, sl_generators(*F, 2), true, {}, 4);
  CHECK(quot.ops->center_scalars().size() == 2);  // lambda^2 = 1: {1, -1}
  WhiteBox Wp(plain.ops);
  WhiteBox Wq(quot.ops);
  auto plain_counts = sample_census(plain.box, Wp, 30000);
  auto quot_counts = sample_census(quot.box, Wq, 30000);
  CHECK(plain_counts.size() == 1092 * 2);  // |SL2(13)| = 2184
  CHECK(quot_counts.size() == 1092);       // |PSL2(13)| = 1092
  // uniformity at significance 1e-3 on the quotient backend
  const double stat = chi_square_uniform(quot_counts, 1092, 30000);
  CHECK(stat < chi_square_quantile(1091, 1e-3));
}

TEST_CASE("string length mismatches are rejected by the oracles") {
  auto F = make_field(5, 1);
  auto handle = bb_matrix(F, 2, sl_generators(*F, 2), false);
  const GroupString bad(std::vector<std::uint8_t>{1, 2, 3});
  CHECK_THROWS_AS(handle.box.mul(bad, handle.box.identity()), std::invalid_argument);
  CHECK_THROWS_AS(handle.box.eq(bad, bad), std::invalid_argument);
}
