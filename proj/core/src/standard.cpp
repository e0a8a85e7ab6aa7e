#include "bbg/standard.hpp"

#include <stdexcept>

namespace bbg {

FieldElement primitive_element(const ExplicitField& F) {
  if (!F.small()) throw std::logic_error("primitive_element: field too large");
  const std::uint32_t q = static_cast<std::uint32_t>(F.order());
  for (std::uint32_t i = 1; i < q; ++i) {
    FieldElement g = F.element_at(i);
    FieldElement r = g;
    std::uint32_t o = 1;
    while (!(r == F.one())) {
      r = F.mul(r, g);
      ++o;
    }
    if (o == q - 1) return g;
  }
  throw std::logic_error("primitive_element: none found");
}

std::optional<FieldElement> sqrt_minus_one(const ExplicitField& F, Rng& rng) {
  const FieldElement minus_one = F.neg(F.one());
  if (F.small()) {
    const std::uint32_t q = static_cast<std::uint32_t>(F.order());
    for (std::uint32_t i = 1; i < q; ++i) {
      FieldElement x = F.element_at(i);
      if (F.mul(x, x) == minus_one) return x;
    }
    return std::nullopt;
  }
  if ((F.order() - 1) % 4 != 0) return std::nullopt;
  const Bigint e = (F.order() - 1) / 4;
  for (int t = 0; t < 256; ++t) {
    std::vector<Bigint> c(F.n());
    for (unsigned i = 0; i < F.n(); ++i) c[i] = rng.below_big(F.p());
    FieldElement x(std::move(c));
    if (F.is_zero(x)) continue;
    FieldElement i4 = F.pow(x, e);
    if (F.mul(i4, i4) == minus_one) return i4;
  }
  return std::nullopt;
}

std::pair<Matrix, DeclaredOrder> twisted_torus_generator(const ExplicitField& F, Rng& rng) {
  const FieldElement one = F.one();
  auto circle_matrix = [&](const FieldElement& a, const FieldElement& b) {
    Matrix m = Matrix::identity(F, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = F.neg(b);
    m.at(1, 1) = a;
    return m;
  };
  if (F.small()) {
    // enumerate the circle a^2 + b^2 = 1 and take a maximal-order point
    const std::uint32_t q = static_cast<std::uint32_t>(F.order());
    Matrix best = Matrix::identity(F, 2);
    Bigint best_order = 1;
    for (std::uint32_t ia = 0; ia < q; ++ia) {
      for (std::uint32_t ib = 0; ib < q; ++ib) {
        FieldElement a = F.element_at(ia), b = F.element_at(ib);
        if (!(F.add(F.mul(a, a), F.mul(b, b)) == one)) continue;
        Matrix m = circle_matrix(a, b);
        Bigint o = 1;
        Matrix r = m;
        while (!mat_is_identity(F, r)) {
          r = mat_mul(F, r, m);
          ++o;
        }
        if (o > best_order) {
          best_order = o;
          best = std::move(m);
        }
      }
    }
    FactoredInteger f = *FactoredInteger::trial_division(best_order);
    return {best, DeclaredOrder{best_order, std::move(f)}};
  }
  const auto i = sqrt_minus_one(F, rng);
  if (!i)
    throw std::logic_error(
        "twisted_torus_generator: large field without sqrt(-1) is unsupported");
  const FieldElement two_inv = F.inv(F.scalar(2));
  for (int t = 0; t < 256; ++t) {
    std::vector<Bigint> c(F.n());
    for (unsigned j = 0; j < F.n(); ++j) c[j] = rng.below_big(F.p());
    FieldElement s(std::move(c));
    if (F.is_zero(s) || s == one) continue;
    const FieldElement si = F.inv(s);
    const FieldElement a = F.mul(F.add(s, si), two_inv);
    const FieldElement b = F.mul(F.sub(s, si), F.inv(F.mul(F.scalar(2), *i)));
    Matrix m = circle_matrix(a, b);
    if (F.add(F.mul(a, a), F.mul(b, b)) == one)
      return {std::move(m), DeclaredOrder{F.order() - 1, std::nullopt}};
  }
  throw std::logic_error("twisted_torus_generator: sampling failed");
}

namespace {

Matrix embed_block(const ExplicitField& F, unsigned dim, unsigned node, const Matrix& block) {
  Matrix m = Matrix::identity(F, dim);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) m.at(node + i, node + j) = block.at(i, j);
  return m;
}

}  // namespace

CurtisTitsDatum standard_sl_datum(const MatrixOps& ops, std::uint64_t seed) {
  const ExplicitField& F = ops.field();
  const unsigned dim = ops.dim();
  if (dim < 2) throw std::invalid_argument("standard_sl_datum: dimension must be >= 2");
  Rng rng(seed ^ 0xda7a0ull);

  // split torus scalar: a primitive element when the field is small enough
  // to certify one, otherwise a random invertible scalar (declared order is
  // then only an annihilator)
  FieldElement lambda;
  DeclaredOrder split_order;
  if (F.small()) {
    lambda = primitive_element(F);
    split_order =
        DeclaredOrder{F.order() - 1, FactoredInteger::trial_division(F.order() - 1)};
  } else {
    std::vector<Bigint> c(F.n());
    for (unsigned i = 0; i < F.n(); ++i) c[i] = rng.below_big(F.p());
    lambda = FieldElement(std::move(c));
    if (F.is_zero(lambda)) lambda = F.one();
    split_order = DeclaredOrder{F.order() - 1, std::nullopt};
  }

  auto [tw_block, tw_order] = twisted_torus_generator(F, rng);

  Matrix w_block = Matrix::zero(F, 2);
  w_block.at(0, 1) = F.one();
  w_block.at(1, 0) = F.neg(F.one());

  CurtisTitsDatum datum;
  datum.q = F.order();
  for (unsigned node = 0; node + 1 < dim; ++node) {
    CurtisTitsNode nd;
    Matrix up = Matrix::identity(F, dim);
    up.at(node, node + 1) = F.one();
    Matrix lo = Matrix::identity(F, dim);
    lo.at(node + 1, node) = F.one();
    nd.k_gens.push_back(ops.encode(up));
    nd.k_gens.push_back(ops.encode(lo));

    Matrix split = Matrix::identity(F, dim);
    split.at(node, node) = lambda;
    split.at(node + 1, node + 1) = F.inv(lambda);
    nd.t_split = ops.encode(split);
    nd.split_order = split_order;

    nd.t_twisted = ops.encode(embed_block(F, dim, node, tw_block));
    nd.twisted_order = tw_order;

    nd.weyl = ops.encode(embed_block(F, dim, node, w_block));
    datum.nodes.push_back(std::move(nd));
  }
  return datum;
}

}  // namespace bbg
