#include "bbg/matrix.hpp"

#include <stdexcept>

namespace bbg {

Matrix Matrix::identity(const ExplicitField& F, unsigned dim) {
  std::vector<FieldElement> m;
  m.reserve(static_cast<std::size_t>(dim) * dim);
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j) m.push_back(i == j ? F.one() : F.zero());
  return Matrix(dim, std::move(m));
}

Matrix Matrix::zero(const ExplicitField& F, unsigned dim) {
  return Matrix(dim, std::vector<FieldElement>(static_cast<std::size_t>(dim) * dim, F.zero()));
}

Matrix mat_mul(const ExplicitField& F, const Matrix& a, const Matrix& b) {
  const unsigned n = a.dim();
  if (b.dim() != n) throw std::invalid_argument("mat_mul: dimension mismatch");
  Matrix out = Matrix::zero(F, n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned k = 0; k < n; ++k) {
      const FieldElement& aik = a.at(i, k);
      if (F.is_zero(aik)) continue;
      for (unsigned j = 0; j < n; ++j) {
        out.at(i, j) = F.add(out.at(i, j), F.mul(aik, b.at(k, j)));
      }
    }
  }
  return out;
}

Matrix mat_pow(const ExplicitField& F, Matrix a, Bigint e) {
  if (e < 0) throw std::invalid_argument("mat_pow: negative exponent");
  Matrix r = Matrix::identity(F, a.dim());
  while (e > 0) {
    if ((e & 1) != 0) r = mat_mul(F, r, a);
    a = mat_mul(F, a, a);
    e >>= 1;
  }
  return r;
}

namespace {

// returns (det, inverse?) by Gauss-Jordan on [A | I]
std::pair<FieldElement, std::optional<Matrix>> eliminate(const ExplicitField& F,
                                                         const Matrix& a,
                                                         bool want_inverse) {
  const unsigned n = a.dim();
  Matrix A = a;
  Matrix inv = Matrix::identity(F, n);
  FieldElement det = F.one();
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && F.is_zero(A.at(piv, col))) ++piv;
    if (piv == n) return {F.zero(), std::nullopt};
    if (piv != col) {
      for (unsigned j = 0; j < n; ++j) {
        std::swap(A.at(piv, j), A.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
      det = F.neg(det);
    }
    const FieldElement pivot = A.at(col, col);
    det = F.mul(det, pivot);
    const FieldElement pinv = F.inv(pivot);
    for (unsigned j = 0; j < n; ++j) {
      A.at(col, j) = F.mul(A.at(col, j), pinv);
      if (want_inverse) inv.at(col, j) = F.mul(inv.at(col, j), pinv);
    }
    for (unsigned r = 0; r < n; ++r) {
      if (r == col || F.is_zero(A.at(r, col))) continue;
      const FieldElement c = A.at(r, col);
      for (unsigned j = 0; j < n; ++j) {
        A.at(r, j) = F.sub(A.at(r, j), F.mul(c, A.at(col, j)));
        if (want_inverse) inv.at(r, j) = F.sub(inv.at(r, j), F.mul(c, inv.at(col, j)));
      }
    }
  }
  if (want_inverse) return {det, std::move(inv)};
  return {det, std::nullopt};
}

}  // namespace

FieldElement mat_det(const ExplicitField& F, const Matrix& a) {
  return eliminate(F, a, false).first;
}

Matrix mat_inv(const ExplicitField& F, const Matrix& a) {
  auto [det, inv] = eliminate(F, a, true);
  if (!inv) throw std::domain_error("mat_inv: singular matrix");
  return std::move(*inv);
}

Matrix mat_transpose(const Matrix& a) {
  const unsigned n = a.dim();
  Matrix out = a;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) out.at(i, j) = a.at(j, i);
  return out;
}

FieldElement mat_trace(const ExplicitField& F, const Matrix& a) {
  FieldElement t = F.zero();
  for (unsigned i = 0; i < a.dim(); ++i) t = F.add(t, a.at(i, i));
  return t;
}

Matrix mat_scalar_mul(const ExplicitField& F, const FieldElement& s, const Matrix& a) {
  Matrix out = a;
  for (unsigned i = 0; i < a.dim(); ++i)
    for (unsigned j = 0; j < a.dim(); ++j) out.at(i, j) = F.mul(s, a.at(i, j));
  return out;
}

Matrix mat_frobenius(const ExplicitField& F, const Matrix& a, unsigned j) {
  Matrix out = a;
  for (unsigned r = 0; r < a.dim(); ++r)
    for (unsigned c = 0; c < a.dim(); ++c) out.at(r, c) = F.frobenius(a.at(r, c), j);
  return out;
}

bool mat_is_identity(const ExplicitField& F, const Matrix& a) {
  for (unsigned i = 0; i < a.dim(); ++i)
    for (unsigned j = 0; j < a.dim(); ++j) {
      if (i == j) {
        if (!(a.at(i, j) == F.one())) return false;
      } else if (!F.is_zero(a.at(i, j))) {
        return false;
      }
    }
  return true;
}

}  // namespace bbg
