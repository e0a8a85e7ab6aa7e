#pragma once

#include <vector>

#include "bbg/ffield.hpp"

namespace bbg {

/// Square matrix over an explicit field, row-major. The field is passed to
/// each operation rather than stored per matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(unsigned dim, std::vector<FieldElement> entries)
      : dim_(dim), m_(std::move(entries)) {}

  static Matrix identity(const ExplicitField& F, unsigned dim);
  static Matrix zero(const ExplicitField& F, unsigned dim);

  unsigned dim() const { return dim_; }
  const FieldElement& at(unsigned i, unsigned j) const { return m_[i * dim_ + j]; }
  FieldElement& at(unsigned i, unsigned j) { return m_[i * dim_ + j]; }
  const std::vector<FieldElement>& entries() const { return m_; }

  bool operator==(const Matrix& o) const = default;

 private:
  unsigned dim_ = 0;
  std::vector<FieldElement> m_;
};

Matrix mat_mul(const ExplicitField& F, const Matrix& a, const Matrix& b);
Matrix mat_pow(const ExplicitField& F, Matrix a, Bigint e);  // e >= 0
FieldElement mat_det(const ExplicitField& F, const Matrix& a);
/// Gauss-Jordan inverse; throws std::domain_error when singular.
Matrix mat_inv(const ExplicitField& F, const Matrix& a);
Matrix mat_transpose(const Matrix& a);
FieldElement mat_trace(const ExplicitField& F, const Matrix& a);
Matrix mat_scalar_mul(const ExplicitField& F, const FieldElement& s, const Matrix& a);
/// Entrywise a^(p^j).
Matrix mat_frobenius(const ExplicitField& F, const Matrix& a, unsigned j);
bool mat_is_identity(const ExplicitField& F, const Matrix& a);

}  // namespace bbg
