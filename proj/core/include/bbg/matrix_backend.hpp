#pragma once

#include "bbg/blackbox.hpp"
#include "bbg/matrix.hpp"

namespace bbg {

/// Oracle operations over a matrix group, strings being the bit-exact matrix
/// encoding (row-major, each entry n coefficients ascending basis power, each
/// coefficient a big-endian fixed-width unsigned of ceil(bits(p)/8) bytes).
///
/// With quotient enabled, eq compares modulo the enumerated center scalars
/// {lambda : lambda^dim = 1}, which realizes non-unique encryption; strings
/// are never canonicalized.
///
/// Algorithm modules must not touch this class: they see only GroupOps /
/// BlackBox. Decoding is reserved for the construction layer and the
/// white-box harness.
class MatrixOps : public GroupOps {
 public:
  MatrixOps(FieldPtr field, unsigned dim, bool quotient_center);

  std::size_t string_length() const override;
  GroupString identity() const override;
  GroupString mul(const GroupString& a, const GroupString& b) const override;
  GroupString inv(const GroupString& a) const override;
  bool eq(const GroupString& a, const GroupString& b) const override;

  GroupString encode(const Matrix& m) const;
  Matrix decode(const GroupString& s) const;

  const ExplicitField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  unsigned dim() const { return dim_; }
  bool quotient() const { return quotient_; }
  /// Scalars lambda with lambda^dim = 1 (size 1 when quotient is off).
  const std::vector<FieldElement>& center_scalars() const { return center_; }

 private:
  FieldPtr field_;
  unsigned dim_;
  bool quotient_;
  std::vector<FieldElement> center_;
};

/// Backend handle: the box plus the decoding capability for the harness.
struct MatrixBackendHandle {
  BlackBox box;
  std::shared_ptr<const MatrixOps> ops;
};

/// Box over the subgroup of GL_dim(F) generated by the given matrices;
/// sampling is product replacement seeded from the generators, and the
/// default exponent is global_exponent_gl. Throws on singular generators.
MatrixBackendHandle bb_matrix(FieldPtr field, unsigned dim, std::span<const Matrix> gens,
                              bool quotient_center, PrParams params = {},
                              std::uint64_t seed = 0);

/// Standard generators: SL_n(q) is generated by the root transvections
/// x_{i,i+1}(b) and x_{i+1,i}(b) for b running over a basis of F over F_p.
std::vector<Matrix> sl_generators(const ExplicitField& F, unsigned dim);

}  // namespace bbg
