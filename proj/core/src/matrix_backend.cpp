#include "bbg/matrix_backend.hpp"

#include <stdexcept>

namespace bbg {

namespace {

// Scalars lambda in F* with lambda^dim = 1: the cyclic group of order
// d = gcd(dim, q-1). A generator is found as x^((q-1)/d) over a deterministic
// sweep of canonical elements, checking the exact order via the prime
// divisors of d (d <= dim, so the factorization is trivial).
std::vector<FieldElement> enumerate_center(const ExplicitField& F, unsigned dim) {
  const Bigint q1 = F.order() - 1;
  Bigint d = gcd(Bigint(dim), q1);
  if (d == 1) return {F.one()};
  const unsigned du = static_cast<unsigned>(d);
  std::vector<unsigned> rs;
  {
    unsigned m = du;
    for (unsigned r = 2; r * r <= m; ++r)
      if (m % r == 0) {
        rs.push_back(r);
        while (m % r == 0) m /= r;
      }
    if (m > 1) rs.push_back(m);
  }
  const Bigint cof = q1 / d;
  // sweep: 1+t, t, 2, 3, ... in canonical coordinates
  for (std::uint64_t trial = 0; trial < 4096; ++trial) {
    std::vector<Bigint> coeffs(F.n(), Bigint(0));
    // mixed-radix walk through small coefficient vectors, skipping zero
    std::uint64_t v = trial + 1;
    for (unsigned i = 0; i < F.n() && v; ++i) {
      coeffs[i] = Bigint(v % 251) % F.p();
      v /= 251;
    }
    FieldElement x = F.element(std::move(coeffs));
    if (F.is_zero(x)) continue;
    FieldElement z = F.pow(x, cof);
    bool exact = !(z == F.one());
    for (unsigned r : rs)
      if (exact && F.pow(z, Bigint(du / r)) == F.one()) exact = false;
    if (!exact) continue;
    std::vector<FieldElement> out;
    FieldElement w = F.one();
    for (unsigned j = 0; j < du; ++j) {
      out.push_back(w);
      w = F.mul(w, z);
    }
    return out;
  }
  throw std::runtime_error("center enumeration: no generator found");
}

}  // namespace

MatrixOps::MatrixOps(FieldPtr field, unsigned dim, bool quotient_center)
    : field_(std::move(field)), dim_(dim), quotient_(quotient_center) {
  if (dim_ < 1) throw std::invalid_argument("matrix backend: dimension must be >= 1");
  center_ = quotient_ ? enumerate_center(*field_, dim_)
                      : std::vector<FieldElement>{field_->one()};
}

std::size_t MatrixOps::string_length() const {
  return static_cast<std::size_t>(dim_) * dim_ * field_->element_byte_width();
}

GroupString MatrixOps::encode(const Matrix& m) const {
  if (m.dim() != dim_) throw std::invalid_argument("encode: dimension mismatch");
  std::vector<std::uint8_t> out(string_length());
  const std::size_t w = field_->element_byte_width();
  for (unsigned i = 0; i < dim_; ++i)
    for (unsigned j = 0; j < dim_; ++j)
      field_->encode(m.at(i, j), out.data() + (static_cast<std::size_t>(i) * dim_ + j) * w);
  return GroupString(std::move(out));
}

Matrix MatrixOps::decode(const GroupString& s) const {
  check(s);
  const std::size_t w = field_->element_byte_width();
  std::vector<FieldElement> entries;
  entries.reserve(static_cast<std::size_t>(dim_) * dim_);
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(dim_) * dim_; ++idx)
    entries.push_back(field_->decode(s.data() + idx * w));
  return Matrix(dim_, std::move(entries));
}

GroupString MatrixOps::identity() const { return encode(Matrix::identity(*field_, dim_)); }

GroupString MatrixOps::mul(const GroupString& a, const GroupString& b) const {
  return encode(mat_mul(*field_, decode(a), decode(b)));
}

GroupString MatrixOps::inv(const GroupString& a) const {
  return encode(mat_inv(*field_, decode(a)));
}

bool MatrixOps::eq(const GroupString& a, const GroupString& b) const {
  check(a);
  check(b);
  if (a == b) return true;
  if (!quotient_) return false;
  const Matrix ma = decode(a), mb = decode(b);
  for (const auto& lambda : center_) {
    if (lambda == field_->one()) continue;
    if (ma == mat_scalar_mul(*field_, lambda, mb)) return true;
  }
  return false;
}

MatrixBackendHandle bb_matrix(FieldPtr field, unsigned dim, std::span<const Matrix> gens,
                              bool quotient_center, PrParams params, std::uint64_t seed) {
  auto ops = std::make_shared<MatrixOps>(field, dim, quotient_center);
  if (gens.empty()) throw std::invalid_argument("bb_matrix: no generators");
  std::vector<GroupString> seeds;
  seeds.reserve(gens.size());
  for (const auto& g : gens) {
    if (field->is_zero(mat_det(*field, g)))
      throw std::invalid_argument("bb_matrix: singular generator");
    seeds.push_back(ops->encode(g));
  }
  Bigint e = global_exponent_gl(dim, field->p(), field->n());
  BlackBox box = bb_generated(ops, e, seeds, params, seed);
  return MatrixBackendHandle{std::move(box), std::move(ops)};
}

std::vector<Matrix> sl_generators(const ExplicitField& F, unsigned dim) {
  if (dim < 2) throw std::invalid_argument("sl_generators: dimension must be >= 2");
  std::vector<Matrix> gens;
  for (unsigned node = 0; node + 1 < dim; ++node) {
    for (unsigned b = 0; b < F.n(); ++b) {
      std::vector<Bigint> coeffs(F.n(), Bigint(0));
      coeffs[b] = 1;
      const FieldElement beta = F.element(std::move(coeffs));
      Matrix up = Matrix::identity(F, dim);
      up.at(node, node + 1) = beta;
      gens.push_back(std::move(up));
      Matrix lo = Matrix::identity(F, dim);
      lo.at(node + 1, node) = beta;
      gens.push_back(std::move(lo));
    }
  }
  return gens;
}

}  // namespace bbg
