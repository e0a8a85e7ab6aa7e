#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bbg/bigint.hpp"

namespace bbg {

/// Element of an explicit finite field: n prime-field coefficients in [0, p),
/// least-significant basis power first.
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(std::vector<Bigint> coeffs) : coeffs_(std::move(coeffs)) {}

  const std::vector<Bigint>& coeffs() const { return coeffs_; }
  std::vector<Bigint>& coeffs() { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  bool operator==(const FieldElement& o) const = default;

 private:
  std::vector<Bigint> coeffs_;
};

/// Explicit presentation of F_{p^n}. Accepts either a monic irreducible
/// polynomial over F_p or a structure-constant table c_ijk; a table is
/// converted to an internal polynomial basis at construction (a generator of
/// the field is located, its minimal polynomial becomes the modulus, and the
/// basis change is kept so presented coordinates stay meaningful).
///
/// Immutable after creation and freely shareable; all element operations are
/// pure.
class ExplicitField {
 public:
  static std::shared_ptr<const ExplicitField> from_polynomial(
      const Bigint& p, unsigned n, std::vector<Bigint> monic_ascending);

  /// c_ijk row-major in (i, j, k), n^3 entries: s_i s_j = sum_k c_ijk s_k.
  static std::shared_ptr<const ExplicitField> from_table(
      const Bigint& p, unsigned n, const std::vector<Bigint>& c_ijk);

  const Bigint& p() const { return p_; }
  unsigned n() const { return n_; }
  const Bigint& order() const { return order_; }
  /// Monic modulus, ascending coefficients, size n+1.
  const std::vector<Bigint>& modulus() const { return modulus_; }
  bool from_table_presentation() const { return to_canonical_.has_value(); }

  FieldElement zero() const;
  FieldElement one() const;
  /// From canonical (polynomial-basis) coordinates; entries reduced mod p.
  FieldElement element(std::vector<Bigint> coeffs) const;
  /// Scalar m * 1 (prime subfield).
  FieldElement scalar(const Bigint& m) const;
  /// From coordinates in the presented basis s_1..s_n (identity map unless the
  /// field was created from a structure-constant table).
  FieldElement from_presented(const std::vector<Bigint>& coords) const;
  std::vector<Bigint> to_presented(const FieldElement& a) const;

  bool is_zero(const FieldElement& a) const;
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  /// a^{-1} for a != 0; throws std::domain_error on zero.
  FieldElement inv(const FieldElement& a) const;
  /// Binary exponentiation; negative e requires a != 0.
  FieldElement pow(const FieldElement& a, const Bigint& e) const;
  /// a^{p^j}, 0 <= j <= n.
  FieldElement frobenius(const FieldElement& a, unsigned j) const;

  /// Enumeration index for fields with at most 2^16 elements (mixed-radix of
  /// the coefficients); throws otherwise.
  std::uint32_t index_of(const FieldElement& a) const;
  FieldElement element_at(std::uint32_t idx) const;
  bool small() const { return small_order_ != 0; }

  // Bit-exact element encoding: n coefficients ascending basis power, each a
  // big-endian fixed-width unsigned of ceil(bits(p)/8) bytes.
  std::size_t coeff_byte_width() const { return coeff_width_; }
  std::size_t element_byte_width() const { return coeff_width_ * n_; }
  void encode(const FieldElement& a, std::uint8_t* out) const;
  FieldElement decode(const std::uint8_t* in) const;

  /// Randomized structure checks (associativity/distributivity/inverses on
  /// random triples); throws on violation. Runs automatically for table
  /// presentations; exposed for the harness.
  void check_axioms(Rng& rng, int triples) const;

 private:
  ExplicitField() = default;
  void init_common();
  void build_small_tables();
  FieldElement reduce(std::vector<Bigint> raw) const;  // degree < 2n-1 input

  Bigint p_;
  unsigned n_ = 0;
  Bigint order_;
  std::vector<Bigint> modulus_;
  std::size_t coeff_width_ = 1;

  // presented-basis change (table presentations only): columns of B are the
  // table coordinates of 1, g, ..., g^{n-1} for the located generator g.
  std::optional<std::vector<Bigint>> to_canonical_;    // n x n, row-major
  std::optional<std::vector<Bigint>> from_canonical_;  // inverse

  // log/exp tables for fields with at most 2^16 elements
  std::uint32_t small_order_ = 0;
  std::vector<std::uint32_t> log_;   // index -> dlog (q-1 for zero)
  std::vector<std::uint32_t> exp_;   // dlog -> index
};

using FieldPtr = std::shared_ptr<const ExplicitField>;

/// Deterministic smallest monic irreducible polynomial of degree n over F_p
/// (coefficient-lexicographic search).
std::vector<Bigint> find_irreducible(const Bigint& p, unsigned n);

/// Rabin irreducibility test for a monic polynomial over F_p.
bool polynomial_irreducible(const Bigint& p, const std::vector<Bigint>& monic_ascending);

}  // namespace bbg
