#pragma once

#include <functional>

#include "bbg/blackbox.hpp"
#include "bbg/ffield.hpp"

namespace bbg {

/// Black box field: oracle bundle over a finite field of known
/// characteristic. rand mutates instance-local state; everything else is
/// pure.
class BlackBoxField {
 public:
  using BinaryOp = std::function<GroupString(const GroupString&, const GroupString&)>;
  using UnaryOp = std::function<GroupString(const GroupString&)>;
  using EqOp = std::function<bool(const GroupString&, const GroupString&)>;
  using RandOp = std::function<GroupString()>;

  BlackBoxField(std::size_t string_length, Bigint characteristic, RandOp rand, BinaryOp add,
                BinaryOp mul, UnaryOp inv, EqOp eq, GroupString zero, GroupString one);

  std::size_t string_length() const { return l_; }
  const Bigint& characteristic() const { return p_; }

  GroupString rand() { return rand_(); }
  GroupString add(const GroupString& a, const GroupString& b) const { return add_(a, b); }
  GroupString mul(const GroupString& a, const GroupString& b) const { return mul_(a, b); }
  /// x^{-1} for x != 0; throws std::domain_error on zero.
  GroupString inv(const GroupString& a) const { return inv_(a); }
  bool eq(const GroupString& a, const GroupString& b) const { return eq_(a, b); }
  const GroupString& zero() const { return zero_; }
  const GroupString& one() const { return one_; }

 private:
  std::size_t l_;
  Bigint p_;
  RandOp rand_;
  BinaryOp add_, mul_;
  UnaryOp inv_;
  EqOp eq_;
  GroupString zero_, one_;
};

/// White-box-backed oracle over an explicit field: strings are the bit-exact
/// element encoding, eq is literal byte equality (unique encryption).
BlackBoxField bbf_wrap(FieldPtr F, std::uint64_t seed = 0);

/// The canonical morphism F_p -> K: the sum of m copies of the unit string
/// (computed by double-and-add); m is reduced mod p.
GroupString bbf_prime_embed(const BlackBoxField& K, const Bigint& m);

/// The unique m in [0, p) with prime_embed(m) = x, by linear scan; requires x
/// in the prime subfield and p small enough for a p-step scan. Throws when no
/// m matches.
Bigint bbf_small_dlog(const BlackBoxField& K, const GroupString& x);

/// Morphism of black box fields given pointwise.
struct FieldMorphism {
  std::function<GroupString(const GroupString&)> map;
};

/// Interface slot for extending a prime-subfield morphism K_0 -> L_0 to a
/// full-field morphism K -> L. Only the identity backend ships: when K and L
/// are the same oracle and the given morphism fixes the unit, the identity
/// morphism is returned; every other input reports the missing construction.
FieldMorphism extend_prime_morphism(const BlackBoxField& K, const BlackBoxField& L,
                                    const FieldMorphism& prime_morphism);

}  // namespace bbg
