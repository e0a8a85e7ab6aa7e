#pragma once

#include "bbg/cyclic.hpp"

namespace bbg {

/// Order declared by a datum builder; the factorization is optional and
/// enables exact-order checks when present.
struct DeclaredOrder {
  Bigint value;
  std::optional<FactoredInteger> factored;
};

/// One node of a Curtis-Tits system: generators of the root SL_2 subgroup,
/// split and twisted torus generators with declared orders, and a Weyl
/// element inverting the split torus.
struct CurtisTitsNode {
  std::vector<GroupString> k_gens;
  GroupString t_split;
  DeclaredOrder split_order;
  GroupString t_twisted;
  DeclaredOrder twisted_order;
  GroupString weyl;
};

struct CurtisTitsDatum {
  std::vector<CurtisTitsNode> nodes;
  Bigint q;  // field size of the ambient group's natural module

  unsigned rank() const { return static_cast<unsigned>(nodes.size()); }
};

/// Oracle-checkable datum invariants: w inverts t_split, and the declared
/// orders annihilate their tori (exact orders are additionally verified when
/// a factorization travels with the datum). Throws on violation.
void check_datum(const BlackBox& X, const CurtisTitsDatum& datum);

}  // namespace bbg
