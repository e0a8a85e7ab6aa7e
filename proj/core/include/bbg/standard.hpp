#pragma once

#include "bbg/matrix_backend.hpp"
#include "bbg/twisted_datum.hpp"

namespace bbg {

/// Multiplicative generator of a small field (log tables present).
FieldElement primitive_element(const ExplicitField& F);

/// Square root of -1, when one exists: for small fields by table walk, for
/// large fields by powering random elements to (q-1)/4 (q = 1 mod 4 only).
std::optional<FieldElement> sqrt_minus_one(const ExplicitField& F, Rng& rng);

/// Generator of the torus through w = [[0,1],[-1,0]] inside SL_2(F), i.e. of
/// the norm-one group {aI + bw : a^2 + b^2 = 1}, together with its declared
/// order. Exact for small fields; for large fields with sqrt(-1) the circle
/// is parameterized by s -> ((s+1/s)/2, (s-1/s)/(2i)) and the declared order
/// is the annihilator |F*|.
std::pair<Matrix, DeclaredOrder> twisted_torus_generator(const ExplicitField& F, Rng& rng);

/// Standard Curtis-Tits datum for SL_dim over the backend's field: per node
/// the two unit root transvections (subfield entries, hence Frobenius-fixed),
/// the diagonal split torus generator, the torus through the standard Weyl
/// element, and that Weyl element.
CurtisTitsDatum standard_sl_datum(const MatrixOps& ops, std::uint64_t seed = 1);

}  // namespace bbg
