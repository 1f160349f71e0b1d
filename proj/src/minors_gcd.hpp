#pragma once

// Internal helpers for the minors validation strategy and the determinant
// cross-check: exact determinants of matrices of forms, and gcds of
// homogeneous trivariate forms over Q (via dehomogenization to a primitive
// pseudo-remainder sequence in (Q[Y1])[Y0]).

#include "steiner/polygeom.hpp"

namespace steiner::detail {

/// Determinant of a square matrix of degree-1 forms (Laplace expansion with
/// a row-subset memo). Returns a form of degree = size.
HomForm pencil_minor(const std::vector<std::vector<HomForm>>& entries);

/// Gcd of two homogeneous forms in 3 variables over Q, normalized to a
/// deterministic representative. gcd with the zero form is the other form.
HomForm hom_gcd(const HomForm& a, const HomForm& b);

} // namespace steiner::detail
