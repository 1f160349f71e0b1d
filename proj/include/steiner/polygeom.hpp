#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steiner/matrix.hpp"

namespace steiner {

/// Exponent vectors of the degree-d monomials in `nvars` variables, in
/// graded-lex order with Y0 > Y1 > ... (Y0^d first).
std::vector<std::vector<uint32_t>> monomials(uint32_t nvars, uint32_t d);

/// Number of degree-d monomials in nvars variables: C(nvars-1+d, d).
size_t monomial_count(uint32_t nvars, uint32_t d);

/// Position of an exponent vector in monomials(nvars, sum(e)).
size_t monomial_index(const std::vector<uint32_t>& e);

/// Tag recorded in serialized artifacts, e.g. "grlex:Y0>Y1>Y2".
std::string monomial_order_tag(uint32_t nvars);

/// Homogeneous form over an exact field, coefficients indexed by the
/// graded-lex monomial basis of its degree.
class HomForm {
public:
    HomForm(const Field& f, uint32_t nvars, uint32_t degree);
    static HomForm from_coeffs(const Field& f, uint32_t nvars, uint32_t degree,
                               std::vector<FieldElem> coeffs);

    const Field& field() const { return field_; }
    uint32_t nvars() const { return nvars_; }
    uint32_t degree() const { return degree_; }
    const std::vector<FieldElem>& coeffs() const { return coeffs_; }
    FieldElem coeff(size_t idx) const { return coeffs_[idx]; }
    void set_coeff(size_t idx, const FieldElem& v) { coeffs_[idx] = v; }

    bool is_zero() const;
    FieldElem evaluate(const std::vector<FieldElem>& point) const;
    HomForm mul(const HomForm& o) const;
    HomForm add(const HomForm& o) const;
    HomForm scaled(const FieldElem& c) const;
    bool operator==(const HomForm& o) const;

    /// True when the two forms differ by a nonzero scalar.
    bool proportional_to(const HomForm& o) const;

private:
    Field field_;
    uint32_t nvars_, degree_;
    std::vector<FieldElem> coeffs_;
};

/// Point of projective space with a fixed stored representative, normalized
/// so the first nonzero coordinate is 1. Equality is equality of the
/// normalized representatives.
class ProjPoint {
public:
    ProjPoint(const Field& f, std::vector<FieldElem> coords);
    static ProjPoint from_ints(const Field& f, const std::vector<long long>& coords);

    const Field& field() const { return field_; }
    size_t dim() const { return coords_.size() - 1; } // ambient projective dimension
    const std::vector<FieldElem>& coords() const { return coords_; }
    const FieldElem& coord(size_t i) const { return coords_[i]; }

    bool operator==(const ProjPoint& o) const;
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    /// Deterministic total order on normalized representatives.
    bool operator<(const ProjPoint& o) const;

    std::string str() const;

private:
    Field field_;
    std::vector<FieldElem> coords_;
};

/// Multiplicity-free ordered set of points of the dual space P^{n-dual}.
class PointConfig {
public:
    PointConfig(uint32_t ambient_dim, std::vector<ProjPoint> points);

    uint32_t n() const { return n_; }
    const Field& field() const { return field_; }
    size_t size() const { return points_.size(); }
    const ProjPoint& point(size_t i) const { return points_[i]; }
    const std::vector<ProjPoint>& points() const { return points_; }

    bool contains(const ProjPoint& p) const;
    PointConfig with_point(const ProjPoint& p) const;   // append, rejecting duplicates
    PointConfig without_index(size_t i) const;
    PointConfig union_with(const PointConfig& o) const; // duplicates merged

    bool same_set(const PointConfig& o) const;

private:
    uint32_t n_;
    Field field_;
    std::vector<ProjPoint> points_;
};

/// k x C(n+d, n) matrix: rows are points of Z (stored representatives),
/// columns the degree-d monomials, entries the monomial values.
Mat eval_matrix(const PointConfig& z, uint32_t d);

/// h^0 of the degree-d ideal sheaf of Z: C(n+d,n) - rank(eval_matrix).
size_t h0_ideal(const PointConfig& z, uint32_t d);

/// h^1 of the degree-d ideal sheaf of Z: |Z| - rank(eval_matrix).
size_t h1_ideal(const PointConfig& z, uint32_t d);

/// Basis of the degree-d forms vanishing on Z (size h0_ideal(z, d)).
std::vector<HomForm> linear_system(const PointConfig& z, uint32_t d);

/// Maximum number of points of Z on a common line of the dual plane.
/// Requires n = 2 and |Z| >= 2.
size_t max_secant(const PointConfig& z);

/// Line through two distinct points of P^2, as its dual point
/// (cross-product coordinates).
ProjPoint dual_line_through(const ProjPoint& p1, const ProjPoint& p2);

/// Vanishing of the pairing sum p_i * h_i.
bool incidence(const ProjPoint& p, const ProjPoint& h);

/// (n+1) x n substitution matrix of the hyperplane sum h_i X_i = 0: the
/// last coordinate with a nonzero h-entry is solved for, the remaining
/// coordinates become the internal ones. Columns span the hyperplane.
Mat hyperplane_basis(const ProjPoint& h);

/// Points of Z lying on the hyperplane h, in Z order.
std::vector<size_t> points_on_hyperplane(const PointConfig& z, const ProjPoint& h);

/// h^0(J_Z(d) restricted to the hyperplane h), computed through the
/// splitting into skyscrapers on Z-on-h plus the internal ideal sheaf.
size_t h0_ideal_on_hyperplane(const PointConfig& z, const ProjPoint& h, uint32_t d);

struct GeneralPositionReport {
    bool ok = false;
    bool sampled = false; // true when n >= 3 (sampled hyperplane test)
    std::string reason;   // violated clause when !ok
    size_t h0 = 0;        // h^0(J_Z(r+1))
    std::vector<ProjPoint> secant_lines; // (r+3)-secants found (n = 2)
};

/// (r+1)-general position test. Exact for n = 2 (h^0(J_Z(r+1)) = 0 and no
/// (r+3)-secant line); for n >= 3 the hyperplane-wise condition is sampled
/// over `samples` seeded hyperplanes and the report is flagged as such.
GeneralPositionReport is_general_position(const PointConfig& z, uint32_t r,
                                          int samples = 50, uint64_t seed = 0x5eed0001ull);

/// All points of P^2(F_p) with normalized representatives, in canonical
/// enumeration order: [1:a:b], then [0:1:c], then [0:0:1].
std::vector<ProjPoint> enumerate_plane_points(const Field& f);

/// Text syntax for forms: sum of terms c*Y0^a*Y1^b*... with exact
/// coefficients ("num/den" over Q, residues over F_p).
std::string format_hom_form(const HomForm& h);
HomForm parse_hom_form(const Field& f, uint32_t nvars, const std::string& text);

} // namespace steiner
