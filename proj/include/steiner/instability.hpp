#pragma once

#include "steiner/presentation.hpp"

namespace steiner {

struct UnstableResult {
    bool unstable = false;
    size_t kernel_dim = 0; // h^0(E^dual restricted to the hyperplane)
};

/// Bundle-side test: stack the transposes of the pencil restricted to the
/// hyperplane H; H is unstable exactly when the stacked matrix has a right
/// kernel, whose dimension is h^0(E^dual tensor O_H).
UnstableResult unstable_test_bundle(const SteinerPresentation& p, const ProjPoint& h);

/// Ideal-side test on the dual plane: points of Z are always unstable; a
/// point outside Z is unstable exactly when some degree-(r+2) curve passes
/// through Z and that point. Requires Z in (r+1)-general position; callers
/// scanning many duals against one Z may check the position once and pass
/// check_position = false.
bool unstable_test_ideal(const PointConfig& z, uint32_t r, const ProjPoint& ldual,
                         bool check_position = true);

enum class WKind { Finite, Curve, WholeSpace };

std::string w_kind_name(WKind k);

struct WReport {
    WKind kind = WKind::Finite;
    std::vector<ProjPoint> points;       // Finite: the unstable duals found
    std::optional<HomForm> curve;        // Curve: the degree-(r+2) equation
    uint32_t curve_degree = 0;
    std::string method;                  // "ideal-side" or "bundle-scan:..."
    long long expected_codim = 0;        // m*n - (m+n+r) + 1
    std::vector<std::string> cross_checks;
};

/// Classification of the unstable locus from the ideal side, driven by
/// t = h^0(J_Z(r+2)): t = 0 gives exactly Z, t = 1 the unique curve of
/// degree r+2 through Z, t >= 2 the whole dual plane.
WReport classify_W_ideal(const PointConfig& z, uint32_t r);

struct ScanDomain {
    bool exhaustive = false;            // whole plane over F_p (nvars = 3)
    std::vector<ProjPoint> samples;     // used when not exhaustive
    static ScanDomain Exhaustive() { return {true, {}}; }
    static ScanDomain Samples(std::vector<ProjPoint> pts) { return {false, std::move(pts)}; }
};

struct ScanResult {
    std::vector<ProjPoint> found; // unstable duals in canonical order
    WReport report;
};

/// Bundle-side scan of the unstable locus. Exhaustive scans classify the
/// result: no interpolating curve means Finite (or WholeSpace past the
/// degree-(r+2) point bound), a unique curve whose F_p points equal the
/// found set means Curve.
ScanResult scan_W_bundle(const SteinerPresentation& p, const ScanDomain& domain);

struct SplittingType {
    std::vector<uint32_t> degrees; // a_1 >= ... >= a_s, sum = m, s = rank
};

struct LineParam {
    ProjPoint a, b; // distinct points spanning the line
};

/// Deterministic parametrization of the line of P^2 dual to ldual.
LineParam line_from_dual(const ProjPoint& ldual);

/// Splitting degrees of E on a parametrized line, recovered from
/// h^0(E_l(-t)) for t = 1..m+1 computed through the pencil's action on
/// first-cohomology Laurent bases of negative twists on the line.
SplittingType splitting_type(const SteinerPresentation& p, const LineParam& line);

struct SecantViolation {
    ProjPoint pencil_dual;  // the dual line x-dual through >= r+3 unstable points
    ProjPoint stable_point; // a point of it that tested stable
};

/// For every dual line through >= r+3 points of the unstable set, checks
/// that the whole pencil is unstable. `known_unstable` entries are trusted
/// and skipped. Returns the violations found (empty on every theorem-true
/// input).
std::vector<SecantViolation> secant_pencil_check(const SteinerPresentation& p,
                                                 const std::vector<ProjPoint>& unstable_set,
                                                 uint32_t r);

/// Plane cubic traced by projecting the twisted cubic from the dual point
/// of the plane h, implicitized by interpolation in h's internal
/// coordinates. h must not lie on the twisted cubic.
HomForm projected_cubic(const ProjPoint& h);

/// Determinant route to the unstable-locus curve, available when the
/// presentation is square on the dual side (total = 2m): the degree-m
/// determinant of the pencil assembled from the first-cohomology data of
/// the negative twists. Used as a cross-check against scans.
HomForm w_determinant_curve(const SteinerPresentation& p);

struct TorelliReport {
    bool isomorphic = false;
    int dichotomy_case = 0;              // 1: equal sets, 2: common curve, 0: not isomorphic
    bool violation = false;              // isomorphic but neither case holds
    std::optional<HomForm> common_curve; // case 2
    std::optional<HomPair> witness;
    size_t hom_dim = 0;
    std::string note;
};

/// Builds both logarithmic presentations, decides isomorphism, and checks
/// the dichotomy: isomorphic implies equal sets or a common degree-(r+2)
/// curve (reported with the pushforward identification note). Distinct
/// non-isomorphic pairs are reported with the distinguishing invariant.
TorelliReport torelli_compare(const PointConfig& z1, const PointConfig& z2, uint32_t r,
                              uint32_t trials = 24, uint64_t seed = 0x5eed0004ull);

} // namespace steiner
