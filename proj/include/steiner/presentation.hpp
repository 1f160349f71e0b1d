#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steiner/polygeom.hpp"

namespace steiner {

enum class Provenance { Logarithmic, Schwarzenberger, Curve, Restricted, Manual };

std::string provenance_tag(Provenance p);
Provenance parse_provenance_tag(const std::string& s);

/// Presentation 0 -> O(-1)^m -> O^tau -> E -> 0 of a Steiner sheaf by the
/// pencil N(X) = sum X_i N_i of constant tau x m matrices. Immutable after
/// construction; rank(E) = tau - m and c1(E) = m.
class SteinerPresentation {
public:
    SteinerPresentation(uint32_t nvars, std::vector<Mat> matrices,
                        Provenance prov, std::string detail);

    const Field& field() const { return matrices_[0].field(); }
    uint32_t nvars() const { return nvars_; }
    size_t m() const { return m_; }
    size_t total() const { return tau_; }
    size_t bundle_rank() const { return tau_ - m_; }
    size_t c1() const { return m_; }
    const Mat& matrix(size_t i) const { return matrices_[i]; }
    const std::vector<Mat>& matrices() const { return matrices_; }
    Provenance provenance() const { return provenance_; }
    const std::string& provenance_detail() const { return detail_; }

    /// Pencil evaluated at a point of P^n: sum x_i N_i.
    Mat evaluate(const ProjPoint& x) const;

    bool operator==(const SteinerPresentation& o) const;

private:
    uint32_t nvars_;
    size_t m_, tau_;
    std::vector<Mat> matrices_;
    Provenance provenance_;
    std::string detail_;
};

/// Generalized logarithmic presentation from a point set Z in the dual
/// space: the pencil of multiplication maps between the degree-r and
/// degree-(r+1) cokernels of the evaluation matrices, transposed. Shape is
/// m = h^1(J_Z(r+1)), tau = h^1(J_Z(r)), rank C(n+r, n-1).
/// Requires Z in (r+1)-general position. When h^1(J_Z(r+1)) = 0 the bundle
/// is trivial; the build is allowed and flagged in the provenance detail.
SteinerPresentation build_logarithmic(const PointConfig& z, uint32_t r);

/// Banded pencil of the rational normal curve of degree n in dual
/// coordinates: tau = m+1 rows, m-n+1 columns, column j carrying X_0..X_n
/// in rows j..j+n. Requires m >= n.
SteinerPresentation build_schwarzenberger(uint32_t n, uint32_t m, const Field& f);

/// Pushforward twist of a plane curve f of degree d: multiplication pencil
/// between monomial bases of degrees a-1 and a taken modulo f, with the
/// quotient bases picked by the deterministic cokernel rule. Requires
/// a >= d-1; f is assumed squarefree (caller-asserted).
SteinerPresentation build_curve_twist(const HomForm& f, uint32_t a);

/// Substitute the hyperplane's internal coordinates into the pencil:
/// N~_t = sum_i Lambda[i][t] N_i for the deterministic hyperplane basis.
SteinerPresentation restrict_to_hyperplane(const SteinerPresentation& p, const ProjPoint& h);

enum class ValidateStrategy { ExhaustiveFp, Sampled, Minors };

ValidateStrategy parse_strategy(const std::string& s);
std::string strategy_name(ValidateStrategy s);

struct ValidityReport {
    bool valid = false;
    bool conclusive = false;
    std::string strategy;
    std::string detail;
    std::optional<ProjPoint> witness; // a point where the pencil drops rank
    bool cost_warning = false;        // set by the minors strategy
};

/// Bundle test: N(x) must have rank m at every point of P^n.
///  - exhaustive-fp: all points of P^n(F_p) (prime fields, n = 2), conclusive
///    over that field;
///  - sampled: seeded random points, probabilistic;
///  - minors: gcd of all m x m minors over Q. A nonzero gcd rules out any
///    divisorial degeneracy; for m = 1 the common zero locus is also decided
///    exactly, making the answer conclusive.
ValidityReport validate_bundle(const SteinerPresentation& p, ValidateStrategy strategy,
                               uint64_t seed = 0x5eed0002ull, int samples = 200);

struct HomPair {
    Mat a; // m1 -> m2
    Mat b; // tau1 -> tau2
};

/// Basis of the pairs (A, B) with B N1_i = N2_i A for all i. Every basis
/// element satisfies the intertwining identities exactly.
struct HomSpace {
    std::vector<HomPair> basis;
    size_t dim() const { return basis.size(); }
};

HomSpace hom_space(const SteinerPresentation& p1, const SteinerPresentation& p2);

struct IsoResult {
    bool isomorphic = false;
    bool probabilistic = false; // a negative answer that random search cannot certify
    std::string reason;
    std::optional<HomPair> witness; // verified intertwining pair, A and B invertible
    size_t hom_dim = 0;
};

/// Searches hom_space(p1, p2) for a pair with A and B invertible: seeded
/// random combinations (`trials` attempts), plus exhaustive projective
/// search over small prime fields when dim <= 2. Shape mismatch gives an
/// immediate negative with a reason.
IsoResult is_isomorphic(const SteinerPresentation& p1, const SteinerPresentation& p2,
                        uint32_t trials, uint64_t seed = 0x5eed0003ull);

} // namespace steiner
