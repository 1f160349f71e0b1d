#include "steiner/presentation.hpp"

#include <json.hpp>

#include "minors_gcd.hpp"
#include "steiner/rng.hpp"

namespace steiner {

using nlohmann::json;

std::string provenance_tag(Provenance p) {
    switch (p) {
    case Provenance::Logarithmic: return "logarithmic";
    case Provenance::Schwarzenberger: return "schwarzenberger";
    case Provenance::Curve: return "curve";
    case Provenance::Restricted: return "restricted";
    case Provenance::Manual: return "manual";
    }
    throw Error("bad provenance");
}

Provenance parse_provenance_tag(const std::string& s) {
    if (s == "logarithmic") return Provenance::Logarithmic;
    if (s == "schwarzenberger") return Provenance::Schwarzenberger;
    if (s == "curve") return Provenance::Curve;
    if (s == "restricted") return Provenance::Restricted;
    if (s == "manual") return Provenance::Manual;
    throw FormatError("unknown provenance tag: " + s);
}

SteinerPresentation::SteinerPresentation(uint32_t nvars, std::vector<Mat> matrices,
                                         Provenance prov, std::string detail)
    : nvars_(nvars), matrices_(std::move(matrices)), provenance_(prov),
      detail_(std::move(detail)) {
    if (matrices_.size() != nvars_ || nvars_ < 2)
        throw PreconditionError("a pencil needs one matrix per variable, at least two");
    tau_ = matrices_[0].rows();
    m_ = matrices_[0].cols();
    for (const Mat& mt : matrices_) {
        if (mt.rows() != tau_ || mt.cols() != m_)
            throw PreconditionError("pencil matrices must share a shape");
        if (mt.field() != matrices_[0].field())
            throw FieldMismatchError("pencil matrices must share a field");
    }
    if (tau_ <= m_ && m_ > 0)
        throw PreconditionError("presentation needs rank = total - m >= 1");
    if (tau_ == 0)
        throw PreconditionError("presentation needs at least one row");
}

Mat SteinerPresentation::evaluate(const ProjPoint& x) const {
    if (x.coords().size() != nvars_)
        throw PreconditionError("evaluation point has wrong coordinate count");
    if (x.field() != field())
        throw FieldMismatchError("evaluation point in wrong field");
    Mat acc(field(), tau_, m_);
    for (uint32_t i = 0; i < nvars_; ++i)
        if (!x.coord(i).is_zero())
            acc = acc.add(matrices_[i].scaled(x.coord(i)));
    return acc;
}

bool SteinerPresentation::operator==(const SteinerPresentation& o) const {
    return nvars_ == o.nvars_ && matrices_ == o.matrices_ &&
           provenance_ == o.provenance_ && detail_ == o.detail_;
}

SteinerPresentation build_logarithmic(const PointConfig& z, uint32_t r) {
    GeneralPositionReport gp = is_general_position(z, r);
    if (!gp.ok)
        throw PreconditionError("Z is not in (r+1)-general position: " + gp.reason);
    Mat eval_low = eval_matrix(z, r);
    Mat eval_high = eval_matrix(z, r + 1);
    CokernelProjection cok_low = cokernel_projection(eval_low);
    CokernelProjection cok_high = cokernel_projection(eval_high);
    const size_t tau = cok_low.projection.rows();
    const size_t m = cok_high.projection.rows();
    const uint32_t nv = z.n() + 1;

    // Multiplication by the i-th dual coordinate between the two cokernels:
    // column j lifts to the unit vector at lift_rows[j], multiplication acts
    // diagonally by the representative coordinates, then project.
    std::vector<Mat> pencil;
    pencil.reserve(nv);
    for (uint32_t i = 0; i < nv; ++i) {
        Mat mi(z.field(), m, tau);
        for (size_t j = 0; j < tau; ++j) {
            size_t srow = cok_low.lift_rows[j];
            const FieldElem& c = z.point(srow).coord(i);
            if (c.is_zero())
                continue;
            for (size_t t = 0; t < m; ++t)
                mi.set(t, j, cok_high.projection.at(t, srow) * c);
        }
        pencil.push_back(mi.transpose());
    }

    json detail;
    detail["k"] = z.size();
    detail["r"] = r;
    detail["trivial"] = m == 0;
    json pts = json::array();
    for (const auto& p : z.points()) {
        json coords = json::array();
        for (const auto& c : p.coords())
            coords.push_back(c.str());
        pts.push_back(coords);
    }
    detail["points"] = pts;
    return SteinerPresentation(nv, std::move(pencil), Provenance::Logarithmic, detail.dump());
}

SteinerPresentation build_schwarzenberger(uint32_t n, uint32_t m, const Field& f) {
    if (m < n)
        throw PreconditionError("Schwarzenberger pencil needs m >= n, got m = " +
                                std::to_string(m) + ", n = " + std::to_string(n));
    const size_t tau = m + 1;
    const size_t cols = m - n + 1;
    std::vector<Mat> pencil;
    FieldElem one = FieldElem::one(f);
    for (uint32_t i = 0; i <= n; ++i) {
        Mat mi(f, tau, cols);
        for (size_t j = 0; j < cols; ++j)
            mi.set(j + i, j, one);
        pencil.push_back(std::move(mi));
    }
    std::string veronese = "[";
    for (uint32_t i = 0; i <= n; ++i) {
        if (i) veronese += ":";
        if (n - i) veronese += "u^" + std::to_string(n - i);
        if (n - i && i) veronese += "*";
        if (i) veronese += "v^" + std::to_string(i);
    }
    veronese += "]";
    json detail;
    detail["n"] = n;
    detail["degree"] = m;
    detail["curve"] = "rational normal curve " + veronese + " in dual coordinates";
    return SteinerPresentation(n + 1, std::move(pencil), Provenance::Schwarzenberger,
                               detail.dump());
}

namespace {

// Multiplication by f from degree e-d into degree e, in monomial bases.
Mat multiplication_matrix(const HomForm& f, uint32_t e) {
    const uint32_t d = f.degree();
    if (e < d)
        return Mat(f.field(), monomial_count(3, e), 0);
    auto low = monomials(3, e - d);
    auto mons_f = monomials(3, d);
    Mat out(f.field(), monomial_count(3, e), low.size());
    for (size_t col = 0; col < low.size(); ++col)
        for (size_t t = 0; t < mons_f.size(); ++t) {
            if (f.coeff(t).is_zero())
                continue;
            std::vector<uint32_t> exp(3);
            for (int v = 0; v < 3; ++v)
                exp[v] = low[col][v] + mons_f[t][v];
            size_t row = monomial_index(exp);
            out.set(row, col, out.at(row, col) + f.coeff(t));
        }
    return out;
}

} // namespace

SteinerPresentation build_curve_twist(const HomForm& f, uint32_t a) {
    if (f.nvars() != 3)
        throw PreconditionError("curve twists are built from plane curves (3 dual variables)");
    if (f.is_zero())
        throw DegenerateInputError("curve form is zero");
    const uint32_t d = f.degree();
    if (d == 0)
        throw DegenerateInputError("curve form is a nonzero constant");
    if (a + 1 < d)
        throw PreconditionError("curve twist needs a >= d-1 (h^1 of the twist must vanish); got a = " +
                                std::to_string(a) + " for degree " + std::to_string(d));
    CokernelProjection cok_low = cokernel_projection(multiplication_matrix(f, a - 1));
    CokernelProjection cok_high = cokernel_projection(multiplication_matrix(f, a));
    const size_t m = cok_low.projection.rows();
    const size_t tau = cok_high.projection.rows();
    auto low_mons = monomials(3, a - 1);
    std::vector<Mat> pencil;
    for (uint32_t i = 0; i < 3; ++i) {
        Mat ni(f.field(), tau, m);
        for (size_t j = 0; j < m; ++j) {
            std::vector<uint32_t> exp = low_mons[cok_low.lift_rows[j]];
            exp[i] += 1;
            size_t target = monomial_index(exp);
            for (size_t t = 0; t < tau; ++t)
                ni.set(t, j, cok_high.projection.at(t, target));
        }
        pencil.push_back(std::move(ni));
    }
    json detail;
    detail["a"] = a;
    detail["curve_degree"] = d;
    detail["curve"] = format_hom_form(f);
    return SteinerPresentation(3, std::move(pencil), Provenance::Curve, detail.dump());
}

SteinerPresentation restrict_to_hyperplane(const SteinerPresentation& p, const ProjPoint& h) {
    if (p.nvars() < 3)
        throw PreconditionError("restriction needs an ambient space of dimension >= 2");
    if (h.coords().size() != p.nvars())
        throw PreconditionError("hyperplane coordinates do not match the pencil");
    if (h.field() != p.field())
        throw FieldMismatchError("hyperplane in wrong field");
    Mat lam = hyperplane_basis(h);
    std::vector<Mat> pencil;
    for (uint32_t t = 0; t + 1 < p.nvars(); ++t) {
        Mat acc(p.field(), p.total(), p.m());
        for (uint32_t i = 0; i < p.nvars(); ++i) {
            FieldElem c = lam.at(i, t);
            if (!c.is_zero())
                acc = acc.add(p.matrix(i).scaled(c));
        }
        pencil.push_back(std::move(acc));
    }
    json detail;
    json hc = json::array();
    for (const auto& c : h.coords())
        hc.push_back(c.str());
    detail["hyperplane"] = hc;
    json parent;
    parent["tag"] = provenance_tag(p.provenance());
    try {
        parent["detail"] = json::parse(p.provenance_detail());
    } catch (const json::parse_error&) {
        parent["detail"] = p.provenance_detail();
    }
    detail["parent"] = parent;
    return SteinerPresentation(p.nvars() - 1, std::move(pencil), Provenance::Restricted,
                               detail.dump());
}

ValidateStrategy parse_strategy(const std::string& s) {
    if (s == "exhaustive-fp") return ValidateStrategy::ExhaustiveFp;
    if (s == "sampled") return ValidateStrategy::Sampled;
    if (s == "minors") return ValidateStrategy::Minors;
    throw FormatError("unknown validation strategy: " + s +
                      " (expected exhaustive-fp, sampled or minors)");
}

std::string strategy_name(ValidateStrategy s) {
    switch (s) {
    case ValidateStrategy::ExhaustiveFp: return "exhaustive-fp";
    case ValidateStrategy::Sampled: return "sampled";
    case ValidateStrategy::Minors: return "minors";
    }
    throw Error("bad strategy");
}

ValidityReport validate_bundle(const SteinerPresentation& p, ValidateStrategy strategy,
                               uint64_t seed, int samples) {
    ValidityReport rep;
    rep.strategy = strategy_name(strategy);
    const size_t m = p.m();
    if (m == 0) {
        // Presentation of a trivial bundle: nothing can drop rank.
        rep.valid = true;
        rep.conclusive = true;
        rep.detail = "pencil has no twisted summands; the sheaf is trivial";
        return rep;
    }
    switch (strategy) {
    case ValidateStrategy::ExhaustiveFp: {
        if (!p.field().is_prime())
            throw StrategyError("exhaustive-fp validation needs a prime field");
        if (p.nvars() != 3)
            throw StrategyError("exhaustive-fp validation enumerates the plane (nvars = 3)");
        for (const ProjPoint& x : enumerate_plane_points(p.field())) {
            if (rank(p.evaluate(x)) != m) {
                rep.valid = false;
                rep.conclusive = true;
                rep.witness = x;
                rep.detail = "pencil drops rank at " + x.str();
                return rep;
            }
        }
        rep.valid = true;
        rep.conclusive = true;
        rep.detail = "full rank at all points of P^2(F_" + std::to_string(p.field().p()) +
                     "); conclusive over that field";
        return rep;
    }
    case ValidateStrategy::Sampled: {
        SeededRng rng(seed);
        for (int s = 0; s < samples; ++s) {
            std::vector<FieldElem> coords(p.nvars());
            bool nonzero = false;
            while (!nonzero) {
                for (auto& c : coords) {
                    c = p.field().is_prime()
                            ? FieldElem::from_int(p.field(),
                                                  static_cast<long long>(rng.below(p.field().p())))
                            : FieldElem::from_int(p.field(), rng.signed_range(10));
                    nonzero = nonzero || !c.is_zero();
                }
            }
            ProjPoint x(p.field(), coords);
            if (rank(p.evaluate(x)) != m) {
                rep.valid = false;
                rep.conclusive = true;
                rep.witness = x;
                rep.detail = "pencil drops rank at sampled point " + x.str();
                return rep;
            }
        }
        rep.valid = true;
        rep.conclusive = false;
        rep.detail = "full rank at " + std::to_string(samples) + " seeded points; probabilistic";
        return rep;
    }
    case ValidateStrategy::Minors: {
        rep.cost_warning = true;
        if (m == 1) {
            // The minors are the tau linear entries; their common zero locus
            // is decided exactly by the rank of the coefficient matrix.
            Mat coeffs(p.field(), p.total(), p.nvars());
            for (size_t t = 0; t < p.total(); ++t)
                for (uint32_t i = 0; i < p.nvars(); ++i)
                    coeffs.set(t, i, p.matrix(i).at(t, 0));
            if (rank(coeffs) < p.nvars()) {
                Mat ker = kernel_basis(coeffs);
                std::vector<FieldElem> w;
                for (size_t i = 0; i < ker.rows(); ++i)
                    w.push_back(ker.at(i, 0));
                rep.valid = false;
                rep.conclusive = true;
                rep.witness = ProjPoint(p.field(), std::move(w));
                rep.detail = "the column entries share the zero " + rep.witness->str();
                return rep;
            }
            rep.valid = true;
            rep.conclusive = true;
            rep.detail = "the column entries span all linear forms; no common zero";
            return rep;
        }
        if (!p.field().is_rational())
            throw StrategyError("minors validation runs over the rationals; use exhaustive-fp "
                                "for prime fields");
        if (p.nvars() != 3)
            throw StrategyError("minors validation implemented for the plane (nvars = 3)");
        // Entries of the pencil as degree-1 forms.
        std::vector<std::vector<HomForm>> entries(
            p.total(), std::vector<HomForm>(m, HomForm(p.field(), 3, 1)));
        for (size_t t = 0; t < p.total(); ++t)
            for (size_t j = 0; j < m; ++j)
                for (uint32_t i = 0; i < 3; ++i)
                    entries[t][j].set_coeff(i, p.matrix(i).at(t, j));
        HomForm gcd(p.field(), 3, 0);
        bool any_nonzero = false;
        std::vector<size_t> pick(m);
        for (size_t i = 0; i < m; ++i)
            pick[i] = i;
        for (;;) {
            std::vector<std::vector<HomForm>> sub;
            for (size_t i : pick)
                sub.push_back(entries[i]);
            HomForm minor = detail::pencil_minor(sub);
            if (!minor.is_zero()) {
                gcd = any_nonzero ? detail::hom_gcd(gcd, minor) : minor;
                any_nonzero = true;
                if (gcd.degree() == 0)
                    break;
            }
            // next m-subset of rows
            size_t i = m;
            while (i > 0 && pick[i - 1] == p.total() - m + i - 1)
                --i;
            if (i == 0)
                break;
            ++pick[i - 1];
            for (size_t j = i; j < m; ++j)
                pick[j] = pick[j - 1] + 1;
        }
        if (!any_nonzero) {
            rep.valid = false;
            rep.conclusive = true;
            rep.detail = "all maximal minors vanish identically";
            return rep;
        }
        if (gcd.degree() > 0) {
            rep.valid = false;
            rep.conclusive = true;
            rep.detail = "maximal minors share the factor " + format_hom_form(gcd) +
                         "; the pencil drops rank along that curve";
            return rep;
        }
        rep.valid = true;
        rep.conclusive = false;
        rep.detail = "maximal minors are coprime: no divisorial rank drop; "
                     "isolated drops are not excluded by this strategy";
        return rep;
    }
    }
    throw Error("bad strategy");
}

HomSpace hom_space(const SteinerPresentation& p1, const SteinerPresentation& p2) {
    if (p1.field() != p2.field())
        throw FieldMismatchError("hom space needs a common field");
    if (p1.nvars() != p2.nvars())
        throw PreconditionError("hom space needs a common ambient space");
    const size_t m1 = p1.m(), m2 = p2.m(), t1 = p1.total(), t2 = p2.total();
    const size_t unknowns = m2 * m1 + t2 * t1; // A entries then B entries, row-major
    const size_t equations = p1.nvars() * t2 * m1;
    Mat sys(p1.field(), equations, unknowns);
    size_t eq = 0;
    for (uint32_t i = 0; i < p1.nvars(); ++i)
        for (size_t r = 0; r < t2; ++r)
            for (size_t c = 0; c < m1; ++c, ++eq) {
                // sum_k B[r,k] N1_i[k,c] - sum_k N2_i[r,k] A[k,c] = 0
                for (size_t k = 0; k < t1; ++k)
                    sys.set(eq, m2 * m1 + r * t1 + k, p1.matrix(i).at(k, c));
                for (size_t k = 0; k < m2; ++k)
                    sys.set(eq, k * m1 + c, sys.at(eq, k * m1 + c) - p2.matrix(i).at(r, k));
            }
    Mat ker = kernel_basis(sys);
    HomSpace hs;
    for (size_t b = 0; b < ker.cols(); ++b) {
        Mat a(p1.field(), m2, m1), bm(p1.field(), t2, t1);
        for (size_t r = 0; r < m2; ++r)
            for (size_t c = 0; c < m1; ++c)
                a.set(r, c, ker.at(r * m1 + c, b));
        for (size_t r = 0; r < t2; ++r)
            for (size_t c = 0; c < t1; ++c)
                bm.set(r, c, ker.at(m2 * m1 + r * t1 + c, b));
        // The intertwining identities hold exactly by construction; verify.
        for (uint32_t i = 0; i < p1.nvars(); ++i)
            if (bm.mul(p1.matrix(i)) != p2.matrix(i).mul(a))
                throw VerificationError("hom space basis fails the intertwining identity");
        hs.basis.push_back({std::move(a), std::move(bm)});
    }
    return hs;
}

IsoResult is_isomorphic(const SteinerPresentation& p1, const SteinerPresentation& p2,
                        uint32_t trials, uint64_t seed) {
    IsoResult res;
    if (p1.m() != p2.m() || p1.total() != p2.total()) {
        res.reason = "shape mismatch: (m, total) = (" + std::to_string(p1.m()) + ", " +
                     std::to_string(p1.total()) + ") vs (" + std::to_string(p2.m()) + ", " +
                     std::to_string(p2.total()) + ")";
        return res;
    }
    if (trials < 1)
        throw PreconditionError("is_isomorphic needs trials >= 1");
    HomSpace hs = hom_space(p1, p2);
    res.hom_dim = hs.dim();
    if (hs.dim() == 0) {
        res.reason = "hom space is zero";
        return res;
    }
    const Field& f = p1.field();
    auto try_combo = [&](const std::vector<FieldElem>& coeffs) -> bool {
        Mat a(f, p2.m(), p1.m()), b(f, p2.total(), p1.total());
        for (size_t t = 0; t < hs.basis.size(); ++t) {
            if (coeffs[t].is_zero())
                continue;
            a = a.add(hs.basis[t].a.scaled(coeffs[t]));
            b = b.add(hs.basis[t].b.scaled(coeffs[t]));
        }
        if (p1.m() > 0 && rank(a) != p1.m())
            return false;
        if (rank(b) != p1.total())
            return false;
        // Exact witness verification.
        for (uint32_t i = 0; i < p1.nvars(); ++i)
            if (b.mul(p1.matrix(i)) != p2.matrix(i).mul(a))
                throw VerificationError("isomorphism witness fails the intertwining identity");
        res.isomorphic = true;
        res.witness = HomPair{std::move(a), std::move(b)};
        return true;
    };

    // Small prime fields with dim <= 2: the projective space of combinations
    // is small enough to sweep completely.
    if (f.is_prime() && f.p() <= 257 && hs.dim() <= 2) {
        std::vector<FieldElem> coeffs(hs.dim(), FieldElem::zero(f));
        coeffs[0] = FieldElem::one(f);
        if (hs.dim() == 1) {
            if (try_combo(coeffs)) {
                res.reason = "exhaustive search over the hom space";
                return res;
            }
        } else {
            for (uint32_t c = 0; c <= f.p(); ++c) {
                if (c < f.p()) {
                    coeffs[0] = FieldElem::one(f);
                    coeffs[1] = FieldElem::from_int(f, c);
                } else {
                    coeffs[0] = FieldElem::zero(f);
                    coeffs[1] = FieldElem::one(f);
                }
                if (try_combo(coeffs)) {
                    res.reason = "exhaustive search over the hom space";
                    return res;
                }
            }
        }
        res.reason = "no invertible pair; exhaustive over the projectivized hom space";
        return res;
    }

    SeededRng rng(seed);
    for (uint32_t t = 0; t < trials; ++t) {
        std::vector<FieldElem> coeffs(hs.dim());
        bool nonzero = false;
        for (auto& c : coeffs) {
            c = f.is_prime()
                    ? FieldElem::from_int(f, static_cast<long long>(rng.below(f.p())))
                    : FieldElem::from_int(f, rng.signed_range(50));
            nonzero = nonzero || !c.is_zero();
        }
        if (!nonzero)
            coeffs[0] = FieldElem::one(f);
        if (try_combo(coeffs)) {
            res.reason = "random search, trial " + std::to_string(t + 1);
            return res;
        }
    }
    res.probabilistic = true;
    double sample_space = f.is_prime() ? static_cast<double>(f.p()) : 101.0;
    double per_trial = static_cast<double>(p1.m() + p1.total()) / sample_space;
    if (per_trial > 1.0)
        per_trial = 1.0;
    double bound = 1.0;
    for (uint32_t t = 0; t < trials; ++t)
        bound *= per_trial;
    res.reason = "no invertible pair in " + std::to_string(trials) +
                 " random combinations (false-negative probability <= " +
                 std::to_string(bound) + ")";
    return res;
}

} // namespace steiner
