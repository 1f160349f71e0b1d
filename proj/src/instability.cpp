#include "steiner/instability.hpp"

#include <algorithm>
#include <set>

#include "minors_gcd.hpp"

namespace steiner {

std::string w_kind_name(WKind k) {
    switch (k) {
    case WKind::Finite: return "finite";
    case WKind::Curve: return "curve";
    case WKind::WholeSpace: return "whole_space";
    }
    throw Error("bad W kind");
}

UnstableResult unstable_test_bundle(const SteinerPresentation& p, const ProjPoint& h) {
    SteinerPresentation restricted = restrict_to_hyperplane(p, h);
    // Stack the transposed restricted matrices: v is a section of E^dual on
    // H exactly when every coordinate matrix kills it.
    const uint32_t n = restricted.nvars();
    Mat stacked = restricted.matrix(0).transpose();
    for (uint32_t i = 1; i < n; ++i)
        stacked = stacked.vstack(restricted.matrix(i).transpose());
    size_t kdim = p.total() - rank(stacked);
    return {kdim > 0, kdim};
}

bool unstable_test_ideal(const PointConfig& z, uint32_t r, const ProjPoint& ldual,
                         bool check_position) {
    if (z.n() != 2)
        throw PreconditionError("ideal-side instability test lives on the dual plane");
    if (check_position) {
        GeneralPositionReport gp = is_general_position(z, r);
        if (!gp.ok)
            throw PreconditionError("Z is not in (r+1)-general position: " + gp.reason);
    }
    if (z.contains(ldual))
        return true;
    return h0_ideal(z.with_point(ldual), r + 2) > 0;
}

namespace {

long long expected_codimension(const SteinerPresentation& p) {
    // Presentation O(-1)^m -> O^{m+n+r}: expected codim of W is mn-(m+n+r)+1.
    long long m = static_cast<long long>(p.m());
    long long n = static_cast<long long>(p.nvars()) - 1;
    long long tau = static_cast<long long>(p.total());
    return m * n - tau + 1;
}

} // namespace

WReport classify_W_ideal(const PointConfig& z, uint32_t r) {
    if (z.n() != 2)
        throw PreconditionError("unstable-locus classification lives on the dual plane");
    GeneralPositionReport gp = is_general_position(z, r);
    if (!gp.ok)
        throw PreconditionError("Z is not in (r+1)-general position: " + gp.reason);
    WReport rep;
    rep.method = "ideal-side";
    long long m = static_cast<long long>(z.size()) -
                  static_cast<long long>(monomial_count(3, r + 1));
    rep.expected_codim = m * 2 - (m + 2 + r) + 1;
    size_t t = h0_ideal(z, r + 2);
    rep.cross_checks.push_back("t = h0(J_Z(r+2)) = " + std::to_string(t));
    if (t == 0) {
        rep.kind = WKind::Finite;
        rep.points = z.points();
        std::sort(rep.points.begin(), rep.points.end());
        return rep;
    }
    if (t == 1) {
        rep.kind = WKind::Curve;
        rep.curve = linear_system(z, r + 2)[0];
        rep.curve_degree = r + 2;
        return rep;
    }
    // t >= 2: one extra vanishing condition cannot kill the system, so every
    // point of the dual plane is unstable.
    rep.kind = WKind::WholeSpace;
    return rep;
}

ScanResult scan_W_bundle(const SteinerPresentation& p, const ScanDomain& domain) {
    ScanResult out;
    out.report.expected_codim = expected_codimension(p);
    if (p.nvars() != 3)
        throw PreconditionError("unstable-locus scans live on the plane (nvars = 3)");
    std::vector<ProjPoint> domain_pts;
    if (domain.exhaustive) {
        if (!p.field().is_prime())
            throw StrategyError("exhaustive scans need a prime field");
        domain_pts = enumerate_plane_points(p.field());
        out.report.method = "bundle-scan:exhaustive";
    } else {
        domain_pts = domain.samples;
        out.report.method = "bundle-scan:sampled";
    }
    ValidityReport validity = validate_bundle(
        p, p.field().is_prime() ? ValidateStrategy::ExhaustiveFp : ValidateStrategy::Sampled);
    if (!validity.valid)
        out.report.cross_checks.push_back("sheaf-mode: pencil drops rank (" + validity.detail + ")");

    for (const ProjPoint& x : domain_pts)
        if (unstable_test_bundle(p, x).unstable)
            out.found.push_back(x);
    std::sort(out.found.begin(), out.found.end());
    out.report.points = out.found;

    if (!domain.exhaustive) {
        // A sample cannot separate the three kinds; report the finding only.
        out.report.kind = WKind::Finite;
        out.report.cross_checks.push_back("sampled domain: classification not attempted");
        return out;
    }
    const size_t total = domain_pts.size();
    // rank E = tau - m = r + 2 on the plane, so the candidate curve degree
    // is tau - m.
    const uint32_t degree = static_cast<uint32_t>(p.total() - p.m());
    out.report.curve_degree = degree;
    if (out.found.size() == total) {
        out.report.kind = WKind::WholeSpace;
        out.report.points.clear();
        return out;
    }
    if (out.found.empty()) {
        out.report.kind = WKind::Finite;
        return out;
    }
    PointConfig found_cfg(2, out.found);
    std::vector<HomForm> curves = linear_system(found_cfg, degree);
    if (curves.empty()) {
        const size_t bound = static_cast<size_t>(degree) * p.field().p() + 1;
        if (out.found.size() > bound) {
            out.report.kind = WKind::WholeSpace;
            out.report.cross_checks.push_back(
                "no interpolating curve and the count exceeds the degree-" +
                std::to_string(degree) + " point bound");
            out.report.points.clear();
        } else {
            out.report.kind = WKind::Finite;
        }
        return out;
    }
    if (curves.size() == 1) {
        // Candidate curve; the kind is Curve only when its F_p points are
        // exactly the found set.
        const HomForm& c = curves[0];
        bool exact = true;
        size_t on_curve = 0;
        for (const ProjPoint& x : domain_pts) {
            bool vanishes = c.evaluate(x.coords()).is_zero();
            if (vanishes)
                ++on_curve;
            bool found_pt = std::binary_search(out.found.begin(), out.found.end(), x);
            if (vanishes != found_pt) {
                exact = false;
                break;
            }
        }
        if (exact) {
            out.report.kind = WKind::Curve;
            out.report.curve = c;
            out.report.cross_checks.push_back("curve point count " + std::to_string(on_curve));
            return out;
        }
        out.report.kind = WKind::Finite;
        out.report.cross_checks.push_back(
            "an interpolating curve exists but carries stable points; the locus is finite");
        return out;
    }
    out.report.kind = WKind::Finite;
    out.report.cross_checks.push_back("interpolating system has dimension " +
                                      std::to_string(curves.size()));
    return out;
}

LineParam line_from_dual(const ProjPoint& ldual) {
    if (ldual.coords().size() != 3)
        throw PreconditionError("line duals live on the plane");
    Mat lam = hyperplane_basis(ldual);
    std::vector<FieldElem> a, b;
    for (size_t i = 0; i < 3; ++i) {
        a.push_back(lam.at(i, 0));
        b.push_back(lam.at(i, 1));
    }
    return {ProjPoint(ldual.field(), std::move(a)), ProjPoint(ldual.field(), std::move(b))};
}

SplittingType splitting_type(const SteinerPresentation& p, const LineParam& line) {
    if (line.a.field() != p.field() || line.b.field() != p.field())
        throw FieldMismatchError("line parametrization in wrong field");
    if (line.a.coords().size() != p.nvars() || line.b.coords().size() != p.nvars())
        throw DegenerateInputError("line parametrization does not match the ambient space");
    if (line.a == line.b)
        throw DegenerateInputError("line parametrization needs two distinct points");
    const size_t m = p.m();
    const size_t tau = p.total();
    const size_t s = tau - m; // rank
    Mat pa(p.field(), tau, m), qb(p.field(), tau, m);
    for (uint32_t i = 0; i < p.nvars(); ++i) {
        if (!line.a.coord(i).is_zero())
            pa = pa.add(p.matrix(i).scaled(line.a.coord(i)));
        if (!line.b.coord(i).is_zero())
            qb = qb.add(p.matrix(i).scaled(line.b.coord(i)));
    }
    // g(t) = h^0(E_l(-t)) = kernel of the pencil acting from
    // H^1(O(-1-t))^m to H^1(O(-t))^tau between Laurent monomial bases.
    // Basis of H^1(O(-d)): u^-i w^-(d-i), 0 < i < d. Multiplication by u
    // sends index i to i-1 (dropping i = 1); by w keeps i (dropping i = d-1).
    auto g = [&](uint32_t t) -> size_t {
        if (t == 0)
            throw Error("g is defined for t >= 1");
        const size_t src = m * t;            // dim H^1(O(-1-t))^m
        const size_t dst = tau * (t - 1);    // dim H^1(O(-t))^tau
        if (dst == 0)
            return src;
        Mat map(p.field(), dst, src);
        for (size_t row = 0; row < tau; ++row)
            for (size_t j = 0; j < m; ++j)
                for (uint32_t i = 1; i <= t; ++i) {
                    size_t colidx = j * t + (i - 1);
                    if (i >= 2) { // u-part lands at index i-1
                        size_t rowidx = row * (t - 1) + (i - 2);
                        map.set(rowidx, colidx, map.at(rowidx, colidx) + pa.at(row, j));
                    }
                    if (i <= t - 1) { // w-part keeps index i
                        size_t rowidx = row * (t - 1) + (i - 1);
                        map.set(rowidx, colidx, map.at(rowidx, colidx) + qb.at(row, j));
                    }
                }
        return src - rank(map);
    };
    std::vector<size_t> gv(m + 3, 0);
    for (uint32_t t = 1; t <= m + 1; ++t)
        gv[t] = g(t);
    if (gv[1] != m)
        throw VerificationError("splitting inconsistency: g(1) != c1");
    if (m > 0 && gv[m + 1] != 0)
        throw VerificationError("splitting inconsistency: g(m+1) != 0");
    SplittingType st;
    size_t positive = 0;
    for (uint32_t t = 1; t <= m; ++t) {
        size_t count_ge_t = gv[t] - gv[t + 1];
        size_t count_ge_next = t < m ? gv[t + 1] - gv[t + 2] : 0;
        if (gv[t] < gv[t + 1] || count_ge_t < count_ge_next)
            throw VerificationError("splitting inconsistency: counts not monotone");
        for (size_t c = 0; c < count_ge_t - count_ge_next; ++c)
            st.degrees.push_back(t);
        positive = std::max<size_t>(positive, count_ge_t);
    }
    if (positive > s)
        throw VerificationError("splitting inconsistency: more summands than the rank");
    for (size_t c = 0; c < s - positive; ++c)
        st.degrees.push_back(0);
    std::sort(st.degrees.rbegin(), st.degrees.rend());
    return st;
}

std::vector<SecantViolation> secant_pencil_check(const SteinerPresentation& p,
                                                 const std::vector<ProjPoint>& unstable_set,
                                                 uint32_t r) {
    if (p.nvars() != 3)
        throw PreconditionError("secant checks live on the plane");
    std::vector<SecantViolation> violations;
    if (unstable_set.size() < static_cast<size_t>(r) + 3)
        return violations;
    std::vector<ProjPoint> sorted = unstable_set;
    std::sort(sorted.begin(), sorted.end());
    std::set<ProjPoint> seen;
    std::vector<ProjPoint> secants;
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = i + 1; j < sorted.size(); ++j) {
            ProjPoint line = dual_line_through(sorted[i], sorted[j]);
            if (!seen.insert(line).second)
                continue;
            size_t count = 0;
            for (const ProjPoint& x : sorted)
                if (incidence(x, line))
                    ++count;
            if (count >= static_cast<size_t>(r) + 3)
                secants.push_back(line);
        }
    for (const ProjPoint& xdual : secants) {
        // Points of the pencil = duals on the line xdual. Over a prime field
        // enumerate them; over Q sample the parametrization.
        std::vector<ProjPoint> pencil_pts;
        LineParam param = line_from_dual(xdual);
        if (p.field().is_prime()) {
            const uint32_t q = p.field().p();
            for (uint32_t t = 0; t <= q; ++t) {
                std::vector<FieldElem> coords(3);
                for (size_t c = 0; c < 3; ++c) {
                    FieldElem u = t < q ? FieldElem::one(p.field())
                                        : FieldElem::zero(p.field());
                    FieldElem w = t < q ? FieldElem::from_int(p.field(), t)
                                        : FieldElem::one(p.field());
                    coords[c] = u * param.a.coord(c) + w * param.b.coord(c);
                }
                pencil_pts.push_back(ProjPoint(p.field(), coords));
            }
        } else {
            for (long long t = -12; t <= 12; ++t) {
                std::vector<FieldElem> coords(3);
                for (size_t c = 0; c < 3; ++c)
                    coords[c] = param.a.coord(c) +
                                FieldElem::from_int(p.field(), t) * param.b.coord(c);
                pencil_pts.push_back(ProjPoint(p.field(), coords));
            }
            pencil_pts.push_back(param.b);
        }
        for (const ProjPoint& x : pencil_pts) {
            if (std::binary_search(sorted.begin(), sorted.end(), x))
                continue; // already known unstable
            if (!unstable_test_bundle(p, x).unstable)
                violations.push_back({xdual, x});
        }
    }
    return violations;
}

HomForm projected_cubic(const ProjPoint& h) {
    if (h.coords().size() != 4)
        throw PreconditionError("projection centers live in P^3 dual coordinates");
    const Field& f = h.field();
    // h on the twisted cubic iff the catalecticant minors vanish.
    const FieldElem& h0 = h.coord(0);
    const FieldElem& h1 = h.coord(1);
    const FieldElem& h2 = h.coord(2);
    const FieldElem& h3 = h.coord(3);
    if ((h0 * h2 - h1 * h1).is_zero() && (h1 * h3 - h2 * h2).is_zero() &&
        (h0 * h3 - h1 * h2).is_zero())
        throw PreconditionError("projection center " + h.str() +
                                " lies on the twisted cubic; the projection degenerates");
    Mat lam = hyperplane_basis(h);
    Mat lamt = lam.transpose(); // 3 x 4
    // Parameter values: (1, t) for enough distinct t, plus (0, 1).
    std::vector<std::pair<FieldElem, FieldElem>> params;
    const size_t wanted = 13;
    if (f.is_prime()) {
        if (f.p() + 1 < wanted)
            throw PreconditionError("field too small to interpolate the projected cubic");
        for (uint32_t t = 0; params.size() < wanted - 1; ++t)
            params.push_back({FieldElem::one(f), FieldElem::from_int(f, t)});
    } else {
        for (long long t = 0; params.size() < wanted - 1; ++t)
            params.push_back({FieldElem::one(f), FieldElem::from_int(f, t)});
    }
    params.push_back({FieldElem::zero(f), FieldElem::one(f)});
    std::vector<ProjPoint> samples;
    for (const auto& [u, v] : params) {
        std::vector<FieldElem> c3 = {u * u * u, u * u * v, u * v * v, v * v * v};
        std::vector<FieldElem> img(3, FieldElem::zero(f));
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 4; ++j)
                img[i] = img[i] + lamt.at(i, j) * c3[j];
        ProjPoint pt(f, img);
        if (std::find(samples.begin(), samples.end(), pt) == samples.end())
            samples.push_back(pt);
    }
    Mat ev = eval_matrix(PointConfig(2, samples), 3);
    Mat ker = kernel_basis(ev);
    if (ker.cols() != 1)
        throw DegenerateInputError("projected cubic interpolation has kernel dimension " +
                                   std::to_string(ker.cols()));
    std::vector<FieldElem> coeffs;
    for (size_t i = 0; i < ker.rows(); ++i)
        coeffs.push_back(ker.at(i, 0));
    return HomForm::from_coeffs(f, 3, 3, std::move(coeffs));
}

HomForm w_determinant_curve(const SteinerPresentation& p) {
    if (p.nvars() != 3)
        throw PreconditionError("the determinant route lives on the plane");
    const size_t m = p.m();
    if (p.total() != 2 * m)
        throw PreconditionError("the determinant route needs a square dual-side pencil "
                                "(total = 2m)");
    // H^1(E(-3)) = ker of [N_0 | N_1 | N_2] acting on H^2(O(-4))^m blocks;
    // multiplication by the i-th coordinate picks out block i.
    Mat phi = p.matrix(0).hstack(p.matrix(1)).hstack(p.matrix(2));
    Mat ker = kernel_basis(phi); // 3m x m'
    if (ker.cols() != m)
        throw DegenerateInputError("dual-side pencil is not square: kernel dimension " +
                                   std::to_string(ker.cols()));
    // Dual pencil M~(Y) = sum Y_i * (rows of block i of the kernel); its
    // determinant cuts out the unstable locus.
    std::vector<std::vector<HomForm>> entries(m, std::vector<HomForm>(m, HomForm(p.field(), 3, 1)));
    for (size_t r = 0; r < m; ++r)
        for (size_t c = 0; c < m; ++c)
            for (uint32_t i = 0; i < 3; ++i)
                entries[r][c].set_coeff(i, ker.at(i * m + r, c));
    HomForm det = detail::pencil_minor(entries);
    if (det.is_zero())
        throw DegenerateInputError("dual-side determinant vanishes identically");
    return det;
}

TorelliReport torelli_compare(const PointConfig& z1, const PointConfig& z2, uint32_t r,
                              uint32_t trials, uint64_t seed) {
    if (z1.n() != 2 || z2.n() != 2)
        throw PreconditionError("the dichotomy comparison lives on the dual plane");
    if (z1.size() != z2.size())
        throw PreconditionError("configurations must have the same length, got " +
                                std::to_string(z1.size()) + " and " + std::to_string(z2.size()));
    GeneralPositionReport gp1 = is_general_position(z1, r);
    if (!gp1.ok)
        throw PreconditionError("first configuration: " + gp1.reason);
    GeneralPositionReport gp2 = is_general_position(z2, r);
    if (!gp2.ok)
        throw PreconditionError("second configuration: " + gp2.reason);

    SteinerPresentation p1 = build_logarithmic(z1, r);
    SteinerPresentation p2 = build_logarithmic(z2, r);
    TorelliReport rep;
    IsoResult iso = is_isomorphic(p1, p2, trials, seed);
    rep.isomorphic = iso.isomorphic;
    rep.hom_dim = iso.hom_dim;
    rep.witness = iso.witness;
    if (iso.isomorphic) {
        if (z1.same_set(z2)) {
            rep.dichotomy_case = 1;
            rep.note = "identical configurations";
            return rep;
        }
        PointConfig zu = z1.union_with(z2);
        std::vector<HomForm> curves = linear_system(zu, r + 2);
        if (!curves.empty()) {
            rep.dichotomy_case = 2;
            rep.common_curve = curves[0];
            rep.note = "both configurations lie on a degree-" + std::to_string(r + 2) +
                       " curve; the bundle is the pushforward of the rank-1 restriction of "
                       "the twisted ideal sheaf to that curve";
            return rep;
        }
        rep.violation = true;
        rep.note = "isomorphic presentations but distinct configurations with no common "
                   "degree-" + std::to_string(r + 2) + " curve";
        return rep;
    }
    // Not isomorphic: attach the distinguishing invariant.
    WReport w1 = classify_W_ideal(z1, r);
    WReport w2 = classify_W_ideal(z2, r);
    if (w1.kind != w2.kind)
        rep.note = "unstable loci differ in kind: " + w_kind_name(w1.kind) + " vs " +
                   w_kind_name(w2.kind);
    else if (w1.kind == WKind::Finite && !z1.same_set(z2))
        rep.note = "finite unstable loci differ (the loci recover the configurations)";
    else if (w1.kind == WKind::Curve && w1.curve && w2.curve &&
             !w1.curve->proportional_to(*w2.curve))
        rep.note = "unstable-locus curves differ";
    else
        rep.note = "no invertible intertwiner; hom dimension " + std::to_string(iso.hom_dim) +
                   (iso.probabilistic ? " (randomized search, probabilistic)" : "");
    return rep;
}

} // namespace steiner
