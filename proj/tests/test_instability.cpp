#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "steiner/instability.hpp"

using namespace steiner;
using namespace steiner::testing;

namespace {

std::vector<ProjPoint> curve_points(const HomForm& c, const Field& f) {
    std::vector<ProjPoint> out;
    for (const ProjPoint& x : enumerate_plane_points(f))
        if (c.evaluate(x.coords()).is_zero())
            out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

/// Nine points on the Fermat cubic over F_31, in 2-general position.
PointConfig nine_on_cubic(const Field& f, uint64_t seed) {
    HomForm cubic = fermat_cubic(f);
    std::vector<ProjPoint> on = curve_points(cubic, f);
    SeededRng rng(seed);
    for (int attempt = 0; attempt < 500; ++attempt) {
        auto idx = rng.sample_distinct(on.size(), 9);
        std::vector<ProjPoint> pts;
        for (uint64_t i : idx)
            pts.push_back(on[i]);
        PointConfig z(2, pts);
        if (is_general_position(z, 1).ok && h0_ideal(z, 3) == 1)
            return z;
    }
    throw Error("nine_on_cubic: seeded search failed");
}

} // namespace

TEST_CASE("bundle-side test: tangent pencil is unstable on every line") {
    Field f = Field::prime(31);
    SteinerPresentation tangent = build_logarithmic(frame_config(f), 0);
    for (const ProjPoint& l : enumerate_plane_points(f)) {
        UnstableResult res = unstable_test_bundle(tangent, l);
        CHECK(res.unstable);
        CHECK(res.kernel_dim == 1);
    }
}

TEST_CASE("bundle-side test: degree-3 pencil sees exactly the conic") {
    Field q = Field::rational();
    SteinerPresentation schw = build_schwarzenberger(2, 3, q);
    // [1:1:1] lies on Y0*Y2 = Y1^2; [1:0:1] does not.
    CHECK(unstable_test_bundle(schw, ProjPoint::from_ints(q, {1, 1, 1})).unstable);
    CHECK(!unstable_test_bundle(schw, ProjPoint::from_ints(q, {1, 0, 1})).unstable);
}

TEST_CASE("ideal-side test: membership, generic stability, conic instability") {
    Field q = Field::rational();
    PointConfig six = generic_config(q, 6, 0, 606);
    for (const auto& p : six.points())
        CHECK(unstable_test_ideal(six, 0, p));
    if (h0_ideal(six, 2) == 0)
        CHECK(!unstable_test_ideal(six, 0, ProjPoint::from_ints(q, {1, 13, 57})));

    PointConfig conic5 = conic_points(q, {0, 1, -1, 2, -2});
    ProjPoint sixth = ProjPoint::from_ints(q, {1, 3, 9}); // also on the conic
    CHECK(unstable_test_ideal(conic5, 0, sixth));

    PointConfig bad(2, {ProjPoint::from_ints(q, {1, 0, 0}), ProjPoint::from_ints(q, {0, 1, 0}),
                        ProjPoint::from_ints(q, {1, 1, 0}), ProjPoint::from_ints(q, {0, 0, 1}),
                        ProjPoint::from_ints(q, {1, 2, 3})});
    CHECK_THROWS_AS(unstable_test_ideal(bad, 0, sixth), PreconditionError);
}

TEST_CASE("classification from the ideal side") {
    Field q = Field::rational();
    PointConfig six = generic_config(q, 6, 0, 616);
    REQUIRE(h0_ideal(six, 2) == 0);
    WReport w6 = classify_W_ideal(six, 0);
    CHECK(w6.kind == WKind::Finite);
    CHECK(w6.points.size() == 6);

    PointConfig five = generic_config(q, 5, 0, 515);
    WReport w5 = classify_W_ideal(five, 0);
    CHECK(w5.kind == WKind::Curve);
    CHECK(w5.curve_degree == 2);
    REQUIRE(w5.curve.has_value());
    for (const auto& p : five.points())
        CHECK(w5.curve->evaluate(p.coords()).is_zero());

    WReport w4 = classify_W_ideal(frame_config(q), 0);
    CHECK(w4.kind == WKind::WholeSpace);
    // t = h0(J_Z(2)) = 2 and the tangent pencil has every line unstable.
    CHECK(h0_ideal(frame_config(q), 2) == 2);
    // Expected codimension for the tangent case: m=1, n=2, tau=3 -> 0.
    CHECK(w4.expected_codim == 0);
}

TEST_CASE("exhaustive scan: ten generic points give exactly Z") {
    Field f = Field::prime(31);
    PointConfig ten = generic_config(f, 10, 1, 2024);
    REQUIRE(h0_ideal(ten, 3) == 0);
    SteinerPresentation p = build_logarithmic(ten, 1);
    ScanResult scan = scan_W_bundle(p, ScanDomain::Exhaustive());
    CHECK(scan.report.kind == WKind::Finite);
    std::vector<ProjPoint> zs = ten.points();
    std::sort(zs.begin(), zs.end());
    CHECK(scan.found == zs);
    WReport ideal = classify_W_ideal(ten, 1);
    CHECK(ideal.kind == WKind::Finite);
}

TEST_CASE("exhaustive scan: cubic twist a=3 sees exactly the cubic") {
    Field f = Field::prime(31);
    HomForm cubic = fermat_cubic(f);
    SteinerPresentation p = build_curve_twist(cubic, 3);
    ScanResult scan = scan_W_bundle(p, ScanDomain::Exhaustive());
    CHECK(scan.report.kind == WKind::Curve);
    REQUIRE(scan.report.curve.has_value());
    CHECK(scan.report.curve->proportional_to(cubic));
    CHECK(scan.found == curve_points(cubic, f));
}

TEST_CASE("exhaustive scan: cubic twist a=2 is unstable everywhere") {
    Field f = Field::prime(31);
    SteinerPresentation p = build_curve_twist(fermat_cubic(f), 2);
    ScanResult scan = scan_W_bundle(p, ScanDomain::Exhaustive());
    CHECK(scan.report.kind == WKind::WholeSpace);
    CHECK(scan.found.size() == 993);
}

TEST_CASE("sampled scan reports findings without classification") {
    Field q = Field::rational();
    SteinerPresentation p = build_logarithmic(conic_points(q, {0, 1, -1, 2, -2}), 0);
    std::vector<ProjPoint> samples = {ProjPoint::from_ints(q, {1, 3, 9}),
                                      ProjPoint::from_ints(q, {1, 0, 1})};
    ScanResult scan = scan_W_bundle(p, ScanDomain::Samples(samples));
    CHECK(scan.found.size() == 1);
    CHECK(scan.found[0] == ProjPoint::from_ints(q, {1, 3, 9}));
    CHECK_THROWS_AS(scan_W_bundle(p, ScanDomain::Exhaustive()), StrategyError);
}

TEST_CASE("splitting types: tangent, balanced, jumping") {
    Field q = Field::rational();
    SteinerPresentation tangent = build_logarithmic(frame_config(q), 0);
    SplittingType st = splitting_type(tangent, line_from_dual(ProjPoint::from_ints(q, {1, 5, 7})));
    CHECK(st.degrees == std::vector<uint32_t>{1, 0});

    SteinerPresentation schw = build_schwarzenberger(2, 3, q);
    SplittingType balanced =
        splitting_type(schw, line_from_dual(ProjPoint::from_ints(q, {1, 0, 1})));
    CHECK(balanced.degrees == std::vector<uint32_t>{1, 1});
    SplittingType jumping =
        splitting_type(schw, line_from_dual(ProjPoint::from_ints(q, {1, 1, 1})));
    CHECK(jumping.degrees == std::vector<uint32_t>{2, 0});

    // Degenerate parametrization rejected.
    ProjPoint a = ProjPoint::from_ints(q, {1, 0, 0});
    CHECK_THROWS_AS(splitting_type(schw, LineParam{a, a}), DegenerateInputError);
}

TEST_CASE("splitting coherence with the unstable kernel dimension") {
    Field f = Field::prime(31);
    std::vector<SteinerPresentation> pool = {
        build_logarithmic(generic_config(f, 6, 0, 31), 0),
        build_logarithmic(generic_config(f, 10, 1, 32), 1),
        build_schwarzenberger(2, 4, f),
        build_curve_twist(fermat_cubic(f), 3),
    };
    SeededRng rng(99);
    auto plane = enumerate_plane_points(f);
    for (const auto& p : pool)
        for (int i = 0; i < 12; ++i) {
            const ProjPoint& l = plane[rng.below(plane.size())];
            SplittingType st = splitting_type(p, line_from_dual(l));
            size_t total = 0, zeros = 0;
            for (uint32_t d : st.degrees) {
                total += d;
                zeros += d == 0;
            }
            CHECK(total == p.c1());
            CHECK(st.degrees.size() == p.bundle_rank());
            CHECK(zeros == unstable_test_bundle(p, l).kernel_dim);
        }
}

TEST_CASE("oracle agreement on seeded configurations") {
    Field f = Field::prime(31);
    for (uint64_t seed : {11ull, 12ull}) {
        PointConfig z = generic_config(f, 6, 0, seed);
        SteinerPresentation p = build_logarithmic(z, 0);
        ScanResult scan = scan_W_bundle(p, ScanDomain::Exhaustive());
        for (const ProjPoint& l : enumerate_plane_points(f)) {
            bool bundle = std::binary_search(scan.found.begin(), scan.found.end(), l);
            CHECK(bundle == unstable_test_ideal(z, 0, l, false));
        }
    }
    // Rational spot checks.
    Field q = Field::rational();
    PointConfig z = generic_config(q, 6, 0, 13);
    SteinerPresentation p = build_logarithmic(z, 0);
    SeededRng rng(14);
    for (int i = 0; i < 25; ++i) {
        ProjPoint l = ProjPoint::from_ints(q, {1, rng.signed_range(20), rng.signed_range(20)});
        CHECK(unstable_test_bundle(p, l).unstable == unstable_test_ideal(z, 0, l, false));
    }
    for (const auto& zp : z.points())
        CHECK(unstable_test_bundle(p, zp).unstable); // Z inside W, bundle side
}

TEST_CASE("secant check returns no violations on theorem-true inputs") {
    Field f = Field::prime(31);
    PointConfig ten = generic_config(f, 10, 1, 3030);
    SteinerPresentation p = build_logarithmic(ten, 1);
    ScanResult scan = scan_W_bundle(p, ScanDomain::Exhaustive());
    CHECK(secant_pencil_check(p, scan.found, 1).empty());

    SteinerPresentation whole = build_curve_twist(fermat_cubic(f), 2);
    ScanResult scanw = scan_W_bundle(whole, ScanDomain::Exhaustive());
    CHECK(secant_pencil_check(whole, scanw.found, 1).empty());

    SteinerPresentation curve = build_curve_twist(fermat_cubic(f), 3);
    ScanResult scanc = scan_W_bundle(curve, ScanDomain::Exhaustive());
    CHECK(secant_pencil_check(curve, scanc.found, 1).empty());
}

TEST_CASE("secant check reports synthetic violations") {
    Field f = Field::prime(31);
    // The degree-3 pencil's unstable set is the conic; pad the set with
    // collinear off-conic points to force a fake (r+3)-secant.
    SteinerPresentation schw = build_schwarzenberger(2, 3, f);
    std::vector<ProjPoint> fake = {ProjPoint::from_ints(f, {1, 0, 1}),
                                   ProjPoint::from_ints(f, {1, 0, 2}),
                                   ProjPoint::from_ints(f, {1, 0, 3})};
    std::vector<SecantViolation> v = secant_pencil_check(schw, fake, 0);
    CHECK(!v.empty());
}

TEST_CASE("projected cubic: coordinate plane gives the cuspidal relation") {
    Field q = Field::rational();
    HomForm cubic = projected_cubic(ProjPoint::from_ints(q, {0, 1, 0, 0}));
    HomForm expected = parse_hom_form(q, 3, "Y1^3 - Y0*Y2^2");
    CHECK(cubic.proportional_to(expected));

    // Generic centers give a unique cubic.
    HomForm generic = projected_cubic(ProjPoint::from_ints(q, {1, 2, -1, 3}));
    CHECK(generic.degree() == 3);
    CHECK(!generic.is_zero());

    // Centers on the twisted cubic are rejected.
    CHECK_THROWS_AS(projected_cubic(ProjPoint::from_ints(q, {1, 0, 0, 0})), PreconditionError);
    CHECK_THROWS_AS(projected_cubic(ProjPoint::from_ints(q, {1, 1, 1, 1})), PreconditionError);
    CHECK_THROWS_AS(projected_cubic(ProjPoint::from_ints(q, {1, 2, 4, 8})), PreconditionError);
}

TEST_CASE("restricted degree-5 pencil sees exactly the projected cubic") {
    Field f = Field::prime(31);
    SteinerPresentation schw = build_schwarzenberger(3, 5, f);
    ProjPoint h = ProjPoint::from_ints(f, {3, 1, 4, 1}); // off the twisted cubic
    SteinerPresentation restricted = restrict_to_hyperplane(schw, h);
    HomForm cubic = projected_cubic(h);
    ScanResult scan = scan_W_bundle(restricted, ScanDomain::Exhaustive());
    CHECK(scan.report.kind == WKind::Curve);
    REQUIRE(scan.report.curve.has_value());
    CHECK(scan.report.curve->proportional_to(cubic));
    CHECK(scan.found == curve_points(cubic, f));
}

TEST_CASE("determinant route matches the curve classifications") {
    Field q = Field::rational();
    // Square dual side: 5 points on the conic (m = 2, total = 4).
    SteinerPresentation p5 = build_logarithmic(conic_points(q, {0, 1, -1, 2, -2}), 0);
    HomForm det5 = w_determinant_curve(p5);
    CHECK(det5.proportional_to(veronese_conic(q)));

    // Nine points on the Fermat cubic (m = 3, total = 6): the unstable
    // locus is the cubic itself, seen three ways.
    Field f = Field::prime(31);
    PointConfig nine = nine_on_cubic(f, 303);
    SteinerPresentation p9 = build_logarithmic(nine, 1);
    REQUIRE(p9.m() == 3);
    REQUIRE(p9.total() == 6);
    HomForm det9 = w_determinant_curve(p9);
    CHECK(det9.proportional_to(fermat_cubic(f)));
    WReport ideal = classify_W_ideal(nine, 1);
    CHECK(ideal.kind == WKind::Curve);
    REQUIRE(ideal.curve.has_value());
    CHECK(ideal.curve->proportional_to(fermat_cubic(f)));
    ScanResult scan = scan_W_bundle(p9, ScanDomain::Exhaustive());
    CHECK(scan.report.kind == WKind::Curve);
    REQUIRE(scan.report.curve.has_value());
    CHECK(scan.report.curve->proportional_to(fermat_cubic(f)));

    // Non-square pencils are rejected.
    SteinerPresentation tangent = build_logarithmic(frame_config(q), 0);
    CHECK_THROWS_AS(w_determinant_curve(tangent), PreconditionError);
}

TEST_CASE("dichotomy comparison: equal, conic-sharing, generic") {
    Field q = Field::rational();
    PointConfig z = generic_config(q, 6, 0, 661);
    TorelliReport same = torelli_compare(z, z, 0);
    CHECK(same.isomorphic);
    CHECK(same.dichotomy_case == 1);
    CHECK(!same.violation);

    PointConfig c1 = conic_points(q, {0, 1, -1, 2, 3});
    PointConfig c2 = conic_points(q, {0, 1, -1, 2, -2});
    TorelliReport conic = torelli_compare(c1, c2, 0);
    CHECK(conic.isomorphic);
    CHECK(conic.dichotomy_case == 2);
    REQUIRE(conic.common_curve.has_value());
    CHECK(conic.common_curve->proportional_to(veronese_conic(q)));

    PointConfig g1 = generic_config(q, 6, 0, 662);
    PointConfig g2 = generic_config(q, 6, 0, 663);
    REQUIRE(!g1.same_set(g2));
    TorelliReport generic = torelli_compare(g1, g2, 0);
    CHECK(!generic.isomorphic);
    CHECK(!generic.violation);
    CHECK(generic.dichotomy_case == 0);

    CHECK_THROWS_AS(torelli_compare(z, c1, 1), PreconditionError); // size mismatch
}

TEST_CASE("splitting on a space line: degrees still sum to c1") {
    Field q = Field::rational();
    SteinerPresentation schw = build_schwarzenberger(3, 5, q);
    LineParam line{ProjPoint::from_ints(q, {1, 0, 0, 0}), ProjPoint::from_ints(q, {0, 1, 1, 1})};
    SplittingType st = splitting_type(schw, line);
    size_t sum = 0;
    for (uint32_t d : st.degrees)
        sum += d;
    CHECK(sum == schw.c1());
    CHECK(st.degrees.size() == schw.bundle_rank());

    // The generic line of the degree-5 pencil splits in a balanced way.
    LineParam generic{ProjPoint::from_ints(q, {1, 2, -1, 3}), ProjPoint::from_ints(q, {0, 1, 5, -2})};
    SplittingType stg = splitting_type(schw, generic);
    CHECK(stg.degrees == std::vector<uint32_t>{1, 1, 1});
}
