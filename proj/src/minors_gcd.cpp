#include "minors_gcd.hpp"

#include <algorithm>

namespace steiner::detail {

namespace {

// --- dense univariate polynomials over Q ---------------------------------

using UniPoly = std::vector<mpq_class>; // coefficient of t^i at index i

void uni_trim(UniPoly& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

bool uni_zero(const UniPoly& p) { return p.empty(); }

int uni_deg(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (uni_zero(a) || uni_zero(b))
        return {};
    UniPoly out(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

UniPoly uni_sub(UniPoly a, const UniPoly& b) {
    if (a.size() < b.size())
        a.resize(b.size(), mpq_class(0));
    for (size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    uni_trim(a);
    return a;
}

UniPoly uni_scale(UniPoly a, const mpq_class& c) {
    for (auto& x : a)
        x *= c;
    uni_trim(a);
    return a;
}

// Remainder of a by b over Q.
UniPoly uni_rem(UniPoly a, const UniPoly& b) {
    while (!uni_zero(a) && a.size() >= b.size()) {
        mpq_class c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= c * b[i];
        uni_trim(a);
    }
    return a;
}

// Exact quotient; remainder is asserted zero.
UniPoly uni_divexact(UniPoly a, const UniPoly& b) {
    if (uni_zero(a))
        return {};
    UniPoly q(a.size() - b.size() + 1, mpq_class(0));
    while (!uni_zero(a) && a.size() >= b.size()) {
        mpq_class c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= c * b[i];
        uni_trim(a);
    }
    if (!uni_zero(a))
        throw Error("inexact polynomial division");
    uni_trim(q);
    return q;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
    uni_trim(a);
    uni_trim(b);
    while (!uni_zero(b)) {
        UniPoly r = uni_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!uni_zero(a)) {
        mpq_class lead = a.back();
        for (auto& x : a)
            x /= lead;
    }
    return a;
}

// --- (Q[Y1])[Y0]: bivariate polynomials as Y0-coefficient vectors --------

using BiPoly = std::vector<UniPoly>; // coefficient of Y0^i at index i

void bi_trim(BiPoly& p) {
    while (!p.empty() && uni_zero(p.back()))
        p.pop_back();
}

bool bi_zero(const BiPoly& p) { return p.empty(); }

int bi_total_degree(const BiPoly& p) {
    int d = -1;
    for (size_t i = 0; i < p.size(); ++i)
        if (!uni_zero(p[i]))
            d = std::max(d, static_cast<int>(i) + uni_deg(p[i]));
    return d;
}

UniPoly bi_content(const BiPoly& p) {
    UniPoly g;
    for (const auto& c : p)
        if (!uni_zero(c))
            g = uni_gcd(g, c);
    return g;
}

BiPoly bi_primitive(const BiPoly& p, const UniPoly& content) {
    BiPoly out(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        if (!uni_zero(p[i]))
            out[i] = uni_divexact(p[i], content);
    bi_trim(out);
    return out;
}

BiPoly bi_scale_uni(const BiPoly& p, const UniPoly& c) {
    BiPoly out(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        out[i] = uni_mul(p[i], c);
    bi_trim(out);
    return out;
}

BiPoly bi_sub(BiPoly a, const BiPoly& b) {
    if (a.size() < b.size())
        a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i)
        a[i] = uni_sub(a[i], b[i]);
    bi_trim(a);
    return a;
}

// Pseudo-remainder in Y0 over the ring Q[Y1].
BiPoly bi_prem(BiPoly a, const BiPoly& b) {
    const UniPoly& lead = b.back();
    while (!bi_zero(a) && a.size() >= b.size()) {
        UniPoly c = a.back();
        size_t shift = a.size() - b.size();
        // a = lead * a - c * Y0^shift * b
        BiPoly scaled_a = bi_scale_uni(a, lead);
        BiPoly sub(b.size() + shift);
        for (size_t i = 0; i < b.size(); ++i)
            sub[i + shift] = uni_mul(b[i], c);
        a = bi_sub(std::move(scaled_a), sub);
    }
    return a;
}

BiPoly bi_gcd(BiPoly a, BiPoly b) {
    bi_trim(a);
    bi_trim(b);
    if (bi_zero(a))
        return b;
    if (bi_zero(b))
        return a;
    UniPoly ca = bi_content(a), cb = bi_content(b);
    UniPoly cg = uni_gcd(ca, cb);
    BiPoly pa = bi_primitive(a, ca), pb = bi_primitive(b, cb);
    if (pa.size() < pb.size())
        std::swap(pa, pb);
    // Primitive pseudo-remainder sequence.
    while (!bi_zero(pb)) {
        BiPoly r = bi_prem(pa, pb);
        if (!bi_zero(r))
            r = bi_primitive(r, bi_content(r));
        pa = std::move(pb);
        pb = std::move(r);
    }
    BiPoly g = bi_scale_uni(pa, cg);
    // Deterministic representative: primitive in Y1 with monic Y0 lead.
    UniPoly c = bi_content(g);
    g = bi_primitive(g, c);
    mpq_class leadc = g.back().back();
    for (auto& coef : g)
        coef = uni_scale(coef, 1 / leadc);
    return g;
}

// --- homogeneous trivariate <-> bivariate bridges -------------------------

uint32_t min_last_exponent(const HomForm& f) {
    auto mons = monomials(3, f.degree());
    uint32_t e = f.degree() + 1;
    for (size_t i = 0; i < mons.size(); ++i)
        if (!f.coeff(i).is_zero())
            e = std::min(e, mons[i][2]);
    return e;
}

BiPoly dehomogenize(const HomForm& f, uint32_t strip) {
    auto mons = monomials(3, f.degree());
    BiPoly out;
    for (size_t i = 0; i < mons.size(); ++i) {
        if (f.coeff(i).is_zero())
            continue;
        uint32_t e0 = mons[i][0], e1 = mons[i][1];
        (void)strip; // the Y2 power is dropped wholesale
        if (out.size() <= e0)
            out.resize(e0 + 1);
        UniPoly& c = out[e0];
        if (c.size() <= e1)
            c.resize(e1 + 1, mpq_class(0));
        c[e1] += f.coeff(i).rat();
    }
    for (auto& c : out)
        uni_trim(c);
    bi_trim(out);
    return out;
}

HomForm rehomogenize(const BiPoly& b, const Field& f, uint32_t extra_last) {
    int d = bi_total_degree(b);
    if (d < 0)
        return HomForm(f, 3, 0);
    HomForm out(f, 3, static_cast<uint32_t>(d) + extra_last);
    for (size_t e0 = 0; e0 < b.size(); ++e0)
        for (size_t e1 = 0; e1 < b[e0].size(); ++e1) {
            if (b[e0][e1] == 0)
                continue;
            std::vector<uint32_t> exp = {static_cast<uint32_t>(e0), static_cast<uint32_t>(e1),
                                         static_cast<uint32_t>(d) - static_cast<uint32_t>(e0) -
                                             static_cast<uint32_t>(e1) + extra_last};
            out.set_coeff(monomial_index(exp), FieldElem::rational(b[e0][e1]));
    }
    return out;
}

} // namespace

HomForm pencil_minor(const std::vector<std::vector<HomForm>>& entries) {
    const size_t s = entries.size();
    const Field& f = entries[0][0].field();
    const uint32_t nv = entries[0][0].nvars();
    // det over row subsets: subdet[mask] uses rows in mask and the first
    // popcount(mask) columns.
    std::vector<HomForm> subdet;
    subdet.reserve(size_t(1) << s);
    for (size_t mask = 0; mask < (size_t(1) << s); ++mask)
        subdet.push_back(HomForm(f, nv, static_cast<uint32_t>(__builtin_popcountll(mask))));
    subdet[0].set_coeff(0, FieldElem::one(f));
    for (size_t mask = 1; mask < (size_t(1) << s); ++mask) {
        const uint32_t col = static_cast<uint32_t>(__builtin_popcountll(mask)) - 1;
        HomForm acc(f, nv, col + 1);
        int pos = 0;
        for (size_t i = 0; i < s; ++i) {
            if (!(mask & (size_t(1) << i)))
                continue;
            const HomForm& e = entries[i][col];
            if (!e.is_zero()) {
                HomForm term = e.mul(subdet[mask ^ (size_t(1) << i)]);
                acc = (pos + col) % 2 == 0 ? acc.add(term)
                                           : acc.add(term.scaled(-FieldElem::one(f)));
            }
            ++pos;
        }
        subdet[mask] = std::move(acc);
    }
    return subdet[(size_t(1) << s) - 1];
}

HomForm hom_gcd(const HomForm& a, const HomForm& b) {
    if (!a.field().is_rational() || a.nvars() != 3)
        throw StrategyError("form gcd implemented over Q in 3 variables");
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    uint32_t ea = min_last_exponent(a), eb = min_last_exponent(b);
    BiPoly g = bi_gcd(dehomogenize(a, ea), dehomogenize(b, eb));
    return rehomogenize(g, a.field(), std::min(ea, eb));
}

} // namespace steiner::detail
