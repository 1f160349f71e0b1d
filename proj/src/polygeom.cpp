#include "steiner/polygeom.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "steiner/rng.hpp"

namespace steiner {

std::vector<std::vector<uint32_t>> monomials(uint32_t nvars, uint32_t d) {
    std::vector<std::vector<uint32_t>> out;
    if (nvars == 0)
        return out;
    std::vector<uint32_t> cur(nvars, 0);
    // Graded-lex descending: highest exponent on Y0 first, recursing right.
    auto rec = [&](auto&& self, uint32_t var, uint32_t rem) -> void {
        if (var + 1 == nvars) {
            cur[var] = rem;
            out.push_back(cur);
            return;
        }
        for (uint32_t e = rem;; --e) {
            cur[var] = e;
            self(self, var + 1, rem - e);
            if (e == 0)
                break;
        }
    };
    rec(rec, 0, d);
    return out;
}

size_t monomial_count(uint32_t nvars, uint32_t d) {
    // C(nvars-1+d, d)
    size_t num = 1, den = 1;
    for (uint32_t i = 1; i < nvars; ++i) {
        num *= d + i;
        den *= i;
    }
    return num / den;
}

size_t monomial_index(const std::vector<uint32_t>& e) {
    uint32_t nvars = static_cast<uint32_t>(e.size());
    uint32_t rem = 0;
    for (uint32_t x : e)
        rem += x;
    size_t idx = 0;
    // Count monomials preceding e: at each variable, those with a larger
    // exponent there come first.
    for (uint32_t var = 0; var + 1 < nvars; ++var) {
        for (uint32_t t = rem; t > e[var]; --t)
            idx += monomial_count(nvars - var - 1, rem - t);
        rem -= e[var];
    }
    return idx;
}

std::string monomial_order_tag(uint32_t nvars) {
    std::ostringstream os;
    os << "grlex:";
    for (uint32_t i = 0; i < nvars; ++i)
        os << (i ? ">" : "") << "Y" << i;
    return os.str();
}

HomForm::HomForm(const Field& f, uint32_t nvars, uint32_t degree)
    : field_(f), nvars_(nvars), degree_(degree),
      coeffs_(monomial_count(nvars, degree), FieldElem::zero(f)) {}

HomForm HomForm::from_coeffs(const Field& f, uint32_t nvars, uint32_t degree,
                             std::vector<FieldElem> coeffs) {
    if (coeffs.size() != monomial_count(nvars, degree))
        throw Error("coefficient count does not match the monomial basis");
    HomForm h(f, nvars, degree);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].field() != f)
            throw FieldMismatchError("form coefficient in wrong field");
        h.coeffs_[i] = std::move(coeffs[i]);
    }
    return h;
}

bool HomForm::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const FieldElem& c) { return c.is_zero(); });
}

FieldElem HomForm::evaluate(const std::vector<FieldElem>& point) const {
    if (point.size() != nvars_)
        throw Error("evaluation point has wrong coordinate count");
    auto mons = monomials(nvars_, degree_);
    FieldElem acc = FieldElem::zero(field_);
    for (size_t i = 0; i < mons.size(); ++i) {
        if (coeffs_[i].is_zero())
            continue;
        FieldElem term = coeffs_[i];
        for (uint32_t v = 0; v < nvars_; ++v)
            if (mons[i][v])
                term = term * point[v].pow(mons[i][v]);
        acc = acc + term;
    }
    return acc;
}

HomForm HomForm::mul(const HomForm& o) const {
    if (field_ != o.field_ || nvars_ != o.nvars_)
        throw FieldMismatchError("form product across different rings");
    HomForm out(field_, nvars_, degree_ + o.degree_);
    auto ma = monomials(nvars_, degree_);
    auto mb = monomials(nvars_, o.degree_);
    for (size_t i = 0; i < ma.size(); ++i) {
        if (coeffs_[i].is_zero())
            continue;
        for (size_t j = 0; j < mb.size(); ++j) {
            if (o.coeffs_[j].is_zero())
                continue;
            std::vector<uint32_t> e(nvars_);
            for (uint32_t v = 0; v < nvars_; ++v)
                e[v] = ma[i][v] + mb[j][v];
            size_t idx = monomial_index(e);
            out.coeffs_[idx] = out.coeffs_[idx] + coeffs_[i] * o.coeffs_[j];
        }
    }
    return out;
}

HomForm HomForm::add(const HomForm& o) const {
    if (field_ != o.field_ || nvars_ != o.nvars_ || degree_ != o.degree_)
        throw Error("form sum across different spaces");
    HomForm out = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        out.coeffs_[i] = out.coeffs_[i] + o.coeffs_[i];
    return out;
}

HomForm HomForm::scaled(const FieldElem& c) const {
    HomForm out = *this;
    for (auto& x : out.coeffs_)
        x = x * c;
    return out;
}

bool HomForm::operator==(const HomForm& o) const {
    return field_ == o.field_ && nvars_ == o.nvars_ && degree_ == o.degree_ &&
           coeffs_ == o.coeffs_;
}

bool HomForm::proportional_to(const HomForm& o) const {
    if (field_ != o.field_ || nvars_ != o.nvars_ || degree_ != o.degree_)
        return false;
    if (is_zero() || o.is_zero())
        return is_zero() && o.is_zero();
    size_t lead = 0;
    while (coeffs_[lead].is_zero() || o.coeffs_[lead].is_zero()) {
        if (coeffs_[lead].is_zero() != o.coeffs_[lead].is_zero())
            return false;
        ++lead;
    }
    FieldElem c = coeffs_[lead] / o.coeffs_[lead];
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != o.coeffs_[i] * c)
            return false;
    return true;
}

ProjPoint::ProjPoint(const Field& f, std::vector<FieldElem> coords)
    : field_(f), coords_(std::move(coords)) {
    if (coords_.empty())
        throw DegenerateInputError("projective point needs coordinates");
    size_t lead = coords_.size();
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].field() != f)
            throw FieldMismatchError("point coordinate in wrong field");
        if (lead == coords_.size() && !coords_[i].is_zero())
            lead = i;
    }
    if (lead == coords_.size())
        throw DegenerateInputError("projective point with all coordinates zero");
    FieldElem inv = coords_[lead].inverse();
    for (auto& c : coords_)
        c = c * inv;
}

ProjPoint ProjPoint::from_ints(const Field& f, const std::vector<long long>& coords) {
    std::vector<FieldElem> c;
    c.reserve(coords.size());
    for (long long v : coords)
        c.push_back(FieldElem::from_int(f, v));
    return ProjPoint(f, std::move(c));
}

bool ProjPoint::operator==(const ProjPoint& o) const {
    return field_ == o.field_ && coords_ == o.coords_;
}

bool ProjPoint::operator<(const ProjPoint& o) const {
    if (coords_.size() != o.coords_.size())
        return coords_.size() < o.coords_.size();
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == o.coords_[i])
            continue;
        if (field_.is_prime())
            return coords_[i].residue() < o.coords_[i].residue();
        return cmp(coords_[i].rat(), o.coords_[i].rat()) < 0;
    }
    return false;
}

std::string ProjPoint::str() const {
    std::string s = "[";
    for (size_t i = 0; i < coords_.size(); ++i)
        s += (i ? ":" : "") + coords_[i].str();
    return s + "]";
}

PointConfig::PointConfig(uint32_t ambient_dim, std::vector<ProjPoint> points)
    : n_(ambient_dim),
      field_(points.empty() ? Field::rational() : points[0].field()),
      points_(std::move(points)) {
    if (points_.empty())
        throw DegenerateInputError("point configuration cannot be empty");
    for (const auto& p : points_) {
        if (p.field() != field_)
            throw FieldMismatchError("points of a configuration must share a field");
        if (p.dim() != n_)
            throw DegenerateInputError("point dimension does not match configuration");
    }
    for (size_t i = 0; i < points_.size(); ++i)
        for (size_t j = i + 1; j < points_.size(); ++j)
            if (points_[i] == points_[j])
                throw DegenerateInputError("duplicate point " + points_[i].str() +
                                           " in configuration");
}

bool PointConfig::contains(const ProjPoint& p) const {
    return std::find(points_.begin(), points_.end(), p) != points_.end();
}

PointConfig PointConfig::with_point(const ProjPoint& p) const {
    std::vector<ProjPoint> pts = points_;
    pts.push_back(p);
    return PointConfig(n_, std::move(pts));
}

PointConfig PointConfig::without_index(size_t i) const {
    std::vector<ProjPoint> pts = points_;
    pts.erase(pts.begin() + i);
    return PointConfig(n_, std::move(pts));
}

PointConfig PointConfig::union_with(const PointConfig& o) const {
    std::vector<ProjPoint> pts = points_;
    for (const auto& p : o.points_)
        if (std::find(pts.begin(), pts.end(), p) == pts.end())
            pts.push_back(p);
    return PointConfig(n_, std::move(pts));
}

bool PointConfig::same_set(const PointConfig& o) const {
    if (points_.size() != o.points_.size())
        return false;
    std::vector<ProjPoint> a = points_, b = o.points_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

Mat eval_matrix(const PointConfig& z, uint32_t d) {
    auto mons = monomials(z.n() + 1, d);
    Mat m(z.field(), z.size(), mons.size());
    for (size_t i = 0; i < z.size(); ++i) {
        const auto& coords = z.point(i).coords();
        for (size_t j = 0; j < mons.size(); ++j) {
            FieldElem v = FieldElem::one(z.field());
            for (uint32_t var = 0; var < z.n() + 1; ++var)
                if (mons[j][var])
                    v = v * coords[var].pow(mons[j][var]);
            m.set(i, j, v);
        }
    }
    return m;
}

size_t h0_ideal(const PointConfig& z, uint32_t d) {
    Mat m = eval_matrix(z, d);
    return m.cols() - rank(m);
}

size_t h1_ideal(const PointConfig& z, uint32_t d) {
    Mat m = eval_matrix(z, d);
    return m.rows() - rank(m);
}

std::vector<HomForm> linear_system(const PointConfig& z, uint32_t d) {
    Mat k = kernel_basis(eval_matrix(z, d));
    std::vector<HomForm> out;
    for (size_t b = 0; b < k.cols(); ++b) {
        std::vector<FieldElem> coeffs;
        coeffs.reserve(k.rows());
        for (size_t i = 0; i < k.rows(); ++i)
            coeffs.push_back(k.at(i, b));
        out.push_back(HomForm::from_coeffs(z.field(), z.n() + 1, d, std::move(coeffs)));
    }
    return out;
}

ProjPoint dual_line_through(const ProjPoint& p1, const ProjPoint& p2) {
    if (p1.dim() != 2 || p2.dim() != 2)
        throw UndefinedInputError("dual_line_through needs points of P^2");
    if (p1 == p2)
        throw DegenerateInputError("dual line through coincident points");
    const auto& a = p1.coords();
    const auto& b = p2.coords();
    std::vector<FieldElem> c = {a[1] * b[2] - a[2] * b[1],
                                a[2] * b[0] - a[0] * b[2],
                                a[0] * b[1] - a[1] * b[0]};
    return ProjPoint(p1.field(), std::move(c));
}

bool incidence(const ProjPoint& p, const ProjPoint& h) {
    if (p.dim() != h.dim())
        throw UndefinedInputError("incidence pairing needs equal dimensions");
    FieldElem acc = FieldElem::zero(p.field());
    for (size_t i = 0; i < p.coords().size(); ++i)
        acc = acc + p.coord(i) * h.coord(i);
    return acc.is_zero();
}

size_t max_secant(const PointConfig& z) {
    if (z.n() != 2)
        throw UndefinedInputError("max_secant is defined on the dual plane only");
    if (z.size() < 2)
        throw UndefinedInputError("max_secant needs at least two points");
    size_t best = 0;
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = i + 1; j < z.size(); ++j) {
            ProjPoint line = dual_line_through(z.point(i), z.point(j));
            size_t count = 0;
            for (size_t t = 0; t < z.size(); ++t)
                if (incidence(z.point(t), line))
                    ++count;
            best = std::max(best, count);
        }
    return best;
}

Mat hyperplane_basis(const ProjPoint& h) {
    const size_t nv = h.coords().size();
    size_t solve = nv;
    for (size_t i = nv; i-- > 0;)
        if (!h.coord(i).is_zero()) { solve = i; break; }
    // h is normalized, so a nonzero coordinate exists.
    Mat lam(h.field(), nv, nv - 1);
    FieldElem inv = h.coord(solve).inverse();
    size_t t = 0;
    for (size_t j = 0; j < nv; ++j) {
        if (j == solve)
            continue;
        lam.set(j, t, FieldElem::one(h.field()));
        lam.set(solve, t, -(h.coord(j) * inv));
        ++t;
    }
    return lam;
}

std::vector<size_t> points_on_hyperplane(const PointConfig& z, const ProjPoint& h) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < z.size(); ++i)
        if (incidence(z.point(i), h))
            idx.push_back(i);
    return idx;
}

size_t h0_ideal_on_hyperplane(const PointConfig& z, const ProjPoint& h, uint32_t d) {
    // J_Z(d) restricted to h splits as the skyscrapers on Z-on-h plus the
    // internal ideal sheaf of those points inside h.
    std::vector<size_t> on = points_on_hyperplane(z, h);
    const uint32_t n = z.n();
    size_t internal_dim = monomial_count(n, d); // forms of degree d on h = P^{n-1}
    if (on.empty())
        return on.size() + internal_dim;
    Mat lam = hyperplane_basis(h);
    // Internal coordinates of the on-hyperplane points: solve lam * y = x.
    // lam's columns are unit vectors except in the solved row, so y is just
    // x restricted to the kept coordinates.
    size_t solve_row = 0;
    {
        const size_t nv = h.coords().size();
        for (size_t i = nv; i-- > 0;)
            if (!h.coord(i).is_zero()) { solve_row = i; break; }
    }
    std::vector<ProjPoint> internal;
    for (size_t i : on) {
        std::vector<FieldElem> y;
        for (size_t j = 0; j < z.point(i).coords().size(); ++j)
            if (j != solve_row)
                y.push_back(z.point(i).coord(j));
        internal.push_back(ProjPoint(z.field(), std::move(y)));
    }
    // The internal points inherit distinctness from Z.
    PointConfig zin(n - 1, std::move(internal));
    Mat ev = eval_matrix(zin, d);
    return on.size() + (internal_dim - rank(ev));
}

GeneralPositionReport is_general_position(const PointConfig& z, uint32_t r,
                                          int samples, uint64_t seed) {
    if (z.n() < 2)
        throw UndefinedInputError("general-position tests need an ambient dimension >= 2");
    GeneralPositionReport rep;
    rep.h0 = h0_ideal(z, r + 1);
    if (rep.h0 != 0) {
        rep.reason = "h0(J_Z(" + std::to_string(r + 1) + ")) = " + std::to_string(rep.h0) +
                     " != 0: Z lies on a degree-" + std::to_string(r + 1) + " hypersurface";
        return rep;
    }
    if (z.n() == 2) {
        // Exact planar test: no (r+3)-secant line.
        std::vector<ProjPoint> secants;
        for (size_t i = 0; i < z.size(); ++i)
            for (size_t j = i + 1; j < z.size(); ++j) {
                ProjPoint line = dual_line_through(z.point(i), z.point(j));
                size_t count = 0;
                for (size_t t = 0; t < z.size(); ++t)
                    if (incidence(z.point(t), line))
                        ++count;
                if (count >= r + 3 &&
                    std::find(secants.begin(), secants.end(), line) == secants.end())
                    secants.push_back(line);
            }
        if (!secants.empty()) {
            rep.secant_lines = secants;
            std::string list;
            for (const auto& l : secants)
                list += (list.empty() ? "" : ", ") + l.str();
            rep.reason = "(r+3)-secant line(s) with r+3 = " + std::to_string(r + 3) +
                         ": " + list;
            return rep;
        }
        rep.ok = true;
        return rep;
    }
    // n >= 3: sampled hyperplane-wise test against the generic value
    // C(n+r, n-1), mixing uniform hyperplanes with hyperplanes through
    // small subsets of Z.
    rep.sampled = true;
    const uint32_t nv = z.n() + 1;
    const size_t expected = monomial_count(z.n(), r + 1);
    SeededRng rng(seed);
    auto random_elem = [&]() {
        if (z.field().is_prime())
            return FieldElem::from_int(z.field(), static_cast<long long>(rng.below(z.field().p())));
        return FieldElem::from_int(z.field(), rng.signed_range(20));
    };
    for (int s = 0; s < samples; ++s) {
        std::vector<FieldElem> h(nv);
        bool through_points = s % 2 == 1 && z.size() >= 2;
        for (;;) {
            for (auto& c : h)
                c = random_elem();
            if (through_points) {
                // Force the hyperplane through up to n-1 points of Z by
                // solving for h against those incidence conditions.
                size_t count = 1 + rng.below(z.n() - 1);
                auto idx = rng.sample_distinct(z.size(), std::min<size_t>(count, z.size()));
                Mat sys(z.field(), idx.size(), nv);
                for (size_t a = 0; a < idx.size(); ++a)
                    for (size_t b = 0; b < nv; ++b)
                        sys.set(a, b, z.point(idx[a]).coord(b));
                Mat k = kernel_basis(sys);
                if (k.cols() == 0)
                    continue;
                std::vector<FieldElem> combo(nv, FieldElem::zero(z.field()));
                for (size_t b = 0; b < k.cols(); ++b) {
                    FieldElem c = random_elem();
                    for (size_t a = 0; a < nv; ++a)
                        combo[a] = combo[a] + c * k.at(a, b);
                }
                h = combo;
            }
            bool nonzero = std::any_of(h.begin(), h.end(),
                                       [](const FieldElem& c) { return !c.is_zero(); });
            if (nonzero)
                break;
        }
        ProjPoint hp(z.field(), h);
        size_t got = h0_ideal_on_hyperplane(z, hp, r + 1);
        if (got != expected) {
            rep.reason = "h0(J_Z(" + std::to_string(r + 1) + ") | " + hp.str() + ") = " +
                         std::to_string(got) + " != generic value " + std::to_string(expected);
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

std::vector<ProjPoint> enumerate_plane_points(const Field& f) {
    if (!f.is_prime())
        throw StrategyError("exhaustive plane enumeration needs a prime field");
    const uint32_t p = f.p();
    std::vector<ProjPoint> pts;
    pts.reserve(static_cast<size_t>(p) * p + p + 1);
    for (uint32_t a = 0; a < p; ++a)
        for (uint32_t b = 0; b < p; ++b)
            pts.push_back(ProjPoint::from_ints(f, {1, a, b}));
    for (uint32_t c = 0; c < p; ++c)
        pts.push_back(ProjPoint::from_ints(f, {0, 1, c}));
    pts.push_back(ProjPoint::from_ints(f, {0, 0, 1}));
    return pts;
}

std::string format_hom_form(const HomForm& h) {
    auto mons = monomials(h.nvars(), h.degree());
    std::string out;
    for (size_t i = 0; i < mons.size(); ++i) {
        if (h.coeff(i).is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        out += h.coeff(i).str();
        for (uint32_t v = 0; v < h.nvars(); ++v)
            if (mons[i][v])
                out += "*Y" + std::to_string(v) + "^" + std::to_string(mons[i][v]);
    }
    return out.empty() ? "0" : out;
}

HomForm parse_hom_form(const Field& f, uint32_t nvars, const std::string& text) {
    // Terms split on top-level +/-; each term is an optional coefficient
    // ("num" or "num/den" over Q, a residue over F_p) followed by optional
    // *Yk^e factors.
    size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
            ++pos;
    };
    struct Term {
        FieldElem coeff;
        std::vector<uint32_t> exps;
    };
    std::vector<Term> terms;
    skip_ws();
    if (pos == text.size())
        throw FormatError("empty form");
    bool first = true;
    while (pos < text.size()) {
        skip_ws();
        bool neg = false;
        if (!first || text[pos] == '+' || text[pos] == '-') {
            if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-')) {
                if (!first)
                    throw FormatError("expected + or - between terms in: " + text);
            } else {
                neg = text[pos] == '-';
                ++pos;
            }
        }
        first = false;
        skip_ws();
        Term t{FieldElem::one(f), std::vector<uint32_t>(nvars, 0)};
        bool saw_factor = false;
        bool expect_factor = true;
        while (expect_factor && pos < text.size()) {
            skip_ws();
            if (pos < text.size() && (std::isdigit(text[pos]) || text[pos] == '-' || text[pos] == '+')) {
                size_t start = pos;
                if (text[pos] == '-' || text[pos] == '+')
                    ++pos;
                while (pos < text.size() && (std::isdigit(text[pos]) || text[pos] == '/'))
                    ++pos;
                t.coeff = t.coeff * FieldElem::parse(f, text.substr(start, pos - start));
                saw_factor = true;
            } else if (pos < text.size() && (text[pos] == 'Y' || text[pos] == 'y')) {
                ++pos;
                size_t start = pos;
                while (pos < text.size() && std::isdigit(text[pos]))
                    ++pos;
                if (start == pos)
                    throw FormatError("variable without index in: " + text);
                uint32_t var = static_cast<uint32_t>(std::stoul(text.substr(start, pos - start)));
                if (var >= nvars)
                    throw FormatError("variable Y" + std::to_string(var) + " out of range");
                uint32_t e = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    size_t estart = pos;
                    while (pos < text.size() && std::isdigit(text[pos]))
                        ++pos;
                    if (estart == pos)
                        throw FormatError("missing exponent in: " + text);
                    e = static_cast<uint32_t>(std::stoul(text.substr(estart, pos - estart)));
                }
                t.exps[var] += e;
                saw_factor = true;
            } else {
                throw FormatError("unexpected character in form: " + text);
            }
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        if (!saw_factor)
            throw FormatError("empty term in: " + text);
        if (neg)
            t.coeff = -t.coeff;
        terms.push_back(std::move(t));
        skip_ws();
    }
    uint32_t degree = 0;
    for (uint32_t e : terms[0].exps)
        degree += e;
    HomForm h(f, nvars, degree);
    for (const auto& t : terms) {
        uint32_t d = 0;
        for (uint32_t e : t.exps)
            d += e;
        if (d != degree)
            throw FormatError("form is not homogeneous: " + text);
        size_t idx = monomial_index(t.exps);
        h.set_coeff(idx, h.coeff(idx) + t.coeff);
    }
    return h;
}

} // namespace steiner
