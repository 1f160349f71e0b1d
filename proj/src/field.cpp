#include "steiner/field.hpp"

namespace steiner {

bool is_prime_u32(uint32_t n) {
    if (n < 2)
        return false;
    for (uint32_t q : {2u, 3u, 5u, 7u}) {
        if (n == q)
            return true;
        if (n % q == 0)
            return false;
    }
    uint32_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    // Bases 2,3,5,7 are known to be exact witnesses below 3,215,031,751.
    for (uint32_t a : {2u, 3u, 5u, 7u}) {
        uint64_t x = mod_pow(a % n, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

uint32_t mod_pow(uint32_t base, uint64_t exp, uint32_t p) {
    uint64_t b = base % p;
    uint64_t acc = 1 % p;
    while (exp) {
        if (exp & 1)
            acc = acc * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<uint32_t>(acc);
}

uint32_t mod_inverse(uint32_t a, uint32_t p) {
    if (a % p == 0)
        throw Error("division by zero in F_" + std::to_string(p));
    // Extended Euclid on (a, p); p is prime so gcd is 1.
    int64_t t = 0, newt = 1;
    int64_t r = p, newr = a % p;
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0)
        t += p;
    return static_cast<uint32_t>(t);
}

Field Field::prime(uint32_t p) {
    if (p < 2 || p > 0x7fffffffu || !is_prime_u32(p))
        throw PreconditionError("field modulus must be a prime < 2^31, got " + std::to_string(p));
    return Field(FieldKind::Prime, p);
}

std::string Field::str() const {
    return is_rational() ? "rational" : "p=" + std::to_string(p_);
}

Field Field::parse(const std::string& s) {
    if (s == "rational" || s == "Q" || s == "q")
        return Field::rational();
    if (s.rfind("p=", 0) == 0) {
        try {
            unsigned long v = std::stoul(s.substr(2));
            if (v > 0x7fffffffu)
                throw FormatError("modulus out of range: " + s);
            return Field::prime(static_cast<uint32_t>(v));
        } catch (const std::logic_error&) {
            throw FormatError("bad field descriptor: " + s);
        }
    }
    throw FormatError("bad field descriptor: " + s + " (expected \"rational\" or \"p=<prime>\")");
}

FieldElem FieldElem::zero(const Field& f) {
    return FieldElem(f, mpq_class(0), 0);
}

FieldElem FieldElem::one(const Field& f) {
    if (f.is_rational())
        return FieldElem(f, mpq_class(1), 0);
    return FieldElem(f, mpq_class(0), 1 % f.p());
}

FieldElem FieldElem::from_int(const Field& f, long long v) {
    if (f.is_rational()) {
        mpq_class q;
        q = static_cast<long>(v);
        return FieldElem(f, q, 0);
    }
    long long r = v % static_cast<long long>(f.p());
    if (r < 0)
        r += f.p();
    return FieldElem(f, mpq_class(0), static_cast<uint32_t>(r));
}

FieldElem FieldElem::rational(mpq_class v) {
    v.canonicalize();
    return FieldElem(Field::rational(), std::move(v), 0);
}

FieldElem FieldElem::prime(uint32_t residue, uint32_t p) {
    Field f = Field::prime(p);
    return FieldElem(f, mpq_class(0), residue % p);
}

FieldElem FieldElem::parse(const Field& f, const std::string& s) {
    if (s.empty())
        throw FormatError("empty scalar");
    if (f.is_rational()) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw FormatError("bad rational scalar: " + s);
        if (q.get_den() == 0)
            throw FormatError("zero denominator: " + s);
        q.canonicalize();
        return FieldElem(f, std::move(q), 0);
    }
    size_t pos = 0;
    bool neg = false;
    if (s[pos] == '-' || s[pos] == '+') {
        neg = s[pos] == '-';
        ++pos;
    }
    if (pos == s.size())
        throw FormatError("bad residue: " + s);
    uint64_t v = 0;
    for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9')
            throw FormatError("bad residue: " + s);
        v = v * 10 + (s[pos] - '0');
        v %= f.p();
    }
    uint32_t r = static_cast<uint32_t>(v);
    if (neg && r != 0)
        r = f.p() - r;
    return FieldElem(f, mpq_class(0), r);
}

bool FieldElem::is_zero() const {
    return field_.is_rational() ? q_ == 0 : r_ == 0;
}

bool FieldElem::is_one() const {
    return field_.is_rational() ? q_ == 1 : r_ == 1 % field_.p();
}

void FieldElem::check_same_field(const FieldElem& o) const {
    if (field_ != o.field_)
        throw FieldMismatchError("mixed fields: " + field_.str() + " vs " + o.field_.str());
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same_field(o);
    if (field_.is_rational())
        return FieldElem(field_, q_ + o.q_, 0);
    uint64_t s = static_cast<uint64_t>(r_) + o.r_;
    if (s >= field_.p())
        s -= field_.p();
    return FieldElem(field_, mpq_class(0), static_cast<uint32_t>(s));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_same_field(o);
    if (field_.is_rational())
        return FieldElem(field_, q_ - o.q_, 0);
    uint64_t s = static_cast<uint64_t>(r_) + field_.p() - o.r_;
    if (s >= field_.p())
        s -= field_.p();
    return FieldElem(field_, mpq_class(0), static_cast<uint32_t>(s));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same_field(o);
    if (field_.is_rational())
        return FieldElem(field_, q_ * o.q_, 0);
    uint64_t s = static_cast<uint64_t>(r_) * o.r_ % field_.p();
    return FieldElem(field_, mpq_class(0), static_cast<uint32_t>(s));
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
    return *this * o.inverse();
}

FieldElem FieldElem::operator-() const {
    if (field_.is_rational())
        return FieldElem(field_, -q_, 0);
    return FieldElem(field_, mpq_class(0), r_ == 0 ? 0 : field_.p() - r_);
}

FieldElem FieldElem::inverse() const {
    if (is_zero())
        throw Error("inverse of zero");
    if (field_.is_rational())
        return FieldElem(field_, 1 / q_, 0);
    return FieldElem(field_, mpq_class(0), mod_inverse(r_, field_.p()));
}

FieldElem FieldElem::pow(uint64_t e) const {
    FieldElem acc = FieldElem::one(field_);
    FieldElem b = *this;
    while (e) {
        if (e & 1)
            acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (field_ != o.field_)
        return false;
    return field_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

std::string FieldElem::str() const {
    if (field_.is_rational())
        return q_.get_str();
    return std::to_string(r_);
}

size_t FieldElem::bit_length() const {
    if (field_.is_prime())
        return 32;
    return mpz_sizeinbase(q_.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(q_.get_den().get_mpz_t(), 2);
}

const mpq_class& FieldElem::rat() const {
    if (!field_.is_rational())
        throw FieldMismatchError("rational value requested from " + field_.str());
    return q_;
}

uint32_t FieldElem::residue() const {
    if (!field_.is_prime())
        throw FieldMismatchError("residue requested from " + field_.str());
    return r_;
}

} // namespace steiner
