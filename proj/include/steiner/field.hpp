#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "steiner/errors.hpp"

namespace steiner {

enum class FieldKind { Rational, Prime };

/// Descriptor of the base field: the rationals or F_p with p prime, p < 2^31.
class Field {
public:
    static Field rational() { return Field(FieldKind::Rational, 0); }
    static Field prime(uint32_t p);

    FieldKind kind() const { return kind_; }
    bool is_rational() const { return kind_ == FieldKind::Rational; }
    bool is_prime() const { return kind_ == FieldKind::Prime; }
    uint32_t p() const { return p_; }

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    /// "rational" or "p=<p>", the form used by flags and JSON.
    std::string str() const;
    static Field parse(const std::string& s);

private:
    Field(FieldKind k, uint32_t p) : kind_(k), p_(p) {}
    FieldKind kind_;
    uint32_t p_;
};

/// Deterministic Miller-Rabin, exact for all n < 2^32.
bool is_prime_u32(uint32_t n);

uint32_t mod_pow(uint32_t base, uint64_t exp, uint32_t p);
uint32_t mod_inverse(uint32_t a, uint32_t p);

/// Exact scalar tagged with its field. Rationals are kept in lowest terms
/// with a positive denominator; prime-field values are reduced to [0, p).
class FieldElem {
public:
    FieldElem() : field_(Field::rational()), q_(0), r_(0) {}

    static FieldElem zero(const Field& f);
    static FieldElem one(const Field& f);
    static FieldElem from_int(const Field& f, long long v);
    static FieldElem rational(mpq_class v);
    static FieldElem prime(uint32_t residue, uint32_t p);
    /// Parses "num", "num/den" (rational) or a residue, possibly negative (F_p).
    static FieldElem parse(const Field& f, const std::string& s);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inverse() const;
    FieldElem pow(uint64_t e) const;

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    /// Canonical text form: "num" / "num/den" over Q, the residue over F_p.
    std::string str() const;

    /// Size heuristic used for pivot selection over Q (bits of num plus den).
    size_t bit_length() const;

    const mpq_class& rat() const;
    uint32_t residue() const;

private:
    FieldElem(Field f, mpq_class q, uint32_t r)
        : field_(f), q_(std::move(q)), r_(r) {}
    void check_same_field(const FieldElem& o) const;

    Field field_;
    mpq_class q_; // active when rational
    uint32_t r_;  // active when prime
};

} // namespace steiner
