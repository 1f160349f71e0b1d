#pragma once

#include <cstddef>
#include <vector>

#include "steiner/field.hpp"

namespace steiner {

/// Dense matrix over a single exact field. Rational entries are GMP
/// rationals; prime-field entries are packed uint32 rows so the mod-p
/// kernels can run on them. All operations are pure; a Mat never changes
/// after it is built except through set().
class Mat {
public:
    Mat(const Field& f, size_t rows, size_t cols); // zero-filled

    static Mat identity(const Field& f, size_t n);
    static Mat from_rows(const Field& f, const std::vector<std::vector<FieldElem>>& rows);

    const Field& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    FieldElem at(size_t i, size_t j) const;
    void set(size_t i, size_t j, const FieldElem& v);

    // Typed access for the two backends.
    const mpq_class& q(size_t i, size_t j) const { return qd_[i * cols_ + j]; }
    mpq_class& q(size_t i, size_t j) { return qd_[i * cols_ + j]; }
    uint32_t fp(size_t i, size_t j) const { return pd_[i * cols_ + j]; }
    uint32_t& fp(size_t i, size_t j) { return pd_[i * cols_ + j]; }
    uint32_t* fp_row(size_t i) { return pd_.data() + i * cols_; }
    const uint32_t* fp_row(size_t i) const { return pd_.data() + i * cols_; }

    Mat transpose() const;
    Mat mul(const Mat& o) const;
    Mat hstack(const Mat& o) const;
    Mat vstack(const Mat& o) const;
    Mat rows_subset(const std::vector<size_t>& idx) const;
    Mat cols_subset(const std::vector<size_t>& idx) const;
    Mat scaled(const FieldElem& c) const;
    Mat add(const Mat& o) const;
    bool is_zero() const;

    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    void check_field(const Mat& o) const;

    Field field_;
    size_t rows_, cols_;
    std::vector<mpq_class> qd_;
    std::vector<uint32_t> pd_;
};

struct RrefResult {
    Mat rref;
    std::vector<size_t> pivots; // strictly increasing pivot columns
};

/// Reduced row echelon form. Over Q the pivot row is chosen by smallest
/// bit-length to limit coefficient growth; the RREF itself is canonical,
/// so the choice affects speed only.
RrefResult rref(const Mat& m);

size_t rank(const Mat& m);

/// Columns form a basis of the right null space; cols = cols(m) - rank(m).
Mat kernel_basis(const Mat& m);

struct CokernelProjection {
    Mat projection;                 // (rows - rank) x rows, projection * m = 0
    std::vector<size_t> lift_rows;  // unit vectors here map to the cokernel basis
};

/// Deterministic cokernel of the column span of m: lift_rows is the
/// lexicographically first row subset completing im(m) to the full space,
/// and projection maps the unit vector at lift_rows[j] to basis vector j.
CokernelProjection cokernel_projection(const Mat& m);

/// Inverse of a square invertible matrix; throws Error when singular.
Mat inverse(const Mat& m);

} // namespace steiner
