#include "steiner/matrix.hpp"

#include <algorithm>

#include "steiner/kernels.hpp"

namespace steiner {

Mat::Mat(const Field& f, size_t rows, size_t cols)
    : field_(f), rows_(rows), cols_(cols) {
    if (f.is_rational())
        qd_.assign(rows * cols, mpq_class(0));
    else
        pd_.assign(rows * cols, 0);
}

Mat Mat::identity(const Field& f, size_t n) {
    Mat m(f, n, n);
    FieldElem one = FieldElem::one(f);
    for (size_t i = 0; i < n; ++i)
        m.set(i, i, one);
    return m;
}

Mat Mat::from_rows(const Field& f, const std::vector<std::vector<FieldElem>>& rows) {
    size_t r = rows.size();
    size_t c = r ? rows[0].size() : 0;
    Mat m(f, r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw Error("ragged rows in matrix literal");
        for (size_t j = 0; j < c; ++j)
            m.set(i, j, rows[i][j]);
    }
    return m;
}

FieldElem Mat::at(size_t i, size_t j) const {
    if (field_.is_rational())
        return FieldElem::rational(qd_[i * cols_ + j]);
    return FieldElem::prime(pd_[i * cols_ + j], field_.p());
}

void Mat::set(size_t i, size_t j, const FieldElem& v) {
    if (v.field() != field_)
        throw FieldMismatchError("entry field " + v.field().str() +
                                 " does not match matrix field " + field_.str());
    if (field_.is_rational())
        qd_[i * cols_ + j] = v.rat();
    else
        pd_[i * cols_ + j] = v.residue();
}

void Mat::check_field(const Mat& o) const {
    if (field_ != o.field_)
        throw FieldMismatchError("mixed matrix fields: " + field_.str() + " vs " + o.field_.str());
}

Mat Mat::transpose() const {
    Mat t(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            if (field_.is_rational())
                t.q(j, i) = q(i, j);
            else
                t.fp(j, i) = fp(i, j);
        }
    return t;
}

Mat Mat::mul(const Mat& o) const {
    check_field(o);
    if (cols_ != o.rows_)
        throw Error("shape mismatch in matrix product");
    Mat out(field_, rows_, o.cols_);
    if (field_.is_prime()) {
        uint32_t p = field_.p();
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                uint32_t c = fp(i, k);
                if (c)
                    kernels::axpy_mod(out.fp_row(i), o.fp_row(k), c, o.cols_, p);
            }
    } else {
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const mpq_class& c = q(i, k);
                if (c == 0)
                    continue;
                for (size_t j = 0; j < o.cols_; ++j)
                    out.q(i, j) += c * o.q(k, j);
            }
    }
    return out;
}

Mat Mat::hstack(const Mat& o) const {
    check_field(o);
    if (rows_ != o.rows_)
        throw Error("row mismatch in hstack");
    Mat out(field_, rows_, cols_ + o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_ + o.cols_; ++j) {
            const Mat& src = j < cols_ ? *this : o;
            size_t sj = j < cols_ ? j : j - cols_;
            if (field_.is_rational())
                out.q(i, j) = src.q(i, sj);
            else
                out.fp(i, j) = src.fp(i, sj);
        }
    return out;
}

Mat Mat::vstack(const Mat& o) const {
    check_field(o);
    if (cols_ != o.cols_)
        throw Error("column mismatch in vstack");
    Mat out(field_, rows_ + o.rows_, cols_);
    for (size_t i = 0; i < rows_ + o.rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            const Mat& src = i < rows_ ? *this : o;
            size_t si = i < rows_ ? i : i - rows_;
            if (field_.is_rational())
                out.q(i, j) = src.q(si, j);
            else
                out.fp(i, j) = src.fp(si, j);
        }
    return out;
}

Mat Mat::rows_subset(const std::vector<size_t>& idx) const {
    Mat out(field_, idx.size(), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < cols_; ++j) {
            if (field_.is_rational())
                out.q(i, j) = q(idx[i], j);
            else
                out.fp(i, j) = fp(idx[i], j);
        }
    return out;
}

Mat Mat::cols_subset(const std::vector<size_t>& idx) const {
    Mat out(field_, rows_, idx.size());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) {
            if (field_.is_rational())
                out.q(i, j) = q(i, idx[j]);
            else
                out.fp(i, j) = fp(i, idx[j]);
        }
    return out;
}

Mat Mat::scaled(const FieldElem& c) const {
    Mat out(field_, rows_, cols_);
    if (field_.is_rational()) {
        for (size_t i = 0; i < qd_.size(); ++i)
            out.qd_[i] = qd_[i] * c.rat();
    } else {
        out.pd_ = pd_;
        for (size_t i = 0; i < rows_; ++i)
            kernels::scale_mod(out.fp_row(i), c.residue(), cols_, field_.p());
    }
    return out;
}

Mat Mat::add(const Mat& o) const {
    check_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("shape mismatch in matrix sum");
    Mat out(field_, rows_, cols_);
    if (field_.is_rational()) {
        for (size_t i = 0; i < qd_.size(); ++i)
            out.qd_[i] = qd_[i] + o.qd_[i];
    } else {
        out.pd_ = pd_;
        for (size_t i = 0; i < rows_; ++i)
            kernels::axpy_mod(out.fp_row(i), o.fp_row(i), 1, cols_, field_.p());
    }
    return out;
}

bool Mat::is_zero() const {
    if (field_.is_rational())
        return std::all_of(qd_.begin(), qd_.end(), [](const mpq_class& v) { return v == 0; });
    return std::all_of(pd_.begin(), pd_.end(), [](uint32_t v) { return v == 0; });
}

bool Mat::operator==(const Mat& o) const {
    if (field_ != o.field_ || rows_ != o.rows_ || cols_ != o.cols_)
        return false;
    return field_.is_rational() ? qd_ == o.qd_ : pd_ == o.pd_;
}

namespace {

RrefResult rref_fp(Mat m) {
    const uint32_t p = m.field().p();
    const size_t rows = m.rows(), cols = m.cols();
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = rows;
        for (size_t i = row; i < rows; ++i)
            if (m.fp(i, col)) { piv = i; break; }
        if (piv == rows)
            continue;
        if (piv != row)
            for (size_t j = 0; j < cols; ++j)
                std::swap(m.fp(row, j), m.fp(piv, j));
        uint32_t inv = mod_inverse(m.fp(row, col), p);
        kernels::scale_mod(m.fp_row(row) + col, inv, cols - col, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == row)
                continue;
            uint32_t c = m.fp(i, col);
            if (c)
                kernels::axpy_mod(m.fp_row(i) + col, m.fp_row(row) + col, p - c, cols - col, p);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

RrefResult rref_q(Mat m) {
    const size_t rows = m.rows(), cols = m.cols();
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        // Smallest bit-length nonzero entry as pivot, first row on ties.
        size_t piv = rows;
        size_t best = 0;
        for (size_t i = row; i < rows; ++i) {
            const mpq_class& v = m.q(i, col);
            if (v == 0)
                continue;
            size_t bits = mpz_sizeinbase(v.get_num().get_mpz_t(), 2) +
                          mpz_sizeinbase(v.get_den().get_mpz_t(), 2);
            if (piv == rows || bits < best) {
                piv = i;
                best = bits;
            }
        }
        if (piv == rows)
            continue;
        if (piv != row)
            for (size_t j = 0; j < cols; ++j)
                std::swap(m.q(row, j), m.q(piv, j));
        mpq_class inv = 1 / m.q(row, col);
        for (size_t j = col; j < cols; ++j)
            m.q(row, j) *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row)
                continue;
            mpq_class c = m.q(i, col);
            if (c == 0)
                continue;
            for (size_t j = col; j < cols; ++j)
                m.q(i, j) -= c * m.q(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

} // namespace

RrefResult rref(const Mat& m) {
    return m.field().is_prime() ? rref_fp(m) : rref_q(m);
}

size_t rank(const Mat& m) {
    return rref(m).pivots.size();
}

Mat kernel_basis(const Mat& m) {
    RrefResult r = rref(m);
    const size_t cols = m.cols();
    std::vector<size_t> free_cols;
    {
        size_t pi = 0;
        for (size_t j = 0; j < cols; ++j) {
            if (pi < r.pivots.size() && r.pivots[pi] == j)
                ++pi;
            else
                free_cols.push_back(j);
        }
    }
    Mat k(m.field(), cols, free_cols.size());
    FieldElem one = FieldElem::one(m.field());
    for (size_t b = 0; b < free_cols.size(); ++b) {
        size_t j = free_cols[b];
        k.set(j, b, one);
        for (size_t pi = 0; pi < r.pivots.size(); ++pi)
            k.set(r.pivots[pi], b, -r.rref.at(pi, j));
    }
    return k;
}

Mat inverse(const Mat& m) {
    if (m.rows() != m.cols())
        throw Error("inverse of a non-square matrix");
    RrefResult r = rref(m.hstack(Mat::identity(m.field(), m.rows())));
    for (size_t i = 0; i < m.rows(); ++i)
        if (i >= r.pivots.size() || r.pivots[i] != i)
            throw Error("matrix is singular");
    std::vector<size_t> right(m.cols());
    for (size_t j = 0; j < m.cols(); ++j)
        right[j] = m.cols() + j;
    return r.rref.cols_subset(right);
}

CokernelProjection cokernel_projection(const Mat& m) {
    const size_t k = m.rows();
    // Canonical echelon basis of the column space, as rows.
    RrefResult rt = rref(m.transpose());
    const size_t r = rt.pivots.size();

    // Greedy lexicographically-first completion by unit vectors. `span`
    // holds a reduced echelon set: rows with pivot columns `span_pivots`.
    std::vector<std::vector<FieldElem>> span;
    std::vector<size_t> span_pivots;
    auto reduce = [&](std::vector<FieldElem>& v) {
        for (size_t t = 0; t < span.size(); ++t) {
            FieldElem c = v[span_pivots[t]];
            if (c.is_zero())
                continue;
            for (size_t j = 0; j < k; ++j)
                v[j] = v[j] - c * span[t][j];
        }
    };
    auto insert_row = [&](std::vector<FieldElem> v) {
        size_t lead = k;
        for (size_t j = 0; j < k; ++j)
            if (!v[j].is_zero()) { lead = j; break; }
        FieldElem inv = v[lead].inverse();
        for (size_t j = lead; j < k; ++j)
            v[j] = v[j] * inv;
        for (size_t t = 0; t < span.size(); ++t) {
            FieldElem c = span[t][lead];
            if (c.is_zero())
                continue;
            for (size_t j = 0; j < k; ++j)
                span[t][j] = span[t][j] - c * v[j];
        }
        span.push_back(std::move(v));
        span_pivots.push_back(lead);
    };
    for (size_t i = 0; i < r; ++i) {
        std::vector<FieldElem> v(k);
        for (size_t j = 0; j < k; ++j)
            v[j] = rt.rref.at(i, j);
        insert_row(std::move(v));
    }
    std::vector<size_t> lift;
    FieldElem zero = FieldElem::zero(m.field());
    FieldElem one = FieldElem::one(m.field());
    for (size_t s = 0; s < k && lift.size() < k - r; ++s) {
        std::vector<FieldElem> v(k, zero);
        v[s] = one;
        reduce(v);
        bool nonzero = false;
        for (const FieldElem& e : v)
            if (!e.is_zero()) { nonzero = true; break; }
        if (!nonzero)
            continue;
        lift.push_back(s);
        insert_row(std::move(v));
    }

    // G = [echelon column basis | unit columns at lift]; the projection is
    // the bottom block of G^{-1}.
    Mat g(m.field(), k, k);
    for (size_t j = 0; j < r; ++j)
        for (size_t i = 0; i < k; ++i)
            g.set(i, j, rt.rref.at(j, i));
    for (size_t j = 0; j < lift.size(); ++j)
        g.set(lift[j], r + j, one);
    Mat ginv = inverse(g);
    std::vector<size_t> bottom(k - r);
    for (size_t i = 0; i < k - r; ++i)
        bottom[i] = r + i;
    return {ginv.rows_subset(bottom), std::move(lift)};
}

} // namespace steiner
