#ifndef TATEKIT_MAT_HPP
#define TATEKIT_MAT_HPP

#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tatekit/fp.hpp"

namespace tatekit {

// Dense row-major matrix over F_p. Deterministic pivoting throughout:
// first nonzero row, columns left to right.
class Mat {
public:
    Mat() : r_(0), c_(0), p_(2) {}
    Mat(std::size_t rows, std::size_t cols, u32 p) : r_(rows), c_(cols), p_(p), a_(rows * cols, 0) {}

    static Mat identity(std::size_t n, u32 p) {
        Mat m(n, n, p);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    u32 modulus() const { return p_; }

    u32& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    u32 at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const u32* row_ptr(std::size_t i) const { return a_.data() + i * c_; }
    u32* row_ptr(std::size_t i) { return a_.data() + i * c_; }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && p_ == o.p_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (u32 x : a_) if (x) return false;
        return true;
    }

    Vec row(std::size_t i) const { return Vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }
    void set_row(std::size_t i, const Vec& v) {
        assert(v.size() == c_);
        std::copy(v.begin(), v.end(), a_.begin() + i * c_);
    }
    Vec col(std::size_t j) const {
        Vec v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = at(i, j);
        return v;
    }
    void set_col(std::size_t j, const Vec& v) {
        assert(v.size() == r_);
        for (std::size_t i = 0; i < r_; ++i) at(i, j) = v[i];
    }

    Mat transpose() const {
        Mat t(c_, r_, p_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Mat mul(const Mat& o) const {
        assert(c_ == o.r_ && p_ == o.p_);
        Mat out(r_, o.c_, p_);
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t k = 0; k < c_; ++k) {
                u64 x = at(i, k);
                if (!x) continue;
                const u32* orow = o.row_ptr(k);
                u32* dst = out.row_ptr(i);
                for (std::size_t j = 0; j < o.c_; ++j)
                    dst[j] = static_cast<u32>((dst[j] + x * orow[j]) % p_);
            }
        }
        return out;
    }

    Vec mul_vec(const Vec& v) const {
        assert(v.size() == c_);
        Vec out(r_, 0);
        for (std::size_t i = 0; i < r_; ++i) {
            u64 acc = 0;
            const u32* rw = row_ptr(i);
            for (std::size_t j = 0; j < c_; ++j) acc += static_cast<u64>(rw[j]) * v[j];
            out[i] = static_cast<u32>(acc % p_);
        }
        return out;
    }

    Mat add(const Mat& o) const {
        assert(r_ == o.r_ && c_ == o.c_);
        Fp F(p_);
        Mat out(r_, c_, p_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F.add(a_[i], o.a_[i]);
        return out;
    }

    Mat sub(const Mat& o) const {
        assert(r_ == o.r_ && c_ == o.c_);
        Fp F(p_);
        Mat out(r_, c_, p_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F.sub(a_[i], o.a_[i]);
        return out;
    }

    Mat scale(u32 c) const {
        Mat out(r_, c_, p_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = static_cast<u32>((static_cast<u64>(a_[i]) * c) % p_);
        return out;
    }

    // Stack rows of b below this.
    Mat vstack(const Mat& b) const {
        assert(c_ == b.c_ && p_ == b.p_);
        Mat out(r_ + b.r_, c_, p_);
        std::copy(a_.begin(), a_.end(), out.a_.begin());
        std::copy(b.a_.begin(), b.a_.end(), out.a_.begin() + a_.size());
        return out;
    }

    Mat hstack(const Mat& b) const {
        assert(r_ == b.r_ && p_ == b.p_);
        Mat out(r_, c_ + b.c_, p_);
        for (std::size_t i = 0; i < r_; ++i) {
            std::copy(row_ptr(i), row_ptr(i) + c_, out.row_ptr(i));
            std::copy(b.row_ptr(i), b.row_ptr(i) + b.c_, out.row_ptr(i) + c_);
        }
        return out;
    }

    // Flatten row-major into one long vector.
    Vec vectorize() const { return a_; }
    static Mat from_flat(std::size_t rows, std::size_t cols, u32 p, const Vec& flat) {
        assert(flat.size() == rows * cols);
        Mat m(rows, cols, p);
        m.a_ = flat;
        return m;
    }

private:
    std::size_t r_, c_;
    u32 p_;
    std::vector<u32> a_;
};

struct RrefResult {
    Mat mat;
    std::vector<std::size_t> pivots;  // strictly increasing pivot columns
};

// Reduced row echelon form; row space preserved, deterministic.
inline RrefResult rref(Mat m) {
    const u32 p = m.modulus();
    Fp F(p);
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
        std::size_t piv = lead;
        while (piv < m.rows() && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != lead)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(lead, j));
        u32 inv = F.inv(m.at(lead, col));
        if (inv != 1)
            for (std::size_t j = col; j < m.cols(); ++j) m.at(lead, j) = F.mul(m.at(lead, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == lead) continue;
            u32 f = m.at(i, col);
            if (!f) continue;
            u64 fneg = p - f;
            const u32* src = m.row_ptr(lead);
            u32* dst = m.row_ptr(i);
            for (std::size_t j = col; j < m.cols(); ++j)
                dst[j] = static_cast<u32>((dst[j] + fneg * src[j]) % p);
        }
        pivots.push_back(col);
        ++lead;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

// Basis of the null space {x : m x = 0}, one row per basis vector.
inline Mat kernel_basis_mat(const Mat& m) {
    RrefResult r = rref(m);
    const std::size_t n = m.cols();
    const u32 p = m.modulus();
    Fp F(p);
    std::vector<char> is_pivot(n, 0);
    for (std::size_t c : r.pivots) is_pivot[c] = 1;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Mat out(free_cols.size(), n, p);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t fc = free_cols[k];
        out.at(k, fc) = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            out.at(k, r.pivots[i]) = F.neg(r.mat.at(i, fc));
    }
    return out;
}

// One solution of m x = b (free variables zero), or nullopt when inconsistent.
inline std::optional<Vec> solve(const Mat& m, const Vec& b) {
    assert(b.size() == m.rows());
    Mat aug = m.hstack(Mat::from_flat(m.rows(), 1, m.modulus(), b));
    RrefResult r = rref(std::move(aug));
    const std::size_t n = m.cols();
    Vec x(n, 0);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == n) return std::nullopt;  // pivot in the rhs column
        x[r.pivots[i]] = r.mat.at(i, n);
    }
    return x;
}

// Columnwise solve m X = B; nullopt if some column is inconsistent.
inline std::optional<Mat> solve_many(const Mat& m, const Mat& bcols) {
    assert(bcols.rows() == m.rows());
    Mat aug = m.hstack(bcols);
    RrefResult r = rref(std::move(aug));
    const std::size_t n = m.cols();
    for (std::size_t c : r.pivots)
        if (c >= n) return std::nullopt;
    Mat x(n, bcols.cols(), m.modulus());
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        for (std::size_t j = 0; j < bcols.cols(); ++j) x.at(r.pivots[i], j) = r.mat.at(i, n + j);
    return x;
}

inline std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve_many(m, Mat::identity(m.rows(), m.modulus()));
    if (!x) return std::nullopt;
    // solve_many returns a right inverse; for square full-rank m it is two-sided.
    if (rank(m) != m.rows()) return std::nullopt;
    return x;
}

// Incremental reduced row echelon accumulator for a growing row space.
class Echelon {
public:
    Echelon(std::size_t ambient, u32 p) : n_(ambient), p_(p) {}

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    u32 modulus() const { return p_; }

    // Reduce v against the current basis (in place of a copy).
    Vec reduce(Vec v) const {
        Fp F(p_);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            u32 f = v[pivots_[i]];
            if (!f) continue;
            u64 fneg = p_ - f;
            const Vec& r = rows_[i];
            for (std::size_t j = pivots_[i]; j < n_; ++j)
                v[j] = static_cast<u32>((v[j] + fneg * r[j]) % p_);
        }
        return v;
    }

    bool contains(const Vec& v) const {
        Vec r = reduce(v);
        for (u32 x : r) if (x) return false;
        return true;
    }

    // Insert v's residue; returns true when the dimension grew.
    bool insert(Vec v) {
        Fp F(p_);
        v = reduce(std::move(v));
        std::size_t lead = n_;
        for (std::size_t j = 0; j < n_; ++j)
            if (v[j]) { lead = j; break; }
        if (lead == n_) return false;
        u32 inv = F.inv(v[lead]);
        if (inv != 1)
            for (std::size_t j = lead; j < n_; ++j) v[j] = F.mul(v[j], inv);
        // back-eliminate the new pivot from existing rows
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            u32 f = rows_[i][lead];
            if (!f) continue;
            u64 fneg = p_ - f;
            for (std::size_t j = lead; j < n_; ++j)
                rows_[i][j] = static_cast<u32>((rows_[i][j] + fneg * v[j]) % p_);
        }
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, lead);
        rows_.insert(rows_.begin() + pos, std::move(v));
        return true;
    }

    void insert_rows(const Mat& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) insert(m.row(i));
    }

    const std::vector<std::size_t>& pivots() const { return pivots_; }

    Mat basis() const {
        Mat b(rows_.size(), n_, p_);
        for (std::size_t i = 0; i < rows_.size(); ++i) b.set_row(i, rows_[i]);
        return b;
    }

private:
    std::size_t n_;
    u32 p_;
    std::vector<Vec> rows_;                // reduced, sorted by pivot
    std::vector<std::size_t> pivots_;
};

}  // namespace tatekit

#endif
