#ifndef TATEKIT_SUBSPACE_HPP
#define TATEKIT_SUBSPACE_HPP

#include <cstddef>

#include "tatekit/mat.hpp"

namespace tatekit {

// Subspace of F_p^n, basis rows kept in reduced row echelon form.
class Subspace {
public:
    Subspace(std::size_t ambient, u32 p) : ech_(ambient, p) {}

    static Subspace from_rows(const Mat& rows) {
        Subspace s(rows.cols(), rows.modulus());
        s.ech_.insert_rows(rows);
        return s;
    }

    static Subspace full(std::size_t n, u32 p) { return from_rows(Mat::identity(n, p)); }

    std::size_t ambient() const { return ech_.ambient(); }
    std::size_t dim() const { return ech_.dim(); }
    u32 modulus() const { return ech_.modulus(); }
    Mat basis() const { return ech_.basis(); }

    bool insert(Vec v) { return ech_.insert(std::move(v)); }
    bool contains(const Vec& v) const { return ech_.contains(v); }
    bool contains(const Subspace& other) const {
        Mat b = other.basis();
        for (std::size_t i = 0; i < b.rows(); ++i)
            if (!contains(b.row(i))) return false;
        return true;
    }
    Vec reduce(Vec v) const { return ech_.reduce(std::move(v)); }

    bool operator==(const Subspace& o) const { return basis() == o.basis(); }

    Subspace sum(const Subspace& o) const {
        check_ambient(o);
        Subspace s = *this;
        s.ech_.insert_rows(o.basis());
        return s;
    }

    // Zassenhaus: rref of [A A; B 0]; rows with zero left half carry the
    // intersection in their right half.
    Subspace intersection(const Subspace& o) const {
        check_ambient(o);
        const std::size_t n = ambient();
        Mat a = basis(), b = o.basis();
        Mat block(a.rows() + b.rows(), 2 * n, modulus());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) {
                block.at(i, j) = a.at(i, j);
                block.at(i, n + j) = a.at(i, j);
            }
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) block.at(a.rows() + i, j) = b.at(i, j);
        RrefResult r = rref(std::move(block));
        Subspace out(n, modulus());
        for (std::size_t i = 0; i < r.mat.rows(); ++i) {
            bool left_zero = true;
            for (std::size_t j = 0; j < n && left_zero; ++j)
                if (r.mat.at(i, j)) left_zero = false;
            if (!left_zero) continue;
            Vec right(n);
            for (std::size_t j = 0; j < n; ++j) right[j] = r.mat.at(i, n + j);
            out.insert(std::move(right));
        }
        return out;
    }

    // Standard basis vectors at non-pivot coordinates: a complement.
    Subspace complement() const {
        const std::size_t n = ambient();
        std::vector<char> piv(n, 0);
        for (std::size_t c : ech_.pivots()) piv[c] = 1;
        Subspace out(n, modulus());
        for (std::size_t j = 0; j < n; ++j) {
            if (piv[j]) continue;
            Vec e(n, 0);
            e[j] = 1;
            out.insert(std::move(e));
        }
        return out;
    }

private:
    void check_ambient(const Subspace& o) const {
        if (ambient() != o.ambient() || modulus() != o.modulus())
            throw error("subspace ambient dimension mismatch");
    }

    Echelon ech_;
};

// Surjection q: F^n -> F^(n-d) with kernel exactly W, plus a section s
// with q s = id. Coordinates on the quotient are the non-pivot columns of W.
struct Quotient {
    Mat proj;      // (n-d) x n
    Mat section;   // n x (n-d)

    static Quotient by(const Subspace& w) {
        const std::size_t n = w.ambient();
        const u32 p = w.modulus();
        std::vector<char> piv(n, 0);
        Mat b = w.basis();
        {
            RrefResult chk = rref(b);
            b = chk.mat;
            for (std::size_t c : chk.pivots) piv[c] = 1;
        }
        std::vector<std::size_t> free_cols;
        for (std::size_t j = 0; j < n; ++j)
            if (!piv[j]) free_cols.push_back(j);
        Echelon ech(n, p);
        ech.insert_rows(b);
        Quotient q;
        q.proj = Mat(free_cols.size(), n, p);
        for (std::size_t j = 0; j < n; ++j) {
            Vec e(n, 0);
            e[j] = 1;
            Vec r = ech.reduce(std::move(e));
            for (std::size_t k = 0; k < free_cols.size(); ++k) q.proj.at(k, j) = r[free_cols[k]];
        }
        q.section = Mat(n, free_cols.size(), p);
        for (std::size_t k = 0; k < free_cols.size(); ++k) q.section.at(free_cols[k], k) = 1;
        return q;
    }
};

}  // namespace tatekit

#endif
