#ifndef TATEKIT_POLYFP_HPP
#define TATEKIT_POLYFP_HPP

#include <vector>

#include "tatekit/mat.hpp"

namespace tatekit {

// Dense polynomial over F_p, coefficient of t^i at index i, no trailing zeros.
using Poly = std::vector<u32>;

inline Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline std::size_t poly_deg(const Poly& a) { return a.empty() ? 0 : a.size() - 1; }

inline Poly poly_add(const Fp& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u32 x = i < a.size() ? a[i] : 0;
        u32 y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    return poly_trim(std::move(r));
}

inline Poly poly_scale(const Fp& F, const Poly& a, u32 c) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    return poly_trim(std::move(r));
}

inline Poly poly_mul(const Fp& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<u32>((r[i + j] + static_cast<u64>(a[i]) * b[j]) % F.p);
    }
    return poly_trim(std::move(r));
}

// quotient/remainder of a by monic-normalized b
inline std::pair<Poly, Poly> poly_divmod(const Fp& F, Poly a, const Poly& b) {
    a = poly_trim(std::move(a));
    Poly bt = poly_trim(b);
    if (bt.empty()) throw error("polynomial division by zero");
    u32 lead_inv = F.inv(bt.back());
    Poly q;
    if (a.size() >= bt.size()) q.assign(a.size() - bt.size() + 1, 0);
    while (a.size() >= bt.size()) {
        u32 c = F.mul(a.back(), lead_inv);
        std::size_t shift = a.size() - bt.size();
        q[shift] = c;
        for (std::size_t i = 0; i < bt.size(); ++i)
            a[shift + i] = F.sub(a[shift + i], F.mul(c, bt[i]));
        a = poly_trim(std::move(a));
        if (a.empty()) break;
    }
    return {poly_trim(std::move(q)), std::move(a)};
}

inline Poly poly_mod(const Fp& F, Poly a, const Poly& b) { return poly_divmod(F, std::move(a), b).second; }

inline Poly poly_monic(const Fp& F, Poly a) {
    a = poly_trim(std::move(a));
    if (a.empty()) return a;
    return poly_scale(F, a, F.inv(a.back()));
}

inline Poly poly_gcd(const Fp& F, Poly a, Poly b) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, std::move(a));
}

inline Poly poly_derivative(const Fp& F, const Poly& a) {
    if (a.size() < 2) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], static_cast<u32>(i % F.p));
    return poly_trim(std::move(r));
}

inline u32 poly_eval(const Fp& F, const Poly& a, u32 x) {
    u32 r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

// Characteristic polynomial det(tI - M) via Hessenberg reduction; O(n^3),
// division-free apart from pivot inverses, valid over any prime field.
inline Poly charpoly(const Mat& m_in) {
    const std::size_t n = m_in.rows();
    const u32 p = m_in.modulus();
    Fp F(p);
    if (n != m_in.cols()) throw error("charpoly needs a square matrix");
    if (n == 0) return Poly{1};
    Mat h = m_in;
    // reduce to upper Hessenberg by similarity
    for (std::size_t col = 0; col + 2 <= n; ++col) {
        std::size_t piv = col + 1;
        while (piv < n && h.at(piv, col) == 0) ++piv;
        if (piv == n) continue;
        if (piv != col + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h.at(piv, j), h.at(col + 1, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(h.at(i, piv), h.at(i, col + 1));
        }
        u32 inv = F.inv(h.at(col + 1, col));
        for (std::size_t i = col + 2; i < n; ++i) {
            u32 f = h.at(i, col);
            if (!f) continue;
            u32 c = F.mul(f, inv);
            u64 cneg = p - c;
            for (std::size_t j = 0; j < n; ++j)
                h.at(i, j) = static_cast<u32>((h.at(i, j) + cneg * h.at(col + 1, j)) % p);
            // column operation to keep similarity
            for (std::size_t i2 = 0; i2 < n; ++i2)
                h.at(i2, col + 1) =
                    static_cast<u32>((h.at(i2, col + 1) + static_cast<u64>(c) * h.at(i2, i)) % p);
        }
    }
    // char polys of leading principal submatrices of a Hessenberg matrix
    std::vector<Poly> pk(n + 1);
    pk[0] = Poly{1};
    for (std::size_t k = 1; k <= n; ++k) {
        // p_k = (t - h[k-1][k-1]) p_{k-1} - sum_j h[j-1][k-1] (prod subdiag) p_{j-1}
        Poly t_minus{F.neg(h.at(k - 1, k - 1)), 1};
        Poly acc = poly_mul(F, t_minus, pk[k - 1]);
        u32 prod = 1;
        for (std::size_t j = k - 1; j >= 1; --j) {
            prod = F.mul(prod, h.at(j, j - 1));
            if (prod == 0) break;
            u32 coef = F.mul(prod, h.at(j - 1, k - 1));
            if (coef) acc = poly_add(F, acc, poly_scale(F, pk[j - 1], F.neg(coef)));
            if (j == 1) break;
        }
        pk[k] = std::move(acc);
    }
    Poly out = pk[n];
    out.resize(n + 1, 0);
    return out;
}

}  // namespace tatekit

#endif
