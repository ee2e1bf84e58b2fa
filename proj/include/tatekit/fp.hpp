#ifndef TATEKIT_FP_HPP
#define TATEKIT_FP_HPP

#include <cstdint>
#include <vector>

#include "tatekit/errors.hpp"

namespace tatekit {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using Vec = std::vector<u32>;  // coordinates mod a shared prime

inline bool is_prime(u32 n) {
    if (n < 2) return false;
    for (u32 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Arithmetic context for F_p. Residues live in [0, p). p is kept below
// 2^15 so that row operations can accumulate in u64 without overflow.
struct Fp {
    u32 p;

    explicit Fp(u32 p_) : p(p_) {
        if (!is_prime(p)) throw precondition_error("modulus " + std::to_string(p) + " is not prime");
        if (p >= (1u << 15)) throw precondition_error("modulus too large (need p < 32768)");
    }

    u32 add(u32 a, u32 b) const { u32 s = a + b; return s >= p ? s - p : s; }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : p - a; }
    u32 mul(u32 a, u32 b) const { return static_cast<u32>((static_cast<u64>(a) * b) % p); }
    u32 reduce(u64 a) const { return static_cast<u32>(a % p); }
    u32 reduce_int(long long a) const {
        long long r = a % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<u32>(r);
    }

    u32 pow(u32 a, u64 e) const {
        u64 r = 1, b = a % p;
        while (e) {
            if (e & 1) r = (r * b) % p;
            b = (b * b) % p;
            e >>= 1;
        }
        return static_cast<u32>(r);
    }

    u32 inv(u32 a) const {
        if (a % p == 0) throw error("division by zero mod " + std::to_string(p));
        return pow(a % p, p - 2);
    }
};

// Smallest omega in [2, p) of multiplicative order exactly N. Requires N | p-1.
inline u32 primitive_root_of_unity(u32 p, u32 n) {
    Fp F(p);
    if (n == 0 || (p - 1) % n != 0)
        throw precondition_error("no primitive " + std::to_string(n) + "-th root of unity mod " +
                                 std::to_string(p) + " (need N | p-1)");
    if (n == 1) return 1;
    std::vector<u32> prime_divisors;
    u32 m = n;
    for (u32 d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            prime_divisors.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) prime_divisors.push_back(m);
    for (u32 w = 2; w < p; ++w) {
        if (F.pow(w, n) != 1) continue;
        bool exact = true;
        for (u32 q : prime_divisors)
            if (F.pow(w, n / q) == 1) { exact = false; break; }
        if (exact) return w;
    }
    throw precondition_error("no element of order " + std::to_string(n) + " mod " + std::to_string(p));
}

}  // namespace tatekit

#endif
