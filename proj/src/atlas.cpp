#include "tatekit/atlas.hpp"

#include "tatekit/errors.hpp"

namespace tatekit::atlas {

namespace {

Term term(std::initializer_list<std::uint16_t> exps, u32 coeff) {
    Term t;
    t.exps.assign(exps);
    t.coeff = coeff;
    return t;
}

TensorTerm tterm(std::initializer_list<std::uint16_t> l, std::initializer_list<std::uint16_t> r, u32 c) {
    TensorTerm t;
    t.left.assign(l);
    t.right.assign(r);
    t.coeff = c;
    return t;
}

}  // namespace

Entry radford(u32 n, u32 p) {
    if (!is_prime(p) || p < 5) throw precondition_error("radford: need prime p >= 5");
    if (n <= 1) throw precondition_error("radford: need N > 1");
    if (p % n == 0) throw precondition_error("radford: need p not dividing N");
    if ((p - 1) % n != 0)
        throw precondition_error("radford: need N | p-1 so the root of unity lives in F_p");
    const u32 w = primitive_root_of_unity(p, n);
    const Fp F(p);
    const u32 winv = F.inv(w);

    Entry e;
    e.name = "radford";
    e.params = {{"N", n}, {"p", p}};
    Presentation& pr = e.pres;
    pr.p = p;
    pr.gens = {"x", "y", "g"};
    pr.bounds = {n, n, n};
    pr.power_rhs.resize(3);
    pr.power_rhs[0] = {};                       // x^N = 0
    pr.power_rhs[1] = {};                       // y^N = 0
    pr.power_rhs[2] = {term({0, 0, 0}, 1)};     // g^N = 1
    pr.swap_rhs.resize(3);
    pr.swap_rhs[1].resize(1);
    pr.swap_rhs[2].resize(2);
    pr.swap_rhs[1][0] = {term({1, 1, 0}, winv)};  // y x = w^{-1} x y
    pr.swap_rhs[2][0] = {term({1, 0, 1}, winv)};  // g x = w^{-1} x g
    pr.swap_rhs[2][1] = {term({0, 1, 1}, w)};     // g y = w y g
    pr.epsilon = {0, 0, 1};

    HopfGenData h;
    h.delta.resize(3);
    h.antipode.resize(3);
    h.delta[0] = {tterm({1, 0, 0}, {0, 0, 1}, 1), tterm({0, 0, 0}, {1, 0, 0}, 1)};  // x(x)g + 1(x)x
    h.delta[1] = {tterm({0, 1, 0}, {0, 0, 1}, 1), tterm({0, 0, 0}, {0, 1, 0}, 1)};  // y(x)g + 1(x)y
    h.delta[2] = {tterm({0, 0, 1}, {0, 0, 1}, 1)};                                  // g(x)g
    h.antipode[0] = {term({1, 0, static_cast<std::uint16_t>(n - 1)}, p - 1)};  // -x g^{N-1}
    h.antipode[1] = {term({0, 1, static_cast<std::uint16_t>(n - 1)}, p - 1)};  // -y g^{N-1}
    h.antipode[2] = {term({0, 0, static_cast<std::uint16_t>(n - 1)}, 1)};      // g^{N-1}
    pr.hopf = std::move(h);
    pr.validate();

    // published table: polynomial ring on two degree-2 generators
    e.expected_h = {1, 0, 2, 0, 3, 0, 4, 0, 5, 0, 6, 0, 7};
    // first-principles syzygy count gives dim H^2 = 3 for this family; see
    // the structure suite for the worked N=2, p=5 instance
    e.oracle_h = {1, 0, 3, 0, 5, 0, 7, 0, 9, 0, 11, 0, 13};
    e.expect_negative_products_zero = true;
    e.notes = "symmetric Hopf algebra of dimension N^3 with omega of order N";
    return e;
}

Entry vsl2(u32 p) {
    if (!is_prime(p) || p <= 3) throw precondition_error("vsl2: need prime characteristic p > 3");
    Entry e;
    e.name = "vsl2";
    e.params = {{"p", p}};
    Presentation& pr = e.pres;
    pr.p = p;
    pr.gens = {"e", "f", "h"};
    pr.bounds = {p, p, p};
    pr.power_rhs.resize(3);
    pr.power_rhs[0] = {};                    // e^p = 0
    pr.power_rhs[1] = {};                    // f^p = 0
    pr.power_rhs[2] = {term({0, 0, 1}, 1)};  // h^p = h
    pr.swap_rhs.resize(3);
    pr.swap_rhs[1].resize(1);
    pr.swap_rhs[2].resize(2);
    pr.swap_rhs[1][0] = {term({0, 0, 1}, p - 1), term({1, 1, 0}, 1)};  // f e = e f - h
    pr.swap_rhs[2][0] = {term({1, 0, 0}, 2), term({1, 0, 1}, 1)};      // h e = e h + 2e
    pr.swap_rhs[2][1] = {term({0, 1, 0}, p - 2), term({0, 1, 1}, 1)};  // h f = f h - 2f
    pr.epsilon = {0, 0, 0};

    HopfGenData h;
    h.delta.resize(3);
    h.antipode.resize(3);
    for (std::uint16_t i = 0; i < 3; ++i) {
        std::uint16_t ex[3] = {0, 0, 0};
        ex[i] = 1;
        h.delta[i] = {tterm({ex[0], ex[1], ex[2]}, {0, 0, 0}, 1),
                      tterm({0, 0, 0}, {ex[0], ex[1], ex[2]}, 1)};
        Term anti;
        anti.exps = {ex[0], ex[1], ex[2]};
        anti.coeff = p - 1;  // S(X) = -X
        h.antipode[i] = {anti};
    }
    pr.hopf = std::move(h);
    pr.validate();

    // coordinate ring of the nilpotent quadric, generators in degree 2
    e.expected_h = {1, 0, 3, 0, 5, 0, 7, 0, 9};
    e.oracle_h = e.expected_h;
    e.expect_negative_products_zero = true;
    e.notes = "restricted enveloping algebra, dimension p^3";
    return e;
}

Entry truncated(u32 n, u32 p) {
    if (!is_prime(p) || p < 5) throw precondition_error("truncated: need prime p >= 5");
    if (n <= 1) throw precondition_error("truncated: need N > 1");
    Entry e;
    e.name = "truncated";
    e.params = {{"N", n}, {"p", p}};
    Presentation& pr = e.pres;
    pr.p = p;
    pr.gens = {"x", "Y"};
    pr.bounds = {n, n};
    pr.power_rhs.resize(2);
    pr.swap_rhs.resize(2);
    pr.swap_rhs[1].resize(1);
    pr.swap_rhs[1][0] = {term({1, 1}, 1)};  // Y x = x Y
    pr.epsilon = {0, 0};
    pr.validate();
    // Kuenneth on the two periodic strands: dim H^n = n + 1
    e.expected_h = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    e.oracle_h = e.expected_h;
    e.expect_negative_products_zero = true;
    e.notes = "commutative truncated polynomial algebra, augmentation only";
    return e;
}

Entry cyclic(u32 p) {
    if (!is_prime(p) || p < 5) throw precondition_error("cyclic: engine restriction p > 3");
    Entry e;
    e.name = "cyclic";
    e.params = {{"p", p}};
    Presentation& pr = e.pres;
    pr.p = p;
    pr.gens = {"s"};
    pr.bounds = {p};
    pr.power_rhs.resize(1);
    pr.power_rhs[0] = {term({0}, 1)};  // s^p = 1
    pr.swap_rhs.resize(1);
    pr.epsilon = {1};
    HopfGenData h;
    h.delta.resize(1);
    h.antipode.resize(1);
    h.delta[0] = {tterm({1}, {1}, 1)};
    h.antipode[0] = {term({static_cast<std::uint16_t>(p - 1)}, 1)};  // s^{-1}
    pr.hopf = std::move(h);
    pr.validate();
    // periodic complete resolution of period 2: every Tate dimension is 1
    e.expected_h.assign(13, 1);
    e.oracle_h = e.expected_h;
    e.expect_negative_products_zero = false;  // the periodicity class is invertible
    e.notes = "group algebra of Z/p; depth-1 contrast case";
    return e;
}

Entry by_name(const std::string& name, const std::map<std::string, u32>& params) {
    auto get = [&](const char* key, u32 fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (name == "radford") return radford(get("N", 2), get("p", 5));
    if (name == "vsl2") return vsl2(get("p", 5));
    if (name == "truncated") return truncated(get("N", 2), get("p", 5));
    if (name == "cyclic") return cyclic(get("p", 5));
    throw parse_error("unknown atlas algebra: " + name);
}

}  // namespace tatekit::atlas
