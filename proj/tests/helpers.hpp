#ifndef TATEKIT_TEST_HELPERS_HPP
#define TATEKIT_TEST_HELPERS_HPP

#include <map>
#include <memory>
#include <string>

#include "tatekit/atlas.hpp"
#include "tatekit/structure.hpp"

namespace tatekit::testing {

inline Engine& engine_for(const std::string& which) {
    static std::map<std::string, std::unique_ptr<Engine>> cache;
    auto it = cache.find(which);
    if (it != cache.end()) return *it->second;
    AlgPtr a;
    if (which == "cyclic5")
        a = build_algebra(atlas::cyclic(5).pres);
    else if (which == "radford25")
        a = build_algebra(atlas::radford(2, 5).pres);
    else if (which == "radford37")
        a = build_algebra(atlas::radford(3, 7).pres);
    else if (which == "truncated25")
        a = build_algebra(atlas::truncated(2, 5).pres);
    else if (which == "vsl25")
        a = build_algebra(atlas::vsl2(5).pres);
    else
        throw std::runtime_error("unknown fixture");
    a = with_symmetrizing_form(a);
    return *cache.emplace(which, std::make_unique<Engine>(a)).first->second;
}

// Independent oracle: Hom_A(M, N) by the raw intertwiner equations
// X rho_M(g) = rho_N(g) X, solved densely. Small modules only.
inline std::vector<Mat> brute_hom(const Mod& m, const Mod& n) {
    const u32 p = m.p();
    const std::size_t unknowns = static_cast<std::size_t>(n.dim()) * m.dim();
    if (unknowns == 0) return {};
    Mat cons(unknowns * m.num_gens(), unknowns, p);
    Fp F(p);
    std::size_t row = 0;
    for (std::size_t g = 0; g < m.num_gens(); ++g) {
        const Mat& rm = m.act_gen(static_cast<u32>(g));
        const Mat& rn = n.act_gen(static_cast<u32>(g));
        // (X rm - rn X)[i][j] = sum_k X[i][k] rm[k][j] - rn[i][k] X[k][j]
        for (u32 i = 0; i < n.dim(); ++i)
            for (u32 j = 0; j < m.dim(); ++j) {
                for (u32 k = 0; k < m.dim(); ++k)
                    cons.at(row, static_cast<std::size_t>(i) * m.dim() + k) =
                        F.add(cons.at(row, static_cast<std::size_t>(i) * m.dim() + k), rm.at(k, j));
                for (u32 k = 0; k < n.dim(); ++k)
                    cons.at(row, static_cast<std::size_t>(k) * m.dim() + j) =
                        F.sub(cons.at(row, static_cast<std::size_t>(k) * m.dim() + j), rn.at(i, k));
                ++row;
            }
    }
    Mat ker = kernel_basis_mat(cons);
    std::vector<Mat> out;
    for (std::size_t r = 0; r < ker.rows(); ++r)
        out.push_back(Mat::from_flat(n.dim(), m.dim(), p, ker.row(r)));
    return out;
}

// Independent oracle for the stable Hom dimension: quotient by maps that
// factor through the free module A (every projective embeds in a free one).
inline std::size_t brute_stable_dim(Engine& eng, const Mod& m, const Mod& n) {
    std::vector<Mat> homs = brute_hom(m, n);
    Mod reg = eng.regular();
    std::vector<Mat> up = brute_hom(m, reg);
    std::vector<Mat> down = brute_hom(reg, n);
    Subspace fac(static_cast<std::size_t>(n.dim()) * m.dim(), eng.p());
    for (const Mat& g : down)
        for (const Mat& h : up) fac.insert(g.mul(h).vectorize());
    Subspace grow = fac;
    std::size_t count = 0;
    for (const Mat& h : homs)
        if (grow.insert(h.vectorize())) ++count;
    return count;
}

}  // namespace tatekit::testing

#endif
