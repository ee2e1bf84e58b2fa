#include "tatekit/tower.hpp"

#include "tatekit/errors.hpp"

namespace tatekit {

Tower build_tower(Engine& eng, int D) {
    if (D < 0) throw precondition_error("tower window must be nonnegative");
    if (!eng.alg().symform)
        throw not_symmetric_error("tower construction needs a certified symmetric algebra");
    Tower tw;
    tw.eng = &eng;
    tw.D = D;
    tw.T.resize(2 * D + 1);
    tw.L.resize(D > 0 ? 2 * D : 0);

    Mod k = eng.trivial();
    tw.T[D] = k;
    // positive side: minimal covers
    for (int n = 0; n < D; ++n) {
        const Cover& c = eng.cover(tw.T[D + n]);
        tw.L[D + n] = TowerLevel{c.P, c.pi, c.incl, c.section};
        tw.T[D + n + 1] = c.kernel;
    }
    if (D == 0) return tw;

    // negative side: resolve the trivial module over the opposite algebra and
    // dualize; exactness transposes, minimality is asserted below
    Engine& op = eng.op_engine();
    std::vector<Mod> S(D + 1);
    S[0] = op.trivial();
    std::vector<const Cover*> opcov(D);
    for (int m = 0; m < D; ++m) {
        opcov[m] = &op.cover(S[m]);
        S[m + 1] = opcov[m]->kernel;
    }
    std::vector<Mod> Tm(D + 1);  // Tm[m] = dual of S[m] as a module over A
    Tm[0] = k;                   // same matrices as the dual of the op-trivial
    {
        Mod check = op_dual(S[0], eng.alg_ptr());
        for (std::size_t g = 0; g < k.num_gens(); ++g)
            if (check.act_gen(static_cast<u32>(g)) != k.act_gen(static_cast<u32>(g)))
                throw internal_check_error("dual of the opposite trivial module is not trivial");
    }
    for (int m = 1; m <= D; ++m) Tm[m] = op_dual(S[m], eng.alg_ptr());
    for (int m = 1; m <= D; ++m) {
        tw.T[D - m] = Tm[m];
        Mod Q = op_dual(opcov[m - 1]->P, eng.alg_ptr());
        ModMap pi{Q, Tm[m], opcov[m - 1]->incl.mat.transpose()};
        ModMap incl{Tm[m - 1], Q, opcov[m - 1]->pi.mat.transpose()};
        if (!pi.is_intertwiner() || !incl.is_intertwiner())
            throw internal_check_error("dualized tower maps are not module maps");
        if (rank(pi.mat) != Tm[m].dim() || rank(incl.mat) != Tm[m - 1].dim())
            throw internal_check_error("dualized tower level is not exact");
        auto section = solve_many(pi.mat, Mat::identity(Tm[m].dim(), eng.p()));
        if (!section) throw internal_check_error("tower section solve failed");
        // minimality: the kernel of pi must sit inside rad Q
        Subspace radq = eng.radical_submodule(Q);
        for (std::size_t j = 0; j < incl.mat.cols(); ++j)
            if (!radq.contains(incl.mat.col(j)))
                throw internal_check_error("negative tower level is not minimal");
        tw.L[D - m] = TowerLevel{Q, pi, incl, *section};
    }
    return tw;
}

}  // namespace tatekit
