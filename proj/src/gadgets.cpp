#include "tatekit/gadgets.hpp"

#include "tatekit/errors.hpp"

namespace tatekit {

ModMap cocycle_rep(TateCtx& ctx, const TateClass& xi) {
    if (xi.deg == 0) throw precondition_error("cocycle representative needs nonzero degree");
    if (!ctx.tower().in_window(xi.deg)) throw window_error("class degree outside the tower window");
    return xi.rep;
}

LXiData build_L(TateCtx& ctx, const TateClass& xi) {
    LXiData out;
    out.xi = xi;
    out.deg = xi.deg;
    if (xi.deg == 0) throw precondition_error("L_xi needs a class of nonzero degree");
    if (!ctx.tower().in_window(xi.deg) || !ctx.tower().in_window(1))
        throw window_error("L_xi construction exceeds the tower window");
    Engine& eng = ctx.engine();
    if (ctx.is_zero(xi)) {
        out.xi_is_zero = true;
        out.module = direct_sum({ctx.tower().mod(xi.deg), ctx.tower().mod(1)}).sum;
        out.rep_map = zero_map(ctx.tower().mod(xi.deg), ctx.k());
        out.incl = zero_map(out.module, ctx.tower().mod(xi.deg));
        return out;
    }
    out.xi_is_zero = false;
    out.rep_map = cocycle_rep(ctx, xi);
    if (rank(out.rep_map.mat) != 1)
        throw internal_check_error("nonzero class representative is not surjective onto k");
    Subspace ker = Subspace::from_rows(kernel_basis_mat(out.rep_map.mat));
    auto [mod, incl] = submodule(ctx.tower().mod(xi.deg), ker);
    out.module = mod;
    out.incl = incl;
    if (out.module.dim() + 1 != ctx.tower().mod(xi.deg).dim())
        throw internal_check_error("L_xi dimension bookkeeping failed");
    (void)eng;
    return out;
}

TateClass power_class(TateCtx& ctx, const TateClass& xi, u32 t) {
    if (t == 0) return ctx.unit_class();
    TateClass acc = xi;
    for (u32 i = 1; i < t; ++i) acc = ctx.cup(xi, acc);
    return acc;
}

ExtensionSeq extension_from_class(Engine& eng, const Mod& n, const ModMap& eta) {
    const Cover& cov = eng.cover(n);
    const Mod& omega = cov.kernel;
    if (eta.src.identity() != omega.identity())
        throw precondition_error("extension class must be presented on the cover kernel of N");
    const Mod& l = eta.dst;
    DirectSum ds = direct_sum({l, cov.P});
    // anti-diagonal image of Omega N inside L (+) P
    Subspace u(ds.sum.dim(), eng.p());
    Fp F(eng.p());
    for (u32 j = 0; j < omega.dim(); ++j) {
        Vec v(ds.sum.dim(), 0);
        for (u32 i = 0; i < l.dim(); ++i) v[i] = eta.mat.at(i, j);
        for (u32 i = 0; i < cov.P.dim(); ++i) v[l.dim() + i] = F.neg(cov.incl.mat.at(i, j));
        u.insert(std::move(v));
    }
    if (u.dim() != omega.dim()) throw internal_check_error("pushout relation subspace degenerate");
    auto [e, proj] = quotient_module(ds.sum, u);
    ModMap inj{l, e, proj.mat.mul(ds.inject[0].mat)};
    // induced surjection onto N: [0, pi] kills the relations
    Mat s0 = cov.pi.mat.mul(ds.project[1].mat);
    auto sigma = solve_many(proj.mat, Mat::identity(e.dim(), eng.p()));
    if (!sigma) throw internal_check_error("pushout projection has no section");
    ModMap surj{e, n, s0.mul(*sigma)};
    ExtensionSeq seq{l, e, n, inj, surj};
    seq.validate();
    return seq;
}

ExtensionSeq ar_sequence_k(TateCtx& ctx) {
    Engine& eng = ctx.engine();
    if (eng.radical().dim() == 0)
        throw precondition_error("almost split sequence needs a non-semisimple algebra");
    if (ctx.dim_hat(-1, ctx.k()) != 1)
        throw precondition_error("almost split construction needs a 1-dimensional degree -1 part");
    if (!ctx.tower().in_window(2)) throw window_error("almost split sequence needs window >= 2");
    TateClass xi = ctx.basis_class(-1, 0);
    // class in Ext^1(k, Omega^2 k): the double shift of xi, as a map T_1 -> T_2
    ModMap eta = ctx.shift_map(xi.rep, -1, 0, 2);
    return extension_from_class(eng, ctx.k(), eta);
}

std::vector<u32> stable_panel(TateCtx& ctx, const Mod& m) {
    Engine& eng = ctx.engine();
    std::vector<u32> panel;
    int bound = std::min(2, ctx.window());
    for (int n = -bound; n <= bound; ++n)
        panel.push_back(static_cast<u32>(stable_hom(eng, ctx.tower().mod(n), m).dim()));
    std::vector<u32> sp = simple_panel(eng, m);
    panel.insert(panel.end(), sp.begin(), sp.end());
    return panel;
}

XiOnModule xi_on_module(TateCtx& ctx, const TateClass& xi, const Mod& m) {
    Engine& eng = ctx.engine();
    if (!eng.alg().hopf) throw hopf_absent_error("xi . Id_M needs tensor products of modules");
    const int d = xi.deg;
    if (d == 0) throw precondition_error("xi . Id_M needs a class of nonzero degree");
    if (!ctx.tower().in_window(d - 1)) throw window_error("window too small for the shifted sequence");
    // the sequence 0 -> k -> X -> T_{d-1} -> 0 with class xi, presented on
    // the cover kernel of T_{d-1}
    const Mod& nmod = ctx.tower().mod(d - 1);
    const Cover& cov = eng.cover(nmod);
    ModMap eta{cov.kernel, ctx.k(), Mat(1, cov.kernel.dim(), eng.p())};
    if (!ctx.is_zero(xi)) {
        if (d - 1 >= 0) {
            // the cover kernel is the tower module T_d itself
            if (cov.kernel.identity() != ctx.tower().mod(d).identity())
                throw internal_check_error("tower cover kernel mismatch on the positive side");
            eta.mat = xi.rep.mat;
        } else {
            // identify the engine's cover kernel with the dualized tower module
            IsoVerdict iso = iso_test(eng, cov.kernel, ctx.tower().mod(d));
            if (!iso.yes) throw internal_check_error("cover kernel not isomorphic to the tower syzygy");
            eta.mat = xi.rep.mat.mul(iso.witness);
        }
    }
    ExtensionSeq base = extension_from_class(eng, nmod, eta);
    // tensor with M; k (x) M is canonically M itself
    Mod xm = tensor_mod(base.middle, m);
    Mod nm = tensor_mod(base.right, m);
    Mat injm(xm.dim(), m.dim(), eng.p());
    for (u32 i = 0; i < base.middle.dim(); ++i)
        for (u32 j = 0; j < m.dim(); ++j)
            if (base.inj.mat.at(i, 0))
                injm.at(i * m.dim() + j, j) = base.inj.mat.at(i, 0);
    Mat surjm(nm.dim(), xm.dim(), eng.p());
    for (u32 i = 0; i < base.right.dim(); ++i)
        for (u32 l = 0; l < base.middle.dim(); ++l) {
            u32 c = base.surj.mat.at(i, l);
            if (!c) continue;
            for (u32 j = 0; j < m.dim(); ++j) surjm.at(i * m.dim() + j, l * m.dim() + j) = c;
        }
    XiOnModule out;
    out.seq = ExtensionSeq{m, xm, nm, ModMap{m, xm, injm}, ModMap{xm, nm, surjm}};
    out.seq.validate();
    out.splits = sequence_splits(eng, out.seq);
    return out;
}

AnnihilatesVerdict annihilates(TateCtx& ctx, const TateClass& xi, const Mod& m) {
    Engine& eng = ctx.engine();
    AnnihilatesVerdict v;
    if (ctx.is_zero(xi)) {
        // the zero class annihilates everything; both routes are immediate
        v.split_route = true;
        v.panel_route = true;
        v.annihilates = true;
        return v;
    }
    v.split_route = xi_on_module(ctx, xi, m).splits;
    LXiData lx = build_L(ctx, xi);
    Mod lm = tensor_mod(lx.module, m);
    Mod om = eng.syzygy(m, 1);
    Mod odm = xi.deg >= 0 ? eng.syzygy(m, static_cast<u32>(xi.deg))
                          : eng.cosyzygy(m, static_cast<u32>(-xi.deg));
    Mod rhs = direct_sum({om, odm}).sum;
    v.panel_route = stable_panel(ctx, lm) == stable_panel(ctx, rhs);
    if (v.split_route != v.panel_route)
        throw internal_check_error("annihilation routes disagree (correctness tripwire)");
    v.annihilates = v.split_route;
    return v;
}

}  // namespace tatekit
