#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "tatekit/gadgets.hpp"

using namespace tatekit;
using testing::engine_for;

namespace {

TateCtx& ctx_for(const std::string& which, int D) {
    static std::map<std::string, std::unique_ptr<TateCtx>> cache;
    std::string key = which + "/" + std::to_string(D);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto ctx = std::make_unique<TateCtx>(engine_for(which), D);
    return *cache.emplace(key, std::move(ctx)).first->second;
}

// first degree-2 basis class whose multiplication is injective on [0, top-2]
TateClass regular_degree2(TateCtx& ctx) {
    for (std::size_t j = 0; j < ctx.classes(2, ctx.k()).dim(); ++j) {
        TateClass cand = ctx.basis_class(2, j);
        TateCtx::KernelCokernel kc = ctx.mxi_kernel_cokernel(cand, 0, ctx.window() - 2);
        bool regular = true;
        for (u32 kd : kc.kernel_dims)
            if (kd != 0 && kd != UINT32_MAX) regular = false;
        if (regular) return cand;
    }
    throw std::runtime_error("no regular degree-2 class found");
}

}  // namespace

TEST_CASE("L of the zero class is the prescribed direct sum") {
    TateCtx& ctx = ctx_for("radford25", 5);
    LXiData lx = build_L(ctx, ctx.zero_class(2));
    CHECK(lx.xi_is_zero);
    CHECK(lx.module.dim() == ctx.tower().mod(2).dim() + ctx.tower().mod(1).dim());
}

TEST_CASE("L of a regular degree-2 class drops dimension by one") {
    TateCtx& ctx = ctx_for("radford25", 5);
    TateClass xi = regular_degree2(ctx);
    LXiData lx = build_L(ctx, xi);
    CHECK_FALSE(lx.xi_is_zero);
    CHECK(lx.module.dim() == ctx.tower().mod(2).dim() - 1);
    CHECK(lx.module.check_module_axioms());
    CHECK(lx.incl.is_intertwiner());
}

TEST_CASE("L over cyclic(5) at degree 2 vanishes (periodicity isomorphism)") {
    TateCtx& ctx = ctx_for("cyclic5", 4);
    TateClass u = ctx.basis_class(2, 0);
    LXiData lx = build_L(ctx, u);
    CHECK(lx.module.dim() == 0);
}

TEST_CASE("powers: identity, square nonzero, negative squares vanish") {
    TateCtx& ctx = ctx_for("radford25", 5);
    TateClass xi = regular_degree2(ctx);
    TateClass xi1 = power_class(ctx, xi, 1);
    CHECK(ctx.class_coords(xi1) == ctx.class_coords(xi));
    TateClass xi2 = power_class(ctx, xi, 2);
    CHECK(xi2.deg == 4);
    CHECK_FALSE(ctx.is_zero(xi2));
    TateCtx& wide = ctx_for("radford25", 6);  // degree -6 must stay in window
    TateClass neg = wide.basis_class(-3, 0);
    CHECK(wide.is_zero(power_class(wide, neg, 2)));
}

TEST_CASE("extension from the zero class splits") {
    Engine& eng = engine_for("radford25");
    TateCtx& ctx = ctx_for("radford25", 5);
    const Cover& cov = eng.cover(eng.trivial());
    ModMap eta = zero_map(cov.kernel, ctx.tower().mod(2));
    ExtensionSeq seq = extension_from_class(eng, eng.trivial(), eta);
    CHECK(sequence_splits(eng, seq));
}

TEST_CASE("extension from the L_xi class recovers the defining sequence") {
    Engine& eng = engine_for("radford25");
    TateCtx& ctx = ctx_for("radford25", 5);
    TateClass xi = regular_degree2(ctx);
    LXiData lx = build_L(ctx, xi);
    // the class of 0 -> L -> T_2 -> k -> 0 in Ext^1(k, L): connect the
    // identity through the sequence
    ExtensionSeq defining{lx.module, ctx.tower().mod(2), ctx.k(), lx.incl, lx.rep_map};
    defining.validate();
    TateCtx::Connecting con = ctx.connecting(defining, 0, 0);
    const Mat& d0 = con.delta[0];
    REQUIRE(d0.cols() == 1);
    // rebuild an extension from that class and compare middles
    const StableHom& sh = ctx.classes(1, lx.module);
    Mat rep(lx.module.dim(), ctx.tower().mod(1).dim(), eng.p());
    Fp F(eng.p());
    for (std::size_t r = 0; r < sh.dim(); ++r)
        if (d0.at(r, 0)) rep = rep.add(sh.rep(r).mat.scale(d0.at(r, 0)));
    ModMap eta{ctx.tower().mod(1), lx.module, rep};
    ExtensionSeq rebuilt = extension_from_class(eng, eng.trivial(), eta);
    CHECK(rebuilt.middle.dim() == defining.middle.dim());
    IsoVerdict iso = iso_test(eng, rebuilt.middle, defining.middle);
    CHECK(iso.yes);
    CHECK_FALSE(sequence_splits(eng, rebuilt));
}

TEST_CASE("almost split sequence over radford(2,5)") {
    Engine& eng = engine_for("radford25");
    TateCtx& ctx = ctx_for("radford25", 5);
    ExtensionSeq ar = ar_sequence_k(ctx);
    CHECK(ar.middle.dim() == ctx.tower().mod(2).dim() + 1);
    CHECK_FALSE(sequence_splits(eng, ar));
    // connecting vanishes against every T_n with n != 0
    TateCtx::Connecting con = ctx.connecting(ar, -3, 3);
    for (int n = -3; n <= 3; ++n) {
        const Mat& d = con.delta[static_cast<std::size_t>(n + 3)];
        if (n == 0) {
            CHECK_FALSE(d.is_zero());
        } else {
            CAPTURE(n);
            CHECK(d.is_zero());
        }
    }
}

TEST_CASE("almost split sequence over cyclic(5) has a 2-dimensional middle") {
    Engine& eng = engine_for("cyclic5");
    TateCtx& ctx = ctx_for("cyclic5", 4);
    ExtensionSeq ar = ar_sequence_k(ctx);
    CHECK(ar.middle.dim() == 2);  // T_2 is k again by periodicity
    CHECK_FALSE(sequence_splits(eng, ar));
}

TEST_CASE("xi . Id_M: projective targets split, regular classes do not") {
    Engine& eng = engine_for("radford25");
    TateCtx& ctx = ctx_for("radford25", 5);
    TateClass xi = regular_degree2(ctx);
    CHECK(xi_on_module(ctx, xi, eng.regular()).splits);
    CHECK_FALSE(xi_on_module(ctx, xi, eng.trivial()).splits);
    CHECK(xi_on_module(ctx, ctx.zero_class(2), eng.trivial()).splits);
}

TEST_CASE("annihilation verdicts across the sample grid agree on both routes") {
    Engine& eng = engine_for("radford25");
    TateCtx& ctx = ctx_for("radford25", 5);
    TateClass xi1 = regular_degree2(ctx);
    TateClass zero = ctx.zero_class(2);
    TateClass neg = ctx.basis_class(-3, 0);
    LXiData lx = build_L(ctx, xi1);
    Mod mods[] = {eng.trivial(), ctx.tower().mod(1), eng.cover(eng.trivial()).P, lx.module};
    TateClass classes[] = {zero, xi1, neg};
    for (const TateClass& xi : classes)
        for (const Mod& m : mods) {
            CAPTURE(xi.deg);
            CAPTURE(m.dim());
            AnnihilatesVerdict v = annihilates(ctx, xi, m);  // routes asserted equal inside
            if (ctx.is_zero(xi)) CHECK(v.annihilates);
        }
    // the regular class does not annihilate k, and annihilates projectives
    CHECK_FALSE(annihilates(ctx, xi1, eng.trivial()).annihilates);
    CHECK(annihilates(ctx, xi1, eng.cover(eng.trivial()).P).annihilates);
}

TEST_CASE("heller tensor identity panels") {
    Engine& eng = engine_for("radford25");
    TateCtx& ctx = ctx_for("radford25", 5);
    TateClass xi = regular_degree2(ctx);
    Mod tests[] = {eng.trivial(), ctx.tower().mod(1), build_L(ctx, xi).module};
    for (const Mod& m : tests)
        for (u32 i : {1u, 2u}) {
            Mod lhs = tensor_mod(ctx.tower().mod(static_cast<int>(i)), m);
            Mod rhs = eng.syzygy(m, i);
            CAPTURE(m.dim());
            CAPTURE(i);
            CHECK(stable_panel(ctx, lhs) == stable_panel(ctx, rhs));
        }
}

TEST_CASE("dual identity: (L_xi)^* matches the shifted cosyzygy on panels") {
    Engine& eng = engine_for("radford25");
    TateCtx& ctx = ctx_for("radford25", 5);
    TateClass xi = regular_degree2(ctx);
    LXiData lx = build_L(ctx, xi);
    Mod dual = dual_mod(lx.module);
    Mod shifted = eng.cosyzygy(lx.module, static_cast<u32>(xi.deg) + 1);
    CHECK(stable_panel(ctx, dual) == stable_panel(ctx, shifted));
}

TEST_CASE("L_xi graded dims decompose as kernel and cokernel pieces") {
    TateCtx& ctx = ctx_for("radford25", 5);
    TateClass xi = regular_degree2(ctx);
    LXiData lx = build_L(ctx, xi);
    const int d = xi.deg;
    TateCtx::KernelCokernel kc = ctx.mxi_kernel_cokernel(xi, -5, 5);
    for (int n = -2; n <= 2; ++n) {
        // dim H^n(L) = dim I^{n-1} + dim K^{n-d}
        u32 ipart = kc.cokernel_dims[static_cast<std::size_t>(n - 1 + 5)];
        u32 kpart = kc.kernel_dims[static_cast<std::size_t>(n - d + 5)];
        REQUIRE(ipart != UINT32_MAX);
        REQUIRE(kpart != UINT32_MAX);
        CAPTURE(n);
        CHECK(ctx.dim_hat(n, lx.module) == ipart + kpart);
    }
}
