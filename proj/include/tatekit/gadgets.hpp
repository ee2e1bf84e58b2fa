#ifndef TATEKIT_GADGETS_HPP
#define TATEKIT_GADGETS_HPP

#include "tatekit/tate.hpp"

namespace tatekit {

// L_xi: kernel of a cocycle representative T_d -> k, or T_d (+) T_1 for the
// zero class. The stored representative is the deterministic one carried by
// the class itself.
struct LXiData {
    TateClass xi;
    int deg = 0;
    bool xi_is_zero = true;
    ModMap rep_map;  // T_d -> k
    Mod module;
    ModMap incl;     // module -> T_d (kernel embedding; unused for the zero class)
};

// genuine module homomorphism representing the class; rejects degree 0
ModMap cocycle_rep(TateCtx& ctx, const TateClass& xi);

LXiData build_L(TateCtx& ctx, const TateClass& xi);

TateClass power_class(TateCtx& ctx, const TateClass& xi, u32 t);

// Pushout of 0 -> Omega N -> P(N) -> N -> 0 along eta : Omega N -> L. The
// map eta must have the cover kernel of N as its source.
ExtensionSeq extension_from_class(Engine& eng, const Mod& n, const ModMap& eta);

// The almost split sequence 0 -> Omega^2 k -> M -> k -> 0, built from the
// nonzero degree -1 class.
ExtensionSeq ar_sequence_k(TateCtx& ctx);

struct XiOnModule {
    ExtensionSeq seq;  // 0 -> M -> X (x) M -> Omega^{d-1} k (x) M -> 0
    bool splits = false;
};
// The sequence representing xi . Id_M; splitness decides annihilation.
XiOnModule xi_on_module(TateCtx& ctx, const TateClass& xi, const Mod& m);

struct AnnihilatesVerdict {
    bool annihilates = false;
    bool split_route = false;
    bool panel_route = false;
};
// Two independent routes, asserted equal: (i) splitness of xi . Id_M;
// (ii) stable panels of L_xi (x) M against Omega(M) (+) Omega^d(M).
AnnihilatesVerdict annihilates(TateCtx& ctx, const TateClass& xi, const Mod& m);

// stable dims against the tower modules in [-2, 2] and against the simples;
// two modules differing only by projective summands get equal panels
std::vector<u32> stable_panel(TateCtx& ctx, const Mod& m);

}  // namespace tatekit

#endif
