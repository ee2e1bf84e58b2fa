#ifndef TATEKIT_TOWER_HPP
#define TATEKIT_TOWER_HPP

#include "tatekit/stmod.hpp"

namespace tatekit {

// One level of the windowed complete resolution: P covers T_n minimally and
// the kernel of pi is T_{n+1}, embedded by incl.
struct TowerLevel {
    Mod P;
    ModMap pi;       // P -> T_n
    ModMap incl;     // T_{n+1} -> P
    Mat pi_section;  // right inverse of pi.mat
};

// The syzygy window {Omega^n k : -D <= n <= D} of the trivial module, with
// cover data for every level. The negative side is built from the opposite
// algebra's resolution by vector-space duality; the algebra must carry a
// certified symmetrizing form for that to be legitimate.
struct Tower {
    Engine* eng = nullptr;
    int D = 0;
    std::vector<Mod> T;          // T[n + D], n in [-D, D]
    std::vector<TowerLevel> L;   // L[n + D] covers T_n, n in [-D, D-1]

    const Mod& mod(int n) const { return T.at(static_cast<std::size_t>(n + D)); }
    const TowerLevel& level(int n) const { return L.at(static_cast<std::size_t>(n + D)); }
    bool in_window(int n) const { return n >= -D && n <= D; }
    bool has_level(int n) const { return n >= -D && n <= D - 1; }
};

Tower build_tower(Engine& eng, int D);

}  // namespace tatekit

#endif
