#ifndef TATEKIT_STMOD_HPP
#define TATEKIT_STMOD_HPP

#include "tatekit/structure.hpp"

namespace tatekit {

// Hom_A(M, N) computed through the minimal projective presentation of M:
// maps from P(M) restrict by closed form to (+) e_t N, and the kernel
// condition "vanishes on Omega M" cuts out Hom(M, N).
std::vector<ModMap> hom_basis(Engine& eng, const Mod& m, const Mod& n);

// Image of Hom(M, Q) --compose with surj--> Hom(M, N), vectorized; used for
// the factoring-through-projectives subspace with Q = P(N).
Subspace factoring_subspace(Engine& eng, const Mod& m, const ModMap& surj);

struct StableHom {
    std::vector<ModMap> hom;          // basis of the full Hom space
    Subspace factoring{0, 2};         // span of maps factoring through projectives
    std::vector<std::size_t> rep_indices;  // hom indices giving coset representatives
    Mod src, dst;

    std::size_t dim() const { return rep_indices.size(); }
    const ModMap& rep(std::size_t i) const { return hom[rep_indices[i]]; }

    // coordinates of a map's stable class in the rep basis
    Vec coords(const ModMap& f) const;
    bool is_stably_zero(const ModMap& f) const { return factoring.contains(f.mat.vectorize()); }
};

StableHom stable_hom(Engine& eng, const Mod& m, const Mod& n);

bool is_projective(Engine& eng, const Mod& m);

struct IsoVerdict {
    bool yes = false;
    std::string certificate;  // "identity", "witness", "dim", "panel", "search"
    Mat witness;              // invertible intertwiner when yes
};

// YES verdicts are exact (witness checked); NO-by-search is evidence-graded.
IsoVerdict iso_test(Engine& eng, const Mod& m, const Mod& n, u64 seed = 0, int trials = 200);

bool sequence_splits(Engine& eng, const ExtensionSeq& s);

// dims of stable_hom(-, S) over all block simples and stable_hom(T_n-free
// panel omitted here); the cheap invariant used to compare modules up to
// projective summands.
std::vector<u32> simple_panel(Engine& eng, const Mod& m);

}  // namespace tatekit

#endif
