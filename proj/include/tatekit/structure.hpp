#ifndef TATEKIT_STRUCTURE_HPP
#define TATEKIT_STRUCTURE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "tatekit/module.hpp"

namespace tatekit {

// Minimal projective cover data: P = (+) A e_{c(t)}, pi : P -> M surjective
// with kernel inside rad P, plus the kernel module and its inclusion.
struct Cover {
    Mod P;
    ModMap pi;
    std::vector<u32> summand_idem;    // idempotent index of each summand
    std::vector<u32> summand_offset;  // basis offset of each summand inside P
    Mod kernel;                       // the syzygy
    ModMap incl;                      // kernel -> P
    Mat section;                      // right inverse of pi.mat
};

struct RadicalCert {
    bool is_ideal = false;
    bool is_nilpotent = false;
    bool quotient_semisimple = false;
    u32 nilpotency_index = 0;

    bool pass() const { return is_ideal && is_nilpotent && quotient_semisimple; }
};

struct QuotientAlg {
    AlgPtr alg;
    Mat proj;     // k x n
    Mat section;  // n x k, proj * section = id, basis rep 0 is the unit
};

// Jacobson radical of the table algebra by characteristic-p trace refinement:
// iterated kernels of the char-poly coefficient functionals c_{p^i} on the
// regular representation.
Subspace radical_subspace(const Alg& a);

QuotientAlg quotient_algebra(const AlgPtr& a, const Subspace& ideal);

// Per-algebra computation context. Caches the radical, the primitive
// idempotents, indecomposable projectives, covers, and the opposite engine.
// All operations are const-correct from the caller's view; caches are mutexed.
class Engine {
public:
    explicit Engine(AlgPtr a);

    const AlgPtr& alg_ptr() const { return a_; }
    const Alg& alg() const { return *a_; }
    u32 p() const { return a_->p; }

    const Subspace& radical();
    RadicalCert certify_radical();

    // pairwise orthogonal primitive idempotents summing to 1 (dense coords)
    const std::vector<Vec>& idempotents();
    const std::vector<u32>& idempotent_block();  // block id per idempotent
    std::size_t num_blocks();
    u32 block_rep(u32 block);                    // representative idempotent index

    Mod indecomposable_projective(u32 idem_index);
    const Mat& projective_basis(u32 idem_index);          // rows = basis of A e in A coords
    const Subspace& projective_radical(u32 idem_index);   // rad(A e) inside A e coords
    Mod simple_module(u32 block);
    u32 simple_dim(u32 block);

    Mod trivial();
    Mod regular();

    const Cover& cover(const Mod& m);
    Mod syzygy(Mod m, u32 n);
    Mod cosyzygy(Mod m, u32 n);

    Engine& op_engine();

    // rad(A) * M as a subspace of M
    Subspace radical_submodule(const Mod& m);

private:
    void ensure_radical();
    void ensure_idempotents();
    void ensure_projectives();
    Cover build_cover(const Mod& m);

    AlgPtr a_;
    std::recursive_mutex mx_;
    std::optional<Subspace> rad_;
    std::vector<Vec> rad_basis_;
    std::optional<RadicalCert> rad_cert_;
    std::vector<Vec> idems_;
    std::vector<u32> idem_block_;
    std::vector<u32> block_reps_;
    std::vector<Mod> proj_mods_;
    std::vector<Mat> proj_bases_;
    std::vector<std::unique_ptr<Subspace>> proj_rads_;
    std::vector<Mod> simple_mods_;
    std::vector<u32> simple_dims_;
    std::optional<Mod> trivial_, regular_;
    std::map<std::shared_ptr<const ModData>, std::shared_ptr<const Cover>> cover_cache_;
    std::unique_ptr<Engine> op_;
};

}  // namespace tatekit

#endif
