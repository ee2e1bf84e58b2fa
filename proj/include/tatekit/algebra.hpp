#ifndef TATEKIT_ALGEBRA_HPP
#define TATEKIT_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tatekit/mat.hpp"
#include "tatekit/presentation.hpp"

namespace tatekit {

// How each non-unit basis element factors as (generator) * (parent) in this
// algebra's own multiplication; lets module actions be evaluated from
// generator matrices alone.
struct BasisDecomp {
    u32 gen;     // generator list position
    u32 parent;  // basis index of the shorter monomial
};

// Finite-dimensional associative algebra over F_p given by a multiplication
// table on a fixed basis. The table rows are sparse.
struct Alg {
    u32 p = 5;
    u32 dim = 0;
    std::vector<std::string> labels;
    std::vector<SparseVec> table;  // table[u*dim+v] = e_u * e_v
    u32 unit_index = 0;            // unit is the basis element at this index
    Vec epsilon;                   // augmentation as a functional on the basis
    std::vector<u32> gen_basis;    // basis index of each generator
    std::vector<u32> radices;      // mixed-radix exponent bounds of the basis monomials
    std::vector<BasisDecomp> decomp;  // empty means "no module support"
    std::optional<Vec> symform;    // symmetrizing trace functional, if certified

    struct HopfMaps {
        std::vector<SparseVec> delta;     // values in A(x)A, pair index l*dim+r
        std::vector<SparseVec> antipode;  // values in A
    };
    std::optional<HopfMaps> hopf;

    const SparseVec& prod(u32 u, u32 v) const { return table[static_cast<std::size_t>(u) * dim + v]; }
    SparseVec mul(const SparseVec& x, const SparseVec& y) const;
    SparseVec mul_basis(u32 u, const SparseVec& y) const;
    Vec unit_vec() const {
        Vec v(dim, 0);
        v[unit_index] = 1;
        return v;
    }
    u32 eval_epsilon(const SparseVec& x) const;
    SparseVec power(const SparseVec& x, u32 n) const;

    bool has_modules() const { return !decomp.empty(); }
};

using AlgPtr = std::shared_ptr<const Alg>;

struct CheckReport {
    bool pass = true;
    std::size_t checked = 0;
    std::vector<std::string> violations;  // first few witnesses

    void fail(const std::string& msg) {
        pass = false;
        if (violations.size() < 8) violations.push_back(msg);
    }
};

// Tabulate the presented algebra: basis, products, augmentation, and (when
// present) Hopf maps extended multiplicatively. Throws when the Hopf data
// does not respect a defining relation.
AlgPtr build_algebra(const Presentation& pres);

AlgPtr opposite(const AlgPtr& a);

// Full tensor-square style product algebra; intended for small sanity runs.
AlgPtr tensor(const AlgPtr& a, const AlgPtr& b);

// Search for a nondegenerate trace form t with t(uv) = t(vu): solve the
// linear trace condition, then maximize Gram rank greedily over the solution
// space (single basis members, then two-element coefficient sweeps).
std::optional<Vec> symmetrizing_form(const Alg& a);

// Stores the found form into a copy of the algebra (convenience used by atlas).
AlgPtr with_symmetrizing_form(const AlgPtr& a);

// Associativity (exhaustive up to dim 64, sampled above), unit laws,
// augmentation multiplicativity.
CheckReport verify_algebra(const Alg& a, bool exhaustive = false, u64 seed = 0,
                           std::size_t samples = 100000);

// Coassociativity, counit, antipode identities on every basis element, and
// multiplicativity of delta (exhaustive on small algebras, sampled above).
CheckReport check_hopf(const Alg& a, bool exhaustive = false, u64 seed = 0);

// Gram matrix G[u][v] = t(e_u e_v) of a trace functional.
Mat gram_matrix(const Alg& a, const Vec& t);

}  // namespace tatekit

#endif
