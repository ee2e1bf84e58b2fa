#ifndef TATEKIT_MODULE_HPP
#define TATEKIT_MODULE_HPP

#include <memory>
#include <mutex>
#include <vector>

#include "tatekit/algebra.hpp"
#include "tatekit/subspace.hpp"

namespace tatekit {

// Finitely generated left module, stored as the action matrices of the
// algebra generators. Actions of arbitrary basis elements are evaluated
// through the decomposition DP; small modules cache the full table.
struct ModData {
    AlgPtr A;
    u32 dim = 0;
    std::vector<Mat> gen_act;

    mutable std::mutex mx;
    mutable std::vector<Mat> full;  // lazy full action table (index = algebra basis)
};

class Mod {
public:
    Mod() = default;
    explicit Mod(std::shared_ptr<const ModData> d) : d_(std::move(d)) {}

    static Mod from_action(AlgPtr a, std::vector<Mat> gen_act);
    static Mod zero(AlgPtr a);
    static Mod trivial(AlgPtr a);
    static Mod regular(AlgPtr a);

    bool valid() const { return static_cast<bool>(d_); }
    const AlgPtr& algebra() const { return d_->A; }
    u32 dim() const { return d_->dim; }
    u32 p() const { return d_->A->p; }
    const ModData* identity() const { return d_.get(); }
    const std::shared_ptr<const ModData>& data() const { return d_; }

    const Mat& act_gen(u32 g) const { return d_->gen_act[g]; }
    std::size_t num_gens() const { return d_->gen_act.size(); }

    // rho(e_b) applied to a vector, via the generator-word decomposition
    Vec apply_basis(u32 b, const Vec& v) const;
    // rho(x) v for a sparse algebra element
    Vec apply_elem(const SparseVec& x, const Vec& v) const;
    // all rho(e_b) v at once (one matrix-vector product per basis element)
    std::vector<Vec> orbit(const Vec& v) const;
    // rho(e_b) as a matrix; cheap once the full table is cached
    Mat act_basis(u32 b) const;
    const std::vector<Mat>& full_table() const;

    // generator actions satisfy rho(g) rho(b) = rho(g b) for all basis b
    bool check_module_axioms() const;

    bool operator==(const Mod& o) const { return d_ == o.d_; }

private:
    std::shared_ptr<const ModData> d_;
};

struct ModMap {
    Mod src, dst;
    Mat mat;  // dst.dim x src.dim

    bool is_intertwiner() const;
    Vec operator()(const Vec& v) const { return mat.mul_vec(v); }
};

ModMap compose(const ModMap& f, const ModMap& g);  // f after g
ModMap identity_map(const Mod& m);
ModMap zero_map(const Mod& src, const Mod& dst);

// Submodule on a subspace (must be action-closed); the returned map embeds it.
std::pair<Mod, ModMap> submodule(const Mod& m, const Subspace& s);
// Quotient by an action-closed subspace; the returned map is the projection.
std::pair<Mod, ModMap> quotient_module(const Mod& m, const Subspace& s);

struct DirectSum {
    Mod sum;
    std::vector<ModMap> inject;   // component -> sum
    std::vector<ModMap> project;  // sum -> component
};
DirectSum direct_sum(const std::vector<Mod>& parts);

// Hopf constructions.
Mod tensor_mod(const Mod& m, const Mod& n);          // action through delta
Mod dual_mod(const Mod& m);                          // (a.f)(v) = f(S(a) v)
Mod adjoint_module(const AlgPtr& a);                 // b.v = sum b_1 v S(b_2)
// Vector-space dual as a module over the opposite algebra (and back).
Mod op_dual(const Mod& m, const AlgPtr& op_alg);

// Short exact sequence 0 -> L -> E -> N -> 0.
struct ExtensionSeq {
    Mod left, middle, right;
    ModMap inj;   // left -> middle
    ModMap surj;  // middle -> right

    void validate() const;  // injective, surjective, exact, dims add
};

}  // namespace tatekit

#endif
