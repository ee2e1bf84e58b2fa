#ifndef TATEKIT_TATE_HPP
#define TATEKIT_TATE_HPP

#include <map>

#include "tatekit/tower.hpp"

namespace tatekit {

// Stable class in Tate cohomology, carried by an honest module map from the
// tower; two classes agree iff their difference factors through a projective.
struct TateClass {
    int deg = 0;
    ModMap rep;  // T_deg -> target (k for ring classes)

    bool valid() const { return rep.src.valid(); }
};

struct GradedDims {
    int lo = 0, hi = 0;
    std::vector<u32> dims;  // dims[n - lo]

    u32 at(int n) const { return dims.at(static_cast<std::size_t>(n - lo)); }
};

// Action tables of the ring classes on the graded pieces of H^*(A, M):
// table[{a, i, b}] = coordinates in degree a+b of (ring basis class i of
// degree a) acting on each basis class of degree b, one row per source class.
struct GradedAction {
    int lo = 0, hi = 0;          // window of the module grading
    int action_bound = 6;        // |a| cap on ring degrees
    GradedDims module_dims;
    GradedDims ring_dims;        // over the same window
    // (a, b) -> matrix with dims(a+b) rows? stored flat:
    // act[{a,b}][i][j] = coords of class_a_i * class_b_j, as a matrix whose
    // columns are indexed by (i, j) pairs: column (i * dim_b + j)
    std::map<std::pair<int, int>, Mat> act;
};

// Per-tower Tate computation context: stable-hom caches, class bases,
// deterministic chain-map shifting, cup products, duality pairing.
class TateCtx {
public:
    TateCtx(Engine& eng, int D);

    Engine& engine() { return *eng_; }
    const Tower& tower() const { return tw_; }
    int window() const { return tw_.D; }
    Mod k() const { return tw_.mod(0); }

    // stable Hom(T_n, m), cached per (n, module identity)
    const StableHom& classes(int n, const Mod& m);
    u32 dim_hat(int n, const Mod& m) { return static_cast<u32>(classes(n, m).dim()); }
    GradedDims dims(const Mod& m, int lo, int hi);

    std::vector<TateClass> basis(int n);             // ring classes, target k
    TateClass basis_class(int n, std::size_t j);
    TateClass zero_class(int n);
    TateClass unit_class();

    // Heller shift of a map between tower modules: f : T_a -> T_b goes to
    // T_{a+s} -> T_{b+s}; s may be negative. Deterministic lifts.
    ModMap shift_map(const ModMap& f, int a, int b, int s);
    // cached shift of the ring basis class (b, j) by s
    const ModMap& shifted_basis(int b, std::size_t j, int s);

    TateClass cup(const TateClass& x, const TateClass& y);
    Vec cup_coords(const TateClass& x, const TateClass& y);  // in basis of deg x+y
    Vec class_coords(const TateClass& x);                    // in basis of deg x
    bool is_zero(const TateClass& x);

    // cup table of ring basis classes: matrix whose column (i, j) holds the
    // coordinates of class_a_i * class_b_j in degree a+b
    const Mat& cup_table(int a, int b);

    // <alpha, beta> for deg alpha = n-1, deg beta = -n, through the fixed
    // basis class of degree -1
    u32 duality_pairing(const TateClass& x, const TateClass& y);
    Mat pairing_matrix(int n);  // H^{n-1} x H^{-n}

    // per-degree matrices of mult-by-(class of s): H^n(A, right) -> H^{n+1}(A, left),
    // plus the three LES maps; exactness asserted when `check` is set
    struct Connecting {
        int lo, hi;
        std::vector<Mat> delta;  // H^n(N) -> H^{n+1}(L), index n - lo
        std::vector<Mat> from_left, to_right;  // H^n(L)->H^n(E), H^n(E)->H^n(N)
    };
    Connecting connecting(const ExtensionSeq& s, int lo, int hi, bool check_exactness = true);

    struct KernelCokernel {
        int lo, hi;
        std::vector<u32> kernel_dims, cokernel_dims;  // index t - lo; UINT32_MAX = not computable
        std::vector<Mat> kernel_bases;                // coords in basis of H^t
    };
    KernelCokernel mxi_kernel_cokernel(const TateClass& xi, int lo, int hi);

    GradedAction module_structure(const Mod& m, int lo, int hi, int action_bound);

    // action of a ring class on a module class (both given by reps)
    Vec act_on_module_class(const TateClass& ring_cls, int b, const ModMap& beta, const Mod& m);

private:
    Engine* eng_;
    Tower tw_;
    std::map<std::pair<int, const ModData*>, std::shared_ptr<StableHom>> sh_cache_;
    std::map<std::pair<int, int>, std::shared_ptr<std::vector<ModMap>>> level_hom_cache_;
    std::map<std::tuple<int, std::size_t, int>, std::shared_ptr<ModMap>> shift_cache_;
    std::map<std::pair<int, int>, std::shared_ptr<Mat>> cup_cache_;
    std::recursive_mutex mx_;

    const std::vector<ModMap>& level_homs(int x, int y);  // Hom(P_x, P_y)
    ModMap shift_up_once(const ModMap& f, int a, int b);
    ModMap shift_down_once(const ModMap& f, int a, int b);
};

}  // namespace tatekit

#endif
