#ifndef TATEKIT_PRESENTATION_HPP
#define TATEKIT_PRESENTATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tatekit/fp.hpp"

namespace tatekit {

// Exponent vector of an ordered monomial g_1^{a_1} ... g_r^{a_r}.
using Exps = std::vector<std::uint16_t>;

struct Term {
    Exps exps;
    u32 coeff;
};
using Lin = std::vector<Term>;  // sorted by exps, coefficients nonzero

struct TensorTerm {
    Exps left, right;
    u32 coeff;
};
using TensorLin = std::vector<TensorTerm>;

struct HopfGenData {
    std::vector<TensorLin> delta;  // per generator
    std::vector<Lin> antipode;     // per generator
};

// Straightening presentation: ordered generators, power rules
// g_i^{n_i} -> rhs and swap rules g_j g_i -> rhs (j > i), with rhs already
// in normal form. Augmentation on generators is mandatory; Hopf data optional.
struct Presentation {
    u32 p = 5;
    std::vector<std::string> gens;
    std::vector<u32> bounds;            // n_i >= 1
    std::vector<Lin> power_rhs;         // g_i^{n_i} -> Lin
    std::vector<std::vector<Lin>> swap_rhs;  // [hi][lo] for hi > lo
    Vec epsilon;                        // per generator
    std::optional<HopfGenData> hopf;

    std::size_t num_gens() const { return gens.size(); }
    u64 dimension() const {
        u64 d = 1;
        for (u32 b : bounds) d *= b;
        return d;
    }

    // Throws precondition_error / parse_error on malformed data.
    void validate() const;
};

// Sparse element in the monomial basis (index = mixed-radix rank of exponents).
struct SparseVec {
    std::vector<std::pair<u32, u32>> terms;  // (basis index, coeff), sorted, nonzero

    bool is_zero() const { return terms.empty(); }
    bool operator==(const SparseVec& o) const { return terms == o.terms; }
};

SparseVec sparse_from_dense(const Vec& dense);
Vec sparse_to_dense(const SparseVec& s, std::size_t dim);
SparseVec sparse_add(const Fp& F, const SparseVec& a, const SparseVec& b);
SparseVec sparse_scale(const Fp& F, const SparseVec& a, u32 c);

// Mixed-radix indexing of basis monomials.
u32 monomial_index(const Presentation& pres, const Exps& e);
Exps monomial_exps(const Presentation& pres, u32 index);
std::string monomial_label(const Presentation& pres, const Exps& e);

// All basis monomials in lexicographic (mixed-radix) order.
std::vector<Exps> enumerate_basis(const Presentation& pres);

// Rewrite an arbitrary generator word (list of generator indices) to a linear
// combination of basis monomials. Leftmost-innermost reduction with a step
// budget; throws nontermination_error when the budget is exhausted.
SparseVec normal_form_word(const Presentation& pres, const std::vector<u32>& word,
                           std::size_t budget = 1000000);

// Convenience: normal form of a single monomial times a generator, memoized
// by the caller (see build_algebra).
SparseVec normal_form_mono_times_gen(const Presentation& pres, const Exps& mono, u32 gen,
                                     std::size_t budget = 1000000);

// Presentation file format (JSON with fixed field names).
Presentation presentation_from_json_text(const std::string& text);
std::string presentation_to_json_text(const Presentation& pres);
Presentation load_presentation_file(const std::string& path);
void save_presentation_file(const Presentation& pres, const std::string& path);

}  // namespace tatekit

#endif
