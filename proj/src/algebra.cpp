#include "tatekit/algebra.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "tatekit/errors.hpp"
#include "tatekit/parallel.hpp"

namespace tatekit {

SparseVec Alg::mul(const SparseVec& x, const SparseVec& y) const {
    Fp F(p);
    Vec acc(dim, 0);
    for (auto& [i, ci] : x.terms)
        for (auto& [j, cj] : y.terms) {
            u64 c = static_cast<u64>(ci) * cj % p;
            if (!c) continue;
            for (auto& [k, ck] : prod(i, j).terms)
                acc[k] = static_cast<u32>((acc[k] + c * ck) % p);
        }
    return sparse_from_dense(acc);
}

SparseVec Alg::mul_basis(u32 u, const SparseVec& y) const {
    Fp F(p);
    Vec acc(dim, 0);
    for (auto& [j, cj] : y.terms)
        for (auto& [k, ck] : prod(u, j).terms)
            acc[k] = static_cast<u32>((acc[k] + static_cast<u64>(cj) * ck) % p);
    return sparse_from_dense(acc);
}

u32 Alg::eval_epsilon(const SparseVec& x) const {
    Fp F(p);
    u64 acc = 0;
    for (auto& [i, c] : x.terms) acc += static_cast<u64>(c) * epsilon[i];
    return F.reduce(acc);
}

SparseVec Alg::power(const SparseVec& x, u32 n) const {
    SparseVec r;
    r.terms.emplace_back(unit_index, 1);
    for (u32 i = 0; i < n; ++i) r = mul(r, x);
    return r;
}

namespace {

// sparse element of A(x)A, pair index l*dim+r
SparseVec tensor_mul2(const Alg& a, const SparseVec& x, const SparseVec& y) {
    Fp F(a.p);
    std::map<u32, u32> acc;
    for (auto& [ij, c1] : x.terms) {
        u32 i = ij / a.dim, j = ij % a.dim;
        for (auto& [kl, c2] : y.terms) {
            u32 k = kl / a.dim, l = kl % a.dim;
            u64 c = static_cast<u64>(c1) * c2 % a.p;
            if (!c) continue;
            for (auto& [u, cu] : a.prod(i, k).terms)
                for (auto& [v, cv] : a.prod(j, l).terms) {
                    u64 add = c * cu % a.p * cv % a.p;
                    u32 key = u * a.dim + v;
                    u32& slot = acc[key];
                    slot = static_cast<u32>((slot + add) % a.p);
                }
        }
    }
    SparseVec out;
    for (auto& [k, v] : acc)
        if (v) out.terms.emplace_back(k, v);
    return out;
}

SparseVec lin_to_sparse(const Presentation& pres, const Lin& lin) {
    SparseVec s;
    for (const Term& t : lin) s.terms.emplace_back(monomial_index(pres, t.exps), t.coeff);
    std::sort(s.terms.begin(), s.terms.end());
    return s;
}

SparseVec tensorlin_to_sparse(const Presentation& pres, const TensorLin& lin, u32 dim) {
    SparseVec s;
    for (const TensorTerm& t : lin) {
        for (std::size_t i = 0; i < t.left.size(); ++i)
            if (t.left[i] >= pres.bounds[i] || t.right[i] >= pres.bounds[i])
                throw parse_error("hopf delta term is not in normal form");
        s.terms.emplace_back(monomial_index(pres, t.left) * dim + monomial_index(pres, t.right), t.coeff);
    }
    std::sort(s.terms.begin(), s.terms.end());
    return s;
}

SparseVec apply_linear_table(const Fp& F, const std::vector<SparseVec>& tab, const SparseVec& x) {
    std::map<u32, u32> acc;
    for (auto& [i, c] : x.terms)
        for (auto& [k, ck] : tab[i].terms) {
            u32& slot = acc[k];
            slot = static_cast<u32>((slot + static_cast<u64>(c) * ck) % F.p);
        }
    SparseVec out;
    for (auto& [k, v] : acc)
        if (v) out.terms.emplace_back(k, v);
    return out;
}

}  // namespace

AlgPtr build_algebra(const Presentation& pres) {
    pres.validate();
    const Fp F(pres.p);
    auto alg = std::make_shared<Alg>();
    Alg& a = *alg;
    a.p = pres.p;
    a.dim = static_cast<u32>(pres.dimension());
    const u32 dim = a.dim;
    const std::size_t r = pres.num_gens();

    std::vector<Exps> basis = enumerate_basis(pres);
    a.labels.reserve(dim);
    for (const Exps& e : basis) a.labels.push_back(monomial_label(pres, e));
    a.unit_index = 0;

    a.gen_basis.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        Exps e(r, 0);
        if (pres.bounds[i] == 1) {
            // generator rewrites away immediately; it has no basis monomial
            a.gen_basis[i] = UINT32_MAX;
        } else {
            e[i] = 1;
            a.gen_basis[i] = monomial_index(pres, e);
        }
    }

    // decomposition b = g_first * parent for the module-action DP
    a.radices.assign(pres.bounds.begin(), pres.bounds.end());
    a.decomp.resize(dim);
    for (u32 b = 0; b < dim; ++b) {
        if (b == 0) {
            a.decomp[b] = {UINT32_MAX, 0};
            continue;
        }
        Exps e = basis[b];
        u32 f = 0;
        while (e[f] == 0) ++f;
        Exps par = e;
        --par[f];
        a.decomp[b] = {f, monomial_index(pres, par)};
    }

    // memoized monomial * generator products
    std::vector<SparseVec> mg(static_cast<std::size_t>(dim) * r);
    parallel_for(dim, [&](std::size_t b) {
        for (std::size_t g = 0; g < r; ++g)
            mg[b * r + g] = normal_form_mono_times_gen(pres, basis[b], static_cast<u32>(g));
    });

    // table rows by depth-first walk over monomials sharing prefixes
    a.table.assign(static_cast<std::size_t>(dim) * dim, {});
    parallel_for(dim, [&](std::size_t u) {
        Vec x(dim, 0);
        x[u] = 1;
        // rec over generator slots; x = e_u * g_0^{a_0} ... g_{i-1}^{a_{i-1}}
        std::vector<Vec> stack;
        std::function<void(std::size_t, Vec, Exps&)> rec = [&](std::size_t i, Vec cur, Exps& e) {
            if (i == r) {
                a.table[u * dim + monomial_index(pres, e)] = sparse_from_dense(cur);
                return;
            }
            for (u32 ai = 0; ai < pres.bounds[i]; ++ai) {
                e[i] = static_cast<std::uint16_t>(ai);
                if (ai > 0) {
                    Vec next(dim, 0);
                    for (u32 m = 0; m < dim; ++m) {
                        if (!cur[m]) continue;
                        u64 c = cur[m];
                        for (auto& [k, ck] : mg[static_cast<std::size_t>(m) * r + i].terms)
                            next[k] = static_cast<u32>((next[k] + c * ck) % pres.p);
                    }
                    cur = std::move(next);
                }
                rec(i + 1, cur, e);
            }
            e[i] = 0;
        };
        Exps e(r, 0);
        rec(0, x, e);
    });

    // augmentation on monomials, checked multiplicative on all basis pairs
    a.epsilon.assign(dim, 0);
    for (u32 b = 0; b < dim; ++b) {
        u32 v = 1;
        for (std::size_t i = 0; i < r; ++i)
            for (u32 k = 0; k < basis[b][i]; ++k) v = F.mul(v, pres.epsilon[i]);
        a.epsilon[b] = v;
    }
    for (u32 u = 0; u < dim; ++u)
        for (u32 v = 0; v < dim; ++v)
            if (a.eval_epsilon(a.prod(u, v)) != F.mul(a.epsilon[u], a.epsilon[v]))
                throw precondition_error("augmentation does not respect the relations at " +
                                         a.labels[u] + " * " + a.labels[v]);

    if (pres.hopf) {
        Alg::HopfMaps H;
        H.delta.resize(dim);
        H.antipode.resize(dim);
        std::vector<SparseVec> gdelta(r), ganti(r);
        for (std::size_t i = 0; i < r; ++i) {
            gdelta[i] = tensorlin_to_sparse(pres, pres.hopf->delta[i], dim);
            ganti[i] = lin_to_sparse(pres, pres.hopf->antipode[i]);
        }
        H.delta[0].terms.emplace_back(0u, 1u);  // delta(1) = 1(x)1
        H.antipode[0].terms.emplace_back(0u, 1u);
        for (u32 b = 1; b < dim; ++b) {
            const BasisDecomp& d = a.decomp[b];
            H.delta[b] = tensor_mul2(a, gdelta[d.gen], H.delta[d.parent]);
            H.antipode[b] = a.mul(H.antipode[d.parent], ganti[d.gen]);  // S is an anti-homomorphism
        }
        // delta and S must respect every defining relation
        auto delta_of_lin = [&](const Lin& lin) {
            SparseVec s;
            for (const Term& t : lin)
                s = sparse_add(F, s, sparse_scale(F, H.delta[monomial_index(pres, t.exps)], t.coeff));
            return s;
        };
        auto anti_of_lin = [&](const Lin& lin) {
            SparseVec s;
            for (const Term& t : lin)
                s = sparse_add(F, s, sparse_scale(F, H.antipode[monomial_index(pres, t.exps)], t.coeff));
            return s;
        };
        for (std::size_t hi = 0; hi < r; ++hi)
            for (std::size_t lo = 0; lo < hi; ++lo) {
                if (!(tensor_mul2(a, gdelta[hi], gdelta[lo]) == delta_of_lin(pres.swap_rhs[hi][lo])))
                    throw precondition_error("hopf data: delta violates the swap relation " +
                                             pres.gens[hi] + "*" + pres.gens[lo]);
                SparseVec lhs = a.mul(ganti[lo], ganti[hi]);
                if (!(lhs == anti_of_lin(pres.swap_rhs[hi][lo])))
                    throw precondition_error("hopf data: antipode violates the swap relation " +
                                             pres.gens[hi] + "*" + pres.gens[lo]);
            }
        for (std::size_t i = 0; i < r; ++i) {
            SparseVec dpow;
            dpow.terms.emplace_back(0u, 1u);
            for (u32 k = 0; k < pres.bounds[i]; ++k) dpow = tensor_mul2(a, dpow, gdelta[i]);
            if (!(dpow == delta_of_lin(pres.power_rhs[i])))
                throw precondition_error("hopf data: delta violates the power relation of " + pres.gens[i]);
            SparseVec spow;
            spow.terms.emplace_back(a.unit_index, 1u);
            for (u32 k = 0; k < pres.bounds[i]; ++k) spow = a.mul(ganti[i], spow);
            if (!(spow == anti_of_lin(pres.power_rhs[i])))
                throw precondition_error("hopf data: antipode violates the power relation of " + pres.gens[i]);
        }
        a.hopf = std::move(H);
    }
    return alg;
}

AlgPtr opposite(const AlgPtr& src) {
    const Alg& a = *src;
    auto out = std::make_shared<Alg>();
    Alg& o = *out;
    o.p = a.p;
    o.dim = a.dim;
    o.labels = a.labels;
    o.unit_index = a.unit_index;
    o.epsilon = a.epsilon;
    o.gen_basis = a.gen_basis;
    o.symform = a.symform;
    o.table.resize(a.table.size());
    for (u32 u = 0; u < a.dim; ++u)
        for (u32 v = 0; v < a.dim; ++v) o.table[static_cast<std::size_t>(u) * a.dim + v] = a.prod(v, u);
    // b = g_last * parent in the opposite product (g_last appended on the
    // right in the original word, so the product needs no rewriting)
    o.radices = a.radices;
    if (!a.decomp.empty()) {
        const std::size_t r = a.radices.size();
        std::vector<u32> strides(r, 1);
        for (std::size_t i = r; i-- > 1;) strides[i - 1] = strides[i] * a.radices[i];
        o.decomp.resize(a.dim);
        for (u32 b = 0; b < a.dim; ++b) {
            if (b == a.unit_index) {
                o.decomp[b] = {UINT32_MAX, 0};
                continue;
            }
            u32 rem = b;
            u32 last = UINT32_MAX;
            for (std::size_t i = 0; i < r; ++i) {
                u32 digit = rem / strides[i];
                rem %= strides[i];
                if (digit > 0) last = static_cast<u32>(i);
            }
            o.decomp[b] = {last, b - strides[last]};
        }
    }
    return out;
}

AlgPtr tensor(const AlgPtr& pa, const AlgPtr& pb) {
    const Alg& a = *pa;
    const Alg& b = *pb;
    if (a.p != b.p) throw precondition_error("tensor factors must share characteristic");
    u64 dim = static_cast<u64>(a.dim) * b.dim;
    if (dim > 20000) throw precondition_error("tensor algebra too large to tabulate");
    Fp F(a.p);
    auto out = std::make_shared<Alg>();
    Alg& t = *out;
    t.p = a.p;
    t.dim = static_cast<u32>(dim);
    t.unit_index = a.unit_index * b.dim + b.unit_index;
    t.labels.reserve(dim);
    for (u32 i = 0; i < a.dim; ++i)
        for (u32 j = 0; j < b.dim; ++j) t.labels.push_back(a.labels[i] + "(x)" + b.labels[j]);
    t.epsilon.resize(dim);
    for (u32 i = 0; i < a.dim; ++i)
        for (u32 j = 0; j < b.dim; ++j) t.epsilon[i * b.dim + j] = F.mul(a.epsilon[i], b.epsilon[j]);
    t.table.resize(dim * dim);
    parallel_for(a.dim, [&](std::size_t i) {
        for (u32 j = 0; j < b.dim; ++j)
            for (u32 k = 0; k < a.dim; ++k)
                for (u32 l = 0; l < b.dim; ++l) {
                    SparseVec s;
                    for (auto& [u, cu] : a.prod(static_cast<u32>(i), k).terms)
                        for (auto& [v, cv] : b.prod(j, l).terms)
                            s.terms.emplace_back(u * b.dim + v, F.mul(cu, cv));
                    std::sort(s.terms.begin(), s.terms.end());
                    t.table[(static_cast<std::size_t>(i) * b.dim + j) * dim + (static_cast<std::size_t>(k) * b.dim + l)] =
                        std::move(s);
                }
    });
    // module support intentionally omitted; tensor algebras serve sanity runs
    return out;
}

Mat gram_matrix(const Alg& a, const Vec& t) {
    Mat g(a.dim, a.dim, a.p);
    for (u32 u = 0; u < a.dim; ++u)
        for (u32 v = 0; v < a.dim; ++v) {
            u64 acc = 0;
            for (auto& [k, ck] : a.prod(u, v).terms) acc += static_cast<u64>(ck) * t[k];
            g.at(u, v) = static_cast<u32>(acc % a.p);
        }
    return g;
}

std::optional<Vec> symmetrizing_form(const Alg& a) {
    const Fp F(a.p);
    // span of commutators [w, g] over basis w and generators g; t must kill it
    Echelon comm(a.dim, a.p);
    for (u32 g : a.gen_basis) {
        if (g == UINT32_MAX) continue;
        for (u32 w = 0; w < a.dim; ++w) {
            Vec v(a.dim, 0);
            for (auto& [k, c] : a.prod(w, g).terms) v[k] = F.add(v[k], c);
            for (auto& [k, c] : a.prod(g, w).terms) v[k] = F.sub(v[k], c);
            comm.insert(std::move(v));
        }
    }
    Mat sol = kernel_basis_mat(comm.basis().rows() ? comm.basis() : Mat(0, a.dim, a.p));
    if (sol.rows() == 0) return std::nullopt;
    auto rank_of = [&](const Vec& t) { return rank(gram_matrix(a, t)); };
    Vec best = sol.row(0);
    std::size_t best_rank = rank_of(best);
    for (std::size_t i = 1; i < sol.rows() && best_rank < a.dim; ++i) {
        Vec t = sol.row(i);
        std::size_t rk = rank_of(t);
        if (rk > best_rank) {
            best = std::move(t);
            best_rank = rk;
        }
    }
    bool improved = true;
    while (best_rank < a.dim && improved) {
        improved = false;
        for (std::size_t i = 0; i < sol.rows() && !improved; ++i)
            for (u32 lam = 1; lam < a.p && !improved; ++lam) {
                Vec t(a.dim);
                for (u32 k = 0; k < a.dim; ++k)
                    t[k] = F.add(best[k], F.mul(lam, sol.at(i, k)));
                std::size_t rk = rank_of(t);
                if (rk > best_rank) {
                    best = std::move(t);
                    best_rank = rk;
                    improved = true;
                }
            }
    }
    if (best_rank < a.dim) return std::nullopt;
    return best;
}

AlgPtr with_symmetrizing_form(const AlgPtr& src) {
    if (src->symform) return src;
    auto t = symmetrizing_form(*src);
    if (!t) throw not_symmetric_error("no nondegenerate symmetrizing form found");
    auto out = std::make_shared<Alg>(*src);
    out->symform = std::move(*t);
    return out;
}

CheckReport verify_algebra(const Alg& a, bool exhaustive, u64 seed, std::size_t samples) {
    CheckReport rep;
    const Fp F(a.p);
    // unit laws
    for (u32 v = 0; v < a.dim; ++v) {
        SparseVec ev;
        ev.terms.emplace_back(v, 1);
        if (!(a.prod(a.unit_index, v) == ev) || !(a.prod(v, a.unit_index) == ev))
            rep.fail("unit law fails at basis " + a.labels[v]);
    }
    // augmentation multiplicativity
    for (u32 u = 0; u < a.dim; ++u)
        for (u32 v = 0; v < a.dim; ++v)
            if (a.eval_epsilon(a.prod(u, v)) != F.mul(a.epsilon[u], a.epsilon[v]))
                rep.fail("epsilon not multiplicative at " + a.labels[u] + " * " + a.labels[v]);
    auto assoc_check = [&](u32 u, u32 v, u32 w) {
        SparseVec left = a.mul(a.prod(u, v), SparseVec{{{w, 1}}});
        SparseVec right = a.mul_basis(u, a.prod(v, w));
        if (!(left == right))
            rep.fail("associativity fails at (" + a.labels[u] + ", " + a.labels[v] + ", " + a.labels[w] + ")");
    };
    if (exhaustive || a.dim <= 64) {
        for (u32 u = 0; u < a.dim; ++u)
            for (u32 v = 0; v < a.dim; ++v)
                for (u32 w = 0; w < a.dim; ++w) assoc_check(u, v, w);
        rep.checked = static_cast<std::size_t>(a.dim) * a.dim * a.dim;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<u32> pick(0, a.dim - 1);
        for (std::size_t s = 0; s < samples; ++s) assoc_check(pick(rng), pick(rng), pick(rng));
        rep.checked = samples;
    }
    return rep;
}

CheckReport check_hopf(const Alg& a, bool exhaustive, u64 seed) {
    CheckReport rep;
    if (!a.hopf) throw hopf_absent_error("algebra carries no Hopf data");
    const Fp F(a.p);
    const u32 dim = a.dim;
    const auto& H = *a.hopf;

    // coassociativity in A(x)A(x)A via sparse triple-index accumulation
    for (u32 b = 0; b < dim; ++b) {
        std::map<u64, u32> lhs, rhs;
        for (auto& [lr, c] : H.delta[b].terms) {
            u32 l = lr / dim, rr = lr % dim;
            for (auto& [uv, c2] : H.delta[l].terms) {
                u64 key = (static_cast<u64>(uv)) * dim + rr;
                u32& s = lhs[key];
                s = static_cast<u32>((s + static_cast<u64>(c) * c2) % a.p);
            }
            for (auto& [uv, c2] : H.delta[rr].terms) {
                u64 key = (static_cast<u64>(l) * dim + uv / dim) * dim + uv % dim;
                u32& s = rhs[key];
                s = static_cast<u32>((s + static_cast<u64>(c) * c2) % a.p);
            }
        }
        auto strip = [](std::map<u64, u32>& m) {
            for (auto it = m.begin(); it != m.end();)
                it = it->second == 0 ? m.erase(it) : std::next(it);
        };
        strip(lhs);
        strip(rhs);
        if (lhs != rhs) rep.fail("coassociativity fails at " + a.labels[b]);
    }
    // counit: (eps (x) id) delta = id = (id (x) eps) delta
    for (u32 b = 0; b < dim; ++b) {
        Vec left(dim, 0), right(dim, 0);
        for (auto& [lr, c] : H.delta[b].terms) {
            u32 l = lr / dim, r = lr % dim;
            left[r] = F.add(left[r], F.mul(c, a.epsilon[l]));
            right[l] = F.add(right[l], F.mul(c, a.epsilon[r]));
        }
        Vec expect(dim, 0);
        expect[b] = 1;
        if (left != expect || right != expect) rep.fail("counit law fails at " + a.labels[b]);
    }
    // antipode: m(S (x) id) delta = eps * 1 = m(id (x) S) delta
    for (u32 b = 0; b < dim; ++b) {
        Vec accL(dim, 0), accR(dim, 0);
        for (auto& [lr, c] : H.delta[b].terms) {
            u32 l = lr / dim, r = lr % dim;
            SparseVec sl = a.mul(H.antipode[l], SparseVec{{{r, 1}}});
            for (auto& [k, ck] : sl.terms) accL[k] = static_cast<u32>((accL[k] + static_cast<u64>(c) * ck) % a.p);
            SparseVec sr = a.mul_basis(l, H.antipode[r]);
            for (auto& [k, ck] : sr.terms) accR[k] = static_cast<u32>((accR[k] + static_cast<u64>(c) * ck) % a.p);
        }
        Vec expect(dim, 0);
        expect[a.unit_index] = a.epsilon[b];
        if (accL != expect || accR != expect) rep.fail("antipode identity fails at " + a.labels[b]);
    }
    // multiplicativity of delta
    auto delta_of = [&](const SparseVec& x) {
        SparseVec s;
        for (auto& [i, c] : x.terms) s = sparse_add(F, s, sparse_scale(F, H.delta[i], c));
        return s;
    };
    auto mult_check = [&](u32 u, u32 v) {
        SparseVec lhs = tensor_mul2(a, H.delta[u], H.delta[v]);
        SparseVec rhs = delta_of(a.prod(u, v));
        if (!(lhs == rhs)) rep.fail("delta not multiplicative at " + a.labels[u] + " * " + a.labels[v]);
    };
    if (exhaustive || dim <= 64) {
        for (u32 u = 0; u < dim; ++u)
            for (u32 v = 0; v < dim; ++v) mult_check(u, v);
        rep.checked = static_cast<std::size_t>(dim) * dim;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<u32> pick(0, dim - 1);
        for (std::size_t s = 0; s < 2000; ++s) mult_check(pick(rng), pick(rng));
        rep.checked = 2000;
    }
    return rep;
}

}  // namespace tatekit
