#include "tatekit/structure.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "tatekit/errors.hpp"
#include "tatekit/parallel.hpp"
#include "tatekit/polyfp.hpp"

namespace tatekit {

namespace {

// left-multiplication matrix of a dense element in the regular representation
Mat left_mult_matrix(const Alg& a, const Vec& x) {
    Mat m(a.dim, a.dim, a.p);
    for (u32 w = 0; w < a.dim; ++w) {
        if (!x[w]) continue;
        u64 c = x[w];
        for (u32 j = 0; j < a.dim; ++j)
            for (auto& [k, ck] : a.prod(w, j).terms)
                m.at(k, j) = static_cast<u32>((m.at(k, j) + c * ck) % a.p);
    }
    return m;
}

Vec mul_dense(const Alg& a, const Vec& x, const Vec& y) {
    Vec acc(a.dim, 0);
    for (u32 i = 0; i < a.dim; ++i) {
        if (!x[i]) continue;
        u64 ci = x[i];
        for (u32 j = 0; j < a.dim; ++j) {
            if (!y[j]) continue;
            u64 c = ci * y[j] % a.p;
            for (auto& [k, ck] : a.prod(i, j).terms)
                acc[k] = static_cast<u32>((acc[k] + c * ck) % a.p);
        }
    }
    return acc;
}

// minimal polynomial of x inside the subalgebra it generates (Krylov)
Poly min_poly(const Alg& a, const Vec& x) {
    Echelon ech(a.dim, a.p);
    std::vector<Vec> powers;
    Vec cur = a.unit_vec();
    for (;;) {
        powers.push_back(cur);
        if (!ech.insert(cur)) break;
        cur = mul_dense(a, cur, x);
    }
    const std::size_t d = powers.size() - 1;
    Mat m(a.dim, d, a.p);
    for (std::size_t j = 0; j < d; ++j) m.set_col(j, powers[j]);
    auto sol = solve(m, powers[d]);
    if (!sol) throw internal_check_error("minimal polynomial solve failed");
    Fp F(a.p);
    Poly out(d + 1, 0);
    out[d] = 1;
    for (std::size_t j = 0; j < d; ++j) out[j] = F.neg((*sol)[j]);
    return out;
}

Vec eval_poly_elem(const Alg& a, const Poly& f, const Vec& x) {
    Vec acc(a.dim, 0);
    Fp F(a.p);
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = mul_dense(a, acc, x);
        if (f[i]) acc[a.unit_index] = F.add(acc[a.unit_index], f[i]);
    }
    return acc;
}

}  // namespace

Subspace radical_subspace(const Alg& a) {
    const u32 n = a.dim;
    const Fp F(a.p);
    if (n == 0) return Subspace(0, a.p);
    Vec tau(n, 0);  // tr(L_{e_w})
    for (u32 w = 0; w < n; ++w) {
        u64 acc = 0;
        for (u32 j = 0; j < n; ++j)
            for (auto& [k, ck] : a.prod(w, j).terms)
                if (k == j) acc += ck;
        tau[w] = F.reduce(acc);
    }
    // stage 0: kernel of the bilinear trace form tr(L_{e_w e_j})
    Mat bform(n, n, a.p);
    for (u32 w = 0; w < n; ++w)
        for (u32 j = 0; j < n; ++j) {
            u64 acc = 0;
            for (auto& [k, ck] : a.prod(w, j).terms) acc += static_cast<u64>(ck) * tau[k];
            bform.at(w, j) = F.reduce(acc);
        }
    Mat basis = Mat::identity(n, a.p);
    {
        Mat cons = basis.mul(bform).mul(basis.transpose());
        Mat ker = kernel_basis_mat(cons.transpose());
        basis = ker.mul(basis);
    }
    // stages i >= 1: char-poly coefficient functionals c_{p^i}, plain kernels
    // over F_p on the shrinking chain
    for (u64 pi = a.p; pi <= n && basis.rows() > 0; pi *= a.p) {
        const std::size_t k = basis.rows();
        std::vector<Vec> rows(k);
        for (std::size_t s = 0; s < k; ++s) rows[s] = basis.row(s);
        Mat cons(k, k, a.p);
        parallel_for(k * k, [&](std::size_t idx) {
            std::size_t s = idx / k, t = idx % k;
            Vec prod = mul_dense(a, rows[s], rows[t]);
            Poly cp = charpoly(left_mult_matrix(a, prod));
            cons.at(t, s) = cp[n - pi];  // coefficient of t^{n - p^i}
        });
        Mat ker = kernel_basis_mat(cons);
        basis = ker.mul(basis);
    }
    return Subspace::from_rows(basis);
}

QuotientAlg quotient_algebra(const AlgPtr& ap, const Subspace& ideal) {
    const Alg& a = *ap;
    const u32 n = a.dim;
    Echelon ech(n, a.p);
    ech.insert_rows(ideal.basis());
    std::vector<Vec> reps;
    Vec unit = a.unit_vec();
    if (!ech.insert(unit)) throw error("quotient: unit lies in the ideal");
    reps.push_back(unit);
    for (u32 j = 0; j < n; ++j) {
        Vec e(n, 0);
        e[j] = 1;
        if (ech.insert(e)) reps.push_back(std::move(e));
    }
    const u32 k = static_cast<u32>(reps.size());
    QuotientAlg q;
    q.section = Mat(n, k, a.p);
    for (u32 j = 0; j < k; ++j) q.section.set_col(j, reps[j]);
    Mat idb = ideal.basis().transpose();
    Mat stacked = idb.cols() ? idb.hstack(q.section) : q.section;
    auto sol = solve_many(stacked, Mat::identity(n, a.p));
    if (!sol) throw internal_check_error("quotient: basis assembly failed");
    q.proj = Mat(k, n, a.p);
    for (u32 i = 0; i < k; ++i)
        for (u32 j = 0; j < n; ++j) q.proj.at(i, j) = sol->at(idb.cols() + i, j);

    auto alg = std::make_shared<Alg>();
    alg->p = a.p;
    alg->dim = k;
    alg->unit_index = 0;
    alg->labels.resize(k);
    for (u32 i = 0; i < k; ++i) alg->labels[i] = "q" + std::to_string(i);
    alg->epsilon.assign(k, 0);  // structure runs only; no augmentation carried
    alg->table.resize(static_cast<std::size_t>(k) * k);
    for (u32 u = 0; u < k; ++u)
        for (u32 v = 0; v < k; ++v) {
            Vec prod = mul_dense(a, reps[u], reps[v]);
            alg->table[static_cast<std::size_t>(u) * k + v] = sparse_from_dense(q.proj.mul_vec(prod));
        }
    q.alg = std::move(alg);
    return q;
}

Engine::Engine(AlgPtr a) : a_(std::move(a)) {
    if (!a_->has_modules()) throw error("engine needs an algebra with module support");
}

void Engine::ensure_radical() {
    if (rad_) return;
    rad_ = radical_subspace(*a_);
    Mat b = rad_->basis();
    rad_basis_.clear();
    for (std::size_t i = 0; i < b.rows(); ++i) rad_basis_.push_back(b.row(i));
}

const Subspace& Engine::radical() {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_radical();
    return *rad_;
}

RadicalCert Engine::certify_radical() {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_radical();
    if (rad_cert_) return *rad_cert_;
    const Alg& a = *a_;
    RadicalCert cert;
    cert.is_ideal = true;
    for (const Vec& r : rad_basis_) {
        for (u32 g : a.gen_basis) {
            if (g == UINT32_MAX) continue;
            SparseVec rs = sparse_from_dense(r);
            Vec lg = sparse_to_dense(a.mul_basis(g, rs), a.dim);
            SparseVec gsv;
            gsv.terms.emplace_back(g, 1u);
            Vec rg = sparse_to_dense(a.mul(rs, gsv), a.dim);
            if (!rad_->contains(lg) || !rad_->contains(rg)) cert.is_ideal = false;
        }
    }
    {
        Subspace cur = *rad_;
        cert.nilpotency_index = 1;
        while (cur.dim() > 0 && cert.nilpotency_index <= a.dim + 1) {
            Subspace next(a.dim, a.p);
            Mat cb = cur.basis();
            for (std::size_t i = 0; i < cb.rows(); ++i)
                for (const Vec& r : rad_basis_) next.insert(mul_dense(a, cb.row(i), r));
            if (next.dim() >= cur.dim() && next.dim() != 0) break;
            cur = std::move(next);
            ++cert.nilpotency_index;
        }
        cert.is_nilpotent = cur.dim() == 0;
    }
    if (rad_->dim() == 0) {
        cert.quotient_semisimple = true;
    } else {
        QuotientAlg q = quotient_algebra(a_, *rad_);
        cert.quotient_semisimple = radical_subspace(*q.alg).dim() == 0;
    }
    rad_cert_ = cert;
    return cert;
}

void Engine::ensure_idempotents() {
    if (!idems_.empty()) return;
    ensure_radical();
    const Alg& a = *a_;
    const Fp F(a.p);
    if (a.p <= 3) throw unsupported_field_error("idempotent lifting needs p > 3");

    QuotientAlg q;
    AlgPtr S;
    const bool trivial_rad = rad_->dim() == 0;
    if (trivial_rad) {
        S = a_;
    } else {
        q = quotient_algebra(a_, *rad_);
        S = q.alg;
    }
    const u32 k = S->dim;

    // center of the semisimple quotient
    Subspace center(k, a.p);
    {
        Mat cons(static_cast<std::size_t>(k) * k, k, a.p);
        std::size_t row = 0;
        for (u32 t = 0; t < k; ++t)
            for (u32 w = 0; w < k; ++w) {
                for (u32 s = 0; s < k; ++s) {
                    u32 c = 0;
                    for (auto& [kk, ck] : S->prod(s, t).terms)
                        if (kk == w) c = F.add(c, ck);
                    for (auto& [kk, ck] : S->prod(t, s).terms)
                        if (kk == w) c = F.sub(c, ck);
                    cons.at(row, s) = c;
                }
                ++row;
            }
        center = Subspace::from_rows(kernel_basis_mat(cons));
    }

    // splitness over F_p: Frobenius fixed points must fill the center
    Mat zb = center.basis();
    const std::size_t zd = zb.rows();
    {
        Mat diff(k, zd, a.p);
        for (std::size_t j = 0; j < zd; ++j) {
            Vec z = zb.row(j);
            Vec acc = z;
            for (u32 e = 1; e < a.p; ++e) acc = mul_dense(*S, acc, z);
            for (u32 i = 0; i < k; ++i) diff.at(i, j) = F.sub(acc[i], z[i]);
        }
        if (kernel_basis_mat(diff).rows() != zd)
            throw unsupported_field_error("semisimple quotient does not split over F_p (enlarge p)");
    }

    // refine the center into its primitive idempotents: eigen-split the
    // multiplication by each basis element (split + commutative, so every
    // operator is diagonalizable with eigenvalues in F_p)
    std::vector<std::vector<Vec>> components;
    {
        std::vector<Vec> all;
        for (std::size_t i = 0; i < zd; ++i) all.push_back(zb.row(i));
        components.push_back(std::move(all));
        for (std::size_t gi = 0; gi < zd; ++gi) {
            Vec g = zb.row(gi);
            Mat lmg = left_mult_matrix(*S, g);
            std::vector<std::vector<Vec>> next;
            for (auto& comp : components) {
                if (comp.size() == 1) {
                    next.push_back(comp);
                    continue;
                }
                Mat cb(comp.size(), k, a.p);
                for (std::size_t i = 0; i < comp.size(); ++i) cb.set_row(i, comp[i]);
                RrefResult rr = rref(cb);
                Mat op(comp.size(), comp.size(), a.p);
                for (std::size_t j = 0; j < comp.size(); ++j) {
                    Vec v = lmg.mul_vec(rr.mat.row(j));
                    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
                        u32 c = v[rr.pivots[i]];
                        op.at(i, j) = c;
                        if (!c) continue;
                        u64 cn = a.p - c;
                        for (u32 t = 0; t < k; ++t)
                            v[t] = static_cast<u32>((v[t] + cn * rr.mat.at(i, t)) % a.p);
                    }
                    for (u32 x : v)
                        if (x) throw internal_check_error("center not closed under multiplication");
                }
                std::size_t found = 0;
                for (u32 lam = 0; lam < a.p && found < comp.size(); ++lam) {
                    Mat shifted = op.sub(Mat::identity(comp.size(), a.p).scale(lam));
                    Mat kerm = kernel_basis_mat(shifted);
                    if (kerm.rows() == 0) continue;
                    std::vector<Vec> eig;
                    for (std::size_t i = 0; i < kerm.rows(); ++i) {
                        Vec v(k, 0);
                        for (std::size_t s = 0; s < comp.size(); ++s) {
                            if (!kerm.at(i, s)) continue;
                            u64 c = kerm.at(i, s);
                            for (u32 t = 0; t < k; ++t)
                                v[t] = static_cast<u32>((v[t] + c * rr.mat.at(s, t)) % a.p);
                        }
                        eig.push_back(std::move(v));
                    }
                    found += eig.size();
                    next.push_back(std::move(eig));
                }
                if (found != comp.size())
                    throw internal_check_error("center multiplication operator not diagonalizable");
            }
            components = std::move(next);
        }
    }
    std::vector<Vec> central;
    for (auto& comp : components) {
        if (comp.size() != 1) throw internal_check_error("center splitting incomplete");
        const Vec& u = comp[0];
        Vec u2 = mul_dense(*S, u, u);
        u32 gamma = 0;
        for (u32 i = 0; i < k; ++i)
            if (u[i]) {
                gamma = F.mul(u2[i], F.inv(u[i]));
                break;
            }
        if (!gamma) throw internal_check_error("central component is nilpotent");
        Vec e(k);
        u32 ginv = F.inv(gamma);
        for (u32 i = 0; i < k; ++i) e[i] = F.mul(u[i], ginv);
        if (mul_dense(*S, e, e) != e) throw internal_check_error("central idempotent not idempotent");
        central.push_back(std::move(e));
    }
    std::sort(central.begin(), central.end());

    // split each block into primitive idempotents: random corner elements,
    // eigenvalue projections from their minimal polynomials
    std::mt19937_64 rng(0);
    std::vector<Vec> prim_s;
    std::vector<u32> prim_block;
    std::function<void(const Vec&, u32)> split_corner = [&](const Vec& e, u32 block) {
        Subspace corner(k, a.p);
        for (u32 j = 0; j < k; ++j) {
            Vec ej(k, 0);
            ej[j] = 1;
            corner.insert(mul_dense(*S, mul_dense(*S, e, ej), e));
        }
        if (corner.dim() == 1) {
            prim_s.push_back(e);
            prim_block.push_back(block);
            return;
        }
        Mat cb = corner.basis();
        std::uniform_int_distribution<u32> coef(0, a.p - 1);
        for (int attempt = 0; attempt < 400; ++attempt) {
            Vec c(k, 0);
            for (std::size_t i = 0; i < cb.rows(); ++i) {
                u32 lam = coef(rng);
                if (!lam) continue;
                for (u32 t = 0; t < k; ++t)
                    c[t] = static_cast<u32>((c[t] + static_cast<u64>(lam) * cb.at(i, t)) % a.p);
            }
            Poly m = min_poly(*S, c);
            for (u32 lam = 0; lam < a.p; ++lam) {
                if (poly_eval(F, m, lam) != 0) continue;
                auto [quot, rem] = poly_divmod(F, m, Poly{F.neg(lam), 1});
                if (!rem.empty()) throw internal_check_error("root division failed");
                if (poly_eval(F, quot, lam) == 0) continue;  // repeated root
                Vec u = eval_poly_elem(*S, quot, c);
                u32 scale = F.inv(poly_eval(F, quot, lam));
                for (u32 t = 0; t < k; ++t) u[t] = F.mul(u[t], scale);
                Vec e1 = mul_dense(*S, mul_dense(*S, e, u), e);
                if (mul_dense(*S, e1, e1) != e1) continue;
                bool zero = true, whole = true;
                for (u32 t = 0; t < k; ++t) {
                    if (e1[t]) zero = false;
                    if (e1[t] != e[t]) whole = false;
                }
                if (zero || whole) continue;
                Vec e2(k);
                for (u32 t = 0; t < k; ++t) e2[t] = F.sub(e[t], e1[t]);
                split_corner(e1, block);
                split_corner(e2, block);
                return;
            }
        }
        throw unsupported_field_error("failed to split a matrix block over F_p");
    };
    for (u32 b = 0; b < central.size(); ++b) split_corner(central[b], b);

    // lift through the radical, orthogonalizing inside shrinking corners
    std::vector<Vec> lifted;
    Vec rest = a.unit_vec();
    const u32 n = a.dim;
    for (std::size_t i = 0; i < prim_s.size(); ++i) {
        Vec f;
        if (i + 1 == prim_s.size()) {
            f = rest;
        } else {
            Vec pre = trivial_rad ? prim_s[i] : q.section.mul_vec(prim_s[i]);
            f = mul_dense(a, mul_dense(a, rest, pre), rest);
            for (int it = 0; it < 64; ++it) {
                Vec f2 = mul_dense(a, f, f);
                if (f2 == f) break;
                Vec f3 = mul_dense(a, f2, f);
                for (u32 t = 0; t < n; ++t)
                    f[t] = F.sub(F.mul(3 % a.p, f2[t]), F.mul(2 % a.p, f3[t]));
            }
        }
        if (mul_dense(a, f, f) != f) throw internal_check_error("idempotent lift did not converge");
        lifted.push_back(f);
        for (u32 t = 0; t < n; ++t) rest[t] = F.sub(rest[t], f[t]);
    }
    {
        Vec sum(n, 0);
        for (const Vec& e : lifted)
            for (u32 t = 0; t < n; ++t) sum[t] = F.add(sum[t], e[t]);
        if (sum != a.unit_vec()) throw internal_check_error("idempotents do not sum to 1");
        for (std::size_t i = 0; i < lifted.size(); ++i)
            for (std::size_t j = 0; j < lifted.size(); ++j) {
                if (i == j) continue;
                for (u32 t : mul_dense(a, lifted[i], lifted[j]))
                    if (t) throw internal_check_error("lifted idempotents not orthogonal");
            }
    }
    idems_ = std::move(lifted);
    idem_block_ = std::move(prim_block);
    block_reps_.assign(central.size(), UINT32_MAX);
    for (u32 i = 0; i < idems_.size(); ++i)
        if (block_reps_[idem_block_[i]] == UINT32_MAX) block_reps_[idem_block_[i]] = i;
}

const std::vector<Vec>& Engine::idempotents() {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_idempotents();
    return idems_;
}

const std::vector<u32>& Engine::idempotent_block() {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_idempotents();
    return idem_block_;
}

std::size_t Engine::num_blocks() {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_idempotents();
    return block_reps_.size();
}

u32 Engine::block_rep(u32 block) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_idempotents();
    return block_reps_[block];
}

void Engine::ensure_projectives() {
    ensure_idempotents();
    if (!proj_mods_.empty()) return;
    const Alg& a = *a_;
    if (!regular_) regular_ = Mod::regular(a_);
    proj_mods_.reserve(idems_.size());
    proj_bases_.reserve(idems_.size());
    proj_rads_.reserve(idems_.size());
    for (const Vec& e : idems_) {
        SparseVec es = sparse_from_dense(e);
        Subspace ae(a.dim, a.p);
        for (u32 b = 0; b < a.dim; ++b)
            ae.insert(sparse_to_dense(a.mul_basis(b, es), a.dim));
        auto [mod, incl] = submodule(*regular_, ae);
        (void)incl;
        proj_mods_.push_back(mod);
        Mat basis = ae.basis();
        proj_bases_.push_back(basis);
        // rad(A e) in local coordinates
        RrefResult rr = rref(basis);
        Echelon local(basis.rows(), a.p);
        for (const Vec& r : rad_basis_) {
            Vec re = mul_dense(a, r, e);
            Vec coords(basis.rows(), 0);
            for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
                u32 c = re[rr.pivots[i]];
                coords[i] = c;
                if (!c) continue;
                u64 cn = a.p - c;
                for (u32 t = 0; t < a.dim; ++t)
                    re[t] = static_cast<u32>((re[t] + cn * rr.mat.at(i, t)) % a.p);
            }
            for (u32 x : re)
                if (x) throw internal_check_error("rad(Ae) escaped Ae");
            local.insert(std::move(coords));
        }
        auto sub = std::make_unique<Subspace>(Subspace::from_rows(local.basis()));
        proj_rads_.push_back(std::move(sub));
    }
    // simples per block: top of the representative projective
    simple_mods_.clear();
    simple_dims_.clear();
    for (u32 blk = 0; blk < block_reps_.size(); ++blk) {
        u32 rep = block_reps_[blk];
        const Mod& P = proj_mods_[rep];
        auto [simple, proj] = quotient_module(P, *proj_rads_[rep]);
        (void)proj;
        simple_mods_.push_back(simple);
        simple_dims_.push_back(simple.dim());
    }
}

Mod Engine::indecomposable_projective(u32 idem_index) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_projectives();
    return proj_mods_[idem_index];
}

const Mat& Engine::projective_basis(u32 idem_index) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_projectives();
    return proj_bases_[idem_index];
}

const Subspace& Engine::projective_radical(u32 idem_index) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_projectives();
    return *proj_rads_[idem_index];
}

Mod Engine::simple_module(u32 block) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_projectives();
    return simple_mods_[block];
}

u32 Engine::simple_dim(u32 block) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_projectives();
    return simple_dims_[block];
}

Mod Engine::trivial() {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    if (!trivial_) trivial_ = Mod::trivial(a_);
    return *trivial_;
}

Mod Engine::regular() {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    if (!regular_) regular_ = Mod::regular(a_);
    return *regular_;
}

Subspace Engine::radical_submodule(const Mod& m) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    ensure_radical();
    Subspace out(m.dim(), p());
    if (m.dim() == 0 || rad_basis_.empty()) return out;
    const u32 n = alg().dim;
    const Fp F(p());
    std::vector<std::vector<Vec>> orbits(m.dim());
    parallel_for(m.dim(), [&](std::size_t i) {
        Vec e(m.dim(), 0);
        e[i] = 1;
        orbits[i] = m.orbit(e);
    });
    for (u32 i = 0; i < m.dim(); ++i) {
        for (const Vec& r : rad_basis_) {
            Vec w(m.dim(), 0);
            for (u32 b = 0; b < n; ++b) {
                if (!r[b]) continue;
                u64 c = r[b];
                const Vec& ob = orbits[i][b];
                for (u32 t = 0; t < m.dim(); ++t)
                    w[t] = static_cast<u32>((w[t] + c * ob[t]) % F.p);
            }
            out.insert(std::move(w));
        }
        orbits[i].clear();
        orbits[i].shrink_to_fit();
    }
    return out;
}

Cover Engine::build_cover(const Mod& m) {
    const Alg& a = alg();
    const Fp F(p());
    ensure_projectives();
    Cover cov;
    if (m.dim() == 0) {
        cov.P = Mod::zero(a_);
        cov.pi = ModMap{cov.P, m, Mat(0, 0, p())};
        cov.kernel = cov.P;
        cov.incl = identity_map(cov.P);
        cov.section = Mat(0, 0, p());
        return cov;
    }
    Subspace radm = radical_submodule(m);
    Quotient top = Quotient::by(radm);
    const std::size_t topdim = top.proj.rows();

    // generators grouped by block: image of each representative idempotent
    // on the top, lifted into e * M
    std::vector<Mod> parts;
    std::vector<Vec> lifts;
    for (u32 blk = 0; blk < block_reps_.size(); ++blk) {
        u32 rep = block_reps_[blk];
        SparseVec es = sparse_from_dense(idems_[rep]);
        // top image of the idempotent
        Echelon img(topdim, p());
        std::vector<Vec> img_lift;  // lift in M of each new image vector
        for (std::size_t j = 0; j < topdim; ++j) {
            Vec v = top.section.col(j);
            Vec u = m.apply_elem(es, v);
            Vec ti = top.proj.mul_vec(u);
            if (img.insert(ti)) {
                parts.push_back(proj_mods_[rep]);
                lifts.push_back(u);
                cov.summand_idem.push_back(rep);
            }
        }
    }
    if (parts.empty()) throw internal_check_error("cover: module has empty top");

    DirectSum ds = direct_sum(parts);
    cov.P = ds.sum;
    // pi columns: local basis vector v of A e (in A coords) acting on the lift
    Mat pim(m.dim(), cov.P.dim(), p());
    u32 off = 0;
    cov.summand_offset.resize(parts.size());
    for (std::size_t t = 0; t < parts.size(); ++t) {
        cov.summand_offset[t] = off;
        const Mat& basis = proj_bases_[cov.summand_idem[t]];
        std::vector<Vec> orb = m.orbit(lifts[t]);
        for (std::size_t jrow = 0; jrow < basis.rows(); ++jrow) {
            Vec col(m.dim(), 0);
            for (u32 b = 0; b < a.dim; ++b) {
                u32 c = basis.at(jrow, b);
                if (!c) continue;
                const Vec& ob = orb[b];
                for (u32 x = 0; x < m.dim(); ++x)
                    col[x] = static_cast<u32>((col[x] + static_cast<u64>(c) * ob[x]) % F.p);
            }
            pim.set_col(off + jrow, col);
        }
        off += static_cast<u32>(basis.rows());
    }
    cov.pi = ModMap{cov.P, m, pim};
    if (rank(pim) != m.dim()) throw internal_check_error("cover map not surjective");
    auto section = solve_many(pim, Mat::identity(m.dim(), p()));
    if (!section) throw internal_check_error("cover section solve failed");
    cov.section = *section;

    Mat kerb = kernel_basis_mat(pim);
    // minimality: kernel sits inside rad P = (+) rad(A e_t)
    for (std::size_t i = 0; i < kerb.rows(); ++i) {
        for (std::size_t t = 0; t < parts.size(); ++t) {
            const Mat& basis = proj_bases_[cov.summand_idem[t]];
            Vec slice(basis.rows());
            for (std::size_t j = 0; j < basis.rows(); ++j) slice[j] = kerb.at(i, cov.summand_offset[t] + j);
            if (!proj_rads_[cov.summand_idem[t]]->contains(slice))
                throw internal_check_error("cover not minimal: kernel escapes rad P");
        }
    }
    Subspace ker = Subspace::from_rows(kerb);
    auto [kmod, kincl] = submodule(cov.P, ker);
    cov.kernel = kmod;
    cov.incl = kincl;
    return cov;
}

const Cover& Engine::cover(const Mod& m) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    auto it = cover_cache_.find(m.data());
    if (it != cover_cache_.end()) return *it->second;
    auto built = std::make_shared<Cover>(build_cover(m));
    auto [pos, fresh] = cover_cache_.emplace(m.data(), std::move(built));
    (void)fresh;
    return *pos->second;
}

Mod Engine::syzygy(Mod m, u32 n) {
    for (u32 i = 0; i < n; ++i) m = cover(m).kernel;
    return m;
}

Engine& Engine::op_engine() {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    if (!op_) op_ = std::make_unique<Engine>(opposite(a_));
    return *op_;
}

Mod Engine::cosyzygy(Mod m, u32 n) {
    if (n == 0) return m;
    if (!a_->symform)
        throw not_symmetric_error("cosyzygy needs a certified symmetric algebra");
    Engine& op = op_engine();
    Mod dual_over_op = op_dual(m, op.alg_ptr());
    Mod shifted = op.syzygy(dual_over_op, n);
    return op_dual(shifted, a_);
}

}  // namespace tatekit
