#include "tatekit/module.hpp"

#include <algorithm>

#include "tatekit/errors.hpp"

namespace tatekit {

namespace {
constexpr u32 kFullTableLimit = 200;  // cache full action tables up to this dim

Mat coords_in_rref_rows(const Mat& basis_rows, const std::vector<std::size_t>& pivots, const Mat& vectors_cols) {
    // vectors_cols columns must lie in the row space; coordinates read off pivots
    const u32 p = basis_rows.modulus();
    Mat coords(basis_rows.rows(), vectors_cols.cols(), p);
    Fp F(p);
    for (std::size_t j = 0; j < vectors_cols.cols(); ++j) {
        Vec v = vectors_cols.col(j);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            u32 c = v[pivots[i]];
            coords.at(i, j) = c;
            if (!c) continue;
            u64 cneg = p - c;
            for (std::size_t k = 0; k < v.size(); ++k)
                v[k] = static_cast<u32>((v[k] + cneg * basis_rows.at(i, k)) % p);
        }
        for (u32 x : v)
            if (x) throw internal_check_error("vector not contained in the subspace");
    }
    return coords;
}

}  // namespace

Mod Mod::from_action(AlgPtr a, std::vector<Mat> gen_act) {
    if (!a->has_modules()) throw error("algebra has no module support (missing basis decomposition)");
    auto d = std::make_shared<ModData>();
    d->A = std::move(a);
    d->gen_act = std::move(gen_act);
    d->dim = d->gen_act.empty() ? 0 : static_cast<u32>(d->gen_act[0].rows());
    for (const Mat& m : d->gen_act)
        if (m.rows() != d->dim || m.cols() != d->dim) throw error("generator action has wrong shape");
    return Mod(std::move(d));
}

Mod Mod::zero(AlgPtr a) {
    std::vector<Mat> acts(a->gen_basis.size(), Mat(0, 0, a->p));
    return from_action(std::move(a), std::move(acts));
}

Mod Mod::trivial(AlgPtr a) {
    std::vector<Mat> acts;
    const std::size_t r = a->gen_basis.size();
    for (std::size_t g = 0; g < r; ++g) {
        Mat m(1, 1, a->p);
        u32 gb = a->gen_basis[g];
        if (gb == UINT32_MAX) throw error("trivial module needs every generator in the basis");
        m.at(0, 0) = a->epsilon[gb];
        acts.push_back(std::move(m));
    }
    return from_action(std::move(a), std::move(acts));
}

Mod Mod::regular(AlgPtr a) {
    std::vector<Mat> acts;
    const std::size_t r = a->gen_basis.size();
    for (std::size_t g = 0; g < r; ++g) {
        u32 gb = a->gen_basis[g];
        if (gb == UINT32_MAX) throw error("regular module needs every generator in the basis");
        Mat m(a->dim, a->dim, a->p);
        for (u32 v = 0; v < a->dim; ++v)
            for (auto& [k, c] : a->prod(gb, v).terms) m.at(k, v) = c;
        acts.push_back(std::move(m));
    }
    return from_action(std::move(a), std::move(acts));
}

Vec Mod::apply_basis(u32 b, const Vec& v) const {
    const Alg& A = *d_->A;
    {
        std::lock_guard<std::mutex> lk(d_->mx);
        if (!d_->full.empty()) return d_->full[b].mul_vec(v);
    }
    if (b == A.unit_index) return v;
    const BasisDecomp& dc = A.decomp[b];
    return d_->gen_act[dc.gen].mul_vec(apply_basis(dc.parent, v));
}

Vec Mod::apply_elem(const SparseVec& x, const Vec& v) const {
    Fp F(p());
    Vec acc(dim(), 0);
    if (x.terms.size() <= 4) {
        for (auto& [b, c] : x.terms) {
            Vec w = apply_basis(b, v);
            for (u32 i = 0; i < dim(); ++i) acc[i] = static_cast<u32>((acc[i] + static_cast<u64>(c) * w[i]) % F.p);
        }
        return acc;
    }
    std::vector<Vec> orb = orbit(v);
    for (auto& [b, c] : x.terms)
        for (u32 i = 0; i < dim(); ++i)
            acc[i] = static_cast<u32>((acc[i] + static_cast<u64>(c) * orb[b][i]) % F.p);
    return acc;
}

std::vector<Vec> Mod::orbit(const Vec& v) const {
    const Alg& A = *d_->A;
    std::vector<Vec> x(A.dim);
    x[A.unit_index] = v;
    for (u32 b = 0; b < A.dim; ++b) {
        if (b == A.unit_index) continue;
        const BasisDecomp& dc = A.decomp[b];
        x[b] = d_->gen_act[dc.gen].mul_vec(x[dc.parent]);
    }
    return x;
}

const std::vector<Mat>& Mod::full_table() const {
    std::lock_guard<std::mutex> lk(d_->mx);
    if (d_->full.empty()) {
        const Alg& A = *d_->A;
        d_->full.resize(A.dim);
        d_->full[A.unit_index] = Mat::identity(dim(), p());
        for (u32 b = 0; b < A.dim; ++b) {
            if (b == A.unit_index) continue;
            const BasisDecomp& dc = A.decomp[b];
            d_->full[b] = d_->gen_act[dc.gen].mul(d_->full[dc.parent]);
        }
    }
    return d_->full;
}

Mat Mod::act_basis(u32 b) const {
    const Alg& A = *d_->A;
    if (dim() <= kFullTableLimit) return full_table()[b];
    if (b == A.unit_index) return Mat::identity(dim(), p());
    const BasisDecomp& dc = A.decomp[b];
    return d_->gen_act[dc.gen].mul(act_basis(dc.parent));
}

bool Mod::check_module_axioms() const {
    const Alg& A = *d_->A;
    for (std::size_t g = 0; g < num_gens(); ++g) {
        u32 gb = A.gen_basis[g];
        if (gb == UINT32_MAX) continue;
        for (u32 b = 0; b < A.dim; ++b) {
            Mat lhs = d_->gen_act[g].mul(act_basis(b));
            Mat rhs(dim(), dim(), p());
            for (auto& [k, c] : A.prod(gb, b).terms) rhs = rhs.add(act_basis(k).scale(c));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

bool ModMap::is_intertwiner() const {
    for (std::size_t g = 0; g < src.num_gens(); ++g)
        if (mat.mul(src.act_gen(static_cast<u32>(g))) != dst.act_gen(static_cast<u32>(g)).mul(mat))
            return false;
    return true;
}

ModMap compose(const ModMap& f, const ModMap& g) {
    if (g.dst.identity() != f.src.identity() && g.dst.dim() != f.src.dim())
        throw error("map composition shape mismatch");
    return {g.src, f.dst, f.mat.mul(g.mat)};
}

ModMap identity_map(const Mod& m) { return {m, m, Mat::identity(m.dim(), m.p())}; }

ModMap zero_map(const Mod& src, const Mod& dst) { return {src, dst, Mat(dst.dim(), src.dim(), src.p())}; }

std::pair<Mod, ModMap> submodule(const Mod& m, const Subspace& s) {
    if (s.ambient() != m.dim()) throw error("submodule ambient mismatch");
    Mat b = s.basis();
    RrefResult rr = rref(b);
    std::vector<Mat> acts;
    for (std::size_t g = 0; g < m.num_gens(); ++g) {
        // images of basis rows under the generator, as columns
        Mat img(m.dim(), b.rows(), m.p());
        for (std::size_t i = 0; i < b.rows(); ++i) img.set_col(i, m.act_gen(static_cast<u32>(g)).mul_vec(b.row(i)));
        acts.push_back(coords_in_rref_rows(rr.mat, rr.pivots, img));
    }
    Mod sub = Mod::from_action(m.algebra(), std::move(acts));
    ModMap incl{sub, m, b.transpose()};
    return {sub, incl};
}

std::pair<Mod, ModMap> quotient_module(const Mod& m, const Subspace& s) {
    if (s.ambient() != m.dim()) throw error("quotient ambient mismatch");
    Quotient q = Quotient::by(s);
    std::vector<Mat> acts;
    for (std::size_t g = 0; g < m.num_gens(); ++g)
        acts.push_back(q.proj.mul(m.act_gen(static_cast<u32>(g)).mul(q.section)));
    Mod quo = Mod::from_action(m.algebra(), std::move(acts));
    ModMap proj{m, quo, q.proj};
    return {quo, proj};
}

DirectSum direct_sum(const std::vector<Mod>& parts) {
    if (parts.empty()) throw error("direct sum of no modules");
    AlgPtr a = parts[0].algebra();
    u32 total = 0;
    for (const Mod& part : parts) total += part.dim();
    std::vector<Mat> acts;
    for (std::size_t g = 0; g < parts[0].num_gens(); ++g) {
        Mat blk(total, total, a->p);
        u32 off = 0;
        for (const Mod& part : parts) {
            const Mat& pg = part.act_gen(static_cast<u32>(g));
            for (std::size_t i = 0; i < pg.rows(); ++i)
                for (std::size_t j = 0; j < pg.cols(); ++j) blk.at(off + i, off + j) = pg.at(i, j);
            off += part.dim();
        }
        acts.push_back(std::move(blk));
    }
    DirectSum out;
    out.sum = Mod::from_action(a, std::move(acts));
    u32 off = 0;
    for (const Mod& part : parts) {
        Mat in(total, part.dim(), a->p);
        Mat pr(part.dim(), total, a->p);
        for (u32 i = 0; i < part.dim(); ++i) {
            in.at(off + i, i) = 1;
            pr.at(i, off + i) = 1;
        }
        out.inject.push_back({part, out.sum, std::move(in)});
        out.project.push_back({out.sum, part, std::move(pr)});
        off += part.dim();
    }
    return out;
}

Mod tensor_mod(const Mod& m, const Mod& n) {
    const AlgPtr& a = m.algebra();
    if (!a->hopf) throw hopf_absent_error("tensor product of modules needs Hopf data");
    const u32 dm = m.dim(), dn = n.dim();
    const u32 dim = dm * dn;
    Fp F(a->p);
    std::vector<Mat> acts;
    for (std::size_t g = 0; g < m.num_gens(); ++g) {
        u32 gb = a->gen_basis[g];
        Mat act(dim, dim, a->p);
        for (auto& [lr, c] : a->hopf->delta[gb].terms) {
            u32 l = lr / a->dim, r = lr % a->dim;
            Mat ml = m.act_basis(l), nr = n.act_basis(r);
            for (u32 i = 0; i < dm; ++i)
                for (u32 k = 0; k < dm; ++k) {
                    if (!ml.at(i, k)) continue;
                    u64 f = static_cast<u64>(c) * ml.at(i, k) % a->p;
                    for (u32 j = 0; j < dn; ++j)
                        for (u32 l2 = 0; l2 < dn; ++l2) {
                            if (!nr.at(j, l2)) continue;
                            u32& slot = act.at(i * dn + j, k * dn + l2);
                            slot = static_cast<u32>((slot + f * nr.at(j, l2)) % a->p);
                        }
                }
        }
        acts.push_back(std::move(act));
    }
    return Mod::from_action(a, std::move(acts));
}

Mod dual_mod(const Mod& m) {
    const AlgPtr& a = m.algebra();
    if (!a->hopf) throw hopf_absent_error("module dual needs Hopf data (the antipode)");
    std::vector<Mat> acts;
    for (std::size_t g = 0; g < m.num_gens(); ++g) {
        u32 gb = a->gen_basis[g];
        const SparseVec& sg = a->hopf->antipode[gb];
        Mat rho_s(m.dim(), m.dim(), a->p);
        for (auto& [b, c] : sg.terms) rho_s = rho_s.add(m.act_basis(b).scale(c));
        acts.push_back(rho_s.transpose());
    }
    return Mod::from_action(a, std::move(acts));
}

Mod adjoint_module(const AlgPtr& a) {
    if (!a->hopf) throw hopf_absent_error("adjoint module needs Hopf data");
    Fp F(a->p);
    std::vector<Mat> acts;
    for (std::size_t g = 0; g < a->gen_basis.size(); ++g) {
        u32 gb = a->gen_basis[g];
        Mat act(a->dim, a->dim, a->p);
        for (u32 v = 0; v < a->dim; ++v) {
            Vec acc(a->dim, 0);
            for (auto& [lr, c] : a->hopf->delta[gb].terms) {
                u32 l = lr / a->dim, r = lr % a->dim;
                SparseVec vs;
                vs.terms.emplace_back(v, 1u);
                SparseVec t = a->mul(vs, a->hopf->antipode[r]);  // v * S(b_2)
                SparseVec lt = a->mul_basis(l, t);               // b_1 * v * S(b_2)
                for (auto& [k, ck] : lt.terms)
                    acc[k] = static_cast<u32>((acc[k] + static_cast<u64>(c) * ck) % a->p);
            }
            act.set_col(v, acc);
        }
        acts.push_back(std::move(act));
    }
    return Mod::from_action(a, std::move(acts));
}

Mod op_dual(const Mod& m, const AlgPtr& op_alg) {
    std::vector<Mat> acts;
    for (std::size_t g = 0; g < m.num_gens(); ++g) acts.push_back(m.act_gen(static_cast<u32>(g)).transpose());
    return Mod::from_action(op_alg, std::move(acts));
}

void ExtensionSeq::validate() const {
    if (middle.dim() != left.dim() + right.dim())
        throw internal_check_error("extension: dimensions do not add");
    if (rank(inj.mat) != left.dim()) throw internal_check_error("extension: left map not injective");
    if (rank(surj.mat) != right.dim()) throw internal_check_error("extension: right map not surjective");
    if (!inj.is_intertwiner() || !surj.is_intertwiner())
        throw internal_check_error("extension: maps are not module maps");
    Mat comp = surj.mat.mul(inj.mat);
    if (!comp.is_zero()) throw internal_check_error("extension: composite not zero");
    // image(inj) = ker(surj) follows from dims once the composite vanishes
}

}  // namespace tatekit
