#include "tatekit/stmod.hpp"

#include <random>

#include "tatekit/errors.hpp"

namespace tatekit {

namespace {

// Basis maps of Hom_A(P, N) for P = (+) A e_t, via phi_u(x e) = x u with
// u running over a basis of e N.
struct ProjHomBasis {
    std::vector<Mat> maps;  // dst.dim x P.dim
};

ProjHomBasis projective_hom_basis(Engine& eng, const Cover& cov, const Mod& n) {
    const Alg& a = eng.alg();
    const Fp F(a.p);
    ProjHomBasis out;
    const u32 dn = n.dim();
    if (dn == 0 || cov.P.dim() == 0) return out;
    std::map<u32, Mat> eN;  // idem index -> basis rows of e*N (in N coords)
    for (u32 idx : cov.summand_idem)
        if (!eN.count(idx)) {
            SparseVec es = sparse_from_dense(eng.idempotents()[idx]);
            Echelon img(dn, a.p);
            for (u32 j = 0; j < dn; ++j) {
                Vec ej(dn, 0);
                ej[j] = 1;
                img.insert(n.apply_elem(es, ej));
            }
            eN.emplace(idx, img.basis());
        }
    for (std::size_t t = 0; t < cov.summand_idem.size(); ++t) {
        u32 idx = cov.summand_idem[t];
        const Mat& basis = eng.projective_basis(idx);  // rows: A-coords of A e
        const Mat& ebasis = eN[idx];
        for (std::size_t uu = 0; uu < ebasis.rows(); ++uu) {
            Vec u = ebasis.row(uu);
            std::vector<Vec> orb = n.orbit(u);
            Mat mp(dn, cov.P.dim(), a.p);
            for (std::size_t j = 0; j < basis.rows(); ++j) {
                Vec col(dn, 0);
                for (u32 b = 0; b < a.dim; ++b) {
                    u32 c = basis.at(j, b);
                    if (!c) continue;
                    const Vec& ob = orb[b];
                    for (u32 x = 0; x < dn; ++x)
                        col[x] = static_cast<u32>((col[x] + static_cast<u64>(c) * ob[x]) % F.p);
                }
                mp.set_col(cov.summand_offset[t] + j, col);
            }
            out.maps.push_back(std::move(mp));
        }
    }
    return out;
}

}  // namespace

std::vector<ModMap> hom_basis(Engine& eng, const Mod& m, const Mod& n) {
    std::vector<ModMap> out;
    if (m.dim() == 0 || n.dim() == 0) return out;
    const Cover& cov = eng.cover(m);
    ProjHomBasis ph = projective_hom_basis(eng, cov, n);
    if (ph.maps.empty()) return out;
    const u32 p = eng.p();
    const Mod& omega = cov.kernel;
    // coefficients c with sum c_i (B_i . incl) = 0
    Mat ker;
    if (omega.dim() == 0) {
        ker = Mat::identity(ph.maps.size(), p);
    } else {
        Mat cons(static_cast<std::size_t>(n.dim()) * omega.dim(), ph.maps.size(), p);
        for (std::size_t i = 0; i < ph.maps.size(); ++i) {
            Vec flat = ph.maps[i].mul(cov.incl.mat).vectorize();
            for (std::size_t r = 0; r < flat.size(); ++r) cons.at(r, i) = flat[r];
        }
        ker = kernel_basis_mat(cons);
    }
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        Mat h(n.dim(), cov.P.dim(), p);
        for (std::size_t i = 0; i < ph.maps.size(); ++i) {
            u32 c = ker.at(r, i);
            if (c) h = h.add(ph.maps[i].scale(c));
        }
        out.push_back(ModMap{m, n, h.mul(cov.section)});
    }
    return out;
}

Subspace factoring_subspace(Engine& eng, const Mod& m, const ModMap& surj) {
    const Mod& q = surj.src;
    Subspace out(static_cast<std::size_t>(surj.dst.dim()) * m.dim(), eng.p());
    std::vector<ModMap> homs = hom_basis(eng, m, q);
    for (const ModMap& h : homs) out.insert(surj.mat.mul(h.mat).vectorize());
    return out;
}

Vec StableHom::coords(const ModMap& f) const {
    const u32 p = f.mat.modulus();
    const std::size_t amb = static_cast<std::size_t>(f.mat.rows()) * f.mat.cols();
    Mat fb = factoring.basis();
    Mat cols(amb, rep_indices.size() + fb.rows(), p);
    for (std::size_t i = 0; i < rep_indices.size(); ++i) {
        Vec flat = hom[rep_indices[i]].mat.vectorize();
        for (std::size_t r = 0; r < amb; ++r) cols.at(r, i) = flat[r];
    }
    for (std::size_t i = 0; i < fb.rows(); ++i)
        for (std::size_t r = 0; r < amb; ++r) cols.at(r, rep_indices.size() + i) = fb.at(i, r);
    auto sol = solve(cols, f.mat.vectorize());
    if (!sol) throw internal_check_error("stable class not in the computed Hom space");
    Vec c(rep_indices.size());
    for (std::size_t i = 0; i < rep_indices.size(); ++i) c[i] = (*sol)[i];
    return c;
}

StableHom stable_hom(Engine& eng, const Mod& m, const Mod& n) {
    StableHom sh;
    sh.src = m;
    sh.dst = n;
    sh.factoring = Subspace(static_cast<std::size_t>(n.dim()) * m.dim(), eng.p());
    sh.hom = hom_basis(eng, m, n);
    if (m.dim() == 0 || n.dim() == 0) return sh;
    const Cover& covn = eng.cover(n);
    sh.factoring = factoring_subspace(eng, m, covn.pi);
    Subspace grow = sh.factoring;
    for (std::size_t i = 0; i < sh.hom.size(); ++i)
        if (grow.insert(sh.hom[i].mat.vectorize())) sh.rep_indices.push_back(i);
    return sh;
}

bool is_projective(Engine& eng, const Mod& m) {
    if (m.dim() == 0) return true;
    const Cover& cov = eng.cover(m);
    if (cov.P.dim() != m.dim()) return false;
    // minimal cover of equal dimension: pi is an isomorphism and its inverse
    // is the splitting section
    return inverse(cov.pi.mat).has_value();
}

std::vector<u32> simple_panel(Engine& eng, const Mod& m) {
    std::vector<u32> panel;
    for (u32 b = 0; b < static_cast<u32>(eng.num_blocks()); ++b) {
        Mod s = eng.simple_module(b);
        panel.push_back(static_cast<u32>(stable_hom(eng, m, s).dim()));
        panel.push_back(static_cast<u32>(stable_hom(eng, s, m).dim()));
    }
    return panel;
}

IsoVerdict iso_test(Engine& eng, const Mod& m, const Mod& n, u64 seed, int trials) {
    IsoVerdict v;
    if (m.identity() == n.identity()) {
        v.yes = true;
        v.certificate = "identity";
        v.witness = Mat::identity(m.dim(), m.p());
        return v;
    }
    if (m.dim() != n.dim()) {
        v.certificate = "dim";
        return v;
    }
    if (m.dim() == 0) {
        v.yes = true;
        v.certificate = "identity";
        return v;
    }
    if (simple_panel(eng, m) != simple_panel(eng, n)) {
        v.certificate = "panel";
        return v;
    }
    std::vector<ModMap> homs = hom_basis(eng, m, n);
    for (const ModMap& h : homs)
        if (inverse(h.mat)) {
            v.yes = true;
            v.certificate = "witness";
            v.witness = h.mat;
            return v;
        }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u32> coef(0, m.p() - 1);
    for (int t = 0; t < trials; ++t) {
        Mat acc(n.dim(), m.dim(), m.p());
        for (const ModMap& h : homs) {
            u32 c = coef(rng);
            if (c) acc = acc.add(h.mat.scale(c));
        }
        if (inverse(acc)) {
            v.yes = true;
            v.certificate = "witness";
            v.witness = acc;
            return v;
        }
    }
    v.certificate = "search";
    return v;
}

bool sequence_splits(Engine& eng, const ExtensionSeq& s) {
    if (s.left.dim() == 0 || s.right.dim() == 0) return true;
    std::vector<ModMap> homs = hom_basis(eng, s.middle, s.left);
    if (homs.empty()) return false;
    const u32 p = eng.p();
    const std::size_t amb = static_cast<std::size_t>(s.left.dim()) * s.left.dim();
    Mat cols(amb, homs.size(), p);
    for (std::size_t i = 0; i < homs.size(); ++i) {
        Vec flat = homs[i].mat.mul(s.inj.mat).vectorize();
        for (std::size_t r = 0; r < amb; ++r) cols.at(r, i) = flat[r];
    }
    return solve(cols, Mat::identity(s.left.dim(), p).vectorize()).has_value();
}

}  // namespace tatekit
