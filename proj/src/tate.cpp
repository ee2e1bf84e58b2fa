#include "tatekit/tate.hpp"

#include "tatekit/errors.hpp"

namespace tatekit {

TateCtx::TateCtx(Engine& eng, int D) : eng_(&eng), tw_(build_tower(eng, D)) {}

const StableHom& TateCtx::classes(int n, const Mod& m) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    if (!tw_.in_window(n)) throw window_error("degree " + std::to_string(n) + " outside the tower window");
    auto key = std::make_pair(n, m.identity());
    auto it = sh_cache_.find(key);
    if (it != sh_cache_.end()) return *it->second;
    auto sh = std::make_shared<StableHom>(stable_hom(*eng_, tw_.mod(n), m));
    return *sh_cache_.emplace(key, std::move(sh)).first->second;
}

GradedDims TateCtx::dims(const Mod& m, int lo, int hi) {
    GradedDims out;
    out.lo = lo;
    out.hi = hi;
    for (int n = lo; n <= hi; ++n) out.dims.push_back(dim_hat(n, m));
    return out;
}

std::vector<TateClass> TateCtx::basis(int n) {
    const StableHom& sh = classes(n, k());
    std::vector<TateClass> out;
    for (std::size_t j = 0; j < sh.dim(); ++j) out.push_back(TateClass{n, sh.rep(j)});
    return out;
}

TateClass TateCtx::basis_class(int n, std::size_t j) {
    const StableHom& sh = classes(n, k());
    return TateClass{n, sh.rep(j)};
}

TateClass TateCtx::zero_class(int n) {
    return TateClass{n, zero_map(tw_.mod(n), k())};
}

TateClass TateCtx::unit_class() {
    return TateClass{0, identity_map(tw_.mod(0))};
}

const std::vector<ModMap>& TateCtx::level_homs(int x, int y) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    auto key = std::make_pair(x, y);
    auto it = level_hom_cache_.find(key);
    if (it != level_hom_cache_.end()) return *it->second;
    auto homs = std::make_shared<std::vector<ModMap>>(
        hom_basis(*eng_, tw_.level(x).P, tw_.level(y).P));
    return *level_hom_cache_.emplace(key, std::move(homs)).first->second;
}

ModMap TateCtx::shift_up_once(const ModMap& f, int a, int b) {
    if (!tw_.has_level(a) || !tw_.has_level(b))
        throw window_error("shift exceeds the tower window");
    const TowerLevel& la = tw_.level(a);
    const TowerLevel& lb = tw_.level(b);
    const std::vector<ModMap>& homs = level_homs(a, b);
    // ghat with pi_b ghat = f pi_a, then restrict to the kernels
    const u32 p = eng_->p();
    Mat rhs = f.mat.mul(la.pi.mat);
    const std::size_t amb = static_cast<std::size_t>(rhs.rows()) * rhs.cols();
    Mat cols(amb, homs.size(), p);
    for (std::size_t i = 0; i < homs.size(); ++i) {
        Vec flat = lb.pi.mat.mul(homs[i].mat).vectorize();
        for (std::size_t r = 0; r < amb; ++r) cols.at(r, i) = flat[r];
    }
    auto sol = solve(cols, rhs.vectorize());
    if (!sol) throw internal_check_error("cover lift has no solution");
    Mat ghat(lb.P.dim(), la.P.dim(), p);
    for (std::size_t i = 0; i < homs.size(); ++i)
        if ((*sol)[i]) ghat = ghat.add(homs[i].mat.scale((*sol)[i]));
    auto restricted = solve_many(lb.incl.mat, ghat.mul(la.incl.mat));
    if (!restricted) throw internal_check_error("lift does not preserve the kernels");
    return ModMap{tw_.mod(a + 1), tw_.mod(b + 1), *restricted};
}

ModMap TateCtx::shift_down_once(const ModMap& f, int a, int b) {
    if (!tw_.has_level(a - 1) || !tw_.has_level(b - 1))
        throw window_error("shift exceeds the tower window");
    const TowerLevel& la = tw_.level(a - 1);
    const TowerLevel& lb = tw_.level(b - 1);
    const std::vector<ModMap>& homs = level_homs(a - 1, b - 1);
    // ghat with ghat incl_{a-1} = incl_{b-1} f (extension through injectives)
    const u32 p = eng_->p();
    Mat rhs = lb.incl.mat.mul(f.mat);
    const std::size_t amb = static_cast<std::size_t>(rhs.rows()) * rhs.cols();
    Mat cols(amb, homs.size(), p);
    for (std::size_t i = 0; i < homs.size(); ++i) {
        Vec flat = homs[i].mat.mul(la.incl.mat).vectorize();
        for (std::size_t r = 0; r < amb; ++r) cols.at(r, i) = flat[r];
    }
    auto sol = solve(cols, rhs.vectorize());
    if (!sol) throw internal_check_error("injective extension has no solution");
    Mat ghat(lb.P.dim(), la.P.dim(), p);
    for (std::size_t i = 0; i < homs.size(); ++i)
        if ((*sol)[i]) ghat = ghat.add(homs[i].mat.scale((*sol)[i]));
    Mat out = lb.pi.mat.mul(ghat).mul(la.pi_section);
    return ModMap{tw_.mod(a - 1), tw_.mod(b - 1), out};
}

ModMap TateCtx::shift_map(const ModMap& f, int a, int b, int s) {
    ModMap cur = f;
    int ca = a, cb = b;
    while (s > 0) {
        cur = shift_up_once(cur, ca, cb);
        ++ca, ++cb, --s;
    }
    while (s < 0) {
        cur = shift_down_once(cur, ca, cb);
        --ca, --cb, ++s;
    }
    return cur;
}

const ModMap& TateCtx::shifted_basis(int b, std::size_t j, int s) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    auto key = std::make_tuple(b, j, s);
    auto it = shift_cache_.find(key);
    if (it != shift_cache_.end()) return *it->second;
    std::shared_ptr<ModMap> result;
    if (s == 0) {
        result = std::make_shared<ModMap>(basis_class(b, j).rep);
    } else {
        int prev = s > 0 ? s - 1 : s + 1;
        const ModMap& before = shifted_basis(b, j, prev);
        ModMap stepped = s > 0 ? shift_up_once(before, b + prev, prev)
                               : shift_down_once(before, b + prev, prev);
        result = std::make_shared<ModMap>(std::move(stepped));
    }
    return *shift_cache_.emplace(key, std::move(result)).first->second;
}

TateClass TateCtx::cup(const TateClass& x, const TateClass& y) {
    ModMap shifted = shift_map(y.rep, y.deg, 0, x.deg);
    return TateClass{x.deg + y.deg, ModMap{shifted.src, x.rep.dst, x.rep.mat.mul(shifted.mat)}};
}

Vec TateCtx::class_coords(const TateClass& x) { return classes(x.deg, k()).coords(x.rep); }

Vec TateCtx::cup_coords(const TateClass& x, const TateClass& y) { return class_coords(cup(x, y)); }

bool TateCtx::is_zero(const TateClass& x) {
    return classes(x.deg, k()).is_stably_zero(x.rep);
}

const Mat& TateCtx::cup_table(int a, int b) {
    std::lock_guard<std::recursive_mutex> lk(mx_);
    auto key = std::make_pair(a, b);
    auto it = cup_cache_.find(key);
    if (it != cup_cache_.end()) return *it->second;
    const StableHom& sa = classes(a, k());
    const StableHom& sb = classes(b, k());
    const StableHom& sab = classes(a + b, k());
    Mat table(sab.dim(), sa.dim() * sb.dim(), eng_->p());
    for (std::size_t j = 0; j < sb.dim(); ++j) {
        if (sa.dim() == 0) break;
        const ModMap& shifted = shifted_basis(b, j, a);
        for (std::size_t i = 0; i < sa.dim(); ++i) {
            ModMap prod{shifted.src, k(), sa.rep(i).mat.mul(shifted.mat)};
            Vec coords = sab.coords(prod);
            for (std::size_t r = 0; r < coords.size(); ++r) table.at(r, i * sb.dim() + j) = coords[r];
        }
    }
    return *cup_cache_.emplace(key, std::make_shared<Mat>(std::move(table))).first->second;
}

u32 TateCtx::duality_pairing(const TateClass& x, const TateClass& y) {
    if (x.deg + y.deg != -1) throw precondition_error("pairing degrees must sum to -1");
    if (dim_hat(-1, k()) != 1)
        throw precondition_error("duality pairing needs a 1-dimensional degree -1 part");
    Vec c = cup_coords(x, y);
    return c.at(0);
}

Mat TateCtx::pairing_matrix(int n) {
    const StableHom& left = classes(n - 1, k());
    const StableHom& right = classes(-n, k());
    Mat out(left.dim(), right.dim(), eng_->p());
    const Mat& table = cup_table(n - 1, -n);
    for (std::size_t i = 0; i < left.dim(); ++i)
        for (std::size_t j = 0; j < right.dim(); ++j)
            out.at(i, j) = table.rows() ? table.at(0, i * right.dim() + j) : 0;
    return out;
}

TateCtx::Connecting TateCtx::connecting(const ExtensionSeq& s, int lo, int hi, bool check_exactness) {
    Connecting out;
    out.lo = lo;
    out.hi = hi;
    const u32 p = eng_->p();
    for (int n = lo; n <= hi; ++n) {
        const StableHom& shn_N = classes(n, s.right);
        const StableHom& shn_L = classes(n, s.left);
        const StableHom& shn_E = classes(n, s.middle);
        // inj_* and surj_*
        Mat ml(shn_E.dim(), shn_L.dim(), p);
        for (std::size_t j = 0; j < shn_L.dim(); ++j) {
            ModMap comp{tw_.mod(n), s.middle, s.inj.mat.mul(shn_L.rep(j).mat)};
            Vec c = shn_E.coords(comp);
            for (std::size_t r = 0; r < c.size(); ++r) ml.at(r, j) = c[r];
        }
        out.from_left.push_back(std::move(ml));
        Mat mr(shn_N.dim(), shn_E.dim(), p);
        for (std::size_t j = 0; j < shn_E.dim(); ++j) {
            ModMap comp{tw_.mod(n), s.right, s.surj.mat.mul(shn_E.rep(j).mat)};
            Vec c = shn_N.coords(comp);
            for (std::size_t r = 0; r < c.size(); ++r) mr.at(r, j) = c[r];
        }
        out.to_right.push_back(std::move(mr));
        // delta: lift over the surjection, restrict to the kernels
        if (n + 1 > window() || !tw_.has_level(n)) {
            out.delta.push_back(Mat(0, shn_N.dim(), p));
            continue;
        }
        const StableHom& sh_next_L = classes(n + 1, s.left);
        Mat md(sh_next_L.dim(), shn_N.dim(), p);
        const TowerLevel& ln = tw_.level(n);
        std::vector<ModMap> homs = hom_basis(*eng_, ln.P, s.middle);
        for (std::size_t j = 0; j < shn_N.dim(); ++j) {
            Mat rhs = shn_N.rep(j).mat.mul(ln.pi.mat);
            // hhat : P_n -> E with surj hhat = f pi_n
            const std::size_t amb = static_cast<std::size_t>(rhs.rows()) * rhs.cols();
            Mat cols(amb, homs.size(), p);
            for (std::size_t i = 0; i < homs.size(); ++i) {
                Vec flat = s.surj.mat.mul(homs[i].mat).vectorize();
                for (std::size_t r = 0; r < amb; ++r) cols.at(r, i) = flat[r];
            }
            auto sol = solve(cols, rhs.vectorize());
            if (!sol) throw internal_check_error("connecting lift failed");
            Mat hhat(s.middle.dim(), ln.P.dim(), p);
            for (std::size_t i = 0; i < homs.size(); ++i)
                if ((*sol)[i]) hhat = hhat.add(homs[i].mat.scale((*sol)[i]));
            auto delta_rep = solve_many(s.inj.mat, hhat.mul(ln.incl.mat));
            if (!delta_rep) throw internal_check_error("connecting image escapes the left term");
            ModMap df{tw_.mod(n + 1), s.left, *delta_rep};
            Vec c = sh_next_L.coords(df);
            for (std::size_t r = 0; r < c.size(); ++r) md.at(r, j) = c[r];
        }
        out.delta.push_back(std::move(md));
    }
    if (check_exactness) {
        for (int n = lo; n <= hi; ++n) {
            std::size_t i = static_cast<std::size_t>(n - lo);
            // ker(to_right) = im(from_left)
            Mat kr = kernel_basis_mat(out.to_right[i]);
            if (kr.rows() != rank(out.from_left[i]))
                throw internal_check_error("long exact sequence fails at the middle term");
            if (!out.to_right[i].mul(out.from_left[i]).is_zero())
                throw internal_check_error("LES composite (left->middle->right) nonzero");
            // ker(delta) = im(to_right)
            if (n - lo < static_cast<int>(out.delta.size()) && out.delta[i].rows() + 0 >= 0 &&
                n + 1 <= window() && tw_.has_level(n)) {
                Mat kd = kernel_basis_mat(out.delta[i]);
                if (kd.rows() != rank(out.to_right[i]))
                    throw internal_check_error("long exact sequence fails at the right term");
                if (!out.delta[i].mul(out.to_right[i]).is_zero())
                    throw internal_check_error("LES composite (middle->right->delta) nonzero");
                // ker(from_left at n+1) = im(delta at n)
                if (n + 1 <= hi) {
                    std::size_t i2 = i + 1;
                    Mat kf = kernel_basis_mat(out.from_left[i2]);
                    if (kf.rows() != rank(out.delta[i]))
                        throw internal_check_error("long exact sequence fails at the left term");
                    if (!out.from_left[i2].mul(out.delta[i]).is_zero())
                        throw internal_check_error("LES composite (right->delta->left) nonzero");
                }
            }
        }
    }
    return out;
}

TateCtx::KernelCokernel TateCtx::mxi_kernel_cokernel(const TateClass& xi, int lo, int hi) {
    KernelCokernel out;
    out.lo = lo;
    out.hi = hi;
    const int d = xi.deg;
    Vec xic = class_coords(xi);
    for (int t = lo; t <= hi; ++t) {
        u32 kdim = UINT32_MAX, cdim = UINT32_MAX;
        Mat kbasis;
        // kernel of mult at t: needs the product H^t -> H^{t+d}
        if (tw_.in_window(t) && tw_.in_window(t + d)) {
            const Mat& table = cup_table(d, t);
            const StableHom& st = classes(t, k());
            const StableHom& std_ = classes(t + d, k());
            Mat mult(std_.dim(), st.dim(), eng_->p());
            Fp F(eng_->p());
            for (std::size_t j = 0; j < st.dim(); ++j)
                for (std::size_t r = 0; r < std_.dim(); ++r) {
                    u64 acc = 0;
                    for (std::size_t i = 0; i < xic.size(); ++i)
                        acc += static_cast<u64>(xic[i]) * table.at(r, i * st.dim() + j);
                    mult.at(r, j) = F.reduce(acc);
                }
            kbasis = kernel_basis_mat(mult);
            kdim = static_cast<u32>(kbasis.rows());
        }
        // cokernel of mult into t
        if (tw_.in_window(t) && tw_.in_window(t - d)) {
            const Mat& table = cup_table(d, t - d);
            const StableHom& st = classes(t - d, k());
            const StableHom& std_ = classes(t, k());
            Mat mult(std_.dim(), st.dim(), eng_->p());
            Fp F(eng_->p());
            for (std::size_t j = 0; j < st.dim(); ++j)
                for (std::size_t r = 0; r < std_.dim(); ++r) {
                    u64 acc = 0;
                    for (std::size_t i = 0; i < xic.size(); ++i)
                        acc += static_cast<u64>(xic[i]) * table.at(r, i * st.dim() + j);
                    mult.at(r, j) = F.reduce(acc);
                }
            cdim = static_cast<u32>(std_.dim() - rank(mult));
        }
        out.kernel_dims.push_back(kdim);
        out.cokernel_dims.push_back(cdim);
        out.kernel_bases.push_back(std::move(kbasis));
    }
    return out;
}

Vec TateCtx::act_on_module_class(const TateClass& ring_cls, int b, const ModMap& beta, const Mod& m) {
    // (-1)^{ab} beta . Omega^b(alpha)
    const int a = ring_cls.deg;
    ModMap shifted = shift_map(ring_cls.rep, a, 0, b);
    Mat prod = beta.mat.mul(shifted.mat);
    Fp F(eng_->p());
    if ((a % 2 != 0) && (b % 2 != 0)) prod = prod.scale(F.p - 1);
    ModMap cls{tw_.mod(a + b), m, std::move(prod)};
    return classes(a + b, m).coords(cls);
}

GradedAction TateCtx::module_structure(const Mod& m, int lo, int hi, int action_bound) {
    GradedAction g;
    g.lo = lo;
    g.hi = hi;
    g.action_bound = action_bound;
    g.module_dims = dims(m, lo, hi);
    g.ring_dims = dims(k(), std::max(lo, -window()), std::min(hi, window()));
    for (int a = -action_bound; a <= action_bound; ++a) {
        if (!tw_.in_window(a)) continue;
        const StableHom& ring = classes(a, k());
        if (ring.dim() == 0) continue;
        for (int b = lo; b <= hi; ++b) {
            int target = a + b;
            if (target < lo || target > hi || !tw_.in_window(b) || !tw_.in_window(target)) continue;
            const StableHom& src = classes(b, m);
            const StableHom& dst = classes(target, m);
            if (src.dim() == 0) continue;
            Mat table(dst.dim(), ring.dim() * src.dim(), eng_->p());
            Fp F(eng_->p());
            for (std::size_t i = 0; i < ring.dim(); ++i) {
                const ModMap& shifted = shifted_basis(a, i, b);
                for (std::size_t j = 0; j < src.dim(); ++j) {
                    Mat prod = src.rep(j).mat.mul(shifted.mat);
                    if ((a % 2 != 0) && (b % 2 != 0)) prod = prod.scale(F.p - 1);
                    ModMap cls{tw_.mod(target), m, std::move(prod)};
                    Vec c = dst.coords(cls);
                    for (std::size_t r = 0; r < c.size(); ++r) table.at(r, i * src.dim() + j) = c[r];
                }
            }
            g.act.emplace(std::make_pair(a, b), std::move(table));
        }
    }
    return g;
}

}  // namespace tatekit
