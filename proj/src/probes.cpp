#include "tatekit/probes.hpp"

#include <sstream>

#include "tatekit/errors.hpp"

namespace tatekit {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::verified_in_window: return "verified-in-window";
        case Verdict::evidence_for: return "evidence-for";
        case Verdict::evidence_against: return "evidence-against";
        default: return "inconclusive";
    }
}

ProbeReport bfg_probe(const GradedAction& g) {
    ProbeReport rep;
    rep.kind = "bfg";
    rep.lo = g.lo;
    rep.hi = g.hi;
    const int lo = g.lo, hi = g.hi;
    auto dim_at = [&](int n) { return g.module_dims.at(n); };
    bool all_zero = true;
    for (int n = lo; n <= hi; ++n)
        if (dim_at(n)) all_zero = false;
    if (all_zero) {
        rep.verdict = Verdict::evidence_for;
        rep.witnesses.push_back("module vanishes in window: trivially bounded");
        return rep;
    }
    if (hi - lo < 2) {
        rep.verdict = Verdict::inconclusive;
        rep.witnesses.push_back("window too small for a closure computation");
        return rep;
    }
    const u32 p = g.act.empty() ? 2 : g.act.begin()->second.modulus();
    bool hit_bottom = false;
    for (int m = lo + 1; m <= hi; ++m) {
        // closure of the part above m under all tabulated actions
        std::map<int, Echelon> span;
        for (int n = m + 1; n <= hi; ++n) {
            if (!dim_at(n)) continue;
            Echelon e(dim_at(n), p);
            e.insert_rows(Mat::identity(dim_at(n), p));
            span.emplace(n, std::move(e));
        }
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& [key, table] : g.act) {
                auto [a, b] = key;
                int target = a + b;
                auto it = span.find(b);
                if (it == span.end() || it->second.dim() == 0) continue;
                if (!dim_at(target)) continue;
                std::size_t ring_dim = table.cols() / std::max<u32>(dim_at(b), 1);
                Mat basis = it->second.basis();
                auto dst = span.find(target);
                if (dst == span.end())
                    dst = span.emplace(target, Echelon(dim_at(target), p)).first;
                for (std::size_t i = 0; i < ring_dim; ++i)
                    for (std::size_t r = 0; r < basis.rows(); ++r) {
                        Vec img(dim_at(target), 0);
                        for (u32 out = 0; out < dim_at(target); ++out) {
                            u64 acc = 0;
                            for (u32 j = 0; j < dim_at(b); ++j)
                                acc += static_cast<u64>(table.at(out, i * dim_at(b) + j)) * basis.at(r, j);
                            img[out] = static_cast<u32>(acc % p);
                        }
                        if (dst->second.insert(std::move(img))) grew = true;
                    }
            }
        }
        int reached = hi + 1;
        for (auto& [n, e] : span)
            if (e.dim() > 0) reached = std::min(reached, n);
        rep.n_of_m[m] = reached;
        if (reached <= lo) hit_bottom = true;
        std::ostringstream row;
        row << "N(" << m << ") = " << reached;
        rep.witnesses.push_back(row.str());
    }
    rep.verdict = hit_bottom ? Verdict::evidence_against : Verdict::evidence_for;
    return rep;
}

bool bfg_stable(const ProbeReport& smaller, const ProbeReport& larger) {
    for (const auto& [m, nsmall] : smaller.n_of_m) {
        auto it = larger.n_of_m.find(m);
        if (it == larger.n_of_m.end()) continue;
        if (it->second < nsmall) return false;  // enlarging lowered N(m)
    }
    return true;
}

ProbeReport regular_on_positive(TateCtx& ctx, const TateClass& xi) {
    ProbeReport rep;
    rep.kind = "regularity";
    rep.lo = 0;
    rep.hi = ctx.window();
    rep.provenance["class_degree"] = std::to_string(xi.deg);
    const int d = xi.deg;
    if (d > ctx.window()) {
        rep.verdict = Verdict::inconclusive;
        rep.witnesses.push_back("window too small for a single multiplication step");
        return rep;
    }
    if (d == 0) {
        // unit-like classes: regular iff invertible scalar; check kernel at 0
        TateCtx::KernelCokernel kc = ctx.mxi_kernel_cokernel(xi, 0, ctx.window() - 1);
        bool inj = true;
        for (u32 kd : kc.kernel_dims)
            if (kd != 0 && kd != UINT32_MAX) inj = false;
        rep.verdict = inj ? Verdict::verified_in_window : Verdict::evidence_against;
        return rep;
    }
    TateCtx::KernelCokernel kc = ctx.mxi_kernel_cokernel(xi, 0, std::max(0, ctx.window() - std::max(d, 0)));
    bool inj = true;
    for (std::size_t i = 0; i < kc.kernel_dims.size(); ++i) {
        if (kc.kernel_dims[i] == UINT32_MAX) continue;
        std::ostringstream row;
        row << "kernel dim at degree " << (kc.lo + static_cast<int>(i)) << ": " << kc.kernel_dims[i];
        rep.witnesses.push_back(row.str());
        if (kc.kernel_dims[i] != 0) inj = false;
    }
    rep.verdict = inj ? Verdict::verified_in_window : Verdict::evidence_against;
    return rep;
}

ProbeReport negative_products_zero(TateCtx& ctx) {
    ProbeReport rep;
    rep.kind = "negprod";
    rep.lo = -ctx.window();
    rep.hi = -1;
    if (ctx.window() < 2) {
        rep.verdict = Verdict::inconclusive;
        rep.witnesses.push_back("window too small to form a negative product");
        return rep;
    }
    bool all_zero = true;
    std::size_t checked = 0;
    for (int a = -ctx.window(); a <= -1; ++a)
        for (int b = a; b <= -1; ++b) {
            if (a + b < -ctx.window()) continue;
            std::size_t da = ctx.classes(a, ctx.k()).dim();
            std::size_t db = ctx.classes(b, ctx.k()).dim();
            if (!da || !db) continue;
            const Mat& table = ctx.cup_table(a, b);
            ++checked;
            if (!table.is_zero()) {
                all_zero = false;
                std::ostringstream row;
                row << "nonzero product in degrees (" << a << ", " << b << ")";
                rep.witnesses.push_back(row.str());
            }
        }
    std::ostringstream head;
    head << checked << " degree pairs checked";
    rep.witnesses.insert(rep.witnesses.begin(), head.str());
    rep.verdict = all_zero ? Verdict::verified_in_window : Verdict::evidence_against;
    return rep;
}

ProbeReport nonfg_report(TateCtx& ctx, const LXiData& lx, const Mod& m, NonFgRoute route, u32 t,
                         int action_bound) {
    ProbeReport rep;
    rep.kind = "nonfg";
    const int D = ctx.window();
    rep.lo = -D;
    rep.hi = D;
    rep.provenance["class_degree"] = std::to_string(lx.deg);
    rep.provenance["route"] = route == NonFgRoute::proposition ? "proposition" : "theorem";
    rep.provenance["power"] = std::to_string(t);
    if (D < 4) {
        rep.verdict = Verdict::inconclusive;
        rep.witnesses.push_back("window too small for the pipeline");
        return rep;
    }
    // (1) regularity
    ProbeReport reg = regular_on_positive(ctx, lx.xi);
    if (reg.verdict != Verdict::verified_in_window) {
        rep.verdict = reg.verdict == Verdict::inconclusive ? Verdict::inconclusive : Verdict::evidence_against;
        rep.witnesses.push_back("class is not regular in window");
        return rep;
    }
    rep.witnesses.push_back("multiplication injective on nonnegative window degrees");
    // (2) negative products vanish
    ProbeReport neg = negative_products_zero(ctx);
    if (neg.verdict != Verdict::verified_in_window) {
        rep.verdict = neg.verdict;
        rep.witnesses.push_back("negative products do not vanish in window");
        return rep;
    }
    rep.witnesses.push_back("negative products vanish in window");
    // (3) kernel support: negative only, reaching arbitrarily low in window
    TateCtx::KernelCokernel kc = ctx.mxi_kernel_cokernel(lx.xi, -D, D);
    std::vector<int> support;
    for (std::size_t i = 0; i < kc.kernel_dims.size(); ++i) {
        if (kc.kernel_dims[i] == UINT32_MAX || kc.kernel_dims[i] == 0) continue;
        support.push_back(kc.lo + static_cast<int>(i));
    }
    for (int deg : support)
        if (deg >= 0) {
            rep.verdict = Verdict::evidence_against;
            rep.witnesses.push_back("kernel support leaks into nonnegative degrees");
            return rep;
        }
    const std::size_t needed = static_cast<std::size_t>((D - 2 + 1) / 2);
    if (support.size() < needed || support.empty() || support.front() > -D + lx.deg + 1) {
        rep.verdict = Verdict::inconclusive;
        rep.witnesses.push_back("kernel support too sparse in window");
        return rep;
    }
    {
        std::ostringstream row;
        row << "kernel support at degrees";
        for (int d : support) row << " " << d;
        rep.witnesses.push_back(row.str());
    }
    // (4) hypotheses per route
    if (route == NonFgRoute::proposition) {
        if (stable_panel(ctx, m) != stable_panel(ctx, lx.module)) {
            rep.verdict = Verdict::inconclusive;
            rep.witnesses.push_back("module is not stably the kernel module of the class");
            return rep;
        }
    } else {
        TateClass xt = power_class(ctx, lx.xi, t);
        LXiData lt = build_L(ctx, xt);
        if (!annihilates(ctx, xt, m).annihilates || !annihilates(ctx, xt, lt.module).annihilates) {
            rep.verdict = Verdict::inconclusive;
            rep.witnesses.push_back("power does not annihilate the required modules");
            return rep;
        }
        rep.witnesses.push_back("power annihilates both modules (checked on two routes)");
    }
    // (5) graded dims of H^*(A, M): support unbounded-below in window
    GradedDims dims = ctx.dims(m, -D, D);
    std::vector<int> negdims;
    for (int n = -D; n <= -1; ++n)
        if (dims.at(n)) negdims.push_back(n);
    rep.nonzero_negative_degrees = negdims;
    if (negdims.size() < needed || negdims.empty() || negdims.front() > -D + 2) {
        rep.verdict = Verdict::inconclusive;
        rep.witnesses.push_back("negative-degree support of the module is too thin");
        return rep;
    }
    {
        std::ostringstream row;
        row << "module nonzero in " << negdims.size() << " negative degrees down to " << negdims.front();
        rep.witnesses.push_back(row.str());
    }
    // (6) BFG tables at two windows; enlarging must not lower any N(m)
    int bound = std::min(action_bound, D);
    ProbeReport big = bfg_probe(ctx.module_structure(m, -D, D, bound));
    ProbeReport small = bfg_probe(ctx.module_structure(m, -(D - 2), D - 2, std::min(bound, D - 2)));
    rep.n_of_m = big.n_of_m;
    for (const std::string& w : big.witnesses) rep.witnesses.push_back(w);
    if (big.verdict != Verdict::evidence_for) {
        rep.verdict = big.verdict;
        rep.witnesses.push_back("action closure reaches the window bottom");
        return rep;
    }
    if (!bfg_stable(small, big)) {
        rep.verdict = Verdict::inconclusive;
        rep.witnesses.push_back("BFG table unstable under window growth");
        return rep;
    }
    rep.witnesses.push_back("BFG table stable under window growth");
    rep.verdict = Verdict::evidence_for;
    return rep;
}

ProbeReport fg_report_extension(TateCtx& ctx, const ExtensionSeq& s, int m, int n) {
    ProbeReport rep;
    rep.kind = "fg-extension";
    const int D = ctx.window();
    rep.lo = -D;
    rep.hi = D;
    if (s.left.dim() != ctx.tower().mod(m).dim())
        throw precondition_error("fg probe: left-hand term does not match the stated syzygy");
    if (s.right.dim() != ctx.tower().mod(n).dim())
        throw precondition_error("fg probe: right-hand term does not match the stated syzygy");
    if (!ctx.tower().has_level(n) || !ctx.tower().in_window(n + 1) ||
        !ctx.tower().in_window(n + 1 - m)) {
        rep.verdict = Verdict::inconclusive;
        rep.witnesses.push_back("window too small to extract the class");
        return rep;
    }
    Engine& eng = ctx.engine();
    // connect the identity of the right term: a class in Ext^1(T_n, T_m)
    const TowerLevel& ln = ctx.tower().level(n);
    std::vector<ModMap> homs = hom_basis(eng, ln.P, s.middle);
    const u32 p = eng.p();
    Mat rhs = ln.pi.mat;  // identity of T_n composed with pi
    const std::size_t amb = static_cast<std::size_t>(rhs.rows()) * rhs.cols();
    Mat cols(amb, homs.size(), p);
    for (std::size_t i = 0; i < homs.size(); ++i) {
        Vec flat = s.surj.mat.mul(homs[i].mat).vectorize();
        for (std::size_t r = 0; r < amb; ++r) cols.at(r, i) = flat[r];
    }
    auto sol = solve(cols, rhs.vectorize());
    if (!sol) throw internal_check_error("class extraction lift failed");
    Mat hhat(s.middle.dim(), ln.P.dim(), p);
    for (std::size_t i = 0; i < homs.size(); ++i)
        if ((*sol)[i]) hhat = hhat.add(homs[i].mat.scale((*sol)[i]));
    auto delta_rep = solve_many(s.inj.mat, hhat.mul(ln.incl.mat));
    if (!delta_rep) throw internal_check_error("class extraction escaped the left term");
    // normalize to a k-valued class of degree n+1-m by shifting down m steps
    ModMap delta_map{ctx.tower().mod(n + 1), ctx.tower().mod(m), *delta_rep};
    ModMap xi_map = ctx.shift_map(delta_map, n + 1, m, -m);
    TateClass xi{n + 1 - m, xi_map};
    rep.provenance["class_degree"] = std::to_string(xi.deg);
    if (ctx.is_zero(xi)) {
        rep.verdict = Verdict::evidence_for;
        rep.witnesses.push_back("split class: the module is a sum of syzygies of k");
        return rep;
    }
    // image degrees of multiplication by xi across the window
    std::vector<int> image_degrees;
    for (int t = -D; t <= D; ++t) {
        if (!ctx.tower().in_window(t + xi.deg)) continue;
        const Mat& table = ctx.cup_table(xi.deg, t);
        const StableHom& st = ctx.classes(t, ctx.k());
        const StableHom& sd = ctx.classes(t + xi.deg, ctx.k());
        if (!st.dim() || !sd.dim()) continue;
        Vec xic = ctx.class_coords(xi);
        Mat mult(sd.dim(), st.dim(), p);
        Fp F(p);
        for (std::size_t j = 0; j < st.dim(); ++j)
            for (std::size_t r = 0; r < sd.dim(); ++r) {
                u64 acc = 0;
                for (std::size_t i = 0; i < xic.size(); ++i)
                    acc += static_cast<u64>(xic[i]) * table.at(r, i * st.dim() + j);
                mult.at(r, j) = F.reduce(acc);
            }
        if (rank(mult) > 0) image_degrees.push_back(t + xi.deg);
    }
    {
        std::ostringstream row;
        row << "nonzero image degrees:";
        for (int d : image_degrees) row << " " << d;
        if (image_degrees.empty()) row << " none";
        rep.witnesses.push_back(row.str());
    }
    // concentrated image: nothing in the top quarter of the window
    int top_guard = D - std::max(2, D / 4);
    bool concentrated = true;
    for (int d : image_degrees)
        if (d >= top_guard) concentrated = false;
    rep.verdict = concentrated ? Verdict::evidence_for : Verdict::inconclusive;
    if (!concentrated)
        rep.witnesses.push_back("image keeps growing toward the window top: criterion not met");
    return rep;
}

}  // namespace tatekit
