#ifndef TATEKIT_PROBES_HPP
#define TATEKIT_PROBES_HPP

#include "tatekit/gadgets.hpp"

namespace tatekit {

// Window-scale verdicts only; no probe ever claims an asymptotic theorem.
enum class Verdict { verified_in_window, evidence_for, evidence_against, inconclusive };

const char* verdict_name(Verdict v);

struct ProbeReport {
    std::string kind;  // bfg | nonfg | fg-extension | regularity | negprod
    int lo = 0, hi = 0;
    Verdict verdict = Verdict::inconclusive;
    std::vector<std::string> witnesses;
    std::map<std::string, std::string> provenance;
    std::map<int, int> n_of_m;  // BFG table, keyed by m
    std::vector<int> nonzero_negative_degrees;
};

// N(m) = lowest degree reached by the ring-action closure of the part of the
// graded module above m. Reported for m in (lo, hi]; the closure of the whole
// window carries no information at m = lo.
ProbeReport bfg_probe(const GradedAction& g);

// evidence only when enlarging the window does not push any N(m) lower
bool bfg_stable(const ProbeReport& smaller, const ProbeReport& larger);

ProbeReport regular_on_positive(TateCtx& ctx, const TateClass& xi);

ProbeReport negative_products_zero(TateCtx& ctx);

enum class NonFgRoute { proposition, theorem };

// The non-finite-generation pipeline: regularity of xi, negative-product
// vanishing, kernel support concentrated in negative degrees with support
// reaching the window bottom, route-specific annihilation hypotheses, and a
// window-stable BFG table for H^*(A, M).
ProbeReport nonfg_report(TateCtx& ctx, const LXiData& lx, const Mod& m, NonFgRoute route,
                         u32 t = 1, int action_bound = 6);

// For a sequence 0 -> Omega^m k -> M -> Omega^n k -> 0: the class lives in
// degree n+1-m, and the probe asks that multiplication by it have in-window
// image concentrated away from the top.
ProbeReport fg_report_extension(TateCtx& ctx, const ExtensionSeq& s, int m, int n);

}  // namespace tatekit

#endif
