#include "tatekit/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "tatekit/errors.hpp"

namespace tatekit {

using json = nlohmann::ordered_json;

int default_window(const atlas::Entry& entry) {
    // minutes-scale defaults: wider windows for small algebras
    return entry.pres.dimension() <= 27 ? 8 : 6;
}

namespace {

atlas::Entry entry_from_cfg(const RunConfig& cfg) {
    if (!cfg.input_file.empty()) {
        atlas::Entry e;
        e.name = "file:" + cfg.input_file;
        e.pres = load_presentation_file(cfg.input_file);
        return e;
    }
    if (cfg.atlas_name.empty()) throw parse_error("no atlas name or presentation file given");
    return atlas::by_name(cfg.atlas_name, cfg.params);
}

json meta_json(const atlas::Entry& entry, int window, u64 seed) {
    json meta;
    meta["algebra"] = entry.name;
    json params;
    for (auto& [k, v] : entry.params) params[k] = v;
    meta["params"] = params;
    meta["window"] = window;
    meta["seed"] = seed;
    meta["engine_version"] = kEngineVersion;
    return meta;
}

std::string csv_from_tables(const json& tables) {
    std::ostringstream out;
    out << "table,key,value\n";
    for (auto& [tname, tval] : tables.items()) {
        if (!tval.is_object()) continue;
        for (auto& [key, val] : tval.items()) {
            out << tname << "," << key << ",";
            if (val.is_object() || val.is_array())
                out << val.dump();
            else
                out << val.dump();
            out << "\n";
        }
    }
    return out.str();
}

std::string text_from_report(const json& rep) {
    std::ostringstream out;
    const json& meta = rep.at("meta");
    out << "algebra " << meta.at("algebra").get<std::string>() << " (window " << meta.at("window")
        << ", seed " << meta.at("seed") << ")\n";
    if (rep.contains("build")) {
        const json& b = rep.at("build");
        out << "  dim " << b.at("dim") << ", symmetric: " << (b.at("symmetric").get<bool>() ? "yes" : "no")
            << ", associativity: " << b.at("associativity").get<std::string>()
            << ", hopf: " << b.at("hopf").get<std::string>() << "\n";
    }
    if (rep.contains("tables") && rep.at("tables").contains("dims")) {
        out << "  Tate dims:";
        for (auto& [key, val] : rep.at("tables").at("dims").items())
            out << " " << key << ":" << val.dump();
        out << "\n";
    }
    if (rep.contains("verdicts"))
        for (auto& v : rep.at("verdicts"))
            out << "  [" << v.at("kind").get<std::string>() << "] " << v.at("verdict").get<std::string>()
                << (v.contains("ok") ? (v.at("ok").get<bool>() ? " (expected)" : " (UNEXPECTED)") : "")
                << "\n";
    if (rep.contains("mismatches") && !rep.at("mismatches").empty()) {
        out << "  mismatches:\n";
        for (auto& m : rep.at("mismatches")) out << "    " << m.get<std::string>() << "\n";
    }
    return out.str();
}

RunResult finish(json rep, int exit_code) {
    RunResult out;
    out.exit_code = exit_code;
    out.report_json = rep.dump(2) + "\n";
    out.report_csv = rep.contains("tables") ? csv_from_tables(rep.at("tables")) : std::string("table,key,value\n");
    out.report_text = text_from_report(rep);
    return out;
}

struct Session {
    atlas::Entry entry;
    AlgPtr alg;
    bool symmetric = false;
    CheckReport assoc;
    CheckReport hopf;
    bool has_hopf = false;
    std::unique_ptr<Engine> eng;
};

Session open_session(const atlas::Entry& entry, bool exhaustive, u64 seed) {
    Session s;
    s.entry = entry;
    s.alg = build_algebra(entry.pres);
    s.assoc = verify_algebra(*s.alg, exhaustive, seed);
    s.has_hopf = s.alg->hopf.has_value();
    if (s.has_hopf) s.hopf = check_hopf(*s.alg, exhaustive || s.alg->dim <= 64, seed);
    try {
        s.alg = with_symmetrizing_form(s.alg);
        s.symmetric = true;
    } catch (const not_symmetric_error&) {
        s.symmetric = false;
    }
    s.eng = std::make_unique<Engine>(s.alg);
    return s;
}

json build_json(const Session& s) {
    json b;
    b["dim"] = s.alg->dim;
    b["symmetric"] = s.symmetric;
    b["associativity"] = s.assoc.pass ? "pass" : "fail";
    b["hopf"] = s.has_hopf ? (s.hopf.pass ? "pass" : "fail") : "absent";
    json labels = json::array();
    for (u32 i = 0; i < std::min<u32>(s.alg->dim, 64); ++i) labels.push_back(s.alg->labels[i]);
    b["basis_labels"] = labels;
    return b;
}

// first degree-2 class whose multiplication is injective on the positive window
std::optional<TateClass> first_regular_degree2(TateCtx& ctx) {
    for (std::size_t j = 0; j < ctx.classes(2, ctx.k()).dim(); ++j) {
        TateClass cand = ctx.basis_class(2, j);
        if (regular_on_positive(ctx, cand).verdict == Verdict::verified_in_window) return cand;
    }
    return std::nullopt;
}

Mod select_module(TateCtx& ctx, const std::string& sel) {
    if (sel == "k") return ctx.k();
    if (sel == "adjoint") return adjoint_module(ctx.engine().alg_ptr());
    if (sel == "armiddle") return ar_sequence_k(ctx).middle;
    if (sel.rfind("Lxi", 0) == 0) {
        u32 j = 0, t = 1;
        if (sel.size() > 4 && sel[3] == ':') {
            std::string restv = sel.substr(4);
            auto colon = restv.find(':');
            j = static_cast<u32>(std::stoul(restv.substr(0, colon)));
            if (colon != std::string::npos) t = static_cast<u32>(std::stoul(restv.substr(colon + 1)));
        }
        if (j >= ctx.classes(2, ctx.k()).dim()) throw precondition_error("Lxi: class index out of range");
        TateClass xi = power_class(ctx, ctx.basis_class(2, j), t);
        return build_L(ctx, xi).module;
    }
    throw parse_error("unknown module selector: " + sel);
}

json dims_json(TateCtx& ctx, const Mod& m, int lo, int hi) {
    json out;
    GradedDims d = ctx.dims(m, lo, hi);
    for (int n = lo; n <= hi; ++n) out[std::to_string(n)] = d.at(n);
    return out;
}

// published/oracle tables extended over the window by Tate duality
std::map<int, u32> expected_over_window(const std::vector<u32>& table, int D) {
    std::map<int, u32> out;
    for (int n = 0; n <= D && n < static_cast<int>(table.size()); ++n) out[n] = table[n];
    for (int n = 1; n <= D; ++n)
        if (out.count(n - 1)) out[-n] = out[n - 1];
    return out;
}

}  // namespace

RunResult run_build(const RunConfig& cfg) {
    atlas::Entry entry = entry_from_cfg(cfg);
    Session s = open_session(entry, cfg.exhaustive, cfg.seed);
    json rep;
    rep["meta"] = meta_json(entry, 0, cfg.seed);
    rep["build"] = build_json(s);
    json tables;
    json summary;
    summary["radical_dim"] = static_cast<u32>(s.eng->radical().dim());
    summary["blocks"] = static_cast<u32>(s.eng->num_blocks());
    tables["structure"] = summary;
    rep["tables"] = tables;
    int code = (s.assoc.pass && (!s.has_hopf || s.hopf.pass)) ? 0 : 1;
    return finish(std::move(rep), code);
}

RunResult run_tate(const RunConfig& cfg) {
    atlas::Entry entry = entry_from_cfg(cfg);
    Session s = open_session(entry, cfg.exhaustive, cfg.seed);
    if (!s.symmetric) throw not_symmetric_error("tate computation needs a certified symmetric algebra");
    int D = cfg.window >= 0 ? cfg.window : default_window(entry);
    TateCtx ctx(*s.eng, D);
    Mod m = select_module(ctx, cfg.module_sel);
    json rep;
    rep["meta"] = meta_json(entry, D, cfg.seed);
    rep["meta"]["module"] = cfg.module_sel;
    rep["build"] = build_json(s);
    json tables;
    tables["dims"] = dims_json(ctx, m, -D, D);
    rep["tables"] = tables;
    return finish(std::move(rep), 0);
}

RunResult run_probe(const RunConfig& cfg) {
    atlas::Entry entry = entry_from_cfg(cfg);
    Session s = open_session(entry, cfg.exhaustive, cfg.seed);
    if (!s.symmetric) throw not_symmetric_error("probes need a certified symmetric algebra");
    int D = cfg.window >= 0 ? cfg.window : default_window(entry);
    TateCtx ctx(*s.eng, D);
    std::vector<std::string> checks;
    if (cfg.check.empty() || cfg.check == "paper")
        checks = {"negprod", "regularity", "nonfg", "fg"};
    else
        checks = {cfg.check};
    json rep;
    rep["meta"] = meta_json(entry, D, cfg.seed);
    rep["build"] = build_json(s);
    json verdicts = json::array();
    json witnesses = json::array();
    json tables;
    bool any_unexpected = false, any_inconclusive = false;
    auto expected_verdict = [&](const std::string& kind) -> Verdict {
        if (kind == "negprod")
            return entry.expect_negative_products_zero ? Verdict::verified_in_window
                                                       : Verdict::evidence_against;
        if (kind == "regularity") return Verdict::verified_in_window;
        if (kind == "nonfg")
            return entry.expect_negative_products_zero ? Verdict::evidence_for : Verdict::evidence_against;
        // fg: periodic algebras give growing images, everything else concentrates
        return entry.expect_negative_products_zero ? Verdict::evidence_for : Verdict::inconclusive;
    };
    for (const std::string& kind : checks) {
        ProbeReport pr;
        if (kind == "negprod") {
            pr = negative_products_zero(ctx);
        } else if (kind == "regularity") {
            auto xi = first_regular_degree2(ctx);
            if (xi) {
                pr = regular_on_positive(ctx, *xi);
            } else {
                pr.kind = "regularity";
                pr.verdict = Verdict::evidence_against;
                pr.witnesses.push_back("no degree-2 class is injective in window");
            }
        } else if (kind == "nonfg") {
            auto xi = first_regular_degree2(ctx);
            if (!xi) xi = ctx.classes(2, ctx.k()).dim() ? std::optional<TateClass>(ctx.basis_class(2, 0))
                                                        : std::nullopt;
            if (!xi) {
                pr.kind = "nonfg";
                pr.verdict = Verdict::inconclusive;
                pr.witnesses.push_back("no degree-2 class available");
            } else {
                LXiData lx = build_L(ctx, *xi);
                pr = nonfg_report(ctx, lx, lx.module, NonFgRoute::proposition, 1, cfg.action_bound);
                json nm;
                for (auto& [m, n] : pr.n_of_m) nm[std::to_string(m)] = n;
                tables["N_of_m"] = nm;
            }
        } else if (kind == "fg") {
            pr = fg_report_extension(ctx, ar_sequence_k(ctx), 2, 0);
        } else {
            throw parse_error("unknown probe check: " + kind);
        }
        json v;
        v["kind"] = pr.kind.empty() ? kind : pr.kind;
        v["verdict"] = verdict_name(pr.verdict);
        Verdict expect = expected_verdict(kind);
        v["expected"] = verdict_name(expect);
        v["ok"] = pr.verdict == expect;
        if (pr.verdict != expect) {
            if (pr.verdict == Verdict::inconclusive)
                any_inconclusive = true;
            else
                any_unexpected = true;
        }
        verdicts.push_back(v);
        for (const std::string& w : pr.witnesses) witnesses.push_back(kind + ": " + w);
    }
    rep["tables"] = tables;
    rep["verdicts"] = verdicts;
    rep["witnesses"] = witnesses;
    int code = any_unexpected ? 1 : (any_inconclusive ? 4 : 0);
    return finish(std::move(rep), code);
}

RunResult run_verify(const std::string& bundle_name, int window_override, u64 seed) {
    // bundle names: <atlas>-<params...>, e.g. radford-2-5, vsl2-5
    std::vector<std::string> parts;
    {
        std::stringstream ss(bundle_name);
        std::string tok;
        while (std::getline(ss, tok, '-')) parts.push_back(tok);
    }
    if (parts.empty()) throw parse_error("empty bundle name");
    std::map<std::string, u32> params;
    atlas::Entry entry;
    if (parts[0] == "radford" && parts.size() == 3) {
        entry = atlas::radford(std::stoul(parts[1]), std::stoul(parts[2]));
    } else if (parts[0] == "vsl2" && parts.size() == 2) {
        entry = atlas::vsl2(std::stoul(parts[1]));
    } else if (parts[0] == "cyclic" && parts.size() == 2) {
        entry = atlas::cyclic(std::stoul(parts[1]));
    } else if (parts[0] == "truncated" && parts.size() == 3) {
        entry = atlas::truncated(std::stoul(parts[1]), std::stoul(parts[2]));
    } else {
        throw parse_error("unknown bundle: " + bundle_name);
    }
    Session s = open_session(entry, false, seed);
    json rep;
    int D = window_override >= 0 ? window_override : default_window(entry);
    rep["meta"] = meta_json(entry, D, seed);
    rep["meta"]["bundle"] = bundle_name;
    rep["build"] = build_json(s);
    json mismatches = json::array();
    if (!s.assoc.pass) mismatches.push_back("associativity check failed");
    if (s.has_hopf && !s.hopf.pass) mismatches.push_back("hopf axiom check failed");
    if (!s.symmetric) mismatches.push_back("no symmetrizing form found");
    json tables;
    json verdicts = json::array();
    json witnesses = json::array();
    bool inconclusive = false;
    if (s.symmetric) {
        TateCtx ctx(*s.eng, D);
        tables["dims"] = dims_json(ctx, ctx.k(), -D, D);
        // dimension tables against the published values and the derived oracle
        std::map<int, u32> published = expected_over_window(entry.expected_h, D);
        std::map<int, u32> oracle = expected_over_window(entry.oracle_h, D);
        json jpub, jora;
        bool pub_match = true, ora_match = true;
        GradedDims d = ctx.dims(ctx.k(), -D, D);
        for (auto& [n, val] : published) {
            jpub[std::to_string(n)] = val;
            if (d.at(n) != val) {
                pub_match = false;
                mismatches.push_back("dim at degree " + std::to_string(n) + ": computed " +
                                     std::to_string(d.at(n)) + ", published " + std::to_string(val));
            }
        }
        for (auto& [n, val] : oracle) {
            jora[std::to_string(n)] = val;
            if (d.at(n) != val) {
                ora_match = false;
                mismatches.push_back("dim at degree " + std::to_string(n) + ": computed " +
                                     std::to_string(d.at(n)) + ", oracle " + std::to_string(val));
            }
        }
        tables["dims_published"] = jpub;
        tables["dims_oracle"] = jora;
        rep["dims_match_published"] = pub_match;
        rep["dims_match_oracle"] = ora_match;
        // duality: dims reflect and pairings are nondegenerate
        json pairings;
        for (int n = -D + 1; n <= D; ++n) {
            if (!ctx.tower().in_window(n - 1) || !ctx.tower().in_window(-n)) continue;
            std::size_t dl = ctx.classes(n - 1, ctx.k()).dim();
            std::size_t dr = ctx.classes(-n, ctx.k()).dim();
            json cell;
            cell["left"] = static_cast<u32>(dl);
            cell["right"] = static_cast<u32>(dr);
            if (dl != dr) {
                mismatches.push_back("duality dims differ at n = " + std::to_string(n));
                cell["rank"] = 0;
            } else if (dl == 0) {
                cell["rank"] = 0;
            } else {
                std::size_t rk = rank(ctx.pairing_matrix(n));
                cell["rank"] = static_cast<u32>(rk);
                if (rk != dl)
                    mismatches.push_back("degenerate duality pairing at n = " + std::to_string(n));
            }
            pairings[std::to_string(n)] = cell;
        }
        tables["pairings"] = pairings;
        // probe suite
        auto push_verdict = [&](const ProbeReport& pr, Verdict expect) {
            json v;
            v["kind"] = pr.kind;
            v["verdict"] = verdict_name(pr.verdict);
            v["expected"] = verdict_name(expect);
            v["ok"] = pr.verdict == expect;
            verdicts.push_back(v);
            if (pr.verdict != expect) {
                if (pr.verdict == Verdict::inconclusive)
                    inconclusive = true;
                else
                    mismatches.push_back(pr.kind + ": verdict " + verdict_name(pr.verdict) +
                                         ", expected " + verdict_name(expect));
            }
            for (const std::string& w : pr.witnesses) witnesses.push_back(pr.kind + ": " + w);
        };
        ProbeReport neg = negative_products_zero(ctx);
        push_verdict(neg, entry.expect_negative_products_zero ? Verdict::verified_in_window
                                                              : Verdict::evidence_against);
        auto xi = first_regular_degree2(ctx);
        if (xi) {
            push_verdict(regular_on_positive(ctx, *xi), Verdict::verified_in_window);
            LXiData lx = build_L(ctx, *xi);
            ProbeReport nf = nonfg_report(ctx, lx, lx.module, NonFgRoute::proposition);
            push_verdict(nf, entry.expect_negative_products_zero ? Verdict::evidence_for
                                                                 : Verdict::evidence_against);
            json nm;
            for (auto& [m, n] : nf.n_of_m) nm[std::to_string(m)] = n;
            tables["N_of_m"] = nm;
        } else if (entry.name != "cyclic") {
            mismatches.push_back("no regular degree-2 class found");
        } else {
            // periodic case: the degree-2 class is regular but its kernel
            // module vanishes; record the nonfg prerequisites as refuted
            push_verdict(regular_on_positive(ctx, ctx.basis_class(2, 0)), Verdict::verified_in_window);
        }
        ProbeReport fg = fg_report_extension(ctx, ar_sequence_k(ctx), 2, 0);
        push_verdict(fg, entry.expect_negative_products_zero ? Verdict::evidence_for
                                                             : Verdict::inconclusive);
    }
    rep["tables"] = tables;
    rep["verdicts"] = verdicts;
    rep["witnesses"] = witnesses;
    rep["mismatches"] = mismatches;
    int code = mismatches.empty() ? (inconclusive ? 4 : 0) : 1;
    return finish(std::move(rep), code);
}

}  // namespace tatekit
