#include "tatekit/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tatekit/errors.hpp"

namespace tatekit {

using json = nlohmann::ordered_json;

void Presentation::validate() const {
    if (!is_prime(p)) throw precondition_error("char_p must be prime, got " + std::to_string(p));
    if (p <= 3) throw precondition_error("engine requires p > 3 (idempotent lifting), got p = " + std::to_string(p));
    const std::size_t r = gens.size();
    if (r == 0) throw precondition_error("presentation needs at least one generator");
    if (bounds.size() != r || power_rhs.size() != r || epsilon.size() != r)
        throw parse_error("generator-indexed fields have inconsistent lengths");
    for (u32 b : bounds)
        if (b < 1) throw precondition_error("exponent bounds must be >= 1");
    if (swap_rhs.size() != r) throw parse_error("swaps table has wrong shape");
    for (std::size_t hi = 0; hi < r; ++hi)
        if (swap_rhs[hi].size() != hi)
            throw parse_error("swaps table has wrong shape at generator " + gens[hi]);
    auto check_normal = [&](const Lin& lin, const std::string& where) {
        for (const Term& t : lin) {
            if (t.exps.size() != r) throw parse_error(where + ": monomial exponent vector has wrong length");
            for (std::size_t i = 0; i < r; ++i)
                if (t.exps[i] >= bounds[i])
                    throw parse_error(where + ": rule right-hand side is not in normal form");
            if (t.coeff == 0 || t.coeff >= p) throw parse_error(where + ": coefficient out of range");
        }
        for (std::size_t i = 1; i < lin.size(); ++i)
            if (!(lin[i - 1].exps < lin[i].exps)) throw parse_error(where + ": monomials not sorted/unique");
    };
    for (std::size_t i = 0; i < r; ++i) check_normal(power_rhs[i], "power rule for " + gens[i]);
    for (std::size_t hi = 0; hi < r; ++hi)
        for (std::size_t lo = 0; lo < hi; ++lo)
            check_normal(swap_rhs[hi][lo], "swap rule " + gens[hi] + "*" + gens[lo]);
    for (u32 e : epsilon)
        if (e >= p) throw parse_error("epsilon value out of range");
    if (hopf) {
        if (hopf->delta.size() != r || hopf->antipode.size() != r)
            throw parse_error("hopf data has wrong shape");
        for (std::size_t i = 0; i < r; ++i) {
            for (const TensorTerm& t : hopf->delta[i])
                if (t.left.size() != r || t.right.size() != r || t.coeff == 0 || t.coeff >= p)
                    throw parse_error("bad delta term for generator " + gens[i]);
            check_normal(hopf->antipode[i], "antipode of " + gens[i]);
        }
    }
}

SparseVec sparse_from_dense(const Vec& dense) {
    SparseVec s;
    for (u32 i = 0; i < dense.size(); ++i)
        if (dense[i]) s.terms.emplace_back(i, dense[i]);
    return s;
}

Vec sparse_to_dense(const SparseVec& s, std::size_t dim) {
    Vec v(dim, 0);
    for (auto& [i, c] : s.terms) v[i] = c;
    return v;
}

SparseVec sparse_add(const Fp& F, const SparseVec& a, const SparseVec& b) {
    SparseVec out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        if (a.terms[i].first < b.terms[j].first)
            out.terms.push_back(a.terms[i++]);
        else if (a.terms[i].first > b.terms[j].first)
            out.terms.push_back(b.terms[j++]);
        else {
            u32 c = F.add(a.terms[i].second, b.terms[j].second);
            if (c) out.terms.emplace_back(a.terms[i].first, c);
            ++i, ++j;
        }
    }
    for (; i < a.terms.size(); ++i) out.terms.push_back(a.terms[i]);
    for (; j < b.terms.size(); ++j) out.terms.push_back(b.terms[j]);
    return out;
}

SparseVec sparse_scale(const Fp& F, const SparseVec& a, u32 c) {
    SparseVec out;
    if (c % F.p == 0) return out;
    out.terms.reserve(a.terms.size());
    for (auto& [i, x] : a.terms) out.terms.emplace_back(i, F.mul(x, c));
    return out;
}

u32 monomial_index(const Presentation& pres, const Exps& e) {
    u64 idx = 0;
    for (std::size_t i = 0; i < pres.bounds.size(); ++i) idx = idx * pres.bounds[i] + e[i];
    return static_cast<u32>(idx);
}

Exps monomial_exps(const Presentation& pres, u32 index) {
    const std::size_t r = pres.bounds.size();
    Exps e(r, 0);
    u64 idx = index;
    for (std::size_t i = r; i-- > 0;) {
        e[i] = static_cast<std::uint16_t>(idx % pres.bounds[i]);
        idx /= pres.bounds[i];
    }
    return e;
}

std::string monomial_label(const Presentation& pres, const Exps& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!s.empty()) s += "*";
        s += pres.gens[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

std::vector<Exps> enumerate_basis(const Presentation& pres) {
    const u64 dim = pres.dimension();
    std::vector<Exps> out;
    out.reserve(dim);
    for (u64 i = 0; i < dim; ++i) out.push_back(monomial_exps(pres, static_cast<u32>(i)));
    return out;
}

namespace {

using Word = std::vector<u32>;

Word exps_to_word(const Exps& e) {
    Word w;
    for (u32 i = 0; i < e.size(); ++i)
        for (u32 k = 0; k < e[i]; ++k) w.push_back(i);
    return w;
}

// Find the leftmost violation in a word: either an inversion w[k] > w[k+1]
// or a maximal run reaching the exponent bound. Returns (kind, position).
enum class Violation { none, inversion, power };

std::pair<Violation, std::size_t> first_violation(const Presentation& pres, const Word& w) {
    std::size_t run_start = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k > 0 && w[k] != w[k - 1]) run_start = k;
        if (k - run_start + 1 >= pres.bounds[w[k]]) return {Violation::power, run_start};
        if (k + 1 < w.size() && w[k] > w[k + 1]) return {Violation::inversion, k};
    }
    return {Violation::none, 0};
}

}  // namespace

SparseVec normal_form_word(const Presentation& pres, const Word& word, std::size_t budget) {
    const Fp F(pres.p);
    // worklist of (word, coeff); accumulate finished normal words densely
    Vec acc(pres.dimension(), 0);
    std::vector<std::pair<Word, u32>> work;
    work.emplace_back(word, 1);
    std::size_t steps = 0;
    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        if (c % pres.p == 0) continue;
        auto [kind, pos] = first_violation(pres, w);
        if (kind == Violation::none) {
            Exps e(pres.num_gens(), 0);
            for (u32 g : w) ++e[g];
            u32 idx = monomial_index(pres, e);
            acc[idx] = F.add(acc[idx], c);
            continue;
        }
        if (++steps > budget)
            throw nontermination_error("rewrite-step budget exceeded: presentation may not terminate");
        if (kind == Violation::inversion) {
            u32 hi = w[pos], lo = w[pos + 1];
            const Lin& rhs = pres.swap_rhs[hi][lo];
            for (const Term& t : rhs) {
                Word nw(w.begin(), w.begin() + pos);
                Word mid = exps_to_word(t.exps);
                nw.insert(nw.end(), mid.begin(), mid.end());
                nw.insert(nw.end(), w.begin() + pos + 2, w.end());
                work.emplace_back(std::move(nw), F.mul(c, t.coeff));
            }
        } else {
            u32 g = w[pos];
            u32 n = pres.bounds[g];
            const Lin& rhs = pres.power_rhs[g];
            for (const Term& t : rhs) {
                Word nw(w.begin(), w.begin() + pos);
                Word mid = exps_to_word(t.exps);
                nw.insert(nw.end(), mid.begin(), mid.end());
                nw.insert(nw.end(), w.begin() + pos + n, w.end());
                work.emplace_back(std::move(nw), F.mul(c, t.coeff));
            }
        }
    }
    return sparse_from_dense(acc);
}

SparseVec normal_form_mono_times_gen(const Presentation& pres, const Exps& mono, u32 gen,
                                     std::size_t budget) {
    Word w = exps_to_word(mono);
    w.push_back(gen);
    return normal_form_word(pres, w, budget);
}

namespace {

Lin lin_from_json(const json& j, std::size_t r, u32 p) {
    Lin out;
    for (const auto& t : j) {
        Term term;
        long long c = t.at("coeff").get<long long>();
        long long cm = c % static_cast<long long>(p);
        if (cm < 0) cm += p;
        term.coeff = static_cast<u32>(cm);
        for (const auto& e : t.at("monomial")) term.exps.push_back(e.get<std::uint16_t>());
        if (term.exps.size() != r) throw parse_error("monomial exponent vector has wrong length");
        if (term.coeff) out.push_back(std::move(term));
    }
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.exps < b.exps; });
    return out;
}

json lin_to_json(const Lin& lin) {
    json arr = json::array();
    for (const Term& t : lin) {
        json jt;
        jt["coeff"] = t.coeff;
        jt["monomial"] = t.exps;
        arr.push_back(jt);
    }
    return arr;
}

}  // namespace

Presentation presentation_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number for the error message
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw parse_error("presentation parse error at line " + std::to_string(line) + ": " + e.what());
    }
    try {
        Presentation pres;
        pres.p = j.at("char_p").get<u32>();
        for (const auto& g : j.at("generators")) pres.gens.push_back(g.get<std::string>());
        const std::size_t r = pres.gens.size();
        auto gen_index = [&](const std::string& name) -> std::size_t {
            for (std::size_t i = 0; i < r; ++i)
                if (pres.gens[i] == name) return i;
            throw parse_error("unknown generator name: " + name);
        };
        pres.bounds.assign(r, 0);
        pres.power_rhs.assign(r, {});
        for (const auto& pw : j.at("powers")) {
            std::size_t i = gen_index(pw.at("gen").get<std::string>());
            pres.bounds[i] = pw.at("bound").get<u32>();
            pres.power_rhs[i] = lin_from_json(pw.at("rhs"), r, pres.p);
        }
        pres.swap_rhs.resize(r);
        for (std::size_t hi = 0; hi < r; ++hi) pres.swap_rhs[hi].resize(hi);
        if (j.contains("swaps"))
            for (const auto& sw : j.at("swaps")) {
                std::size_t hi = gen_index(sw.at("hi").get<std::string>());
                std::size_t lo = gen_index(sw.at("lo").get<std::string>());
                if (hi <= lo) throw parse_error("swap rule must have hi > lo in generator order");
                pres.swap_rhs[hi][lo] = lin_from_json(sw.at("rhs"), r, pres.p);
            }
        for (const auto& e : j.at("epsilon")) pres.epsilon.push_back(e.get<u32>() % pres.p);
        if (j.contains("hopf") && !j.at("hopf").is_null()) {
            HopfGenData hd;
            hd.delta.resize(r);
            hd.antipode.resize(r);
            for (const auto& d : j.at("hopf").at("delta")) {
                std::size_t i = gen_index(d.at("gen").get<std::string>());
                for (const auto& t : d.at("terms")) {
                    TensorTerm tt;
                    tt.coeff = t.at("coeff").get<u32>() % pres.p;
                    for (const auto& e : t.at("left")) tt.left.push_back(e.get<std::uint16_t>());
                    for (const auto& e : t.at("right")) tt.right.push_back(e.get<std::uint16_t>());
                    if (tt.coeff) hd.delta[i].push_back(std::move(tt));
                }
            }
            for (const auto& s : j.at("hopf").at("antipode")) {
                std::size_t i = gen_index(s.at("gen").get<std::string>());
                hd.antipode[i] = lin_from_json(s.at("rhs"), r, pres.p);
            }
            pres.hopf = std::move(hd);
        }
        pres.validate();
        return pres;
    } catch (const json::exception& e) {
        throw parse_error(std::string("presentation field error: ") + e.what());
    }
}

std::string presentation_to_json_text(const Presentation& pres) {
    json j;
    j["char_p"] = pres.p;
    j["generators"] = pres.gens;
    json powers = json::array();
    for (std::size_t i = 0; i < pres.num_gens(); ++i) {
        json pw;
        pw["gen"] = pres.gens[i];
        pw["bound"] = pres.bounds[i];
        pw["rhs"] = lin_to_json(pres.power_rhs[i]);
        powers.push_back(pw);
    }
    j["powers"] = powers;
    json swaps = json::array();
    for (std::size_t hi = 0; hi < pres.num_gens(); ++hi)
        for (std::size_t lo = 0; lo < hi; ++lo) {
            json sw;
            sw["hi"] = pres.gens[hi];
            sw["lo"] = pres.gens[lo];
            sw["rhs"] = lin_to_json(pres.swap_rhs[hi][lo]);
            swaps.push_back(sw);
        }
    j["swaps"] = swaps;
    j["epsilon"] = pres.epsilon;
    if (pres.hopf) {
        json hd;
        json deltas = json::array();
        for (std::size_t i = 0; i < pres.num_gens(); ++i) {
            json d;
            d["gen"] = pres.gens[i];
            json terms = json::array();
            for (const TensorTerm& t : pres.hopf->delta[i]) {
                json jt;
                jt["coeff"] = t.coeff;
                jt["left"] = t.left;
                jt["right"] = t.right;
                terms.push_back(jt);
            }
            d["terms"] = terms;
            deltas.push_back(d);
        }
        hd["delta"] = deltas;
        json antis = json::array();
        for (std::size_t i = 0; i < pres.num_gens(); ++i) {
            json s;
            s["gen"] = pres.gens[i];
            s["rhs"] = lin_to_json(pres.hopf->antipode[i]);
            antis.push_back(s);
        }
        hd["antipode"] = antis;
        j["hopf"] = hd;
    }
    return j.dump(2) + "\n";
}

Presentation load_presentation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open presentation file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return presentation_from_json_text(ss.str());
}

void save_presentation_file(const Presentation& pres, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw error("cannot write presentation file: " + path);
    out << presentation_to_json_text(pres);
}

}  // namespace tatekit
