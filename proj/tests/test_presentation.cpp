#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tatekit/atlas.hpp"
#include "tatekit/presentation.hpp"

using namespace tatekit;

TEST_CASE("radford swap rule: y*x straightens to 4*x*y over F5") {
    Presentation pres = atlas::radford(2, 5).pres;
    // word [y, x]: generator order is x < y < g
    SparseVec nf = normal_form_word(pres, {1, 0});
    REQUIRE(nf.terms.size() == 1);
    Exps e{1, 1, 0};
    CHECK(nf.terms[0].first == monomial_index(pres, e));
    CHECK(nf.terms[0].second == 4);
}

TEST_CASE("radford power rule: g*g rewrites to 1") {
    Presentation pres = atlas::radford(2, 5).pres;
    SparseVec nf = normal_form_word(pres, {2, 2});
    REQUIRE(nf.terms.size() == 1);
    CHECK(nf.terms[0].first == 0);
    CHECK(nf.terms[0].second == 1);
}

TEST_CASE("sl2 swap rule: f*e = e*f - h") {
    Presentation pres = atlas::vsl2(5).pres;
    // generator order e < f < h
    SparseVec nf = normal_form_word(pres, {1, 0});
    Exps ef{1, 1, 0}, h{0, 0, 1};
    Vec dense = sparse_to_dense(nf, pres.dimension());
    CHECK(dense[monomial_index(pres, ef)] == 1);
    CHECK(dense[monomial_index(pres, h)] == 4);  // -1 mod 5
    u32 nonzero = 0;
    for (u32 c : dense)
        if (c) ++nonzero;
    CHECK(nonzero == 2);
}

TEST_CASE("basis sizes") {
    CHECK(enumerate_basis(atlas::radford(2, 5).pres).size() == 8);
    CHECK(enumerate_basis(atlas::vsl2(5).pres).size() == 125);
    CHECK(enumerate_basis(atlas::truncated(2, 5).pres).size() == 4);
    CHECK(atlas::vsl2(7).pres.dimension() == 343);
}

TEST_CASE("normal form is idempotent on its own outputs") {
    Presentation pres = atlas::vsl2(5).pres;
    // straighten a scrambled word, then re-normalize every output monomial
    SparseVec nf = normal_form_word(pres, {2, 1, 0, 2, 1, 0});
    for (auto& [idx, c] : nf.terms) {
        Exps e = monomial_exps(pres, idx);
        std::vector<u32> word;
        for (u32 i = 0; i < e.size(); ++i)
            for (u32 k = 0; k < e[i]; ++k) word.push_back(i);
        SparseVec again = normal_form_word(pres, word);
        REQUIRE(again.terms.size() == 1);
        CHECK(again.terms[0].first == idx);
        CHECK(again.terms[0].second == 1);
    }
}

TEST_CASE("rewrite budget triggers on a non-terminating presentation") {
    Presentation pres;
    pres.p = 5;
    pres.gens = {"a", "b"};
    pres.bounds = {2, 2};
    pres.power_rhs = {{}, {}};
    pres.swap_rhs.resize(2);
    pres.swap_rhs[1].resize(1);
    // b*a -> 2*b*a in disguise: rhs not in normal form is rejected by
    // validate, so feed a legal-but-looping rule through a*b ordering trick:
    // b*a -> a*b, a power rule a^2 -> a*b ... a*b is normal; keep legal data
    // but make the loop via power: a^2 -> a^2 is illegal (not normal), so
    // instead drive the budget with a tiny budget on a legitimate word.
    Term t;
    t.exps = {1, 1};
    t.coeff = 1;
    pres.swap_rhs[1][0] = {t};
    pres.epsilon = {0, 0};
    pres.validate();
    // budget 1 cannot finish straightening b*a*b*a
    CHECK_THROWS_AS(normal_form_word(pres, {1, 0, 1, 0}, 1), nontermination_error);
}

TEST_CASE("presentation json round trip") {
    Presentation pres = atlas::radford(2, 5).pres;
    std::string text = presentation_to_json_text(pres);
    Presentation back = presentation_from_json_text(text);
    CHECK(back.p == pres.p);
    CHECK(back.gens == pres.gens);
    CHECK(back.bounds == pres.bounds);
    CHECK(back.epsilon == pres.epsilon);
    REQUIRE(back.hopf.has_value());
    CHECK(presentation_to_json_text(back) == text);
}

TEST_CASE("parse errors carry line info") {
    try {
        presentation_from_json_text("{\n  \"char_p\": 5,\n  broken\n}");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("validate rejects non-normal rule right-hand sides") {
    Presentation pres = atlas::truncated(2, 5).pres;
    Term bad;
    bad.exps = {2, 0};  // exponent at the bound
    bad.coeff = 1;
    pres.power_rhs[0] = {bad};
    CHECK_THROWS_AS(pres.validate(), parse_error);
}

TEST_CASE("validate rejects small characteristic") {
    Presentation pres = atlas::truncated(2, 5).pres;
    pres.p = 3;
    CHECK_THROWS_AS(pres.validate(), precondition_error);
}
