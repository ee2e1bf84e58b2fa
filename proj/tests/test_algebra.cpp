#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "tatekit/algebra.hpp"
#include "tatekit/atlas.hpp"

using namespace tatekit;

namespace {

AlgPtr radford25() {
    static AlgPtr a = build_algebra(atlas::radford(2, 5).pres);
    return a;
}
AlgPtr cyclic5() {
    static AlgPtr a = build_algebra(atlas::cyclic(5).pres);
    return a;
}
AlgPtr truncated25() {
    static AlgPtr a = build_algebra(atlas::truncated(2, 5).pres);
    return a;
}
AlgPtr vsl25() {
    static AlgPtr a = build_algebra(atlas::vsl2(5).pres);
    return a;
}

}  // namespace

TEST_CASE("radford(2,5) tabulates with the published counit values") {
    AlgPtr a = radford25();
    CHECK(a->dim == 8);
    Presentation pres = atlas::radford(2, 5).pres;
    CHECK(a->epsilon[monomial_index(pres, {1, 0, 0})] == 0);  // eps(x) = 0
    CHECK(a->epsilon[monomial_index(pres, {0, 0, 1})] == 1);  // eps(g) = 1
    CHECK(verify_algebra(*a).pass);
}

TEST_CASE("cyclic(5) is the group algebra with group-like generator") {
    AlgPtr a = cyclic5();
    CHECK(a->dim == 5);
    REQUIRE(a->hopf.has_value());
    u32 s = a->gen_basis[0];
    REQUIRE(a->hopf->delta[s].terms.size() == 1);
    CHECK(a->hopf->delta[s].terms[0].first == s * a->dim + s);  // delta(s) = s(x)s
    CHECK(verify_algebra(*a).pass);
    CHECK(check_hopf(*a).pass);
}

TEST_CASE("vsl2(5) builds at dimension 125 with primitive generators") {
    AlgPtr a = vsl25();
    CHECK(a->dim == 125);
    u32 e = a->gen_basis[0];
    REQUIRE(a->hopf.has_value());
    SparseVec expect;  // delta(e) = e(x)1 + 1(x)e
    expect.terms.emplace_back(0 * a->dim + e, 1u);
    expect.terms.emplace_back(e * a->dim + 0, 1u);
    std::sort(expect.terms.begin(), expect.terms.end());
    CHECK(a->hopf->delta[e] == expect);
    CHECK(verify_algebra(*a, false, 0, 100000).pass);
    CHECK(check_hopf(*a).pass);
}

TEST_CASE("hopf axioms hold on every basis element for the small atlas algebras") {
    CHECK(check_hopf(*radford25(), true).pass);
    CHECK(check_hopf(*cyclic5(), true).pass);
}

TEST_CASE("corrupted hopf data is caught") {
    // dropping the x (x) g term keeps delta multiplicative on the relations,
    // so the build succeeds and the counit axiom reports the damage
    Presentation pres = atlas::radford(2, 5).pres;
    pres.hopf->delta[0].pop_back();
    AlgPtr a = build_algebra(pres);
    CheckReport rep = check_hopf(*a, true);
    CHECK_FALSE(rep.pass);
    CHECK(!rep.violations.empty());
    // a delta that breaks a relation is rejected at build time:
    // make x group-like, which contradicts x^2 = 0
    Presentation pres2 = atlas::radford(2, 5).pres;
    pres2.hopf->delta[0] = {pres2.hopf->delta[2][0]};
    pres2.hopf->delta[0][0].left = {1, 0, 0};
    pres2.hopf->delta[0][0].right = {1, 0, 0};
    CHECK_THROWS_AS(build_algebra(pres2), precondition_error);
    // wrong antipode sign survives the relation screen, fails the axiom
    Presentation pres3 = atlas::radford(2, 5).pres;
    pres3.hopf->antipode[0][0].coeff = 1;
    AlgPtr a3 = build_algebra(pres3);
    CHECK_FALSE(check_hopf(*a3, true).pass);
}

TEST_CASE("broken swap coefficient fails associativity with a witness") {
    Presentation pres = atlas::radford(2, 5).pres;
    pres.hopf.reset();  // the hopf relation screen would reject this earlier
    pres.swap_rhs[2][0][0].coeff = 2;  // wrong scalar in g x = w^{-1} x g
    AlgPtr a = build_algebra(pres);
    CheckReport rep = verify_algebra(*a);
    CHECK_FALSE(rep.pass);
    CHECK(!rep.violations.empty());
}

TEST_CASE("opposite: commutative algebras are fixed, the square is the identity") {
    AlgPtr b = truncated25();
    AlgPtr bop = opposite(b);
    CHECK(bop->table == b->table);
    AlgPtr a = radford25();
    AlgPtr aop = opposite(a);
    CHECK(aop->table != a->table);
    CHECK(opposite(aop)->table == a->table);
    CHECK(verify_algebra(*aop).pass);
}

TEST_CASE("opposite swaps the product arguments on radford generators") {
    AlgPtr a = radford25();
    Presentation pres = atlas::radford(2, 5).pres;
    u32 x = monomial_index(pres, {1, 0, 0});
    u32 g = monomial_index(pres, {0, 0, 1});
    AlgPtr aop = opposite(a);
    CHECK(aop->prod(g, x) == a->prod(x, g));
    CHECK(aop->prod(x, g) == a->prod(g, x));
}

TEST_CASE("tensor of the two periodic strands matches the straightened truncated algebra") {
    Presentation one;
    one.p = 5;
    one.gens = {"t"};
    one.bounds = {2};
    one.power_rhs.resize(1);
    one.swap_rhs.resize(1);
    one.epsilon = {0};
    one.validate();
    AlgPtr strand = build_algebra(one);
    AlgPtr prod = tensor(strand, strand);
    AlgPtr direct = truncated25();
    CHECK(prod->dim == 4);
    CHECK(prod->table == direct->table);
    CHECK(prod->epsilon == direct->epsilon);
}

TEST_CASE("tensor dimension multiplicativity and unit factor") {
    AlgPtr c = cyclic5();
    CHECK(tensor(c, c)->dim == 25);
    Presentation unitp;
    unitp.p = 5;
    unitp.gens = {"u"};
    unitp.bounds = {1};
    unitp.power_rhs.resize(1);
    unitp.swap_rhs.resize(1);
    unitp.epsilon = {1};
    unitp.validate();
    AlgPtr unit = build_algebra(unitp);
    REQUIRE(unit->dim == 1);
    AlgPtr prod = tensor(c, unit);
    CHECK(prod->dim == c->dim);
    CHECK(prod->table == c->table);
}

TEST_CASE("symmetrizing forms: group algebra and radford are symmetric") {
    auto t1 = symmetrizing_form(*cyclic5());
    REQUIRE(t1.has_value());
    CHECK(rank(gram_matrix(*cyclic5(), *t1)) == 5);
    auto t2 = symmetrizing_form(*radford25());
    REQUIRE(t2.has_value());
    CHECK(rank(gram_matrix(*radford25(), *t2)) == 8);
    const Alg& a = *radford25();
    for (u32 u = 0; u < a.dim; ++u)
        for (u32 v = 0; v < a.dim; ++v) {
            u64 uv = 0, vu = 0;
            for (auto& [k, c] : a.prod(u, v).terms) uv += static_cast<u64>(c) * (*t2)[k];
            for (auto& [k, c] : a.prod(v, u).terms) vu += static_cast<u64>(c) * (*t2)[k];
            CHECK(uv % 5 == vu % 5);
        }
}

TEST_CASE("the opposite algebra accepts the same symmetrizing form") {
    AlgPtr a = with_symmetrizing_form(radford25());
    AlgPtr aop = opposite(a);
    REQUIRE(aop->symform.has_value());
    CHECK(rank(gram_matrix(*aop, *aop->symform)) == 8);
}

TEST_CASE("a non-Frobenius fixture is declared NotSymmetric") {
    // upper triangular 2x2 matrices: basis e11, e12, e22; unit = e11 + e22
    auto alg = std::make_shared<Alg>();
    alg->p = 5;
    alg->dim = 3;
    alg->labels = {"e11", "e12", "e22"};
    alg->unit_index = 0;
    alg->epsilon = {0, 0, 0};
    alg->gen_basis = {0, 1, 2};
    alg->table.assign(9, {});
    auto set = [&](u32 u, u32 v, std::initializer_list<std::pair<u32, u32>> terms) {
        SparseVec s;
        for (auto& t : terms) s.terms.push_back(t);
        alg->table[u * 3 + v] = s;
    };
    set(0, 0, {{0u, 1u}});
    set(0, 1, {{1u, 1u}});
    set(1, 2, {{1u, 1u}});
    set(2, 2, {{2u, 1u}});
    CHECK_FALSE(symmetrizing_form(*alg).has_value());
}

TEST_CASE("symmetrizing form found for vsl2(5)") {
    auto t = symmetrizing_form(*vsl25());
    REQUIRE(t.has_value());
    CHECK(rank(gram_matrix(*vsl25(), *t)) == 125);
}
