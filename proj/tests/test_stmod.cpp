#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "tatekit/stmod.hpp"

using namespace tatekit;
using testing::brute_hom;
using testing::brute_stable_dim;
using testing::engine_for;

TEST_CASE("hom dimensions on the worked examples") {
    Engine& ra = engine_for("radford25");
    Engine& cy = engine_for("cyclic5");
    CHECK(hom_basis(ra, ra.trivial(), ra.trivial()).size() == 1);
    CHECK(hom_basis(cy, cy.regular(), cy.regular()).size() == 5);
    CHECK(hom_basis(ra, ra.regular(), ra.trivial()).size() == 1);
    CHECK(hom_basis(ra, ra.trivial(), ra.regular()).size() == 1);  // socle
}

TEST_CASE("hom agrees with the raw intertwiner oracle") {
    for (const char* which : {"cyclic5", "radford25", "truncated25"}) {
        Engine& eng = engine_for(which);
        Mod k = eng.trivial();
        Mod o1 = eng.syzygy(k, 1);
        Mod o2 = eng.syzygy(k, 2);
        Mod mods[] = {k, o1, o2, eng.regular()};
        for (const Mod& m : mods)
            for (const Mod& n : mods) {
                CAPTURE(which);
                CHECK(hom_basis(eng, m, n).size() == brute_hom(m, n).size());
            }
    }
}

TEST_CASE("hom basis members are genuine module maps") {
    Engine& eng = engine_for("radford25");
    Mod o2 = eng.syzygy(eng.trivial(), 2);
    for (const ModMap& h : hom_basis(eng, o2, eng.syzygy(eng.trivial(), 1)))
        CHECK(h.is_intertwiner());
}

TEST_CASE("stable hom on the worked examples") {
    Engine& ra = engine_for("radford25");
    Engine& cy = engine_for("cyclic5");
    CHECK(stable_hom(ra, ra.trivial(), ra.trivial()).dim() == 1);
    CHECK(stable_hom(cy, cy.trivial(), cy.trivial()).dim() == 1);
    CHECK(stable_hom(ra, ra.regular(), ra.trivial()).dim() == 0);  // projective source
}

TEST_CASE("stable hom agrees with the free-module factoring oracle") {
    for (const char* which : {"cyclic5", "radford25"}) {
        Engine& eng = engine_for(which);
        Mod k = eng.trivial();
        Mod o1 = eng.syzygy(k, 1);
        Mod o2 = eng.syzygy(k, 2);
        Mod mods[] = {k, o1, o2};
        for (const Mod& m : mods)
            for (const Mod& n : mods) {
                CAPTURE(which);
                CHECK(stable_hom(eng, m, n).dim() == brute_stable_dim(eng, m, n));
            }
    }
}

TEST_CASE("stable hom is independent of the covering surjection") {
    Engine& eng = engine_for("radford25");
    Mod k = eng.trivial();
    Mod o2 = eng.syzygy(k, 2);
    const Cover& cov = eng.cover(k);
    // fatter surjection P(k) (+) A --[pi, eps-row]--> k
    DirectSum ds = direct_sum({cov.P, eng.regular()});
    Mat fat(1, ds.sum.dim(), eng.p());
    for (u32 j = 0; j < cov.P.dim(); ++j) fat.at(0, j) = cov.pi.mat.at(0, j);
    for (u32 j = 0; j < eng.alg().dim; ++j) fat.at(0, cov.P.dim() + j) = eng.alg().epsilon[j];
    ModMap fat_surj{ds.sum, k, fat};
    REQUIRE(fat_surj.is_intertwiner());
    Subspace f1 = factoring_subspace(eng, o2, cov.pi);
    Subspace f2 = factoring_subspace(eng, o2, fat_surj);
    CHECK(f1.dim() == f2.dim());
    CHECK(f1 == f2);
}

TEST_CASE("tensor with the trivial module is the canonical identity") {
    Engine& eng = engine_for("radford25");
    Mod o1 = eng.syzygy(eng.trivial(), 1);
    Mod t = tensor_mod(eng.trivial(), o1);
    REQUIRE(t.dim() == o1.dim());
    for (std::size_t g = 0; g < o1.num_gens(); ++g)
        CHECK(t.act_gen(static_cast<u32>(g)) == o1.act_gen(static_cast<u32>(g)));
}

TEST_CASE("tensor square of the first syzygy has dimension 9") {
    Engine& eng = engine_for("radford25");
    Mod o1 = eng.syzygy(eng.trivial(), 1);
    CHECK(tensor_mod(o1, o1).dim() == 9);
    CHECK(tensor_mod(o1, o1).check_module_axioms());
}

TEST_CASE("tensor product needs Hopf data") {
    Engine& eng = engine_for("truncated25");
    CHECK_THROWS_AS(tensor_mod(eng.trivial(), eng.trivial()), hopf_absent_error);
}

TEST_CASE("dual of the trivial module is itself, exactly") {
    Engine& eng = engine_for("radford25");
    Mod dk = dual_mod(eng.trivial());
    REQUIRE(dk.dim() == 1);
    for (std::size_t g = 0; g < dk.num_gens(); ++g)
        CHECK(dk.act_gen(static_cast<u32>(g)) == eng.trivial().act_gen(static_cast<u32>(g)));
}

TEST_CASE("double dual matches the original on stable panels") {
    Engine& eng = engine_for("radford25");
    Mod o1 = eng.syzygy(eng.trivial(), 1);
    Mod dd = dual_mod(dual_mod(o1));
    CHECK(dd.dim() == o1.dim());
    CHECK(simple_panel(eng, dd) == simple_panel(eng, o1));
    CHECK(iso_test(eng, dd, o1).yes);
}

TEST_CASE("dual of the regular module is projective") {
    Engine& eng = engine_for("radford25");
    CHECK(is_projective(eng, dual_mod(eng.regular())));
}

TEST_CASE("adjoint module: commutative cocommutative case is a sum of trivials") {
    Engine& eng = engine_for("cyclic5");
    Mod ad = adjoint_module(eng.alg_ptr());
    REQUIRE(ad.dim() == 5);
    for (std::size_t g = 0; g < ad.num_gens(); ++g)
        CHECK(ad.act_gen(static_cast<u32>(g)) == Mat::identity(5, 5));
}

TEST_CASE("adjoint module: the unit spans a trivial submodule") {
    Engine& eng = engine_for("radford25");
    Mod ad = adjoint_module(eng.alg_ptr());
    CHECK(ad.dim() == 8);
    CHECK(ad.check_module_axioms());
    Vec unit = eng.alg().unit_vec();
    for (std::size_t g = 0; g < ad.num_gens(); ++g) {
        u32 gb = eng.alg().gen_basis[g];
        Vec img = ad.act_gen(static_cast<u32>(g)).mul_vec(unit);
        Vec expect(8, 0);
        expect[eng.alg().unit_index] = eng.alg().epsilon[gb];
        CHECK(img == expect);
    }
}

TEST_CASE("iso test: reflexivity, dimension obstruction, syzygy inverse") {
    Engine& eng = engine_for("radford25");
    Mod k = eng.trivial();
    Mod o1 = eng.syzygy(k, 1);
    CHECK(iso_test(eng, k, k).yes);
    IsoVerdict no = iso_test(eng, k, o1);
    CHECK_FALSE(no.yes);
    CHECK(no.certificate == "dim");
    Mod back = eng.cosyzygy(o1, 1);
    IsoVerdict yes = iso_test(eng, back, k);
    CHECK(yes.yes);
}

TEST_CASE("is_projective on the canonical modules") {
    Engine& eng = engine_for("radford25");
    CHECK(is_projective(eng, eng.regular()));
    CHECK(is_projective(eng, eng.indecomposable_projective(0)));
    CHECK_FALSE(is_projective(eng, eng.trivial()));
    Engine& cy = engine_for("cyclic5");
    CHECK_FALSE(is_projective(cy, cy.trivial()));
}

TEST_CASE("split and non-split sequences are recognized") {
    Engine& eng = engine_for("radford25");
    Mod k = eng.trivial();
    Mod o1 = eng.syzygy(k, 1);
    DirectSum ds = direct_sum({o1, k});
    ExtensionSeq split{o1, ds.sum, k, ds.inject[0], ds.project[1]};
    split.validate();
    CHECK(sequence_splits(eng, split));
    const Cover& cov = eng.cover(k);
    ExtensionSeq nonsplit{cov.kernel, cov.P, k, cov.incl, cov.pi};
    nonsplit.validate();
    CHECK_FALSE(sequence_splits(eng, nonsplit));
}

TEST_CASE("hom-tensor interchange: stable dims agree along the adjunction") {
    Engine& eng = engine_for("radford25");
    Mod k = eng.trivial();
    Mod o1 = eng.syzygy(k, 1);
    Mod mods[] = {k, o1};
    for (const Mod& x : mods)
        for (const Mod& m : mods)
            for (const Mod& n : mods) {
                std::size_t lhs = stable_hom(eng, tensor_mod(x, m), n).dim();
                std::size_t rhs = stable_hom(eng, x, tensor_mod(n, dual_mod(m))).dim();
                CHECK(lhs == rhs);
            }
}
