#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tatekit/mat.hpp"
#include "tatekit/polyfp.hpp"
#include "tatekit/subspace.hpp"

using namespace tatekit;

namespace {

Mat make(std::size_t r, std::size_t c, u32 p, std::initializer_list<u32> vals) {
    Mat m(r, c, p);
    auto it = vals.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = *it++;
    return m;
}

Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, u32 p) {
    Mat m(r, c, p);
    std::uniform_int_distribution<u32> d(0, p - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
    return m;
}

}  // namespace

TEST_CASE("rref hand-worked example mod 5") {
    // [[2,4],[1,2]]: rows are proportional, single pivot in column 0
    Mat m = make(2, 2, 5, {2, 4, 1, 2});
    RrefResult r = rref(m);
    CHECK(r.mat == make(2, 2, 5, {1, 2, 0, 0}));
    CHECK(r.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("rref fixes identity and zero") {
    Mat id = Mat::identity(3, 7);
    RrefResult r = rref(id);
    CHECK(r.mat == id);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});
    Mat z(2, 3, 5);
    RrefResult rz = rref(z);
    CHECK(rz.mat == z);
    CHECK(rz.pivots.empty());
}

TEST_CASE("rref is idempotent on random matrices") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        Mat m = random_mat(rng, 5, 8, 5);
        Mat r1 = rref(m).mat;
        CHECK(rref(r1).mat == r1);
    }
}

TEST_CASE("kernel of [[1,2]] mod 5 contains (3,1)") {
    Mat m = make(1, 2, 5, {1, 2});
    Mat k = kernel_basis_mat(m);
    REQUIRE(k.rows() == 1);
    Subspace s = Subspace::from_rows(k);
    CHECK(s.contains(Vec{3, 1}));
}

TEST_CASE("kernel of invertible and zero matrices") {
    Mat inv = make(2, 2, 7, {1, 1, 0, 1});
    CHECK(kernel_basis_mat(inv).rows() == 0);
    Mat z(2, 2, 5);
    CHECK(kernel_basis_mat(z).rows() == 2);
}

TEST_CASE("rank-nullity over F5 on random matrices") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        Mat m = random_mat(rng, 6, 9, 5);
        CHECK(rank(m) + kernel_basis_mat(m).rows() == m.cols());
    }
}

TEST_CASE("solve examples") {
    Mat m = make(2, 2, 5, {1, 0, 0, 0});
    auto x = solve(m, Vec{1, 0});
    REQUIRE(x.has_value());
    CHECK(m.mul_vec(*x) == Vec{1, 0});
    CHECK_FALSE(solve(m, Vec{0, 1}).has_value());
    Mat id = Mat::identity(3, 7);
    auto y = solve(id, Vec{4, 5, 6});
    REQUIRE(y.has_value());
    CHECK(*y == Vec{4, 5, 6});
}

TEST_CASE("solve returns exact solutions on random consistent systems") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        Mat m = random_mat(rng, 5, 7, 5);
        Vec x0(7);
        std::uniform_int_distribution<u32> d(0, 4);
        for (auto& v : x0) v = d(rng);
        Vec b = m.mul_vec(x0);
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(m.mul_vec(*x) == b);
    }
}

TEST_CASE("subspace sum and intersection on axis examples") {
    Subspace a(3, 5), b(3, 5);
    a.insert(Vec{1, 0, 0});
    b.insert(Vec{0, 1, 0});
    CHECK(a.sum(b).dim() == 2);
    CHECK(a.intersection(b).dim() == 0);
    CHECK(a.sum(a).dim() == 1);
    CHECK(a.intersection(a) == a);
}

TEST_CASE("dimension formula holds for 1000 random subspace pairs") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 1000; ++t) {
        Subspace a = Subspace::from_rows(random_mat(rng, 3, 6, 5));
        Subspace b = Subspace::from_rows(random_mat(rng, 3, 6, 5));
        CHECK(a.dim() + b.dim() == a.sum(b).dim() + a.intersection(b).dim());
    }
}

TEST_CASE("quotient projection by span(e1) in F5^3") {
    Subspace w(3, 5);
    w.insert(Vec{1, 0, 0});
    Quotient q = Quotient::by(w);
    CHECK(q.proj.rows() == 2);
    CHECK(q.proj.mul_vec(Vec{1, 0, 0}) == Vec{0, 0});
    CHECK(rank(q.proj) == 2);
    CHECK(q.proj.mul(q.section) == Mat::identity(2, 5));
}

TEST_CASE("quotient kernel is exactly the subspace") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; ++t) {
        Subspace w = Subspace::from_rows(random_mat(rng, 2, 5, 7));
        Quotient q = Quotient::by(w);
        Mat ker = kernel_basis_mat(q.proj);
        CHECK(ker.rows() == w.dim());
        CHECK(Subspace::from_rows(ker) == w);
    }
}

TEST_CASE("primitive roots of unity") {
    CHECK(primitive_root_of_unity(5, 2) == 4);
    CHECK(primitive_root_of_unity(7, 3) == 2);
    CHECK_THROWS_AS(primitive_root_of_unity(5, 3), precondition_error);
}

TEST_CASE("charpoly matches direct expansion on small matrices") {
    // [[1,2],[3,4]] mod 7: t^2 - 5t + (4 - 6) = t^2 + 2t + 5 mod 7
    Mat m = make(2, 2, 7, {1, 2, 3, 4});
    Poly cp = charpoly(m);
    REQUIRE(cp.size() == 3);
    CHECK(cp[2] == 1);
    CHECK(cp[1] == 2);  // -(trace) = -5 = 2 mod 7
    CHECK(cp[0] == 5);  // det = 4 - 6 = -2 = 5 mod 7
}

TEST_CASE("charpoly of companion-style and diagonal matrices") {
    Mat d(3, 3, 5);
    d.at(0, 0) = 1;
    d.at(1, 1) = 2;
    d.at(2, 2) = 3;
    Poly cp = charpoly(d);
    // (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6 = t^3 + 4t^2 + t + 4 mod 5
    CHECK(cp == Poly{4, 1, 4, 1});
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        Mat m = random_mat(rng, 6, 6, 5);
        Poly c = charpoly(m);
        REQUIRE(c.size() == 7);
        CHECK(c[6] == 1);
        // Cayley-Hamilton: c(m) = 0
        Mat acc(6, 6, 5);
        Mat pw = Mat::identity(6, 5);
        for (std::size_t i = 0; i < c.size(); ++i) {
            acc = acc.add(pw.scale(c[i]));
            pw = pw.mul(m);
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("poly gcd and eval") {
    Fp F(5);
    Poly a{4, 0, 1};  // t^2 + 4 = (t-1)(t+1) ... mod 5: t^2 - 1
    Poly b{4, 1};     // t + 4 = t - 1
    CHECK(poly_gcd(F, a, b) == Poly{4, 1});
    CHECK(poly_eval(F, a, 1) == 0);
    CHECK(poly_eval(F, a, 2) == 3);
}
