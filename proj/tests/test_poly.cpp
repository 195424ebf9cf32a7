#include "qhom/poly.hpp"

#include <doctest.h>
#include <random>

using namespace qhom;

TEST_CASE("charpoly matches hand expansions") {
    // diag(2,3): (t-2)(t-3) = t^2 - 5t + 6
    Matrix D = Matrix::from_rows(101, {{2, 0}, {0, 3}});
    CHECK(charpoly(D) == Poly(101, {6, 101 - 5, 1}));
    // nilpotent Jordan block: t^2
    Matrix N = Matrix::from_rows(101, {{0, 1}, {0, 0}});
    CHECK(charpoly(N) == Poly(101, {0, 0, 1}));
    // 0x0 and 1x1
    CHECK(charpoly(Matrix(101, 0, 0)) == Poly(101, {1}));
    CHECK(charpoly(Matrix::from_rows(101, {{7}})) == Poly(101, {101 - 7, 1}));
    // companion matrix of t^3 + 2t + 5 (row convention does not matter for charpoly)
    Matrix C = Matrix::from_rows(101, {{0, 1, 0}, {0, 0, 1}, {101 - 5, 101 - 2, 0}});
    CHECK(charpoly(C) == Poly(101, {5, 2, 0, 1}));
}

TEST_CASE("charpoly against permanent-style brute force on random 3x3") {
    std::mt19937_64 rng(7);
    for (fe p : {2, 5, 101}) {
        for (int it = 0; it < 20; ++it) {
            Matrix M(p, 3, 3);
            for (auto& x : M.a) x = (fe)(rng() % (unsigned long long)p);
            // det(tI - M) via the Leibniz formula over the polynomial ring
            auto lin = [&](int i, int j) {
                // entry (i,j) of tI - M as a degree-1 poly
                std::vector<fe> c = {(p - M.at(i, j)) % p, (fe)(i == j ? 1 : 0)};
                return Poly(p, c);
            };
            Poly det = Poly::zero(p);
            int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
            int sign[6] = {1, -1, -1, 1, 1, -1};
            for (int s = 0; s < 6; ++s) {
                Poly term = Poly::constant(p, sign[s] == 1 ? 1 : p - 1);
                for (int i = 0; i < 3; ++i) term = poly_mul(term, lin(i, perms[s][i]));
                det = poly_add(det, term);
            }
            CHECK(charpoly(M) == det);
        }
    }
}

TEST_CASE("min_poly divides charpoly and annihilates") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 20; ++it) {
        fe p = it % 2 ? 101 : 3;
        int n = 1 + (int)(rng() % 4);
        Matrix M(p, n, n);
        for (auto& x : M.a) x = (fe)(rng() % (unsigned long long)p);
        Poly mp = min_poly(M);
        CHECK(poly_of_matrix(mp, M).is_zero());
        CHECK(poly_mod(charpoly(M), mp).is_zero());
    }
}

TEST_CASE("factor_poly: product reconstructs, squarefree powers handled") {
    std::mt19937_64 rng(99);
    for (fe p : {2, 3, 101}) {
        for (int it = 0; it < 25; ++it) {
            int deg = 1 + (int)(rng() % 6);
            std::vector<fe> c(deg + 1);
            for (auto& x : c) x = (fe)(rng() % (unsigned long long)p);
            c[deg] = 1;
            Poly f(p, c);
            if (f.degree() < 1) continue;
            auto factors = factor_poly(f, rng);
            Poly prod = Poly::constant(p, 1);
            for (auto& [q, e] : factors) {
                CHECK(q.lead() == 1);
                CHECK(q.degree() >= 1);
                for (int t = 0; t < e; ++t) prod = poly_mul(prod, q);
            }
            CHECK(prod == poly_monic(f));
        }
    }
    // pinned: x^2 over F_2, and x^p - x splits into all linear factors
    {
        std::mt19937_64 r2(1);
        auto f = factor_poly(Poly(2, {0, 0, 1}), r2);
        REQUIRE(f.size() == 1);
        CHECK(f[0].second == 2);
        auto g = factor_poly(Poly(5, {0, 4, 0, 0, 0, 1}), r2); // t^5 - t
        CHECK(g.size() == 5);
        for (auto& [q, e] : g) {
            CHECK(q.degree() == 1);
            CHECK(e == 1);
        }
    }
}
