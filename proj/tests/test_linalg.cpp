#include "qhom/linalg.hpp"

#include "oracle.hpp"

#include <doctest.h>
#include <random>

using namespace qhom;

TEST_CASE("field arithmetic is exact for every element, several primes") {
    for (fe p : {2, 3, 5, 7, 11, 101}) {
        PrimeField F{p};
        for (fe a = 1; a < p; ++a) {
            CHECK(F.mul(a, F.inv(a)) == 1 % p);
        }
        CHECK(F.normalize(-1) == p - 1);
        CHECK(F.pow(2 % p, p - 1) == (p == 2 ? 0 : 1)); // Fermat for p odd
    }
}

TEST_CASE("rref on the pinned examples") {
    // identity 2x2 -> itself, pivots [0,1]
    Matrix I = Matrix::identity(101, 2);
    auto r = rref(I);
    CHECK(r.m == I);
    CHECK(r.pivots == std::vector<int>{0, 1});
    // zero 3x2 -> zero, pivots []
    Matrix Z(101, 3, 2);
    auto rz = rref(Z);
    CHECK(rz.m == Z);
    CHECK(rz.pivots.empty());
    // [[2,4],[1,2]] over F_101 -> [[1,2],[0,0]], pivots [0]
    Matrix M = Matrix::from_rows(101, {{2, 4}, {1, 2}});
    auto rm = rref(M);
    CHECK(rm.m == Matrix::from_rows(101, {{1, 2}, {0, 0}}));
    CHECK(rm.pivots == std::vector<int>{0});
}

TEST_CASE("kernel_basis on the pinned examples") {
    CHECK(kernel_basis(Matrix::identity(101, 4)).rows == 0);
    CHECK(kernel_basis(Matrix(101, 2, 3)).rows == 3);
    Matrix M = Matrix::from_rows(101, {{1, 2}});
    Matrix K = kernel_basis(M);
    REQUIRE(K.rows == 1);
    // spans the solution of x + 2y = 0; [99, 1] up to scaling
    CHECK(mat_mul(M, transpose(K)).is_zero());
    PrimeField F{101};
    CHECK(F.mul(K.at(0, 0), F.inv(K.at(0, 1))) == 99);
}

TEST_CASE("solve on the pinned examples") {
    Matrix I = Matrix::identity(101, 3);
    Matrix v = Matrix::from_rows(101, {{5}, {7}, {9}});
    auto s = solve(I, v);
    REQUIRE(s.has_value());
    CHECK(*s == v);
    // zero system with nonzero rhs is inconsistent
    CHECK(!solve(Matrix(101, 2, 2), Matrix::from_rows(101, {{1}, {0}})).has_value());
    // [[1,1],[0,1]] x = [3,2]^T -> [1,2]^T
    auto s2 = solve(Matrix::from_rows(101, {{1, 1}, {0, 1}}), Matrix::from_rows(101, {{3}, {2}}));
    REQUIRE(s2.has_value());
    CHECK(*s2 == Matrix::from_rows(101, {{1}, {2}}));
    CHECK_THROWS_AS(solve(Matrix(101, 2, 2), Matrix(101, 3, 1)), std::invalid_argument);
}

TEST_CASE("random matrices: rank and kernel properties against the oracle") {
    std::mt19937_64 rng(12345);
    for (int it = 0; it < 60; ++it) {
        fe p = it % 2 ? 101 : 7;
        int rows = 1 + (int)(rng() % 6), cols = 1 + (int)(rng() % 6);
        Matrix M(p, rows, cols);
        for (auto& x : M.a) x = (fe)(rng() % (unsigned long long)p);
        int rk = rank(M);
        CHECK(rk == rank(rref(M).m));
        std::vector<std::vector<long long>> copy;
        for (int i = 0; i < rows; ++i) copy.push_back(M.row(i));
        CHECK(rk == oracle::rank(copy, p));
        Matrix K = kernel_basis(M);
        CHECK(K.rows + rk == cols);
        if (K.rows > 0) CHECK(mat_mul(M, transpose(K)).is_zero());
        // solve consistency: M * X = M picks a valid X
        auto X = solve(M, M);
        REQUIRE(X.has_value());
        CHECK(mat_mul(M, *X) == M);
    }
}

TEST_CASE("span: membership, coordinates, complement") {
    Span s(101, 4);
    s.add_row({1, 2, 0, 0});
    s.add_row({0, 0, 1, 1});
    CHECK(s.dim() == 2);
    CHECK(s.contains({2, 4, 3, 3}));
    CHECK(!s.contains({0, 1, 0, 0}));
    auto c = s.express({2, 4, 3, 3});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == 3);
    Matrix comp = s.complement_rows();
    CHECK(comp.rows == 2);
    Span full(s.basis());
    full.add_rows(comp);
    CHECK(full.dim() == 4);
}
