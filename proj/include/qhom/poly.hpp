#pragma once

#include "qhom/linalg.hpp"

#include <random>

namespace qhom {

// Polynomials over F_p, coefficients low degree first, normalized (no
// trailing zeros; the zero polynomial has empty coefficient list).
struct Poly {
    fe p = 101;
    std::vector<fe> c;

    Poly() = default;
    Poly(fe p_, std::vector<fe> c_) : p(p_), c(std::move(c_)) { trim(); }
    static Poly zero(fe p) { return Poly(p, {}); }
    static Poly constant(fe p, fe v);
    static Poly x(fe p) { return Poly(p, {0, 1}); }

    int degree() const { return (int)c.size() - 1; } // -1 for zero
    bool is_zero() const { return c.empty(); }
    fe coeff(int i) const { return i >= 0 && i < (int)c.size() ? c[i] : 0; }
    fe lead() const { return c.empty() ? 0 : c.back(); }
    void trim();
    bool operator==(const Poly& o) const = default;
    std::string str() const;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, fe s);
Poly poly_monic(const Poly& a);
// Division with remainder; b nonzero.
std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_gcd(const Poly& a, const Poly& b); // monic
Poly poly_derivative(const Poly& a);
Poly poly_powmod(const Poly& base, long long e, const Poly& mod);
fe poly_eval(const Poly& a, fe x);

// Characteristic polynomial det(tI - M) via the division-free Berkowitz
// algorithm; works uniformly in any characteristic.
Poly charpoly(const Matrix& M);

// Minimal polynomial of a square matrix (monic).
Poly min_poly(const Matrix& M);

// Apply a polynomial to a square matrix.
Matrix poly_of_matrix(const Poly& f, const Matrix& M);

// Complete factorization over F_p: squarefree split + distinct-degree +
// Cantor-Zassenhaus equal-degree (seeded). Returns (irreducible, exponent)
// pairs sorted deterministically; product reproduces monic(f).
std::vector<std::pair<Poly, int>> factor_poly(const Poly& f, std::mt19937_64& rng);

} // namespace qhom
