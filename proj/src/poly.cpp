#include "qhom/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qhom {

Poly Poly::constant(fe p, fe v) {
    PrimeField F{p};
    v = F.normalize(v);
    return v == 0 ? zero(p) : Poly(p, {v});
}

void Poly::trim() {
    PrimeField F{p};
    for (auto& x : c) x = F.normalize(x);
    while (!c.empty() && c.back() == 0) c.pop_back();
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c[i] != 1) os << c[i];
        if (i > 0) {
            if (c[i] != 1) os << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly poly_add(const Poly& a, const Poly& b) {
    std::vector<fe> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = (a.coeff((int)i) + b.coeff((int)i)) % a.p;
    return Poly(a.p, std::move(c));
}

Poly poly_sub(const Poly& a, const Poly& b) {
    std::vector<fe> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = (a.coeff((int)i) - b.coeff((int)i) + a.p) % a.p;
    return Poly(a.p, std::move(c));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.p);
    std::vector<fe> c(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = (c[i + j] + a.c[i] * b.c[j]) % a.p;
    }
    return Poly(a.p, std::move(c));
}

Poly poly_scale(const Poly& a, fe s) {
    PrimeField F{a.p};
    s = F.normalize(s);
    std::vector<fe> c = a.c;
    for (auto& x : c) x = (x * s) % a.p;
    return Poly(a.p, std::move(c));
}

Poly poly_monic(const Poly& a) {
    if (a.is_zero()) return a;
    PrimeField F{a.p};
    return poly_scale(a, F.inv(a.lead()));
}

std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly division by zero");
    PrimeField F{a.p};
    std::vector<fe> r = a.c;
    int db = b.degree();
    if ((int)r.size() - 1 < db) return {Poly::zero(a.p), a};
    std::vector<fe> q((int)r.size() - db, 0);
    fe linv = F.inv(b.lead());
    for (int i = (int)r.size() - 1; i >= db; --i) {
        fe f = F.mul(r[i], linv);
        if (f == 0) continue;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j)
            r[i - db + j] = F.sub(r[i - db + j], F.mul(f, b.c[j]));
    }
    return {Poly(a.p, std::move(q)), Poly(a.p, std::move(r))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divrem(a, b).second; }

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_mod(x, y);
        x = y;
        y = r;
    }
    return poly_monic(x);
}

Poly poly_derivative(const Poly& a) {
    if (a.degree() < 1) return Poly::zero(a.p);
    std::vector<fe> c(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = (a.c[i] * (fe)(i % a.p)) % a.p;
    return Poly(a.p, std::move(c));
}

Poly poly_powmod(const Poly& base, long long e, const Poly& mod) {
    Poly r = Poly::constant(base.p, 1);
    Poly b = poly_mod(base, mod);
    while (e > 0) {
        if (e & 1) r = poly_mod(poly_mul(r, b), mod);
        b = poly_mod(poly_mul(b, b), mod);
        e >>= 1;
    }
    return r;
}

fe poly_eval(const Poly& a, fe x) {
    PrimeField F{a.p};
    fe r = 0;
    for (int i = a.degree(); i >= 0; --i) r = F.add(F.mul(r, x), a.c[i]);
    return r;
}

Poly charpoly(const Matrix& M) {
    if (M.rows != M.cols) throw std::invalid_argument("charpoly of non-square matrix");
    int n = M.rows;
    fe p = M.p;
    PrimeField F{p};
    // Berkowitz: iteratively extend the characteristic polynomial of the
    // leading principal minors via Toeplitz products.
    std::vector<fe> C = {1}; // coefficients high degree first, starts as charpoly of 0x0
    for (int k = 1; k <= n; ++k) {
        // A = M[0..k-2][0..k-2], R = row M[k-1][0..k-2], Cl = col M[0..k-2][k-1]
        fe a = M.at(k - 1, k - 1);
        int m = k - 1;
        // s[j] = R * A^j * Cl for j = 0..m-1
        std::vector<fe> s;
        if (m > 0) {
            std::vector<fe> v(m);
            for (int i = 0; i < m; ++i) v[i] = M.at(i, k - 1); // Cl
            for (int j = 0; j < m; ++j) {
                fe acc = 0;
                for (int i = 0; i < m; ++i) acc = (acc + M.at(k - 1, i) * v[i]) % p;
                s.push_back(acc);
                if (j + 1 < m) {
                    std::vector<fe> w(m, 0);
                    for (int r = 0; r < m; ++r) {
                        for (int c2 = 0; c2 < m; ++c2)
                            w[r] = (w[r] + M.at(r, c2) * v[c2]) % p;
                    }
                    v = std::move(w);
                }
            }
        }
        // Toeplitz column: t[0] = 1, t[1] = -a, t[i] = -s[i-2] for i >= 2
        std::vector<fe> t(k + 1, 0);
        t[0] = 1;
        t[1] = F.neg(a);
        for (int i = 2; i <= k; ++i) t[i] = F.neg(s[i - 2]);
        std::vector<fe> Cn(k + 1, 0);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j < (int)C.size() && j <= i; ++j)
                Cn[i] = (Cn[i] + t[i - j] * C[j]) % p;
        C = std::move(Cn);
    }
    // C holds coefficients of det(tI - M), highest degree first.
    std::vector<fe> low(C.rbegin(), C.rend());
    return Poly(p, std::move(low));
}

Matrix poly_of_matrix(const Poly& f, const Matrix& M) {
    int n = M.rows;
    Matrix R(M.p, n, n);
    Matrix P = Matrix::identity(M.p, n);
    for (int i = 0; i <= f.degree(); ++i) {
        if (f.c[i] != 0) R = mat_add(R, mat_scale(P, f.c[i]));
        if (i < f.degree()) P = mat_mul(P, M);
    }
    return R;
}

Poly min_poly(const Matrix& M) {
    if (M.rows != M.cols) throw std::invalid_argument("min_poly of non-square matrix");
    int n = M.rows;
    fe p = M.p;
    if (n == 0) return Poly::constant(p, 1);
    // Find the first linear dependence among I, M, M^2, ... flattened.
    Span span(p, n * n);
    std::vector<Matrix> powers;
    Matrix P = Matrix::identity(p, n);
    Matrix table(p, 0, n * n);
    for (int d = 0;; ++d) {
        std::vector<fe> flat = P.a;
        if (span.contains(flat)) {
            // express P in earlier powers
            auto sol = solve_left(table, Matrix::from_rows(p, {flat}));
            if (!sol) throw certificate_error("min_poly: dependence not expressible");
            std::vector<fe> c(d + 1, 0);
            for (int i = 0; i < d; ++i) c[i] = (p - sol->at(0, i)) % p;
            c[d] = 1;
            return Poly(p, std::move(c));
        }
        span.add_row(flat);
        table = vstack(table, Matrix::from_rows(p, {flat}));
        powers.push_back(P);
        P = mat_mul(P, M);
        if (d > n) throw certificate_error("min_poly: no dependence within degree bound");
    }
}

namespace {

// f with f' == 0 is a p-th power over F_p; take the p-th root.
Poly pth_root(const Poly& f) {
    std::vector<fe> c;
    for (int i = 0; i * (long long)f.p <= f.degree(); ++i) c.push_back(f.coeff(i * (int)f.p));
    return Poly(f.p, std::move(c));
}

// Squarefree decomposition in characteristic p: returns (g_i, e_i) with
// f = prod g_i^{e_i}, g_i squarefree pairwise coprime.
void squarefree(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    if (f.degree() <= 0) return;
    Poly d = poly_derivative(f);
    if (d.is_zero()) {
        squarefree(pth_root(f), mult * (int)f.p, out);
        return;
    }
    Poly g = poly_gcd(f, d);
    Poly w = poly_divrem(f, g).first; // product of squarefree part
    int i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, g);
        Poly part = poly_divrem(w, y).first;
        if (part.degree() > 0) out.push_back({poly_monic(part), mult * i});
        w = y;
        g = poly_divrem(g, y).first;
        ++i;
    }
    if (g.degree() > 0) squarefree(pth_root(g), mult * (int)f.p, out);
}

Poly random_poly(fe p, int deg, std::mt19937_64& rng) {
    std::vector<fe> c(deg + 1);
    for (auto& x : c) x = (fe)(rng() % (unsigned long long)p);
    return Poly(p, std::move(c));
}

// Equal-degree factorization of a squarefree product of degree-d irreducibles.
void edf(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (f.degree() == d) {
        out.push_back(poly_monic(f));
        return;
    }
    fe p = f.p;
    Poly split;
    for (int attempt = 0; attempt < 200; ++attempt) {
        Poly r = random_poly(p, f.degree() - 1, rng);
        if (r.degree() < 1 && p > 2) continue;
        Poly g;
        if (p == 2) {
            // trace map: r + r^2 + r^4 + ... + r^(2^(d-1))
            Poly t = poly_mod(r, f);
            Poly acc = t;
            for (int i = 1; i < d; ++i) {
                t = poly_mod(poly_mul(t, t), f);
                acc = poly_add(acc, t);
            }
            g = poly_gcd(acc, f);
        } else {
            // r^((p^d-1)/2) = (r^((p-1)/2))^(1+p+...+p^(d-1)), computed by
            // interleaving Frobenius powers to avoid a huge exponent.
            Poly t = poly_powmod(r, (p - 1) / 2, f);
            Poly s = t;
            Poly frob = t;
            for (int i = 1; i < d; ++i) {
                frob = poly_powmod(frob, p, f);
                s = poly_mod(poly_mul(s, frob), f);
            }
            g = poly_gcd(poly_sub(s, Poly::constant(p, 1)), f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split = g;
            break;
        }
    }
    if (split.is_zero()) throw certificate_error("equal-degree factorization failed to split");
    edf(split, d, rng, out);
    edf(poly_divrem(f, split).first, d, rng, out);
}

} // namespace

std::vector<std::pair<Poly, int>> factor_poly(const Poly& f, std::mt19937_64& rng) {
    if (f.degree() < 1) return {};
    std::vector<std::pair<Poly, int>> sqf;
    squarefree(poly_monic(f), 1, sqf);
    std::vector<std::pair<Poly, int>> result;
    for (auto& [g, e] : sqf) {
        // distinct-degree on squarefree g
        Poly rem = g;
        Poly xq = poly_mod(Poly::x(f.p), rem); // x^(p^d) mod rem, updated per d
        for (int d = 1; rem.degree() >= 1 && d <= rem.degree(); ++d) {
            xq = poly_powmod(xq, f.p, rem);
            Poly h = poly_gcd(poly_sub(xq, Poly::x(f.p)), rem);
            if (h.degree() > 0) {
                std::vector<Poly> irr;
                edf(h, d, rng, irr);
                for (auto& q : irr) result.push_back({q, e});
                rem = poly_divrem(rem, h).first;
                xq = poly_mod(xq, rem);
            }
            if (2 * (d + 1) > rem.degree()) break;
        }
        if (rem.degree() >= 1) result.push_back({poly_monic(rem), e});
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.c < b.first.c;
    });
    return result;
}

} // namespace qhom
