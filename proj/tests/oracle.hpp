#pragma once

// Test-only brute-force checks, kept independent of the library's own
// elimination and hom-solving code paths: different pivoting, different
// constraint layout, no reuse of qhom::rref.

#include "qhom/modcat.hpp"

#include <vector>

namespace oracle {

using ll = long long;

inline ll norm(ll v, ll p) {
    v %= p;
    return v < 0 ? v + p : v;
}

inline ll inv_mod(ll a, ll p) {
    ll r = 1, e = p - 2;
    a = norm(a, p);
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

// rank by elimination from the bottom-right corner
inline int rank(std::vector<std::vector<ll>> m, ll p) {
    if (m.empty()) return 0;
    int rows = (int)m.size(), cols = (int)m[0].size();
    int rk = 0;
    int row = rows - 1;
    for (int c = cols - 1; c >= 0 && row >= 0; --c) {
        int piv = -1;
        for (int i = row; i >= 0; --i)
            if (norm(m[i][c], p) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[row]);
        ll iv = inv_mod(m[row][c], p);
        for (int i = row - 1; i >= 0; --i) {
            ll f = norm(m[i][c], p) * iv % p;
            if (!f) continue;
            for (int j = 0; j < cols; ++j) m[i][j] = norm(m[i][j] - f * m[row][j], p);
        }
        --row;
        ++rk;
    }
    return rk;
}

// dim Hom(M, N) from the full intertwining system over every basis element,
// with column-major unknown layout (the library uses row-major and only a
// generating set).
inline int hom_dim(const qhom::Module& M, const qhom::Module& N) {
    ll p = M.A->p;
    int nm = M.n, nn = N.n;
    if (nm == 0 || nn == 0) return 0;
    int unknowns = nm * nn; // phi[k][l] at column l * nm + k
    std::vector<std::vector<ll>> sys;
    for (int b = 0; b < M.A->dim; ++b) {
        const qhom::Matrix& AM = M.act[b];
        const qhom::Matrix& AN = N.act[b];
        for (int i = 0; i < nm; ++i)
            for (int j = 0; j < nn; ++j) {
                std::vector<ll> row(unknowns, 0);
                for (int k = 0; k < nm; ++k)
                    row[j * nm + k] = norm(row[j * nm + k] + AM.at(i, k), p);
                for (int l = 0; l < nn; ++l)
                    row[l * nm + i] = norm(row[l * nm + i] - AN.at(l, j), p);
                sys.push_back(std::move(row));
            }
    }
    return unknowns - rank(std::move(sys), p);
}

} // namespace oracle
