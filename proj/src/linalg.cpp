#include "qhom/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace qhom {

fe PrimeField::pow(fe a, long long e) const {
    a = normalize(a);
    fe r = 1 % p;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

fe PrimeField::inv(fe a) const {
    a = normalize(a);
    if (a == 0) throw std::invalid_argument("inverse of zero");
    return pow(a, p - 2);
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void require_valid_modulus(long long p) {
    if (p < 2 || p >= (1LL << 31) || !is_prime(p))
        throw input_error("field modulus must be a prime < 2^31, got " + std::to_string(p));
}

Matrix Matrix::identity(fe p, int n) {
    Matrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
}

Matrix Matrix::from_rows(fe p, const std::vector<std::vector<fe>>& rows) {
    int r = (int)rows.size();
    int c = r == 0 ? 0 : (int)rows[0].size();
    Matrix m(p, r, c);
    PrimeField F{p};
    for (int i = 0; i < r; ++i) {
        if ((int)rows[i].size() != c) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = F.normalize(rows[i][j]);
    }
    return m;
}

std::vector<fe> Matrix::row(int r) const {
    return std::vector<fe>(a.begin() + (size_t)r * cols, a.begin() + (size_t)(r + 1) * cols);
}

void Matrix::set_row(int r, const std::vector<fe>& v) {
    std::copy(v.begin(), v.end(), a.begin() + (size_t)r * cols);
}

bool Matrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](fe x) { return x == 0; });
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
        os << "[";
        for (int j = 0; j < cols; ++j) os << at(i, j) << (j + 1 < cols ? "," : "");
        os << "]" << (i + 1 < rows ? "," : "");
    }
    os << "]";
    return os.str();
}

static void require_same_field(const Matrix& A, const Matrix& B) {
    if (A.p != B.p) throw std::invalid_argument("field modulus mismatch");
}

Matrix mat_mul(const Matrix& A, const Matrix& B) {
    require_same_field(A, B);
    if (A.cols != B.rows) throw std::invalid_argument("matrix product shape mismatch");
    Matrix C(A.p, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            fe v = A.at(i, k);
            if (v == 0) continue;
            const fe* brow = &B.a[(size_t)k * B.cols];
            fe* crow = &C.a[(size_t)i * C.cols];
            for (int j = 0; j < B.cols; ++j) crow[j] = (crow[j] + v * brow[j]) % A.p;
        }
    return C;
}

Matrix mat_add(const Matrix& A, const Matrix& B) {
    require_same_field(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("shape mismatch");
    Matrix C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = (C.a[i] + B.a[i]) % A.p;
    return C;
}

Matrix mat_sub(const Matrix& A, const Matrix& B) {
    require_same_field(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("shape mismatch");
    Matrix C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = (C.a[i] - B.a[i] + A.p) % A.p;
    return C;
}

Matrix mat_scale(const Matrix& A, fe c) {
    PrimeField F{A.p};
    c = F.normalize(c);
    Matrix C = A;
    for (auto& x : C.a) x = (x * c) % A.p;
    return C;
}

Matrix transpose(const Matrix& A) {
    Matrix T(A.p, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

Matrix hstack(const Matrix& A, const Matrix& B) {
    require_same_field(A, B);
    if (A.rows != B.rows) throw std::invalid_argument("hstack row mismatch");
    Matrix C(A.p, A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

Matrix vstack(const Matrix& A, const Matrix& B) {
    require_same_field(A, B);
    if (A.cols != B.cols) throw std::invalid_argument("vstack col mismatch");
    Matrix C(A.p, A.rows + B.rows, A.cols);
    std::copy(A.a.begin(), A.a.end(), C.a.begin());
    std::copy(B.a.begin(), B.a.end(), C.a.begin() + A.a.size());
    return C;
}

Matrix submatrix(const Matrix& A, int r0, int c0, int nr, int nc) {
    Matrix C(A.p, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) C.at(i, j) = A.at(r0 + i, c0 + j);
    return C;
}

std::vector<fe> vec_mat(const std::vector<fe>& v, const Matrix& A) {
    if ((int)v.size() != A.rows) throw std::invalid_argument("vec_mat shape mismatch");
    std::vector<fe> r(A.cols, 0);
    for (int i = 0; i < A.rows; ++i) {
        fe x = v[i] % A.p;
        if (x == 0) continue;
        const fe* arow = &A.a[(size_t)i * A.cols];
        for (int j = 0; j < A.cols; ++j) r[j] = (r[j] + x * arow[j]) % A.p;
    }
    return r;
}

fe dot(const std::vector<fe>& u, const std::vector<fe>& v, const PrimeField& F) {
    if (u.size() != v.size()) throw std::invalid_argument("dot shape mismatch");
    fe s = 0;
    for (size_t i = 0; i < u.size(); ++i) s = (s + u[i] * v[i]) % F.p;
    return s;
}

RrefResult rref(const Matrix& A) {
    PrimeField F{A.p};
    Matrix M = A;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int piv = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(piv, j), M.at(r, j));
        fe inv = F.inv(M.at(r, c));
        for (int j = c; j < M.cols; ++j) M.at(r, j) = (M.at(r, j) * inv) % F.p;
        for (int i = 0; i < M.rows; ++i) {
            if (i == r) continue;
            fe f = M.at(i, c);
            if (f == 0) continue;
            for (int j = c; j < M.cols; ++j)
                M.at(i, j) = (M.at(i, j) - f * M.at(r, j) % F.p + F.p) % F.p;
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(M), std::move(pivots)};
}

int rank(const Matrix& A) { return (int)rref(A).pivots.size(); }

Matrix kernel_basis(const Matrix& A) {
    RrefResult R = rref(A);
    std::vector<bool> is_pivot(A.cols, false);
    for (int c : R.pivots) is_pivot[c] = true;
    int k = A.cols - (int)R.pivots.size();
    Matrix K(A.p, k, A.cols);
    int out = 0;
    for (int j = 0; j < A.cols; ++j) {
        if (is_pivot[j]) continue;
        K.at(out, j) = 1 % A.p;
        for (int t = 0; t < (int)R.pivots.size(); ++t) {
            fe v = R.m.at(t, j);
            if (v != 0) K.at(out, R.pivots[t]) = A.p - v;
        }
        ++out;
    }
    return K;
}

Matrix left_kernel_basis(const Matrix& A) { return kernel_basis(transpose(A)); }

std::optional<Matrix> solve(const Matrix& A, const Matrix& rhs) {
    require_same_field(A, rhs);
    if (A.rows != rhs.rows) throw std::invalid_argument("solve: rhs row count mismatch");
    RrefResult R = rref(hstack(A, rhs));
    for (int c : R.pivots)
        if (c >= A.cols) return std::nullopt;
    Matrix X(A.p, A.cols, rhs.cols);
    for (int t = 0; t < (int)R.pivots.size(); ++t)
        for (int j = 0; j < rhs.cols; ++j) X.at(R.pivots[t], j) = R.m.at(t, A.cols + j);
    return X;
}

std::optional<Matrix> solve_left(const Matrix& A, const Matrix& rhs) {
    auto X = solve(transpose(A), transpose(rhs));
    if (!X) return std::nullopt;
    return transpose(*X);
}

Span::Span(fe p, int ambient) : p_(p), ambient_(ambient), basis_(p, 0, ambient) {}

Span::Span(const Matrix& rows) : p_(rows.p), ambient_(rows.cols), basis_(rows.p, 0, rows.cols) {
    add_rows(rows);
}

void Span::add_rows(const Matrix& rows) {
    if (rows.rows == 0) return;
    if (rows.cols != ambient_) throw std::invalid_argument("span ambient mismatch");
    RrefResult R = rref(vstack(basis_, rows));
    basis_ = submatrix(R.m, 0, 0, (int)R.pivots.size(), ambient_);
    pivots_ = R.pivots;
}

void Span::add_row(const std::vector<fe>& v) {
    add_rows(Matrix::from_rows(p_, {v}));
}

void Span::reduce_in_place(std::vector<fe>& v) const {
    PrimeField F{p_};
    for (int t = 0; t < (int)pivots_.size(); ++t) {
        fe c = v[pivots_[t]];
        if (c == 0) continue;
        for (int j = 0; j < ambient_; ++j) v[j] = F.sub(v[j], F.mul(c, basis_.at(t, j)));
    }
}

std::vector<fe> Span::reduce(std::vector<fe> v) const {
    PrimeField F{p_};
    for (auto& x : v) x = F.normalize(x);
    reduce_in_place(v);
    return v;
}

bool Span::contains(const std::vector<fe>& v) const {
    std::vector<fe> w = v;
    PrimeField F{p_};
    for (auto& x : w) x = F.normalize(x);
    reduce_in_place(w);
    return std::all_of(w.begin(), w.end(), [](fe x) { return x == 0; });
}

bool Span::contains_rows(const Matrix& rows) const {
    for (int i = 0; i < rows.rows; ++i)
        if (!contains(rows.row(i))) return false;
    return true;
}

std::optional<std::vector<fe>> Span::express(const std::vector<fe>& v) const {
    PrimeField F{p_};
    std::vector<fe> w = v;
    for (auto& x : w) x = F.normalize(x);
    std::vector<fe> coords(pivots_.size(), 0);
    for (int t = 0; t < (int)pivots_.size(); ++t) {
        fe c = w[pivots_[t]];
        if (c == 0) continue;
        coords[t] = c;
        for (int j = 0; j < ambient_; ++j) w[j] = F.sub(w[j], F.mul(c, basis_.at(t, j)));
    }
    if (!std::all_of(w.begin(), w.end(), [](fe x) { return x == 0; })) return std::nullopt;
    return coords;
}

Matrix Span::complement_rows() const {
    std::vector<bool> is_pivot(ambient_, false);
    for (int c : pivots_) is_pivot[c] = true;
    Matrix C(p_, ambient_ - dim(), ambient_);
    int out = 0;
    for (int j = 0; j < ambient_; ++j)
        if (!is_pivot[j]) C.at(out++, j) = 1 % p_;
    return C;
}

bool Span::same_as(const Span& other) const {
    return basis_ == other.basis_;
}

} // namespace qhom
