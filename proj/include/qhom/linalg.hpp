#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhom {

using fe = long long; // field element, canonical in [0, p)

// Arithmetic in the prime field F_p. p must be prime and fit so that p*p
// does not overflow long long (p < 2^31 is enforced).
struct PrimeField {
    fe p = 101;

    fe normalize(fe v) const {
        v %= p;
        return v < 0 ? v + p : v;
    }
    fe add(fe a, fe b) const { return (a + b) % p; }
    fe sub(fe a, fe b) const { return (a - b + p) % p; }
    fe mul(fe a, fe b) const { return (a * b) % p; }
    fe neg(fe a) const { return a == 0 ? 0 : p - a; }
    fe pow(fe a, long long e) const;
    fe inv(fe a) const; // a != 0
};

bool is_prime(long long n);
void require_valid_modulus(long long p); // throws input_error

// Dense row-major matrix over F_p. 0xN and Nx0 are legal values.
struct Matrix {
    fe p = 101;
    int rows = 0, cols = 0;
    std::vector<fe> a;

    Matrix() = default;
    Matrix(fe p_, int r, int c) : p(p_), rows(r), cols(c), a((size_t)r * c, 0) {}

    static Matrix identity(fe p, int n);
    static Matrix from_rows(fe p, const std::vector<std::vector<fe>>& rows);

    fe& at(int r, int c) { return a[(size_t)r * cols + c]; }
    fe at(int r, int c) const { return a[(size_t)r * cols + c]; }

    std::vector<fe> row(int r) const;
    void set_row(int r, const std::vector<fe>& v);
    bool is_zero() const;
    bool operator==(const Matrix& o) const = default;
    std::string str() const;
};

Matrix mat_mul(const Matrix& A, const Matrix& B);
Matrix mat_add(const Matrix& A, const Matrix& B);
Matrix mat_sub(const Matrix& A, const Matrix& B);
Matrix mat_scale(const Matrix& A, fe c);
Matrix transpose(const Matrix& A);
Matrix hstack(const Matrix& A, const Matrix& B);
Matrix vstack(const Matrix& A, const Matrix& B);
Matrix submatrix(const Matrix& A, int r0, int c0, int nr, int nc);

std::vector<fe> vec_mat(const std::vector<fe>& v, const Matrix& A); // v * A
fe dot(const std::vector<fe>& u, const std::vector<fe>& v, const PrimeField& F);

struct RrefResult {
    Matrix m;
    std::vector<int> pivots; // strictly increasing pivot columns
};

// Reduced row echelon form, deterministic first-nonzero pivoting.
RrefResult rref(const Matrix& A);
int rank(const Matrix& A);

// Rows span the right null space: A * k^T = 0 for every returned row k.
// rank(A) + result.rows == A.cols.
Matrix kernel_basis(const Matrix& A);
// Rows x with x * A = 0.
Matrix left_kernel_basis(const Matrix& A);

// Solve A * X = rhs exactly; absent when inconsistent.
// Pre: rhs.rows == A.rows (contract violation otherwise).
std::optional<Matrix> solve(const Matrix& A, const Matrix& rhs);
// Solve X * A = rhs.
std::optional<Matrix> solve_left(const Matrix& A, const Matrix& rhs);

// A fixed subspace of F_p^n held in canonical (rref) form, supporting
// membership tests and coordinate extraction relative to the rref basis.
class Span {
public:
    Span() = default;
    Span(fe p, int ambient);
    explicit Span(const Matrix& rows);

    void add_rows(const Matrix& rows);
    void add_row(const std::vector<fe>& v);

    int dim() const { return (int)pivots_.size(); }
    int ambient() const { return ambient_; }
    const Matrix& basis() const { return basis_; } // rref rows
    const std::vector<int>& pivot_cols() const { return pivots_; }
    // v minus its span component; zero at pivot coordinates afterwards.
    std::vector<fe> reduce(std::vector<fe> v) const;
    bool contains(const std::vector<fe>& v) const;
    bool contains_rows(const Matrix& rows) const;
    // Coordinates of v in the rref basis; absent if v is outside the span.
    std::optional<std::vector<fe>> express(const std::vector<fe>& v) const;
    // Standard basis vectors at non-pivot coordinates.
    Matrix complement_rows() const;
    bool same_as(const Span& other) const;

private:
    fe p_ = 101;
    int ambient_ = 0;
    Matrix basis_; // rref, no zero rows
    std::vector<int> pivots_;
    void reduce_in_place(std::vector<fe>& v) const;
};

// Errors: bad user input (CLI exit 1).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Errors: a verified internal certificate failed (CLI exit 2, always a bug).
struct certificate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qhom
