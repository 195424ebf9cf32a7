#pragma once

#include "qhom/linalg.hpp"

#include <memory>
#include <mutex>

namespace qhom {

// A finite-dimensional unital algebra over F_p given by a basis, structure
// constants, and a complete list of primitive orthogonal idempotents.
// Convention: all composition-like products are written left to right
// (fg = "f then g"); structure constants are stored so that module action
// tables satisfy act(b_i)·act(b_j) = sum_k c[i][j][k]·act(b_k).
struct BasedAlgebra : std::enable_shared_from_this<BasedAlgebra> {
    fe p = 101;
    int dim = 0;
    std::string name;
    std::vector<std::string> labels;
    // lmul[i] is dim x dim with row j = coordinates of b_i * b_j.
    std::vector<Matrix> lmul;
    // rows are the primitive orthogonal idempotents (complete: they sum to 1).
    Matrix idempotents;
    // basis indices that generate the algebra (used when solving intertwiner
    // systems); empty means "use the whole basis".
    std::vector<int> generators;

    int vertex_count() const { return idempotents.rows; }
    std::vector<fe> idem(int v) const { return idempotents.row(v); }
    std::vector<fe> mult(const std::vector<fe>& x, const std::vector<fe>& y) const;
    std::vector<fe> basis_vec(int i) const;
    Matrix left_mult_matrix(const std::vector<fe>& x) const;  // y -> x*y on rows
    Matrix right_mult_matrix(const std::vector<fe>& x) const; // y -> y*x on rows
    std::vector<fe> identity_element() const;
    std::vector<int> generator_indices() const;

    // Basis rows of the Jacobson radical (cached). Computed by iterated
    // characteristic-polynomial-coefficient kernels, valid in every
    // characteristic; the result is verified to be a nilpotent ideal.
    const Matrix& radical() const;

    void verify() const; // associativity + idempotent axioms

    mutable std::mutex cache_mutex;
    mutable std::shared_ptr<const BasedAlgebra> opposite_cache;
    mutable std::weak_ptr<const BasedAlgebra> opposite_back;
    mutable std::unique_ptr<Matrix> radical_cache;
};

using AlgebraPtr = std::shared_ptr<const BasedAlgebra>;

AlgebraPtr make_based_algebra(fe p, std::string name, std::vector<std::string> labels,
                              std::vector<Matrix> lmul, Matrix idempotents,
                              std::vector<int> generators);

// Opposite algebra: structure constants transposed, idempotents preserved.
// Cached and involutive: opposite(opposite(A)) is A itself (same pointer).
AlgebraPtr opposite(const AlgebraPtr& A);

struct CornerResult {
    AlgebraPtr algebra;
    Matrix embedding;          // corner-dim x dim(A): corner basis as elements of A
    std::vector<int> vertices; // selected idempotent indices of A, in order
};
// eAe for e = sum of the selected primitive idempotents.
CornerResult corner(const AlgebraPtr& A, const std::vector<int>& idem_subset);

// Basis rows of the two-sided ideal AeA; closure under multiplication is
// verified.
Matrix trace_ideal(const BasedAlgebra& A, const std::vector<int>& idem_subset);

struct QuotientResult {
    AlgebraPtr algebra;
    Matrix projection;           // dim(A) x dim(Q), row j = image of b_j
    Matrix lift;                 // dim(Q) x dim(A), section of the projection
    std::vector<int> surviving;  // A-idempotent index -> Q-idempotent index or -1
};
QuotientResult quotient_algebra(const AlgebraPtr& A, const Matrix& ideal_rows);

// ---- Quivers -----------------------------------------------------------

struct Arrow {
    std::string name;
    int src = 0, tgt = 0; // 0-based
};

struct Quiver {
    int vertices = 0;
    std::vector<Arrow> arrows;
    int arrow_index(const std::string& name) const; // -1 if absent
    void validate() const;
};

struct RelationTerm {
    fe coeff = 1;
    std::vector<int> arrows; // traversal order, left to right
};

struct Relation {
    std::vector<RelationTerm> terms;
};

struct Path {
    int source = 0;
    std::vector<int> arrows; // traversal order
    int length() const { return (int)arrows.size(); }
    int target(const Quiver& q) const;
    std::string label(const Quiver& q) const;
};

struct QuiverAlgebra {
    Quiver quiver;
    std::vector<Relation> relations;
    int bound = 0;      // search window used
    int nilpotency = 0; // N: every path of length >= N lies in the ideal
    std::vector<Path> basis;
    AlgebraPtr based;
};

// Builds the path algebra modulo the relation ideal. bound <= 0 selects the
// default window 2*#arrows + 2. Throws input_error when the ideal is not
// admissible within the window or relations are malformed.
QuiverAlgebra build_quiver_algebra(const Quiver& q, const std::vector<Relation>& rels, fe p,
                                   int bound = 0);

AlgebraPtr to_based(const QuiverAlgebra& qa);

} // namespace qhom
