#pragma once

#include "qhom/algebra.hpp"

#include <cstdint>

namespace qhom {

enum class Tri { yes, no, unknown };
std::string tri_str(Tri t);

// Coordinate solver against a fixed independent row basis B (k x n):
// coords(v) returns x with x*B = v, or absent when v is outside the span.
struct BasisSolver {
    int k = 0, n = 0;
    Matrix Tt;
    BasisSolver() = default;
    explicit BasisSolver(const Matrix& B);
    std::optional<std::vector<fe>> coords(const std::vector<fe>& v) const;
};

// A module: vector space graded by the primitive idempotents (basis ordered
// block by block) together with one action matrix per algebra basis element.
// Vectors are rows; maps act on the right; act(b_i)*act(b_j) matches the
// structure constants.
struct Module {
    AlgebraPtr A;
    std::vector<int> dims; // per idempotent
    int n = 0;
    std::vector<Matrix> act; // one n x n matrix per algebra basis element

    int block_offset(int v) const;
    Matrix act_elem(const std::vector<fe>& x) const; // action of an algebra element
    std::string dims_str() const;
    void verify() const; // full axiom check (projectors + structure constants)
};

struct ModuleMap {
    Module src, tgt;
    Matrix m; // src.n x tgt.n
    void verify() const; // intertwining on all basis elements
};

ModuleMap compose(const ModuleMap& f, const ModuleMap& g); // f then g

struct HomSpace {
    Module src, tgt;
    std::vector<Matrix> basis;
    int dim() const { return (int)basis.size(); }
};

Module zero_module(const AlgebraPtr& A);
bool is_zero_module(const Module& M);

struct ProjectiveModule {
    Module mod;
    int vertex = 0;
    Matrix elements; // n x dim(A): module basis as elements of the algebra
};
ProjectiveModule projective_with_basis(const AlgebraPtr& A, int v);
Module projective(const AlgebraPtr& A, int v);
Module injective(const AlgebraPtr& A, int v);
Module simple(const AlgebraPtr& A, int v);

struct DirectSum {
    Module sum;
    std::vector<ModuleMap> inclusions;
    std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const AlgebraPtr& A, const std::vector<Module>& parts);
Module regular(const AlgebraPtr& A);
Module cogenerator(const AlgebraPtr& A);

// Module over opposite(A) with transposed action; an involution.
Module dualize(const Module& M);
ModuleMap dualize_map(const ModuleMap& f); // D(tgt) -> D(src)

// Basis of the intertwiner space Hom_A(M, N), solved against the algebra's
// generating set.
HomSpace hom_basis(const Module& M, const Module& N);

struct SubmoduleResult {
    Module sub;
    ModuleMap incl;
};
// rows must span an action-invariant subspace (verified).
SubmoduleResult submodule_from_rows(const Module& M, const Matrix& rows);

struct QuotientResult_M {
    Module quo;
    ModuleMap proj;
    Matrix section; // quo.n x M.n
};
QuotientResult_M quotient_by_rows(const Module& M, const Matrix& rows);

SubmoduleResult kernel(const ModuleMap& f);
Matrix image_rows(const ModuleMap& f);
QuotientResult_M cokernel(const ModuleMap& f);

Matrix radical_rows(const Module& M); // rows spanning rad(A)·M
Module top(const Module& M);

// Fitting decomposition with explicit split certificates. Randomized with
// the given seed but with a deterministic local-endomorphism-ring
// certificate, so "indecomposable" answers are proved, not sampled.
struct Decomposition {
    std::vector<std::pair<Module, int>> summands; // representative, multiplicity
    int part_count = 0;                           // total with multiplicity
};
Decomposition decompose(const Module& M, std::uint64_t seed, int budget = 32);

Tri is_isomorphic(const Module& M, const Module& N, std::uint64_t seed);

// ---- the functors F = Hom(X,-) and G = Hom(P,-) -------------------------

// End(X) presented as a based algebra; basis elements are maps between the
// summands, idempotents are the summand identities.
struct EndoAlgebra {
    AlgebraPtr gamma;
    std::vector<Module> summands;
    DirectSum sum; // X with inclusions/projections
    std::vector<Matrix> basis_full; // each basis element as an n_X x n_X matrix
    std::vector<int> src_slot, tgt_slot;
};

// F M = Hom(X, M) over End(X); slot v carries Hom(X_v, M), and a basis
// element gamma acts by gamma-then-phi.
Module apply_F(const EndoAlgebra& ctx, const Module& M);

// G N = Hom(P, N) for P the sum of the projectives at the selected
// idempotents, realized as the selected grading blocks of N over the corner.
Module apply_G(const CornerResult& c, const Module& N);

} // namespace qhom
