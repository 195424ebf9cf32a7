#include "qhom/modcat.hpp"
#include "qhom/poly.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace qhom {

std::string tri_str(Tri t) {
    switch (t) {
        case Tri::yes: return "true";
        case Tri::no: return "false";
        default: return "unknown";
    }
}

BasisSolver::BasisSolver(const Matrix& B) : k(B.rows), n(B.cols) {
    // rref([B^T | I_n]); the augmented block solves B^T x = v for arbitrary v
    Matrix A = transpose(B);
    RrefResult R = rref(hstack(A, Matrix::identity(B.p, n)));
    for (int t = 0; t < (int)R.pivots.size(); ++t)
        if (R.pivots[t] < k && R.pivots[t] != t)
            throw certificate_error("BasisSolver: basis rows are dependent");
    if ((int)R.pivots.size() < k || (k > 0 && R.pivots[k - 1] != k - 1))
        throw certificate_error("BasisSolver: basis rows are dependent");
    Matrix T = submatrix(R.m, 0, k, n, n);
    Tt = transpose(T);
}

std::optional<std::vector<fe>> BasisSolver::coords(const std::vector<fe>& v) const {
    std::vector<fe> w = vec_mat(v, Tt);
    for (int i = k; i < n; ++i)
        if (w[i] != 0) return std::nullopt;
    w.resize(k);
    return w;
}

int Module::block_offset(int v) const {
    int off = 0;
    for (int u = 0; u < v; ++u) off += dims[u];
    return off;
}

Matrix Module::act_elem(const std::vector<fe>& x) const {
    Matrix R(A->p, n, n);
    for (int i = 0; i < A->dim; ++i) {
        if (x[i] == 0) continue;
        for (size_t t = 0; t < R.a.size(); ++t) R.a[t] = (R.a[t] + x[i] * act[i].a[t]) % A->p;
    }
    return R;
}

std::string Module::dims_str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < dims.size(); ++i) os << dims[i] << (i + 1 < dims.size() ? "," : "");
    os << ")";
    return os.str();
}

void Module::verify() const {
    if ((int)act.size() != A->dim) throw certificate_error("module: action table size mismatch");
    int total = 0;
    for (int d : dims) total += d;
    if (total != n || (int)dims.size() != A->vertex_count())
        throw certificate_error("module: grading inconsistent");
    for (const auto& m : act)
        if (m.rows != n || m.cols != n) throw certificate_error("module: action matrix shape");
    // idempotent actions are the block projectors
    for (int v = 0; v < A->vertex_count(); ++v) {
        Matrix proj(A->p, n, n);
        int off = block_offset(v);
        for (int t = 0; t < dims[v]; ++t) proj.at(off + t, off + t) = 1 % A->p;
        if (!(act_elem(A->idem(v)) == proj))
            throw certificate_error("module: idempotent action is not the block projector");
    }
    // action respects structure constants on all pairs
    for (int i = 0; i < A->dim; ++i)
        for (int j = 0; j < A->dim; ++j) {
            Matrix lhs = mat_mul(act[i], act[j]);
            Matrix rhs = act_elem(A->lmul[i].row(j));
            if (!(lhs == rhs))
                throw certificate_error("module: action does not respect structure constants at (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
        }
}

void ModuleMap::verify() const {
    if (src.A != tgt.A) throw input_error("module map across different algebras");
    if (m.rows != src.n || m.cols != tgt.n) throw certificate_error("module map shape");
    for (int b = 0; b < src.A->dim; ++b)
        if (!(mat_mul(src.act[b], m) == mat_mul(m, tgt.act[b])))
            throw certificate_error("module map does not intertwine basis element " +
                                    std::to_string(b));
}

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
    if (f.tgt.A != g.src.A || f.tgt.n != g.src.n)
        throw std::invalid_argument("compose: shape mismatch");
    return {f.src, g.tgt, mat_mul(f.m, g.m)};
}

Module zero_module(const AlgebraPtr& A) {
    Module M;
    M.A = A;
    M.dims.assign(A->vertex_count(), 0);
    M.n = 0;
    M.act.assign(A->dim, Matrix(A->p, 0, 0));
    return M;
}

bool is_zero_module(const Module& M) { return M.n == 0; }

namespace {

// Builds a module on an invariant subspace of the algebra itself, spanned
// blockwise; `seed_rows(u)` must emit spanning rows for block u.
struct AlgebraSubspaceModule {
    Module mod;
    Matrix elements;
    BasisSolver solver;
};

AlgebraSubspaceModule module_on_algebra_rows(const AlgebraPtr& A,
                                             const std::vector<Matrix>& block_rows) {
    AlgebraSubspaceModule out;
    Module& M = out.mod;
    M.A = A;
    M.dims.resize(A->vertex_count());
    Matrix all(A->p, 0, A->dim);
    for (int u = 0; u < A->vertex_count(); ++u) {
        M.dims[u] = block_rows[u].rows;
        all = vstack(all, block_rows[u]);
    }
    M.n = all.rows;
    out.elements = all;
    out.solver = BasisSolver(all);
    M.act.assign(A->dim, Matrix(A->p, M.n, M.n));
    for (int b = 0; b < A->dim; ++b) {
        for (int i = 0; i < M.n; ++i) {
            auto img = A->mult(all.row(i), A->basis_vec(b));
            auto co = out.solver.coords(img);
            if (!co) throw certificate_error("algebra subspace is not action-invariant");
            M.act[b].set_row(i, *co);
        }
    }
    return out;
}

} // namespace

ProjectiveModule projective_with_basis(const AlgebraPtr& A, int v) {
    if (v < 0 || v >= A->vertex_count()) throw input_error("projective: vertex out of range");
    std::vector<fe> ev = A->idem(v);
    std::vector<Matrix> blocks;
    for (int u = 0; u < A->vertex_count(); ++u) {
        std::vector<fe> eu = A->idem(u);
        Span s(A->p, A->dim);
        for (int j = 0; j < A->dim; ++j)
            s.add_row(A->mult(ev, A->mult(A->basis_vec(j), eu)));
        blocks.push_back(s.basis());
    }
    auto built = module_on_algebra_rows(A, blocks);
    return {built.mod, v, built.elements};
}

Module projective(const AlgebraPtr& A, int v) { return projective_with_basis(A, v).mod; }

Module dualize(const Module& M) {
    Module D;
    D.A = opposite(M.A);
    D.dims = M.dims;
    D.n = M.n;
    D.act.reserve(M.act.size());
    for (const auto& m : M.act) D.act.push_back(transpose(m));
    return D;
}

ModuleMap dualize_map(const ModuleMap& f) {
    return {dualize(f.tgt), dualize(f.src), transpose(f.m)};
}

Module injective(const AlgebraPtr& A, int v) {
    return dualize(projective(opposite(A), v));
}

DirectSum direct_sum(const AlgebraPtr& A, const std::vector<Module>& parts) {
    for (const auto& P : parts)
        if (P.A != A) throw input_error("direct_sum: algebra mismatch");
    int r = A->vertex_count();
    DirectSum out;
    Module& S = out.sum;
    S.A = A;
    S.dims.assign(r, 0);
    for (const auto& P : parts)
        for (int u = 0; u < r; ++u) S.dims[u] += P.dims[u];
    S.n = 0;
    for (int d : S.dims) S.n += d;
    // global index of (part t, local row i)
    std::vector<std::vector<int>> gidx(parts.size());
    {
        std::vector<int> block_used(r, 0);
        for (size_t t = 0; t < parts.size(); ++t) gidx[t].resize(parts[t].n);
        for (int u = 0; u < r; ++u) {
            int goff = S.block_offset(u);
            int used = 0;
            for (size_t t = 0; t < parts.size(); ++t) {
                int loff = parts[t].block_offset(u);
                for (int i = 0; i < parts[t].dims[u]; ++i) gidx[t][loff + i] = goff + used + i;
                used += parts[t].dims[u];
            }
        }
    }
    S.act.assign(A->dim, Matrix(A->p, S.n, S.n));
    for (int b = 0; b < A->dim; ++b)
        for (size_t t = 0; t < parts.size(); ++t)
            for (int i = 0; i < parts[t].n; ++i)
                for (int j = 0; j < parts[t].n; ++j)
                    S.act[b].at(gidx[t][i], gidx[t][j]) = parts[t].act[b].at(i, j);
    for (size_t t = 0; t < parts.size(); ++t) {
        Matrix inc(A->p, parts[t].n, S.n), prj(A->p, S.n, parts[t].n);
        for (int i = 0; i < parts[t].n; ++i) {
            inc.at(i, gidx[t][i]) = 1 % A->p;
            prj.at(gidx[t][i], i) = 1 % A->p;
        }
        out.inclusions.push_back({parts[t], S, inc});
        out.projections.push_back({S, parts[t], prj});
    }
    return out;
}

Module regular(const AlgebraPtr& A) {
    std::vector<Module> parts;
    for (int v = 0; v < A->vertex_count(); ++v) parts.push_back(projective(A, v));
    return direct_sum(A, parts).sum;
}

Module cogenerator(const AlgebraPtr& A) {
    std::vector<Module> parts;
    for (int v = 0; v < A->vertex_count(); ++v) parts.push_back(injective(A, v));
    return direct_sum(A, parts).sum;
}

HomSpace hom_basis(const Module& M, const Module& N) {
    if (M.A != N.A) throw input_error("hom_basis: modules over different algebras");
    if (M.n == 0 || N.n == 0) return {M, N, {}};
    fe p = M.A->p;
    std::vector<int> gens = M.A->generator_indices();
    int u = M.n * N.n;
    Matrix C(p, (int)gens.size() * u, u);
    int row = 0;
    for (int g : gens) {
        const Matrix& AM = M.act[g];
        const Matrix& AN = N.act[g];
        for (int i = 0; i < M.n; ++i)
            for (int j = 0; j < N.n; ++j) {
                for (int k = 0; k < M.n; ++k) {
                    fe v = AM.at(i, k);
                    if (v) C.at(row, k * N.n + j) = (C.at(row, k * N.n + j) + v) % p;
                }
                for (int l = 0; l < N.n; ++l) {
                    fe v = AN.at(l, j);
                    if (v) C.at(row, i * N.n + l) = (C.at(row, i * N.n + l) + p - v) % p;
                }
                ++row;
            }
    }
    Matrix K = kernel_basis(C);
    HomSpace H{M, N, {}};
    for (int t = 0; t < K.rows; ++t) {
        Matrix phi(p, M.n, N.n);
        phi.a = K.row(t);
        H.basis.push_back(std::move(phi));
    }
    return H;
}

SubmoduleResult submodule_from_rows(const Module& M, const Matrix& rows) {
    fe p = M.A->p;
    int r = M.A->vertex_count();
    Matrix basis(p, 0, M.n);
    std::vector<int> dims(r, 0);
    for (int u = 0; u < r; ++u) {
        Matrix proj = M.act_elem(M.A->idem(u));
        Span s(p, M.n);
        for (int i = 0; i < rows.rows; ++i) s.add_row(vec_mat(rows.row(i), proj));
        dims[u] = s.dim();
        basis = vstack(basis, s.basis());
    }
    Span total(basis);
    for (int i = 0; i < rows.rows; ++i)
        if (!total.contains(rows.row(i)))
            throw certificate_error("submodule rows are not idempotent-adapted (not invariant?)");
    Module S;
    S.A = M.A;
    S.dims = dims;
    S.n = basis.rows;
    S.act.assign(M.A->dim, Matrix(p, S.n, S.n));
    if (S.n > 0) {
        BasisSolver solver(basis);
        for (int b = 0; b < M.A->dim; ++b)
            for (int i = 0; i < S.n; ++i) {
                auto img = vec_mat(basis.row(i), M.act[b]);
                auto co = solver.coords(img);
                if (!co) throw certificate_error("subspace is not action-invariant");
                S.act[b].set_row(i, *co);
            }
    }
    return {S, {S, M, basis}};
}

QuotientResult_M quotient_by_rows(const Module& M, const Matrix& rows) {
    fe p = M.A->p;
    int r = M.A->vertex_count();
    // adapted kernel basis
    Matrix kbasis(p, 0, M.n);
    std::vector<int> qdims(r, 0);
    std::vector<int> section_pos;
    for (int u = 0; u < r; ++u) {
        Matrix proj = M.act_elem(M.A->idem(u));
        Span s(p, M.n);
        for (int i = 0; i < rows.rows; ++i) s.add_row(vec_mat(rows.row(i), proj));
        kbasis = vstack(kbasis, s.basis());
        // local complement inside block u
        int off = M.block_offset(u);
        Span loc(p, M.dims[u]);
        for (int i = 0; i < s.basis().rows; ++i) {
            std::vector<fe> lrow(M.dims[u]);
            for (int t = 0; t < M.dims[u]; ++t) lrow[t] = s.basis().at(i, off + t);
            loc.add_row(lrow);
        }
        Matrix comp = loc.complement_rows();
        qdims[u] = comp.rows;
        for (int i = 0; i < comp.rows; ++i)
            for (int t = 0; t < M.dims[u]; ++t)
                if (comp.at(i, t) != 0) section_pos.push_back(off + t);
    }
    Span K(kbasis);
    int qn = (int)section_pos.size();
    Module Q;
    Q.A = M.A;
    Q.dims = qdims;
    Q.n = qn;
    Matrix proj(p, M.n, qn), section(p, qn, M.n);
    for (int t = 0; t < qn; ++t) section.at(t, section_pos[t]) = 1 % p;
    for (int i = 0; i < M.n; ++i) {
        std::vector<fe> e(M.n, 0);
        e[i] = 1 % p;
        std::vector<fe> w = K.reduce(e);
        for (int t = 0; t < qn; ++t) proj.at(i, t) = w[section_pos[t]];
    }
    Q.act.assign(M.A->dim, Matrix(p, qn, qn));
    for (int b = 0; b < M.A->dim; ++b) Q.act[b] = mat_mul(section, mat_mul(M.act[b], proj));
    return {Q, {M, Q, proj}, section};
}

SubmoduleResult kernel(const ModuleMap& f) {
    return submodule_from_rows(f.src, left_kernel_basis(f.m));
}

Matrix image_rows(const ModuleMap& f) { return Span(f.m).basis(); }

QuotientResult_M cokernel(const ModuleMap& f) { return quotient_by_rows(f.tgt, image_rows(f)); }

Matrix radical_rows(const Module& M) {
    const Matrix& R = M.A->radical();
    Span s(M.A->p, M.n);
    for (int t = 0; t < R.rows; ++t) {
        Matrix act = M.act_elem(R.row(t));
        for (int i = 0; i < M.n; ++i) s.add_row(act.row(i));
    }
    return s.basis();
}

Module top(const Module& M) { return quotient_by_rows(M, radical_rows(M)).quo; }

Module simple(const AlgebraPtr& A, int v) {
    Module P = projective(A, v);
    return top(P);
}

// ---- decomposition -------------------------------------------------------

namespace {

struct EndData {
    HomSpace hom;
    AlgebraPtr alg; // End as a based algebra (function-order product)
    BasisSolver flat;
};

EndData end_as_algebra(const Module& T) {
    EndData e{hom_basis(T, T), nullptr, {}};
    fe p = T.A->p;
    int k = e.hom.dim();
    Matrix flat(p, k, T.n * T.n);
    for (int t = 0; t < k; ++t) flat.set_row(t, e.hom.basis[t].a);
    e.flat = BasisSolver(flat);
    std::vector<Matrix> lmul(k, Matrix(p, k, k));
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t) {
            Matrix prod = mat_mul(e.hom.basis[t], e.hom.basis[s]); // s then t as maps? see below
            auto co = e.flat.coords(prod.a);
            if (!co) throw certificate_error("End(M) not closed under composition");
            lmul[s].set_row(t, *co);
        }
    Matrix idem(p, 1, k);
    auto idco = e.flat.coords(Matrix::identity(p, T.n).a);
    if (!idco) throw certificate_error("identity not in End(M) basis span");
    idem.set_row(0, *idco);
    std::vector<std::string> labels(k);
    for (int i = 0; i < k; ++i) labels[i] = "f" + std::to_string(i);
    e.alg = make_based_algebra(p, "End", std::move(labels), std::move(lmul), std::move(idem), {});
    return e;
}

std::vector<fe> alg_pow(const BasedAlgebra& B, std::vector<fe> x, long long e) {
    std::vector<fe> r = B.identity_element();
    while (e > 0) {
        if (e & 1) r = B.mult(r, x);
        x = B.mult(x, x);
        e >>= 1;
    }
    return r;
}

bool is_commutative(const BasedAlgebra& B) {
    for (int i = 0; i < B.dim; ++i)
        for (int j = i + 1; j < B.dim; ++j)
            if (B.lmul[i].row(j) != B.lmul[j].row(i)) return false;
    return true;
}

// dim of the Frobenius-fixed subalgebra of a commutative algebra over F_p;
// for semisimple commutative B this counts the simple factors.
int berlekamp_count(const BasedAlgebra& B) {
    Matrix F(B.p, B.dim, B.dim);
    for (int i = 0; i < B.dim; ++i) F.set_row(i, alg_pow(B, B.basis_vec(i), B.p));
    Matrix FmI = mat_sub(F, Matrix::identity(B.p, B.dim));
    return left_kernel_basis(FmI).rows;
}

struct Part {
    Module mod;
    Matrix rows_in_root; // rows inside the original module
};

// Split off generalized eigencomponents of an endomorphism whose minimal
// polynomial has at least two distinct irreducible factors.
bool try_split_by_endo(const Part& P, const Matrix& Phi, std::mt19937_64& rng,
                       std::vector<Part>& out) {
    Poly mp = min_poly(Phi);
    auto factors = factor_poly(mp, rng);
    if (factors.size() < 2) return false;
    int total = 0;
    for (auto& [q, e] : factors) {
        Poly qe = Poly::constant(q.p, 1);
        for (int i = 0; i < e; ++i) qe = poly_mul(qe, q);
        Matrix Z = poly_of_matrix(qe, Phi);
        Matrix rows = left_kernel_basis(Z);
        auto sub = submodule_from_rows(P.mod, rows);
        if (sub.sub.n == 0) throw certificate_error("empty primary component");
        total += sub.sub.n;
        out.push_back({sub.sub, mat_mul(sub.incl.m, P.rows_in_root)});
    }
    if (total != P.mod.n) throw certificate_error("primary components do not fill the module");
    return true;
}

Matrix endo_from_coords(const EndData& e, const std::vector<fe>& x, fe p, int n) {
    Matrix Phi(p, n, n);
    for (int t = 0; t < (int)x.size(); ++t)
        if (x[t]) Phi = mat_add(Phi, mat_scale(e.hom.basis[t], x[t]));
    return Phi;
}

} // namespace

Decomposition decompose(const Module& M, std::uint64_t seed, int budget) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    fe p = M.A->p;
    std::vector<Part> done;
    std::vector<Part> stack;
    if (M.n > 0) stack.push_back({M, Matrix::identity(p, M.n)});
    while (!stack.empty()) {
        Part P = std::move(stack.back());
        stack.pop_back();
        EndData E = end_as_algebra(P.mod);
        int k = E.hom.dim();
        if (k == 1) {
            done.push_back(std::move(P));
            continue;
        }
        // local End(M) certificate: E/rad a field
        const Matrix& rad = E.alg->radical();
        bool local = false;
        {
            QuotientResult B = quotient_algebra(E.alg, rad);
            if (is_commutative(*B.algebra)) local = berlekamp_count(*B.algebra) == 1;
        }
        if (local) {
            done.push_back(std::move(P));
            continue;
        }
        // sample endomorphisms for a Fitting split
        bool split = false;
        std::vector<Part> pieces;
        for (int it = 0; it < budget && !split; ++it) {
            std::vector<fe> x(k);
            for (auto& c : x) c = (fe)(rng() % (unsigned long long)p);
            Matrix Phi = endo_from_coords(E, x, p, P.mod.n);
            pieces.clear();
            split = try_split_by_endo(P, Phi, rng, pieces);
        }
        if (!split) {
            // deterministic fallback: derive an idempotent from the
            // commutative semisimple quotient and lift it through the radical
            QuotientResult B = quotient_algebra(E.alg, rad);
            if (is_commutative(*B.algebra)) {
                const BasedAlgebra& Bq = *B.algebra;
                Matrix F(p, Bq.dim, Bq.dim);
                for (int i = 0; i < Bq.dim; ++i) F.set_row(i, alg_pow(Bq, Bq.basis_vec(i), p));
                Matrix fixed = left_kernel_basis(mat_sub(F, Matrix::identity(p, Bq.dim)));
                Span idspan(Matrix::from_rows(p, {Bq.identity_element()}));
                std::vector<fe> b;
                for (int i = 0; i < fixed.rows; ++i)
                    if (!idspan.contains(fixed.row(i))) {
                        b = fixed.row(i);
                        break;
                    }
                if (b.empty()) throw certificate_error("decompose: no splitting vector found");
                Poly mp = min_poly(Bq.left_mult_matrix(b));
                auto roots = factor_poly(mp, rng);
                if (roots.size() < 2 || roots[0].first.degree() != 1)
                    throw certificate_error("decompose: splitting vector has no distinct roots");
                PrimeField Fld{p};
                fe c0 = Fld.normalize(p - roots[0].first.coeff(0));
                std::vector<fe> eb = Bq.identity_element();
                for (size_t t = 1; t < roots.size(); ++t) {
                    fe ct = Fld.normalize(p - roots[t].first.coeff(0));
                    // eb *= (b - ct) / (c0 - ct)
                    std::vector<fe> lin = b;
                    std::vector<fe> one = Bq.identity_element();
                    for (int i = 0; i < Bq.dim; ++i)
                        lin[i] = Fld.sub(lin[i], Fld.mul(ct, one[i]));
                    eb = Bq.mult(eb, lin);
                    fe s = Fld.inv(Fld.sub(c0, ct));
                    for (auto& v : eb) v = Fld.mul(v, s);
                }
                // lift to End and sharpen to an exact idempotent
                std::vector<fe> x = vec_mat(eb, B.lift);
                bool exact = false;
                for (int it = 0; it < 64; ++it) {
                    if (E.alg->mult(x, x) == x) {
                        exact = true;
                        break;
                    }
                    // x <- 3x^2 - 2x^3
                    auto x2 = E.alg->mult(x, x);
                    auto x3 = E.alg->mult(x2, x);
                    PrimeField Fl{p};
                    for (int i = 0; i < E.alg->dim; ++i)
                        x[i] = Fl.sub(Fl.mul(3 % p, x2[i]), Fl.mul(2 % p, x3[i]));
                }
                if (!exact) throw certificate_error("decompose: idempotent lifting diverged");
                Matrix Phi = endo_from_coords(E, x, p, P.mod.n);
                Matrix K0 = left_kernel_basis(Phi);
                Matrix K1 = left_kernel_basis(mat_sub(Matrix::identity(p, P.mod.n), Phi));
                if (K0.rows == 0 || K1.rows == 0)
                    throw certificate_error("decompose: lifted idempotent is trivial");
                pieces.clear();
                for (const Matrix& rows : {K0, K1}) {
                    auto sub = submodule_from_rows(P.mod, rows);
                    pieces.push_back({sub.sub, mat_mul(sub.incl.m, P.rows_in_root)});
                }
                split = true;
            }
        }
        if (!split)
            throw certificate_error(
                "decompose: budget exhausted on a provably decomposable module (dim " +
                std::to_string(P.mod.n) + "); retry with another seed or larger budget");
        for (auto& q : pieces) stack.push_back(std::move(q));
    }
    // partition certificate: the stacked inclusion rows form a basis of M
    if (M.n > 0) {
        Matrix all(p, 0, M.n);
        for (auto& P : done) all = vstack(all, P.rows_in_root);
        if (rank(all) != M.n || all.rows != M.n)
            throw certificate_error("decompose: split is not a direct sum decomposition");
    }
    // group by isomorphism
    Decomposition D;
    D.part_count = (int)done.size();
    std::vector<int> mult(done.size(), 0);
    std::vector<int> rep;
    for (size_t i = 0; i < done.size(); ++i) {
        bool grouped = false;
        for (size_t t = 0; t < rep.size() && !grouped; ++t) {
            Tri iso = is_isomorphic(done[rep[t]].mod, done[i].mod, seed + 17 * (i + 1));
            if (iso == Tri::unknown)
                throw certificate_error("decompose: isomorphism grouping inconclusive");
            if (iso == Tri::yes) {
                ++mult[rep[t]];
                grouped = true;
            }
        }
        if (!grouped) {
            rep.push_back((int)i);
            mult[i] = 1;
        }
    }
    std::sort(rep.begin(), rep.end(), [&](int a, int b) {
        if (done[a].mod.n != done[b].mod.n) return done[a].mod.n > done[b].mod.n;
        return done[a].mod.dims > done[b].mod.dims;
    });
    for (int t : rep) D.summands.push_back({done[t].mod, mult[t]});
    return D;
}

Tri is_isomorphic(const Module& M, const Module& N, std::uint64_t seed) {
    if (M.A != N.A) throw input_error("is_isomorphic: modules over different algebras");
    if (M.dims != N.dims) return Tri::no;
    if (M.n == 0) return Tri::yes;
    HomSpace H = hom_basis(M, N);
    if (H.dim() == 0) return Tri::no;
    HomSpace HR = hom_basis(N, M);
    if (HR.dim() != H.dim()) return Tri::no;
    {
        HomSpace EM = hom_basis(M, M), EN = hom_basis(N, N);
        if (EM.dim() != EN.dim()) return Tri::no;
    }
    fe p = M.A->p;
    int k = H.dim();
    auto full_rank = [&](const std::vector<fe>& x) {
        Matrix Phi(p, M.n, N.n);
        for (int t = 0; t < k; ++t)
            if (x[t]) Phi = mat_add(Phi, mat_scale(H.basis[t], x[t]));
        return rank(Phi) == M.n;
    };
    // exhaustive when the coefficient space is small (definitive answer)
    double combos = 1;
    for (int t = 0; t < k; ++t) combos *= (double)p;
    if (combos <= 20000.0) {
        std::vector<fe> x(k, 0);
        while (true) {
            if (full_rank(x)) return Tri::yes;
            int t = 0;
            while (t < k && ++x[t] == p) x[t++] = 0;
            if (t == k) break;
        }
        return Tri::no;
    }
    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
    for (int it = 0; it < 64; ++it) {
        std::vector<fe> x(k);
        for (auto& c : x) c = (fe)(rng() % (unsigned long long)p);
        if (full_rank(x)) return Tri::yes;
    }
    // small affine grid fallback
    if (k <= 4) {
        fe cap = std::min<fe>(p, 6);
        std::vector<fe> x(k, 0);
        while (true) {
            if (full_rank(x)) return Tri::yes;
            int t = 0;
            while (t < k && ++x[t] == cap) x[t++] = 0;
            if (t == k) break;
        }
    }
    return Tri::unknown;
}

// ---- F and G -------------------------------------------------------------

Module apply_F(const EndoAlgebra& ctx, const Module& M) {
    const AlgebraPtr& G = ctx.gamma;
    fe p = G->p;
    int slots = (int)ctx.summands.size();
    std::vector<HomSpace> H;
    std::vector<BasisSolver> solvers;
    std::vector<int> dims(slots), off(slots, 0);
    int n = 0;
    for (int i = 0; i < slots; ++i) {
        H.push_back(hom_basis(ctx.summands[i], M));
        dims[i] = H[i].dim();
        off[i] = n;
        n += dims[i];
        if (dims[i] > 0) {
            Matrix flat(p, dims[i], ctx.summands[i].n * M.n);
            for (int t = 0; t < dims[i]; ++t) flat.set_row(t, H[i].basis[t].a);
            solvers.push_back(BasisSolver(flat));
        } else {
            solvers.push_back(BasisSolver());
        }
    }
    Module FM;
    FM.A = G;
    FM.dims = dims;
    FM.n = n;
    FM.act.assign(G->dim, Matrix(p, n, n));
    for (int t = 0; t < G->dim; ++t) {
        int a = ctx.src_slot[t], b = ctx.tgt_slot[t];
        if (dims[b] == 0 || dims[a] == 0) continue;
        // local matrix of the basis map X_a -> X_b
        Matrix local(p, ctx.summands[a].n, ctx.summands[b].n);
        {
            const Matrix& full = ctx.basis_full[t];
            const Matrix& inc = ctx.sum.inclusions[a].m;  // n_a x n_X
            const Matrix& prj = ctx.sum.projections[b].m; // n_X x n_b
            local = mat_mul(inc, mat_mul(full, prj));
        }
        for (int u2 = 0; u2 < dims[b]; ++u2) {
            Matrix composed = mat_mul(local, H[b].basis[u2]); // X_a -> M
            auto co = solvers[a].coords(composed.a);
            if (!co) throw certificate_error("apply_F: composition leaves the hom basis span");
            for (int w = 0; w < dims[a]; ++w) FM.act[t].at(off[b] + u2, off[a] + w) = (*co)[w];
        }
    }
    return FM;
}

Module apply_G(const CornerResult& c, const Module& N) {
    fe p = N.A->p;
    std::vector<int> sel;
    std::vector<int> gdims;
    for (int v : c.vertices) {
        int offv = N.block_offset(v);
        for (int t = 0; t < N.dims[v]; ++t) sel.push_back(offv + t);
        gdims.push_back(N.dims[v]);
    }
    Module GN;
    GN.A = c.algebra;
    GN.dims = gdims;
    GN.n = (int)sel.size();
    GN.act.assign(c.algebra->dim, Matrix(p, GN.n, GN.n));
    for (int ci = 0; ci < c.algebra->dim; ++ci) {
        Matrix full = N.act_elem(c.embedding.row(ci));
        for (int rI = 0; rI < GN.n; ++rI) {
            // restriction must not leak outside the selected blocks
            std::vector<fe> fullrow = full.row(sel[rI]);
            std::vector<bool> keep(N.n, false);
            for (int s : sel) keep[s] = true;
            for (int c2 = 0; c2 < N.n; ++c2)
                if (!keep[c2] && fullrow[c2] != 0)
                    throw certificate_error("apply_G: corner action leaks outside e-blocks");
            for (int cI = 0; cI < GN.n; ++cI) GN.act[ci].at(rI, cI) = fullrow[sel[cI]];
        }
    }
    return GN;
}

} // namespace qhom
