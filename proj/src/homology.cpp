#include "qhom/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qhom {

CoverResult projective_cover(const Module& M) {
    const AlgebraPtr& A = M.A;
    fe p = A->p;
    int r = A->vertex_count();
    Matrix radM = radical_rows(M);
    QuotientResult_M T = quotient_by_rows(M, radM); // top
    const Module& topM = T.quo;
    std::vector<int> mults(r, 0);
    std::vector<std::pair<int, std::vector<fe>>> gens; // (vertex, generator in M)
    Span covered(p, topM.n);
    for (int v = 0; v < r; ++v) {
        int off = topM.block_offset(v);
        ProjectiveModule Pv = projective_with_basis(A, v);
        for (int t = 0; t < topM.dims[v]; ++t) {
            std::vector<fe> ghat(topM.n, 0);
            ghat[off + t] = 1 % p;
            if (covered.contains(ghat)) continue;
            // lift: x with x * proj = ghat, then force into block v
            auto x = solve_left(T.proj.m, Matrix::from_rows(p, {ghat}));
            if (!x) throw certificate_error("projective_cover: top projection not surjective");
            std::vector<fe> g = vec_mat(x->row(0), M.act_elem(A->idem(v)));
            gens.push_back({v, g});
            ++mults[v];
            // enlarge the covered subspace by the image of top(P_v)
            for (int j = 0; j < Pv.mod.n; ++j) {
                std::vector<fe> img = vec_mat(g, M.act_elem(Pv.elements.row(j)));
                covered.add_row(vec_mat(img, T.proj.m));
            }
        }
    }
    if (covered.dim() != topM.n)
        throw certificate_error("projective_cover: generators do not cover the top");
    // assemble the cover
    std::vector<Module> parts;
    std::vector<Matrix> elem;
    for (auto& [v, g] : gens) {
        ProjectiveModule Pv = projective_with_basis(A, v);
        parts.push_back(Pv.mod);
        elem.push_back(Pv.elements);
    }
    DirectSum C = direct_sum(A, parts);
    Matrix phi(p, C.sum.n, M.n);
    for (size_t t = 0; t < parts.size(); ++t) {
        for (int i = 0; i < parts[t].n; ++i) {
            std::vector<fe> img = vec_mat(gens[t].second, M.act_elem(elem[t].row(i)));
            std::vector<fe> unit(parts[t].n, 0);
            unit[i] = 1 % p;
            std::vector<fe> grow = vec_mat(unit, C.inclusions[t].m);
            for (int s = 0; s < C.sum.n; ++s)
                if (grow[s] != 0) {
                    phi.set_row(s, img);
                    break;
                }
        }
    }
    ModuleMap cover{C.sum, M, phi};
    if (rank(phi) != M.n) throw certificate_error("projective_cover: not surjective");
    // minimality: kernel sits inside rad(cover)
    Matrix ker = left_kernel_basis(phi);
    Span radC(radical_rows(C.sum));
    for (int i = 0; i < ker.rows; ++i)
        if (!radC.contains(ker.row(i)))
            throw certificate_error("projective_cover: kernel not inside the radical");
    return {cover, mults};
}

CoverResult injective_envelope(const Module& M) {
    CoverResult c = projective_cover(dualize(M));
    Module E = dualize(c.map.src);
    ModuleMap env{M, E, transpose(c.map.m)};
    return {env, c.mults};
}

int Resolution::length() const {
    int len = -1;
    for (int i = 0; i < (int)terms.size(); ++i)
        if (terms[i].n > 0) len = i;
    return len;
}

Resolution min_resolution(const Module& M, Direction dir, int cutoff) {
    if (cutoff < 0) throw input_error("resolution cutoff must be >= 0");
    if (dir == Direction::injective) {
        Resolution dual = min_resolution(dualize(M), Direction::projective, cutoff);
        Resolution res;
        res.dir = Direction::injective;
        res.base = M;
        res.minimal = true;
        res.truncated = dual.truncated;
        res.term_mults = dual.term_mults;
        for (auto& t : dual.terms) res.terms.push_back(dualize(t));
        for (size_t k = 0; k < dual.maps.size(); ++k) {
            const ModuleMap& f = dual.maps[k];
            Module src = k == 0 ? M : res.terms[k - 1];
            res.maps.push_back({src, res.terms[k], transpose(f.m)});
        }
        return res;
    }
    Resolution res;
    res.dir = Direction::projective;
    res.base = M;
    Module cur = M;
    Matrix syzygy_incl; // inclusion of the current syzygy into the previous term
    for (int k = 0; k <= cutoff; ++k) {
        if (cur.n == 0) break;
        CoverResult c = projective_cover(cur);
        res.terms.push_back(c.map.src);
        res.term_mults.push_back(c.mults);
        if (k == 0) {
            res.maps.push_back(c.map);
        } else {
            res.maps.push_back({c.map.src, res.terms[k - 1], mat_mul(c.map.m, syzygy_incl)});
        }
        Matrix ker = left_kernel_basis(c.map.m);
        SubmoduleResult K = submodule_from_rows(c.map.src, ker);
        syzygy_incl = K.incl.m;
        cur = K.sub;
    }
    res.truncated = cur.n > 0;
    // exactness certificate at the internal joints
    for (size_t k = 1; k < res.maps.size(); ++k) {
        const Matrix& d1 = res.maps[k].m;
        const Matrix& d0 = res.maps[k - 1].m;
        if (!mat_mul(d1, d0).is_zero())
            throw certificate_error("resolution: differentials do not compose to zero");
        if (rank(d1) + rank(d0) != res.terms[k - 1].n)
            throw certificate_error("resolution: not exact at an internal joint");
    }
    return res;
}

namespace {

// d^*: Hom(P_{k-1}, N) -> Hom(P_k, N), phi -> d then phi, in hom bases.
Matrix induced_on_hom(const ModuleMap& d, const HomSpace& from, const HomSpace& to) {
    fe p = d.src.A->p;
    Matrix T(p, from.dim(), to.dim());
    if (from.dim() == 0 || to.dim() == 0) return T;
    Matrix flat(p, to.dim(), to.src.n * to.tgt.n);
    for (int t = 0; t < to.dim(); ++t) flat.set_row(t, to.basis[t].a);
    BasisSolver solver(flat);
    for (int t = 0; t < from.dim(); ++t) {
        Matrix comp = mat_mul(d.m, from.basis[t]);
        auto co = solver.coords(comp.a);
        if (!co) throw certificate_error("induced hom map leaves the basis span");
        T.set_row(t, *co);
    }
    return T;
}

} // namespace

int ext_dim(int i, const Module& M, const Module& N) {
    if (i < 0) throw input_error("ext_dim: negative degree");
    if (M.A != N.A) throw input_error("ext_dim: modules over different algebras");
    if (i == 0) return hom_basis(M, N).dim();
    if (M.n == 0 || N.n == 0) return 0;
    Resolution res = min_resolution(M, Direction::projective, i + 1);
    if ((int)res.terms.size() <= i) return 0; // resolution ended before degree i
    HomSpace Hi = hom_basis(res.terms[i], N);
    if (Hi.dim() == 0) return 0;
    HomSpace Him1 = hom_basis(res.terms[i - 1], N);
    Matrix di = induced_on_hom(res.maps[i], Him1, Hi);
    int rk_in = rank(di);
    int ker_out;
    if ((int)res.terms.size() > i + 1 && res.terms[i + 1].n > 0) {
        HomSpace Hip1 = hom_basis(res.terms[i + 1], N);
        Matrix dip1 = induced_on_hom(res.maps[i + 1], Hi, Hip1);
        ker_out = Hi.dim() - rank(dip1);
    } else {
        ker_out = Hi.dim();
    }
    return ker_out - rk_in;
}

std::string DimensionResult::str(const std::string& label) const {
    std::ostringstream os;
    os << label << (exact ? " = " : " >= ") << value;
    return os.str();
}

DimensionResult global_dimension(const AlgebraPtr& A, int cutoff) {
    int best = 0;
    bool all_exact = true;
    for (int v = 0; v < A->vertex_count(); ++v) {
        Module S = simple(A, v);
        Resolution res = min_resolution(S, Direction::projective, cutoff);
        if (res.truncated)
            all_exact = false;
        else
            best = std::max(best, res.length());
    }
    if (!all_exact) return {false, cutoff, cutoff};
    return {true, best, cutoff};
}

std::vector<int> projective_injective_vertices(const AlgebraPtr& A) {
    std::vector<int> out;
    for (int v = 0; v < A->vertex_count(); ++v) {
        Module D = dualize(projective(A, v)); // over opposite(A)
        CoverResult c = projective_cover(D);
        if (left_kernel_basis(c.map.m).rows == 0) out.push_back(v);
    }
    return out;
}

std::vector<int> injective_projective_vertices(const AlgebraPtr& A) {
    std::vector<int> out;
    for (int v = 0; v < A->vertex_count(); ++v) {
        Module I = injective(A, v);
        CoverResult c = projective_cover(I);
        if (left_kernel_basis(c.map.m).rows == 0) out.push_back(v);
    }
    return out;
}

namespace {

DimensionResult initial_pi_segment(const Resolution& res, const std::vector<int>& pi_set,
                                   int cutoff) {
    std::set<int> pi(pi_set.begin(), pi_set.end());
    for (int k = 0; k < (int)res.terms.size(); ++k) {
        bool term_pi = true;
        for (int v = 0; v < (int)res.term_mults[k].size(); ++v)
            if (res.term_mults[k][v] > 0 && !pi.count(v)) term_pi = false;
        if (!term_pi) return {true, k, cutoff};
    }
    // every computed term is projective-injective (possibly the resolution
    // terminated): report an honest lower bound, never a finite exact value
    return {false, cutoff, cutoff};
}

} // namespace

DimensionResult dominant_dimension(const AlgebraPtr& A, int cutoff) {
    Module DA = dualize(regular(opposite(A)));
    Resolution res = min_resolution(DA, Direction::projective, cutoff);
    return initial_pi_segment(res, projective_injective_vertices(A), cutoff);
}

DimensionResult dominant_dimension_via_injective(const AlgebraPtr& A, int cutoff) {
    Resolution res = min_resolution(regular(A), Direction::injective, cutoff);
    return initial_pi_segment(res, injective_projective_vertices(A), cutoff);
}

namespace {

// iso classes of the indecomposable projectives: class id per vertex
std::vector<int> projective_classes(const AlgebraPtr& A, std::uint64_t seed) {
    int r = A->vertex_count();
    std::vector<Module> P;
    for (int v = 0; v < r; ++v) P.push_back(projective(A, v));
    std::vector<int> cls(r, -1);
    for (int v = 0; v < r; ++v) {
        for (int w = 0; w < v && cls[v] < 0; ++w) {
            Tri iso = is_isomorphic(P[w], P[v], seed + 31 * (std::uint64_t)(v + r * w));
            if (iso == Tri::unknown)
                throw certificate_error("projective isomorphism classification inconclusive");
            if (iso == Tri::yes) cls[v] = cls[w];
        }
        if (cls[v] < 0) cls[v] = v;
    }
    return cls;
}

} // namespace

bool pk_membership(const AlgebraPtr& A, const std::vector<int>& e, const Module& M, int k,
                   std::uint64_t seed) {
    if (k < 0) throw input_error("pk_membership: negative index");
    for (int v : e)
        if (v < 0 || v >= A->vertex_count()) throw input_error("pk_membership: bad idempotent");
    Resolution res = min_resolution(M, Direction::projective, k);
    std::vector<int> cls = projective_classes(A, seed);
    std::set<int> allowed;
    for (int v : e) allowed.insert(cls[v]);
    for (int t = 0; t < std::min((int)res.terms.size(), k + 1); ++t)
        for (int v = 0; v < A->vertex_count(); ++v)
            if (res.term_mults[t][v] > 0 && !allowed.count(cls[v])) return false;
    return true;
}

AptReport verify_apt_equivalence(const AlgebraPtr& A, const std::vector<int>& e, const Module& M,
                                 int d, std::uint64_t seed) {
    if (d < 1) throw input_error("verify_apt_equivalence: d must be >= 1");
    AptReport rep;
    rep.projective_condition = pk_membership(A, e, M, d - 1, seed);
    Matrix I = trace_ideal(*A, e);
    std::ostringstream detail;
    if (I.rows == A->dim) {
        // A/I is the zero algebra: the Ext condition ranges over no modules
        rep.ext_condition = true;
        detail << "trace ideal is the whole algebra; Ext condition vacuous";
    } else {
        QuotientResult Q = quotient_algebra(A, I);
        // lift a module over A/I back to A along the projection
        auto lift_module = [&](const Module& Y) {
            Module L;
            L.A = A;
            L.n = Y.n;
            L.dims.assign(A->vertex_count(), 0);
            for (int v = 0; v < A->vertex_count(); ++v)
                if (Q.surviving[v] >= 0) L.dims[v] = Y.dims[Q.surviving[v]];
            L.act.reserve(A->dim);
            for (int b = 0; b < A->dim; ++b)
                L.act.push_back(Y.act_elem(vec_mat(A->basis_vec(b), Q.projection)));
            return L;
        };
        std::vector<Module> tests;
        for (int v = 0; v < Q.algebra->vertex_count(); ++v) {
            tests.push_back(lift_module(simple(Q.algebra, v)));
            tests.push_back(lift_module(injective(Q.algebra, v)));
        }
        rep.ext_condition = true;
        for (size_t t = 0; t < tests.size() && rep.ext_condition; ++t)
            for (int i = 0; i < d && rep.ext_condition; ++i) {
                int dim = ext_dim(i, M, tests[t]);
                if (dim != 0) {
                    rep.ext_condition = false;
                    detail << "Ext^" << i << "(M, Y_" << t << ") = " << dim;
                }
            }
        if (rep.ext_condition) detail << "Ext^i(M, Y) = 0 for 0 <= i < " << d;
    }
    rep.agree = rep.projective_condition == rep.ext_condition;
    rep.detail = detail.str();
    return rep;
}

ExtIsoReport verify_ext_iso(const AlgebraPtr& Gamma, const std::vector<int>& e, const Module& X,
                            const Module& Y, int d, std::uint64_t seed) {
    if (d < 1) throw input_error("verify_ext_iso: d must be >= 1");
    ExtIsoReport rep;
    // hypothesis level: longest resolution prefix of X inside add(Gamma e)
    {
        Resolution res = min_resolution(X, Direction::projective, d);
        std::vector<int> cls = projective_classes(Gamma, seed);
        std::set<int> allowed;
        for (int v : e) allowed.insert(cls[v]);
        int level = -1;
        for (int t = 0; t < (int)res.terms.size(); ++t) {
            bool ok = true;
            for (int v = 0; v < Gamma->vertex_count(); ++v)
                if (res.term_mults[t][v] > 0 && !allowed.count(cls[v])) ok = false;
            if (!ok) break;
            level = t;
        }
        if (!res.truncated && level == res.length()) level = d; // ends inside add(Gamma e)
        rep.hypothesis_level = level;
        rep.hypothesis_met = level >= d;
    }
    CornerResult C = corner(Gamma, e);
    Module GX = apply_G(C, X);
    Module GY = apply_G(C, Y);
    rep.equal = true;
    for (int i = 0; i < d; ++i) {
        int lhs = ext_dim(i, X, Y);
        int rhs = ext_dim(i, GX, GY);
        rep.table.push_back({lhs, rhs});
        if (lhs != rhs) rep.equal = false;
    }
    return rep;
}

} // namespace qhom
