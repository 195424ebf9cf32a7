#include "qhom/tilting.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace qhom {

namespace {

struct FlatSolver {
    Matrix flat;
    BasisSolver solver;
};

} // namespace

// flattened-basis solver shared by endo construction and the GF transport
static FlatSolver make_flat(const std::vector<Matrix>& mats, fe p, int cells) {
    FlatSolver f{Matrix(p, (int)mats.size(), cells), {}};
    for (int t = 0; t < (int)mats.size(); ++t) f.flat.set_row(t, mats[t].a);
    f.solver = BasisSolver(f.flat);
    return f;
}

EndoAlgebra endo_algebra(const AlgebraPtr& Lambda, const std::vector<Module>& summands) {
    if (summands.empty()) throw input_error("endo_algebra: no summands");
    for (const auto& S : summands)
        if (S.A != Lambda) throw input_error("endo_algebra: summand over a different algebra");
    fe p = Lambda->p;
    EndoAlgebra ctx;
    ctx.summands = summands;
    ctx.sum = direct_sum(Lambda, summands);
    int k = (int)summands.size();
    int nX = ctx.sum.sum.n;
    std::vector<int> idem_pos;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            HomSpace H = hom_basis(summands[i], summands[j]);
            std::vector<Matrix> local = H.basis;
            if (i == j) {
                // identity first
                Matrix id = Matrix::identity(p, summands[i].n);
                std::vector<Matrix> reordered = {id};
                Span s(p, summands[i].n * summands[i].n);
                s.add_row(id.a);
                for (auto& m : local) {
                    if (s.contains(m.a)) continue;
                    s.add_row(m.a);
                    reordered.push_back(m);
                }
                if ((int)reordered.size() != (int)local.size())
                    throw certificate_error("endo_algebra: identity reordering changed dimension");
                local = std::move(reordered);
            }
            for (size_t t = 0; t < local.size(); ++t) {
                Matrix full = mat_mul(ctx.sum.projections[i].m,
                                      mat_mul(local[t], ctx.sum.inclusions[j].m));
                if (i == j && t == 0) idem_pos.push_back((int)ctx.basis_full.size());
                ctx.basis_full.push_back(full);
                ctx.src_slot.push_back(i);
                ctx.tgt_slot.push_back(j);
            }
        }
    int dim = (int)ctx.basis_full.size();
    FlatSolver flat = make_flat(ctx.basis_full, p, nX * nX);
    std::vector<Matrix> lmul(dim, Matrix(p, dim, dim));
    for (int s = 0; s < dim; ++s)
        for (int t = 0; t < dim; ++t) {
            Matrix prod = mat_mul(ctx.basis_full[t], ctx.basis_full[s]);
            if (prod.is_zero()) continue;
            auto co = flat.solver.coords(prod.a);
            if (!co) throw certificate_error("endo_algebra: product outside the basis span");
            lmul[s].set_row(t, *co);
        }
    Matrix idem(p, k, dim);
    for (int i = 0; i < k; ++i) idem.at(i, idem_pos[i]) = 1 % p;
    std::vector<std::string> labels(dim);
    {
        std::set<int> idset(idem_pos.begin(), idem_pos.end());
        std::vector<int> counter(k * k, 0);
        for (int t = 0; t < dim; ++t) {
            int i = ctx.src_slot[t], j = ctx.tgt_slot[t];
            if (idset.count(t))
                labels[t] = "E" + std::to_string(i + 1);
            else
                labels[t] = "g" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" +
                            std::to_string(counter[i * k + j]++);
        }
    }
    ctx.gamma = make_based_algebra(p, "End", std::move(labels), std::move(lmul), std::move(idem),
                                   {});
    return ctx;
}

std::optional<Matrix> iso_witness(const Module& M, const Module& N, std::uint64_t seed) {
    if (M.A != N.A || M.dims != N.dims) return std::nullopt;
    if (M.n == 0) return Matrix(M.A->p, 0, 0);
    HomSpace H = hom_basis(M, N);
    if (H.dim() == 0) return std::nullopt;
    fe p = M.A->p;
    int k = H.dim();
    auto assemble = [&](const std::vector<fe>& x) {
        Matrix Phi(p, M.n, N.n);
        for (int t = 0; t < k; ++t)
            if (x[t]) Phi = mat_add(Phi, mat_scale(H.basis[t], x[t]));
        return Phi;
    };
    double combos = 1;
    for (int t = 0; t < k; ++t) combos *= (double)p;
    if (combos <= 20000.0) {
        std::vector<fe> x(k, 0);
        while (true) {
            Matrix Phi = assemble(x);
            if (rank(Phi) == M.n) return Phi;
            int t = 0;
            while (t < k && ++x[t] == p) x[t++] = 0;
            if (t == k) break;
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc909ULL);
    for (int it = 0; it < 128; ++it) {
        std::vector<fe> x(k);
        for (auto& c : x) c = (fe)(rng() % (unsigned long long)p);
        Matrix Phi = assemble(x);
        if (rank(Phi) == M.n) return Phi;
    }
    return std::nullopt;
}

namespace {

// slot of a summand isomorphic to M, or -1
int find_slot(const EndoAlgebra& ctx, const Module& M, std::uint64_t seed) {
    for (size_t i = 0; i < ctx.summands.size(); ++i)
        if (is_isomorphic(ctx.summands[i], M, seed + 101 * i) == Tri::yes) return (int)i;
    return -1;
}

} // namespace

Approximation right_approximation(const EndoAlgebra& ctx, const Module& M, std::uint64_t seed) {
    const AlgebraPtr& Lambda = ctx.summands[0].A;
    fe p = Lambda->p;
    // precondition: the regular module lies in add(X)
    for (int v = 0; v < Lambda->vertex_count(); ++v)
        if (find_slot(ctx, projective(Lambda, v), seed) < 0)
            throw input_error("right_approximation: projective at vertex " + std::to_string(v + 1) +
                              " is not in add(X)");
    Module FM = apply_F(ctx, M);
    // transport the minimal cover of FM: a top generator in slot a is itself
    // a map X_a -> M, and those maps assemble to the approximation
    int slots = (int)ctx.summands.size();
    std::vector<HomSpace> H;
    for (int i = 0; i < slots; ++i) H.push_back(hom_basis(ctx.summands[i], M));
    Matrix radF = radical_rows(FM);
    QuotientResult_M T = quotient_by_rows(FM, radF);
    Span covered(p, T.quo.n);
    std::vector<std::pair<int, std::vector<fe>>> gens;
    for (int a = 0; a < slots; ++a) {
        ProjectiveModule Pa = projective_with_basis(ctx.gamma, a);
        int off = T.quo.block_offset(a);
        for (int t = 0; t < T.quo.dims[a]; ++t) {
            std::vector<fe> ghat(T.quo.n, 0);
            ghat[off + t] = 1 % p;
            if (covered.contains(ghat)) continue;
            auto x = solve_left(T.proj.m, Matrix::from_rows(p, {ghat}));
            if (!x) throw certificate_error("approximation: top projection not surjective");
            std::vector<fe> g = vec_mat(x->row(0), FM.act_elem(ctx.gamma->idem(a)));
            gens.push_back({a, g});
            for (int j = 0; j < Pa.mod.n; ++j)
                covered.add_row(vec_mat(vec_mat(g, FM.act_elem(Pa.elements.row(j))), T.proj.m));
        }
    }
    if (covered.dim() != T.quo.n)
        throw certificate_error("approximation: generators do not cover top(FM)");
    std::vector<Module> parts;
    std::vector<Matrix> comps; // each: n_{X_a} x n_M
    std::vector<int> slot_mults(slots, 0);
    for (auto& [a, g] : gens) {
        parts.push_back(ctx.summands[a]);
        ++slot_mults[a];
        int off = FM.block_offset(a);
        Matrix comp(p, ctx.summands[a].n, M.n);
        for (int u = 0; u < FM.dims[a]; ++u)
            if (g[off + u] != 0) comp = mat_add(comp, mat_scale(H[a].basis[u], g[off + u]));
        comps.push_back(comp);
    }
    DirectSum C = direct_sum(Lambda, parts);
    Matrix phi(p, C.sum.n, M.n);
    for (size_t t = 0; t < parts.size(); ++t)
        for (int i = 0; i < parts[t].n; ++i) {
            std::vector<fe> unit(parts[t].n, 0);
            unit[i] = 1 % p;
            std::vector<fe> grow = vec_mat(unit, C.inclusions[t].m);
            for (int s = 0; s < C.sum.n; ++s)
                if (grow[s] != 0) {
                    phi.set_row(s, comps[t].row(i));
                    break;
                }
        }
    ModuleMap approx{C.sum, M, phi};
    if (rank(phi) != M.n) throw certificate_error("right approximation is not surjective");
    // Hom(X_s, -)-surjectivity onto Hom(X_s, M) for every summand
    for (int s = 0; s < slots; ++s) {
        HomSpace HC = hom_basis(ctx.summands[s], C.sum);
        if (H[s].dim() == 0) continue;
        Matrix flat(p, H[s].dim(), ctx.summands[s].n * M.n);
        for (int t = 0; t < H[s].dim(); ++t) flat.set_row(t, H[s].basis[t].a);
        BasisSolver solver(flat);
        Matrix induced(p, HC.dim(), H[s].dim());
        for (int t = 0; t < HC.dim(); ++t) {
            auto co = solver.coords(mat_mul(HC.basis[t], phi).a);
            if (!co) throw certificate_error("approximation: induced hom outside span");
            induced.set_row(t, *co);
        }
        if (rank(induced) != H[s].dim())
            throw certificate_error("approximation: Hom(X_" + std::to_string(s + 1) +
                                    ", -) not surjective onto Hom(X, M)");
    }
    return {approx, slot_mults};
}

Approximation left_approximation(const EndoAlgebra& ctx, const Module& M, std::uint64_t seed) {
    const AlgebraPtr& Lambda = ctx.summands[0].A;
    for (int v = 0; v < Lambda->vertex_count(); ++v)
        if (find_slot(ctx, injective(Lambda, v), seed) < 0)
            throw input_error("left_approximation: injective at vertex " + std::to_string(v + 1) +
                              " is not in add(X)");
    std::vector<Module> dual_summands;
    for (const auto& S : ctx.summands) dual_summands.push_back(dualize(S));
    EndoAlgebra dctx = endo_algebra(opposite(Lambda), dual_summands);
    Approximation r = right_approximation(dctx, dualize(M), seed);
    Module C = dualize(r.map.src);
    ModuleMap f{M, C, transpose(r.map.m)};
    return {f, r.slot_mults};
}

namespace {

struct AddMembership {
    bool ok = true;
    std::string detail;
};

AddMembership in_add_x(const EndoAlgebra& ctx, const Module& K, std::uint64_t seed) {
    AddMembership m;
    if (K.n == 0) return m;
    Decomposition dec = decompose(K, seed);
    for (auto& [part, mult] : dec.summands) {
        if (find_slot(ctx, part, seed) < 0) {
            m.ok = false;
            m.detail = "an indecomposable summand of dimension vector " + part.dims_str() +
                       " is not a summand of X";
            return m;
        }
    }
    return m;
}

} // namespace

CResolution c_resolution(const EndoAlgebra& ctx, const Module& M, int d, Side side,
                         std::uint64_t seed) {
    if (d < 1) throw input_error("c_resolution: d must be >= 1");
    if (side == Side::left) {
        std::vector<Module> dual_summands;
        for (const auto& S : ctx.summands) dual_summands.push_back(dualize(S));
        EndoAlgebra dctx = endo_algebra(opposite(ctx.summands[0].A), dual_summands);
        CResolution r = c_resolution(dctx, dualize(M), d, Side::right, seed);
        CResolution out;
        out.ok = r.ok;
        out.failure = r.failure;
        out.side = Side::left;
        out.base = M;
        out.cert_exact = r.cert_exact;
        out.cert_hom_exact = r.cert_hom_exact;
        out.cert_membership = r.cert_membership;
        for (auto& t : r.terms) out.terms.push_back(dualize(t));
        for (size_t k = 0; k < r.maps.size(); ++k) {
            Module src = k == 0 ? M : out.terms[k - 1];
            out.maps.push_back({src, out.terms[k], transpose(r.maps[k].m)});
        }
        return out;
    }
    CResolution res;
    res.side = Side::right;
    res.base = M;
    Module K = M;
    Matrix incl_prev; // kernel inclusion into the previous term
    for (int s = 0; s < d; ++s) {
        if (K.n == 0) break;
        AddMembership mem = in_add_x(ctx, K, seed);
        if (mem.ok) {
            if (s == 0) {
                res.terms.push_back(M);
                res.maps.push_back({M, M, Matrix::identity(M.A->p, M.n)});
            } else {
                res.terms.push_back(K);
                res.maps.push_back({K, res.terms[s - 1], incl_prev});
            }
            break;
        }
        if (s == d - 1) {
            res.failure = "not " + std::to_string(d) + "-cluster-tilting at the given module: " +
                          mem.detail;
            return res;
        }
        Approximation ap = right_approximation(ctx, K, seed);
        res.terms.push_back(ap.map.src);
        if (s == 0)
            res.maps.push_back(ap.map);
        else
            res.maps.push_back({ap.map.src, res.terms[s - 1], mat_mul(ap.map.m, incl_prev)});
        SubmoduleResult ker = kernel(ap.map);
        incl_prev = ker.incl.m;
        K = ker.sub;
    }
    res.ok = true;
    // certificates
    res.cert_exact = true;
    if (!res.maps.empty()) {
        if (rank(res.maps[0].m) != M.n) res.cert_exact = false;
        for (size_t k = 1; k < res.maps.size(); ++k) {
            if (!mat_mul(res.maps[k].m, res.maps[k - 1].m).is_zero()) res.cert_exact = false;
            if (rank(res.maps[k].m) + rank(res.maps[k - 1].m) != res.terms[k - 1].n)
                res.cert_exact = false;
        }
        if (rank(res.maps.back().m) != res.terms.back().n) res.cert_exact = false;
    } else {
        res.cert_exact = M.n == 0;
    }
    // Hom(T, -)-exactness for each summand T of X
    res.cert_hom_exact = true;
    fe p = M.A->p;
    for (const auto& T : ctx.summands) {
        std::vector<HomSpace> hs;
        for (auto& t : res.terms) hs.push_back(hom_basis(T, t));
        HomSpace hm = hom_basis(T, M);
        // induced complex: Hom(T, C_L) -> ... -> Hom(T, C_0) -> Hom(T, M) -> 0
        auto induced = [&](const HomSpace& from, const HomSpace& to, const Matrix& dmat) {
            Matrix R(p, from.dim(), to.dim());
            if (from.dim() == 0 || to.dim() == 0) return R;
            Matrix flat(p, to.dim(), to.src.n * to.tgt.n);
            for (int t = 0; t < to.dim(); ++t) flat.set_row(t, to.basis[t].a);
            BasisSolver solver(flat);
            for (int t = 0; t < from.dim(); ++t) {
                auto co = solver.coords(mat_mul(from.basis[t], dmat).a);
                if (!co) throw certificate_error("c_resolution: induced hom outside span");
                R.set_row(t, *co);
            }
            return R;
        };
        std::vector<Matrix> ind; // ind[k]: Hom(T,C_k) -> Hom(T, C_{k-1} or M)
        for (size_t k = 0; k < res.maps.size(); ++k)
            ind.push_back(induced(hs[k], k == 0 ? hm : hs[k - 1], res.maps[k].m));
        if (!ind.empty()) {
            if (rank(ind[0]) != hm.dim()) res.cert_hom_exact = false; // surjective at M
            for (size_t k = 1; k < ind.size(); ++k)
                if (rank(ind[k]) + rank(ind[k - 1]) != hs[k - 1].dim())
                    res.cert_hom_exact = false;
            if (rank(ind.back()) != hs.back().dim()) res.cert_hom_exact = false; // injective
        } else {
            if (hm.dim() != 0) res.cert_hom_exact = false;
        }
    }
    // membership of every term
    res.cert_membership = true;
    for (auto& t : res.terms)
        if (!in_add_x(ctx, t, seed).ok) res.cert_membership = false;
    if (!res.cert_exact || !res.cert_hom_exact || !res.cert_membership)
        throw certificate_error("c_resolution: certificate failed after construction");
    return res;
}

AuslanderVerdict is_d_auslander(const AlgebraPtr& A, int d, int cutoff) {
    if (d < 0) throw input_error("is_d_auslander: d must be >= 0");
    AuslanderVerdict v;
    v.d = d;
    v.gl = global_dimension(A, cutoff);
    v.dom = dominant_dimension(A, cutoff);
    Tri dom_ok, gl_ok;
    if (v.dom.value >= d + 1)
        dom_ok = Tri::yes; // exact or honest lower bound already suffices
    else if (v.dom.exact)
        dom_ok = Tri::no;
    else
        dom_ok = Tri::unknown;
    if (v.gl.exact)
        gl_ok = v.gl.value <= d + 1 ? Tri::yes : Tri::no;
    else
        gl_ok = v.gl.value > d + 1 ? Tri::no : Tri::unknown;
    if (dom_ok == Tri::no || gl_ok == Tri::no)
        v.verdict = Tri::no;
    else if (dom_ok == Tri::yes && gl_ok == Tri::yes)
        v.verdict = Tri::yes;
    else
        v.verdict = Tri::unknown;
    return v;
}

CtReport is_cluster_tilting(const AlgebraPtr& Lambda, const Module& X, int d,
                            const CtOptions& opts) {
    if (d < 1) throw input_error("is_cluster_tilting: d must be >= 1");
    CtReport rep;
    Decomposition dec = decompose(X, opts.seed);
    for (auto& [part, mult] : dec.summands) rep.summands.push_back(part);
    std::ostringstream ev;
    // (a) generator-cogenerator
    rep.has_regular = true;
    rep.has_cogenerator = true;
    EndoAlgebra probe = endo_algebra(Lambda, rep.summands);
    for (int v = 0; v < Lambda->vertex_count() && rep.has_regular; ++v)
        if (find_slot(probe, projective(Lambda, v), opts.seed) < 0) {
            rep.has_regular = false;
            ev << "projective at vertex " << v + 1 << " missing from add(X); ";
        }
    for (int v = 0; v < Lambda->vertex_count() && rep.has_cogenerator; ++v)
        if (find_slot(probe, injective(Lambda, v), opts.seed) < 0) {
            rep.has_cogenerator = false;
            ev << "injective at vertex " << v + 1 << " missing from add(X); ";
        }
    // (b) rigidity
    rep.rigid = true;
    for (int i = 1; i < d && rep.rigid; ++i)
        for (size_t a = 0; a < rep.summands.size() && rep.rigid; ++a)
            for (size_t b = 0; b < rep.summands.size() && rep.rigid; ++b) {
                int e = ext_dim(i, rep.summands[a], rep.summands[b]);
                if (e != 0) {
                    rep.rigid = false;
                    ev << "Ext^" << i << "(X_" << a + 1 << ", X_" << b + 1 << ") = " << e << "; ";
                }
            }
    // (c) endomorphism algebra verdict
    rep.endo_dim = probe.gamma->dim;
    rep.endo_verdict = is_d_auslander(probe.gamma, d, opts.cutoff);
    if (rep.endo_verdict.verdict != Tri::yes)
        ev << "End(X): " << rep.endo_verdict.gl.str("gl.dim") << ", "
           << rep.endo_verdict.dom.str("dom.dim") << " vs d = " << d << "; ";
    if (!rep.has_regular || !rep.has_cogenerator || !rep.rigid ||
        rep.endo_verdict.verdict == Tri::no)
        rep.verdict = Tri::no;
    else if (rep.endo_verdict.verdict == Tri::unknown)
        rep.verdict = Tri::unknown;
    else
        rep.verdict = Tri::yes;
    rep.evidence = ev.str();
    // enumerated mode
    if (opts.candidates) {
        rep.enumerated_ran = true;
        std::ostringstream eev;
        const auto& L = *opts.candidates;
        // the candidate list must contain every summand of X
        for (size_t a = 0; a < rep.summands.size(); ++a) {
            bool found = false;
            for (size_t c = 0; c < L.size() && !found; ++c)
                if (is_isomorphic(rep.summands[a], L[c], opts.seed + 7 * c) == Tri::yes)
                    found = true;
            if (!found)
                throw input_error("enumerated mode: candidate list misses a summand of X");
        }
        bool all_ok = rep.has_regular && rep.has_cogenerator;
        for (size_t c = 0; c < L.size(); ++c) {
            bool member = false;
            for (size_t a = 0; a < rep.summands.size() && !member; ++a)
                if (is_isomorphic(rep.summands[a], L[c], opts.seed + 13 * (a + c)) == Tri::yes)
                    member = true;
            bool in_right = true, in_left = true;
            for (int i = 1; i < d; ++i)
                for (size_t a = 0; a < rep.summands.size(); ++a) {
                    if (ext_dim(i, rep.summands[a], L[c]) != 0) in_right = false;
                    if (ext_dim(i, L[c], rep.summands[a]) != 0) in_left = false;
                }
            if (in_right != member) {
                all_ok = false;
                eev << "candidate " << c + 1 << (member ? " in add(X) but" : " not in add(X) yet")
                    << " Ext(X, -) orthogonality " << (in_right ? "holds" : "fails") << "; ";
            }
            if (in_left != member) {
                all_ok = false;
                eev << "candidate " << c + 1 << (member ? " in add(X) but" : " not in add(X) yet")
                    << " Ext(-, X) orthogonality " << (in_left ? "holds" : "fails") << "; ";
            }
        }
        rep.enumerated_verdict = all_ok ? Tri::yes : Tri::no;
        rep.enumerated_evidence = eev.str();
        rep.modes_agree = rep.verdict == rep.enumerated_verdict;
    }
    return rep;
}

RecoverResult recover_ct(const AlgebraPtr& Gamma, int d, const CtOptions& opts) {
    RecoverResult out;
    out.pre = is_d_auslander(Gamma, d, opts.cutoff);
    if (out.pre.verdict != Tri::yes) {
        out.failure = "precondition failed: the algebra is not verified " + std::to_string(d) +
                      "-Auslander (" + out.pre.gl.str("gl.dim") + ", " + out.pre.dom.str("dom.dim") +
                      ")";
        return out;
    }
    out.pi_vertices = projective_injective_vertices(Gamma);
    if (out.pi_vertices.empty()) {
        out.failure = "no projective-injective vertex found (dom.dim >= 1 should prevent this)";
        return out;
    }
    out.corner_data = corner(Gamma, out.pi_vertices);
    out.Xprime = apply_G(out.corner_data, cogenerator(Gamma));
    Decomposition dec = decompose(out.Xprime, opts.seed);
    for (auto& [part, mult] : dec.summands) out.summands.push_back(part);
    const AlgebraPtr& Lp = out.corner_data.algebra;
    out.cert_rigid = true;
    for (int i = 1; i < d; ++i)
        for (auto& a : out.summands)
            for (auto& b : out.summands)
                if (ext_dim(i, a, b) != 0) out.cert_rigid = false;
    EndoAlgebra probe = endo_algebra(Lp, out.summands);
    out.cert_generator = true;
    for (int v = 0; v < Lp->vertex_count(); ++v)
        if (find_slot(probe, projective(Lp, v), opts.seed) < 0) out.cert_generator = false;
    out.cert_cogenerator = true;
    for (int v = 0; v < Lp->vertex_count(); ++v)
        if (find_slot(probe, injective(Lp, v), opts.seed) < 0) out.cert_cogenerator = false;
    out.ct = is_cluster_tilting(Lp, out.Xprime, d, opts);
    out.ok = out.cert_rigid && out.cert_generator && out.cert_cogenerator &&
             out.ct.verdict == Tri::yes;
    if (!out.ok) out.failure = "recovered module failed a cluster-tilting certificate";
    return out;
}

// ---- fingerprint ---------------------------------------------------------

std::string Fingerprint::str() const {
    std::ostringstream os;
    os << "(r=" << r << ", cartan=" << cartan.str() << ", ext1=" << ext1.str() << ")";
    return os.str();
}

Fingerprint fingerprint(const AlgebraPtr& A) {
    int r = A->vertex_count();
    if (r > 9) throw input_error("fingerprint: more than 9 vertices not supported");
    Fingerprint f;
    f.r = r;
    Matrix C(A->p, r, r), E(A->p, r, r);
    std::vector<Module> P, S;
    for (int v = 0; v < r; ++v) {
        P.push_back(projective(A, v));
        S.push_back(simple(A, v));
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            C.at(i, j) = hom_basis(P[i], P[j]).dim();
            E.at(i, j) = ext_dim(1, S[i], S[j]);
        }
    // canonical vertex order: lexicographically smallest row-major [C|E]
    std::vector<int> perm(r), best(r);
    std::iota(perm.begin(), perm.end(), 0);
    best = perm;
    auto key = [&](const std::vector<int>& s) {
        std::vector<fe> k;
        k.reserve(2 * r * r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                k.push_back(C.at(s[i], s[j]));
                k.push_back(E.at(s[i], s[j]));
            }
        return k;
    };
    std::vector<fe> best_key = key(best);
    std::sort(perm.begin(), perm.end());
    do {
        std::vector<fe> k = key(perm);
        if (k < best_key) {
            best_key = k;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    f.cartan = Matrix(A->p, r, r);
    f.ext1 = Matrix(A->p, r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            f.cartan.at(i, j) = C.at(best[i], best[j]);
            f.ext1.at(i, j) = E.at(best[i], best[j]);
        }
    std::ostringstream os;
    os << r << "|" << f.cartan.str() << "|" << f.ext1.str();
    f.canon = os.str();
    return f;
}

// ---- roundtrip -----------------------------------------------------------

namespace {

bool hom_tables_match(const std::vector<Module>& S1, const std::vector<Module>& S2) {
    if (S1.size() != S2.size()) return false;
    int k = (int)S1.size();
    std::vector<std::vector<int>> T1(k, std::vector<int>(k)), T2 = T1;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            T1[a][b] = hom_basis(S1[a], S1[b]).dim();
            T2[a][b] = hom_basis(S2[a], S2[b]).dim();
        }
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int a = 0; a < k && ok; ++a)
            for (int b = 0; b < k && ok; ++b)
                if (T1[a][b] != T2[perm[a]][perm[b]]) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// The composite G(F(A)) realized over Lambda through the canonical
// identification of the corner at the projective slots with Lambda.
Module gf_transport(const EndoAlgebra& ctx, const FlatSolver& flat, const Module& A_i,
                    const std::vector<int>& slot_of_vertex,
                    const std::vector<ProjectiveModule>& projs,
                    const std::vector<Matrix>& iso, std::uint64_t /*seed*/) {
    const AlgebraPtr& Lambda = A_i.A;
    fe p = Lambda->p;
    int r = Lambda->vertex_count();
    Module FA = apply_F(ctx, A_i);
    // selected rows: blocks of FA at the projective slots, ordered by vertex
    std::vector<int> sel;
    std::vector<int> dims(r);
    for (int v = 0; v < r; ++v) {
        int s = slot_of_vertex[v];
        int off = FA.block_offset(s);
        dims[v] = FA.dims[s];
        for (int t = 0; t < FA.dims[s]; ++t) sel.push_back(off + t);
    }
    Module W;
    W.A = Lambda;
    W.dims = dims;
    W.n = (int)sel.size();
    W.act.assign(Lambda->dim, Matrix(p, W.n, W.n));
    // precompute iso inverses
    std::vector<Matrix> iso_inv(r);
    for (int v = 0; v < r; ++v) {
        auto inv = solve(iso[v], Matrix::identity(p, iso[v].rows));
        if (!inv) throw certificate_error("gf_transport: iso witness not invertible");
        iso_inv[v] = *inv; // iso[v] * iso_inv[v] = I
    }
    for (int b = 0; b < Lambda->dim; ++b) {
        // tau(b): the End(X) element acting like left multiplication by b
        Matrix full(p, ctx.sum.sum.n, ctx.sum.sum.n);
        for (int u = 0; u < r; ++u)
            for (int w = 0; w < r; ++w) {
                std::vector<fe> buw =
                    Lambda->mult(Lambda->idem(u), Lambda->mult(Lambda->basis_vec(b), Lambda->idem(w)));
                if (std::all_of(buw.begin(), buw.end(), [](fe x) { return x == 0; })) continue;
                // lambda_buw: P_w -> P_u, x -> buw * x
                const ProjectiveModule& Pw = projs[w];
                const ProjectiveModule& Pu = projs[u];
                BasisSolver solver(Pu.elements);
                Matrix lam(p, Pw.mod.n, Pu.mod.n);
                for (int i = 0; i < Pw.mod.n; ++i) {
                    auto co = solver.coords(Lambda->mult(buw, Pw.elements.row(i)));
                    if (!co) throw certificate_error("gf_transport: left multiple leaves P_u");
                    lam.set_row(i, *co);
                }
                // conjugate: X_{slot_w} -> X_{slot_u}
                Matrix conj = mat_mul(iso_inv[w], mat_mul(lam, iso[u]));
                int sw = slot_of_vertex[w], su = slot_of_vertex[u];
                Matrix padded = mat_mul(ctx.sum.projections[sw].m,
                                        mat_mul(conj, ctx.sum.inclusions[su].m));
                full = mat_add(full, padded);
            }
        auto gco = flat.solver.coords(full.a);
        if (!gco) throw certificate_error("gf_transport: tau(b) is not an End(X) element");
        Matrix big = FA.act_elem(*gco);
        for (int rI = 0; rI < W.n; ++rI)
            for (int cI = 0; cI < W.n; ++cI) W.act[b].at(rI, cI) = big.at(sel[rI], sel[cI]);
        // leak check
        std::vector<bool> keep(FA.n, false);
        for (int s : sel) keep[s] = true;
        for (int rI = 0; rI < W.n; ++rI)
            for (int c2 = 0; c2 < FA.n; ++c2)
                if (!keep[c2] && big.at(sel[rI], c2) != 0)
                    throw certificate_error("gf_transport: action leaks outside selected blocks");
    }
    W.verify();
    return W;
}

} // namespace

RoundtripReport correspondence_roundtrip(const AlgebraPtr& Lambda, const Module& X, int d,
                                         const CtOptions& opts) {
    RoundtripReport rep;
    rep.forward = is_cluster_tilting(Lambda, X, d, opts);
    if (rep.forward.verdict != Tri::yes) {
        rep.failure = "X is not verified d-cluster-tilting: " + rep.forward.evidence;
        return rep;
    }
    EndoAlgebra ctx = endo_algebra(Lambda, rep.forward.summands);
    rep.gamma_dim = ctx.gamma->dim;
    rep.fp_gamma = fingerprint(ctx.gamma);
    rep.backward = recover_ct(ctx.gamma, d, opts);
    if (!rep.backward.ok) {
        rep.failure = "backward direction failed: " + rep.backward.failure;
        return rep;
    }
    rep.summand_count_match =
        rep.backward.summands.size() == rep.forward.summands.size();
    EndoAlgebra ctx2 = endo_algebra(rep.backward.corner_data.algebra, rep.backward.summands);
    rep.fp_gamma_prime = fingerprint(ctx2.gamma);
    rep.fingerprint_match = rep.fp_gamma == rep.fp_gamma_prime;
    rep.hom_table_match = hom_tables_match(rep.forward.summands, rep.backward.summands);
    // G(F(A)) ~= A per summand, through the projective-slot identification
    rep.gf_identity = true;
    {
        int r = Lambda->vertex_count();
        std::vector<int> slot_of_vertex(r, -1);
        std::vector<ProjectiveModule> projs;
        std::vector<Matrix> iso(r);
        for (int v = 0; v < r; ++v) {
            projs.push_back(projective_with_basis(Lambda, v));
            int s = find_slot(ctx, projs[v].mod, opts.seed);
            if (s < 0) throw certificate_error("roundtrip: projective slot missing");
            for (int w = 0; w < v; ++w)
                if (slot_of_vertex[w] == s)
                    throw input_error("roundtrip: repeated projective; the base algebra must be basic");
            slot_of_vertex[v] = s;
            auto wit = iso_witness(projs[v].mod, ctx.summands[s], opts.seed + v);
            if (!wit) throw certificate_error("roundtrip: projective iso witness not found");
            iso[v] = *wit;
        }
        FlatSolver flat = make_flat(ctx.basis_full, Lambda->p, ctx.sum.sum.n * ctx.sum.sum.n);
        for (size_t a = 0; a < rep.forward.summands.size() && rep.gf_identity; ++a) {
            Module W = gf_transport(ctx, flat, rep.forward.summands[a], slot_of_vertex, projs, iso,
                                    opts.seed);
            Tri iso_res = is_isomorphic(W, rep.forward.summands[a], opts.seed + 997 * a);
            if (iso_res != Tri::yes) rep.gf_identity = false;
        }
    }
    rep.pass = rep.summand_count_match && rep.fingerprint_match && rep.hom_table_match &&
               rep.gf_identity;
    if (!rep.pass) {
        std::ostringstream os;
        if (!rep.summand_count_match) os << "summand count mismatch; ";
        if (!rep.fingerprint_match) os << "fingerprint mismatch; ";
        if (!rep.hom_table_match) os << "hom table mismatch; ";
        if (!rep.gf_identity) os << "G(F(A)) != A for some summand; ";
        rep.failure = os.str();
    }
    return rep;
}

} // namespace qhom
