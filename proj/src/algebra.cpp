#include "qhom/algebra.hpp"
#include "qhom/poly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qhom {

std::vector<fe> BasedAlgebra::basis_vec(int i) const {
    std::vector<fe> v(dim, 0);
    v[i] = 1 % p;
    return v;
}

std::vector<fe> BasedAlgebra::mult(const std::vector<fe>& x, const std::vector<fe>& y) const {
    std::vector<fe> r(dim, 0);
    for (int i = 0; i < dim; ++i) {
        if (x[i] == 0) continue;
        std::vector<fe> xi_y = vec_mat(y, lmul[i]); // sum_j y_j * (b_i b_j)
        for (int k = 0; k < dim; ++k) r[k] = (r[k] + x[i] * xi_y[k]) % p;
    }
    return r;
}

Matrix BasedAlgebra::left_mult_matrix(const std::vector<fe>& x) const {
    Matrix L(p, dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (x[i] == 0) continue;
        for (size_t t = 0; t < L.a.size(); ++t) L.a[t] = (L.a[t] + x[i] * lmul[i].a[t]) % p;
    }
    return L;
}

Matrix BasedAlgebra::right_mult_matrix(const std::vector<fe>& x) const {
    Matrix R(p, dim, dim);
    for (int j = 0; j < dim; ++j) R.set_row(j, mult(basis_vec(j), x));
    return R;
}

std::vector<fe> BasedAlgebra::identity_element() const {
    std::vector<fe> one(dim, 0);
    for (int v = 0; v < idempotents.rows; ++v)
        for (int j = 0; j < dim; ++j) one[j] = (one[j] + idempotents.at(v, j)) % p;
    return one;
}

std::vector<int> BasedAlgebra::generator_indices() const {
    if (!generators.empty()) return generators;
    std::vector<int> all(dim);
    for (int i = 0; i < dim; ++i) all[i] = i;
    return all;
}

void BasedAlgebra::verify() const {
    // associativity on all basis triples
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            std::vector<fe> bij = lmul[i].row(j);
            for (int k = 0; k < dim; ++k) {
                std::vector<fe> left = mult(bij, basis_vec(k));
                std::vector<fe> right = mult(basis_vec(i), lmul[j].row(k));
                if (left != right)
                    throw certificate_error("associativity fails in " + name + " at triple (" +
                                            std::to_string(i) + "," + std::to_string(j) + "," +
                                            std::to_string(k) + ")");
            }
        }
    // idempotent system
    std::vector<fe> one = identity_element();
    for (int v = 0; v < idempotents.rows; ++v) {
        std::vector<fe> ev = idempotents.row(v);
        if (mult(ev, ev) != ev)
            throw certificate_error("idempotent " + std::to_string(v) + " not idempotent in " + name);
        for (int w = 0; w < idempotents.rows; ++w) {
            if (v == w) continue;
            std::vector<fe> z = mult(ev, idempotents.row(w));
            if (!std::all_of(z.begin(), z.end(), [](fe x) { return x == 0; }))
                throw certificate_error("idempotents not orthogonal in " + name);
        }
    }
    for (int j = 0; j < dim; ++j) {
        std::vector<fe> bj = basis_vec(j);
        if (mult(one, bj) != bj || mult(bj, one) != bj)
            throw certificate_error("idempotents do not sum to the identity in " + name);
    }
}

AlgebraPtr make_based_algebra(fe p, std::string name, std::vector<std::string> labels,
                              std::vector<Matrix> lmul, Matrix idempotents,
                              std::vector<int> generators) {
    auto A = std::make_shared<BasedAlgebra>();
    A->p = p;
    A->dim = (int)labels.size();
    A->name = std::move(name);
    A->labels = std::move(labels);
    A->lmul = std::move(lmul);
    A->idempotents = std::move(idempotents);
    A->generators = std::move(generators);
    if ((int)A->lmul.size() != A->dim) throw std::invalid_argument("structure constant table size");
    for (auto& M : A->lmul)
        if (M.rows != A->dim || M.cols != A->dim)
            throw std::invalid_argument("structure constant matrix shape");
    A->verify();
    return A;
}

AlgebraPtr opposite(const AlgebraPtr& A) {
    {
        std::lock_guard<std::mutex> lk(A->cache_mutex);
        if (auto back = A->opposite_back.lock()) return back;
        if (A->opposite_cache) return A->opposite_cache;
    }
    std::vector<Matrix> lmul_op(A->dim, Matrix(A->p, A->dim, A->dim));
    for (int i = 0; i < A->dim; ++i)
        for (int j = 0; j < A->dim; ++j) lmul_op[i].set_row(j, A->lmul[j].row(i));
    auto op = make_based_algebra(A->p, A->name + "^op", A->labels, std::move(lmul_op),
                                 A->idempotents, A->generators);
    {
        std::lock_guard<std::mutex> lk(op->cache_mutex);
        op->opposite_back = A;
    }
    std::lock_guard<std::mutex> lk(A->cache_mutex);
    if (!A->opposite_cache) A->opposite_cache = op;
    return A->opposite_cache;
}

// ---- radical -----------------------------------------------------------

const Matrix& BasedAlgebra::radical() const {
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        if (radical_cache) return *radical_cache;
    }
    int m = dim;
    PrimeField F{p};
    Matrix V = Matrix::identity(p, m);
    // Trace of left multiplication is linear in the element.
    std::vector<fe> tvec(m, 0);
    for (int i = 0; i < m; ++i) {
        fe t = 0;
        for (int j = 0; j < m; ++j) t = (t + lmul[i].at(j, j)) % p;
        tvec[i] = t;
    }
    for (long long q = 1; q <= m && V.rows > 0; q *= p) {
        Matrix T(p, V.rows, V.rows);
        for (int j = 0; j < V.rows; ++j) {
            std::vector<fe> y = V.row(j);
            for (int i = 0; i < V.rows; ++i) {
                std::vector<fe> z = mult(V.row(i), y);
                fe val;
                if (q == 1) {
                    val = dot(z, tvec, F);
                } else {
                    Poly cp = charpoly(left_mult_matrix(z));
                    val = cp.coeff((int)(m - q));
                }
                T.at(j, i) = val;
            }
        }
        Matrix K = kernel_basis(T);
        V = Span(mat_mul(K, V)).basis();
    }
    Matrix rad = Span(V).basis();
    // verify: two-sided ideal and nilpotent
    Span S(rad);
    for (int i = 0; i < rad.rows; ++i) {
        std::vector<fe> r = rad.row(i);
        for (int k = 0; k < m; ++k) {
            if (!S.contains(mult(r, basis_vec(k))) || !S.contains(mult(basis_vec(k), r)))
                throw certificate_error("radical candidate is not an ideal in " + name);
        }
    }
    Matrix power = rad;
    for (int it = 0; it < m + 1 && power.rows > 0; ++it) {
        Span next(p, m);
        for (int i = 0; i < power.rows; ++i)
            for (int j = 0; j < rad.rows; ++j) next.add_row(mult(power.row(i), rad.row(j)));
        power = next.basis();
    }
    if (power.rows > 0) throw certificate_error("radical candidate is not nilpotent in " + name);

    std::lock_guard<std::mutex> lk(cache_mutex);
    if (!radical_cache) radical_cache = std::make_unique<Matrix>(std::move(rad));
    return *radical_cache;
}

// ---- corner, trace ideal, quotient --------------------------------------

CornerResult corner(const AlgebraPtr& A, const std::vector<int>& idem_subset) {
    if (idem_subset.empty()) throw input_error("corner: empty idempotent subset");
    std::set<int> seen;
    for (int v : idem_subset) {
        if (v < 0 || v >= A->vertex_count()) throw input_error("corner: idempotent index out of range");
        if (!seen.insert(v).second) throw input_error("corner: repeated idempotent index");
    }
    PrimeField F{A->p};
    std::vector<fe> e(A->dim, 0);
    for (int v : idem_subset)
        for (int j = 0; j < A->dim; ++j) e[j] = F.add(e[j], A->idempotents.at(v, j));
    Span span(A->p, A->dim);
    for (int i = 0; i < A->dim; ++i) span.add_row(A->mult(e, A->mult(A->basis_vec(i), e)));
    Matrix basis = span.basis();
    int cd = basis.rows;
    std::vector<Matrix> lmul(cd, Matrix(A->p, cd, cd));
    for (int i = 0; i < cd; ++i)
        for (int j = 0; j < cd; ++j) {
            auto prod = A->mult(basis.row(i), basis.row(j));
            auto coords = span.express(prod);
            if (!coords) throw certificate_error("corner not closed under multiplication");
            lmul[i].set_row(j, *coords);
        }
    std::vector<int> verts(idem_subset.begin(), idem_subset.end());
    std::sort(verts.begin(), verts.end());
    Matrix idem(A->p, (int)verts.size(), cd);
    for (int t = 0; t < (int)verts.size(); ++t) {
        auto coords = span.express(A->idempotents.row(verts[t]));
        if (!coords) throw certificate_error("corner idempotent not in corner span");
        idem.set_row(t, *coords);
    }
    std::vector<std::string> labels(cd);
    for (int i = 0; i < cd; ++i) labels[i] = "c" + std::to_string(i);
    auto alg = make_based_algebra(A->p, A->name + ".corner", std::move(labels), std::move(lmul),
                                  std::move(idem), {});
    return {alg, basis, verts};
}

Matrix trace_ideal(const BasedAlgebra& A, const std::vector<int>& idem_subset) {
    if (idem_subset.empty()) throw input_error("trace_ideal: empty idempotent subset");
    Span span(A.p, A.dim);
    for (int v : idem_subset) {
        if (v < 0 || v >= A.vertex_count())
            throw input_error("trace_ideal: idempotent index out of range");
        std::vector<fe> ev = A.idempotents.row(v);
        for (int i = 0; i < A.dim; ++i) {
            std::vector<fe> bie = A.mult(A.basis_vec(i), ev);
            for (int j = 0; j < A.dim; ++j) span.add_row(A.mult(bie, A.basis_vec(j)));
        }
    }
    Matrix rows = span.basis();
    // verify two-sided closure
    Span S(rows);
    for (int i = 0; i < rows.rows; ++i)
        for (int k = 0; k < A.dim; ++k) {
            if (!S.contains(A.mult(rows.row(i), A.basis_vec(k))) ||
                !S.contains(A.mult(A.basis_vec(k), rows.row(i))))
                throw certificate_error("trace ideal not closed under multiplication");
        }
    return rows;
}

QuotientResult quotient_algebra(const AlgebraPtr& A, const Matrix& ideal_rows) {
    Span I(ideal_rows);
    if (I.dim() >= A->dim && A->dim > 0) throw input_error("quotient by the whole algebra");
    // ideal check
    for (int i = 0; i < I.basis().rows; ++i) {
        std::vector<fe> r = I.basis().row(i);
        for (int k = 0; k < A->dim; ++k)
            if (!I.contains(A->mult(r, A->basis_vec(k))) ||
                !I.contains(A->mult(A->basis_vec(k), r)))
                throw input_error("quotient: subspace is not a two-sided ideal");
    }
    Matrix lift = I.complement_rows(); // qdim x dim
    int qd = lift.rows;
    // projection: reduce each basis vector mod I, read off complement coordinates
    std::vector<int> comp_cols;
    for (int i = 0; i < lift.rows; ++i)
        for (int j = 0; j < lift.cols; ++j)
            if (lift.at(i, j) != 0) comp_cols.push_back(j);
    Matrix projection(A->p, A->dim, qd);
    for (int j = 0; j < A->dim; ++j) {
        std::vector<fe> w = I.reduce(A->basis_vec(j));
        for (int t = 0; t < qd; ++t) projection.at(j, t) = w[comp_cols[t]];
    }
    std::vector<Matrix> lmul(qd, Matrix(A->p, qd, qd));
    for (int i = 0; i < qd; ++i)
        for (int j = 0; j < qd; ++j) {
            auto prod = A->mult(lift.row(i), lift.row(j));
            lmul[i].set_row(j, vec_mat(prod, projection));
        }
    std::vector<int> surviving(A->vertex_count(), -1);
    std::vector<std::vector<fe>> idem_rows;
    for (int v = 0; v < A->vertex_count(); ++v) {
        std::vector<fe> img = vec_mat(A->idempotents.row(v), projection);
        if (std::all_of(img.begin(), img.end(), [](fe x) { return x == 0; })) continue;
        surviving[v] = (int)idem_rows.size();
        idem_rows.push_back(img);
    }
    Matrix idem(A->p, (int)idem_rows.size(), qd);
    for (int t = 0; t < (int)idem_rows.size(); ++t) idem.set_row(t, idem_rows[t]);
    std::vector<std::string> labels(qd);
    for (int i = 0; i < qd; ++i) labels[i] = "q" + std::to_string(i);
    auto alg = make_based_algebra(A->p, A->name + ".quot", std::move(labels), std::move(lmul),
                                  std::move(idem), {});
    return {alg, projection, lift, surviving};
}

// ---- quiver algebras -----------------------------------------------------

int Quiver::arrow_index(const std::string& name) const {
    for (int i = 0; i < (int)arrows.size(); ++i)
        if (arrows[i].name == name) return i;
    return -1;
}

void Quiver::validate() const {
    if (vertices <= 0) throw input_error("quiver must have at least one vertex");
    std::set<std::string> names;
    for (const auto& a : arrows) {
        if (a.name.empty()) throw input_error("arrow with empty name");
        if (!names.insert(a.name).second) throw input_error("duplicate arrow name: " + a.name);
        if (a.src < 0 || a.src >= vertices || a.tgt < 0 || a.tgt >= vertices)
            throw input_error("arrow endpoint out of range: " + a.name);
    }
}

int Path::target(const Quiver& q) const {
    return arrows.empty() ? source : q.arrows[arrows.back()].tgt;
}

std::string Path::label(const Quiver& q) const {
    if (arrows.empty()) return "e" + std::to_string(source + 1);
    std::string s;
    for (size_t i = 0; i < arrows.size(); ++i) {
        if (i) s += "*";
        s += q.arrows[arrows[i]].name;
    }
    return s;
}

namespace {

struct Stratum {
    // all window paths with this (source, target), longest first
    std::vector<int> path_ids;
    std::map<int, int> pos; // path id -> column
    Span ideal;             // ideal elements, coordinates in path_ids order
};

struct PathTable {
    std::vector<Path> paths;
    std::map<std::pair<int, std::vector<int>>, int> index;
    int id(const Path& p) {
        auto key = std::make_pair(p.source, p.arrows);
        auto it = index.find(key);
        return it == index.end() ? -1 : it->second;
    }
};

// Enumerate all paths of length <= window.
PathTable enumerate_paths(const Quiver& q, int window) {
    PathTable t;
    auto push = [&](const Path& p) {
        t.index[{p.source, p.arrows}] = (int)t.paths.size();
        t.paths.push_back(p);
    };
    for (int v = 0; v < q.vertices; ++v) push({v, {}});
    size_t lo = 0, hi = t.paths.size();
    for (int len = 1; len <= window; ++len) {
        for (size_t i = lo; i < hi; ++i) {
            Path base = t.paths[i];
            int at = base.target(q);
            for (int a = 0; a < (int)q.arrows.size(); ++a) {
                if (q.arrows[a].src != at) continue;
                Path ext = base;
                ext.arrows.push_back(a);
                push(ext);
                if (t.paths.size() > 500000)
                    throw input_error("path enumeration exceeds limit; quiver/window too large");
            }
        }
        lo = hi;
        hi = t.paths.size();
    }
    return t;
}

} // namespace

QuiverAlgebra build_quiver_algebra(const Quiver& q, const std::vector<Relation>& rels, fe p,
                                   int bound) {
    require_valid_modulus(p);
    q.validate();
    PrimeField F{p};
    int window = bound > 0 ? bound : 2 * (int)q.arrows.size() + 2;
    if (window < 2) window = 2;

    int max_rel_len = 0;
    // validate relations
    for (const auto& r : rels) {
        if (r.terms.empty()) throw input_error("empty relation");
        int rs = -1, rt = -1;
        for (const auto& term : r.terms) {
            if (F.normalize(term.coeff) == 0)
                throw input_error("relation term with zero coefficient mod p");
            if ((int)term.arrows.size() < 2)
                throw input_error("relation term of length < 2: the ideal must be admissible");
            max_rel_len = std::max(max_rel_len, (int)term.arrows.size());
            for (size_t i = 0; i < term.arrows.size(); ++i) {
                int a = term.arrows[i];
                if (a < 0 || a >= (int)q.arrows.size()) throw input_error("bad arrow in relation");
                if (i > 0 && q.arrows[term.arrows[i - 1]].tgt != q.arrows[a].src)
                    throw input_error("relation term is not a composable path");
            }
            int s = q.arrows[term.arrows.front()].src;
            int t = q.arrows[term.arrows.back()].tgt;
            if (rs < 0) {
                rs = s;
                rt = t;
            } else if (rs != s || rt != t) {
                throw input_error("relation terms do not share source and target");
            }
        }
        if (max_rel_len > window)
            throw input_error("relation longer than the window; raise the bound (currently " +
                              std::to_string(window) + ")");
    }

    // The construction is repeated with a larger window as a stability check
    // against inhomogeneous relations that need more room to saturate.
    auto construct = [&](int W) -> std::tuple<std::vector<Path>, int, PathTable,
                                              std::map<std::pair<int, int>, Stratum>> {
        PathTable table = enumerate_paths(q, W);
        std::map<std::pair<int, int>, Stratum> strata;
        for (int id = 0; id < (int)table.paths.size(); ++id) {
            const Path& pa = table.paths[id];
            strata[{pa.source, pa.target(q)}].path_ids.push_back(id);
        }
        for (auto& [key, st] : strata) {
            std::stable_sort(st.path_ids.begin(), st.path_ids.end(), [&](int a, int b) {
                const Path& pa = table.paths[a];
                const Path& pb = table.paths[b];
                if (pa.length() != pb.length()) return pa.length() > pb.length();
                return pa.arrows < pb.arrows;
            });
            for (int c = 0; c < (int)st.path_ids.size(); ++c) st.pos[st.path_ids[c]] = c;
            st.ideal = Span(p, (int)st.path_ids.size());
        }
        // ideal generators u * r * v within the window
        for (const auto& r : rels) {
            int rs = q.arrows[r.terms[0].arrows.front()].src;
            int rt = q.arrows[r.terms[0].arrows.back()].tgt;
            int max_len = 0, min_len = W + 1;
            for (const auto& term : r.terms) {
                max_len = std::max(max_len, (int)term.arrows.size());
                min_len = std::min(min_len, (int)term.arrows.size());
            }
            for (const auto& u : table.paths) {
                if (u.target(q) != rs) continue;
                for (const auto& v : table.paths) {
                    if (v.source != rt) continue;
                    if (u.length() + max_len + v.length() > W) continue;
                    auto& st = strata[{u.source, v.target(q)}];
                    std::vector<fe> vec(st.path_ids.size(), 0);
                    for (const auto& term : r.terms) {
                        Path full = u;
                        for (int a : term.arrows) full.arrows.push_back(a);
                        for (int a : v.arrows) full.arrows.push_back(a);
                        int id = table.id(full);
                        if (id < 0) throw certificate_error("window path lookup failed");
                        vec[st.pos[id]] = F.add(vec[st.pos[id]], F.normalize(term.coeff));
                    }
                    st.ideal.add_row(vec);
                }
            }
        }
        // residues = non-pivot columns; find first dead length
        std::vector<Path> residues;
        std::vector<int> residue_count_by_len(W + 1, 0);
        std::vector<int> path_count_by_len(W + 1, 0);
        for (auto& [key, st] : strata) {
            Matrix comp = st.ideal.complement_rows();
            for (int i = 0; i < comp.rows; ++i)
                for (int c = 0; c < comp.cols; ++c)
                    if (comp.at(i, c) != 0) {
                        residues.push_back(table.paths[st.path_ids[c]]);
                        residue_count_by_len[residues.back().length()]++;
                    }
        }
        for (const auto& pa : table.paths) path_count_by_len[pa.length()]++;
        int dead = -1;
        for (int len = 1; len <= W; ++len) {
            if (residue_count_by_len[len] == 0) {
                // certify: every path of this length reduces to zero exactly
                bool all_zero = true;
                for (const auto& [key, st] : strata) {
                    for (int c = 0; c < (int)st.path_ids.size() && all_zero; ++c) {
                        const Path& pa = table.paths[st.path_ids[c]];
                        if (pa.length() != len) continue;
                        std::vector<fe> vec(st.path_ids.size(), 0);
                        vec[c] = 1 % p;
                        if (!st.ideal.contains(vec)) all_zero = false;
                    }
                    if (!all_zero) break;
                }
                if (all_zero && path_count_by_len[len] > 0) {
                    dead = len;
                    break;
                }
                if (path_count_by_len[len] == 0) {
                    dead = len; // vacuously dead: no paths of this length exist
                    break;
                }
            }
        }
        if (dead < 0)
            throw input_error("relation ideal not admissible within bound " + std::to_string(W) +
                              ": paths of every length survive (raise the bound if the ideal is "
                              "admissible)");
        // order: trivial paths by vertex, then by (length, source, arrows)
        std::sort(residues.begin(), residues.end(), [&](const Path& a, const Path& b) {
            if (a.length() != b.length()) return a.length() < b.length();
            if (a.source != b.source) return a.source < b.source;
            return a.arrows < b.arrows;
        });
        // drop residues at or beyond the dead length (they are in the ideal)
        std::vector<Path> kept;
        for (auto& r2 : residues)
            if (r2.length() < dead) kept.push_back(r2);
        return {kept, dead, std::move(table), std::move(strata)};
    };

    auto [residues, dead, table, strata] = construct(window);
    {
        // stability check with a larger window
        auto [residues2, dead2, t2, s2] = construct(window + max_rel_len + 1);
        if (residues2.size() != residues.size() || dead2 != dead)
            throw input_error("relation ideal does not stabilize within bound " +
                              std::to_string(window) + "; raise the bound");
    }

    int m = (int)residues.size();
    std::map<std::pair<int, std::vector<int>>, int> res_index;
    for (int i = 0; i < m; ++i) res_index[{residues[i].source, residues[i].arrows}] = i;

    // reduce a window path to residue coordinates
    auto reduce_path = [&](const Path& pa) -> std::vector<fe> {
        std::vector<fe> out(m, 0);
        if (pa.length() >= dead) return out;
        auto key = std::make_pair(pa.source, pa.target(q));
        const Stratum& st = strata.at(key);
        int id = table.id(pa);
        if (id < 0) throw certificate_error("reduce_path: path outside window");
        std::vector<fe> vec(st.path_ids.size(), 0);
        vec[st.pos.at(id)] = 1 % p;
        vec = st.ideal.reduce(vec);
        for (int c = 0; c < (int)st.path_ids.size(); ++c) {
            if (vec[c] == 0) continue;
            const Path& rp = table.paths[st.path_ids[c]];
            auto it = res_index.find({rp.source, rp.arrows});
            if (it == res_index.end())
                throw certificate_error("reduction produced a non-residue path");
            out[it->second] = vec[c];
        }
        return out;
    };

    std::vector<Matrix> lmul(m, Matrix(p, m, m));
    for (int i = 0; i < m; ++i) {
        const Path& pi = residues[i];
        for (int j = 0; j < m; ++j) {
            const Path& pj = residues[j];
            if (pi.target(q) != pj.source) continue; // product is zero
            Path concat = pi;
            for (int a : pj.arrows) concat.arrows.push_back(a);
            lmul[i].set_row(j, reduce_path(concat));
        }
    }

    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = residues[i].label(q);
    Matrix idem(p, q.vertices, m);
    std::vector<int> gens;
    for (int i = 0; i < m; ++i) {
        if (residues[i].length() == 0) {
            idem.at(residues[i].source, i) = 1 % p;
            gens.push_back(i);
        } else if (residues[i].length() == 1) {
            gens.push_back(i);
        }
    }

    QuiverAlgebra qa;
    qa.quiver = q;
    qa.relations = rels;
    qa.bound = window;
    qa.nilpotency = dead;
    qa.basis = residues;
    qa.based = make_based_algebra(p, "quiver", std::move(labels), std::move(lmul), std::move(idem),
                                  std::move(gens));
    return qa;
}

AlgebraPtr to_based(const QuiverAlgebra& qa) { return qa.based; }

} // namespace qhom
