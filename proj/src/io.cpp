#include "qhom/io.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qhom {

fe RunConfig::effective_field(fe file_field) const {
    if (field > 0 && file_field > 0 && field != file_field)
        throw input_error("field mismatch: file declares " + std::to_string(file_field) +
                          ", command line requests " + std::to_string(field));
    fe p = file_field > 0 ? file_field : (field > 0 ? field : 101);
    require_valid_modulus(p);
    return p;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string t;
    while (is >> t) {
        if (t[0] == '#') break;
        out.push_back(t);
    }
    return out;
}

long long parse_int(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw input_error("expected an integer for " + what + ", got '" + s + "'");
    }
}

// term: [<coeff>*]<arrow>(*<arrow>)*
RelationTerm parse_term(const std::string& term, const Quiver& q) {
    RelationTerm t;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : term) {
        if (c == '*') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    size_t first = 0;
    if (!parts.empty() && !parts[0].empty() &&
        (std::isdigit((unsigned char)parts[0][0]) || parts[0][0] == '-')) {
        t.coeff = parse_int(parts[0], "relation coefficient");
        first = 1;
    }
    if (first >= parts.size()) throw input_error("relation term without arrows: " + term);
    for (size_t i = first; i < parts.size(); ++i) {
        int a = q.arrow_index(parts[i]);
        if (a < 0) throw input_error("unknown arrow in relation: " + parts[i]);
        t.arrows.push_back(a);
    }
    return t;
}

// matrix literal [[a,b],[c,d]]; tolerant of whitespace
Matrix parse_matrix(const std::string& text, fe p, int rows, int cols, const std::string& what) {
    std::vector<std::vector<fe>> data;
    std::vector<fe> row;
    std::string num;
    int depth = 0;
    auto flush_num = [&]() {
        if (num.empty()) return;
        row.push_back(parse_int(num, what));
        num.clear();
    };
    for (char c : text) {
        if (c == '[') {
            ++depth;
            continue;
        }
        if (c == ']') {
            flush_num();
            if (depth == 2) {
                data.push_back(row);
                row.clear();
            }
            --depth;
            continue;
        }
        if (c == ',') {
            flush_num();
            continue;
        }
        if (std::isspace((unsigned char)c)) continue;
        num += c;
    }
    if (depth != 0) throw input_error("unbalanced brackets in " + what);
    if (rows == 0 && data.empty()) return Matrix(p, 0, cols);
    if ((int)data.size() != rows) throw input_error(what + ": expected " + std::to_string(rows) +
                                                    " rows, got " + std::to_string(data.size()));
    for (auto& r : data)
        if ((int)r.size() != cols)
            throw input_error(what + ": expected " + std::to_string(cols) + " columns");
    Matrix m = Matrix::from_rows(p, data);
    return m;
}

} // namespace

ParsedAlgebra parse_algebra_text(const std::string& text, const RunConfig& cfg,
                                 const std::string& name) {
    std::istringstream in(text);
    std::string line;
    fe file_field = 0;
    int vertices = -1, bound = 0;
    Quiver q;
    std::vector<std::vector<std::string>> relation_lines;
    // based-format accumulators
    std::vector<std::string> basis_labels;
    std::vector<std::vector<std::string>> idem_lines;
    std::vector<std::tuple<int, int, std::vector<std::string>>> mult_lines;
    bool is_based = false, is_quiver = false;
    while (std::getline(in, line)) {
        auto tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        if (key == "field") {
            if (tok.size() != 2) throw input_error("field line needs one value");
            file_field = parse_int(tok[1], "field");
        } else if (key == "vertices") {
            is_quiver = true;
            if (tok.size() != 2) throw input_error("vertices line needs one value");
            vertices = (int)parse_int(tok[1], "vertex count");
        } else if (key == "arrow") {
            is_quiver = true;
            if (tok.size() != 4) throw input_error("arrow line: arrow <name> <src> <tgt>");
            q.arrows.push_back({tok[1], (int)parse_int(tok[2], "arrow source") - 1,
                                (int)parse_int(tok[3], "arrow target") - 1});
        } else if (key == "relation") {
            is_quiver = true;
            relation_lines.push_back(std::vector<std::string>(tok.begin() + 1, tok.end()));
        } else if (key == "bound") {
            if (tok.size() != 2) throw input_error("bound line needs one value");
            bound = (int)parse_int(tok[1], "bound");
        } else if (key == "basis") {
            is_based = true;
            basis_labels.assign(tok.begin() + 1, tok.end());
        } else if (key == "idem") {
            is_based = true;
            idem_lines.push_back(std::vector<std::string>(tok.begin() + 1, tok.end()));
        } else if (key == "mult") {
            is_based = true;
            if (tok.size() < 4 || tok[3] != "=")
                throw input_error("mult line: mult <i> <j> = <coords...>");
            mult_lines.push_back({(int)parse_int(tok[1], "mult row") - 1,
                                  (int)parse_int(tok[2], "mult col") - 1,
                                  std::vector<std::string>(tok.begin() + 4, tok.end())});
        } else {
            throw input_error("unknown line in algebra file: " + key);
        }
    }
    if (is_based && is_quiver) throw input_error("file mixes quiver and based-algebra syntax");
    fe p = cfg.effective_field(file_field);
    ParsedAlgebra out;
    out.source = name;
    if (is_based) {
        int n = (int)basis_labels.size();
        if (n == 0) throw input_error("based algebra with empty basis");
        std::vector<Matrix> lmul(n, Matrix(p, n, n));
        for (auto& [i, j, coords] : mult_lines) {
            if (i < 0 || i >= n || j < 0 || j >= n)
                throw input_error("mult line index out of range");
            if ((int)coords.size() != n) throw input_error("mult line needs " + std::to_string(n) +
                                                           " coordinates");
            for (int t = 0; t < n; ++t)
                lmul[i].at(j, t) = PrimeField{p}.normalize(parse_int(coords[t], "mult coord"));
        }
        if (idem_lines.empty()) throw input_error("based algebra needs idem lines");
        Matrix idem(p, (int)idem_lines.size(), n);
        for (int v = 0; v < (int)idem_lines.size(); ++v) {
            if ((int)idem_lines[v].size() != n)
                throw input_error("idem line needs " + std::to_string(n) + " coordinates");
            for (int t = 0; t < n; ++t)
                idem.at(v, t) = PrimeField{p}.normalize(parse_int(idem_lines[v][t], "idem coord"));
        }
        try {
            out.algebra = make_based_algebra(p, name, basis_labels, std::move(lmul),
                                             std::move(idem), {});
        } catch (const certificate_error& e) {
            throw input_error(std::string("based algebra rejected: ") + e.what());
        }
        return out;
    }
    if (!is_quiver) throw input_error("file declares neither a quiver nor a based algebra");
    if (vertices <= 0) throw input_error("missing or bad 'vertices' line");
    q.vertices = vertices;
    std::vector<Relation> rels;
    for (auto& toks : relation_lines) {
        Relation r;
        std::vector<std::string> term_texts;
        std::string cur;
        for (auto& t : toks) {
            if (t == "+") {
                term_texts.push_back(cur);
                cur.clear();
            } else {
                cur += cur.empty() ? t : "*" + t; // hmm: terms are single tokens
            }
        }
        term_texts.push_back(cur);
        for (auto& tt : term_texts) {
            if (tt.empty()) throw input_error("empty relation term");
            r.terms.push_back(parse_term(tt, q));
        }
        rels.push_back(r);
    }
    int use_bound = bound > 0 ? bound : cfg.bound;
    QuiverAlgebra qa = build_quiver_algebra(q, rels, p, use_bound);
    out.quiver = qa;
    out.algebra = qa.based;
    return out;
}

ParsedAlgebra parse_algebra_file(const std::string& path, const RunConfig& cfg) {
    return parse_algebra_text(read_file(path), cfg, path);
}

Module parse_module_text(const std::string& text, const ParsedAlgebra& A,
                         const std::string& name) {
    const AlgebraPtr& alg = A.algebra;
    fe p = alg->p;
    std::istringstream in(text);
    std::string line;
    std::vector<int> dims;
    std::vector<std::pair<std::string, std::string>> map_lines; // arrow/label -> matrix text
    bool any_act = false;
    while (std::getline(in, line)) {
        auto tok = tokenize(line);
        if (tok.empty()) continue;
        if (tok[0] == "algebra") continue; // informational; the algebra is supplied
        if (tok[0] == "dims") {
            for (size_t i = 1; i < tok.size(); ++i)
                dims.push_back((int)parse_int(tok[i], "dimension"));
        } else if (tok[0] == "map" || tok[0] == "act") {
            if (tok.size() < 4 || tok[2] != "=")
                throw input_error(tok[0] + " line: " + tok[0] + " <name> = [[...]]");
            std::string rest;
            for (size_t i = 3; i < tok.size(); ++i) rest += tok[i];
            map_lines.push_back({tok[1], rest});
            if (tok[0] == "act") any_act = true;
        } else {
            throw input_error("unknown line in module file: " + tok[0]);
        }
    }
    if ((int)dims.size() != alg->vertex_count())
        throw input_error(name + ": dims line needs one entry per idempotent (" +
                          std::to_string(alg->vertex_count()) + ")");
    Module M;
    M.A = alg;
    M.dims = dims;
    M.n = 0;
    for (int d : dims) M.n += d;
    M.act.assign(alg->dim, Matrix(p, M.n, M.n));
    if (any_act || !A.quiver) {
        // full action tables per basis label
        std::vector<bool> given(alg->dim, false);
        for (auto& [label, mat] : map_lines) {
            int idx = -1;
            for (int i = 0; i < alg->dim; ++i)
                if (alg->labels[i] == label) idx = i;
            if (idx < 0) throw input_error("unknown basis label in act line: " + label);
            M.act[idx] = parse_matrix(mat, p, M.n, M.n, "act " + label);
            given[idx] = true;
        }
        // idempotent actions default to the block projectors
        for (int v = 0; v < alg->vertex_count(); ++v) {
            std::vector<fe> ev = alg->idem(v);
            for (int i = 0; i < alg->dim; ++i) {
                if (ev[i] == 0 || given[i]) continue;
                // a pure unit idempotent vector: fill the projector
                bool unit = true;
                for (int t = 0; t < alg->dim; ++t)
                    if (t != i && ev[t] != 0) unit = false;
                if (!unit || ev[i] != 1) continue;
                int off = M.block_offset(v);
                for (int t = 0; t < dims[v]; ++t) M.act[i].at(off + t, off + t) = 1 % p;
                given[i] = true;
            }
        }
    } else {
        // quiver presentation: arrow blocks, trivial paths are projectors,
        // longer residue paths are products of arrow actions
        const QuiverAlgebra& qa = *A.quiver;
        const Quiver& q = qa.quiver;
        std::vector<Matrix> arrow_act((int)q.arrows.size(), Matrix(p, M.n, M.n));
        std::vector<bool> arrow_given(q.arrows.size(), false);
        for (auto& [label, mat] : map_lines) {
            int a = q.arrow_index(label);
            if (a < 0) throw input_error("unknown arrow in map line: " + label);
            int u = q.arrows[a].src, v = q.arrows[a].tgt;
            Matrix block = parse_matrix(mat, p, dims[u], dims[v], "map " + label);
            Matrix full(p, M.n, M.n);
            int ou = M.block_offset(u), ov = M.block_offset(v);
            for (int i = 0; i < dims[u]; ++i)
                for (int j = 0; j < dims[v]; ++j) full.at(ou + i, ov + j) = block.at(i, j);
            arrow_act[a] = full;
            arrow_given[a] = true;
        }
        for (int i = 0; i < alg->dim; ++i) {
            const Path& path = qa.basis[i];
            if (path.length() == 0) {
                int off = M.block_offset(path.source);
                for (int t = 0; t < dims[path.source]; ++t)
                    M.act[i].at(off + t, off + t) = 1 % p;
            } else {
                Matrix acc = Matrix::identity(p, M.n);
                // restrict the start to the source block so the product is the
                // honest path action
                Matrix proj(p, M.n, M.n);
                int off = M.block_offset(path.source);
                for (int t = 0; t < dims[path.source]; ++t) proj.at(off + t, off + t) = 1 % p;
                acc = proj;
                for (int a : path.arrows) acc = mat_mul(acc, arrow_act[a]);
                M.act[i] = acc;
            }
        }
    }
    try {
        M.verify();
    } catch (const certificate_error& e) {
        throw input_error(name + ": not a valid module over the algebra: " + e.what());
    }
    return M;
}

Module parse_module_arg(const std::string& arg, const ParsedAlgebra& A) {
    auto named = [&](const std::string& prefix) -> std::optional<int> {
        if (arg.rfind(prefix + ":", 0) != 0) return std::nullopt;
        long long v = parse_int(arg.substr(prefix.size() + 1), "vertex in " + arg);
        if (v < 1 || v > A.algebra->vertex_count())
            throw input_error("vertex out of range in " + arg);
        return (int)(v - 1);
    };
    if (auto v = named("simple")) return simple(A.algebra, *v);
    if (auto v = named("projective")) return projective(A.algebra, *v);
    if (auto v = named("injective")) return injective(A.algebra, *v);
    if (arg == "regular") return regular(A.algebra);
    if (arg == "cogenerator") return cogenerator(A.algebra);
    if (arg == "dual-regular") return dualize(regular(opposite(A.algebra)));
    return parse_module_text(read_file(arg), A, arg);
}

void write_based_algebra(std::ostream& os, const BasedAlgebra& A) {
    os << "field " << A.p << "\n";
    os << "basis";
    for (auto& l : A.labels) os << " " << l;
    os << "\n";
    for (int v = 0; v < A.idempotents.rows; ++v) {
        os << "idem";
        for (int t = 0; t < A.dim; ++t) os << " " << A.idempotents.at(v, t);
        os << "\n";
    }
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            std::vector<fe> row = A.lmul[i].row(j);
            if (std::all_of(row.begin(), row.end(), [](fe x) { return x == 0; })) continue;
            os << "mult " << i + 1 << " " << j + 1 << " =";
            for (fe x : row) os << " " << x;
            os << "\n";
        }
}

std::string based_algebra_text(const BasedAlgebra& A) {
    std::ostringstream os;
    write_based_algebra(os, A);
    return os.str();
}

} // namespace qhom
