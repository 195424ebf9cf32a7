// qhom: homological invariants of finite-dimensional quiver algebras and
// cluster-tilting correspondence checks over a prime field.

#include "qhom/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using json = nlohmann::ordered_json;
using namespace qhom;

namespace {

struct Output {
    RunConfig cfg;
    std::string command;
    json machine;
    std::ostringstream text;

    Output(const RunConfig& c, std::string cmd) : cfg(c), command(std::move(cmd)) {
        machine["command"] = command;
        machine["field"] = 0; // filled once the algebra is loaded
        machine["cutoff"] = cfg.cutoff;
        machine["seed"] = cfg.seed;
    }
    void set_field(fe p) { machine["field"] = p; }
    void finish() {
        if (cfg.machine) {
            std::cout << machine.dump() << "\n";
        } else {
            std::cout << "# qhom " << command << " | field=" << machine["field"].get<fe>()
                      << " cutoff=" << cfg.cutoff << " seed=" << cfg.seed << "\n";
            std::cout << text.str();
        }
    }
};

json dimres_json(const DimensionResult& d) {
    return json{{"kind", d.exact ? "exact" : "at_least"}, {"value", d.value}};
}

json verdict_json(Tri t) { return tri_str(t); }

std::vector<int> parse_idem_list(const std::string& s, int count) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) return;
        int v = (int)std::stoll(cur);
        if (v < 1 || v > count) throw input_error("idempotent index out of range: " + cur);
        out.push_back(v - 1);
        cur.clear();
    };
    for (char c : s) {
        if (c == ',' || c == ' ')
            flush();
        else
            cur += c;
    }
    flush();
    if (out.empty()) throw input_error("empty idempotent list");
    return out;
}

std::vector<Module> load_candidate_dir(const std::string& dir, const ParsedAlgebra& A) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file()) files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw input_error("no module files in " + dir);
    std::vector<Module> out;
    for (auto& f : files) out.push_back(parse_module_arg(f, A));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"homological invariants of finite-dimensional algebras over a prime field"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--field", cfg.field, "prime field modulus (default: file value or 101)");
    app.add_option("--cutoff", cfg.cutoff, "resolution depth cutoff")->default_val(20);
    app.add_option("--seed", cfg.seed, "seed for randomized searches")->default_val(0);
    app.add_option("--bound", cfg.bound, "path-length window for quiver algebras");
    std::string format = "text";
    app.add_option("--format", format, "output format: text | machine")
        ->check(CLI::IsMember({"text", "machine"}));

    std::string alg_path, mod_path, mod2_path, out_path, indec_dir, direction, elist;
    int deg = 0, dpar = 1;

    auto* ext = app.add_subcommand("ext", "dimension of Ext^i(M, N)");
    ext->add_option("--i", deg, "degree")->required();
    ext->add_option("algebra", alg_path)->required();
    ext->add_option("M", mod_path)->required();
    ext->add_option("N", mod2_path)->required();

    auto* gldim = app.add_subcommand("gldim", "global dimension");
    gldim->add_option("algebra", alg_path)->required();

    auto* domdim = app.add_subcommand("domdim", "dominant dimension");
    domdim->add_option("algebra", alg_path)->required();

    auto* resolve = app.add_subcommand("resolve", "minimal resolution term dimensions");
    resolve->add_option("--direction", direction, "proj | inj")
        ->required()
        ->check(CLI::IsMember({"proj", "inj"}));
    resolve->add_option("algebra", alg_path)->required();
    resolve->add_option("M", mod_path)->required();

    auto* checkct = app.add_subcommand("check-ct", "d-cluster-tilting test");
    checkct->add_option("--d", dpar, "d")->required();
    checkct->add_option("--indecomposables", indec_dir,
                        "directory of module files: run the enumerated mode too");
    checkct->add_option("algebra", alg_path)->required();
    checkct->add_option("X", mod_path)->required();

    auto* endo = app.add_subcommand("endo", "endomorphism algebra of a module");
    endo->add_option("algebra", alg_path)->required();
    endo->add_option("X", mod_path)->required();
    endo->add_option("--out", out_path, "write the based algebra to this file");

    auto* checkaus = app.add_subcommand("check-auslander", "d-Auslander test");
    checkaus->add_option("--d", dpar, "d")->required();
    checkaus->add_option("algebra", alg_path)->required();

    auto* recover = app.add_subcommand("recover-ct", "corner + recovered module");
    recover->add_option("--d", dpar, "d")->required();
    recover->add_option("algebra", alg_path)->required();

    auto* roundtrip = app.add_subcommand("roundtrip", "full correspondence check");
    roundtrip->add_option("--d", dpar, "d")->required();
    roundtrip->add_option("algebra", alg_path)->required();
    roundtrip->add_option("X", mod_path)->required();

    auto* cres = app.add_subcommand("c-resolve", "add(X)-resolution with certificates");
    cres->add_option("--d", dpar, "d")->required();
    cres->add_option("--direction", direction, "right | left")
        ->required()
        ->check(CLI::IsMember({"right", "left"}));
    cres->add_option("algebra", alg_path)->required();
    cres->add_option("X", mod_path)->required();
    cres->add_option("M", mod2_path)->required();

    auto* vapt = app.add_subcommand("verify-apt", "idempotent-ideal condition cross-check");
    vapt->add_option("--d", dpar, "d")->required();
    vapt->add_option("--e", elist, "idempotent indices, comma separated")->required();
    vapt->add_option("algebra", alg_path)->required();
    vapt->add_option("M", mod_path)->required();

    auto* vext = app.add_subcommand("verify-extiso", "Ext comparison under Hom(Ae, -)");
    vext->add_option("--d", dpar, "d")->required();
    vext->add_option("--e", elist, "idempotent indices, comma separated")->required();
    vext->add_option("algebra", alg_path)->required();
    vext->add_option("X", mod_path)->required();
    vext->add_option("Y", mod2_path)->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    app.parse(argc, argv);
    cfg.machine = format == "machine";
    CtOptions opts{cfg.seed, cfg.cutoff, nullptr};

    auto load = [&]() { return parse_algebra_file(alg_path, cfg); };

    if (*ext) {
        Output out(cfg, "ext");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        Module M = parse_module_arg(mod_path, A);
        Module N = parse_module_arg(mod2_path, A);
        int dim = ext_dim(deg, M, N);
        out.machine["result"] = {{"i", deg}, {"dim", dim}};
        out.text << "dim Ext^" << deg << " = " << dim << "\n";
        out.finish();
        return 0;
    }
    if (*gldim) {
        Output out(cfg, "gldim");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        DimensionResult r = global_dimension(A.algebra, cfg.cutoff);
        out.machine["result"] = dimres_json(r);
        out.text << r.str("gl.dim") << "\n";
        out.finish();
        return 0;
    }
    if (*domdim) {
        Output out(cfg, "domdim");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        DimensionResult r = dominant_dimension(A.algebra, cfg.cutoff);
        out.machine["result"] = dimres_json(r);
        out.text << r.str("dom.dim") << "\n";
        out.finish();
        return 0;
    }
    if (*resolve) {
        Output out(cfg, "resolve");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        Module M = parse_module_arg(mod_path, A);
        Resolution r = min_resolution(
            M, direction == "proj" ? Direction::projective : Direction::injective, cfg.cutoff);
        json terms = json::array();
        for (size_t k = 0; k < r.terms.size(); ++k) {
            json t;
            t["index"] = k;
            t["dim"] = r.terms[k].n;
            t["dims"] = r.terms[k].dims;
            t["vertex_mults"] = r.term_mults[k];
            terms.push_back(t);
            out.text << (direction == "proj" ? "P_" : "I_") << k << ": dim " << r.terms[k].n
                     << " " << r.terms[k].dims_str() << "\n";
        }
        out.machine["result"] = {{"direction", direction},
                                 {"length", r.length()},
                                 {"truncated", r.truncated},
                                 {"terms", terms}};
        out.text << "length " << (r.truncated ? ">= " : "= ") << r.length() << "\n";
        out.finish();
        return 0;
    }
    if (*checkct) {
        Output out(cfg, "check-ct");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        Module X = parse_module_arg(mod_path, A);
        std::vector<Module> cands;
        if (!indec_dir.empty()) {
            cands = load_candidate_dir(indec_dir, A);
            opts.candidates = &cands;
        }
        CtReport r = is_cluster_tilting(A.algebra, X, dpar, opts);
        out.machine["result"] = {
            {"verdict", verdict_json(r.verdict)},
            {"evidence", r.evidence},
            {"summands", r.summands.size()},
            {"has_regular", r.has_regular},
            {"has_cogenerator", r.has_cogenerator},
            {"rigid", r.rigid},
            {"endo_dim", r.endo_dim},
            {"endo_gl", dimres_json(r.endo_verdict.gl)},
            {"endo_dom", dimres_json(r.endo_verdict.dom)},
        };
        out.text << "d-cluster-tilting (d=" << dpar << "): " << tri_str(r.verdict) << "\n";
        out.text << "summands: " << r.summands.size() << ", End(X) dim " << r.endo_dim << ", "
                 << r.endo_verdict.gl.str("gl.dim") << ", " << r.endo_verdict.dom.str("dom.dim")
                 << "\n";
        if (!r.evidence.empty()) out.text << "evidence: " << r.evidence << "\n";
        if (r.enumerated_ran) {
            out.machine["result"]["enumerated"] = verdict_json(r.enumerated_verdict);
            out.machine["result"]["modes_agree"] = r.modes_agree;
            out.text << "enumerated mode: " << tri_str(r.enumerated_verdict)
                     << (r.modes_agree ? " (agrees)" : " (DISAGREES)") << "\n";
            if (!r.enumerated_evidence.empty())
                out.text << "enumerated evidence: " << r.enumerated_evidence << "\n";
            if (!r.modes_agree) {
                out.finish();
                return 2;
            }
        }
        out.finish();
        return 0;
    }
    if (*endo) {
        Output out(cfg, "endo");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        Module X = parse_module_arg(mod_path, A);
        Decomposition dec = decompose(X, cfg.seed);
        std::vector<Module> summands;
        for (auto& [part, mult] : dec.summands)
            for (int t = 0; t < mult; ++t) summands.push_back(part);
        EndoAlgebra ctx = endo_algebra(A.algebra, summands);
        out.machine["result"] = {{"dim", ctx.gamma->dim}, {"summands", summands.size()}};
        out.text << "End(X): dimension " << ctx.gamma->dim << ", " << summands.size()
                 << " summands\n";
        if (!out_path.empty()) {
            std::ofstream os(out_path);
            if (!os) throw input_error("cannot write " + out_path);
            write_based_algebra(os, *ctx.gamma);
            out.machine["result"]["written"] = out_path;
            out.text << "written to " << out_path << "\n";
        }
        out.finish();
        return 0;
    }
    if (*checkaus) {
        Output out(cfg, "check-auslander");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        AuslanderVerdict v = is_d_auslander(A.algebra, dpar, cfg.cutoff);
        out.machine["result"] = {{"verdict", verdict_json(v.verdict)},
                                 {"gl", dimres_json(v.gl)},
                                 {"dom", dimres_json(v.dom)},
                                 {"d", dpar}};
        out.text << v.gl.str("gl.dim") << "\n" << v.dom.str("dom.dim") << "\n";
        out.text << dpar << "-Auslander: " << tri_str(v.verdict) << "\n";
        out.finish();
        return 0;
    }
    if (*recover) {
        Output out(cfg, "recover-ct");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        RecoverResult r = recover_ct(A.algebra, dpar, opts);
        json sums = json::array();
        for (auto& s : r.summands) sums.push_back(s.n);
        out.machine["result"] = {{"ok", r.ok},
                                 {"corner_dim", r.ok ? r.corner_data.algebra->dim : 0},
                                 {"pi_vertices", r.pi_vertices.size()},
                                 {"xprime_dim", r.Xprime.n},
                                 {"summand_dims", sums},
                                 {"failure", r.failure}};
        if (!r.ok) {
            out.text << "FAIL: " << r.failure << "\n";
            out.finish();
            return 0;
        }
        out.text << "corner dimension " << r.corner_data.algebra->dim << " at "
                 << r.pi_vertices.size() << " projective-injective vertices\n";
        out.text << "X' dimension " << r.Xprime.n << " with " << r.summands.size()
                 << " indecomposable summands\n";
        out.text << "certificates: rigid=" << r.cert_rigid << " generator=" << r.cert_generator
                 << " cogenerator=" << r.cert_cogenerator
                 << " cluster-tilting=" << tri_str(r.ct.verdict) << "\n";
        out.finish();
        return 0;
    }
    if (*roundtrip) {
        Output out(cfg, "roundtrip");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        Module X = parse_module_arg(mod_path, A);
        RoundtripReport r = correspondence_roundtrip(A.algebra, X, dpar, opts);
        out.machine["result"] = {{"pass", r.pass},
                                 {"gamma_dim", r.gamma_dim},
                                 {"summands", r.forward.summands.size()},
                                 {"summand_count_match", r.summand_count_match},
                                 {"fingerprint_match", r.fingerprint_match},
                                 {"hom_table_match", r.hom_table_match},
                                 {"gf_identity", r.gf_identity},
                                 {"failure", r.failure}};
        if (r.pass)
            out.text << "PASS (Gamma dim " << r.gamma_dim << ", fingerprint match, "
                     << r.forward.summands.size() << " summands, G(F(A)) = A)\n";
        else
            out.text << "FAIL: " << r.failure << "\n";
        out.finish();
        return 0;
    }
    if (*cres) {
        Output out(cfg, "c-resolve");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        Module X = parse_module_arg(mod_path, A);
        Module M = parse_module_arg(mod2_path, A);
        Decomposition dec = decompose(X, cfg.seed);
        std::vector<Module> summands;
        for (auto& [part, mult] : dec.summands) summands.push_back(part);
        EndoAlgebra ctx = endo_algebra(A.algebra, summands);
        CResolution r = c_resolution(ctx, M, dpar,
                                     direction == "right" ? Side::right : Side::left, cfg.seed);
        json terms = json::array();
        for (auto& t : r.terms) terms.push_back(t.n);
        out.machine["result"] = {{"ok", r.ok},
                                 {"failure", r.failure},
                                 {"length", r.length()},
                                 {"terms", terms},
                                 {"cert_exact", r.cert_exact},
                                 {"cert_hom_exact", r.cert_hom_exact},
                                 {"cert_membership", r.cert_membership}};
        if (!r.ok) {
            out.text << "REFUTED: " << r.failure << "\n";
        } else {
            out.text << "length " << r.length() << "; terms:";
            for (auto& t : r.terms) out.text << " " << t.n;
            out.text << "\ncertificates: exact=" << r.cert_exact
                     << " hom_exact=" << r.cert_hom_exact
                     << " membership=" << r.cert_membership << "\n";
        }
        out.finish();
        return 0;
    }
    if (*vapt) {
        Output out(cfg, "verify-apt");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        std::vector<int> e = parse_idem_list(elist, A.algebra->vertex_count());
        Module M = parse_module_arg(mod_path, A);
        AptReport r = verify_apt_equivalence(A.algebra, e, M, dpar, cfg.seed);
        out.machine["result"] = {{"projective_condition", r.projective_condition},
                                 {"ext_condition", r.ext_condition},
                                 {"agree", r.agree},
                                 {"detail", r.detail}};
        out.text << "(i) resolution prefix in add(Ae): "
                 << (r.projective_condition ? "true" : "false")
                 << "\n(ii) Ext vanishing against A/I-modules: "
                 << (r.ext_condition ? "true" : "false") << "\nagree: "
                 << (r.agree ? "yes" : "NO (this is a bug)") << "\n";
        out.finish();
        return r.agree ? 0 : 2;
    }
    if (*vext) {
        Output out(cfg, "verify-extiso");
        ParsedAlgebra A = load();
        out.set_field(A.algebra->p);
        std::vector<int> e = parse_idem_list(elist, A.algebra->vertex_count());
        Module X = parse_module_arg(mod_path, A);
        Module Y = parse_module_arg(mod2_path, A);
        ExtIsoReport r = verify_ext_iso(A.algebra, e, X, Y, dpar, cfg.seed);
        json table = json::array();
        for (size_t i = 0; i < r.table.size(); ++i)
            table.push_back(
                {{"i", i}, {"ext", r.table[i].first}, {"ext_corner", r.table[i].second}});
        out.machine["result"] = {{"hypothesis_level", r.hypothesis_level},
                                 {"hypothesis_met", r.hypothesis_met},
                                 {"equal", r.equal},
                                 {"table", table}};
        for (size_t i = 0; i < r.table.size(); ++i)
            out.text << "degree " << i << ": " << r.table[i].first << " vs "
                     << r.table[i].second << "\n";
        out.text << "hypothesis level " << r.hypothesis_level
                 << (r.hypothesis_met ? " (met)" : " (not met; comparison informational)") << "\n";
        out.text << "equal: " << (r.equal ? "yes" : "no") << "\n";
        out.finish();
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        CLI::App app;
        app.exit(e);
        return 1;
    } catch (const qhom::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const qhom::certificate_error& e) {
        std::cerr << "internal certificate failure (please report): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
