#pragma once

#include "qhom/homology.hpp"

namespace qhom {

// End(X) for X given by its indecomposable summands. Basis: maps between
// summands (identity maps first within each End(X_i)); idempotents: the
// summand identities; product chosen so that Hom(X,-) with the
// gamma-then-phi action is a module over the result.
EndoAlgebra endo_algebra(const AlgebraPtr& Lambda, const std::vector<Module>& summands);

// Invertible intertwiner M -> N if one can be found (seeded search).
std::optional<Matrix> iso_witness(const Module& M, const Module& N, std::uint64_t seed);

struct Approximation {
    ModuleMap map;               // C -> M (right) or M -> C (left)
    std::vector<int> slot_mults; // multiplicity of each X-summand in C
};
// Minimal right add(X)-approximation of M, transported from the projective
// cover of Hom(X, M) over End(X). Requires every indecomposable projective
// in add(X).
Approximation right_approximation(const EndoAlgebra& ctx, const Module& M, std::uint64_t seed);
// Dual construction; requires every indecomposable injective in add(X).
Approximation left_approximation(const EndoAlgebra& ctx, const Module& M, std::uint64_t seed);

enum class Side { right, left };

struct CResolution {
    bool ok = false;
    std::string failure; // nonempty iff !ok: the refutation witness
    Side side = Side::right;
    Module base;
    std::vector<Module> terms;   // C_0 .. C_L
    std::vector<ModuleMap> maps; // right: maps[0]: C_0 -> M, maps[s]: C_s -> C_{s-1}
                                 // left:  maps[0]: M -> C_0, maps[s]: C_{s-1} -> C_s
    int length() const { return (int)terms.size() - 1; }
    bool cert_exact = false;
    bool cert_hom_exact = false;
    bool cert_membership = false;
};
// Iterated-approximation resolution of length <= d-1 whose kernels stay
// Ext-orthogonal to add(X); the final kernel must land in add(X), and a
// failure there refutes the d-cluster-tilting property at M.
CResolution c_resolution(const EndoAlgebra& ctx, const Module& M, int d, Side side,
                         std::uint64_t seed);

struct AuslanderVerdict {
    DimensionResult gl, dom;
    int d = 1;
    Tri verdict = Tri::unknown;
};
// dom.dim >= d+1 >= gl.dim, with honest lower bounds propagated.
AuslanderVerdict is_d_auslander(const AlgebraPtr& A, int d, int cutoff);

struct CtOptions {
    std::uint64_t seed = 0;
    int cutoff = 20;
    const std::vector<Module>* candidates = nullptr; // enumerated mode input
};

struct CtReport {
    Tri verdict = Tri::unknown;
    std::string evidence;
    std::vector<Module> summands; // basic form
    bool has_regular = false, has_cogenerator = false, rigid = false;
    int endo_dim = 0;
    AuslanderVerdict endo_verdict;
    bool enumerated_ran = false;
    Tri enumerated_verdict = Tri::unknown;
    std::string enumerated_evidence;
    bool modes_agree = true;
};
// mode "criterion": generator-cogenerator + rigidity + End(X) d-Auslander.
// With candidates supplied, additionally checks both Ext-orthogonality
// maximality conditions over the candidate list and compares the verdicts.
CtReport is_cluster_tilting(const AlgebraPtr& Lambda, const Module& X, int d,
                            const CtOptions& opts);

struct RecoverResult {
    bool ok = false;
    std::string failure;
    AuslanderVerdict pre;
    std::vector<int> pi_vertices;
    CornerResult corner_data;
    Module Xprime;
    std::vector<Module> summands;
    bool cert_rigid = false, cert_generator = false, cert_cogenerator = false;
    CtReport ct;
};
// Backward direction: corner at the projective-injective idempotents, with
// the recovered module G(D Gamma).
RecoverResult recover_ct(const AlgebraPtr& Gamma, int d, const CtOptions& opts);

struct Fingerprint {
    int r = 0;
    Matrix cartan; // dim Hom(P_i, P_j)
    Matrix ext1;   // dim Ext^1(S_i, S_j)
    std::string canon;
    bool operator==(const Fingerprint& o) const { return r == o.r && canon == o.canon; }
    std::string str() const;
};
Fingerprint fingerprint(const AlgebraPtr& A);

struct RoundtripReport {
    bool pass = false;
    std::string failure;
    CtReport forward;
    int gamma_dim = 0;
    RecoverResult backward;
    bool summand_count_match = false;
    bool fingerprint_match = false;
    bool hom_table_match = false;
    bool gf_identity = false;
    Fingerprint fp_gamma, fp_gamma_prime;
};
// The full correspondence check: forward to End(X), backward to (Lambda',
// X'), invariants compared, and G(F(A)) ~= A verified summand by summand.
RoundtripReport correspondence_roundtrip(const AlgebraPtr& Lambda, const Module& X, int d,
                                         const CtOptions& opts);

} // namespace qhom
