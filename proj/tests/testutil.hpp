#pragma once

#include "qhom/io.hpp"

#include <random>

#ifndef QHOM_DATA_DIR
#define QHOM_DATA_DIR "data"
#endif

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(QHOM_DATA_DIR) + "/" + name;
}

inline qhom::ParsedAlgebra load_algebra(const std::string& name, qhom::fe field = 0) {
    qhom::RunConfig cfg;
    cfg.field = field;
    return qhom::parse_algebra_file(data_path(name), cfg);
}

// random module = cokernel of a random map between small sums of projectives;
// every module over the algebra arises this way
inline qhom::Module random_module(const qhom::AlgebraPtr& A, std::mt19937_64& rng) {
    using namespace qhom;
    int r = A->vertex_count();
    auto random_proj_sum = [&](int max_parts) {
        std::vector<Module> parts;
        int count = 1 + (int)(rng() % (unsigned)max_parts);
        for (int t = 0; t < count; ++t) parts.push_back(projective(A, (int)(rng() % (unsigned)r)));
        return direct_sum(A, parts).sum;
    };
    Module P0 = random_proj_sum(2);
    Module P1 = random_proj_sum(2);
    HomSpace H = hom_basis(P1, P0);
    Matrix f(A->p, P1.n, P0.n);
    for (auto& b : H.basis) {
        fe c = (fe)(rng() % (unsigned long long)A->p);
        if (c) f = mat_add(f, mat_scale(b, c));
    }
    return cokernel(ModuleMap{P1, P0, f}).quo;
}

} // namespace testutil
