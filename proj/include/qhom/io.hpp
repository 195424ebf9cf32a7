#pragma once

#include "qhom/tilting.hpp"

#include <iosfwd>

namespace qhom {

struct RunConfig {
    fe field = 0; // 0: take from file, default 101
    int cutoff = 20;
    std::uint64_t seed = 0;
    int bound = 0; // quiver window override; 0 = default
    bool machine = false;
    fe effective_field(fe file_field) const; // resolves file vs flag, throws on conflict
};

struct ParsedAlgebra {
    AlgebraPtr algebra;
    std::optional<QuiverAlgebra> quiver; // present for quiver files
    std::string source;
};

// Quiver files: `field`, `vertices`, `arrow <name> <src> <tgt>`,
// `relation [<c>*]<arrow>(*<arrow>)* (+ term)*`, optional `bound`, `#` comments.
// Based files: `field`, `basis <labels...>`, `idem <coords...>` (one line per
// idempotent), `mult <i> <j> = <coords...>`. Vertices and basis indices are
// 1-based in files.
ParsedAlgebra parse_algebra_file(const std::string& path, const RunConfig& cfg);
ParsedAlgebra parse_algebra_text(const std::string& text, const RunConfig& cfg,
                                 const std::string& name);

// Module files: optional `algebra <path>`, `dims d1 ... dk`,
// `map <arrow> = [[...],[...]]` (block of the arrow's source x target),
// `act <label> = [[...]]` (full n x n). Omitted maps are zero.
// Besides files, the named forms `simple:<v>`, `projective:<v>`,
// `injective:<v>`, `regular`, `cogenerator`, `dual-regular` are accepted.
Module parse_module_arg(const std::string& arg, const ParsedAlgebra& A);
Module parse_module_text(const std::string& text, const ParsedAlgebra& A,
                         const std::string& name);

void write_based_algebra(std::ostream& os, const BasedAlgebra& A);
std::string based_algebra_text(const BasedAlgebra& A);

} // namespace qhom
