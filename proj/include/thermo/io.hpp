#pragma once

// JSON ingestion of systems and potentials, and JSON emission of spectral
// data. Input schema:
//   {"alphabet_size": N, "adjacency": [[0/1, ...], ...],
//    "potentials": [{"name": str, "depth": k, "table": {"12": value, ...}}]}
// Word keys use 1-indexed symbols.

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thermo/spectral.hpp"
#include "thermo/symbolic.hpp"

namespace thermo {

struct SystemDocument {
  SftSystem system;
  std::vector<std::pair<std::string, Potential>> potentials;  // input order

  /// Errors: InvalidInput when no potential has this name.
  const Potential& potential(std::string_view name) const;
};

/// Errors: InvalidInput for malformed JSON or schema violations, plus the
/// make_sft / make_potential errors.
SystemDocument parse_system_document(std::string_view json_text);
SystemDocument load_system_document(const std::string& path);

std::string system_document_json(const SftSystem& system,
                                 const std::vector<std::pair<std::string, Potential>>& potentials);

/// {"lambda": f, "pressure": f, "h": [...], "nu": [...], "gap": f}
void write_triple_json(std::ostream& out, const SpectralTriple& triple);
/// {"p": [[...]], "pi": [...]}
void write_measure_json(std::ostream& out, const MarkovMeasure& measure);

void write_json_array(std::ostream& out, const std::vector<double>& values);

}  // namespace thermo
