#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "entrocrit/criteria.hpp"
#include "entrocrit/entropy.hpp"
#include "entrocrit/states.hpp"

namespace entrocrit {

using nlohmann::json;

// State files: {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]} with
// row-major rows and IEEE-754 doubles, plus an optional "ensemble" carrying
// a separability certificate {"weights": [...], "factors": [[A, B], ...]}.

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j, const std::string& what);

json ensemble_to_json(const SeparableEnsemble& e);
SeparableEnsemble ensemble_from_json(const json& j);

struct StateFile {
  DensityMatrix state;
  std::optional<SeparableEnsemble> ensemble;
};

json state_to_json(const DensityMatrix& rho,
                   const SeparableEnsemble* ensemble = nullptr);
StateFile state_from_json(const json& j, const Tolerances& tol = {});
StateFile read_state_file(const std::string& path, const Tolerances& tol = {});
void write_state_file(const std::string& path, const DensityMatrix& rho,
                      const SeparableEnsemble* ensemble = nullptr);

json alpha_to_json(const AlphaValue& alpha);
AlphaValue alpha_from_json(const json& j);

json entropy_result_to_json(const EntropyResult& r);
json verdict_to_json(const CriterionVerdict& v);
json sweep_row_to_json(const SweepRow& row);
json sweep_to_json(const SweepTable& table);
json chain_report_to_json(const ChainReport& report);

}  // namespace entrocrit
