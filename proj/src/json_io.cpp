#include "entrocrit/json_io.hpp"

#include <cmath>
#include <fstream>

#include "entrocrit/errors.hpp"

namespace entrocrit {

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError(what + ": matrix must be a nonempty array of rows");
  }
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) {
    throw ValidationError(what + ": rows must be nonempty arrays");
  }
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw ValidationError(what + ": ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const json& entry = j[i][c];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        throw ValidationError(what +
                              ": entries must be [re, im] number pairs");
      }
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ValidationError(what + ": non-finite entry");
      }
      m(i, c) = Complex(re, im);
    }
  }
  return m;
}

json ensemble_to_json(const SeparableEnsemble& e) {
  json factors = json::array();
  for (const auto& [fa, fb] : e.factors) {
    factors.push_back(json::array({matrix_to_json(fa), matrix_to_json(fb)}));
  }
  return json{{"weights", e.weights}, {"factors", std::move(factors)}};
}

SeparableEnsemble ensemble_from_json(const json& j) {
  if (!j.is_object() || !j.contains("weights") || !j.contains("factors")) {
    throw ValidationError("ensemble: expected {\"weights\", \"factors\"}");
  }
  SeparableEnsemble e;
  for (const json& w : j.at("weights")) {
    if (!w.is_number()) {
      throw ValidationError("ensemble: weights must be numbers");
    }
    e.weights.push_back(w.get<double>());
  }
  for (const json& pair : j.at("factors")) {
    if (!pair.is_array() || pair.size() != 2) {
      throw ValidationError("ensemble: factors must be [A, B] matrix pairs");
    }
    e.factors.emplace_back(matrix_from_json(pair[0], "ensemble factor A"),
                           matrix_from_json(pair[1], "ensemble factor B"));
  }
  return e;
}

json state_to_json(const DensityMatrix& rho, const SeparableEnsemble* e) {
  json out{{"dims", json::array({rho.dims().dA, rho.dims().dB})},
           {"matrix", matrix_to_json(rho.mat())}};
  if (e != nullptr) out["ensemble"] = ensemble_to_json(*e);
  return out;
}

StateFile state_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object()) {
    throw ValidationError("state: expected a JSON object");
  }
  if (!j.contains("dims")) {
    throw ValidationError("state: mandatory \"dims\" field is missing");
  }
  const json& dims_j = j.at("dims");
  const auto is_positive_integer = [](const json& v) {
    return v.is_number_integer() && v.get<long long>() > 0;
  };
  if (!dims_j.is_array() || dims_j.size() != 2 ||
      !is_positive_integer(dims_j[0]) || !is_positive_integer(dims_j[1])) {
    throw ValidationError(
        "state: \"dims\" must be a [dA, dB] pair of positive integers");
  }
  const BipartiteDims dims{dims_j[0].get<std::size_t>(),
                           dims_j[1].get<std::size_t>()};
  if (!j.contains("matrix")) {
    throw ValidationError("state: mandatory \"matrix\" field is missing");
  }
  ComplexMatrix m = matrix_from_json(j.at("matrix"), "state");
  DensityMatrix rho = DensityMatrix::validated(dims, std::move(m), tol);
  std::optional<SeparableEnsemble> ensemble;
  if (j.contains("ensemble")) {
    ensemble = ensemble_from_json(j.at("ensemble"));
    validate_ensemble(*ensemble, tol);
  }
  return StateFile{std::move(rho), std::move(ensemble)};
}

StateFile read_state_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open state file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw ValidationError("state file " + path +
                          " is not valid JSON: " + err.what());
  }
  return state_from_json(j, tol);
}

void write_state_file(const std::string& path, const DensityMatrix& rho,
                      const SeparableEnsemble* ensemble) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot write state file: " + path);
  }
  out << state_to_json(rho, ensemble).dump(2) << "\n";
}

json alpha_to_json(const AlphaValue& alpha) {
  return alpha.is_infinite() ? json("inf") : json(alpha.value());
}

AlphaValue alpha_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return AlphaValue::infinity();
    throw ValidationError("alpha: only the token \"inf\" is accepted as a "
                          "string");
  }
  if (!j.is_number()) {
    throw ValidationError("alpha: expected a number or \"inf\"");
  }
  return AlphaValue::finite(j.get<double>());
}

json entropy_result_to_json(const EntropyResult& r) {
  switch (r.state) {
    case ValueState::Finite: return json(r.value);
    case ValueState::Undefined: return json(nullptr);
    case ValueState::NegativeInfinity: return json("-inf");
  }
  return json(nullptr);
}

json verdict_to_json(const CriterionVerdict& v) {
  return json{{"criterion", criterion_name(v.criterion)},
              {"holds", v.holds},
              {"margin", v.margin},
              {"witness", v.witness ? json(*v.witness) : json(nullptr)}};
}

json sweep_row_to_json(const SweepRow& row) {
  return json{{"alpha", alpha_to_json(row.alpha)},
              {"side", subsystem_name(row.side)},
              {"renyi", entropy_result_to_json(row.renyi_state)},
              {"renyi_reduced", entropy_result_to_json(row.renyi_reduced)},
              {"tsallis", entropy_result_to_json(row.tsallis_state)},
              {"conditional_renyi",
               entropy_result_to_json(row.conditional_renyi)},
              {"conditional_tsallis",
               entropy_result_to_json(row.conditional_tsallis)},
              {"sign", row.sign ? json(sign_name(row.sign->sign))
                                : json(nullptr)},
              {"sign_margin",
               row.sign ? json(row.sign->margin) : json(nullptr)},
              {"proven_range", row.proven_range},
              {"note", row.note ? json(*row.note) : json(nullptr)}};
}

json sweep_to_json(const SweepTable& table) {
  json rows = json::array();
  for (const SweepRow& row : table.rows) rows.push_back(sweep_row_to_json(row));
  return json{{"rows", std::move(rows)},
              {"min_sign_margin", table.min_sign_margin},
              {"any_negative", table.any_negative}};
}

json chain_report_to_json(const ChainReport& report) {
  json verdicts = json::array();
  for (const CriterionVerdict& v : report.verdicts) {
    verdicts.push_back(verdict_to_json(v));
  }
  json out{{"verdicts", std::move(verdicts)},
           {"consistency_violations", report.consistency_violations},
           {"notes", report.notes}};
  out["certificate"] = report.certificate
                           ? ensemble_to_json(*report.certificate)
                           : json(nullptr);
  return out;
}

}  // namespace entrocrit
