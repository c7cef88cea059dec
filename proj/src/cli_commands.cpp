#include "entrocrit/cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include "entrocrit/errors.hpp"
#include "entrocrit/rng.hpp"
#include "entrocrit/version.hpp"

namespace entrocrit {

std::vector<AlphaValue> parse_alpha_list(const std::string& text) {
  std::vector<AlphaValue> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto begin = token.find_first_not_of(" \t");
    const auto end = token.find_last_not_of(" \t");
    if (begin == std::string::npos) {
      throw ParameterRangeError("alpha list: empty entry");
    }
    token = token.substr(begin, end - begin + 1);
    if (token == "inf") {
      out.push_back(AlphaValue::infinity());
      continue;
    }
    try {
      std::size_t used = 0;
      const double value = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(AlphaValue::finite(value));
    } catch (const std::exception&) {
      throw ParameterRangeError("alpha list: cannot parse '" + token + "'");
    }
  }
  if (out.empty()) {
    throw ParameterRangeError("alpha list: no entries");
  }
  return out;
}

BipartiteDims parse_dims(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ParameterRangeError("dims: expected the form dA,dB");
  }
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const unsigned long da = std::stoul(a, &used_a);
    const unsigned long db = std::stoul(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) {
      throw std::invalid_argument(text);
    }
    const BipartiteDims dims{da, db};
    validate_dims(dims);
    return dims;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw ParameterRangeError("dims: cannot parse '" + text + "'");
  }
}

namespace {

json config_json(const RunConfig& config) {
  json grid = json::array();
  for (const AlphaValue& a : config.alpha_grid) grid.push_back(alpha_to_json(a));
  return json{{"seed", config.seed},
              {"alpha_grid", std::move(grid)},
              {"tolerances",
               json{{"psd", config.tol.psd},
                    {"rank", config.tol.rank},
                    {"major", config.tol.major},
                    {"entropic_margin", config.tol.entropic_margin}}},
              {"format", config.format == OutputFormat::Json ? "json" : "csv"},
              {"out", config.out_path ? json(*config.out_path) : json(nullptr)},
              {"log_base", "natural"}};
}

json report_skeleton(const char* command, const RunConfig& config) {
  return json{{"tool", kToolName},
              {"version", kVersion},
              {"command", command},
              {"config", config_json(config)}};
}

json spectrum_json(const Spectrum& s) {
  json out = json::array();
  for (double v : s.values()) out.push_back(v);
  return out;
}

double reduction_distance_from_chaotic(const ComplexMatrix& red) {
  const std::size_t d = red.rows();
  ComplexMatrix chaotic = ComplexMatrix::identity(d);
  chaotic *= Complex(1.0 / static_cast<double>(d), 0.0);
  return frobenius_distance(red, chaotic);
}

struct CriterionRow {
  CriterionVerdict ppt;
  CriterionVerdict reduction_a;
  CriterionVerdict reduction_b;
  CriterionVerdict rank;
  CriterionVerdict majorization_a;
  CriterionVerdict majorization_b;
  CriterionVerdict entropic_verdict;
};

CriterionRow evaluate_criteria(const DensityMatrix& rho,
                               const RunConfig& config) {
  return CriterionRow{ppt(rho, config.tol),
                      reduction(rho, Subsystem::A, config.tol),
                      reduction(rho, Subsystem::B, config.tol),
                      rank_criterion(rho, config.tol),
                      majorization(rho, Subsystem::A, config.tol),
                      majorization(rho, Subsystem::B, config.tol),
                      entropic(rho, config.alpha_grid, config.tol)};
}

}  // namespace

json cmd_analyze(const std::string& input_path, const RunConfig& config) {
  const StateFile file = read_state_file(input_path, config.tol);
  const SeparableEnsemble* certificate =
      file.ensemble ? &*file.ensemble : nullptr;
  const ChainReport report =
      chain_report(file.state, certificate, config.alpha_grid, config.tol);
  const SweepTable sweep =
      alpha_sweep(file.state, config.alpha_grid, SweepSides::Both, config.tol);

  json out = report_skeleton("analyze", config);
  out["input"] = input_path;
  out["dims"] = json::array({file.state.dims().dA, file.state.dims().dB});
  out["chain"] = chain_report_to_json(report);
  out["sweep"] = sweep_to_json(sweep);
  return out;
}

json cmd_werner(std::size_t d, double p_start, double p_end, double p_step,
                const RunConfig& config) {
  if (d < 2) {
    throw ParameterRangeError("werner: d must be at least 2");
  }
  if (!(p_start >= 0.0 && p_start <= p_end && p_end <= 1.0) || p_step <= 0.0) {
    throw ParameterRangeError(
        "werner: need 0 <= p-start <= p-end <= 1 and a positive p-step");
  }
  json rows = json::array();
  const std::size_t steps =
      static_cast<std::size_t>((p_end - p_start) / p_step + 1e-9);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double p = std::min(p_start + static_cast<double>(i) * p_step, p_end);
    const DensityMatrix rho = werner(d, p);
    const CriterionRow row = evaluate_criteria(rho, config);
    rows.push_back(json{{"p", p},
                        {"ppt_margin", row.ppt.margin},
                        {"ppt_holds", row.ppt.holds},
                        {"reduction_A_margin", row.reduction_a.margin},
                        {"reduction_A_holds", row.reduction_a.holds},
                        {"reduction_B_margin", row.reduction_b.margin},
                        {"reduction_B_holds", row.reduction_b.holds},
                        {"rank_margin", row.rank.margin},
                        {"rank_holds", row.rank.holds},
                        {"majorization_A_margin", row.majorization_a.margin},
                        {"majorization_A_holds", row.majorization_a.holds},
                        {"majorization_B_margin", row.majorization_b.margin},
                        {"majorization_B_holds", row.majorization_b.holds},
                        {"entropic_min_margin", row.entropic_verdict.margin},
                        {"entropic_holds", row.entropic_verdict.holds}});
  }

  json out = report_skeleton("werner", config);
  out["d"] = d;
  out["rows"] = std::move(rows);
  // Refine the PPT sign change when the scanned interval brackets one.
  json boundary(nullptr);
  const double m_lo = ppt(werner(d, p_start), config.tol).margin;
  const double m_hi = ppt(werner(d, p_end), config.tol).margin;
  if (m_lo >= 0.0 && m_hi < 0.0) {
    boundary = werner_ppt_boundary(d, p_start, p_end, 1e-6, config.tol);
  }
  out["ppt_boundary"] = boundary;
  return out;
}

json cmd_isospectral(std::size_t d, double p,
                     const std::optional<std::string>& emit_dir,
                     const RunConfig& config) {
  const DensityMatrix rho = werner(d, p);
  const CertifiedState counterpart = isospectral_werner(d, p);

  const Spectrum spec_w = eigh(rho.mat()).values;
  const Spectrum spec_c = eigh(counterpart.state.mat()).values;
  double max_diff = 0.0;
  for (std::size_t i = 0; i < spec_w.size(); ++i) {
    max_diff = std::max(max_diff, std::abs(spec_w[i] - spec_c[i]));
  }

  const CriterionVerdict ppt_w = ppt(rho, config.tol);
  const CriterionVerdict ppt_c = ppt(counterpart.state, config.tol);
  const double reassembly_error = frobenius_distance(
      assemble(counterpart.ensemble, config.tol).mat(),
      counterpart.state.mat());

  json out = report_skeleton("isospectral", config);
  out["d"] = d;
  out["p"] = p;
  out["werner_spectrum"] = spectrum_json(spec_w);
  out["counterpart_spectrum"] = spectrum_json(spec_c);
  out["max_spectrum_difference"] = max_diff;
  json reductions;
  for (const char* name : {"werner", "counterpart"}) {
    const DensityMatrix& state =
        std::string(name) == "werner" ? rho : counterpart.state;
    reductions[name] = json{
        {"A", reduction_distance_from_chaotic(
                  reduced_state(state, Subsystem::A))},
        {"B", reduction_distance_from_chaotic(
                  reduced_state(state, Subsystem::B))}};
  }
  out["reduction_distance_from_chaotic"] = std::move(reductions);
  out["werner_ppt"] = verdict_to_json(ppt_w);
  out["counterpart_ppt"] = verdict_to_json(ppt_c);
  out["certificate"] = ensemble_to_json(counterpart.ensemble);
  out["certificate_reassembly_error"] = reassembly_error;
  json warnings = json::array();
  // The construction guarantees maximally mixed reductions for the
  // entangled comparator; flag any deviation instead of failing.
  if (out["reduction_distance_from_chaotic"]["werner"]["A"].get<double>() >
          1e-9 ||
      out["reduction_distance_from_chaotic"]["werner"]["B"].get<double>() >
          1e-9) {
    warnings.push_back(
        "comparator reductions deviate from the maximally mixed state");
  }
  out["warnings"] = std::move(warnings);

  if (emit_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(*emit_dir);
    std::ostringstream stem;
    stem << "werner_d" << d << "_p" << p;
    const std::string base = (fs::path(*emit_dir) / stem.str()).string();
    write_state_file(base + ".json", rho);
    write_state_file(base + "_isospectral.json", counterpart.state,
                     &counterpart.ensemble);
    out["emitted"] =
        json::array({base + ".json", base + "_isospectral.json"});
  } else {
    out["emitted"] = json::array();
  }
  return out;
}

json cmd_sample(SampleEnsemble ensemble, BipartiteDims dims,
                std::size_t trials, std::size_t rank, std::size_t terms,
                const RunConfig& config) {
  validate_dims(dims);
  if (trials == 0) {
    throw ParameterRangeError("sample: trials must be positive");
  }
  if (rank == 0) rank = dims.total();
  if (rank > dims.total()) {
    throw ParameterRangeError("sample: rank must not exceed dA*dB");
  }
  if (terms == 0) {
    throw ParameterRangeError("sample: terms must be positive");
  }

  std::map<std::string, std::size_t> holds_count;
  std::map<std::string, double> min_margin;
  std::vector<std::string> violations;
  std::size_t full_rank_trials = 0;
  std::size_t schmidt_rank_ge2 = 0;
  std::size_t negative_sign_at_2 = 0;
  std::size_t pure_iff_mismatches = 0;

  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_stream(config.seed, t);
    std::optional<DensityMatrix> rho;
    std::optional<SeparableEnsemble> certificate;
    if (ensemble == SampleEnsemble::Pure) {
      const PureState psi = random_pure(dims, trial_seed);
      rho = to_density(psi, config.tol);
      const Spectrum schmidt = schmidt_spectrum(psi);
      const bool entangled = schmidt.rank(config.tol.rank) >= 2;
      const SignResult sign = positivity_sign(
          *rho, AlphaValue::finite(2.0), Subsystem::A, config.tol);
      if (entangled) ++schmidt_rank_ge2;
      if (sign.sign == Sign::Negative) ++negative_sign_at_2;
      if (entangled != (sign.sign == Sign::Negative)) ++pure_iff_mismatches;
    } else if (ensemble == SampleEnsemble::Mixed) {
      rho = random_mixed(dims, rank, trial_seed);
    } else {
      CertifiedState cs = random_separable(dims, terms, trial_seed);
      rho = std::move(cs.state);
      certificate = std::move(cs.ensemble);
    }

    const ChainReport report =
        chain_report(*rho, certificate ? &*certificate : nullptr,
                     config.alpha_grid, config.tol);
    for (const CriterionVerdict& v : report.verdicts) {
      const std::string name = criterion_name(v.criterion);
      if (v.holds) ++holds_count[name];
      const auto [it, inserted] = min_margin.try_emplace(name, v.margin);
      if (!inserted) it->second = std::min(it->second, v.margin);
      holds_count.try_emplace(name, 0);
    }
    for (const std::string& violation : report.consistency_violations) {
      violations.push_back("trial " + std::to_string(t) + ": " + violation);
    }
    if (eigh(rho->mat()).values.min() > config.tol.rank) ++full_rank_trials;
  }

  json aggregate;
  aggregate["holds_count"] = holds_count;
  aggregate["min_margin"] = min_margin;
  aggregate["consistency_violations"] = violations;
  aggregate["full_rank_trials"] = full_rank_trials;

  json out = report_skeleton("sample", config);
  out["ensemble"] = ensemble == SampleEnsemble::Pure       ? "pure"
                    : ensemble == SampleEnsemble::Mixed    ? "mixed"
                                                           : "separable";
  out["dims"] = json::array({dims.dA, dims.dB});
  out["trials"] = trials;
  out["rank"] = ensemble == SampleEnsemble::Mixed ? json(rank) : json(nullptr);
  out["terms"] =
      ensemble == SampleEnsemble::Separable ? json(terms) : json(nullptr);
  out["aggregate"] = std::move(aggregate);
  if (ensemble == SampleEnsemble::Pure) {
    out["pure_stats"] = json{{"schmidt_rank_ge2", schmidt_rank_ge2},
                             {"negative_sign_at_alpha2", negative_sign_at_2},
                             {"iff_mismatches", pure_iff_mismatches}};
  } else {
    out["pure_stats"] = json(nullptr);
  }
  return out;
}

json cmd_entropy(const std::optional<std::string>& input_path,
                 const RunConfig& config) {
  std::optional<DensityMatrix> rho;
  std::string source;
  if (input_path) {
    rho = read_state_file(*input_path, config.tol).state;
    source = *input_path;
  } else {
    rho = monotonicity_counterexample();
    source = "counterexample";
  }
  const SweepTable sweep =
      alpha_sweep(*rho, config.alpha_grid, SweepSides::Both, config.tol);

  json out = report_skeleton("entropy", config);
  out["source"] = source;
  out["dims"] = json::array({rho->dims().dA, rho->dims().dB});
  out["sweep"] = sweep_to_json(sweep);
  return out;
}

namespace {

// 17 significant digits round-trip exactly to the same double.
std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const json& v) {
  std::string text;
  if (v.is_null()) {
    text = "";
  } else if (v.is_boolean()) {
    text = v.get<bool>() ? "true" : "false";
  } else if (v.is_number_float()) {
    text = fmt17(v.get<double>());
  } else if (v.is_number()) {
    text = v.dump();
  } else if (v.is_string()) {
    text = v.get<std::string>();
  } else {
    text = v.dump();
  }
  if (text.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : text) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }
  return text;
}

void csv_table(std::ostringstream& out, const std::vector<std::string>& cols,
               const json& rows) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i == 0 ? "" : ",") << cols[i];
  }
  out << "\n";
  for (const json& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i == 0 ? "" : ",") << csv_field(row.at(cols[i]));
    }
    out << "\n";
  }
}

void csv_key_values(std::ostringstream& out, const json& pairs) {
  out << "field,value\n";
  for (const auto& [key, value] : pairs.items()) {
    out << key << "," << csv_field(value) << "\n";
  }
}

const std::vector<std::string> kSweepColumns = {
    "alpha", "side", "renyi", "tsallis", "conditional_renyi",
    "conditional_tsallis", "sign", "sign_margin", "proven_range", "note"};

}  // namespace

std::string render_csv(const json& report) {
  std::ostringstream out;
  const std::string command = report.at("command").get<std::string>();
  if (command == "analyze") {
    csv_table(out, {"criterion", "holds", "margin", "witness"},
              report.at("chain").at("verdicts"));
    out << "\n";
    csv_table(out, kSweepColumns, report.at("sweep").at("rows"));
  } else if (command == "werner") {
    csv_table(out,
              {"p", "ppt_margin", "ppt_holds", "reduction_A_margin",
               "reduction_A_holds", "reduction_B_margin", "reduction_B_holds",
               "rank_margin", "rank_holds", "majorization_A_margin",
               "majorization_A_holds", "majorization_B_margin",
               "majorization_B_holds", "entropic_min_margin",
               "entropic_holds"},
              report.at("rows"));
    out << "\nppt_boundary\n"
        << csv_field(report.at("ppt_boundary")) << "\n";
  } else if (command == "isospectral") {
    out << "index,werner_eigenvalue,counterpart_eigenvalue\n";
    const json& spec_w = report.at("werner_spectrum");
    const json& spec_c = report.at("counterpart_spectrum");
    for (std::size_t i = 0; i < spec_w.size(); ++i) {
      out << i << "," << csv_field(spec_w[i]) << "," << csv_field(spec_c[i])
          << "\n";
    }
    out << "\n";
    const json& red = report.at("reduction_distance_from_chaotic");
    csv_key_values(
        out,
        json{{"max_spectrum_difference", report.at("max_spectrum_difference")},
             {"werner_reduction_distance_A", red.at("werner").at("A")},
             {"werner_reduction_distance_B", red.at("werner").at("B")},
             {"counterpart_reduction_distance_A",
              red.at("counterpart").at("A")},
             {"counterpart_reduction_distance_B",
              red.at("counterpart").at("B")},
             {"werner_ppt_margin", report.at("werner_ppt").at("margin")},
             {"werner_ppt_holds", report.at("werner_ppt").at("holds")},
             {"counterpart_ppt_margin",
              report.at("counterpart_ppt").at("margin")},
             {"counterpart_ppt_holds",
              report.at("counterpart_ppt").at("holds")},
             {"certificate_reassembly_error",
              report.at("certificate_reassembly_error")}});
  } else if (command == "sample") {
    const json& aggregate = report.at("aggregate");
    out << "criterion,holds_count,min_margin\n";
    for (const auto& [name, count] : aggregate.at("holds_count").items()) {
      out << name << "," << csv_field(count) << ","
          << csv_field(aggregate.at("min_margin").at(name)) << "\n";
    }
    out << "\n";
    json summary{{"trials", report.at("trials")},
                 {"full_rank_trials", aggregate.at("full_rank_trials")},
                 {"consistency_violations",
                  aggregate.at("consistency_violations").size()}};
    if (!report.at("pure_stats").is_null()) {
      for (const auto& [key, value] : report.at("pure_stats").items()) {
        summary[key] = value;
      }
    }
    csv_key_values(out, summary);
  } else if (command == "entropy") {
    csv_table(out, kSweepColumns, report.at("sweep").at("rows"));
  } else {
    throw Error("render_csv: unknown command '" + command + "'");
  }
  return out.str();
}

std::string render_output(const json& report, const RunConfig& config) {
  if (config.format == OutputFormat::Csv) {
    return render_csv(report);
  }
  return report.dump(2) + "\n";
}

}  // namespace entrocrit
