// Command-line front end: state analysis, Werner sweeps, isospectral
// demonstrations, sampling campaigns and entropy tables. Verdicts are data;
// only I/O and validation failures produce nonzero exit codes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "entrocrit/cli_commands.hpp"
#include "entrocrit/errors.hpp"
#include "entrocrit/version.hpp"

namespace {

using namespace entrocrit;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ENTROCRIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParameterRangeError(
          "ENTROCRIT_SEED must be an unsigned 64-bit integer");
    }
  }
  return 0;
}

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string alphas;
  std::string format = "json";
  std::string out;
  double tau_psd = Tolerances{}.psd;
  double tau_rank = Tolerances{}.rank;
  double tau_major = Tolerances{}.major;
};

void add_common(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--seed", opts->seed,
                  "Master seed (default: ENTROCRIT_SEED or 0)");
  cmd->add_option("--alphas", opts->alphas,
                  "Comma list of entropic parameters; 'inf' allowed");
  cmd->add_option("--format", opts->format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts->out, "Write the report to a file");
  cmd->add_option("--tau-psd", opts->tau_psd, "Positivity slack");
  cmd->add_option("--tau-rank", opts->tau_rank, "Rank threshold");
  cmd->add_option("--tau-major", opts->tau_major, "Majorization slack");
}

RunConfig resolve(const CommonOptions& opts) {
  RunConfig config;
  config.seed = opts.seed;
  if (!opts.alphas.empty()) config.alpha_grid = parse_alpha_list(opts.alphas);
  config.format =
      opts.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  if (!opts.out.empty()) config.out_path = opts.out;
  config.tol.psd = opts.tau_psd;
  config.tol.rank = opts.tau_rank;
  config.tol.major = opts.tau_major;
  return config;
}

void emit(const json& report, const RunConfig& config) {
  const std::string text = render_output(report, config);
  if (config.out_path) {
    std::ofstream out(*config.out_path);
    if (!out) {
      throw ValidationError("cannot write output file: " + *config.out_path);
    }
    out << text;
  } else {
    std::cout << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral entanglement criteria for bipartite states"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOptions common;
  try {
    common.seed = default_seed();
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }

  auto* analyze = app.add_subcommand(
      "analyze", "Run every criterion and the alpha sweep on a state file");
  std::string analyze_input;
  analyze->add_option("--input", analyze_input, "State JSON file")
      ->required();
  add_common(analyze, &common);

  auto* werner_cmd =
      app.add_subcommand("werner", "Criterion margins across a Werner sweep");
  std::size_t werner_d = 0;
  double p_start = 0.0, p_end = 1.0, p_step = 0.1;
  werner_cmd->add_option("--d", werner_d, "Local dimension")->required();
  werner_cmd->add_option("--p-start", p_start, "Sweep start (default 0)");
  werner_cmd->add_option("--p-end", p_end, "Sweep end (default 1)");
  werner_cmd->add_option("--p-step", p_step, "Sweep step (default 0.1)");
  add_common(werner_cmd, &common);

  auto* iso = app.add_subcommand(
      "isospectral",
      "Compare a Werner state with its separable isospectral counterpart");
  std::size_t iso_d = 0;
  double iso_p = 0.0;
  std::string emit_dir;
  iso->add_option("--d", iso_d, "Odd local dimension")->required();
  iso->add_option("--p", iso_p, "Werner parameter")->required();
  iso->add_option("--emit-states", emit_dir,
                  "Directory to write both states as state JSON");
  add_common(iso, &common);

  auto* sample = app.add_subcommand(
      "sample", "Seeded chain-report campaign over a random ensemble");
  std::string ensemble_name;
  std::string dims_text;
  std::size_t trials = 0;
  std::size_t rank = 0;
  std::size_t terms = 3;
  sample->add_option("--ensemble", ensemble_name, "pure, mixed or separable")
      ->required()
      ->check(CLI::IsMember({"pure", "mixed", "separable"}));
  sample->add_option("--dims", dims_text, "Subsystem dimensions dA,dB")
      ->required();
  sample->add_option("--trials", trials, "Number of trials")->required();
  sample->add_option("--rank", rank, "Rank for mixed sampling (0 = full)");
  sample->add_option("--terms", terms,
                     "Product terms for separable sampling (default 3)");
  add_common(sample, &common);

  auto* entropy_cmd = app.add_subcommand(
      "entropy", "Entropy table over the alpha grid for a state");
  std::string entropy_input;
  bool use_counterexample = false;
  entropy_cmd->add_option("--input", entropy_input, "State JSON file");
  entropy_cmd->add_flag("--counterexample", use_counterexample,
                        "Use the built-in monotonicity counterexample");
  add_common(entropy_cmd, &common);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig config = resolve(common);
    if (analyze->parsed()) {
      emit(cmd_analyze(analyze_input, config), config);
    } else if (werner_cmd->parsed()) {
      emit(cmd_werner(werner_d, p_start, p_end, p_step, config), config);
    } else if (iso->parsed()) {
      std::optional<std::string> dir;
      if (!emit_dir.empty()) dir = emit_dir;
      emit(cmd_isospectral(iso_d, iso_p, dir, config), config);
    } else if (sample->parsed()) {
      const SampleEnsemble kind = ensemble_name == "pure"
                                      ? SampleEnsemble::Pure
                                  : ensemble_name == "mixed"
                                      ? SampleEnsemble::Mixed
                                      : SampleEnsemble::Separable;
      emit(cmd_sample(kind, parse_dims(dims_text), trials, rank, terms,
                      config),
           config);
    } else if (entropy_cmd->parsed()) {
      if (use_counterexample == !entropy_input.empty()) {
        throw ParameterRangeError(
            "entropy: pass exactly one of --input or --counterexample");
      }
      std::optional<std::string> input;
      if (!entropy_input.empty()) input = entropy_input;
      emit(cmd_entropy(input, config), config);
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
