#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entrocrit/json_io.hpp"

namespace entrocrit {

enum class OutputFormat { Json, Csv };

// Resolved run configuration; embedded into every report header.
struct RunConfig {
  std::uint64_t seed = 0;
  std::vector<AlphaValue> alpha_grid = full_alpha_grid();
  Tolerances tol;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> out_path;
};

// "0,0.5,1,2,inf"; negatives as plain decimals.
std::vector<AlphaValue> parse_alpha_list(const std::string& text);
// "dA,dB"
BipartiteDims parse_dims(const std::string& text);

enum class SampleEnsemble { Pure, Mixed, Separable };

json cmd_analyze(const std::string& input_path, const RunConfig& config);
json cmd_werner(std::size_t d, double p_start, double p_end, double p_step,
                const RunConfig& config);
json cmd_isospectral(std::size_t d, double p,
                     const std::optional<std::string>& emit_dir,
                     const RunConfig& config);
// rank: eigenvalue count for mixed sampling, 0 selects full rank;
// terms: product terms for separable sampling.
json cmd_sample(SampleEnsemble ensemble, BipartiteDims dims,
                std::size_t trials, std::size_t rank, std::size_t terms,
                const RunConfig& config);
// Without an input path the built-in counterexample state is analyzed.
json cmd_entropy(const std::optional<std::string>& input_path,
                 const RunConfig& config);

std::string render_csv(const json& report);
// JSON dump or CSV according to config.format; byte-stable for identical
// invocations.
std::string render_output(const json& report, const RunConfig& config);

}  // namespace entrocrit
