#include "pfsa/dataset.hpp"

#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace pfsa {

std::string dataset_record(const Trace& trace) {
  nlohmann::ordered_json record;
  record["text"] = trace.text;
  record["n_vars"] = trace.config.n_vars;
  record["n_commands"] = trace.config.n_commands;
  record["reveal_spacing"] = trace.config.reveal_spacing;
  record["command_kind"] = to_string(trace.config.command_kind);
  record["seed"] = trace.config.seed;
  nlohmann::ordered_json spans = nlohmann::ordered_json::array();
  for (const Span& span : trace.reveal_spans) {
    spans.push_back({span.start, span.end});
  }
  record["reveal_spans"] = std::move(spans);
  record["final_state"] = trace.final_state;
  return record.dump();
}

std::size_t export_dataset(std::span<const Trace> traces, std::ostream& sink) {
  std::size_t written = 0;
  for (const Trace& trace : traces) {
    sink << dataset_record(trace) << '\n';
    if (!sink) {
      throw std::runtime_error("dataset sink write failed");
    }
    ++written;
  }
  sink.flush();
  if (!sink) {
    throw std::runtime_error("dataset sink write failed");
  }
  return written;
}

TraceConfig indexed_config(TraceConfig base, std::uint64_t root_seed, std::uint64_t index) {
  base.seed = derive_seed(root_seed, index);
  return base;
}

std::vector<CurriculumStage> curriculum(std::size_t stage_samples, std::uint64_t root_seed) {
  if (stage_samples == 0) {
    throw std::invalid_argument("curriculum: stage_samples must be at least 1");
  }
  constexpr std::size_t kVars = 5;
  constexpr std::size_t kSchedule[4][2] = {{8, 1}, {16, 2}, {32, 4}, {64, 8}};
  std::vector<CurriculumStage> stages;
  std::uint64_t index = 0;
  for (const auto& [length, spacing] : kSchedule) {
    CurriculumStage stage{length, spacing, {}};
    stage.configs.reserve(stage_samples);
    const TraceConfig base{kVars, length, spacing, CommandKind::full_permutation, 0};
    for (std::size_t k = 0; k < stage_samples; ++k) {
      stage.configs.push_back(indexed_config(base, root_seed, index++));
    }
    stages.push_back(std::move(stage));
  }
  return stages;
}

}  // namespace pfsa
