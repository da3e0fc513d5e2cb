#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pfsa/repl_trace.hpp"

namespace pfsa {

// One JSON object per line with fields, in this order: text, n_vars,
// n_commands, reveal_spacing, command_kind, seed, reveal_spans ([start, end)
// character offsets into text), final_state.
std::string dataset_record(const Trace& trace);

// Writes one record per trace; returns the number written. Throws
// std::runtime_error if the stream fails.
std::size_t export_dataset(std::span<const Trace> traces, std::ostream& sink);

// Config for the index-th trace of a batch: seed = derive_seed(root, index).
TraceConfig indexed_config(TraceConfig base, std::uint64_t root_seed, std::uint64_t index);

struct CurriculumStage {
  std::size_t trace_length = 0;   // L, commands per trace
  std::size_t reveal_spacing = 0; // S
  std::vector<TraceConfig> configs;
};

// Four stages of full permutations over 5 variables with
// (L, S) = (8, 1), (16, 2), (32, 4), (64, 8), stage_samples traces each.
// Trace seeds are derive_seed(root_seed, i) for a running index i across all
// stages. Throws std::invalid_argument when stage_samples is 0.
std::vector<CurriculumStage> curriculum(std::size_t stage_samples, std::uint64_t root_seed = 0);

}  // namespace pfsa
