#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfsa/permutation.hpp"
#include "pfsa/rng.hpp"

namespace pfsa {

// Interpreter-session transcripts in which variables are shuffled by tuple
// assignments and print statements reveal single variables:
//
//   >>> a = 1
//   >>> b = 2
//   >>> c = 3
//   >>> a, b = b, a
//   >>> print('a', a)
//   a 2
//
// Grammar (every line ends in '\n', no trailing whitespace):
//   init     ">>> <v> = <int>"
//   swap     ">>> <v1>, <v2> = <v2>, <v1>"
//   full     ">>> v_0, ..., v_{n-1} = v_{p(0)}, ..., v_{p(n-1)}"
//   reveal   ">>> print('<v>', <v>)" followed by the output line "<v> <int>"
// Variables are the letters a, b, c, ... in order; the generator initializes
// variable k to k + 1.

enum class CommandKind { elementary_swap, full_permutation };

std::string to_string(CommandKind kind);
// Accepts "elementary_swap"/"swap" and "full_permutation"/"full".
CommandKind parse_command_kind(std::string_view name);

struct TraceConfig {
  std::size_t n_vars = 3;
  std::size_t n_commands = 1;
  std::size_t reveal_spacing = 1;
  CommandKind command_kind = CommandKind::elementary_swap;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument unless 2 <= n_vars <= 26, n_commands >= 1 and
// reveal_spacing >= 1.
void validate(const TraceConfig& config);

enum class EventKind { init, command, reveal };

struct TraceEvent {
  EventKind kind = EventKind::init;
  std::size_t var = 0;       // init and reveal
  std::int64_t value = 0;    // init and reveal
  std::optional<Permutation> permutation;  // command only

  static TraceEvent init(std::size_t var, std::int64_t value);
  static TraceEvent command(Permutation p);
  static TraceEvent reveal(std::size_t var, std::int64_t value);

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

// Half-open character range [start, end) into Trace::text.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct Trace {
  TraceConfig config;
  std::vector<TraceEvent> events;
  std::string text;
  std::vector<Span> reveal_spans;  // one per reveal, covering the printed value
  std::vector<std::int64_t> final_state;
};

// Name of variable k: "a" for 0 up to "z" for 25.
std::string variable_name(std::size_t k);

// n_vars init events, then n_commands commands with a reveal of one uniformly
// chosen variable after every reveal_spacing-th command. Elementary swaps pick
// an unordered pair uniformly; full permutations are uniform over S_n minus
// the identity.
Trace generate(const TraceConfig& config, Rng& rng);

// Same, seeded from config.seed.
Trace generate(const TraceConfig& config);

struct RenderedText {
  std::string text;
  std::vector<Span> reveal_spans;
};

// Commands of elementary_swap traces that are transpositions use the swap
// form; everything else uses the full form.
RenderedText render(const TraceConfig& config, std::span<const TraceEvent> events);
std::string render(const Trace& trace);

// Inverse of render. Recovers n_vars, n_commands and the command kind;
// reveal_spacing is taken as the number of commands before the first reveal
// that follows a command (1 if there is none) and seed is 0. Throws
// ParseError with a 1-based line and column on malformed lines, unknown
// variables and non-bijective assignments.
Trace parse(std::string_view text);

struct RevealCheck {
  std::size_t event_index = 0;
  std::size_t var = 0;
  std::int64_t printed = 0;
  std::int64_t actual = 0;
};

struct ExecutionReport {
  std::vector<std::int64_t> final_state;
  std::size_t reveals_checked = 0;
  std::vector<RevealCheck> disagreements;
};

// Simulates the variables and compares every printed value with the
// simulated one. Disagreements are reported, not thrown; structurally
// invalid events (unknown variable, wrong permutation size) throw
// std::invalid_argument.
ExecutionReport execute(std::span<const TraceEvent> events);

}  // namespace pfsa
