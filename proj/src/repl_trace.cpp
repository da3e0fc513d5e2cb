#include "pfsa/repl_trace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <utility>

#include "pfsa/errors.hpp"

namespace pfsa {

namespace {

constexpr std::string_view kPrompt = ">>> ";
constexpr std::size_t kMaxVars = 26;

std::optional<std::pair<std::size_t, std::size_t>> as_transposition(const Permutation& p) {
  std::optional<std::size_t> first;
  std::optional<std::size_t> second;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == i) {
      continue;
    }
    if (!first) {
      first = i;
    } else if (!second) {
      second = i;
    } else {
      return std::nullopt;
    }
  }
  if (!second || p[*first] != *second) {
    return std::nullopt;
  }
  return std::make_pair(*first, *second);
}

Permutation sample_command(const TraceConfig& config, Rng& rng) {
  const std::size_t n = config.n_vars;
  if (config.command_kind == CommandKind::elementary_swap) {
    std::size_t i = rng.uniform_index(n);
    std::size_t j = rng.uniform_index(n - 1);
    if (j >= i) {
      ++j;
    }
    return Permutation::transposition(n, std::min(i, j), std::max(i, j));
  }
  for (;;) {
    Permutation p = sample_uniform(n, rng);
    if (!p.is_identity()) {
      return p;
    }
  }
}

void append_tuple(std::string& out, const std::vector<std::size_t>& vars) {
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (k > 0) {
      out += ", ";
    }
    out += variable_name(vars[k]);
  }
}

// Line-oriented cursor used by the parser; columns are 1-based.
class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  std::size_t column() const { return pos_ + 1; }
  bool done() const { return pos_ == line_.size(); }

  [[noreturn]] void fail(const std::string& what) const { fail_at(column(), what); }
  [[noreturn]] void fail_at(std::size_t column, const std::string& what) const {
    throw ParseError(line_no_, column, what);
  }

  void expect(std::string_view literal) {
    if (line_.substr(pos_, literal.size()) != literal) {
      fail("expected '" + std::string(literal) + "'");
    }
    pos_ += literal.size();
  }

  bool accept(std::string_view literal) {
    if (line_.substr(pos_, literal.size()) == literal) {
      pos_ += literal.size();
      return true;
    }
    return false;
  }

  bool at_letter() const { return pos_ < line_.size() && line_[pos_] >= 'a' && line_[pos_] <= 'z'; }

  // A single-letter variable name followed by a non-identifier character.
  std::size_t name() {
    if (!at_letter()) {
      fail("expected a variable name");
    }
    const std::size_t index = static_cast<std::size_t>(line_[pos_] - 'a');
    ++pos_;
    if (pos_ < line_.size() && (std::isalnum(static_cast<unsigned char>(line_[pos_])) ||
                                line_[pos_] == '_')) {
      fail("variable names are single lowercase letters");
    }
    return index;
  }

  std::int64_t integer() {
    std::int64_t value = 0;
    const char* begin = line_.data() + pos_;
    const char* end = line_.data() + line_.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) {
      fail("expected an integer");
    }
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  void end() {
    if (!done()) {
      fail("unexpected trailing characters");
    }
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

}  // namespace

std::string to_string(CommandKind kind) {
  return kind == CommandKind::elementary_swap ? "elementary_swap" : "full_permutation";
}

CommandKind parse_command_kind(std::string_view name) {
  if (name == "elementary_swap" || name == "swap") {
    return CommandKind::elementary_swap;
  }
  if (name == "full_permutation" || name == "full") {
    return CommandKind::full_permutation;
  }
  throw std::invalid_argument("unknown command kind '" + std::string(name) + "'");
}

void validate(const TraceConfig& config) {
  if (config.n_vars < 2 || config.n_vars > kMaxVars) {
    throw std::invalid_argument("n_vars must be between 2 and 26");
  }
  if (config.n_commands < 1) {
    throw std::invalid_argument("n_commands must be at least 1");
  }
  if (config.reveal_spacing < 1) {
    throw std::invalid_argument("reveal_spacing must be at least 1");
  }
}

TraceEvent TraceEvent::init(std::size_t var, std::int64_t value) {
  return TraceEvent{EventKind::init, var, value, std::nullopt};
}

TraceEvent TraceEvent::command(Permutation p) {
  return TraceEvent{EventKind::command, 0, 0, std::move(p)};
}

TraceEvent TraceEvent::reveal(std::size_t var, std::int64_t value) {
  return TraceEvent{EventKind::reveal, var, value, std::nullopt};
}

std::string variable_name(std::size_t k) {
  if (k >= kMaxVars) {
    throw std::out_of_range("variable index beyond 'z'");
  }
  return std::string(1, static_cast<char>('a' + k));
}

Trace generate(const TraceConfig& config, Rng& rng) {
  validate(config);
  Trace trace;
  trace.config = config;
  std::vector<std::int64_t> values(config.n_vars);
  for (std::size_t k = 0; k < config.n_vars; ++k) {
    values[k] = static_cast<std::int64_t>(k + 1);
    trace.events.push_back(TraceEvent::init(k, values[k]));
  }
  for (std::size_t c = 1; c <= config.n_commands; ++c) {
    Permutation p = sample_command(config, rng);
    values = p.apply(values);
    trace.events.push_back(TraceEvent::command(std::move(p)));
    if (c % config.reveal_spacing == 0) {
      const std::size_t var = rng.uniform_index(config.n_vars);
      trace.events.push_back(TraceEvent::reveal(var, values[var]));
    }
  }
  trace.final_state = std::move(values);
  RenderedText rendered = render(config, trace.events);
  trace.text = std::move(rendered.text);
  trace.reveal_spans = std::move(rendered.reveal_spans);
  return trace;
}

Trace generate(const TraceConfig& config) {
  Rng rng(config.seed);
  return generate(config, rng);
}

RenderedText render(const TraceConfig& config, std::span<const TraceEvent> events) {
  RenderedText out;
  std::string& text = out.text;
  for (const TraceEvent& e : events) {
    switch (e.kind) {
      case EventKind::init:
        text += kPrompt;
        text += variable_name(e.var) + " = " + std::to_string(e.value) + '\n';
        break;
      case EventKind::command: {
        if (!e.permutation) {
          throw std::invalid_argument("render: command event without a permutation");
        }
        const Permutation& p = *e.permutation;
        std::vector<std::size_t> lhs;
        std::vector<std::size_t> rhs;
        const auto swap = as_transposition(p);
        if (config.command_kind == CommandKind::elementary_swap && swap) {
          lhs = {swap->first, swap->second};
          rhs = {swap->second, swap->first};
        } else {
          for (std::size_t i = 0; i < p.size(); ++i) {
            lhs.push_back(i);
            rhs.push_back(p[i]);
          }
        }
        text += kPrompt;
        append_tuple(text, lhs);
        text += " = ";
        append_tuple(text, rhs);
        text += '\n';
        break;
      }
      case EventKind::reveal: {
        const std::string name = variable_name(e.var);
        text += kPrompt;
        text += "print('" + name + "', " + name + ")\n";
        text += name + ' ';
        const std::string value = std::to_string(e.value);
        out.reveal_spans.push_back(Span{text.size(), text.size() + value.size()});
        text += value + '\n';
        break;
      }
    }
  }
  return out;
}

std::string render(const Trace& trace) { return render(trace.config, trace.events).text; }

Trace parse(std::string_view text) {
  Trace trace;
  const auto lines = split_lines(text);
  std::size_t n_vars = 0;
  std::size_t commands = 0;
  bool saw_full_form = false;
  std::optional<std::size_t> first_spacing;

  auto check_known = [&](const LineCursor& cur, std::size_t var) {
    if (var >= n_vars) {
      cur.fail("unknown variable '" + variable_name(var) + "'");
    }
  };

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    LineCursor cur(lines[li], line_no);
    cur.expect(kPrompt);

    if (cur.accept("print('")) {
      const std::size_t var = cur.name();
      check_known(cur, var);
      cur.expect("', ");
      const std::size_t again = cur.name();
      if (again != var) {
        cur.fail("print must name and show the same variable");
      }
      cur.expect(")");
      cur.end();
      if (li + 1 >= lines.size()) {
        throw ParseError(line_no + 1, 1, "missing output line after print");
      }
      ++li;
      LineCursor out(lines[li], li + 1);
      const std::size_t shown = out.name();
      if (shown != var) {
        out.fail("output line names a different variable");
      }
      out.expect(" ");
      const std::size_t value_start =
          static_cast<std::size_t>(lines[li].data() - text.data()) + out.column() - 1;
      const std::int64_t value = out.integer();
      out.end();
      trace.events.push_back(TraceEvent::reveal(var, value));
      trace.reveal_spans.push_back(
          Span{value_start, static_cast<std::size_t>(lines[li].data() - text.data()) + lines[li].size()});
      if (commands > 0 && !first_spacing) {
        first_spacing = commands;
      }
      continue;
    }

    std::vector<std::size_t> lhs_columns{cur.column()};
    std::vector<std::size_t> lhs{cur.name()};
    while (cur.accept(", ")) {
      lhs_columns.push_back(cur.column());
      lhs.push_back(cur.name());
    }
    cur.expect(" = ");

    if (lhs.size() == 1) {
      if (commands > 0) {
        cur.fail_at(lhs_columns[0], "initialization after the first command");
      }
      if (lhs[0] != n_vars) {
        cur.fail_at(lhs_columns[0], "expected initialization of '" + variable_name(n_vars) + "'");
      }
      const std::int64_t value = cur.integer();
      cur.end();
      trace.events.push_back(TraceEvent::init(lhs[0], value));
      ++n_vars;
      continue;
    }

    std::vector<std::size_t> rhs;
    std::vector<std::size_t> rhs_columns;
    do {
      rhs_columns.push_back(cur.column());
      rhs.push_back(cur.name());
    } while (cur.accept(", "));
    cur.end();
    if (rhs.size() != lhs.size()) {
      throw ParseError(line_no, rhs_columns.front(), "assignment tuples have different lengths");
    }
    std::vector<bool> target(n_vars, false);
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      const std::size_t v = lhs[k];
      if (v >= n_vars) {
        throw ParseError(line_no, lhs_columns[k], "unknown variable '" + variable_name(v) + "'");
      }
      if (target[v]) {
        throw ParseError(line_no, lhs_columns[k],
                         "variable '" + variable_name(v) + "' assigned twice");
      }
      target[v] = true;
    }
    std::vector<bool> used(n_vars, false);
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      const std::size_t v = rhs[k];
      if (v >= n_vars) {
        throw ParseError(line_no, rhs_columns[k], "unknown variable '" + variable_name(v) + "'");
      }
      if (!target[v] || used[v]) {
        throw ParseError(line_no, rhs_columns[k],
                         "assignment is not a bijection on its target variables");
      }
      used[v] = true;
    }
    std::vector<std::size_t> mapping(n_vars);
    for (std::size_t i = 0; i < n_vars; ++i) {
      mapping[i] = i;
    }
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      mapping[lhs[k]] = rhs[k];
    }
    if (lhs.size() > 2) {
      saw_full_form = true;
    }
    trace.events.push_back(TraceEvent::command(Permutation(std::move(mapping))));
    ++commands;
  }

  trace.config.n_vars = n_vars;
  trace.config.n_commands = commands;
  trace.config.reveal_spacing = first_spacing.value_or(1);
  trace.config.command_kind =
      saw_full_form ? CommandKind::full_permutation : CommandKind::elementary_swap;
  trace.config.seed = 0;

  trace.text = std::string(text);
  trace.final_state = execute(trace.events).final_state;
  return trace;
}

ExecutionReport execute(std::span<const TraceEvent> events) {
  ExecutionReport report;
  std::vector<std::int64_t>& state = report.final_state;
  for (std::size_t k = 0; k < events.size(); ++k) {
    const TraceEvent& e = events[k];
    switch (e.kind) {
      case EventKind::init:
        if (e.var != state.size()) {
          throw std::invalid_argument("execute: variables must be initialized in order");
        }
        state.push_back(e.value);
        break;
      case EventKind::command:
        if (!e.permutation || e.permutation->size() != state.size()) {
          throw std::invalid_argument("execute: command does not permute the declared variables");
        }
        state = e.permutation->apply(state);
        break;
      case EventKind::reveal:
        if (e.var >= state.size()) {
          throw std::invalid_argument("execute: reveal of an unknown variable");
        }
        ++report.reveals_checked;
        if (state[e.var] != e.value) {
          report.disagreements.push_back(RevealCheck{k, e.var, e.value, state[e.var]});
        }
        break;
    }
  }
  return report;
}

}  // namespace pfsa
