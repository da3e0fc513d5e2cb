#include "pfsa/automaton_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pfsa {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr const char* kFormat = "pfsa-sr";
constexpr int kVersion = 1;

template <class T>
T require(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw std::invalid_argument(std::string("automaton document is missing '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("automaton field '") + key + "': " + e.what());
  }
}

}  // namespace

AutomatonSpec read_automaton_spec(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("automaton document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("automaton document must be a JSON object");
  }
  if (require<std::string>(doc, "format") != kFormat) {
    throw std::invalid_argument("automaton document format must be \"pfsa-sr\"");
  }
  if (require<int>(doc, "version") != kVersion) {
    throw std::invalid_argument("unsupported automaton document version");
  }

  AutomatonSpec spec;
  spec.states = require<std::size_t>(doc, "states");
  spec.initial_state = require<std::size_t>(doc, "initial_state");
  const auto m = static_cast<Eigen::Index>(spec.states);

  const json symbols = require<json>(doc, "symbols");
  if (!symbols.is_array()) {
    throw std::invalid_argument("'symbols' must be an array");
  }
  for (const json& entry : symbols) {
    Symbol sym;
    sym.name = require<std::string>(entry, "name");
    const auto rows = require<std::vector<std::vector<double>>>(entry, "transition");
    if (static_cast<Eigen::Index>(rows.size()) != m) {
      throw std::invalid_argument("symbol '" + sym.name + "': transition must have one row per state");
    }
    sym.transition.resize(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (static_cast<Eigen::Index>(row.size()) != m) {
        throw std::invalid_argument("symbol '" + sym.name + "': transition row has wrong length");
      }
      for (Eigen::Index j = 0; j < m; ++j) {
        sym.transition(i, j) = row[static_cast<std::size_t>(j)];
      }
    }
    sym.reveal.assign(spec.states, false);
    for (std::size_t state : require<std::vector<std::size_t>>(entry, "reveal")) {
      if (state >= spec.states) {
        throw std::invalid_argument("symbol '" + sym.name + "': reveal lists unknown state " +
                                    std::to_string(state));
      }
      sym.reveal[state] = true;
    }
    spec.symbols.push_back(std::move(sym));
  }
  return spec;
}

Pfsa read_automaton(std::istream& in) { return Pfsa(read_automaton_spec(in)); }

Pfsa read_automaton_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open automaton file '" + path + "'");
  }
  return read_automaton(in);
}

void write_automaton(std::ostream& out, const Pfsa& automaton) {
  ordered_json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["states"] = automaton.states();
  doc["initial_state"] = automaton.initial_state();
  ordered_json symbols = ordered_json::array();
  const auto m = static_cast<Eigen::Index>(automaton.states());
  for (const Symbol& sym : automaton.symbols()) {
    ordered_json entry;
    entry["name"] = sym.name;
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m; ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index j = 0; j < m; ++j) {
        row.push_back(sym.transition(i, j));
      }
      rows.push_back(std::move(row));
    }
    entry["transition"] = std::move(rows);
    ordered_json reveal = ordered_json::array();
    for (std::size_t i = 0; i < sym.reveal.size(); ++i) {
      if (sym.reveal[i]) {
        reveal.push_back(i);
      }
    }
    entry["reveal"] = std::move(reveal);
    symbols.push_back(std::move(entry));
  }
  doc["symbols"] = std::move(symbols);
  out << doc.dump(2) << '\n';
}

std::string automaton_to_string(const Pfsa& automaton) {
  std::ostringstream out;
  write_automaton(out, automaton);
  return out.str();
}

}  // namespace pfsa
