#include "pfsa/permutation.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace pfsa {

Permutation::Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
  if (mapping_.empty()) {
    throw std::invalid_argument("permutation must have at least one element");
  }
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t image : mapping_) {
    if (image >= mapping_.size()) {
      throw std::invalid_argument("permutation index " + std::to_string(image) +
                                  " out of range for n=" + std::to_string(mapping_.size()));
    }
    if (seen[image]) {
      throw std::invalid_argument("permutation index " + std::to_string(image) +
                                  " appears more than once");
    }
    seen[image] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("identity: n must be at least 1");
  }
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  return Permutation(std::move(mapping));
}

Permutation Permutation::transposition(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) {
    throw std::invalid_argument("transposition: index out of range");
  }
  if (i == j) {
    throw std::invalid_argument("transposition: indices must differ");
  }
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  std::swap(mapping[i], mapping[j]);
  return Permutation(std::move(mapping));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    inv[mapping_[i]] = i;
  }
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    if (mapping_[i] != i) {
      return false;
    }
  }
  return true;
}

void Permutation::check_apply_size(std::size_t n) const {
  if (n != mapping_.size()) {
    throw std::invalid_argument("apply: list has " + std::to_string(n) +
                                " items, permutation has " + std::to_string(mapping_.size()));
  }
}

Permutation compose(const Permutation& first, const Permutation& second) {
  if (first.size() != second.size()) {
    throw std::invalid_argument("compose: permutations of different sizes");
  }
  std::vector<std::size_t> mapping(first.size());
  for (std::size_t i = 0; i < mapping.size(); ++i) {
    mapping[i] = first[second[i]];
  }
  return Permutation(std::move(mapping));
}

Eigen::MatrixXd to_matrix(const Permutation& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, static_cast<Eigen::Index>(p[static_cast<std::size_t>(i)])) = 1.0;
  }
  return m;
}

Permutation sample_uniform(std::size_t n, Rng& rng) {
  if (n == 0) {
    throw std::invalid_argument("sample_uniform: n must be at least 1");
  }
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(mapping[i], mapping[rng.uniform_index(i + 1)]);
  }
  return Permutation(std::move(mapping));
}

std::string to_string(const Permutation& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += std::to_string(p[i]);
  }
  return out;
}

Permutation parse_permutation(std::string_view text) {
  std::vector<std::size_t> mapping;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view field =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw std::invalid_argument("malformed permutation field '" + std::string(field) + "'");
    }
    mapping.push_back(value);
    if (comma == std::string_view::npos) {
      break;
    }
    pos = comma + 1;
  }
  return Permutation(std::move(mapping));
}

std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<bool> visited(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (visited[start] || p[start] == start) {
      visited[start] = true;
      continue;
    }
    out += '(';
    std::size_t i = start;
    bool first = true;
    while (!visited[i]) {
      visited[i] = true;
      if (!first) {
        out += ' ';
      }
      out += std::to_string(i);
      first = false;
      i = p[i];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace pfsa
