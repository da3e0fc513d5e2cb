#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pfsa/rng.hpp"

namespace pfsa {

// An element of the symmetric group S_n in zero-based one-line notation.
//
// Action convention: permutations act on positions. Applying p to a list x
// yields y with y[i] = x[p[i]], i.e. position i receives the content of
// position p[i]. This is the semantics of the tuple assignment
// `v_0, ..., v_{n-1} = v_{p(0)}, ..., v_{p(n-1)}` and of left-multiplying a
// column vector (or the rows of a matrix) by to_matrix(p).
class Permutation {
 public:
  // Throws std::invalid_argument unless mapping is a bijection on [0, n).
  explicit Permutation(std::vector<std::size_t> mapping);

  static Permutation identity(std::size_t n);

  // Swaps positions i and j; throws if i == j or either is out of range.
  static Permutation transposition(std::size_t n, std::size_t i, std::size_t j);

  std::size_t size() const { return mapping_.size(); }
  std::size_t operator[](std::size_t i) const { return mapping_[i]; }
  const std::vector<std::size_t>& mapping() const { return mapping_; }

  Permutation inverse() const;
  bool is_identity() const;

  template <class T>
  std::vector<T> apply(std::span<const T> items) const {
    check_apply_size(items.size());
    std::vector<T> out;
    out.reserve(items.size());
    for (std::size_t i = 0; i < mapping_.size(); ++i) {
      out.push_back(items[mapping_[i]]);
    }
    return out;
  }

  template <class T>
  std::vector<T> apply(const std::vector<T>& items) const {
    return apply(std::span<const T>(items));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  void check_apply_size(std::size_t n) const;

  std::vector<std::size_t> mapping_;
};

// The permutation that applies `first` and then `second`:
// compose(f, s).apply(x) == s.apply(f.apply(x)), so compose(f, s)[i] = f[s[i]].
// Throws std::invalid_argument on size mismatch.
Permutation compose(const Permutation& first, const Permutation& second);

// 0/1 matrix M with M(i, p[i]) = 1, so M * x == p.apply(x) and
// to_matrix(compose(p, q)) == to_matrix(q) * to_matrix(p).
Eigen::MatrixXd to_matrix(const Permutation& p);

// Uniform over S_n by Fisher-Yates on the library Rng.
Permutation sample_uniform(std::size_t n, Rng& rng);

// Comma-separated one-line notation, e.g. "2,0,1".
std::string to_string(const Permutation& p);
Permutation parse_permutation(std::string_view text);

// Cycle notation for display only, e.g. "(0 2 1)"; identity prints "()".
std::string cycle_notation(const Permutation& p);

}  // namespace pfsa
