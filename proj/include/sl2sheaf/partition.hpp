#pragma once

/**
 * @file partition.hpp
 * @brief Partitions, conjugation, j-rank and Jordan types from rank sequences.
 */

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl2sheaf {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts, std::optional<int> p_bound = std::nullopt)
      : parts_(std::move(parts)), bound_(p_bound) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
      if (i && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
      if (bound_ && parts_[i] > *bound_)
        throw std::invalid_argument("part " + std::to_string(parts_[i]) + " exceeds p = " + std::to_string(*bound_));
    }
  }

  /// Sort arbitrary positive parts into a partition.
  static Partition from_unsorted(std::vector<int> parts, std::optional<int> p_bound = std::nullopt) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts), p_bound);
  }
  /// [p]^count... convenience: blocks given as (size, multiplicity).
  static Partition from_blocks(const std::vector<std::pair<int, int>>& blocks, std::optional<int> p_bound = std::nullopt) {
    std::vector<int> v;
    for (auto [size, mult] : blocks)
      for (int k = 0; k < mult; ++k)
        if (size > 0) v.push_back(size);
    return from_unsorted(std::move(v), p_bound);
  }

  const std::vector<int>& parts() const { return parts_; }
  std::optional<int> p_bound() const { return bound_; }
  std::size_t length() const { return parts_.size(); }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  bool empty() const { return parts_.empty(); }
  int multiplicity(int part) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), part)); }

  /// Equality ignores the optional bound.
  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

  Partition conjugate() const {
    std::vector<int> c;
    if (!parts_.empty()) {
      c.assign(static_cast<std::size_t>(parts_.front()), 0);
      for (int x : parts_)
        for (int k = 0; k < x; ++k) ++c[static_cast<std::size_t>(k)];
    }
    return Partition(std::move(c));
  }

  /// Boxes outside the first j columns of the Young diagram.
  int j_rank(int j) const {
    if (j < 0) throw std::invalid_argument("j_rank: j must be nonnegative");
    int r = 0;
    for (int x : parts_) r += std::max(0, x - j);
    return r;
  }

  /// Exponential notation, e.g. "[4]^2[2][1]"; the empty partition is "[]".
  std::string to_string() const {
    if (parts_.empty()) return "[]";
    std::string out;
    for (std::size_t i = 0; i < parts_.size();) {
      std::size_t j = i;
      while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
      out += "[" + std::to_string(parts_[i]) + "]";
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  static Partition parse(const std::string& text) {
    auto fail = [&]() -> Partition { throw std::invalid_argument("malformed partition text: \"" + text + "\""); };
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_int = [&](int& out) {
      skip_ws();
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start || pos - start > 9) return false;
      out = std::stoi(text.substr(start, pos - start));
      return true;
    };
    skip_ws();
    if (text.compare(pos, 2, "[]") == 0) {
      pos += 2;
      skip_ws();
      if (pos != text.size()) fail();
      return Partition();
    }
    std::vector<int> parts;
    while (true) {
      skip_ws();
      if (pos == text.size()) break;
      if (text[pos] != '[') fail();
      ++pos;
      int part = 0, mult = 1;
      if (!read_int(part) || part < 1) fail();
      skip_ws();
      if (pos >= text.size() || text[pos] != ']') fail();
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        if (!read_int(mult) || mult < 1) fail();
      }
      if (!parts.empty() && part > parts.back()) fail();
      parts.insert(parts.end(), static_cast<std::size_t>(mult), part);
    }
    if (parts.empty()) fail();
    return Partition(std::move(parts));
  }

 private:
  std::vector<int> parts_;
  std::optional<int> bound_;
};

/// Jordan type of a nilpotent operator on an n-dimensional space from the
/// ranks of its powers A, A^2, ..., A^L (with A^{L+1} = 0): the conjugate of
/// the sequence of successive rank drops. Parts are bounded by L + 1.
inline Partition jordan_type_from_ranks(int n, const std::vector<int>& ranks) {
  if (n < 0) throw std::invalid_argument("jordan_type_from_ranks: negative dimension");
  std::vector<int> drops;
  int prev = n;
  for (int r : ranks) {
    if (r < 0 || r > prev) throw std::invalid_argument("rank sequence is not weakly decreasing from n");
    drops.push_back(prev - r);
    prev = r;
  }
  drops.push_back(prev);  // blocks longer than the last recorded power
  for (std::size_t i = 1; i < drops.size(); ++i)
    if (drops[i] > drops[i - 1])
      throw std::invalid_argument("rank sequence not realizable by a nilpotent operator (drops must weakly decrease)");
  std::vector<int> cols;
  for (int d : drops)
    if (d > 0) cols.push_back(d);
  const int bound = static_cast<int>(ranks.size()) + 1;
  return Partition(Partition(std::move(cols)).conjugate().parts(), bound);
}

}  // namespace sl2sheaf
