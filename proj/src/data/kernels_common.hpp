#pragma once

#include <cstring>
#include <functional>
#include <optional>
#include <vector>

#include "dashsnap/core/value.hpp"
#include "dashsnap/data/kernels.hpp"

namespace dashsnap::kernels::detail {

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept {
    std::size_t h = c.index() * 0x9e3779b97f4a7c15ULL;
    switch (c.index()) {
      case 1: {
        double d = std::get<double>(c);
        if (d == 0.0) d = 0.0;  // fold -0.0
        std::uint64_t bits;
        std::memcpy(&bits, &d, sizeof bits);
        h ^= std::hash<std::uint64_t>{}(bits);
        break;
      }
      case 2: h ^= std::hash<std::string>{}(std::get<std::string>(c)); break;
      case 3: h ^= std::hash<std::int64_t>{}(std::get<Date>(c).serial()); break;
      default: break;
    }
    return h;
  }
};

struct KeyHash {
  std::size_t operator()(const std::vector<Cell>& key) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& c : key) h = (h ^ CellHash{}(c)) * 0x100000001b3ULL;
    return h;
  }
};

struct KeyEq {
  bool operator()(const std::vector<Cell>& a, const std::vector<Cell>& b) const noexcept {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (compare_cells(a[i], b[i]) != 0) return false;
    }
    return true;
  }
};

struct KeyLess {
  bool operator()(const std::vector<Cell>& a, const std::vector<Cell>& b) const noexcept {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      auto c = compare_cells(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  }
};

/// Running state for one aggregate within one group. Values are folded in
/// row order so every execution path yields the same bits.
struct Accumulator {
  double sum = 0;
  double min = 0;
  double max = 0;
  std::size_t values = 0;
  std::size_t rows = 0;

  void add_row(const Cell& c, std::size_t& null_cells, Aggregate op) {
    ++rows;
    const double* v = std::get_if<double>(&c);
    if (!v) {
      if (op != Aggregate::Count) ++null_cells;
      return;
    }
    if (values == 0) {
      min = max = *v;
    } else {
      if (*v < min) min = *v;
      if (*v > max) max = *v;
    }
    sum += *v;
    ++values;
  }

  std::optional<double> result(Aggregate op) const {
    switch (op) {
      case Aggregate::Count: return static_cast<double>(rows);
      case Aggregate::Sum: return values ? std::optional<double>(sum) : std::nullopt;
      case Aggregate::Avg: return values ? std::optional<double>(sum / static_cast<double>(values)) : std::nullopt;
      case Aggregate::Min: return values ? std::optional<double>(min) : std::nullopt;
      case Aggregate::Max: return values ? std::optional<double>(max) : std::nullopt;
    }
    return std::nullopt;
  }
};

inline bool row_key(const Row& row, std::span<const std::size_t> cols, std::vector<Cell>& key) {
  key.clear();
  for (auto c : cols) {
    if (is_null(row[c])) return false;
    key.push_back(row[c]);
  }
  return true;
}

}  // namespace dashsnap::kernels::detail
