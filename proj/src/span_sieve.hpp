#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "fp.hpp"

namespace ropit {

// Incremental reduced-row-echelon span: rows keep distinct pivot columns and
// are fully reduced against each other, so membership is one reduction pass.
class SpanSieve {
public:
  SpanSieve(u64 p, std::size_t len) : f_(p), len_(len) {}

  std::size_t rank() const { return rows_.size(); }

  bool contains(std::vector<u64> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
  }

  // True when v was outside the span (v is then absorbed).
  bool insert(std::vector<u64> v) {
    reduce(v);
    std::size_t pivot = 0;
    while (pivot < len_ && v[pivot] == 0) ++pivot;
    if (pivot == len_) return false;
    u64 inv = f_.inv(v[pivot]);
    for (auto& x : v) x = f_.mul(x, inv);
    for (auto& [q, row] : rows_) {
      u64 c = row[pivot];
      if (c == 0) continue;
      for (std::size_t k = pivot; k < len_; ++k) row[k] = f_.sub(row[k], f_.mul(c, v[k]));
    }
    rows_.emplace_back(pivot, std::move(v));
    return true;
  }

private:
  void reduce(std::vector<u64>& v) const {
    for (const auto& [pivot, row] : rows_) {
      u64 c = v[pivot];
      if (c == 0) continue;
      for (std::size_t k = 0; k < len_; ++k) v[k] = f_.sub(v[k], f_.mul(c, row[k]));
    }
  }

  Fp f_;
  std::size_t len_;
  std::vector<std::pair<std::size_t, std::vector<u64>>> rows_;
};

}  // namespace ropit
