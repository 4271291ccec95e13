#pragma once

#include <cstddef>
#include <vector>

#include "obata/rational.hpp"

namespace obata {

/// Incrementally built basis of a subspace of Q^n, kept in reduced
/// row-echelon form at all times. RREF is canonical for a row space, so the
/// final basis does not depend on insertion order.
///
/// Rows are stored as primitive integer vectors (content 1, positive pivot);
/// semantically each row is the rational RREF row rescaled. Insertion order
/// of magnitude: O(dim * ambient) integer operations.
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  /// Returns true when v enlarged the span.
  bool insert(const Vec& v);
  bool insert(IVec v);

  bool contains(const Vec& v) const;
  bool contains(IVec v) const;

  /// i-th basis row, pivot-normalized to 1 (rational RREF row).
  Vec row(std::size_t i) const;
  /// i-th basis row as stored: primitive integer, positive pivot.
  const IVec& raw_row(std::size_t i) const { return rows_[i].v; }
  std::size_t pivot_col(std::size_t i) const { return rows_[i].pivot; }

 private:
  struct Row {
    IVec v;
    std::size_t pivot;
  };

  // Reduce v against the current rows; returns false when v reduces to zero.
  bool reduce(IVec& v) const;

  std::size_t ambient_;
  std::vector<Row> rows_;            // ordered by pivot column
  std::vector<int> pivot_row_;       // column -> row index, -1 if none
};

IVec clear_denominators(const Vec& v);

}  // namespace obata
