#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pgcl/integer.h"

namespace pgcl {

struct Entry64 {
  std::uint32_t row;
  std::int64_t value;
};

struct EntryBig {
  std::uint32_t row;
  BigInt value;
};

// Column-wise access to an integer matrix. Implemented by SparseIntMatrix and
// by lazily generated boundary maps that are too large to materialize.
class ColumnSource {
 public:
  virtual ~ColumnSource() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  // Replaces `out` with column j (no zeros, no duplicate rows). Returns false
  // if an entry does not fit in int64.
  virtual bool column64(std::size_t j, std::vector<Entry64>& out) const = 0;
  virtual void column_big(std::size_t j, std::vector<EntryBig>& out) const = 0;
};

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  BigInt value;
};

// Exact integer matrix in coordinate form. Entries are kept row-major,
// without zeros or duplicate coordinates.
class SparseIntMatrix final : public ColumnSource {
 public:
  SparseIntMatrix() = default;
  // Duplicate coordinates are summed; zeros are dropped.
  SparseIntMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  static SparseIntMatrix zero(std::size_t rows, std::size_t cols) { return SparseIntMatrix(rows, cols, {}); }
  static SparseIntMatrix identity(std::size_t n);
  static SparseIntMatrix from_dense(std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& row_major);
  static SparseIntMatrix from_dense(const std::vector<std::vector<BigInt>>& rows_of_cols, std::size_t cols);

  std::size_t rows() const override { return rows_; }
  std::size_t cols() const override { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Triplet>& entries() const { return entries_; }
  BigInt at(std::size_t r, std::size_t c) const;
  bool is_zero() const { return entries_.empty(); }

  std::vector<std::vector<BigInt>> to_dense() const;
  SparseIntMatrix transpose() const;
  SparseIntMatrix multiply(const SparseIntMatrix& rhs) const;
  // Same matrix with rows and columns relabeled: new_row = row_perm[old_row].
  SparseIntMatrix permuted(const std::vector<std::uint32_t>& row_perm,
                           const std::vector<std::uint32_t>& col_perm) const;

  bool column64(std::size_t j, std::vector<Entry64>& out) const override;
  void column_big(std::size_t j, std::vector<EntryBig>& out) const override;

  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Triplet> entries_;
  std::vector<std::size_t> col_start_;   // CSC view into col_entries_
  std::vector<std::size_t> col_entries_; // indices into entries_
};

// {"schema": "pgcl/1", "kind": "matrix", "rows", "cols", "entries": [[r, c, v], ...]}
// with v a JSON integer when it fits in int64 and a decimal string otherwise.
nlohmann::json matrix_to_json(const SparseIntMatrix& m);
SparseIntMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace pgcl
