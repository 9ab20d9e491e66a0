#include "pgcl/sparse_matrix.h"

#include <algorithm>
#include <limits>
#include <map>

#include "pgcl/errors.h"

namespace pgcl {

namespace {

bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
  if (rows > std::numeric_limits<std::uint32_t>::max() || cols > std::numeric_limits<std::uint32_t>::max())
    throw InvalidArgument("matrix dimensions exceed 32-bit indices");
  for (const auto& t : entries)
    if (t.row >= rows || t.col >= cols) throw IndexOutOfRange("matrix entry outside dimensions");
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  for (auto& t : entries) {
    if (!entries_.empty() && entries_.back().row == t.row && entries_.back().col == t.col) {
      entries_.back().value += t.value;
      if (entries_.back().value == 0) entries_.pop_back();
    } else if (t.value != 0) {
      entries_.push_back(std::move(t));
    }
  }
  col_start_.assign(cols_ + 1, 0);
  for (const auto& t : entries_) ++col_start_[t.col + 1];
  for (std::size_t c = 0; c < cols_; ++c) col_start_[c + 1] += col_start_[c];
  col_entries_.resize(entries_.size());
  std::vector<std::size_t> fill(col_start_.begin(), col_start_.end() - 1);
  for (std::size_t i = 0; i < entries_.size(); ++i) col_entries_[fill[entries_[i].col]++] = i;
}

SparseIntMatrix SparseIntMatrix::identity(std::size_t n) {
  std::vector<Triplet> e;
  for (std::size_t i = 0; i < n; ++i)
    e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), BigInt(1)});
  return SparseIntMatrix(n, n, std::move(e));
}

SparseIntMatrix SparseIntMatrix::from_dense(std::size_t rows, std::size_t cols,
                                            const std::vector<std::int64_t>& row_major) {
  if (row_major.size() != rows * cols) throw InvalidArgument("dense data does not match dimensions");
  std::vector<Triplet> e;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (row_major[r * cols + c] != 0)
        e.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), BigInt(row_major[r * cols + c])});
  return SparseIntMatrix(rows, cols, std::move(e));
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<BigInt>>& dense, std::size_t cols) {
  std::vector<Triplet> e;
  for (std::size_t r = 0; r < dense.size(); ++r) {
    if (dense[r].size() != cols) throw InvalidArgument("ragged dense matrix");
    for (std::size_t c = 0; c < cols; ++c)
      if (dense[r][c] != 0) e.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), dense[r][c]});
  }
  return SparseIntMatrix(dense.size(), cols, std::move(e));
}

BigInt SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{r, c}, [](const Triplet& t, const auto& rc) {
    return std::pair<std::size_t, std::size_t>{t.row, t.col} < rc;
  });
  if (it != entries_.end() && it->row == r && it->col == c) return it->value;
  return 0;
}

std::vector<std::vector<BigInt>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<BigInt>> d(rows_, std::vector<BigInt>(cols_));
  for (const auto& t : entries_) d[t.row][t.col] = t.value;
  return d;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  std::vector<Triplet> e;
  e.reserve(entries_.size());
  for (const auto& t : entries_) e.push_back({t.col, t.row, t.value});
  return SparseIntMatrix(cols_, rows_, std::move(e));
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("matrix dimensions do not compose");
  std::vector<Triplet> e;
  std::map<std::uint32_t, BigInt> acc;
  for (std::size_t c = 0; c < rhs.cols_; ++c) {
    acc.clear();
    for (std::size_t k = rhs.col_start_[c]; k < rhs.col_start_[c + 1]; ++k) {
      const Triplet& b = rhs.entries_[rhs.col_entries_[k]];
      for (std::size_t l = col_start_[b.row]; l < col_start_[b.row + 1]; ++l) {
        const Triplet& a = entries_[col_entries_[l]];
        acc[a.row] += a.value * b.value;
      }
    }
    for (auto& [r, v] : acc)
      if (v != 0) e.push_back({r, static_cast<std::uint32_t>(c), v});
  }
  return SparseIntMatrix(rows_, rhs.cols_, std::move(e));
}

SparseIntMatrix SparseIntMatrix::permuted(const std::vector<std::uint32_t>& row_perm,
                                          const std::vector<std::uint32_t>& col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols_) throw InvalidArgument("permutation size mismatch");
  std::vector<Triplet> e;
  e.reserve(entries_.size());
  for (const auto& t : entries_) e.push_back({row_perm[t.row], col_perm[t.col], t.value});
  return SparseIntMatrix(rows_, cols_, std::move(e));
}

bool SparseIntMatrix::column64(std::size_t j, std::vector<Entry64>& out) const {
  out.clear();
  for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
    const Triplet& t = entries_[col_entries_[k]];
    if (!fits_int64(t.value)) return false;
    out.push_back({t.row, static_cast<std::int64_t>(t.value)});
  }
  return true;
}

void SparseIntMatrix::column_big(std::size_t j, std::vector<EntryBig>& out) const {
  out.clear();
  for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
    const Triplet& t = entries_[col_entries_[k]];
    out.push_back({t.row, t.value});
  }
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto &x = a.entries_[i], &y = b.entries_[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

nlohmann::json matrix_to_json(const SparseIntMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& t : m.entries()) {
    nlohmann::json v = fits_int64(t.value) ? nlohmann::json(static_cast<std::int64_t>(t.value))
                                           : nlohmann::json(t.value.str());
    entries.push_back({t.row, t.col, v});
  }
  return {{"schema", "pgcl/1"}, {"kind", "matrix"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

SparseIntMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema") != "pgcl/1") throw SchemaError("unsupported schema version");
    std::vector<Triplet> e;
    for (const auto& t : j.at("entries")) {
      if (!t.is_array() || t.size() != 3) throw SchemaError("matrix entries must be [row, col, value] triples");
      BigInt v = t[2].is_string() ? BigInt(t[2].get<std::string>()) : BigInt(t[2].get<std::int64_t>());
      e.push_back({t[0].get<std::uint32_t>(), t[1].get<std::uint32_t>(), std::move(v)});
    }
    return SparseIntMatrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(), std::move(e));
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("malformed matrix JSON: ") + ex.what());
  }
}

}  // namespace pgcl
