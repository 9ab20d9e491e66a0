#include "pgcl/smith.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

#include "pgcl/errors.h"

namespace pgcl {

AbelianInvariants SmithForm::torsion() const {
  std::vector<std::uint64_t> orders;
  for (const auto& d : factors) {
    if (d <= 1) continue;
    if (d > std::numeric_limits<std::uint64_t>::max()) throw InvalidArgument("invariant factor exceeds 64 bits");
    orders.push_back(static_cast<std::uint64_t>(d));
  }
  return AbelianInvariants::from_cyclic_orders(orders);
}

// ---- dense Smith form -------------------------------------------------------

namespace {

using Dense = std::vector<std::vector<BigInt>>;

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

SmithForm dense_smith(Dense a, std::size_t rows, std::size_t cols) {
  SmithForm out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr == rows || abs_big(a[i][j]) < abs_big(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) break;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Row and column are clear; enforce divisibility of the trailing block.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    if (a[t][t] == 0) break;
    out.factors.push_back(abs_big(a[t][t]));
  }
  out.rank = out.factors.size();
  return out;
}

}  // namespace

SmithForm smith_normal_form_dense(const SparseIntMatrix& m) { return dense_smith(m.to_dense(), m.rows(), m.cols()); }

// ---- sparse reducer ---------------------------------------------------------

namespace {

template <class T>
class Reducer {
  using Ops = IntOps<T>;

 public:
  struct Vec {
    std::vector<std::uint32_t> idx;  // ascending priority index
    std::vector<T> val;
  };

  explicit Reducer(std::size_t rows) : acc_(rows), flag_(rows, 0), pivot_of_(rows, -1) {}

  // `col` is in priority-index space.
  void add(const Vec& col, ReductionStats& st) {
    ++st.columns;
    load(col);
    while (!heap_.empty()) {
      const std::uint32_t low = pop();
      if (acc_[low] == 0) continue;
      const std::int64_t slot = pivot_of_[low];
      if (slot < 0) {
        Vec v = drain(low);
        normalize(v);
        pivot_of_[low] = static_cast<std::int64_t>(pivots_.size());
        pivots_.push_back(std::move(v));
        return;
      }
      const Vec& p = pivots_[slot];
      const T a = p.val.back();
      const T b = acc_[low];
      if (Ops::mod(b, a) == 0) {
        const T q = Ops::div(b, a);
        for (std::size_t k = 0; k + 1 < p.idx.size(); ++k) {
          const std::uint32_t i = p.idx[k];
          acc_[i] = Ops::sub(acc_[i], Ops::mul(q, p.val[k]));
          push(i);
        }
        acc_[low] = 0;
        continue;
      }
      // Replace the pivot by the gcd combination and keep reducing the
      // complementary combination; the 2x2 transform is unimodular.
      ++st.gcd_merges;
      Vec v = drain(low);
      auto [g, x, y] = extended_gcd<T>(a, b);
      Vec new_pivot = combine(p, x, v, y);
      Vec rest = combine(v, Ops::div(a, g), p, Ops::neg(Ops::div(b, g)));
      pivots_[slot] = std::move(new_pivot);
      load(rest);
    }
    ++st.zero_columns;
  }

  SmithForm finish(ReductionStats& st) {
    std::vector<Vec> reduced;
    for (const Vec& p : pivots_) {
      if (p.val.back() == 1) {
        ++st.unit_pivots;
        continue;
      }
      ++st.other_pivots;
      // Project along the unit pivots: eliminate every entry sitting on a
      // unit pivot's row.
      load(p);
      Vec out;
      while (!heap_.empty()) {
        const std::uint32_t low = pop();
        if (acc_[low] == 0) continue;
        const std::int64_t slot = pivot_of_[low];
        if (slot >= 0 && pivots_[slot].val.back() == 1) {
          const Vec& u = pivots_[slot];
          const T q = acc_[low];
          for (std::size_t k = 0; k + 1 < u.idx.size(); ++k) {
            acc_[u.idx[k]] = Ops::sub(acc_[u.idx[k]], Ops::mul(q, u.val[k]));
            push(u.idx[k]);
          }
        } else {
          out.idx.push_back(low);
          out.val.push_back(acc_[low]);
        }
        acc_[low] = 0;
      }
      reduced.push_back(std::move(out));
    }

    std::vector<std::uint32_t> touched;
    for (const Vec& v : reduced) touched.insert(touched.end(), v.idx.begin(), v.idx.end());
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    st.residual_rows = touched.size();

    Dense dense(touched.size(), std::vector<BigInt>(reduced.size()));
    for (std::size_t c = 0; c < reduced.size(); ++c)
      for (std::size_t k = 0; k < reduced[c].idx.size(); ++k) {
        auto pos = std::lower_bound(touched.begin(), touched.end(), reduced[c].idx[k]) - touched.begin();
        dense[pos][c] = Ops::to_big(reduced[c].val[k]);
      }
    SmithForm tail = dense_smith(std::move(dense), touched.size(), reduced.size());
    if (tail.rank != reduced.size()) throw HomologyInconsistent("residual lattice lost rank during projection");

    SmithForm out;
    out.factors.assign(st.unit_pivots, BigInt(1));
    out.factors.insert(out.factors.end(), tail.factors.begin(), tail.factors.end());
    std::sort(out.factors.begin(), out.factors.end());
    out.rank = out.factors.size();
    return out;
  }

 private:
  void push(std::uint32_t i) {
    if (!flag_[i]) {
      flag_[i] = 1;
      heap_.push_back(i);
      std::push_heap(heap_.begin(), heap_.end());
    }
  }

  std::uint32_t pop() {
    std::pop_heap(heap_.begin(), heap_.end());
    const std::uint32_t i = heap_.back();
    heap_.pop_back();
    flag_[i] = 0;
    return i;
  }

  void load(const Vec& v) {
    for (std::size_t k = 0; k < v.idx.size(); ++k) {
      acc_[v.idx[k]] = Ops::add(acc_[v.idx[k]], v.val[k]);
      push(v.idx[k]);
    }
  }

  // Collects the accumulator (the already popped `low` plus everything still
  // queued) into a sorted vector and clears it.
  Vec drain(std::uint32_t low) {
    std::vector<std::uint32_t> rest;
    rest.reserve(heap_.size());
    while (!heap_.empty()) rest.push_back(pop());
    std::sort(rest.begin(), rest.end());
    Vec v;
    for (std::uint32_t i : rest)
      if (acc_[i] != 0) {
        v.idx.push_back(i);
        v.val.push_back(acc_[i]);
        acc_[i] = 0;
      }
    v.idx.push_back(low);
    v.val.push_back(acc_[low]);
    acc_[low] = 0;
    return v;
  }

  static void normalize(Vec& v) {
    if (v.val.back() < 0)
      for (auto& x : v.val) x = Ops::neg(x);
  }

  static Vec combine(const Vec& a, const T& ca, const Vec& b, const T& cb) {
    Vec out;
    std::size_t i = 0, j = 0;
    while (i < a.idx.size() || j < b.idx.size()) {
      std::uint32_t r;
      T v = 0;
      if (j == b.idx.size() || (i < a.idx.size() && a.idx[i] < b.idx[j])) {
        r = a.idx[i];
        v = Ops::mul(ca, a.val[i++]);
      } else if (i == a.idx.size() || b.idx[j] < a.idx[i]) {
        r = b.idx[j];
        v = Ops::mul(cb, b.val[j++]);
      } else {
        r = a.idx[i];
        v = Ops::add(Ops::mul(ca, a.val[i++]), Ops::mul(cb, b.val[j++]));
      }
      if (v != 0) {
        out.idx.push_back(r);
        out.val.push_back(v);
      }
    }
    return out;
  }

  std::vector<T> acc_;
  std::vector<char> flag_;
  std::vector<std::uint32_t> heap_;
  std::vector<std::int64_t> pivot_of_;
  std::vector<Vec> pivots_;
};

std::vector<std::uint32_t> markowitz_priority(const ColumnSource& m) {
  std::vector<std::size_t> count(m.rows(), 0);
  std::vector<EntryBig> big;
  std::vector<Entry64> small;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (m.column64(j, small)) {
      for (const auto& e : small) ++count[e.row];
    } else {
      m.column_big(j, big);
      for (const auto& e : big) ++count[e.row];
    }
  }
  std::vector<std::uint32_t> rows(m.rows());
  std::iota(rows.begin(), rows.end(), 0u);
  // Dense rows first (low priority), sparse rows last (eliminated first).
  std::stable_sort(rows.begin(), rows.end(), [&](std::uint32_t a, std::uint32_t b) { return count[a] > count[b]; });
  std::vector<std::uint32_t> priority(m.rows());
  for (std::size_t k = 0; k < rows.size(); ++k) priority[rows[k]] = static_cast<std::uint32_t>(k);
  return priority;
}

template <class T>
SmithForm run_reducer(const ColumnSource& m, const std::vector<std::uint32_t>& priority,
                      const std::vector<std::size_t>& order, ReductionStats& st) {
  Reducer<T> reducer(m.rows());
  typename Reducer<T>::Vec col;
  std::vector<Entry64> small;
  std::vector<EntryBig> big;
  auto process = [&](std::size_t j) {
    col.idx.clear();
    col.val.clear();
    if constexpr (std::is_same_v<T, std::int64_t>) {
      if (!m.column64(j, small)) throw Int64Overflow{};
      for (const auto& e : small) {
        col.idx.push_back(priority[e.row]);
        col.val.push_back(e.value);
      }
    } else {
      m.column_big(j, big);
      for (const auto& e : big) {
        col.idx.push_back(priority[e.row]);
        col.val.push_back(e.value);
      }
    }
    reducer.add(col, st);
  };
  if (order.empty()) {
    for (std::size_t j = 0; j < m.cols(); ++j) process(j);
  } else {
    for (std::size_t j : order) process(j);
  }
  return reducer.finish(st);
}

}  // namespace

SmithForm smith_normal_form_sparse(const ColumnSource& m, const ReductionPlan& plan, ReductionStats* stats) {
  std::vector<std::uint32_t> priority = plan.row_priority.empty() ? markowitz_priority(m) : plan.row_priority;
  if (priority.size() != m.rows()) throw InvalidArgument("row priority must cover every row");
  {
    std::vector<char> seen(m.rows(), 0);
    for (auto p : priority) {
      if (p >= m.rows() || seen[p]) throw InvalidArgument("row priority must be a permutation");
      seen[p] = 1;
    }
  }
  if (!plan.column_order.empty()) {
    std::vector<char> seen(m.cols(), 0);
    for (auto j : plan.column_order) {
      if (j >= m.cols()) throw IndexOutOfRange("column order index out of range");
      seen[j] = 1;
    }
    if (!plan.columns_span_image && std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw InvalidArgument("column order must list every column");
  }
  ReductionStats local;
  try {
    SmithForm f = run_reducer<std::int64_t>(m, priority, plan.column_order, local);
    if (stats) *stats = local;
    return f;
  } catch (const Int64Overflow&) {
    local = ReductionStats{};
    local.used_bigint = true;
    SmithForm f = run_reducer<BigInt>(m, priority, plan.column_order, local);
    if (stats) *stats = local;
    return f;
  }
}

SmithForm smith_normal_form(const SparseIntMatrix& m) {
  if (m.rows() * m.cols() <= 40000) return smith_normal_form_dense(m);
  return smith_normal_form_sparse(m);
}

// ---- kernels and homology -----------------------------------------------------

namespace {

// Unimodular column operations bringing `a` into column echelon form.
// Returns the number of nonzero columns; `u` accumulates the transform.
std::size_t column_echelon(Dense& a, std::size_t rows, std::size_t cols, Dense& u) {
  u.assign(cols, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;
  auto col_axpy = [&](std::size_t dst, const BigInt& q, std::size_t src) {  // col dst -= q col src
    for (std::size_t r = 0; r < rows; ++r) a[r][dst] -= q * a[r][src];
    for (std::size_t r = 0; r < cols; ++r) u[r][dst] -= q * u[r][src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][x], a[r][y]);
    for (std::size_t r = 0; r < cols; ++r) std::swap(u[r][x], u[r][y]);
  };
  std::size_t pc = 0;
  for (std::size_t r = 0; r < rows && pc < cols; ++r) {
    for (;;) {
      std::size_t best = cols;
      for (std::size_t c = pc; c < cols; ++c)
        if (a[r][c] != 0 && (best == cols || abs_big(a[r][c]) < abs_big(a[r][best]))) best = c;
      if (best == cols) break;
      col_swap(pc, best);
      bool done = true;
      for (std::size_t c = pc + 1; c < cols; ++c) {
        if (a[r][c] == 0) continue;
        col_axpy(c, a[r][c] / a[r][pc], pc);
        if (a[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][pc] != 0) ++pc;
  }
  return pc;
}

}  // namespace

SparseIntMatrix integer_kernel(const SparseIntMatrix& m) {
  Dense a = m.to_dense(), u;
  const std::size_t rank = column_echelon(a, m.rows(), m.cols(), u);
  Dense basis(m.cols(), std::vector<BigInt>(m.cols() - rank));
  for (std::size_t r = 0; r < m.cols(); ++r)
    for (std::size_t c = rank; c < m.cols(); ++c) basis[r][c - rank] = u[r][c];
  SparseIntMatrix k = SparseIntMatrix::from_dense(basis, m.cols() - rank);
  if (!m.multiply(k).is_zero()) throw HomologyInconsistent("kernel basis does not annihilate the matrix");
  return k;
}

void check_composes_to_zero(const ColumnSource& d_in, const ColumnSource& d_out) {
  if (d_out.cols() != d_in.rows()) throw InvalidArgument("boundary maps do not compose");
  std::vector<BigInt> acc(d_out.rows());
  std::vector<std::int64_t> acc64(d_out.rows(), 0);
  std::vector<std::uint32_t> touched;
  std::vector<Entry64> col, inner;
  std::vector<EntryBig> colb, innerb;
  for (std::size_t j = 0; j < d_in.cols(); ++j) {
    touched.clear();
    bool fast = d_in.column64(j, col);
    try {
      if (!fast) throw Int64Overflow{};
      for (const auto& e : col) {
        if (!d_out.column64(e.row, inner)) throw Int64Overflow{};
        for (const auto& f : inner) {
          acc64[f.row] = IntOps<std::int64_t>::add(acc64[f.row], IntOps<std::int64_t>::mul(e.value, f.value));
          touched.push_back(f.row);
        }
      }
      for (auto r : touched)
        if (acc64[r] != 0) throw ComplexNotExact("d_out * d_in != 0 at column " + std::to_string(j));
    } catch (const Int64Overflow&) {
      for (auto r : touched) acc64[r] = 0;
      touched.clear();
      d_in.column_big(j, colb);
      for (const auto& e : colb) {
        d_out.column_big(e.row, innerb);
        for (const auto& f : innerb) {
          acc[f.row] += e.value * f.value;
          touched.push_back(f.row);
        }
      }
      for (auto r : touched)
        if (acc[r] != 0) throw ComplexNotExact("d_out * d_in != 0 at column " + std::to_string(j));
    }
    for (auto r : touched) acc64[r] = 0;
  }
}

HomologyGroup homology_at(const ColumnSource& d_in, const ColumnSource& d_out, const ReductionPlan& in_plan,
                          const ReductionPlan& out_plan, ReductionStats* in_stats) {
  check_composes_to_zero(d_in, d_out);
  // C / ker(d_out) embeds in a free group, so the torsion of ker/im equals
  // the torsion of coker(d_in).
  const SmithForm out = smith_normal_form_sparse(d_out, out_plan);
  const SmithForm in = smith_normal_form_sparse(d_in, in_plan, in_stats);
  HomologyGroup h;
  h.torsion = in.torsion();
  h.free_rank = d_out.cols() - out.rank - in.rank;
  return h;
}

HomologyGroup homology_at(const SparseIntMatrix& d_in, const SparseIntMatrix& d_out) {
  check_composes_to_zero(d_in, d_out);
  const SmithForm out = smith_normal_form(d_out);
  const SmithForm in = smith_normal_form(d_in);
  return {in.torsion(), d_out.cols() - out.rank - in.rank};
}

HomologyGroup homology_at_via_kernel(const SparseIntMatrix& d_in, const SparseIntMatrix& d_out) {
  check_composes_to_zero(d_in, d_out);
  const SparseIntMatrix kernel = integer_kernel(d_out);
  const std::size_t n = kernel.rows(), k = kernel.cols();

  // Echelon form E = K V of the kernel basis; solve E z = x row by row.
  Dense e = kernel.to_dense(), v;
  const std::size_t rank = column_echelon(e, n, k, v);
  if (rank != k) throw HomologyInconsistent("kernel basis is not independent");
  std::vector<std::size_t> pivot_row(k);
  for (std::size_t c = 0, r = 0; c < k; ++c) {
    while (e[r][c] == 0) ++r;
    pivot_row[c] = r;
  }

  const Dense x = d_in.to_dense();
  Dense coords(k, std::vector<BigInt>(d_in.cols()));
  for (std::size_t j = 0; j < d_in.cols(); ++j) {
    std::vector<BigInt> z(k);
    for (std::size_t c = 0; c < k; ++c) {
      BigInt rhs = x[pivot_row[c]][j];
      for (std::size_t l = 0; l < c; ++l) rhs -= e[pivot_row[c]][l] * z[l];
      if (rhs % e[pivot_row[c]][c] != 0) throw HomologyInconsistent("boundary is not in the kernel lattice");
      z[c] = rhs / e[pivot_row[c]][c];
    }
    for (std::size_t r = 0; r < k; ++r) {
      BigInt s = 0;
      for (std::size_t c = 0; c < k; ++c) s += v[r][c] * z[c];
      coords[r][j] = s;
    }
  }
  const SmithForm f = dense_smith(std::move(coords), k, d_in.cols());
  return {f.torsion(), k - f.rank};
}

}  // namespace pgcl
