#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pgcl/abelian.h"
#include "pgcl/integer.h"
#include "pgcl/sparse_matrix.h"

namespace pgcl {

// Nonzero Smith invariant factors d1 | d2 | ... | dr (all positive, units
// included) and the rank r.
struct SmithForm {
  std::vector<BigInt> factors;
  std::size_t rank = 0;

  // The factors greater than one, i.e. the torsion of the cokernel.
  AbelianInvariants torsion() const;
};

// Elimination order for the sparse reducer. Each column is reduced against
// pivots keyed by its highest-priority nonzero row.
struct ReductionPlan {
  // row -> priority; must be a permutation of 0..rows-1. Empty selects the
  // static Markowitz order (sparsest rows get the highest priority).
  std::vector<std::uint32_t> row_priority;
  // Column processing order. Empty means 0..cols-1. Must list every column
  // unless `columns_span_image` is set.
  std::vector<std::size_t> column_order;
  // The caller guarantees that the listed columns generate the same lattice
  // as all columns, so the rest may be skipped.
  bool columns_span_image = false;
};

struct ReductionStats {
  std::size_t columns = 0;
  std::size_t zero_columns = 0;
  std::size_t unit_pivots = 0;
  std::size_t other_pivots = 0;
  std::size_t gcd_merges = 0;
  std::size_t residual_rows = 0;
  bool used_bigint = false;
};

struct HomologyGroup {
  AbelianInvariants torsion;
  std::size_t free_rank = 0;
};

// Dispatches to the dense algorithm for small matrices (rows*cols <= 40000)
// and to the sparse reducer otherwise.
SmithForm smith_normal_form(const SparseIntMatrix& m);
SmithForm smith_normal_form_dense(const SparseIntMatrix& m);
SmithForm smith_normal_form_sparse(const ColumnSource& m, const ReductionPlan& plan = {},
                                   ReductionStats* stats = nullptr);

// Columns form a Z-basis of {x : m x = 0}.
SparseIntMatrix integer_kernel(const SparseIntMatrix& m);

// ker(d_out) / im(d_in). Throws ComplexNotExact unless d_out * d_in = 0.
HomologyGroup homology_at(const SparseIntMatrix& d_in, const SparseIntMatrix& d_out);
HomologyGroup homology_at(const ColumnSource& d_in, const ColumnSource& d_out, const ReductionPlan& in_plan = {},
                          const ReductionPlan& out_plan = {}, ReductionStats* in_stats = nullptr);

// Textbook route: kernel basis K of d_out, coordinates of im(d_in) in K,
// Smith form of the coordinate matrix. Dense; for cross-checks.
HomologyGroup homology_at_via_kernel(const SparseIntMatrix& d_in, const SparseIntMatrix& d_out);

// Throws ComplexNotExact if d_out * d_in != 0.
void check_composes_to_zero(const ColumnSource& d_in, const ColumnSource& d_out);

}  // namespace pgcl
