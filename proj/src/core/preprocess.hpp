#pragma once

#include "core/types.hpp"

namespace spmagic {

// Rescales every spot to the median total expression. Rows with zero sum are
// an error; the loader drops them before this point.
ExpressionMatrix library_size_normalize(const ExpressionMatrix& x);

// Entrywise ln(1 + x).
ExpressionMatrix log1p_transform(const ExpressionMatrix& x);

// Keeps the k genes with largest per-gene variance, columns reordered by
// descending variance. Ties break toward the lower original column index.
ExpressionMatrix select_hvg(const ExpressionMatrix& x, Index k, int threads = 1);

ExpressionMatrix densify(const ExpressionMatrix& x);

struct PreprocessResult {
  ExpressionMatrix x_d;          // normalized, log1p, HVG-filtered, dense
  double normalization_target;   // median row sum of the input
};

// normalize -> log1p -> select_hvg -> densify. hvg_count is clamped to the
// gene count.
PreprocessResult preprocess(const ExpressionMatrix& x, Index hvg_count,
                            int threads = 1);

}  // namespace spmagic
