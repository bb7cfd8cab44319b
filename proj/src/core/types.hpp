#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/common.hpp"

namespace spmagic {

enum class Layout { kDense, kSparse };

// Spots x genes matrix of nonnegative expression values with identifiers.
// Values are stored either dense or compressed-row sparse; both layouts hold
// the same logical matrix.
class ExpressionMatrix {
 public:
  ExpressionMatrix() = default;

  static ExpressionMatrix dense(Mat values, std::vector<std::string> spot_ids,
                                std::vector<std::string> gene_ids);
  static ExpressionMatrix sparse(SpMat values, std::vector<std::string> spot_ids,
                                 std::vector<std::string> gene_ids);

  Layout layout() const { return layout_; }
  Index spots() const;
  Index genes() const;

  const Mat& dense_values() const;
  const SpMat& sparse_values() const;

  // Copy of the values as a dense matrix regardless of layout.
  Mat to_dense() const;

  const std::vector<std::string>& spot_ids() const { return spot_ids_; }
  const std::vector<std::string>& gene_ids() const { return gene_ids_; }

  // Checks nonnegativity, finiteness, and id uniqueness/cardinality.
  void validate() const;

 private:
  Layout layout_ = Layout::kDense;
  Mat dense_;
  SpMat sparse_;
  std::vector<std::string> spot_ids_;
  std::vector<std::string> gene_ids_;
};

// Spots x 2 physical coordinates in platform units.
struct SpatialCoords {
  Mat coords;  // n x 2

  Index spots() const { return coords.rows(); }
  void validate() const;
};

struct Dataset {
  ExpressionMatrix expression;
  SpatialCoords coords;
  std::optional<std::vector<int>> labels;

  Index spots() const { return expression.spots(); }
  void validate() const;
};

}  // namespace spmagic
