#include "core/types.hpp"

#include <cmath>
#include <unordered_set>

namespace spmagic {

namespace {

void check_ids(const std::vector<std::string>& ids, Index expected,
               const char* what) {
  require(static_cast<Index>(ids.size()) == expected, ErrorCode::kMismatch,
          std::string(what) + " id count (" + std::to_string(ids.size()) +
              ") does not match matrix dimension (" + std::to_string(expected) +
              ")");
  std::unordered_set<std::string> seen;
  seen.reserve(ids.size());
  for (const auto& id : ids) {
    require(seen.insert(id).second, ErrorCode::kInvalidArgument,
            std::string("duplicate ") + what + " id: " + id);
  }
}

void check_value(double v, const char* context) {
  require(std::isfinite(v), ErrorCode::kNumeric,
          std::string("non-finite value in ") + context);
  require(v >= 0.0, ErrorCode::kInvalidArgument,
          std::string("negative value in ") + context);
}

}  // namespace

ExpressionMatrix ExpressionMatrix::dense(Mat values,
                                         std::vector<std::string> spot_ids,
                                         std::vector<std::string> gene_ids) {
  ExpressionMatrix m;
  m.layout_ = Layout::kDense;
  m.dense_ = std::move(values);
  m.spot_ids_ = std::move(spot_ids);
  m.gene_ids_ = std::move(gene_ids);
  m.validate();
  return m;
}

ExpressionMatrix ExpressionMatrix::sparse(SpMat values,
                                          std::vector<std::string> spot_ids,
                                          std::vector<std::string> gene_ids) {
  ExpressionMatrix m;
  m.layout_ = Layout::kSparse;
  m.sparse_ = std::move(values);
  m.sparse_.makeCompressed();
  m.spot_ids_ = std::move(spot_ids);
  m.gene_ids_ = std::move(gene_ids);
  m.validate();
  return m;
}

Index ExpressionMatrix::spots() const {
  return layout_ == Layout::kDense ? dense_.rows() : sparse_.rows();
}

Index ExpressionMatrix::genes() const {
  return layout_ == Layout::kDense ? dense_.cols() : sparse_.cols();
}

const Mat& ExpressionMatrix::dense_values() const {
  require(layout_ == Layout::kDense, ErrorCode::kInternal,
          "dense_values() called on sparse matrix");
  return dense_;
}

const SpMat& ExpressionMatrix::sparse_values() const {
  require(layout_ == Layout::kSparse, ErrorCode::kInternal,
          "sparse_values() called on dense matrix");
  return sparse_;
}

Mat ExpressionMatrix::to_dense() const {
  if (layout_ == Layout::kDense) {
    return dense_;
  }
  return Mat(sparse_);
}

void ExpressionMatrix::validate() const {
  check_ids(spot_ids_, spots(), "spot");
  check_ids(gene_ids_, genes(), "gene");
  if (layout_ == Layout::kDense) {
    for (Index j = 0; j < dense_.cols(); ++j) {
      for (Index i = 0; i < dense_.rows(); ++i) {
        check_value(dense_(i, j), "expression matrix");
      }
    }
  } else {
    for (Index i = 0; i < sparse_.outerSize(); ++i) {
      for (SpMat::InnerIterator it(sparse_, i); it; ++it) {
        check_value(it.value(), "expression matrix");
      }
    }
  }
}

void SpatialCoords::validate() const {
  require(coords.cols() == 2, ErrorCode::kMismatch,
          "coordinates must have exactly 2 columns");
  require(coords.allFinite(), ErrorCode::kNumeric,
          "non-finite value in coordinates");
}

void Dataset::validate() const {
  expression.validate();
  coords.validate();
  require(coords.spots() == expression.spots(), ErrorCode::kMismatch,
          "coordinate row count does not match expression spot count");
  if (labels) {
    require(static_cast<Index>(labels->size()) == expression.spots(),
            ErrorCode::kMismatch,
            "label count does not match expression spot count");
  }
}

}  // namespace spmagic
