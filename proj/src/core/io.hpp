#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace spmagic {

enum class InputFormat { kAuto, kMatrixMarket, kCsv };

InputFormat parse_format(const std::string& name);

// Expression input. CSV: header row of gene ids with a leading spot-id
// column. MatrixMarket: coordinate-format .mtx (spots as rows) with sidecar
// spots.txt / genes.txt files, one id per line, in the same directory.
ExpressionMatrix read_expression(const std::string& path,
                                 InputFormat format = InputFormat::kAuto);
ExpressionMatrix read_expression_csv(const std::string& path);
ExpressionMatrix read_expression_mtx(const std::string& path);

struct CoordsTable {
  std::vector<std::string> spot_ids;
  Mat coords;  // n x 2
};

struct LabelsTable {
  std::vector<std::string> spot_ids;
  std::vector<int> labels;
};

CoordsTable read_coords_csv(const std::string& path);
LabelsTable read_labels_csv(const std::string& path);

// Loads and aligns expression, coordinates, and optional labels by spot id.
// Coordinates and labels are reordered to match expression spot order; a spot
// present in the expression matrix but missing from the coordinate (or label)
// file is an error. Spots with zero total expression are dropped with a
// warning on stderr, since the diffusion operator requires positive degrees.
Dataset load_dataset(const std::string& expr_path, const std::string& coords_path,
                     const std::optional<std::string>& labels_path,
                     InputFormat format = InputFormat::kAuto);

void write_expression_csv(const std::string& path, const ExpressionMatrix& m);
// Writes `path` plus sidecar spots.txt / genes.txt next to it.
void write_expression_mtx(const std::string& path, const ExpressionMatrix& m);
void write_coords_csv(const std::string& path,
                      const std::vector<std::string>& spot_ids, const Mat& coords);
void write_labels_csv(const std::string& path,
                      const std::vector<std::string>& spot_ids,
                      const std::vector<int>& labels);

// Shortest round-trippable decimal representation.
std::string format_double(double v);

}  // namespace spmagic
