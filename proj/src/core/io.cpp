#include "core/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

namespace spmagic {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return "";
  }
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    out.push_back(trim(field));
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back("");
  }
  return out;
}

double parse_double(const std::string& token, const std::string& path,
                    std::size_t line_no) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc() && ptr == end, ErrorCode::kParse,
          path + ":" + std::to_string(line_no) + ": not a number: '" + token + "'");
  return value;
}

long parse_long(const std::string& token, const std::string& path,
                std::size_t line_no) {
  long value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc() && ptr == end, ErrorCode::kParse,
          path + ":" + std::to_string(line_no) + ": not an integer: '" + token + "'");
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kIo, "cannot open file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::kIo, "cannot write file: " + path);
  return out;
}

std::vector<std::string> read_id_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) {
      ids.push_back(line);
    }
  }
  return ids;
}

}  // namespace

InputFormat parse_format(const std::string& name) {
  if (name.empty() || name == "auto") {
    return InputFormat::kAuto;
  }
  if (name == "matrix-market" || name == "mtx") {
    return InputFormat::kMatrixMarket;
  }
  if (name == "csv") {
    return InputFormat::kCsv;
  }
  fail(ErrorCode::kInvalidArgument, "unknown input format: " + name);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Prefer the short form when it round-trips; keeps files readable.
  char short_buf[40];
  std::snprintf(short_buf, sizeof(short_buf), "%.12g", v);
  double back = 0.0;
  std::from_chars(short_buf, short_buf + std::strlen(short_buf), back);
  return back == v ? short_buf : buf;
}

ExpressionMatrix read_expression(const std::string& path, InputFormat format) {
  if (format == InputFormat::kAuto) {
    format = std::filesystem::path(path).extension() == ".mtx"
                 ? InputFormat::kMatrixMarket
                 : InputFormat::kCsv;
  }
  return format == InputFormat::kMatrixMarket ? read_expression_mtx(path)
                                              : read_expression_csv(path);
}

ExpressionMatrix read_expression_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse,
          path + ": empty file");
  std::vector<std::string> header = split_csv(line);
  require(header.size() >= 2, ErrorCode::kParse,
          path + ": expected a spot-id column plus at least one gene column");
  std::vector<std::string> gene_ids(header.begin() + 1, header.end());

  std::vector<std::string> spot_ids;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    std::vector<std::string> fields = split_csv(line);
    require(fields.size() == header.size(), ErrorCode::kParse,
            path + ":" + std::to_string(line_no) + ": expected " +
                std::to_string(header.size()) + " fields, got " +
                std::to_string(fields.size()));
    spot_ids.push_back(fields[0]);
    for (std::size_t j = 1; j < fields.size(); ++j) {
      values.push_back(parse_double(fields[j], path, line_no));
    }
  }
  require(!spot_ids.empty(), ErrorCode::kParse, path + ": no data rows");

  const Index n = static_cast<Index>(spot_ids.size());
  const Index g = static_cast<Index>(gene_ids.size());
  Mat m(n, g);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < g; ++j) {
      m(i, j) = values[static_cast<std::size_t>(i) * g + j];
    }
  }
  return ExpressionMatrix::dense(std::move(m), std::move(spot_ids),
                                 std::move(gene_ids));
}

ExpressionMatrix read_expression_mtx(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse,
          path + ": empty file");
  require(line.rfind("%%MatrixMarket", 0) == 0, ErrorCode::kParse,
          path + ": missing MatrixMarket banner");
  {
    std::stringstream banner(line);
    std::string tag, object, fmt, field;
    banner >> tag >> object >> fmt >> field;
    require(object == "matrix" && fmt == "coordinate", ErrorCode::kParse,
            path + ": only coordinate-format matrices are supported");
    require(field == "real" || field == "integer", ErrorCode::kParse,
            path + ": only real or integer fields are supported");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] != '%') {
      break;
    }
  }
  std::stringstream dims(line);
  long rows = 0, cols = 0, nnz = 0;
  dims >> rows >> cols >> nnz;
  require(rows > 0 && cols > 0 && nnz >= 0, ErrorCode::kParse,
          path + ": invalid dimension line");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(nnz));
  for (long e = 0; e < nnz; ++e) {
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse,
            path + ": unexpected end of file (expected " + std::to_string(nnz) +
                " entries)");
    ++line_no;
    std::stringstream entry(line);
    long i = 0, j = 0;
    double v = 0.0;
    entry >> i >> j >> v;
    require(!entry.fail(), ErrorCode::kParse,
            path + ":" + std::to_string(line_no) + ": malformed entry");
    require(i >= 1 && i <= rows && j >= 1 && j <= cols, ErrorCode::kParse,
            path + ":" + std::to_string(line_no) + ": index out of range");
    triplets.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
  }
  SpMat m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());

  const auto dir = std::filesystem::path(path).parent_path();
  std::vector<std::string> spot_ids = read_id_file((dir / "spots.txt").string());
  std::vector<std::string> gene_ids = read_id_file((dir / "genes.txt").string());
  return ExpressionMatrix::sparse(std::move(m), std::move(spot_ids),
                                  std::move(gene_ids));
}

CoordsTable read_coords_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse,
          path + ": empty file");
  std::vector<std::string> header = split_csv(line);
  require(header.size() == 3 && header[0] == "spot_id" && header[1] == "x" &&
              header[2] == "y",
          ErrorCode::kParse, path + ": expected header 'spot_id,x,y'");

  CoordsTable table;
  std::vector<double> xs, ys;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    std::vector<std::string> fields = split_csv(line);
    require(fields.size() == 3, ErrorCode::kParse,
            path + ":" + std::to_string(line_no) + ": expected 3 fields");
    table.spot_ids.push_back(fields[0]);
    xs.push_back(parse_double(fields[1], path, line_no));
    ys.push_back(parse_double(fields[2], path, line_no));
  }
  table.coords.resize(static_cast<Index>(xs.size()), 2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    table.coords(static_cast<Index>(i), 0) = xs[i];
    table.coords(static_cast<Index>(i), 1) = ys[i];
  }
  return table;
}

LabelsTable read_labels_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse,
          path + ": empty file");
  std::vector<std::string> header = split_csv(line);
  require(header.size() == 2 && header[0] == "spot_id" && header[1] == "label",
          ErrorCode::kParse, path + ": expected header 'spot_id,label'");

  LabelsTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    std::vector<std::string> fields = split_csv(line);
    require(fields.size() == 2, ErrorCode::kParse,
            path + ":" + std::to_string(line_no) + ": expected 2 fields");
    table.spot_ids.push_back(fields[0]);
    table.labels.push_back(static_cast<int>(parse_long(fields[1], path, line_no)));
  }
  return table;
}

namespace {

// Builds id -> row lookup, rejecting duplicates.
std::unordered_map<std::string, Index> index_ids(
    const std::vector<std::string>& ids, const std::string& what) {
  std::unordered_map<std::string, Index> lookup;
  lookup.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto [it, inserted] = lookup.emplace(ids[i], static_cast<Index>(i));
    require(inserted, ErrorCode::kParse, "duplicate spot id in " + what + ": " + ids[i]);
  }
  return lookup;
}

}  // namespace

Dataset load_dataset(const std::string& expr_path, const std::string& coords_path,
                     const std::optional<std::string>& labels_path,
                     InputFormat format) {
  ExpressionMatrix expr = read_expression(expr_path, format);
  CoordsTable coords = read_coords_csv(coords_path);
  const auto coord_lookup = index_ids(coords.spot_ids, "coordinate file");

  std::optional<LabelsTable> labels;
  std::optional<std::unordered_map<std::string, Index>> label_lookup;
  if (labels_path) {
    labels = read_labels_csv(*labels_path);
    label_lookup = index_ids(labels->spot_ids, "label file");
  }

  // Drop zero-total spots up front; downstream graph degrees must be positive.
  Mat values = expr.to_dense();
  std::vector<Index> keep;
  keep.reserve(values.rows());
  for (Index i = 0; i < values.rows(); ++i) {
    if (values.row(i).sum() > 0.0) {
      keep.push_back(i);
    } else {
      std::cerr << "warning: dropping spot '" << expr.spot_ids()[i]
                << "' with zero total expression\n";
    }
  }
  require(!keep.empty(), ErrorCode::kInvalidArgument,
          "all spots have zero total expression");

  const Index n = static_cast<Index>(keep.size());
  Mat aligned_values(n, values.cols());
  Mat aligned_coords(n, 2);
  std::vector<std::string> spot_ids(n);
  std::vector<int> aligned_labels(n);
  for (Index r = 0; r < n; ++r) {
    const Index i = keep[r];
    const std::string& id = expr.spot_ids()[i];
    aligned_values.row(r) = values.row(i);
    spot_ids[r] = id;

    auto cit = coord_lookup.find(id);
    require(cit != coord_lookup.end(), ErrorCode::kMismatch,
            "spot '" + id + "' present in expression but missing from " +
                coords_path);
    aligned_coords.row(r) = coords.coords.row(cit->second);

    if (labels) {
      auto lit = label_lookup->find(id);
      require(lit != label_lookup->end(), ErrorCode::kMismatch,
              "spot '" + id + "' present in expression but missing from " +
                  *labels_path);
      aligned_labels[r] = labels->labels[lit->second];
    }
  }

  Dataset ds;
  ds.expression = ExpressionMatrix::dense(std::move(aligned_values),
                                          std::move(spot_ids), expr.gene_ids());
  ds.coords = SpatialCoords{std::move(aligned_coords)};
  if (labels) {
    ds.labels = std::move(aligned_labels);
  }
  ds.validate();
  return ds;
}

void write_expression_csv(const std::string& path, const ExpressionMatrix& m) {
  std::ofstream out = open_output(path);
  out << "spot_id";
  for (const auto& g : m.gene_ids()) {
    out << ',' << g;
  }
  out << '\n';
  const Mat values = m.to_dense();
  for (Index i = 0; i < values.rows(); ++i) {
    out << m.spot_ids()[i];
    for (Index j = 0; j < values.cols(); ++j) {
      out << ',' << format_double(values(i, j));
    }
    out << '\n';
  }
  require(out.good(), ErrorCode::kIo, "write failed: " + path);
}

void write_expression_mtx(const std::string& path, const ExpressionMatrix& m) {
  std::ofstream out = open_output(path);
  const Mat values = m.to_dense();
  long nnz = 0;
  for (Index i = 0; i < values.rows(); ++i) {
    for (Index j = 0; j < values.cols(); ++j) {
      nnz += values(i, j) != 0.0;
    }
  }
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << values.rows() << ' ' << values.cols() << ' ' << nnz << '\n';
  for (Index i = 0; i < values.rows(); ++i) {
    for (Index j = 0; j < values.cols(); ++j) {
      if (values(i, j) != 0.0) {
        out << (i + 1) << ' ' << (j + 1) << ' ' << format_double(values(i, j))
            << '\n';
      }
    }
  }
  require(out.good(), ErrorCode::kIo, "write failed: " + path);

  const auto dir = std::filesystem::path(path).parent_path();
  std::ofstream spots = open_output((dir / "spots.txt").string());
  for (const auto& id : m.spot_ids()) {
    spots << id << '\n';
  }
  std::ofstream genes = open_output((dir / "genes.txt").string());
  for (const auto& id : m.gene_ids()) {
    genes << id << '\n';
  }
}

void write_coords_csv(const std::string& path,
                      const std::vector<std::string>& spot_ids, const Mat& coords) {
  require(static_cast<Index>(spot_ids.size()) == coords.rows(),
          ErrorCode::kMismatch, "spot id / coordinate count mismatch");
  std::ofstream out = open_output(path);
  out << "spot_id,x,y\n";
  for (Index i = 0; i < coords.rows(); ++i) {
    out << spot_ids[i] << ',' << format_double(coords(i, 0)) << ','
        << format_double(coords(i, 1)) << '\n';
  }
  require(out.good(), ErrorCode::kIo, "write failed: " + path);
}

void write_labels_csv(const std::string& path,
                      const std::vector<std::string>& spot_ids,
                      const std::vector<int>& labels) {
  require(spot_ids.size() == labels.size(), ErrorCode::kMismatch,
          "spot id / label count mismatch");
  std::ofstream out = open_output(path);
  out << "spot_id,label\n";
  for (std::size_t i = 0; i < spot_ids.size(); ++i) {
    out << spot_ids[i] << ',' << labels[i] << '\n';
  }
  require(out.good(), ErrorCode::kIo, "write failed: " + path);
}

}  // namespace spmagic
