#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace spmagic {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Index = Eigen::Index;

template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class ErrorCode {
  kIo = 1,
  kParse = 2,
  kInvalidArgument = 3,
  kMismatch = 4,
  kNumeric = 5,
  kInternal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) {
    fail(code, message);
  }
}

// Median of an unsorted vector; the input is copied so callers keep ordering.
inline double median(std::vector<double> values) {
  if (values.empty()) {
    fail(ErrorCode::kInvalidArgument, "median of empty set");
  }
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double upper = values[mid];
  if (values.size() % 2 == 1) {
    return upper;
  }
  std::nth_element(values.begin(), values.begin() + mid - 1, values.begin() + mid);
  return 0.5 * (values[mid - 1] + upper);
}

// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each, using
// at most `threads` workers. Chunk boundaries do not depend on the thread
// count, so per-row work gives identical results for any `threads`.
inline void parallel_for(Index n, int threads,
                         const std::function<void(Index, Index)>& fn) {
  if (n <= 0) {
    return;
  }
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (workers == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const Index chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const Index begin = static_cast<Index>(w) * chunk;
    const Index end = std::min(n, begin + chunk);
    if (begin >= end) {
      break;
    }
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) {
    t.join();
  }
}

}  // namespace spmagic
