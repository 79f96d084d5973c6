#pragma once

// Shared helpers for the unit and acceptance suites: seeded random
// instances, independent brute-force checks and temp-dir plumbing.

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "sparsekit/linalg.hpp"
#include "sparsekit/random.hpp"

namespace sparsekit::testing {

inline Mat gaussian_matrix(Rng& rng, Index rows, Index cols) {
  Mat m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      m(r, c) = rng.gaussian();
    }
  }
  return m;
}

inline Mat gaussian_dictionary(Rng& rng, Index rows, Index cols) {
  Mat m = gaussian_matrix(rng, rows, cols);
  for (Index c = 0; c < cols; ++c) {
    m.col(c) /= m.col(c).norm();
  }
  return m;
}

inline std::vector<Index> random_support(Rng& rng, Index p, Index k) {
  std::vector<Index> all(static_cast<std::size_t>(p));
  for (Index i = 0; i < p; ++i) all[std::size_t(i)] = i;
  // Partial Fisher-Yates with the portable Rng.
  for (Index i = 0; i < k; ++i) {
    const Index j = i + Index(rng.below(std::uint64_t(p - i)));
    std::swap(all[std::size_t(i)], all[std::size_t(j)]);
  }
  std::vector<Index> support(all.begin(), all.begin() + k);
  std::sort(support.begin(), support.end());
  return support;
}

inline Vec planted_signal(const Mat& dictionary,
                          const std::vector<Index>& support,
                          const Vec& coeffs) {
  Vec y = Vec::Zero(dictionary.rows());
  for (std::size_t i = 0; i < support.size(); ++i) {
    y += coeffs[Index(i)] * dictionary.col(support[i]);
  }
  return y;
}

// Exact-recovery check for a fixed support: max over out-of-support
// columns of || pinv(A_S) a_j ||_1. Values < 1 guarantee greedy recovery
// of signals supported on S.
inline double exact_recovery_constant(const Mat& dictionary,
                                      const std::vector<Index>& support) {
  Mat sub(dictionary.rows(), Index(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) {
    sub.col(Index(i)) = dictionary.col(support[i]);
  }
  double worst = 0.0;
  for (Index j = 0; j < dictionary.cols(); ++j) {
    if (std::find(support.begin(), support.end(), j) != support.end()) {
      continue;
    }
    const Vec projected = least_squares(sub, dictionary.col(j));
    worst = std::max(worst, projected.lpNorm<1>());
  }
  return worst;
}

inline bool same_support(const std::vector<Index>& a,
                         const std::vector<Index>& b) {
  std::vector<Index> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

// Unique temp directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    const auto base = std::filesystem::temp_directory_path();
    for (int i = 0;; ++i) {
      auto candidate = base / ("sparsekit-" + tag + "-" + std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace sparsekit::testing
