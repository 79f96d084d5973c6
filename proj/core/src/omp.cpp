#include "sparsekit/omp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sparsekit {

namespace {

// Column norms must be 0 (ignorable atom) or 1 within tolerance.
void check_columns(const Mat& dictionary) {
  Index nonzero = 0;
  for (Index j = 0; j < dictionary.cols(); ++j) {
    const double norm = dictionary.col(j).norm();
    if (norm < kZeroNormFloor) {
      continue;
    }
    ++nonzero;
    if (std::abs(norm - 1.0) > kUnitNormTolerance) {
      throw InvalidArgumentError("omp_solve: column " + std::to_string(j) +
                                 " has norm " + std::to_string(norm) +
                                 ", expected unit or zero");
    }
  }
  if (nonzero == 0) {
    throw InvalidArgumentError("omp_solve: dictionary has no nonzero column");
  }
}

struct RuleState {
  Index target_sparsity = -1;  // <0: not sparsity-driven
  double residual_limit = -1.0;  // <0: not residual-driven
};

RuleState interpret(const StoppingRule& rule) {
  RuleState state;
  if (const auto* s = std::get_if<ExactSparsity>(&rule)) {
    if (s->sparsity < 1) {
      throw InvalidArgumentError("ExactSparsity: sparsity must be >= 1, got " +
                                 std::to_string(s->sparsity));
    }
    state.target_sparsity = s->sparsity;
  } else if (const auto* b = std::get_if<ResidualBound>(&rule)) {
    if (!(b->bound >= 0.0)) {
      throw InvalidArgumentError("ResidualBound: bound must be >= 0");
    }
    state.residual_limit = b->bound;
  } else {
    const auto& n = std::get<Noiseless>(rule);
    if (!(n.eps >= 0.0)) {
      throw InvalidArgumentError("Noiseless: eps must be >= 0");
    }
    state.residual_limit = n.eps;
  }
  return state;
}

Vec scatter(const std::vector<Index>& support, const Vec& sub_coeffs,
            Index length) {
  Vec full = Vec::Zero(length);
  for (std::size_t k = 0; k < support.size(); ++k) {
    full[support[k]] = sub_coeffs[Index(k)];
  }
  return full;
}

}  // namespace

SparseCode omp_solve(const Mat& dictionary, const Vec& signal,
                     const StoppingRule& rule) {
  if (!all_finite(dictionary) || !all_finite(signal)) {
    throw InvalidArgumentError("omp_solve: non-finite input");
  }
  if (dictionary.rows() != signal.size()) {
    throw DimensionError("omp_solve: dictionary has " +
                         std::to_string(dictionary.rows()) +
                         " rows but signal has " +
                         std::to_string(signal.size()) + " entries");
  }
  check_columns(dictionary);
  const RuleState state = interpret(rule);

  const Index max_iterations =
      std::min(dictionary.rows(), dictionary.cols());

  SparseCode code;
  Vec residual = signal;
  double residual_l2 = residual.norm();
  code.residual_norms.push_back(residual_l2);

  Mat selected(dictionary.rows(), 0);
  Vec sub_coeffs;

  while (true) {
    const Index chosen = Index(code.support.size());
    if (state.target_sparsity >= 0 && chosen >= state.target_sparsity) {
      break;
    }
    if (state.residual_limit >= 0.0 && residual_l2 <= state.residual_limit) {
      break;
    }
    if (chosen >= max_iterations) {
      break;
    }

    const Vec correlations = dictionary.transpose() * residual;
    Index best = -1;
    double best_abs = 0.0;
    for (Index j = 0; j < correlations.size(); ++j) {
      const double a = std::abs(correlations[j]);
      if (a > best_abs) {  // strict: ties keep the smallest index
        best_abs = a;
        best = j;
      }
    }
    if (best < 0 || best_abs <= kStagnationCorrelation) {
      break;
    }
    // Re-selection is impossible in exact arithmetic (the residual is
    // orthogonal to the selected atoms) but guards against degenerate
    // floating-point dictionaries.
    if (std::find(code.support.begin(), code.support.end(), best) !=
        code.support.end()) {
      break;
    }

    code.support.push_back(best);
    selected.conservativeResize(Eigen::NoChange, chosen + 1);
    selected.col(chosen) = dictionary.col(best);

    sub_coeffs = least_squares(selected, signal);
    residual = signal - selected * sub_coeffs;
    residual_l2 = residual.norm();
    code.residual_norms.push_back(residual_l2);
  }

  code.coeffs = scatter(code.support, sub_coeffs, dictionary.cols());
  code.iterations = Index(code.support.size());
  code.final_residual_norm = residual_l2;
  return code;
}

SparseCode l0_oracle(const Mat& dictionary, const Vec& signal,
                     Index max_support, double eps) {
  if (!all_finite(dictionary) || !all_finite(signal)) {
    throw InvalidArgumentError("l0_oracle: non-finite input");
  }
  if (dictionary.rows() != signal.size()) {
    throw DimensionError("l0_oracle: dictionary has " +
                         std::to_string(dictionary.rows()) +
                         " rows but signal has " +
                         std::to_string(signal.size()) + " entries");
  }
  const Index p = dictionary.cols();
  if (p < 1 || p > kOracleMaxColumns) {
    throw InvalidArgumentError(
        "l0_oracle: dictionary must have 1.." +
        std::to_string(kOracleMaxColumns) + " columns, got " +
        std::to_string(p));
  }
  if (max_support < 1 || max_support > kOracleMaxSupport) {
    throw InvalidArgumentError("l0_oracle: max_support must be 1.." +
                               std::to_string(kOracleMaxSupport) + ", got " +
                               std::to_string(max_support));
  }
  if (!(eps >= 0.0)) {
    throw InvalidArgumentError("l0_oracle: eps must be >= 0");
  }

  const double signal_l2 = signal.norm();
  const Index k_max = std::min(max_support, p);

  std::vector<Index> best_support;
  Vec best_coeffs;
  double best_residual = -1.0;

  std::vector<Index> combo;
  Mat sub(dictionary.rows(), k_max);
  for (Index k = 1; k <= k_max; ++k) {
    // Lexicographic enumeration of all k-subsets of 0..p-1.
    combo.resize(k);
    for (Index i = 0; i < k; ++i) combo[i] = i;
    while (true) {
      for (Index i = 0; i < k; ++i) sub.col(i) = dictionary.col(combo[i]);
      const Vec coeffs = least_squares(sub.leftCols(k), signal);
      const double res = (signal - sub.leftCols(k) * coeffs).norm();
      if (res <= eps) {
        SparseCode code;
        code.support.assign(combo.begin(), combo.end());
        code.coeffs = scatter(code.support, coeffs, p);
        code.final_residual_norm = res;
        code.iterations = k;
        code.residual_norms = {signal_l2, res};
        return code;
      }
      if (k == k_max && (best_residual < 0.0 || res < best_residual)) {
        best_residual = res;
        best_support.assign(combo.begin(), combo.end());
        best_coeffs = coeffs;
      }
      // Advance the combination.
      Index i = k - 1;
      while (i >= 0 && combo[i] == p - k + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (Index j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }

  SparseCode code;
  code.support = best_support;
  code.coeffs = scatter(best_support, best_coeffs, p);
  code.final_residual_norm = best_residual;
  code.iterations = Index(best_support.size());
  code.residual_norms = {signal_l2, best_residual};
  return code;
}

double mutual_coherence(const Mat& dictionary) {
  if (!all_finite(dictionary)) {
    throw InvalidArgumentError("mutual_coherence: non-finite input");
  }
  std::vector<Index> nonzero;
  nonzero.reserve(dictionary.cols());
  for (Index j = 0; j < dictionary.cols(); ++j) {
    if (dictionary.col(j).norm() >= kZeroNormFloor) {
      nonzero.push_back(j);
    }
  }
  if (nonzero.size() < 2) {
    throw InvalidArgumentError(
        "mutual_coherence: need at least 2 nonzero columns, got " +
        std::to_string(nonzero.size()));
  }
  double coherence = 0.0;
  for (std::size_t a = 0; a + 1 < nonzero.size(); ++a) {
    for (std::size_t b = a + 1; b < nonzero.size(); ++b) {
      coherence = std::max(
          coherence, std::abs(dictionary.col(nonzero[a])
                                  .dot(dictionary.col(nonzero[b]))));
    }
  }
  return coherence;
}

}  // namespace sparsekit
