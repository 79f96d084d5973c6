#pragma once

#include <variant>
#include <vector>

#include "sparsekit/linalg.hpp"

namespace sparsekit {

/// Default residual tolerance of the Noiseless stopping rule.
inline constexpr double kDefaultNoiselessEps = 1e-10;

/// Dictionary columns must have unit l2 norm within this tolerance, or be
/// all-zero.
inline constexpr double kUnitNormTolerance = 1e-6;

/// The solver stops when the best available |correlation| falls to this
/// level (stagnation guard).
inline constexpr double kStagnationCorrelation = 1e-12;

/// l0_oracle guards: the oracle enumerates supports exhaustively and is
/// only meant for tiny verification instances.
inline constexpr Index kOracleMaxColumns = 24;
inline constexpr Index kOracleMaxSupport = 4;

/// Stop once `sparsity` atoms have been selected.
struct ExactSparsity {
  Index sparsity = 1;
};

/// Stop once the residual l2 norm is <= bound (norm-bounded noise).
struct ResidualBound {
  double bound = 0.0;
};

/// Noise-free stopping: residual l2 norm <= eps.
struct Noiseless {
  double eps = kDefaultNoiselessEps;
};

using StoppingRule = std::variant<ExactSparsity, ResidualBound, Noiseless>;

/// Result of a sparse solve against a dictionary with p columns.
struct SparseCode {
  /// Selected column indices, in selection order.
  std::vector<Index> support;
  /// Dense coefficient vector of length p; exactly zero off the support.
  Vec coeffs;
  double final_residual_norm = 0.0;
  Index iterations = 0;
  /// ||y||, followed by the residual norm after each iteration.
  std::vector<double> residual_norms;
};

/// Orthogonal Matching Pursuit. Greedily selects the column of maximal
/// |<residual, column>| (ties go to the smallest index), refits all selected
/// columns by least squares, and recomputes the residual from scratch, until
/// the stopping rule fires, min(rows, cols) atoms are selected, or the best
/// correlation drops below kStagnationCorrelation.
///
/// Columns of `dictionary` must be unit-norm within kUnitNormTolerance or
/// all-zero, and at least one column must be nonzero.
SparseCode omp_solve(const Mat& dictionary, const Vec& signal,
                     const StoppingRule& rule);

/// Exact combinatorial sparsest-fit solver for tiny instances (cols <=
/// kOracleMaxColumns, max_support <= kOracleMaxSupport). Enumerates supports
/// of size 1..max_support in lexicographic order and returns the first
/// support of the smallest cardinality whose least-squares residual is
/// <= eps; if none qualifies, returns the minimum-residual support of size
/// max_support.
SparseCode l0_oracle(const Mat& dictionary, const Vec& signal,
                     Index max_support, double eps);

/// Largest |<column_i, column_j>| over distinct nonzero columns. Requires at
/// least two nonzero columns; meaningful for unit-normalized dictionaries.
double mutual_coherence(const Mat& dictionary);

}  // namespace sparsekit
