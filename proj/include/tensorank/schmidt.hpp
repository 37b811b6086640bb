#pragma once

#include <cmath>
#include <vector>

#include "tensorank/core_tensor.hpp"

namespace tensorank {

/// Default relative threshold on singular values.
inline constexpr double kDefaultTol = 1e-10;

/// Entanglement spectrum of a bipartition: weights lambda_alpha = sigma^2,
/// descending. total_weight tracks the squared Frobenius norm of the
/// decomposed matrix.
struct SchmidtSpectrum {
  std::vector<double> lambdas;
  double total_weight = 0.0;

  int count() const { return static_cast<int>(lambdas.size()); }
  /// Derived view: the singular value sqrt(lambda_i).
  double singular_value(int i) const { return std::sqrt(lambdas[i]); }
};

/// Orthonormal Schmidt vectors stacked as matrix columns plus the spectrum.
struct SchmidtFactors {
  Matrix left;   // rows x R, columns u^alpha
  Matrix right;  // cols x R, columns v^alpha
  SchmidtSpectrum spectrum;

  /// Sum_alpha sqrt(lambda_alpha) u^alpha (v^alpha)^T.
  Matrix reconstruct() const;
};

/// SVD of A with weights below tol^2 * lambda_max dropped. The zero matrix
/// yields an empty spectrum.
SchmidtFactors schmidt_decompose(const Matrix& a, double tol = kDefaultTol);

/// Keep the first r components. Returns the truncated factors and the
/// bookkept squared error Sum_{alpha>r} lambda_alpha.
std::pair<SchmidtFactors, double> truncate(const SchmidtFactors& f, int r);

/// Renyi entropy of order n (base-2); n = 1 is the Shannon limit, n = 0
/// counts nonzero weights.
double renyi_entropy(const SchmidtSpectrum& s, double n);

/// Count of lambda_alpha > tol^2 * lambda_max; 0 for an empty/zero spectrum.
int numerical_rank(const SchmidtSpectrum& s, double tol = kDefaultTol);

/// Full spectrum of a matrix (no dropping beyond exact zeros of the SVD).
SchmidtSpectrum matrix_spectrum(const Matrix& a);

/// Numerical rank of a matricization of t across bipartition p.
int matricization_rank(const DenseTensor& t, const ModeBipartition& p,
                       double tol = kDefaultTol);

}  // namespace tensorank
