#include "tensorank/schmidt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace tensorank {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(m.data.data(), m.rows, m.cols);
}

Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(e.rows(), e.cols());
  for (std::int64_t i = 0; i < e.rows(); ++i)
    for (std::int64_t j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

}  // namespace

Matrix SchmidtFactors::reconstruct() const {
  Matrix out(left.rows, right.rows);
  for (int a = 0; a < spectrum.count(); ++a) {
    const double c = std::sqrt(spectrum.lambdas[a]);
    for (std::int64_t i = 0; i < left.rows; ++i) {
      const double ui = c * left(i, a);
      for (std::int64_t j = 0; j < right.rows; ++j) out(i, j) += ui * right(j, a);
    }
  }
  return out;
}

SchmidtFactors schmidt_decompose(const Matrix& a, double tol) {
  if (tol <= 0.0 || tol >= 1.0) throw DomainError("tol must be in (0, 1)");
  for (double v : a.data)
    if (!std::isfinite(v)) throw DomainError("matrix has non-finite entries");

  Eigen::MatrixXd m = to_eigen(a);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();

  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  int r = 0;
  while (r < sigma.size() && sigma(r) > tol * smax && sigma(r) > 0.0) ++r;
  if (smax == 0.0) r = 0;

  SchmidtFactors f;
  f.spectrum.lambdas.resize(r);
  for (int i = 0; i < r; ++i) f.spectrum.lambdas[i] = sigma(i) * sigma(i);
  f.spectrum.total_weight = m.squaredNorm();

  if (r == 0) {
    // keep well-formed 1-column placeholders for the zero matrix
    f.left = Matrix(a.rows, 1);
    f.right = Matrix(a.cols, 1);
    return f;
  }
  f.left = from_eigen(svd.matrixU().leftCols(r));
  f.right = from_eigen(svd.matrixV().leftCols(r));
  return f;
}

std::pair<SchmidtFactors, double> truncate(const SchmidtFactors& f, int r) {
  const int R = f.spectrum.count();
  if (r < 1 || r > R) throw DomainError("retained rank out of range [1, R]");
  SchmidtFactors out;
  out.spectrum.lambdas.assign(f.spectrum.lambdas.begin(), f.spectrum.lambdas.begin() + r);
  out.spectrum.total_weight = 0.0;
  for (double l : out.spectrum.lambdas) out.spectrum.total_weight += l;
  out.left = Matrix(f.left.rows, r);
  out.right = Matrix(f.right.rows, r);
  for (std::int64_t i = 0; i < f.left.rows; ++i)
    for (int j = 0; j < r; ++j) out.left(i, j) = f.left(i, j);
  for (std::int64_t i = 0; i < f.right.rows; ++i)
    for (int j = 0; j < r; ++j) out.right(i, j) = f.right(i, j);
  double err = 0.0;
  for (int a = r; a < R; ++a) err += f.spectrum.lambdas[a];
  return {std::move(out), err};
}

double renyi_entropy(const SchmidtSpectrum& s, double n) {
  if (s.lambdas.empty()) throw DomainError("empty spectrum");
  if (s.total_weight <= 0.0) throw DomainError("total weight must be positive");
  if (n < 0.0) throw DomainError("Renyi order must be >= 0");

  double total = 0.0;
  for (double l : s.lambdas) total += l;
  if (total <= 0.0) throw DomainError("spectrum has no weight");

  if (n == 0.0) {
    int nz = 0;
    for (double l : s.lambdas)
      if (l > 0.0) ++nz;
    return std::log2(static_cast<double>(nz));
  }
  if (n == 1.0) {
    double h = 0.0;
    for (double l : s.lambdas) {
      if (l <= 0.0) continue;
      const double p = l / total;
      h -= p * std::log2(p);
    }
    return h;
  }
  double sum = 0.0;
  for (double l : s.lambdas) {
    if (l <= 0.0) continue;
    sum += std::pow(l / total, n);
  }
  return std::log2(sum) / (1.0 - n);
}

int numerical_rank(const SchmidtSpectrum& s, double tol) {
  if (tol <= 0.0 || tol >= 1.0) throw DomainError("tol must be in (0, 1)");
  if (s.lambdas.empty()) return 0;
  const double lmax = s.lambdas.front();
  if (lmax <= 0.0) return 0;
  int r = 0;
  for (double l : s.lambdas)
    if (l > tol * tol * lmax) ++r;
  return r;
}

SchmidtSpectrum matrix_spectrum(const Matrix& a) {
  Eigen::MatrixXd m = to_eigen(a);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  SchmidtSpectrum s;
  s.lambdas.resize(svd.singularValues().size());
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    const double sv = svd.singularValues()(i);
    s.lambdas[i] = sv * sv;
  }
  s.total_weight = m.squaredNorm();
  return s;
}

int matricization_rank(const DenseTensor& t, const ModeBipartition& p, double tol) {
  return numerical_rank(matrix_spectrum(matricize(t, p)), tol);
}

}  // namespace tensorank
