#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tensorank/errors.hpp"

namespace tensorank {

/// Dense order-L tensor, row-major in ascending mode order. Immutable by
/// convention: operations return new values.
struct DenseTensor {
  std::vector<std::int64_t> dims;
  std::vector<double> data;

  DenseTensor() = default;
  DenseTensor(std::vector<std::int64_t> d, std::vector<double> values);
  /// Zero-filled tensor with the given dims.
  explicit DenseTensor(std::vector<std::int64_t> d);

  int order() const { return static_cast<int>(dims.size()); }
  std::int64_t size() const;

  double& at(const std::vector<std::int64_t>& idx);
  double at(const std::vector<std::int64_t>& idx) const;
};

/// Row-major matrix.
struct Matrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::int64_t r, std::int64_t c);
  Matrix(std::int64_t r, std::int64_t c, std::vector<double> values);

  double& operator()(std::int64_t i, std::int64_t j) { return data[i * cols + j]; }
  double operator()(std::int64_t i, std::int64_t j) const { return data[i * cols + j]; }
};

/// Canonical mode bipartition: part_a is a bitmask over [0, L). The smaller
/// part is part_a; when both halves have equal size, mode 0 lies in part_a.
struct ModeBipartition {
  std::uint32_t part_a = 0;
  int order = 0;

  ModeBipartition() = default;
  /// Validates canonical form; throws DimensionError otherwise.
  ModeBipartition(std::uint32_t mask, int L);

  /// Canonicalizes an arbitrary nonempty proper subset (flips to the
  /// complement when needed).
  static ModeBipartition canonical(std::uint32_t mask, int L);

  int part_size() const;
  bool contains(int mode) const { return (part_a >> mode) & 1u; }
  std::uint32_t complement() const { return ~part_a & ((order >= 32 ? ~0u : (1u << order) - 1u)); }

  /// Modes of part_a / complement in ascending index order.
  std::vector<int> modes_a() const;
  std::vector<int> modes_b() const;

  bool operator==(const ModeBipartition& o) const = default;
};

/// Unfold the tensor into a matrix: rows indexed by part_a modes (ascending,
/// row-major), columns by the complement likewise.
Matrix matricize(const DenseTensor& t, const ModeBipartition& p);

/// Inverse of matricize for the same bipartition.
DenseTensor dematricize(const Matrix& m, const std::vector<std::int64_t>& dims,
                        const ModeBipartition& p);

/// Unfolding for an arbitrary (not necessarily canonical) nonempty proper
/// mode subset; rows are the masked modes. Used by the decomposition
/// algorithms, which need a fixed row side.
Matrix unfold(const DenseTensor& t, std::uint32_t row_mask);
DenseTensor fold(const Matrix& m, const std::vector<std::int64_t>& dims,
                 std::uint32_t row_mask);

/// All canonical bipartitions whose smaller part has exactly m modes.
std::vector<ModeBipartition> enumerate_bipartitions(int L, int m);

/// Pairwise contraction over the listed (mode-of-t1, mode-of-t2) pairs.
/// Surviving modes keep t1-then-t2 ascending order.
DenseTensor contract_all(const DenseTensor& t1, const DenseTensor& t2,
                         const std::vector<std::pair<int, int>>& pairs);

/// Permute modes: result mode k is input mode perm[k].
DenseTensor permute(const DenseTensor& t, const std::vector<int>& perm);

double frobenius_norm_sq(const DenseTensor& t);
double frobenius_norm_sq(const Matrix& m);

/// Binomial coefficient (exact, throws on overflow at desk scale).
std::uint64_t binomial(int n, int k);

}  // namespace tensorank
