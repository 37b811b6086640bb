#include "tensorank/core_tensor.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace tensorank {

namespace {

std::int64_t checked_product(const std::vector<std::int64_t>& dims) {
  std::int64_t n = 1;
  for (auto d : dims) {
    if (d < 1) throw DimensionError("tensor dims must be >= 1");
    n *= d;
  }
  return n;
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::int64_t> d, std::vector<double> values)
    : dims(std::move(d)), data(std::move(values)) {
  if (dims.empty()) throw DimensionError("tensor order must be >= 1");
  if (checked_product(dims) != static_cast<std::int64_t>(data.size()))
    throw DimensionError("data length does not match product of dims");
}

DenseTensor::DenseTensor(std::vector<std::int64_t> d) : dims(std::move(d)) {
  if (dims.empty()) throw DimensionError("tensor order must be >= 1");
  data.assign(static_cast<std::size_t>(checked_product(dims)), 0.0);
}

std::int64_t DenseTensor::size() const {
  return static_cast<std::int64_t>(data.size());
}

double& DenseTensor::at(const std::vector<std::int64_t>& idx) {
  std::int64_t flat = 0;
  for (int k = 0; k < order(); ++k) flat = flat * dims[k] + idx[k];
  return data[flat];
}

double DenseTensor::at(const std::vector<std::int64_t>& idx) const {
  std::int64_t flat = 0;
  for (int k = 0; k < order(); ++k) flat = flat * dims[k] + idx[k];
  return data[flat];
}

Matrix::Matrix(std::int64_t r, std::int64_t c) : rows(r), cols(c) {
  if (r < 1 || c < 1) throw DimensionError("matrix sizes must be positive");
  data.assign(static_cast<std::size_t>(r * c), 0.0);
}

Matrix::Matrix(std::int64_t r, std::int64_t c, std::vector<double> values)
    : rows(r), cols(c), data(std::move(values)) {
  if (r < 1 || c < 1) throw DimensionError("matrix sizes must be positive");
  if (static_cast<std::int64_t>(data.size()) != r * c)
    throw DimensionError("matrix data length does not match rows*cols");
}

ModeBipartition::ModeBipartition(std::uint32_t mask, int L) : part_a(mask), order(L) {
  if (L < 2 || L > 32) throw DimensionError("bipartition order must be in [2, 32]");
  const std::uint32_t full = (L == 32) ? ~0u : ((1u << L) - 1u);
  if (mask == 0 || (mask & ~full) != 0 || mask == full)
    throw DimensionError("part_a must be a nonempty proper subset of modes");
  const int m = part_size();
  if (2 * m > L || (2 * m == L && !contains(0)))
    throw DimensionError("bipartition is not canonical");
}

ModeBipartition ModeBipartition::canonical(std::uint32_t mask, int L) {
  const std::uint32_t full = (L == 32) ? ~0u : ((1u << L) - 1u);
  const int m = std::popcount(mask & full);
  if (2 * m > L || (2 * m == L && !((mask >> 0) & 1u)))
    mask = ~mask & full;
  return ModeBipartition(mask, L);
}

int ModeBipartition::part_size() const { return std::popcount(part_a); }

std::vector<int> ModeBipartition::modes_a() const {
  std::vector<int> out;
  for (int i = 0; i < order; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::vector<int> ModeBipartition::modes_b() const {
  std::vector<int> out;
  for (int i = 0; i < order; ++i)
    if (!contains(i)) out.push_back(i);
  return out;
}

Matrix unfold(const DenseTensor& t, std::uint32_t row_mask) {
  const int L = t.order();
  const std::uint32_t full = (L == 32) ? ~0u : ((1u << L) - 1u);
  if (row_mask == 0 || row_mask == full || (row_mask & ~full) != 0)
    throw DimensionError("row mask must be a nonempty proper subset of modes");

  std::int64_t rows = 1, cols = 1;
  for (int k = 0; k < L; ++k) {
    if ((row_mask >> k) & 1u)
      rows *= t.dims[k];
    else
      cols *= t.dims[k];
  }

  // Strides of each mode within the row / column multi-index.
  std::vector<std::int64_t> stride(L, 0);
  std::int64_t acc_r = 1, acc_c = 1;
  for (int k = L - 1; k >= 0; --k) {
    if ((row_mask >> k) & 1u) {
      stride[k] = acc_r;
      acc_r *= t.dims[k];
    } else {
      stride[k] = acc_c;
      acc_c *= t.dims[k];
    }
  }

  Matrix m(rows, cols);
  std::vector<std::int64_t> idx(L, 0);
  for (std::int64_t flat = 0; flat < t.size(); ++flat) {
    std::int64_t r = 0, c = 0;
    for (int k = 0; k < L; ++k) {
      if ((row_mask >> k) & 1u)
        r += idx[k] * stride[k];
      else
        c += idx[k] * stride[k];
    }
    m(r, c) = t.data[flat];
    for (int k = L - 1; k >= 0; --k) {
      if (++idx[k] < t.dims[k]) break;
      idx[k] = 0;
    }
  }
  return m;
}

DenseTensor fold(const Matrix& m, const std::vector<std::int64_t>& dims,
                 std::uint32_t row_mask) {
  DenseTensor t(dims);
  const int L = t.order();
  std::vector<std::int64_t> stride(L, 0);
  std::int64_t acc_r = 1, acc_c = 1;
  for (int k = L - 1; k >= 0; --k) {
    if ((row_mask >> k) & 1u) {
      stride[k] = acc_r;
      acc_r *= dims[k];
    } else {
      stride[k] = acc_c;
      acc_c *= dims[k];
    }
  }
  if (acc_r != m.rows || acc_c != m.cols)
    throw DimensionError("matrix shape does not match dims under this mask");
  std::vector<std::int64_t> idx(L, 0);
  for (std::int64_t flat = 0; flat < t.size(); ++flat) {
    std::int64_t r = 0, c = 0;
    for (int k = 0; k < L; ++k) {
      if ((row_mask >> k) & 1u)
        r += idx[k] * stride[k];
      else
        c += idx[k] * stride[k];
    }
    t.data[flat] = m(r, c);
    for (int k = L - 1; k >= 0; --k) {
      if (++idx[k] < t.dims[k]) break;
      idx[k] = 0;
    }
  }
  return t;
}

Matrix matricize(const DenseTensor& t, const ModeBipartition& p) {
  if (p.order != t.order())
    throw DimensionError("bipartition order does not match tensor order");
  return unfold(t, p.part_a);
}

DenseTensor dematricize(const Matrix& m, const std::vector<std::int64_t>& dims,
                        const ModeBipartition& p) {
  if (p.order != static_cast<int>(dims.size()))
    throw DimensionError("bipartition order does not match dims");
  return fold(m, dims, p.part_a);
}

std::vector<ModeBipartition> enumerate_bipartitions(int L, int m) {
  if (L < 2 || L > 32) throw DimensionError("order must be in [2, 32]");
  if (m < 1 || 2 * m > L) throw DomainError("cluster size must satisfy 1 <= m <= L/2");
  std::vector<ModeBipartition> out;
  const bool half = (2 * m == L);
  // Gosper's hack over m-bit subsets of [0, L).
  std::uint32_t mask = (1u << m) - 1u;
  const std::uint32_t limit = (L == 32) ? ~0u : (1u << L);
  while (L == 32 || mask < limit) {
    if (!half || (mask & 1u)) out.emplace_back(mask, L);
    const std::uint32_t c = mask & (0u - mask);
    const std::uint32_t r = mask + c;
    const std::uint32_t next = (((r ^ mask) >> 2) / c) | r;
    if (next < mask || (L < 32 && next >= limit)) break;
    mask = next;
  }
  return out;
}

DenseTensor contract_all(const DenseTensor& t1, const DenseTensor& t2,
                         const std::vector<std::pair<int, int>>& pairs) {
  const int L1 = t1.order(), L2 = t2.order();
  std::vector<bool> paired1(L1, false), paired2(L2, false);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= L1 || b < 0 || b >= L2)
      throw DimensionError("contraction mode index out of range");
    if (paired1[a] || paired2[b]) throw DimensionError("mode paired twice");
    if (t1.dims[a] != t2.dims[b]) throw DimensionError("paired dims differ");
    paired1[a] = true;
    paired2[b] = true;
  }

  std::vector<int> free1, free2;
  for (int k = 0; k < L1; ++k)
    if (!paired1[k]) free1.push_back(k);
  for (int k = 0; k < L2; ++k)
    if (!paired2[k]) free2.push_back(k);
  if (free1.empty() && free2.empty())
    throw DimensionError("full contraction to a scalar is not representable");

  std::vector<std::int64_t> out_dims;
  for (int k : free1) out_dims.push_back(t1.dims[k]);
  for (int k : free2) out_dims.push_back(t2.dims[k]);

  // Group each operand as (free x paired) matrices sharing paired order.
  std::uint32_t mask1 = 0, mask2 = 0;
  for (auto [a, b] : pairs) {
    mask1 |= 1u << a;
    mask2 |= 1u << b;
  }
  std::int64_t k_total = 1;
  for (auto [a, b] : pairs) {
    (void)b;
    k_total *= t1.dims[a];
  }

  if (pairs.empty()) {
    // outer product
    DenseTensor out(out_dims);
    std::int64_t n2 = t2.size();
    for (std::int64_t i = 0; i < t1.size(); ++i)
      for (std::int64_t j = 0; j < n2; ++j) out.data[i * n2 + j] = t1.data[i] * t2.data[j];
    return out;
  }

  // The paired multi-index must enumerate identically on both sides: use the
  // order given by `pairs`. Build flat index maps free-major, paired-minor.
  auto build = [&](const DenseTensor& t, const std::vector<int>& free,
                   std::vector<int> paired_modes) {
    std::vector<int> perm;
    perm.reserve(t.order());
    for (int k : free) perm.push_back(k);
    for (int k : paired_modes) perm.push_back(k);
    return permute(t, perm);
  };
  std::vector<int> pm1, pm2;
  for (auto [a, b] : pairs) {
    pm1.push_back(a);
    pm2.push_back(b);
  }
  DenseTensor a = build(t1, free1, pm1);
  DenseTensor b = build(t2, free2, pm2);

  const std::int64_t m = t1.size() / k_total;
  const std::int64_t n = t2.size() / k_total;
  DenseTensor out(out_dims);
  // a is (m x k), b is (n x k); out = a * b^T
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      double s = 0.0;
      const double* pa = a.data.data() + i * k_total;
      const double* pb = b.data.data() + j * k_total;
      for (std::int64_t k = 0; k < k_total; ++k) s += pa[k] * pb[k];
      out.data[i * n + j] = s;
    }
  }
  return out;
}

DenseTensor permute(const DenseTensor& t, const std::vector<int>& perm) {
  const int L = t.order();
  if (static_cast<int>(perm.size()) != L) throw DimensionError("permutation length mismatch");
  std::vector<std::int64_t> out_dims(L);
  for (int k = 0; k < L; ++k) out_dims[k] = t.dims[perm[k]];

  std::vector<std::int64_t> in_stride(L, 1);
  for (int k = L - 2; k >= 0; --k) in_stride[k] = in_stride[k + 1] * t.dims[k + 1];

  DenseTensor out(out_dims);
  std::vector<std::int64_t> idx(L, 0);
  for (std::int64_t flat = 0; flat < out.size(); ++flat) {
    std::int64_t src = 0;
    for (int k = 0; k < L; ++k) src += idx[k] * in_stride[perm[k]];
    out.data[flat] = t.data[src];
    for (int k = L - 1; k >= 0; --k) {
      if (++idx[k] < out_dims[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

double frobenius_norm_sq(const DenseTensor& t) {
  double s = 0.0;
  for (double v : t.data) s += v * v;
  return s;
}

double frobenius_norm_sq(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data) s += v * v;
  return s;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

}  // namespace tensorank
