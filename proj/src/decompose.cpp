#include "tensorank/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tensorank {

namespace {

void check_finite(const DenseTensor& t) {
  for (double v : t.data)
    if (!std::isfinite(v)) throw DomainError("input tensor has non-finite entries");
}

/// Retained rank: all kept weights, then shrink while the tail fits the
/// budget, then apply the hard cap. Always keeps at least one component of a
/// nonzero spectrum.
int pick_rank(const SchmidtSpectrum& s, std::int64_t max_rank, double step_eps) {
  int r = s.count();
  if (r == 0) return 0;
  if (step_eps > 0.0) {
    double tail = 0.0;
    while (r > 1 && tail + s.lambdas[r - 1] <= step_eps) {
      tail += s.lambdas[r - 1];
      --r;
    }
  }
  if (max_rank > 0) r = std::min<std::int64_t>(r, max_rank);
  return std::max(r, 1);
}

double discarded_weight(const SchmidtFactors& f, int r) {
  double kept = 0.0;
  for (int i = 0; i < r; ++i) kept += f.spectrum.lambdas[i];
  return std::max(f.spectrum.total_weight - kept, 0.0);
}

}  // namespace

double DecompositionReport::relative_error() const {
  if (input_norm_sq <= 0.0) return 0.0;
  return std::sqrt(std::max(achieved_error_sq, 0.0) / input_norm_sq);
}

std::pair<TTFormat, DecompositionReport> tt_svd(const DenseTensor& t,
                                                std::int64_t max_rank, double eps,
                                                double tol) {
  check_finite(t);
  const int L = t.order();
  if (L < 2) throw DomainError("TT-SVD needs order >= 2");
  const double step_eps = eps > 0.0 ? eps / static_cast<double>(L - 1) : 0.0;

  DecompositionReport report;
  report.input_norm_sq = frobenius_norm_sq(t);

  TTFormat tt;
  std::int64_t r_prev = 1;
  std::int64_t rest = t.size();
  Matrix cur(1, rest, t.data);

  for (int i = 0; i < L - 1; ++i) {
    const std::int64_t d = t.dims[i];
    rest /= d;
    Matrix m(r_prev * d, rest, std::move(cur.data));

    SchmidtFactors f = schmidt_decompose(m, tol);
    const int r = pick_rank(f.spectrum, max_rank, step_eps);
    if (r == 0) {
      // happens only for the zero tensor: all remaining cores stay zero
      tt.cores.emplace_back(std::vector<std::int64_t>{r_prev, d, 1});
      for (int k = i + 1; k < L; ++k)
        tt.cores.emplace_back(std::vector<std::int64_t>{1, t.dims[k], 1});
      report.steps.push_back({"bond" + std::to_string(i + 1), 0, 0.0});
      report.achieved_error_sq = frobenius_norm_sq(t);
      return {std::move(tt), std::move(report)};
    }
    auto [tf, disc] = truncate(f, r);
    (void)disc;
    const double step_disc = discarded_weight(f, r);
    report.steps.push_back({"bond" + std::to_string(i + 1), r, step_disc});
    report.error_bound_sq += step_disc;

    tt.cores.push_back(DenseTensor({r_prev, d, r}, tf.left.data));

    // carry sqrt(lambda) * V^T forward
    Matrix next(r, rest);
    for (int a = 0; a < r; ++a) {
      const double c = std::sqrt(tf.spectrum.lambdas[a]);
      for (std::int64_t j = 0; j < rest; ++j) next(a, j) = c * tf.right(j, a);
    }
    cur = std::move(next);
    r_prev = r;
  }
  tt.cores.push_back(DenseTensor({r_prev, t.dims[L - 1], 1}, cur.data));

  const DenseTensor rec = to_dense(tt, t.size());
  double err = 0.0;
  for (std::int64_t i = 0; i < t.size(); ++i) {
    const double d = t.data[i] - rec.data[i];
    err += d * d;
  }
  report.achieved_error_sq = err;
  return {std::move(tt), std::move(report)};
}

std::pair<TuckerFormat, DecompositionReport> hosvd_tucker(
    const DenseTensor& t, const std::vector<std::int64_t>& ranks, double tol) {
  check_finite(t);
  const int L = t.order();
  if (static_cast<int>(ranks.size()) != L)
    throw DomainError("one rank cap per mode required");
  for (int k = 0; k < L; ++k)
    if (ranks[k] < 1 || ranks[k] > t.dims[k])
      throw DomainError("rank cap must be in [1, dims[k]]");

  DecompositionReport report;
  report.input_norm_sq = frobenius_norm_sq(t);

  TuckerFormat tucker;
  for (int k = 0; k < L; ++k) {
    SchmidtFactors f = schmidt_decompose(unfold(t, 1u << k), tol);
    int r = static_cast<int>(std::min<std::int64_t>(ranks[k], std::max(f.spectrum.count(), 1)));
    if (f.spectrum.count() == 0) {
      tucker.factors.push_back(Matrix(t.dims[k], 1));
      report.steps.push_back({"mode" + std::to_string(k), 1, 0.0});
      continue;
    }
    auto [tf, disc] = truncate(f, r);
    (void)disc;
    const double step_disc = discarded_weight(f, r);
    tucker.factors.push_back(std::move(tf.left));
    report.steps.push_back({"mode" + std::to_string(k), r, step_disc});
    report.error_bound_sq += step_disc;
  }

  // core = input contracted with factor transposes; each step consumes the
  // current mode 0 and appends the reduced mode at the end.
  DenseTensor core = t;
  for (int k = 0; k < L; ++k) {
    const Matrix& u = tucker.factors[k];
    core = contract_all(core, DenseTensor({u.rows, u.cols}, u.data), {{0, 0}});
  }
  tucker.core = std::move(core);

  const DenseTensor rec = to_dense(tucker, t.size());
  double err = 0.0;
  for (std::int64_t i = 0; i < t.size(); ++i) {
    const double d = t.data[i] - rec.data[i];
    err += d * d;
  }
  report.achieved_error_sq = err;
  return {std::move(tucker), std::move(report)};
}

namespace {

struct HTWork {
  HTFormat ht;
  DecompositionReport report;
  std::int64_t max_rank = 0;
  double tol = kDefaultTol;
  int H = 0;
};

/// Decompose the basis stack U (dims = block physical dims + [r_out]) for the
/// subtree rooted at level h covering `width` leaves starting at `leaf0`.
void ht_node(HTWork& w, const DenseTensor& u, int h, int leaf0, int width) {
  if (width == 1) {
    w.ht.leaf_factors[leaf0] = Matrix(u.dims[0], u.dims[1], u.data);
    return;
  }
  const int half = width / 2;
  const int L = u.order();  // width block modes + 1 bond mode

  std::uint32_t left_mask = 0, right_mask = 0;
  for (int k = 0; k < half; ++k) left_mask |= 1u << k;
  for (int k = half; k < width; ++k) right_mask |= 1u << k;

  SchmidtFactors f1 = schmidt_decompose(unfold(u, left_mask), w.tol);
  const int r1 = std::max(
      1, static_cast<int>(w.max_rank > 0
                              ? std::min<std::int64_t>(f1.spectrum.count(), w.max_rank)
                              : f1.spectrum.count()));
  auto [tf1, d1] = truncate(f1, std::min(r1, std::max(f1.spectrum.count(), 1)));
  (void)d1;
  const double disc1 = discarded_weight(f1, r1);

  SchmidtFactors f2 = schmidt_decompose(unfold(u, right_mask), w.tol);
  const int r2 = std::max(
      1, static_cast<int>(w.max_rank > 0
                              ? std::min<std::int64_t>(f2.spectrum.count(), w.max_rank)
                              : f2.spectrum.count()));
  auto [tf2, d2] = truncate(f2, std::min(r2, std::max(f2.spectrum.count(), 1)));
  (void)d2;
  const double disc2 = discarded_weight(f2, r2);

  const std::string label = "node_h" + std::to_string(h) + "_leaf" + std::to_string(leaf0);
  w.report.steps.push_back({label + "_left", r1, disc1});
  w.report.steps.push_back({label + "_right", r2, disc2});
  w.report.error_bound_sq += disc1 + disc2;

  // transfer[b1, b2, a] = sum_{x1, x2} U[x1, x2, a] u1[x1, b1] u2[x2, b2]
  std::int64_t dl = 1, dr = 1;
  for (int k = 0; k < half; ++k) dl *= u.dims[k];
  for (int k = half; k < width; ++k) dr *= u.dims[k];
  const std::int64_t ro = u.dims[L - 1];
  DenseTensor lam({r1, r2, ro});
  for (std::int64_t b1 = 0; b1 < r1; ++b1)
    for (std::int64_t b2 = 0; b2 < r2; ++b2)
      for (std::int64_t a = 0; a < ro; ++a) {
        double s = 0.0;
        for (std::int64_t x1 = 0; x1 < dl; ++x1)
          for (std::int64_t x2 = 0; x2 < dr; ++x2)
            s += u.data[(x1 * dr + x2) * ro + a] * tf1.left(x1, b1) * tf2.left(x2, b2);
        lam.data[(b1 * r2 + b2) * ro + a] = s;
      }
  w.ht.transfer[h - 1][leaf0 / width] = std::move(lam);

  // children: the orthonormal bases become new basis stacks
  std::vector<std::int64_t> ldims(u.dims.begin(), u.dims.begin() + half);
  ldims.push_back(r1);
  std::vector<std::int64_t> rdims(u.dims.begin() + half, u.dims.begin() + width);
  rdims.push_back(r2);
  ht_node(w, DenseTensor(ldims, tf1.left.data), h - 1, leaf0, half);
  ht_node(w, DenseTensor(rdims, tf2.left.data), h - 1, leaf0 + half, half);
}

}  // namespace

std::pair<HTFormat, DecompositionReport> ht_decompose(const DenseTensor& t,
                                                      std::int64_t max_rank,
                                                      double tol) {
  check_finite(t);
  const int L = t.order();
  if (L < 2 || !is_power_of_two(L)) throw DomainError("HT needs order a power of 2");

  HTWork w;
  w.max_rank = max_rank;
  w.tol = tol;
  w.report.input_norm_sq = frobenius_norm_sq(t);
  int H = 0;
  for (int l = L; l > 1; l /= 2) ++H;
  w.H = H;
  w.ht.leaf_factors.resize(L);
  for (int h = 1; h < H; ++h) w.ht.transfer.emplace_back(L >> h);

  // root split (L/2 | L/2)
  std::uint32_t left_mask = 0;
  for (int k = 0; k < L / 2; ++k) left_mask |= 1u << k;
  SchmidtFactors f = schmidt_decompose(unfold(t, left_mask), tol);
  int r = std::max(1, static_cast<int>(max_rank > 0
                                           ? std::min<std::int64_t>(f.spectrum.count(), max_rank)
                                           : f.spectrum.count()));
  r = std::min(r, std::max(f.spectrum.count(), 1));
  if (f.spectrum.count() == 0) {
    // zero tensor
    w.ht = make_ht(L, t.dims[0], 1, Fill::Zeros);
    w.report.achieved_error_sq = 0.0;
    return {std::move(w.ht), std::move(w.report)};
  }
  auto [tf, d0] = truncate(f, r);
  (void)d0;
  const double disc = discarded_weight(f, r);
  w.report.steps.push_back({"root", r, disc});
  w.report.error_bound_sq += disc;

  w.ht.top = Matrix(r, r);
  for (int a = 0; a < r; ++a) w.ht.top(a, a) = std::sqrt(tf.spectrum.lambdas[a]);

  std::vector<std::int64_t> ldims(t.dims.begin(), t.dims.begin() + L / 2);
  ldims.push_back(r);
  std::vector<std::int64_t> rdims(t.dims.begin() + L / 2, t.dims.end());
  rdims.push_back(r);
  ht_node(w, DenseTensor(ldims, tf.left.data), H - 1, 0, L / 2);
  ht_node(w, DenseTensor(rdims, tf.right.data), H - 1, L / 2, L / 2);

  const DenseTensor rec = to_dense(w.ht, t.size());
  double err = 0.0;
  for (std::int64_t i = 0; i < t.size(); ++i) {
    const double d = t.data[i] - rec.data[i];
    err += d * d;
  }
  w.report.achieved_error_sq = err;
  return {std::move(w.ht), std::move(w.report)};
}

}  // namespace tensorank
