#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tensorank/formats.hpp"
#include "tensorank/schmidt.hpp"

namespace tensorank {

/// Per-step truncation bookkeeping for the sequential decompositions.
/// achieved_error_sq is recomputed against the input; the bound is the sum
/// of per-step discarded Schmidt weights.
struct DecompositionReport {
  struct Step {
    std::string label;
    int retained_rank = 0;
    double discarded_weight = 0.0;
  };
  std::vector<Step> steps;
  double error_bound_sq = 0.0;
  double achieved_error_sq = 0.0;
  double input_norm_sq = 0.0;

  double relative_error() const;
};

/// TT-SVD: L-1 successive Schmidt decompositions, slicing one mode at a
/// time. max_rank = 0 disables the rank cap; eps = 0 disables the squared
/// error budget (split uniformly, eps/(L-1) per step).
std::pair<TTFormat, DecompositionReport> tt_svd(const DenseTensor& t,
                                                std::int64_t max_rank = 0,
                                                double eps = 0.0,
                                                double tol = kDefaultTol);

/// HOSVD: per-mode Schmidt decompositions; factor k holds the leading left
/// vectors of the mode-k unfolding, the core is the input contracted with
/// all factor transposes.
std::pair<TuckerFormat, DecompositionReport> hosvd_tucker(
    const DenseTensor& t, const std::vector<std::int64_t>& ranks,
    double tol = kDefaultTol);

/// Root-to-leaves HT decomposition over contiguous halves; every Schmidt
/// step is truncated to max_rank (0 = no cap). Exact when
/// max_rank >= D^(L/2).
std::pair<HTFormat, DecompositionReport> ht_decompose(const DenseTensor& t,
                                                      std::int64_t max_rank = 0,
                                                      double tol = kDefaultTol);

}  // namespace tensorank
