#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tensorank/formats.hpp"
#include "tensorank/schmidt.hpp"

namespace tensorank {

/// Default cap on exhaustive bipartition enumeration.
inline constexpr int kDefaultExhaustiveCap = 16;

/// Numerical rank of every canonical matricization, grouped by cluster size.
struct RankProfile {
  struct Entry {
    ModeBipartition bipartition;
    int rank = 0;
  };
  std::vector<std::vector<Entry>> by_m;  // index m-1, m in [1, m_max]

  int max_rank(int m) const;
  int min_rank(int m) const;
  int m_max() const { return static_cast<int>(by_m.size()); }
};

/// Minimum-weight cut separating a bipartition's open legs. Weight is the
/// sum of log2(dim) over severed bonds (open legs sever at their physical
/// dim); ties are broken toward fewer severed bonds, so the bond count is
/// engine-independent.
struct CutResult {
  int severed_bonds = 0;
  double log2_bound = 0.0;
  double rank_bound = 0.0;  // product of severed bond dims
};

CutResult min_cut_bound(const TensorNetworkGraph& g, const ModeBipartition& p);
/// Branch-and-bound over all node 2-colorings (exact; <= ~30 nodes).
CutResult min_cut_exhaustive(const TensorNetworkGraph& g, const ModeBipartition& p);
/// Dinic max-flow on log2-dim capacities.
CutResult min_cut_maxflow(const TensorNetworkGraph& g, const ModeBipartition& p);

enum class SsbClass { Constant, Logarithmic, Power, Exponential, Unknown };

std::string to_string(SsbClass c);

/// n(m) = minimum severed-bond count over bipartitions of size m, plus the
/// fitted scaling class.
struct SeparabilityProfile {
  struct Sample {
    int m = 0;
    int n = 0;               // severed-bond count of the minimizing cut
    double log2_bound = 0.0; // log2 rank bound of the same cut
  };
  std::vector<Sample> samples;
  SsbClass ssb_class = SsbClass::Unknown;
  double fitted_exponent = 0.0;  // alpha (power) or beta (exponential)
  // relative residuals per class, for reporting
  double residual_constant = 0.0;
  double residual_logarithmic = 0.0;
  double residual_power = 0.0;
  double residual_exponential = 0.0;
};

SeparabilityProfile separability_profile(const TensorNetworkGraph& g);

/// Classifier used by separability_profile; exposed for testing.
SsbClass classify_ssb(const std::vector<std::pair<int, int>>& samples,
                      SeparabilityProfile* details = nullptr);

/// Eq.-9-style capacity check. `satisfied` holds for cluster size m iff the
/// target's matricization rank stays within the model's structural bound on
/// every bipartition in P_m; lhs/rhs summarize the extremes per m.
struct CannikinReport {
  struct PerM {
    int m = 0;
    int lhs_max_rank = 0;
    double rhs_min_bound = 0.0;
    bool satisfied = true;
    std::optional<ModeBipartition> witness;  // a violating bipartition
  };
  std::vector<PerM> per_m;
  bool satisfied = true;
};

RankProfile rank_profile(const DenseTensor& t, double tol = kDefaultTol,
                         int m_max = 0, int exhaustive_cap = kDefaultExhaustiveCap);

CannikinReport cannikin_check(const DenseTensor& t, const TensorNetworkGraph& g,
                              double tol = kDefaultTol,
                              int exhaustive_cap = kDefaultExhaustiveCap);

}  // namespace tensorank
