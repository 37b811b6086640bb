#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tensorank/errors.hpp"

namespace tensorank {

/// Separability assumption N(m): the maximum number of Schmidt components
/// across bipartitions whose smaller side has m modes. Must be >= 1 and
/// non-decreasing on m in [1, L/2].
struct AssumptionN {
  enum class Family { Exponential, Power, Logarithmic, Constant, Table };

  Family family = Family::Constant;
  // Exponential: N(m) = base^m.
  // Power:       N(m) = c * m^alpha.
  // Logarithmic: N(m) = c * (1 + log2 m), so N(1) = c.
  // Constant:    N(m) = c.
  double base = 2.0;
  double c = 1.0;
  double alpha = 1.0;
  std::vector<std::pair<int, double>> table;  // (m, N), ascending m

  double eval(int m) const;
  void validate(int half_l) const;  // domain [1, half_l]

  static AssumptionN exponential(double base);
  static AssumptionN power(double c, double alpha);
  static AssumptionN logarithmic(double c);
  static AssumptionN constant(double c);
  static AssumptionN from_table(std::vector<std::pair<int, double>> table);
  /// Parses "exp:D", "pow:c:alpha", "log:c", "const:c".
  static AssumptionN parse(const std::string& spec);

  std::string describe() const;
};

enum class ModelKind { Tt, Ht, Mera };

std::string to_string(ModelKind k);

/// A dimension kept in exact base^exponent form; `value` is the real number
/// and `ceiled` the smallest admissible integer bond dimension.
struct ExactDim {
  double base = 0.0;
  double exponent = 0.0;
  double value = 0.0;
  std::int64_t ceiled = 0;
  bool integral = false;
};

/// Universal virtual dimension required for exact representation of a
/// generic order-L, dim-D tensor: D^{L/2} for TT and HT,
/// D^{L / (2 (log2 L - 1))} for MERA. L must be a power of two (>= 2 for
/// TT/HT, >= 4 for MERA).
ExactDim required_dim_exact(ModelKind model, int order, int dim);

/// chi_TT,HT = N(L/2): the bond dimension TT and HT need under assumption N.
double chi_tt_ht(const AssumptionN& n, int order);

struct ChiMera {
  double chi = 0.0;
  int argmax_m = 0;
  // True when some interior m < L/2 strictly beats the m = L/2 value; the
  // maximand N(m)^{1/log2 m} is not monotone in general.
  bool interior_max = false;
  double chi_at_half = 0.0;  // the m = L/2 value, for comparison
};

/// chi_MERA = max over integer m in (1, L/2] of N(m)^{1/log2 m}.
ChiMera chi_mera(const AssumptionN& n, int order);

struct CapacityReport {
  int order = 0;
  double chi_tt_ht = 0.0;
  ChiMera mera;
  double margin = 0.0;  // log2 chi_TT,HT - log2 chi_MERA, >= 0 for monotone N
};

CapacityReport compare_models(const AssumptionN& n, int order);

}  // namespace tensorank
