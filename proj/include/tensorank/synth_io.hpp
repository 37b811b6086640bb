#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tensorank/capacity.hpp"
#include "tensorank/core_tensor.hpp"
#include "tensorank/decompose.hpp"
#include "tensorank/rank_analysis.hpp"

namespace tensorank {

/// Random CP-format sum: R rank-1 terms with unit-norm i.i.d. normal factor
/// vectors and positive weights. Deterministic per seed.
DenseTensor random_cp(int order, std::int64_t dim, int terms, std::uint64_t seed);

/// Expression AST over variables x1..xL, numeric literals, binary + - * / ^,
/// unary minus and the functions sin, cos, exp, sqrt, abs.
struct Expression {
  enum class Kind { Number, Variable, Unary, Binary, Call };

  Kind kind = Kind::Number;
  double number = 0.0;
  int var_index = 0;       // 1-based, Variable
  char op = 0;             // Binary: + - * / ^ ; Unary: -
  std::string func;        // Call
  std::unique_ptr<Expression> lhs, rhs;  // Unary/Call use lhs only

  double eval(const std::vector<double>& vars) const;
  int max_var_index() const;
  bool equals(const Expression& other) const;
};

std::unique_ptr<Expression> parse_expression(const std::string& text);

/// Fully parenthesized rendering; reparses to an identical tree.
std::string unparse(const Expression& e);

/// Samples the expression on the inclusive uniform grid: variable k takes
/// `points` nodes spanning bounds[k]. A single bound pair is broadcast to
/// all variables. Throws on non-finite samples or variables beyond `order`.
DenseTensor sample_grid(const Expression& e, int order, std::int64_t points,
                        const std::vector<std::pair<double, double>>& bounds);

/// Text tensor format: header "tns v1 <L> <d1> ... <dL>" then row-major
/// values, whitespace-separated, 17 significant digits on write.
DenseTensor read_tensor(const std::string& path);
void write_tensor(const std::string& path, const DenseTensor& t);

nlohmann::json to_json(const DecompositionReport& r);
nlohmann::json to_json(const RankProfile& r);
nlohmann::json to_json(const SeparabilityProfile& r);
nlohmann::json to_json(const CannikinReport& r);
nlohmann::json to_json(const ExactDim& d);
nlohmann::json to_json(const CapacityReport& r);

/// Writes the report with a schema_version field injected at the top level.
void write_report_json(const std::string& path, nlohmann::json report);

inline constexpr int kReportSchemaVersion = 1;

}  // namespace tensorank
