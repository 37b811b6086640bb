#include "tensorank/synth_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tensorank/rng.hpp"

namespace tensorank {

DenseTensor random_cp(int order, std::int64_t dim, int terms, std::uint64_t seed) {
  if (order < 1 || dim < 1) throw DimensionError("random_cp needs order >= 1, dim >= 1");
  if (terms < 1) throw DomainError("random_cp needs at least one term");
  Rng rng(seed);
  DenseTensor t(std::vector<std::int64_t>(order, dim));
  for (int a = 0; a < terms; ++a) {
    const double weight = 0.5 + rng.next_uniform();
    std::vector<std::vector<double>> factors(order, std::vector<double>(dim));
    for (auto& v : factors) {
      double norm_sq = 0.0;
      for (auto& x : v) {
        x = rng.next_normal();
        norm_sq += x * x;
      }
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& x : v) x *= inv;
    }
    std::vector<std::int64_t> idx(order, 0);
    for (std::int64_t flat = 0; flat < t.size(); ++flat) {
      double prod = weight;
      for (int k = 0; k < order; ++k) prod *= factors[k][idx[k]];
      t.data[flat] += prod;
      for (int k = order - 1; k >= 0; --k) {
        if (++idx[k] < dim) break;
        idx[k] = 0;
      }
    }
  }
  return t;
}

double Expression::eval(const std::vector<double>& vars) const {
  switch (kind) {
    case Kind::Number: return number;
    case Kind::Variable: {
      if (var_index < 1 || var_index > static_cast<int>(vars.size()))
        throw DomainError("variable x" + std::to_string(var_index) + " out of range");
      return vars[var_index - 1];
    }
    case Kind::Unary: return -lhs->eval(vars);
    case Kind::Binary: {
      const double a = lhs->eval(vars);
      const double b = rhs->eval(vars);
      switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
      }
      throw DomainError("bad operator");
    }
    case Kind::Call: {
      const double a = lhs->eval(vars);
      if (func == "sin") return std::sin(a);
      if (func == "cos") return std::cos(a);
      if (func == "exp") return std::exp(a);
      if (func == "sqrt") return std::sqrt(a);
      if (func == "abs") return std::abs(a);
      throw DomainError("unknown function " + func);
    }
  }
  throw DomainError("bad expression node");
}

int Expression::max_var_index() const {
  int m = (kind == Kind::Variable) ? var_index : 0;
  if (lhs) m = std::max(m, lhs->max_var_index());
  if (rhs) m = std::max(m, rhs->max_var_index());
  return m;
}

bool Expression::equals(const Expression& o) const {
  if (kind != o.kind || number != o.number || var_index != o.var_index ||
      op != o.op || func != o.func)
    return false;
  if (static_cast<bool>(lhs) != static_cast<bool>(o.lhs)) return false;
  if (static_cast<bool>(rhs) != static_cast<bool>(o.rhs)) return false;
  if (lhs && !lhs->equals(*o.lhs)) return false;
  if (rhs && !rhs->equals(*o.rhs)) return false;
  return true;
}

namespace {

using ExprPtr = std::unique_ptr<Expression>;

ExprPtr make_binary(char op, ExprPtr a, ExprPtr b) {
  auto e = std::make_unique<Expression>();
  e->kind = Expression::Kind::Binary;
  e->op = op;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

// Recursive-descent parser. Precedence, loosest first: + - | * / | unary
// minus | ^ (right-associative) | atoms.
class Parser {
public:
  explicit Parser(const std::string& text) : text_(text) {}

  ExprPtr parse() {
    auto e = parse_sum();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

private:
  const std::string& text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr parse_sum() {
    auto e = parse_product();
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') return e;
      ++pos_;
      e = make_binary(c, std::move(e), parse_product());
    }
  }

  ExprPtr parse_product() {
    auto e = parse_unary();
    while (true) {
      const char c = peek();
      if (c != '*' && c != '/') return e;
      ++pos_;
      e = make_binary(c, std::move(e), parse_unary());
    }
  }

  ExprPtr parse_unary() {
    if (peek() == '-') {
      ++pos_;
      auto e = std::make_unique<Expression>();
      e->kind = Expression::Kind::Unary;
      e->op = '-';
      e->lhs = parse_unary();
      return e;
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    auto base = parse_atom();
    if (peek() != '^') return base;
    ++pos_;
    // Right-associative; the exponent may carry a unary minus (2^-3).
    return make_binary('^', std::move(base), parse_unary());
  }

  ExprPtr parse_atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      auto e = parse_sum();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    throw ParseError(std::string("expected a number, variable, function, or '('"), pos_);
  }

  ExprPtr parse_number() {
    skip_ws();
    std::size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(text_.substr(pos_), &consumed);
    } catch (const std::exception&) {
      throw ParseError("malformed number", pos_);
    }
    pos_ += consumed;
    auto e = std::make_unique<Expression>();
    e->kind = Expression::Kind::Number;
    e->number = v;
    return e;
  }

  ExprPtr parse_ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (name.size() >= 2 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      auto e = std::make_unique<Expression>();
      e->kind = Expression::Kind::Variable;
      e->var_index = std::stoi(name.substr(1));
      if (e->var_index < 1) throw ParseError("variable index must be >= 1", start);
      return e;
    }
    if (name == "sin" || name == "cos" || name == "exp" || name == "sqrt" || name == "abs") {
      if (peek() != '(') throw ParseError("expected '(' after " + name, pos_);
      ++pos_;
      auto arg = parse_sum();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      auto e = std::make_unique<Expression>();
      e->kind = Expression::Kind::Call;
      e->func = name;
      e->lhs = std::move(arg);
      return e;
    }
    throw ParseError("unknown identifier '" + name + "'", start);
  }
};

}  // namespace

std::unique_ptr<Expression> parse_expression(const std::string& text) {
  return Parser(text).parse();
}

std::string unparse(const Expression& e) {
  switch (e.kind) {
    case Expression::Kind::Number: {
      std::ostringstream out;
      out.precision(17);
      out << e.number;
      return out.str();
    }
    case Expression::Kind::Variable:
      return "x" + std::to_string(e.var_index);
    case Expression::Kind::Unary:
      return "(-" + unparse(*e.lhs) + ")";
    case Expression::Kind::Binary:
      return "(" + unparse(*e.lhs) + std::string(1, e.op) + unparse(*e.rhs) + ")";
    case Expression::Kind::Call:
      return e.func + "(" + unparse(*e.lhs) + ")";
  }
  throw DomainError("bad expression node");
}

DenseTensor sample_grid(const Expression& e, int order, std::int64_t points,
                        const std::vector<std::pair<double, double>>& bounds) {
  if (order < 1) throw DimensionError("sample_grid needs order >= 1");
  if (points < 2) throw DomainError("sample_grid needs at least 2 points per variable");
  if (e.max_var_index() > order)
    throw DomainError("expression uses x" + std::to_string(e.max_var_index()) +
                      " but order is " + std::to_string(order));
  std::vector<std::pair<double, double>> b = bounds;
  if (b.size() == 1) b.assign(order, bounds[0]);
  if (static_cast<int>(b.size()) != order)
    throw DimensionError("need one bound pair per variable (or a single pair)");
  for (const auto& [lo, hi] : b)
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
      throw DomainError("bounds must be finite with lo < hi");

  DenseTensor t(std::vector<std::int64_t>(order, points));
  std::vector<std::int64_t> idx(order, 0);
  std::vector<double> vars(order);
  for (std::int64_t flat = 0; flat < t.size(); ++flat) {
    for (int k = 0; k < order; ++k)
      vars[k] = b[k].first + (b[k].second - b[k].first) * idx[k] / (points - 1);
    const double v = e.eval(vars);
    if (!std::isfinite(v)) throw DomainError("expression is non-finite on the grid");
    t.data[flat] = v;
    for (int k = order - 1; k >= 0; --k) {
      if (++idx[k] < points) break;
      idx[k] = 0;
    }
  }
  return t;
}

DenseTensor read_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string magic, version;
  in >> magic >> version;
  if (!in || magic != "tns" || version != "v1")
    throw IoError(path + ": expected header 'tns v1 <L> <dims...>'");
  int order = 0;
  in >> order;
  if (!in || order < 1 || order > 32) throw IoError(path + ": bad tensor order");
  std::vector<std::int64_t> dims(order);
  for (auto& d : dims) {
    in >> d;
    if (!in || d < 1) throw IoError(path + ": bad dimension in header");
  }
  DenseTensor t(dims);
  for (std::int64_t i = 0; i < t.size(); ++i) {
    in >> t.data[i];
    if (!in) throw IoError(path + ": expected " + std::to_string(t.size()) +
                           " values, got " + std::to_string(i));
  }
  double extra;
  if (in >> extra) throw IoError(path + ": more values than the header declares");
  return t;
}

void write_tensor(const std::string& path, const DenseTensor& t) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "tns v1 " << t.order();
  for (auto d : t.dims) out << ' ' << d;
  out << '\n';
  char buf[64];
  for (std::int64_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", t.data[i]);
    out << buf << ((i + 1) % 8 == 0 ? '\n' : ' ');
  }
  out << '\n';
  if (!out) throw IoError("write failed for " + path);
}

namespace {

nlohmann::json modes_json(const ModeBipartition& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (int m : p.modes_a()) arr.push_back(m);
  return arr;
}

}  // namespace

nlohmann::json to_json(const DecompositionReport& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"label", s.label},
                     {"retained_rank", s.retained_rank},
                     {"discarded_weight", s.discarded_weight}});
  return {{"steps", steps},
          {"error_bound_sq", r.error_bound_sq},
          {"achieved_error_sq", r.achieved_error_sq},
          {"input_norm_sq", r.input_norm_sq},
          {"relative_error", r.relative_error()}};
}

nlohmann::json to_json(const RankProfile& r) {
  nlohmann::json by_m = nlohmann::json::array();
  for (int m = 1; m <= r.m_max(); ++m) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : r.by_m[m - 1])
      entries.push_back({{"modes", modes_json(e.bipartition)}, {"rank", e.rank}});
    by_m.push_back({{"m", m},
                    {"max_rank", r.max_rank(m)},
                    {"min_rank", r.min_rank(m)},
                    {"entries", entries}});
  }
  return {{"by_m", by_m}};
}

nlohmann::json to_json(const SeparabilityProfile& r) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"m", s.m}, {"n", s.n}, {"log2_bound", s.log2_bound}});
  return {{"samples", samples},
          {"ssb_class", to_string(r.ssb_class)},
          {"fitted_exponent", r.fitted_exponent},
          {"residuals",
           {{"constant", r.residual_constant},
            {"logarithmic", r.residual_logarithmic},
            {"power", r.residual_power},
            {"exponential", r.residual_exponential}}}};
}

nlohmann::json to_json(const CannikinReport& r) {
  nlohmann::json per_m = nlohmann::json::array();
  for (const auto& e : r.per_m) {
    nlohmann::json row = {{"m", e.m},
                          {"lhs_max_rank", e.lhs_max_rank},
                          {"rhs_min_bound", e.rhs_min_bound},
                          {"satisfied", e.satisfied}};
    if (e.witness) row["violating_modes"] = modes_json(*e.witness);
    per_m.push_back(row);
  }
  return {{"per_m", per_m}, {"satisfied", r.satisfied}};
}

nlohmann::json to_json(const ExactDim& d) {
  return {{"base", d.base},
          {"exponent", d.exponent},
          {"value", d.value},
          {"ceiled", d.ceiled},
          {"integral", d.integral}};
}

nlohmann::json to_json(const CapacityReport& r) {
  return {{"order", r.order},
          {"chi_tt_ht", r.chi_tt_ht},
          {"chi_mera", r.mera.chi},
          {"chi_mera_argmax_m", r.mera.argmax_m},
          {"chi_mera_at_half", r.mera.chi_at_half},
          {"chi_mera_interior_max", r.mera.interior_max},
          {"margin", r.margin}};
}

void write_report_json(const std::string& path, nlohmann::json report) {
  report["schema_version"] = kReportSchemaVersion;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << report.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace tensorank
