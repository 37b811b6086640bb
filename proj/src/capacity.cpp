#include "tensorank/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tensorank/formats.hpp"

namespace tensorank {

double AssumptionN::eval(int m) const {
  if (m < 1) throw DomainError("N(m) is defined for m >= 1");
  switch (family) {
    case Family::Exponential: return std::pow(base, m);
    case Family::Power: return c * std::pow(static_cast<double>(m), alpha);
    case Family::Logarithmic: return c * (1.0 + std::log2(static_cast<double>(m)));
    case Family::Constant: return c;
    case Family::Table: {
      for (const auto& [tm, tn] : table)
        if (tm == m) return tn;
      throw DomainError("table assumption has no entry for m=" + std::to_string(m));
    }
  }
  throw DomainError("unknown assumption family");
}

void AssumptionN::validate(int half_l) const {
  if (half_l < 1) throw DomainError("assumption domain [1, L/2] is empty");
  switch (family) {
    case Family::Exponential:
      if (base < 1.0) throw DomainError("exponential assumption needs base >= 1");
      break;
    case Family::Power:
      if (c < 1.0 || alpha < 0.0)
        throw DomainError("power assumption needs c >= 1 and alpha >= 0");
      break;
    case Family::Logarithmic:
      if (c < 1.0) throw DomainError("logarithmic assumption needs c >= 1");
      break;
    case Family::Constant:
      if (c < 1.0) throw DomainError("constant assumption needs c >= 1");
      break;
    case Family::Table: {
      double prev = 1.0;
      for (int m = 1; m <= half_l; ++m) {
        const double n = eval(m);  // throws on missing entries
        if (n < 1.0) throw DomainError("N(m) must be >= 1");
        if (n < prev) throw DomainError("N(m) must be non-decreasing in m");
        prev = n;
      }
      break;
    }
  }
}

AssumptionN AssumptionN::exponential(double base) {
  AssumptionN n;
  n.family = Family::Exponential;
  n.base = base;
  return n;
}

AssumptionN AssumptionN::power(double c, double alpha) {
  AssumptionN n;
  n.family = Family::Power;
  n.c = c;
  n.alpha = alpha;
  return n;
}

AssumptionN AssumptionN::logarithmic(double c) {
  AssumptionN n;
  n.family = Family::Logarithmic;
  n.c = c;
  return n;
}

AssumptionN AssumptionN::constant(double c) {
  AssumptionN n;
  n.family = Family::Constant;
  n.c = c;
  return n;
}

AssumptionN AssumptionN::from_table(std::vector<std::pair<int, double>> table) {
  AssumptionN n;
  n.family = Family::Table;
  n.table = std::move(table);
  std::sort(n.table.begin(), n.table.end());
  return n;
}

AssumptionN AssumptionN::parse(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto num = [&](std::size_t i) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(parts.at(i), &pos);
    } catch (const std::exception&) {
      throw DomainError("bad number in assumption spec '" + spec + "'");
    }
    if (pos != parts[i].size())
      throw DomainError("bad number in assumption spec '" + spec + "'");
    return v;
  };
  if (parts.size() == 2 && parts[0] == "exp") return exponential(num(1));
  if (parts.size() == 3 && parts[0] == "pow") return power(num(1), num(2));
  if (parts.size() == 2 && parts[0] == "log") return logarithmic(num(1));
  if (parts.size() == 2 && parts[0] == "const") return constant(num(1));
  throw DomainError("unrecognized assumption spec '" + spec +
                    "' (expected exp:D, pow:c:alpha, log:c, or const:c)");
}

std::string AssumptionN::describe() const {
  std::ostringstream out;
  switch (family) {
    case Family::Exponential: out << "N(m) = " << base << "^m"; break;
    case Family::Power: out << "N(m) = " << c << " * m^" << alpha; break;
    case Family::Logarithmic: out << "N(m) = " << c << " * (1 + log2 m)"; break;
    case Family::Constant: out << "N(m) = " << c; break;
    case Family::Table: out << "N(m) from table (" << table.size() << " rows)"; break;
  }
  return out.str();
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Tt: return "tt";
    case ModelKind::Ht: return "ht";
    default: return "mera";
  }
}

namespace {

ExactDim make_exact(double base, double exponent) {
  ExactDim d;
  d.base = base;
  d.exponent = exponent;
  d.value = std::pow(base, exponent);
  d.integral = std::abs(d.value - std::round(d.value)) < 1e-9 * std::max(1.0, d.value);
  d.ceiled = d.integral ? static_cast<std::int64_t>(std::llround(d.value))
                        : static_cast<std::int64_t>(std::ceil(d.value - 1e-12));
  return d;
}

}  // namespace

ExactDim required_dim_exact(ModelKind model, int order, int dim) {
  if (order < 2 || !is_power_of_two(order))
    throw DomainError("order must be a power of two, >= 2");
  if (dim < 2) throw DomainError("physical dimension must be >= 2");
  if (model == ModelKind::Mera) {
    if (order < 4) throw DomainError("MERA needs order >= 4");
    const double exponent = order / (2.0 * (std::log2(static_cast<double>(order)) - 1.0));
    return make_exact(static_cast<double>(dim), exponent);
  }
  return make_exact(static_cast<double>(dim), order / 2.0);
}

double chi_tt_ht(const AssumptionN& n, int order) {
  if (order < 2 || order % 2 != 0) throw DomainError("order must be even, >= 2");
  n.validate(order / 2);
  return n.eval(order / 2);
}

ChiMera chi_mera(const AssumptionN& n, int order) {
  if (order < 4 || order % 2 != 0) throw DomainError("order must be even, >= 4");
  n.validate(order / 2);
  ChiMera r;
  for (int m = 2; m <= order / 2; ++m) {
    const double chi = std::pow(n.eval(m), 1.0 / std::log2(static_cast<double>(m)));
    if (chi > r.chi + 1e-12) {
      r.chi = chi;
      r.argmax_m = m;
    }
    if (m == order / 2) r.chi_at_half = chi;
  }
  r.interior_max = r.chi > r.chi_at_half * (1.0 + 1e-12);
  return r;
}

CapacityReport compare_models(const AssumptionN& n, int order) {
  CapacityReport rep;
  rep.order = order;
  rep.chi_tt_ht = chi_tt_ht(n, order);
  rep.mera = chi_mera(n, order);
  rep.margin = std::log2(rep.chi_tt_ht) - std::log2(rep.mera.chi);
  if (rep.margin < 0.0 && rep.margin > -1e-9) rep.margin = 0.0;
  return rep;
}

}  // namespace tensorank
