#include <doctest.h>

#include <cmath>

#include "tensorank/capacity.hpp"
#include "tensorank/rng.hpp"

using namespace tensorank;

TEST_CASE("exact required dims at L=8, D=2") {
  CHECK(required_dim_exact(ModelKind::Tt, 8, 2).value == doctest::Approx(16.0));
  CHECK(required_dim_exact(ModelKind::Ht, 8, 2).value == doctest::Approx(16.0));
  const auto mera = required_dim_exact(ModelKind::Mera, 8, 2);
  CHECK(mera.value == doctest::Approx(4.0));
  CHECK(mera.integral);
  CHECK(mera.ceiled == 4);
}

TEST_CASE("R_TT = R_MERA^(log2 L - 1) across L and D") {
  for (int L : {4, 8, 16})
    for (int D : {2, 3}) {
      const double rtt = required_dim_exact(ModelKind::Tt, L, D).value;
      const double rmera = required_dim_exact(ModelKind::Mera, L, D).value;
      const double k = std::log2(static_cast<double>(L)) - 1.0;
      CHECK(rtt == doctest::Approx(std::pow(rmera, k)).epsilon(1e-12));
    }
}

TEST_CASE("non-integral MERA dim is kept in exact form") {
  // L=16: exponent 16 / (2*3) = 8/3
  const auto d = required_dim_exact(ModelKind::Mera, 16, 2);
  CHECK(d.base == 2.0);
  CHECK(d.exponent == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK_FALSE(d.integral);
  CHECK(d.ceiled == 7);  // 2^(8/3) = 6.349...
}

TEST_CASE("required_dim_exact validates its domain") {
  CHECK_THROWS_AS(required_dim_exact(ModelKind::Tt, 6, 2), DomainError);
  CHECK_THROWS_AS(required_dim_exact(ModelKind::Mera, 2, 2), DomainError);
  CHECK_THROWS_AS(required_dim_exact(ModelKind::Tt, 8, 1), DomainError);
}

TEST_CASE("chi values for the exponential assumption") {
  const auto n = AssumptionN::exponential(2);
  CHECK(chi_tt_ht(n, 8) == doctest::Approx(16.0));
  const auto cm = chi_mera(n, 8);
  CHECK(cm.chi == doctest::Approx(4.0).epsilon(1e-12));
  // 2^{m/log2 m} equals 4 at both m=2 and m=4; the first maximizer is kept
  CHECK(cm.argmax_m == 2);
  CHECK_FALSE(cm.interior_max);
  const auto rep = compare_models(n, 8);
  CHECK(rep.margin == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("constant assumption gives margin zero") {
  const auto rep = compare_models(AssumptionN::constant(5), 8);
  CHECK(rep.chi_tt_ht == doctest::Approx(5.0));
  CHECK(rep.mera.chi == doctest::Approx(5.0));
  CHECK(rep.margin == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("quadratic assumption at L=16") {
  const auto n = AssumptionN::power(1, 2);
  CHECK(chi_tt_ht(n, 16) == doctest::Approx(64.0));
  // m^{2/log2 m} = 4 for every m that is a power of two
  const auto cm = chi_mera(n, 16);
  CHECK(cm.chi == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(compare_models(n, 16).margin == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("linear assumption collapses chi_mera to 2") {
  const auto cm = chi_mera(AssumptionN::power(1, 1), 16);
  CHECK(cm.chi == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("exponential maximand peaks away from m = L/2") {
  // 2^{m/log2 m} at m=2,...: m=3 gives 2^{1.89}=3.72 < 4; at L=16 the
  // interval is (1,8]; 2^{8/3}=6.35 beats 2^2=4, max at m=8, no interior max
  const auto cm = chi_mera(AssumptionN::exponential(2), 16);
  CHECK(cm.argmax_m == 8);
  CHECK_FALSE(cm.interior_max);
  CHECK(cm.chi == doctest::Approx(std::exp2(8.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("margin is nonnegative for randomized monotone tables") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int L = (trial % 2) ? 8 : 16;
    std::vector<std::pair<int, double>> rows;
    double n = 1.0 + 10.0 * rng.next_uniform();
    for (int m = 1; m <= L / 2; ++m) {
      n += 5.0 * rng.next_uniform();  // non-decreasing by construction
      rows.emplace_back(m, n);
    }
    const auto rep = compare_models(AssumptionN::from_table(rows), L);
    CHECK(rep.margin >= 0.0);
  }
}

TEST_CASE("non-monotone and invalid assumptions are rejected") {
  CHECK_THROWS_AS(
      compare_models(AssumptionN::from_table({{1, 3.0}, {2, 2.0}, {3, 4.0}, {4, 5.0}}), 8),
      DomainError);
  CHECK_THROWS_AS(compare_models(AssumptionN::from_table({{1, 2.0}, {2, 3.0}}), 8),
                  DomainError);  // missing m=3, m=4
  CHECK_THROWS_AS(compare_models(AssumptionN::constant(0.5), 8), DomainError);
  CHECK_THROWS_AS(compare_models(AssumptionN::power(1, -1), 8), DomainError);
}

TEST_CASE("assumption spec parsing") {
  CHECK(AssumptionN::parse("exp:2").family == AssumptionN::Family::Exponential);
  const auto p = AssumptionN::parse("pow:1.5:2");
  CHECK(p.c == doctest::Approx(1.5));
  CHECK(p.alpha == doctest::Approx(2.0));
  CHECK(AssumptionN::parse("log:3").eval(1) == doctest::Approx(3.0));
  CHECK(AssumptionN::parse("const:7").eval(4) == doctest::Approx(7.0));
  CHECK_THROWS_AS(AssumptionN::parse("exp"), DomainError);
  CHECK_THROWS_AS(AssumptionN::parse("exp:two"), DomainError);
  CHECK_THROWS_AS(AssumptionN::parse("gauss:1"), DomainError);
}
