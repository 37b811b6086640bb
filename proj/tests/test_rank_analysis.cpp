#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "tensorank/rank_analysis.hpp"
#include "tensorank/rng.hpp"
#include "tensorank/synth_io.hpp"

using namespace tensorank;

TEST_CASE("both min-cut engines agree on every queried bipartition") {
  const std::vector<TensorNetworkGraph> graphs = {
      structure_graph(make_tt(8, 2, 3, Fill::Zeros, 0)),
      structure_graph(make_ht(8, 2, 2, Fill::Zeros, 0)),
      structure_graph(make_mera(8, 2, 2, Fill::Zeros, 0)),
  };
  for (const auto& g : graphs)
    for (int m = 1; m <= 4; ++m)
      for (const auto& p : enumerate_bipartitions(8, m)) {
        const auto a = min_cut_exhaustive(g, p);
        const auto b = min_cut_maxflow(g, p);
        CHECK(a.severed_bonds == b.severed_bonds);
        CHECK(a.log2_bound == doctest::Approx(b.log2_bound).epsilon(1e-9));
      }
}

TEST_CASE("TT contiguous cuts sever exactly one bond") {
  const auto g = structure_graph(make_tt(8, 2, 3, Fill::Zeros, 0));
  for (int m = 1; m <= 4; ++m) {
    const std::uint32_t mask = (1u << m) - 1;  // modes {0..m-1}
    const auto cut = min_cut_bound(g, ModeBipartition::canonical(mask, 8));
    CHECK(cut.severed_bonds == 1);
    CHECK(cut.rank_bound == doctest::Approx(std::min<double>(3.0, std::exp2(m))));
  }
}

TEST_CASE("TT alternating cut is bounded by the open legs, not the bonds") {
  // severing all 7 internal bonds costs ~9.9 in log2 weight; isolating the
  // four odd modes at their open legs costs only 4, so the bound is 2^4
  const auto g = structure_graph(make_tt(8, 2, 3, Fill::Zeros, 0));
  const auto cut = min_cut_bound(g, ModeBipartition::canonical(0b01010101, 8));
  CHECK(cut.severed_bonds == 4);
  CHECK(cut.rank_bound == doctest::Approx(16.0).epsilon(1e-9));
}

TEST_CASE("MERA min severed-bond counts follow log2 m") {
  const auto g = structure_graph(make_mera(16, 2, 2, Fill::Zeros, 0));
  const auto prof = separability_profile(g);
  REQUIRE(prof.samples.size() == 8);
  const int expected_n[] = {1, 2, 3, 3, 4, 4, 5, 5};
  for (int i = 0; i < 8; ++i) {
    CHECK(prof.samples[i].m == i + 1);
    CHECK(prof.samples[i].n == expected_n[i]);
    if (i > 0) CHECK(prof.samples[i].n >= std::log2(static_cast<double>(i + 1)));
  }
  CHECK(prof.ssb_class == SsbClass::Logarithmic);
}

TEST_CASE("TT and HT classify as constant SSB") {
  for (int L : {8, 16}) {
    CHECK(separability_profile(structure_graph(make_tt(L, 2, 3, Fill::Zeros, 0))).ssb_class ==
          SsbClass::Constant);
    CHECK(separability_profile(structure_graph(make_ht(L, 2, 2, Fill::Zeros, 0))).ssb_class ==
          SsbClass::Constant);
  }
}

TEST_CASE("ssb classifier on synthetic curves") {
  auto curve = [](auto f, int m_max) {
    std::vector<std::pair<int, int>> s;
    for (int m = 1; m <= m_max; ++m) s.emplace_back(m, f(m));
    return s;
  };
  CHECK(classify_ssb(curve([](int) { return 3; }, 8)) == SsbClass::Constant);
  CHECK(classify_ssb({{1, 1}, {2, 2}, {3, 3}, {4, 3}, {5, 4}, {6, 4}, {7, 5}, {8, 5}}) ==
        SsbClass::Logarithmic);
  CHECK(classify_ssb(curve([](int m) { return m; }, 8)) == SsbClass::Power);
  CHECK(classify_ssb(curve([](int m) { return m * m; }, 8)) == SsbClass::Power);
  CHECK(classify_ssb(curve([](int m) { return 1 << m; }, 8)) == SsbClass::Exponential);
  CHECK(classify_ssb(curve([](int) { return 1; }, 2)) == SsbClass::Unknown);  // < 3 points
}

TEST_CASE("rank profile of separable and GHZ-style tensors") {
  // rank-1 product tensor
  const DenseTensor one = random_cp(4, 2, 1, 5);
  const auto p1 = rank_profile(one);
  for (int m = 1; m <= 2; ++m) CHECK(p1.max_rank(m) == 1);

  // sum of two orthogonal product terms: every bipartition has rank 2
  DenseTensor ghz({2, 2, 2, 2});
  ghz.at({0, 0, 0, 0}) = 1.0;
  ghz.at({1, 1, 1, 1}) = 1.0;
  const auto p2 = rank_profile(ghz);
  for (int m = 1; m <= 2; ++m) {
    CHECK(p2.max_rank(m) == 2);
    CHECK(p2.min_rank(m) == 2);
  }
}

TEST_CASE("rank profile respects the exhaustive cap") {
  const DenseTensor t = random_cp(6, 2, 2, 1);
  CHECK_THROWS_AS(rank_profile(t, kDefaultTol, 0, 4), CapExceededError);
}

TEST_CASE("cannikin check against matched and starved TT models") {
  const DenseTensor t = to_dense(make_tt(6, 2, 3, Fill::Random, 19));
  const auto good = cannikin_check(t, structure_graph(make_tt(6, 2, 3, Fill::Zeros, 0)));
  CHECK(good.satisfied);
  for (const auto& e : good.per_m) CHECK(e.satisfied);

  const auto bad = cannikin_check(t, structure_graph(make_tt(6, 2, 2, Fill::Zeros, 0)));
  CHECK_FALSE(bad.satisfied);
  bool witnessed = false;
  for (const auto& e : bad.per_m)
    if (!e.satisfied) {
      REQUIRE(e.witness.has_value());
      witnessed = true;
      CHECK(e.lhs_max_rank > e.rhs_min_bound);
    }
  CHECK(witnessed);
}

TEST_CASE("cannikin check passes trivially for an over-provisioned model") {
  const DenseTensor t = random_cp(5, 2, 2, 3);
  const auto rep = cannikin_check(t, structure_graph(make_tt(5, 2, 16, Fill::Zeros, 0)));
  CHECK(rep.satisfied);
}

TEST_CASE("min cut rejects mismatched bipartition order") {
  const auto g = structure_graph(make_tt(6, 2, 2, Fill::Zeros, 0));
  CHECK_THROWS_AS(min_cut_bound(g, ModeBipartition::canonical(1, 4)), DimensionError);
}
