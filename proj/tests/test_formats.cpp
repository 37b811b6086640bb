#include <doctest.h>

#include <cstdint>
#include <vector>

#include "tensorank/formats.hpp"

using namespace tensorank;

namespace {

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
  REQUIRE(a.dims == b.dims);
  double m = 0;
  for (std::int64_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

}  // namespace

TEST_CASE("TT to_dense matches the explicit bond summation") {
  // L=3: T[s0,s1,s2] = sum_{a,b} G0[0,s0,a] G1[a,s1,b] G2[b,s2,0]
  const TTFormat tt = make_tt(3, 2, 3, Fill::Random, 5);
  const DenseTensor d = to_dense(tt);
  const auto& g0 = tt.cores[0];
  const auto& g1 = tt.cores[1];
  const auto& g2 = tt.cores[2];
  for (std::int64_t s0 = 0; s0 < 2; ++s0)
    for (std::int64_t s1 = 0; s1 < 2; ++s1)
      for (std::int64_t s2 = 0; s2 < 2; ++s2) {
        double want = 0;
        for (std::int64_t a = 0; a < g0.dims[2]; ++a)
          for (std::int64_t b = 0; b < g1.dims[2]; ++b)
            want += g0.at({0, s0, a}) * g1.at({a, s1, b}) * g2.at({b, s2, 0});
        CHECK(d.at({s0, s1, s2}) == doctest::Approx(want).epsilon(1e-13));
      }
}

TEST_CASE("make_tt uses one universal bond dimension") {
  const TTFormat tt = make_tt(6, 2, 5, Fill::Zeros, 0);
  const auto bonds = tt.bond_dims();  // interior bonds, one per cut
  REQUIRE(bonds.size() == 5);
  for (auto b : bonds) CHECK(b == 5);
  CHECK(tt.physical_dims() == std::vector<std::int64_t>(6, 2));
  tt.validate();
}

TEST_CASE("Tucker to_dense matches the explicit summation") {
  // small hand-built instance: core 2x2, factors 3x2 and 4x2
  TuckerFormat tk;
  tk.core = DenseTensor({2, 2}, {1.0, 2.0, -1.0, 0.5});
  tk.factors.emplace_back(3, 2, std::vector<double>{1, 0, 0, 1, 1, 1});
  tk.factors.emplace_back(4, 2, std::vector<double>{2, 0, 0, 3, 1, -1, 0, 0});
  const DenseTensor d = to_dense(tk);
  REQUIRE(d.dims == std::vector<std::int64_t>({3, 4}));
  for (std::int64_t i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 4; ++j) {
      double want = 0;
      for (std::int64_t a = 0; a < 2; ++a)
        for (std::int64_t b = 0; b < 2; ++b)
          want += tk.core.at({a, b}) * tk.factors[0](i, a) * tk.factors[1](j, b);
      CHECK(d.at({i, j}) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("HT to_dense matches the explicit tree summation") {
  const HTFormat ht = make_ht(4, 2, 2, Fill::Random, 9);
  const DenseTensor d = to_dense(ht);
  const auto& u = ht.leaf_factors;
  const auto& t0 = ht.transfer[0][0];
  const auto& t1 = ht.transfer[0][1];
  for (std::int64_t s0 = 0; s0 < 2; ++s0)
    for (std::int64_t s1 = 0; s1 < 2; ++s1)
      for (std::int64_t s2 = 0; s2 < 2; ++s2)
        for (std::int64_t s3 = 0; s3 < 2; ++s3) {
          double want = 0;
          for (std::int64_t a0 = 0; a0 < u[0].cols; ++a0)
            for (std::int64_t a1 = 0; a1 < u[1].cols; ++a1)
              for (std::int64_t a2 = 0; a2 < u[2].cols; ++a2)
                for (std::int64_t a3 = 0; a3 < u[3].cols; ++a3)
                  for (std::int64_t b0 = 0; b0 < ht.top.rows; ++b0)
                    for (std::int64_t b1 = 0; b1 < ht.top.cols; ++b1)
                      want += u[0](s0, a0) * u[1](s1, a1) * u[2](s2, a2) * u[3](s3, a3) *
                              t0.at({a0, a1, b0}) * t1.at({a2, a3, b1}) * ht.top(b0, b1);
          CHECK(d.at({s0, s1, s2, s3}) == doctest::Approx(want).epsilon(1e-12));
        }
}

TEST_CASE("MERA to_dense matches the explicit wiring summation") {
  // one layer (L=4): top T[q0,q1]; iso_k inputs are (dis_{k-1}.out2,
  // dis_k.out1); dis_j carries physical legs ((2j+1)%4, (2j+2)%4)
  const MERAFormat me = make_mera(4, 2, 2, Fill::Random, 13);
  const DenseTensor dn = to_dense(me);
  const auto& d0 = me.layers[0].disentanglers[0];
  const auto& d1 = me.layers[0].disentanglers[1];
  const auto& w0 = me.layers[0].isometries[0];
  const auto& w1 = me.layers[0].isometries[1];
  for (std::int64_t s0 = 0; s0 < 2; ++s0)
    for (std::int64_t s1 = 0; s1 < 2; ++s1)
      for (std::int64_t s2 = 0; s2 < 2; ++s2)
        for (std::int64_t s3 = 0; s3 < 2; ++s3) {
          double want = 0;
          for (std::int64_t q0 = 0; q0 < me.top.rows; ++q0)
            for (std::int64_t q1 = 0; q1 < me.top.cols; ++q1)
              for (std::int64_t a = 0; a < 2; ++a)       // dis1.out2 -> iso0.in1
                for (std::int64_t b = 0; b < 2; ++b)     // dis0.out1 -> iso0.in2
                  for (std::int64_t c = 0; c < 2; ++c)   // dis0.out2 -> iso1.in1
                    for (std::int64_t e = 0; e < 2; ++e) // dis1.out1 -> iso1.in2
                      want += me.top(q0, q1) * w0.at({a, b, q0}) * w1.at({c, e, q1}) *
                              d0.at({s1, s2, b, c}) * d1.at({s3, s0, e, a});
          CHECK(dn.at({s0, s1, s2, s3}) == doctest::Approx(want).epsilon(1e-12));
        }
}

TEST_CASE("structure graphs have the expected shapes") {
  const auto tt = structure_graph(make_tt(6, 2, 3, Fill::Zeros, 0));
  CHECK(tt.nodes.size() == 6);
  CHECK(tt.edges.size() == 5);
  CHECK(tt.order() == 6);
  tt.validate();
  CHECK(tt.connected());

  const auto ht = structure_graph(make_ht(8, 2, 2, Fill::Zeros, 0));
  CHECK(ht.nodes.size() == 15);  // 8 leaves + 4 + 2 transfers + top
  CHECK(ht.edges.size() == 14);  // a tree
  CHECK(ht.order() == 8);
  ht.validate();

  const auto me = structure_graph(make_mera(8, 2, 2, Fill::Zeros, 0));
  CHECK(me.nodes.size() == 13);  // 4+4 bottom, 2+2 middle, top
  CHECK(me.order() == 8);
  me.validate();
  CHECK(me.connected());
}

TEST_CASE("open legs are listed in physical-mode order") {
  const auto g = structure_graph(make_mera(8, 2, 2, Fill::Zeros, 0));
  for (int k = 0; k < g.order(); ++k) {
    CHECK(g.open_legs[k].mode == k);
    CHECK(g.open_legs[k].dim == 2);
  }
}

TEST_CASE("random fills are deterministic per seed") {
  const auto a = to_dense(make_tt(5, 2, 3, Fill::Random, 77));
  const auto b = to_dense(make_tt(5, 2, 3, Fill::Random, 77));
  const auto c = to_dense(make_tt(5, 2, 3, Fill::Random, 78));
  CHECK(max_abs_diff(a, b) == 0.0);
  double diff = 0;
  for (std::int64_t i = 0; i < a.size(); ++i) diff += std::abs(a.data[i] - c.data[i]);
  CHECK(diff > 0.0);
}

TEST_CASE("dense cap is enforced") {
  const TTFormat tt = make_tt(4, 2, 2, Fill::Zeros, 0);
  CHECK_THROWS_AS(to_dense(tt, 8), CapExceededError);  // 16 entries > cap 8
}

TEST_CASE("mera constructor rejects bad orders") {
  CHECK_THROWS_AS(make_mera(6, 2, 2, Fill::Zeros, 0), DomainError);
  CHECK_THROWS_AS(make_mera(2, 2, 2, Fill::Zeros, 0), DomainError);
  CHECK_THROWS_AS(make_ht(6, 2, 2, Fill::Zeros, 0), DomainError);
}
