#include <doctest.h>

#include <cstdint>
#include <vector>

#include "tensorank/core_tensor.hpp"
#include "tensorank/rng.hpp"

using namespace tensorank;

namespace {

DenseTensor random_tensor(std::vector<std::int64_t> dims, std::uint64_t seed) {
  DenseTensor t(std::move(dims));
  Rng rng(seed);
  for (auto& x : t.data) x = rng.next_normal();
  return t;
}

// Independent matricization oracle: walks every multi-index and computes the
// row/column positions from scratch.
Matrix matricize_oracle(const DenseTensor& t, const ModeBipartition& p) {
  const auto a = p.modes_a();
  const auto b = p.modes_b();
  std::int64_t rows = 1, cols = 1;
  for (int m : a) rows *= t.dims[m];
  for (int m : b) cols *= t.dims[m];
  Matrix out(rows, cols);
  std::vector<std::int64_t> idx(t.order(), 0);
  for (std::int64_t flat = 0; flat < t.size(); ++flat) {
    std::int64_t row = 0, col = 0;
    for (int m : a) row = row * t.dims[m] + idx[m];
    for (int m : b) col = col * t.dims[m] + idx[m];
    out(row, col) = t.data[flat];
    for (int k = t.order() - 1; k >= 0; --k) {
      if (++idx[k] < t.dims[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("matricize matches the brute-force index oracle") {
  const DenseTensor t = random_tensor({2, 3, 2, 4}, 11);
  for (int m = 1; m <= 2; ++m) {
    for (const auto& p : enumerate_bipartitions(4, m)) {
      const Matrix got = matricize(t, p);
      const Matrix want = matricize_oracle(t, p);
      REQUIRE(got.rows == want.rows);
      REQUIRE(got.cols == want.cols);
      for (std::size_t i = 0; i < got.data.size(); ++i)
        CHECK(got.data[i] == want.data[i]);
    }
  }
}

TEST_CASE("dematricize inverts matricize") {
  const DenseTensor t = random_tensor({3, 2, 2}, 5);
  for (int m = 1; m <= 1; ++m)
    for (const auto& p : enumerate_bipartitions(3, m)) {
      const DenseTensor back = dematricize(matricize(t, p), t.dims, p);
      REQUIRE(back.dims == t.dims);
      for (std::int64_t i = 0; i < t.size(); ++i) CHECK(back.data[i] == t.data[i]);
    }
}

TEST_CASE("fold inverts unfold for arbitrary masks") {
  const DenseTensor t = random_tensor({2, 3, 2, 2}, 7);
  for (std::uint32_t mask = 1; mask < 15; ++mask) {
    const DenseTensor back = fold(unfold(t, mask), t.dims, mask);
    for (std::int64_t i = 0; i < t.size(); ++i) CHECK(back.data[i] == t.data[i]);
  }
}

TEST_CASE("bipartition enumeration counts and canonical form") {
  CHECK(enumerate_bipartitions(4, 1).size() == 4);
  // equal halves: C(4,2)/2 = 3, each containing mode 0
  const auto halves = enumerate_bipartitions(4, 2);
  CHECK(halves.size() == 3);
  for (const auto& p : halves) {
    CHECK(p.part_size() == 2);
    CHECK(p.contains(0));
  }
  CHECK(enumerate_bipartitions(6, 3).size() == binomial(6, 3) / 2);
  CHECK(enumerate_bipartitions(8, 3).size() == binomial(8, 3));
}

TEST_CASE("canonical flips to the smaller side") {
  const auto p = ModeBipartition::canonical(0b1110, 4);  // complement {0}
  CHECK(p.part_size() == 1);
  CHECK(p.contains(0));
  CHECK_THROWS_AS(ModeBipartition(0, 4), DimensionError);
  CHECK_THROWS_AS(ModeBipartition(0b1111, 4), DimensionError);
}

TEST_CASE("contract_all reproduces a matrix product") {
  const DenseTensor a = random_tensor({3, 4}, 1);
  const DenseTensor b = random_tensor({4, 5}, 2);
  const DenseTensor c = contract_all(a, b, {{1, 0}});
  REQUIRE(c.dims == std::vector<std::int64_t>({3, 5}));
  for (std::int64_t i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 5; ++j) {
      double want = 0;
      for (std::int64_t k = 0; k < 4; ++k) want += a.at({i, k}) * b.at({k, j});
      CHECK(c.at({i, j}) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("contract_all rejects a full contraction to a scalar") {
  const DenseTensor a = random_tensor({2, 3}, 3);
  const DenseTensor b = random_tensor({2, 3}, 4);
  CHECK_THROWS_AS(contract_all(a, b, {{0, 0}, {1, 1}}), DimensionError);
}

TEST_CASE("permute moves data where it says") {
  const DenseTensor t = random_tensor({2, 3, 4}, 9);
  const DenseTensor p = permute(t, {2, 0, 1});  // result mode k = input mode perm[k]
  REQUIRE(p.dims == std::vector<std::int64_t>({4, 2, 3}));
  for (std::int64_t i = 0; i < 2; ++i)
    for (std::int64_t j = 0; j < 3; ++j)
      for (std::int64_t k = 0; k < 4; ++k)
        CHECK(p.at({k, i, j}) == t.at({i, j, k}));
  // round trip with the inverse permutation
  const DenseTensor back = permute(p, {1, 2, 0});
  for (std::int64_t i = 0; i < t.size(); ++i) CHECK(back.data[i] == t.data[i]);
}

TEST_CASE("binomial basics") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(8, 4) == 70);
  CHECK(binomial(16, 8) == 12870);
  CHECK(binomial(5, 7) == 0);
}

TEST_CASE("rng is stable across runs") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(0);
  const double u = c.next_uniform();
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}
