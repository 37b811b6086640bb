#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tensorank/core_tensor.hpp"

namespace tensorank {

/// Dense reconstruction cap (entries).
inline constexpr std::int64_t kDefaultDenseCap = std::int64_t(1) << 24;

/// Tensor-train: L order-3 cores with dims (r_{i-1}, D_i, r_i); boundary
/// bonds have dimension 1.
struct TTFormat {
  std::vector<DenseTensor> cores;

  int order() const { return static_cast<int>(cores.size()); }
  std::vector<std::int64_t> bond_dims() const;
  std::vector<std::int64_t> physical_dims() const;
  void validate() const;
};

/// Tucker: order-L core plus one factor matrix per mode (dims[k] x core dim).
struct TuckerFormat {
  DenseTensor core;
  std::vector<Matrix> factors;

  int order() const { return static_cast<int>(factors.size()); }
  std::vector<std::int64_t> physical_dims() const;
  void validate() const;
};

/// Hierarchical Tucker over a balanced binary tree. L = 2^H leaves; level h
/// holds L/2^h transfer tensors with dims (r_left, r_right, r_out); the top
/// transfer is an order-2 coefficient tensor.
struct HTFormat {
  std::vector<Matrix> leaf_factors;               // L matrices, D x r
  std::vector<std::vector<DenseTensor>> transfer; // transfer[h-1][j], h in [1, H-1]
  Matrix top;                                     // r_left x r_right

  int order() const { return static_cast<int>(leaf_factors.size()); }
  int levels() const;
  std::vector<std::int64_t> physical_dims() const;
  void validate() const;
};

/// Layered MERA with periodic (wrap-around) pairing. Layer inputs sit at
/// positions t_0..t_{2n-1}; disentangler j acts on (t_{2j+1}, t_{2j+2 mod 2n})
/// with dims (in1, in2, out1, out2); isometry k consumes
/// (dis_{k-1}.out2, dis_k.out1) with dims (in1, in2, out) and emits coarse
/// leg q_k. Layers run bottom (physical) to top; the final two legs meet the
/// order-2 top tensor.
struct MERAFormat {
  struct Layer {
    std::vector<DenseTensor> disentanglers; // order-4
    std::vector<DenseTensor> isometries;    // order-3
  };
  std::vector<Layer> layers;
  Matrix top;

  int order() const;
  std::vector<std::int64_t> physical_dims() const;
  void validate() const;
};

/// Weighted tensor-network graph: one node per core, one edge per virtual
/// bond (parallel bonds stay separate), one open leg per physical mode.
struct TensorNetworkGraph {
  struct Edge {
    int u = 0;
    int v = 0;
    std::int64_t dim = 1;
  };
  struct OpenLeg {
    int node = 0;
    int mode = 0;
    std::int64_t dim = 1;
  };

  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  std::vector<OpenLeg> open_legs;

  int order() const { return static_cast<int>(open_legs.size()); }
  bool connected() const;
  void validate() const;
};

DenseTensor to_dense(const TTFormat& m, std::int64_t cap = kDefaultDenseCap);
DenseTensor to_dense(const TuckerFormat& m, std::int64_t cap = kDefaultDenseCap);
DenseTensor to_dense(const HTFormat& m, std::int64_t cap = kDefaultDenseCap);
DenseTensor to_dense(const MERAFormat& m, std::int64_t cap = kDefaultDenseCap);

TensorNetworkGraph structure_graph(const TTFormat& m);
TensorNetworkGraph structure_graph(const HTFormat& m);
TensorNetworkGraph structure_graph(const MERAFormat& m);

enum class Fill { Zeros, Random };

TTFormat make_tt(int L, std::int64_t D, std::int64_t r, Fill fill,
                 std::uint64_t seed = 0);
HTFormat make_ht(int L, std::int64_t D, std::int64_t r, Fill fill,
                 std::uint64_t seed = 0);
MERAFormat make_mera(int L, std::int64_t D, std::int64_t r, Fill fill,
                     std::uint64_t seed = 0);

bool is_power_of_two(std::int64_t v);

}  // namespace tensorank
