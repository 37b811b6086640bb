#include "tensorank/formats.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "tensorank/rng.hpp"

namespace tensorank {

namespace {

DenseTensor reshape(const DenseTensor& t, std::vector<std::int64_t> new_dims) {
  return DenseTensor(std::move(new_dims), t.data);
}

void fill_tensor(DenseTensor& t, Fill fill, Rng& rng) {
  if (fill == Fill::Random)
    for (double& v : t.data) v = rng.next_normal();
}

void fill_matrix(Matrix& m, Fill fill, Rng& rng) {
  if (fill == Fill::Random)
    for (double& v : m.data) v = rng.next_normal();
}

DenseTensor matrix_as_tensor(const Matrix& m) {
  return DenseTensor({m.rows, m.cols}, m.data);
}

void check_cap(std::int64_t total, std::int64_t cap) {
  if (total > cap)
    throw CapExceededError("dense size " + std::to_string(total) +
                           " exceeds cap " + std::to_string(cap));
}

// phi1: d1 x r1, phi2: d2 x r2, lambda: (r1, r2, ro) -> (d1*d2) x ro
Matrix ht_combine(const Matrix& phi1, const Matrix& phi2, const DenseTensor& lam) {
  const std::int64_t d1 = phi1.rows, r1 = phi1.cols;
  const std::int64_t d2 = phi2.rows, r2 = phi2.cols;
  const std::int64_t ro = lam.dims[2];
  if (lam.dims[0] != r1 || lam.dims[1] != r2)
    throw DimensionError("HT transfer dims do not match child ranks");
  Matrix out(d1 * d2, ro);
  for (std::int64_t x1 = 0; x1 < d1; ++x1)
    for (std::int64_t x2 = 0; x2 < d2; ++x2)
      for (std::int64_t a = 0; a < ro; ++a) {
        double s = 0.0;
        for (std::int64_t b1 = 0; b1 < r1; ++b1)
          for (std::int64_t b2 = 0; b2 < r2; ++b2)
            s += phi1(x1, b1) * phi2(x2, b2) * lam.data[(b1 * r2 + b2) * ro + a];
        out(x1 * d2 + x2, a) = s;
      }
  return out;
}

}  // namespace

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

// ---------------------------------------------------------------------------
// TT

std::vector<std::int64_t> TTFormat::bond_dims() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i + 1 < cores.size(); ++i) out.push_back(cores[i].dims[2]);
  return out;
}

std::vector<std::int64_t> TTFormat::physical_dims() const {
  std::vector<std::int64_t> out;
  for (const auto& c : cores) out.push_back(c.dims[1]);
  return out;
}

void TTFormat::validate() const {
  if (cores.empty()) throw DimensionError("TT has no cores");
  if (cores.front().dims[0] != 1 || cores.back().dims[2] != 1)
    throw DimensionError("TT boundary bonds must have dimension 1");
  for (const auto& c : cores)
    if (c.order() != 3) throw DimensionError("TT cores must be order-3");
  for (std::size_t i = 0; i + 1 < cores.size(); ++i)
    if (cores[i].dims[2] != cores[i + 1].dims[0])
      throw DimensionError("adjacent TT bond dims do not match");
}

DenseTensor to_dense(const TTFormat& m, std::int64_t cap) {
  m.validate();
  std::int64_t total = 1;
  for (auto d : m.physical_dims()) total *= d;
  check_cap(total, cap);

  DenseTensor cur = m.cores[0];
  for (std::size_t i = 1; i < m.cores.size(); ++i)
    cur = contract_all(cur, m.cores[i], {{cur.order() - 1, 0}});
  // drop the two singleton boundary bonds
  std::vector<std::int64_t> dims(cur.dims.begin() + 1, cur.dims.end() - 1);
  return reshape(cur, std::move(dims));
}

TensorNetworkGraph structure_graph(const TTFormat& m) {
  m.validate();
  TensorNetworkGraph g;
  const int L = m.order();
  for (int i = 0; i < L; ++i) g.nodes.push_back("core" + std::to_string(i));
  for (int i = 0; i + 1 < L; ++i)
    g.edges.push_back({i, i + 1, m.cores[i].dims[2]});
  for (int i = 0; i < L; ++i) g.open_legs.push_back({i, i, m.cores[i].dims[1]});
  return g;
}

TTFormat make_tt(int L, std::int64_t D, std::int64_t r, Fill fill, std::uint64_t seed) {
  if (L < 2) throw DomainError("TT needs L >= 2");
  if (D < 1 || r < 1) throw DomainError("D and r must be >= 1");
  Rng rng(seed);
  TTFormat tt;
  for (int i = 0; i < L; ++i) {
    const std::int64_t rl = (i == 0) ? 1 : r;
    const std::int64_t rr = (i == L - 1) ? 1 : r;
    DenseTensor c({rl, D, rr});
    fill_tensor(c, fill, rng);
    tt.cores.push_back(std::move(c));
  }
  return tt;
}

// ---------------------------------------------------------------------------
// Tucker

std::vector<std::int64_t> TuckerFormat::physical_dims() const {
  std::vector<std::int64_t> out;
  for (const auto& f : factors) out.push_back(f.rows);
  return out;
}

void TuckerFormat::validate() const {
  if (core.order() != order()) throw DimensionError("Tucker core order mismatch");
  for (int k = 0; k < order(); ++k)
    if (factors[k].cols != core.dims[k])
      throw DimensionError("Tucker factor columns must match core dims");
}

DenseTensor to_dense(const TuckerFormat& m, std::int64_t cap) {
  m.validate();
  std::int64_t total = 1;
  for (auto d : m.physical_dims()) total *= d;
  check_cap(total, cap);

  // Each step consumes current mode 0 (original mode k) and appends the
  // physical mode at the end, restoring ascending order after L steps.
  DenseTensor cur = m.core;
  for (int k = 0; k < m.order(); ++k)
    cur = contract_all(cur, matrix_as_tensor(m.factors[k]), {{0, 1}});
  return cur;
}

// ---------------------------------------------------------------------------
// HT

int HTFormat::levels() const {
  int H = 0;
  for (std::int64_t l = order(); l > 1; l /= 2) ++H;
  return H;
}

std::vector<std::int64_t> HTFormat::physical_dims() const {
  std::vector<std::int64_t> out;
  for (const auto& f : leaf_factors) out.push_back(f.rows);
  return out;
}

void HTFormat::validate() const {
  const int L = order();
  if (L < 2 || !is_power_of_two(L)) throw DimensionError("HT order must be a power of 2");
  const int H = levels();
  if (static_cast<int>(transfer.size()) != std::max(H - 1, 0))
    throw DimensionError("HT transfer levels must equal log2(L) - 1");
  for (int h = 1; h < H; ++h) {
    const int nodes = L >> h;
    if (static_cast<int>(transfer[h - 1].size()) != nodes)
      throw DimensionError("HT level " + std::to_string(h) + " node count mismatch");
    for (const auto& t : transfer[h - 1])
      if (t.order() != 3) throw DimensionError("HT transfer tensors must be order-3");
  }
  auto child_out = [&](int h, int j) -> std::int64_t {
    if (h == 0) return leaf_factors[j].cols;
    return transfer[h - 1][j].dims[2];
  };
  for (int h = 1; h < H; ++h)
    for (int j = 0; j < (L >> h); ++j) {
      if (transfer[h - 1][j].dims[0] != child_out(h - 1, 2 * j) ||
          transfer[h - 1][j].dims[1] != child_out(h - 1, 2 * j + 1))
        throw DimensionError("HT bond dims inconsistent along the tree");
    }
  if (top.rows != child_out(H - 1, 0) || top.cols != child_out(H - 1, 1))
    throw DimensionError("HT top dims inconsistent with children");
}

DenseTensor to_dense(const HTFormat& m, std::int64_t cap) {
  m.validate();
  std::int64_t total = 1;
  for (auto d : m.physical_dims()) total *= d;
  check_cap(total, cap);

  std::vector<Matrix> phi = m.leaf_factors;
  const int H = m.levels();
  for (int h = 1; h < H; ++h) {
    std::vector<Matrix> next;
    for (std::size_t j = 0; j < m.transfer[h - 1].size(); ++j)
      next.push_back(ht_combine(phi[2 * j], phi[2 * j + 1], m.transfer[h - 1][j]));
    phi = std::move(next);
  }
  const Matrix& p1 = phi[0];
  const Matrix& p2 = phi[1];
  Matrix out(p1.rows, p2.rows);
  for (std::int64_t x1 = 0; x1 < p1.rows; ++x1)
    for (std::int64_t x2 = 0; x2 < p2.rows; ++x2) {
      double s = 0.0;
      for (std::int64_t b1 = 0; b1 < m.top.rows; ++b1)
        for (std::int64_t b2 = 0; b2 < m.top.cols; ++b2)
          s += p1(x1, b1) * p2(x2, b2) * m.top(b1, b2);
      out(x1, x2) = s;
    }
  return DenseTensor(m.physical_dims(), out.data);
}

TensorNetworkGraph structure_graph(const HTFormat& m) {
  m.validate();
  TensorNetworkGraph g;
  const int L = m.order();
  const int H = m.levels();
  std::vector<std::vector<int>> ids(H);  // node ids per level below top
  for (int i = 0; i < L; ++i) {
    ids[0].push_back(static_cast<int>(g.nodes.size()));
    g.nodes.push_back("leaf" + std::to_string(i));
  }
  for (int h = 1; h < H; ++h)
    for (int j = 0; j < (L >> h); ++j) {
      ids[h].push_back(static_cast<int>(g.nodes.size()));
      g.nodes.push_back("node" + std::to_string(h) + "_" + std::to_string(j));
    }
  const int top_id = static_cast<int>(g.nodes.size());
  g.nodes.push_back("top");

  auto out_dim = [&](int h, int j) -> std::int64_t {
    if (h == 0) return m.leaf_factors[j].cols;
    return m.transfer[h - 1][j].dims[2];
  };
  for (int h = 0; h < H - 1; ++h)
    for (std::size_t j = 0; j < ids[h].size(); ++j)
      g.edges.push_back({ids[h][j], ids[h + 1][j / 2], out_dim(h, static_cast<int>(j))});
  for (std::size_t j = 0; j < ids[H - 1].size(); ++j)
    g.edges.push_back({ids[H - 1][j], top_id, out_dim(H - 1, static_cast<int>(j))});
  for (int i = 0; i < L; ++i) g.open_legs.push_back({ids[0][i], i, m.leaf_factors[i].rows});
  return g;
}

HTFormat make_ht(int L, std::int64_t D, std::int64_t r, Fill fill, std::uint64_t seed) {
  if (L < 2 || !is_power_of_two(L)) throw DomainError("HT needs L a power of 2, L >= 2");
  if (D < 1 || r < 1) throw DomainError("D and r must be >= 1");
  Rng rng(seed);
  HTFormat ht;
  for (int i = 0; i < L; ++i) {
    Matrix f(D, r);
    fill_matrix(f, fill, rng);
    ht.leaf_factors.push_back(std::move(f));
  }
  int H = 0;
  for (std::int64_t l = L; l > 1; l /= 2) ++H;
  for (int h = 1; h < H; ++h) {
    std::vector<DenseTensor> level;
    for (int j = 0; j < (L >> h); ++j) {
      DenseTensor t({r, r, r});
      fill_tensor(t, fill, rng);
      level.push_back(std::move(t));
    }
    ht.transfer.push_back(std::move(level));
  }
  ht.top = Matrix(r, r);
  fill_matrix(ht.top, fill, rng);
  return ht;
}

// ---------------------------------------------------------------------------
// MERA

int MERAFormat::order() const {
  return layers.empty() ? 0 : 2 * static_cast<int>(layers.front().disentanglers.size());
}

std::vector<std::int64_t> MERAFormat::physical_dims() const {
  const int L = order();
  std::vector<std::int64_t> dims(L, 0);
  const auto& dis = layers.front().disentanglers;
  const int n = static_cast<int>(dis.size());
  for (int j = 0; j < n; ++j) {
    dims[(2 * j + 1) % L] = dis[j].dims[0];
    dims[(2 * j + 2) % L] = dis[j].dims[1];
  }
  return dims;
}

void MERAFormat::validate() const {
  if (layers.empty()) throw DimensionError("MERA has no layers");
  std::size_t n = layers.front().disentanglers.size();
  if (n < 2) throw DimensionError("MERA bottom layer needs >= 2 disentanglers");
  std::vector<std::int64_t> legs;  // current level leg dims by position
  {
    const int L = static_cast<int>(2 * n);
    legs.assign(L, 0);
    for (std::size_t j = 0; j < n; ++j) {
      legs[(2 * j + 1) % L] = layers.front().disentanglers[j].dims[0];
      legs[(2 * j + 2) % L] = layers.front().disentanglers[j].dims[1];
    }
  }
  for (const auto& layer : layers) {
    const std::size_t ln = layer.disentanglers.size();
    if (layer.isometries.size() != ln)
      throw DimensionError("MERA layer must have equal disentangler/isometry counts");
    if (2 * ln != legs.size()) throw DimensionError("MERA layer width mismatch");
    const int N = static_cast<int>(legs.size());
    for (std::size_t j = 0; j < ln; ++j) {
      const auto& d = layer.disentanglers[j];
      if (d.order() != 4) throw DimensionError("disentanglers must be order-4");
      if (d.dims[0] != legs[(2 * j + 1) % N] || d.dims[1] != legs[(2 * j + 2) % N])
        throw DimensionError("disentangler input dims mismatch");
    }
    for (std::size_t k = 0; k < ln; ++k) {
      const auto& w = layer.isometries[k];
      if (w.order() != 3) throw DimensionError("isometries must be order-3");
      const auto& dprev = layer.disentanglers[(k + ln - 1) % ln];
      const auto& dcur = layer.disentanglers[k];
      if (w.dims[0] != dprev.dims[3] || w.dims[1] != dcur.dims[2])
        throw DimensionError("isometry input dims mismatch");
    }
    std::vector<std::int64_t> next;
    for (const auto& w : layer.isometries) next.push_back(w.dims[2]);
    legs = std::move(next);
  }
  if (legs.size() != 2) throw DimensionError("MERA must reduce to two legs at the top");
  if (top.rows != legs[0] || top.cols != legs[1])
    throw DimensionError("top tensor dims mismatch");
}

namespace {

// Leg labels while contracting a MERA top-down.
struct Label {
  int kind;  // 0: level leg (level, position); 1: disentangler output (layer, j, out#)
  int a;
  int b;
  int c;
  bool operator==(const Label&) const = default;
};

int find_label(const std::vector<Label>& labels, const Label& l) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == l) return static_cast<int>(i);
  throw DimensionError("internal: MERA leg label not found");
}

}  // namespace

DenseTensor to_dense(const MERAFormat& m, std::int64_t cap) {
  m.validate();
  std::int64_t total = 1;
  for (auto d : m.physical_dims()) total *= d;
  check_cap(total, cap);

  const int top_level = static_cast<int>(m.layers.size());
  DenseTensor cur({m.top.rows, m.top.cols}, m.top.data);
  std::vector<Label> labels = {{0, top_level, 0, 0}, {0, top_level, 1, 0}};

  for (int li = top_level - 1; li >= 0; --li) {
    const auto& layer = m.layers[li];
    const int n = static_cast<int>(layer.isometries.size());
    const int N = 2 * n;
    for (int k = 0; k < n; ++k) {
      const int pos = find_label(labels, {0, li + 1, k, 0});
      cur = contract_all(cur, layer.isometries[k], {{pos, 2}});
      labels.erase(labels.begin() + pos);
      labels.push_back({1, li, (k + n - 1) % n, 2});  // dis_{k-1}.out2
      labels.push_back({1, li, k, 1});                // dis_k.out1
    }
    for (int j = 0; j < n; ++j) {
      const int p1 = find_label(labels, {1, li, j, 1});
      const int p2 = find_label(labels, {1, li, j, 2});
      cur = contract_all(cur, layer.disentanglers[j], {{p1, 2}, {p2, 3}});
      std::vector<Label> next;
      for (int i = 0; i < static_cast<int>(labels.size()); ++i)
        if (i != p1 && i != p2) next.push_back(labels[i]);
      next.push_back({0, li, (2 * j + 1) % N, 0});
      next.push_back({0, li, (2 * j + 2) % N, 0});
      labels = std::move(next);
    }
  }

  // order modes by physical position
  std::vector<int> perm(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int pos = labels[i].b;  // level-0 position
    perm[pos] = static_cast<int>(i);
  }
  return permute(cur, perm);
}

TensorNetworkGraph structure_graph(const MERAFormat& m) {
  m.validate();
  TensorNetworkGraph g;
  std::vector<std::vector<int>> dis_ids, iso_ids;
  for (std::size_t li = 0; li < m.layers.size(); ++li) {
    dis_ids.emplace_back();
    iso_ids.emplace_back();
    for (std::size_t j = 0; j < m.layers[li].disentanglers.size(); ++j) {
      dis_ids[li].push_back(static_cast<int>(g.nodes.size()));
      g.nodes.push_back("dis" + std::to_string(li) + "_" + std::to_string(j));
    }
    for (std::size_t k = 0; k < m.layers[li].isometries.size(); ++k) {
      iso_ids[li].push_back(static_cast<int>(g.nodes.size()));
      g.nodes.push_back("iso" + std::to_string(li) + "_" + std::to_string(k));
    }
  }
  const int top_id = static_cast<int>(g.nodes.size());
  g.nodes.push_back("top");

  for (std::size_t li = 0; li < m.layers.size(); ++li) {
    const auto& layer = m.layers[li];
    const int n = static_cast<int>(layer.isometries.size());
    // disentangler outputs -> isometries
    for (int k = 0; k < n; ++k) {
      const int jprev = (k + n - 1) % n;
      g.edges.push_back({dis_ids[li][jprev], iso_ids[li][k], layer.disentanglers[jprev].dims[3]});
      g.edges.push_back({dis_ids[li][k], iso_ids[li][k], layer.disentanglers[k].dims[2]});
    }
    // isometry outputs -> next layer disentangler inputs (or top)
    if (li + 1 < m.layers.size()) {
      const int n2 = static_cast<int>(m.layers[li + 1].disentanglers.size());
      const int N2 = 2 * n2;
      for (int j = 0; j < n2; ++j) {
        g.edges.push_back(
            {iso_ids[li][(2 * j + 1) % N2], dis_ids[li + 1][j], layer.isometries[(2 * j + 1) % N2].dims[2]});
        g.edges.push_back(
            {iso_ids[li][(2 * j + 2) % N2], dis_ids[li + 1][j], layer.isometries[(2 * j + 2) % N2].dims[2]});
      }
    } else {
      g.edges.push_back({iso_ids[li][0], top_id, layer.isometries[0].dims[2]});
      g.edges.push_back({iso_ids[li][1], top_id, layer.isometries[1].dims[2]});
    }
  }
  // open legs on the bottom disentanglers
  const auto& bottom = m.layers.front().disentanglers;
  const int n = static_cast<int>(bottom.size());
  const int L = 2 * n;
  for (int j = 0; j < n; ++j) {
    g.open_legs.push_back({dis_ids[0][j], (2 * j + 1) % L, bottom[j].dims[0]});
    g.open_legs.push_back({dis_ids[0][j], (2 * j + 2) % L, bottom[j].dims[1]});
  }
  std::sort(g.open_legs.begin(), g.open_legs.end(),
            [](const auto& a, const auto& b) { return a.mode < b.mode; });
  return g;
}

MERAFormat make_mera(int L, std::int64_t D, std::int64_t r, Fill fill, std::uint64_t seed) {
  if (L < 4 || !is_power_of_two(L)) throw DomainError("MERA needs L a power of 2, L >= 4");
  if (D < 1 || r < 1) throw DomainError("D and r must be >= 1");
  Rng rng(seed);
  MERAFormat mera;
  std::int64_t in_dim = D;
  for (int width = L; width > 2; width /= 2) {
    MERAFormat::Layer layer;
    const int n = width / 2;
    for (int j = 0; j < n; ++j) {
      DenseTensor d({in_dim, in_dim, r, r});
      fill_tensor(d, fill, rng);
      layer.disentanglers.push_back(std::move(d));
    }
    for (int k = 0; k < n; ++k) {
      DenseTensor w({r, r, r});
      fill_tensor(w, fill, rng);
      layer.isometries.push_back(std::move(w));
    }
    mera.layers.push_back(std::move(layer));
    in_dim = r;
  }
  mera.top = Matrix(r, r);
  fill_matrix(mera.top, fill, rng);
  return mera;
}

// ---------------------------------------------------------------------------
// graph

bool TensorNetworkGraph::connected() const {
  if (nodes.empty()) return false;
  std::vector<std::vector<int>> adj(nodes.size());
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(nodes.size(), false);
  std::vector<int> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

void TensorNetworkGraph::validate() const {
  const int L = order();
  std::vector<bool> mode_seen(L, false);
  for (const auto& leg : open_legs) {
    if (leg.node < 0 || leg.node >= static_cast<int>(nodes.size()))
      throw DimensionError("open leg attached to unknown node");
    if (leg.mode < 0 || leg.mode >= L || mode_seen[leg.mode])
      throw DimensionError("every mode must appear on exactly one open leg");
    mode_seen[leg.mode] = true;
    if (leg.dim < 1) throw DimensionError("open leg dim must be >= 1");
  }
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= static_cast<int>(nodes.size()) || e.v < 0 ||
        e.v >= static_cast<int>(nodes.size()))
      throw DimensionError("edge references unknown node");
    if (e.dim < 1) throw DimensionError("bond dims must be >= 1");
  }
}

}  // namespace tensorank
