#include "tensorank/rank_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace tensorank {

namespace {

// Tiny per-bond weight so that among equal-weight cuts the one severing
// fewer bonds wins, identically in both engines.
constexpr double kCountEpsilon = 1e-9;

struct Bond {
  int u = 0;
  int v = 0;
  double log2dim = 0.0;
};

struct CutProblem {
  int n_nodes = 0;  // real nodes; source = n_nodes, sink = n_nodes + 1
  std::vector<Bond> bonds;

  int source() const { return n_nodes; }
  int sink() const { return n_nodes + 1; }
};

CutProblem build_problem(const TensorNetworkGraph& g, const ModeBipartition& p) {
  g.validate();
  if (p.order != g.order())
    throw DimensionError("bipartition order does not match graph open legs");
  if (!g.connected()) throw DimensionError("graph is disconnected");
  CutProblem prob;
  prob.n_nodes = static_cast<int>(g.nodes.size());
  for (const auto& e : g.edges)
    prob.bonds.push_back({e.u, e.v, std::log2(static_cast<double>(e.dim))});
  for (const auto& leg : g.open_legs) {
    const int terminal = p.contains(leg.mode) ? prob.source() : prob.sink();
    prob.bonds.push_back({terminal, leg.node, std::log2(static_cast<double>(leg.dim))});
  }
  return prob;
}

CutResult result_from_side(const CutProblem& prob, const std::vector<bool>& on_source_side) {
  CutResult r;
  for (const auto& b : prob.bonds) {
    if (on_source_side[b.u] != on_source_side[b.v]) {
      ++r.severed_bonds;
      r.log2_bound += b.log2dim;
    }
  }
  r.rank_bound = std::exp2(r.log2_bound);
  return r;
}

}  // namespace

int RankProfile::max_rank(int m) const {
  int r = 0;
  for (const auto& e : by_m.at(m - 1)) r = std::max(r, e.rank);
  return r;
}

int RankProfile::min_rank(int m) const {
  int r = std::numeric_limits<int>::max();
  for (const auto& e : by_m.at(m - 1)) r = std::min(r, e.rank);
  return r;
}

CutResult min_cut_exhaustive(const TensorNetworkGraph& g, const ModeBipartition& p) {
  CutProblem prob = build_problem(g, p);
  const int n = prob.n_nodes;

  // Order nodes by a BFS from the terminals so partial assignments close
  // bonds early (better pruning).
  std::vector<std::vector<int>> adj(n + 2);
  for (std::size_t i = 0; i < prob.bonds.size(); ++i) {
    adj[prob.bonds[i].u].push_back(static_cast<int>(i));
    adj[prob.bonds[i].v].push_back(static_cast<int>(i));
  }
  std::vector<int> order;
  std::vector<bool> queued(n + 2, false);
  std::queue<int> q;
  q.push(prob.source());
  q.push(prob.sink());
  queued[prob.source()] = queued[prob.sink()] = true;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    if (u < n) order.push_back(u);
    for (int bi : adj[u]) {
      const auto& b = prob.bonds[bi];
      const int w = (b.u == u) ? b.v : b.u;
      if (!queued[w]) {
        queued[w] = true;
        q.push(w);
      }
    }
  }

  std::vector<int> side(n + 2, -1);  // -1 unknown, 0 source side, 1 sink side
  side[prob.source()] = 0;
  side[prob.sink()] = 1;

  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> best_side(n + 2, false);

  auto dfs = [&](auto&& self, std::size_t depth, double acc) -> void {
    if (acc >= best) return;
    if (depth == order.size()) {
      best = acc;
      for (int i = 0; i < n + 2; ++i) best_side[i] = (side[i] == 0);
      return;
    }
    const int u = order[depth];
    for (int s = 0; s < 2; ++s) {
      side[u] = s;
      double add = 0.0;
      for (int bi : adj[u]) {
        const auto& b = prob.bonds[bi];
        const int w = (b.u == u) ? b.v : b.u;
        if (side[w] != -1 && side[w] != s) add += b.log2dim + kCountEpsilon;
      }
      self(self, depth + 1, acc + add);
    }
    side[u] = -1;
  };
  dfs(dfs, 0, 0.0);

  return result_from_side(prob, best_side);
}

namespace {

// Dinic on an undirected graph with double capacities.
struct Dinic {
  struct Arc {
    int to;
    double cap;
    int rev;
  };
  std::vector<std::vector<Arc>> arcs;
  std::vector<int> level, iter;

  explicit Dinic(int n) : arcs(n), level(n), iter(n) {}

  void add_undirected(int u, int v, double cap) {
    arcs[u].push_back({v, cap, static_cast<int>(arcs[v].size())});
    arcs[v].push_back({u, cap, static_cast<int>(arcs[u].size()) - 1});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& a : arcs[u])
        if (a.cap > 1e-15 && level[a.to] < 0) {
          level[a.to] = level[u] + 1;
          q.push(a.to);
        }
    }
    return level[t] >= 0;
  }

  double dfs(int u, int t, double f) {
    if (u == t) return f;
    for (int& i = iter[u]; i < static_cast<int>(arcs[u].size()); ++i) {
      Arc& a = arcs[u][i];
      if (a.cap > 1e-15 && level[a.to] == level[u] + 1) {
        double d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0.0) {
          a.cap -= d;
          arcs[a.to][a.rev].cap += d;
          return d;
        }
      }
    }
    return 0.0;
  }

  void max_flow(int s, int t) {
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      while (dfs(s, t, std::numeric_limits<double>::infinity()) > 0.0) {
      }
    }
  }

  std::vector<bool> source_side(int s) {
    std::vector<bool> seen(arcs.size(), false);
    std::queue<int> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& a : arcs[u])
        if (a.cap > 1e-12 && !seen[a.to]) {
          seen[a.to] = true;
          q.push(a.to);
        }
    }
    return seen;
  }
};

}  // namespace

CutResult min_cut_maxflow(const TensorNetworkGraph& g, const ModeBipartition& p) {
  CutProblem prob = build_problem(g, p);
  Dinic dinic(prob.n_nodes + 2);
  for (const auto& b : prob.bonds)
    dinic.add_undirected(b.u, b.v, b.log2dim + kCountEpsilon);
  dinic.max_flow(prob.source(), prob.sink());
  return result_from_side(prob, dinic.source_side(prob.source()));
}

CutResult min_cut_bound(const TensorNetworkGraph& g, const ModeBipartition& p) {
  if (g.nodes.size() <= 24) return min_cut_exhaustive(g, p);
  return min_cut_maxflow(g, p);
}

std::string to_string(SsbClass c) {
  switch (c) {
    case SsbClass::Constant: return "constant";
    case SsbClass::Logarithmic: return "logarithmic";
    case SsbClass::Power: return "power";
    case SsbClass::Exponential: return "exponential";
    default: return "unknown";
  }
}

namespace {

// Weighted affine fit y ~ a + b x minimizing sum w_i^2 (a + b x_i - y_i)^2.
std::pair<double, double> affine_fit(const std::vector<double>& x,
                                     const std::vector<double>& y,
                                     const std::vector<double>& w) {
  double sww = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w2 = w[i] * w[i];
    sww += w2;
    swx += w2 * x[i];
    swy += w2 * y[i];
    swxx += w2 * x[i] * x[i];
    swxy += w2 * x[i] * y[i];
  }
  const double det = sww * swxx - swx * swx;
  if (std::abs(det) < 1e-14) return {swy / sww, 0.0};
  const double a = (swxx * swy - swx * swxy) / det;
  const double b = (sww * swxy - swx * swy) / det;
  return {a, b};
}

double rel_residual(const std::vector<double>& pred, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = (pred[i] - y[i]) / y[i];
    s += d * d;
  }
  return s;
}

}  // namespace

SsbClass classify_ssb(const std::vector<std::pair<int, int>>& samples,
                      SeparabilityProfile* details) {
  std::vector<double> ms, ns;
  for (auto [m, n] : samples) {
    ms.push_back(static_cast<double>(m));
    ns.push_back(static_cast<double>(n));
  }
  std::vector<int> distinct;
  for (auto [m, n] : samples) {
    (void)n;
    if (std::find(distinct.begin(), distinct.end(), m) == distinct.end())
      distinct.push_back(m);
  }
  if (distinct.size() < 3) return SsbClass::Unknown;

  const std::size_t k = ms.size();
  std::vector<double> w(k), lx(k), ly(k);
  for (std::size_t i = 0; i < k; ++i) {
    w[i] = 1.0 / ns[i];
    lx[i] = std::log2(ms[i]);
    ly[i] = std::log2(ns[i]);
  }
  std::vector<double> ones(k, 1.0);

  // constant: n = c (relative-weighted mean)
  double num = 0, den = 0;
  for (std::size_t i = 0; i < k; ++i) {
    num += w[i] * w[i] * ns[i];
    den += w[i] * w[i];
  }
  const double c0 = num / den;
  std::vector<double> pred(k);
  for (std::size_t i = 0; i < k; ++i) pred[i] = c0;
  const double r_const = rel_residual(pred, ns);

  // logarithmic: n = a + b log2 m (relative-weighted)
  auto [la, lb] = affine_fit(lx, ns, w);
  for (std::size_t i = 0; i < k; ++i) pred[i] = la + lb * lx[i];
  const double r_log = rel_residual(pred, ns);

  // power: log2 n = a + alpha log2 m
  auto [pa, alpha] = affine_fit(lx, ly, ones);
  for (std::size_t i = 0; i < k; ++i) pred[i] = std::exp2(pa + alpha * lx[i]);
  const double r_pow = rel_residual(pred, ns);

  // exponential: log2 n = a + beta m
  auto [ea, beta] = affine_fit(ms, ly, ones);
  for (std::size_t i = 0; i < k; ++i) pred[i] = std::exp2(ea + beta * ms[i]);
  const double r_exp = rel_residual(pred, ns);

  if (details) {
    details->residual_constant = r_const;
    details->residual_logarithmic = r_log;
    details->residual_power = r_pow;
    details->residual_exponential = r_exp;
  }

  const double best = std::min({r_const, r_log, r_pow, r_exp});
  // parsimony: the slowest-growing class within a factor 2 of the best fit
  const double band = 2.0 * best + 1e-12;
  SsbClass cls;
  if (r_const <= band)
    cls = SsbClass::Constant;
  else if (r_log <= band)
    cls = SsbClass::Logarithmic;
  else if (r_pow <= band)
    cls = SsbClass::Power;
  else
    cls = SsbClass::Exponential;

  if (details) {
    details->ssb_class = cls;
    if (cls == SsbClass::Power)
      details->fitted_exponent = alpha;
    else if (cls == SsbClass::Exponential)
      details->fitted_exponent = beta;
    else
      details->fitted_exponent = 0.0;
  }
  return cls;
}

SeparabilityProfile separability_profile(const TensorNetworkGraph& g) {
  g.validate();
  const int L = g.order();
  if (L < 2) throw DomainError("separability profile needs order >= 2");

  std::vector<int> sample_ms;
  if (L <= kDefaultExhaustiveCap) {
    for (int m = 1; 2 * m <= L; ++m) sample_ms.push_back(m);
  } else {
    for (int m = 1; 2 * m <= L; m *= 2) sample_ms.push_back(m);
  }

  SeparabilityProfile prof;
  for (int m : sample_ms) {
    CutResult best;
    bool first = true;
    for (const auto& p : enumerate_bipartitions(L, m)) {
      CutResult r = min_cut_bound(g, p);
      if (first || r.log2_bound + kCountEpsilon * r.severed_bonds <
                       best.log2_bound + kCountEpsilon * best.severed_bonds) {
        best = r;
        first = false;
      }
    }
    prof.samples.push_back({m, best.severed_bonds, best.log2_bound});
  }

  std::vector<std::pair<int, int>> pts;
  for (const auto& s : prof.samples) pts.emplace_back(s.m, s.n);
  classify_ssb(pts, &prof);
  return prof;
}

RankProfile rank_profile(const DenseTensor& t, double tol, int m_max,
                         int exhaustive_cap) {
  const int L = t.order();
  if (L > exhaustive_cap)
    throw CapExceededError("order " + std::to_string(L) +
                           " exceeds exhaustive cap " + std::to_string(exhaustive_cap));
  if (L < 2) throw DomainError("rank profile needs order >= 2");
  if (m_max <= 0) m_max = L / 2;
  if (2 * m_max > L) throw DomainError("m_max must be <= L/2");

  RankProfile prof;
  prof.by_m.resize(m_max);
  for (int m = 1; m <= m_max; ++m)
    for (const auto& p : enumerate_bipartitions(L, m))
      prof.by_m[m - 1].push_back({p, matricization_rank(t, p, tol)});
  return prof;
}

CannikinReport cannikin_check(const DenseTensor& t, const TensorNetworkGraph& g,
                              double tol, int exhaustive_cap) {
  if (t.order() != g.order())
    throw DimensionError("tensor order does not match graph open legs");
  const int L = t.order();
  if (L > exhaustive_cap)
    throw CapExceededError("order exceeds exhaustive cap");

  CannikinReport report;
  for (int m = 1; 2 * m <= L; ++m) {
    CannikinReport::PerM row;
    row.m = m;
    double min_bound = std::numeric_limits<double>::infinity();
    for (const auto& p : enumerate_bipartitions(L, m)) {
      const int rank = matricization_rank(t, p, tol);
      const CutResult cut = min_cut_bound(g, p);
      row.lhs_max_rank = std::max(row.lhs_max_rank, rank);
      min_bound = std::min(min_bound, cut.rank_bound);
      // rank bounds are exact integers at desk scale; allow for fp slack
      if (static_cast<double>(rank) > cut.rank_bound * (1.0 + 1e-9)) {
        row.satisfied = false;
        if (!row.witness) row.witness = p;
      }
    }
    row.rhs_min_bound = min_bound;
    report.satisfied = report.satisfied && row.satisfied;
    report.per_m.push_back(row);
  }
  return report;
}

}  // namespace tensorank
