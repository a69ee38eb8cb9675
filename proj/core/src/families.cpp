#include <greenwalk/families.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace greenwalk {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

std::string pair_label(const char* quantity, Index i, Index j) {
  return std::string(quantity) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void add_value(OracleReport& r, std::string label, Quantity q, Index i, Index j, double value) {
  r.values.push_back(OracleValue{std::move(label), Probe{q, i, j}, value});
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (int t = 1; t <= k; ++t) out = out * (n - k + t) / t;
  return out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::vector<Index> unravel(Index index, std::span<const Index> dims) {
  std::vector<Index> coords(dims.size());
  for (std::size_t t = dims.size(); t-- > 0;) {
    coords[t] = index % dims[t];
    index /= dims[t];
  }
  return coords;
}

Index ravel(std::span<const Index> coords, std::span<const Index> dims) {
  Index index = 0;
  for (std::size_t t = 0; t < dims.size(); ++t) index = index * dims[t] + coords[t];
  return index;
}

// Edge formula: for an edge {c, u} with c on the far side from the target,
// H(c, u) = (2 W(T_c) + w) / w where W(T_c) is the edge weight inside c's side.
HittingTimeMatrix tree_hitting_times(const WeightedDigraph& tree, const std::vector<std::vector<Index>>& adj) {
  const Index n = tree.size();
  Matrix h = Matrix::Zero(n, n);
  std::vector<Index> parent(static_cast<std::size_t>(n)), order;
  std::vector<double> inside(static_cast<std::size_t>(n));
  for (Index target = 0; target < n; ++target) {
    std::fill(parent.begin(), parent.end(), -1);
    order.clear();
    parent[static_cast<std::size_t>(target)] = target;
    order.push_back(target);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Index u = order[k];
      for (Index v : adj[static_cast<std::size_t>(u)]) {
        if (parent[static_cast<std::size_t>(v)] < 0) {
          parent[static_cast<std::size_t>(v)] = u;
          order.push_back(v);
        }
      }
    }
    std::fill(inside.begin(), inside.end(), 0.0);
    for (std::size_t k = order.size(); k-- > 1;) {
      const Index c = order[k];
      const Index u = parent[static_cast<std::size_t>(c)];
      inside[static_cast<std::size_t>(u)] += inside[static_cast<std::size_t>(c)] + tree.weight(c, u);
    }
    for (std::size_t k = 1; k < order.size(); ++k) {
      const Index c = order[k];
      const Index u = parent[static_cast<std::size_t>(c)];
      const double w = tree.weight(c, u);
      h(c, target) = h(u, target) + (2.0 * inside[static_cast<std::size_t>(c)] + w) / w;
    }
  }
  return HittingTimeMatrix(std::move(h));
}

Matrix pi_scaled_symmetric_fill(Matrix g, const Vector& pi) {
  // Lower triangle from pi_i G(i,j) = pi_j G(j,i).
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index j = 0; j < i; ++j) g(i, j) = pi(j) * g(j, i) / pi(i);
  }
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Realizations

WeightedDigraph complete_graph(Index n) {
  if (n < 2) throw ValidationError("complete graph needs n >= 2");
  std::vector<Arc> arcs;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) arcs.push_back({i, j, 1.0});
  return WeightedDigraph(n, std::move(arcs), true);
}

WeightedDigraph complete_bipartite_graph(Index r, Index s) {
  if (r < 1 || s < 1) throw ValidationError("complete bipartite graph needs r, s >= 1");
  std::vector<Arc> arcs;
  for (Index u = 0; u < r; ++u)
    for (Index w = 0; w < s; ++w) arcs.push_back({u, r + w, 1.0});
  return WeightedDigraph(r + s, std::move(arcs), true);
}

WeightedDigraph path_graph(Index n) {
  if (n < 2) throw ValidationError("path needs n >= 2");
  std::vector<Arc> arcs;
  for (Index i = 0; i + 1 < n; ++i) arcs.push_back({i, i + 1, 1.0});
  return WeightedDigraph(n, std::move(arcs), true);
}

WeightedDigraph cycle_graph(Index n) {
  if (n < 3) throw ValidationError("cycle needs n >= 3");
  std::vector<Arc> arcs;
  for (Index i = 0; i < n; ++i) arcs.push_back({i, (i + 1) % n, 1.0});
  return WeightedDigraph(n, std::move(arcs), true);
}

WeightedDigraph hypercube_graph(int d) {
  if (d < 1 || d > 14) throw ValidationError("hypercube dimension must lie in [1, 14]");
  const Index n = Index{1} << d;
  std::vector<Arc> arcs;
  for (Index v = 0; v < n; ++v) {
    for (int b = 0; b < d; ++b) {
      const Index w = v ^ (Index{1} << b);
      if (v < w) arcs.push_back({v, w, 1.0});
    }
  }
  return WeightedDigraph(n, std::move(arcs), true);
}

WeightedDigraph toric_graph(std::span<const Index> dims) {
  if (dims.empty()) throw ValidationError("toric grid needs at least one dimension");
  Index n = 1;
  for (Index m : dims) {
    if (m < 3) throw ValidationError("toric grid cycle lengths must be >= 3");
    n *= m;
  }
  std::vector<Arc> arcs;
  for (Index v = 0; v < n; ++v) {
    auto coords = unravel(v, dims);
    for (std::size_t t = 0; t < dims.size(); ++t) {
      auto next = coords;
      next[t] = (coords[t] + 1) % dims[t];
      arcs.push_back({v, ravel(next, dims), 1.0});
    }
  }
  return WeightedDigraph(n, std::move(arcs), true);
}

// ---------------------------------------------------------------------------
// Complete graph

OracleReport complete_oracle(Index n) {
  if (n < 2) throw ValidationError("complete oracle needs n >= 2");
  OracleReport r;
  r.family = "complete";
  r.parameters = {n};
  r.graph = complete_graph(n);
  const double nd = static_cast<double>(n);
  Matrix h = Matrix::Constant(n, n, nd - 1.0);
  h.diagonal().setZero();
  Matrix g = Matrix::Constant(n, n, -(nd - 1.0) / (nd * nd));
  g.diagonal().setConstant(std::pow((nd - 1.0) / nd, 2));
  r.hitting = std::move(h);
  r.greens = std::move(g);
  add_value(r, "T_hit", Quantity::THit, 0, 0, (nd - 1.0) * (nd - 1.0) / nd);
  return r;
}

// ---------------------------------------------------------------------------
// Complete bipartite graph and the star

OracleReport bipartite_oracle(Index r_size, Index s_size) {
  if (r_size < 1 || s_size < 1) throw ValidationError("bipartite oracle needs r, s >= 1");
  OracleReport rep;
  rep.family = "bipartite";
  rep.parameters = {r_size, s_size};
  rep.graph = complete_bipartite_graph(r_size, s_size);
  const Index n = r_size + s_size;
  const double r = static_cast<double>(r_size);
  const double s = static_cast<double>(s_size);
  auto in_u = [&](Index v) { return v < r_size; };

  Matrix h(n, n);
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) {
        h(i, j) = 0.0;
        g(i, j) = in_u(i) ? 1.0 - 3.0 / (4.0 * r) : 1.0 - 3.0 / (4.0 * s);
      } else if (in_u(i) && in_u(j)) {
        h(i, j) = 2.0 * r;
        g(i, j) = -3.0 / (4.0 * r);
      } else if (!in_u(i) && !in_u(j)) {
        h(i, j) = 2.0 * s;
        g(i, j) = -3.0 / (4.0 * s);
      } else if (in_u(i)) {
        h(i, j) = 2.0 * s - 1.0;
        g(i, j) = -1.0 / (4.0 * s);
      } else {
        h(i, j) = 2.0 * r - 1.0;
        g(i, j) = -1.0 / (4.0 * r);
      }
    }
  }
  rep.hitting = h;
  rep.greens = g;

  const Index u = 0, w = r_size;
  add_value(rep, "H(u,w)", Quantity::Hitting, u, w, 2.0 * s - 1.0);
  add_value(rep, "H(w,u)", Quantity::Hitting, w, u, 2.0 * r - 1.0);
  if (r_size >= 2) add_value(rep, "H(u,u')", Quantity::Hitting, 0, 1, 2.0 * r);
  if (s_size >= 2) add_value(rep, "H(w,w')", Quantity::Hitting, w, w + 1, 2.0 * s);
  add_value(rep, "H(pi,u)", Quantity::AccessFromStationary, 0, u, 2.0 * r - 1.5);
  add_value(rep, "H(pi,w)", Quantity::AccessFromStationary, 0, w, 2.0 * s - 1.5);
  add_value(rep, "G(u,u)", Quantity::Greens, u, u, 1.0 - 3.0 / (4.0 * r));
  if (r_size >= 2) add_value(rep, "G(u,u')", Quantity::Greens, 0, 1, -3.0 / (4.0 * r));
  add_value(rep, "G(u,w)", Quantity::Greens, u, w, -1.0 / (4.0 * s));
  add_value(rep, "G(w,w)", Quantity::Greens, w, w, 1.0 - 3.0 / (4.0 * s));
  if (s_size >= 2) add_value(rep, "G(w,w')", Quantity::Greens, w, w + 1, -3.0 / (4.0 * s));
  add_value(rep, "G(w,u)", Quantity::Greens, w, u, -1.0 / (4.0 * r));

  if (r_size == 1) {
    // Star K_{1,n-1} with center c = 0 and leaves 1..n-1.
    const double leaves = static_cast<double>(n - 1);
    add_value(rep, "star G(c,c)", Quantity::Greens, 0, 0, 0.25);
    add_value(rep, "star G(c,v)", Quantity::Greens, 0, 1, -1.0 / (4.0 * leaves));
    add_value(rep, "star G(v,v)", Quantity::Greens, 1, 1, 1.0 - 3.0 / (4.0 * leaves));
    add_value(rep, "star G(v,c)", Quantity::Greens, 1, 0, -0.25);
    if (n >= 3) add_value(rep, "star G(v,w)", Quantity::Greens, 1, 2, -3.0 / (4.0 * leaves));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Path

OracleReport path_oracle(Index n) {
  if (n < 2) throw ValidationError("path oracle needs n >= 2");
  OracleReport r;
  r.family = "path";
  r.parameters = {n};
  r.graph = path_graph(n);
  const double nd = static_cast<double>(n);
  const double vol = 2.0 * (nd - 1.0);
  Vector pi = Vector::Constant(n, 2.0 / vol);
  pi(0) = pi(n - 1) = 1.0 / vol;
  const double t_mix = (2.0 * nd * nd - 4.0 * nd + 3.0) / 6.0;

  Matrix g = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      // 1-based labels a = i+1 <= b = j+1: G = pi_b ((a-1)^2 + (n-b)^2 - T_mix).
      const double a = static_cast<double>(i);
      const double b = nd - static_cast<double>(j + 1);
      g(i, j) = pi(j) * (a * a + b * b - t_mix);
    }
  }
  r.greens = pi_scaled_symmetric_fill(std::move(g), pi);
  add_value(r, "T_mix", Quantity::TMix, 0, 0, t_mix);
  for (Index j = 1; j < n; ++j) {
    add_value(r, pair_label("H", 0, j), Quantity::Hitting, 0, j, static_cast<double>(j * j));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Trees

OracleReport tree_oracle(const WeightedDigraph& tree, TreeOracleOptions options) {
  const Index n = tree.size();
  if (!tree.undirected()) throw ValidationError("tree oracle requires an undirected graph");
  Index edges = 0;
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    if (tree.weight(i, i) > 0.0) throw ValidationError("tree oracle: self-loop");
    for (Index j = i + 1; j < n; ++j) {
      if (tree.weight(i, j) > 0.0) {
        ++edges;
        adj[static_cast<std::size_t>(i)].push_back(j);
        adj[static_cast<std::size_t>(j)].push_back(i);
      }
    }
  }
  if (edges != n - 1 || !strongly_connected(tree)) throw ValidationError("input is not a tree");

  OracleReport r;
  r.family = "tree";
  r.parameters = {n};
  r.graph = tree;

  const Distribution pi = stationary_distribution(tree);
  const HittingTimeMatrix h = tree_hitting_times(tree, adj);
  const double tie = tol::time(max_abs(h.matrix()));

  // z maximizes H(i', i); z' is its pessimal vertex.
  std::vector<Index> pessimal(static_cast<std::size_t>(n));
  Index z = 0;
  double best = -1.0;
  for (Index i = 0; i < n; ++i) {
    pessimal[static_cast<std::size_t>(i)] = pessimal_vertex(h, i, tie);
    const double value = h(pessimal[static_cast<std::size_t>(i)], i);
    if (value > best + tie) {
      best = value;
      z = i;
    }
  }
  const Index zp = pessimal[static_cast<std::size_t>(z)];
  // The formula's constant is H(z,pi) = H(z',z) - H(pi,z). It equals T_mix only
  // when z is mixing pessimal, which maximizing H(i',i) does not guarantee.
  const double from_z = h(zp, z) - access_to_vertex(h, pi, z);
  double t_mix = 0.0;
  for (Index i = 0; i < n; ++i) {
    t_mix = std::max(t_mix, h(pessimal[static_cast<std::size_t>(i)], i) - access_to_vertex(h, pi, i));
  }

  // Root at z; the z-z' path follows parent pointers from z'.
  std::vector<Index> parent(static_cast<std::size_t>(n), -1), depth(static_cast<std::size_t>(n), 0);
  {
    std::vector<Index> stack{z};
    parent[static_cast<std::size_t>(z)] = z;
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (Index v : adj[static_cast<std::size_t>(u)]) {
        if (parent[static_cast<std::size_t>(v)] < 0) {
          parent[static_cast<std::size_t>(v)] = u;
          depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
          stack.push_back(v);
        }
      }
    }
  }
  std::vector<Index> position(static_cast<std::size_t>(n), -1);
  for (Index v = zp;; v = parent[static_cast<std::size_t>(v)]) {
    position[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(v)];
    if (v == z) break;
  }
  auto up = [&](Index v) { return parent[static_cast<std::size_t>(v)]; };
  auto projection = [&](Index v) {
    while (position[static_cast<std::size_t>(v)] < 0) v = up(v);
    return v;
  };
  // Where the branches of i and j (both hanging off the same path vertex) merge.
  auto merge_point = [&](Index i, Index j) {
    while (depth[static_cast<std::size_t>(i)] > depth[static_cast<std::size_t>(j)]) i = up(i);
    while (depth[static_cast<std::size_t>(j)] > depth[static_cast<std::size_t>(i)]) j = up(j);
    while (i != j) {
      i = up(i);
      j = up(j);
    }
    return i;
  };

  Matrix g(n, n);
  Index corrected = 0;
  for (Index i = 0; i < n; ++i) {
    const Index is = projection(i);
    for (Index j = 0; j < n; ++j) {
      const Index js = projection(j);
      Index near = z, far = zp;
      if (position[static_cast<std::size_t>(is)] > position[static_cast<std::size_t>(js)]) std::swap(near, far);
      double scaled = (h(far, js) - h(j, js)) + (h(near, is) - h(i, is)) - from_z;
      if (options.branch_correction && is == js) {
        const Index m = merge_point(i, j);
        if (m != is) {
          scaled += h(m, is) + h(is, m);
          ++corrected;
        }
      }
      g(i, j) = pi(j) * scaled;
    }
  }
  r.greens = std::move(g);
  r.hitting = h.matrix();
  add_value(r, "T_mix", Quantity::TMix, 0, 0, t_mix);
  r.diagnostics = {{"z", static_cast<double>(z)},
                   {"z'", static_cast<double>(zp)},
                   {"path_length", static_cast<double>(position[static_cast<std::size_t>(zp)])},
                   {"corrected_pairs", static_cast<double>(corrected)},
                   {"H(z,pi)", from_z}};
  r.identities = {{"z is mixing pessimal", from_z >= t_mix - tie}};
  return r;
}

// ---------------------------------------------------------------------------
// Cycle

OracleReport cycle_oracle(Index n) {
  if (n < 3) throw ValidationError("cycle oracle needs n >= 3");
  OracleReport r;
  r.family = "cycle";
  r.parameters = {n};
  r.graph = cycle_graph(n);
  const double nd = static_cast<double>(n);
  const double from_pi = (nd + 1.0) * (nd - 1.0) / 6.0;

  Vector poly(n), trig(n);
  for (Index j = 0; j < n; ++j) {
    const double jd = static_cast<double>(j);
    poly(j) = (from_pi - jd * (nd - jd)) / nd;
    double sum = 0.0;
    for (Index k = 1; k < n; ++k) {
      const double kd = static_cast<double>(k);
      sum += std::cos(2.0 * std::numbers::pi * kd * jd / nd) / (1.0 - std::cos(2.0 * std::numbers::pi * kd / nd));
    }
    trig(j) = sum / nd;
  }
  Matrix h(n, n), g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Index d = ((j - i) % n + n) % n;
      h(i, j) = static_cast<double>(d * (n - d));
      g(i, j) = poly(d);
    }
  }
  r.hitting = std::move(h);
  r.greens = std::move(g);
  add_value(r, "H(pi,0)", Quantity::AccessFromStationary, 0, 0, from_pi);
  add_value(r, "T_hit", Quantity::THit, 0, 0, from_pi);
  for (Index j = 0; j < n; ++j) {
    add_value(r, pair_label("G_trig", 0, j), Quantity::Greens, 0, j, trig(j));
  }
  r.diagnostics = {{"max_poly_trig_gap", max_abs(Vector(poly - trig))}};
  return r;
}

// ---------------------------------------------------------------------------
// Hypercube

OracleReport hypercube_oracle(int d) {
  if (d < 1 || d > 14) throw ValidationError("hypercube dimension must lie in [1, 14]");
  OracleReport r;
  r.family = "hypercube";
  r.parameters = {d};
  if (d <= 12) r.graph = hypercube_graph(d);

  const Rational dq(d);
  // Level times T_k: expected time to move from level k to level k-1.
  std::vector<Rational> level(static_cast<std::size_t>(d) + 2, Rational(0));
  for (int k = 1; k <= d; ++k) {
    BigInt num = 0;
    for (int j = k; j <= d; ++j) num += binomial(d, j);
    level[static_cast<std::size_t>(k)] = Rational(num, binomial(d - 1, k - 1));
  }
  bool recurrence = true;
  for (int k = 1; k <= d; ++k) {
    const Rational lhs = level[static_cast<std::size_t>(k)];
    const Rational rhs = 1 + Rational(d - k, d) * (level[static_cast<std::size_t>(k) + 1] + lhs);
    recurrence = recurrence && lhs == rhs;
  }

  // H(v, 0) for v on level l, two ways.
  std::vector<Rational> to_origin(static_cast<std::size_t>(d) + 1, Rational(0));
  bool level_forms = true;
  for (int l = 1; l <= d; ++l) {
    to_origin[static_cast<std::size_t>(l)] = to_origin[static_cast<std::size_t>(l) - 1] + level[static_cast<std::size_t>(l)];
    Rational alt = 0;
    for (int k = 1; k <= l; ++k) {
      BigInt num = 0;
      for (int j = k; j <= d; ++j) num += binomial(d, j);
      alt += Rational(num, binomial(d, k) * k);
    }
    level_forms = level_forms && to_origin[static_cast<std::size_t>(l)] == dq * alt;
  }

  Rational t_hit = 0, harmonic = 0, powers = 0, shifted = 0, inverse_binomials = 0;
  for (int k = 1; k <= d; ++k) {
    t_hit += Rational(binomial(d, k), k);
    harmonic += Rational(1, k);
    powers += Rational(BigInt(1) << k, k);
    shifted += Rational(1 + binomial(d, k), k);
  }
  t_hit *= dq / 2;
  const Rational t_mix = harmonic * dq / 2;
  for (int k = 0; k <= d - 1; ++k) inverse_binomials += Rational(1, binomial(d - 1, k));
  const Rational antipode = Rational(BigInt(1) << (d - 1)) * inverse_binomials;

  r.identities = {
      {"level recurrence", recurrence},
      {"level time forms agree", level_forms},
      {"H(1,0) = (d/2) sum 2^k/k", antipode == dq / 2 * powers},
      {"H(1,0) = (d/2) sum (1 + C(d,k))/k", antipode == dq / 2 * shifted},
      {"H(1,0) = sum of level times", antipode == to_origin[static_cast<std::size_t>(d)]},
      {"T_mix = H(1,0) - T_hit", t_mix == antipode - t_hit},
  };

  const Index n = Index{1} << d;
  const Index all_ones = n - 1;
  add_value(r, "T_hit", Quantity::THit, 0, 0, to_double(t_hit));
  add_value(r, "H(pi,0)", Quantity::AccessFromStationary, 0, 0, to_double(t_hit));
  add_value(r, "T_mix", Quantity::TMix, 0, 0, to_double(t_mix));
  add_value(r, "T_reset", Quantity::TReset, 0, 0, to_double(t_mix));
  add_value(r, "H(1,0)", Quantity::Hitting, all_ones, 0, to_double(antipode));
  add_value(r, "G(1,0)", Quantity::Greens, all_ones, 0, to_double((t_hit - antipode) / Rational(BigInt(n))));
  for (int l = 1; l <= d; ++l) {
    const Index v = (Index{1} << l) - 1;
    add_value(r, "H(level " + std::to_string(l) + ",0)", Quantity::Hitting, v, 0,
              to_double(to_origin[static_cast<std::size_t>(l)]));
    add_value(r, "G(0,level " + std::to_string(l) + ")", Quantity::Greens, 0, v,
              to_double((t_hit - to_origin[static_cast<std::size_t>(l)]) / Rational(BigInt(n))));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Toric grids

OracleReport toric_oracle(std::span<const Index> dims) {
  if (dims.empty()) throw ValidationError("toric oracle needs at least one dimension");
  Index n = 1;
  for (Index m : dims) {
    if (m < 3) throw ValidationError("toric oracle cycle lengths must be >= 3");
    n *= m;
    if (n > 4096) throw ValidationError("toric oracle supports at most 4096 vertices");
  }
  OracleReport r;
  r.family = "toric";
  r.parameters.assign(dims.begin(), dims.end());
  r.graph = toric_graph(dims);
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(dims.size());

  // Per-dimension phase tables: angle(t, r_t * j_t) = 2 pi r_t j_t / n_t.
  std::vector<std::vector<double>> cosines(dims.size());
  for (std::size_t t = 0; t < dims.size(); ++t) {
    const Index m = dims[t];
    cosines[t].resize(static_cast<std::size_t>(m));
    for (Index k = 0; k < m; ++k) {
      cosines[t][static_cast<std::size_t>(k)] = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
    }
  }
  std::vector<std::vector<Index>> modes(static_cast<std::size_t>(n));
  Vector lambda(n);
  for (Index v = 0; v < n; ++v) {
    modes[static_cast<std::size_t>(v)] = unravel(v, dims);
    double sum = 0.0;
    for (std::size_t t = 0; t < dims.size(); ++t) sum += cosines[t][static_cast<std::size_t>(modes[static_cast<std::size_t>(v)][t])];
    lambda(v) = 1.0 - sum / dd;
  }

  // G(0, j) = (1/n) sum_{r != 0} cos(2 pi sum_t r_t j_t / n_t) / lambda_r.
  Vector row(n);
  for (Index j = 0; j < n; ++j) {
    const auto& jc = modes[static_cast<std::size_t>(j)];
    double sum = 0.0;
    for (Index v = 1; v < n; ++v) {
      const auto& rc = modes[static_cast<std::size_t>(v)];
      double phase = 0.0;
      for (std::size_t t = 0; t < dims.size(); ++t) {
        phase += static_cast<double>((rc[t] * jc[t]) % dims[t]) / static_cast<double>(dims[t]);
      }
      sum += std::cos(2.0 * std::numbers::pi * phase) / lambda(v);
    }
    row(j) = sum / nd;
  }
  const double t_hit = lambda.tail(n - 1).cwiseInverse().sum();

  // The 0-pessimal vertex minimizes G(0, .), since H(j,0) = n (G(0,0) - G(0,j)).
  const double lowest = row.minCoeff();
  const double tie = 1e-9 * std::max(1.0, std::abs(lowest));
  Index pessimal = 0;
  while (row(pessimal) > lowest + tie) ++pessimal;
  const double t_mix = -nd * row(pessimal);

  std::vector<Index> half(dims.size());
  for (std::size_t t = 0; t < dims.size(); ++t) half[t] = (dims[t] + 1) / 2;
  const bool ceil_half_pessimal = row(ravel(half, dims)) <= lowest + tie;

  Matrix g(n, n), h(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& ic = modes[static_cast<std::size_t>(i)];
    for (Index j = 0; j < n; ++j) {
      const auto& jc = modes[static_cast<std::size_t>(j)];
      std::vector<Index> diff(dims.size());
      for (std::size_t t = 0; t < dims.size(); ++t) diff[t] = ((jc[t] - ic[t]) % dims[t] + dims[t]) % dims[t];
      const double value = row(ravel(diff, dims));
      g(i, j) = value;
      h(i, j) = nd * (row(0) - value);
    }
  }
  r.greens = std::move(g);
  r.hitting = std::move(h);

  add_value(r, "T_hit", Quantity::THit, 0, 0, t_hit);
  add_value(r, "H(pi,0)", Quantity::AccessFromStationary, 0, 0, t_hit);
  add_value(r, "T_mix", Quantity::TMix, 0, 0, t_mix);
  add_value(r, "T_reset", Quantity::TReset, 0, 0, t_mix);
  add_value(r, "H(0,pi)", Quantity::MixingTime, 0, 0, t_mix);
  r.diagnostics = {{"pessimal_vertex", static_cast<double>(pessimal)},
                   {"lambda_1", [&] {
                      Vector sorted = lambda;
                      std::sort(sorted.begin(), sorted.end());
                      return sorted(1);
                    }()}};
  r.identities = {{"ceil(n_t/2) vertex is 0-pessimal", ceil_half_pessimal}};
  return r;
}

// ---------------------------------------------------------------------------

double evaluate(const ChainAnalysis& a, const Probe& probe) {
  switch (probe.quantity) {
    case Quantity::Hitting:
      return a.hitting(probe.i, probe.j);
    case Quantity::Greens:
      return a.greens(probe.i, probe.j);
    case Quantity::AccessFromStationary:
      return access_to_vertex(a.hitting, a.stationary, probe.j);
    case Quantity::MixingTime:
      return a.mixing.mixing_times(probe.i);
    case Quantity::TMix:
      return a.mixing.t_mix;
    case Quantity::TReset:
      return a.mixing.t_reset;
    case Quantity::THit:
      return a.mixing.t_hit;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<OracleCheck> compare_with_pipeline(const OracleReport& report, const ChainAnalysis& analysis,
                                               double greens_tolerance) {
  std::vector<OracleCheck> out;
  auto matrix_check = [&](const char* label, const Matrix& closed, const Matrix& computed, bool time_valued) {
    if (closed.rows() != computed.rows() || closed.cols() != computed.cols()) {
      throw ValidationError(std::string(label) + ": oracle and pipeline sizes differ");
    }
    OracleCheck c;
    c.label = label;
    c.tolerance = time_valued ? tol::time(max_abs(closed)) : greens_tolerance;
    Index wi = 0, wj = 0;
    c.error = (closed - computed).cwiseAbs().maxCoeff(&wi, &wj);
    c.closed_form = closed(wi, wj);
    c.pipeline = computed(wi, wj);
    out.push_back(std::move(c));
  };
  if (report.hitting) matrix_check("H matrix", *report.hitting, analysis.hitting.matrix(), true);
  if (report.greens) matrix_check("G matrix", *report.greens, analysis.greens.matrix(), false);
  for (const auto& v : report.values) {
    OracleCheck c;
    c.label = v.label;
    c.closed_form = v.value;
    c.pipeline = evaluate(analysis, v.probe);
    c.error = std::abs(c.closed_form - c.pipeline);
    c.tolerance = v.probe.quantity == Quantity::Greens ? greens_tolerance : tol::time(std::abs(v.value));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace greenwalk
