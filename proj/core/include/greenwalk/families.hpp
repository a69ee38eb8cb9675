#pragma once

#include <greenwalk/analysis.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace greenwalk {

// Unit-weight undirected realizations of the closed-form families.
WeightedDigraph complete_graph(Index n);
/// Parts U = {0..r-1}, W = {r..r+s-1}.
WeightedDigraph complete_bipartite_graph(Index r, Index s);
WeightedDigraph path_graph(Index n);
WeightedDigraph cycle_graph(Index n);
/// Vertex v is the bit vector of its index.
WeightedDigraph hypercube_graph(int d);
/// Cartesian product of cycles; row-major coordinates (last coordinate fastest).
WeightedDigraph toric_graph(std::span<const Index> dims);

enum class Quantity {
  Hitting,               // H(i,j)
  Greens,                // G(i,j)
  AccessFromStationary,  // H(pi,j)
  MixingTime,            // H(i,pi)
  TMix,
  TReset,
  THit,
};

struct Probe {
  Quantity quantity = Quantity::THit;
  Index i = 0;
  Index j = 0;
};

struct OracleValue {
  std::string label;
  Probe probe;
  double value = 0.0;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct NamedFlag {
  std::string name;
  bool holds = false;
};

/// Closed-form values for one family instance.
struct OracleReport {
  std::string family;
  std::vector<long long> parameters;
  /// Absent only for hypercubes too large to hold densely.
  std::optional<WeightedDigraph> graph;
  std::optional<Matrix> hitting;
  std::optional<Matrix> greens;
  std::vector<OracleValue> values;
  std::vector<NamedValue> diagnostics;
  /// Identities evaluated exactly (rational arithmetic) or structurally.
  std::vector<NamedFlag> identities;
};

OracleReport complete_oracle(Index n);
OracleReport bipartite_oracle(Index r, Index s);
OracleReport path_oracle(Index n);

struct TreeOracleOptions {
  /// Add the commute-time term for pairs whose branches merge before reaching
  /// the z-z' path. Without it the formula only holds when the i-j path runs
  /// through both projections.
  bool branch_correction = true;
};
OracleReport tree_oracle(const WeightedDigraph& tree, TreeOracleOptions options = {});

OracleReport cycle_oracle(Index n);
/// 1 <= d <= 14; the graph is realized for d <= 12.
OracleReport hypercube_oracle(int d);
/// Each length >= 3, product <= 4096.
OracleReport toric_oracle(std::span<const Index> dims);

double evaluate(const ChainAnalysis& analysis, const Probe& probe);

struct OracleCheck {
  std::string label;
  double closed_form = 0.0;
  double pipeline = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return error <= tolerance; }
};

/// One check per scalar value, plus one per closed-form matrix reporting the
/// worst entry. Time-valued quantities use 1e-8 * max(1, |value|), Green's
/// entries an absolute `greens_tolerance`.
std::vector<OracleCheck> compare_with_pipeline(const OracleReport& report, const ChainAnalysis& analysis,
                                               double greens_tolerance = 1e-8);

}  // namespace greenwalk
