#pragma once

#include <greenwalk/greens.hpp>

namespace greenwalk {

/// Everything the hitting-time route derives from one graph.
struct ChainAnalysis {
  WeightedDigraph graph;
  TransitionMatrix transition;
  Distribution stationary;
  HittingTimeMatrix hitting;
  GreensMatrix greens;
  MixingReport mixing;
};

/// graph -> P (with laziness) -> pi -> Z -> H -> G -> mixing report. Undirected
/// graphs get the reversible mixing cross-checks.
ChainAnalysis analyze(WeightedDigraph graph, double laziness = 0.0);

}  // namespace greenwalk
