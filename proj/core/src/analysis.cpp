#include <greenwalk/analysis.hpp>

namespace greenwalk {

ChainAnalysis analyze(WeightedDigraph graph, double laziness) {
  TransitionMatrix p = transition_matrix(graph, laziness);
  Distribution pi = graph.undirected() ? stationary_distribution(graph) : stationary_distribution(p);
  HittingTimeMatrix h = hitting_times(p, pi);
  GreensMatrix g = greens_function(h, pi);
  MixingReport mix = mixing_report(h, g, pi, graph.undirected());
  return ChainAnalysis{std::move(graph), std::move(p), std::move(pi), std::move(h), std::move(g),
                       std::move(mix)};
}

}  // namespace greenwalk
