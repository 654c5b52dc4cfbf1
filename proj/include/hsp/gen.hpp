#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "hsp/graph.hpp"

namespace hsp::gen {

/// Weighted preferential attachment growth (Barrat-Barthelemy-Vespignani).
///
/// Starts from an (m+1)-clique of weight-w0 edges. Each new node links to m
/// distinct existing nodes picked with probability proportional to strength.
/// Before the new link is added, every existing edge (i, j) of a target i is
/// reinforced by delta * w_ij / s_i, so s_i grows by w0 + delta in total.
WeightedGraph bbv(std::size_t n, std::size_t m, double w0, double delta, std::uint64_t seed);

/// Complete graph with Normal(mu, sigma) weights; negative draws are redrawn.
WeightedGraph mdp_gaussian(std::size_t n, double mu, double sigma, std::uint64_t seed);

struct UniformWeights {
  double a = 1.0;
  double b = 1.0;
};
struct ParetoWeights {
  double alpha = 2.0;
  double x_min = 1.0;
};
using WeightDist = std::variant<UniformWeights, ParetoWeights>;

/// G(n, p) with i.i.d. weights.
WeightedGraph gnp_weighted(std::size_t n, double p_edge, const WeightDist& weights,
                           std::uint64_t seed);

enum class Family { bbv, mdp_gaussian, gnp_weighted };

Family parse_family(const std::string& s);
std::string to_string(Family f);

struct GenSpec {
  Family family = Family::bbv;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  // bbv
  std::size_t m = 2;
  double w0 = 1.0;
  double delta = 1.0;
  // mdp_gaussian
  double mu = 50.0;
  double sigma = 10.0;
  // gnp_weighted
  double p_edge = 0.1;
  WeightDist weights = UniformWeights{};
};

WeightedGraph generate(const GenSpec& spec);

}  // namespace hsp::gen
