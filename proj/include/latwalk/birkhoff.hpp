#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latwalk/tseries.hpp"

namespace lw {

using SeriesMatrix = std::vector<std::vector<TSeries>>;
using ConstMatrix = std::vector<std::vector<GQ>>;

struct BirkhoffResult {
  SeriesMatrix Lambda;    // nonpositive powers of x
  SeriesMatrix Z;         // nonnegative powers of x
  SeriesMatrix residual;  // [x^{<-m}](Lambda Theta)
  int m = 0;
  int iterations = 0;
  std::vector<int> valuations;  // residual t-valuation (in units of t) after each step
  int residual_valuation = 0;
  TSeries detZ0;  // det Z at x = 0
  bool detZ0_unit = false;
  bool ok = false;
  std::string json() const;
};

// Lambda(1/x) Theta(x) = x^{-m} Z(x) by the fixed-point iteration
//   Gamma = [x^>](Psi Theta^{-1}),  Psi = T x^{-m} + [x^{<-m}](Gamma Theta),
//   Lambda = [x^<=](Psi Theta^{-1}),  Z = x^m [x^{>=-m}](Lambda Theta).
// Stops once the residual has t-valuation >= iters. T defaults to the identity.
// Throws MathError when Theta has no series inverse, det T = 0, or the residual stalls.
BirkhoffResult birkhoff_factor(const SeriesMatrix& Theta, int m, int iters, std::optional<ConstMatrix> T = std::nullopt);

// helpers shared with tests
SeriesMatrix series_mat_mul(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix series_mat_inverse(const SeriesMatrix& a);
TSeries series_mat_det(const SeriesMatrix& a);

}  // namespace lw
