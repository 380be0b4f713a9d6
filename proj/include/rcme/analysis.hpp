// analysis.hpp — trace-distance diagnostics and observable extraction.
#pragma once

#include "rcme/models.hpp"

#include <array>
#include <vector>

namespace rcme::models {

// (1/2) sum of the absolute eigenvalues of a - b.
double trace_distance(const Matrix& a, const Matrix& b);

struct IncreaseInterval {
  double t_start{0.0};
  double t_end{0.0};
  double increase{0.0};
};

// Trace-distance revival witness over a pair of evolutions on the same grid:
// total_increase sums every positive step of D(t); a monotone (Markovian-
// compatible) pair has total_increase <= 1e-9.
struct WitnessReport {
  std::vector<double> distances;
  double total_increase{0.0};
  bool monotone{true};
  std::vector<IncreaseInterval> increase_intervals;
};

WitnessReport nonmarkovianity_witness(const TimeSeries& a, const TimeSeries& b);

struct ObservableSelector {
  Eigen::Index row{0};
  Eigen::Index col{0};
};

// Per-time (re, im, abs) of a matrix element along a series.
std::vector<std::array<double, 3>> observable_track(const TimeSeries& series,
                                                    const ObservableSelector& selector);

}  // namespace rcme::models
