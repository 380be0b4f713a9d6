// analysis.cpp — trace-distance diagnostics and observable extraction.
#include "rcme/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace rcme::models {

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  const Matrix diff = a - b;
  const auto eig = linalg::hermitian_eig(0.5 * (diff + diff.adjoint()), 1e-8);
  return 0.5 * eig.values.cwiseAbs().sum();
}

WitnessReport nonmarkovianity_witness(const TimeSeries& a, const TimeSeries& b) {
  validate(a);
  validate(b);
  if (a.times.size() != b.times.size() || a.times.empty()) {
    throw std::invalid_argument("nonmarkovianity_witness: series must share a non-empty grid");
  }
  if (a.picture != b.picture) {
    throw std::invalid_argument("nonmarkovianity_witness: series are in different pictures");
  }
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, std::abs(a.times[i]))) {
      throw std::invalid_argument("nonmarkovianity_witness: time grids differ");
    }
  }

  WitnessReport report;
  report.distances.reserve(a.times.size());
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    report.distances.push_back(trace_distance(a.states[i], b.states[i]));
  }

  bool in_run = false;
  IncreaseInterval run;
  for (std::size_t i = 0; i + 1 < report.distances.size(); ++i) {
    const double step = report.distances[i + 1] - report.distances[i];
    if (step > 0.0) {
      report.total_increase += step;
      if (!in_run) {
        in_run = true;
        run = IncreaseInterval{a.times[i], a.times[i + 1], step};
      } else {
        run.t_end = a.times[i + 1];
        run.increase += step;
      }
    } else if (in_run) {
      report.increase_intervals.push_back(run);
      in_run = false;
    }
  }
  if (in_run) {
    report.increase_intervals.push_back(run);
  }
  report.monotone = report.total_increase <= 1e-9;
  return report;
}

std::vector<std::array<double, 3>> observable_track(const TimeSeries& series,
                                                    const ObservableSelector& selector) {
  std::vector<std::array<double, 3>> track;
  track.reserve(series.states.size());
  for (const auto& state : series.states) {
    if (selector.row < 0 || selector.col < 0 || selector.row >= state.rows() ||
        selector.col >= state.cols()) {
      throw std::invalid_argument("observable_track: selector out of range");
    }
    const auto value = state(selector.row, selector.col);
    track.push_back({value.real(), value.imag(), std::abs(value)});
  }
  return track;
}

}  // namespace rcme::models
