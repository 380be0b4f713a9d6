// system.cpp — system Hamiltonians, Bohr decompositions, frequency grouping.
#include "rcme/system.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rcme::generators {

SystemModel make_system(Matrix hamiltonian, std::vector<Matrix> couplings) {
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() == 0) {
    throw std::invalid_argument("make_system: Hamiltonian must be square and non-empty");
  }
  const double defect = (hamiltonian - hamiltonian.adjoint()).norm();
  if (defect > 1e-12 * std::max(1.0, hamiltonian.norm())) {
    throw std::invalid_argument("make_system: Hamiltonian is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
  if (couplings.empty()) {
    throw std::invalid_argument("make_system: need at least one coupling operator");
  }
  bool hermitian = true;
  for (const auto& a : couplings) {
    if (a.rows() != hamiltonian.rows() || a.cols() != hamiltonian.cols()) {
      throw std::invalid_argument("make_system: coupling dimension does not match Hamiltonian");
    }
    hermitian = hermitian && (a - a.adjoint()).norm() <= 1e-12 * std::max(1.0, a.norm());
  }
  return SystemModel{std::move(hamiltonian), std::move(couplings), hermitian};
}

BohrDecomposition bohr_decompose(const SystemModel& system, double tol_freq) {
  const auto eig = linalg::hermitian_eig(system.hamiltonian);
  const auto d = system.hamiltonian.rows();
  if (tol_freq < 0.0) {
    tol_freq = 1e-9 * std::max(1.0, system.hamiltonian.norm());
  }

  // Cluster eigenvalues into energy levels and build their projectors.
  std::vector<double> levels;
  std::vector<Matrix> projectors;
  for (Eigen::Index i = 0; i < d; ++i) {
    const Matrix rank1 = eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    if (!levels.empty() && eig.values(i) - levels.back() <= tol_freq) {
      projectors.back() += rank1;
    } else {
      levels.push_back(eig.values(i));
      projectors.push_back(rank1);
    }
  }

  const auto n_channels = system.couplings.size();
  const auto n_levels = levels.size();

  // Collect blocks P(e) A P(e') keyed by the Bohr frequency e' - e; the level
  // clustering already guarantees distinct keys are separated by tol_freq.
  struct Entry {
    double omega;
    std::size_t lo, hi;  // level indices e, e'
  };
  std::vector<Entry> entries;
  for (std::size_t a = 0; a < n_levels; ++a) {
    for (std::size_t b = 0; b < n_levels; ++b) {
      entries.push_back({levels[b] - levels[a], a, b});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.omega < y.omega; });

  BohrDecomposition dec;
  dec.energies = eig.values;
  dec.basis = eig.vectors;

  std::vector<Matrix> current;
  double omega_sum = 0.0;
  std::size_t omega_count = 0;
  auto flush = [&]() {
    if (omega_count == 0) {
      return;
    }
    double norm_total = 0.0;
    for (const auto& block : current) {
      norm_total += block.norm();
    }
    if (norm_total > 1e-13 * static_cast<double>(d)) {
      dec.frequencies.push_back(omega_sum / static_cast<double>(omega_count));
      dec.jump_ops.push_back(current);
    }
    for (auto& block : current) {
      block.setZero();
    }
    omega_sum = 0.0;
    omega_count = 0;
  };

  current.assign(n_channels, Matrix::Zero(d, d));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (omega_count > 0 && entries[k].omega - omega_sum / static_cast<double>(omega_count) >
                               tol_freq) {
      flush();
    }
    for (std::size_t i = 0; i < n_channels; ++i) {
      current[i] += projectors[entries[k].lo] * system.couplings[i] * projectors[entries[k].hi];
    }
    omega_sum += entries[k].omega;
    ++omega_count;
  }
  flush();
  return dec;
}

FrequencyGrouping group_frequencies(const std::vector<double>& frequencies,
                                    double gap_threshold) {
  if (frequencies.empty()) {
    throw std::invalid_argument("group_frequencies: need at least one frequency");
  }
  if (!std::is_sorted(frequencies.begin(), frequencies.end())) {
    throw std::invalid_argument("group_frequencies: frequencies must be ascending");
  }

  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < frequencies.size(); ++i) {
    gaps.push_back(frequencies[i + 1] - frequencies[i]);
  }

  if (gap_threshold <= 0.0) {
    if (gaps.empty()) {
      gap_threshold = 1.0;
    } else {
      const double min_gap = *std::min_element(gaps.begin(), gaps.end());
      const double max_gap = *std::max_element(gaps.begin(), gaps.end());
      if (min_gap > 0.0 && max_gap / min_gap >= 10.0) {
        gap_threshold = std::sqrt(min_gap * max_gap);
      } else {
        gap_threshold = 0.5 * std::max(min_gap, 1e-300);
      }
    }
  }

  FrequencyGrouping grouping;
  grouping.groups.push_back({0});
  for (std::size_t i = 1; i < frequencies.size(); ++i) {
    if (frequencies[i] - frequencies[i - 1] > gap_threshold) {
      grouping.groups.push_back({});
    }
    grouping.groups.back().push_back(i);
  }

  for (const auto& group : grouping.groups) {
    double sum = 0.0;
    for (std::size_t idx : group) {
      sum += frequencies[idx];
    }
    const double mean = sum / static_cast<double>(group.size());
    grouping.means.push_back(mean);
    grouping.delta_omega = std::max(
        grouping.delta_omega, frequencies[group.back()] - frequencies[group.front()]);
  }

  grouping.delta_Omega = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g + 1 < grouping.means.size(); ++g) {
    grouping.delta_Omega = std::min(grouping.delta_Omega, grouping.means[g + 1] - grouping.means[g]);
  }

  if (grouping.means.size() > 1 && grouping.delta_omega > grouping.delta_Omega) {
    throw std::invalid_argument(
        "group_frequencies: intra-cluster spread exceeds the cluster separation; "
        "no two-scale structure at this threshold");
  }
  if (grouping.means.size() > 1 && grouping.delta_omega > 0.1 * grouping.delta_Omega) {
    grouping.well_separated = false;
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << "cluster spread " << grouping.delta_omega
       << " is not small against the separation " << grouping.delta_Omega
       << "; the grouped description may be inaccurate";
    grouping.diagnostic = os.str();
  }
  return grouping;
}

std::vector<std::vector<Matrix>> local_jump_ops(const BohrDecomposition& dec,
                                                const FrequencyGrouping& grouping) {
  if (dec.jump_ops.empty()) {
    return {};
  }
  std::vector<std::vector<Matrix>> grouped;
  grouped.reserve(grouping.groups.size());
  for (const auto& group : grouping.groups) {
    std::vector<Matrix> ops;
    for (std::size_t channel = 0; channel < dec.jump_ops.front().size(); ++channel) {
      Matrix sum = dec.jump_ops[group.front()][channel];
      for (std::size_t k = 1; k < group.size(); ++k) {
        sum += dec.jump_ops[group[k]][channel];
      }
      ops.push_back(std::move(sum));
    }
    grouped.push_back(std::move(ops));
  }
  return grouped;
}

}  // namespace rcme::generators
