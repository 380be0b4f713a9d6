// quadrature.cpp — adaptive panel integration with a Gauss-Kronrod 7-15 rule.
#include "rcme/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace rcme::quad {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half) with the embedded
// 7-point Gauss rule at the odd indices.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a{0.0};
  double b{0.0};
  double err{0.0};
};

// Evaluates the GK 7-15 rule on [a, b]; accumulates the Kronrod value into
// `into` and returns the max-norm error estimate against the Gauss rule.
double gk15(const VectorFn& f, int n, double a, double b, Eigen::VectorXd& into,
            Eigen::VectorXd& scratch, Eigen::VectorXd& kronrod, Eigen::VectorXd& gauss) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  kronrod.setZero(n);
  gauss.setZero(n);
  for (int j = 0; j < 8; ++j) {
    const double off = half * kXgk[j];
    const int reps = j == 7 ? 1 : 2;
    for (int r = 0; r < reps; ++r) {
      const double x = r == 0 ? mid - off : mid + off;
      f(x, scratch);
      kronrod += kWgk[j] * scratch;
      if (j % 2 == 1) {
        gauss += kWg[j / 2] * scratch;
      }
    }
  }
  kronrod *= half;
  gauss *= half;
  into += kronrod;
  return (kronrod - gauss).cwiseAbs().maxCoeff();
}

}  // namespace

void validate(const QuadratureConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || cfg.rel_tol > 1e-2) {
    throw std::invalid_argument("quadrature: rel_tol must be in (0, 1e-2]");
  }
  if (!(cfg.abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature: abs_tol must be > 0");
  }
  if (cfg.max_subdivisions <= 0) {
    throw std::invalid_argument("quadrature: max_subdivisions must be > 0");
  }
  if (!(cfg.tail_epsilon > 0.0)) {
    throw std::invalid_argument("quadrature: tail_epsilon must be > 0");
  }
}

IntegralResult integrate(const VectorFn& f, int n_components, const std::vector<double>& edges,
                         const QuadratureConfig& cfg) {
  validate(cfg);
  if (n_components <= 0) {
    throw std::invalid_argument("integrate: n_components must be > 0");
  }
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end())) {
    throw std::invalid_argument("integrate: need at least two ascending panel edges");
  }

  IntegralResult result;
  result.value = Eigen::VectorXd::Zero(n_components);

  Eigen::VectorXd scratch(n_components), kronrod(n_components), gauss(n_components);
  std::vector<Panel> panels;
  panels.reserve(edges.size() - 1 + static_cast<std::size_t>(cfg.max_subdivisions));

  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i] == edges[i + 1]) {
      continue;
    }
    Panel p{edges[i], edges[i + 1], 0.0};
    p.err = gk15(f, n_components, p.a, p.b, result.value, scratch, kronrod, gauss);
    total_err += p.err;
    result.evaluations += 15;
    panels.push_back(p);
  }

  using Entry = std::pair<double, std::size_t>;  // (error at push time, panel index)
  std::priority_queue<Entry> queue;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    queue.push({panels[i].err, i});
  }

  auto tolerance = [&]() {
    return std::max(cfg.abs_tol, cfg.rel_tol * result.value.cwiseAbs().maxCoeff());
  };

  int splits = 0;
  while (total_err > tolerance() && splits < cfg.max_subdivisions && !queue.empty()) {
    const auto [queued_err, idx] = queue.top();
    queue.pop();
    const Panel parent = panels[idx];
    if (parent.err != queued_err) {
      continue;  // stale entry, the panel was already replaced
    }
    if (parent.err == 0.0) {
      break;
    }
    // Remove the parent contribution, then re-add both halves.
    Eigen::VectorXd parent_value = Eigen::VectorXd::Zero(n_components);
    gk15(f, n_components, parent.a, parent.b, parent_value, scratch, kronrod, gauss);
    result.value -= parent_value;
    total_err -= parent.err;

    const double mid = 0.5 * (parent.a + parent.b);
    Panel left{parent.a, mid, 0.0};
    Panel right{mid, parent.b, 0.0};
    left.err = gk15(f, n_components, left.a, left.b, result.value, scratch, kronrod, gauss);
    right.err = gk15(f, n_components, right.a, right.b, result.value, scratch, kronrod, gauss);
    result.evaluations += 45;
    total_err += left.err + right.err;

    panels[idx] = left;
    queue.push({left.err, idx});
    panels.push_back(right);
    queue.push({right.err, panels.size() - 1});
    ++splits;
  }

  result.error = total_err;
  result.converged = total_err <= tolerance();
  result.panels = static_cast<long>(panels.size());
  if (!panels.empty()) {
    const auto worst =
        std::max_element(panels.begin(), panels.end(),
                         [](const Panel& x, const Panel& y) { return x.err < y.err; });
    result.worst_a = worst->a;
    result.worst_b = worst->b;
  }
  return result;
}

double integrate_scalar(const std::function<double(double)>& f, const std::vector<double>& edges,
                        const QuadratureConfig& cfg) {
  VectorFn wrapped = [&f](double x, Eigen::VectorXd& out) { out(0) = f(x); };
  IntegralResult res = integrate(wrapped, 1, edges, cfg);
  if (!res.converged) {
    throw QuadratureError("integrate_scalar: tolerance not reached (error " +
                              std::to_string(res.error) + ")",
                          res.error, res.worst_a, res.worst_b);
  }
  return res.value(0);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

std::vector<double> sinc_aligned_edges(double a, double b, double t,
                                       const std::vector<double>& centres,
                                       const std::vector<double>& extra, double width_cap,
                                       std::size_t max_edges) {
  if (!(b > a)) {
    throw std::invalid_argument("sinc_aligned_edges: need b > a");
  }
  std::vector<double> edges{a, b};
  for (double x : extra) {
    if (x > a && x < b) {
      edges.push_back(x);
    }
  }

  if (t > 0.0) {
    const double spacing = 2.0 * M_PI / t;
    // Thin each lattice uniformly when the total would exceed the edge budget.
    const double per_centre = (b - a) / spacing;
    std::size_t stride = 1;
    if (!centres.empty() && per_centre * static_cast<double>(centres.size()) >
                                static_cast<double>(max_edges)) {
      stride = static_cast<std::size_t>(std::ceil(
          per_centre * static_cast<double>(centres.size()) / static_cast<double>(max_edges)));
    }
    for (double c : centres) {
      const double step = spacing * static_cast<double>(stride);
      const long k_lo = static_cast<long>(std::ceil((a - c) / step));
      const long k_hi = static_cast<long>(std::floor((b - c) / step));
      for (long k = k_lo; k <= k_hi; ++k) {
        edges.push_back(c + step * static_cast<double>(k));
      }
    }
  }

  std::sort(edges.begin(), edges.end());
  const double merge_tol = std::max(1e-14 * (b - a), t > 0.0 ? 1e-9 * 2.0 * M_PI / t : 0.0);
  std::vector<double> merged;
  merged.reserve(edges.size());
  for (double x : edges) {
    if (merged.empty() || x - merged.back() > merge_tol) {
      merged.push_back(x);
    }
  }
  if (merged.size() == 1) {
    merged.push_back(b);
  }
  merged.front() = a;
  merged.back() = b;

  if (width_cap > 0.0) {
    std::vector<double> capped;
    capped.reserve(merged.size());
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
      capped.push_back(merged[i]);
      const double gap = merged[i + 1] - merged[i];
      if (gap > width_cap) {
        const int pieces = static_cast<int>(std::ceil(gap / width_cap));
        for (int j = 1; j < pieces; ++j) {
          capped.push_back(merged[i] + gap * static_cast<double>(j) / pieces);
        }
      }
    }
    capped.push_back(merged.back());
    merged = std::move(capped);
  }
  return merged;
}

}  // namespace rcme::quad
