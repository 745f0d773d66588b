#include "tripletgen/transfer_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tripletgen/errors.hpp"

namespace tripletgen {

namespace {

struct Objective {
  std::span<const FitObservation> data;
  std::vector<double> weight;

  double chi2(double t) const {
    double sum = 0;
    for (std::size_t k = 0; k < data.size(); ++k) {
      const double r = data[k].eta - forward_coincidence_fraction(data[k].predicted_n, t);
      sum += weight[k] * r * r;
    }
    return sum;
  }

  // d f / d T for f = (1 - e^{-N T})^2
  static double jacobian(double n, double t) {
    const double e = std::exp(-n * t);
    return 2 * (1 - e) * e * n;
  }

  // Gauss-Newton information sum w J^2 and gradient term sum w r J.
  std::pair<double, double> normal_terms(double t) const {
    double info = 0, grad = 0;
    for (std::size_t k = 0; k < data.size(); ++k) {
      const double j = jacobian(data[k].predicted_n, t);
      const double r = data[k].eta - forward_coincidence_fraction(data[k].predicted_n, t);
      info += weight[k] * j * j;
      grad += weight[k] * r * j;
    }
    return {info, grad};
  }
};

double golden_section(const Objective& f, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f.chi2(c), fd = f.chi2(d);
  while (b - a > 1e-14 * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = f.chi2(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = f.chi2(d);
    }
  }
  return (a + b) / 2;
}

}  // namespace

TransferFitResult fit_transfer_function(std::span<const FitObservation> data, FitBounds bounds) {
  if (data.empty()) throw DomainError("fit_transfer_function: no data");
  if (data.size() < 2) throw DomainError("fit_transfer_function: at least two data points required");
  if (!(bounds.low > 0 && bounds.low < bounds.high && bounds.high <= 1))
    throw DomainError("fit_transfer_function: invalid bounds");

  std::size_t zero_sigma = 0;
  for (const auto& p : data) {
    if (!(p.predicted_n > 0)) throw DomainError("fit_transfer_function: predicted N must be > 0");
    if (!(p.eta >= 0 && p.eta < 1)) throw DomainError("fit_transfer_function: eta must lie in [0, 1)");
    if (!(p.sigma >= 0)) throw DomainError("fit_transfer_function: sigma must be >= 0");
    zero_sigma += p.sigma == 0;
  }
  const bool unweighted = zero_sigma == data.size();
  if (zero_sigma != 0 && !unweighted)
    throw DomainError("fit_transfer_function: some but not all uncertainties are zero");

  Objective f{data, {}};
  f.weight.reserve(data.size());
  for (const auto& p : data) f.weight.push_back(unweighted ? 1.0 : 1.0 / (p.sigma * p.sigma));

  // Coarse scan for the global basin, then refine.
  constexpr int kGrid = 400;
  const double span = bounds.high - bounds.low;
  int best = 0;
  double best_chi2 = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kGrid; ++k) {
    const double c = f.chi2(bounds.low + span * k / kGrid);
    if (c < best_chi2) { best_chi2 = c; best = k; }
  }
  const double a = bounds.low + span * std::max(0, best - 1) / kGrid;
  const double b = bounds.low + span * std::min(kGrid, best + 1) / kGrid;
  double t = golden_section(f, a, b);

  for (int it = 0; it < 50; ++it) {
    const auto [info, grad] = f.normal_terms(t);
    if (!(info > 0)) break;
    const double next = std::clamp(t + grad / info, bounds.low, bounds.high);
    const double step = next - t;
    if (f.chi2(next) > f.chi2(t)) break;
    t = next;
    if (std::abs(step) <= 1e-16 * t) break;
  }

  TransferFitResult r;
  r.transfer_function = t;
  r.chi2 = f.chi2(t);
  const double info = f.normal_terms(t).first;
  const double edge = 1e-9 * span;
  r.at_lower_bound = t - bounds.low <= edge;
  r.at_upper_bound = bounds.high - t <= edge;

  if (unweighted) {
    double scale = 0;
    for (const auto& p : data) scale = std::max(scale, p.eta);
    if (std::sqrt(r.chi2 / data.size()) > 1e-12 * std::max(scale, 1e-300))
      throw NumericalError("fit_transfer_function: zero uncertainties with inconsistent data, no fit");
    r.interval = {t, t};
    return r;
  }
  if (!(info > 0)) throw NumericalError("fit_transfer_function: flat objective, no curvature");

  const double sigma = 1.0 / std::sqrt(info);
  if (r.at_lower_bound) {
    r.interval = {bounds.low, std::min(bounds.high, bounds.low + sigma)};
  } else if (r.at_upper_bound) {
    r.interval = {std::max(bounds.low, bounds.high - sigma), bounds.high};
  } else {
    r.interval = {std::max(bounds.low, t - sigma), std::min(bounds.high, t + sigma)};
  }
  return r;
}

}  // namespace tripletgen
