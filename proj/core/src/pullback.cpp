#include "rvlab/pullback.hpp"

#include <cmath>
#include <stdexcept>

namespace rvlab {

MetricField MetricField::hyperbolic(Model model, int n, double half_width, cplx center) {
  MetricField g;
  g.model = model;
  g.h20 = ComplexGrid(n, half_width, center);
  g.h11 = ComplexGrid(n, half_width, center);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      cplx z = g.h11.coord(ix, iy);
      g.h11.at(ix, iy) = in_model_domain(model, z) ? hyperbolic_density(model, z) : 0.0;
    }
  return g;
}

MetricField MetricField::quadratic_part() const {
  MetricField g = *this;
  for (auto& w : g.h11.v) w = 0;
  return g;
}

MetricField MetricField::trace_part() const {
  MetricField g = *this;
  for (auto& w : g.h20.v) w = 0;
  return g;
}

MetricField pullback_metric(const QCMap& f, Model target) {
  MetricField g;
  g.model = target;
  g.h20 = ComplexGrid(f.f.n, f.f.half_width, f.f.center);
  g.h11 = ComplexGrid(f.f.n, f.f.half_width, f.f.center);
  for (std::size_t i = 0; i < f.f.v.size(); ++i) {
    cplx w = f.f.v[i];
    if (!in_model_domain(target, w)) continue;
    double rho = hyperbolic_density(target, w);
    cplx fz = f.fz.v[i], fzb = f.fzb.v[i];
    g.h20.v[i] = rho * fz * std::conj(fzb);
    g.h11.v[i] = rho * (std::norm(fz) + std::norm(fzb));
  }
  return g;
}

MetricField rq_tensor(const QuadDifferential& phi, int n, double half_width, cplx center) {
  MetricField g;
  g.model = phi.model;
  g.h20 = ComplexGrid(n, half_width, center);
  g.h11 = ComplexGrid(n, half_width, center);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      cplx z = g.h20.coord(ix, iy);
      if (in_model_domain(phi.model, z)) g.h20.at(ix, iy) = phi(z) / 2.0;
    }
  return g;
}

double tensor_inner_product(const MetricField& g, const MetricField& k) {
  if (!g.h20.same_layout(k.h20) || g.model != k.model)
    throw std::invalid_argument("tensor_inner_product: incompatible fields");
  double dx = g.h20.spacing();
  double cell = dx * dx;
  double acc = 0;
  for (int iy = 0; iy < g.h20.n; ++iy)
    for (int ix = 0; ix < g.h20.n; ++ix) {
      cplx z = g.h20.coord(ix, iy);
      if (!in_model_domain(g.model, z)) continue;
      double rho = hyperbolic_density(g.model, z);
      std::size_t i = static_cast<std::size_t>(iy) * g.h20.n + ix;
      double pt = 8 * std::real(g.h20.v[i] * std::conj(k.h20.v[i])) +
                  2 * std::real(g.h11.v[i]) * std::real(k.h11.v[i]);
      acc += pt / (rho * rho) * rho * cell;
    }
  return acc;
}

MetricField metric_difference_quotient(const MetricField& plus, const MetricField& minus,
                                       double t) {
  if (!plus.h20.same_layout(minus.h20))
    throw std::invalid_argument("metric_difference_quotient: incompatible fields");
  MetricField d = plus;
  for (std::size_t i = 0; i < d.h20.v.size(); ++i) {
    d.h20.v[i] = (plus.h20.v[i] - minus.h20.v[i]) / (2 * t);
    d.h11.v[i] = (plus.h11.v[i] - minus.h11.v[i]) / (2 * t);
  }
  return d;
}

namespace {

double field_distance(const MetricField& a, const MetricField& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.h20.v.size(); ++i)
    s += std::norm(a.h20.v[i] - b.h20.v[i]) + std::norm(a.h11.v[i] - b.h11.v[i]);
  return std::sqrt(s / a.h20.v.size());
}

}  // namespace

MetricVariation metric_variation(const std::function<MetricField(double)>& family, double t0,
                                 int levels) {
  if (levels < 2) throw std::invalid_argument("metric_variation: need at least two levels");
  std::vector<MetricField> diffs;
  double t = t0;
  for (int l = 0; l < levels; ++l, t /= 2)
    diffs.push_back(metric_difference_quotient(family(t), family(-t), t));

  MetricVariation out;
  out.dot_coarse = diffs.front();
  // central differences carry O(t^2) error: (4 D(t/2) - D(t)) / 3
  out.dot = diffs[levels - 1];
  for (std::size_t i = 0; i < out.dot.h20.v.size(); ++i) {
    out.dot.h20.v[i] = (4.0 * diffs[levels - 1].h20.v[i] - diffs[levels - 2].h20.v[i]) / 3.0;
    out.dot.h11.v[i] = (4.0 * diffs[levels - 1].h11.v[i] - diffs[levels - 2].h11.v[i]) / 3.0;
  }
  out.richardson_slope = 0;
  if (levels >= 3) {
    double d01 = field_distance(diffs[levels - 3], diffs[levels - 2]);
    double d12 = field_distance(diffs[levels - 2], diffs[levels - 1]);
    if (d12 > 0) out.richardson_slope = std::log2(d01 / d12);
  }
  return out;
}

}  // namespace rvlab
