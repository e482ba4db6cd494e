#include "rvlab/cusp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rvlab {

CuspProfile CuspProfile::from_function(const std::function<double(double, double)>& f, double s0,
                                       double s1, int ns, int nw, double r_infinity) {
  if (ns < 2 || nw < 4 || s1 <= s0)
    throw std::invalid_argument("CuspProfile: need ns >= 2, nw >= 4, s1 > s0");
  CuspProfile p;
  p.s0 = s0;
  p.s1 = s1;
  p.ns = ns;
  p.nw = nw;
  p.r_infinity = r_infinity;
  p.h.resize(static_cast<std::size_t>(ns) * nw);
  for (int is = 0; is < ns; ++is)
    for (int iw = 0; iw < nw; ++iw)
      p.h[static_cast<std::size_t>(is) * nw + iw] = f(p.s_at(is), p.w_at(iw));
  return p;
}

CuspProfile CuspProfile::constant(double r, double s0, double s1, int ns, int nw) {
  return from_function([r](double, double) { return r; }, s0, s1, ns, nw, r);
}

CuspProfile CuspProfile::exponential(double r, double amp, double rate, double s0, double s1,
                                     int ns, int nw) {
  return from_function([=](double s, double) { return r + amp * std::exp(-rate * s); }, s0, s1,
                       ns, nw, r);
}

CuspProfile CuspProfile::power(double r, double amp, double exponent, double s0, double s1,
                               int ns, int nw) {
  if (s0 <= 0) throw std::invalid_argument("CuspProfile::power: needs s0 > 0");
  return from_function([=](double s, double) { return r + amp * std::pow(s, -exponent); }, s0,
                       s1, ns, nw, r);
}

CuspProfile CuspProfile::oscillatory(double r, double amp, double rate, double w_amp,
                                     double w_rate, double s0, double s1, int ns, int nw) {
  return from_function(
      [=](double s, double w) {
        double base = amp * std::exp(-rate * s);
        return r + base * (1 + w_amp * std::exp(-w_rate * s) *
                                   std::sin(4 * std::numbers::pi * w));
      },
      s0, s1, ns, nw, r);
}

const char* decay_class_name(DecayClass c) {
  switch (c) {
    case DecayClass::constant: return "constant";
    case DecayClass::exponential: return "exponential";
    case DecayClass::power_law: return "power_law";
    default: return "undetermined";
  }
}

namespace {

struct LineFit {
  double slope = 0, intercept = 0, r_squared = 0;
  int points = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  f.points = static_cast<int>(x.size());
  if (f.points < 3) return f;
  double sx = 0, sy = 0;
  for (int i = 0; i < f.points; ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / f.points, my = sy / f.points;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < f.points; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

}  // namespace

std::vector<double> row_amplitudes(const CuspProfile& p) {
  std::vector<double> amp(p.ns);
  for (int is = 0; is < p.ns; ++is) {
    double sq = 0;
    for (int iw = 0; iw < p.nw; ++iw) {
      double a = p.at(is, iw) - p.r_infinity;
      sq += a * a;
    }
    amp[is] = std::sqrt(sq / p.nw);
  }
  return amp;
}

std::vector<double> row_wterms(const CuspProfile& p) {
  std::vector<double> wterm(p.ns);
  double dw = 1.0 / p.nw;
  for (int is = 0; is < p.ns; ++is) {
    double sup = 0;
    for (int iw = 0; iw < p.nw; ++iw) {
      double ap = p.at(is, (iw + 1) % p.nw) - p.at(is, (iw - 1 + p.nw) % p.nw);
      sup = std::max(sup, std::abs(ap / (2 * dw)));
    }
    wterm[is] = std::exp(2 * p.s_at(is)) * sup;
  }
  return wterm;
}

CuspDecayReport cusp_decay_report(const CuspProfile& p) {
  CuspDecayReport rep;
  if (p.ns < 8) throw std::invalid_argument("cusp_decay_report: profile too short");

  std::vector<double> amp = row_amplitudes(p);
  std::vector<double> wterm = row_wterms(p);

  int tail_lo = p.ns / 2;  // fit over the deeper half of the profile
  rep.tail_amp = 0;
  for (int is = tail_lo; is < p.ns; ++is) rep.tail_amp = std::max(rep.tail_amp, amp[is]);

  rep.w_term_start = wterm[tail_lo];
  rep.w_term_end = wterm[p.ns - 1];
  rep.w_term_decays =
      rep.w_term_end < 1e-12 || rep.w_term_end < 0.5 * rep.w_term_start;

  double scale = std::max(1.0, std::abs(p.r_infinity));
  if (rep.tail_amp < 1e-12 * scale) {
    rep.cls = DecayClass::constant;
    rep.r_squared = 1.0;
    return rep;
  }

  std::vector<double> s_ax, log_s_ax, log_a;
  for (int is = tail_lo; is < p.ns; ++is) {
    if (amp[is] <= 0) continue;
    double s = p.s_at(is);
    s_ax.push_back(s);
    if (s > 0) log_s_ax.push_back(std::log(s));
    log_a.push_back(std::log(amp[is]));
  }
  LineFit expo = fit_line(s_ax, log_a);
  LineFit powr;
  if (log_s_ax.size() == log_a.size()) powr = fit_line(log_s_ax, log_a);

  if (expo.points >= 3 && expo.r_squared >= powr.r_squared && expo.r_squared >= 0.95 &&
      expo.slope < 0) {
    rep.cls = DecayClass::exponential;
    rep.rate = -expo.slope;
    rep.r_squared = expo.r_squared;
  } else if (powr.points >= 3 && powr.r_squared >= 0.95 && powr.slope < 0) {
    rep.cls = DecayClass::power_law;
    rep.rate = -powr.slope;
    rep.r_squared = powr.r_squared;
  } else {
    rep.cls = DecayClass::undetermined;
    rep.r_squared = std::max(expo.r_squared, powr.r_squared);
  }
  return rep;
}

}  // namespace rvlab
