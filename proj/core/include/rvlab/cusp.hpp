#pragma once

#include <functional>
#include <vector>

namespace rvlab {

// metric factor h(s, w) along a cusp neighborhood: s is the depth coordinate
// (increasing toward the cusp), w in [0,1) the periodic cross-section angle.
// The deviation a = h - r_infinity carries the decay information.
struct CuspProfile {
  double s0 = 0, s1 = 1;
  int ns = 0, nw = 0;
  double r_infinity = 0;
  std::vector<double> h;  // row-major, index is * nw + iw

  double s_at(int is) const { return s0 + (s1 - s0) * is / (ns - 1); }
  double w_at(int iw) const { return static_cast<double>(iw) / nw; }
  double at(int is, int iw) const { return h[static_cast<std::size_t>(is) * nw + iw]; }

  static CuspProfile from_function(const std::function<double(double, double)>& f, double s0,
                                   double s1, int ns, int nw, double r_infinity);
  static CuspProfile constant(double r_infinity, double s0, double s1, int ns, int nw);
  // h = r + amp * exp(-rate s)
  static CuspProfile exponential(double r_infinity, double amp, double rate, double s0,
                                 double s1, int ns, int nw);
  // h = r + amp * s^{-exponent}
  static CuspProfile power(double r_infinity, double amp, double exponent, double s0, double s1,
                           int ns, int nw);
  // exponential deviation modulated in w; the weighted w-derivative
  // e^{2s} |a_w| decays when rate + w_rate > 2
  static CuspProfile oscillatory(double r_infinity, double amp, double rate, double w_amp,
                                 double w_rate, double s0, double s1, int ns, int nw);
};

enum class DecayClass { constant, exponential, power_law, undetermined };

const char* decay_class_name(DecayClass c);

struct CuspDecayReport {
  DecayClass cls = DecayClass::undetermined;
  double rate = 0;       // kappa for exponential, the exponent for power law
  double r_squared = 0;  // of the winning fit over the tail
  double tail_amp = 0;   // max |a| over the fitted tail
  double w_term_start = 0, w_term_end = 0;  // e^{2s} sup_w |a_w| at tail ends
  bool w_term_decays = false;
};

// fits log|a| against s (exponential) and against log s (power law) over the
// tail of the profile, keeps the better fit, and gates on R^2 >= 0.95
CuspDecayReport cusp_decay_report(const CuspProfile& p);

// per-row diagnostics behind the report: rms deviation A(s) and the weighted
// angular derivative e^{2s} sup_w |a_w|
std::vector<double> row_amplitudes(const CuspProfile& p);
std::vector<double> row_wterms(const CuspProfile& p);

}  // namespace rvlab
