#include "rvlab/beltrami.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rvlab/fft_engine.hpp"

namespace rvlab {

namespace {

// spectral multipliers on the fftfreq layout, xi = 2 pi / L * (kx + i ky)
void make_multipliers(int n, double L, std::vector<cplx>& beurling, std::vector<cplx>& cauchy) {
  beurling.assign(static_cast<std::size_t>(n) * n, cplx(0, 0));
  cauchy.assign(static_cast<std::size_t>(n) * n, cplx(0, 0));
  double base = 2 * std::numbers::pi / L;
  for (int iy = 0; iy < n; ++iy) {
    int ky = iy < n / 2 ? iy : iy - n;
    for (int ix = 0; ix < n; ++ix) {
      int kx = ix < n / 2 ? ix : ix - n;
      if (kx == 0 && ky == 0) continue;
      cplx xi = base * cplx(kx, ky);
      std::size_t i = static_cast<std::size_t>(iy) * n + ix;
      beurling[i] = std::conj(xi) / xi;
      cauchy[i] = cplx(0, -2) / xi;
    }
  }
}

// zero-padding upsample of a spectrum (block copy of the four corners)
void pad2(const std::vector<cplx>& in, int n, std::vector<cplx>& out, double scale) {
  int nf = 2 * n;
  out.assign(static_cast<std::size_t>(nf) * nf, cplx(0, 0));
  int h = n / 2;
  for (int iy = 0; iy < n; ++iy) {
    int oy = iy < h ? iy : iy + n;
    for (int ix = 0; ix < n; ++ix) {
      int ox = ix < h ? ix : ix + n;
      out[static_cast<std::size_t>(oy) * nf + ox] =
          scale * in[static_cast<std::size_t>(iy) * n + ix];
    }
  }
}

void crop2(const std::vector<cplx>& in, int n, std::vector<cplx>& out, double scale) {
  int nf = 2 * n;
  out.assign(static_cast<std::size_t>(n) * n, cplx(0, 0));
  int h = n / 2;
  for (int iy = 0; iy < n; ++iy) {
    int sy = iy < h ? iy : iy + n;
    for (int ix = 0; ix < n; ++ix) {
      int sx = ix < h ? ix : ix + n;
      out[static_cast<std::size_t>(iy) * n + ix] =
          scale * in[static_cast<std::size_t>(sy) * nf + sx];
    }
  }
}

double mean_square_spec_diff(const std::vector<cplx>& a, const std::vector<cplx>& b, int n) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  double n2 = static_cast<double>(n) * n;
  return s / (n2 * n2);
}

}  // namespace

BeltramiField BeltramiField::from_function(const std::function<cplx(cplx)>& f, int n,
                                           double half_width, cplx center, double cap) {
  BeltramiField out;
  out.mu = ComplexGrid(n, half_width, center);
  double sup = 0;
  cplx where = 0;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      cplx z = out.mu.coord(ix, iy);
      cplx m = f(z);
      out.mu.at(ix, iy) = m;
      if (std::abs(m) > sup) {
        sup = std::abs(m);
        where = z;
      }
    }
  if (sup >= cap) {
    std::ostringstream msg;
    msg << "BeltramiField: ||mu||_inf = " << sup << " >= " << cap << " at z = " << where.real()
        << (where.imag() < 0 ? " - " : " + ") << std::abs(where.imag()) << "i";
    throw std::invalid_argument(msg.str());
  }
  out.sup_norm = sup;
  out.sampler = f;
  return out;
}

BeltramiField BeltramiField::from_phi(const QuadDifferential& phi, int n, double half_width,
                                      cplx center, double cap) {
  Model model = phi.model;
  // outside the model the coefficient is extended by reflection across the
  // ideal boundary, mu(sigma z) = conj(mu z) on the half-plane and with the
  // extra (zbar/z)^2 cocycle on the disk; the solved map then commutes with
  // sigma and preserves the model domain, which keeps pullback metrics of
  // the deformed family regular up to the boundary
  auto mu_fn = [phi, model](cplx z) -> cplx {
    if (in_model_domain(model, z))
      return std::conj(phi(z)) / (2 * hyperbolic_density(model, z));
    if (model == Model::half_plane) {
      cplx w = std::conj(z);
      if (!in_model_domain(model, w)) return 0;
      return std::conj(std::conj(phi(w)) / (2 * hyperbolic_density(model, w)));
    }
    if (!(std::norm(z) > 1)) return 0;
    cplx w = 1.0 / std::conj(z);
    cplx inner = std::conj(phi(w)) / (2 * hyperbolic_density(model, w));
    return std::conj(inner) * std::conj(z) * std::conj(z) / (z * z);
  };
  return from_function(mu_fn, n, half_width, center, cap);
}

double BeltramiField::support_radius() const {
  double r = 0;
  for (int iy = 0; iy < mu.n; ++iy)
    for (int ix = 0; ix < mu.n; ++ix)
      if (mu.at(ix, iy) != cplx(0, 0))
        r = std::max(r, std::abs(mu.coord(ix, iy) - mu.center));
  return r;
}

QCMap QCMap::normalized_01() const {
  cplx denom = anchor_f1 - anchor_f0;
  if (denom == cplx(0, 0) || std::isnan(denom.real()))
    throw std::runtime_error("QCMap::normalized_01: anchors unavailable or degenerate");
  QCMap out = *this;
  for (auto& w : out.f.v) w = (w - anchor_f0) / denom;
  for (auto& w : out.fz.v) w /= denom;
  for (auto& w : out.fzb.v) w /= denom;
  out.gauge_a = gauge_a + anchor_f0 * gauge_b;
  out.gauge_b = gauge_b * denom;
  out.anchor_f0 = 0;
  out.anchor_f1 = 1;
  return out;
}

double QCMap::orientation_margin() const {
  double m = HUGE_VAL;
  for (std::size_t i = 0; i < f.v.size(); ++i)
    m = std::min(m, std::abs(fz.v[i]) - std::abs(fzb.v[i]));
  return m;
}

QCMap solve_beltrami(const BeltramiField& mu, const SolverOptions& opts) {
  const int n = mu.mu.n;
  if (n < 4) throw std::invalid_argument("solve_beltrami: grid too small");
  const double L = 2 * mu.mu.half_width;
  const cplx center = mu.mu.center;
  const double n2 = static_cast<double>(n) * n;

  std::vector<cplx> MB, MC;
  make_multipliers(n, L, MB, MC);

  Fft2D fft_n(n);
  std::vector<cplx> H, Hn, work, mu_band;

  QCMap out;
  out.mu_sup = mu.sup_norm;

  if (!opts.dealias) {
    // plain iteration on the n-grid in value space
    std::vector<cplx> h = mu.mu.v, bh, spec;
    fft_n.forward(h, spec);
    double prev = HUGE_VAL;
    int grew = 0;
    for (int it = 0; it < opts.max_iter; ++it) {
      work = spec;
      for (std::size_t i = 0; i < work.size(); ++i) work[i] *= MB[i];
      fft_n.backward(work, bh);
      std::vector<cplx> hn(h.size());
      for (std::size_t i = 0; i < h.size(); ++i)
        hn[i] = mu.mu.v[i] * (1.0 + bh[i] / n2);
      double d2 = 0;
      for (std::size_t i = 0; i < h.size(); ++i) d2 += std::norm(hn[i] - h[i]);
      d2 /= n2;
      h = std::move(hn);
      fft_n.forward(h, spec);
      out.iterations = it + 1;
      out.residual_l2 = std::sqrt(d2);
      if (out.residual_l2 < opts.tol) break;
      if (out.residual_l2 > prev * 1.0001 && ++grew >= 3)
        throw std::runtime_error("solve_beltrami: iteration diverging, ||mu||_inf = " +
                                 std::to_string(mu.sup_norm));
      prev = out.residual_l2;
    }
    H = spec;
  } else {
    const int nf = 2 * n;
    const double nf2 = static_cast<double>(nf) * nf;
    Fft2D fft_f(nf);

    // exact resample of mu on the fine grid when a sampler exists,
    // spectral upsampling otherwise
    std::vector<cplx> mu_fine(static_cast<std::size_t>(nf) * nf);
    if (mu.sampler) {
      ComplexGrid fine(nf, mu.mu.half_width, center);
      for (int iy = 0; iy < nf; ++iy)
        for (int ix = 0; ix < nf; ++ix)
          mu_fine[static_cast<std::size_t>(iy) * nf + ix] = mu.sampler(fine.coord(ix, iy));
    } else {
      std::vector<cplx> spec_n, spec_f;
      fft_n.forward(mu.mu.v, spec_n);
      pad2(spec_n, n, spec_f, 4.0);
      fft_f.backward(spec_f, mu_fine);
      for (auto& w : mu_fine) w /= nf2;
    }

    std::vector<cplx> spec_fine;
    fft_f.forward(mu_fine, spec_fine);
    crop2(spec_fine, n, mu_band, 0.25);
    H = mu_band;

    std::vector<cplx> gf, bh_fine, prod(mu_fine.size());
    double prev = HUGE_VAL;
    int grew = 0;
    for (int it = 0; it < opts.max_iter; ++it) {
      work = H;
      for (std::size_t i = 0; i < work.size(); ++i) work[i] *= MB[i];
      pad2(work, n, gf, 4.0);
      fft_f.backward(gf, bh_fine);
      for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = mu_fine[i] * (bh_fine[i] / nf2);
      fft_f.forward(prod, gf);
      crop2(gf, n, Hn, 0.25);
      for (std::size_t i = 0; i < Hn.size(); ++i) Hn[i] += mu_band[i];
      double d = std::sqrt(mean_square_spec_diff(Hn, H, n));
      H = Hn;
      out.iterations = it + 1;
      out.residual_l2 = d;
      if (d < opts.tol) break;
      if (d > prev * 1.0001 && ++grew >= 3)
        throw std::runtime_error("solve_beltrami: iteration diverging, ||mu||_inf = " +
                                 std::to_string(mu.sup_norm));
      prev = d;
    }
  }

  // assemble f = z + C[h], fz = 1 + B[h], fzb = h on the n-grid
  out.f = ComplexGrid(n, mu.mu.half_width, center);
  out.fz = ComplexGrid(n, mu.mu.half_width, center);
  out.fzb = ComplexGrid(n, mu.mu.half_width, center);

  std::vector<cplx> tmp;
  work = H;
  for (std::size_t i = 0; i < work.size(); ++i) work[i] *= MC[i];
  fft_n.backward(work, tmp);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      out.f.at(ix, iy) = out.f.coord(ix, iy) + tmp[static_cast<std::size_t>(iy) * n + ix] / n2;

  work = H;
  for (std::size_t i = 0; i < work.size(); ++i) work[i] *= MB[i];
  fft_n.backward(work, tmp);
  for (std::size_t i = 0; i < tmp.size(); ++i) out.fz.v[i] = 1.0 + tmp[i] / n2;

  fft_n.backward(H, tmp);
  for (std::size_t i = 0; i < tmp.size(); ++i) out.fzb.v[i] = tmp[i] / n2;

  // far-field affine gauge fit over an exterior annulus
  double r_in = opts.gauge_inner_margin * mu.support_radius();
  double r_out = opts.gauge_outer_frac * mu.mu.half_width;
  if (r_in > 0 && r_in < 0.98 * r_out) {
    cplx s_f = 0, s_zf = 0, s_z = 0;
    double s_1 = 0, s_zz = 0;
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        cplx z = out.f.coord(ix, iy) - center;
        double r = std::abs(z);
        if (r <= r_in || r >= r_out) continue;
        s_1 += 1;
        s_z += z;
        s_zz += std::norm(z);
        s_f += out.f.at(ix, iy);
        s_zf += std::conj(z) * out.f.at(ix, iy);
      }
    cplx det = s_1 * s_zz - s_z * std::conj(s_z);
    if (s_1 > 8 && std::abs(det) > 1e-12) {
      cplx a = (s_f * s_zz - s_z * s_zf) / det;
      cplx b = (s_1 * s_zf - std::conj(s_z) * s_f) / det;
      for (auto& w : out.f.v) w = (w - a) / b;
      for (auto& w : out.fz.v) w /= b;
      for (auto& w : out.fzb.v) w /= b;
      out.gauge_a = a;
      out.gauge_b = b;
      out.gauge_fitted = true;
    }
  }

  auto safe_interp = [&](cplx z) -> cplx {
    try {
      return out.f.interp(z);
    } catch (const std::out_of_range&) {
      return {std::nan(""), std::nan("")};
    }
  };
  out.anchor_f0 = safe_interp(0);
  out.anchor_f1 = safe_interp(1);
  return out;
}

}  // namespace rvlab
