#include "diolab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diolab/errors.hpp"
#include "diolab/parallel.hpp"
#include "diolab/quadrature.hpp"
#include "diolab/rng.hpp"

namespace diolab {
namespace {

double psi_sup(const Psi& psi, int comp) {
  // Components are nonincreasing, so the sup sits at t = 0.
  return psi(0.0)[comp];
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Eigen::VectorXd random_sphere(CounterRng& rng, int n) {
  Eigen::VectorXd u(n);
  double nrm = 0.0;
  while (nrm < 1e-12) {
    for (int i = 0; i < n; ++i) u[i] = rng.next_gaussian();
    nrm = u.norm();
  }
  return u / nrm;
}

double sphere_area(int n) { // surface area of S^{n-1}
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

// Radial profile of a region along the ray r -> r*u: componentwise bound
// slack as a function of r, with homogeneous components evaluated through
// their degree when possible.
struct RayProfile {
  const Region& region;
  Eigen::VectorXd u;
  double nu_u;
  Eigen::VectorXd f_u;           // f(u), used when all degrees exist
  std::vector<double> degrees;   // empty if some component lacks a degree
  double r_lo = 0.0, r_hi = 0.0; // admissible radial range
  bool monotone = false;         // slack nonincreasing in r (single crossing)

  RayProfile(const Region& reg, Eigen::VectorXd dir)
      : region(reg), u(std::move(dir)) {
    nu_u = region.nu(u);
    bool homogeneous = true;
    for (int j = 0; j < region.form.ell(); ++j) {
      auto d = region.form.degree(j);
      if (!d) {
        homogeneous = false;
        break;
      }
      degrees.push_back(*d);
    }
    if (homogeneous) f_u = region.form.evaluate(u);
    else degrees.clear();

    // With xi = 0 each |f_j(ru)| is nondecreasing in r (r^{d_j}|f_j(u)| for
    // homogeneous components, max of nondecreasing pieces for the max form)
    // while the bound is nonincreasing, so the slack crosses zero at most
    // once and a single bisection replaces the grid scan.
    // (components without a degree are coordinate-max, also nondecreasing)
    monotone = region.xi.isZero(0.0);

    if (std::holds_alternative<ABound>(region.bound)) {
      r_lo = region.S / nu_u;
      r_hi = region.T / nu_u;
    } else {
      r_lo = 0.0;
      r_hi = region.T / nu_u;
    }
  }

  double f_component(int j, double r) const {
    if (!degrees.empty()) return std::pow(r, degrees[j]) * f_u[j];
    return region.form.evaluate(r * u)[j];
  }

  // min_j (bound_j - |f_j(ru) - xi_j|); region membership iff >= 0.
  double slack(double r) const {
    const auto* a = std::get_if<ABound>(&region.bound);
    const Eigen::VectorXd* eps = a ? nullptr : &std::get<BBound>(region.bound).eps;
    double t = r * nu_u;
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < region.form.ell(); ++j) {
      double bound = a ? a->psi.component_value(j, t) : (*eps)[j];
      double dev = std::fabs(f_component(j, r) - region.xi[j]);
      m = std::min(m, bound - dev);
    }
    return m;
  }

  // Radii where |f_j(ru)| crosses xi_j: peaks of the component slack, used
  // to seed the sign scan so narrow membership windows are not missed.
  void seed_points(std::vector<double>& out) const {
    for (int j = 0; j < region.form.ell(); ++j) {
      double xi = region.xi[j];
      if (xi == 0.0) continue;
      if (!degrees.empty()) {
        double fu = f_u[j];
        if (fu != 0.0 && xi / fu > 0.0)
          out.push_back(std::pow(xi / fu, 1.0 / degrees[j]));
      } else {
        // |f_j(ru)| is nondecreasing for the max form: bisect.
        if (xi <= 0.0) continue;
        double lo = 0.0, hi = r_hi;
        if (region.form.evaluate(hi * u)[j] < xi) continue;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (lo + hi);
          (region.form.evaluate(mid * u)[j] < xi ? lo : hi) = mid;
        }
        out.push_back(0.5 * (lo + hi));
      }
    }
  }
};

double bisect_root(const RayProfile& prof, double a, double b) {
  double fa = prof.slack(a);
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (a + b);
    double fm = prof.slack(mid);
    if ((fm >= 0.0) == (fa >= 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Membership intervals [a, b] along the ray, within [r_lo, r_hi].
std::vector<std::pair<double, double>> ray_intervals(const RayProfile& prof,
                                                     int grid) {
  if (prof.monotone) {
    if (prof.slack(prof.r_lo) < 0.0) return {};
    if (prof.slack(prof.r_hi) >= 0.0) return {{prof.r_lo, prof.r_hi}};
    return {{prof.r_lo, bisect_root(prof, prof.r_lo, prof.r_hi)}};
  }
  std::vector<double> pts;
  pts.push_back(prof.r_lo);
  for (int i = 1; i < grid; ++i)
    pts.push_back(prof.r_lo + (prof.r_hi - prof.r_lo) * i / grid);
  pts.push_back(prof.r_hi);
  prof.seed_points(pts);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::remove_if(pts.begin(), pts.end(),
                           [&](double r) { return r < prof.r_lo || r > prof.r_hi; }),
            pts.end());

  std::vector<std::pair<double, double>> out;
  bool inside = false;
  double start = 0.0;
  double prev = pts.front();
  bool prev_in = prof.slack(prev) >= 0.0;
  if (prev_in) {
    inside = true;
    start = prev;
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double r = pts[i];
    if (r <= prev) continue;
    bool in = prof.slack(r) >= 0.0;
    if (in != prev_in) {
      double root = bisect_root(prof, prev, r);
      if (in) {
        inside = true;
        start = root;
      } else {
        out.emplace_back(start, root);
        inside = false;
      }
    }
    prev = r;
    prev_in = in;
  }
  if (inside) out.emplace_back(start, prof.r_hi);
  return out;
}

} // namespace

bool Region::contains(const Eigen::VectorXd& x) const {
  double r = nu(x);
  if (std::holds_alternative<ABound>(bound)) {
    if (!(r > S && r <= T)) return false;
  } else {
    if (!(r <= T)) return false;
  }
  return bound_slack(x) >= 0.0;
}

double Region::bound_slack(const Eigen::VectorXd& x) const {
  double r = nu(x);
  Eigen::VectorXd b;
  if (const auto* a = std::get_if<ABound>(&bound)) b = a->psi(r);
  else b = std::get<BBound>(bound).eps;
  Eigen::VectorXd dev = (form.evaluate(x) - xi).cwiseAbs();
  return (b - dev).minCoeff();
}

double volume_product_closed_form(int n, const Psi& psi, double S, double T) {
  if (psi.ell() != 1) throw InvalidSpec("product volume requires scalar psi");
  if (S > T) throw InvalidSpec("volume requires S <= T");
  // Sharp version of the admissible threshold 1 + sup(psi)^{1/n}: the
  // closed form is exact as soon as S >= max(1, sup(psi)^{1/n}).
  double R = std::max(1.0, std::pow(psi_sup(psi, 0), 1.0 / n));
  if (S < R) throw ThresholdViolation("annulus start below the admissible threshold");
  if (S == T) return 0.0;
  auto integrand = [&](double t) {
    double p = psi(t)[0];
    double L = std::log(std::pow(t, n) / p);
    double sum = 0.0;
    for (int i = 0; i <= n - 2; ++i) sum += std::pow(L, i) / factorial(i);
    return (p / t) * sum;
  };
  return std::pow(2.0, n) * n * integrate(integrand, S, T);
}

double volume_max_closed_form(int n, int p, const std::vector<double>& z,
                              const Psi& psi, double S, double T) {
  if (psi.ell() != 1) throw InvalidSpec("max volume requires scalar psi");
  if (p < 1 || p > n - 1) throw InvalidSpec("max volume requires 1 <= p <= n-1");
  if (static_cast<int>(z.size()) != p) throw InvalidSpec("exponent vector must have length p");
  if (S > T) throw InvalidSpec("volume requires S <= T");
  double sup = psi_sup(psi, 0);
  double R = 1.0; // sharp threshold max(1, max_i sup(psi)^{1/z_i})
  double zsum = 0.0;
  for (double zi : z) {
    if (zi <= 0.0) throw InvalidSpec("exponents must be positive");
    R = std::max(R, std::pow(sup, 1.0 / zi));
    zsum += 1.0 / zi;
  }
  if (S < R) throw ThresholdViolation("annulus start below the admissible threshold");
  if (S == T) return 0.0;
  auto integrand = [&](double t) {
    return std::pow(psi(t)[0], zsum) * std::pow(t, n - p - 1);
  };
  return std::pow(2.0, n) * (n - p) * integrate(integrand, S, T);
}

std::vector<VolumeEstimate> mc_volume_multi(const Region& region,
                                            const std::vector<double>& euclid_caps,
                                            long long samples, std::uint64_t seed) {
  if (samples <= 0) throw InvalidSpec("mc_volume requires samples > 0");
  if (!(region.T > 0.0) || !std::isfinite(region.T))
    throw InvalidSpec("mc_volume requires a bounded annulus");
  const int n = region.form.n();
  const int grid = 192;
  const std::size_t n_caps = euclid_caps.size();

  const long long chunk_size = 8192;
  const std::size_t n_chunks =
      static_cast<std::size_t>((samples + chunk_size - 1) / chunk_size);
  std::vector<std::vector<double>> sums(n_chunks), sqsums(n_chunks);

  parallel_chunks(n_chunks, [&](std::size_t c) {
    CounterRng rng(seed, 0x6d63766f6cull + c);
    long long lo = static_cast<long long>(c) * chunk_size;
    long long hi = std::min(samples, lo + chunk_size);
    std::vector<double> s(n_caps, 0.0), sq(n_caps, 0.0);
    for (long long i = lo; i < hi; ++i) {
      Eigen::VectorXd u = random_sphere(rng, n);
      RayProfile prof(region, u);
      auto intervals = ray_intervals(prof, grid);
      for (std::size_t k = 0; k < n_caps; ++k) {
        double cap = euclid_caps[k]; // Euclidean radius equals r along the ray
        double acc = 0.0;
        for (auto [a, b] : intervals) {
          double bb = std::min(b, cap);
          if (bb > a) acc += (std::pow(bb, n) - std::pow(a, n)) / n;
        }
        s[k] += acc;
        sq[k] += acc * acc;
      }
    }
    sums[c] = std::move(s);
    sqsums[c] = std::move(sq);
  });

  double area = sphere_area(n);
  std::vector<VolumeEstimate> out(n_caps);
  for (std::size_t k = 0; k < n_caps; ++k) {
    double s = 0.0, sq = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
      s += sums[c][k];
      sq += sqsums[c][k];
    }
    double mean = s / samples;
    double var = std::max(0.0, sq / samples - mean * mean);
    out[k].value = area * mean;
    out[k].stderr_ = area * std::sqrt(var / samples);
    out[k].method = VolumeMethod::MonteCarlo;
    out[k].samples = samples;
  }
  return out;
}

VolumeEstimate mc_volume(const Region& region, long long samples, std::uint64_t seed) {
  return mc_volume_multi(region, {std::numeric_limits<double>::infinity()},
                         samples, seed)[0];
}

double regular_volume_asymptotic(const Form& form, const Psi& psi, double T) {
  double d = form.total_degree();
  if (d >= form.n()) throw InvalidDegrees("asymptotic model requires d < n");
  if (psi.ell() != form.ell())
    throw DimensionMismatch("psi component count must match form output dimension");
  double v = std::pow(T, form.n() - d);
  Eigen::VectorXd p = psi(T);
  for (int j = 0; j < psi.ell(); ++j) v *= p[j];
  return v;
}

double sphere_preimage_ratio(const Form& form, const Eigen::VectorXd& eps_box,
                             long long samples, std::uint64_t seed) {
  if (eps_box.size() != form.ell())
    throw DimensionMismatch("epsilon box dimension must match form output dimension");
  if (eps_box.minCoeff() <= 0.0) throw InvalidSpec("epsilon box must be positive");
  if (samples <= 0) throw InvalidSpec("sphere_preimage_ratio requires samples > 0");
  const int n = form.n();

  const long long chunk_size = 65536;
  const std::size_t n_chunks =
      static_cast<std::size_t>((samples + chunk_size - 1) / chunk_size);
  std::vector<long long> hits(n_chunks, 0);
  parallel_chunks(n_chunks, [&](std::size_t c) {
    CounterRng rng(seed, 0x73706872ull + c);
    long long lo = static_cast<long long>(c) * chunk_size;
    long long hi = std::min(samples, lo + chunk_size);
    long long h = 0;
    for (long long i = lo; i < hi; ++i) {
      Eigen::VectorXd u = random_sphere(rng, n);
      Eigen::VectorXd fv = form.evaluate(u).cwiseAbs();
      if ((fv.array() <= eps_box.array()).all()) ++h;
    }
    hits[c] = h;
  });

  long long total = 0;
  for (long long h : hits) total += h;
  double box_measure = 1.0;
  for (int j = 0; j < eps_box.size(); ++j) box_measure *= 2.0 * eps_box[j];
  return (static_cast<double>(total) / samples) / box_measure;
}

} // namespace diolab
