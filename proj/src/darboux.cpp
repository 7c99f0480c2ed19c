#include "ptdarboux/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ptdarboux/errors.hpp"
#include "ptdarboux/special_fn.hpp"

namespace ptdarboux::darboux {

using numerics::Grid;
using numerics::SampledFunction;
using scarf2::Regime;

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr int kScanPoints = 4001;
constexpr double kNodeThreshold = 1e-12;
constexpr double kSupportThreshold = 1e-8;

void check_no_node(const WaveFunction& psi, double scan_half_width) {
  const auto x = Grid(scan_half_width, kScanPoints).nodes();
  std::vector<double> mag(x.size());
  std::transform(x.begin(), x.end(), mag.begin(), [&](double xi) { return std::abs(psi.value(xi)); });
  const double peak = *std::max_element(mag.begin(), mag.end());
  if (!(peak > 0.0) || !std::isfinite(peak)) throw PoleError("seed state vanishes or is not finite on the scan");

  // Exponential tails are excluded; a node shows up as a dip inside the support.
  auto above = [&](double m) { return m >= kSupportThreshold * peak; };
  const auto lo = std::find_if(mag.begin(), mag.end(), above);
  const auto hi = std::find_if(mag.rbegin(), mag.rend(), above).base();
  const auto dip = std::min_element(lo, hi);
  if (*dip < kNodeThreshold * peak) {
    const double where = x[static_cast<std::size_t>(dip - mag.begin())];
    throw PoleError("seed state has a node near x = " + std::to_string(where) + " (|psi| = " +
                    std::to_string(*dip) + ", peak " + std::to_string(peak) + ")");
  }
}

double sech(double x) { return scarf2::sech(x); }

Complex satellite_part(Complex p, Complex q, double x) {
  const double sh = sech(x);
  return -(2.0 * (p * p + q * q) - (p + q)) * sh * sh - kI * (p - q) * (2.0 * (p + q) - 1.0) * sh * std::tanh(x);
}

double relative(double residual, double scale) { return scale > 0.0 ? residual / scale : residual; }

double sup(const Doublet& d) { return std::max(d.upper.sup_norm(), d.lower.sup_norm()); }

Doublet operator-(const Doublet& a, const Doublet& b) { return {a.upper - b.upper, a.lower - b.lower}; }
Doublet operator+(const Doublet& a, const Doublet& b) { return {a.upper + b.upper, a.lower + b.lower}; }

}  // namespace

LogDerivativeSeed::LogDerivativeSeed(int m, Branch branch, WaveFunction seed_state, JetFunction w)
    : m_(m), branch_(branch), seed_state_(std::move(seed_state)), w_(std::move(w)) {}

LogDerivativeSeed make_seed(const WaveFunction& psi, Branch branch, double scan_half_width) {
  check_no_node(psi, scan_half_width);
  auto w = [psi](double x, int order) {
    const Jet j = psi.jet(x, order + 1);
    return -(j.differentiate() / j);
  };
  return LogDerivativeSeed(psi.n(), branch, psi, w);
}

LogDerivativeSeed make_seed(const scarf2::Model& model, int m, Branch branch, double scan_half_width) {
  const Branch b = model.resolve(branch);
  WaveFunction psi = model.eigenfunction(m, b);  // range-checks m
  check_no_node(psi, scan_half_width);
  auto w = [sp = model.spectral, m, b](double x, int order) { return -scarf2::log_derivative(sp, m, b, x, order); };
  return LogDerivativeSeed(m, b, std::move(psi), w);
}

Complex beta(const scarf2::SpectralParams& sp, int m, Branch branch) {
  const Complex d = sp.p + sp.q(branch) - static_cast<double>(m);
  return d * d;
}

Complex beta_expanded(const scarf2::SpectralParams& sp, int m, Branch branch) {
  const Complex s = sp.p + sp.q(branch);
  const double md = m;
  return s * s - 2.0 * md * s + md * md;
}

PartnerPotential::PartnerPotential(int m, Branch branch, Complex beta_m, JetFunction u)
    : m_(m), branch_(branch), beta_m_(beta_m), u_(std::move(u)) {}

PotentialFunction PartnerPotential::function() const {
  return [u = u_](double x) { return u(x, 0).value(); };
}

PartnerPotential partner_potential(const LogDerivativeSeed& seed, Complex beta_m) {
  auto u = [seed, beta_m](double x, int order) {
    const Jet w = seed.jet(x, order + 1);
    return w * w + w.differentiate() - beta_m;
  };
  return PartnerPotential(seed.m(), seed.branch(), beta_m, u);
}

PartnerPotential partner_potential(const scarf2::Model& model, const LogDerivativeSeed& seed) {
  return partner_potential(seed, beta(model.spectral, seed.m(), model.resolve(seed.branch())));
}

Complex closed_form_partner(const scarf2::PotentialParams& /*params*/, const scarf2::SpectralParams& sp, int m,
                            double x) {
  if (sp.regime != Regime::UnbrokenPT) throw DomainError("closed-form partners are printed for the unbroken regime");
  const Complex p = sp.p, q = sp.q_plus;
  const Complex base = satellite_part(p, q, x);
  switch (m) {
    case 0:
      return base;
    case 1: {
      const Complex f1 = -(p - q) + 0.5 * kI * (1.0 - 2.0 * p - 2.0 * q) * std::sinh(x);
      const Complex f1p = 0.5 * kI * (1.0 - 2.0 * p - 2.0 * q) * std::cosh(x);
      const Complex r = f1p / f1;
      return base + 2.0 * r * r - 2.0 * (p - q) / f1 - 2.0;
    }
    case 2: {
      const Complex b = 2.0 - 2.0 * p - 2.0 * q;
      const Complex c = -2.0 * p + 0.5;
      const Complex z = 0.5 * (1.0 - kI * std::sinh(x));
      const Complex dz = -0.5 * kI * std::cosh(x);
      const Complex f2 = special::hyp2f1_terminating(2, b, c, z);
      const Complex f2p = (-2.0 * b / c) * special::hyp2f1_terminating(1, b + 1.0, c + 1.0, z) * dz;
      const Complex sigma =
          (-2.0 * p - 2.0 * q + 2.0) / ((-2.0 * p + 0.5) * (-2.0 * p + 1.5)) *
          (2.0 * (p - q) * (p - q) - (-2.0 * q + 1.5) * (-2.0 * p + 1.5) / (-2.0 * p - 2.0 * q + 2.0) +
           0.5 * (3.0 + 2.0 * p + 2.0 * q) * (3.0 - 2.0 * p - 2.0 * q));
      const Complex r = f2p / f2;
      return base + 2.0 * r * r + (sigma - 6.0 * (p - q) * kI * std::sinh(x)) / f2 - 8.0;
    }
    default:
      throw DomainError("closed-form partners exist for m = 0, 1, 2 only");
  }
}

Complex closed_form_broken_partner(const scarf2::SpectralParams& sp, double x) {
  if (sp.regime != Regime::BrokenPT) throw DomainError("broken-regime closed form needs the broken regime");
  const double p = sp.p.real(), s = sp.s;
  const double sh = sech(x);
  const Complex a = Complex(2.0 * p * p - p - 0.5 * s * s + 0.375, s);
  const Complex b = Complex(s, 2.0 * p * p - p + 0.5 * s * s - 0.375);
  return -a * sh * sh - b * sh * std::tanh(x);
}

WaveFunction transformed_eigenfunction(const LogDerivativeSeed& seed, const WaveFunction& psi_n) {
  auto phi = [seed, psi_n](double x, int order) {
    const Jet psi = psi_n.jet(x, order + 1);
    return psi.differentiate() + seed.jet(x, order) * psi;
  };
  return WaveFunction(psi_n.n(), psi_n.energy(), phi);
}

WaveFunction transformed_eigenfunction(const scarf2::Model& model, const LogDerivativeSeed& seed, int n,
                                       std::optional<Branch> target) {
  const Branch b = model.resolve(target.value_or(seed.branch()));
  if (n == seed.m() && b == seed.branch())
    throw DomainError("level n = " + std::to_string(n) + " is the seed level and is removed from the partner");
  return transformed_eigenfunction(seed, model.eigenfunction(n, b));
}

Jet IntertwinerPair::apply_a(double x, const Jet& f) const {
  return f.differentiate() + seed_.jet(x, f.order() - 1) * f;
}

Jet IntertwinerPair::apply_b(double x, const Jet& f) const {
  return -f.differentiate() + seed_.jet(x, f.order() - 1) * f;
}

IntertwinerPair intertwiners(const LogDerivativeSeed& seed) { return IntertwinerPair(seed); }

GridOperators::GridOperators(const LogDerivativeSeed& seed, const Grid& grid)
    : w_(SampledFunction::sample(grid, [&](double x) { return seed.w(x); })),
      w_prime_(SampledFunction::sample(grid, [&](double x) { return seed.w_prime(x); })) {}

SampledFunction GridOperators::a(const SampledFunction& f) const {
  return numerics::fd_first_derivative(f) + w_ * f;
}

SampledFunction GridOperators::b(const SampledFunction& f) const {
  return w_ * f - numerics::fd_first_derivative(f);
}

SampledFunction GridOperators::h_plus(const SampledFunction& f) const {
  return (w_ * w_ + w_prime_) * f - numerics::fd_second_derivative(f);
}

SampledFunction GridOperators::h_minus(const SampledFunction& f) const {
  return (w_ * w_ - w_prime_) * f - numerics::fd_second_derivative(f);
}

SampledFunction GridOperators::zero() const {
  return SampledFunction(w_.grid(), std::vector<Complex>(w_.values().size(), Complex(0.0)));
}

Doublet apply_q(const GridOperators& ops, const Doublet& f) { return {ops.a(f.lower), ops.zero()}; }

Doublet apply_q_sharp(const GridOperators& ops, const Doublet& f) { return {ops.zero(), ops.b(f.upper)}; }

Doublet apply_h(const GridOperators& ops, const Doublet& f) { return {ops.h_plus(f.upper), ops.h_minus(f.lower)}; }

SuperchargeAlgebraReport supercharge_algebra_check(const LogDerivativeSeed& seed,
                                                   const std::vector<SampledFunction>& test_suite) {
  if (test_suite.empty()) throw DomainError("supercharge_algebra_check needs at least one test function");
  const Grid& grid = test_suite.front().grid();
  const GridOperators ops(seed, grid);

  SuperchargeAlgebraReport r;
  r.step = grid.step();
  r.test_count = static_cast<int>(test_suite.size());
  auto keep_max = [](double& slot, double v) { slot = std::max(slot, v); };

  for (std::size_t i = 0; i < test_suite.size(); ++i) {
    const SampledFunction& f = test_suite[i];
    const SampledFunction& g = test_suite[(i + 1) % test_suite.size()];
    const Doublet in{f, g};
    const double in_scale = sup(in);

    keep_max(r.q_squared, relative(sup(apply_q(ops, apply_q(ops, in))), in_scale));
    keep_max(r.q_sharp_squared, relative(sup(apply_q_sharp(ops, apply_q_sharp(ops, in))), in_scale));

    const Doublet anti = apply_q(ops, apply_q_sharp(ops, in)) + apply_q_sharp(ops, apply_q(ops, in));
    const Doublet blocks{ops.a(ops.b(f)), ops.b(ops.a(g))};
    keep_max(r.anticommutator, relative(sup(anti - blocks), sup(blocks)));

    const SampledFunction hp = ops.h_plus(f), hm = ops.h_minus(g);
    keep_max(r.factorization_plus,
             relative(numerics::sup_difference(blocks.upper, hp), std::max(blocks.upper.sup_norm(), hp.sup_norm())));
    keep_max(r.factorization_minus,
             relative(numerics::sup_difference(blocks.lower, hm), std::max(blocks.lower.sup_norm(), hm.sup_norm())));

    const SampledFunction hpa = ops.h_plus(ops.a(f)), ahm = ops.a(ops.h_minus(f));
    keep_max(r.intertwining_a, relative(numerics::sup_difference(hpa, ahm), std::max(hpa.sup_norm(), ahm.sup_norm())));
    const SampledFunction bhp = ops.b(ops.h_plus(f)), hmb = ops.h_minus(ops.b(f));
    keep_max(r.intertwining_b, relative(numerics::sup_difference(bhp, hmb), std::max(bhp.sup_norm(), hmb.sup_norm())));

    const Doublet qh = apply_q(ops, apply_h(ops, in)), hq = apply_h(ops, apply_q(ops, in));
    keep_max(r.commutator_q, relative(sup(qh - hq), std::max(sup(qh), sup(hq))));
    const Doublet sh = apply_q_sharp(ops, apply_h(ops, in)), hs = apply_h(ops, apply_q_sharp(ops, in));
    keep_max(r.commutator_q_sharp, relative(sup(sh - hs), std::max(sup(sh), sup(hs))));
  }
  return r;
}

std::vector<SampledFunction> random_bumps(const Grid& grid, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> centre(-3.0, 3.0), width(0.6, 1.2), phase(0.0, 6.283185307179586),
      wavenumber(-1.0, 1.0);
  std::vector<SampledFunction> out;
  for (int k = 0; k < count; ++k) {
    const double c = centre(rng), sigma = width(rng), theta = phase(rng), kw = wavenumber(rng);
    out.push_back(SampledFunction::sample(grid, [=](double x) {
      const double u = (x - c) / sigma;
      return std::polar(std::exp(-0.5 * u * u), theta + kw * x);
    }));
  }
  return out;
}

namespace {

// A psi_n is normalizable iff it is nonzero and |A psi_n| shrinks on both
// sides between |x| = 20 and |x| = 30.
bool decays_on_both_sides(const WaveFunction& phi) {
  double peak = 0.0;
  for (int i = -50; i <= 50; ++i) peak = std::max(peak, std::abs(phi.value(0.1 * i)));
  if (!(peak > 0.0)) return false;
  for (double side : {-1.0, 1.0}) {
    const double near = std::abs(phi.value(20.0 * side)), far = std::abs(phi.value(30.0 * side));
    if (!(far < near) || !(far < 1e-3 * peak)) return false;
  }
  return true;
}

}  // namespace

BrokenPartnerReport broken_partner_report(const scarf2::Model& model, int m, Branch branch) {
  if (model.regime() != Regime::BrokenPT) throw DomainError("broken_partner_report needs the broken PT regime");
  const Branch b = model.resolve(branch);
  const LogDerivativeSeed seed = make_seed(model, m, b);
  BrokenPartnerReport report{partner_potential(model, seed), {}, {}, std::nullopt, 0.0};

  for (int n = 0; n < model.spectral.n_max; ++n)
    if (n != m) report.expected_spectrum.push_back({n, b, model.energy(n, b)});

  for (const auto& entry : scarf2::spectrum(model.spectral)) {
    if (entry.n == m && entry.branch == b) continue;
    if (decays_on_both_sides(transformed_eigenfunction(model, seed, entry.n, entry.branch)))
      report.intertwined_spectrum.push_back(entry);
  }

  const Grid grid(5.0, 1001);
  const auto u = report.partner.function();
  report.pt_defect = numerics::pt_defect(u, grid);
  if (m == 0 && b == Branch::Minus) {
    double dev = 0.0;
    for (double x : grid.nodes()) dev = std::max(dev, std::abs(closed_form_broken_partner(model.spectral, x) - u(x)));
    report.comparator_deviation = dev;
  }
  return report;
}

}  // namespace ptdarboux::darboux
