#include "ptdarboux/scarf2.hpp"

#include <array>
#include <cmath>
#include <string>

#include "ptdarboux/errors.hpp"
#include "ptdarboux/special_fn.hpp"

namespace ptdarboux::scarf2 {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_level(const SpectralParams& sp, int n) {
  if (n < 0 || n >= sp.n_max)
    throw RangeError("level n = " + std::to_string(n) + " is not normalizable (n_max = " +
                     std::to_string(sp.n_max) + ")");
}

Branch checked_branch(const SpectralParams& sp, Branch b) {
  if (sp.regime == Regime::UnbrokenPT) return Branch::Single;
  if (b == Branch::Single) throw DomainError("broken PT regime needs an explicit plus or minus branch");
  return b;
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::UnbrokenPT:
      return "UnbrokenPT";
    case Regime::BrokenPT:
      return "BrokenPT";
    case Regime::RealPotential:
      return "RealPotential";
  }
  return "?";
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Plus:
      return "plus";
    case Branch::Minus:
      return "minus";
    case Branch::Single:
      return "single";
  }
  return "?";
}

PotentialParams::PotentialParams(double v1, Complex v2) : v1_(v1), v2_(v2) {
  if (!std::isfinite(v1) || !std::isfinite(v2.real()) || !std::isfinite(v2.imag()))
    throw ParameterError("v1 and v2 must be finite");
  if (!(v1 > 0.0)) throw ParameterError("v1 > 0 required");
  if (v2 == Complex(0.0, 0.0)) throw ParameterError("v2 != 0 required");
  if (v2.real() != 0.0 && v2.imag() != 0.0)
    throw ParameterError("v2 must be purely real or purely imaginary (mixed v2 breaks PT invariance)");
}

Regime classify(const PotentialParams& params) {
  if (!params.v2_is_real()) return Regime::RealPotential;
  return std::abs(params.v2().real()) <= params.v1() + 0.25 ? Regime::UnbrokenPT : Regime::BrokenPT;
}

SpectralParams derive_params(const PotentialParams& params) {
  const Regime regime = classify(params);
  if (regime == Regime::RealPotential)
    throw DomainError("purely imaginary v2 gives a real potential; only classification is supported");
  const double v1 = params.v1();
  const double v2 = params.v2().real();
  if (0.25 + v1 + v2 < 0.0)
    throw DomainError("broken regime with v2 < -(v1 + 1/4) is the parity image of v2 > 0; use |v2|");

  SpectralParams sp{};
  sp.regime = regime;
  sp.t = std::sqrt(0.25 + v1 + v2);
  sp.p = -0.25 + 0.5 * sp.t;
  if (regime == Regime::UnbrokenPT) {
    sp.s = std::sqrt(0.25 + v1 - v2);
    sp.q_plus = sp.q_minus = -0.25 + 0.5 * sp.s;
  } else {
    sp.s = std::sqrt(v2 - v1 - 0.25);
    sp.q_plus = Complex(-0.25, 0.5 * sp.s);
    sp.q_minus = Complex(-0.25, -0.5 * sp.s);
  }
  const double r = (sp.p + sp.q_plus).real();
  sp.n_max = r > 0.0 ? static_cast<int>(std::ceil(r - 1e-12)) : 0;
  return sp;
}

double sech(double x) {
  const double e = std::exp(-std::abs(x));
  return 2.0 * e / (1.0 + e * e);
}

Complex potential(const PotentialParams& params, double x) {
  const double sh = sech(x);
  return -params.v1() * sh * sh - kI * params.v2() * sh * std::tanh(x);
}

Complex energy(const SpectralParams& sp, int n, Branch branch) {
  check_level(sp, n);
  const Complex d = static_cast<double>(n) - sp.p - sp.q(checked_branch(sp, branch));
  return -d * d;
}

std::vector<SpectrumEntry> spectrum(const SpectralParams& sp) {
  std::vector<SpectrumEntry> out;
  for (int n = 0; n < sp.n_max; ++n) {
    if (sp.regime == Regime::UnbrokenPT) {
      out.push_back({n, Branch::Single, energy(sp, n, Branch::Single)});
    } else {
      out.push_back({n, Branch::Plus, energy(sp, n, Branch::Plus)});
      out.push_back({n, Branch::Minus, energy(sp, n, Branch::Minus)});
    }
  }
  return out;
}

Jet envelope(const SpectralParams& sp, Branch branch, double x, int order) {
  const Complex q = sp.q(branch);
  const Jet y = kI * sinh(Jet::variable(x, order));
  const Jet z = 0.5 * (1.0 - y);
  const Jet zc = 0.5 * (1.0 + y);
  return pow(z, -sp.p) * pow(zc, -q);
}

namespace {

Jet jacobi_jet(const special::JacobiIndex& idx, const Jet& y) {
  std::array<Complex, Jet::kMaxOrder + 1> d{};
  for (int k = 0; k <= y.order(); ++k) d[static_cast<std::size_t>(k)] = special::jacobi_p_derivative(idx, y.value(), k);
  return compose(std::span<const Complex>(d.data(), static_cast<std::size_t>(y.order()) + 1), y);
}

special::JacobiIndex jacobi_index(const SpectralParams& sp, int n, Branch b) {
  return special::JacobiIndex(n, -2.0 * sp.p - 0.5, -2.0 * sp.q(b) - 0.5);
}

}  // namespace

Jet log_derivative(const SpectralParams& sp, int n, Branch branch, double x, int order) {
  check_level(sp, n);
  const Branch b = checked_branch(sp, branch);
  const Jet y = kI * sinh(Jet::variable(x, order + 1));
  const Jet z = 0.5 * (1.0 - y);
  const Jet zc = 0.5 * (1.0 + y);
  const Jet poly = jacobi_jet(jacobi_index(sp, n, b), y);
  return -sp.p * (z.differentiate() / z) - sp.q(b) * (zc.differentiate() / zc) + poly.differentiate() / poly;
}

WaveFunction eigenfunction(const PotentialParams& /*params*/, const SpectralParams& sp, int n, Branch branch) {
  const Branch b = checked_branch(sp, branch);
  const Complex e = energy(sp, n, b);
  const special::JacobiIndex idx = jacobi_index(sp, n, b);

  double n_factorial = 1.0;
  for (int k = 2; k <= n; ++k) n_factorial *= k;
  const Complex norm = special::gamma_complex(static_cast<double>(n) - 2.0 * sp.p + 0.5) /
                       (n_factorial * special::gamma_complex(0.5 - 2.0 * sp.p));

  auto eval = [sp, b, idx, norm](double x, int order) {
    const Jet y = kI * sinh(Jet::variable(x, order));
    return norm * envelope(sp, b, x, order) * jacobi_jet(idx, y);
  };
  return WaveFunction(n, e, eval);
}

Model::Model(PotentialParams p) : params(p), spectral(derive_params(p)) {}

PotentialFunction Model::potential_function() const {
  return [p = params](double x) { return scarf2::potential(p, x); };
}

Branch Model::resolve(Branch b) const { return checked_branch(spectral, b); }

}  // namespace ptdarboux::scarf2
