#ifndef PTDARBOUX_SCARF2_HPP
#define PTDARBOUX_SCARF2_HPP

#include <string_view>
#include <vector>

#include "ptdarboux/jet.hpp"
#include "ptdarboux/wavefunction.hpp"

namespace ptdarboux::scarf2 {

enum class Regime { UnbrokenPT, BrokenPT, RealPotential };

/// Which root q^+ or q^- labels a level. Single is used when both coincide.
enum class Branch { Plus, Minus, Single };

std::string_view to_string(Regime r);
std::string_view to_string(Branch b);

/**
 * Couplings of V(x) = -v1 sech^2 x - i v2 sech x tanh x (units hbar = 2m = 1).
 *
 * Requires v1 > 0 and v2 != 0, with v2 purely real or purely imaginary.
 */
class PotentialParams {
 public:
  PotentialParams(double v1, Complex v2);

  double v1() const { return v1_; }
  Complex v2() const { return v2_; }
  bool v2_is_real() const { return v2_.imag() == 0.0; }

 private:
  double v1_;
  Complex v2_;
};

/// Quantities derived from the couplings. In the unbroken regime q_plus ==
/// q_minus and everything is real; in the broken regime p stays real and
/// q_minus = conj(q_plus) = -1/4 - i s/2.
struct SpectralParams {
  Regime regime;
  double t;
  double s;
  Complex p;
  Complex q_plus;
  Complex q_minus;
  int n_max;  // levels per branch with n < re(p + q)

  Complex q(Branch b) const { return b == Branch::Minus ? q_minus : q_plus; }
};

struct SpectrumEntry {
  int n;
  Branch branch;
  Complex energy;
};

Regime classify(const PotentialParams& params);

/// Throws DomainError for RealPotential, and for real v2 < -(v1 + 1/4), whose
/// broken spectrum is the parity image of the v2 > 0 case.
SpectralParams derive_params(const PotentialParams& params);

Complex potential(const PotentialParams& params, double x);

/// -(n - p - q_branch)^2. Throws RangeError unless 0 <= n < n_max.
Complex energy(const SpectralParams& sp, int n, Branch branch);

/// Every normalizable level: one per n when unbroken, a conjugate pair per n when broken.
std::vector<SpectrumEntry> spectrum(const SpectralParams& sp);

/**
 * Closed-form eigenfunction
 *   psi_n = Gamma(n - 2p + 1/2) / (n! Gamma(1/2 - 2p)) z^{-p} (z*)^{-q} P_n^{(-2p-1/2, -2q-1/2)}(i sinh x),
 * z = (1 - i sinh x)/2. The prefactor is kept as printed; no unit norm is implied.
 */
WaveFunction eigenfunction(const PotentialParams& params, const SpectralParams& sp, int n, Branch branch);

/// Taylor jet of psi_n'/psi_n, formed from logarithmic derivatives of each
/// factor so it stays finite where psi_n itself under- or overflows.
Jet log_derivative(const SpectralParams& sp, int n, Branch branch, double x, int order);

/// The exponential envelope z^{-p} (z*)^{-q} of every eigenfunction on one branch.
Jet envelope(const SpectralParams& sp, Branch branch, double x, int order);

/// Parameters bundled with their derived spectral data.
struct Model {
  explicit Model(PotentialParams p);

  PotentialParams params;
  SpectralParams spectral;

  Regime regime() const { return spectral.regime; }
  Complex potential(double x) const { return scarf2::potential(params, x); }
  Complex energy(int n, Branch b) const { return scarf2::energy(spectral, n, b); }
  WaveFunction eigenfunction(int n, Branch b) const { return scarf2::eigenfunction(params, spectral, n, b); }
  PotentialFunction potential_function() const;
  Branch resolve(Branch b) const;
};

/// sech x, stable for all finite x.
double sech(double x);

}  // namespace ptdarboux::scarf2

#endif  // PTDARBOUX_SCARF2_HPP
