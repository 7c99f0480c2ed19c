#ifndef PTDARBOUX_DARBOUX_HPP
#define PTDARBOUX_DARBOUX_HPP

#include <optional>
#include <vector>

#include "ptdarboux/numerics.hpp"
#include "ptdarboux/scarf2.hpp"
#include "ptdarboux/wavefunction.hpp"

namespace ptdarboux::darboux {

using scarf2::Branch;

/// Default half width of the node scan run when a seed is built.
inline constexpr double kSeedScanHalfWidth = 12.0;

/**
 * W_m = -psi_m'/psi_m for a seed state psi_m, held as a jet closure so
 * W, W' and W'' are all analytic.
 */
class LogDerivativeSeed {
 public:
  LogDerivativeSeed(int m, Branch branch, WaveFunction seed_state, JetFunction w);

  int m() const { return m_; }
  Branch branch() const { return branch_; }
  const WaveFunction& seed_state() const { return seed_state_; }
  Complex seed_energy() const { return seed_state_.energy(); }

  Jet jet(double x, int order) const { return w_(x, order); }
  Complex w(double x) const { return w_(x, 0).value(); }
  Complex w_prime(double x) const { return w_(x, 1).derivative(1); }
  Complex w_second(double x) const { return w_(x, 2).derivative(2); }

 private:
  int m_;
  Branch branch_;
  WaveFunction seed_state_;
  JetFunction w_;
};

/// Seed from an arbitrary eigenfunction. Throws PoleError when |psi| dips
/// below 1e-12 of its peak inside the span where it is non-negligible
/// (4001 samples on [-scan_half_width, scan_half_width]).
LogDerivativeSeed make_seed(const WaveFunction& psi, Branch branch = Branch::Single,
                            double scan_half_width = kSeedScanHalfWidth);

/// Seed on the m-th Scarf II level. The branch only matters in the broken regime.
LogDerivativeSeed make_seed(const scarf2::Model& model, int m, Branch branch = Branch::Minus,
                            double scan_half_width = kSeedScanHalfWidth);

/// Energy shift (p + q - m)^2 = -E_m.
Complex beta(const scarf2::SpectralParams& sp, int m, Branch branch = Branch::Minus);

/// The same shift in the printed expanded form (p+q)^2 - 2m(p+q) + m^2.
Complex beta_expanded(const scarf2::SpectralParams& sp, int m, Branch branch = Branch::Minus);

/// U^(m) = W_m^2 + W_m' - beta_m. Carries the original absolute energies.
class PartnerPotential {
 public:
  PartnerPotential(int m, Branch branch, Complex beta_m, JetFunction u);

  int m() const { return m_; }
  Branch branch() const { return branch_; }
  Complex beta_m() const { return beta_m_; }

  Complex u(double x) const { return u_(x, 0).value(); }
  Complex u_prime(double x) const { return u_(x, 1).derivative(1); }
  Jet jet(double x, int order) const { return u_(x, order); }
  PotentialFunction function() const;

 private:
  int m_;
  Branch branch_;
  Complex beta_m_;
  JetFunction u_;
};

/// Generic construction for any seed and shift.
PartnerPotential partner_potential(const LogDerivativeSeed& seed, Complex beta_m);

/// Scarf II partner with beta_m taken from the model.
PartnerPotential partner_potential(const scarf2::Model& model, const LogDerivativeSeed& seed);

/**
 * Printed closed forms for m = 0, 1, 2 in the unbroken regime, used only as
 * comparators. m = 1 takes f1 from its explicit polynomial line; m = 2 takes
 * f2 = F(-2, 2-2p-2q; -2p+1/2; z) and sigma as printed.
 */
Complex closed_form_partner(const scarf2::PotentialParams& params, const scarf2::SpectralParams& sp, int m,
                            double x);

/// Printed broken-regime partner seeded on the ground state of the minus branch.
Complex closed_form_broken_partner(const scarf2::SpectralParams& sp, double x);

/// phi = psi_n' + W psi_n, i.e. A psi_n, with the energy of psi_n.
WaveFunction transformed_eigenfunction(const LogDerivativeSeed& seed, const WaveFunction& psi_n);

/// Scarf II level n (on target branch, defaulting to the seed's) mapped into the
/// partner. Throws DomainError for the seed level itself.
WaveFunction transformed_eigenfunction(const scarf2::Model& model, const LogDerivativeSeed& seed, int n,
                                       std::optional<Branch> target = std::nullopt);

/// A = d/dx + W and B = -d/dx + W built from one seed.
class IntertwinerPair {
 public:
  explicit IntertwinerPair(LogDerivativeSeed seed) : seed_(std::move(seed)) {}

  const LogDerivativeSeed& seed() const { return seed_; }

  Complex apply_a(double x, Complex f, Complex f_prime) const { return f_prime + seed_.w(x) * f; }
  Complex apply_b(double x, Complex f, Complex f_prime) const { return -f_prime + seed_.w(x) * f; }

  /// Jet forms; the result is one order shorter than f.
  Jet apply_a(double x, const Jet& f) const;
  Jet apply_b(double x, const Jet& f) const;

 private:
  LogDerivativeSeed seed_;
};

IntertwinerPair intertwiners(const LogDerivativeSeed& seed);

/// A, B, H+ = AB and H- = BA discretised with fourth-order differences on a
/// grid, with W and W' sampled from the analytic seed.
class GridOperators {
 public:
  GridOperators(const LogDerivativeSeed& seed, const numerics::Grid& grid);

  numerics::SampledFunction a(const numerics::SampledFunction& f) const;
  numerics::SampledFunction b(const numerics::SampledFunction& f) const;
  /// -f'' + (W^2 + W') f and -f'' + (W^2 - W') f.
  numerics::SampledFunction h_plus(const numerics::SampledFunction& f) const;
  numerics::SampledFunction h_minus(const numerics::SampledFunction& f) const;
  numerics::SampledFunction zero() const;

 private:
  numerics::SampledFunction w_;
  numerics::SampledFunction w_prime_;
};

/// Two-component state acted on by the pseudo-supercharges.
struct Doublet {
  numerics::SampledFunction upper;
  numerics::SampledFunction lower;
};

/// Q = [[0, A], [0, 0]], Q# = [[0, 0], [B, 0]], H = diag(H+, H-).
Doublet apply_q(const GridOperators& ops, const Doublet& f);
Doublet apply_q_sharp(const GridOperators& ops, const Doublet& f);
Doublet apply_h(const GridOperators& ops, const Doublet& f);

/// Relative sup-norm residuals, maximised over the test suite.
struct SuperchargeAlgebraReport {
  double q_squared = 0.0;           // Q^2 F
  double q_sharp_squared = 0.0;     // (Q#)^2 F
  double anticommutator = 0.0;      // {Q,Q#}F - (AB f, BA g)
  double factorization_plus = 0.0;  // AB f - H+ f (direct)
  double factorization_minus = 0.0; // BA g - H- g (direct)
  double intertwining_a = 0.0;      // (H+ A - A H-) f
  double intertwining_b = 0.0;      // (B H+ - H- B) f
  double commutator_q = 0.0;        // [Q, H] F
  double commutator_q_sharp = 0.0;  // [Q#, H] F
  int test_count = 0;
  double step = 0.0;
};

/// Runs the algebra on consecutive pairs (f_i, f_{i+1}) of the suite, which
/// should be smooth and negligible near the grid ends.
SuperchargeAlgebraReport supercharge_algebra_check(const LogDerivativeSeed& seed,
                                                   const std::vector<numerics::SampledFunction>& test_suite);

/// Complex Gaussian bumps centred in [-3, 3] with widths in [0.6, 1.2].
std::vector<numerics::SampledFunction> random_bumps(const numerics::Grid& grid, int count, unsigned seed);

struct BrokenPartnerReport {
  PartnerPotential partner;
  /// {E_n(branch) : n != m}: the partner spectrum as claimed for the broken regime.
  std::vector<scarf2::SpectrumEntry> expected_spectrum;
  /// Original levels whose image A psi_n is nonzero and decays on both sides.
  std::vector<scarf2::SpectrumEntry> intertwined_spectrum;
  /// Sup deviation of the printed ground-state form from the generic partner
  /// on [-5, 5]; only set for m = 0 on the minus branch.
  std::optional<double> comparator_deviation;
  /// PT defect of the partner on a symmetric 1001-node grid over [-5, 5].
  double pt_defect = 0.0;
};

BrokenPartnerReport broken_partner_report(const scarf2::Model& model, int m, Branch branch = Branch::Minus);

}  // namespace ptdarboux::darboux

#endif  // PTDARBOUX_DARBOUX_HPP
