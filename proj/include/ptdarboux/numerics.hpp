#ifndef PTDARBOUX_NUMERICS_HPP
#define PTDARBOUX_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ptdarboux/jet.hpp"
#include "ptdarboux/wavefunction.hpp"

namespace ptdarboux::numerics {

/// Uniform grid x_i = -L + i h on [-L, L] with an odd node count, so 0 is a
/// node and the node set is symmetric.
class Grid {
 public:
  Grid(double half_width, int n_points);

  double half_width() const { return half_width_; }
  int size() const { return n_points_; }
  double step() const { return step_; }
  double node(int i) const { return -half_width_ + i * step_; }
  /// Index of -x_i.
  int mirror(int i) const { return n_points_ - 1 - i; }
  std::vector<double> nodes() const;

 private:
  double half_width_;
  int n_points_;
  double step_;
};

/// Values on the grid nodes. Only [first, last) is meaningful; finite
/// difference operators shrink that window by their stencil half width.
class SampledFunction {
 public:
  SampledFunction(Grid grid, std::vector<Complex> values);
  SampledFunction(Grid grid, std::vector<Complex> values, int first, int last);

  static SampledFunction sample(const Grid& grid, const std::function<Complex(double)>& f);

  const Grid& grid() const { return grid_; }
  const std::vector<Complex>& values() const { return values_; }
  Complex operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  int first() const { return first_; }
  int last() const { return last_; }

  /// Sup norm over the valid window.
  double sup_norm() const;

 private:
  Grid grid_;
  std::vector<Complex> values_;
  int first_;
  int last_;
};

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator-(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(Complex s, const SampledFunction& a);

/// Fourth-order central differences; each trims two nodes per side.
SampledFunction fd_first_derivative(const SampledFunction& f);
SampledFunction fd_second_derivative(const SampledFunction& f);

/// Sup norm of a - b over the common window.
double sup_difference(const SampledFunction& a, const SampledFunction& b);

/**
 * Dense three-point finite-difference Hamiltonian -d^2/dx^2 + V on the
 * interior nodes with Dirichlet ends. Stored column-major. For any complex
 * V the matrix equals its plain transpose.
 */
class HamiltonianMatrix {
 public:
  HamiltonianMatrix(Grid grid, std::vector<Complex> entries);

  const Grid& grid() const { return grid_; }
  int order() const { return grid_.size() - 2; }
  Complex operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(col) * static_cast<std::size_t>(order()) +
                    static_cast<std::size_t>(row)];
  }
  const std::vector<Complex>& entries() const { return entries_; }
  bool is_symmetric() const;

 private:
  Grid grid_;
  std::vector<Complex> entries_;
};

/// Throws NumericalError naming the first interior node where V is not finite.
HamiltonianMatrix assemble_hamiltonian(const PotentialFunction& potential, const Grid& grid);

struct EigenDecomposition {
  std::vector<Complex> values;
  /// Right eigenvectors, column-major order x order; empty unless requested.
  std::vector<Complex> vectors;
  int order = 0;

  std::span<const Complex> vector(int k) const {
    return {vectors.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(order),
            static_cast<std::size_t>(order)};
  }
};

/// All eigenvalues of the dense non-Hermitian matrix (LAPACK zgeev).
EigenDecomposition eigen_spectrum(const HamiltonianMatrix& h, bool want_vectors = false);

/// Same routine for an arbitrary square column-major matrix.
EigenDecomposition eigen_spectrum(std::vector<Complex> matrix, int order, bool want_vectors);

struct BoundState {
  int index;  // column in the decomposition
  Complex energy;
  double edge_ratio;  // max(|v_first|, |v_last|) / max_i |v_i|
};

/// Eigenpairs whose end amplitude is at most edge_tol of their peak.
std::vector<BoundState> bound_state_filter(const EigenDecomposition& eig, double edge_tol = 1e-6);

/// max |-phi'' + (U - E) phi| / (max |phi| * max(1, |E|)) over the samples.
double ode_residual(const PotentialFunction& potential, Complex energy, const WaveFunction& phi,
                    std::span<const double> samples);

/// max_i |conj(U(-x_i)) - U(x_i)|.
double pt_defect(const PotentialFunction& potential, const Grid& grid);

struct Match {
  Complex analytic;
  Complex numeric;
  double gap;
};

struct MatchReport {
  std::vector<Match> matches;
  std::vector<Complex> unmatched;  // analytic levels with no numeric value within tol
  int spurious = 0;                // numeric values left unassigned

  double max_gap() const;
};

/// Greedy nearest-neighbour matching in the complex plane; every numeric
/// value is used at most once.
MatchReport match_spectra(std::span<const Complex> analytic, std::span<const Complex> numeric, double tol);

/// Distance from target to the nearest entry of values (infinity if empty).
double nearest_distance(std::span<const Complex> values, Complex target);

/// Bound-state eigenvalues of -d^2/dx^2 + V on the grid.
std::vector<Complex> bound_spectrum(const PotentialFunction& potential, const Grid& grid, double edge_tol = 1e-6);

/// Richardson extrapolation (4 E_{h/2} - E_h)/3 of the levels nearest to each
/// analytic guess, from grids with n and 2n - 1 nodes.
std::vector<Complex> richardson_levels(const PotentialFunction& potential, double half_width, int n_points,
                                       std::span<const Complex> guesses);

}  // namespace ptdarboux::numerics

#endif  // PTDARBOUX_NUMERICS_HPP
