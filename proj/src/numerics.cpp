#include "ptdarboux/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <utility>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "ptdarboux/errors.hpp"

namespace ptdarboux::numerics {

Grid::Grid(double half_width, int n_points) : half_width_(half_width), n_points_(n_points), step_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw DomainError("grid half width must be positive");
  if (n_points < 3 || n_points % 2 == 0) throw DomainError("grid node count must be odd and at least 3");
  step_ = 2.0 * half_width / (n_points - 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(n_points_));
  for (int i = 0; i < n_points_; ++i) x[static_cast<std::size_t>(i)] = node(i);
  // exact symmetry: x_{N-1-i} = -x_i, x_mid = 0
  for (int i = 0; i < n_points_ / 2; ++i) x[static_cast<std::size_t>(mirror(i))] = -x[static_cast<std::size_t>(i)];
  x[static_cast<std::size_t>(n_points_ / 2)] = 0.0;
  return x;
}

SampledFunction::SampledFunction(Grid grid, std::vector<Complex> values)
    : SampledFunction(grid, std::move(values), 0, grid.size()) {}

SampledFunction::SampledFunction(Grid grid, std::vector<Complex> values, int first, int last)
    : grid_(grid), values_(std::move(values)), first_(first), last_(last) {
  if (static_cast<int>(values_.size()) != grid_.size())
    throw DomainError("sampled function length must equal the grid size");
  if (first_ < 0 || last_ > grid_.size() || first_ >= last_) throw DomainError("empty sample window");
}

SampledFunction SampledFunction::sample(const Grid& grid, const std::function<Complex(double)>& f) {
  const auto x = grid.nodes();
  std::vector<Complex> v(x.size());
  std::transform(x.begin(), x.end(), v.begin(), f);
  return SampledFunction(grid, std::move(v));
}

double SampledFunction::sup_norm() const {
  double m = 0.0;
  for (int i = first_; i < last_; ++i) m = std::max(m, std::abs(values_[static_cast<std::size_t>(i)]));
  return m;
}

namespace {

template <typename Op>
SampledFunction combine(const SampledFunction& a, const SampledFunction& b, Op op) {
  const int first = std::max(a.first(), b.first());
  const int last = std::min(a.last(), b.last());
  std::vector<Complex> v(a.values().size(), Complex(0.0));
  for (int i = first; i < last; ++i) v[static_cast<std::size_t>(i)] = op(a[i], b[i]);
  return SampledFunction(a.grid(), std::move(v), first, last);
}

}  // namespace

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b) {
  return combine(a, b, std::plus<Complex>());
}
SampledFunction operator-(const SampledFunction& a, const SampledFunction& b) {
  return combine(a, b, std::minus<Complex>());
}
SampledFunction operator*(const SampledFunction& a, const SampledFunction& b) {
  return combine(a, b, std::multiplies<Complex>());
}
SampledFunction operator*(Complex s, const SampledFunction& a) {
  std::vector<Complex> v(a.values().size(), Complex(0.0));
  for (int i = a.first(); i < a.last(); ++i) v[static_cast<std::size_t>(i)] = s * a[i];
  return SampledFunction(a.grid(), std::move(v), a.first(), a.last());
}

SampledFunction fd_first_derivative(const SampledFunction& f) {
  const int first = f.first() + 2, last = f.last() - 2;
  const double h = f.grid().step();
  std::vector<Complex> v(f.values().size(), Complex(0.0));
  for (int i = first; i < last; ++i)
    v[static_cast<std::size_t>(i)] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
  return SampledFunction(f.grid(), std::move(v), first, last);
}

SampledFunction fd_second_derivative(const SampledFunction& f) {
  const int first = f.first() + 2, last = f.last() - 2;
  const double h = f.grid().step();
  std::vector<Complex> v(f.values().size(), Complex(0.0));
  for (int i = first; i < last; ++i)
    v[static_cast<std::size_t>(i)] =
        (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) / (12.0 * h * h);
  return SampledFunction(f.grid(), std::move(v), first, last);
}

double sup_difference(const SampledFunction& a, const SampledFunction& b) { return (a - b).sup_norm(); }

HamiltonianMatrix::HamiltonianMatrix(Grid grid, std::vector<Complex> entries)
    : grid_(grid), entries_(std::move(entries)) {
  const auto n = static_cast<std::size_t>(order());
  if (entries_.size() != n * n) throw DomainError("Hamiltonian storage does not match grid order");
}

bool HamiltonianMatrix::is_symmetric() const {
  for (int j = 0; j < order(); ++j)
    for (int i = j + 1; i < order(); ++i)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

HamiltonianMatrix assemble_hamiltonian(const PotentialFunction& potential, const Grid& grid) {
  const int n = grid.size() - 2;
  const auto x = grid.nodes();
  const double kinetic = 1.0 / (grid.step() * grid.step());
  std::vector<Complex> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Complex(0.0));
  auto at = [&](int r, int c) -> Complex& {
    return a[static_cast<std::size_t>(c) * static_cast<std::size_t>(n) + static_cast<std::size_t>(r)];
  };
  for (int i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i) + 1];
    const Complex v = potential(xi);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalError("potential is not finite at interior node " + std::to_string(i + 1) +
                           " (x = " + std::to_string(xi) + ")");
    at(i, i) = 2.0 * kinetic + v;
    if (i + 1 < n) {
      at(i, i + 1) = -kinetic;
      at(i + 1, i) = -kinetic;
    }
  }
  return HamiltonianMatrix(grid, std::move(a));
}

EigenDecomposition eigen_spectrum(std::vector<Complex> matrix, int order, bool want_vectors) {
  if (order <= 0 || matrix.size() != static_cast<std::size_t>(order) * static_cast<std::size_t>(order))
    throw DomainError("eigen_spectrum: matrix must be square and non-empty");
  EigenDecomposition out;
  out.order = order;
  out.values.resize(static_cast<std::size_t>(order));
  if (want_vectors) out.vectors.resize(matrix.size());
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', order, matrix.data(), order,
                    out.values.data(), nullptr, 1, want_vectors ? out.vectors.data() : nullptr,
                    want_vectors ? order : 1);
  if (info != 0)
    throw NumericalError("zgeev failed (info = " + std::to_string(info) +
                         (info > 0 ? "): QR iteration did not converge" : "): illegal argument"));
  return out;
}

EigenDecomposition eigen_spectrum(const HamiltonianMatrix& h, bool want_vectors) {
  return eigen_spectrum(h.entries(), h.order(), want_vectors);
}

std::vector<BoundState> bound_state_filter(const EigenDecomposition& eig, double edge_tol) {
  if (eig.vectors.empty()) throw DomainError("bound_state_filter needs eigenvectors");
  std::vector<BoundState> kept;
  for (int k = 0; k < eig.order; ++k) {
    const auto v = eig.vector(k);
    double peak = 0.0;
    for (const Complex& c : v) peak = std::max(peak, std::abs(c));
    const double edge = std::max(std::abs(v.front()), std::abs(v.back()));
    const double ratio = peak > 0.0 ? edge / peak : 1.0;
    if (ratio <= edge_tol) kept.push_back({k, eig.values[static_cast<std::size_t>(k)], ratio});
  }
  std::sort(kept.begin(), kept.end(), [](const BoundState& a, const BoundState& b) {
    return std::pair(a.energy.real(), a.energy.imag()) < std::pair(b.energy.real(), b.energy.imag());
  });
  return kept;
}

double ode_residual(const PotentialFunction& potential, Complex energy, const WaveFunction& phi,
                    std::span<const double> samples) {
  double worst = 0.0, peak = 0.0;
  for (double x : samples) {
    const Jet j = phi.jet(x, 2);
    const Complex r = -j.derivative(2) + (potential(x) - energy) * j.value();
    worst = std::max(worst, std::abs(r));
    peak = std::max(peak, std::abs(j.value()));
  }
  if (peak == 0.0) throw NumericalError("ode_residual: wave function vanishes on every sample");
  return worst / (peak * std::max(1.0, std::abs(energy)));
}

double pt_defect(const PotentialFunction& potential, const Grid& grid) {
  const auto x = grid.nodes();
  std::vector<Complex> u(x.size());
  std::transform(x.begin(), x.end(), u.begin(), potential);
  double worst = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(std::conj(u[static_cast<std::size_t>(grid.mirror(i))]) -
                                     u[static_cast<std::size_t>(i)]));
  return worst;
}

double MatchReport::max_gap() const {
  double g = 0.0;
  for (const auto& m : matches) g = std::max(g, m.gap);
  return g;
}

MatchReport match_spectra(std::span<const Complex> analytic, std::span<const Complex> numeric, double tol) {
  struct Pair {
    double gap;
    std::size_t a, n;
  };
  std::vector<Pair> pairs;
  pairs.reserve(analytic.size() * numeric.size());
  for (std::size_t a = 0; a < analytic.size(); ++a)
    for (std::size_t n = 0; n < numeric.size(); ++n) pairs.push_back({std::abs(analytic[a] - numeric[n]), a, n});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) {
    return std::tie(l.gap, l.a, l.n) < std::tie(r.gap, r.a, r.n);
  });

  std::vector<bool> a_used(analytic.size(), false), n_used(numeric.size(), false);
  std::vector<std::ptrdiff_t> assignment(analytic.size(), -1);
  for (const Pair& p : pairs) {
    if (p.gap > tol) break;
    if (a_used[p.a] || n_used[p.n]) continue;
    a_used[p.a] = n_used[p.n] = true;
    assignment[p.a] = static_cast<std::ptrdiff_t>(p.n);
  }

  MatchReport report;
  for (std::size_t a = 0; a < analytic.size(); ++a) {
    if (assignment[a] < 0) {
      report.unmatched.push_back(analytic[a]);
    } else {
      const Complex v = numeric[static_cast<std::size_t>(assignment[a])];
      report.matches.push_back({analytic[a], v, std::abs(analytic[a] - v)});
    }
  }
  report.spurious = static_cast<int>(std::count(n_used.begin(), n_used.end(), false));
  return report;
}

double nearest_distance(std::span<const Complex> values, Complex target) {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& v : values) d = std::min(d, std::abs(v - target));
  return d;
}

std::vector<Complex> bound_spectrum(const PotentialFunction& potential, const Grid& grid, double edge_tol) {
  const auto eig = eigen_spectrum(assemble_hamiltonian(potential, grid), true);
  std::vector<Complex> out;
  for (const auto& b : bound_state_filter(eig, edge_tol)) out.push_back(b.energy);
  return out;
}

std::vector<Complex> richardson_levels(const PotentialFunction& potential, double half_width, int n_points,
                                       std::span<const Complex> guesses) {
  const auto coarse = eigen_spectrum(assemble_hamiltonian(potential, Grid(half_width, n_points))).values;
  const auto fine = eigen_spectrum(assemble_hamiltonian(potential, Grid(half_width, 2 * n_points - 1))).values;
  auto nearest = [](const std::vector<Complex>& vals, Complex g) {
    return *std::min_element(vals.begin(), vals.end(),
                             [g](Complex a, Complex b) { return std::abs(a - g) < std::abs(b - g); });
  };
  std::vector<Complex> out;
  for (const Complex& g : guesses) out.push_back((4.0 * nearest(fine, g) - nearest(coarse, g)) / 3.0);
  return out;
}

}  // namespace ptdarboux::numerics
