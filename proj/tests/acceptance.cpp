// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ptdarboux/darboux.hpp"
#include "ptdarboux/numerics.hpp"
#include "ptdarboux/scarf2.hpp"
#include "ptdarboux/special_fn.hpp"
#include "support/exact_complex.hpp"

namespace {

using namespace ptdarboux;
using oracle::ExactComplex;
using scarf2::Branch;
using scarf2::Model;
using scarf2::PotentialParams;

struct Verdict {
  bool passed;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(a + (b - a) * i / (n - 1));
  return xs;
}

// Largest gap over levels that must all be matched; inf when one is missing.
double worst_gap(const std::vector<Complex>& analytic, const std::vector<Complex>& numeric, double tol) {
  const auto report = numerics::match_spectra(analytic, numeric, tol);
  return report.unmatched.empty() ? report.max_gap() : INFINITY;
}

const Model& unbroken() {
  static const Model model(PotentialParams(24.0, 18.0));
  return model;
}

Verdict analytic_spectrum() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Complex> want = {-16.0, -9.0, -4.0, -1.0};
  std::vector<Complex> analytic;
  for (const auto& e : scarf2::spectrum(unbroken().spectral)) analytic.push_back(e.energy);
  double formula = analytic.size() == want.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(analytic.size(), want.size()); ++i)
    formula = std::max(formula, std::abs(analytic[i] - want[i]));
  const auto fd = numerics::bound_spectrum(unbroken().potential_function(), numerics::Grid(12.0, 1201));
  const double gap = worst_gap(want, fd, 0.1);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {formula <= 1e-12 && gap <= 5e-3 && seconds <= 120.0,
          fmt("formula deviation %.2e, FD max gap %.2e (L=12, N=1201), %.1f s", formula, gap, seconds)};
}

Verdict level_deletion() {
  bool ok = true;
  std::string detail;
  for (int m = 0; m <= 2; ++m) {
    const auto partner = darboux::partner_potential(unbroken(), darboux::make_seed(unbroken(), m));
    std::vector<Complex> kept;
    for (const auto& e : scarf2::spectrum(unbroken().spectral))
      if (e.n != m) kept.push_back(e.energy);
    const auto eig = numerics::eigen_spectrum(numerics::assemble_hamiltonian(partner.function(), numerics::Grid(12.0, 1201)), true);
    std::vector<Complex> grid_levels;
    for (const auto& b : numerics::bound_state_filter(eig)) grid_levels.push_back(b.energy);
    const double grid_gap = worst_gap(kept, grid_levels, 0.1);
    const double gap = worst_gap(kept, numerics::richardson_levels(partner.function(), 12.0, 601, kept), 0.1);
    const double distance = numerics::nearest_distance(eig.values, unbroken().energy(m, Branch::Single));
    ok = ok && gap <= 5e-3 && distance > 0.1;
    detail += fmt("%sm=%d: extrapolated gap %.2e (N=1201 alone %.2e), nearest to E_m %.3f", m ? "; " : "", m, gap,
                  grid_gap, distance);
  }
  return {ok, detail};
}

Verdict closed_forms() {
  double dev[3] = {0.0, 0.0, 0.0};
  for (int m = 0; m <= 2; ++m) {
    const auto partner = darboux::partner_potential(unbroken(), darboux::make_seed(unbroken(), m));
    for (double x : linspace(-5.0, 5.0, 200))
      dev[m] = std::max(dev[m], std::abs(darboux::closed_form_partner(unbroken().params, unbroken().spectral, m, x) -
                                         partner.u(x)));
  }
  return {dev[0] <= 1e-10, fmt("m=0 deviation %.2e; informational m=1 %.2e, m=2 %.2e", dev[0], dev[1], dev[2])};
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path) {
  std::ifstream file(path);
  std::string line;
  std::getline(file, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(file, line)) {
    std::stringstream ss(line);
    std::string cell;
    rows.emplace_back();
    while (std::getline(ss, cell, ',')) rows.back().push_back(std::stod(cell));
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::filesystem::path figures_into(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("ptdarboux_acceptance_" + name);
  std::filesystem::remove_all(dir);
  cli::RunConfig config;
  config.out = dir.string();
  std::ostringstream sink;
  cli::cmd_figures(config, sink);
  return dir;
}

Verdict pt_symmetry() {
  const numerics::Grid sym(5.0, 2001);
  double defect = numerics::pt_defect(unbroken().potential_function(), sym);
  for (int m = 0; m <= 2; ++m)
    defect = std::max(defect, numerics::pt_defect(
                                  darboux::partner_potential(unbroken(), darboux::make_seed(unbroken(), m)).function(), sym));
  const auto dir = figures_into("parity");
  double parity = 0.0;
  for (int part = 0; part < 2; ++part) {
    const auto rows = read_csv(dir / (part == 0 ? "fig1.csv" : "fig2.csv"));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& mirror = rows[rows.size() - 1 - i];
      parity = std::max(parity, std::abs(rows[i][0] + mirror[0]));
      for (std::size_t k = 1; k < rows[i].size(); ++k)
        parity = std::max(parity, std::abs(part == 0 ? rows[i][k] - mirror[k] : rows[i][k] + mirror[k]));
    }
  }
  std::filesystem::remove_all(dir);
  return {defect <= 1e-12 && parity <= 1e-10,
          fmt("max pt_defect of V, U0..U2 %.2e; figure parity defect %.2e", defect, parity)};
}

Verdict operator_algebra() {
  const numerics::Grid grid(8.0, 1601);  // h = 0.01
  const auto bumps = darboux::random_bumps(grid, 10, 2024u);
  double squares = 0.0, anti = 0.0, inter = 0.0;
  for (int m = 0; m <= 2; ++m) {
    const auto r = darboux::supercharge_algebra_check(darboux::make_seed(unbroken(), m), bumps);
    squares = std::max({squares, r.q_squared, r.q_sharp_squared});
    anti = std::max(anti, r.anticommutator);
    inter = std::max({inter, r.intertwining_a, r.intertwining_b});
  }
  return {squares == 0.0 && anti <= 1e-8 && inter <= 1e-6,
          fmt("Q^2 and (Q#)^2 %.1e, anticommutator %.2e, intertwining %.2e (seeds m=0..2, 10 bumps, h=0.01)", squares,
              anti, inter)};
}

Verdict transformed_eigenfunctions() {
  double residual = 0.0;
  Complex ground;
  for (int m = 0; m <= 2; ++m) {
    const auto seed = darboux::make_seed(unbroken(), m);
    const auto partner = darboux::partner_potential(unbroken(), seed);
    for (const auto& e : scarf2::spectrum(unbroken().spectral)) {
      if (e.n == m) continue;
      const WaveFunction phi = darboux::transformed_eigenfunction(unbroken(), seed, e.n);
      residual = std::max(residual, numerics::ode_residual(partner.function(), e.energy, phi, linspace(-8.0, 8.0, 200)));
      if (m == 1 && e.n == 0) ground = phi.energy();
    }
  }
  const double ground_error = std::abs(ground + 16.0);
  return {residual <= 1e-8 && ground_error <= 1e-12,
          fmt("worst relative ODE residual %.2e; m=1 partner ground energy %.15g%+.1ei", residual, ground.real(),
              ground.imag())};
}

Verdict broken_regime() {
  const Model model(PotentialParams(6.0, 8.0));
  const Complex reference(-1.4875413911823125757, -1.8354352166636247168);
  const double formula = std::max(std::abs(model.energy(0, Branch::Plus) - reference),
                                  std::abs(model.energy(0, Branch::Minus) - std::conj(reference)));
  std::vector<Complex> analytic, plus;
  for (const auto& e : scarf2::spectrum(model.spectral)) analytic.push_back(e.energy);
  for (int n = 0; n < model.spectral.n_max; ++n) plus.push_back(model.energy(n, Branch::Plus));
  const numerics::Grid grid(40.0, 1601);
  const double original_gap = worst_gap(analytic, numerics::bound_spectrum(model.potential_function(), grid), 0.1);

  const auto report = darboux::broken_partner_report(model, 0, Branch::Minus);
  const auto eig = numerics::eigen_spectrum(numerics::assemble_hamiltonian(report.partner.function(), grid), true);
  std::vector<Complex> partner_levels;
  for (const auto& b : numerics::bound_state_filter(eig)) partner_levels.push_back(b.energy);
  const double kept_gap = worst_gap({model.energy(1, Branch::Minus)}, partner_levels, 0.1);
  double plus_distance = INFINITY;
  for (Complex e : plus) plus_distance = std::min(plus_distance, numerics::nearest_distance(eig.values, e));

  return {formula <= 1e-12 && original_gap <= 1e-2 && kept_gap <= 1e-2 && plus_distance > 0.1 && report.pt_defect > 0.1,
          fmt("E0+ deviation %.2e; original FD gap %.2e; partner E1- gap %.2e; nearest partner eigenvalue to a "
              "plus-branch level %.2e (needs > 0.1); partner PT defect %.3f",
              formula, original_gap, kept_gap, plus_distance, report.pt_defect)};
}

Verdict special_functions() {
  double hyp = 0.0, jac = 0.0, der = 0.0;
  {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(-3.0, 3.0), zr(-0.9, 0.9);
    std::uniform_int_distribution<int> order(0, 8);
    for (int trial = 0; trial < 1000; ++trial) {
      const int m = order(rng);
      const Complex b(u(rng), u(rng)), c(u(rng), u(rng) + 0.5), z(zr(rng), zr(rng));
      const Complex want =
          oracle::exact_hyp2f1_terminating(m, ExactComplex(b), ExactComplex(c), ExactComplex(z)).to_complex();
      hyp = std::max(hyp, rel_err(special::hyp2f1_terminating(m, b, c, z), want));
    }
  }
  {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> par(-7.0, 3.0), ys(-2.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
      const Complex a(par(rng), 0.5 * ys(rng)), b(par(rng), 0.5 * ys(rng)), y(ys(rng), ys(rng));
      const int n = trial % 11;
      const Complex want =
          oracle::exact_jacobi_recurrence(n, ExactComplex(a), ExactComplex(b), ExactComplex(y)).to_complex();
      jac = std::max(jac, rel_err(special::jacobi_p(special::JacobiIndex(n, a, b), y), want));
    }
  }
  {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> par(-7.0, 3.0), ys(-1.0, 1.0);
    const double h = 1e-5;
    for (int trial = 0; trial < 200; ++trial) {
      const special::JacobiIndex idx(1 + trial % 10, Complex(par(rng), 0.5 * ys(rng)), Complex(par(rng), 0.5 * ys(rng)));
      const Complex y(ys(rng), ys(rng));
      const Complex fd = (special::jacobi_p(idx, y + h) - special::jacobi_p(idx, y - h)) / (2.0 * h);
      der = std::max(der, rel_err(special::jacobi_p_derivative(idx, y), fd));
    }
  }
  return {hyp <= 1e-13 && jac <= 1e-12 && der <= 1e-7,
          fmt("2F1 worst %.2e (1000 cases), Jacobi worst %.2e (500 cases), derivative worst %.2e (200 cases)", hyp, jac,
              der)};
}

Verdict convergence_order() {
  const auto potential = unbroken().potential_function();
  auto ground_error = [&](int n) {
    return numerics::nearest_distance(
        numerics::eigen_spectrum(numerics::assemble_hamiltonian(potential, numerics::Grid(12.0, n))).values, -16.0);
  };
  const double coarse = ground_error(1201), fine = ground_error(2401);
  const double ratio = coarse / fine;
  return {ratio >= 3.5 && ratio <= 4.5,
          fmt("ground-level error %.3e (N=1201) -> %.3e (N=2401), ratio %.3f", coarse, fine, ratio)};
}

Verdict figures() {
  const auto a = figures_into("run_a"), b = figures_into("run_b");
  bool identical = true;
  for (const char* name : {"fig1.csv", "fig2.csv"})
    identical = identical && !slurp(a / name).empty() && slurp(a / name) == slurp(b / name);
  const auto rows = read_csv(a / "fig1.csv");
  const auto origin = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r[0] == 0.0; });
  const bool found = origin != rows.end();
  const double v0 = found ? (*origin)[1] : NAN, u0 = found ? (*origin)[2] : NAN;
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
  return {identical && found && std::abs(v0 + 24.0) <= 1e-12 && std::abs(u0 + 16.0) <= 1e-12,
          fmt("%zu rows, byte-identical re-run: %s, V(0) = %.15g, U0(0) = %.15g", rows.size(),
              identical ? "yes" : "no", v0, u0)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"analytic spectrum (24,18) and FD match", analytic_spectrum},
      {"level deletion for m=0,1,2", level_deletion},
      {"closed-form agreement m=0", closed_forms},
      {"PT symmetry", pt_symmetry},
      {"operator algebra", operator_algebra},
      {"transformed eigenfunctions", transformed_eigenfunctions},
      {"broken regime (6,8)", broken_regime},
      {"special-function oracles", special_functions},
      {"convergence order", convergence_order},
      {"figures reproduction", figures},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.passed;
    std::printf("criterion %zu: %s  %s: %s\n", i + 1, v.passed ? "PASS" : "FAIL", criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
