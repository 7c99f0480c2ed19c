#ifndef PTDARBOUX_WAVEFUNCTION_HPP
#define PTDARBOUX_WAVEFUNCTION_HPP

#include <functional>
#include <utility>

#include "ptdarboux/jet.hpp"

namespace ptdarboux {

/// Evaluates a function as a Taylor jet of the requested order at x.
using JetFunction = std::function<Jet(double x, int order)>;

/// A complex potential evaluated pointwise on the real line.
using PotentialFunction = std::function<Complex(double x)>;

/**
 * An analytic eigenfunction: quantum number, energy and an exact
 * evaluator for the function and its derivatives.
 *
 * Any closure can back a WaveFunction, which is how the Darboux engine
 * accepts seeds that do not come from the Scarf II model.
 */
class WaveFunction {
 public:
  WaveFunction(int n, Complex energy, JetFunction eval)
      : n_(n), energy_(energy), eval_(std::move(eval)) {}

  int n() const { return n_; }
  Complex energy() const { return energy_; }

  Jet jet(double x, int order) const { return eval_(x, order); }

  Complex value(double x) const { return eval_(x, 0).value(); }
  Complex deriv(double x) const { return eval_(x, 1).derivative(1); }
  Complex deriv2(double x) const { return eval_(x, 2).derivative(2); }

 private:
  int n_;
  Complex energy_;
  JetFunction eval_;
};

}  // namespace ptdarboux

#endif  // PTDARBOUX_WAVEFUNCTION_HPP
