#ifndef PTDARBOUX_JET_HPP
#define PTDARBOUX_JET_HPP

#include <algorithm>
#include <array>
#include <cassert>
#include <complex>
#include <span>

namespace ptdarboux {

using Complex = std::complex<double>;

/**
 * Truncated Taylor expansion of a complex-valued function of one real
 * variable about a fixed point x0.
 *
 * Coefficient k stores f^(k)(x0)/k!. Arithmetic is exact truncated power
 * series arithmetic, so derivatives obtained from a Jet carry only rounding
 * error. Binary operations keep the smaller order of their operands.
 */
class Jet {
 public:
  static constexpr int kMaxOrder = 6;

  Jet() = default;

  static Jet constant(Complex value, int order) {
    Jet j(order);
    j.c_[0] = value;
    return j;
  }

  /// The identity function x expanded about x0.
  static Jet variable(double x0, int order) {
    Jet j(order);
    j.c_[0] = x0;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return order_; }

  Complex operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  Complex& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  Complex value() const { return c_[0]; }

  /// k-th derivative at x0.
  Complex derivative(int k) const {
    assert(k <= order_);
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return c_[static_cast<std::size_t>(k)] * fact;
  }

  /// Expansion of f' about the same point; one order shorter.
  Jet differentiate() const {
    assert(order_ >= 1);
    Jet d(order_ - 1);
    for (int k = 0; k < order_; ++k) d.c_[k] = static_cast<double>(k + 1) * c_[k + 1];
    return d;
  }

  Jet truncate(int order) const {
    Jet t(std::min(order, order_));
    for (int k = 0; k <= t.order_; ++k) t.c_[k] = c_[k];
    return t;
  }

  Jet& operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator+=(Complex s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(Complex s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(Complex s) {
    for (int k = 0; k <= order_; ++k) c_[k] *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, Complex s) { return a += s; }
  friend Jet operator+(Complex s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, Complex s) { return a -= s; }
  friend Jet operator-(Complex s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, Complex s) { return a *= (1.0 / s); }

  friend Jet operator-(Jet a) {
    for (int k = 0; k <= a.order_; ++k) a.c_[k] = -a.c_[k];
    return a;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) {
      Complex s = 0.0;
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    const Complex inv = 1.0 / b.c_[0];
    for (int k = 0; k <= r.order_; ++k) {
      Complex s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
      r.c_[k] = s * inv;
    }
    return r;
  }

  friend Jet operator/(Complex s, const Jet& b) { return constant(s, b.order_) / b; }

 private:
  explicit Jet(int order) : order_(std::clamp(order, 0, kMaxOrder)) {}

  std::array<Complex, kMaxOrder + 1> c_{};
  int order_ = 0;
};

/// f(inner) given derivs[k] = f^(k)(inner.value()) for k = 0..inner.order().
inline Jet compose(std::span<const Complex> derivs, const Jet& inner) {
  const int order = std::min<int>(inner.order(), static_cast<int>(derivs.size()) - 1);
  Jet delta = inner.truncate(order);
  delta[0] = 0.0;
  double fact = 1.0;
  for (int k = 2; k <= order; ++k) fact *= k;
  // Horner in delta; delta has no constant term, so truncation is exact.
  Jet r = Jet::constant(derivs[static_cast<std::size_t>(order)] / fact, order);
  for (int k = order - 1; k >= 0; --k) {
    fact /= (k + 1);
    r = r * delta + derivs[static_cast<std::size_t>(k)] / fact;
  }
  return r;
}

inline Jet sinh(const Jet& u) {
  std::array<Complex, Jet::kMaxOrder + 1> d{};
  const Complex s = std::sinh(u.value()), c = std::cosh(u.value());
  for (int k = 0; k <= u.order(); ++k) d[static_cast<std::size_t>(k)] = (k % 2 == 0) ? s : c;
  return compose(std::span<const Complex>(d.data(), static_cast<std::size_t>(u.order()) + 1), u);
}

inline Jet cosh(const Jet& u) {
  std::array<Complex, Jet::kMaxOrder + 1> d{};
  const Complex s = std::sinh(u.value()), c = std::cosh(u.value());
  for (int k = 0; k <= u.order(); ++k) d[static_cast<std::size_t>(k)] = (k % 2 == 0) ? c : s;
  return compose(std::span<const Complex>(d.data(), static_cast<std::size_t>(u.order()) + 1), u);
}

/// Principal branch u^a; u must stay off the negative real axis.
inline Jet pow(const Jet& u, Complex a) {
  std::array<Complex, Jet::kMaxOrder + 1> d{};
  const Complex u0 = u.value();
  Complex falling = 1.0;
  Complex power = std::pow(u0, a);
  for (int k = 0; k <= u.order(); ++k) {
    d[static_cast<std::size_t>(k)] = falling * power;
    falling *= (a - static_cast<double>(k));
    power /= u0;
  }
  return compose(std::span<const Complex>(d.data(), static_cast<std::size_t>(u.order()) + 1), u);
}

}  // namespace ptdarboux

#endif  // PTDARBOUX_JET_HPP
