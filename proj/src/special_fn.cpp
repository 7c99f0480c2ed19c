#include "ptdarboux/special_fn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <algorithm>
#include <string>

#include "ptdarboux/errors.hpp"

namespace ptdarboux::special {

namespace {

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoeff = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

constexpr double kPoleTol = 1e-12;

bool near_nonpositive_integer(Complex z) {
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z - Complex(r, 0.0)) < kPoleTol;
}

std::string to_string(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

Complex gamma_lanczos(Complex z) {
  // Gamma(z) for re z >= 1/2.
  z -= 1.0;
  Complex sum = kLanczosCoeff[0];
  for (std::size_t k = 1; k < kLanczosCoeff.size(); ++k) sum += kLanczosCoeff[k] / (z + static_cast<double>(k));
  const Complex t = z + kLanczosG + 0.5;
  const double sqrt_two_pi = std::sqrt(2.0 * std::numbers::pi);
  return sqrt_two_pi * std::exp((z + 0.5) * std::log(t) - t) * sum;
}

}  // namespace

Complex gamma_complex(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw NumericalError("gamma_complex: non-finite argument");
  if (near_nonpositive_integer(z)) throw PoleError("gamma_complex: pole at " + to_string(z));
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma_lanczos(1.0 - z));
  }
  return gamma_lanczos(z);
}

Complex hyp2f1_terminating(int m, Complex b, Complex c, Complex z) {
  if (m < 0) throw DomainError("hyp2f1_terminating: m must be nonnegative");
  // accumulated in long double; alternating terms can cancel heavily
  using Wide = std::complex<long double>;
  const Wide bw(b.real(), b.imag()), cw(c.real(), c.imag()), zw(z.real(), z.imag());
  Wide term = 1.0L;
  Wide sum = 1.0L;
  for (int k = 0; k < m; ++k) {
    const Wide denom = cw + static_cast<long double>(k);
    if (std::abs(denom) < kPoleTol)
      throw PoleError("hyp2f1_terminating: (c)_k vanishes at k = " + std::to_string(k) + ", c = " + to_string(c));
    term *= (static_cast<long double>(k - m) * (bw + static_cast<long double>(k))) / (denom * static_cast<long double>(k + 1)) * zw;
    sum += term;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

JacobiIndex::JacobiIndex(int degree, Complex a, Complex b) : n(degree), alpha(a), beta(b) {
  if (degree < 0) throw DomainError("JacobiIndex: degree must be nonnegative");
}

namespace {

using WideComplex = std::complex<long double>;

WideComplex widen(Complex z) { return {z.real(), z.imag()}; }

Complex narrow(WideComplex z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// Both evaluators return the value together with sum|terms| / |value|, a
// rough condition estimate used to pick between them.
struct Evaluation {
  WideComplex value;
  long double condition;
};

// sum_k (n+a choose n-k) (n+b choose k) ((y-1)/2)^k ((y+1)/2)^(n-k). The
// binomials are plain products, so integer a or b causes no pole.
Evaluation jacobi_explicit(int n, WideComplex a, WideComplex b, WideComplex y) {
  const WideComplex lo = 0.5L * (y - 1.0L), hi = 0.5L * (y + 1.0L);
  WideComplex sum = 0.0L;
  long double magnitude = 0.0L;
  for (int k = 0; k <= n; ++k) {
    WideComplex term = 1.0L;
    for (int j = 1; j <= n - k; ++j) term *= (a + static_cast<long double>(k + j)) / static_cast<long double>(j);
    for (int j = 1; j <= k; ++j) term *= (b + static_cast<long double>(n - k + j)) / static_cast<long double>(j);
    for (int j = 0; j < k; ++j) term *= lo;
    for (int j = 0; j < n - k; ++j) term *= hi;
    sum += term;
    magnitude += std::abs(term);
  }
  return {sum, magnitude / std::abs(sum)};
}

// Three-term degree recurrence; empty when a leading coefficient vanishes.
std::optional<Evaluation> jacobi_recurrence(int n, WideComplex a, WideComplex b, WideComplex y) {
  const WideComplex ab = a + b;
  WideComplex prev = 1.0L;
  WideComplex cur = 0.5L * (a - b) + (1.0L + 0.5L * ab) * y;
  long double magnitude = std::max(1.0L, std::abs(cur));
  for (int k = 2; k <= n; ++k) {
    const long double kk = k;
    const WideComplex c1 = 2.0L * kk * (kk + ab) * (2.0L * kk + ab - 2.0L);
    if (std::abs(c1) < 1e-12L) return std::nullopt;
    const WideComplex c2 = (2.0L * kk + ab - 1.0L) * ((2.0L * kk + ab) * (2.0L * kk + ab - 2.0L) * y + a * a - b * b);
    const WideComplex c3 = 2.0L * (kk + a - 1.0L) * (kk + b - 1.0L) * (2.0L * kk + ab);
    const WideComplex lead = c2 * cur / c1, tail = c3 * prev / c1;
    prev = cur;
    cur = lead - tail;
    magnitude = std::max({magnitude, std::abs(lead), std::abs(tail)});
  }
  return Evaluation{cur, magnitude / std::abs(cur)};
}

}  // namespace

Complex jacobi_p(const JacobiIndex& idx, Complex y) {
  if (idx.n == 0) return 1.0;
  const WideComplex a = widen(idx.alpha), b = widen(idx.beta), x = widen(y);
  const Evaluation direct = jacobi_explicit(idx.n, a, b, x);
  const std::optional<Evaluation> recurred = jacobi_recurrence(idx.n, a, b, x);
  if (recurred && recurred->condition < direct.condition) return narrow(recurred->value);
  return narrow(direct.value);
}

Complex jacobi_p_derivative(const JacobiIndex& idx, Complex y) { return jacobi_p_derivative(idx, y, 1); }

Complex jacobi_p_derivative(const JacobiIndex& idx, Complex y, int order) {
  if (order < 0) throw DomainError("jacobi_p_derivative: order must be nonnegative");
  if (order > idx.n) return 0.0;
  // d^k/dy^k P_n^{a,b} = (n+a+b+1)_k / 2^k P_{n-k}^{a+k,b+k}
  Complex factor = 1.0;
  const Complex s = static_cast<double>(idx.n) + idx.alpha + idx.beta + 1.0;
  for (int k = 0; k < order; ++k) factor *= 0.5 * (s + static_cast<double>(k));
  const JacobiIndex shifted(idx.n - order, idx.alpha + static_cast<double>(order),
                            idx.beta + static_cast<double>(order));
  return factor * jacobi_p(shifted, y);
}

}  // namespace ptdarboux::special
