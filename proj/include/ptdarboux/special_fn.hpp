#ifndef PTDARBOUX_SPECIAL_FN_HPP
#define PTDARBOUX_SPECIAL_FN_HPP

#include <complex>

namespace ptdarboux::special {

using Complex = std::complex<double>;

/// Gamma function of a complex argument (Lanczos, reflected for re z < 1/2).
/// Throws PoleError within 1e-12 of a nonpositive integer.
Complex gamma_complex(Complex z);

/**
 * Terminating Gauss series F(-m, b; c; z) = sum_{k=0}^{m} (-m)_k (b)_k / ((c)_k k!) z^k.
 *
 * Terms are accumulated by their running ratio, so no gamma function is
 * ever evaluated. Throws PoleError when c + k vanishes for some k < m.
 */
Complex hyp2f1_terminating(int m, Complex b, Complex c, Complex z);

/// Degree and (complex) parameters of a Jacobi polynomial P_n^{(alpha,beta)}.
struct JacobiIndex {
  JacobiIndex(int degree, Complex a, Complex b);

  int n;
  Complex alpha;
  Complex beta;
};

/**
 * P_n^{(alpha,beta)}(y) = (n+alpha choose n) F(-n, n+alpha+beta+1; alpha+1; (1-y)/2).
 *
 * Evaluated in extended precision, either by the three-term degree recurrence
 * or by the explicit two-sided binomial sum, whichever shows less cancellation.
 */
Complex jacobi_p(const JacobiIndex& idx, Complex y);

/// dP_n/dy = ((n+alpha+beta+1)/2) P_{n-1}^{(alpha+1,beta+1)}(y); zero for n = 0.
Complex jacobi_p_derivative(const JacobiIndex& idx, Complex y);

/// k-th derivative in y, obtained by iterating the identity above.
Complex jacobi_p_derivative(const JacobiIndex& idx, Complex y, int order);

}  // namespace ptdarboux::special

#endif  // PTDARBOUX_SPECIAL_FN_HPP
