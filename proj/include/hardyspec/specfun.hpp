#pragma once

#include <complex>
#include <vector>

#include "hardyspec/log_scaled.hpp"

namespace hardyspec::specfun {

/// n-th L^2-normalized Hermite function h_n(x) (eigenfunction of the
/// harmonic oscillator, eigenvalue 2n+1) in signed-log form.  Three-term
/// recurrence with the Gaussian folded in from the start and periodic
/// rescaling of the running pair into the shared exponent.
LogScaled hermite_log(int n, double x);

/// h_0..h_N at one point with a single recurrence pass.
std::vector<LogScaled> hermite_all_log(int max_degree, double x);

/// Polynomial parts p_n = h_n * e^{x^2/2} (orthonormal w.r.t. e^{-x^2}),
/// same recurrence without the Gaussian shift.  Used by quadrature kernels.
std::vector<LogScaled> hermite_poly_all_log(int max_degree, double x);

/// Product Hermite function h_alpha(x) = prod_j h_{alpha_j}(x_j).
LogScaled hermite_multi_log(const std::vector<int>& alpha, const std::vector<double>& x);

/// Leading-order hyperbolic-region asymptotic of h_n(x) for
/// x = sqrt(2n+1) cosh(phi), phi > 0.  Relative error O(1/n).
LogScaled plancherel_rotach_log(int n, double x);

/// Laguerre function psi_k^nu(s) = L_k^nu(s^2) e^{-s^2/2}.
LogScaled laguerre_psi_log(int k, double nu, double s);

/// psi_0..psi_N at one point, one recurrence pass.
std::vector<LogScaled> laguerre_psi_all_log(int max_degree, double nu, double s);

/// Entire Bessel normalization J_nu(z) / (z/2)^nu, regular at z = 0 where it
/// equals 1/Gamma(nu+1).  Power series where it is cancellation-safe,
/// backward (Miller) recurrence otherwise.
std::complex<double> bessel_j_norm(double nu, std::complex<double> z);

/// Same value in signed-log form (needed when the result under/overflows).
LogComplex bessel_j_norm_log(double nu, std::complex<double> z);

}  // namespace hardyspec::specfun
