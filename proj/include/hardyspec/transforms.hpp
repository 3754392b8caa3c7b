#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hardyspec/log_scaled.hpp"
#include "hardyspec/quadrature.hpp"
#include "hardyspec/test_function.hpp"

namespace hardyspec::transforms {

/// Entire-function image Bf(z) = K_d e^{-z^2/4} int f(xi) e^{-xi^2/2 + z.xi} dxi,
/// z in C^d, z^2 = sum z_j^2.  The prefactor K_d is the calibrated
/// normalization (see bargmann_normalization).
LogComplex bargmann_eval(const TestFunction& f, const std::vector<std::complex<double>>& z,
                         const quad::TransformOptions& opts = {});

/// Calibrated prefactor K_d: fixed once by requiring the Taylor-Hermite
/// coefficient relation to hold exactly for h_0 (and checked against h_1);
/// numerically equal to pi^{-d/2}.
double bargmann_normalization(int dim);

/// Taylor coefficients a_0..a_{n_max} of an entire function from the Cauchy
/// integral over |z| = r, trapezoid rule with >= 8 n_max nodes.
std::vector<std::complex<double>> taylor_coeffs(
    const std::function<std::complex<double>(std::complex<double>)>& g, int n_max, double r);

/// Short-time Fourier transform
///   V(f,g)(x+iy) = (2pi)^{-d/2} int e^{i(x.xi + x.y/2)} f(xi+y) conj(g(xi)) dxi.
std::complex<double> stft_eval(const TestFunction& f, const TestFunction& g,
                               const std::vector<std::complex<double>>& z,
                               const quad::TransformOptions& opts = {});

/// Function sampled on a tensor grid over C^d ~ R^{2d}; axes ordered
/// (x_1..x_d, y_1..y_d), values in row-major order over that axis list.
struct SampledField {
    int dim = 1;
    std::vector<std::vector<double>> axes;
    std::vector<std::complex<double>> values;
};
SampledField sample_stft_field(const TestFunction& f, double extent, int points_per_axis,
                               const quad::TransformOptions& opts = {});

/// Symplectic Fourier transform F_S F(z) = int e^{-(i/2) Im(z.conj(zeta))} F(zeta) dzeta
/// by trapezoid over the supplied grid; the field must cover the effective
/// support (boundary values are checked).
std::complex<double> symplectic_ft_eval(const SampledField& field,
                                        const std::vector<std::complex<double>>& z);

/// Generalized Fock transform
///   U_nu f(z) = e^{-z^2/4} int_0^inf f(r) J_nu(izr)/(izr)^nu e^{-r^2/2} r^{2nu+1} dr,
/// an even entire function of z; radial f only.
LogComplex fock_transform_eval(const TestFunction& f, double nu, std::complex<double> z,
                               const quad::TransformOptions& opts = {});

/// ||P_k f||_2 through the phase-space identity
///   ||P_k f||^2 = (2pi)^{-d/2} int V(f,f)(z) L_k^{d-1}(|z|^2/2) e^{-|z|^2/4} dz,
/// evaluated by tensorized quadrature over R^{2d}; d in {1, 2}.
double projection_norm_via_stft(const TestFunction& f, int k, int d,
                                const quad::TransformOptions& opts = {});

}  // namespace hardyspec::transforms
