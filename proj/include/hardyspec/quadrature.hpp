#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hardyspec/log_scaled.hpp"
#include "hardyspec/test_function.hpp"

namespace hardyspec::quad {

/// Gaussian quadrature rule.  Weights are kept both in plain and in log
/// form; far-tail weights of large rules underflow double range and are
/// usable only through log_weights.
struct QuadratureRule {
    enum class Kind { hermite, generalized_laguerre };
    Kind kind = Kind::hermite;
    double nu = 0.0;  // Laguerre type parameter
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Hermite rule for weight e^{-x^2} (nodes symmetric about 0),
/// computed by Golub-Welsch on the Jacobi matrix with Newton polish.
/// Rules are cached and shared; 1 <= n <= 1024.
const QuadratureRule& gauss_hermite_rule(int n);

/// Generalized Gauss-Laguerre rule for weight t^nu e^{-t} on (0, inf),
/// nu > -1; cached; 1 <= n <= 1024.
const QuadratureRule& gauss_laguerre_rule(int n, double nu);

/// Internal-size variants used by the adaptive engine (caps at 1600 > the
/// public 1024 limit).
const QuadratureRule& hermite_rule_internal(int n);
const QuadratureRule& laguerre_rule_internal(int n, double nu);

struct TransformOptions {
    double tol = 1e-10;        // successive-refinement agreement target
    bool force_quadrature = false;  // disable closed-form bypass
    int initial_nodes = 200;
    int max_nodes = 1600;
    double scale_hint = 1.0;   // natural magnitude; lets near-zero results converge
};

/// Fourier transform F f(xi) = (2pi)^{-d/2} int e^{-i xi.x} f(x) dx.
/// Closed form where the TestFunction family admits one, otherwise
/// tensorized Gauss-Hermite quadrature with adaptive node doubling.
std::complex<double> fourier_transform_num(const TestFunction& f,
                                           const std::vector<double>& xi,
                                           const TransformOptions& opts = {});

/// Hankel transform H_nu f(s) = int_0^inf f(r) J_nu(sr)/(sr)^nu r^{2nu+1} dr
/// via Gauss-Laguerre after t = r^2; the normalized Bessel kernel keeps
/// s = 0 regular.
double hankel_transform_num(const TestFunction& f, double nu, double s,
                            const TransformOptions& opts = {});

/// L^2 norm of f over its natural domain (line with Lebesgue measure, or
/// half-line with r^{2nu+1} dr when radial), by the same quadrature engine.
double l2_norm_num(const TestFunction& f, double nu = 0.0,
                   const TransformOptions& opts = {});

/// Successive-doubling driver shared by the transform routines: evaluates
/// `eval(n)` for n = n0, 2 n0, ... until two answers agree to tol (absolute
/// on values of order one), else throws AccuracyError with the achieved gap.
std::complex<double> adaptive_nodes(const std::function<std::complex<double>(int)>& eval,
                                    const TransformOptions& opts, const char* what);

/// Relative-agreement variant for log-scaled results.
LogComplex adaptive_nodes_log(const std::function<LogComplex(int)>& eval,
                              const TransformOptions& opts, const char* what);

}  // namespace hardyspec::quad
