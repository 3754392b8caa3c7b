#pragma once

#include <complex>
#include <vector>

#include "hardyspec/coeff_vector.hpp"
#include "hardyspec/log_scaled.hpp"
#include "hardyspec/quadrature.hpp"
#include "hardyspec/test_function.hpp"

namespace hardyspec::spectra {

struct CoeffOptions {
    double tol = 1e-9;   // doubled-order agreement, relative to vector norm
    int min_order_pad = 32;
    /// Measure coefficients by quadrature even when the variant knows them
    /// in closed form (1-D; used by the forward certification tests).
    bool force_quadrature = false;
};

/// Hermite expansion coefficients <f, h_alpha> for the box alpha_j <= N,
/// tensorized 1-D Gauss-Hermite quadrature of adaptive order >= 2N + 32.
CoeffVector hermite_coeffs(const TestFunction& f, int max_degree,
                           const CoeffOptions& opts = {});

/// Laguerre coefficients <f, psi_k^nu> in L^2(R+, r^{2nu+1} dr), k <= N.
CoeffVector laguerre_coeffs(const TestFunction& f, double nu, int max_degree,
                            const CoeffOptions& opts = {});

struct Synthesis {
    LogComplex value;
    /// log of a rigorous truncation tail bound (coeff_rule sources only;
    /// -inf for exact finite series).
    double log_tail_bound;
    std::complex<double> plain() const { return value.value(); }
};

/// sum_alpha c_alpha h_alpha(x), accumulated in signed-log form.
Synthesis synthesize(const CoeffVector& c, const std::vector<double>& x);
Synthesis synthesize(const TestFunction& f, const std::vector<double>& x);

/// ||P_k f||_2 = ( sum_{|alpha|=k} |<f,h_alpha>|^2 )^{1/2}.
double projection_norm(const TestFunction& f, int level, int dim,
                       const CoeffOptions& opts = {});

/// All levels 0..kmax in one coefficient pass.
std::vector<double> projection_norms(const TestFunction& f, int kmax, int dim,
                                     const CoeffOptions& opts = {});

}  // namespace hardyspec::spectra
