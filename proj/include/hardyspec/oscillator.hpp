#pragma once

#include <complex>
#include <vector>

#include "hardyspec/bounds.hpp"
#include "hardyspec/spectra.hpp"
#include "hardyspec/test_function.hpp"

namespace hardyspec::oscillator {

/// One step of the spectral flow for i u_t = (-Laplace + |x|^2) u: each
/// coefficient picks up the unimodular phase e^{i (2|alpha| + d) t}.  Exact
/// norm preservation; no time-stepping exists in this artifact.
CoeffVector evolve_coeffs(const CoeffVector& c, double t, int dim);

struct Solution {
    std::complex<double> value;
    double log_tail_bound;  // truncation tail (coeff_rule sources), else -inf
};

/// u(x, t) = synthesize(evolve(hermite_coeffs(u0, N), t), x).
Solution solution_eval(const TestFunction& u0, double t, const std::vector<double>& x,
                       int truncation);

/// Decay-envelope certification cases.
struct DecayCase {
    enum class Kind { thm13, thm14, thm33 } kind = Kind::thm13;
    double s = 0.25;      // log-weight exponent parameter (thm13/thm14)
    double lambda = 1.0;  // class growth coefficient (thm13/thm14)
    double eps = 0.05;
    double gamma = 0.5;   // Gaussian class parameter (thm33)
    int dim = 1;
    int truncation = 128;
};

/// Certifies |u(x, t)| <= C * envelope(x) jointly over the time list and
/// the x grid (d >= 2 uses diagonal points x * (1,..,1)/sqrt(d)).
bounds::CertReport decay_certificate(const DecayCase& setup, const std::vector<double>& times,
                                     const bounds::GridSpec& xgrid, int threads = 1);

/// y-parameter of the coefficient rule matched to the class parameters.
double matched_y(double s, double lambda);

}  // namespace hardyspec::oscillator
