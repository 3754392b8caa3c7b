#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "hardyspec/coeff_vector.hpp"
#include "hardyspec/log_scaled.hpp"

namespace hardyspec {

/// One-coordinate factor P(x) e^{-decay x^2/2} with complex monomial
/// coefficients (complex so the family is closed under Fourier transform).
struct GaussPolyFactor {
    double decay = 1.0;
    std::vector<std::complex<double>> poly{std::complex<double>(1.0, 0.0)};

    int degree() const { return static_cast<int>(poly.size()) - 1; }
    std::complex<double> poly_eval(double x) const;
    LogComplex eval_log(double x) const;
};

/// coef * prod_j factor_j(x_j)
struct ProductTerm {
    std::complex<double> coef{1.0, 0.0};
    std::vector<GaussPolyFactor> factors;
};

/// Symbolic description of an admissible test function: a finite sum of
/// coordinate-factored Gaussian-polynomials, a finite Hermite series, a
/// prescribed-coefficient rule c_alpha = prod_j e^{-y alpha_j^{1/(2s)}},
/// raw samples on a 1-D grid, or (radial only) a Laguerre function psi_k^nu.
class TestFunction {
  public:
    enum class Variant { gauss_poly, hermite_series, coeff_rule, sampled, laguerre_psi };

    // ---- builders ----
    static TestFunction gauss_poly(double decay, std::vector<std::complex<double>> poly);
    static TestFunction gauss(double decay, int dim);  // e^{-decay |x|^2/2}
    /// poly_r2 are coefficients in |x|^2:  (sum_m poly_r2[m] |x|^{2m}) e^{-decay |x|^2/2}
    static TestFunction radial_gauss_poly(double decay, const std::vector<double>& poly_r2,
                                          int dim);
    static TestFunction product(std::vector<ProductTerm> terms, int dim);
    static TestFunction hermite_series(CoeffVector coeffs);
    static TestFunction coeff_rule(double s, double y, int dim = 1);
    static TestFunction sampled(std::vector<double> grid,
                                std::vector<std::complex<double>> values);
    /// Radial profile P(r) e^{-decay r^2/2} on (0, inf).
    static TestFunction radial_profile(double decay, std::vector<std::complex<double>> poly);
    static TestFunction laguerre_psi(int k, double nu);

    // ---- queries ----
    Variant variant() const { return variant_; }
    int dim() const { return dim_; }
    bool radial() const { return radial_; }

    LogComplex eval_log(const std::vector<double>& x) const;
    std::complex<double> eval(const std::vector<double>& x) const;
    LogComplex eval_log_1d(double x) const { return eval_log({x}); }

    /// Closed-form Fourier transform inside the same family, when one
    /// exists (Gaussian-polynomial products and Hermite-type series).
    std::optional<TestFunction> fourier_closed_form() const;

    /// Gaussian decay rate available to quadrature scaling: the smallest
    /// decay over product terms, 1.0 for Hermite-type variants.
    double min_decay() const;

    const std::vector<ProductTerm>& terms() const { return terms_; }
    const CoeffVector& coeffs() const { return coeffs_; }
    /// Materialized coefficients of a coeff_rule (truncated by its
    /// superexponential tail rule) or of a hermite_series.
    CoeffVector series_coeffs() const;
    double rule_s() const { return s_; }
    double rule_y() const { return y_; }
    int psi_degree() const { return psi_k_; }
    double psi_type() const { return psi_nu_; }
    const std::vector<double>& sample_grid() const { return grid_; }
    const std::vector<std::complex<double>>& sample_values() const { return samples_; }

  private:
    Variant variant_ = Variant::gauss_poly;
    int dim_ = 1;
    bool radial_ = false;

    std::vector<ProductTerm> terms_;       // gauss_poly
    CoeffVector coeffs_;                   // hermite_series
    double s_ = 0.25, y_ = 1.0;            // coeff_rule
    std::vector<double> grid_;             // sampled
    std::vector<std::complex<double>> samples_;
    int psi_k_ = 0;                        // laguerre_psi
    double psi_nu_ = 0.0;
};

}  // namespace hardyspec
