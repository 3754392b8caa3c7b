#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardyspec/log_scaled.hpp"
#include "hardyspec/weights.hpp"

namespace hardyspec::bounds {

/// Certification grid.  Real grids refine by doubling the point count;
/// integer grids refine from stride 2 to stride 1.
struct GridSpec {
    enum class Kind { real_log, real_linear, integer };
    Kind kind = Kind::real_log;
    double min = 2.0, max = 40.0;
    int points = 80;

    std::vector<double> base_points() const;
    std::vector<double> refined_points() const;
    std::string describe() const;
};

/// Outcome of fitting the implicit constant of an inequality LHS <= C RHS
/// on a grid.  All ratio statistics are logs of LHS/RHS; pass requires the
/// fitted constant to be finite and stable under grid refinement (<= 5%
/// log growth) with at most 1% evaluator failures.
struct CertReport {
    std::string theorem_id;
    std::string grid_desc;
    double log_c_fit = 0.0;
    double log_ratio_min = 0.0;
    double log_ratio_max = 0.0;
    double log_c_fit_refined = 0.0;
    double log_ratio_min_refined = 0.0;
    bool pass = false;
    std::vector<double> failures;                  // grid points that threw
    std::vector<std::pair<double, double>> points; // (x, log ratio), base grid
    std::vector<std::string> notes;
};

using PointEvaluator = std::function<LogScaled(double)>;

CertReport certify(const std::string& theorem_id, const PointEvaluator& lhs,
                   const PointEvaluator& rhs, const GridSpec& grid, int threads = 1);

/// sum_{n>=1} e^{-kappa y n^{1/(2s)}} n^{-beta} |h_n(x)|^kappa, log-domain
/// log-sum-exp with the tail cut once its uniform-bound majorant drops
/// below 1e-14 of the partial sum.  s = 1/2 gives the plain e^{-kappa y n}
/// geometric-weight sum.
LogScaled weighted_hermite_sum(double kappa, double beta, double s, double y, double x);

/// Product over coordinates of the 1-D sums (the multi-index sums factor).
LogScaled weighted_hermite_sum_multi(double kappa, double beta, double s, double y,
                                     const std::vector<double>& x);

/// Bound side of the log-weight sum estimate:
///   |x| log(1+sqrt2|x|)^{-2s(kappa/4+beta)/(1-2s)} e^{-kappa B(x)},
/// B = x^2/2 P_{s,y} - L_{s,y}; the small-y branch scales the exponent by
/// theta(y)^{1/(2s)} with default theta(r) = (2r)^{2s}/2.
LogScaled thm15_rhs(double kappa, double beta, double s, double y, double x,
                    const std::function<double(double)>* theta = nullptr);

struct Thm15Branch {
    bool large_y = false;                 // y > 2^{1/(2s)-1}: no theta factor
    bool statement_proof_disagree = false; // proof text uses y <= (2s)^{2s}
};
Thm15Branch thm15_branch(double s, double y);

/// |x|^{1 - kappa/2 - 2 beta} e^{-kappa x^2 tanh(y)/2}
LogScaled thm31_rhs(double kappa, double beta, double y, double x);

/// Hermite-coefficient bound for the log-power weight class.  In d >= 2 the
/// statement uses factor s/(2d) on the sum of alpha_j^{1/(2s)}, the proof
/// yields factor s/2 with the max coordinate; both are returned.
struct CoeffBoundForms {
    LogScaled statement;
    LogScaled proof_form;
};
CoeffBoundForms coeff_bound_logweight(double s, double lambda, double eps,
                                      const std::vector<int>& alpha);
LogScaled coeff_bound_logweight_1d(double s, double lambda, double eps, long n);

/// Gaussian-class coefficient bound d^{|alpha|} |alpha|^{(d-2)/4} e^{-gamma |alpha|}.
LogScaled coeff_bound_gaussian(double gamma, int d, long alpha_total);

/// Laguerre-coefficient bound 2^{2k} (k+nu)! e^{2k log q - (1/l) conj(2lk)},
/// conj the Young conjugate of phi (p >= 1) or of zeta_{p,q} (p < 1).
/// An absent l is inner-minimized over a 61-point log grid in [1e-3, 1e3].
LogScaled laguerre_coeff_bound(double p, double q, double lambda, double nu, int k,
                               std::optional<double> l, const weights::WeightSpec& w);

enum class ProjTheorem { thm17a, thm17b, thm18a, thm18b };

/// Projection-norm bounds; 1.7 uses 2^{2k}(k+d-1)! with conjugate of phi
/// (a >= 2) or psi_{a,c} (a < 2); 1.8 uses 2^k k! (2k+d)^{(d-2)/4} with phi
/// (a >= 1) or Psi_{a,c} (a < 1).  q = c/sqrt2 throughout.
LogScaled projection_norm_bound(ProjTheorem which, double a, double c, double lambda, int d,
                                int k, std::optional<double> l, const weights::WeightSpec& w);

}  // namespace hardyspec::bounds
