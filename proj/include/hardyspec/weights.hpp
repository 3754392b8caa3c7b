#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hardyspec::weights {

/// Weight function w with its class parameters lambda (growth coefficient)
/// and c (argument scale); class-membership envelopes compose lambda*w(c*t)
/// at call time.
struct WeightSpec {
    enum class Variant { zero, log_power, tabulated };
    Variant variant = Variant::zero;
    double s = 0.25;       // log_power exponent parameter, 0 < s < 1/2
    double lambda = 1.0;   // > 0
    double c = 1.0;        // > 0
    std::vector<double> tab_t, tab_w;

    static WeightSpec zero(double lambda = 1.0, double c = 1.0);
    static WeightSpec log_power(double s, double lambda = 1.0, double c = 1.0);
    static WeightSpec tabulated(std::vector<double> t, std::vector<double> w,
                                double lambda = 1.0, double c = 1.0);
    /// Two-column CSV (t, w), header optional, strictly increasing t.
    static WeightSpec tabulated_from_csv(const std::string& path, double lambda = 1.0,
                                         double c = 1.0);

    /// Subadditivity constant L of condition (alpha); Jensen gives
    /// 2^{2s/(1-2s)} for the log_power family.
    double subadditivity_constant() const;
};

/// w(t); log_power evaluates (log(1+t))^{1/(1-2s)}.
double weight_eval(const WeightSpec& spec, double t);

/// Envelope exponent helper: lambda * w(c * t).
double scaled_weight(const WeightSpec& spec, double t);

struct ConditionFlag {
    bool holds = false;
    double witness = 0.0;        // constant certified on the grid (L, integral, ...)
    double counterexample = 0.0; // grid point where the condition failed
    std::string note;
};

/// Grid-checked weight conditions (alpha), (beta_sigma), (beta*_sigma),
/// (gamma), (delta).  (beta*) is only sampled, never proven: its flag
/// means "numerically consistent".
struct ConditionReport {
    double sigma = 0.0;
    ConditionFlag alpha;        // w(t+s) <= L [w(t)+w(s)+1]
    ConditionFlag beta_sigma;   // int_1^inf w(s) s^{-1-sigma} ds < inf
    ConditionFlag beta_star;    // int_1^inf w(ts) s^{-1-sigma} ds <= pi/2 (L-1) w(t) + C
    ConditionFlag gamma;        // log t = o(w(t))
    ConditionFlag delta;        // phi(t) = w(e^t) convex
};

ConditionReport check_weight_conditions(const WeightSpec& spec, double sigma,
                                        double grid_max = 1e6, int grid_points = 480);

struct YoungConjugate {
    double value = 0.0;
    double maximizer = 0.0;
    bool boundary_truncated = false;  // supremum ran into the bracket end
};

/// phi*(v) = sup_{u>=0} [u v - phi(u)] by golden-section maximization of the
/// concave objective; bracket grows geometrically until the objective turns.
YoungConjugate young_conjugate_ex(const std::function<double(double)>& phi, double v,
                                  double bracket_hint = 0.0);
double young_conjugate(const std::function<double(double)>& phi, double v);

/// phi(t) = w(e^t) for the spec'd weight, with the log_power bracket rule.
std::function<double(double)> phi_of(const WeightSpec& spec);
double weight_conjugate(const WeightSpec& spec, double v);

/// Pointwise values and Young conjugates of the auxiliary weights
///   psi_{a,c}(t)  = (1/(2c^2)) sqrt((2-a)/(2+a)) e^{2t} + w(e^t),  0 < a <= 2
///   zeta_{p,q}(t) = (1/(4q^2)) sqrt((1-p)/(1+p)) e^{2t} + w(e^t),  p <= 1
///   Psi_{a,c}(t)  = (1/(2c^2)) sqrt((1-a)/(1+a)) e^{2t} + w(e^t),  0 < a <= 1
struct AuxWeightValues {
    double psi, zeta, cap_psi;
    double psi_conj, zeta_conj, cap_psi_conj;
};
AuxWeightValues aux_weight_functions(const WeightSpec& w, double a, double c, double p,
                                     double q, double t, double v);

/// The three derived quantities of the log-weight machinery at (s, y, x).
struct Eq1Values {
    double P;         // sqrt(1 - (2/x^2) ((2s/y) log(1+sqrt2 |x|))^{2s/(1-2s)})
    double L;         // (1-2s)(2s/y)^{2s/(1-2s)} log(1+sqrt2 |x|)^{1/(1-2s)}
    double lambda_s;  // (1/2)(1-2s) s^{2s/(1-2s)}
};
Eq1Values eq1_quantities(double s, double y, double x);

double lambda_s(double s);
double logp_sqrt2(double x);  // log(1 + sqrt(2) |x|)

}  // namespace hardyspec::weights
