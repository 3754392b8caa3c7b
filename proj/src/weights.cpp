#include "hardyspec/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hardyspec/errors.hpp"

namespace hardyspec::weights {

WeightSpec WeightSpec::zero(double lambda, double c) {
    WeightSpec w;
    w.variant = Variant::zero;
    w.lambda = lambda;
    w.c = c;
    return w;
}

WeightSpec WeightSpec::log_power(double s, double lambda, double c) {
    if (!(s > 0.0) || !(s < 0.5))
        throw std::domain_error("WeightSpec::log_power: requires 0 < s < 1/2");
    if (!(lambda > 0) || !(c > 0))
        throw std::domain_error("WeightSpec: lambda and c must be positive");
    WeightSpec w;
    w.variant = Variant::log_power;
    w.s = s;
    w.lambda = lambda;
    w.c = c;
    return w;
}

WeightSpec WeightSpec::tabulated(std::vector<double> t, std::vector<double> w, double lambda,
                                 double c) {
    if (t.size() != w.size() || t.size() < 2)
        throw std::domain_error("WeightSpec::tabulated: need matching columns, >= 2 rows");
    for (size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw std::domain_error("WeightSpec::tabulated: t must be strictly increasing");
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] < w[i - 1])
            throw std::domain_error("WeightSpec::tabulated: w must be non-decreasing");
    WeightSpec spec;
    spec.variant = Variant::tabulated;
    spec.lambda = lambda;
    spec.c = c;
    spec.tab_t = std::move(t);
    spec.tab_w = std::move(w);
    return spec;
}

WeightSpec WeightSpec::tabulated_from_csv(const std::string& path, double lambda, double c) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("tabulated_from_csv: cannot open " + path);
    std::vector<double> t, w;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double a, b;
        if (ss >> a >> b) {
            t.push_back(a);
            w.push_back(b);
        }  // non-numeric rows (header) are skipped
    }
    return tabulated(std::move(t), std::move(w), lambda, c);
}

double WeightSpec::subadditivity_constant() const {
    switch (variant) {
        case Variant::zero:
            return 1.0;
        case Variant::log_power:
            return std::pow(2.0, 2.0 * s / (1.0 - 2.0 * s));
        case Variant::tabulated: {
            // fitted on a coarse grid
            double L = 1.0;
            const double hi = tab_t.back() / 2.0;
            for (double a = 1.0; a <= hi; a *= 1.7)
                for (double b = 1.0; b <= hi; b *= 1.7) {
                    const double num = weight_eval(*this, a + b);
                    const double den = weight_eval(*this, a) + weight_eval(*this, b) + 1.0;
                    L = std::max(L, num / den);
                }
            return L;
        }
    }
    return 1.0;
}

double weight_eval(const WeightSpec& spec, double t) {
    if (t < 0) throw std::domain_error("weight_eval: requires t >= 0");
    switch (spec.variant) {
        case WeightSpec::Variant::zero:
            return 0.0;
        case WeightSpec::Variant::log_power:
            return std::pow(std::log1p(t), 1.0 / (1.0 - 2.0 * spec.s));
        case WeightSpec::Variant::tabulated: {
            if (t <= spec.tab_t.front()) return spec.tab_w.front();
            if (t > spec.tab_t.back())
                throw CoverageError("weight_eval: tabulated weight queried beyond its range");
            const auto it = std::upper_bound(spec.tab_t.begin(), spec.tab_t.end(), t);
            const size_t i = static_cast<size_t>(it - spec.tab_t.begin()) - 1;
            const double u = (t - spec.tab_t[i]) / (spec.tab_t[i + 1] - spec.tab_t[i]);
            return (1.0 - u) * spec.tab_w[i] + u * spec.tab_w[i + 1];
        }
    }
    return 0.0;
}

double scaled_weight(const WeightSpec& spec, double t) {
    return spec.lambda * weight_eval(spec, spec.c * t);
}

// ------------------------------------------------------------- conditions

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<size_t>(i)] =
            lo * std::pow(hi / lo, i / static_cast<double>(n - 1));
    return g;
}

// Simpson panels of int_a^b w(ts) s^{-1-sigma} ds on a log-spaced mesh.
double tail_integral(const WeightSpec& spec, double t_scale, double sigma, double a, double b,
                     int panels) {
    double total = 0.0;
    const double ratio = std::pow(b / a, 1.0 / panels);
    double lo = a;
    for (int p = 0; p < panels; ++p) {
        const double hi = lo * ratio;
        const double mid = 0.5 * (lo + hi);
        auto f = [&](double s) { return weight_eval(spec, t_scale * s) * std::pow(s, -1.0 - sigma); };
        total += (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
        lo = hi;
    }
    return total;
}

}  // namespace

ConditionReport check_weight_conditions(const WeightSpec& spec, double sigma, double grid_max,
                                        int grid_points) {
    if (!(sigma > 0)) throw std::domain_error("check_weight_conditions: requires sigma > 0");
    if (grid_max < 1e6)
        throw std::domain_error("check_weight_conditions: grid must cover [0, 1e6]");
    if (spec.variant == WeightSpec::Variant::tabulated && spec.tab_t.back() < grid_max)
        throw CoverageError("check_weight_conditions: tabulated range below grid_max");

    ConditionReport rep;
    rep.sigma = sigma;
    const auto grid = log_grid(1e-2, grid_max, grid_points);

    // (alpha): fit the smallest L on pair samples; fails only if the ratio
    // keeps growing at the top of the grid.
    {
        double L = 0.0, top_L = 0.0;
        double worst = 0.0;
        for (size_t i = 0; i < grid.size(); i += 6)
            for (size_t j = i; j < grid.size(); j += 6) {
                const double a = grid[i], b = grid[j];
                if (a + b > grid_max) continue;
                const double r = weight_eval(spec, a + b) /
                                 (weight_eval(spec, a) + weight_eval(spec, b) + 1.0);
                if (r > L) {
                    L = r;
                    worst = a;
                }
                if (a > grid_max / 100 || b > grid_max / 100) top_L = std::max(top_L, r);
            }
        rep.alpha.witness = std::max(L, 1.0);
        rep.alpha.holds = top_L <= 1.05 * std::max(L, 1.0) + 1e-12;
        rep.alpha.counterexample = rep.alpha.holds ? 0.0 : worst;
    }

    // (beta_sigma): adaptive tail integration on doubling log segments.
    {
        double total = 0.0, seg = 0.0, prev_seg = 0.0;
        double lo = 1.0;
        bool converged = false;
        double hi_reached = 1.0;
        const double seg_cap =
            spec.variant == WeightSpec::Variant::tabulated ? spec.tab_t.back() : 1e12;
        for (int k = 0; k < 40 && lo < seg_cap; ++k) {
            const double hi = std::min(lo * 4.0, seg_cap);
            prev_seg = seg;
            seg = tail_integral(spec, 1.0, sigma, lo, hi, 64);
            total += seg;
            hi_reached = hi;
            if (k > 2 && seg < 1e-7 * std::max(total, 1e-300) ){
                converged = true;
                break;
            }
            lo = hi;
        }
        // geometric decay of segments is the convergence signal
        if (!converged && prev_seg > 0.0 && seg < 0.55 * prev_seg) {
            total += seg * (seg / prev_seg) / (1.0 - seg / prev_seg);
            converged = true;
        }
        rep.beta_sigma.holds = converged;
        rep.beta_sigma.witness = total;
        rep.beta_sigma.counterexample = converged ? 0.0 : hi_reached;
        if (!converged) rep.beta_sigma.note = "tail segments do not decay";
    }

    // (beta*_sigma): with L from (alpha), report the fitted C on a t-grid;
    // "numerically consistent" only - the inequality is for all t.
    {
        const double L = rep.alpha.witness;
        double C = 0.0, C_top = 0.0, worst = 0.0;
        bool finite_all = rep.beta_sigma.holds;
        if (finite_all) {
            for (size_t i = 0; i < grid.size(); i += 4) {
                const double t = grid[i];
                double lhs = 0.0;
                double lo = 1.0, seg = 0.0, prev = 0.0;
                for (int k = 0; k < 36; ++k) {
                    const double hi = lo * 4.0;
                    if (spec.variant == WeightSpec::Variant::tabulated &&
                        t * hi > spec.tab_t.back())
                        break;
                    prev = seg;
                    seg = tail_integral(spec, t, sigma, lo, hi, 32);
                    lhs += seg;
                    if (k > 2 && seg < 1e-7 * std::max(lhs, 1e-300)) break;
                    lo = hi;
                }
                (void)prev;
                const double over = lhs - M_PI_2 * (L - 1.0) * weight_eval(spec, t);
                if (over > C) {
                    C = over;
                    worst = t;
                }
                if (t > grid_max / 100) C_top = std::max(C_top, over);
            }
        }
        rep.beta_star.holds = finite_all && C_top <= std::max(1.10 * C, C + 1e-9);
        rep.beta_star.witness = C;
        rep.beta_star.counterexample = rep.beta_star.holds ? 0.0 : worst;
        rep.beta_star.note = "numerically consistent on the sampled grid";
    }

    // (gamma): log t = o(w(t)) - the ratio must decay toward the grid top.
    {
        double mid_ratio = 0.0, top_ratio = 0.0, worst = 0.0;
        for (size_t i = 0; i < grid.size(); ++i) {
            const double t = grid[i];
            if (t < 100.0) continue;
            const double wv = weight_eval(spec, t);
            const double r = wv > 0 ? std::log(t) / wv : std::numeric_limits<double>::infinity();
            if (t < grid_max / 100) {
                mid_ratio = std::max(mid_ratio, r);
            } else if (r > top_ratio) {
                top_ratio = r;
                worst = t;
            }
        }
        rep.gamma.holds = std::isfinite(top_ratio) && top_ratio < 0.8 * mid_ratio;
        rep.gamma.witness = top_ratio;
        rep.gamma.counterexample = rep.gamma.holds ? 0.0 : worst;
    }

    // (delta): second differences of phi(t) = w(e^t).
    {
        const double t_hi = std::log(grid_max);
        const int n = 400;
        const double h = (t_hi + 4.0) / n;
        bool ok = true;
        double worst = 0.0, min_dd = 0.0;
        for (int i = 1; i < n; ++i) {
            const double t = -4.0 + i * h;
            const double dd = weight_eval(spec, std::exp(t - h)) -
                              2.0 * weight_eval(spec, std::exp(t)) +
                              weight_eval(spec, std::exp(t + h));
            const double scale = std::max(1.0, std::abs(weight_eval(spec, std::exp(t))));
            if (dd < -1e-8 * scale) {
                ok = false;
                if (dd < min_dd) {
                    min_dd = dd;
                    worst = std::exp(t);
                }
            }
        }
        rep.delta.holds = ok;
        rep.delta.witness = min_dd;
        rep.delta.counterexample = worst;
    }
    return rep;
}

// -------------------------------------------------------- Young conjugate

YoungConjugate young_conjugate_ex(const std::function<double(double)>& phi, double v,
                                  double bracket_hint) {
    if (v < 0) throw std::domain_error("young_conjugate: requires v >= 0");
    auto g = [&](double u) { return u * v - phi(u); };

    double hi = bracket_hint > 0 ? bracket_hint : 1.0;
    if (bracket_hint <= 0) {
        while (hi < 1e9 && g(hi * 2.0) > g(hi)) hi *= 2.0;
        hi *= 2.0;
    }

    // golden-section maximization of the concave objective on [0, hi]
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double g1 = g(x1), g2 = g(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
        if (g1 < g2) {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + gr * (b - a);
            g2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - gr * (b - a);
            g1 = g(x1);
        }
    }
    YoungConjugate out;
    out.maximizer = 0.5 * (a + b);
    out.value = std::max(g(out.maximizer), g(0.0));
    out.boundary_truncated = out.maximizer > 0.999 * hi && bracket_hint > 0;
    return out;
}

double young_conjugate(const std::function<double(double)>& phi, double v) {
    return young_conjugate_ex(phi, v).value;
}

std::function<double(double)> phi_of(const WeightSpec& spec) {
    return [spec](double t) { return weight_eval(spec, std::exp(t)); };
}

double weight_conjugate(const WeightSpec& spec, double v) {
    if (spec.variant == WeightSpec::Variant::zero) return 0.0;
    double hint = 0.0;
    if (spec.variant == WeightSpec::Variant::log_power) {
        // critical point of u v - u^{1/(1-2s)} grows like v^{(1-2s)/(2s)}
        hint = std::max(50.0, 5.0 * std::pow(v, (1.0 - 2.0 * spec.s) / (2.0 * spec.s)));
    }
    return young_conjugate_ex(phi_of(spec), v, hint).value;
}

AuxWeightValues aux_weight_functions(const WeightSpec& w, double a, double c, double p, double q,
                                     double t, double v) {
    if (!(a > 0) || a > 2.0)
        throw std::domain_error("aux_weight_functions: psi branch requires 0 < a <= 2");
    if (p > 1.0) throw std::domain_error("aux_weight_functions: zeta branch requires p <= 1");
    if (!(c > 0) || !(q > 0))
        throw std::domain_error("aux_weight_functions: scales c, q must be positive");
    const auto phi = phi_of(w);
    const double A_psi = 0.5 / (c * c) * std::sqrt((2.0 - a) / (2.0 + a));
    const double A_zeta = 0.25 / (q * q) * std::sqrt((1.0 - p) / (1.0 + p));
    const double A_cap = a <= 1.0 ? 0.5 / (c * c) * std::sqrt((1.0 - a) / (1.0 + a)) : -1.0;

    auto make = [&](double A) {
        return [A, &phi](double u) { return A * std::exp(2.0 * u) + phi(u); };
    };
    AuxWeightValues out{};
    out.psi = A_psi * std::exp(2.0 * t) + phi(t);
    out.zeta = A_zeta * std::exp(2.0 * t) + phi(t);
    out.psi_conj = young_conjugate_ex(make(A_psi), v).value;
    out.zeta_conj = young_conjugate_ex(make(A_zeta), v).value;
    if (A_cap >= 0.0) {
        out.cap_psi = A_cap * std::exp(2.0 * t) + phi(t);
        out.cap_psi_conj = young_conjugate_ex(make(A_cap), v).value;
    } else {
        out.cap_psi = std::numeric_limits<double>::quiet_NaN();
        out.cap_psi_conj = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

double lambda_s(double s) {
    return 0.5 * (1.0 - 2.0 * s) * std::pow(s, 2.0 * s / (1.0 - 2.0 * s));
}

double logp_sqrt2(double x) { return std::log1p(std::sqrt(2.0) * std::abs(x)); }

Eq1Values eq1_quantities(double s, double y, double x) {
    if (!(s > 0) || !(s < 0.5)) throw std::domain_error("eq1_quantities: requires 0 < s < 1/2");
    if (!(y > 0)) throw std::domain_error("eq1_quantities: requires y > 0");
    const double e = 2.0 * s / (1.0 - 2.0 * s);
    const double lp = logp_sqrt2(x);
    const double rad = 1.0 - 2.0 / (x * x) * std::pow(2.0 * s / y * lp, e);
    if (rad <= 0.0) {
        // locate the smallest admissible |x| for the message
        double lo = std::abs(x), hi = std::max(4.0, 2.0 * std::abs(x));
        auto f = [&](double t) {
            return 1.0 - 2.0 / (t * t) * std::pow(2.0 * s / y * logp_sqrt2(t), e);
        };
        while (f(hi) <= 0 && hi < 1e9) hi *= 2.0;
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            (f(mid) <= 0 ? lo : hi) = mid;
        }
        throw std::domain_error("eq1_quantities: negative radicand; requires |x| > " +
                                std::to_string(hi));
    }
    Eq1Values out;
    out.P = std::sqrt(rad);
    out.L = (1.0 - 2.0 * s) * std::pow(2.0 * s / y, e) * std::pow(lp, 1.0 / (1.0 - 2.0 * s));
    out.lambda_s = lambda_s(s);
    return out;
}

}  // namespace hardyspec::weights
