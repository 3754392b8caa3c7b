#include "hardyspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "hardyspec/errors.hpp"
#include "hardyspec/specfun.hpp"

namespace hardyspec::quad {

namespace {

double sq(double x) { return x * x; }

// Eigenvalues of a symmetric tridiagonal matrix, QL with implicit shifts
// (no eigenvector accumulation; weights come from Christoffel sums instead).
std::vector<double> tridiag_eigenvalues(std::vector<double> d, std::vector<double> e) {
    const int n = static_cast<int>(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw std::runtime_error("quadrature: tridiagonal QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

struct PolyEval {
    LogScaled value;       // p_n(x)
    LogScaled derivative;  // p_n'(x)
    double log_sum_sq;     // log sum_{k<n} p_k(x)^2 (Christoffel denominator)
};

// Orthonormal-polynomial recurrences in scaled arithmetic.  kind/nu as in
// QuadratureRule.
PolyEval orthonormal_eval(QuadratureRule::Kind kind, double nu, int n, double x) {
    double pm = 0.0, pc, shift = 0.0;
    if (kind == QuadratureRule::Kind::hermite) {
        pc = std::exp(-0.25 * std::log(M_PI));
    } else {
        pc = 1.0;
        shift = -0.5 * std::lgamma(nu + 1.0);
    }
    SignedLogSum sum_sq;
    sum_sq.add(1, 2.0 * (std::log(pc) + shift));
    double prev_log = 0.0;
    int prev_sign = 0;
    for (int k = 0; k < n; ++k) {
        double pn;
        if (kind == QuadratureRule::Kind::hermite) {
            pn = x * std::sqrt(2.0 / (k + 1)) * pc - std::sqrt(k / (k + 1.0)) * pm;
        } else {
            pn = ((2.0 * k + 1.0 + nu - x) * pc - std::sqrt(k * (k + nu)) * pm) /
                 std::sqrt((k + 1.0) * (k + 1.0 + nu));
        }
        pm = pc;
        pc = pn;
        const double m = std::max(std::abs(pm), std::abs(pc));
        if (m > 1e250 || (m > 0.0 && m < 1e-250)) {
            pm /= m;
            pc /= m;
            shift += std::log(m);
        }
        if (k < n - 1 && pc != 0.0) sum_sq.add(1, 2.0 * (std::log(std::abs(pc)) + shift));
        if (k == n - 1) {
            prev_sign = pm == 0.0 ? 0 : (pm > 0 ? 1 : -1);
            prev_log = pm == 0.0 ? 0.0 : std::log(std::abs(pm)) + shift;
        }
    }
    PolyEval out;
    out.value = pc == 0.0 ? LogScaled::zero()
                          : LogScaled(pc > 0 ? 1 : -1, std::log(std::abs(pc)) + shift);
    if (kind == QuadratureRule::Kind::hermite) {
        out.derivative = LogScaled(prev_sign, prev_log + 0.5 * std::log(2.0 * n));
    } else {
        // x l_n' = n l_n - sqrt(n(n+nu)) l_{n-1}
        SignedLogSum der;
        der.add(out.value * LogScaled::from_value(static_cast<double>(n)));
        der.add(LogScaled(-prev_sign, prev_log + 0.5 * std::log(n * (n + nu))));
        LogScaled num = der.result();
        out.derivative = num / LogScaled::from_value(x);
    }
    out.log_sum_sq = sum_sq.result().log_mag;
    return out;
}

std::unique_ptr<QuadratureRule> build_rule(QuadratureRule::Kind kind, double nu, int n) {
    std::vector<double> diag(static_cast<size_t>(n)), off;
    for (int k = 0; k < n; ++k)
        diag[static_cast<size_t>(k)] =
            kind == QuadratureRule::Kind::hermite ? 0.0 : 2.0 * k + nu + 1.0;
    for (int k = 1; k < n; ++k)
        off.push_back(kind == QuadratureRule::Kind::hermite ? std::sqrt(0.5 * k)
                                                            : std::sqrt(k * (k + nu)));
    std::vector<double> nodes = tridiag_eigenvalues(diag, off);

    if (kind == QuadratureRule::Kind::hermite) {
        // enforce exact symmetry about 0
        for (int i = 0; i < n / 2; ++i) {
            const double v = 0.5 * (nodes[static_cast<size_t>(n - 1 - i)] -
                                    nodes[static_cast<size_t>(i)]);
            nodes[static_cast<size_t>(n - 1 - i)] = v;
            nodes[static_cast<size_t>(i)] = -v;
        }
        if (n % 2 == 1) nodes[static_cast<size_t>(n / 2)] = 0.0;
    }

    auto rule = std::make_unique<QuadratureRule>();
    rule->kind = kind;
    rule->nu = kind == QuadratureRule::Kind::hermite ? 0.0 : nu;
    rule->nodes = std::move(nodes);
    rule->weights.resize(static_cast<size_t>(n));
    rule->log_weights.resize(static_cast<size_t>(n));

    const int half = kind == QuadratureRule::Kind::hermite ? (n + 1) / 2 : 0;
    for (int i = kind == QuadratureRule::Kind::hermite ? n - half : 0; i < n; ++i) {
        double& x = rule->nodes[static_cast<size_t>(i)];
        for (int it = 0; it < 2; ++it) {  // Newton polish
            const PolyEval pe = orthonormal_eval(kind, nu, n, x);
            if (pe.value.is_zero() || pe.derivative.is_zero()) break;
            const double step = pe.value.sign * pe.derivative.sign *
                                std::exp(pe.value.log_mag - pe.derivative.log_mag);
            if (!std::isfinite(step)) break;
            x -= step;
        }
        const PolyEval pe = orthonormal_eval(kind, nu, n, x);
        rule->log_weights[static_cast<size_t>(i)] = -pe.log_sum_sq;
    }
    if (kind == QuadratureRule::Kind::hermite) {
        for (int i = 0; i < n - half; ++i) {
            rule->nodes[static_cast<size_t>(i)] = -rule->nodes[static_cast<size_t>(n - 1 - i)];
            rule->log_weights[static_cast<size_t>(i)] =
                rule->log_weights[static_cast<size_t>(n - 1 - i)];
        }
    }
    for (int i = 0; i < n; ++i)
        rule->weights[static_cast<size_t>(i)] =
            std::exp(rule->log_weights[static_cast<size_t>(i)]);

    for (int i = 1; i < n; ++i)
        if (!(rule->nodes[static_cast<size_t>(i)] > rule->nodes[static_cast<size_t>(i - 1)]))
            throw std::runtime_error("quadrature: nodes not strictly increasing");
    return rule;
}

const QuadratureRule& cached_rule(QuadratureRule::Kind kind, double nu, int n) {
    static std::mutex mu;
    static std::map<std::pair<long long, int>, std::unique_ptr<QuadratureRule>> cache;
    long long key_nu = 0;
    static_assert(sizeof(long long) == sizeof(double));
    std::memcpy(&key_nu, &nu, sizeof(nu));
    if (kind == QuadratureRule::Kind::hermite) key_nu = -1;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{key_nu, n}];
    if (!slot) slot = build_rule(kind, nu, n);
    return *slot;
}

}  // namespace

const QuadratureRule& hermite_rule_internal(int n) {
    if (n < 1 || n > 4096) throw std::domain_error("gauss_hermite_rule: size out of range");
    return cached_rule(QuadratureRule::Kind::hermite, 0.0, n);
}

const QuadratureRule& laguerre_rule_internal(int n, double nu) {
    if (n < 1 || n > 4096) throw std::domain_error("gauss_laguerre_rule: size out of range");
    if (!(nu > -1.0)) throw std::domain_error("gauss_laguerre_rule: requires nu > -1");
    return cached_rule(QuadratureRule::Kind::generalized_laguerre, nu, n);
}

const QuadratureRule& gauss_hermite_rule(int n) {
    if (n < 1 || n > 1024) throw std::domain_error("gauss_hermite_rule: size must be in [1, 1024]");
    return hermite_rule_internal(n);
}

const QuadratureRule& gauss_laguerre_rule(int n, double nu) {
    if (n < 1 || n > 1024)
        throw std::domain_error("gauss_laguerre_rule: size must be in [1, 1024]");
    return laguerre_rule_internal(n, nu);
}

std::complex<double> adaptive_nodes(const std::function<std::complex<double>(int)>& eval,
                                    const TransformOptions& opts, const char* what) {
    std::complex<double> prev = eval(opts.initial_nodes);
    double achieved = std::numeric_limits<double>::infinity();
    for (int n = 2 * opts.initial_nodes; n <= opts.max_nodes; n *= 2) {
        const std::complex<double> cur = eval(n);
        achieved = std::abs(cur - prev);
        if (achieved <= opts.tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw AccuracyError(std::string(what) + ": node budget exhausted before tolerance", achieved);
}

LogComplex adaptive_nodes_log(const std::function<LogComplex(int)>& eval,
                              const TransformOptions& opts, const char* what) {
    LogComplex prev = eval(opts.initial_nodes);
    double achieved = std::numeric_limits<double>::infinity();
    for (int n = 2 * opts.initial_nodes; n <= opts.max_nodes; n *= 2) {
        const LogComplex cur = eval(n);
        SignedLogSum dre, dim;
        dre.add(cur.re);
        dre.add(-prev.re);
        dim.add(cur.im);
        dim.add(-prev.im);
        const LogComplex diff{dre.result(), dim.result()};
        achieved = diff.is_zero()
                       ? -std::numeric_limits<double>::infinity()
                       : diff.log_abs() -
                             std::max(cur.log_abs(), std::log(opts.scale_hint));
        if (achieved <= std::log(opts.tol)) return cur;
        prev = cur;
    }
    throw AccuracyError(std::string(what) + ": node budget exhausted before tolerance",
                        std::exp(achieved));
}

namespace {

// int P(x) e^{-a x^2/2} e^{-i xi x} dx by Gauss-Hermite after x = sigma u.
std::complex<double> factor_fourier_integral(const GaussPolyFactor& g, double xi, int n) {
    const QuadratureRule& rule = hermite_rule_internal(n);
    const double sigma = std::sqrt(2.0 / g.decay);
    std::complex<double> acc = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[static_cast<size_t>(i)];
        const double w = rule.weights[static_cast<size_t>(i)];
        if (w == 0.0) continue;
        const double x = sigma * u;
        acc += w * g.poly_eval(x) * std::polar(1.0, -xi * x);
    }
    return sigma * acc;
}

// Generic 1-D path for non-factored variants: integrand f(x) e^{-i xi x}
// against the e^{-x^2} rule with the compensation carried in log space.
std::complex<double> series_fourier_integral(const TestFunction& f, double xi, int n) {
    const QuadratureRule& rule = hermite_rule_internal(n);
    const double sigma = std::sqrt(2.0 / f.min_decay());
    ComplexLogSum acc;
    for (int i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[static_cast<size_t>(i)];
        const double x = sigma * u;
        const LogComplex fv = f.eval_log({x});
        if (fv.is_zero()) continue;
        const double boost = rule.log_weights[static_cast<size_t>(i)] + u * u;
        acc.add(fv * LogComplex::from_polar_log(boost, -xi * x));
    }
    LogComplex res = acc.result();
    return (res * LogScaled(1, std::log(sigma))).value();
}

}  // namespace

std::complex<double> fourier_transform_num(const TestFunction& f, const std::vector<double>& xi,
                                           const TransformOptions& opts) {
    if (static_cast<int>(xi.size()) != f.dim())
        throw std::domain_error("fourier_transform_num: xi dimension mismatch");
    if (f.radial())
        throw std::domain_error("fourier_transform_num: radial functions use hankel_transform_num");

    if (!opts.force_quadrature) {
        if (auto ft = f.fourier_closed_form()) return ft->eval(xi);
    }

    const double norm = std::pow(2.0 * M_PI, -0.5 * f.dim());
    switch (f.variant()) {
        case TestFunction::Variant::gauss_poly: {
            std::complex<double> total = 0.0;
            for (const ProductTerm& term : f.terms()) {
                std::complex<double> prod = term.coef;
                for (int j = 0; j < f.dim(); ++j) {
                    const GaussPolyFactor& g = term.factors[static_cast<size_t>(j)];
                    prod *= adaptive_nodes(
                        [&](int n) { return factor_fourier_integral(g, xi[static_cast<size_t>(j)], n); },
                        opts, "fourier_transform_num");
                }
                total += prod;
            }
            return norm * total;
        }
        case TestFunction::Variant::hermite_series:
        case TestFunction::Variant::coeff_rule: {
            if (f.dim() != 1)
                return f.fourier_closed_form()->eval(xi);  // tensorized closed form
            return norm * adaptive_nodes(
                              [&](int n) { return series_fourier_integral(f, xi[0], n); }, opts,
                              "fourier_transform_num");
        }
        case TestFunction::Variant::sampled: {
            // trapezoid on the supplied grid
            const auto& g = f.sample_grid();
            const auto& v = f.sample_values();
            if (g.size() < 2) throw CoverageError("fourier_transform_num: sampled grid too small");
            std::complex<double> acc = 0.0;
            for (size_t i = 0; i + 1 < g.size(); ++i) {
                const double h = g[i + 1] - g[i];
                acc += 0.5 * h *
                       (v[i] * std::polar(1.0, -xi[0] * g[i]) +
                        v[i + 1] * std::polar(1.0, -xi[0] * g[i + 1]));
            }
            return norm * acc;
        }
        default:
            throw std::domain_error("fourier_transform_num: unsupported variant");
    }
}

double hankel_transform_num(const TestFunction& f, double nu, double s,
                            const TransformOptions& opts) {
    if (!(nu > -0.5)) throw std::domain_error("hankel_transform_num: requires nu > -1/2");
    if (s < 0) throw std::domain_error("hankel_transform_num: requires s >= 0");
    if (!f.radial() || f.dim() != 1)
        throw std::domain_error("hankel_transform_num: requires a radial test function");

    const double p = f.min_decay();
    const double tau = 2.0 / p;  // f's Gaussian is the only decay of the integrand
    auto eval = [&](int n) -> LogComplex {
        const QuadratureRule& rule = laguerre_rule_internal(n, nu);
        SignedLogSum acc;
        for (int i = 0; i < rule.size(); ++i) {
            const double u = rule.nodes[static_cast<size_t>(i)];
            const double r = std::sqrt(tau * u);
            const LogComplex fv = f.eval_log({r});
            if (fv.re.is_zero()) continue;
            const LogScaled kernel = specfun::bessel_j_norm_log(nu, s * r).re;
            if (kernel.is_zero()) continue;
            // f contributes e^{-p tau u / 2} = e^{-u}, cancelling the
            // compensation exactly
            acc.add(fv.re * kernel *
                    LogScaled(1, rule.log_weights[static_cast<size_t>(i)] + u));
        }
        LogScaled v = acc.result() *
                      LogScaled(1, (nu + 1.0) * std::log(tau) - (nu + 1.0) * std::log(2.0));
        return LogComplex{v, LogScaled::zero()};
    };
    return adaptive_nodes_log(eval, opts, "hankel_transform_num").re.value();
}

double l2_norm_num(const TestFunction& f, double nu, const TransformOptions& opts) {
    if (f.radial()) {
        const double p = f.min_decay();
        const double tau = 1.0 / p;  // |f|^2 decays like e^{-p t}
        auto eval = [&](int n) -> LogComplex {
            const QuadratureRule& rule = laguerre_rule_internal(n, nu);
            SignedLogSum acc;
            for (int i = 0; i < rule.size(); ++i) {
                const double u = rule.nodes[static_cast<size_t>(i)];
                const double r = std::sqrt(tau * u);
                const LogComplex fv = f.eval_log({r});
                if (fv.is_zero()) continue;
                acc.add(1, 2.0 * fv.log_abs() + rule.log_weights[static_cast<size_t>(i)] + u);
            }
            return LogComplex{acc.result() * LogScaled(1, (nu + 1.0) * std::log(tau) - std::log(2.0)),
                              LogScaled::zero()};
        };
        return std::sqrt(adaptive_nodes_log(eval, opts, "l2_norm_num").re.value());
    }
    // line functions: tensorized e^{-x^2}-rule integration of |f|^2
    auto eval = [&](int n) -> LogComplex {
        const QuadratureRule& rule = hermite_rule_internal(n);
        const double sigma = std::sqrt(1.0 / f.min_decay());
        SignedLogSum acc;
        std::vector<int> idx(static_cast<size_t>(f.dim()), 0);
        const int total = static_cast<int>(std::pow(rule.size(), f.dim()));
        std::vector<double> x(static_cast<size_t>(f.dim()));
        for (int flat = 0; flat < total; ++flat) {
            int rem = flat;
            double wlog = 0.0, usq = 0.0;
            for (int j = 0; j < f.dim(); ++j) {
                const int i = rem % rule.size();
                rem /= rule.size();
                x[static_cast<size_t>(j)] = sigma * rule.nodes[static_cast<size_t>(i)];
                wlog += rule.log_weights[static_cast<size_t>(i)];
                usq += sq(rule.nodes[static_cast<size_t>(i)]);
            }
            const LogComplex fv = f.eval_log(x);
            if (fv.is_zero()) continue;
            acc.add(1, 2.0 * fv.log_abs() + wlog + usq);
        }
        (void)idx;
        return LogComplex{acc.result() * LogScaled(1, f.dim() * std::log(sigma)),
                          LogScaled::zero()};
    };
    TransformOptions o = opts;
    if (f.dim() >= 2) {
        o.initial_nodes = 60;
        o.max_nodes = 240;
    }
    return std::sqrt(adaptive_nodes_log(eval, o, "l2_norm_num").re.value());
}

}  // namespace hardyspec::quad
