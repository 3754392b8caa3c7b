#include "hardyspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hardyspec/errors.hpp"
#include "hardyspec/specfun.hpp"

namespace hardyspec {

// ---------------------------------------------------------------- CoeffVector

CoeffVector::CoeffVector(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
    if (dim < 1 || dim > 3) throw std::domain_error("CoeffVector: dim must be 1..3");
    if (max_degree < 0 || max_degree > 256)
        throw std::domain_error("CoeffVector: max degree must be in [0, 256]");
    long long total = 1;
    for (int j = 0; j < dim; ++j) total *= (max_degree + 1);
    if (total > 8'000'000) throw std::domain_error("CoeffVector: index box too large");

    alphas_.reserve(static_cast<size_t>(total));
    std::vector<int> alpha(static_cast<size_t>(dim), 0);
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        for (int j = dim - 1; j >= 0; --j) {
            alpha[static_cast<size_t>(j)] = static_cast<int>(rem % (max_degree + 1));
            rem /= (max_degree + 1);
        }
        alphas_.push_back(alpha);
    }
    std::sort(alphas_.begin(), alphas_.end(), [](const auto& a, const auto& b) {
        const int ta = std::accumulate(a.begin(), a.end(), 0);
        const int tb = std::accumulate(b.begin(), b.end(), 0);
        if (ta != tb) return ta < tb;
        return a < b;
    });
    rank_table_.assign(static_cast<size_t>(total), 0);
    for (size_t r = 0; r < alphas_.size(); ++r)
        rank_table_[static_cast<size_t>(mixed_radix(alphas_[r]))] = static_cast<int>(r);
    values_.assign(static_cast<size_t>(total), {0.0, 0.0});
}

int CoeffVector::mixed_radix(const std::vector<int>& alpha) const {
    int idx = 0;
    for (int j = 0; j < dim_; ++j) {
        const int a = alpha[static_cast<size_t>(j)];
        if (a < 0 || a > max_degree_)
            throw std::domain_error("CoeffVector: multi-index outside the box");
        idx = idx * (max_degree_ + 1) + a;
    }
    return idx;
}

int CoeffVector::rank_of(const std::vector<int>& alpha) const {
    if (static_cast<int>(alpha.size()) != dim_)
        throw std::domain_error("CoeffVector: multi-index dimension mismatch");
    return rank_table_[static_cast<size_t>(mixed_radix(alpha))];
}

std::complex<double>& CoeffVector::at(const std::vector<int>& alpha) {
    return values_[static_cast<size_t>(rank_of(alpha))];
}

const std::complex<double>& CoeffVector::at(const std::vector<int>& alpha) const {
    return values_[static_cast<size_t>(rank_of(alpha))];
}

int CoeffVector::total_degree(int rank) const {
    const auto& a = alphas_[static_cast<size_t>(rank)];
    return std::accumulate(a.begin(), a.end(), 0);
}

double CoeffVector::norm() const {
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return std::sqrt(s);
}

std::complex<double> CoeffVector::coeff_1d(int n) const {
    if (dim_ != 1) throw std::domain_error("coeff_1d: vector is not one-dimensional");
    if (n < 0 || n > max_degree_) return {0.0, 0.0};
    return at({n});
}

void CoeffVector::set_coeff_1d(int n, std::complex<double> v) {
    if (dim_ != 1) throw std::domain_error("set_coeff_1d: vector is not one-dimensional");
    at({n}) = v;
}

namespace spectra {

namespace {

// All inner products <P(x) e^{-a x^2/2}, h_n>, n <= N, with one rule of m
// nodes: substitute x = sigma u, sigma^2 = 2/(a+1), so the joint Gaussian
// becomes the e^{-u^2} weight exactly and only polynomials remain.
std::vector<std::complex<double>> factor_inner_products(const GaussPolyFactor& g, int max_degree,
                                                        int m) {
    const quad::QuadratureRule& rule = quad::hermite_rule_internal(m);
    const double sigma = std::sqrt(2.0 / (g.decay + 1.0));
    std::vector<ComplexLogSum> acc(static_cast<size_t>(max_degree) + 1);
    for (int i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[static_cast<size_t>(i)];
        const double x = sigma * u;
        const std::complex<double> pv = g.poly_eval(x);
        if (pv == 0.0) continue;
        // residual Gaussian e^{(1 - (a+1) sigma^2/2) u^2} is identically 1
        const double base = rule.log_weights[static_cast<size_t>(i)];
        const auto poly_parts = specfun::hermite_poly_all_log(max_degree, x);
        const LogComplex pl = LogComplex::from_value(pv);
        for (int n = 0; n <= max_degree; ++n) {
            const LogScaled hn = poly_parts[static_cast<size_t>(n)];
            if (hn.is_zero()) continue;
            acc[static_cast<size_t>(n)].add(pl * (hn * LogScaled(1, base)));
        }
    }
    std::vector<std::complex<double>> out(static_cast<size_t>(max_degree) + 1);
    for (int n = 0; n <= max_degree; ++n)
        out[static_cast<size_t>(n)] = (acc[static_cast<size_t>(n)].result() *
                                       LogScaled(1, std::log(sigma)))
                                          .value();
    return out;
}

CoeffVector coeffs_from_products(const TestFunction& f, int max_degree, int order) {
    CoeffVector c(f.dim(), max_degree);
    for (const ProductTerm& t : f.terms()) {
        std::vector<std::vector<std::complex<double>>> per_coord;
        per_coord.reserve(t.factors.size());
        for (const auto& g : t.factors)
            per_coord.push_back(factor_inner_products(g, max_degree, order));
        for (int r = 0; r < c.size(); ++r) {
            const auto& alpha = c.alpha_of(r);
            std::complex<double> prod = t.coef;
            for (int j = 0; j < f.dim(); ++j)
                prod *= per_coord[static_cast<size_t>(j)][static_cast<size_t>(
                    alpha[static_cast<size_t>(j)])];
            c[r] += prod;
        }
    }
    return c;
}

CoeffVector coeffs_from_samples(const TestFunction& f, int max_degree) {
    const auto& g = f.sample_grid();
    const auto& v = f.sample_values();
    CoeffVector c(1, max_degree);
    for (size_t i = 0; i + 1 < g.size(); ++i) {
        const double h = g[i + 1] - g[i];
        const auto ha = specfun::hermite_all_log(max_degree, g[i]);
        const auto hb = specfun::hermite_all_log(max_degree, g[i + 1]);
        for (int n = 0; n <= max_degree; ++n) {
            c[c.rank_of({n})] += 0.5 * h *
                                 (v[i] * ha[static_cast<size_t>(n)].value() +
                                  v[i + 1] * hb[static_cast<size_t>(n)].value());
        }
    }
    return c;
}

double coeff_distance(const CoeffVector& a, const CoeffVector& b) {
    double s = 0.0;
    for (int r = 0; r < a.size(); ++r) s += std::norm(a[r] - b[r]);
    return std::sqrt(s);
}

// <f, h_n> for any pointwise-evaluable 1-D f with at least unit Gaussian
// decay: the e^{-u^2} rule applied to f(u) h_n(u) e^{+u^2}, all in log form.
CoeffVector coeffs_generic_1d(const TestFunction& f, int max_degree, int m) {
    const quad::QuadratureRule& rule = quad::hermite_rule_internal(m);
    std::vector<ComplexLogSum> acc(static_cast<size_t>(max_degree) + 1);
    for (int i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[static_cast<size_t>(i)];
        const LogComplex fv = f.eval_log({u});
        if (fv.is_zero()) continue;
        const auto hs = specfun::hermite_all_log(max_degree, u);
        const double base = rule.log_weights[static_cast<size_t>(i)] + u * u;
        for (int n = 0; n <= max_degree; ++n) {
            if (hs[static_cast<size_t>(n)].is_zero()) continue;
            acc[static_cast<size_t>(n)].add(fv *
                                            (hs[static_cast<size_t>(n)] * LogScaled(1, base)));
        }
    }
    CoeffVector c(1, max_degree);
    for (int n = 0; n <= max_degree; ++n)
        c.set_coeff_1d(n, acc[static_cast<size_t>(n)].result().value());
    return c;
}

}  // namespace

CoeffVector hermite_coeffs(const TestFunction& f, int max_degree, const CoeffOptions& opts) {
    if (max_degree < 0 || max_degree > 256)
        throw std::domain_error("hermite_coeffs: max degree must be in [0, 256]");
    if (f.radial()) throw std::domain_error("hermite_coeffs: radial test function");

    if (opts.force_quadrature && f.dim() == 1 &&
        (f.variant() == TestFunction::Variant::hermite_series ||
         f.variant() == TestFunction::Variant::coeff_rule)) {
        const int extra = f.series_coeffs().max_degree();
        const int order = std::max(2 * std::max(max_degree, extra) + opts.min_order_pad, 64);
        CoeffVector c1 = coeffs_generic_1d(f, max_degree, order);
        CoeffVector c2 = coeffs_generic_1d(f, max_degree, 2 * order);
        const double rel = coeff_distance(c1, c2) / std::max(c2.norm(), 1e-300);
        if (rel > opts.tol)
            throw AccuracyError("hermite_coeffs: doubled-order check failed", rel);
        return c2;
    }

    switch (f.variant()) {
        case TestFunction::Variant::hermite_series:
        case TestFunction::Variant::coeff_rule: {
            const CoeffVector src = f.series_coeffs();
            CoeffVector c(f.dim(), max_degree);
            for (int r = 0; r < c.size(); ++r) {
                const auto& alpha = c.alpha_of(r);
                bool inside = true;
                for (int v : alpha) inside = inside && v <= src.max_degree();
                if (inside) c[r] = src.at(alpha);
            }
            return c;
        }
        case TestFunction::Variant::gauss_poly: {
            int deg = 0;
            for (const auto& t : f.terms())
                for (const auto& g : t.factors) deg = std::max(deg, g.degree());
            const int order = std::max(2 * max_degree + opts.min_order_pad, 64) + deg;
            CoeffVector c1 = coeffs_from_products(f, max_degree, order);
            CoeffVector c2 = coeffs_from_products(f, max_degree, 2 * order);
            const double scale = std::max(c2.norm(), 1e-300);
            const double rel = coeff_distance(c1, c2) / scale;
            if (rel > opts.tol)
                throw AccuracyError("hermite_coeffs: doubled-order check failed", rel);
            return c2;
        }
        case TestFunction::Variant::sampled: {
            if (f.dim() != 1)
                throw std::domain_error("hermite_coeffs: sampled variant is 1-D only");
            return coeffs_from_samples(f, max_degree);
        }
        default:
            throw std::domain_error("hermite_coeffs: unsupported variant");
    }
}

CoeffVector laguerre_coeffs(const TestFunction& f, double nu, int max_degree,
                            const CoeffOptions& opts) {
    if (!(nu > -0.5)) throw std::domain_error("laguerre_coeffs: requires nu > -1/2");
    if (max_degree < 0 || max_degree > 256)
        throw std::domain_error("laguerre_coeffs: max degree must be in [0, 256]");
    if (!f.radial()) throw std::domain_error("laguerre_coeffs: requires a radial test function");

    const double p = f.min_decay();
    const double tau = 2.0 / (p + 1.0);
    auto compute = [&](int m) {
        const quad::QuadratureRule& rule = quad::laguerre_rule_internal(m, nu);
        std::vector<ComplexLogSum> acc(static_cast<size_t>(max_degree) + 1);
        for (int i = 0; i < rule.size(); ++i) {
            const double u = rule.nodes[static_cast<size_t>(i)];
            const double r = std::sqrt(tau * u);
            const LogComplex fv = f.eval_log({r});
            if (fv.is_zero()) continue;
            const auto psis = specfun::laguerre_psi_all_log(max_degree, nu, r);
            const double base = rule.log_weights[static_cast<size_t>(i)] + u;
            for (int k = 0; k <= max_degree; ++k) {
                const LogScaled pk = psis[static_cast<size_t>(k)];
                if (pk.is_zero()) continue;
                acc[static_cast<size_t>(k)].add(fv * (pk * LogScaled(1, base)));
            }
        }
        CoeffVector c(1, max_degree);
        const double front = (nu + 1.0) * std::log(tau) - std::log(2.0);
        for (int k = 0; k <= max_degree; ++k)
            c.set_coeff_1d(k,
                           (acc[static_cast<size_t>(k)].result() * LogScaled(1, front)).value());
        return c;
    };
    const int order = std::max(2 * max_degree + opts.min_order_pad, 200);
    CoeffVector c1 = compute(order);
    CoeffVector c2 = compute(2 * order);
    const double rel = coeff_distance(c1, c2) / std::max(c2.norm(), 1e-300);
    if (rel > opts.tol) throw AccuracyError("laguerre_coeffs: doubled-order check failed", rel);
    return c2;
}

Synthesis synthesize(const CoeffVector& c, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != c.dim())
        throw std::domain_error("synthesize: dimension mismatch");
    std::vector<std::vector<LogScaled>> h;
    h.reserve(static_cast<size_t>(c.dim()));
    for (int j = 0; j < c.dim(); ++j)
        h.push_back(specfun::hermite_all_log(c.max_degree(), x[static_cast<size_t>(j)]));
    ComplexLogSum acc;
    for (int r = 0; r < c.size(); ++r) {
        const std::complex<double> coef = c[r];
        if (coef == 0.0) continue;
        const auto& alpha = c.alpha_of(r);
        LogScaled prod = LogScaled::one();
        for (int j = 0; j < c.dim(); ++j)
            prod = prod * h[static_cast<size_t>(j)][static_cast<size_t>(
                       alpha[static_cast<size_t>(j)])];
        if (prod.is_zero()) continue;
        acc.add(LogComplex::from_value(coef) * prod);
    }
    return Synthesis{acc.result(), -std::numeric_limits<double>::infinity()};
}

Synthesis synthesize(const TestFunction& f, const std::vector<double>& x) {
    if (f.variant() == TestFunction::Variant::coeff_rule) {
        const CoeffVector c = f.series_coeffs();
        Synthesis out = synthesize(c, x);
        // tail majorant: sum_{alpha outside box} prod_j e^{-y alpha_j^{1/(2s)}} pi^{-d/4}
        const double pw = 1.0 / (2.0 * f.rule_s());
        double tail1 = 0.0, full = 0.0;
        for (int m = 0; m <= c.max_degree() + 600; ++m) {
            const double t = std::exp(-f.rule_y() * std::pow(m, pw));
            full += t;
            if (m > c.max_degree()) tail1 += t;
        }
        const double d = f.dim();
        out.log_tail_bound = std::log(std::max(tail1, 1e-300)) + std::log(d) +
                             (d - 1.0) * std::log(full) - 0.25 * d * std::log(M_PI);
        return out;
    }
    if (f.variant() == TestFunction::Variant::hermite_series)
        return synthesize(f.coeffs(), x);
    throw std::domain_error("synthesize: requires a Hermite-type test function");
}

std::vector<double> projection_norms(const TestFunction& f, int kmax, int dim,
                                     const CoeffOptions& opts) {
    if (dim != f.dim()) throw std::domain_error("projection_norms: dimension mismatch");
    if (kmax < 0 || (dim >= 2 && kmax > 64) || kmax > 256)
        throw std::domain_error("projection_norms: level out of range");
    const CoeffVector c = hermite_coeffs(f, kmax, opts);
    std::vector<double> sums(static_cast<size_t>(kmax) + 1, 0.0);
    for (int r = 0; r < c.size(); ++r) {
        const int k = c.total_degree(r);
        if (k <= kmax) sums[static_cast<size_t>(k)] += std::norm(c[r]);
    }
    for (auto& s : sums) s = std::sqrt(s);
    return sums;
}

double projection_norm(const TestFunction& f, int level, int dim, const CoeffOptions& opts) {
    return projection_norms(f, level, dim, opts)[static_cast<size_t>(level)];
}

}  // namespace spectra
}  // namespace hardyspec
