#include "hardyspec/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "hardyspec/errors.hpp"
#include "hardyspec/specfun.hpp"

namespace hardyspec::transforms {

namespace {

// int P(xi) e^{-a xi^2/2} e^{-xi^2/2} e^{z xi} dxi on n nodes, log-safe in
// the real part of z.
LogComplex factor_bargmann_integral(const GaussPolyFactor& g, std::complex<double> z, int n) {
    const quad::QuadratureRule& rule = quad::hermite_rule_internal(n);
    const double sigma = std::sqrt(2.0 / (g.decay + 1.0));
    ComplexLogSum acc;
    for (int i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[static_cast<size_t>(i)];
        const double x = sigma * u;
        const std::complex<double> pv = g.poly_eval(x);
        if (pv == 0.0) continue;
        const double lw = rule.log_weights[static_cast<size_t>(i)] + z.real() * x;
        const double phase = z.imag() * x;
        acc.add(LogComplex::from_value(pv) * LogComplex::from_polar_log(lw, phase));
    }
    LogComplex out = acc.result();
    return out * LogScaled(1, std::log(sigma));
}

// generic 1-D version for series-type f
LogComplex series_bargmann_integral(const TestFunction& f, std::complex<double> z, int n) {
    const quad::QuadratureRule& rule = quad::hermite_rule_internal(n);
    ComplexLogSum acc;
    for (int i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[static_cast<size_t>(i)];
        const LogComplex fv = f.eval_log({u});
        if (fv.is_zero()) continue;
        const double lw = rule.log_weights[static_cast<size_t>(i)] + u * u -
                          0.5 * u * u + z.real() * u;
        acc.add(fv * LogComplex::from_polar_log(lw, z.imag() * u));
    }
    return acc.result();
}

std::once_flag calib_flag;
double calib_k1 = 0.0;

// One-time normalization calibration: K is fixed by requiring the constant
// Taylor coefficient of B h_0 to be pi^{-1/4} (coefficient relation at
// alpha = 0); the h_1 relation is verified in the self-test suite.
void calibrate() {
    const quad::QuadratureRule& rule = quad::hermite_rule_internal(160);
    double integral = 0.0;  // int h_0(xi) e^{-xi^2/2} dxi, exact weight match
    const double h0 = std::exp(-0.25 * std::log(M_PI));
    for (int i = 0; i < rule.size(); ++i) integral += rule.weights[static_cast<size_t>(i)] * h0;
    calib_k1 = std::exp(-0.25 * std::log(M_PI)) / integral;
}

}  // namespace

double bargmann_normalization(int dim) {
    std::call_once(calib_flag, calibrate);
    return std::pow(calib_k1, dim);
}

LogComplex bargmann_eval(const TestFunction& f, const std::vector<std::complex<double>>& z,
                         const quad::TransformOptions& opts) {
    if (static_cast<int>(z.size()) != f.dim())
        throw std::domain_error("bargmann_eval: z dimension mismatch");
    if (f.radial()) throw std::domain_error("bargmann_eval: radial functions use the Fock transform");
    for (auto zj : z)
        if (std::abs(zj) > 40.0)
            throw std::domain_error("bargmann_eval: requires |z_j| <= 40");

    std::complex<double> z2 = 0.0;
    for (auto zj : z) z2 += zj * zj;
    const LogComplex prefactor =
        LogComplex::from_polar_log(-0.25 * z2.real() + std::log(bargmann_normalization(f.dim())),
                                   -0.25 * z2.imag());

    auto eval_all = [&](int n) -> LogComplex {
        ComplexLogSum acc;
        if (f.variant() == TestFunction::Variant::gauss_poly) {
            for (const ProductTerm& t : f.terms()) {
                LogComplex prod = LogComplex::from_value(t.coef);
                for (size_t j = 0; j < t.factors.size(); ++j)
                    prod = prod * factor_bargmann_integral(t.factors[j], z[j], n);
                acc.add(prod);
            }
        } else {
            if (f.dim() != 1)
                throw std::domain_error("bargmann_eval: series variants supported in d = 1");
            acc.add(series_bargmann_integral(f, z[0], n));
        }
        return acc.result();
    };
    const LogComplex integral = quad::adaptive_nodes_log(eval_all, opts, "bargmann_eval");
    return prefactor * integral;
}

std::vector<std::complex<double>> taylor_coeffs(
    const std::function<std::complex<double>(std::complex<double>)>& g, int n_max, double r) {
    if (n_max < 0 || n_max > 128) throw std::domain_error("taylor_coeffs: n_max must be in [0, 128]");
    if (!(r > 0)) throw std::domain_error("taylor_coeffs: radius must be positive");
    if (std::abs(n_max * std::log(r)) > 600.0)
        throw std::range_error(
            "taylor_coeffs: r^n would leave double range; choose a radius closer to 1");
    const int m = std::max(256, 8 * n_max);
    std::vector<std::complex<double>> samples(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j)
        samples[static_cast<size_t>(j)] = g(std::polar(r, 2.0 * M_PI * j / m));
    std::vector<std::complex<double>> out(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < m; ++j)
            acc += samples[static_cast<size_t>(j)] * std::polar(1.0, -2.0 * M_PI * n * j / m);
        out[static_cast<size_t>(n)] = acc / (static_cast<double>(m) * std::pow(r, n));
    }
    return out;
}

namespace {

// 1-D STFT kernel integral int e^{i x xi} f(xi + y) conj(g(xi)) dxi for a
// pair of Gaussian-poly factors.
std::complex<double> stft_factor_integral(const GaussPolyFactor& f, const GaussPolyFactor& g,
                                          double x, double y, int n) {
    const quad::QuadratureRule& rule = quad::hermite_rule_internal(n);
    const double a = f.decay, b = g.decay;
    const double center = -a * y / (a + b);
    const double sigma = std::sqrt(2.0 / (a + b));
    ComplexLogSum acc;
    for (int i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[static_cast<size_t>(i)];
        const double xi = center + sigma * u;
        const std::complex<double> pv = f.poly_eval(xi + y) * std::conj(g.poly_eval(xi));
        if (pv == 0.0) continue;
        const double expo = -0.5 * a * (xi + y) * (xi + y) - 0.5 * b * xi * xi + u * u +
                            rule.log_weights[static_cast<size_t>(i)];
        acc.add(LogComplex::from_value(pv) * LogComplex::from_polar_log(expo, x * xi));
    }
    return (acc.result() * LogScaled(1, std::log(sigma))).value();
}

// generic 1-D integral when either side is not a Gaussian-poly product
std::complex<double> stft_generic_integral(const TestFunction& f, const TestFunction& g,
                                           double x, double y, int n) {
    const quad::QuadratureRule& rule = quad::hermite_rule_internal(n);
    const double a = f.min_decay(), b = g.min_decay();
    const double center = -a * y / (a + b);
    const double sigma = std::sqrt(2.0 / (a + b));
    ComplexLogSum acc;
    for (int i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[static_cast<size_t>(i)];
        const double xi = center + sigma * u;
        const LogComplex fv = f.eval_log({xi + y});
        if (fv.is_zero()) continue;
        LogComplex gv = g.eval_log({xi});
        if (gv.is_zero()) continue;
        gv.im = -gv.im;  // conjugate
        const double boost = u * u + rule.log_weights[static_cast<size_t>(i)];
        acc.add(fv * gv * LogComplex::from_polar_log(boost, x * xi));
    }
    return (acc.result() * LogScaled(1, std::log(sigma))).value();
}

}  // namespace

std::complex<double> stft_eval(const TestFunction& f, const TestFunction& g,
                               const std::vector<std::complex<double>>& z,
                               const quad::TransformOptions& opts) {
    const int d = f.dim();
    if (g.dim() != d || static_cast<int>(z.size()) != d)
        throw std::domain_error("stft_eval: dimension mismatch");
    if (d > 3) throw std::domain_error("stft_eval: d <= 3");

    double xdoty = 0.0;
    for (auto zj : z) xdoty += zj.real() * zj.imag();
    const std::complex<double> outer_phase = std::polar(1.0, 0.5 * xdoty);
    const double norm = std::pow(2.0 * M_PI, -0.5 * d);

    const bool both_products = f.variant() == TestFunction::Variant::gauss_poly &&
                               g.variant() == TestFunction::Variant::gauss_poly;
    if (both_products) {
        std::complex<double> total = 0.0;
        for (const ProductTerm& tf : f.terms())
            for (const ProductTerm& tg : g.terms()) {
                std::complex<double> prod = tf.coef * std::conj(tg.coef);
                for (int j = 0; j < d && prod != 0.0; ++j) {
                    const auto& ff = tf.factors[static_cast<size_t>(j)];
                    const auto& gg = tg.factors[static_cast<size_t>(j)];
                    prod *= quad::adaptive_nodes(
                        [&](int n) {
                            return stft_factor_integral(ff, gg, z[static_cast<size_t>(j)].real(),
                                                        z[static_cast<size_t>(j)].imag(), n);
                        },
                        opts, "stft_eval");
                }
                total += prod;
            }
        return norm * outer_phase * total;
    }
    if (d != 1) throw std::domain_error("stft_eval: non-product variants supported in d = 1");
    const std::complex<double> integral = quad::adaptive_nodes(
        [&](int n) { return stft_generic_integral(f, g, z[0].real(), z[0].imag(), n); }, opts,
        "stft_eval");
    return norm * outer_phase * integral;
}

SampledField sample_stft_field(const TestFunction& f, double extent, int points_per_axis,
                               const quad::TransformOptions& opts) {
    if (f.dim() != 1)
        throw std::domain_error("sample_stft_field: implemented for d = 1 fields");
    SampledField field;
    field.dim = 1;
    std::vector<double> axis(static_cast<size_t>(points_per_axis));
    for (int i = 0; i < points_per_axis; ++i)
        axis[static_cast<size_t>(i)] = -extent + 2.0 * extent * i / (points_per_axis - 1);
    field.axes = {axis, axis};
    field.values.resize(axis.size() * axis.size());
    for (size_t ix = 0; ix < axis.size(); ++ix)
        for (size_t iy = 0; iy < axis.size(); ++iy)
            field.values[ix * axis.size() + iy] =
                stft_eval(f, f, {std::complex<double>(axis[ix], axis[iy])}, opts);
    return field;
}

std::complex<double> symplectic_ft_eval(const SampledField& field,
                                        const std::vector<std::complex<double>>& z) {
    if (static_cast<int>(z.size()) != field.dim)
        throw std::domain_error("symplectic_ft_eval: z dimension mismatch");
    if (static_cast<int>(field.axes.size()) != 2 * field.dim)
        throw std::domain_error("symplectic_ft_eval: field must carry 2d axes");
    size_t total = 1;
    for (const auto& ax : field.axes) total *= ax.size();
    if (total != field.values.size())
        throw std::domain_error("symplectic_ft_eval: axis/value size mismatch");

    // coverage: the integrand must have died out at the grid boundary
    double vmax = 0.0;
    for (const auto& v : field.values) vmax = std::max(vmax, std::abs(v));
    const int d = field.dim;
    std::vector<size_t> radix(field.axes.size());
    for (size_t a = 0; a < field.axes.size(); ++a) radix[a] = field.axes[a].size();
    double boundary_max = 0.0;
    for (size_t flat = 0; flat < total; ++flat) {
        size_t rem = flat;
        bool on_boundary = false;
        for (size_t a = field.axes.size(); a-- > 0;) {
            const size_t i = rem % radix[a];
            rem /= radix[a];
            if (i == 0 || i + 1 == radix[a]) on_boundary = true;
        }
        if (on_boundary) boundary_max = std::max(boundary_max, std::abs(field.values[flat]));
    }
    if (boundary_max > 1e-6 * vmax)
        throw CoverageError("symplectic_ft_eval: field does not cover the effective support");

    std::complex<double> acc = 0.0;
    for (size_t flat = 0; flat < total; ++flat) {
        size_t rem = flat;
        double weight = 1.0;
        double pairing = 0.0;  // Im(z . conj(zeta))
        std::vector<double> coord(field.axes.size());
        for (size_t a = field.axes.size(); a-- > 0;) {
            const size_t i = rem % radix[a];
            rem /= radix[a];
            const auto& ax = field.axes[a];
            coord[a] = ax[i];
            double h;
            if (i == 0)
                h = 0.5 * (ax[1] - ax[0]);
            else if (i + 1 == radix[a])
                h = 0.5 * (ax[i] - ax[i - 1]);
            else
                h = 0.5 * (ax[i + 1] - ax[i - 1]);
            weight *= h;
        }
        for (int j = 0; j < d; ++j) {
            const double zx = coord[static_cast<size_t>(j)];
            const double zy = coord[static_cast<size_t>(j) + static_cast<size_t>(d)];
            pairing += z[static_cast<size_t>(j)].imag() * zx - z[static_cast<size_t>(j)].real() * zy;
        }
        acc += weight * std::polar(1.0, -0.5 * pairing) * field.values[flat];
    }
    return acc;
}

LogComplex fock_transform_eval(const TestFunction& f, double nu, std::complex<double> z,
                               const quad::TransformOptions& opts) {
    if (!(nu > -0.5)) throw std::domain_error("fock_transform_eval: requires nu > -1/2");
    if (!f.radial()) throw std::domain_error("fock_transform_eval: requires a radial function");
    if (std::abs(z) > 20.0) throw std::domain_error("fock_transform_eval: requires |z| <= 20");

    const double p = f.min_decay();
    const double tau = 2.0 / (p + 1.0);
    const std::complex<double> iz(-z.imag(), z.real());
    auto eval = [&](int n) -> LogComplex {
        const quad::QuadratureRule& rule = quad::laguerre_rule_internal(n, nu);
        ComplexLogSum acc;
        for (int i = 0; i < rule.size(); ++i) {
            const double u = rule.nodes[static_cast<size_t>(i)];
            const double r = std::sqrt(tau * u);
            const LogComplex fv = f.eval_log({r});
            if (fv.is_zero()) continue;
            const LogComplex kernel = specfun::bessel_j_norm_log(nu, iz * r);
            if (kernel.is_zero()) continue;
            // e^{-r^2/2} transform kernel plus the e^{+u} weight compensation
            const LogScaled boost(1, rule.log_weights[static_cast<size_t>(i)] + u - 0.5 * tau * u);
            acc.add(fv * kernel * boost);
        }
        return acc.result() *
               LogScaled(1, (nu + 1.0) * std::log(tau) - (nu + 1.0) * std::log(2.0));
    };
    const LogComplex integral = quad::adaptive_nodes_log(eval, opts, "fock_transform_eval");
    const std::complex<double> z2 = z * z;
    return LogComplex::from_polar_log(-0.25 * z2.real(), -0.25 * z2.imag()) * integral;
}

double projection_norm_via_stft(const TestFunction& f, int k, int d,
                                const quad::TransformOptions& opts) {
    if (d != 1 && d != 2) throw std::domain_error("projection_norm_via_stft: d in {1, 2}");
    if (f.dim() != d) throw std::domain_error("projection_norm_via_stft: dimension mismatch");
    if (k < 0 || k > 8) throw std::domain_error("projection_norm_via_stft: k <= 8");

    const double a = f.min_decay();
    const double rate = 0.25 * std::min(a, 1.0 / a) + 0.25;  // per-axis Gaussian decay
    const double sigma = std::sqrt(1.0 / rate);

    auto eval = [&](int axis_nodes) -> LogComplex {
        const quad::QuadratureRule& rule = quad::hermite_rule_internal(axis_nodes);
        // cache V on the axis-pair grid per coordinate, per term pair
        const bool product = f.variant() == TestFunction::Variant::gauss_poly;
        const int nt = product ? static_cast<int>(f.terms().size()) : 1;
        const int np = rule.size();
        std::vector<std::vector<std::complex<double>>> vtab;  // [(t,t',j)][ix*np+iy]
        quad::TransformOptions inner = opts;
        inner.initial_nodes = 160;
        inner.max_nodes = 640;
        if (product) {
            vtab.assign(static_cast<size_t>(nt * nt * d),
                        std::vector<std::complex<double>>(static_cast<size_t>(np * np)));
            for (int t1 = 0; t1 < nt; ++t1)
                for (int t2 = 0; t2 < nt; ++t2)
                    for (int j = 0; j < d; ++j) {
                        auto& tab = vtab[static_cast<size_t>((t1 * nt + t2) * d + j)];
                        const auto& ff = f.terms()[static_cast<size_t>(t1)].factors[static_cast<size_t>(j)];
                        const auto& gg = f.terms()[static_cast<size_t>(t2)].factors[static_cast<size_t>(j)];
                        for (int ix = 0; ix < np; ++ix)
                            for (int iy = 0; iy < np; ++iy) {
                                const double zx = sigma * rule.nodes[static_cast<size_t>(ix)];
                                const double zy = sigma * rule.nodes[static_cast<size_t>(iy)];
                                tab[static_cast<size_t>(ix * np + iy)] = quad::adaptive_nodes(
                                    [&](int n) { return stft_factor_integral(ff, gg, zx, zy, n); },
                                    inner, "projection_norm_via_stft");
                            }
                    }
        }
        // tensor sweep over (x_1,y_1,..,x_d,y_d)
        ComplexLogSum acc;
        std::vector<int> idx(static_cast<size_t>(2 * d), 0);
        while (true) {
            double z2 = 0.0, wlog = 0.0, usq = 0.0, xdoty = 0.0;
            for (int j = 0; j < d; ++j) {
                const int ix = idx[static_cast<size_t>(2 * j)];
                const int iy = idx[static_cast<size_t>(2 * j + 1)];
                const double zx = sigma * rule.nodes[static_cast<size_t>(ix)];
                const double zy = sigma * rule.nodes[static_cast<size_t>(iy)];
                z2 += zx * zx + zy * zy;
                xdoty += zx * zy;
                wlog += rule.log_weights[static_cast<size_t>(ix)] +
                        rule.log_weights[static_cast<size_t>(iy)];
                usq += rule.nodes[static_cast<size_t>(ix)] * rule.nodes[static_cast<size_t>(ix)] +
                       rule.nodes[static_cast<size_t>(iy)] * rule.nodes[static_cast<size_t>(iy)];
            }
            // V(f,f)(z)
            std::complex<double> v = 0.0;
            if (product) {
                for (int t1 = 0; t1 < nt; ++t1)
                    for (int t2 = 0; t2 < nt; ++t2) {
                        std::complex<double> prod =
                            f.terms()[static_cast<size_t>(t1)].coef *
                            std::conj(f.terms()[static_cast<size_t>(t2)].coef);
                        for (int j = 0; j < d; ++j)
                            prod *= vtab[static_cast<size_t>((t1 * nt + t2) * d + j)]
                                        [static_cast<size_t>(idx[static_cast<size_t>(2 * j)] * np +
                                                             idx[static_cast<size_t>(2 * j + 1)])];
                        v += prod;
                    }
                v *= std::pow(2.0 * M_PI, -0.5 * d) * std::polar(1.0, 0.5 * xdoty);
            } else {
                std::vector<std::complex<double>> zv(static_cast<size_t>(d));
                for (int j = 0; j < d; ++j)
                    zv[static_cast<size_t>(j)] =
                        std::complex<double>(sigma * rule.nodes[static_cast<size_t>(idx[static_cast<size_t>(2 * j)])],
                                             sigma * rule.nodes[static_cast<size_t>(idx[static_cast<size_t>(2 * j + 1)])]);
                v = stft_eval(f, f, zv, inner);
            }
            if (v != 0.0) {
                const LogScaled phi = specfun::laguerre_psi_log(k, static_cast<double>(d - 1),
                                                                std::sqrt(0.5 * z2));
                if (!phi.is_zero())
                    acc.add(LogComplex::from_value(v) *
                            (phi * LogScaled(1, wlog + usq)));
            }
            int j = 0;
            for (; j < 2 * d; ++j) {
                if (++idx[static_cast<size_t>(j)] < np) break;
                idx[static_cast<size_t>(j)] = 0;
            }
            if (j == 2 * d) break;
        }
        return acc.result() * LogScaled(1, 2.0 * d * std::log(sigma));
    };

    quad::TransformOptions outer = opts;
    outer.initial_nodes = d == 1 ? 48 : 24;
    outer.max_nodes = d == 1 ? 192 : 96;
    const LogComplex raw = quad::adaptive_nodes_log(eval, outer, "projection_norm_via_stft");
    const double norm2 = (raw * LogScaled(1, -0.5 * d * std::log(2.0 * M_PI))).re.value();
    const double scale = std::abs(raw.value()) * std::pow(2.0 * M_PI, -0.5 * d);
    if (norm2 < -1e-8 * std::max(1.0, scale))
        throw std::runtime_error("projection_norm_via_stft: negative square norm, "
                                 "quadrature or normalization inconsistency");
    return std::sqrt(std::max(0.0, norm2));
}

}  // namespace hardyspec::transforms
