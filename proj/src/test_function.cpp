#include "hardyspec/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardyspec/spectra.hpp"
#include "hardyspec/specfun.hpp"

namespace hardyspec {

std::complex<double> GaussPolyFactor::poly_eval(double x) const {
    std::complex<double> acc = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
    return acc;
}

LogComplex GaussPolyFactor::eval_log(double x) const {
    const std::complex<double> p = poly_eval(x);
    LogComplex out;
    const double g = -0.5 * decay * x * x;
    if (p.real() != 0.0)
        out.re = LogScaled(p.real() > 0 ? 1 : -1, std::log(std::abs(p.real())) + g);
    if (p.imag() != 0.0)
        out.im = LogScaled(p.imag() > 0 ? 1 : -1, std::log(std::abs(p.imag())) + g);
    return out;
}

TestFunction TestFunction::gauss_poly(double decay, std::vector<std::complex<double>> poly) {
    if (!(decay > 0)) throw std::domain_error("TestFunction: decay rate must be positive");
    TestFunction f;
    f.variant_ = Variant::gauss_poly;
    f.dim_ = 1;
    f.terms_ = {ProductTerm{{1.0, 0.0}, {GaussPolyFactor{decay, std::move(poly)}}}};
    return f;
}

TestFunction TestFunction::gauss(double decay, int dim) {
    if (!(decay > 0)) throw std::domain_error("TestFunction: decay rate must be positive");
    if (dim < 1 || dim > 3) throw std::domain_error("TestFunction: dim must be 1..3");
    TestFunction f;
    f.variant_ = Variant::gauss_poly;
    f.dim_ = dim;
    ProductTerm t;
    t.factors.assign(static_cast<size_t>(dim), GaussPolyFactor{decay, {{1.0, 0.0}}});
    f.terms_ = {t};
    return f;
}

TestFunction TestFunction::radial_gauss_poly(double decay, const std::vector<double>& poly_r2,
                                             int dim) {
    if (!(decay > 0)) throw std::domain_error("TestFunction: decay rate must be positive");
    if (dim < 1 || dim > 3) throw std::domain_error("TestFunction: dim must be 1..3");
    // expand (sum_m c_m |x|^{2m}) into coordinate-factored terms: |x|^{2m}
    // = sum over compositions m_1+..+m_d = m of multinomial * prod x_j^{2 m_j}
    TestFunction f;
    f.variant_ = Variant::gauss_poly;
    f.dim_ = dim;
    std::vector<ProductTerm> terms;
    std::vector<int> comp(static_cast<size_t>(dim), 0);
    auto add_term = [&](int m, double cm) {
        // iterate compositions of m into d parts
        std::fill(comp.begin(), comp.end(), 0);
        comp[0] = m;
        while (true) {
            double multinom = 1.0;
            int rem = m;
            for (int j = 0; j < dim; ++j) {
                double ch = 1.0;  // C(rem, comp[j])
                for (int i = 0; i < comp[static_cast<size_t>(j)]; ++i)
                    ch = ch * (rem - i) / (i + 1.0);
                multinom *= ch;
                rem -= comp[static_cast<size_t>(j)];
            }
            ProductTerm t;
            t.coef = cm * multinom;
            for (int j = 0; j < dim; ++j) {
                std::vector<std::complex<double>> p(static_cast<size_t>(2 * comp[static_cast<size_t>(j)]) + 1,
                                                    0.0);
                p.back() = 1.0;
                t.factors.push_back(GaussPolyFactor{decay, std::move(p)});
            }
            terms.push_back(std::move(t));
            // next composition
            int j = dim - 2;
            while (j >= 0 && comp[static_cast<size_t>(j)] == 0) --j;
            if (j < 0) break;
            --comp[static_cast<size_t>(j)];
            int tail = m;
            for (int i = 0; i <= j; ++i) tail -= comp[static_cast<size_t>(i)];
            comp[static_cast<size_t>(j) + 1] = tail;
            for (int i = j + 2; i < dim; ++i) comp[static_cast<size_t>(i)] = 0;
        }
    };
    for (int m = 0; m < static_cast<int>(poly_r2.size()); ++m)
        if (poly_r2[static_cast<size_t>(m)] != 0.0) add_term(m, poly_r2[static_cast<size_t>(m)]);
    f.terms_ = std::move(terms);
    return f;
}

TestFunction TestFunction::product(std::vector<ProductTerm> terms, int dim) {
    TestFunction f;
    f.variant_ = Variant::gauss_poly;
    f.dim_ = dim;
    for (const auto& t : terms)
        if (static_cast<int>(t.factors.size()) != dim)
            throw std::domain_error("TestFunction::product: factor count != dim");
    f.terms_ = std::move(terms);
    return f;
}

TestFunction TestFunction::hermite_series(CoeffVector coeffs) {
    TestFunction f;
    f.variant_ = Variant::hermite_series;
    f.dim_ = coeffs.dim();
    f.coeffs_ = std::move(coeffs);
    return f;
}

TestFunction TestFunction::coeff_rule(double s, double y, int dim) {
    if (!(s > 0) || s > 0.5) throw std::domain_error("coeff_rule: requires 0 < s <= 1/2");
    if (!(y > 0)) throw std::domain_error("coeff_rule: requires y > 0");
    if (dim < 1 || dim > 3) throw std::domain_error("coeff_rule: dim must be 1..3");
    TestFunction f;
    f.variant_ = Variant::coeff_rule;
    f.dim_ = dim;
    f.s_ = s;
    f.y_ = y;
    return f;
}

TestFunction TestFunction::sampled(std::vector<double> grid,
                                   std::vector<std::complex<double>> values) {
    if (grid.size() != values.size() || grid.size() < 2)
        throw std::domain_error("TestFunction::sampled: grid/value size mismatch");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::domain_error("TestFunction::sampled: grid must be increasing");
    TestFunction f;
    f.variant_ = Variant::sampled;
    f.dim_ = 1;
    f.grid_ = std::move(grid);
    f.samples_ = std::move(values);
    return f;
}

TestFunction TestFunction::radial_profile(double decay, std::vector<std::complex<double>> poly) {
    TestFunction f = gauss_poly(decay, std::move(poly));
    f.radial_ = true;
    return f;
}

TestFunction TestFunction::laguerre_psi(int k, double nu) {
    if (k < 0) throw std::domain_error("laguerre_psi: negative degree");
    if (!(nu > -0.5)) throw std::domain_error("laguerre_psi: requires nu > -1/2");
    TestFunction f;
    f.variant_ = Variant::laguerre_psi;
    f.dim_ = 1;
    f.radial_ = true;
    f.psi_k_ = k;
    f.psi_nu_ = nu;
    return f;
}

double TestFunction::min_decay() const {
    if (variant_ == Variant::gauss_poly) {
        double a = std::numeric_limits<double>::infinity();
        for (const auto& t : terms_)
            for (const auto& g : t.factors) a = std::min(a, g.decay);
        return a;
    }
    return 1.0;  // Hermite/Laguerre-type variants carry the unit Gaussian
}

LogComplex TestFunction::eval_log(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::domain_error("TestFunction::eval: dimension mismatch");
    switch (variant_) {
        case Variant::gauss_poly: {
            ComplexLogSum acc;
            for (const auto& t : terms_) {
                LogComplex prod = LogComplex::from_value(t.coef);
                for (size_t j = 0; j < t.factors.size(); ++j)
                    prod = prod * t.factors[j].eval_log(x[j]);
                acc.add(prod);
            }
            return acc.result();
        }
        case Variant::hermite_series:
            return spectra::synthesize(coeffs_, x).value;
        case Variant::coeff_rule:
            return spectra::synthesize(series_coeffs(), x).value;
        case Variant::sampled: {
            const double t = x[0];
            if (t < grid_.front() || t > grid_.back()) return LogComplex{};
            const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
            const size_t i = std::min(grid_.size() - 2,
                                      static_cast<size_t>(std::distance(grid_.begin(), it)) - 1);
            const double w = (t - grid_[i]) / (grid_[i + 1] - grid_[i]);
            return LogComplex::from_value((1.0 - w) * samples_[i] + w * samples_[i + 1]);
        }
        case Variant::laguerre_psi:
            return LogComplex{specfun::laguerre_psi_log(psi_k_, psi_nu_, x[0]),
                              LogScaled::zero()};
    }
    throw std::logic_error("TestFunction::eval_log: unreachable");
}

std::complex<double> TestFunction::eval(const std::vector<double>& x) const {
    return eval_log(x).value();
}

CoeffVector TestFunction::series_coeffs() const {
    if (variant_ == Variant::hermite_series) return coeffs_;
    if (variant_ != Variant::coeff_rule)
        throw std::domain_error("series_coeffs: only Hermite-type variants");
    // 1-D tail rule: stop once sum_{m>n} e^{-y m^{1/(2s)}} pi^{-1/4} drops
    // below 1e-14 of the accumulated coefficient mass; same cutoff reused
    // per coordinate in d > 1 (the rule factorizes).
    const double pow_exp = 1.0 / (2.0 * s_);
    double partial = 0.0;
    int n = 0;
    const double pif = std::exp(-0.25 * std::log(M_PI));
    for (;; ++n) {
        partial += std::exp(-y_ * std::pow(n, pow_exp));
        if (n < 2) continue;
        double tail = 0.0;
        for (int m = n + 1; m <= n + 400; ++m) {
            const double term = std::exp(-y_ * std::pow(m, pow_exp));
            tail += term;
            if (term < 1e-18 * std::max(tail, 1e-300)) break;
        }
        if (tail * pif < 1e-14 * partial * pif) break;
        if (n > 4000) break;
    }
    CoeffVector c(dim_, n);
    for (int r = 0; r < c.size(); ++r) {
        const auto& alpha = c.alpha_of(r);
        double lg = 0.0;
        for (int j = 0; j < dim_; ++j) lg -= y_ * std::pow(alpha[static_cast<size_t>(j)], pow_exp);
        c[r] = std::exp(lg);
    }
    return c;
}

namespace {

// symbolic (i d/dxi)^m applied to R(xi) e^{-b xi^2 / 2}
std::vector<std::complex<double>> apply_i_ddxi(const std::vector<std::complex<double>>& r,
                                               double b) {
    std::vector<std::complex<double>> out(r.size() + 1, 0.0);
    const std::complex<double> I(0.0, 1.0);
    for (size_t m = 0; m + 1 < r.size() + 1; ++m) {
        if (m + 1 < r.size()) out[m] += I * (static_cast<double>(m + 1) * r[m + 1]);  // R'
        out[m + 1] += I * (-b) * r[m];                                                // -b xi R
    }
    return out;
}

GaussPolyFactor fourier_factor(const GaussPolyFactor& g) {
    // F[x^m e^{-a x^2/2}] = (i d/dxi)^m [a^{-1/2} e^{-xi^2/(2a)}] (with the
    // (2pi)^{-1/2} convention the Gaussian e^{-x^2/2} is a fixed point)
    const double b = 1.0 / g.decay;
    std::vector<std::complex<double>> total{0.0};
    std::vector<std::complex<double>> r{1.0};
    for (int m = 0; m <= g.degree(); ++m) {
        const std::complex<double> cm = g.poly[static_cast<size_t>(m)];
        if (cm != 0.0) {
            if (total.size() < r.size()) total.resize(r.size(), 0.0);
            for (size_t i = 0; i < r.size(); ++i) total[i] += cm * r[i];
        }
        r = apply_i_ddxi(r, b);
    }
    for (auto& c : total) c *= std::sqrt(b);
    return GaussPolyFactor{b, std::move(total)};
}

}  // namespace

std::optional<TestFunction> TestFunction::fourier_closed_form() const {
    switch (variant_) {
        case Variant::gauss_poly: {
            if (radial_) return std::nullopt;
            std::vector<ProductTerm> out;
            for (const auto& t : terms_) {
                ProductTerm nt;
                nt.coef = t.coef;
                for (const auto& g : t.factors) nt.factors.push_back(fourier_factor(g));
                out.push_back(std::move(nt));
            }
            return product(std::move(out), dim_);
        }
        case Variant::hermite_series:
        case Variant::coeff_rule: {
            // F h_alpha = (-i)^{|alpha|} h_alpha
            CoeffVector c = series_coeffs();
            const std::complex<double> mi(0.0, -1.0);
            for (int r = 0; r < c.size(); ++r) {
                int tot = 0;
                for (int v : c.alpha_of(r)) tot += v;
                c[r] *= std::pow(mi, tot % 4);
            }
            return hermite_series(std::move(c));
        }
        default:
            return std::nullopt;
    }
}

}  // namespace hardyspec
