#include "hardyspec/oscillator.hpp"

#include <cmath>
#include <stdexcept>

#include "hardyspec/errors.hpp"
#include "hardyspec/weights.hpp"

namespace hardyspec::oscillator {

CoeffVector evolve_coeffs(const CoeffVector& c, double t, int dim) {
    if (c.dim() != dim) throw std::domain_error("evolve_coeffs: dimension mismatch");
    CoeffVector out = c;
    for (int r = 0; r < out.size(); ++r) {
        const double phase = (2.0 * out.total_degree(r) + dim) * t;
        out[r] *= std::polar(1.0, phase);
    }
    return out;
}

double matched_y(double s, double lambda) {
    return std::pow((1.0 - 2.0 * s) / lambda, (1.0 - 2.0 * s) / (2.0 * s)) * s;
}

Solution solution_eval(const TestFunction& u0, double t, const std::vector<double>& x,
                       int truncation) {
    if (truncation < 0 || truncation > 256)
        throw std::domain_error("solution_eval: truncation must be in [0, 256]");
    const CoeffVector c0 = spectra::hermite_coeffs(u0, truncation);
    const CoeffVector ct = evolve_coeffs(c0, t, u0.dim());
    const spectra::Synthesis syn = spectra::synthesize(ct, x);

    Solution out;
    out.value = syn.value.value();
    out.log_tail_bound = syn.log_tail_bound;
    if (u0.variant() == TestFunction::Variant::coeff_rule) {
        // |evolved coefficients| equal |rule coefficients|; reuse its tail
        out.log_tail_bound = spectra::synthesize(u0, x).log_tail_bound;
    } else if (u0.variant() == TestFunction::Variant::gauss_poly) {
        // top-decade coefficient mass as a tail estimate
        double top = 0.0;
        for (int r = 0; r < ct.size(); ++r)
            if (ct.total_degree(r) >= (9 * truncation) / 10) top += std::abs(ct[r]);
        out.log_tail_bound = top > 0 ? std::log(10.0 * top) - 0.25 * u0.dim() * std::log(M_PI)
                                     : -std::numeric_limits<double>::infinity();
    }
    const double mag = std::abs(out.value);
    if (mag > 0 && out.log_tail_bound > std::log(mag) + std::log(1e-8))
        throw AccuracyError("solution_eval: truncation tail above 1e-8 of the value; "
                            "increase the truncation degree",
                            std::exp(out.log_tail_bound - std::log(mag)));
    return out;
}

namespace {

LogScaled thm13_envelope(double s, double lambda, double eps, double x) {
    const double y = matched_y(s, lambda);
    const weights::Eq1Values q = weights::eq1_quantities(s, y, x);
    const double lp = weights::logp_sqrt2(x);
    const double growth =
        lambda * std::pow(2.0, 2.0 * s / (1.0 - 2.0 * s)) * std::pow(lp, 1.0 / (1.0 - 2.0 * s));
    const double body = 0.5 * x * x * q.P - growth;
    double scale = 1.0;
    if (!(lambda < q.lambda_s)) {
        const double theta = 0.5 * std::pow(2.0 * y, 2.0 * s);
        scale = std::pow(theta, 1.0 / (2.0 * s));
    }
    return LogScaled(1, -(1.0 - eps) * scale * body);
}

LogScaled thm14_envelope(double s, double lambda, double eps, int d,
                         const std::vector<double>& xv) {
    const double y = matched_y(s, lambda);
    const double crit = std::pow(2.0 * d, 2.0 * s / (1.0 - 2.0 * s)) * lambda;
    double scale = 1.0;
    if (!(crit < weights::lambda_s(s))) {
        const double theta = 0.5 * std::pow(2.0 * y, 2.0 * s);
        scale = std::pow(theta, 1.0 / (2.0 * s));
    }
    double total = 0.0;
    for (double xi : xv) {
        const weights::Eq1Values q = weights::eq1_quantities(s, y, xi);
        const double lp = weights::logp_sqrt2(xi);
        const double growth = lambda * std::pow(4.0 * d, 2.0 * s / (1.0 - 2.0 * s)) *
                              std::pow(lp, 1.0 / (1.0 - 2.0 * s));
        total += 0.5 * xi * xi * q.P - growth;
    }
    return LogScaled(1, -(1.0 - eps) * scale * total);
}

LogScaled thm33_envelope(double gamma, int d, double xnorm) {
    return LogScaled(1, (d - 1.0) / (2.0 * d) * std::log(xnorm) -
                            std::tanh(gamma / d) * 0.5 * xnorm * xnorm);
}

}  // namespace

bounds::CertReport decay_certificate(const DecayCase& setup, const std::vector<double>& times,
                                     const bounds::GridSpec& xgrid, int threads) {
    if (times.empty()) throw std::domain_error("decay_certificate: empty time list");
    const int d = setup.dim;

    TestFunction u0 = [&] {
        switch (setup.kind) {
            case DecayCase::Kind::thm13:
                return TestFunction::coeff_rule(setup.s, matched_y(setup.s, setup.lambda), 1);
            case DecayCase::Kind::thm14:
                return TestFunction::coeff_rule(setup.s, matched_y(setup.s, setup.lambda), d);
            case DecayCase::Kind::thm33:
                return TestFunction::gauss(std::tanh(2.0 * setup.gamma), d);
        }
        throw std::logic_error("decay_certificate: unreachable");
    }();
    if (setup.kind == DecayCase::Kind::thm13 && d != 1)
        throw std::domain_error("decay_certificate: theorem 1.3 case is one-dimensional");

    // evolve once per time; synthesize per grid point
    const CoeffVector c0 = spectra::hermite_coeffs(u0, setup.truncation);
    std::vector<CoeffVector> evolved;
    evolved.reserve(times.size());
    for (double t : times) evolved.push_back(evolve_coeffs(c0, t, d));

    auto point_vec = [d](double x) {
        return std::vector<double>(static_cast<size_t>(d), x / std::sqrt(static_cast<double>(d)));
    };

    bounds::PointEvaluator lhs = [&, d](double x) {
        const std::vector<double> xv = point_vec(x);
        double best = -std::numeric_limits<double>::infinity();
        for (const CoeffVector& ct : evolved) {
            const spectra::Synthesis syn = spectra::synthesize(ct, xv);
            best = std::max(best, syn.value.log_abs());
        }
        return LogScaled(1, best);
    };
    bounds::PointEvaluator rhs = [&, d](double x) {
        const std::vector<double> xv = point_vec(x);
        switch (setup.kind) {
            case DecayCase::Kind::thm13:
                return thm13_envelope(setup.s, setup.lambda, setup.eps, x);
            case DecayCase::Kind::thm14:
                return thm14_envelope(setup.s, setup.lambda, setup.eps, d, xv);
            case DecayCase::Kind::thm33:
                return thm33_envelope(setup.gamma, d, x);
        }
        throw std::logic_error("decay_certificate: unreachable");
    };

    const char* label = setup.kind == DecayCase::Kind::thm13   ? "1.3"
                        : setup.kind == DecayCase::Kind::thm14 ? "1.4"
                                                               : "3.3";
    bounds::CertReport rep = bounds::certify(label, lhs, rhs, xgrid, threads);
    if (setup.kind != DecayCase::Kind::thm33) {
        // the two published branch criteria (lambda vs lambda_s, y vs
        // 2^{1/(2s)-1}) must coincide under the matched y; log if not
        const double y = matched_y(setup.s, setup.lambda);
        const bool by_lambda = setup.lambda < weights::lambda_s(setup.s);
        const bool by_y = y > std::pow(2.0, 1.0 / (2.0 * setup.s) - 1.0);
        if (by_lambda != by_y)
            rep.notes.push_back("branch criteria lambda<lambda_s and y>2^{1/(2s)-1} disagree");
    }
    return rep;
}

}  // namespace hardyspec::oscillator
