#include "hardyspec/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hardyspec::specfun {

namespace {

constexpr double kRescaleHi = 1e300;
constexpr double kRescaleLo = 1e-300;
constexpr double kLogQuarterPi = 0.28618247146235004353585683783826;  // (1/4) log pi

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite argument");
}

// Shared core: runs the normalized Hermite recurrence
//   p_{k+1} = x sqrt(2/(k+1)) p_k - sqrt(k/(k+1)) p_{k-1}
// starting from p_0 = pi^{-1/4} with an initial log shift (the Gaussian for
// h_n, nothing for the bare polynomial part), rescaling the running pair
// whenever it leaves [1e-300, 1e300].
std::vector<LogScaled> hermite_recurrence(int max_degree, double x, double shift) {
    std::vector<LogScaled> out(static_cast<size_t>(max_degree) + 1);
    const double ax = std::abs(x);
    double pm = 0.0, pc = 1.0;
    shift -= kLogQuarterPi;
    out[0] = LogScaled(1, shift);
    for (int k = 0; k < max_degree; ++k) {
        const double pn = ax * std::sqrt(2.0 / (k + 1)) * pc - std::sqrt(k / (k + 1.0)) * pm;
        pm = pc;
        pc = pn;
        const double m = std::max(std::abs(pm), std::abs(pc));
        if (m > kRescaleHi || (m > 0.0 && m < kRescaleLo)) {
            pm /= m;
            pc /= m;
            shift += std::log(m);
        }
        if (pc == 0.0) {
            out[k + 1] = LogScaled::zero();
        } else {
            int sgn = pc > 0 ? 1 : -1;
            if (x < 0 && ((k + 1) & 1)) sgn = -sgn;  // parity h_n(-x) = (-1)^n h_n(x)
            out[k + 1] = LogScaled(sgn, std::log(std::abs(pc)) + shift);
        }
    }
    return out;
}

}  // namespace

std::vector<LogScaled> hermite_all_log(int max_degree, double x) {
    if (max_degree < 0) throw std::domain_error("hermite_all_log: negative degree");
    require_finite(x, "hermite_all_log");
    return hermite_recurrence(max_degree, x, -0.5 * x * x);
}

std::vector<LogScaled> hermite_poly_all_log(int max_degree, double x) {
    if (max_degree < 0) throw std::domain_error("hermite_poly_all_log: negative degree");
    require_finite(x, "hermite_poly_all_log");
    return hermite_recurrence(max_degree, x, 0.0);
}

LogScaled hermite_log(int n, double x) {
    if (n < 0) throw std::domain_error("hermite_log: negative degree");
    require_finite(x, "hermite_log");
    return hermite_all_log(n, x)[static_cast<size_t>(n)];
}

LogScaled hermite_multi_log(const std::vector<int>& alpha, const std::vector<double>& x) {
    if (alpha.size() != x.size())
        throw std::domain_error("hermite_multi_log: dimension mismatch between alpha and x");
    LogScaled prod = LogScaled::one();
    for (size_t j = 0; j < alpha.size(); ++j) {
        prod = prod * hermite_log(alpha[j], x[j]);
        if (prod.is_zero()) return prod;
    }
    return prod;
}

LogScaled plancherel_rotach_log(int n, double x) {
    if (n < 1) throw std::domain_error("plancherel_rotach_log: degree must be >= 1");
    require_finite(x, "plancherel_rotach_log");
    const double edge = std::sqrt(2.0 * n + 1.0);
    if (x <= edge)
        throw std::domain_error("plancherel_rotach_log: x <= sqrt(2n+1), outside the hyperbolic region");
    const double phi = std::acosh(x / edge);
    // h_n(x) ~ exp[(n/2 + 1/4)(2 phi - sinh 2 phi)] / (2^{3/4} pi^{1/2} n^{1/4} sinh(phi)^{1/2}).
    // Beyond its largest zero h_n is positive.
    const double lead = (0.5 * n + 0.25) * (2.0 * phi - std::sinh(2.0 * phi));
    const double lg = lead - 0.75 * std::log(2.0) - 0.5 * std::log(M_PI) -
                      0.25 * std::log(static_cast<double>(n)) - 0.5 * std::log(std::sinh(phi));
    return LogScaled(1, lg);
}

std::vector<LogScaled> laguerre_psi_all_log(int max_degree, double nu, double s) {
    if (max_degree < 0) throw std::domain_error("laguerre_psi_all_log: negative degree");
    if (nu <= -0.5) throw std::domain_error("laguerre_psi_all_log: requires nu > -1/2");
    if (s < 0) throw std::domain_error("laguerre_psi_all_log: requires s >= 0");
    require_finite(s, "laguerre_psi_all_log");

    // L_{k+1} = ((2k+1+nu-t) L_k - (k+nu) L_{k-1}) / (k+1) at t = s^2,
    // with the e^{-t/2} factor carried in the shared exponent.
    const double t = s * s;
    std::vector<LogScaled> out(static_cast<size_t>(max_degree) + 1);
    double lm = 0.0, lc = 1.0;
    double shift = -0.5 * t;
    out[0] = LogScaled(1, shift);
    for (int k = 0; k < max_degree; ++k) {
        const double ln = ((2.0 * k + 1.0 + nu - t) * lc - (k + nu) * lm) / (k + 1.0);
        lm = lc;
        lc = ln;
        const double m = std::max(std::abs(lm), std::abs(lc));
        if (m > kRescaleHi || (m > 0.0 && m < kRescaleLo)) {
            lm /= m;
            lc /= m;
            shift += std::log(m);
        }
        out[k + 1] = lc == 0.0 ? LogScaled::zero()
                               : LogScaled(lc > 0 ? 1 : -1, std::log(std::abs(lc)) + shift);
    }
    return out;
}

LogScaled laguerre_psi_log(int k, double nu, double s) {
    return laguerre_psi_all_log(k, nu, s)[static_cast<size_t>(k)];
}

namespace {

// Power series sum_k (-1)^k (z/2)^{2k} / (k! Gamma(k+nu+1)), term ratio
// -(z/2)^2 / ((k+1)(k+nu+1)).  Terms are carried with a running log shift so
// the partial maxima never overflow.  Safe when the largest term does not
// dwarf the answer, i.e. roughly when |z| - |Im z| is small.
LogComplex bessel_series_log(double nu, std::complex<double> z) {
    const std::complex<double> ratio_base = -(z * z) * 0.25;
    std::complex<double> term(1.0, 0.0);
    double shift = -std::lgamma(nu + 1.0);
    ComplexLogSum acc;
    acc.add(term, shift);
    double max_log = shift;
    for (int k = 0; k < 4000; ++k) {
        term *= ratio_base / ((k + 1.0) * (k + nu + 1.0));
        double m = std::abs(term);
        if (m == 0.0) break;
        if (m > kRescaleHi) {
            term /= m;
            shift += std::log(m);
            m = 1.0;
        }
        const double tl = std::log(m) + shift;
        acc.add(term, shift);
        max_log = std::max(max_log, tl);
        if (tl < max_log - 45.0 && tl < acc.result().log_abs() - 40.0) break;
    }
    return acc.result();
}

LogComplex log_complex_div(const LogComplex& num, const LogComplex& den) {
    // num / den = num * conj(den) / |den|^2
    const double dl = 2.0 * den.log_abs();
    const LogComplex prod = num * LogComplex{den.re, -den.im};
    LogComplex out = prod;
    if (!out.re.is_zero()) out.re.log_mag -= dl;
    if (!out.im.is_zero()) out.im.log_mag -= dl;
    return out;
}

// Backward (Miller) recurrence on the raw J_mu, normalized with
//   (z/2)^nu = sum_k (nu+2k) Gamma(nu+k)/k! J_{nu+2k}(z),
// so that J_nu(z)/(z/2)^nu = Jtilde_nu / sum_k c_k Jtilde_{nu+2k};
// the (z/2)^nu cancels and no complex power is ever taken.
LogComplex bessel_miller_log(double nu, std::complex<double> z) {
    const double az = std::abs(z);
    int m_start = static_cast<int>(az + 12.0 * std::cbrt(std::max(az, 1.0)) + 32.0 + nu);
    if (m_start % 2 != 0) ++m_start;

    // log c_k, c_k = (nu+2k) Gamma(nu+k)/k!; the k = 0 limit is Gamma(nu+1).
    std::vector<double> log_c(static_cast<size_t>(m_start / 2) + 1);
    log_c[0] = std::lgamma(nu + 1.0);
    for (size_t k = 1; k < log_c.size(); ++k)
        log_c[k] = std::log(nu + 2.0 * k) + std::lgamma(nu + static_cast<double>(k)) -
                   std::lgamma(static_cast<double>(k) + 1.0);

    const std::complex<double> two_over_z = 2.0 / z;
    std::complex<double> jp(0.0, 0.0);      // J_{mu+1}, current scaling
    std::complex<double> jc(1e-280, 0.0);   // J_mu seed
    ComplexLogSum norm;
    double shift = 0.0;
    LogComplex jnu;
    norm.add(jc, log_c[static_cast<size_t>(m_start / 2)] + shift);
    for (int m = m_start; m >= 1; --m) {
        const double mu = nu + m;
        const std::complex<double> jm = mu * two_over_z * jc - jp;
        jp = jc;
        jc = jm;
        const double mag = std::abs(jc);
        if (mag > kRescaleHi) {
            jc /= mag;
            jp /= mag;
            shift += std::log(mag);
        }
        if ((m - 1) % 2 == 0) norm.add(jc, log_c[static_cast<size_t>((m - 1) / 2)] + shift);
        if (m - 1 == 0) jnu = LogComplex::from_value(jc) * LogScaled(1, shift);
    }
    return log_complex_div(jnu, norm.result());
}

}  // namespace

LogComplex bessel_j_norm_log(double nu, std::complex<double> z) {
    if (nu < 0) throw std::domain_error("bessel_j_norm: requires nu >= 0");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("bessel_j_norm: non-finite argument");
    const double az = std::abs(z);
    const double aim = std::abs(z.imag());
    if (az <= 12.0 || az - aim <= 12.0) return bessel_series_log(nu, z);
    return bessel_miller_log(nu, z);
}

std::complex<double> bessel_j_norm(double nu, std::complex<double> z) {
    return bessel_j_norm_log(nu, z).value();
}

}  // namespace hardyspec::specfun
