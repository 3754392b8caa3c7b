#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace hardyspec {

/// Sign-and-log representation of a real number.  All magnitudes that can
/// leave the double range (Hermite tails, Gaussian envelopes at x ~ 40,
/// factorial prefactors) are carried in this form; sign == 0 iff the value
/// is exactly zero, in which case log_mag == -inf.
struct LogScaled {
    int sign = 0;
    double log_mag = -std::numeric_limits<double>::infinity();

    LogScaled() = default;
    LogScaled(int s, double lm) : sign(s), log_mag(lm) {
        if (sign == 0) log_mag = -std::numeric_limits<double>::infinity();
    }

    static LogScaled zero() { return LogScaled(); }
    static LogScaled one() { return LogScaled(1, 0.0); }

    static LogScaled from_value(double v) {
        if (v == 0.0) return zero();
        if (std::isnan(v)) throw std::domain_error("LogScaled: NaN input");
        return LogScaled(v > 0 ? 1 : -1, std::log(std::abs(v)));
    }

    /// Exact whenever |log_mag| is below the double exponent range;
    /// overflows to +-inf / underflows to 0 otherwise.
    double value() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_mag);
    }

    bool is_zero() const { return sign == 0; }

    LogScaled abs() const { return sign == 0 ? zero() : LogScaled(1, log_mag); }

    LogScaled operator-() const { return LogScaled(-sign, log_mag); }

    LogScaled operator*(const LogScaled& o) const {
        if (sign == 0 || o.sign == 0) return zero();
        return LogScaled(sign * o.sign, log_mag + o.log_mag);
    }

    LogScaled operator/(const LogScaled& o) const {
        if (o.sign == 0) throw std::domain_error("LogScaled: division by zero");
        if (sign == 0) return zero();
        return LogScaled(sign * o.sign, log_mag - o.log_mag);
    }

    /// |x|^p, defined for sign >= 0 or integer-like use on magnitudes.
    LogScaled pow_abs(double p) const {
        if (sign == 0) return p == 0.0 ? one() : zero();
        return LogScaled(1, p * log_mag);
    }

    /// log of the magnitude; -inf for zero.
    double log_abs() const { return log_mag; }
};

inline LogScaled operator*(double a, const LogScaled& b) {
    return LogScaled::from_value(a) * b;
}

/// Compares |a| < |b|.
inline bool abs_less(const LogScaled& a, const LogScaled& b) {
    return a.log_mag < b.log_mag;
}

/// Accumulates a sum of signed terms supplied in log form, keeping the
/// running total scaled near unity.  Kahan compensation on the scaled sum.
class SignedLogSum {
  public:
    void add(int sign, double log_mag) {
        if (sign == 0 || log_mag == -std::numeric_limits<double>::infinity()) return;
        if (empty_) {
            shift_ = log_mag;
            sum_ = static_cast<double>(sign);
            comp_ = 0.0;
            empty_ = false;
            return;
        }
        if (log_mag > shift_ + 1.0) {
            rescale(log_mag);
        }
        kahan_add(sign * std::exp(log_mag - shift_));
        if (std::abs(sum_) > 1e250) rescale(shift_ + std::log(std::abs(sum_)));
    }

    void add(const LogScaled& t) { add(t.sign, t.log_mag); }

    LogScaled result() const {
        if (empty_ || sum_ == 0.0) return LogScaled::zero();
        return LogScaled(sum_ > 0 ? 1 : -1, shift_ + std::log(std::abs(sum_)));
    }

    bool empty() const { return empty_; }

  private:
    void rescale(double new_shift) {
        const double f = std::exp(shift_ - new_shift);
        sum_ *= f;
        comp_ *= f;
        shift_ = new_shift;
    }
    void kahan_add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }

    bool empty_ = true;
    double shift_ = 0.0;
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Complex value stored as two signed-log reals.
struct LogComplex {
    LogScaled re, im;

    LogComplex() = default;
    LogComplex(LogScaled r, LogScaled i) : re(r), im(i) {}

    static LogComplex from_value(std::complex<double> z) {
        return {LogScaled::from_value(z.real()), LogScaled::from_value(z.imag())};
    }

    /// term = e^{log_mag} * e^{i phase}, split into signed-log parts.
    static LogComplex from_polar_log(double log_mag, double phase) {
        const double c = std::cos(phase), s = std::sin(phase);
        LogComplex out;
        if (c != 0.0) out.re = LogScaled(c > 0 ? 1 : -1, log_mag + std::log(std::abs(c)));
        if (s != 0.0) out.im = LogScaled(s > 0 ? 1 : -1, log_mag + std::log(std::abs(s)));
        return out;
    }

    std::complex<double> value() const { return {re.value(), im.value()}; }

    double log_abs() const {
        // log |re + i im| without leaving log space
        if (re.is_zero()) return im.log_mag;
        if (im.is_zero()) return re.log_mag;
        const double m = std::max(re.log_mag, im.log_mag);
        const double a = std::exp(re.log_mag - m), b = std::exp(im.log_mag - m);
        return m + 0.5 * std::log(a * a + b * b);
    }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    LogComplex operator*(const LogComplex& o) const {
        SignedLogSum rr, ii;
        rr.add(re * o.re);
        rr.add(-(im * o.im));
        ii.add(re * o.im);
        ii.add(im * o.re);
        return {rr.result(), ii.result()};
    }

    LogComplex operator*(const LogScaled& s) const { return {re * s, im * s}; }
};

/// Accumulator for complex sums whose parts may span the full log range.
class ComplexLogSum {
  public:
    void add(const LogComplex& t) {
        re_.add(t.re);
        im_.add(t.im);
    }
    void add(std::complex<double> v, double extra_log) {
        if (v.real() != 0.0)
            re_.add(v.real() > 0 ? 1 : -1, std::log(std::abs(v.real())) + extra_log);
        if (v.imag() != 0.0)
            im_.add(v.imag() > 0 ? 1 : -1, std::log(std::abs(v.imag())) + extra_log);
    }
    LogComplex result() const { return {re_.result(), im_.result()}; }

  private:
    SignedLogSum re_, im_;
};

}  // namespace hardyspec
