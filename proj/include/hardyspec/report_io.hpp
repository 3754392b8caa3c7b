#pragma once

#include <string>

#include "hardyspec/bounds.hpp"
#include "hardyspec/coeff_vector.hpp"
#include "hardyspec/quadrature.hpp"

namespace hardyspec::report {

/// 17-significant-digit lowercase scientific form used in every emitted
/// file, so identical runs are byte-identical.
std::string format_double(double v);

/// Plain value field next to a log magnitude: "0" or "+-inf" when the
/// magnitude cannot be represented.
std::string plain_from_log(int sign, double log_mag);

std::string cert_report_json(const bounds::CertReport& rep);
std::string cert_points_csv(const bounds::CertReport& rep);
std::string coeffs_csv(const CoeffVector& c);
std::string rule_csv(const quad::QuadratureRule& rule);

void write_file(const std::string& path, const std::string& content);

}  // namespace hardyspec::report
