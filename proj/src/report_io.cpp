#include "hardyspec/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hardyspec::report {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string plain_from_log(int sign, double log_mag) {
    if (sign == 0) return "0";
    if (log_mag > 700.0) return sign > 0 ? "inf" : "-inf";
    if (log_mag < -700.0) return "0";
    return format_double(sign * std::exp(log_mag));
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

// numeric JSON field that degrades to a quoted token when unrepresentable
std::string json_number_or_token(const std::string& tok) {
    if (tok == "inf" || tok == "-inf") return "\"" + tok + "\"";
    return tok;
}

}  // namespace

std::string cert_report_json(const bounds::CertReport& rep) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"theorem_id\": \"" << json_escape(rep.theorem_id) << "\",\n";
    os << "  \"grid\": \"" << json_escape(rep.grid_desc) << "\",\n";
    os << "  \"log_c_fit\": " << format_double(rep.log_c_fit) << ",\n";
    os << "  \"c_fit\": " << json_number_or_token(plain_from_log(1, rep.log_c_fit)) << ",\n";
    os << "  \"log_ratio_min\": " << format_double(rep.log_ratio_min) << ",\n";
    os << "  \"log_ratio_max\": " << format_double(rep.log_ratio_max) << ",\n";
    os << "  \"ratio_min\": " << json_number_or_token(plain_from_log(1, rep.log_ratio_min))
       << ",\n";
    os << "  \"ratio_max\": " << json_number_or_token(plain_from_log(1, rep.log_ratio_max))
       << ",\n";
    os << "  \"log_c_fit_refined\": " << format_double(rep.log_c_fit_refined) << ",\n";
    os << "  \"log_ratio_min_refined\": " << format_double(rep.log_ratio_min_refined) << ",\n";
    os << "  \"pass\": " << (rep.pass ? "true" : "false") << ",\n";
    os << "  \"failures\": [";
    for (size_t i = 0; i < rep.failures.size(); ++i) {
        if (i) os << ", ";
        os << format_double(rep.failures[i]);
    }
    os << "],\n";
    os << "  \"notes\": [";
    for (size_t i = 0; i < rep.notes.size(); ++i) {
        if (i) os << ", ";
        os << "\"" << json_escape(rep.notes[i]) << "\"";
    }
    os << "]\n";
    os << "}\n";
    return os.str();
}

std::string cert_points_csv(const bounds::CertReport& rep) {
    std::ostringstream os;
    os << "x,log_ratio,ratio\n";
    for (const auto& [x, lr] : rep.points)
        os << format_double(x) << "," << format_double(lr) << ","
           << plain_from_log(std::isinf(lr) && lr < 0 ? 0 : 1, lr) << "\n";
    return os.str();
}

std::string coeffs_csv(const CoeffVector& c) {
    std::ostringstream os;
    for (int j = 1; j <= c.dim(); ++j) os << "alpha_" << j << ",";
    os << "re,im\n";
    for (int r = 0; r < c.size(); ++r) {
        for (int v : c.alpha_of(r)) os << v << ",";
        os << format_double(c[r].real()) << "," << format_double(c[r].imag()) << "\n";
    }
    return os.str();
}

std::string rule_csv(const quad::QuadratureRule& rule) {
    std::ostringstream os;
    os << "node,weight,log_weight\n";
    for (int i = 0; i < rule.size(); ++i)
        os << format_double(rule.nodes[static_cast<size_t>(i)]) << ","
           << format_double(rule.weights[static_cast<size_t>(i)]) << ","
           << format_double(rule.log_weights[static_cast<size_t>(i)]) << "\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace hardyspec::report
