#pragma once

#include <array>
#include <complex>
#include <vector>

namespace hardyspec {

/// Dense expansion coefficients over the multi-index box [0, N]^d, d <= 3,
/// stored flat in graded-lexicographic order (total degree, then lex).
/// Absent from any sparse source means zero.
class CoeffVector {
  public:
    CoeffVector() = default;
    CoeffVector(int dim, int max_degree);

    int dim() const { return dim_; }
    int max_degree() const { return max_degree_; }
    int size() const { return static_cast<int>(values_.size()); }

    std::complex<double>& at(const std::vector<int>& alpha);
    const std::complex<double>& at(const std::vector<int>& alpha) const;

    std::complex<double>& operator[](int rank) { return values_[static_cast<size_t>(rank)]; }
    const std::complex<double>& operator[](int rank) const {
        return values_[static_cast<size_t>(rank)];
    }

    /// Multi-index of a graded-lex rank.
    const std::vector<int>& alpha_of(int rank) const {
        return alphas_[static_cast<size_t>(rank)];
    }
    int rank_of(const std::vector<int>& alpha) const;

    /// Total degree |alpha| of a rank (ranks are grouped by it).
    int total_degree(int rank) const;

    double norm() const;  // Euclidean

    /// 1-D convenience: coefficient of degree n.
    std::complex<double> coeff_1d(int n) const;
    void set_coeff_1d(int n, std::complex<double> v);

  private:
    int dim_ = 1;
    int max_degree_ = 0;
    std::vector<std::complex<double>> values_;
    std::vector<std::vector<int>> alphas_;   // rank -> multi-index
    std::vector<int> rank_table_;            // mixed-radix position -> rank
    int mixed_radix(const std::vector<int>& alpha) const;
};

}  // namespace hardyspec
