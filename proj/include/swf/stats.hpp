#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace swf::stats {

// Standard-normal quantile, |error| < 1e-8 on (0,1).
double inverse_normal_cdf(double q);

enum class CochranRounding { NearestHalfAwayFromZero, Ceiling };

struct CochranParams {
    std::uint64_t frame_size = 0;   // N
    double confidence = 0.95;       // in (0,1)
    double margin = 0.05;           // e, in (0,1)
    double proportion = 0.5;        // p, in (0,1)
    CochranRounding rounding = CochranRounding::NearestHalfAwayFromZero;
};

struct CochranResult {
    double z = 0;        // normal quantile at (1+confidence)/2
    double n0 = 0;       // infinite-population size z^2 p (1-p) / e^2
    double n_fpc = 0;    // after finite-population correction
    std::uint64_t minimum = 0;
};

// Minimum sample size with finite-population correction
// n = n0 / (1 + (n0 - 1) / N).
CochranResult cochran_min_sample(const CochranParams& p);

struct KsResult {
    double d = 0;         // sup |F1 - F2|
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double n_effective = 0;  // n1*n2/(n1+n2)
    double p_value = 1;
    bool small_sample = false;  // min(n1,n2) < 25: asymptotic p is rough
};

// Two-sample Kolmogorov-Smirnov with the asymptotic p-value at
// lambda = (sqrt(n_e) + 0.12 + 0.11/sqrt(n_e)) * D.
KsResult ks_two_sample(std::vector<double> xs, std::vector<double> ys);

// Kolmogorov distribution survival function
// Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2), Q(0) = 1.
double kolmogorov_sf(double lambda);

struct ChiSquareResult {
    double statistic = 0;
    std::size_t df = 0;
    double p_value = 1;
    bool low_expected = false;  // some expected count < 5
};

// Goodness of fit of observed counts against positive expected counts.
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected);

// Regularized upper incomplete gamma Q(a, x); series for x < a+1, continued
// fraction otherwise.
double regularized_upper_gamma(double a, double x);
double regularized_lower_gamma(double a, double x);

struct Binning {
    enum class Mode { None, EqualWidth, Explicit } mode = Mode::None;
    std::size_t bin_count = 0;          // EqualWidth
    std::vector<double> edges;          // Explicit, ascending
};

// Fraction of the frame's distinct classes (or occupied bins) also present in
// the sample. Inputs are non-missing values.
double coverage(const std::vector<double>& sample_vals,
                const std::vector<double>& frame_vals, const Binning& binning = {});
double coverage_text(const std::vector<std::string>& sample_vals,
                     const std::vector<std::string>& frame_vals);

struct Histogram {
    std::vector<double> edges;   // bin_count + 1 ascending edges
    std::vector<std::size_t> counts;
    std::size_t overflow = 0;    // values above truncate_max
};

Histogram histogram(const std::vector<double>& values, std::size_t bin_count,
                    std::optional<double> truncate_max = std::nullopt);

}  // namespace swf::stats
