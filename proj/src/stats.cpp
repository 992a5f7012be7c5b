#include "swf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "swf/error.hpp"

namespace swf::stats {

namespace {

// Acklam's rational approximation to the standard-normal quantile.
double inverse_normal_cdf_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;

    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > 1 - plow) {
        double q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

constexpr double kSqrt2Pi = 2.506628274631000502;

}  // namespace

double inverse_normal_cdf(double q) {
    if (!(q > 0.0 && q < 1.0)) throw Error("inverse_normal_cdf: q must be in (0,1)");
    double x = inverse_normal_cdf_approx(q);
    // One Halley step against Phi computed via erfc.
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - q;
    double u = e * kSqrt2Pi * std::exp(x * x / 2.0);
    x = x - u / (1 + x * u / 2);
    return x;
}

CochranResult cochran_min_sample(const CochranParams& p) {
    if (p.frame_size < 1) throw Error("cochran: frame size must be >= 1");
    if (!(p.confidence > 0 && p.confidence < 1)) throw Error("cochran: confidence must be in (0,1)");
    if (!(p.margin > 0 && p.margin < 1)) throw Error("cochran: margin must be in (0,1)");
    if (!(p.proportion > 0 && p.proportion < 1)) throw Error("cochran: proportion must be in (0,1)");

    CochranResult r;
    r.z = inverse_normal_cdf((1.0 + p.confidence) / 2.0);
    r.n0 = r.z * r.z * p.proportion * (1.0 - p.proportion) / (p.margin * p.margin);
    r.n_fpc = r.n0 / (1.0 + (r.n0 - 1.0) / static_cast<double>(p.frame_size));
    double rounded = p.rounding == CochranRounding::Ceiling ? std::ceil(r.n_fpc)
                                                            : std::round(r.n_fpc);
    r.minimum = static_cast<std::uint64_t>(rounded);
    return r;
}

double kolmogorov_sf(double lambda) {
    if (lambda < 0) throw Error("kolmogorov_sf: lambda must be >= 0");
    if (lambda == 0) return 1.0;
    double sum = 0;
    double sign = 1;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
    if (xs.empty() || ys.empty()) throw Error("ks_two_sample: empty sample");
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());

    KsResult r;
    r.n1 = xs.size();
    r.n2 = ys.size();
    const double n1 = static_cast<double>(r.n1), n2 = static_cast<double>(r.n2);

    // Walk the merged order; the ECDF gap can only change at sample points.
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < xs.size() && j < ys.size()) {
        const double v = std::min(xs[i], ys[j]);
        while (i < xs.size() && xs[i] == v) ++i;
        while (j < ys.size() && ys[j] == v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }
    d = std::max(d, std::fabs(1.0 - static_cast<double>(j) / n2));
    d = std::max(d, std::fabs(static_cast<double>(i) / n1 - 1.0));

    r.d = d;
    r.n_effective = n1 * n2 / (n1 + n2);
    r.small_sample = std::min(r.n1, r.n2) < 25;
    const double sqrt_ne = std::sqrt(r.n_effective);
    r.p_value = kolmogorov_sf((sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d);
    return r;
}

namespace {

// Lower regularized gamma by series, x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma by Lentz continued fraction, x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1 - a;
    double c = 1 / tiny;
    double d = 1 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_upper_gamma(double a, double x) {
    if (a <= 0) throw Error("regularized_upper_gamma: a must be > 0");
    if (x < 0) throw Error("regularized_upper_gamma: x must be >= 0");
    if (x == 0) return 1.0;
    if (x < a + 1) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double regularized_lower_gamma(double a, double x) {
    return 1.0 - regularized_upper_gamma(a, x);
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected) {
    if (observed.size() != expected.size())
        throw Error("chi_square_gof: category count mismatch");
    if (observed.size() < 2) throw Error("chi_square_gof: need at least 2 categories");

    ChiSquareResult r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0) throw Error("chi_square_gof: expected counts must be positive");
        if (expected[i] < 5) r.low_expected = true;
        const double diff = observed[i] - expected[i];
        r.statistic += diff * diff / expected[i];
    }
    r.df = observed.size() - 1;
    r.p_value = regularized_upper_gamma(static_cast<double>(r.df) / 2.0, r.statistic / 2.0);
    return r;
}

namespace {

std::size_t bin_index(double v, const std::vector<double>& edges) {
    // edges ascending; v assumed within [front, back]; last bin right-closed
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    std::size_t idx = static_cast<std::size_t>(it - edges.begin());
    if (idx == 0) return 0;
    if (idx >= edges.size()) return edges.size() - 2;
    return idx - 1;
}

}  // namespace

double coverage(const std::vector<double>& sample_vals,
                const std::vector<double>& frame_vals, const Binning& binning) {
    if (frame_vals.empty()) throw Error("coverage: empty frame");

    if (binning.mode == Binning::Mode::None) {
        std::set<double> frame(frame_vals.begin(), frame_vals.end());
        std::set<double> sample(sample_vals.begin(), sample_vals.end());
        std::size_t hit = 0;
        for (double v : sample)
            if (frame.count(v)) ++hit;
        return static_cast<double>(hit) / static_cast<double>(frame.size());
    }

    std::vector<double> edges;
    if (binning.mode == Binning::Mode::EqualWidth) {
        if (binning.bin_count < 1) throw Error("coverage: bin_count must be >= 1");
        auto [mn, mx] = std::minmax_element(frame_vals.begin(), frame_vals.end());
        double lo = *mn, hi = *mx;
        if (lo == hi) hi = lo + 1;
        for (std::size_t i = 0; i <= binning.bin_count; ++i)
            edges.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                     static_cast<double>(binning.bin_count));
    } else {
        edges = binning.edges;
        if (edges.size() < 2) throw Error("coverage: need at least 2 bin edges");
    }

    const std::size_t nbins = edges.size() - 1;
    std::vector<bool> frame_occ(nbins, false), sample_occ(nbins, false);
    for (double v : frame_vals)
        if (v >= edges.front() && v <= edges.back()) frame_occ[bin_index(v, edges)] = true;
    for (double v : sample_vals)
        if (v >= edges.front() && v <= edges.back()) sample_occ[bin_index(v, edges)] = true;

    std::size_t occupied = 0, hit = 0;
    for (std::size_t i = 0; i < nbins; ++i) {
        if (!frame_occ[i]) continue;
        ++occupied;
        if (sample_occ[i]) ++hit;
    }
    if (occupied == 0) throw Error("coverage: frame occupies no bins");
    return static_cast<double>(hit) / static_cast<double>(occupied);
}

double coverage_text(const std::vector<std::string>& sample_vals,
                     const std::vector<std::string>& frame_vals) {
    if (frame_vals.empty()) throw Error("coverage: empty frame");
    std::unordered_set<std::string> frame(frame_vals.begin(), frame_vals.end());
    std::unordered_set<std::string> sample(sample_vals.begin(), sample_vals.end());
    std::size_t hit = 0;
    for (const auto& v : sample)
        if (frame.count(v)) ++hit;
    return static_cast<double>(hit) / static_cast<double>(frame.size());
}

Histogram histogram(const std::vector<double>& values, std::size_t bin_count,
                    std::optional<double> truncate_max) {
    if (bin_count < 1) throw Error("histogram: bin_count must be >= 1");

    Histogram h;
    h.counts.assign(bin_count, 0);

    double lo = 0, hi = 1;
    if (!values.empty()) {
        auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        lo = *mn;
        hi = truncate_max ? *truncate_max : *mx;
        if (hi <= lo) hi = lo + 1;
    }
    for (std::size_t i = 0; i <= bin_count; ++i)
        h.edges.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(bin_count));

    for (double v : values) {
        if (truncate_max && v > *truncate_max) {
            ++h.overflow;
            continue;
        }
        if (v < lo || v > h.edges.back()) continue;
        ++h.counts[bin_index(v, h.edges)];
    }
    return h;
}

}  // namespace swf::stats
