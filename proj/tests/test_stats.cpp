#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "swf/stats.hpp"

using namespace swf::stats;
using doctest::Approx;

TEST_CASE("inverse_normal_cdf matches tabulated quantiles") {
    CHECK(inverse_normal_cdf(0.975) == Approx(1.959964).epsilon(1e-6));
    CHECK(inverse_normal_cdf(0.995) == Approx(2.575829).epsilon(1e-6));
    CHECK(inverse_normal_cdf(0.5) == Approx(0.0).scale(1));
    CHECK(inverse_normal_cdf(0.841344746) == Approx(1.0).epsilon(1e-6));
    CHECK(inverse_normal_cdf(0.025) == Approx(-1.959964).epsilon(1e-6));
}

TEST_CASE("inverse_normal_cdf inverts the normal cdf on a grid") {
    for (double q = 0.01; q < 1.0; q += 0.01) {
        double z = inverse_normal_cdf(q);
        double back = 0.5 * std::erfc(-z / std::sqrt(2.0));
        CHECK(back == Approx(q).epsilon(1e-8));
    }
}

TEST_CASE("cochran minimum sample sizes for the 95%/5% defaults") {
    CochranParams p;
    p.confidence = 0.95;
    p.margin = 0.05;

    p.frame_size = 1000000;
    auto big = cochran_min_sample(p);
    CHECK(big.n0 == Approx(384.146).epsilon(1e-3));
    CHECK(big.minimum == 384);

    p.frame_size = 100000;
    CHECK(cochran_min_sample(p).minimum == 383);
}

TEST_CASE("cochran with a 10% margin on a small frame") {
    CochranParams p;
    p.confidence = 0.95;
    p.margin = 0.10;
    p.frame_size = 192;
    auto r = cochran_min_sample(p);
    CHECK(r.z == Approx(1.959964).epsilon(1e-6));
    CHECK(r.n0 == Approx(96.04).epsilon(1e-3));
    CHECK(r.minimum == 64);
}

TEST_CASE("cochran minimum is monotone in frame size and capped by it") {
    CochranParams p;
    std::uint64_t prev = 0;
    for (std::uint64_t n : {10ULL, 50ULL, 100ULL, 500ULL, 1000ULL, 10000ULL, 1000000ULL}) {
        p.frame_size = n;
        auto r = cochran_min_sample(p);
        CHECK(r.minimum >= prev);
        CHECK(r.minimum <= n);
        prev = r.minimum;
    }
    // and it saturates near n0 for huge frames
    p.frame_size = 1000000000ULL;
    CHECK(cochran_min_sample(p).minimum == 384);
}

TEST_CASE("ceiling rounding never undershoots the corrected size") {
    CochranParams p;
    p.rounding = CochranRounding::Ceiling;
    p.frame_size = 100000;
    auto r = cochran_min_sample(p);
    CHECK(r.minimum == 383);  // ceil(382.68)
    CHECK(static_cast<double>(r.minimum) >= r.n_fpc);
}

TEST_CASE("kolmogorov_sf matches a brute-force series evaluation") {
    auto brute = [](double lambda) {
        double s = 0;
        for (int j = 1; j <= 50; ++j)
            s += (j % 2 == 1 ? 2.0 : -2.0) * std::exp(-2.0 * j * j * lambda * lambda);
        return s;
    };
    CHECK(kolmogorov_sf(1.0) == Approx(0.26999967).epsilon(1e-6));
    for (double l = 0.3; l < 3.0; l += 0.1)
        CHECK(kolmogorov_sf(l) == Approx(brute(l)).epsilon(1e-9));
    CHECK(kolmogorov_sf(0.0) == 1.0);
    CHECK(kolmogorov_sf(10.0) == Approx(0.0).scale(1));
}

TEST_CASE("ks statistic on a hand-computed case") {
    auto r = ks_two_sample({1, 2, 3, 4}, {2, 3, 4, 5});
    CHECK(r.d == Approx(0.25));
    CHECK(r.n1 == 4);
    CHECK(r.n2 == 4);
    CHECK(r.n_effective == Approx(2.0));
    CHECK(r.small_sample);
}

TEST_CASE("ks of a sample against itself is zero with p = 1") {
    std::vector<double> xs{1, 1, 2, 5, 9, 9, 9};
    auto r = ks_two_sample(xs, xs);
    CHECK(r.d == Approx(0.0).scale(1));
    CHECK(r.p_value == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ks statistic matches a brute-force ECDF sweep") {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> u(0, 100);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> xs, ys;
        size_t n1 = 2 + gen() % 40, n2 = 2 + gen() % 40;
        for (size_t i = 0; i < n1; ++i) xs.push_back(std::floor(u(gen)));
        for (size_t i = 0; i < n2; ++i) ys.push_back(std::floor(u(gen)));

        auto ecdf = [](const std::vector<double>& v, double t) {
            size_t c = 0;
            for (double x : v) c += x <= t;
            return static_cast<double>(c) / static_cast<double>(v.size());
        };
        double d = 0;
        for (double t : xs) d = std::max(d, std::fabs(ecdf(xs, t) - ecdf(ys, t)));
        for (double t : ys) d = std::max(d, std::fabs(ecdf(xs, t) - ecdf(ys, t)));

        auto r = ks_two_sample(xs, ys);
        CHECK(r.d == Approx(d).epsilon(1e-12));
        // symmetry
        auto rs = ks_two_sample(ys, xs);
        CHECK(rs.d == Approx(r.d).epsilon(1e-12));
        CHECK(rs.p_value == Approx(r.p_value).epsilon(1e-12));
    }
}

TEST_CASE("chi-square goodness of fit on a hand-computed case") {
    // chi2 = 100/20 + 0 + 100/20 = 10, df = 2, p = exp(-5)
    auto r = chi_square_gof({10, 20, 30}, {20, 20, 20});
    CHECK(r.statistic == Approx(10.0));
    CHECK(r.df == 2);
    CHECK(r.p_value == Approx(std::exp(-5.0)).epsilon(1e-9));
    CHECK(!r.low_expected);
}

TEST_CASE("chi-square flags low expected counts") {
    auto r = chi_square_gof({3, 4}, {3.5, 3.5});
    CHECK(r.low_expected);
    CHECK(r.df == 1);
}

TEST_CASE("chi-square of observed == expected is zero with p = 1") {
    auto r = chi_square_gof({20, 30, 50}, {20, 30, 50});
    CHECK(r.statistic == Approx(0.0).scale(1));
    CHECK(r.p_value == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("regularized gamma identities") {
    // Q(1, t) = exp(-t)
    for (double t = 0.1; t < 8; t += 0.37)
        CHECK(regularized_upper_gamma(1.0, t) == Approx(std::exp(-t)).epsilon(1e-10));
    // P + Q = 1 across both evaluation branches
    for (double a : {0.5, 1.0, 2.5, 7.0, 20.0})
        for (double x : {0.1, 0.9, 2.0, 6.9, 7.1, 30.0})
            CHECK(regularized_lower_gamma(a, x) + regularized_upper_gamma(a, x) ==
                  Approx(1.0).epsilon(1e-10));
    // Q(a, 0) = 1
    CHECK(regularized_upper_gamma(3.0, 0.0) == Approx(1.0));
    // chi-square with 2 df: Q(1, x/2)
    CHECK(regularized_upper_gamma(1.0, 3.0) == Approx(std::exp(-3.0)).epsilon(1e-10));
}

TEST_CASE("coverage of distinct classes") {
    CHECK(coverage_text({"a", "b"}, {"a", "b", "c", "c"}) == Approx(2.0 / 3.0));
    CHECK(coverage_text({"a", "b", "c"}, {"a", "b", "c"}) == Approx(1.0));
    CHECK(coverage({1, 2}, {1, 2, 3}) == Approx(2.0 / 3.0));
}

TEST_CASE("coverage with equal-width binning counts occupied bins") {
    Binning b;
    b.mode = Binning::Mode::EqualWidth;
    b.bin_count = 2;
    // frame spans [0, 10]: bins [0,5) and [5,10]; sample hits only the lower bin
    CHECK(coverage({1, 2, 3}, {0, 1, 4, 6, 10}, b) == Approx(0.5));
    // sample in both bins
    CHECK(coverage({1, 9}, {0, 1, 4, 6, 10}, b) == Approx(1.0));
}

TEST_CASE("histogram conserves counts and honors truncation") {
    auto h = histogram({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 5);
    REQUIRE(h.edges.size() == 6);
    REQUIRE(h.counts.size() == 5);
    size_t total = h.overflow;
    for (auto c : h.counts) total += c;
    CHECK(total == 10);
    CHECK(h.overflow == 0);

    auto t = histogram({1, 2, 3, 100, 200}, 4, 10.0);
    CHECK(t.overflow == 2);
    size_t kept = 0;
    for (auto c : t.counts) kept += c;
    CHECK(kept == 3);
    CHECK(t.edges.back() == Approx(10.0));
}
