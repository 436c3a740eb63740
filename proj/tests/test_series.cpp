#include <doctest.h>

#include <random>

#include "sage/series.hpp"

using namespace sage;

namespace {

NdviSeries daily_series(const std::vector<double>& values, Date start = Date::from_ymd(2021, 4, 1)) {
    NdviSeries s;
    for (size_t i = 0; i < values.size(); ++i)
        s.entries.push_back({start + static_cast<int>(i), values[i]});
    return s;
}

}  // namespace

TEST_CASE("smooth with half_width 0 is the identity") {
    const NdviSeries s = daily_series({0.1, 0.9, 0.4});
    const NdviSeries out = smooth(s, 0);
    for (size_t i = 0; i < s.size(); ++i) {
        CHECK(out.entries[i].value == s.entries[i].value);
        CHECK(out.entries[i].date == s.entries[i].date);
    }
}

TEST_CASE("smooth preserves a constant series") {
    const NdviSeries s = daily_series(std::vector<double>(10, 0.42));
    for (int hw : {1, 2, 5}) {
        for (const auto& e : smooth(s, hw).entries) CHECK(e.value == doctest::Approx(0.42));
    }
}

TEST_CASE("smooth truncates the window at the boundaries") {
    const NdviSeries out = smooth(daily_series({0.0, 3.0, 0.0}), 1);
    CHECK(out.entries[0].value == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(out.entries[1].value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(out.entries[2].value == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("smooth is linear in the values") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> vals(30);
    for (double& v : vals) v = dist(rng);
    const NdviSeries s = daily_series(vals);

    const double a = 2.75;
    std::vector<double> scaled = vals;
    for (double& v : scaled) v *= a;

    const NdviSeries lhs = smooth(daily_series(scaled), 3);
    const NdviSeries rhs = smooth(s, 3);
    for (size_t i = 0; i < vals.size(); ++i)
        CHECK(lhs.entries[i].value == doctest::Approx(a * rhs.entries[i].value).epsilon(1e-12));
}

TEST_CASE("detect_extrema on a single triangular bump") {
    // Rise to 0.5 and back down: one peak, troughs on both sides.
    std::vector<double> vals;
    for (int i = 0; i <= 10; ++i) vals.push_back(0.05 * i);
    for (int i = 9; i >= 0; --i) vals.push_back(0.05 * i);
    const ExtremaSeries ex = detect_extrema(daily_series(vals), 0.1, 0);

    REQUIRE(ex.size() == 3);
    CHECK(ex.entries[0].kind == ExtremumKind::trough);
    CHECK(ex.entries[1].kind == ExtremumKind::peak);
    CHECK(ex.entries[2].kind == ExtremumKind::trough);
    CHECK(ex.entries[1].value == doctest::Approx(0.5));
}

TEST_CASE("detect_extrema on a monotone series is a flat-series error") {
    std::vector<double> vals;
    for (int i = 0; i < 20; ++i) vals.push_back(0.01 * i);
    CHECK_THROWS_AS(detect_extrema(daily_series(vals), 0.05, 0), FlatSeriesError);
}

TEST_CASE("detect_extrema keeps the taller of two close bumps") {
    // Two bumps 10 days apart, heights 0.4 and 0.6; separation bar of 20 days.
    std::vector<double> vals(30, 0.0);
    const auto bump = [&](int center, double height) {
        for (int d = -3; d <= 3; ++d)
            vals[center + d] = std::max(vals[center + d], height * (1.0 - std::abs(d) / 4.0));
    };
    bump(8, 0.4);
    bump(18, 0.6);
    const ExtremaSeries ex = detect_extrema(daily_series(vals), 0.05, 20);

    int peaks = 0;
    for (const auto& e : ex.entries)
        if (e.kind == ExtremumKind::peak) {
            ++peaks;
            CHECK(e.value == doctest::Approx(0.6));
        }
    CHECK(peaks == 1);

    // With no separation requirement both bumps qualify.
    const ExtremaSeries both = detect_extrema(daily_series(vals), 0.05, 0);
    int both_peaks = 0;
    for (const auto& e : both.entries)
        if (e.kind == ExtremumKind::peak) ++both_peaks;
    CHECK(both_peaks == 2);
}

TEST_CASE("detect_extrema output alternates and peaks dominate their troughs") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> step(-0.08, 0.08);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> vals{0.3};
        for (int i = 0; i < 80; ++i)
            vals.push_back(std::clamp(vals.back() + step(rng), 0.0, 1.0));
        ExtremaSeries ex;
        try {
            ex = detect_extrema(daily_series(vals), 0.05, 5);
        } catch (const FlatSeriesError&) {
            continue;
        }
        REQUIRE(ex.size() >= 3);
        CHECK(ex.size() % 2 == 1);
        for (size_t i = 0; i < ex.size(); ++i) {
            const auto expected = (i % 2 == 0) ? ExtremumKind::trough : ExtremumKind::peak;
            CHECK(ex.entries[i].kind == expected);
            if (i > 0) CHECK(ex.entries[i - 1].date < ex.entries[i].date);
            if (ex.entries[i].kind == ExtremumKind::peak) {
                CHECK(ex.entries[i].value >= ex.entries[i - 1].value);
                CHECK(ex.entries[i].value >= ex.entries[i + 1].value);
            }
        }
    }
}

TEST_CASE("minmax_params") {
    const ScaleParams p = minmax_params(std::vector<double>{0.1, 0.5, 0.3});
    CHECK(p.min == 0.1);
    CHECK(p.max == 0.5);

    const ScaleParams q = minmax_params(std::vector<double>{-0.1, 0.9});
    CHECK(q.min == -0.1);
    CHECK(q.max == 0.9);

    CHECK_THROWS_AS(minmax_params(std::vector<double>{0.2, 0.2}), DegenerateRangeError);
    CHECK_THROWS_AS(minmax_params(std::vector<double>{0.2}), DegenerateRangeError);
}

TEST_CASE("normalize by own params maps min to 0 and max to 1 exactly") {
    const NdviSeries s = daily_series({0.31, 0.07, 0.55, 0.2});
    const NdviSeries out = normalize(s, minmax_params(s));
    double lo = 1e9, hi = -1e9;
    for (const auto& e : out.entries) {
        lo = std::min(lo, e.value);
        hi = std::max(hi, e.value);
    }
    CHECK(lo == 0.0);
    CHECK(hi == 1.0);
}

TEST_CASE("normalize with foreign params can leave [0,1]") {
    const std::vector<double> out = normalize(std::vector<double>{0.05}, ScaleParams{0.2, 0.7});
    CHECK(out[0] == doctest::Approx(-0.3).epsilon(1e-12));
}

TEST_CASE("normalize with params (0,1) is the identity") {
    const std::vector<double> vals{0.2, -0.4, 0.9};
    CHECK(normalize(vals, ScaleParams{0.0, 1.0}) == vals);
}

TEST_CASE("normalize is order-preserving") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> vals(40);
    for (double& v : vals) v = dist(rng);
    const auto norm = normalize(vals, minmax_params(vals));
    for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = 0; j < vals.size(); ++j) {
            if (vals[i] < vals[j]) CHECK(norm[i] < norm[j]);
            if (vals[i] == vals[j]) CHECK(norm[i] == norm[j]);
        }
}

TEST_CASE("normalizing u by u_phi's params preserves differences up to the range scale") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> dist(-0.2, 0.9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> u(12), u_phi(12);
        for (double& v : u) v = dist(rng);
        for (double& v : u_phi) v = dist(rng);
        ScaleParams params;
        try {
            params = minmax_params(u_phi);
        } catch (const DegenerateRangeError&) {
            continue;
        }
        const auto un = normalize(u, params);
        const auto pn = normalize(u_phi, params);
        const double span = params.max - params.min;
        for (size_t i = 0; i < u.size(); ++i)
            CHECK(un[i] - pn[i] == doctest::Approx((u[i] - u_phi[i]) / span).epsilon(1e-12));
    }
}

TEST_CASE("normalize rejects degenerate params") {
    CHECK_THROWS_AS(normalize(std::vector<double>{1.0}, ScaleParams{0.3, 0.3}),
                    DegenerateRangeError);
}
