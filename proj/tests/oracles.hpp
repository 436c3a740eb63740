// Independent reference implementations used as test oracles. These are
// deliberately naive transliterations of the definitions and never call the
// library code they check.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "sage/align.hpp"
#include "sage/raster.hpp"

namespace oracle {

// Direct evaluation of the SSIM formula with a uniform window over every
// fully-inside placement, per band, statistics over jointly valid pixels with
// the 1/N convention.
inline double ssim_direct(const sage::Raster& a, const sage::Raster& b, int window, double k1,
                          double k2, double peak) {
    const double c1 = (k1 * peak) * (k1 * peak);
    const double c2 = (k2 * peak) * (k2 * peak);
    double band_total = 0.0;
    int bands = 0;
    for (const auto& [name, ga] : a.bands) {
        const sage::Grid& gb = b.band(name);
        double total = 0.0;
        long windows = 0;
        for (int y0 = 0; y0 + window <= a.height; ++y0) {
            for (int x0 = 0; x0 + window <= a.width; ++x0) {
                std::vector<double> xs, ys;
                for (int y = y0; y < y0 + window; ++y) {
                    for (int x = x0; x < x0 + window; ++x) {
                        if (!a.valid.at(x, y) || !b.valid.at(x, y)) continue;
                        xs.push_back(sage::to_intensity255(ga.at(x, y), a.scale));
                        ys.push_back(sage::to_intensity255(gb.at(x, y), b.scale));
                    }
                }
                if (xs.empty()) continue;
                const double n = static_cast<double>(xs.size());
                double mx = 0, my = 0;
                for (double v : xs) mx += v;
                for (double v : ys) my += v;
                mx /= n;
                my /= n;
                double vx = 0, vy = 0, cov = 0;
                for (size_t i = 0; i < xs.size(); ++i) {
                    vx += (xs[i] - mx) * (xs[i] - mx);
                    vy += (ys[i] - my) * (ys[i] - my);
                    cov += (xs[i] - mx) * (ys[i] - my);
                }
                vx /= n;
                vy /= n;
                cov /= n;
                total += ((2 * mx * my + c1) * (2 * cov + c2)) /
                         ((mx * mx + my * my + c1) * (vx + vy + c2));
                ++windows;
            }
        }
        if (windows > 0) {
            band_total += total / windows;
            ++bands;
        }
    }
    return band_total / bands;
}

struct ErrorLoopResult {
    double e_bar = 0.0;
    double e_phi_bar = 0.0;
    int k = 0;
};

// Straight transliteration of the error-accumulation loop: for every index
// with |u_i - u_phi_i| > h, add the mean absolute difference between the
// (de)hazed value and the ground values matched by its alignment row, then
// divide by the significant count. Returns k == 0 with zeroed means instead
// of dividing.
inline ErrorLoopResult error_loop_reference(const std::vector<double>& u, const std::vector<double>& u_phi,
                                 const std::vector<double>& v, const sage::AlignmentMatrix& A,
                                 const sage::AlignmentMatrix& A_phi, double h) {
    ErrorLoopResult r;
    double e = 0.0, e_phi = 0.0;
    int k = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        if (!(std::abs(u[i] - u_phi[i]) > h)) continue;
        double sum = 0.0;
        int cnt = 0;
        for (size_t j = 0; j < v.size(); ++j) {
            if (A.at(static_cast<int>(i), static_cast<int>(j))) {
                sum += std::abs(u[i] - v[j]);
                ++cnt;
            }
        }
        e += sum / cnt;
        sum = 0.0;
        cnt = 0;
        for (size_t j = 0; j < v.size(); ++j) {
            if (A_phi.at(static_cast<int>(i), static_cast<int>(j))) {
                sum += std::abs(u_phi[i] - v[j]);
                ++cnt;
            }
        }
        e_phi += sum / cnt;
        ++k;
    }
    r.k = k;
    if (k > 0) {
        r.e_bar = e / k;
        r.e_phi_bar = e_phi / k;
    }
    return r;
}

// Checks every structural invariant of an alignment matrix: boundary cells,
// a single monotone contiguous staircase, and full row/column coverage.
inline bool alignment_invariants_hold(const sage::AlignmentMatrix& A) {
    const int n = A.rows, m = A.cols;
    if (n <= 0 || m <= 0) return false;
    if (!A.at(0, 0) || !A.at(n - 1, m - 1)) return false;

    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (A.at(i, j)) cells.emplace_back(i, j);

    std::vector<bool> row_seen(n, false), col_seen(m, false);
    for (const auto& [i, j] : cells) {
        row_seen[i] = true;
        col_seen[j] = true;
    }
    for (bool s : row_seen)
        if (!s) return false;
    for (bool s : col_seen)
        if (!s) return false;

    // Cells are generated row-major; a valid staircase must be exactly this
    // sequence with steps in {(1,0),(0,1),(1,1)}.
    for (size_t t = 0; t + 1 < cells.size(); ++t) {
        const int di = cells[t + 1].first - cells[t].first;
        const int dj = cells[t + 1].second - cells[t].second;
        const bool ok = (di == 1 && dj == 0) || (di == 0 && dj == 1) || (di == 1 && dj == 1);
        if (!ok) return false;
    }
    return true;
}

}  // namespace oracle
