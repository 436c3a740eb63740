#include "sage/align.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace sage {

std::string AlignmentMatrix::to_csv() const {
    std::ostringstream os;
    os << "# total_cost=" << total_cost << "\n";
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (j) os << ',';
            os << (at(i, j) ? 1 : 0);
        }
        os << '\n';
    }
    return os.str();
}

AlignmentMatrix dtw_align(const std::vector<double>& u, const std::vector<double>& v) {
    const int n = static_cast<int>(u.size());
    const int m = static_cast<int>(v.size());
    if (n == 0 || m == 0) throw ValidationError("dtw_align requires non-empty sequences");

    const auto cost = [&](int i, int j) { return std::abs(u[i] - v[j]); };

    std::vector<double> dp(static_cast<size_t>(n) * m);
    const auto D = [&](int i, int j) -> double& { return dp[static_cast<size_t>(i) * m + j]; };

    D(0, 0) = cost(0, 0);
    for (int j = 1; j < m; ++j) D(0, j) = D(0, j - 1) + cost(0, j);
    for (int i = 1; i < n; ++i) D(i, 0) = D(i - 1, 0) + cost(i, 0);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < m; ++j)
            D(i, j) = cost(i, j) + std::min({D(i - 1, j - 1), D(i - 1, j), D(i, j - 1)});

    AlignmentMatrix A;
    A.rows = n;
    A.cols = m;
    A.cells.assign(static_cast<size_t>(n) * m, 0);
    A.total_cost = D(n - 1, m - 1);

    // Backtrack one optimal path; prefer diagonal, then advancing i, then j.
    int i = n - 1, j = m - 1;
    A.set(i, j);
    while (i > 0 || j > 0) {
        if (i == 0) {
            --j;
        } else if (j == 0) {
            --i;
        } else {
            const double diag = D(i - 1, j - 1), up = D(i - 1, j), left = D(i, j - 1);
            const double best = std::min({diag, up, left});
            if (diag == best) {
                --i;
                --j;
            } else if (up == best) {
                --i;
            } else {
                --j;
            }
        }
        A.set(i, j);
    }
    return A;
}

namespace {

void enumerate_paths(const std::vector<double>& u, const std::vector<double>& v, int i, int j,
                     double acc, std::vector<std::pair<int, int>>& current,
                     BruteForceResult& best) {
    const int n = static_cast<int>(u.size());
    const int m = static_cast<int>(v.size());
    acc += std::abs(u[i] - v[j]);
    current.emplace_back(i, j);
    if (i == n - 1 && j == m - 1) {
        if (acc < best.min_cost) {
            best.min_cost = acc;
            best.path = current;
        }
    } else {
        if (i + 1 < n && j + 1 < m) enumerate_paths(u, v, i + 1, j + 1, acc, current, best);
        if (i + 1 < n) enumerate_paths(u, v, i + 1, j, acc, current, best);
        if (j + 1 < m) enumerate_paths(u, v, i, j + 1, acc, current, best);
    }
    current.pop_back();
}

}  // namespace

BruteForceResult dtw_brute_force(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.empty() || v.empty()) throw ValidationError("dtw_brute_force requires non-empty sequences");
    if (u.size() + v.size() > 14)
        throw ValidationError("dtw_brute_force size guard: n+m must be <= 14");
    BruteForceResult best;
    best.min_cost = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> current;
    enumerate_paths(u, v, 0, 0, 0.0, current, best);
    return best;
}

std::vector<int> matched_columns(const AlignmentMatrix& A, int i) {
    if (i < 0 || i >= A.rows)
        throw ValidationError("matched_columns row index " + std::to_string(i) +
                              " out of range [0," + std::to_string(A.rows) + ")");
    std::vector<int> out;
    for (int j = 0; j < A.cols; ++j)
        if (A.at(i, j)) out.push_back(j);
    return out;
}

}  // namespace sage
