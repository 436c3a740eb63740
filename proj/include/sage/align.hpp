#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sage/errors.hpp"

namespace sage {

/// Binary adjacency matrix of an optimal DTW warping path between an n-length
/// and an m-length sequence. True cells form a single monotone, contiguous
/// staircase from (0,0) to (n-1,m-1); every row and column holds at least one
/// true cell. total_cost is the sum of |u_i - v_j| over the marked cells and
/// is the global minimum over all admissible paths.
struct AlignmentMatrix {
    int rows = 0;  // n
    int cols = 0;  // m
    std::vector<std::uint8_t> cells;
    double total_cost = 0.0;

    bool at(int i, int j) const { return cells[static_cast<size_t>(i) * cols + j] != 0; }
    void set(int i, int j) { cells[static_cast<size_t>(i) * cols + j] = 1; }

    /// CSV grid of 0/1 prefixed by a "# total_cost=..." comment line.
    std::string to_csv() const;
};

/// Classical dynamic time warping with local cost |u_i - v_j|, step set
/// {(1,0),(0,1),(1,1)} and full boundary conditions. Backtracking tie-break:
/// diagonal first, then the step that advances i, then the one that advances
/// j, making the recovered path deterministic.
AlignmentMatrix dtw_align(const std::vector<double>& u, const std::vector<double>& v);

struct BruteForceResult {
    double min_cost = 0.0;
    std::vector<std::pair<int, int>> path;  // one minimizing path
};

/// Exhaustive enumeration of every admissible warping path; the test oracle
/// for dtw_align. Guarded to n+m <= 14.
BruteForceResult dtw_brute_force(const std::vector<double>& u, const std::vector<double>& v);

/// Columns marked in row i (0-based), in increasing order; never empty for a
/// well-formed matrix. Throws on an out-of-range row.
std::vector<int> matched_columns(const AlignmentMatrix& A, int i);

}  // namespace sage
