#pragma once

#include "planestat/errors.hpp"

#include <array>
#include <functional>
#include <map>
#include <vector>

namespace planestat {

// Row-array representation of a plane partition: positive parts, weakly
// decreasing along rows and columns, row lengths weakly decreasing.
struct PlanePartition {
    std::vector<std::vector<int>> rows;

    long volume() const;
    int trace() const;        // sum of diagonal parts
    int largest_part() const; // rows[0][0]
    int row_count() const;    // number of rows
    int column_count() const; // length of the first row

    friend bool operator==(const PlanePartition& a, const PlanePartition& b) { return a.rows == b.rows; }
    friend bool operator<(const PlanePartition& a, const PlanePartition& b) { return a.rows < b.rows; }
};

// Throws std::invalid_argument when the array violates the defining
// inequalities.
void validate(const PlanePartition& p);

inline constexpr int kOracleMaxN = 20;

// Streams every plane partition of n exactly once. Supported for
// 1 <= n <= kOracleMaxN; outside that range a RangeError is thrown.
void enumerate_plane_partitions(int n, const std::function<void(const PlanePartition&)>& visit);

struct OracleStats {
    int n = 0;
    long count = 0;
    std::map<int, long> traceDist;  // trace value -> count
    std::map<int, long> heightDist; // largest part
    std::map<int, long> widthDist;  // number of rows
    std::map<int, long> depthDist;  // number of columns
};

OracleStats oracle_statistics(int n);

// Permutation of the three coordinate axes of the solid diagram; entry i
// names the source axis of output axis i.
using AxisPermutation = std::array<int, 3>;

// Transports p through its solid diagram: permute cell coordinates,
// reconstruct the plane partition of the permuted diagram.
PlanePartition axis_permute(const PlanePartition& p, const AxisPermutation& perm);

} // namespace planestat
