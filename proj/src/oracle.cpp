#include "planestat/oracle.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace planestat {

long PlanePartition::volume() const {
    long s = 0;
    for (const auto& r : rows)
        for (int v : r) s += v;
    return s;
}

int PlanePartition::trace() const {
    int t = 0;
    for (size_t i = 0; i < rows.size(); ++i)
        if (i < rows[i].size()) t += rows[i][i];
    return t;
}

int PlanePartition::largest_part() const { return rows.empty() ? 0 : rows[0][0]; }
int PlanePartition::row_count() const { return static_cast<int>(rows.size()); }
int PlanePartition::column_count() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }

void validate(const PlanePartition& p) {
    if (p.rows.empty()) throw std::invalid_argument("plane partition has no rows");
    for (size_t h = 0; h < p.rows.size(); ++h) {
        const auto& r = p.rows[h];
        if (r.empty()) throw std::invalid_argument("empty row");
        for (size_t j = 0; j < r.size(); ++j) {
            if (r[j] < 1) throw std::invalid_argument("non-positive part");
            if (j > 0 && r[j] > r[j - 1]) throw std::invalid_argument("row not weakly decreasing");
        }
        if (h > 0) {
            const auto& up = p.rows[h - 1];
            if (r.size() > up.size()) throw std::invalid_argument("row lengths not weakly decreasing");
            for (size_t j = 0; j < r.size(); ++j)
                if (r[j] > up[j]) throw std::invalid_argument("column not weakly decreasing");
        }
    }
}

namespace {

class Enumerator {
public:
    Enumerator(int n, const std::function<void(const PlanePartition&)>& visit)
        : n_(n), visit_(visit) {}

    void run() {
        std::vector<int> caps(static_cast<size_t>(n_), n_);
        emitRows(n_, caps);
    }

private:
    // Choose the next row under the entry-wise caps of the row above, then
    // recurse on what remains.
    void emitRows(int remaining, const std::vector<int>& caps) {
        std::vector<int> row;
        extend(row, 0, remaining, remaining, caps);
    }

    void extend(std::vector<int>& row, size_t pos, int cap, int left, const std::vector<int>& caps) {
        if (pos >= caps.size()) return;
        int hi = std::min({caps[pos], cap, left});
        for (int v = hi; v >= 1; --v) {
            row.push_back(v);
            if (left == v) {
                work_.push_back(row);
                emit();
                work_.pop_back();
            } else {
                work_.push_back(row);
                std::vector<int> nextCaps = row; // stable copy across recursion
                emitRows(left - v, nextCaps);
                work_.pop_back();
                extend(row, pos + 1, v, left - v, caps);
            }
            row.pop_back();
        }
    }

    void emit() {
        PlanePartition p;
        p.rows = work_;
        visit_(p);
    }

    int n_;
    const std::function<void(const PlanePartition&)>& visit_;
    std::vector<std::vector<int>> work_; // rows chosen so far
};

} // namespace

void enumerate_plane_partitions(int n, const std::function<void(const PlanePartition&)>& visit) {
    if (n < 1 || n > kOracleMaxN)
        throw RangeError("enumerate_plane_partitions: n must be in [1, " +
                         std::to_string(kOracleMaxN) + "], got " + std::to_string(n));
    Enumerator e(n, visit);
    e.run();
}

OracleStats oracle_statistics(int n) {
    OracleStats s;
    s.n = n;
    enumerate_plane_partitions(n, [&](const PlanePartition& p) {
        ++s.count;
        ++s.traceDist[p.trace()];
        ++s.heightDist[p.largest_part()];
        ++s.widthDist[p.row_count()];
        ++s.depthDist[p.column_count()];
    });
    return s;
}

PlanePartition axis_permute(const PlanePartition& p, const AxisPermutation& perm) {
    validate(p);
    {
        std::array<bool, 3> seen{false, false, false};
        for (int i : perm) {
            if (i < 0 || i > 2 || seen[static_cast<size_t>(i)])
                throw std::invalid_argument("axis_permute: not a permutation of {0,1,2}");
            seen[static_cast<size_t>(i)] = true;
        }
    }
    // Solid diagram cell set, 0-based.
    std::set<std::array<int, 3>> cells;
    for (size_t h = 0; h < p.rows.size(); ++h)
        for (size_t j = 0; j < p.rows[h].size(); ++j)
            for (int k = 0; k < p.rows[h][j]; ++k)
                cells.insert({static_cast<int>(h), static_cast<int>(j), k});

    std::map<std::pair<int, int>, int> height;
    int maxH = 0;
    for (const auto& c : cells) {
        std::array<int, 3> y{c[perm[0]], c[perm[1]], c[perm[2]]};
        auto key = std::make_pair(y[0], y[1]);
        auto& hgt = height[key];
        hgt = std::max(hgt, y[2] + 1);
        maxH = std::max(maxH, y[0]);
    }

    PlanePartition out;
    out.rows.resize(static_cast<size_t>(maxH) + 1);
    for (const auto& [key, hgt] : height) {
        auto& row = out.rows[static_cast<size_t>(key.first)];
        if (static_cast<size_t>(key.second) >= row.size()) row.resize(static_cast<size_t>(key.second) + 1, 0);
        row[static_cast<size_t>(key.second)] = hgt;
    }
    validate(out);
    return out;
}

} // namespace planestat
