#pragma once

#include "latsq/enumerate.hpp"
#include "latsq/parity.hpp"
#include "latsq/square.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace latsq {

/// A row cycle: a minimal pair of 2 x length submatrix rows sharing the same
/// symbol set.  `columns` lists the cycle's columns in traversal order,
/// starting from its smallest column, chasing symbols through row x.
struct RowCycle {
    int row_x = 0;
    int row_y = 0;
    std::vector<int> columns;

    int length() const { return static_cast<int>(columns.size()); }
    bool odd() const { return length() % 2 == 1; }
    bool contains_column(int c) const
    {
        return std::find(columns.begin(), columns.end(), c) != columns.end();
    }
};

inline std::string to_string(const RowCycle& c)
{
    std::ostringstream os;
    os << "rows=(" << c.row_x << ',' << c.row_y << ") cols=[";
    for (std::size_t i = 0; i < c.columns.size(); ++i) {
        if (i) os << ',';
        os << c.columns[i];
    }
    os << ']';
    return os.str();
}

namespace detail {

inline void check_row_pair(const Square& sq, int x, int y)
{
    if (x < 1 || y < 1 || x > sq.order() || y > sq.order())
        throw std::out_of_range("row cycle: row index out of range");
    if (x >= y) throw std::invalid_argument("row cycle: need two distinct rows x < y");
}

} // namespace detail

/// Decompose rows (x, y), x < y, into row cycles.  The cycles partition the
/// n columns and are listed by smallest contained column.
inline std::vector<RowCycle> row_cycles(const Square& sq, int x, int y)
{
    detail::check_row_pair(sq, x, y);
    const int n = sq.order();
    // next column from c: where row x holds the symbol row y shows at c
    std::vector<int> pos_x(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 1; j <= n; ++j) pos_x[sq.at(x, j)] = j;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    std::vector<RowCycle> out;
    for (int c0 = 1; c0 <= n; ++c0) {
        if (seen[c0]) continue;
        RowCycle cyc;
        cyc.row_x = x;
        cyc.row_y = y;
        for (int c = c0; !seen[c]; c = pos_x[sq.at(y, c)]) {
            seen[c] = 1;
            cyc.columns.push_back(c);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

/// Multiset of row-cycle lengths, largest first.
struct CycleStructure {
    std::vector<int> lengths;

    int total() const { return std::accumulate(lengths.begin(), lengths.end(), 0); }
    bool operator==(const CycleStructure&) const = default;
};

/// Lengths of the cycles of rows (x, y) that avoid `excluded_columns`.  The
/// excluded set must be a union of entire cycles.
inline CycleStructure cycle_structure(const Square& sq, int x, int y,
                                      const std::set<int>& excluded_columns)
{
    for (int c : excluded_columns)
        if (c < 1 || c > sq.order())
            throw std::out_of_range("cycle structure: excluded column out of range");
    CycleStructure out;
    for (const RowCycle& c : row_cycles(sq, x, y)) {
        std::size_t inside = 0;
        for (int col : c.columns) inside += excluded_columns.count(col);
        if (inside == 0) {
            out.lengths.push_back(c.length());
        } else if (inside != c.columns.size()) {
            std::ostringstream os;
            os << "cycle structure: excluded set splits the cycle " << to_string(c);
            throw std::invalid_argument(os.str());
        }
    }
    std::sort(out.lengths.begin(), out.lengths.end(), std::greater<int>());
    return out;
}

namespace detail {

inline bool cycle_of(const Square& sq, const RowCycle& c)
{
    if (c.row_x < 1 || c.row_y < 1 || c.row_x > sq.order() || c.row_y > sq.order() ||
        c.row_x >= c.row_y || c.columns.empty())
        return false;
    std::vector<int> want = c.columns;
    std::sort(want.begin(), want.end());
    for (const RowCycle& have : row_cycles(sq, c.row_x, c.row_y)) {
        if (have.columns.size() != want.size()) continue;
        std::vector<int> got = have.columns;
        std::sort(got.begin(), got.end());
        if (got == want) return true;
    }
    return false;
}

} // namespace detail

/// Exchange the two rows of the cycle on its columns.  An involution on
/// squares; switching an odd cycle flips the column and symbol parities and
/// never the row parity.
inline Square switch_cycle(const Square& sq, const RowCycle& c)
{
    if (!detail::cycle_of(sq, c))
        throw std::invalid_argument("switch: not a row cycle of this square: " + to_string(c));
    const int n = sq.order();
    std::vector<int> cells(sq.cells().begin(), sq.cells().end());
    for (int col : c.columns) {
        std::swap(cells[static_cast<std::size_t>(c.row_x - 1) * n + (col - 1)],
                  cells[static_cast<std::size_t>(c.row_y - 1) * n + (col - 1)]);
    }
    return Square(n, std::move(cells));
}

/// The odd cycle of rows (x, y) avoiding column 1 with the smallest
/// contained column, if any.
inline std::optional<RowCycle> find_switchable_odd(const Square& sq, int x, int y)
{
    for (RowCycle& c : row_cycles(sq, x, y))
        if (c.odd() && !c.contains_column(1)) return std::move(c);
    return std::nullopt;
}

/// Switch the switchable odd cycle of the last two rows of a reduced square,
/// if one exists.  Self-inverse on its domain; maps parity (a,b,c) to
/// (a,1-b,1-c) and preserves reducedness.
inline std::optional<Square> involution(const Square& sq)
{
    if (sq.order() <= 2) throw std::invalid_argument("involution: order must be at least 3");
    if (!is_reduced(sq)) throw std::invalid_argument("involution: square must be reduced");
    auto c = find_switchable_odd(sq, sq.order() - 1, sq.order());
    if (!c) return std::nullopt;
    return switch_cycle(sq, *c);
}

/// The disjoint row pairs (n-1,n), (n-3,n-2), ... scanned by the extended
/// involution; row 1 never appears.
inline std::vector<std::pair<int, int>> scanned_row_pairs(int n)
{
    std::vector<std::pair<int, int>> pairs;
    for (int x = n - 1; x >= 2; x -= 2) pairs.emplace_back(x, x + 1);
    return pairs;
}

/// Like `involution`, but on failure keeps scanning the disjoint row pairs
/// (n-3,n-2), (n-5,n-4), ... and switches the first switchable odd cycle
/// found.  Still self-inverse: switching one pair leaves every other scanned
/// pair's cycles untouched.
inline std::optional<Square> extended_involution(const Square& sq)
{
    if (sq.order() <= 2) throw std::invalid_argument("involution: order must be at least 3");
    if (!is_reduced(sq)) throw std::invalid_argument("involution: square must be reduced");
    for (auto [x, y] : scanned_row_pairs(sq.order())) {
        if (auto c = find_switchable_odd(sq, x, y)) return switch_cycle(sq, *c);
    }
    return std::nullopt;
}

enum class PairPolicy { all_pairs, last_two };

inline constexpr std::string_view to_string(PairPolicy p)
{
    return p == PairPolicy::all_pairs ? "all" : "last-two";
}

/// Connectivity summary of the switching graph on reduced squares of order
/// n: edges are switches of cycles that avoid row 1 and column 1, over row
/// pairs chosen by the policy.  Every edge preserves the row parity, so each
/// component carries a single row parity.
struct GraphSummary {
    int n = 0;
    PairPolicy policy = PairPolicy::all_pairs;
    std::size_t vertex_count = 0;
    struct Component {
        std::size_t size = 0;
        int row_parity = 0;
    };
    std::vector<Component> components; // by decreasing size
};

inline GraphSummary switching_graph(int n, PairPolicy policy = PairPolicy::all_pairs)
{
    if (n > 6) throw std::invalid_argument("switching graph: size guard: order must be at most 6");
    const std::vector<Square> verts = collect_squares(n, SquareClass::reduced);
    std::map<Square, std::size_t> index;
    for (std::size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i], i);

    std::vector<std::size_t> parent(verts.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };

    std::vector<std::pair<int, int>> pairs;
    if (policy == PairPolicy::last_two) {
        if (n >= 3) pairs.emplace_back(n - 1, n);
    } else {
        for (int x = 2; x <= n; ++x)
            for (int y = x + 1; y <= n; ++y) pairs.emplace_back(x, y);
    }

    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (auto [x, y] : pairs) {
            for (const RowCycle& c : row_cycles(verts[i], x, y)) {
                if (c.contains_column(1)) continue;
                const std::size_t j = index.at(switch_cycle(verts[i], c));
                const std::size_t ri = find(i), rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
        }
    }

    GraphSummary out;
    out.n = n;
    out.policy = policy;
    out.vertex_count = verts.size();
    std::map<std::size_t, GraphSummary::Component> comps;
    ParityAccumulator acc(n);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        auto& comp = comps[find(i)];
        ++comp.size;
        if (comp.size == 1) comp.row_parity = acc(verts[i].cells()).row;
    }
    for (auto& [root, comp] : comps) out.components.push_back(comp);
    std::stable_sort(out.components.begin(), out.components.end(),
                     [](const auto& a, const auto& b) {
                         return a.size != b.size ? a.size > b.size : a.row_parity < b.row_parity;
                     });
    return out;
}

} // namespace latsq
