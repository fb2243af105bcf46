#pragma once

#include "latsq/permutation.hpp"

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace latsq {

/// First violation of the Latin property in row-major scan order, or nullopt
/// if `cells` (row-major, order n) is a Latin square over 1..n.
inline std::optional<std::string> validate_grid(int n, std::span<const int> cells)
{
    if (n < 1) return "order must be at least 1";
    if (cells.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        std::ostringstream os;
        os << "grid has " << cells.size() << " cells, expected " << n * n;
        return os.str();
    }
    std::vector<char> row_seen(static_cast<std::size_t>(n) * n, 0);
    std::vector<char> col_seen(static_cast<std::size_t>(n) * n, 0);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const int v = cells[static_cast<std::size_t>(r) * n + c];
            std::ostringstream os;
            if (v < 1 || v > n) {
                os << "cell (" << r + 1 << "," << c + 1 << "): symbol " << v
                   << " out of range 1.." << n;
                return os.str();
            }
            if (row_seen[static_cast<std::size_t>(r) * n + (v - 1)]) {
                os << "row " << r + 1 << ": duplicate symbol " << v;
                return os.str();
            }
            if (col_seen[static_cast<std::size_t>(c) * n + (v - 1)]) {
                os << "column " << c + 1 << ": duplicate symbol " << v;
                return os.str();
            }
            row_seen[static_cast<std::size_t>(r) * n + (v - 1)] = 1;
            col_seen[static_cast<std::size_t>(c) * n + (v - 1)] = 1;
        }
    }
    return std::nullopt;
}

/// n x n array over symbols 1..n with each symbol exactly once per row and
/// per column.  Immutable after construction; construction validates.
class Square {
public:
    /// Row-major cells, symbols in 1..n.  Throws std::invalid_argument with a
    /// diagnostic naming the first violated cell/row/column.
    Square(int n, std::vector<int> cells) : n_(n), cells_(std::move(cells))
    {
        if (auto err = validate_grid(n_, cells_)) throw std::invalid_argument(*err);
    }

    static Square from_rows(const std::vector<std::vector<int>>& rows)
    {
        const int n = static_cast<int>(rows.size());
        std::vector<int> cells;
        cells.reserve(static_cast<std::size_t>(n) * n);
        for (int r = 0; r < n; ++r) {
            if (static_cast<int>(rows[r].size()) != n) {
                std::ostringstream os;
                os << "row " << r + 1 << " has " << rows[r].size() << " entries, expected " << n;
                throw std::invalid_argument(os.str());
            }
            cells.insert(cells.end(), rows[r].begin(), rows[r].end());
        }
        return Square(n, std::move(cells));
    }

    /// The cyclic square l(i,j) = ((i + j - 2) mod n) + 1; reduced.
    static Square cyclic(int n)
    {
        std::vector<int> cells(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cells[static_cast<std::size_t>(i) * n + j] = (i + j) % n + 1;
        return Square(n, std::move(cells));
    }

    int order() const { return n_; }

    /// Symbol at 1-based (row, col).
    int at(int row, int col) const
    {
        if (row < 1 || row > n_ || col < 1 || col > n_)
            throw std::out_of_range("square: cell index out of range");
        return cells_[static_cast<std::size_t>(row - 1) * n_ + (col - 1)];
    }

    std::span<const int> cells() const { return cells_; }

    std::span<const int> row(int i) const
    {
        if (i < 1 || i > n_) throw std::out_of_range("square: row index out of range");
        return std::span<const int>(cells_).subspan(static_cast<std::size_t>(i - 1) * n_, n_);
    }

    bool operator==(const Square&) const = default;
    bool operator<(const Square& o) const
    {
        return n_ != o.n_ ? n_ < o.n_ : cells_ < o.cells_;
    }

private:
    int n_ = 0;
    std::vector<int> cells_;
};

/// r_i: j -> l(i,j).
inline Permutation row_perm(const Square& sq, int i)
{
    auto r = sq.row(i);
    return Permutation(std::vector<int>(r.begin(), r.end()));
}

/// c_j: i -> l(i,j).
inline Permutation col_perm(const Square& sq, int j)
{
    const int n = sq.order();
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) img[i - 1] = sq.at(i, j);
    return Permutation(std::move(img));
}

/// s_l: i -> the j with l(i,j) = l.
inline Permutation sym_perm(const Square& sq, int symbol)
{
    const int n = sq.order();
    if (symbol < 1 || symbol > n) throw std::out_of_range("square: symbol out of range");
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (sq.at(i, j) == symbol) img[i - 1] = j;
    return Permutation(std::move(img));
}

inline bool is_normalised(const Square& sq)
{
    for (int j = 1; j <= sq.order(); ++j)
        if (sq.at(1, j) != j) return false;
    return true;
}

inline bool is_reduced(const Square& sq)
{
    if (!is_normalised(sq)) return false;
    for (int i = 1; i <= sq.order(); ++i)
        if (sq.at(i, 1) != i) return false;
    return true;
}

inline bool is_unipotent(const Square& sq)
{
    for (int i = 2; i <= sq.order(); ++i)
        if (sq.at(i, i) != sq.at(1, 1)) return false;
    return true;
}

inline bool is_normalised_unipotent(const Square& sq)
{
    return is_normalised(sq) && is_unipotent(sq);
}

/// Relabel symbols so the first column reads 1..n, then permute columns so
/// the first row reads 1..n.  The first column does not move, rows do not
/// move, and row-cycle structure against column 1 is preserved.
inline Square reduce(const Square& sq)
{
    const int n = sq.order();
    std::vector<int> sigma(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) sigma[sq.at(i, 1)] = i;
    std::vector<int> cells(static_cast<std::size_t>(n) * n);
    for (int j = 1; j <= n; ++j) {
        const int target = sigma[sq.at(1, j)];
        for (int i = 1; i <= n; ++i)
            cells[static_cast<std::size_t>(i - 1) * n + (target - 1)] = sigma[sq.at(i, j)];
    }
    return Square(n, std::move(cells));
}

/// Replace every row by its inverse permutation.  An involution; exchanges
/// reduced squares with normalised unipotent ones.
inline Square invert_rows(const Square& sq)
{
    const int n = sq.order();
    std::vector<int> cells(static_cast<std::size_t>(n) * n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            cells[static_cast<std::size_t>(i - 1) * n + (sq.at(i, j) - 1)] = j;
    return Square(n, std::move(cells));
}

// --- text format: first line n, then n lines of n space-separated symbols ---

inline std::string format_square(const Square& sq)
{
    std::ostringstream os;
    const int n = sq.order();
    os << n << '\n';
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (j > 1) os << ' ';
            os << sq.at(i, j);
        }
        os << '\n';
    }
    return os.str();
}

inline Square parse_square(std::istream& in)
{
    int n = 0;
    if (!(in >> n)) throw std::invalid_argument("square format: expected order on the first line");
    if (n < 1 || n > 4096) throw std::invalid_argument("square format: order out of supported range");
    std::vector<int> cells(static_cast<std::size_t>(n) * n);
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (!(in >> cells[k])) {
            std::ostringstream os;
            os << "square format: expected " << n * n << " symbols, got " << k;
            throw std::invalid_argument(os.str());
        }
    }
    return Square(n, std::move(cells));
}

inline Square parse_square(const std::string& text)
{
    std::istringstream in(text);
    Square sq = parse_square(in);
    std::string rest;
    if (in >> rest) throw std::invalid_argument("square format: trailing content after grid");
    return sq;
}

} // namespace latsq
