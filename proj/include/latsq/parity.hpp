#pragma once

#include "latsq/square.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <string_view>

namespace latsq {

/// (row, column, symbol) parity of a Latin square, each in {0,1}.
struct ParityTriple {
    std::uint8_t row = 0;
    std::uint8_t col = 0;
    std::uint8_t sym = 0;

    int index() const { return (row << 2) | (col << 1) | sym; }

    static ParityTriple from_index(int idx)
    {
        return {static_cast<std::uint8_t>((idx >> 2) & 1),
                static_cast<std::uint8_t>((idx >> 1) & 1),
                static_cast<std::uint8_t>(idx & 1)};
    }

    static ParityTriple from_string(std::string_view s)
    {
        if (s.size() != 3 || s.find_first_not_of("01") != std::string_view::npos)
            throw std::invalid_argument("parity triple: expected three bits, e.g. \"011\"");
        return {static_cast<std::uint8_t>(s[0] - '0'), static_cast<std::uint8_t>(s[1] - '0'),
                static_cast<std::uint8_t>(s[2] - '0')};
    }

    std::string str() const
    {
        return {static_cast<char>('0' + row), static_cast<char>('0' + col),
                static_cast<char>('0' + sym)};
    }

    auto operator<=>(const ParityTriple&) const = default;
};

/// Recomputes the parity triple of row-major grids of a fixed order without
/// reallocating scratch; the workhorse behind censuses.
class ParityAccumulator {
public:
    explicit ParityAccumulator(int n)
        : n_(n), buf_(static_cast<std::size_t>(n)), pos_(static_cast<std::size_t>(n) * n)
    {
    }

    ParityTriple operator()(std::span<const int> cells)
    {
        const int n = n_;
        int pr = 0, pc = 0, ps = 0;
        for (int i = 0; i < n; ++i)
            pr ^= detail::sign(cells.subspan(static_cast<std::size_t>(i) * n, n), seen_);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) buf_[i] = cells[static_cast<std::size_t>(i) * n + j];
            pc ^= detail::sign(buf_, seen_);
        }
        // pos_[i][s-1] = column of symbol s in row i
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                pos_[static_cast<std::size_t>(i) * n + (cells[static_cast<std::size_t>(i) * n + j] - 1)] = j + 1;
        for (int s = 0; s < n; ++s) {
            for (int i = 0; i < n; ++i) buf_[i] = pos_[static_cast<std::size_t>(i) * n + s];
            ps ^= detail::sign(buf_, seen_);
        }
        return {static_cast<std::uint8_t>(pr), static_cast<std::uint8_t>(pc),
                static_cast<std::uint8_t>(ps)};
    }

private:
    int n_;
    std::vector<int> buf_;
    std::vector<int> pos_;
    std::vector<char> seen_;
};

inline ParityTriple parity_triple(const Square& sq)
{
    ParityAccumulator acc(sq.order());
    return acc(sq.cells());
}

/// The eight parity properties a square can have.
enum class Property { els, ols, rels, rols, cels, cols, sels, sols };

inline constexpr std::array<Property, 8> all_properties = {
    Property::els,  Property::ols,  Property::rels, Property::rols,
    Property::cels, Property::cols, Property::sels, Property::sols};

inline constexpr std::string_view name(Property p)
{
    switch (p) {
        case Property::els: return "ELS";
        case Property::ols: return "OLS";
        case Property::rels: return "RELS";
        case Property::rols: return "ROLS";
        case Property::cels: return "CELS";
        case Property::cols: return "COLS";
        case Property::sels: return "SELS";
        case Property::sols: return "SOLS";
    }
    return "?";
}

inline constexpr bool has_property(ParityTriple t, Property p)
{
    switch (p) {
        case Property::els: return ((t.row + t.col) & 1) == 0;
        case Property::ols: return ((t.row + t.col) & 1) == 1;
        case Property::rels: return t.row == 0;
        case Property::rols: return t.row == 1;
        case Property::cels: return t.col == 0;
        case Property::cols: return t.col == 1;
        case Property::sels: return t.sym == 0;
        case Property::sols: return t.sym == 1;
    }
    return false;
}

/// Parity flags plus the structural predicates of a square.
struct Classification {
    ParityTriple triple;
    bool els = false, ols = false, rels = false, rols = false;
    bool cels = false, cols = false, sels = false, sols = false;
    bool reduced = false, normalised = false, unipotent = false;

    bool normalised_unipotent() const { return normalised && unipotent; }

    std::vector<std::string> labels() const
    {
        std::vector<std::string> out;
        for (Property p : all_properties)
            if (has_property(triple, p)) out.emplace_back(name(p));
        if (reduced) out.emplace_back("reduced");
        if (normalised) out.emplace_back("normalised");
        if (unipotent) out.emplace_back("unipotent");
        return out;
    }
};

inline Classification classify(const Square& sq)
{
    Classification c;
    c.triple = parity_triple(sq);
    c.els = has_property(c.triple, Property::els);
    c.ols = has_property(c.triple, Property::ols);
    c.rels = has_property(c.triple, Property::rels);
    c.rols = has_property(c.triple, Property::rols);
    c.cels = has_property(c.triple, Property::cels);
    c.cols = has_property(c.triple, Property::cols);
    c.sels = has_property(c.triple, Property::sels);
    c.sols = has_property(c.triple, Property::sols);
    c.reduced = is_reduced(sq);
    c.normalised = is_normalised(sq);
    c.unipotent = is_unipotent(sq);
    return c;
}

} // namespace latsq
