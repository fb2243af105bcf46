#pragma once

#include "latsq/parity.hpp"
#include "latsq/square.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>

namespace latsq {

enum class SquareClass { all, reduced, normalised_unipotent };

inline constexpr std::string_view to_string(SquareClass c)
{
    switch (c) {
        case SquareClass::all: return "all";
        case SquareClass::reduced: return "reduced";
        case SquareClass::normalised_unipotent: return "normalised_unipotent";
    }
    return "?";
}

inline std::optional<SquareClass> square_class_from_string(std::string_view s)
{
    if (s == "all") return SquareClass::all;
    if (s == "reduced") return SquareClass::reduced;
    if (s == "normalised_unipotent" || s == "nu") return SquareClass::normalised_unipotent;
    return std::nullopt;
}

/// Largest order the exhaustive enumerator accepts for a class.  Order 7 for
/// the reduced and normalised-unipotent classes is a long-running mode.
inline constexpr int max_enumerable_order(SquareClass c)
{
    return c == SquareClass::all ? 5 : 7;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("64-bit count overflow");
    return r;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("64-bit count overflow");
    return r;
}

inline std::uint64_t factorial_u64(int n)
{
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r = checked_mul(r, static_cast<std::uint64_t>(i));
    return r;
}

namespace detail {

// Forced cells of a class: 0 = free, otherwise the required symbol.
inline std::vector<int> fixed_cells(int n, SquareClass cls)
{
    std::vector<int> fixed(static_cast<std::size_t>(n) * n, 0);
    if (cls == SquareClass::reduced || cls == SquareClass::normalised_unipotent)
        for (int j = 0; j < n; ++j) fixed[j] = j + 1;
    if (cls == SquareClass::reduced)
        for (int i = 0; i < n; ++i) fixed[static_cast<std::size_t>(i) * n] = i + 1;
    if (cls == SquareClass::normalised_unipotent)
        for (int i = 0; i < n; ++i) fixed[static_cast<std::size_t>(i) * n + i] = 1;
    return fixed;
}

inline void check_order(int n, SquareClass cls)
{
    if (n < 1) throw std::invalid_argument("enumerate: order must be at least 1");
    if (n > max_enumerable_order(cls)) {
        std::string msg = "enumerate: size guard: class '";
        msg += to_string(cls);
        msg += "' is limited to order ";
        msg += std::to_string(max_enumerable_order(cls));
        throw std::invalid_argument(msg);
    }
}

// Row-major backtracking over the free cells, symbols tried in increasing
// order, so squares are visited in lexicographic row-major order.  When
// nshards > 1, completions of the first free row are distributed round-robin
// and only those of shard `shard` are pursued.
template <bool UseBitmask, class F>
void enumerate_impl(int n, SquareClass cls, F&& visit, int shard, int nshards)
{
    const std::vector<int> fixed = fixed_cells(n, cls);
    const int total = n * n;
    const int boundary = (cls == SquareClass::all ? 1 : 2) * n; // end of first free row
    if (nshards > 1 && boundary >= total && shard != 0) return;

    std::vector<int> grid(static_cast<std::size_t>(total), 0);
    const std::uint32_t full = (n >= 32) ? 0xFFFFFFFFu : ((1u << n) - 1);
    std::vector<std::uint32_t> row_mask(static_cast<std::size_t>(n), 0);
    std::vector<std::uint32_t> col_mask(static_cast<std::size_t>(n), 0);
    std::uint64_t boundary_count = 0;

    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == total) {
            visit(std::span<const int>(grid));
            return;
        }
        if (nshards > 1 && pos == boundary &&
            (boundary_count++ % static_cast<std::uint64_t>(nshards)) !=
                static_cast<std::uint64_t>(shard))
            return;
        const int r = pos / n, c = pos % n;
        if constexpr (UseBitmask) {
            std::uint32_t avail = full & ~(row_mask[r] | col_mask[c]);
            if (const int f = fixed[pos]) {
                const std::uint32_t bit = 1u << (f - 1);
                if (!(avail & bit)) return;
                avail = bit;
            }
            while (avail) {
                const std::uint32_t bit = avail & (0u - avail);
                avail ^= bit;
                grid[pos] = std::countr_zero(bit) + 1;
                row_mask[r] |= bit;
                col_mask[c] |= bit;
                self(self, pos + 1);
                row_mask[r] &= ~bit;
                col_mask[c] &= ~bit;
            }
            grid[pos] = 0;
        } else {
            // reference path: plain scans, no masks
            for (int s = 1; s <= n; ++s) {
                if (fixed[pos] != 0 && s != fixed[pos]) continue;
                bool ok = true;
                for (int cc = 0; cc < c && ok; ++cc)
                    if (grid[static_cast<std::size_t>(r) * n + cc] == s) ok = false;
                for (int rr = 0; rr < r && ok; ++rr)
                    if (grid[static_cast<std::size_t>(rr) * n + c] == s) ok = false;
                if (!ok) continue;
                grid[pos] = s;
                self(self, pos + 1);
                grid[pos] = 0;
            }
        }
    };
    rec(rec, 0);
}

} // namespace detail

/// Visit every member of the class exactly once, in lexicographic row-major
/// order.  The callback receives the row-major grid of the current square.
template <class F>
void for_each_square(int n, SquareClass cls, F&& visit)
{
    detail::check_order(n, cls);
    detail::enumerate_impl<true>(n, cls, std::forward<F>(visit), 0, 1);
}

/// Slow reference enumerator; must produce the identical stream.
template <class F>
void for_each_square_reference(int n, SquareClass cls, F&& visit)
{
    detail::check_order(n, cls);
    detail::enumerate_impl<false>(n, cls, std::forward<F>(visit), 0, 1);
}

inline std::vector<Square> collect_squares(int n, SquareClass cls)
{
    std::vector<Square> out;
    for_each_square(n, cls, [&](std::span<const int> g) {
        out.emplace_back(n, std::vector<int>(g.begin(), g.end()));
    });
    return out;
}

/// Counts of a class keyed by parity triple.
struct ParityTally {
    int n = 0;
    SquareClass cls = SquareClass::all;
    std::array<std::uint64_t, 8> counts{};

    std::uint64_t total() const
    {
        std::uint64_t t = 0;
        for (std::uint64_t c : counts) t = checked_add(t, c);
        return t;
    }

    std::uint64_t count(ParityTriple t) const { return counts[t.index()]; }

    std::uint64_t count(Property p) const
    {
        std::uint64_t t = 0;
        for (int i = 0; i < 8; ++i)
            if (has_property(ParityTriple::from_index(i), p)) t = checked_add(t, counts[i]);
        return t;
    }
};

inline ParityTally tally(int n, SquareClass cls, int workers = 1)
{
    detail::check_order(n, cls);
    ParityTally out;
    out.n = n;
    out.cls = cls;
    if (workers <= 1) {
        ParityAccumulator acc(n);
        for_each_square(n, cls, [&](std::span<const int> g) { ++out.counts[acc(g).index()]; });
        return out;
    }
    std::vector<std::array<std::uint64_t, 8>> partial(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            ParityAccumulator acc(n);
            auto& mine = partial[w];
            mine.fill(0);
            detail::enumerate_impl<true>(
                n, cls, [&](std::span<const int> g) { ++mine[acc(g).index()]; }, w, workers);
        });
    }
    for (auto& t : pool) t.join();
    for (int w = 0; w < workers; ++w)
        for (int i = 0; i < 8; ++i) out.counts[i] = checked_add(out.counts[i], partial[w][i]);
    return out;
}

/// Signed census difference (#even - #odd) for the class.
inline long long alon_tarsi(int n, SquareClass cls, int workers = 1)
{
    const ParityTally t = tally(n, cls, workers);
    return static_cast<long long>(t.count(Property::els)) -
           static_cast<long long>(t.count(Property::ols));
}

struct CheckLine {
    std::string lhs_expr;
    std::string rhs_expr;
    std::uint64_t lhs_value = 0;
    std::uint64_t rhs_value = 0;

    bool pass() const { return lhs_value == rhs_value; }
};

struct CheckReport {
    std::string tag; // "IDENTITY" or "RELATION"
    int n = 0;
    std::vector<CheckLine> lines;

    bool all_pass() const
    {
        for (const auto& l : lines)
            if (!l.pass()) return false;
        return true;
    }

    std::string to_text() const
    {
        std::string out;
        for (const auto& l : lines) {
            out += tag;
            out += ' ';
            out += l.lhs_expr;
            out += " = ";
            out += l.rhs_expr;
            out += " : ";
            out += std::to_string(l.lhs_value);
            out += ' ';
            out += std::to_string(l.rhs_value);
            out += l.pass() ? " PASS" : " FAIL";
            out += '\n';
        }
        return out;
    }
};

namespace detail {

inline void check_line(CheckReport& rep, std::string lhs_expr, std::uint64_t lhs,
                       std::string rhs_expr, std::uint64_t rhs)
{
    rep.lines.push_back({std::move(lhs_expr), std::move(rhs_expr), lhs, rhs});
}

} // namespace detail

/// Check every identity of the applicable column of the identity table
/// against the supplied reduced and normalised-unipotent tallies.
inline CheckReport verify_identities_from(const ParityTally& R, const ParityTally& U)
{
    if (R.n != U.n) throw std::invalid_argument("verify: tallies for different orders");
    const int n = R.n;
    CheckReport rep;
    rep.tag = "IDENTITY";
    rep.n = n;

    const auto rt = [&](std::string_view bits) { return R.count(ParityTriple::from_string(std::string(bits))); };
    const auto rp = [&](Property p) { return R.count(p); };
    const auto up = [&](Property p) { return U.count(p); };
    auto line = [&](std::string l, std::uint64_t lv, std::string r, std::uint64_t rv) {
        detail::check_line(rep, std::move(l), lv, std::move(r), rv);
    };

    const bool first_column = (n % 4 == 0 || n % 4 == 1);
    if (first_column) {
        line("R^ELS", rp(Property::els), "R^SELS", rp(Property::sels));
        line("R^ELS", rp(Property::els), "R^000+R^110", rt("000") + rt("110"));
        line("R^OLS", rp(Property::ols), "R^SOLS", rp(Property::sols));
        line("R^OLS", rp(Property::ols), "R^011+R^101", rt("011") + rt("101"));
        line("U^ELS", up(Property::els), "R^CELS", rp(Property::cels));
        line("R^CELS", rp(Property::cels), "R^000+R^101", rt("000") + rt("101"));
        line("U^OLS", up(Property::ols), "R^COLS", rp(Property::cols));
        line("R^COLS", rp(Property::cols), "R^011+R^110", rt("011") + rt("110"));
        line("R^RELS", rp(Property::rels), "R^000+R^011", rt("000") + rt("011"));
        line("R^RELS", rp(Property::rels), "U^ELS", up(Property::els));
        line("R^ROLS", rp(Property::rols), "R^101+R^110", rt("101") + rt("110"));
        line("R^ROLS", rp(Property::rols), "U^OLS", up(Property::ols));
        line("R^111", rt("111"), "0", 0);
        line("R^100", rt("100"), "0", 0);
        line("R^010", rt("010"), "0", 0);
        line("R^001", rt("001"), "0", 0);
        line("R^011", rt("011"), "R^101", rt("101"));
        if (n % 2 == 0) line("R^101", rt("101"), "R^110", rt("110"));
    } else {
        line("R^ELS", rp(Property::els), "R^SOLS", rp(Property::sols));
        line("R^ELS", rp(Property::els), "R^111+R^001", rt("111") + rt("001"));
        line("R^OLS", rp(Property::ols), "R^SELS", rp(Property::sels));
        line("R^OLS", rp(Property::ols), "R^100+R^010", rt("100") + rt("010"));
        line("U^ELS", up(Property::els), "R^COLS", rp(Property::cols));
        line("R^COLS", rp(Property::cols), "R^111+R^010", rt("111") + rt("010"));
        line("U^OLS", up(Property::ols), "R^CELS", rp(Property::cels));
        line("R^CELS", rp(Property::cels), "R^100+R^001", rt("100") + rt("001"));
        line("R^ROLS", rp(Property::rols), "R^111+R^100", rt("111") + rt("100"));
        line("R^ROLS", rp(Property::rols), "U^ELS", up(Property::els));
        line("R^RELS", rp(Property::rels), "R^010+R^001", rt("010") + rt("001"));
        line("R^RELS", rp(Property::rels), "U^OLS", up(Property::ols));
        line("R^000", rt("000"), "0", 0);
        line("R^011", rt("011"), "0", 0);
        line("R^101", rt("101"), "0", 0);
        line("R^110", rt("110"), "0", 0);
        line("R^100", rt("100"), "R^010", rt("010"));
        if (n % 2 == 0) line("R^010", rt("010"), "R^001", rt("001"));
    }
    return rep;
}

inline CheckReport verify_identities(int n, int workers = 1)
{
    if (n > 6) throw std::invalid_argument("verify: size guard: order must be at most 6");
    return verify_identities_from(tally(n, SquareClass::reduced, workers),
                                  tally(n, SquareClass::normalised_unipotent, workers));
}

/// Counting relations between the three classes: for even n the full class
/// splits as n!(n-1)! copies of the reduced and unipotent censuses; for odd
/// n >= 3 the two parity quadruples of the full census are internally equal;
/// reduced and unipotent censuses always agree under the col/sym swap.
inline CheckReport class_relations(int n, int workers = 1)
{
    if (n > 7) throw std::invalid_argument("relations: size guard: order must be at most 7");
    CheckReport rep;
    rep.tag = "RELATION";
    rep.n = n;
    auto line = [&](std::string l, std::uint64_t lv, std::string r, std::uint64_t rv) {
        detail::check_line(rep, std::move(l), lv, std::move(r), rv);
    };

    const ParityTally R = tally(n, SquareClass::reduced, workers);
    const ParityTally U = tally(n, SquareClass::normalised_unipotent, workers);

    // R^abc = U^acb for every parity triple
    for (int i = 0; i < 8; ++i) {
        const ParityTriple t = ParityTriple::from_index(i);
        const ParityTriple sw{t.row, t.sym, t.col};
        line("R^" + t.str(), R.count(t), "U^" + sw.str(), U.count(sw));
    }

    if (n <= max_enumerable_order(SquareClass::all)) {
        const ParityTally L = tally(n, SquareClass::all, workers);
        const std::uint64_t scale = checked_mul(factorial_u64(n), factorial_u64(n - 1));
        const std::string k = std::to_string(scale);
        line("L", L.total(), k + "*R", checked_mul(scale, R.total()));
        line("L", L.total(), k + "*U", checked_mul(scale, U.total()));
        if (n % 2 == 0) {
            for (Property p : all_properties) {
                const std::string pn(name(p));
                line("L^" + pn, L.count(p), k + "*R^" + pn, checked_mul(scale, R.count(p)));
                line("L^" + pn, L.count(p), k + "*U^" + pn, checked_mul(scale, U.count(p)));
            }
            for (int i = 0; i < 8; ++i) {
                const ParityTriple t = ParityTriple::from_index(i);
                line("L^" + t.str(), L.count(t), k + "*R^" + t.str(),
                     checked_mul(scale, R.count(t)));
                line("L^" + t.str(), L.count(t), k + "*U^" + t.str(),
                     checked_mul(scale, U.count(t)));
            }
        } else if (n >= 3) {
            const char* even_quad[4] = {"000", "011", "101", "110"};
            const char* odd_quad[4] = {"111", "100", "010", "001"};
            for (int i = 1; i < 4; ++i) {
                line(std::string("L^") + even_quad[0],
                     L.count(ParityTriple::from_string(even_quad[0])),
                     std::string("L^") + even_quad[i],
                     L.count(ParityTriple::from_string(even_quad[i])));
                line(std::string("L^") + odd_quad[0],
                     L.count(ParityTriple::from_string(odd_quad[0])),
                     std::string("L^") + odd_quad[i],
                     L.count(ParityTriple::from_string(odd_quad[i])));
            }
        }
    }
    return rep;
}

} // namespace latsq
