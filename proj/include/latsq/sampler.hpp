#pragma once

#include "latsq/cycles.hpp"
#include "latsq/enumerate.hpp"
#include "latsq/square.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string_view>
#include <thread>

namespace latsq {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Default chain length per sample: 2 * ceil(n^3 ln n) lazy steps, i.e. about
/// ceil(n^3 ln n) proper-to-proper moves.  A heuristic, validated by the
/// chi-square uniformity test at orders 4 and 5.
inline std::uint64_t default_steps(int n)
{
    const double moves = std::ceil(std::pow(n, 3) * std::log(std::max(n, 2)));
    return 2 * static_cast<std::uint64_t>(moves);
}

/// Jacobson-Matthews chain state: an n x n x n 0/1 incidence array with all
/// line sums 1, except possibly one cell at -1 (the improper case, where the
/// three lines through that cell each carry two 1s).
///
/// A chain step walks proper square to proper square: one +-1 subcube move,
/// continued through any improper excursion until the state is proper again.
/// Sampling the state after a fixed number of such steps is what converges
/// to the uniform law; stopping a raw +-1 move count at "the next proper
/// state" instead would oversample squares that sit behind long excursions.
/// Steps are lazy (a fair coin decides whether a step moves at all) so the
/// chain is aperiodic for every order, including the two-state chain at
/// n = 2.
class JacobsonMatthews {
public:
    JacobsonMatthews(int n, std::uint64_t seed)
        : n_(n), f_(cube(n), 0), line_(3 * static_cast<std::size_t>(n) * n, {-1, -1}),
          rng_(splitmix64(seed))
    {
        if (n < 2) throw std::invalid_argument("sampler: order must be at least 2");
        const Square start = Square::cyclic(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) raise(r, c, start.cells()[static_cast<std::size_t>(r) * n + c] - 1);
    }

    int order() const { return n_; }
    bool proper() const { return proper_; }

    int cell(int r, int c, int s) const { return f_[idx(r, c, s)]; }

    /// One lazy step: with probability 1/2 hold, otherwise move to the next
    /// proper state.  The state is proper on return.
    void step()
    {
        if (rng_() & 1) {
            do {
                move();
            } while (!proper_);
        }
    }

    void advance(std::uint64_t steps)
    {
        for (std::uint64_t i = 0; i < steps; ++i) step();
    }

    Square to_square() const
    {
        if (!proper_) throw std::logic_error("sampler: state is improper");
        std::vector<int> cells(static_cast<std::size_t>(n_) * n_);
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c)
                cells[static_cast<std::size_t>(r) * n_ + c] = sym_line(r, c)[0] + 1;
        return Square(n_, std::move(cells));
    }

    /// Every (row,col), (row,sym) and (col,sym) line sums to 1, with at most
    /// one cell at -1 and the rest in {0,1}.
    bool invariants_ok() const
    {
        int negatives = 0;
        for (int v : f_) {
            if (v < -1 || v > 1) return false;
            if (v == -1) ++negatives;
        }
        if (negatives != (proper_ ? 0 : 1)) return false;
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                int rc = 0, rs = 0, cs = 0;
                for (int k = 0; k < n_; ++k) {
                    rc += f_[idx(a, b, k)];
                    rs += f_[idx(a, k, b)];
                    cs += f_[idx(k, a, b)];
                }
                if (rc != 1 || rs != 1 || cs != 1) return false;
            }
        return true;
    }

private:
    using Slots = std::array<int, 2>;

    static std::size_t cube(int n)
    {
        return static_cast<std::size_t>(n) * n * n;
    }

    std::size_t idx(int r, int c, int s) const
    {
        return (static_cast<std::size_t>(r) * n_ + c) * n_ + s;
    }

    // per-line positive cells: sym_line(r,c) holds the symbols with f=1 on
    // (r,c,.), col_line(r,s) the columns on (r,.,s), row_line(c,s) the rows
    // on (.,c,s); slot 0 fills first
    Slots& sym_line(int r, int c) { return line_[static_cast<std::size_t>(r) * n_ + c]; }
    Slots& col_line(int r, int s)
    {
        return line_[static_cast<std::size_t>(n_) * n_ + static_cast<std::size_t>(r) * n_ + s];
    }
    Slots& row_line(int c, int s)
    {
        return line_[2 * static_cast<std::size_t>(n_) * n_ + static_cast<std::size_t>(c) * n_ + s];
    }
    const Slots& sym_line(int r, int c) const
    {
        return line_[static_cast<std::size_t>(r) * n_ + c];
    }

    static void slot_add(Slots& s, int v) { (s[0] < 0 ? s[0] : s[1]) = v; }

    static void slot_remove(Slots& s, int v)
    {
        if (s[0] == v) {
            s[0] = s[1];
            s[1] = -1;
        } else {
            s[1] = -1;
        }
    }

    void raise(int r, int c, int s)
    {
        const std::size_t i = idx(r, c, s);
        if (++f_[i] == 1) {
            slot_add(sym_line(r, c), s);
            slot_add(col_line(r, s), c);
            slot_add(row_line(c, s), r);
        } else { // -1 -> 0: the improper cell is resolved
            proper_ = true;
        }
    }

    void lower(int r, int c, int s)
    {
        const std::size_t i = idx(r, c, s);
        if (--f_[i] == 0) {
            slot_remove(sym_line(r, c), s);
            slot_remove(col_line(r, s), c);
            slot_remove(row_line(c, s), r);
        } else { // 0 -> -1: state becomes improper at this cell
            proper_ = false;
            imp_r_ = r;
            imp_c_ = c;
            imp_s_ = s;
        }
    }

    int uniform_below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    int pick(const Slots& s)
    {
        return s[1] < 0 ? s[0] : s[static_cast<int>(rng_() & 1)];
    }

    // One +-1 move on the 2x2x2 subcube spanned by the pivot and the chosen
    // positive cells on its three lines.
    void move()
    {
        int r, c, s;
        if (proper_) {
            do {
                r = uniform_below(n_);
                c = uniform_below(n_);
                s = uniform_below(n_);
            } while (f_[idx(r, c, s)] != 0);
        } else {
            r = imp_r_;
            c = imp_c_;
            s = imp_s_;
        }
        const int r2 = pick(row_line(c, s));
        const int c2 = pick(col_line(r, s));
        const int s2 = pick(sym_line(r, c));
        raise(r, c, s);
        lower(r, c, s2);
        lower(r, c2, s);
        lower(r2, c, s);
        raise(r, c2, s2);
        raise(r2, c, s2);
        raise(r2, c2, s);
        lower(r2, c2, s2);
    }

    int n_;
    std::vector<std::int8_t> f_;
    std::vector<Slots> line_;
    bool proper_ = true;
    int imp_r_ = -1, imp_c_ = -1, imp_s_ = -1;
    std::mt19937_64 rng_;
};

/// One uniform random Latin square: run the chain for `steps` lazy steps
/// (default default_steps(n)) from the cyclic square.  Deterministic given
/// (n, seed, steps).
inline Square sample(int n, std::uint64_t seed, std::uint64_t steps = 0)
{
    JacobsonMatthews chain(n, seed);
    chain.advance(steps ? steps : default_steps(n));
    return chain.to_square();
}

/// Sample `index` of a reproducible stream: the per-sample seed depends only
/// on (master_seed, index), never on scheduling, so worker counts do not
/// change results.
inline Square sample_indexed(int n, std::uint64_t master_seed, std::uint64_t index,
                             std::uint64_t steps = 0)
{
    return sample(n, splitmix64(master_seed) ^ splitmix64(index * 0xA24BAED4963EE407ULL + 1),
                  steps);
}

struct EventStats {
    std::string event;
    std::uint64_t occurrences = 0;
    double estimate = 0.0;
    double std_error = 0.0; // binomial
};

struct SampleStats {
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<EventStats> events;

    const EventStats& operator[](std::string_view event) const
    {
        for (const auto& e : events)
            if (e.event == event) return e;
        throw std::out_of_range("stats: no such event");
    }
};

inline constexpr std::array<std::string_view, 5> last_two_rows_events = {
    "long_cycle", "few_cycles", "odd_cycle", "switchable_odd", "extended_domain"};

/// Monte-Carlo frequencies, over uniform random squares of order n, of the
/// last-two-rows events: a cycle of length >= n - log n; fewer than
/// 9 sqrt(n) cycles; an odd cycle; a switchable odd cycle (odd, avoiding
/// column 1); and a nonempty extended-involution domain after reduction.
inline SampleStats last_two_rows_stats(int n, std::uint64_t samples, std::uint64_t seed,
                                       double log_base = std::numbers::e, int workers = 1,
                                       std::uint64_t steps = 0)
{
    if (n < 3) throw std::invalid_argument("stats: order must be at least 3");
    constexpr std::size_t n_events = last_two_rows_events.size();
    const double threshold = static_cast<double>(n) - std::log(n) / std::log(log_base);
    const double max_cycles = 9.0 * std::sqrt(static_cast<double>(n));

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi, std::array<std::uint64_t, n_events>& hits) {
        hits.fill(0);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Square sq = sample_indexed(n, seed, i, steps);
            const auto cycles = row_cycles(sq, n - 1, n);
            int longest = 0;
            bool odd = false, switchable = false;
            for (const RowCycle& c : cycles) {
                longest = std::max(longest, c.length());
                if (c.odd()) {
                    odd = true;
                    if (!c.contains_column(1)) switchable = true;
                }
            }
            hits[0] += static_cast<double>(longest) >= threshold;
            hits[1] += static_cast<double>(cycles.size()) < max_cycles;
            hits[2] += odd;
            hits[3] += switchable;
            hits[4] += extended_involution(reduce(sq)).has_value();
        }
    };

    std::array<std::uint64_t, n_events> totals{};
    if (workers <= 1) {
        run_range(0, samples, totals);
    } else {
        std::vector<std::array<std::uint64_t, n_events>> partial(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t lo = samples * w / workers;
            const std::uint64_t hi = samples * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] { run_range(lo, hi, partial[w]); });
        }
        for (auto& t : pool) t.join();
        for (const auto& p : partial)
            for (std::size_t e = 0; e < n_events; ++e) totals[e] += p[e];
    }

    SampleStats out;
    out.n = n;
    out.samples = samples;
    out.seed = seed;
    for (std::size_t e = 0; e < n_events; ++e) {
        EventStats ev;
        ev.event = std::string(last_two_rows_events[e]);
        ev.occurrences = totals[e];
        const double p = samples ? static_cast<double>(totals[e]) / static_cast<double>(samples) : 0.0;
        ev.estimate = p;
        ev.std_error = samples ? std::sqrt(p * (1.0 - p) / static_cast<double>(samples)) : 0.0;
        out.events.push_back(std::move(ev));
    }
    return out;
}

struct UniformityReport {
    int n = 0;
    std::uint64_t samples = 0;
    double statistic = 0.0;
    int dof = 0;
    double p_value = 0.0;
    std::uint64_t min_count = 0;   // least-observed bin
    std::size_t bins = 0;
};

/// Chi-square goodness of fit of the sampler against the enumerated class of
/// order n: per-square bins at n = 4 (all 576 squares), parity-triple bins
/// at n = 5 (the 161280 squares pooled into their 4 populated triples).
inline UniformityReport uniformity_test(int n, std::uint64_t samples, std::uint64_t seed,
                                        int workers = 1, std::uint64_t steps = 0)
{
    if (n != 4 && n != 5)
        throw std::invalid_argument("uniformity: size guard: only orders 4 and 5 have an enumerable reference");

    std::map<std::vector<int>, std::size_t> bin_of;   // only used at n = 4
    std::vector<double> expected;                      // per-bin probability
    if (n == 4) {
        for_each_square(n, SquareClass::all, [&](std::span<const int> g) {
            bin_of.emplace(std::vector<int>(g.begin(), g.end()), bin_of.size());
        });
        expected.assign(bin_of.size(), 1.0 / static_cast<double>(bin_of.size()));
    } else {
        const ParityTally t = tally(n, SquareClass::all, workers);
        expected.resize(8);
        for (int i = 0; i < 8; ++i)
            expected[i] = static_cast<double>(t.counts[i]) / static_cast<double>(t.total());
    }
    const std::size_t bins = expected.size();

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& counts) {
        counts.assign(bins, 0);
        ParityAccumulator acc(n);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Square sq = sample_indexed(n, seed, i, steps);
            if (n == 4)
                ++counts[bin_of.at(std::vector<int>(sq.cells().begin(), sq.cells().end()))];
            else
                ++counts[acc(sq.cells()).index()];
        }
    };

    std::vector<std::uint64_t> counts(bins, 0);
    if (workers <= 1) {
        run_range(0, samples, counts);
    } else {
        std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t lo = samples * w / workers;
            const std::uint64_t hi = samples * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] { run_range(lo, hi, partial[w]); });
        }
        for (auto& t : pool) t.join();
        for (const auto& p : partial)
            for (std::size_t b = 0; b < bins; ++b) counts[b] += p[b];
    }

    UniformityReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.bins = bins;
    bool impossible_hit = false;
    int populated = 0;
    rep.min_count = samples;
    for (std::size_t b = 0; b < bins; ++b) {
        if (expected[b] == 0.0) {
            if (counts[b] > 0) impossible_hit = true;
            continue;
        }
        ++populated;
        rep.min_count = std::min(rep.min_count, counts[b]);
        const double exp_count = expected[b] * static_cast<double>(samples);
        const double diff = static_cast<double>(counts[b]) - exp_count;
        rep.statistic += diff * diff / exp_count;
    }
    rep.dof = populated - 1;
    if (impossible_hit) {
        rep.statistic = std::numeric_limits<double>::infinity();
        rep.p_value = 0.0;
        return rep;
    }
    const boost::math::chi_squared dist(rep.dof);
    rep.p_value = boost::math::cdf(boost::math::complement(dist, rep.statistic));
    return rep;
}

} // namespace latsq
