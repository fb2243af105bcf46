#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latsq {

/// Integer partition as a multiset of parts; multiplicities()[i] is the
/// number of parts of size i.  Serialized as "2^a 3^b ..." with zero
/// exponents omitted.
class Partition {
public:
    Partition() = default;

    static Partition from_parts(std::span<const int> parts)
    {
        Partition p;
        for (int x : parts) p.add_part(x);
        return p;
    }

    static Partition from_parts(std::initializer_list<int> parts)
    {
        return from_parts(std::span<const int>(parts.begin(), parts.end()));
    }

    static Partition parse(std::string_view text)
    {
        Partition p;
        std::istringstream in{std::string(text)};
        std::string tok;
        while (in >> tok) {
            const auto caret = tok.find('^');
            try {
                if (caret == std::string::npos) {
                    p.add_part(std::stoi(tok));
                } else {
                    const int part = std::stoi(tok.substr(0, caret));
                    const int count = std::stoi(tok.substr(caret + 1));
                    if (count < 0) throw std::invalid_argument("negative exponent");
                    for (int k = 0; k < count; ++k) p.add_part(part);
                }
            } catch (const std::exception&) {
                throw std::invalid_argument("partition: cannot parse token '" + tok + "'");
            }
        }
        return p;
    }

    void add_part(int part, int count = 1)
    {
        if (part < 1) throw std::invalid_argument("partition: parts must be positive");
        if (count == 0) return;
        mult_[part] += count;
        m_ += part * count;
    }

    void remove_part(int part, int count = 1)
    {
        auto it = mult_.find(part);
        if (it == mult_.end() || it->second < count)
            throw std::invalid_argument("partition: removing a part that is not present");
        it->second -= count;
        if (it->second == 0) mult_.erase(it);
        m_ -= part * count;
    }

    int m() const { return m_; }

    int part_count() const
    {
        int t = 0;
        for (const auto& [part, count] : mult_) t += count;
        return t;
    }

    int multiplicity(int part) const
    {
        auto it = mult_.find(part);
        return it == mult_.end() ? 0 : it->second;
    }

    const std::map<int, int>& multiplicities() const { return mult_; }

    bool min_part_at_least(int k) const
    {
        return mult_.empty() || mult_.begin()->first >= k;
    }

    bool all_parts_even() const
    {
        for (const auto& [part, count] : mult_)
            if (part % 2 != 0) return false;
        return true;
    }

    int odd_part_count() const
    {
        int t = 0;
        for (const auto& [part, count] : mult_)
            if (part % 2 == 1) t += count;
        return t;
    }

    std::vector<int> parts_desc() const
    {
        std::vector<int> out;
        for (auto it = mult_.rbegin(); it != mult_.rend(); ++it)
            out.insert(out.end(), static_cast<std::size_t>(it->second), it->first);
        return out;
    }

    std::string str() const
    {
        std::string out;
        for (const auto& [part, count] : mult_) {
            if (!out.empty()) out += ' ';
            out += std::to_string(part);
            out += '^';
            out += std::to_string(count);
        }
        return out;
    }

    auto operator<=>(const Partition&) const = default;

private:
    int m_ = 0;
    std::map<int, int> mult_; // part size -> count, counts > 0
};

/// All partitions of m into parts of size at least 2, ordered by decreasing
/// largest part, then reverse-lexicographically on the decreasing part list.
inline std::vector<Partition> partitions_min2(int m)
{
    if (m < 0) throw std::invalid_argument("partitions: m must be non-negative");
    std::vector<Partition> out;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int remaining, int cap) -> void {
        if (remaining == 0) {
            out.push_back(Partition::from_parts(parts));
            return;
        }
        for (int k = std::min(cap, remaining); k >= 2; --k) {
            if (remaining - k == 1) continue; // a trailing part of size 1 is never allowed
            parts.push_back(k);
            self(self, remaining - k, k);
            parts.pop_back();
        }
    };
    rec(rec, m, m);
    return out;
}

/// Number of derangements of m points with cycle type lambda:
/// m! / prod_i(lambda_i! * i^lambda_i).  Exact.
inline mpz_class gamma(const Partition& lambda)
{
    if (!lambda.min_part_at_least(2))
        throw std::invalid_argument("gamma: a cycle type with parts of size 1 is not a derangement type");
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(lambda.m()));
    mpz_class den = 1;
    for (const auto& [part, count] : lambda.multiplicities()) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(count));
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(part),
                      static_cast<unsigned long>(count));
        den *= f * pw;
    }
    return num / den;
}

/// D_m by the recurrence D_m = (m-1)(D_{m-1} + D_{m-2}).
inline mpz_class derangement_count(int m)
{
    if (m < 0) throw std::invalid_argument("derangements: m must be non-negative");
    mpz_class prev2 = 1, prev1 = 0; // D_0, D_1
    if (m == 0) return prev2;
    if (m == 1) return prev1;
    mpz_class cur;
    for (int i = 2; i <= m; ++i) {
        cur = (i - 1) * (prev1 + prev2);
        prev2 = prev1;
        prev1 = cur;
    }
    return cur;
}

namespace detail {

// Iterate all permutations of 1..m; callback gets the sorted-descending cycle
// lengths and whether the permutation is a derangement.
template <class F>
void for_each_cycle_type(int m, F&& visit)
{
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<char> seen(static_cast<std::size_t>(m));
    std::vector<int> lengths;
    do {
        std::fill(seen.begin(), seen.end(), 0);
        lengths.clear();
        bool derangement = true;
        for (int i = 0; i < m; ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = perm[j] - 1) {
                seen[j] = 1;
                ++len;
            }
            if (len == 1) derangement = false;
            lengths.push_back(len);
        }
        std::sort(lengths.begin(), lengths.end(), std::greater<int>());
        visit(std::span<const int>(lengths), derangement);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

inline void check_census_order(int m)
{
    if (m < 1) throw std::invalid_argument("census: m must be at least 1");
    if (m > 9) throw std::invalid_argument("census: size guard: factorial brute force is limited to m <= 9");
}

} // namespace detail

/// Brute-force census of derangements of 1..m binned by cycle type.
inline std::map<Partition, std::uint64_t> derangement_census(int m)
{
    detail::check_census_order(m);
    std::map<Partition, std::uint64_t> out;
    detail::for_each_cycle_type(m, [&](std::span<const int> lengths, bool derangement) {
        if (derangement) ++out[Partition::from_parts(lengths)];
    });
    return out;
}

/// Histogram of the number of odd cycles over S_m or over its derangements.
inline std::map<int, std::uint64_t> odd_cycle_census(int m, bool derangements_only)
{
    detail::check_census_order(m);
    std::map<int, std::uint64_t> out;
    detail::for_each_cycle_type(m, [&](std::span<const int> lengths, bool derangement) {
        if (derangements_only && !derangement) return;
        int odd = 0;
        for (int l : lengths) odd += l & 1;
        ++out[odd];
    });
    return out;
}

/// Fraction of the census mass in the buckets 0 and 1.
inline double at_most_one_odd_fraction(const std::map<int, std::uint64_t>& census)
{
    std::uint64_t total = 0, low = 0;
    for (const auto& [odd, count] : census) {
        total += count;
        if (odd <= 1) low += count;
    }
    return total == 0 ? 0.0 : static_cast<double>(low) / static_cast<double>(total);
}

/// Smallest cycle length counted as "long" for order n: ceil(n - log n),
/// natural log by default.
inline int long_cycle_threshold(int n, double log_base = std::numbers::e)
{
    const double log_n = std::log(static_cast<double>(n)) / std::log(log_base);
    return static_cast<int>(std::ceil(static_cast<double>(n) - log_n));
}

/// Probability that a uniform permutation of 1..n has a cycle of length at
/// least n - log n, as an exact rational: sum of 1/i for i in
/// [ceil(n - log n), n].  Requires the threshold to exceed n/2 so at most one
/// such cycle exists.
inline mpq_class long_cycle_prob(int n, double log_base = std::numbers::e)
{
    if (n < 1) throw std::invalid_argument("long cycle: order must be at least 1");
    const int t = long_cycle_threshold(n, log_base);
    if (2 * t <= n) {
        std::ostringstream os;
        os << "long cycle: threshold " << t << " does not exceed n/2 = " << n / 2.0
           << "; two such cycles could coexist and the harmonic sum no longer counts a probability";
        throw std::invalid_argument(os.str());
    }
    mpq_class sum = 0;
    for (int i = std::max(t, 1); i <= n; ++i) {
        mpq_class term(1, i);
        term.canonicalize();
        sum += term;
    }
    return sum;
}

/// Proportion of permutations in S_n with no odd cycle: 2^-n n!/((n/2)!)^2
/// for even n, exactly 0 for odd n (an odd-order permutation always has an
/// odd cycle).
inline mpq_class wilf_no_odd(int n)
{
    if (n < 0) throw std::invalid_argument("wilf: n must be non-negative");
    if (n % 2 == 1) return mpq_class(0);
    mpz_class fact_n, fact_half, pow2;
    mpz_fac_ui(fact_n.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_fac_ui(fact_half.get_mpz_t(), static_cast<unsigned long>(n / 2));
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(n));
    mpq_class out(fact_n, pow2 * fact_half * fact_half);
    out.canonicalize();
    return out;
}

struct SplitCandidate {
    int a = 0;
    int b = 0; // z - a
    Partition mu;
};

struct SplitExclusion {
    int a = 0;
    int b = 0;
    std::string reason;
};

struct SplitSet {
    int z = 0;
    int w = 0; // floor((z-3)/4), the number of admissible splits
    std::vector<SplitCandidate> splits;
    std::vector<SplitExclusion> excluded;
};

/// All ways of splitting one part of size z of an all-even-parts partition
/// into two odd parts a < z-a with a >= 3.  The split (1, z-1) and the equal
/// split a = z-a are excluded and reported as such.
inline SplitSet split_set(const Partition& lambda, int z)
{
    if (!lambda.min_part_at_least(2) || !lambda.all_parts_even())
        throw std::invalid_argument("split set: partition must have all parts even (and at least 2)");
    if (z % 2 != 0) throw std::invalid_argument("split set: z must be even");
    if (lambda.multiplicity(z) < 1)
        throw std::invalid_argument("split set: partition has no part of size z");

    SplitSet out;
    out.z = z;
    out.w = (z - 3) / 4;
    out.excluded.push_back({1, z - 1, "a part of size 1 is not allowed"});
    for (int a = 3; 2 * a <= z; a += 2) {
        if (2 * a == z) {
            out.excluded.push_back({a, a, "equal split excluded: requires a < z-a"});
            continue;
        }
        Partition mu = lambda;
        mu.remove_part(z);
        mu.add_part(a);
        mu.add_part(z - a);
        out.splits.push_back({a, z - a, std::move(mu)});
    }
    return out;
}

/// gamma(mu)/gamma(lambda) for the split of a part z into (a, z-a) as an
/// exact rational: z*lambda_z / (a(z-a)) for a < z-a.  The equal split
/// a = z-a (where mu gains two equal parts) is only served when
/// allow_equal_split is set, with the extra 2! accounted for.
inline mpq_class gamma_ratio(const Partition& lambda, int z, int a, bool allow_equal_split = false)
{
    if (!lambda.min_part_at_least(2) || !lambda.all_parts_even())
        throw std::invalid_argument("gamma ratio: partition must have all parts even (and at least 2)");
    if (z % 2 != 0) throw std::invalid_argument("gamma ratio: z must be even");
    const int lz = lambda.multiplicity(z);
    if (lz < 1) throw std::invalid_argument("gamma ratio: partition has no part of size z");
    if (a % 2 != 1 || a < 3 || a > z - a)
        throw std::invalid_argument("gamma ratio: need odd a with 3 <= a <= z-a");
    if (2 * a == z) {
        if (!allow_equal_split)
            throw std::invalid_argument("gamma ratio: equal split requested without allow_equal_split");
        mpq_class out(mpz_class(2 * lz), mpz_class(z));
        out.canonicalize();
        return out;
    }
    mpq_class out(mpz_class(z) * lz, mpz_class(a) * (z - a));
    out.canonicalize();
    return out;
}

struct SplitBound {
    int z = 0;
    int w = 0;
    long double sum = 0;   // sum over a=1..w of 1/((2a+1)(z-2a-1))
    long double bound = 0; // (1/2z) log((2w+1)(z-3) / (3(z-2w-1)))
    bool holds = false;    // sum >= bound, with 1e-12 slack
};

/// Lower-bound comparison behind the split-mass estimate: the discrete sum
/// dominates its integral comparison.  Evaluated in 80-bit floating point.
inline SplitBound split_bound(int z)
{
    if (z % 2 != 0 || z < 10)
        throw std::invalid_argument("split bound: z must be even and at least 10");
    SplitBound out;
    out.z = z;
    out.w = (z - 3) / 4;
    for (int a = 1; a <= out.w; ++a)
        out.sum += 1.0L / (static_cast<long double>(2 * a + 1) * (z - 2 * a - 1));
    const long double num = static_cast<long double>(2 * out.w + 1) * (z - 3);
    const long double den = 3.0L * (z - 2 * out.w - 1);
    out.bound = std::log(num / den) / (2.0L * z);
    out.holds = out.sum >= out.bound - 1e-12L;
    return out;
}

/// Exact-rational version of the split-bound sum, for cross-checking the
/// floating-point accumulation at small z.
inline mpq_class split_sum_exact(int z)
{
    if (z % 2 != 0 || z < 10)
        throw std::invalid_argument("split bound: z must be even and at least 10");
    const int w = (z - 3) / 4;
    mpq_class sum = 0;
    for (int a = 1; a <= w; ++a) {
        mpq_class term(mpz_class(1), mpz_class(2 * a + 1) * (z - 2 * a - 1));
        term.canonicalize();
        sum += term;
    }
    return sum;
}

/// "p/q" in lowest terms ("p" when q = 1).
inline std::string to_string(const mpq_class& q) { return q.get_str(); }

} // namespace latsq
