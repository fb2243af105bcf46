#include "latsq/latsq.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace latsq;

namespace {

// independent count of partitions of m into parts >= 2, by a DP recurrence
std::uint64_t count_min2(int m)
{
    // dp[k][r]: partitions of r into parts in [2..k]
    std::vector<std::vector<std::uint64_t>> dp(m + 1, std::vector<std::uint64_t>(m + 1, 0));
    for (int k = 0; k <= m; ++k) dp[k][0] = 1;
    for (int k = 2; k <= m; ++k)
        for (int r = 1; r <= m; ++r)
            dp[k][r] = dp[k - 1][r] + (r >= k ? dp[k][r - k] : 0);
    return dp[m][m];
}

// brute-force fraction of permutations of S_n with a cycle of length >= t
mpq_class brute_long_cycle(int n, int t)
{
    std::uint64_t hit = 0, total = 0;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        ++total;
        int longest = 0;
        for (int l : cycle_lengths(perm)) longest = std::max(longest, l);
        if (longest >= t) ++hit;
    } while (std::next_permutation(perm.begin(), perm.end()));
    mpq_class q(mpz_class(static_cast<unsigned long>(hit)),
                mpz_class(static_cast<unsigned long>(total)));
    q.canonicalize();
    return q;
}

mpq_class brute_no_odd(int n)
{
    std::uint64_t hit = 0, total = 0;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        ++total;
        bool any_odd = false;
        for (int l : cycle_lengths(perm)) any_odd |= (l % 2 == 1);
        if (!any_odd) ++hit;
    } while (std::next_permutation(perm.begin(), perm.end()));
    mpq_class q(mpz_class(static_cast<unsigned long>(hit)),
                mpz_class(static_cast<unsigned long>(total)));
    q.canonicalize();
    return q;
}

} // namespace

TEST_CASE("partition parsing and serialization", "[partitions]")
{
    const Partition p = Partition::parse("3^1 2^1");
    CHECK(p.m() == 5);
    CHECK(p.str() == "2^1 3^1");
    CHECK(Partition::parse("2^2 3^1 5^1").parts_desc() == std::vector<int>{5, 3, 2, 2});
    CHECK(Partition::from_parts({4, 2, 2}).str() == "2^2 4^1");
    CHECK(Partition().m() == 0);
    CHECK_THROWS_AS(Partition::parse("2^x"), std::invalid_argument);
    CHECK_THROWS_AS(Partition::parse("0^1"), std::invalid_argument);
}

TEST_CASE("partitions with parts at least 2", "[partitions]")
{
    CHECK(partitions_min2(0).size() == 1); // the empty partition
    CHECK(partitions_min2(1).empty());

    const auto p2 = partitions_min2(2);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].str() == "2^1");

    const auto p6 = partitions_min2(6);
    REQUIRE(p6.size() == 4);
    CHECK(p6[0].parts_desc() == std::vector<int>{6});
    CHECK(p6[1].parts_desc() == std::vector<int>{4, 2});
    CHECK(p6[2].parts_desc() == std::vector<int>{3, 3});
    CHECK(p6[3].parts_desc() == std::vector<int>{2, 2, 2});

    for (int m : {5, 9, 12, 17}) {
        const auto ps = partitions_min2(m);
        CHECK(ps.size() == count_min2(m));
        for (const Partition& p : ps) {
            REQUIRE(p.m() == m);
            REQUIRE(p.min_part_at_least(2));
        }
    }
}

TEST_CASE("gamma counts derangements of a cycle type", "[partitions]")
{
    CHECK(gamma(Partition::from_parts({5})) == 24);
    CHECK(gamma(Partition::from_parts({3, 2})) == 20);
    CHECK(gamma(Partition::from_parts({2, 2, 2})) == 15);
    CHECK(gamma(Partition::from_parts({5, 3, 2, 2})) == 3991680);
    CHECK(gamma(Partition::from_parts({8, 2, 2})) == 7484400);
    CHECK_THROWS_AS(gamma(Partition::from_parts({3, 1})), std::invalid_argument);
}

TEST_CASE("derangement census against gamma and the recurrence", "[partitions]")
{
    const auto c2 = derangement_census(2);
    REQUIRE(c2.size() == 1);
    CHECK(c2.at(Partition::from_parts({2})) == 1);

    const auto c5 = derangement_census(5);
    CHECK(c5.at(Partition::from_parts({5})) == 24);
    CHECK(c5.at(Partition::from_parts({3, 2})) == 20);

    for (int m = 2; m <= 8; ++m) {
        const auto census = derangement_census(m);
        mpz_class total = 0;
        for (const auto& [type, count] : census) {
            CHECK(gamma(type) == count);
            total += count;
        }
        CHECK(total == derangement_count(m));
        // census covers exactly the partitions with parts >= 2
        CHECK(census.size() == partitions_min2(m).size());
    }
    CHECK_THROWS_AS(derangement_census(10), std::invalid_argument);
}

TEST_CASE("derangement numbers", "[partitions]")
{
    CHECK(derangement_count(0) == 1);
    CHECK(derangement_count(1) == 0);
    CHECK(derangement_count(5) == 44);
    CHECK(derangement_count(14) == mpz_class("32071101049"));
}

TEST_CASE("gamma sums to the derangement count", "[partitions]")
{
    for (int m = 2; m <= 12; ++m) {
        mpz_class sum = 0;
        for (const Partition& p : partitions_min2(m)) sum += gamma(p);
        CHECK(sum == derangement_count(m));
    }
}

TEST_CASE("long cycle probability", "[partitions]")
{
    CHECK(to_string(long_cycle_prob(4)) == "7/12");
    CHECK(to_string(long_cycle_prob(5)) == "9/20");
    CHECK(to_string(long_cycle_prob(6)) == "11/30");
    CHECK(to_string(long_cycle_prob(7)) == "13/42");
    CHECK(to_string(long_cycle_prob(8)) == "73/168");
    CHECK(to_string(long_cycle_prob(9)) == "191/504");

    for (int n = 4; n <= 7; ++n)
        CHECK(long_cycle_prob(n) == brute_long_cycle(n, long_cycle_threshold(n)));

    // a tiny log base pushes the threshold below n/2
    CHECK_THROWS_AS(long_cycle_prob(10, 1.05), std::invalid_argument);
}

TEST_CASE("proportion of permutations without odd cycles", "[partitions]")
{
    CHECK(to_string(wilf_no_odd(2)) == "1/2");
    CHECK(to_string(wilf_no_odd(4)) == "3/8");
    CHECK(to_string(wilf_no_odd(6)) == "5/16");
    CHECK(to_string(wilf_no_odd(8)) == "35/128");
    CHECK(wilf_no_odd(5) == 0);
    CHECK(wilf_no_odd(7) == 0);
    for (int n : {2, 4, 6}) CHECK(wilf_no_odd(n) == brute_no_odd(n));
    CHECK(brute_no_odd(5) == 0);
}

TEST_CASE("odd cycle census", "[partitions]")
{
    const auto d3 = odd_cycle_census(3, true);
    REQUIRE(d3.size() == 1);
    CHECK(d3.at(1) == 2);

    const auto d4 = odd_cycle_census(4, true);
    REQUIRE(d4.size() == 1);
    CHECK(d4.at(0) == 9);

    const auto d5 = odd_cycle_census(5, true);
    CHECK(d5.at(1) == 44);

    const auto d6 = odd_cycle_census(6, true);
    CHECK(d6.at(0) == 225);
    CHECK(d6.at(2) == 40);

    // the number of odd cycles has the parity of m
    for (int m = 2; m <= 7; ++m) {
        for (const auto& [odd, count] : odd_cycle_census(m, false)) REQUIRE(odd % 2 == m % 2);
        std::uint64_t total = 0;
        for (const auto& [odd, count] : odd_cycle_census(m, true)) total += count;
        CHECK(mpz_class(static_cast<unsigned long>(total)) == derangement_count(m));
    }
    CHECK(at_most_one_odd_fraction(odd_cycle_census(6, true)) == Catch::Approx(225.0 / 265.0));
}

TEST_CASE("split set of an even part", "[partitions]")
{
    const SplitSet s8 = split_set(Partition::from_parts({8, 2, 2}), 8);
    CHECK(s8.w == 1);
    REQUIRE(s8.splits.size() == 1);
    CHECK(s8.splits[0].a == 3);
    CHECK(s8.splits[0].b == 5);
    CHECK(s8.splits[0].mu == Partition::from_parts({5, 3, 2, 2}));

    const SplitSet s12 = split_set(Partition::from_parts({12}), 12);
    CHECK(s12.w == 2);
    REQUIRE(s12.splits.size() == 2);
    CHECK(s12.splits[0].a == 3);
    CHECK(s12.splits[1].a == 5);
    CHECK(s12.splits[1].mu == Partition::from_parts({7, 5}));

    // the equal split is excluded but reported
    const SplitSet s6 = split_set(Partition::from_parts({6}), 6);
    CHECK(s6.w == 0);
    CHECK(s6.splits.empty());
    bool equal_flagged = false, one_flagged = false;
    for (const auto& e : s6.excluded) {
        if (e.a == 3 && e.b == 3) equal_flagged = true;
        if (e.a == 1) one_flagged = true;
    }
    CHECK(equal_flagged);
    CHECK(one_flagged);

    CHECK_THROWS_AS(split_set(Partition::from_parts({5, 3}), 5), std::invalid_argument);
    CHECK_THROWS_AS(split_set(Partition::from_parts({4, 2}), 8), std::invalid_argument);
    CHECK_THROWS_AS(split_set(Partition::from_parts({8}), 7), std::invalid_argument);
}

TEST_CASE("gamma ratio closed form equals the direct quotient", "[partitions]")
{
    const Partition l1 = Partition::from_parts({8, 2, 2});
    CHECK(to_string(gamma_ratio(l1, 8, 3)) == "8/15");
    mpq_class direct_l1(gamma(Partition::from_parts({5, 3, 2, 2})), gamma(l1));
    direct_l1.canonicalize();
    CHECK(gamma_ratio(l1, 8, 3) == direct_l1);

    const Partition l2 = Partition::from_parts({12});
    CHECK(to_string(gamma_ratio(l2, 12, 3)) == "4/9");

    // doubling the multiplicity of z doubles the ratio
    const Partition l3 = Partition::from_parts({8, 8, 2, 2});
    CHECK(gamma_ratio(l3, 8, 3) == 2 * gamma_ratio(l1, 8, 3));

    // sweep: every generated split matches the direct gamma quotient
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int half = 2 + static_cast<int>(rng() % 10);
        const auto halves = partitions_min2(half);
        Partition lambda;
        for (const auto& [part, count] : halves[rng() % halves.size()].multiplicities())
            lambda.add_part(2 * part, count);
        for (const auto& [z, count] : lambda.multiplicities()) {
            const mpz_class gl = gamma(lambda);
            for (const SplitCandidate& sc : split_set(lambda, z).splits) {
                mpq_class direct(gamma(sc.mu), gl);
                direct.canonicalize();
                REQUIRE(gamma_ratio(lambda, z, sc.a) == direct);
            }
        }
    }

    // the equal split needs the explicit flag and carries the extra 2!
    const Partition l4 = Partition::from_parts({10});
    CHECK_THROWS_AS(gamma_ratio(l4, 10, 5), std::invalid_argument);
    mpq_class equal_direct(gamma(Partition::from_parts({5, 5})), gamma(l4));
    equal_direct.canonicalize();
    CHECK(gamma_ratio(l4, 10, 5, true) == equal_direct);
    CHECK(to_string(gamma_ratio(l4, 10, 5, true)) == "1/5");
}

TEST_CASE("split bound inequality", "[partitions]")
{
    const SplitBound b10 = split_bound(10);
    CHECK(b10.w == 1);
    CHECK(b10.sum == Catch::Approx(1.0 / 21.0));
    CHECK(b10.bound == Catch::Approx(0.0).margin(1e-15));
    CHECK(b10.holds);

    CHECK(split_bound(100).holds);
    CHECK(split_bound(1000).holds);

    // the floating sum agrees with the exact rational sum at small z
    for (int z = 10; z <= 60; z += 2) {
        const SplitBound b = split_bound(z);
        const double exact = split_sum_exact(z).get_d();
        CHECK(static_cast<double>(b.sum) == Catch::Approx(exact).epsilon(1e-14));
    }

    CHECK_THROWS_AS(split_bound(9), std::invalid_argument);
    CHECK_THROWS_AS(split_bound(8), std::invalid_argument);
}
