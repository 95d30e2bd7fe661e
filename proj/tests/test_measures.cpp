#include <doctest.h>

#include <cmath>
#include <random>

#include "gprand/measures.hpp"

using namespace gprand;

namespace {

BinarySequence from_pattern(std::initializer_list<int> vals) {
    BinarySequence s(static_cast<std::int64_t>(vals.size()));
    std::int64_t i = 1;
    for (int v : vals) s.set(i++, v);
    return s;
}

BinarySequence random_sequence(std::mt19937_64& rng, std::int64_t n) {
    BinarySequence s(n);
    for (std::int64_t i = 1; i <= n; ++i) s.set(i, rng() % 2 ? +1 : -1);
    return s;
}

bool same_report(const WellDistReport& a, const WellDistReport& b) {
    return a.w == b.w && a.witness.a == b.witness.a && a.witness.b == b.witness.b &&
           a.witness.m == b.witness.m && a.witness.u == b.witness.u;
}

std::vector<double> centered_grid(std::int64_t n) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i)
        x[static_cast<std::size_t>(i - 1)] =
            (2.0 * i - 1.0) / (2.0 * static_cast<double>(n));
    return x;
}

}  // namespace

TEST_CASE("progression_sum") {
    const BinarySequence e = from_pattern({+1, -1, +1});
    CHECK(progression_sum(e, 2, 2, -1) == 2);  // e_1 + e_3
    CHECK(progression_sum(e, 3, 1, 0) == 1);
    CHECK(progression_sum(e, 1, 1, 1) == -1);  // singleton e_2
    CHECK_THROWS_AS((void)progression_sum(e, 2, 2, 0), OutOfRange);   // end 4 > 3
    CHECK_THROWS_AS((void)progression_sum(e, 1, 1, -1), OutOfRange);  // start 0 < 1
}

TEST_CASE("well_distribution: reference cases") {
    const auto con = well_distribution(from_pattern({+1, +1, +1, +1, +1}));
    CHECK(con.w == 5);
    CHECK(con.witness.a == 1);
    CHECK(con.witness.b == 0);
    CHECK(con.witness.m == 5);
    CHECK(con.exhaustive);

    const auto three = well_distribution(from_pattern({+1, -1, +1}));
    CHECK(three.w == 2);
    CHECK(three.witness.a == 2);
    CHECK(three.witness.b == -1);
    CHECK(three.witness.m == 2);
    CHECK(three.witness.u == 2);

    const auto alt = well_distribution(from_pattern({+1, -1, +1, -1, +1, -1}));
    CHECK(alt.w == 3);
    CHECK(alt.witness.a == 2);

    const auto single = well_distribution(from_pattern({-1}));
    CHECK(single.w == 1);
    CHECK(single.witness.m == 1);
}

TEST_CASE("well_distribution_naive matches the fast path") {
    // exhaustive over all short sequences
    for (int n = 1; n <= 10; ++n) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            BinarySequence s(n);
            for (int i = 0; i < n; ++i) s.set(i + 1, (mask >> i) & 1 ? +1 : -1);
            const auto fast = well_distribution(s);
            const auto naive = well_distribution_naive(s);
            REQUIRE(same_report(fast, naive));
        }
    }
    // random medium lengths
    std::mt19937_64 rng(0x5EED);
    for (int c = 0; c < 100; ++c) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 256);
        const BinarySequence s = random_sequence(rng, n);
        REQUIRE(same_report(well_distribution(s), well_distribution_naive(s)));
    }
    BinarySequence big(4097);
    for (std::int64_t i = 1; i <= 4097; ++i) big.set(i, +1);
    CHECK_THROWS_AS((void)well_distribution_naive(big), TooLarge);
}

TEST_CASE("well_distribution symmetries and bounds") {
    std::mt19937_64 rng(0xABCD);
    for (int c = 0; c < 50; ++c) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 300);
        const BinarySequence s = random_sequence(rng, n);
        const std::int64_t w = well_distribution(s).w;
        CHECK(w <= n);
        CHECK(well_distribution(s.negated()).w == w);
        CHECK(well_distribution(s.reversed()).w == w);
    }
    // step cap is honored
    const BinarySequence alt = from_pattern({+1, -1, +1, -1, +1, -1});
    const auto capped = well_distribution(alt, 1);
    CHECK(capped.a_max == 1);
    CHECK(!capped.exhaustive);
    CHECK(capped.w == 1);
}

TEST_CASE("well_distribution is schedule independent") {
    std::mt19937_64 rng(123);
    const BinarySequence s = random_sequence(rng, 777);
    const auto t1 = well_distribution(s, std::nullopt, 1);
    const auto t4 = well_distribution(s, std::nullopt, 4);
    CHECK(same_report(t1, t4));
}

TEST_CASE("discrepancy: reference values") {
    const std::vector<double> one{0.5};
    CHECK(discrepancy(one).d == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(discrepancy_naive(one).d == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> two{0.25, 0.75};
    CHECK(discrepancy(two).d == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(discrepancy_naive(two).d == doctest::Approx(0.5).epsilon(1e-12));

    for (std::int64_t n : {1, 2, 7, 50}) {
        const auto grid = centered_grid(n);
        CHECK(discrepancy(grid).d ==
              doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-12));
    }

    CHECK_THROWS_AS((void)discrepancy(std::vector<double>{1.0}), OutOfDomain);
    CHECK_THROWS_AS((void)discrepancy(std::vector<double>{-0.1}), OutOfDomain);
    CHECK_THROWS_AS((void)discrepancy(std::vector<double>{}), DomainError);
}

TEST_CASE("discrepancy formula matches endpoint enumeration") {
    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 0; c < 120; ++c) {
        const std::size_t n = 1 + rng() % 200;
        std::vector<double> pts(n);
        for (double& p : pts) {
            p = unit(rng);
            if (rng() % 4 == 0) p = std::floor(p * 32.0) / 32.0;  // force ties
        }
        const double fast = discrepancy(pts).d;
        const double slow = discrepancy_naive(pts).d;
        CHECK(std::fabs(fast - slow) <= 1e-12);
    }
    std::vector<double> big(5001, 0.25);
    CHECK_THROWS_AS((void)discrepancy_naive(big), TooLarge);
}

TEST_CASE("progression chain inequality") {
    const auto half = progression_discrepancy_chain(GPExpr::parse("x*1/2"), 4, 1, 0);
    CHECK(half.lhs_u == 0);
    CHECK(half.m == 4);
    CHECK(half.rhs == doctest::Approx(2.0 * 4.0 * 0.5));  // D_4 of {.5,0,.5,0} is 1/2
    CHECK(half.lhs_u <= half.rhs);

    const GPExpr f = GPExpr::parse("sqrt(5)*floor(sqrt(3)*floor(sqrt(2)*x^2))");
    const auto full = progression_discrepancy_chain(f, 64, 1, 0);
    CHECK(static_cast<double>(full.lhs_u) <= full.rhs + 1e-9);
    const auto shifted = progression_discrepancy_chain(f, 65, 2, 1);
    CHECK(shifted.m == 32);
    CHECK(static_cast<double>(shifted.lhs_u) <= shifted.rhs + 1e-9);

    CHECK_THROWS_AS((void)progression_discrepancy_chain(f, 4, 5, 3), OutOfRange);
}
