#include <doctest.h>

#include <cmath>
#include <random>

#include "exponent_routes.hpp"
#include "gprand/analytic.hpp"
#include "gprand/bounds.hpp"

using namespace gprand;
using exponent_routes::alt_route;

TEST_CASE("key lemma exponents") {
    const auto a = key_lemma_exponents(2, 1, 1);
    CHECK(a.coeff_exp == mpq_class(1, 2));
    CHECK(a.n_exp == mpq_class(3, 2));
    const auto b = key_lemma_exponents(2, 1, 3);
    CHECK(b.coeff_exp == mpq_class(1, 4));
    CHECK(b.n_exp == mpq_class(7, 4));
    // the coefficient exponent shrinks as more constants join
    mpq_class prev = 1;
    for (int s = 1; s <= 6; ++s) {
        const auto k = key_lemma_exponents(3, mpq_class(1, 2), s);
        CHECK(k.coeff_exp < prev);
        prev = k.coeff_exp;
    }
    CHECK_THROWS_AS((void)key_lemma_exponents(1, 1, 1), DomainError);
    CHECK_THROWS_AS((void)key_lemma_exponents(2, 0, 1), DomainError);
}

TEST_CASE("proposition exponents: spot values") {
    const auto p1 = prop1_exponents(2, 1);
    CHECK(p1.a_exp == mpq_class(2, 5));
    CHECK(p1.n_exp == mpq_class(1, 7));
    CHECK(*p1.precond_a_exp == mpq_class(1, 2));

    const auto p1d3 = prop1_exponents(3, 1);
    CHECK(p1d3.a_exp == mpq_class(1, 3));
    CHECK(p1d3.n_exp == mpq_class(3, 26));

    const auto p2 = prop2_exponents(2, 1);
    CHECK(p2.a_exp == mpq_class(4, 11));
    CHECK(p2.n_exp == mpq_class(1, 15));
    const auto p2t2 = prop2_exponents(2, 2);
    CHECK(p2t2.a_exp == mpq_class(8, 19));
    CHECK(p2t2.n_exp == mpq_class(1, 26));

    const auto p3 = prop3_exponents(2, 1);
    CHECK(p3.a_exp == mpq_class(3, 11));
    CHECK(p3.n_exp == mpq_class(4, 357));
    CHECK(*p3.threshold_exp == mpq_class(1, 1764));

    const auto eta = theorem_eta(2, 1);
    CHECK(*eta.eta_candidate == mpq_class(1, 1764));
}

TEST_CASE("two independent rational routes agree on the whole grid") {
    const std::vector<mpq_class> types = {mpq_class(1, 2), mpq_class(1), mpq_class(2),
                                          mpq_class(5)};
    for (int d = 2; d <= 8; ++d) {
        for (const mpq_class& t : types) {
            const auto alt = alt_route(d, t);
            const auto p1 = prop1_exponents(d, t);
            const auto p2 = prop2_exponents(d, t);
            const auto p3 = prop3_exponents(d, t);
            CHECK(p1.a_exp == alt.p1_a);
            CHECK(p1.n_exp == alt.p1_n);
            CHECK(*p1.precond_a_exp == alt.p1_pre);
            CHECK(p2.a_exp == alt.p2_a);
            CHECK(p2.n_exp == alt.p2_n);
            CHECK(p3.a_exp == alt.p3_a);
            CHECK(p3.n_exp == alt.p3_n);
            CHECK(*p3.threshold_exp == alt.thr);
        }
    }
}

TEST_CASE("grid monotonicity and positivity") {
    const std::vector<mpq_class> types = {mpq_class(1, 2), mpq_class(1), mpq_class(2),
                                          mpq_class(5)};
    for (const mpq_class& t : types) {
        std::optional<mpq_class> prev_eta;
        for (int d = 2; d <= 8; ++d) {
            const auto p1 = prop1_exponents(d, t);
            const auto p2 = prop2_exponents(d, t);
            const auto p3 = prop3_exponents(d, t);
            CHECK(p2.n_exp < p1.n_exp);  // each floor costs decay
            CHECK(p3.n_exp > 0);
            CHECK(p3.a_exp > 0);
            const auto eta = theorem_eta(d, t);
            CHECK(*eta.eta_candidate > 0);
            CHECK(*eta.eta_candidate <= *eta.threshold_exp);
            if (prev_eta) CHECK(*eta.eta_candidate < *prev_eta);
            prev_eta = eta.eta_candidate;
        }
    }
    // decay vanishes as the type degrades
    mpq_class prev = 1;
    for (long tt : {1, 2, 4, 8, 16}) {
        const auto p1 = prop1_exponents(2, mpq_class(tt));
        CHECK(p1.n_exp < prev);
        prev = p1.n_exp;
    }
}

TEST_CASE("floor-free bound precondition") {
    // d=2, t=1: cap is N^(1/2)
    CHECK(prop1_precondition_holds(2, 1, 32, 1024));   // boundary: 32 = 1024^(1/2)
    CHECK(!prop1_precondition_holds(2, 1, 33, 1024));
    CHECK(prop1_precondition_holds(2, 1, 1, 4));
}

TEST_CASE("weyl differencing verifier") {
    // constant sequence: lhs = 1/64, rhs at least 1/32
    std::vector<std::complex<double>> ones(16, {1.0, 0.0});
    const auto w = weyl_check(ones, 1, 4.0);
    CHECK(w.lhs == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
    CHECK(w.rhs >= 1.0 / 32.0);
    CHECK(w.holds);

    // quadratic phases
    std::vector<std::complex<double>> lam(256);
    const double s2 = std::sqrt(2.0);
    for (std::size_t m = 0; m < lam.size(); ++m) {
        const double v = static_cast<double>(m + 1) * s2;
        lam[m] = unit_phase(v - std::floor(v));
    }
    CHECK(weyl_check(lam, 2, 16.0).holds);

    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 0; c < 100; ++c) {
        const std::size_t n = 16 + rng() % 200;
        std::vector<std::complex<double>> l(n);
        for (auto& v : l) v = unit_phase(unit(rng));
        std::uniform_real_distribution<double> qd(1.0, static_cast<double>(n));
        CHECK(weyl_check(l, 1 + static_cast<int>(rng() % 3), qd(rng)).holds);
    }

    CHECK_THROWS_AS((void)weyl_check(ones, 0, 4.0), DomainError);
    CHECK_THROWS_AS((void)weyl_check(ones, 1, 17.0), DomainError);
}

TEST_CASE("linear exponential sum verifier") {
    const auto half = linear_sum_check(0.5, 0, 2);
    CHECK(half.lhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(half.rhs == doctest::Approx(1.0));
    CHECK(half.holds);

    const auto quarter = linear_sum_check(0.25, 0, 4);
    CHECK(quarter.lhs < 1e-12);  // full period cancels

    const auto integral = linear_sum_check(3.0, 5, 9);
    CHECK(integral.lhs == integral.rhs);
    CHECK(integral.rhs == 4.0);

    // the closed form equals the literal sum
    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> ad(-2.0, 2.0);
    for (int c = 0; c < 200; ++c) {
        const double alpha = ad(rng);
        const std::int64_t n1 = static_cast<std::int64_t>(rng() % 50) - 25;
        const std::int64_t n2 = n1 + 1 + static_cast<std::int64_t>(rng() % 60);
        std::complex<double> direct(0.0, 0.0);
        for (std::int64_t n = n1 + 1; n <= n2; ++n) {
            const double u = alpha * static_cast<double>(n);
            direct += unit_phase(u - std::floor(u));
        }
        const auto res = linear_sum_check(alpha, n1, n2);
        CHECK(res.lhs == doctest::Approx(std::abs(direct)).epsilon(1e-8).scale(1.0));
        CHECK(res.holds);
    }
}

TEST_CASE("bound_scan") {
    const GPExpr f = GPExpr::parse("sqrt(5)*floor(sqrt(3)*floor(sqrt(2)*x^2))");
    const std::vector<std::int64_t> ns = {64, 128, 256};
    const auto rows = bound_scan(f, ns, std::nullopt, 1);
    REQUIRE(rows.size() == 3);
    CHECK(std::isnan(rows[0].slope_so_far));
    CHECK(!std::isnan(rows[1].slope_so_far));
    for (const auto& r : rows) {
        CHECK(r.w >= 1);
        CHECK(r.w <= r.n);
        CHECK(r.d > 0.0);
        CHECK(r.d < 1.0);
        CHECK(r.prop2_bound < r.prop3_bound);  // prop2 decays faster at a=1
    }

    // degenerate saturating shape: f(n) = n^2/4 gives the constant sequence
    const GPExpr sat = GPExpr::parse("1/4*floor(1*floor(1*x^2))");
    const auto srows = bound_scan(sat, ns, std::nullopt, 1);
    for (const auto& r : srows) CHECK(r.w == r.n);
    CHECK(srows[2].slope_so_far == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)bound_scan(GPExpr::parse("x^2"), ns, std::nullopt, 1),
                    NotTheoremShape);
}

TEST_CASE("proof parameter report") {
    const auto pp = proof_parameters(2, 1, 1 << 16, 1, 1);
    CHECK(pp.h1 >= 1.0);
    CHECK(pp.h2 >= 1.0);
    CHECK(pp.h3 >= 1.0);
    CHECK(pp.delta2 > 0.0);
    CHECK(pp.delta2 < 1.0);
    CHECK(pp.delta3_1 > 0.0);
    CHECK(pp.delta3_2 > 0.0);
    CHECK(pp.k2 >= 1.0);
    CHECK(pp.rho == doctest::Approx(1.125));
    CHECK(pp.r_order == 9);
    CHECK(pp.prop1_precondition);
    CHECK(!proof_parameters(2, 1, 1024, 33, 1).prop1_precondition);
}
