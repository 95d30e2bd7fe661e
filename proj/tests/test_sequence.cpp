#include <doctest.h>

#include <cstring>
#include <random>
#include <sstream>

#include "gprand/sequence.hpp"

using namespace gprand;

namespace {

mpz_class isqrt_scaled(unsigned long k, const mpz_class& m, int bits) {
    // floor(sqrt(k) * m * 2^bits) = isqrt(k * m^2 * 4^bits)
    mpz_class t = m * m * static_cast<long>(k);
    mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), 2 * static_cast<mp_bitcnt_t>(bits));
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    return r;
}

}  // namespace

TEST_CASE("chi on certified values") {
    CHECK(chi(DyadicBall::from_rational(mpq_class(1, 4), 64)) == +1);
    CHECK(chi(DyadicBall::from_rational(mpq_class(-1, 4), 64)) == -1);  // frac 3/4
    CHECK(chi(DyadicBall::from_rational(mpq_class(7, 2), 64)) == -1);   // boundary 1/2
    CHECK(chi(DyadicBall::from_int64(7)) == +1);                        // frac 0
    // undecidable: ball straddling the half boundary
    CHECK_THROWS_AS(chi(DyadicBall::with_radius(8, 4, 2)), PrecisionExhausted);
}

TEST_CASE("generate: reference patterns") {
    const BinarySequence half = generate(GPExpr::parse("x*1/2"), 4);
    CHECK(half.value(1) == -1);  // frac 1/2 maps to -1
    CHECK(half.value(2) == +1);
    CHECK(half.value(3) == -1);
    CHECK(half.value(4) == +1);

    const BinarySequence con = generate(GPExpr::parse("0"), 5);
    for (int i = 1; i <= 5; ++i) CHECK(con.value(i) == +1);

    const GPExpr f = GPExpr::parse("sqrt(5)*floor(sqrt(3)*floor(sqrt(2)*x^2))");
    const BinarySequence e = generate(f, 3);
    CHECK(e.value(1) == +1);
    CHECK(e.value(2) == -1);
    CHECK(e.value(3) == -1);

    // cross-check the three fractional parts through the integer-only route
    for (std::int64_t n = 1; n <= 3; ++n) {
        const mpz_class j =
            isqrt_scaled(3, isqrt_scaled(2, n * n, 0), 0);  // floor(sqrt3*floor(sqrt2 n^2))
        const int bits = 200;
        mpz_class scaled = isqrt_scaled(5, j, bits);
        mpz_class frac_part;
        mpz_fdiv_r_2exp(frac_part.get_mpz_t(), scaled.get_mpz_t(),
                        static_cast<mp_bitcnt_t>(bits));
        const double frac = mpq_class(frac_part, mpz_class(1) << bits).get_d();
        CHECK(e.value(n) == (frac < 0.5 ? +1 : -1));
        if (n == 1) CHECK(frac == doctest::Approx(0.23606797749979).epsilon(1e-12));
        if (n == 2) CHECK(frac == doctest::Approx(0.88854381999832).epsilon(1e-12));
        if (n == 3) CHECK(frac == doctest::Approx(0.72135954999579).epsilon(1e-12));
    }
}

TEST_CASE("chi is 1-periodic on exact dyadics") {
    std::mt19937_64 rng(0x5EED);
    std::uniform_int_distribution<long> mant(-4000000, 4000000);
    for (int i = 0; i < 2000; ++i) {
        const auto x = DyadicBall::exact_dyadic(mant(rng), 12);
        const auto y = add(x, DyadicBall::from_int64(1));
        CHECK(chi(x) == chi(y));
    }
}

TEST_CASE("generate is independent of worker count") {
    const GPExpr f = GPExpr::parse("sqrt(5)*floor(sqrt(3)*floor(sqrt(2)*x^2))");
    const BinarySequence e1 = generate(f, 700, kDefaultPrecision, 1);
    const BinarySequence e3 = generate(f, 700, kDefaultPrecision, 3);
    REQUIRE(e1.size() == e3.size());
    for (std::int64_t i = 1; i <= e1.size(); ++i) CHECK(e1.value(i) == e3.value(i));
}

TEST_CASE("GPSEQ1 layout is bit-exact") {
    BinarySequence s(3);
    s.set(1, +1);
    s.set(2, -1);
    s.set(3, +1);
    std::ostringstream out(std::ios::binary);
    s.write(out);
    const std::string bytes = out.str();
    REQUIRE(bytes.size() == 6 + 8 + 1);
    CHECK(std::memcmp(bytes.data(), "GPSEQ1", 6) == 0);
    CHECK(static_cast<unsigned char>(bytes[6]) == 3);  // N little-endian
    for (int i = 7; i < 14; ++i) CHECK(bytes[i] == 0);
    CHECK(static_cast<unsigned char>(bytes[14]) == 0b101);  // LSB-first, set = +1

    std::istringstream in(bytes, std::ios::binary);
    const BinarySequence r = BinarySequence::read(in);
    REQUIRE(r.size() == 3);
    CHECK(r.value(1) == +1);
    CHECK(r.value(2) == -1);
    CHECK(r.value(3) == +1);

    std::istringstream bad("GPSEQX", std::ios::binary);
    CHECK_THROWS_AS((void)BinarySequence::read(bad), Error);
}

TEST_CASE("prefix keeps leading elements") {
    std::mt19937_64 rng(7);
    BinarySequence s(77);
    for (int i = 1; i <= 77; ++i) s.set(i, rng() % 2 ? +1 : -1);
    const BinarySequence p = s.prefix(21);
    REQUIRE(p.size() == 21);
    for (int i = 1; i <= 21; ++i) CHECK(p.value(i) == s.value(i));
}

TEST_CASE("fractional parts match eval + frac") {
    const GPExpr f = GPExpr::parse("floor(sqrt(2)*x^2)*sqrt(3)");
    const auto fr = fractional_parts(f, 20, 2, 1);
    for (std::int64_t m = 1; m <= 20; ++m) {
        const double direct = f.eval(2 * m + 1).frac_certified().to_float64();
        CHECK(fr[static_cast<std::size_t>(m - 1)] == direct);
    }
}
