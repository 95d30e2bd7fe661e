#pragma once

#include <cstdint>
#include <gmpxx.h>

#include "gprand/errors.hpp"

namespace gprand {

// Default working precision (fractional bits) and the cap of the
// doubling-on-failure retry ladder.
inline constexpr std::int64_t kDefaultPrecision = 256;
inline constexpr std::int64_t kMaxPrecision = 8192;

// An exact real represented as mantissa * 2^(-scale) together with a rigorous
// error radius, also in units of 2^(-scale).  The true value is guaranteed to
// lie in [ (mantissa-radius)*2^-scale, (mantissa+radius)*2^-scale ].
//
// All operations are pure: they never mutate their inputs and never shrink
// the error below what containment requires, so results are safe to use from
// any number of threads.
class DyadicBall {
public:
    DyadicBall() : mant_(0), radius_(0), scale_(0) {}

    static DyadicBall from_integer(const mpz_class& v) {
        DyadicBall b;
        b.mant_ = v;
        return b;
    }
    static DyadicBall from_int64(std::int64_t v) {
        return from_integer(mpz_class(static_cast<long>(v)));
    }

    // Exact dyadic mantissa*2^(-scale), radius zero.
    static DyadicBall exact_dyadic(mpz_class mantissa, std::int64_t scale);

    // Arbitrary ball (radius in units of 2^-scale).
    static DyadicBall with_radius(mpz_class mantissa, std::int64_t scale,
                                  mpz_class radius);

    // p/q at `prec` fractional bits.  Exact (radius 0) when q is a power of
    // two; otherwise the mantissa is the floor of p*2^prec/q with radius 1.
    static DyadicBall from_rational(const mpq_class& q, std::int64_t prec);

    // sqrt(k) at `prec` fractional bits, radius 1 (exact for perfect squares).
    static DyadicBall sqrt_of_integer(unsigned long k, std::int64_t prec);

    // pi at `prec` fractional bits, radius 1.  Machin's formula evaluated in
    // integer arithmetic with 64 guard bits.
    static DyadicBall pi(std::int64_t prec);

    const mpz_class& mantissa() const { return mant_; }
    const mpz_class& radius() const { return radius_; }
    std::int64_t scale() const { return scale_; }
    bool is_exact() const { return radius_ == 0; }

    // Exact interval endpoints (for oracles and containment checks).
    mpq_class lower() const;
    mpq_class upper() const;

    DyadicBall negated() const;

    // Rounds the representation down to `prec` fractional bits, bumping the
    // radius to preserve containment.  No-op when scale <= prec.
    DyadicBall rounded_to(std::int64_t prec) const;

    // floor of every point of the ball; throws StraddlesInteger when the
    // interval spans an integer boundary.
    mpz_class floor_certified() const;

    // this - floor_certified(this); the result lies in [0,1).
    DyadicBall frac_certified() const;

    // Nearest 64-bit float to the center.  Requires radius*2^-scale <= 2^-60.
    double to_float64() const;

    // Certified comparison against p/q: +1 if the whole ball is >= p/q,
    // -1 if the whole ball is < p/q, 0 if undecided.
    int certified_cmp(const mpq_class& threshold) const;

    friend DyadicBall add(const DyadicBall& a, const DyadicBall& b);
    // round_prec < 0 disables output rounding.
    friend DyadicBall mul(const DyadicBall& a, const DyadicBall& b,
                          std::int64_t round_prec);

    bool identical(const DyadicBall& o) const {
        return mant_ == o.mant_ && radius_ == o.radius_ && scale_ == o.scale_;
    }

private:
    mpz_class mant_;
    mpz_class radius_;    // >= 0
    std::int64_t scale_;  // >= 0
};

DyadicBall add(const DyadicBall& a, const DyadicBall& b);
DyadicBall mul(const DyadicBall& a, const DyadicBall& b,
               std::int64_t round_prec = -1);

}  // namespace gprand
