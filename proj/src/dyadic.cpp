#include "gprand/dyadic.hpp"

#include <cmath>
#include <limits>

namespace gprand {

namespace {

mpz_class shl(const mpz_class& v, std::int64_t bits) {
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    return r;
}

mpz_class floor_shr(const mpz_class& v, std::int64_t bits) {
    mpz_class r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    return r;
}

mpz_class ceil_shr(const mpz_class& v, std::int64_t bits) {
    mpz_class r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    return r;
}

// atan(1/x) * 2^bits in integer arithmetic.  |result - exact| <= slack units.
mpz_class atan_inv_scaled(unsigned long x, std::int64_t bits, mpz_class& slack) {
    mpz_class num = shl(1, bits) / x;
    mpz_class total = num;
    slack = 1;
    const unsigned long x2 = x * x;
    unsigned long k = 1;
    while (num != 0) {
        num /= x2;
        mpz_class term = num / (2 * k + 1);
        if (k & 1)
            total -= term;
        else
            total += term;
        slack += k + 2;  // two truncated divisions plus propagated error
        ++k;
    }
    slack += 1;  // tail of the alternating series
    return total;
}

}  // namespace

DyadicBall DyadicBall::exact_dyadic(mpz_class mantissa, std::int64_t scale) {
    if (scale < 0) throw DomainError("dyadic scale must be non-negative");
    DyadicBall b;
    b.mant_ = std::move(mantissa);
    b.scale_ = scale;
    return b;
}

DyadicBall DyadicBall::with_radius(mpz_class mantissa, std::int64_t scale,
                                   mpz_class radius) {
    if (scale < 0) throw DomainError("dyadic scale must be non-negative");
    if (radius < 0) throw DomainError("dyadic radius must be non-negative");
    DyadicBall b;
    b.mant_ = std::move(mantissa);
    b.scale_ = scale;
    b.radius_ = std::move(radius);
    return b;
}

DyadicBall DyadicBall::from_rational(const mpq_class& q, std::int64_t prec) {
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    DyadicBall b;
    if (mpz_popcount(den.get_mpz_t()) == 1) {
        // power-of-two denominator: exactly representable
        std::int64_t j = static_cast<std::int64_t>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
        b.mant_ = num;
        b.scale_ = j;
        return b;
    }
    mpz_class scaled = shl(num, prec);
    mpz_fdiv_q(b.mant_.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    b.scale_ = prec;
    b.radius_ = 1;
    return b;
}

DyadicBall DyadicBall::sqrt_of_integer(unsigned long k, std::int64_t prec) {
    mpz_class kk(k);
    DyadicBall b;
    if (mpz_perfect_square_p(kk.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), kk.get_mpz_t());
        b.mant_ = r;
        return b;
    }
    // floor(sqrt(k * 2^(2 prec))) = floor(sqrt(k) * 2^prec)
    mpz_class arg = shl(kk, 2 * prec);
    mpz_sqrt(b.mant_.get_mpz_t(), arg.get_mpz_t());
    b.scale_ = prec;
    b.radius_ = 1;
    return b;
}

DyadicBall DyadicBall::pi(std::int64_t prec) {
    const std::int64_t work = prec + 64;
    mpz_class s1, s2;
    mpz_class a1 = atan_inv_scaled(5, work, s1);
    mpz_class a2 = atan_inv_scaled(239, work, s2);
    mpz_class piw = 16 * a1 - 4 * a2;
    mpz_class slack = 16 * s1 + 4 * s2;
    // slack stays far below 2^63, so rounding to `prec` bits keeps the total
    // error under one output ulp: slack*2^-64 + 1/2 < 1.
    if (mpz_sizeinbase(slack.get_mpz_t(), 2) >= 62)
        throw Error("pi: internal slack bound exceeded");
    DyadicBall b;
    b.mant_ = floor_shr(piw + shl(1, 63), 64);  // round to nearest
    b.scale_ = prec;
    b.radius_ = 1;
    return b;
}

mpq_class DyadicBall::lower() const {
    mpq_class r(mant_ - radius_);
    mpq_class d(shl(1, scale_));
    r /= d;
    return r;
}

mpq_class DyadicBall::upper() const {
    mpq_class r(mant_ + radius_);
    mpq_class d(shl(1, scale_));
    r /= d;
    return r;
}

DyadicBall DyadicBall::negated() const {
    DyadicBall b(*this);
    b.mant_ = -b.mant_;
    return b;
}

DyadicBall DyadicBall::rounded_to(std::int64_t prec) const {
    if (scale_ <= prec) return *this;
    const std::int64_t sh = scale_ - prec;
    DyadicBall b;
    b.scale_ = prec;
    b.mant_ = floor_shr(mant_, sh);
    b.radius_ = ceil_shr(radius_, sh) + 1;  // +1 absorbs the center shift
    return b;
}

mpz_class DyadicBall::floor_certified() const {
    mpz_class qlo = floor_shr(mant_ - radius_, scale_);
    mpz_class qhi = floor_shr(mant_ + radius_, scale_);
    if (qlo != qhi) throw StraddlesInteger("ball straddles an integer boundary");
    return qlo;
}

DyadicBall DyadicBall::frac_certified() const {
    mpz_class q = floor_certified();
    DyadicBall b(*this);
    b.mant_ -= shl(q, scale_);
    return b;
}

double DyadicBall::to_float64() const {
    // radius * 2^-scale <= 2^-60
    if (radius_ != 0) {
        if (scale_ < 60 || radius_ > shl(1, scale_ - 60))
            throw InsufficientPrecision("ball too wide for float64 conversion");
    }
    if (mant_ == 0) return 0.0;
    const bool neg = mant_ < 0;
    mpz_class a = abs(mant_);
    const std::size_t nbits = mpz_sizeinbase(a.get_mpz_t(), 2);
    double mag;
    if (nbits <= 53) {
        mag = std::ldexp(a.get_d(), static_cast<int>(-scale_));
    } else {
        // keep 53 bits plus a round bit; round to nearest, ties to even
        const std::int64_t sh = static_cast<std::int64_t>(nbits) - 54;
        mpz_class top = floor_shr(a, sh);
        const bool sticky = mpz_scan1(a.get_mpz_t(), 0) < static_cast<mp_bitcnt_t>(sh);
        unsigned long t = top.get_ui();
        const bool round_bit = t & 1;
        t >>= 1;
        if (round_bit && (sticky || (t & 1))) ++t;
        mag = std::ldexp(static_cast<double>(t), static_cast<int>(sh + 1 - scale_));
    }
    if (!std::isfinite(mag)) throw Error("to_float64: value out of double range");
    return neg ? -mag : mag;
}

int DyadicBall::certified_cmp(const mpq_class& threshold) const {
    // whole ball >= p/q  <=>  (mant - radius) * q >= p * 2^scale
    const mpz_class& p = threshold.get_num();
    const mpz_class& q = threshold.get_den();
    mpz_class rhs = shl(p, scale_);
    if ((mant_ - radius_) * q >= rhs) return +1;
    if ((mant_ + radius_) * q < rhs) return -1;
    return 0;
}

DyadicBall add(const DyadicBall& a, const DyadicBall& b) {
    const DyadicBall* fine = &a;
    const DyadicBall* coarse = &b;
    if (fine->scale_ < coarse->scale_) std::swap(fine, coarse);
    const std::int64_t sh = fine->scale_ - coarse->scale_;
    DyadicBall r;
    r.scale_ = fine->scale_;
    r.mant_ = fine->mant_ + shl(coarse->mant_, sh);
    r.radius_ = fine->radius_ + shl(coarse->radius_, sh);
    return r;
}

DyadicBall mul(const DyadicBall& a, const DyadicBall& b, std::int64_t round_prec) {
    DyadicBall r;
    r.scale_ = a.scale_ + b.scale_;
    r.mant_ = a.mant_ * b.mant_;
    r.radius_ = abs(a.mant_) * b.radius_ + abs(b.mant_) * a.radius_ +
                a.radius_ * b.radius_;
    if (round_prec >= 0 && r.scale_ > round_prec) return r.rounded_to(round_prec);
    return r;
}

}  // namespace gprand
