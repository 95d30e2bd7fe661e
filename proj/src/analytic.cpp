#include "gprand/analytic.hpp"

#include <cmath>

#include "gprand/measures.hpp"
#include "gprand/parallel.hpp"
#include "gprand/sequence.hpp"

namespace gprand {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// {h*f(arg)} as a float64, with the certified ladder wrapped around both the
// evaluation of f and the final fractional-part decision.
double phase_of(const GPExpr& f, std::int64_t h, std::int64_t arg,
                std::int64_t start_prec) {
    std::int64_t prec = std::min(start_prec, kMaxPrecision);
    const DyadicBall hb = DyadicBall::from_int64(h);
    for (;;) {
        try {
            DyadicBall v = mul(f.eval_at_precision(arg, prec), hb);
            return v.frac_certified().to_float64();
        } catch (const StraddlesInteger&) {
            if (prec >= kMaxPrecision)
                throw PrecisionExhausted(
                    "phase reduction undecidable at maximum precision (n=" +
                    std::to_string(arg) + ")");
            prec = std::min(prec * 2, kMaxPrecision);
        }
    }
}

double sinc_factor(double t) {
    // sin(pi t) / (pi t) with the removable singularity filled in
    if (t == 0.0) return 1.0;
    const double pt = M_PI * t;
    return std::sin(pt) / pt;
}

std::complex<double> f_hat(std::int64_t k, double tau) {
    const double tk = tau + static_cast<double>(k);
    if (tk == 0.0) return {1.0, 0.0};
    // (e(tau) - 1) / (2 pi i (tau + k))
    const std::complex<double> num = unit_phase(tau) - std::complex<double>(1.0, 0.0);
    const std::complex<double> den(0.0, kTwoPi * tk);
    return num / den;
}

}  // namespace

std::complex<double> unit_phase(double u) {
    return {std::cos(kTwoPi * u), std::sin(kTwoPi * u)};
}

void SmoothingParams::validate() const {
    if (r < 1) throw DomainError("smoothing requires r >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
    if (k_cut < 1) throw DomainError("truncation K must be >= 1");
}

bool SmoothingParams::pnorm_precondition() const {
    const double cap = tau == 0.0 ? 1.0 : std::min(1.0 / (2.0 * std::fabs(tau)), 1.0);
    return delta < cap;
}

std::complex<double> exp_sum(const GPExpr& f, std::int64_t h, std::int64_t n,
                             std::int64_t a, std::int64_t b,
                             std::int64_t precision_bits) {
    if (h == 0) throw DomainError("exp_sum requires h != 0");
    if (n < 1 || a < 1 || a + b < 1) throw DomainError("exp_sum: inadmissible range");
    if (h < 0) return std::conj(exp_sum(f, -h, n, a, b, precision_bits));
    std::complex<double> acc(0.0, 0.0);
    for (std::int64_t i = 1; i <= n; ++i)
        acc += unit_phase(phase_of(f, h, a * i + b, precision_bits));
    return acc;
}

double erdos_turan_rhs(std::span<const double> points, int big_h) {
    if (big_h < 1) throw DomainError("Erdos-Turan requires H >= 1");
    if (points.empty()) throw DomainError("Erdos-Turan requires points");
    const double n = static_cast<double>(points.size());
    double rhs = 2.0 / (big_h + 1);
    for (int h = 1; h <= big_h; ++h) {
        std::complex<double> s(0.0, 0.0);
        for (double u : points) s += unit_phase(h * u - std::floor(h * u));
        rhs += 2.0 / h * std::abs(s) / n;
    }
    return rhs;
}

std::complex<double> f_eval(double x, double tau) {
    return unit_phase(tau * (x - std::floor(x)));
}

std::complex<double> g_fourier_coeff(std::int64_t k, const SmoothingParams& p) {
    std::complex<double> c = f_hat(k, p.tau);
    if (k != 0) {
        const double s = sinc_factor(2.0 * static_cast<double>(k) * p.delta);
        double sr = 1.0;
        for (int i = 0; i < p.r; ++i) sr *= s;
        c *= sr;
    }
    return c;
}

std::complex<double> g_eval(double x, const SmoothingParams& p) {
    p.validate();
    // smallest terms first keeps the accumulation error negligible
    std::complex<long double> acc(0.0L, 0.0L);
    for (std::int64_t k = p.k_cut; k >= 1; --k) {
        const std::complex<double> pos =
            g_fourier_coeff(k, p) * unit_phase(-static_cast<double>(k) * x +
                                               std::floor(static_cast<double>(k) * x));
        const std::complex<double> neg =
            g_fourier_coeff(-k, p) * unit_phase(static_cast<double>(k) * x -
                                                std::floor(static_cast<double>(k) * x));
        acc += std::complex<long double>(pos) + std::complex<long double>(neg);
    }
    acc += std::complex<long double>(g_fourier_coeff(0, p));
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double tail_budget(const SmoothingParams& p) {
    return std::pow(p.delta * static_cast<double>(p.k_cut), -static_cast<double>(p.r));
}

FourierTailReport fourier_tail(const SmoothingParams& p) {
    p.validate();
    // |tau + k| >= |k|/2 for every |k| > K  <=>  |tau| <= (K+1)/2
    if (std::fabs(p.tau) > (static_cast<double>(p.k_cut) + 1.0) / 2.0)
        throw PreconditionViolated("fourier_tail: |tau+k| >= |k|/2 fails beyond K");
    FourierTailReport rep;
    const std::int64_t upper = p.k_cut << 10;
    for (std::int64_t k = p.k_cut + 1; k <= upper; ++k)
        rep.tail_sum += std::abs(g_fourier_coeff(k, p)) + std::abs(g_fourier_coeff(-k, p));
    rep.bound = tail_budget(p);
    rep.c_ratio = rep.tail_sum / rep.bound;
    return rep;
}

PNormReport pnorm_check(const SmoothingParams& p, double exponent) {
    p.validate();
    if (!(exponent > 1.0)) throw DomainError("pnorm_check requires p > 1");
    if (!p.pnorm_precondition())
        throw PreconditionViolated("pnorm_check: delta < min(1/(2|tau|), 1) fails");
    constexpr std::int64_t kLimit = 1000000;
    PNormReport rep;
    rep.value = std::pow(std::abs(g_fourier_coeff(0, p)), exponent);
    double block = 0.0;
    std::int64_t block_start = 1;
    for (std::int64_t k = 1; k <= kLimit; ++k) {
        block += std::pow(std::abs(g_fourier_coeff(k, p)), exponent) +
                 std::pow(std::abs(g_fourier_coeff(-k, p)), exponent);
        if (k == kLimit || k == 2 * block_start - 1) {
            // close the doubling block [block_start, k]
            rep.value += block;
            rep.last_increment = block;
            block = 0.0;
            block_start = k + 1;
        }
    }
    rep.stabilized = rep.last_increment < 1e-10;
    return rep;
}

ApproximationReport approximation_error(const GPExpr& f, std::int64_t n,
                                        const SmoothingParams& p, int threads) {
    p.validate();
    if (n < 1) throw DomainError("approximation_error: N must be >= 1");
    const std::vector<double> u = fractional_parts(f, n, 1, 0, kDefaultPrecision, threads);

    std::vector<double> partial(static_cast<std::size_t>(n));
    parallel_chunks(0, n, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const double x = u[static_cast<std::size_t>(i)];
            partial[static_cast<std::size_t>(i)] =
                std::abs(f_eval(x, p.tau) - g_eval(x, p));
        }
    });
    ApproximationReport rep;
    for (double v : partial) rep.l1_err += v;

    rep.d_n = discrepancy(u).d;
    const double nn = static_cast<double>(n);
    const double r = static_cast<double>(p.r);
    rep.bound = nn * r * p.delta + nn * r * r * p.delta * std::fabs(p.tau) + nn * rep.d_n;
    rep.c_ratio = rep.bound > 0.0 ? rep.l1_err / rep.bound : 0.0;
    return rep;
}

}  // namespace gprand
