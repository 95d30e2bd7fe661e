#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gprand/gp.hpp"

namespace gprand {

// e(u) = exp(2*pi*i*u).
std::complex<double> unit_phase(double u);

// Parameters of the smoothed sawtooth phase: r-fold convolution of the
// normalized box of half-width delta with F(x,tau) = e(tau*{x}), plus the
// series truncation cutoff K.
struct SmoothingParams {
    int r = 1;          // >= 1
    double delta = 0.0; // in (0,1)
    double tau = 0.0;
    std::int64_t k_cut = 1;  // K >= 1

    void validate() const;
    // delta < min(1/(2|tau|), 1), required by the p-norm bound
    bool pnorm_precondition() const;
};

// Sum over n = 1..N of e(h * f(a*n+b)).  Each phase is reduced mod 1 in
// certified ball arithmetic before conversion to float64, so the per-term
// phase error is below 2^-60.  Accumulation is sequential in index order;
// negative h is evaluated as the conjugate of the positive-h sum (an exact
// identity, preserving the error contract).
std::complex<double> exp_sum(const GPExpr& f, std::int64_t h, std::int64_t n,
                             std::int64_t a = 1, std::int64_t b = 0,
                             std::int64_t precision_bits = kDefaultPrecision);

// Right-hand side 2/(H+1) + 2*sum_{h=1}^H (1/h)|S_h/N| of the Erdos-Turan
// inequality, with S_h the exact exponential sums of the given points.
double erdos_turan_rhs(std::span<const double> points, int big_h);

// F(x, tau) = e(tau * {x}).
std::complex<double> f_eval(double x, double tau);

// Fourier coefficient of the smoothed kernel against e(-kx):
//   G_r^(k) = F^(k, tau) * (sin(2 pi k delta) / (2 pi k delta))^r,
//   F^(k, tau) = (e(tau) - 1) / (2 pi i (tau + k))   (tau + k != 0),
//   F^(k, tau) = 1 when tau + k = 0; the sinc factor is 1 at k = 0.
std::complex<double> g_fourier_coeff(std::int64_t k, const SmoothingParams& p);

// Truncated series sum_{|k| <= K} G_r^(k) e(-kx), accumulated in long double
// from the outermost pair inward.  tail_budget() bounds what was dropped.
std::complex<double> g_eval(double x, const SmoothingParams& p);

// (delta*K)^(-r), the order of the dropped tail.
double tail_budget(const SmoothingParams& p);

struct FourierTailReport {
    double tail_sum = 0.0;  // sum of |G_r^(k)| over K < |k| <= 1024*K
    double bound = 0.0;     // (delta*K)^(-r)
    double c_ratio = 0.0;   // tail_sum / bound
};

// Requires |tau + k| >= |k|/2 for all |k| > K, i.e. |tau| <= (K+1)/2.
FourierTailReport fourier_tail(const SmoothingParams& p);

struct PNormReport {
    double value = 0.0;           // sum over |k| <= 10^6 of |G_r^(k)|^p
    double last_increment = 0.0;  // contribution of the final doubling block
    bool stabilized = false;      // last_increment < 1e-10
};

// Requires the p-norm precondition delta < min(1/(2|tau|), 1) and p > 1.
PNormReport pnorm_check(const SmoothingParams& p, double exponent);

struct ApproximationReport {
    double l1_err = 0.0;  // sum over n <= N of |F(u_n) - G_r(u_n)|
    double bound = 0.0;   // N r delta + N r^2 delta |tau| + N D_N(u_n)
    double c_ratio = 0.0;
    double d_n = 0.0;
};

// u_n = {f(n)}; the kernel side uses the truncated series of `p`.
ApproximationReport approximation_error(const GPExpr& f, std::int64_t n,
                                        const SmoothingParams& p, int threads = 0);

}  // namespace gprand
