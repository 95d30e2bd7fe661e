#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gprand/gp.hpp"

namespace gprand {

// Exact rational exponents of a discrepancy bound of the form
//   D_N <= C * a^(a_exp) * N^(-n_exp),
// plus the side conditions attached to it.
struct ExponentSet {
    int d = 0;
    mpq_class t;
    mpq_class a_exp;
    mpq_class n_exp;  // positive = decay
    std::optional<mpq_class> precond_a_exp;  // a <= N^(precond_a_exp) required
    std::optional<mpq_class> eta_candidate;
    std::optional<mpq_class> threshold_exp;  // 1/(2^d(3t+1)+21t+5)^2
};

struct KeyLemmaExponents {
    mpq_class coeff_exp;  // exponent of a^{sd}|k_1..k_s|
    mpq_class n_exp;      // exponent of N (2^{d-1} - (2-2^{2-d})/(st+1))
};

// Exponent pair of the degree-d, type-t, s-constant exponential sum bound.
KeyLemmaExponents key_lemma_exponents(int d, const mpq_class& t, int s);

// Bound without floors: D((alpha p(an+b))) << a^(dt/(2^{d-1}(t+1)+t))
// N^(-(2-2^{2-d})/(2^{d-1}(2t+1)+t)), valid for a <= N^((2-2^{2-d})/(dt)).
ExponentSet prop1_exponents(int d, const mpq_class& t);

// One floor: a^(2dt/(2^{d-1}(2t+1)+4t+1)) N^(-(2-2^{2-d})/(2^{d-1}(2t+1)+7t+2)).
ExponentSet prop2_exponents(int d, const mpq_class& t);

// Two nested floors: a^(3dt/(2^d(3t+1)+5t+1))
// N^(-(2-2^{2-d}) 2^{d-1}(3t+1) / ((2^{d-1}(3t+1)+21t+5)(2^d(3t+1)+4t+1))),
// with the step threshold 1/(2^d(3t+1)+21t+5)^2.
ExponentSet prop3_exponents(int d, const mpq_class& t);

// Candidate decay exponent for W(E_N) <= N^(1-eta): composing |U| <= 2 M D_M
// (M ~ x/a) with the two-floor bound under the step cap gives the bound's
// N-exponent for small a and the threshold exponent for large a, so
// eta = min(threshold_exp, prop3 n_exp).  The composition is recorded in the
// fields; it is a derived candidate, not a quoted value.
ExponentSet theorem_eta(int d, const mpq_class& t);

// True when a <= N^((2-2^{2-d})/(dt)).
bool prop1_precondition_holds(int d, const mpq_class& t, std::int64_t a,
                              std::int64_t n);

struct WeylCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// lhs = |sum(lambda)/(8N)|^(2^k) against the literal iterated-difference
// right-hand side 1/(8Q) + 1/(8 Q^(2-2^(1-k))) * sum over (r_1..r_k) of
// |sum_m Delta_{r_1..r_k} lambda_m| / N, with r_j <= Q^(2^(1-j)).
WeylCheck weyl_check(std::span<const std::complex<double>> lambda, int k, double q);

struct LinearSumCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// |sum_{n=n1+1}^{n2} e(alpha n)| = |sin(pi L alpha)| / |sin(pi alpha)| against
// min(L, 1/(2||alpha||)); the 1/2 is the sharp constant from |sin(pi x)| >=
// 2||x||.  Integer alpha degenerates to lhs = rhs = L.
LinearSumCheck linear_sum_check(double alpha, std::int64_t n1, std::int64_t n2);

struct ScanRow {
    std::int64_t n = 0;
    std::int64_t w = 0;
    double slope_so_far = 0.0;  // NaN until two rows exist
    double d = 0.0;
    double prop2_bound = 0.0;  // N^(-n_exp) at a = 1
    double prop3_bound = 0.0;
};

// Per N: exact W(E_N) (capped at a_max), exact D_N of {f(n)}, the predicted
// decay curves at a = 1 for the assumed type, and the running least-squares
// slope of log W against log N.
std::vector<ScanRow> bound_scan(const GPExpr& expr, std::span<const std::int64_t> n_list,
                                std::optional<std::int64_t> a_max,
                                const mpq_class& t_assumed, int threads = 0);

// The internal parameter choices of the three proofs at a concrete
// (d, t, N, a, h), for inspection; epsilon knobs are fixed at 1/8 with the
// matching convolution order r = 9.
struct ProofParameters {
    mpq_class sigma2, theta2_decay;        // one-floor proof: H = a^-sigma N^theta
    mpq_class sigma3, theta3_1, theta3_2;  // two-floor proof
    double h1 = 0.0;                       // floor-free proof H choice
    double h2 = 0.0, delta2 = 0.0, k2 = 0.0;
    double h3 = 0.0, delta3_1 = 0.0, k3_1 = 0.0, delta3_2 = 0.0, k3_2 = 0.0;
    double j_key = 0.0;  // key-lemma J at s = 1, |k| = h
    double rho = 0.0;
    int r_order = 0;
    bool prop1_precondition = false;
};

ProofParameters proof_parameters(int d, const mpq_class& t, std::int64_t n,
                                 std::int64_t a, std::int64_t h);

}  // namespace gprand
