#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gprand/gp.hpp"

namespace gprand {

// Exact quadratic surd (p + q*sqrt(d)) / r with integer p, q, r and d >= 0.
// d = 0 or q = 0 degenerates to the rational p/r.
struct QuadraticSurd {
    mpz_class p, q, r;
    unsigned long d = 0;

    static QuadraticSurd from_rational(const mpq_class& v);
    static QuadraticSurd sqrt_int(unsigned long d);

    bool is_rational() const;
    mpq_class as_rational() const;  // requires is_rational()
    double approx() const;

    // Folds a constant expression over rationals and a single square root
    // class into a surd; nullopt when the expression mixes incompatible
    // irrationalities (e.g. pi, or sqrt(2) with sqrt(3)).
    static std::optional<QuadraticSurd> fold(const GPExpr& c);
};

struct CFExpansion {
    mpz_class a0;
    std::vector<mpz_class> quotients;  // a1, a2, ...; all >= 1
    bool exact_input = false;          // surd/rational input vs certified ball
};

// First `count` partial quotients after a0.  Surd inputs use the exact
// periodic algorithm; rationals use Euclid (the expansion may terminate
// early).  Ball inputs walk the exact dyadic interval and throw
// PrecisionExhausted once a floor becomes ambiguous.
CFExpansion continued_fraction(const QuadraticSurd& x, int count);
CFExpansion continued_fraction(const DyadicBall& x, int count);

// Convergents p_k/q_k of the expansion, including p_0/q_0 = a0/1.
std::vector<std::pair<mpz_class, mpz_class>> convergents(const CFExpansion& cf);

// Distance from x to the nearest integer, in [0, 1/2].
double nearest_int_dist(double x);

// Empirical finite-type estimate for constants gamma_1..gamma_s from a box
// search over integer vectors with |n_j| <= Q.
//
// t_hat is the exponent log(1/dist) / log(prod max(1,|n_j|)) measured at the
// deepest record of the box: the vector with product >= 2 minimizing
// dist = ||sum n_j gamma_j||.  It estimates the limsup exponent in the
// finite-type condition from below (records tighten as Q grows); it is a
// search diagnostic, not a proof, so the report carries Q and the witness.
// c_hat is the minimum of prod^t_hat * dist over all nonzero vectors.
struct FiniteTypeEstimate {
    double t_hat = 0.0;
    double c_hat = 0.0;
    std::vector<std::int64_t> witness;
    std::int64_t q = 0;
    double record_dist = 0.0;
};

FiniteTypeEstimate type_probe(const std::vector<GPExpr>& gammas, std::int64_t q,
                              std::int64_t precision_bits = kDefaultPrecision);

struct NThetaBound {
    double rhs = 0.0;      // 1/J + (1/L) sum_{j<=J} 1/(j ||j theta||)
    double exact_d = 0.0;  // exact extreme discrepancy of (l theta), l = 1..L
    double c_ratio = 0.0;  // exact_d / rhs, estimates the absolute constant
};

NThetaBound ntheta_discrepancy_bound(const GPExpr& theta, std::int64_t big_l,
                                     std::int64_t big_j,
                                     std::int64_t precision_bits = kDefaultPrecision);

struct SumOfMinima {
    double lhs = 0.0;  // sum_{l<=L} min(N, ||l xi||^-1)
    double rhs = 0.0;  // L log N (1 + N D_L)
    double c_ratio = 0.0;
    std::int64_t degenerate_terms = 0;  // ||l xi|| = 0, counted as N
};

SumOfMinima sum_of_minima(const GPExpr& xi, std::int64_t big_l, std::int64_t n,
                          std::int64_t precision_bits = kDefaultPrecision);

// ||value|| for a constant expression evaluated with the certified ladder.
// Throws RationalRelation when the value is an exact integer and
// PrecisionExhausted when indistinguishable from one at the ladder cap.
double nearest_int_dist_certified(const GPExpr& c,
                                  std::int64_t precision_bits = kDefaultPrecision);

}  // namespace gprand
