#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gprand/sequence.hpp"

namespace gprand {

// The arithmetic progression a*m+b (m = 1..M) together with its signed sum.
// Admissible when a >= 1, M >= 1, 1 <= a+b and a*M+b <= N.
struct ProgressionWitness {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t m = 0;
    std::int64_t u = 0;  // signed value of the progression sum
};

struct WellDistReport {
    std::int64_t w = 0;  // max |U| over all admissible progressions
    ProgressionWitness witness;
    std::int64_t a_max = 0;  // step cap actually used
    bool exhaustive = false; // a_max >= N, so the maximum is unconditional
};

struct DiscrepancyReport {
    double d = 0.0;
    double lo = 0.0, hi = 0.0;  // endpoints of an extremal (or approaching) interval
    std::int64_t n = 0;
};

// Exact sum of e at indices a*1+b, ..., a*M+b.
std::int64_t progression_sum(const BinarySequence& e, std::int64_t m,
                             std::int64_t a, std::int64_t b);

// Exact maximum of |U| over all admissible (a <= a_max, b, M).  Per residue
// class the contiguous subsegments of indices are exactly the (b, M) pairs,
// so the class maximum is (max prefix sum - min prefix sum); O(N) per step a.
// Witness is the lexicographically smallest (a, b, M) attaining the maximum.
WellDistReport well_distribution(const BinarySequence& e,
                                 std::optional<std::int64_t> a_max = std::nullopt,
                                 int threads = 0);

// Literal enumeration of every admissible (a, b, M); same contract as the
// fast path.  Guarded to N <= 4096.
WellDistReport well_distribution_naive(const BinarySequence& e);

// Exact extreme discrepancy of points in [0,1) by the sorted-sample formula
//   D = 1/n + max_i(i/n - x_(i)) + max_i(x_(i) - i/n).
DiscrepancyReport discrepancy(std::span<const double> points);

// Independent oracle: evaluates the supremum over intervals with endpoints
// in {0, x_(i), x_(i)+ulp, 1}.  Guarded to n <= 5000.
DiscrepancyReport discrepancy_naive(std::span<const double> points);

struct ChainInequality {
    std::int64_t lhs_u = 0;  // |U(E_N, M, a, b)|
    double rhs = 0.0;        // 2 * M * D_M of the fractional parts along the progression
    std::int64_t m = 0;
    double d_m = 0.0;
};

// Both sides of |U| <= 2*M*D_M for the sequence generated by expr, along the
// progression (a, b) inside [1, N] with M = floor((N-b)/a).
ChainInequality progression_discrepancy_chain(const GPExpr& expr, std::int64_t n,
                                              std::int64_t a, std::int64_t b,
                                              int threads = 0);

}  // namespace gprand
