#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gprand {

// Seed for every randomized sweep; fixed so runs are reproducible bit for bit.
inline constexpr std::uint64_t kVerifySeed = 0x5EED;

struct SuiteResult {
    std::string name;
    std::int64_t cases = 0;
    std::int64_t failures = 0;
    std::string note;
    bool passed() const { return cases > 0 && failures == 0; }
};

// Erdos-Turan right-hand side >= exact extreme discrepancy, over centered
// grids, random point sets and generalized-polynomial fractional parts.
SuiteResult verify_erdos_turan(std::uint64_t seed = kVerifySeed);

// Weyl differencing lhs <= rhs over random unimodular sequences.
SuiteResult verify_weyl(std::uint64_t seed = kVerifySeed, std::int64_t cases = 1000);

// |sum e(alpha n)| <= min(L, 1/(2||alpha||)).
SuiteResult verify_linear_sum(std::uint64_t seed = kVerifySeed,
                              std::int64_t cases = 10000);

// |U(E_N, M, a, b)| <= 2 M D_M along sampled progressions of sampled
// expressions.
SuiteResult verify_chain(std::uint64_t seed = kVerifySeed, std::int64_t cases = 100,
                         int threads = 0);

std::vector<SuiteResult> verify_all(std::uint64_t seed = kVerifySeed, int threads = 0);

}  // namespace gprand
