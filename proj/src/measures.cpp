#include "gprand/measures.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "gprand/parallel.hpp"

namespace gprand {

namespace {

void check_progression(std::int64_t n, std::int64_t m, std::int64_t a,
                       std::int64_t b) {
    if (a < 1 || m < 1) throw OutOfRange("progression needs a >= 1 and M >= 1");
    if (a + b < 1) throw OutOfRange("progression start a+b must be >= 1");
    if (a * m + b > n) throw OutOfRange("progression end a*M+b exceeds N");
}

// max over residue classes of (max prefix sum - min prefix sum) for step a,
// in one sequential pass over the sequence (the class index cycles, so the
// per-class state is walked in order too).
std::int64_t step_max_diff(const std::vector<std::int8_t>& v, std::int64_t a,
                           std::vector<std::int32_t>& sum,
                           std::vector<std::int32_t>& mn,
                           std::vector<std::int32_t>& mx) {
    const std::size_t n = v.size();
    sum.assign(static_cast<std::size_t>(a), 0);
    mn.assign(static_cast<std::size_t>(a), 0);
    mx.assign(static_cast<std::size_t>(a), 0);
    std::size_t r = 0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        const std::int32_t s = sum[r] + v[idx];
        sum[r] = s;
        if (s < mn[r])
            mn[r] = s;
        else if (s > mx[r])
            mx[r] = s;
        if (++r == static_cast<std::size_t>(a)) r = 0;
    }
    std::int32_t best = 0;
    for (std::size_t c = 0; c < static_cast<std::size_t>(a); ++c)
        best = std::max(best, static_cast<std::int32_t>(mx[c] - mn[c]));
    return best;
}

// Lexicographically smallest (b, M) with |U| = w for the given step, along
// with the signed sum.  Assumes some progression of this step attains w.
ProgressionWitness witness_for_step(const std::vector<std::int8_t>& v,
                                    std::int64_t n, std::int64_t a,
                                    std::int64_t w) {
    ProgressionWitness best;
    bool have = false;
    for (std::int64_t start = 1; start <= std::min(a, n); ++start) {
        // prefix sums over this class; prefix index p covers the first p
        // elements, progression (b, M) = (idx(p_lo+1) - a, p_hi - p_lo)
        std::vector<std::int64_t> prefix(1, 0);
        std::vector<std::int64_t> index_of;  // sequence position per element
        std::int64_t sum = 0;
        for (std::int64_t idx = start; idx <= n; idx += a) {
            sum += v[static_cast<std::size_t>(idx - 1)];
            prefix.push_back(sum);
            index_of.push_back(idx);
        }
        std::unordered_map<std::int64_t, std::vector<std::int64_t>> positions;
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(prefix.size()); ++p)
            positions[prefix[static_cast<std::size_t>(p)]].push_back(p);
        for (std::int64_t p = 0; p + 1 < static_cast<std::int64_t>(prefix.size()); ++p) {
            std::int64_t best_q = -1;
            for (std::int64_t target :
                 {prefix[static_cast<std::size_t>(p)] + w,
                  prefix[static_cast<std::size_t>(p)] - w}) {
                auto it = positions.find(target);
                if (it == positions.end()) continue;
                auto& vec = it->second;
                auto jt = std::upper_bound(vec.begin(), vec.end(), p);
                if (jt != vec.end()) {
                    if (best_q < 0 || *jt < best_q) best_q = *jt;
                }
            }
            if (best_q < 0) continue;
            ProgressionWitness cand;
            cand.a = a;
            cand.b = index_of[static_cast<std::size_t>(p)] - a;
            cand.m = best_q - p;
            cand.u = prefix[static_cast<std::size_t>(best_q)] -
                     prefix[static_cast<std::size_t>(p)];
            if (!have || cand.b < best.b || (cand.b == best.b && cand.m < best.m)) {
                best = cand;
                have = true;
            }
            break;  // later starts in this class only increase b
        }
    }
    if (!have) throw Error("well_distribution: witness bookkeeping failed");
    return best;
}

std::vector<double> sorted_unit_points(std::span<const double> points) {
    if (points.empty()) throw DomainError("discrepancy needs at least one point");
    std::vector<double> x(points.begin(), points.end());
    for (double v : x)
        if (!(v >= 0.0 && v < 1.0))
            throw OutOfDomain("discrepancy: point outside [0,1)");
    std::sort(x.begin(), x.end());
    return x;
}

}  // namespace

std::int64_t progression_sum(const BinarySequence& e, std::int64_t m,
                             std::int64_t a, std::int64_t b) {
    check_progression(e.size(), m, a, b);
    std::int64_t sum = 0;
    for (std::int64_t i = 1; i <= m; ++i) sum += e.value(a * i + b);
    return sum;
}

WellDistReport well_distribution(const BinarySequence& e,
                                 std::optional<std::int64_t> a_max, int threads) {
    const std::int64_t n = e.size();
    const std::int64_t cap = std::min<std::int64_t>(a_max.value_or(n), n);
    if (cap < 1) throw OutOfRange("a_max must be >= 1");
    const std::vector<std::int8_t> v = e.unpacked();

    // per-chunk (w, a) maxima, merged preferring larger w then smaller a
    struct Best {
        std::int64_t w = -1, a = 0;
    };
    std::vector<Best> partial;
    std::mutex mu;
    parallel_chunks(1, cap + 1, threads, [&](std::int64_t lo, std::int64_t hi) {
        Best local;
        std::vector<std::int32_t> sum, mn, mx;
        for (std::int64_t a = lo; a < hi; ++a) {
            const std::int64_t aw = step_max_diff(v, a, sum, mn, mx);
            if (aw > local.w) local = {aw, a};
        }
        std::lock_guard<std::mutex> lock(mu);
        partial.push_back(local);
    });
    Best overall;
    for (const Best& p : partial)
        if (p.w > overall.w || (p.w == overall.w && p.a < overall.a)) overall = p;

    WellDistReport rep;
    rep.w = overall.w;
    rep.a_max = cap;
    rep.exhaustive = cap >= n;
    rep.witness = witness_for_step(v, n, overall.a, overall.w);
    return rep;
}

WellDistReport well_distribution_naive(const BinarySequence& e) {
    const std::int64_t n = e.size();
    if (n > 4096) throw TooLarge("well_distribution_naive is guarded to N <= 4096");
    const std::vector<std::int8_t> v = e.unpacked();

    WellDistReport rep;
    rep.w = -1;
    rep.a_max = n;
    rep.exhaustive = true;
    for (std::int64_t a = 1; a <= n; ++a) {
        for (std::int64_t b = 1 - a; a + b <= n; ++b) {
            std::int64_t u = 0;
            for (std::int64_t m = 1; a * m + b <= n; ++m) {
                u += v[static_cast<std::size_t>(a * m + b - 1)];
                if (std::llabs(u) > rep.w) {
                    rep.w = std::llabs(u);
                    rep.witness = {a, b, m, u};
                }
            }
        }
    }
    return rep;
}

DiscrepancyReport discrepancy(std::span<const double> points) {
    const std::vector<double> x = sorted_unit_points(points);
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    const double nn = static_cast<double>(n);

    double over = -2.0, under = -2.0;
    std::int64_t arg_over = 0, arg_under = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
        const double xi = x[static_cast<std::size_t>(i - 1)];
        const double a = static_cast<double>(i) / nn - xi;
        const double b = xi - static_cast<double>(i) / nn;
        if (a > over) {
            over = a;
            arg_over = i;
        }
        if (b > under) {
            under = b;
            arg_under = i;
        }
    }
    DiscrepancyReport rep;
    rep.n = n;
    rep.d = 1.0 / nn + over + under;
    const double e1 = x[static_cast<std::size_t>(arg_over - 1)];
    const double e2 = x[static_cast<std::size_t>(arg_under - 1)];
    rep.lo = std::min(e1, e2);
    rep.hi = std::max(e1, e2);
    return rep;
}

DiscrepancyReport discrepancy_naive(std::span<const double> points) {
    const std::vector<double> x = sorted_unit_points(points);
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    if (n > 5000) throw TooLarge("discrepancy_naive is guarded to n <= 5000");
    const double nn = static_cast<double>(n);

    // candidate endpoints with their point counts strictly below them
    struct Cand {
        double v;
        std::int64_t rank;  // #{x_j < v}
    };
    std::vector<Cand> cands;
    cands.push_back({0.0, 0});
    for (std::int64_t i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        std::int64_t below = i;
        while (below > 0 && x[static_cast<std::size_t>(below - 1)] == xi) --below;
        std::int64_t at_or_below = i + 1;
        while (at_or_below < n && x[static_cast<std::size_t>(at_or_below)] == xi)
            ++at_or_below;
        cands.push_back({xi, below});
        cands.push_back({std::nextafter(xi, 2.0), at_or_below});
    }
    cands.push_back({1.0, n});

    DiscrepancyReport rep;
    rep.n = n;
    rep.d = -1.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        for (std::size_t j = i + 1; j < cands.size(); ++j) {
            if (!(cands[i].v < cands[j].v)) continue;
            const double len = cands[j].v - cands[i].v;
            const double frac =
                static_cast<double>(cands[j].rank - cands[i].rank) / nn;
            const double val = std::fabs(frac - len);
            if (val > rep.d) {
                rep.d = val;
                rep.lo = cands[i].v;
                rep.hi = cands[j].v;
            }
        }
    }
    return rep;
}

ChainInequality progression_discrepancy_chain(const GPExpr& expr, std::int64_t n,
                                              std::int64_t a, std::int64_t b,
                                              int threads) {
    if (a < 1 || a + b < 1) throw OutOfRange("inadmissible progression");
    const std::int64_t m = (n - b) / a;
    if (m < 1) throw OutOfRange("progression is empty inside [1, N]");

    ChainInequality out;
    out.m = m;
    const std::vector<double> fracs =
        fractional_parts(expr, m, a, b, kDefaultPrecision, threads);
    out.d_m = discrepancy(fracs).d;
    out.rhs = 2.0 * static_cast<double>(m) * out.d_m;

    std::int64_t u = 0;
    for (std::int64_t i = 1; i <= m; ++i)
        u += chi_of_expr(expr, a * i + b);
    out.lhs_u = std::llabs(u);
    return out;
}

}  // namespace gprand
