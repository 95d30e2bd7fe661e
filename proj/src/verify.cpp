#include "gprand/verify.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "gprand/analytic.hpp"
#include "gprand/bounds.hpp"
#include "gprand/measures.hpp"
#include "gprand/sequence.hpp"

namespace gprand {

namespace {

std::vector<double> centered_grid(std::int64_t n) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i)
        x[static_cast<std::size_t>(i - 1)] =
            (2.0 * static_cast<double>(i) - 1.0) / (2.0 * static_cast<double>(n));
    return x;
}

const std::vector<std::string>& chain_expr_pool() {
    static const std::vector<std::string> pool = {
        "sqrt(5)*floor(sqrt(3)*floor(sqrt(2)*x^2))",
        "sqrt(2)*floor(sqrt(7)*floor(sqrt(3)*(x^2+x)))",
        "pi*floor(sqrt(2)*floor(sqrt(5)*x^3))",
        "3/4*floor(sqrt(2)*floor(sqrt(3)*x^2))",
        "sqrt(2)*x^2",
        "x*1/2",
    };
    return pool;
}

}  // namespace

SuiteResult verify_erdos_turan(std::uint64_t seed) {
    SuiteResult res;
    res.name = "erdos-turan";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double min_margin = 1e300;
    auto run = [&](const std::vector<double>& pts, int big_h) {
        const double rhs = erdos_turan_rhs(pts, big_h);
        const double d = discrepancy(pts).d;
        ++res.cases;
        if (rhs < d) ++res.failures;
        min_margin = std::min(min_margin, rhs - d);
    };

    for (std::int64_t n : {4, 16, 100}) {
        const std::vector<double> grid = centered_grid(n);
        for (int h = 1; h <= 50; ++h) run(grid, h);
    }
    for (int set = 0; set < 30; ++set) {
        std::uniform_int_distribution<std::int64_t> size(1, 500);
        std::vector<double> pts(static_cast<std::size_t>(size(rng)));
        for (double& p : pts) p = unit(rng);
        for (int h : {1, 2, 5, 10, 50}) run(pts, h);
    }
    // fractional parts of n*sqrt(2) and of the nested-floor sequence
    {
        std::vector<double> pts(200);
        const double s2 = std::sqrt(2.0);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double v = static_cast<double>(i + 1) * s2;
            pts[i] = v - std::floor(v);
        }
        for (int h : {1, 5, 25, 50}) run(pts, h);
        const GPExpr f = GPExpr::parse("sqrt(5)*floor(sqrt(3)*floor(sqrt(2)*x^2))");
        const std::vector<double> gp = fractional_parts(f, 200);
        for (int h : {1, 5, 25, 50}) run(gp, h);
    }

    std::ostringstream note;
    note << "min margin rhs-D = " << min_margin;
    res.note = note.str();
    return res;
}

SuiteResult verify_weyl(std::uint64_t seed, std::int64_t cases) {
    SuiteResult res;
    res.name = "weyl-differencing";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> nd(16, 512);
    std::uniform_int_distribution<int> kd(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::int64_t c = 0; c < cases; ++c) {
        const std::int64_t n = nd(rng);
        const int k = kd(rng);
        std::uniform_real_distribution<double> qd(1.0, static_cast<double>(n));
        const double q = qd(rng);
        std::vector<std::complex<double>> lambda(static_cast<std::size_t>(n));
        for (auto& l : lambda) l = unit_phase(unit(rng));
        const WeylCheck w = weyl_check(lambda, k, q);
        ++res.cases;
        if (!w.holds) ++res.failures;
    }
    return res;
}

SuiteResult verify_linear_sum(std::uint64_t seed, std::int64_t cases) {
    SuiteResult res;
    res.name = "linear-exponential-sum";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ad(-2.0, 2.0);
    std::uniform_int_distribution<std::int64_t> n1d(-1000, 1000);
    std::uniform_int_distribution<std::int64_t> lend(1, 10000);

    for (std::int64_t c = 0; c < cases; ++c) {
        double alpha = ad(rng);
        if (c % 10 == 0) alpha = std::round(alpha * 8.0) / 8.0;  // hit rationals
        const std::int64_t n1 = n1d(rng);
        const LinearSumCheck l = linear_sum_check(alpha, n1, n1 + lend(rng));
        ++res.cases;
        if (!l.holds) ++res.failures;
    }
    return res;
}

SuiteResult verify_chain(std::uint64_t seed, std::int64_t cases, int threads) {
    SuiteResult res;
    res.name = "progression-chain";
    std::mt19937_64 rng(seed);
    const auto& pool = chain_expr_pool();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<std::int64_t> adist(1, 8);
    std::uniform_int_distribution<std::int64_t> ndist(64, 512);

    double worst = 0.0;
    for (std::int64_t c = 0; c < cases; ++c) {
        const GPExpr f = GPExpr::parse(pool[pick(rng)]);
        const std::int64_t a = adist(rng);
        std::uniform_int_distribution<std::int64_t> bdist(1 - a, 8);
        const std::int64_t b = bdist(rng);
        const std::int64_t n = ndist(rng);
        const ChainInequality ch = progression_discrepancy_chain(f, n, a, b, threads);
        ++res.cases;
        if (static_cast<double>(ch.lhs_u) > ch.rhs + 1e-9) ++res.failures;
        if (ch.rhs > 0.0)
            worst = std::max(worst, static_cast<double>(ch.lhs_u) / ch.rhs);
    }
    std::ostringstream note;
    note << "worst |U| / (2 M D_M) = " << worst;
    res.note = note.str();
    return res;
}

std::vector<SuiteResult> verify_all(std::uint64_t seed, int threads) {
    return {
        verify_erdos_turan(seed),
        verify_weyl(seed),
        verify_linear_sum(seed),
        verify_chain(seed, 100, threads),
    };
}

}  // namespace gprand
