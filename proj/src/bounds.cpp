#include "gprand/bounds.hpp"

#include <cmath>
#include <limits>

#include "gprand/dioph.hpp"
#include "gprand/measures.hpp"
#include "gprand/sequence.hpp"

namespace gprand {

namespace {

void check_dt(int d, const mpq_class& t) {
    if (d < 2) throw DomainError("degree d must be >= 2");
    if (t <= 0) throw DomainError("type t must be > 0");
}

mpq_class pow2q(int e) {
    mpq_class v;
    if (e >= 0) {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), 2, static_cast<unsigned long>(e));
        v = m;
    } else {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        v = mpq_class(1, m);
    }
    return v;
}

// 2 - 2^(2-d)
mpq_class weyl_gain(int d) { return mpq_class(2) - pow2q(2 - d); }

double qpow(double base, const mpq_class& e) {
    return std::pow(base, e.get_d());
}

}  // namespace

KeyLemmaExponents key_lemma_exponents(int d, const mpq_class& t, int s) {
    check_dt(d, t);
    if (s < 1) throw DomainError("constant count s must be >= 1");
    KeyLemmaExponents out;
    mpq_class st1 = s * t + 1;
    out.coeff_exp = t / st1;
    out.n_exp = pow2q(d - 1) - weyl_gain(d) / st1;
    out.coeff_exp.canonicalize();
    out.n_exp.canonicalize();
    return out;
}

ExponentSet prop1_exponents(int d, const mpq_class& t) {
    check_dt(d, t);
    ExponentSet e;
    e.d = d;
    e.t = t;
    e.a_exp = d * t / (pow2q(d - 1) * (t + 1) + t);
    e.n_exp = weyl_gain(d) / (pow2q(d - 1) * (2 * t + 1) + t);
    e.precond_a_exp = weyl_gain(d) / (d * t);
    e.a_exp.canonicalize();
    e.n_exp.canonicalize();
    e.precond_a_exp->canonicalize();
    return e;
}

ExponentSet prop2_exponents(int d, const mpq_class& t) {
    check_dt(d, t);
    ExponentSet e;
    e.d = d;
    e.t = t;
    e.a_exp = 2 * d * t / (pow2q(d - 1) * (2 * t + 1) + 4 * t + 1);
    e.n_exp = weyl_gain(d) / (pow2q(d - 1) * (2 * t + 1) + 7 * t + 2);
    e.a_exp.canonicalize();
    e.n_exp.canonicalize();
    return e;
}

ExponentSet prop3_exponents(int d, const mpq_class& t) {
    check_dt(d, t);
    ExponentSet e;
    e.d = d;
    e.t = t;
    mpq_class t31 = 3 * t + 1;
    e.a_exp = 3 * d * t / (pow2q(d) * t31 + 5 * t + 1);
    e.n_exp = weyl_gain(d) * pow2q(d - 1) * t31 /
              ((pow2q(d - 1) * t31 + 21 * t + 5) * (pow2q(d) * t31 + 4 * t + 1));
    mpq_class thr_den = pow2q(d) * t31 + 21 * t + 5;
    e.threshold_exp = 1 / (thr_den * thr_den);
    e.a_exp.canonicalize();
    e.n_exp.canonicalize();
    e.threshold_exp->canonicalize();
    return e;
}

ExponentSet theorem_eta(int d, const mpq_class& t) {
    ExponentSet e = prop3_exponents(d, t);
    e.eta_candidate = std::min(*e.threshold_exp, e.n_exp);
    e.eta_candidate->canonicalize();
    return e;
}

bool prop1_precondition_holds(int d, const mpq_class& t, std::int64_t a,
                              std::int64_t n) {
    check_dt(d, t);
    if (a < 1 || n < 1) throw DomainError("a and N must be >= 1");
    // a <= N^(g/(dt))  <=>  a^(d t_num) <= N^(g_num * t_den / g_den) over
    // integers once exponents are cleared; compare in doubles with a margin,
    // exact integer comparison on the boundary.
    mpq_class expo = weyl_gain(d) / (d * t);
    const double lhs = std::log(static_cast<double>(a));
    const double rhs = expo.get_d() * std::log(static_cast<double>(n));
    if (lhs < rhs - 1e-9) return true;
    if (lhs > rhs + 1e-9) return false;
    // boundary: a^(q) vs N^(p) for expo = p/q exactly
    mpz_class ap, nq;
    mpz_ui_pow_ui(ap.get_mpz_t(), static_cast<unsigned long>(a),
                  expo.get_den().get_ui());
    mpz_ui_pow_ui(nq.get_mpz_t(), static_cast<unsigned long>(n),
                  expo.get_num().get_ui());
    return ap <= nq;
}

WeylCheck weyl_check(std::span<const std::complex<double>> lambda, int k, double q) {
    const std::int64_t n = static_cast<std::int64_t>(lambda.size());
    if (n < 1) throw DomainError("weyl_check needs a nonempty sequence");
    if (k < 1) throw DomainError("weyl_check needs k >= 1");
    if (!(q >= 1.0 && q <= static_cast<double>(n)))
        throw DomainError("weyl_check needs Q in [1, N]");
    for (const auto& l : lambda)
        if (std::abs(l) > 1.0 + 1e-12)
            throw DomainError("weyl_check: |lambda_i| must be <= 1");

    std::complex<double> total(0.0, 0.0);
    for (const auto& l : lambda) total += l;
    const double base = std::abs(total) / (8.0 * static_cast<double>(n));
    const double lhs = std::pow(base, std::pow(2.0, k));

    // sum over difference tuples, sharing prefix arrays level by level
    std::vector<std::complex<double>> cur(lambda.begin(), lambda.end());

    struct Rec {
        int k;
        std::int64_t n;
        double q;
        double sum = 0.0;
        void descend(const std::vector<std::complex<double>>& arr, int level) {
            const std::int64_t limit = static_cast<std::int64_t>(
                std::floor(std::pow(q, std::pow(2.0, 1 - level)) + 1e-9));
            for (std::int64_t r = 1; r <= limit; ++r) {
                const std::int64_t len = static_cast<std::int64_t>(arr.size()) - r;
                if (len <= 0) {
                    if (level == k) continue;
                    // deeper levels only shrink the array further
                    continue;
                }
                std::vector<std::complex<double>> next(static_cast<std::size_t>(len));
                for (std::int64_t m = 0; m < len; ++m)
                    next[static_cast<std::size_t>(m)] =
                        arr[static_cast<std::size_t>(m + r)] *
                        std::conj(arr[static_cast<std::size_t>(m)]);
                if (level == k) {
                    std::complex<double> s(0.0, 0.0);
                    for (const auto& v : next) s += v;
                    sum += std::abs(s) / static_cast<double>(n);
                } else {
                    descend(next, level + 1);
                }
            }
        }
    } rec{k, n, q};
    rec.descend(cur, 1);

    WeylCheck out;
    out.lhs = lhs;
    out.rhs = 1.0 / (8.0 * q) +
              rec.sum / (8.0 * std::pow(q, 2.0 - std::pow(2.0, 1 - k)));
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

LinearSumCheck linear_sum_check(double alpha, std::int64_t n1, std::int64_t n2) {
    if (n1 >= n2) throw DomainError("linear_sum_check needs n1 < n2");
    const double len = static_cast<double>(n2 - n1);
    const double dist = nearest_int_dist(alpha);
    LinearSumCheck out;
    if (dist == 0.0) {
        out.lhs = len;
        out.rhs = len;
        out.holds = true;
        return out;
    }
    out.lhs = std::fabs(std::sin(M_PI * len * alpha) / std::sin(M_PI * alpha));
    out.rhs = std::min(len, 1.0 / (2.0 * dist));
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

std::vector<ScanRow> bound_scan(const GPExpr& expr, std::span<const std::int64_t> n_list,
                                std::optional<std::int64_t> a_max,
                                const mpq_class& t_assumed, int threads) {
    if (n_list.empty()) throw DomainError("bound_scan needs at least one N");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw DomainError("bound_scan needs a strictly increasing N list");

    const TheoremInstance inst = recognize_theorem_shape(expr);
    const ExponentSet p2 = prop2_exponents(inst.degree, t_assumed);
    const ExponentSet p3 = prop3_exponents(inst.degree, t_assumed);

    const std::int64_t n_top = n_list.back();
    const BinarySequence full = generate(expr, n_top, kDefaultPrecision, threads);
    const std::vector<double> fracs =
        fractional_parts(expr, n_top, 1, 0, kDefaultPrecision, threads);

    std::vector<ScanRow> rows;
    std::vector<double> logs_n, logs_w;
    for (std::int64_t n : n_list) {
        ScanRow row;
        row.n = n;
        const BinarySequence pre = full.prefix(n);
        std::optional<std::int64_t> cap;
        if (a_max) cap = std::min(*a_max, n);
        row.w = well_distribution(pre, cap, threads).w;
        row.d = discrepancy(std::span<const double>(fracs.data(),
                                                    static_cast<std::size_t>(n)))
                    .d;
        row.prop2_bound = qpow(static_cast<double>(n), -p2.n_exp);
        row.prop3_bound = qpow(static_cast<double>(n), -p3.n_exp);

        logs_n.push_back(std::log(static_cast<double>(n)));
        logs_w.push_back(std::log(static_cast<double>(row.w)));
        if (logs_n.size() < 2) {
            row.slope_so_far = std::numeric_limits<double>::quiet_NaN();
        } else {
            double mx = 0, my = 0;
            for (std::size_t i = 0; i < logs_n.size(); ++i) {
                mx += logs_n[i];
                my += logs_w[i];
            }
            mx /= static_cast<double>(logs_n.size());
            my /= static_cast<double>(logs_n.size());
            double sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < logs_n.size(); ++i) {
                sxx += (logs_n[i] - mx) * (logs_n[i] - mx);
                sxy += (logs_n[i] - mx) * (logs_w[i] - my);
            }
            row.slope_so_far = sxy / sxx;
        }
        rows.push_back(row);
    }
    return rows;
}

ProofParameters proof_parameters(int d, const mpq_class& t, std::int64_t n,
                                 std::int64_t a, std::int64_t h) {
    check_dt(d, t);
    if (n < 2 || a < 1 || h < 1) throw DomainError("need N >= 2, a >= 1, h >= 1");
    const double nd = static_cast<double>(n);
    const double ad = static_cast<double>(a);
    const double hd = static_cast<double>(h);

    ProofParameters out;
    out.rho = 1.0 + 1.0 / 8.0;
    out.r_order = 9;

    // floor-free proof: H = ceil(N^(g/(2^{d-1}(2t+1))) a^(dt/(2^{d-1}(2t+1)+t)))
    mpq_class g = weyl_gain(d);
    mpq_class e_h1 = g / (pow2q(d - 1) * (2 * t + 1));
    mpq_class e_h1a = d * t / (pow2q(d - 1) * (2 * t + 1) + t);
    out.h1 = std::ceil(qpow(nd, e_h1) * qpow(ad, e_h1a));

    // one-floor proof
    const ExponentSet p2 = prop2_exponents(d, t);
    out.sigma2 = p2.a_exp;
    out.theta2_decay = p2.n_exp;
    out.h2 = qpow(ad, -p2.a_exp) * qpow(nd, p2.n_exp);
    out.delta2 = 1.0 / (hd * qpow(nd, p2.n_exp));
    out.k2 = std::pow(hd, out.rho) * qpow(nd, p2.n_exp);

    // two-floor proof
    const ExponentSet p3 = prop3_exponents(d, t);
    out.sigma3 = p3.a_exp;
    out.theta3_1 = p3.n_exp;
    out.theta3_2 = g / (pow2q(d - 1) * (3 * t + 1) + 4 * t + 1);
    out.theta3_2.canonicalize();
    out.h3 = qpow(ad, -p3.a_exp) * qpow(nd, p3.n_exp);
    out.delta3_1 = 1.0 / (hd * qpow(nd, p3.n_exp));
    out.k3_1 = std::pow(hd, out.rho) * qpow(nd, p3.n_exp);
    out.delta3_2 = 1.0 / (hd * qpow(nd, out.theta3_2));  // at k_1 = 1
    out.k3_2 = std::pow(hd, out.rho) * qpow(nd, out.theta3_2);

    // key-lemma J at s = 1, |k| = h, L = N^(2-2^{2-d})
    const mpq_class st1 = t + 1;
    const mpq_class j_a = d * t / st1, j_h = t / st1, j_l = 1 / st1;
    const double big_l = qpow(nd, g);
    out.j_key = qpow(ad, mpq_class(-j_a)) * std::pow(hd, -j_h.get_d()) *
                std::pow(big_l, j_l.get_d());

    out.prop1_precondition = prop1_precondition_holds(d, t, a, n);
    return out;
}

}  // namespace gprand
