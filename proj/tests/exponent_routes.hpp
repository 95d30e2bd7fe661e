// Test-only second route for the exponent formulas: every denominator is
// cleared by hand with t = p/q, so each exponent is assembled from integer
// products in a different association than the library's rational arithmetic.
#pragma once

#include <gmpxx.h>

namespace exponent_routes {

inline mpz_class pw2(int e) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return m;
}

inline mpq_class ratio(const mpz_class& num, const mpz_class& den) {
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

struct AltExponents {
    mpq_class p1_a, p1_n, p1_pre, p2_a, p2_n, p3_a, p3_n, thr;
};

inline AltExponents alt_route(int d, const mpq_class& t) {
    const mpz_class p = t.get_num(), q = t.get_den();
    const mpz_class g_num = pw2(d - 1) - 1;  // 2 - 2^(2-d) = g_num / 2^(d-2)
    const mpz_class g_den = pw2(d - 2);
    AltExponents out;
    out.p1_a = ratio(d * p, pw2(d - 1) * (p + q) + p);
    out.p1_n = ratio(g_num * q, g_den * (pw2(d - 1) * (2 * p + q) + p));
    out.p1_pre = ratio(g_num * q, g_den * d * p);
    out.p2_a = ratio(2 * d * p, pw2(d - 1) * (2 * p + q) + 4 * p + q);
    out.p2_n = ratio(g_num * q, g_den * (pw2(d - 1) * (2 * p + q) + 7 * p + 2 * q));
    const mpz_class s3 = 3 * p + q;  // 3t + 1 = s3 / q
    out.p3_a = ratio(3 * d * p, pw2(d) * s3 + 5 * p + q);
    out.p3_n = ratio(g_num * pw2(d - 1) * s3 * q,
                     g_den * (pw2(d - 1) * s3 + 21 * p + 5 * q) *
                         (pw2(d) * s3 + 4 * p + q));
    const mpz_class thr_den = pw2(d) * s3 + 21 * p + 5 * q;
    out.thr = ratio(q * q, thr_den * thr_den);
    return out;
}

}  // namespace exponent_routes
