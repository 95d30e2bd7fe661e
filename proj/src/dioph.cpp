#include "gprand/dioph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gprand/measures.hpp"

namespace gprand {

namespace {

// d = square * d0 with d0 squarefree (trial division; constants are small).
unsigned long squarefree_part(unsigned long d, unsigned long& square_root_out) {
    unsigned long sq = 1, rest = d;
    for (unsigned long f = 2; f * f <= rest; ++f) {
        while (rest % (f * f) == 0) {
            rest /= f * f;
            sq *= f;
        }
    }
    square_root_out = sq;
    return rest;
}

QuadraticSurd canon(QuadraticSurd s) {
    if (s.r == 0) throw DomainError("surd with zero denominator");
    if (s.q == 0 || s.d <= 1) {
        // rational: fold sqrt(1) and sqrt(0)
        if (s.d == 1) s.p += s.q;
        s.q = 0;
        s.d = 0;
    }
    if (s.r < 0) {
        s.p = -s.p;
        s.q = -s.q;
        s.r = -s.r;
    }
    mpz_class g = gcd(gcd(s.p, s.q), s.r);
    if (g > 1) {
        s.p /= g;
        s.q /= g;
        s.r /= g;
    }
    return s;
}

std::optional<QuadraticSurd> surd_add(const QuadraticSurd& a, const QuadraticSurd& b) {
    if (a.d != 0 && b.d != 0 && a.d != b.d) return std::nullopt;
    QuadraticSurd out;
    out.d = a.d != 0 ? a.d : b.d;
    out.p = a.p * b.r + b.p * a.r;
    out.q = a.q * b.r + b.q * a.r;
    out.r = a.r * b.r;
    return canon(out);
}

std::optional<QuadraticSurd> surd_mul(const QuadraticSurd& a, const QuadraticSurd& b) {
    if (a.d != 0 && b.d != 0 && a.d != b.d) {
        // sqrt(d)*sqrt(d) is the only product we close over
        return std::nullopt;
    }
    QuadraticSurd out;
    out.d = a.d != 0 ? a.d : b.d;
    out.p = a.p * b.p + a.q * b.q * static_cast<long>(out.d ? out.d : 0);
    out.q = a.p * b.q + a.q * b.p;
    out.r = a.r * b.r;
    return canon(out);
}

// floor((p + q sqrt(d)) / r) exactly.  Uses the fact that for non-square d
// the value q*sqrt(d) lies strictly inside an open unit interval between
// consecutive integers, which therefore contains no integer numerator.
mpz_class surd_floor(const QuadraticSurd& s0) {
    QuadraticSurd s = canon(s0);
    if (s.d == 0) {
        mpz_class out;
        mpz_fdiv_q(out.get_mpz_t(), s.p.get_mpz_t(), s.r.get_mpz_t());
        return out;
    }
    mpz_class t = s.q * s.q * static_cast<long>(s.d);
    mpz_class w;
    mpz_sqrt(w.get_mpz_t(), t.get_mpz_t());
    mpz_class num_lo;  // q*sqrt(d) in (num_lo - p, num_lo - p + 1), shifted by p below
    if (s.q > 0)
        num_lo = s.p + w;
    else
        num_lo = s.p - w - 1;
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), num_lo.get_mpz_t(), s.r.get_mpz_t());
    return out;
}

std::optional<QuadraticSurd> fold_node_to_surd(const GPNodeRef& n) {
    switch (n->kind) {
        case GPNodeKind::Constant:
            switch (n->value.kind) {
                case ConstKind::Rational:
                    return QuadraticSurd::from_rational(n->value.rational);
                case ConstKind::SqrtInt:
                    return QuadraticSurd::sqrt_int(n->value.arg);
                case ConstKind::Pi:
                    return std::nullopt;
            }
            return std::nullopt;
        case GPNodeKind::Variable:
            return std::nullopt;
        case GPNodeKind::Add: {
            auto l = fold_node_to_surd(n->lhs), r = fold_node_to_surd(n->rhs);
            if (!l || !r) return std::nullopt;
            return surd_add(*l, *r);
        }
        case GPNodeKind::Mul: {
            auto l = fold_node_to_surd(n->lhs), r = fold_node_to_surd(n->rhs);
            if (!l || !r) return std::nullopt;
            return surd_mul(*l, *r);
        }
        case GPNodeKind::Floor: {
            auto c = fold_node_to_surd(n->lhs);
            if (!c) return std::nullopt;
            return QuadraticSurd::from_rational(mpq_class(surd_floor(*c)));
        }
    }
    return std::nullopt;
}

}  // namespace

QuadraticSurd QuadraticSurd::from_rational(const mpq_class& v) {
    QuadraticSurd s;
    s.p = v.get_num();
    s.q = 0;
    s.r = v.get_den();
    s.d = 0;
    return s;
}

QuadraticSurd QuadraticSurd::sqrt_int(unsigned long d) {
    unsigned long sq = 1;
    unsigned long d0 = squarefree_part(d, sq);
    QuadraticSurd s;
    if (d0 <= 1) {
        s.p = static_cast<long>(sq) * static_cast<long>(d0);
        s.q = 0;
        s.r = 1;
        s.d = 0;
        if (d0 == 1) s.p = static_cast<long>(sq);
        return s;
    }
    s.p = 0;
    s.q = static_cast<long>(sq);
    s.r = 1;
    s.d = d0;
    return s;
}

bool QuadraticSurd::is_rational() const { return d == 0 || q == 0; }

mpq_class QuadraticSurd::as_rational() const {
    if (!is_rational()) throw DomainError("surd is irrational");
    mpq_class v(p, r);
    v.canonicalize();
    return v;
}

double QuadraticSurd::approx() const {
    double v = p.get_d();
    if (d != 0) v += q.get_d() * std::sqrt(static_cast<double>(d));
    return v / r.get_d();
}

std::optional<QuadraticSurd> QuadraticSurd::fold(const GPExpr& c) {
    if (c.empty() || !c.is_constant()) return std::nullopt;
    return fold_node_to_surd(c.root());
}

CFExpansion continued_fraction(const QuadraticSurd& x0, int count) {
    if (count < 0) throw DomainError("quotient count must be >= 0");
    QuadraticSurd x = canon(x0);
    CFExpansion cf;
    cf.exact_input = true;

    if (x.is_rational()) {
        // Euclid on p/r
        mpz_class num = x.p, den = x.r;
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        cf.a0 = a;
        num -= a * den;
        for (int i = 0; i < count && num != 0; ++i) {
            std::swap(num, den);
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            cf.quotients.push_back(a);
            num -= a * den;
        }
        return cf;
    }

    // state x = (P + sqrt(D)) / Q with Q | D - P^2
    mpz_class D = x.q * x.q * static_cast<long>(x.d);
    mpz_class P = x.p, Q = x.r;
    if (x.q < 0) {
        // (p + q sqrt(d))/r = (-p + sqrt(q^2 d)) / (-r)
        P = -P;
        Q = -Q;
    }
    if ((D - P * P) % Q != 0) {
        mpz_class aq = abs(Q);
        P *= aq;
        D *= aq * aq;
        Q *= aq;
    }
    mpz_class w;
    mpz_sqrt(w.get_mpz_t(), D.get_mpz_t());

    auto state_floor = [&](const mpz_class& PP, const mpz_class& QQ) {
        mpz_class num = QQ > 0 ? mpz_class(PP + w) : mpz_class(-PP - w - 1);
        mpz_class den = abs(QQ);
        mpz_class out;
        mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        return out;
    };

    mpz_class a = state_floor(P, Q);
    cf.a0 = a;
    for (int i = 0; i < count; ++i) {
        P = a * Q - P;
        Q = (D - P * P) / Q;
        a = state_floor(P, Q);
        cf.quotients.push_back(a);
    }
    return cf;
}

CFExpansion continued_fraction(const DyadicBall& x, int count) {
    if (count < 0) throw DomainError("quotient count must be >= 0");
    CFExpansion cf;
    cf.exact_input = false;

    if (x.is_exact()) {
        QuadraticSurd s = QuadraticSurd::from_rational(mpq_class(x.lower()));
        cf = continued_fraction(s, count);
        cf.exact_input = false;
        return cf;
    }

    mpq_class lo = x.lower(), hi = x.upper();
    mpz_class alo, ahi;
    auto qfloor = [](const mpq_class& v) {
        mpz_class out;
        mpz_fdiv_q(out.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
        return out;
    };
    alo = qfloor(lo);
    ahi = qfloor(hi);
    if (alo != ahi)
        throw PrecisionExhausted("continued fraction: first quotient ambiguous");
    cf.a0 = alo;
    for (int i = 0; i < count; ++i) {
        mpq_class rem_lo = lo - mpq_class(alo), rem_hi = hi - mpq_class(alo);
        if (rem_lo <= 0)
            throw PrecisionExhausted("continued fraction: quotient " +
                                     std::to_string(i + 1) + " ambiguous");
        mpq_class nlo = 1 / rem_hi, nhi = 1 / rem_lo;
        lo = nlo;
        hi = nhi;
        alo = qfloor(lo);
        ahi = qfloor(hi);
        if (alo != ahi)
            throw PrecisionExhausted("continued fraction: quotient " +
                                     std::to_string(i + 1) + " ambiguous");
        cf.quotients.push_back(alo);
    }
    return cf;
}

std::vector<std::pair<mpz_class, mpz_class>> convergents(const CFExpansion& cf) {
    std::vector<std::pair<mpz_class, mpz_class>> out;
    mpz_class pm1 = 1, qm1 = 0;  // p_{-1}, q_{-1}
    mpz_class p0 = cf.a0, q0 = 1;
    out.emplace_back(p0, q0);
    for (const mpz_class& a : cf.quotients) {
        mpz_class p1 = a * p0 + pm1;
        mpz_class q1 = a * q0 + qm1;
        out.emplace_back(p1, q1);
        pm1 = p0;
        qm1 = q0;
        p0 = p1;
        q0 = q1;
    }
    return out;
}

double nearest_int_dist(double x) {
    const double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

double nearest_int_dist_certified(const GPExpr& c, std::int64_t precision_bits) {
    if (!c.is_constant()) throw DomainError("nearest_int_dist: not a constant");
    if (auto q = c.fold_rational()) {
        if (q->get_den() == 1)
            throw RationalRelation("value is an exact integer", {});
        mpq_class frac = *q - mpq_class(surd_floor(QuadraticSurd::from_rational(*q)));
        return std::min(frac.get_d(), 1.0 - frac.get_d());
    }
    std::int64_t prec = std::min(precision_bits, kMaxPrecision);
    for (;;) {
        try {
            const DyadicBall f = c.eval_at_precision(1, prec).frac_certified();
            const double fd = f.to_float64();
            return std::min(fd, 1.0 - fd);
        } catch (const StraddlesInteger&) {
            if (prec >= kMaxPrecision)
                throw PrecisionExhausted(
                    "nearest-integer distance undecidable at maximum precision");
            prec = std::min(prec * 2, kMaxPrecision);
        }
    }
}

FiniteTypeEstimate type_probe(const std::vector<GPExpr>& gammas, std::int64_t q,
                              std::int64_t precision_bits) {
    const std::size_t s = gammas.size();
    if (s < 1) throw DomainError("type_probe needs at least one constant");
    if (s > 4) throw TooLarge("type_probe supports at most 4 constants");
    if (q < 1) throw DomainError("type_probe needs Q >= 1");
    double box = 1.0;
    for (std::size_t j = 0; j < s; ++j) box *= 2.0 * static_cast<double>(q) + 1.0;
    if (box > 8e6) throw TooLarge("type_probe box too large");

    const std::int64_t prec = std::max<std::int64_t>(precision_bits, 256);
    std::vector<DyadicBall> gb;
    gb.reserve(s);
    for (const auto& g : gammas) {
        if (!g.is_constant()) throw DomainError("type_probe: gamma is not constant");
        gb.push_back(g.eval_at_precision(1, prec));
    }

    // coordinate order 0, 1, -1, 2, -2, ...; the first exact relation in this
    // order is the reported witness
    std::vector<std::int64_t> domain;
    domain.push_back(0);
    for (std::int64_t v = 1; v <= q; ++v) {
        domain.push_back(v);
        domain.push_back(-v);
    }

    struct Sample {
        double prod;
        double dist;
    };
    std::vector<Sample> samples;
    samples.reserve(static_cast<std::size_t>(box));

    std::vector<std::int64_t> vec(s, 0);
    std::vector<std::size_t> idx(s, 0);

    FiniteTypeEstimate est;
    est.q = q;
    est.record_dist = 2.0;  // above any admissible distance

    auto eval_vector = [&](const std::vector<std::int64_t>& nv) -> double {
        DyadicBall sum;
        for (std::size_t j = 0; j < s; ++j) {
            if (nv[j] == 0) continue;
            sum = add(sum, mul(gb[j], DyadicBall::from_int64(nv[j])));
        }
        try {
            const DyadicBall f = sum.frac_certified();
            if (f.is_exact() && f.mantissa() == 0)
                throw RationalRelation("exact integer combination", nv);
            const double fd = f.to_float64();
            return std::min(fd, 1.0 - fd);
        } catch (const StraddlesInteger&) {
            // fall back to the symbolic ladder for this vector
            GPExpr combo;
            bool first = true;
            for (std::size_t j = 0; j < s; ++j) {
                if (nv[j] == 0) continue;
                GPExpr term = GPExpr::product(
                    GPExpr::rational_const(mpq_class(static_cast<long>(nv[j]))), gammas[j]);
                combo = first ? term : GPExpr::sum(combo, term);
                first = false;
            }
            try {
                return nearest_int_dist_certified(combo, prec * 2);
            } catch (const RationalRelation&) {
                throw RationalRelation("exact integer combination", nv);
            } catch (const PrecisionExhausted&) {
                throw RationalRelation(
                    "integer combination indistinguishable from an integer at the "
                    "precision cap (exact relation suspected)",
                    nv);
            }
        }
    };

    // odometer over the ordered domain
    for (;;) {
        bool all_zero = true;
        for (std::size_t j = 0; j < s; ++j)
            if (vec[j] != 0) all_zero = false;
        if (!all_zero) {
            const double dist = eval_vector(vec);
            double prod = 1.0;
            for (std::size_t j = 0; j < s; ++j)
                prod *= std::max<double>(1.0, std::fabs(static_cast<double>(vec[j])));
            samples.push_back({prod, dist});
            if (prod >= 2.0 && dist < est.record_dist) {
                est.record_dist = dist;
                est.witness.assign(vec.begin(), vec.end());
            }
        }
        // advance odometer
        std::size_t j = 0;
        while (j < s) {
            if (++idx[j] < domain.size()) {
                vec[j] = domain[idx[j]];
                break;
            }
            idx[j] = 0;
            vec[j] = domain[0];
            ++j;
        }
        if (j == s) break;
    }

    if (est.witness.empty())
        throw DomainError("type_probe: no vector with product >= 2 in the box");

    double prod_at_record = 1.0;
    for (std::int64_t v : est.witness)
        prod_at_record *= std::max<double>(1.0, std::fabs(static_cast<double>(v)));
    est.t_hat = std::log(1.0 / est.record_dist) / std::log(prod_at_record);

    est.c_hat = std::numeric_limits<double>::infinity();
    for (const Sample& smp : samples)
        est.c_hat = std::min(est.c_hat, std::pow(smp.prod, est.t_hat) * smp.dist);
    return est;
}

NThetaBound ntheta_discrepancy_bound(const GPExpr& theta, std::int64_t big_l,
                                     std::int64_t big_j, std::int64_t precision_bits) {
    if (big_l < 1 || big_j < 1) throw DomainError("L and J must be >= 1");
    if (!theta.is_constant()) throw DomainError("theta must be a constant expression");

    const std::int64_t prec = std::max<std::int64_t>(precision_bits, 256);
    const DyadicBall tb = theta.eval_at_precision(1, prec);

    NThetaBound out;
    out.rhs = 1.0 / static_cast<double>(big_j);
    for (std::int64_t j = 1; j <= big_j; ++j) {
        const DyadicBall jt = mul(tb, DyadicBall::from_int64(j));
        double dist;
        try {
            const DyadicBall f = jt.frac_certified();
            if (f.is_exact() && f.mantissa() == 0)
                throw RationalRelation("j*theta is an exact integer", {j});
            const double fd = f.to_float64();
            dist = std::min(fd, 1.0 - fd);
        } catch (const StraddlesInteger&) {
            GPExpr combo = GPExpr::product(
                GPExpr::rational_const(mpq_class(static_cast<long>(j))), theta);
            try {
                dist = nearest_int_dist_certified(combo, prec * 2);
            } catch (const RationalRelation&) {
                throw RationalRelation("j*theta is an exact integer", {j});
            }
        }
        out.rhs += 1.0 / (static_cast<double>(big_l) * static_cast<double>(j) * dist);
    }

    std::vector<double> fracs(static_cast<std::size_t>(big_l));
    for (std::int64_t l = 1; l <= big_l; ++l) {
        const DyadicBall lt = mul(tb, DyadicBall::from_int64(l));
        fracs[static_cast<std::size_t>(l - 1)] = lt.frac_certified().to_float64();
    }
    out.exact_d = discrepancy(fracs).d;
    out.c_ratio = out.exact_d / out.rhs;
    return out;
}

SumOfMinima sum_of_minima(const GPExpr& xi, std::int64_t big_l, std::int64_t n,
                          std::int64_t precision_bits) {
    if (big_l < 2 || n < 2) throw DomainError("sum_of_minima requires L, N >= 2");
    if (!xi.is_constant()) throw DomainError("xi must be a constant expression");

    const std::int64_t prec = std::max<std::int64_t>(precision_bits, 256);
    const DyadicBall xb = xi.eval_at_precision(1, prec);

    SumOfMinima out;
    std::vector<double> fracs(static_cast<std::size_t>(big_l));
    for (std::int64_t l = 1; l <= big_l; ++l) {
        const DyadicBall lx = mul(xb, DyadicBall::from_int64(l));
        const DyadicBall f = lx.frac_certified();
        const double fd = f.to_float64();
        fracs[static_cast<std::size_t>(l - 1)] = fd;
        const double dist = std::min(fd, 1.0 - fd);
        if (f.is_exact() && f.mantissa() == 0) {
            ++out.degenerate_terms;
            out.lhs += static_cast<double>(n);  // ||l xi|| = 0 counts as N
        } else {
            out.lhs += std::min(static_cast<double>(n), 1.0 / dist);
        }
    }
    if (out.degenerate_terms == big_l)
        throw RationalRelation("every ||l xi|| vanishes (xi is an integer)", {});

    const double d_l = discrepancy(fracs).d;
    out.rhs = static_cast<double>(big_l) * std::log(static_cast<double>(n)) *
              (1.0 + static_cast<double>(n) * d_l);
    out.c_ratio = out.lhs / out.rhs;
    return out;
}

}  // namespace gprand
