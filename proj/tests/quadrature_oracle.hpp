// Test-only oracle for the smoothing kernel: builds the r-fold box
// convolution as an explicit piecewise polynomial (B-spline), evaluates the
// smoothed phase by direct integration against it, and recovers Fourier
// coefficients by panel quadrature over one period.  Entirely independent of
// the closed-form route in the library.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::complex<double> e_of(double u) {
    return {std::cos(kTwoPi * u), std::sin(kTwoPi * u)};
}

struct GaussRule {
    std::vector<double> x, w;  // nodes/weights on [-1, 1]
};

inline const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        g.x[i] = x;
        g.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(g)).first->second;
}

// integral of f over [a, b] with an n-point rule
template <typename F>
std::complex<double> gauss_integrate(F&& f, double a, double b, int n = 24) {
    const GaussRule& g = gauss_rule(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) acc += g.w[i] * f(mid + half * g.x[i]);
    return half * acc;
}

struct Piece {
    double lo, hi;
    std::vector<double> coef;  // sum_j coef[j] * y^j
};

struct PiecewisePoly {
    std::vector<Piece> pieces;  // contiguous, increasing

    double eval(double y) const {
        for (const Piece& p : pieces) {
            if (y >= p.lo && y <= p.hi) {
                double acc = 0.0;
                for (std::size_t j = p.coef.size(); j-- > 0;)
                    acc = acc * y + p.coef[j];
                return acc;
            }
        }
        return 0.0;
    }
};

inline std::vector<double> shift_poly(const std::vector<double>& c, double s) {
    // q(y) = p(y + s)
    std::vector<double> out(c.size(), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
        // expand c[j] (y+s)^j
        double binom = 1.0;
        double spow = 1.0;
        for (std::size_t i = 0; i <= j; ++i) {
            out[j - i] += c[j] * binom * spow;
            binom = binom * static_cast<double>(j - i) / static_cast<double>(i + 1);
            spow *= s;
        }
    }
    return out;
}

// antiderivative of each piece with constants chosen so the result is
// continuous and zero left of the support
inline PiecewisePoly antiderivative(const PiecewisePoly& p) {
    PiecewisePoly out;
    double carry = 0.0;
    for (const Piece& piece : p.pieces) {
        Piece q;
        q.lo = piece.lo;
        q.hi = piece.hi;
        q.coef.assign(piece.coef.size() + 1, 0.0);
        for (std::size_t j = 0; j < piece.coef.size(); ++j)
            q.coef[j + 1] = piece.coef[j] / static_cast<double>(j + 1);
        // fix the constant so q(lo) equals the running integral
        double at_lo = 0.0;
        for (std::size_t j = q.coef.size(); j-- > 0;) at_lo = at_lo * q.lo + q.coef[j];
        q.coef[0] = carry - at_lo;
        double at_hi = 0.0;
        for (std::size_t j = q.coef.size(); j-- > 0;) at_hi = at_hi * q.hi + q.coef[j];
        carry = at_hi;
        out.pieces.push_back(std::move(q));
    }
    return out;
}

// r-fold convolution of the normalized box of half-width delta
inline PiecewisePoly box_spline(int r, double delta) {
    PiecewisePoly b;
    b.pieces.push_back({-delta, delta, {1.0 / (2.0 * delta)}});
    for (int step = 2; step <= r; ++step) {
        const PiecewisePoly F = antiderivative(b);
        std::set<double> cuts;
        for (const Piece& p : b.pieces) {
            cuts.insert(p.lo - delta);
            cuts.insert(p.lo + delta);
            cuts.insert(p.hi - delta);
            cuts.insert(p.hi + delta);
        }
        PiecewisePoly next;
        std::vector<double> pts(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double lo = pts[i], hi = pts[i + 1];
            const double mid = 0.5 * (lo + hi);
            // polynomial for F(x + delta) on this interval
            auto poly_of = [&](double off) -> std::vector<double> {
                const double probe = mid + off;
                if (probe <= F.pieces.front().lo) return {0.0};
                if (probe >= F.pieces.back().hi) return {1.0};
                for (const Piece& p : F.pieces)
                    if (probe >= p.lo && probe <= p.hi) return shift_poly(p.coef, off);
                return {0.0};
            };
            const std::vector<double> up = poly_of(delta);
            const std::vector<double> dn = poly_of(-delta);
            Piece q;
            q.lo = lo;
            q.hi = hi;
            q.coef.assign(std::max(up.size(), dn.size()), 0.0);
            for (std::size_t j = 0; j < q.coef.size(); ++j) {
                const double a = j < up.size() ? up[j] : 0.0;
                const double c = j < dn.size() ? dn[j] : 0.0;
                q.coef[j] = (a - c) / (2.0 * delta);
            }
            next.pieces.push_back(std::move(q));
        }
        b = std::move(next);
    }
    return b;
}

// G_r(x) = integral over y of B_r(y) e(tau * frac(x - y))
inline std::complex<double> g_direct(double x, double tau, const PiecewisePoly& br) {
    std::set<double> cuts;
    const double ylo = br.pieces.front().lo, yhi = br.pieces.back().hi;
    for (const Piece& p : br.pieces) {
        cuts.insert(p.lo);
        cuts.insert(p.hi);
    }
    // frac(x - y) breaks where x - y is an integer
    for (double m = std::floor(x - yhi); m <= std::ceil(x - ylo); m += 1.0) {
        const double y = x - m;
        if (y > ylo && y < yhi) cuts.insert(y);
    }
    std::vector<double> pts(cuts.begin(), cuts.end());
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double lo = pts[i], hi = pts[i + 1];
        if (hi - lo < 1e-15) continue;
        acc += gauss_integrate(
            [&](double y) {
                const double u = x - y;
                return br.eval(y) * e_of(tau * (u - std::floor(u)));
            },
            lo, hi, 24);
    }
    return acc;
}

// Fourier coefficient of G_r against e(-kx) by panel quadrature over [0, 1]
inline std::complex<double> g_hat_quadrature(std::int64_t k, double tau, double delta,
                                             int r) {
    const PiecewisePoly br = box_spline(r, delta);
    // kinks of G_r: x with x - y on an integer for y at the support edge
    std::set<double> cuts{0.0, 1.0};
    const double w = r * delta;
    for (int m = -r - 1; m <= r + 2; ++m) {
        for (double edge : {w, -w}) {
            const double x = edge + m;
            if (x > 0.0 && x < 1.0) cuts.insert(x);
        }
    }
    std::vector<double> base(cuts.begin(), cuts.end());
    const double max_len = 1.0 / (4.0 * static_cast<double>(std::llabs(k)) + 8.0);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
        const double lo = base[i], hi = base[i + 1];
        const int nsub = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_len)));
        for (int s = 0; s < nsub; ++s) {
            const double a = lo + (hi - lo) * s / nsub;
            const double b = lo + (hi - lo) * (s + 1) / nsub;
            acc += gauss_integrate(
                [&](double x) {
                    return g_direct(x, tau, br) * e_of(static_cast<double>(k) * x);
                },
                a, b, 20);
        }
    }
    return acc;
}

// exact pointwise value for r = 1 from the analytic antiderivative
inline std::complex<double> g1_exact(double x, double tau, double delta) {
    const double lo = x - delta, hi = x + delta;
    std::set<double> cuts{lo, hi};
    for (double m = std::floor(lo); m <= std::ceil(hi); m += 1.0)
        if (m > lo && m < hi) cuts.insert(m);
    std::vector<double> pts(cuts.begin(), cuts.end());
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        const double m = std::floor(0.5 * (a + b));
        if (tau == 0.0) {
            acc += b - a;
            continue;
        }
        // integral of e(tau (u - m)) over [a, b]
        const std::complex<double> den(0.0, kTwoPi * tau);
        acc += (e_of(tau * (b - m)) - e_of(tau * (a - m))) / den;
    }
    return acc / (2.0 * delta);
}

}  // namespace oracle
