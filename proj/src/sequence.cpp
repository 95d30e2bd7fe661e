#include "gprand/sequence.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "gprand/parallel.hpp"

namespace gprand {

namespace {

constexpr char kMagic[6] = {'G', 'P', 'S', 'E', 'Q', '1'};
const mpq_class kHalf(1, 2);

// +1 / -1 / 0 = undecided at this precision.
int chi_decide(const DyadicBall& value) {
    DyadicBall f;
    try {
        f = value.frac_certified();
    } catch (const StraddlesInteger&) {
        return 0;
    }
    const int c = f.certified_cmp(kHalf);
    if (c > 0) return -1;  // {x} >= 1/2
    if (c < 0) return +1;  // {x} < 1/2
    return 0;
}

}  // namespace

BinarySequence::BinarySequence(std::int64_t n) : n_(n) {
    if (n < 1) throw DomainError("sequence length must be >= 1");
    bits_.assign(static_cast<std::size_t>((n + 7) / 8), 0);
}

std::vector<std::int8_t> BinarySequence::unpacked() const {
    std::vector<std::int8_t> v(static_cast<std::size_t>(n_));
    for (std::int64_t i = 1; i <= n_; ++i)
        v[static_cast<std::size_t>(i - 1)] = static_cast<std::int8_t>(value(i));
    return v;
}

BinarySequence BinarySequence::negated() const {
    BinarySequence r(n_);
    for (std::int64_t i = 1; i <= n_; ++i) r.set(i, -value(i));
    return r;
}

BinarySequence BinarySequence::reversed() const {
    BinarySequence r(n_);
    for (std::int64_t i = 1; i <= n_; ++i) r.set(i, value(n_ + 1 - i));
    return r;
}

BinarySequence BinarySequence::prefix(std::int64_t n) const {
    if (n < 1 || n > n_) throw OutOfRange("prefix length out of range");
    BinarySequence r(n);
    std::memcpy(r.bits_.data(), bits_.data(), r.bits_.size());
    // clear bits past n in the last byte
    const int used = static_cast<int>(n & 7);
    if (used) r.bits_.back() &= static_cast<std::uint8_t>((1u << used) - 1);
    return r;
}

void BinarySequence::write(std::ostream& out) const {
    out.write(kMagic, sizeof(kMagic));
    std::uint8_t len[8];
    std::uint64_t n = static_cast<std::uint64_t>(n_);
    for (int i = 0; i < 8; ++i) len[i] = static_cast<std::uint8_t>(n >> (8 * i));
    out.write(reinterpret_cast<const char*>(len), 8);
    out.write(reinterpret_cast<const char*>(bits_.data()),
              static_cast<std::streamsize>(bits_.size()));
    if (!out) throw Error("sequence write failed");
}

BinarySequence BinarySequence::read(std::istream& in) {
    char magic[6];
    in.read(magic, 6);
    if (!in || std::memcmp(magic, kMagic, 6) != 0)
        throw Error("not a GPSEQ1 file (bad magic)");
    std::uint8_t len[8];
    in.read(reinterpret_cast<char*>(len), 8);
    if (!in) throw Error("truncated GPSEQ1 header");
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(len[i]) << (8 * i);
    if (n < 1 || n > (1ull << 40)) throw Error("GPSEQ1 length out of range");
    BinarySequence r(static_cast<std::int64_t>(n));
    in.read(reinterpret_cast<char*>(r.bits_.data()),
            static_cast<std::streamsize>(r.bits_.size()));
    if (!in) throw Error("truncated GPSEQ1 payload");
    return r;
}

void BinarySequence::write_file(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    write(f);
}

BinarySequence BinarySequence::read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    return read(f);
}

int chi(const DyadicBall& x) {
    const int c = chi_decide(x);
    if (c == 0)
        throw PrecisionExhausted("chi: fractional part straddles the half boundary");
    return c;
}

int chi_of_expr(const GPExpr& f, std::int64_t n, std::int64_t start_prec,
                std::int64_t max_prec) {
    std::int64_t prec = std::min(start_prec, max_prec);
    for (;;) {
        int c = 0;
        try {
            c = chi_decide(f.eval_at_precision(n, prec));
        } catch (const StraddlesInteger&) {
            c = 0;
        }
        if (c != 0) return c;
        if (prec >= max_prec)
            throw PrecisionExhausted("chi undecidable at maximum precision (n=" +
                                     std::to_string(n) + ")");
        prec = std::min(prec * 2, max_prec);
    }
}

BinarySequence generate(const GPExpr& f, std::int64_t n,
                        std::int64_t precision_bits, int threads) {
    if (n < 1) throw DomainError("generate: N must be >= 1");
    std::vector<std::int8_t> vals(static_cast<std::size_t>(n));
    parallel_chunks(1, n + 1, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i)
            vals[static_cast<std::size_t>(i - 1)] =
                static_cast<std::int8_t>(chi_of_expr(f, i, precision_bits));
    });
    BinarySequence seq(n);
    for (std::int64_t i = 1; i <= n; ++i)
        seq.set(i, vals[static_cast<std::size_t>(i - 1)]);
    return seq;
}

std::vector<double> fractional_parts(const GPExpr& f, std::int64_t count,
                                     std::int64_t a, std::int64_t b,
                                     std::int64_t precision_bits, int threads) {
    if (count < 1) throw DomainError("fractional_parts: count must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(count));
    parallel_chunks(1, count + 1, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t m = lo; m < hi; ++m) {
            const std::int64_t arg = a * m + b;
            std::int64_t prec = std::min(precision_bits, kMaxPrecision);
            for (;;) {
                try {
                    out[static_cast<std::size_t>(m - 1)] =
                        f.eval_at_precision(arg, prec).frac_certified().to_float64();
                    break;
                } catch (const StraddlesInteger&) {
                    if (prec >= kMaxPrecision)
                        throw PrecisionExhausted(
                            "fractional part undecidable at maximum precision (n=" +
                            std::to_string(arg) + ")");
                    prec = std::min(prec * 2, kMaxPrecision);
                }
            }
        }
    });
    return out;
}

}  // namespace gprand
