#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gprand/gp.hpp"

namespace gprand {

// A packed {-1,+1} sequence e_1..e_N.  Bit (n-1), LSB-first within bytes, is
// set exactly when e_n = +1.
//
// File format (stable): magic "GPSEQ1", then N as an 8-byte little-endian
// unsigned integer, then ceil(N/8) payload bytes in the same bit layout.
class BinarySequence {
public:
    explicit BinarySequence(std::int64_t n);

    std::int64_t size() const { return n_; }

    // 1-based access matching the e_n indexing.
    int value(std::int64_t n) const {
        const std::uint64_t i = static_cast<std::uint64_t>(n - 1);
        return (bits_[i >> 3] >> (i & 7)) & 1 ? +1 : -1;
    }
    void set(std::int64_t n, int v) {
        const std::uint64_t i = static_cast<std::uint64_t>(n - 1);
        if (v > 0)
            bits_[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
        else
            bits_[i >> 3] &= static_cast<std::uint8_t>(~(1u << (i & 7)));
    }

    // Unpacked copy for hot loops.
    std::vector<std::int8_t> unpacked() const;

    BinarySequence negated() const;
    BinarySequence reversed() const;

    // Keeps the first n elements.
    BinarySequence prefix(std::int64_t n) const;

    void write(std::ostream& out) const;
    static BinarySequence read(std::istream& in);
    void write_file(const std::string& path) const;
    static BinarySequence read_file(const std::string& path);

    const std::vector<std::uint8_t>& payload() const { return bits_; }

private:
    std::int64_t n_;
    std::vector<std::uint8_t> bits_;
};

// chi of a certified value: +1 when the fractional part is < 1/2, -1 when it
// is >= 1/2 (the boundary maps to -1).  Throws PrecisionExhausted when the
// ball cannot decide either the floor or the half comparison.
int chi(const DyadicBall& x);

// e_n = chi(f(n)) for n = 1..N, with the doubling precision ladder applied
// jointly to the floor decisions inside f and to the final half comparison.
// Deterministic and independent of the worker count.
BinarySequence generate(const GPExpr& f, std::int64_t n,
                        std::int64_t precision_bits = kDefaultPrecision,
                        int threads = 0);

// chi of f(n) with the full retry ladder; used by generate.
int chi_of_expr(const GPExpr& f, std::int64_t n,
                std::int64_t start_prec = kDefaultPrecision,
                std::int64_t max_prec = kMaxPrecision);

// Fractional parts {f(a*m+b)} for m = 1..count as 64-bit floats (certified
// reduction first, conversion second).
std::vector<double> fractional_parts(const GPExpr& f, std::int64_t count,
                                     std::int64_t a = 1, std::int64_t b = 0,
                                     std::int64_t precision_bits = kDefaultPrecision,
                                     int threads = 0);

}  // namespace gprand
