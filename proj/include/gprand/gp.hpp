#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gprand/dyadic.hpp"

namespace gprand {

// Expression trees for generalized polynomials: expressions built from real
// constants and the integer argument x by addition, multiplication and the
// floor function.
//
// Concrete syntax (CLI --expr and the parse/print pair):
//
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := number | number '/' uint | 'x' | 'pi'
//           | 'sqrt' '(' uint ')' | 'floor' '(' expr ')' | '(' expr ')'
//
// Powers expand into repeated multiplication at parse time (exponent <= 64),
// decimal literals become exact rationals p/10^k, and subtraction becomes
// addition of (-1) * term, so every tree consists of the three constructors
// plus constants and the variable.

struct TheoremInstance;

enum class ConstKind { Rational, SqrtInt, Pi };

struct ConstSpec {
    ConstKind kind = ConstKind::Rational;
    mpq_class rational;    // Rational
    unsigned long arg = 0; // SqrtInt

    // Ball at the given working precision.  Rationals with power-of-two
    // denominators and perfect squares come out exact; everything else has
    // radius one ulp.
    DyadicBall ball(std::int64_t prec) const;
};

enum class GPNodeKind { Constant, Variable, Add, Mul, Floor };

struct GPNode;
using GPNodeRef = std::shared_ptr<const GPNode>;

struct GPNode {
    GPNodeKind kind;
    ConstSpec value;       // Constant only
    GPNodeRef lhs, rhs;    // Add/Mul: both; Floor: lhs only
    int floor_depth = 0;   // smallest n with this expression in GP_n
    int growth_degree = 0; // degree when floor(v) is treated as v
};

class GPExpr {
public:
    GPExpr() = default;

    static GPExpr parse(std::string_view text);  // throws SyntaxError

    // Programmatic constructors.
    static GPExpr constant(ConstSpec c);
    static GPExpr rational_const(const mpq_class& q);
    static GPExpr sqrt_const(unsigned long k);
    static GPExpr pi_const();
    static GPExpr variable();
    static GPExpr sum(const GPExpr& a, const GPExpr& b);
    static GPExpr product(const GPExpr& a, const GPExpr& b);
    static GPExpr floor_of(const GPExpr& a);

    bool empty() const { return !root_; }
    const GPNodeRef& root() const { return root_; }
    int floor_depth() const { return root_ ? root_->floor_depth : 0; }
    int growth_degree() const { return root_ ? root_->growth_degree : 0; }

    // Canonical text form; parsing it back reproduces the identical tree.
    std::string print() const;

    // Single-pass evaluation at the given working precision.  Every floor
    // node is resolved with a certified decision; throws StraddlesInteger
    // when one cannot be made.
    DyadicBall eval_at_precision(std::int64_t n, std::int64_t prec) const;

    // Evaluation with the doubling retry ladder: starts at start_prec and
    // doubles until max_prec, then throws PrecisionExhausted naming n.
    DyadicBall eval(std::int64_t n, std::int64_t start_prec = kDefaultPrecision,
                    std::int64_t max_prec = kMaxPrecision) const;

    // True when the subtree contains no Variable node.
    bool is_constant() const;

    // Folds a constant subtree to an exact rational when possible (rational
    // arithmetic is closed under + and *; sqrt of a perfect square folds).
    std::optional<mpq_class> fold_rational() const;

    bool same_tree(const GPExpr& other) const;

private:
    explicit GPExpr(GPNodeRef r) : root_(std::move(r)) {}
    GPNodeRef root_;

    friend struct TheoremInstance;
    friend TheoremInstance recognize_theorem_shape(const GPExpr& expr);
};

// The nested-floor product shape beta * floor(alpha1 * floor(alpha2 * p(x)))
// with p monic of degree d >= 2.
struct TheoremInstance {
    std::vector<GPExpr> p_coeffs;  // p_coeffs[i] multiplies x^i; size d+1
    GPExpr alpha1, alpha2, beta;
    int degree = 0;
};

// Pattern-matches the shape above; throws NotTheoremShape with the reason
// (wrong nesting / non-monic / degree < 2) when the tree does not match.
// Constant multipliers may be absent at any level (an implicit factor 1).
TheoremInstance recognize_theorem_shape(const GPExpr& expr);

}  // namespace gprand
