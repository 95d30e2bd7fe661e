#include "gprand/gp.hpp"

#include <cctype>
#include <map>
#include <utility>

namespace gprand {

namespace {

thread_local std::map<std::pair<unsigned long, std::int64_t>, DyadicBall> tl_sqrt_cache;
thread_local std::map<std::int64_t, DyadicBall> tl_pi_cache;

GPNodeRef make_const(ConstSpec c) {
    auto n = std::make_shared<GPNode>();
    n->kind = GPNodeKind::Constant;
    n->value = std::move(c);
    return n;
}

GPNodeRef make_var() {
    auto n = std::make_shared<GPNode>();
    n->kind = GPNodeKind::Variable;
    n->growth_degree = 1;
    return n;
}

GPNodeRef make_add(GPNodeRef l, GPNodeRef r) {
    auto n = std::make_shared<GPNode>();
    n->kind = GPNodeKind::Add;
    n->floor_depth = std::max(l->floor_depth, r->floor_depth);
    n->growth_degree = std::max(l->growth_degree, r->growth_degree);
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

GPNodeRef make_mul(GPNodeRef l, GPNodeRef r) {
    auto n = std::make_shared<GPNode>();
    n->kind = GPNodeKind::Mul;
    n->floor_depth = std::max(l->floor_depth, r->floor_depth);
    n->growth_degree = l->growth_degree + r->growth_degree;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

GPNodeRef make_floor(GPNodeRef c) {
    auto n = std::make_shared<GPNode>();
    n->kind = GPNodeKind::Floor;
    n->floor_depth = c->floor_depth + 1;
    n->growth_degree = c->growth_degree;
    n->lhs = std::move(c);
    return n;
}

GPNodeRef rational_node(const mpq_class& q) {
    ConstSpec c;
    c.kind = ConstKind::Rational;
    c.rational = q;
    c.rational.canonicalize();
    return make_const(std::move(c));
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    GPNodeRef run() {
        GPNodeRef e = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail(pos_, "'+', '-', '*' or end of input");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::size_t off, const std::string& expected) {
        throw SyntaxError(off, expected,
                          "syntax error at offset " + std::to_string(off) +
                              ": expected " + expected);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool eat(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!eat(c)) fail(pos_, what);
    }

    mpz_class parse_digits() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == start) fail(start, "a digit");
        return mpz_class(std::string(s_.substr(start, pos_ - start)), 10);
    }

    unsigned long parse_small_uint(unsigned long cap, const std::string& what) {
        std::size_t start = pos_;
        skip_ws();
        start = pos_;
        mpz_class v = parse_digits();
        if (!v.fits_ulong_p() || v.get_ui() > cap) fail(start, what);
        return v.get_ui();
    }

    // digits ('.' digits)? with an optional '/ uint' ratio suffix; decimal
    // literals become exact rationals p/10^k.
    GPNodeRef parse_number() {
        mpz_class intpart = parse_digits();
        mpq_class value(intpart);
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            std::size_t start = pos_;
            mpz_class fracpart = parse_digits();
            std::size_t ndigits = pos_ - start;
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, ndigits);
            value += mpq_class(fracpart, den);
            value.canonicalize();
        }
        if (eat('/')) {
            std::size_t start = pos_;
            skip_ws();
            start = pos_;
            mpz_class den = parse_digits();
            if (den == 0) fail(start, "a nonzero denominator");
            value /= mpq_class(den);
            value.canonicalize();
        }
        return rational_node(value);
    }

    GPNodeRef parse_base() {
        skip_ws();
        if (pos_ >= s_.size())
            fail(pos_, "a number, 'x', 'pi', 'sqrt', 'floor' or '('");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (c == '(') {
            ++pos_;
            GPNodeRef e = parse_expr();
            expect(')', "')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   std::isalpha(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string_view id = s_.substr(start, pos_ - start);
            if (id == "x") return make_var();
            if (id == "pi") {
                ConstSpec spec;
                spec.kind = ConstKind::Pi;
                return make_const(std::move(spec));
            }
            if (id == "sqrt") {
                expect('(', "'('");
                ConstSpec spec;
                spec.kind = ConstKind::SqrtInt;
                spec.arg = parse_small_uint(1000000000UL, "an integer argument");
                expect(')', "')'");
                return make_const(std::move(spec));
            }
            if (id == "floor") {
                expect('(', "'('");
                GPNodeRef e = parse_expr();
                expect(')', "')'");
                return make_floor(std::move(e));
            }
            fail(start, "'x', 'pi', 'sqrt' or 'floor'");
        }
        fail(pos_, "a number, 'x', 'pi', 'sqrt', 'floor' or '('");
    }

    GPNodeRef parse_factor() {
        GPNodeRef b = parse_base();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos_;
            unsigned long k = parse_small_uint(64, "an exponent at most 64");
            (void)start;
            if (k == 0) return rational_node(mpq_class(1));
            GPNodeRef acc = b;
            for (unsigned long i = 1; i < k; ++i) acc = make_mul(acc, b);
            return acc;
        }
        return b;
    }

    GPNodeRef parse_term() {
        GPNodeRef t = parse_factor();
        while (eat('*')) t = make_mul(t, parse_factor());
        return t;
    }

    GPNodeRef parse_expr() {
        GPNodeRef e = parse_term();
        for (;;) {
            if (eat('+')) {
                e = make_add(e, parse_term());
            } else if (eat('-')) {
                e = make_add(e, make_mul(rational_node(mpq_class(-1)), parse_term()));
            } else {
                return e;
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Printer.  Emits text that reparses to the identical tree for any tree the
// parser can produce (parsed trees never hold negative rational constants;
// programmatic negatives print as "(0-...)", which reparses to an equal
// value).

void print_expr(const GPNode& n, std::string& out);
void print_factor(const GPNode& n, std::string& out);

void print_const(const ConstSpec& c, std::string& out) {
    switch (c.kind) {
        case ConstKind::Rational: {
            mpq_class q = c.rational;
            bool neg = q < 0;
            if (neg) {
                out += "(0-";
                q = -q;
            }
            out += q.get_num().get_str();
            if (q.get_den() != 1) {
                out += '/';
                out += q.get_den().get_str();
            }
            if (neg) out += ')';
            break;
        }
        case ConstKind::SqrtInt:
            out += "sqrt(";
            out += std::to_string(c.arg);
            out += ')';
            break;
        case ConstKind::Pi:
            out += "pi";
            break;
    }
}

void print_factor(const GPNode& n, std::string& out) {
    switch (n.kind) {
        case GPNodeKind::Constant:
            print_const(n.value, out);
            break;
        case GPNodeKind::Variable:
            out += 'x';
            break;
        case GPNodeKind::Floor:
            out += "floor(";
            print_expr(*n.lhs, out);
            out += ')';
            break;
        default:
            out += '(';
            print_expr(n, out);
            out += ')';
            break;
    }
}

void print_term(const GPNode& n, std::string& out) {
    if (n.kind == GPNodeKind::Mul) {
        print_term(*n.lhs, out);
        out += '*';
        print_factor(*n.rhs, out);
    } else {
        print_factor(n, out);
    }
}

bool is_neg_one_rational(const GPNode& n) {
    return n.kind == GPNodeKind::Constant && n.value.kind == ConstKind::Rational &&
           n.value.rational == -1;
}

void print_expr(const GPNode& n, std::string& out) {
    if (n.kind == GPNodeKind::Add) {
        print_expr(*n.lhs, out);
        const GPNode& r = *n.rhs;
        if (r.kind == GPNodeKind::Mul && is_neg_one_rational(*r.lhs)) {
            out += '-';
            print_factor(*r.rhs, out);
        } else {
            out += '+';
            print_term(r, out);
        }
    } else {
        print_term(n, out);
    }
}

// ---------------------------------------------------------------------------
// Evaluation.

DyadicBall eval_node(const GPNode& n, const DyadicBall& x, std::int64_t prec) {
    switch (n.kind) {
        case GPNodeKind::Constant:
            return n.value.ball(prec);
        case GPNodeKind::Variable:
            return x;
        case GPNodeKind::Add:
            return add(eval_node(*n.lhs, x, prec), eval_node(*n.rhs, x, prec));
        case GPNodeKind::Mul:
            return mul(eval_node(*n.lhs, x, prec), eval_node(*n.rhs, x, prec), prec);
        case GPNodeKind::Floor:
            return DyadicBall::from_integer(
                eval_node(*n.lhs, x, prec).floor_certified());
    }
    throw Error("eval: corrupt node");
}

bool node_is_constant(const GPNode& n) {
    switch (n.kind) {
        case GPNodeKind::Constant:
            return true;
        case GPNodeKind::Variable:
            return false;
        case GPNodeKind::Floor:
            return node_is_constant(*n.lhs);
        default:
            return node_is_constant(*n.lhs) && node_is_constant(*n.rhs);
    }
}

std::optional<mpq_class> fold_node(const GPNode& n) {
    switch (n.kind) {
        case GPNodeKind::Constant:
            switch (n.value.kind) {
                case ConstKind::Rational:
                    return n.value.rational;
                case ConstKind::SqrtInt: {
                    mpz_class k(n.value.arg);
                    if (mpz_perfect_square_p(k.get_mpz_t())) {
                        mpz_class r;
                        mpz_sqrt(r.get_mpz_t(), k.get_mpz_t());
                        return mpq_class(r);
                    }
                    return std::nullopt;
                }
                case ConstKind::Pi:
                    return std::nullopt;
            }
            return std::nullopt;
        case GPNodeKind::Variable:
            return std::nullopt;
        case GPNodeKind::Add: {
            auto l = fold_node(*n.lhs), r = fold_node(*n.rhs);
            if (l && r) return mpq_class(*l + *r);
            return std::nullopt;
        }
        case GPNodeKind::Mul: {
            auto l = fold_node(*n.lhs), r = fold_node(*n.rhs);
            if (l && r) return mpq_class(*l * *r);
            return std::nullopt;
        }
        case GPNodeKind::Floor: {
            auto c = fold_node(*n.lhs);
            if (!c) return std::nullopt;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), c->get_num().get_mpz_t(),
                       c->get_den().get_mpz_t());
            return mpq_class(q);
        }
    }
    return std::nullopt;
}

bool nodes_equal(const GPNode& a, const GPNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case GPNodeKind::Constant:
            return a.value.kind == b.value.kind &&
                   a.value.rational == b.value.rational && a.value.arg == b.value.arg;
        case GPNodeKind::Variable:
            return true;
        case GPNodeKind::Floor:
            return nodes_equal(*a.lhs, *b.lhs);
        default:
            return nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
    }
}

}  // namespace

DyadicBall ConstSpec::ball(std::int64_t prec) const {
    switch (kind) {
        case ConstKind::Rational:
            return DyadicBall::from_rational(rational, prec);
        case ConstKind::SqrtInt: {
            auto key = std::make_pair(arg, prec);
            auto it = tl_sqrt_cache.find(key);
            if (it == tl_sqrt_cache.end())
                it = tl_sqrt_cache.emplace(key, DyadicBall::sqrt_of_integer(arg, prec)).first;
            return it->second;
        }
        case ConstKind::Pi: {
            auto it = tl_pi_cache.find(prec);
            if (it == tl_pi_cache.end())
                it = tl_pi_cache.emplace(prec, DyadicBall::pi(prec)).first;
            return it->second;
        }
    }
    throw Error("corrupt constant spec");
}

GPExpr GPExpr::parse(std::string_view text) { return GPExpr(Parser(text).run()); }

GPExpr GPExpr::constant(ConstSpec c) { return GPExpr(make_const(std::move(c))); }

GPExpr GPExpr::rational_const(const mpq_class& q) { return GPExpr(rational_node(q)); }

GPExpr GPExpr::sqrt_const(unsigned long k) {
    ConstSpec c;
    c.kind = ConstKind::SqrtInt;
    c.arg = k;
    return GPExpr(make_const(std::move(c)));
}

GPExpr GPExpr::pi_const() {
    ConstSpec c;
    c.kind = ConstKind::Pi;
    return GPExpr(make_const(std::move(c)));
}

GPExpr GPExpr::variable() { return GPExpr(make_var()); }

GPExpr GPExpr::sum(const GPExpr& a, const GPExpr& b) {
    return GPExpr(make_add(a.root_, b.root_));
}

GPExpr GPExpr::product(const GPExpr& a, const GPExpr& b) {
    return GPExpr(make_mul(a.root_, b.root_));
}

GPExpr GPExpr::floor_of(const GPExpr& a) { return GPExpr(make_floor(a.root_)); }

std::string GPExpr::print() const {
    std::string out;
    if (root_) print_expr(*root_, out);
    return out;
}

DyadicBall GPExpr::eval_at_precision(std::int64_t n, std::int64_t prec) const {
    if (!root_) throw Error("eval of empty expression");
    return eval_node(*root_, DyadicBall::from_int64(n), prec);
}

DyadicBall GPExpr::eval(std::int64_t n, std::int64_t start_prec,
                        std::int64_t max_prec) const {
    if (n < 1) throw DomainError("eval: argument must be >= 1");
    std::int64_t prec = std::min(start_prec, max_prec);
    for (;;) {
        try {
            return eval_at_precision(n, prec);
        } catch (const StraddlesInteger&) {
            if (prec >= max_prec)
                throw PrecisionExhausted(
                    "floor undecidable at maximum precision (argument n=" +
                    std::to_string(n) + ")");
            prec = std::min(prec * 2, max_prec);
        }
    }
}

bool GPExpr::is_constant() const { return root_ && node_is_constant(*root_); }

std::optional<mpq_class> GPExpr::fold_rational() const {
    if (!root_) return std::nullopt;
    return fold_node(*root_);
}

bool GPExpr::same_tree(const GPExpr& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return nodes_equal(*root_, *other.root_);
}

// ---------------------------------------------------------------------------
// Theorem-shape recognition.

namespace {

void flatten_mul(const GPNodeRef& n, std::vector<GPNodeRef>& out) {
    if (n->kind == GPNodeKind::Mul) {
        flatten_mul(n->lhs, out);
        flatten_mul(n->rhs, out);
    } else {
        out.push_back(n);
    }
}

GPNodeRef product_of(const std::vector<GPNodeRef>& factors) {
    if (factors.empty()) return rational_node(mpq_class(1));
    GPNodeRef acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) acc = make_mul(acc, factors[i]);
    return acc;
}

// Splits `n` into (constant multiplier, floor node); the constant may be an
// implicit 1.
std::pair<GPNodeRef, GPNodeRef> split_const_times_floor(const GPNodeRef& n,
                                                        const char* level) {
    std::vector<GPNodeRef> factors;
    flatten_mul(n, factors);
    std::vector<GPNodeRef> consts;
    GPNodeRef floor_node;
    for (const auto& f : factors) {
        if (node_is_constant(*f)) {
            consts.push_back(f);
        } else if (f->kind == GPNodeKind::Floor && !floor_node) {
            floor_node = f;
        } else {
            throw NotTheoremShape(std::string("wrong nesting at ") + level +
                                  " level: expected constant * floor(...)");
        }
    }
    if (!floor_node)
        throw NotTheoremShape(std::string("wrong nesting at ") + level +
                              " level: no floor factor");
    return {product_of(consts), floor_node};
}

// Coefficient list (low to high) of a floor-free subtree, as constant
// expressions; rational coefficients fold eagerly.
std::vector<GPNodeRef> extract_poly(const GPNodeRef& n) {
    auto combine_add = [](const GPNodeRef& a, const GPNodeRef& b) -> GPNodeRef {
        auto fa = fold_node(*a), fb = fold_node(*b);
        if (fa && fb) return rational_node(mpq_class(*fa + *fb));
        return make_add(a, b);
    };
    auto combine_mul = [](const GPNodeRef& a, const GPNodeRef& b) -> GPNodeRef {
        auto fa = fold_node(*a), fb = fold_node(*b);
        if (fa && fb) return rational_node(mpq_class(*fa * *fb));
        return make_mul(a, b);
    };
    switch (n->kind) {
        case GPNodeKind::Constant:
            return {n};
        case GPNodeKind::Variable:
            return {rational_node(mpq_class(0)), rational_node(mpq_class(1))};
        case GPNodeKind::Add: {
            auto l = extract_poly(n->lhs), r = extract_poly(n->rhs);
            std::vector<GPNodeRef> out(std::max(l.size(), r.size()));
            for (std::size_t i = 0; i < out.size(); ++i) {
                if (i < l.size() && i < r.size())
                    out[i] = combine_add(l[i], r[i]);
                else
                    out[i] = i < l.size() ? l[i] : r[i];
            }
            return out;
        }
        case GPNodeKind::Mul: {
            auto l = extract_poly(n->lhs), r = extract_poly(n->rhs);
            std::vector<GPNodeRef> out(l.size() + r.size() - 1,
                                       rational_node(mpq_class(0)));
            for (std::size_t i = 0; i < l.size(); ++i)
                for (std::size_t j = 0; j < r.size(); ++j)
                    out[i + j] = combine_add(out[i + j], combine_mul(l[i], r[j]));
            return out;
        }
        case GPNodeKind::Floor:
            throw NotTheoremShape(
                "wrong nesting: floor inside the innermost polynomial part");
    }
    throw Error("extract_poly: corrupt node");
}

bool coeff_is_zero(const GPNodeRef& n) {
    auto f = fold_node(*n);
    return f && *f == 0;
}

}  // namespace

TheoremInstance recognize_theorem_shape(const GPExpr& expr) {
    if (expr.empty()) throw NotTheoremShape("empty expression");

    auto [beta, floor1] = split_const_times_floor(expr.root(), "outer");
    auto [alpha1, floor2] = split_const_times_floor(floor1->lhs, "middle");

    // innermost level: constants * polynomial(x)
    std::vector<GPNodeRef> factors;
    flatten_mul(floor2->lhs, factors);
    std::vector<GPNodeRef> consts, polys;
    for (const auto& f : factors)
        (node_is_constant(*f) ? consts : polys).push_back(f);
    if (polys.empty())
        throw NotTheoremShape("degree < 2: innermost part is constant");

    std::vector<GPNodeRef> coeffs = extract_poly(product_of(polys));
    while (coeffs.size() > 1 && coeff_is_zero(coeffs.back())) coeffs.pop_back();
    const int degree = static_cast<int>(coeffs.size()) - 1;
    if (degree < 2)
        throw NotTheoremShape("degree < 2 (got degree " + std::to_string(degree) + ")");

    auto lead = fold_node(*coeffs.back());
    if (!lead || *lead != 1)
        throw NotTheoremShape("non-monic: leading coefficient is not 1");

    TheoremInstance inst;
    inst.degree = degree;
    inst.beta = GPExpr(beta);
    inst.alpha1 = GPExpr(alpha1);
    inst.alpha2 = GPExpr(product_of(consts));
    inst.p_coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) inst.p_coeffs.push_back(GPExpr(c));
    return inst;
}

}  // namespace gprand
