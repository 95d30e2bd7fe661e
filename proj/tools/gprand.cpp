// Command-line front end: every library operation as a subcommand with
// machine-readable (JSON or CSV) output.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gprand/analytic.hpp"
#include "gprand/bounds.hpp"
#include "gprand/dioph.hpp"
#include "gprand/measures.hpp"
#include "gprand/sequence.hpp"
#include "gprand/verify.hpp"

using nlohmann::json;
using namespace gprand;

namespace {

struct RunConfig {
    std::string expr;
    std::int64_t n = 0;
    std::int64_t a_max = 0;  // 0 = exhaustive
    int big_h = 10;
    std::int64_t precision_bits = kDefaultPrecision;
    std::string out;
    std::string format = "json";
    int threads = 0;
};

std::string q2s(const mpq_class& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0)
        throw DomainError("cannot parse rational '" + text + "'");
    q.canonicalize();
    return q;
}

void emit_text(const RunConfig& cfg, const std::string& body) {
    if (cfg.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw Error("cannot open " + cfg.out + " for writing");
        f << body;
    }
}

void emit(const RunConfig& cfg, const json& doc) {
    std::ostringstream body;
    if (cfg.format == "csv") {
        body << "key,value\n";
        for (auto it = doc.begin(); it != doc.end(); ++it)
            body << it.key() << "," << it.value().dump() << "\n";
    } else {
        body << doc.dump(2) << "\n";
    }
    emit_text(cfg, body.str());
}

std::vector<double> read_points(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    std::vector<double> pts;
    double v;
    while (f >> v) pts.push_back(v);
    if (pts.empty()) throw DomainError("no points in " + path);
    return pts;
}

std::vector<GPExpr> parse_expr_list(const std::string& csv) {
    std::vector<GPExpr> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(GPExpr::parse(item));
    if (out.empty()) throw DomainError("empty expression list");
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    if (out.empty()) throw DomainError("empty integer list");
    return out;
}

json witness_json(const WellDistReport& rep) {
    return json{{"w", rep.w},         {"a", rep.witness.a},
                {"b", rep.witness.b}, {"m", rep.witness.m},
                {"aMax", rep.a_max},  {"exhaustive", rep.exhaustive}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudorandom +-1 sequences from generalized polynomials: "
                 "generation, well-distribution, discrepancy and bound verifiers"};
    app.set_help_flag("--help", "print help");  // frees -h/--h for the frequency flag
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    app.add_option("--precision", cfg.precision_bits,
                   "working precision in fractional bits")
        ->envname("GPRAND_PRECISION")
        ->check(CLI::Range(static_cast<std::int64_t>(64), kMaxPrecision))
        ->capture_default_str();
    app.add_option("--out", cfg.out, "write the report here instead of stdout");
    app.add_option("--format", cfg.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    auto* gen = app.add_subcommand("gen", "generate a GPSEQ1 sequence file");
    std::string gen_out;
    gen->add_option("--expr", cfg.expr, "generalized polynomial")->required();
    gen->add_option("--n", cfg.n, "sequence length")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seq-out", gen_out, "output path (GPSEQ1)");

    auto* welldist = app.add_subcommand("welldist", "exact well-distribution measure");
    std::string in_path;
    welldist->add_option("--in", in_path, "GPSEQ1 input file")->required();
    welldist->add_option("--amax", cfg.a_max,
                         "cap on the progression step (0 = exhaustive)");

    auto* disc = app.add_subcommand("disc", "exact extreme discrepancy");
    std::string pts_path;
    disc->add_option("--expr", cfg.expr, "use fractional parts of this expression");
    disc->add_option("--n", cfg.n, "number of points for --expr");
    disc->add_option("--points", pts_path, "file of points in [0,1), whitespace separated");

    auto* expsum = app.add_subcommand("expsum", "exponential sum of e(h f(an+b))");
    std::int64_t h = 1, prog_a = 1, prog_b = 0;
    expsum->add_option("--expr", cfg.expr)->required();
    expsum->add_option("--h", h, "frequency h != 0")->required();
    expsum->add_option("--n", cfg.n, "number of terms")->required()->check(CLI::PositiveNumber);
    expsum->add_option("--a", prog_a, "progression step");
    expsum->add_option("--b", prog_b, "progression offset");

    auto* et = app.add_subcommand("erdosturan",
                                  "Erdos-Turan bound against the exact discrepancy");
    et->add_option("--expr", cfg.expr)->required();
    et->add_option("--n", cfg.n, "number of points")->required()->check(CLI::PositiveNumber);
    et->add_option("--bigh", cfg.big_h, "harmonic cutoff H")
        ->required()
        ->check(CLI::PositiveNumber);

    auto* smooth = app.add_subcommand("smooth", "smoothing-kernel reports");
    SmoothingParams sp;
    std::int64_t coeff_k = 1;
    double pexp = 2.0;
    smooth->add_option("--tau", sp.tau)->required();
    smooth->add_option("--delta", sp.delta)->required();
    smooth->add_option("--r", sp.r, "convolution count")->capture_default_str();
    smooth->add_option("--kcut", sp.k_cut, "series truncation K")->capture_default_str();
    smooth->add_option("--k", coeff_k, "coefficient index to report")->capture_default_str();
    smooth->add_option("--p", pexp, "p-norm exponent")->capture_default_str();

    auto* tp = app.add_subcommand("typeprobe", "empirical finite-type estimate");
    std::string gammas_csv;
    std::int64_t box_q = 1000;
    tp->add_option("--gammas", gammas_csv, "comma-separated constant expressions")
        ->required();
    tp->add_option("--q", box_q, "search radius Q")->required()->check(CLI::PositiveNumber);

    auto* cf_cmd = app.add_subcommand("cf", "continued fraction expansion");
    int cf_count = 10;
    cf_cmd->add_option("--x", cfg.expr, "constant expression")->required();
    cf_cmd->add_option("--count", cf_count, "number of partial quotients")
        ->capture_default_str();

    auto* bounds_cmd = app.add_subcommand("bounds", "exact exponent tables");
    int deg = 2;
    std::string t_text = "1";
    std::int64_t pp_n = 0, pp_a = 1, pp_h = 1;
    bounds_cmd->add_option("--d", deg, "polynomial degree")->required();
    bounds_cmd->add_option("--t", t_text, "finite type t (rational, e.g. 1/2)")->required();
    bounds_cmd->add_option("--n", pp_n, "also report proof parameters at this N");
    bounds_cmd->add_option("--a", pp_a, "step a for proof parameters");
    bounds_cmd->add_option("--h", pp_h, "frequency h for proof parameters");

    auto* ver = app.add_subcommand("verify", "run the lemma-verifier suite");
    std::uint64_t seed = kVerifySeed;
    ver->add_option("--seed", seed, "sweep seed")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "W/D decay scan over an N list (CSV)");
    std::string nlist_text;
    std::string t_assumed_text = "1";
    scan->add_option("--expr", cfg.expr)->required();
    scan->add_option("--nlist", nlist_text, "comma-separated increasing N values")
        ->required();
    scan->add_option("--amax", cfg.a_max, "cap on the progression step (0 = exhaustive)");
    scan->add_option("--t", t_assumed_text, "assumed finite type")->capture_default_str();

    // global flags (--out, --threads, --precision, --format) may follow the
    // subcommand name
    for (CLI::App* sub : {gen, welldist, disc, expsum, et, smooth, tp, cf_cmd,
                          bounds_cmd, ver, scan})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) {
            const GPExpr f = GPExpr::parse(cfg.expr);
            const BinarySequence seq = generate(f, cfg.n, cfg.precision_bits, cfg.threads);
            if (gen_out.empty()) gen_out = cfg.out;
            if (gen_out.empty()) throw DomainError("gen needs --seq-out (or --out)");
            seq.write_file(gen_out);
        } else if (*welldist) {
            const BinarySequence seq = BinarySequence::read_file(in_path);
            std::optional<std::int64_t> cap;
            if (cfg.a_max > 0) cap = cfg.a_max;
            emit(cfg, witness_json(well_distribution(seq, cap, cfg.threads)));
        } else if (*disc) {
            std::vector<double> pts;
            if (!pts_path.empty()) {
                pts = read_points(pts_path);
            } else if (!cfg.expr.empty() && cfg.n > 0) {
                pts = fractional_parts(GPExpr::parse(cfg.expr), cfg.n, 1, 0,
                                       cfg.precision_bits, cfg.threads);
            } else {
                throw DomainError("disc needs --points or --expr with --n");
            }
            const DiscrepancyReport rep = discrepancy(pts);
            emit(cfg, json{{"d", rep.d}, {"lo", rep.lo}, {"hi", rep.hi}, {"n", rep.n}});
        } else if (*expsum) {
            const std::complex<double> s = exp_sum(GPExpr::parse(cfg.expr), h, cfg.n,
                                                   prog_a, prog_b, cfg.precision_bits);
            emit(cfg, json{{"re", s.real()}, {"im", s.imag()}, {"abs", std::abs(s)}});
        } else if (*et) {
            const std::vector<double> pts = fractional_parts(
                GPExpr::parse(cfg.expr), cfg.n, 1, 0, cfg.precision_bits, cfg.threads);
            const double rhs = erdos_turan_rhs(pts, cfg.big_h);
            const double d = discrepancy(pts).d;
            emit(cfg, json{{"rhs", rhs}, {"d", d}, {"holds", rhs >= d}});
        } else if (*smooth) {
            const std::complex<double> c = g_fourier_coeff(coeff_k, sp);
            const FourierTailReport tail = fourier_tail(sp);
            json doc{{"k", coeff_k},
                     {"coeffRe", c.real()},
                     {"coeffIm", c.imag()},
                     {"tailSum", tail.tail_sum},
                     {"tailBound", tail.bound},
                     {"tailRatio", tail.c_ratio}};
            if (sp.pnorm_precondition()) {
                const PNormReport pn = pnorm_check(sp, pexp);
                doc["pNorm"] = pn.value;
                doc["pNormStabilized"] = pn.stabilized;
            }
            emit(cfg, doc);
        } else if (*tp) {
            const FiniteTypeEstimate est =
                type_probe(parse_expr_list(gammas_csv), box_q, cfg.precision_bits);
            emit(cfg, json{{"tHat", est.t_hat},
                           {"cHat", est.c_hat},
                           {"witness", est.witness},
                           {"q", est.q},
                           {"recordDist", est.record_dist}});
        } else if (*cf_cmd) {
            const GPExpr x = GPExpr::parse(cfg.expr);
            CFExpansion exp;
            if (auto surd = QuadraticSurd::fold(x)) {
                exp = continued_fraction(*surd, cf_count);
            } else {
                exp = continued_fraction(
                    x.eval_at_precision(1, std::max<std::int64_t>(cfg.precision_bits,
                                                                  4 * cf_count + 64)),
                    cf_count);
            }
            json quot = json::array(), conv = json::array();
            for (const auto& q : exp.quotients) quot.push_back(q.get_str());
            for (const auto& [p, q] : convergents(exp))
                conv.push_back(p.get_str() + "/" + q.get_str());
            emit(cfg, json{{"a0", exp.a0.get_str()},
                           {"quotients", quot},
                           {"convergents", conv},
                           {"exactInput", exp.exact_input}});
        } else if (*bounds_cmd) {
            const mpq_class t = parse_rational(t_text);
            const ExponentSet p1 = prop1_exponents(deg, t);
            const ExponentSet p2 = prop2_exponents(deg, t);
            const ExponentSet p3 = prop3_exponents(deg, t);
            const ExponentSet eta = theorem_eta(deg, t);
            json doc{{"d", deg},
                     {"t", q2s(t)},
                     {"prop1",
                      {{"aExp", q2s(p1.a_exp)},
                       {"nExp", q2s(p1.n_exp)},
                       {"precondAExp", q2s(*p1.precond_a_exp)}}},
                     {"prop2", {{"aExp", q2s(p2.a_exp)}, {"nExp", q2s(p2.n_exp)}}},
                     {"prop3",
                      {{"aExp", q2s(p3.a_exp)},
                       {"nExp", q2s(p3.n_exp)},
                       {"thresholdExp", q2s(*p3.threshold_exp)}}},
                     {"etaCandidate", q2s(*eta.eta_candidate)}};
            if (pp_n > 0) {
                const ProofParameters pp = proof_parameters(deg, t, pp_n, pp_a, pp_h);
                doc["proofParams"] = json{{"h1", pp.h1},
                                          {"sigma2", q2s(pp.sigma2)},
                                          {"theta2", q2s(pp.theta2_decay)},
                                          {"h2", pp.h2},
                                          {"delta2", pp.delta2},
                                          {"k2", pp.k2},
                                          {"sigma3", q2s(pp.sigma3)},
                                          {"theta3_1", q2s(pp.theta3_1)},
                                          {"theta3_2", q2s(pp.theta3_2)},
                                          {"h3", pp.h3},
                                          {"delta3_1", pp.delta3_1},
                                          {"k3_1", pp.k3_1},
                                          {"delta3_2", pp.delta3_2},
                                          {"k3_2", pp.k3_2},
                                          {"jKey", pp.j_key},
                                          {"rho", pp.rho},
                                          {"rOrder", pp.r_order},
                                          {"prop1Precondition", pp.prop1_precondition}};
                if (!pp.prop1_precondition)
                    doc["warnings"] = json::array(
                        {"a exceeds the floor-free bound's cap N^((2-2^(2-d))/(dt))"});
            }
            emit(cfg, doc);
        } else if (*ver) {
            const std::vector<SuiteResult> results = verify_all(seed, cfg.threads);
            bool ok = true;
            std::ostringstream body;
            for (const SuiteResult& r : results) {
                ok = ok && r.passed();
                body << (r.passed() ? "[PASS] " : "[FAIL] ") << r.name << ": "
                     << r.cases - r.failures << "/" << r.cases << " cases";
                if (!r.note.empty()) body << " (" << r.note << ")";
                body << "\n";
            }
            emit_text(cfg, body.str());
            if (!ok) return 1;
        } else if (*scan) {
            std::optional<std::int64_t> cap;
            if (cfg.a_max > 0) cap = cfg.a_max;
            const std::vector<ScanRow> rows =
                bound_scan(GPExpr::parse(cfg.expr), parse_int_list(nlist_text), cap,
                           parse_rational(t_assumed_text), cfg.threads);
            std::ostringstream body;
            body << "N,W,slopeSoFar,D,prop2Bound,prop3Bound\n";
            body.precision(17);
            for (const ScanRow& r : rows)
                body << r.n << "," << r.w << "," << r.slope_so_far << "," << r.d << ","
                     << r.prop2_bound << "," << r.prop3_bound << "\n";
            emit_text(cfg, body.str());
        }
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 3;
    } catch (const InsufficientPrecision& e) {
        std::cerr << "insufficient precision: " << e.what() << "\n";
        return 3;
    } catch (const SyntaxError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const RationalRelation& e) {
        std::cerr << "rational relation: " << e.what() << " witness=[";
        for (std::size_t i = 0; i < e.witness.size(); ++i)
            std::cerr << (i ? "," : "") << e.witness[i];
        std::cerr << "]\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
