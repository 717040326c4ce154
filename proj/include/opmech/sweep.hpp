#ifndef OPMECH_SWEEP_HPP
#define OPMECH_SWEEP_HPP

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "opmech/assemble.hpp"
#include "opmech/classical.hpp"
#include "opmech/container.hpp"
#include "opmech/oracles.hpp"
#include "opmech/states.hpp"
#include "opmech/weyl.hpp"

namespace opmech {

struct HamiltonianTerm {
    int n = 0;
    int m = 0;
    Rational coeff;
};

enum class StateKind { embedded_ground_state, classical_gaussian, delta };
enum class OutputFormat { csv, json };

/// Batch configuration. The Hamiltonian is given in the Weyl basis, so one
/// coefficient list is simultaneously the classical polynomial and the
/// symmetrized quantum observable.
struct SweepConfig {
    int nq = 32;
    int np = 32;
    double lq = 20.0;
    double h0 = 2.0 * std::numbers::pi;
    int steps = 11;
    std::vector<HamiltonianTerm> hamiltonian;  // default: harmonic oscillator
    std::complex<double> cq{1.0 / std::numbers::sqrt2, 0.0};
    std::complex<double> cp{1.0 / std::numbers::sqrt2, 0.0};
    StateKind state = StateKind::embedded_ground_state;
    double gauss_mu_q = 0.0, gauss_mu_p = 0.0, gauss_sigma_q = 1.0, gauss_sigma_p = 1.0;
    double delta_q0 = 0.0, delta_p0 = 0.0;
    std::string a_vector = "gaussian";
    std::string b_vector = "gaussian";
    std::string output;  // empty: stdout
    OutputFormat format = OutputFormat::csv;

    double hbar0() const { return h0 / (2.0 * std::numbers::pi); }
    double lp() const { return 2.0 * std::numbers::pi * hbar0() * np / lq; }

    std::vector<HamiltonianTerm> hamiltonian_or_default() const {
        if (!hamiltonian.empty()) return hamiltonian;
        return {{2, 0, Rational(1, 2)}, {0, 2, Rational(1, 2)}};
    }
};

/// One row of sweep output; h ascends across records.
struct SweepRecord {
    double h = 0.0;
    double hbar = 0.0;
    double ccr_residual = 0.0;
    double dist_q = 0.0;
    double dist_p = 0.0;
    std::array<double, 4> spectrum{};
    double mean = 0.0;
    double oracle = 0.0;
    double abs_err = 0.0;
};

namespace detail {

/// Exact conversion of an integer, fraction, or decimal literal ("-3", "1/2",
/// "0.25", "2.5e-3") to a rational.
inline Rational rational_from_literal(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty numeric literal");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rational(num, den);
    }

    bool negative = false;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';

    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    long exponent = 0;
    for (; pos < s.size(); ++pos) {
        char ch = s[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((ch == 'e' || ch == 'E') && seen_digit) {
            exponent = std::stol(s.substr(pos + 1));
            break;
        } else {
            throw std::invalid_argument("bad numeric literal '" + text + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad numeric literal '" + text + "'");

    Rational r(boost::multiprecision::cpp_int(digits.empty() ? "0" : digits));
    long net = exponent - frac_digits;
    boost::multiprecision::cpp_int ten = 10;
    for (long j = 0; j < std::labs(net); ++j)
        if (net > 0)
            r *= ten;
        else
            r /= ten;
    return negative ? Rational(-r) : r;
}

[[noreturn]] inline void config_error(int line_no, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + what);
}

inline double parse_double(const std::string& v, int line_no, const std::string& key) {
    char* end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    while (end && *end && std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (!end || *end != '\0') config_error(line_no, "key '" + key + "': bad number '" + v + "'");
    return d;
}

inline int parse_int(const std::string& v, int line_no, const std::string& key) {
    try {
        std::size_t used = 0;
        int out = std::stoi(v, &used);
        while (used < v.size() && std::isspace(static_cast<unsigned char>(v[used]))) ++used;
        if (used != v.size()) throw std::invalid_argument("trailing");
        return out;
    } catch (const std::exception&) {
        config_error(line_no, "key '" + key + "': bad integer '" + v + "'");
    }
}

inline std::complex<double> parse_complex(const std::string& v, int line_no,
                                          const std::string& key) {
    if (auto comma = v.find(','); comma != std::string::npos)
        return {parse_double(v.substr(0, comma), line_no, key),
                parse_double(v.substr(comma + 1), line_no, key)};
    return {parse_double(v, line_no, key), 0.0};
}

/// Splits "(a,b,...),(c,d,...)" into the parenthesized groups.
inline std::vector<std::string> split_tuples(const std::string& v, int line_no,
                                             const std::string& key) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < v.size()) {
        if (std::isspace(static_cast<unsigned char>(v[pos])) || v[pos] == ',') {
            ++pos;
            continue;
        }
        if (v[pos] != '(') config_error(line_no, "key '" + key + "': expected '('");
        auto close = v.find(')', pos);
        if (close == std::string::npos)
            config_error(line_no, "key '" + key + "': unbalanced parentheses");
        out.push_back(v.substr(pos + 1, close - pos - 1));
        pos = close + 1;
    }
    return out;
}

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
}

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace detail

/// Parses the line-oriented `key = value` configuration text. Unknown keys
/// and violated invariants are reported with the line number and key name.
inline SweepConfig parse_config(const std::string& text) {
    SweepConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) detail::config_error(line_no, "expected 'key = value'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (value.empty()) detail::config_error(line_no, "key '" + key + "': empty value");

        if (key == "N_q") {
            cfg.nq = detail::parse_int(value, line_no, key);
        } else if (key == "N_p") {
            cfg.np = detail::parse_int(value, line_no, key);
        } else if (key == "L_q") {
            cfg.lq = detail::parse_double(value, line_no, key);
        } else if (key == "h0") {
            cfg.h0 = detail::parse_double(value, line_no, key);
        } else if (key == "steps") {
            cfg.steps = detail::parse_int(value, line_no, key);
        } else if (key == "c_q") {
            cfg.cq = detail::parse_complex(value, line_no, key);
        } else if (key == "c_p") {
            cfg.cp = detail::parse_complex(value, line_no, key);
        } else if (key == "hamiltonian") {
            cfg.hamiltonian.clear();
            for (const auto& tuple : detail::split_tuples(value, line_no, key)) {
                auto parts = detail::split_commas(tuple);
                if (parts.size() != 3)
                    detail::config_error(line_no, "key 'hamiltonian': tuples are (n,m,coeff)");
                HamiltonianTerm term;
                term.n = detail::parse_int(detail::trim(parts[0]), line_no, key);
                term.m = detail::parse_int(detail::trim(parts[1]), line_no, key);
                if (term.n < 0 || term.m < 0)
                    detail::config_error(line_no, "key 'hamiltonian': negative exponent");
                try {
                    term.coeff = detail::rational_from_literal(parts[2]);
                } catch (const std::exception& e) {
                    detail::config_error(line_no, std::string("key 'hamiltonian': ") + e.what());
                }
                cfg.hamiltonian.push_back(std::move(term));
            }
            if (cfg.hamiltonian.empty())
                detail::config_error(line_no, "key 'hamiltonian': no terms given");
        } else if (key == "state") {
            if (value == "embedded-ground-state") {
                cfg.state = StateKind::embedded_ground_state;
            } else if (value.rfind("classical-gaussian(", 0) == 0 && value.back() == ')') {
                auto parts = detail::split_commas(
                    value.substr(19, value.size() - 20));
                if (parts.size() != 4)
                    detail::config_error(line_no,
                                         "key 'state': classical-gaussian takes (mu_q,mu_p,sigma_q,sigma_p)");
                cfg.state = StateKind::classical_gaussian;
                cfg.gauss_mu_q = detail::parse_double(detail::trim(parts[0]), line_no, key);
                cfg.gauss_mu_p = detail::parse_double(detail::trim(parts[1]), line_no, key);
                cfg.gauss_sigma_q = detail::parse_double(detail::trim(parts[2]), line_no, key);
                cfg.gauss_sigma_p = detail::parse_double(detail::trim(parts[3]), line_no, key);
                if (cfg.gauss_sigma_q <= 0 || cfg.gauss_sigma_p <= 0)
                    detail::config_error(line_no, "key 'state': sigmas must be positive");
            } else if (value.rfind("delta(", 0) == 0 && value.back() == ')') {
                auto parts = detail::split_commas(value.substr(6, value.size() - 7));
                if (parts.size() != 2)
                    detail::config_error(line_no, "key 'state': delta takes (q0,p0)");
                cfg.state = StateKind::delta;
                cfg.delta_q0 = detail::parse_double(detail::trim(parts[0]), line_no, key);
                cfg.delta_p0 = detail::parse_double(detail::trim(parts[1]), line_no, key);
            } else {
                detail::config_error(line_no, "key 'state': unknown state '" + value + "'");
            }
        } else if (key == "a_vector") {
            cfg.a_vector = value;
        } else if (key == "b_vector") {
            cfg.b_vector = value;
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "format") {
            if (value == "csv")
                cfg.format = OutputFormat::csv;
            else if (value == "json")
                cfg.format = OutputFormat::json;
            else
                detail::config_error(line_no, "key 'format': expected csv or json");
        } else {
            detail::config_error(line_no, "unknown key '" + key + "'");
        }
    }

    if (cfg.nq < 2 || cfg.nq % 2 != 0)
        throw std::invalid_argument("config: key 'N_q' must be even and >= 2");
    if (cfg.np < 2 || cfg.np % 2 != 0)
        throw std::invalid_argument("config: key 'N_p' must be even and >= 2");
    if (!(cfg.lq > 0.0)) throw std::invalid_argument("config: key 'L_q' must be positive");
    if (!(cfg.h0 > 0.0)) throw std::invalid_argument("config: key 'h0' must be positive");
    if (cfg.steps < 2) throw std::invalid_argument("config: key 'steps' must be >= 2");
    if (std::abs(std::norm(cfg.cq) + std::norm(cfg.cp) - 1.0) > 1e-12)
        throw std::invalid_argument(
            "config: keys 'c_q','c_p' violate the weight condition |c_q|^2+|c_p|^2 = 1");
    return cfg;
}

namespace detail {

inline Eigen::VectorXcd config_profile(const std::string& spec, const Grid& g) {
    if (spec == "gaussian") return gaussian_profile(g, 0.0, std::max(1.0, g.length / 20.0));
    TensorContainer c = load_text(spec);
    if (c.is_matrix || c.extent() != g.n_points)
        throw std::invalid_argument("config: vector file '" + spec + "' has wrong shape");
    Eigen::VectorXcd v = c.data.col(0);
    double nrm = quadrature_norm(v, g);
    if (!(nrm > 0.0)) throw std::invalid_argument("config: vector file '" + spec + "' is zero");
    return v / nrm;
}

/// Deterministic band-limited hybrid test states for the commutator checks.
inline std::vector<HybridVector> gaussian_test_states(const Grid& gq, const Grid& gp,
                                                      const RFactor& r) {
    struct Shape {
        double mu_q, mu_p, wq, wp;
    };
    const std::array<Shape, 3> shapes{{{0.0, 0.0, 12.0, 12.0},
                                       {1.0 / 16.0, -1.0 / 16.0, 14.0, 14.0},
                                       {-1.0 / 20.0, 1.0 / 20.0, 10.0, 12.0}}};
    const HybridDims dims{gq.n_points, gp.n_points};
    std::vector<HybridVector> out;
    for (const auto& s : shapes) {
        Eigen::VectorXcd vq = gaussian_profile(gq, s.mu_q * gq.length, gq.length / s.wq);
        Eigen::VectorXcd vp = gaussian_profile(gp, s.mu_p * gp.length, gp.length / s.wp);
        HybridVector v{dims, Eigen::VectorXcd::Zero(dims.total())};
        Eigen::Vector2cd w = r.cq * r.rq + r.cp * r.rp;
        for (int iq = 0; iq < dims.nq; ++iq)
            for (int ip = 0; ip < dims.np; ++ip)
                for (int ir = 0; ir < 2; ++ir)
                    v.amplitudes(hybrid_index(dims, iq, ip, ir)) = vq(iq) * vp(ip) * w(ir);
        out.push_back(std::move(v));
    }
    return out;
}

struct SweepContext {
    Grid gq, gp;
    RFactor rfac;
    NCPolynomial h_nc;
    ClassicalPolynomial h_cl;
    std::vector<HybridVector> test_states;
    // state under study
    std::optional<HybridVector> pure_state;
    std::optional<HybridDensity> density;
    double oracle = 0.0;
};

inline WeylPolynomial hamiltonian_weyl(const SweepConfig& cfg) {
    WeylPolynomial w;
    for (const auto& t : cfg.hamiltonian_or_default())
        w.add_term({t.n, t.m, 0}, GaussianRational(t.coeff));
    return w;
}

inline SweepContext make_context(const SweepConfig& cfg) {
    SweepContext ctx;
    ctx.gq = uniform_grid(cfg.nq, cfg.lq);
    ctx.gp = uniform_grid(cfg.np, cfg.lp());
    ctx.rfac = make_rfactor(cfg.cq, cfg.cp);
    ctx.h_nc = from_weyl_basis(hamiltonian_weyl(cfg));
    ctx.h_cl = classical_limit(ctx.h_nc);
    ctx.test_states = gaussian_test_states(ctx.gq, ctx.gp, ctx.rfac);

    const double hbar0 = cfg.hbar0();
    switch (cfg.state) {
        case StateKind::embedded_ground_state: {
            FactorRep rep = coordinate_rep(ctx.gq, hbar0);
            auto eig = oracles::solve_quantum_1d(ctx.h_nc, rep, 1);
            Eigen::VectorXcd psi = eig.vectors.col(0) / std::sqrt(ctx.gq.spacing());
            Eigen::VectorXcd a = config_profile(cfg.a_vector, ctx.gp);
            Eigen::VectorXcd b = config_profile(cfg.b_vector, ctx.gq);
            ctx.pure_state = embed_quantum_state(psi, a, b, cfg.cq, cfg.cp, ctx.rfac, ctx.gq,
                                                 ctx.gp, hbar0);
            ctx.oracle = eig.values(0);
            break;
        }
        case StateKind::classical_gaussian: {
            Eigen::MatrixXd samples(cfg.nq, cfg.np);
            for (int i = 0; i < cfg.nq; ++i)
                for (int j = 0; j < cfg.np; ++j) {
                    double xq = (ctx.gq.points[static_cast<std::size_t>(i)] - cfg.gauss_mu_q) /
                                cfg.gauss_sigma_q;
                    double xp = (ctx.gp.points[static_cast<std::size_t>(j)] - cfg.gauss_mu_p) /
                                cfg.gauss_sigma_p;
                    samples(i, j) = std::exp(-0.5 * (xq * xq + xp * xp));
                }
            samples /= samples.sum() * ctx.gq.spacing() * ctx.gp.spacing();
            ctx.density = classical_state(samples, ctx.gq, ctx.gp, ctx.rfac);
            ctx.oracle = oracles::classical_phase_average(samples, ctx.h_cl, ctx.gq, ctx.gp);
            break;
        }
        case StateKind::delta: {
            Eigen::MatrixXd samples = Eigen::MatrixXd::Zero(cfg.nq, cfg.np);
            samples(nearest_node(ctx.gq, cfg.delta_q0), nearest_node(ctx.gp, cfg.delta_p0)) =
                1.0 / (ctx.gq.spacing() * ctx.gp.spacing());
            ctx.density = classical_state(samples, ctx.gq, ctx.gp, ctx.rfac);
            ctx.oracle = oracles::classical_phase_average(samples, ctx.h_cl, ctx.gq, ctx.gp);
            break;
        }
    }
    return ctx;
}

inline SweepRecord sweep_point(const SweepConfig& cfg, const SweepContext& ctx, int index) {
    SweepRecord rec;
    const double h = cfg.h0 * (static_cast<double>(index) / (cfg.steps - 1));
    const SemiclassicalParams params = make_params(h, cfg.h0);
    rec.h = h;
    rec.hbar = params.hbar_of_h();

    FactorRep fq = coordinate_rep(ctx.gq, rec.hbar);
    FactorRep fp = momentum_rep(ctx.gp, rec.hbar);
    FactorOperator qt = assemble_qtilde_factored(params, fq, fp, ctx.rfac);
    FactorOperator pt = assemble_ptilde_factored(params, fq, fp, ctx.rfac);
    auto [cmq, cmp] = assemble_pair_cm_factored(fq, fp, ctx.rfac);

    rec.ccr_residual = commutator_residual(qt, pt, rec.hbar, ctx.test_states);
    rec.dist_q = hermitian_operator_norm(qt - cmq);
    rec.dist_p = hermitian_operator_norm(pt - cmp);

    FactorOperator hop = evaluate_operator_poly(ctx.h_nc, qt, pt, rec.hbar);
    std::vector<double> spec = lowest_eigenvalues(hop, 4);
    for (std::size_t j = 0; j < rec.spectrum.size(); ++j)
        rec.spectrum[j] = j < spec.size() ? spec[j] : 0.0;

    if (ctx.pure_state) {
        rec.mean = mean_value(*ctx.pure_state, hop);
    } else {
        HybridOperator dense = hop.dense();
        rec.mean = mean_value(*ctx.density, dense);
    }
    rec.oracle = ctx.oracle;
    rec.abs_err = std::abs(rec.mean - rec.oracle);
    return rec;
}

}  // namespace detail

/// Environment variable selecting the h-point parallelism degree.
inline int sweep_parallelism() {
    const char* env = std::getenv("OPMECH_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v < 1 ? 1 : v;
}

/// Runs the semiclassical sweep: `steps` equally spaced h values from 0 to
/// h0 inclusive. Records are independent of evaluation order; the collection
/// step restores ascending h.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    detail::SweepContext ctx = detail::make_context(cfg);
    std::vector<SweepRecord> records(static_cast<std::size_t>(cfg.steps));

    const int workers = std::min(sweep_parallelism(), cfg.steps);
    if (workers <= 1) {
        for (int i = 0; i < cfg.steps; ++i)
            records[static_cast<std::size_t>(i)] = detail::sweep_point(cfg, ctx, i);
        return records;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int i = w; i < cfg.steps; i += workers)
                    records[static_cast<std::size_t>(i)] = detail::sweep_point(cfg, ctx, i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return records;
}

inline std::string render_csv(const std::vector<SweepRecord>& records) {
    std::string out = "h,hbar,ccr_residual,dist_q,dist_p,e0,e1,e2,e3,mean,oracle,abs_err\n";
    for (const auto& r : records) {
        const double cols[12] = {r.h,           r.hbar,        r.ccr_residual, r.dist_q,
                                 r.dist_p,      r.spectrum[0], r.spectrum[1],  r.spectrum[2],
                                 r.spectrum[3], r.mean,        r.oracle,       r.abs_err};
        for (int j = 0; j < 12; ++j) {
            if (j) out += ',';
            out += detail::format_double(cols[j]);
        }
        out += '\n';
    }
    return out;
}

inline std::string render_json(const std::vector<SweepRecord>& records) {
    static constexpr const char* names[12] = {"h",      "hbar", "ccr_residual", "dist_q",
                                              "dist_p", "e0",   "e1",           "e2",
                                              "e3",     "mean", "oracle",       "abs_err"};
    std::string out = "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const double cols[12] = {r.h,           r.hbar,        r.ccr_residual, r.dist_q,
                                 r.dist_p,      r.spectrum[0], r.spectrum[1],  r.spectrum[2],
                                 r.spectrum[3], r.mean,        r.oracle,       r.abs_err};
        out += "  {";
        for (int j = 0; j < 12; ++j) {
            if (j) out += ", ";
            out += '"';
            out += names[j];
            out += "\": ";
            out += detail::format_double(cols[j]);
        }
        out += i + 1 < records.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

/// Writes the records to the path (or stdout when the path is empty),
/// byte-stable across runs.
inline void emit(const std::vector<SweepRecord>& records, OutputFormat format,
                 const std::string& path) {
    const std::string payload =
        format == OutputFormat::csv ? render_csv(records) : render_json(records);
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit: cannot write '" + path + "'");
    out << payload;
    if (!out) throw std::runtime_error("emit: write failed for '" + path + "'");
}

}  // namespace opmech

#endif  // OPMECH_SWEEP_HPP
