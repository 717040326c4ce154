#ifndef OPMECH_VERIFY_HPP
#define OPMECH_VERIFY_HPP

#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <utility>

#include "opmech/expr.hpp"
#include "opmech/sweep.hpp"

// The invariant verification suite: every module invariant executed at least
// once, each reported as one PASS/FAIL line with its measured value and
// bound. The fault flag rebuilds the spectral derivative with the broken
// frequency convention so the residual checks demonstrably catch it.

namespace opmech {

namespace verify_detail {

struct Reporter {
    std::ostream& out;
    int failures = 0;
    int total = 0;

    void check(const std::string& name, double measured, double bound) {
        ++total;
        const bool ok = measured <= bound;
        if (!ok) ++failures;
        out << (ok ? "PASS  " : "FAIL  ") << std::left << std::setw(44) << name << " measured="
            << std::scientific << std::setprecision(3) << measured << " bound=" << bound
            << std::defaultfloat << "\n";
    }
};

// Minimal commutative polynomial, local to the verify suite, used as the
// independent oracle for the classical-limit homomorphism check.
struct VPoly {
    std::map<std::pair<int, int>, GaussianRational> terms;

    void add(int n, int m, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms.try_emplace({n, m}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    friend bool operator==(const VPoly&, const VPoly&) = default;
};

inline VPoly vpoly_mul(const VPoly& a, const VPoly& b) {
    VPoly out;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms)
            out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

inline VPoly vpoly_dq(const VPoly& f) {
    VPoly out;
    for (const auto& [k, c] : f.terms)
        if (k.first > 0) out.add(k.first - 1, k.second, c * GaussianRational(Rational(k.first)));
    return out;
}

inline VPoly vpoly_dp(const VPoly& f) {
    VPoly out;
    for (const auto& [k, c] : f.terms)
        if (k.second > 0) out.add(k.first, k.second - 1, c * GaussianRational(Rational(k.second)));
    return out;
}

inline VPoly vpoly_poisson(const VPoly& f, const VPoly& g) {
    VPoly out;
    for (const auto& [k, c] : vpoly_mul(vpoly_dq(f), vpoly_dp(g)).terms) out.add(k.first, k.second, c);
    for (const auto& [k, c] : vpoly_mul(vpoly_dq(g), vpoly_dp(f)).terms) out.add(k.first, k.second, -c);
    return out;
}

inline VPoly vpoly_of_classical(const ClassicalPolynomial& f) {
    VPoly out;
    for (const auto& [k, c] : f.terms()) out.add(k.q_exp, k.p_exp, c);
    return out;
}

inline VPoly vpoly_of_weyl_monomial(int n, int m) {
    VPoly out;
    out.add(n, m, GaussianRational::one());
    return out;
}

inline GaussianRational rnd_coeff(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> imag(0, 1);
    GaussianRational c{Rational(num(rng), den(rng))};
    if (imag(rng)) c.im = Rational(num(rng), den(rng));
    return c;
}

inline NCPolynomial rnd_ncpoly(std::mt19937& rng, int max_deg, int max_h = 1, int terms = 4) {
    NCPolynomial f;
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> hexp(0, max_h);
    for (int t = 0; t < terms; ++t) {
        int d = deg(rng);
        int n = std::uniform_int_distribution<int>(0, d)(rng);
        f.add_term({n, d - n, hexp(rng)}, rnd_coeff(rng));
    }
    return f;
}

inline WeylPolynomial rnd_weyl(std::mt19937& rng, int max_deg, int max_h = 1, int terms = 4) {
    WeylPolynomial f;
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> hexp(0, max_h);
    for (int t = 0; t < terms; ++t) {
        int d = deg(rng);
        int n = std::uniform_int_distribution<int>(0, d)(rng);
        f.add_term({n, d - n, hexp(rng)}, rnd_coeff(rng));
    }
    return f;
}

inline Word rnd_word(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> bit(0, 1);
    Word w(static_cast<std::size_t>(len(rng)));
    for (auto& l : w) l = bit(rng) ? Letter::Q : Letter::P;
    return w;
}

}  // namespace verify_detail

/// Runs every invariant check and streams one line per check. Returns the
/// number of failures (0 means a fully green suite).
inline int run_verify(const SweepConfig& cfg, std::ostream& out, bool inject_nyquist_fault = false) {
    using namespace verify_detail;
    Reporter rep{out};
    const DerivativeConvention conv = inject_nyquist_fault
                                          ? DerivativeConvention::unwrapped_fault
                                          : DerivativeConvention::symmetric_nyquist_zeroed;
    const RFactor rfac = make_rfactor(cfg.cq, cfg.cp);
    const GaussianRational one = GaussianRational::one();
    const GaussianRational im = GaussianRational::imaginary_unit();

    // ---- symbolic layer -------------------------------------------------
    {
        Eigen::Matrix2cd i2 = Eigen::Matrix2cd::Identity();
        double defect = 0.0;
        defect = std::max(defect, (rfac.Rq * rfac.Rp).cwiseAbs().maxCoeff());
        defect = std::max(defect, (rfac.Rq * rfac.Rq - rfac.Rq).cwiseAbs().maxCoeff());
        defect = std::max(defect, (rfac.Rp * rfac.Rp - rfac.Rp).cwiseAbs().maxCoeff());
        defect = std::max(defect, (rfac.Rq.adjoint() - rfac.Rq).cwiseAbs().maxCoeff());
        defect = std::max(defect, (rfac.Rp.adjoint() - rfac.Rp).cwiseAbs().maxCoeff());
        defect = std::max(defect, (rfac.Rq + rfac.Rp - i2).cwiseAbs().maxCoeff());
        rep.check("projector identities", defect, 0.0);
    }
    {
        int bad = 0;
        NCPolynomial q = NCPolynomial::position(), p = NCPolynomial::momentum();
        if (!(commutator(q, p) == NCPolynomial::from_term({0, 0, 1}, im))) ++bad;
        if (!commutator(q, q).is_zero()) ++bad;
        if (!commutator(p, p).is_zero()) ++bad;
        rep.check("symbolic ccr", bad, 0.0);
    }
    {
        std::mt19937 rng(91);
        int bad = 0;
        for (int t = 0; t < 200; ++t) {
            Word w1 = rnd_word(rng, 5), w2 = rnd_word(rng, 5);
            Word cat = w1;
            cat.insert(cat.end(), w2.begin(), w2.end());
            if (!(normal_order(w1) * normal_order(w2) == normal_order(cat))) ++bad;
        }
        rep.check("normal-order homomorphism (200 pairs)", bad, 0.0);
    }
    {
        int bad = 0;
        for (int n = 0; n <= 8; ++n)
            for (int m = 0; n + m <= 8; ++m)
                if (!(weyl_monomial_enumerated(n, m) == weyl_monomial(n, m))) ++bad;
        rep.check("weyl enumeration vs recursion (n+m<=8)", bad, 0.0);
    }
    {
        int bad = 0;
        for (int n = 0; n <= 6; ++n)
            for (int m = 0; n + m <= 6; ++m) {
                NCPolynomial w = weyl_monomial(n, m);
                if (!(adjoint(w) == w)) ++bad;
            }
        rep.check("weyl monomial hermiticity (n+m<=6)", bad, 0.0);
    }
    {
        std::mt19937 rng(92);
        int bad = 0;
        for (int t = 0; t < 60; ++t) {
            NCPolynomial f = rnd_ncpoly(rng, 8, 2, 6);
            if (!(from_weyl_basis(to_weyl_basis(f)) == f)) ++bad;
        }
        rep.check("weyl basis round trip (deg<=8)", bad, 0.0);
    }
    {
        std::mt19937 rng(93);
        int bad = 0;
        for (int t = 0; t < 40; ++t) {
            WeylPolynomial a = rnd_weyl(rng, 6), b = rnd_weyl(rng, 6), c = rnd_weyl(rng, 6);
            if (!(symmetrized_product(a, b) == symmetrized_product(b, a))) ++bad;
            if (!(symmetrized_product(symmetrized_product(a, b), c) ==
                  symmetrized_product(a, symmetrized_product(b, c))))
                ++bad;
            if (!(symmetrized_product(a, WeylPolynomial::unit()) == a)) ++bad;
        }
        rep.check("symmetrized product laws (deg<=6)", bad, 0.0);
    }
    {
        std::mt19937 rng(94);
        int bad = 0;
        WeylPolynomial wq = WeylPolynomial::from_term({1, 0, 0}, one);
        WeylPolynomial wp = WeylPolynomial::from_term({0, 1, 0}, one);
        if (!(symmetrized_poisson(wq, wp) == WeylPolynomial::unit())) ++bad;
        for (int t = 0; t < 30; ++t) {
            WeylPolynomial f = rnd_weyl(rng, 4), g = rnd_weyl(rng, 4), h = rnd_weyl(rng, 4);
            if (!(symmetrized_poisson(f, g) == -symmetrized_poisson(g, f))) ++bad;
            WeylPolynomial jac = symmetrized_poisson(f, symmetrized_poisson(g, h)) +
                                 symmetrized_poisson(g, symmetrized_poisson(h, f)) +
                                 symmetrized_poisson(h, symmetrized_poisson(f, g));
            if (!jac.is_zero()) ++bad;
            if (!(symmetrized_poisson(f, symmetrized_product(g, h)) ==
                  symmetrized_product(symmetrized_poisson(f, g), h) +
                      symmetrized_product(g, symmetrized_poisson(f, h))))
                ++bad;
        }
        rep.check("poisson bracket laws (deg<=4)", bad, 0.0);
    }
    {
        std::mt19937 rng(95);
        int bad = 0;
        for (int t = 0; t < 40; ++t) {
            NCPolynomial f = rnd_ncpoly(rng, 2, 1, 3), g = rnd_ncpoly(rng, 2, 1, 3);
            NCPolynomial bracket =
                from_weyl_basis(symmetrized_poisson(to_weyl_basis(f), to_weyl_basis(g)));
            if (!(bracket == commutator(f, g).divide_hbar() * (-im))) ++bad;
        }
        rep.check("degree<=2 bracket = commutator/(i hbar)", bad, 0.0);
    }
    {
        int bad = 0;
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; a + b <= 4; ++b)
                for (int c = 0; c <= 4; ++c)
                    for (int d = 0; c + d <= 4; ++d) {
                        WeylPolynomial wa = WeylPolynomial::from_term({a, b, 0}, one);
                        WeylPolynomial wb = WeylPolynomial::from_term({c, d, 0}, one);
                        VPoly pa = vpoly_of_weyl_monomial(a, b), pb = vpoly_of_weyl_monomial(c, d);
                        if (!(vpoly_of_classical(classical_limit(
                                  from_weyl_basis(symmetrized_product(wa, wb)))) ==
                              vpoly_mul(pa, pb)))
                            ++bad;
                        if (!(vpoly_of_classical(classical_limit(
                                  from_weyl_basis(symmetrized_poisson(wa, wb)))) ==
                              vpoly_poisson(pa, pb)))
                            ++bad;
                    }
        rep.check("classical-limit homomorphism (n+m<=4)", bad, 0.0);
    }

    // ---- representation layer -------------------------------------------
    const double hbar0 = cfg.hbar0();
    {
        Eigen::MatrixXcd d = spectral_derivative(64, 20.0, conv);
        rep.check("spectral derivative anti-hermitian", (d + d.adjoint()).cwiseAbs().maxCoeff(),
                  0.0);

        Grid g = uniform_grid(64, 20.0);
        const double k = 2.0 * std::numbers::pi * 3.0 / g.length;
        Eigen::VectorXcd wave(64);
        for (int j = 0; j < 64; ++j) {
            double ph = k * g.points[static_cast<std::size_t>(j)];
            wave(j) = {std::cos(ph), std::sin(ph)};
        }
        Eigen::VectorXcd dv = d * wave;
        rep.check("spectral derivative plane wave",
                  (dv - std::complex<double>(0.0, k) * wave).cwiseAbs().maxCoeff(), 1e-12);
        rep.check("spectral derivative constant",
                  (d * Eigen::VectorXcd::Ones(64)).cwiseAbs().maxCoeff(), 1e-13);

        Eigen::VectorXcd gau = gaussian_profile(g, 0.0, 1.0);
        Eigen::MatrixXcd qd = Eigen::MatrixXcd::Zero(64, 64);
        for (int j = 0; j < 64; ++j) qd(j, j) = g.points[static_cast<std::size_t>(j)];
        Eigen::VectorXcd resid = (qd * (d * gau) - d * (qd * gau)) + gau;
        rep.check("grid ccr on gaussian", resid.norm() / gau.norm(), 1e-8);
    }
    {
        Grid g = uniform_grid(64, 20.0);
        FactorRep fc = coordinate_rep(g, hbar0, conv);
        FactorRep fm = momentum_rep(g, hbar0, conv);
        double defect = std::max(hermiticity_defect(fc.Q), hermiticity_defect(fc.P));
        defect = std::max(defect, std::max(hermiticity_defect(fm.Q), hermiticity_defect(fm.P)));
        rep.check("factor rep hermiticity", defect, 0.0);
        FactorRep f0 = coordinate_rep(g, 0.0, conv);
        rep.check("factor rep derivative vanishes at hbar=0", f0.P.cwiseAbs().maxCoeff(), 0.0);
    }
    {
        const int n = 16;
        Grid gq = uniform_grid(n, 20.0);
        Grid gp = uniform_grid(n, 2.0 * std::numbers::pi * hbar0 * n / 20.0);

        SemiclassicalParams top = make_params(cfg.h0, cfg.h0);
        FactorRep fq1 = coordinate_rep(gq, top.hbar_of_h(), conv);
        FactorRep fp1 = momentum_rep(gp, top.hbar_of_h(), conv);
        auto qm = assemble_pair_qm(fq1, fp1, rfac);
        double defect =
            max_abs_diff(assemble_qtilde(top, fq1, fp1, rfac).matrix, qm.first.matrix);
        defect = std::max(defect, max_abs_diff(assemble_ptilde(top, fq1, fp1, rfac).matrix,
                                               qm.second.matrix));
        rep.check("endpoint equality at h=h0", defect, 0.0);

        SemiclassicalParams bottom = make_params(0.0, cfg.h0);
        FactorRep fq0 = coordinate_rep(gq, 0.0, conv);
        FactorRep fp0 = momentum_rep(gp, 0.0, conv);
        auto cm = assemble_pair_cm(fq0, fp0, rfac);
        defect = max_abs_diff(assemble_qtilde(bottom, fq0, fp0, rfac).matrix, cm.first.matrix);
        defect = std::max(defect, max_abs_diff(assemble_ptilde(bottom, fq0, fp0, rfac).matrix,
                                               cm.second.matrix));
        rep.check("endpoint equality at h=0", defect, 0.0);

        rep.check("cm pair commutes",
                  (cm.first.matrix * cm.second.matrix - cm.second.matrix * cm.first.matrix)
                      .cwiseAbs()
                      .maxCoeff(),
                  0.0);

        Eigen::MatrixXcd w = commutant_witness_factored(fq1, fp1, rfac).dense().matrix;
        double comm = (w * qm.first.matrix - qm.first.matrix * w).cwiseAbs().maxCoeff();
        comm = std::max(comm,
                        (w * qm.second.matrix - qm.second.matrix * w).cwiseAbs().maxCoeff());
        rep.check("commutant witness commutes with qm pair", comm, 0.0);
    }
    {
        // doubled-observable identity, degree <= 6
        const int n = 12;
        Grid gq = uniform_grid(n, 20.0);
        Grid gp = uniform_grid(n, 2.0 * std::numbers::pi * hbar0 * n / 20.0);
        FactorRep fq = coordinate_rep(gq, hbar0, conv);
        FactorRep fp = momentum_rep(gp, hbar0, conv);
        auto [qop, pop] = assemble_pair_qm_factored(fq, fp, rfac);
        std::mt19937 rng(96);
        double defect = 0.0;
        for (int t = 0; t < 6; ++t) {
            NCPolynomial raw = rnd_ncpoly(rng, 6, 1, 4);
            NCPolynomial h = raw + adjoint(raw);
            Eigen::MatrixXcd lhs = evaluate_operator_poly(h, qop, pop, hbar0).dense().matrix;
            Eigen::MatrixXcd hq = evaluate_poly_matrices(h, fq.Q, fq.P, hbar0);
            Eigen::MatrixXcd hp = evaluate_poly_matrices(h, fp.Q, fp.P, hbar0);
            HybridDims dims{n, n};
            FactorOperator rhs{dims,
                               {KronTerm{hq, Eigen::MatrixXcd::Identity(n, n), rfac.Rq},
                                KronTerm{Eigen::MatrixXcd::Identity(n, n), hp, rfac.Rp}}};
            defect = std::max(defect, max_abs_diff(lhs, rhs.dense().matrix));
        }
        rep.check("doubled-observable identity (deg<=6)", defect, 0.0);
    }
    {
        // classical evaluation identity + point states, exact
        const int n = 8;
        Grid gq = uniform_grid(n, 20.0);
        Grid gp = uniform_grid(n, 12.0);
        FactorRep fq = coordinate_rep(gq, 0.0, conv);
        FactorRep fp = momentum_rep(gp, 0.0, conv);
        auto [qc, pc] = assemble_pair_cm_factored(fq, fp, rfac);
        NCPolynomial h_nc = from_weyl_basis(detail::hamiltonian_weyl(cfg));
        ClassicalPolynomial h_cl = classical_limit(h_nc);
        Eigen::MatrixXcd hm = evaluate_operator_poly(h_nc, qc, pc, 0.0).dense().matrix;

        double offdiag = 0.0;
        std::vector<double> diag, expected;
        for (long r = 0; r < hm.rows(); ++r)
            for (long c = 0; c < hm.cols(); ++c)
                if (r != c) offdiag = std::max(offdiag, std::abs(hm(r, c)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double e = eval_classical(h_cl, gq.points[static_cast<std::size_t>(i)],
                                          gp.points[static_cast<std::size_t>(j)]);
                expected.push_back(e);
                expected.push_back(e);
            }
        for (long r = 0; r < hm.rows(); ++r) {
            if (std::abs(hm(r, r).imag()) > 0.0) offdiag = std::max(offdiag, 1.0);
            diag.push_back(hm(r, r).real());
        }
        std::sort(diag.begin(), diag.end());
        std::sort(expected.begin(), expected.end());
        double specdiff = 0.0;
        for (std::size_t j = 0; j < diag.size(); ++j)
            specdiff = std::max(specdiff, std::abs(diag[j] - expected[j]));
        rep.check("classical evaluation identity", std::max(offdiag, specdiff), 0.0);

        HybridDims dims{n, n};
        int iq = nearest_node(gq, 1.3), ip = nearest_node(gp, -0.7);
        HybridVector point{dims, Eigen::VectorXcd::Zero(dims.total())};
        for (int ir = 0; ir < 2; ++ir)
            point.amplitudes(hybrid_index(dims, iq, ip, ir)) =
                rfac.cq * rfac.rq(ir) + rfac.cp * rfac.rp(ir);
        double eig = eval_classical(h_cl, gq.points[static_cast<std::size_t>(iq)],
                                    gp.points[static_cast<std::size_t>(ip)]);
        Eigen::VectorXcd defect_vec = hm * point.amplitudes - eig * point.amplitudes;
        rep.check("point state exact eigenvector", defect_vec.cwiseAbs().maxCoeff(), 0.0);

        // delta-state trace identity; exact with the balanced default weights
        RFactor rbal = make_rfactor();
        HybridDensity rho = delta_state(1.3, -0.7, gq, gp, rbal);
        rep.check("delta state trace = 1/(dq*dp)",
                  std::abs(rho.matrix.trace().real() - 1.0 / (gq.spacing() * gp.spacing())), 0.0);
        double mean = mean_value(rho, HybridOperator{dims, hm});
        rep.check("delta state mean at node", std::abs(mean - eig),
                  4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(eig)));

        // scale invariance of the trace quotient, exact for a power of two
        HybridDensity rho2{dims, 2.0 * rho.matrix};
        rep.check("mean-value quotient scale invariance",
                  std::abs(mean_value(rho2, HybridOperator{dims, hm}) - mean), 0.0);
    }
    {
        // qm-branch commutator residual on gaussian states (the fault target)
        const int n = 64;
        Grid gq = uniform_grid(n, 20.0);
        Grid gp = uniform_grid(n, 2.0 * std::numbers::pi * hbar0 * n / 20.0);
        FactorRep fq = coordinate_rep(gq, hbar0, conv);
        FactorRep fp = momentum_rep(gp, hbar0, conv);
        auto [qop, pop] = assemble_pair_qm_factored(fq, fp, rfac);
        auto states = detail::gaussian_test_states(gq, gp, rfac);
        rep.check("qm ccr residual on gaussians (N=64)",
                  commutator_residual(qop, pop, hbar0, states), 1e-6);

        SemiclassicalParams mid = make_params(cfg.h0 / 2, cfg.h0);
        FactorRep fqm = coordinate_rep(gq, mid.hbar_of_h(), conv);
        FactorRep fpm = momentum_rep(gp, mid.hbar_of_h(), conv);
        rep.check("h=h0/2 ccr residual on gaussians",
                  commutator_residual(assemble_qtilde_factored(mid, fqm, fpm, rfac),
                                      assemble_ptilde_factored(mid, fqm, fpm, rfac),
                                      mid.hbar_of_h(), states),
                  1e-6);
    }
    {
        // affinity in h and distance monotonicity
        const int n = 8;
        Grid gq = uniform_grid(n, 20.0);
        Grid gp = uniform_grid(n, 2.0 * std::numbers::pi * hbar0 * n / 20.0);
        auto qtilde_at = [&](double h) {
            SemiclassicalParams params = make_params(h, cfg.h0);
            FactorRep fq = coordinate_rep(gq, params.hbar_of_h(), conv);
            FactorRep fp = momentum_rep(gp, params.hbar_of_h(), conv);
            return assemble_qtilde(params, fq, fp, rfac).matrix;
        };
        Eigen::MatrixXcd mid = qtilde_at(cfg.h0 / 2);
        Eigen::MatrixXcd avg = 0.5 * (qtilde_at(0.0) + qtilde_at(cfg.h0));
        double scale = avg.cwiseAbs().maxCoeff();
        rep.check("assembly affine in h", max_abs_diff(mid, avg), 1e-14 * std::max(scale, 1.0));

        double prev_q = -1.0, prev_p = -1.0;
        bool monotone = true;
        for (int s = 0; s <= 4; ++s) {
            SemiclassicalParams params = make_params(cfg.h0 * s / 4.0, cfg.h0);
            FactorRep fq = coordinate_rep(gq, params.hbar_of_h(), conv);
            FactorRep fp = momentum_rep(gp, params.hbar_of_h(), conv);
            auto cm = assemble_pair_cm_factored(fq, fp, rfac);
            double dq = hermitian_operator_norm(
                assemble_qtilde_factored(params, fq, fp, rfac) - cm.first);
            double dp = hermitian_operator_norm(
                assemble_ptilde_factored(params, fq, fp, rfac) - cm.second);
            if (dq < prev_q - 1e-12 || dp < prev_p - 1e-12) monotone = false;
            prev_q = dq;
            prev_p = dp;
        }
        rep.check("endpoint distances nondecreasing in h", monotone ? 0.0 : 1.0, 0.0);
    }
    {
        // fourier transport
        const int n = 64;
        Grid gq = uniform_grid(n, 20.0);
        Grid gp = uniform_grid(n, 2.0 * std::numbers::pi * hbar0 * n / 20.0);
        Eigen::VectorXcd psi = gaussian_profile(gq, 0.4, 1.1);
        Eigen::VectorXcd tp = fourier_state(psi, gq, gp, hbar0);
        rep.check("fourier transport preserves the norm",
                  std::abs(quadrature_norm(tp, gp) - 1.0), 1e-10);
        Eigen::VectorXcd back = fourier_state(tp, gq, gp, hbar0, +1);
        rep.check("fourier transport inverse round trip", (back - psi).cwiseAbs().maxCoeff(),
                  1e-9);
    }
    {
        // embedded oscillator state: norm and mean energy
        const int n = 64;
        Grid gq = uniform_grid(n, 20.0);
        Grid gp = uniform_grid(n, 2.0 * std::numbers::pi * hbar0 * n / 20.0);
        NCPolynomial osc = parse_expression("(q^2 + p^2) * 1/2");
        FactorRep rep_q = coordinate_rep(gq, hbar0, conv);
        auto eig = oracles::solve_quantum_1d(osc, rep_q, 1);
        Eigen::VectorXcd psi = eig.vectors.col(0) / std::sqrt(gq.spacing());
        Eigen::VectorXcd a = gaussian_profile(gp, 0.0, 1.0);
        Eigen::VectorXcd b = gaussian_profile(gq, 0.0, 1.0);
        HybridVector emb = embed_quantum_state(psi, a, b, cfg.cq, cfg.cp, rfac, gq, gp, hbar0);
        rep.check("embedded state norm", std::abs(hybrid_norm(emb, gq, gp) - 1.0), 1e-9);

        FactorRep fp = momentum_rep(gp, hbar0, conv);
        auto [qop, pop] = assemble_pair_qm_factored(rep_q, fp, rfac);
        FactorOperator hop = evaluate_operator_poly(osc, qop, pop, hbar0);
        rep.check("embedded oscillator mean energy = hbar/2",
                  std::abs(mean_value(emb, hop) - 0.5 * hbar0), 1e-7);
    }
    {
        // classical states: hermitian, positive, riemann identity
        const int n = 8;
        Grid gq = uniform_grid(n, 12.0);
        Grid gp = uniform_grid(n, 10.0);
        Eigen::MatrixXd samples(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double xq = gq.points[static_cast<std::size_t>(i)] / 2.0;
                double xp = (gp.points[static_cast<std::size_t>(j)] - 0.5) / 1.5;
                samples(i, j) = std::exp(-0.5 * (xq * xq + xp * xp));
            }
        samples /= samples.sum() * gq.spacing() * gp.spacing();
        HybridDensity rho = classical_state(samples, gq, gp, rfac);
        rep.check("classical state hermitian", hermiticity_defect(rho.matrix), 0.0);
        rep.check("classical state positive semidefinite",
                  std::max(0.0, -eigh_values(rho.matrix).minCoeff()), 1e-12);

        NCPolynomial h_nc = from_weyl_basis(detail::hamiltonian_weyl(cfg));
        ClassicalPolynomial h_cl = classical_limit(h_nc);
        FactorRep fq = coordinate_rep(gq, 0.0, conv);
        FactorRep fp = momentum_rep(gp, 0.0, conv);
        auto [qc, pc] = assemble_pair_cm_factored(fq, fp, rfac);
        HybridOperator hm = evaluate_operator_poly(h_nc, qc, pc, 0.0).dense();
        double lhs = mean_value(rho, hm);
        double rhs = oracles::classical_phase_average(samples, h_cl, gq, gp);
        rep.check("classical mean equals riemann sum", std::abs(lhs - rhs),
                  1e-12 * std::max(1.0, std::abs(rhs)));

        HybridDensity eye{rho.dims, Eigen::MatrixXcd::Identity(rho.matrix.rows(), rho.matrix.cols())};
        HybridOperator identity_op{rho.dims,
                                   Eigen::MatrixXcd::Identity(rho.matrix.rows(), rho.matrix.cols())};
        rep.check("mean of identity in identity state", std::abs(mean_value(eye, identity_op) - 1.0),
                  0.0);
    }

    // ---- oracles ---------------------------------------------------------
    {
        int bad = 0;
        for (int n = 0; n <= 8; ++n)
            for (int m = 0; n + m <= 8; ++m)
                if (!(oracles::brute_force_weyl(n, m) == weyl_monomial(n, m))) ++bad;
        rep.check("brute-force weyl agreement (n+m<=8)", bad, 0.0);
    }
    {
        Grid g = uniform_grid(64, 20.0);
        FactorRep frep = coordinate_rep(g, 1.0, conv);
        NCPolynomial osc = parse_expression("(q^2 + p^2) * 1/2");
        auto eig = oracles::solve_quantum_1d(osc, frep, 4);
        double defect = 0.0;
        for (int j = 0; j < 4; ++j) defect = std::max(defect, std::abs(eig.values(j) - (j + 0.5)));
        rep.check("oscillator spectrum 0.5..3.5", defect, 1e-7);
        rep.check("oscillator eigen residuals", eig.residuals.maxCoeff(), 1e-8 * 64.0);

        auto free = oracles::solve_quantum_1d(parse_expression("p^2 * 1/2"), frep, 1);
        rep.check("free particle ground level", std::abs(free.values(0)), 1e-10);

        NCPolynomial quartic = parse_expression("(q^2 + p^2) * 1/2 + q^4 * 1/10");
        auto e64 = oracles::solve_quantum_1d(quartic, frep, 4);
        Grid g2 = uniform_grid(128, 20.0);
        auto e128 = oracles::solve_quantum_1d(quartic, coordinate_rep(g2, 1.0, conv), 4);
        double drift = 0.0;
        for (int j = 0; j < 4; ++j) drift = std::max(drift, std::abs(e64.values(j) - e128.values(j)));
        rep.check("quartic grid-refinement consistency", drift, 1e-5);

        auto osc128 = oracles::solve_quantum_1d(osc, coordinate_rep(g2, 1.0, conv), 4);
        double osc_drift = 0.0;
        for (int j = 0; j < 4; ++j)
            osc_drift = std::max(osc_drift, std::abs(eig.values(j) - osc128.values(j)));
        rep.check("oscillator grid-refinement consistency", osc_drift, 1e-7);
    }
    {
        Grid gq = uniform_grid(64, 2.0);
        Grid gp = uniform_grid(64, 2.0);
        Eigen::MatrixXd uniform = Eigen::MatrixXd::Constant(64, 64, 0.25);
        ClassicalPolynomial q2;
        q2.add_term({2, 0}, one);
        rep.check("quadrature of q^2 on the unit square",
                  std::abs(oracles::classical_phase_average(uniform, q2, gq, gp) - 1.0 / 3.0),
                  1e-3);
        ClassicalPolynomial unit;
        unit.add_term({0, 0}, one);
        rep.check("quadrature normalization",
                  std::abs(oracles::classical_phase_average(uniform, unit, gq, gp) - 1.0), 1e-12);
    }

    out << (rep.failures == 0 ? "verify: all " : "verify: FAILURES in ") << rep.total
        << " checks" << (rep.failures ? (", " + std::to_string(rep.failures) + " failed") : "")
        << "\n";
    return rep.failures;
}

}  // namespace opmech

#endif  // OPMECH_VERIFY_HPP
