#ifndef OPMECH_ORACLES_HPP
#define OPMECH_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opmech/classical.hpp"
#include "opmech/factor_rep.hpp"
#include "opmech/linalg.hpp"
#include "opmech/ncpoly.hpp"

// Reference computations used by tests and acceptance runs. Each oracle keeps
// its own rewrite loop / evaluation loop, separate from the code paths it is
// meant to check.

namespace opmech::oracles {

/// Brute-force Weyl monomial: enumerate all interleavings of n 'Q' and m 'P'
/// letters and normal-order each by literal single-swap rewriting on strings
/// (P Q -> Q P with a -i hbar remainder), then average.
inline NCPolynomial brute_force_weyl(int n, int m) {
    if (n < 0 || m < 0) throw std::invalid_argument("brute_force_weyl: negative exponent");
    if (n + m > 12) throw std::domain_error("brute_force_weyl: n+m cap of 12 exceeded");

    std::string word(static_cast<std::size_t>(n), 'Q');
    word.append(static_cast<std::size_t>(m), 'P');

    NCPolynomial sum;
    long count = 0;
    do {
        // Worklist of (word, hbar power) -> coefficient.
        std::map<std::pair<std::string, int>, GaussianRational> pending;
        pending[{word, 0}] = GaussianRational::one();
        while (!pending.empty()) {
            auto it = pending.begin();
            auto [w, hpow] = it->first;
            GaussianRational coeff = it->second;
            pending.erase(it);

            std::size_t swap_at = w.find("PQ");
            if (swap_at == std::string::npos) {
                int qs = static_cast<int>(std::count(w.begin(), w.end(), 'Q'));
                int ps = static_cast<int>(w.size()) - qs;
                sum.add_term({qs, ps, hpow}, coeff);
                continue;
            }
            std::string swapped = w;
            swapped[swap_at] = 'Q';
            swapped[swap_at + 1] = 'P';
            std::string contracted = w;
            contracted.erase(swap_at, 2);

            auto accumulate = [&pending](std::pair<std::string, int> key, GaussianRational c) {
                auto [slot, inserted] = pending.try_emplace(key, c);
                if (!inserted) {
                    slot->second += c;
                    if (slot->second.is_zero()) pending.erase(slot);
                }
            };
            accumulate({std::move(swapped), hpow}, coeff);
            accumulate({std::move(contracted), hpow + 1},
                       coeff * (-GaussianRational::imaginary_unit()));
        }
        ++count;
    } while (std::next_permutation(word.begin(), word.end()));

    sum *= GaussianRational(Rational(1, count));
    return sum;
}

struct EigenResult {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // orthonormal columns
    Eigen::VectorXd residuals; // per-pair ||H v - lambda v||
};

namespace detail {

/// Standalone polynomial-of-matrices evaluation (binary exponentiation), kept
/// separate from the representation layer's evaluator.
inline Eigen::MatrixXcd matrix_power(Eigen::MatrixXcd base, int e) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(base.rows(), base.cols());
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

inline Eigen::MatrixXcd eval_poly(const NCPolynomial& f, const Eigen::MatrixXcd& a,
                                  const Eigen::MatrixXcd& b, double hbar) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a.rows(), a.cols());
    for (const auto& [k, c] : f.terms()) {
        std::complex<double> scale = c.to_complex() * std::pow(hbar, k.h_exp);
        out += scale * (matrix_power(a, k.q_exp) * matrix_power(b, k.p_exp));
    }
    return out;
}

}  // namespace detail

/// Lowest k eigenpairs of H evaluated in a single factor representation.
/// Rejects symbolically non-self-adjoint polynomials.
inline EigenResult solve_quantum_1d(const NCPolynomial& h, const FactorRep& rep, int k) {
    if (!(adjoint(h) == h))
        throw std::invalid_argument("solve_quantum_1d: polynomial is not self-adjoint");
    const int n = rep.grid.n_points;
    if (k < 1 || k > n) throw std::invalid_argument("solve_quantum_1d: bad eigenpair count");

    Eigen::MatrixXcd hm = detail::eval_poly(h, rep.Q, rep.P, rep.hbar);
    EighResult full = eigh(hm, true);

    EigenResult out;
    out.values = full.values.head(k);
    out.vectors = full.vectors.leftCols(k);
    out.residuals.resize(k);
    for (int j = 0; j < k; ++j)
        out.residuals(j) = (hm * out.vectors.col(j) - out.values(j) * out.vectors.col(j)).norm();

    const double scale = std::max(std::abs(full.values(0)), std::abs(full.values(n - 1)));
    for (int j = 0; j < k; ++j)
        if (out.residuals(j) > 1e-8 * std::max(scale, 1.0))
            throw std::runtime_error("solve_quantum_1d: eigenpair residual out of bounds");
    Eigen::MatrixXcd gram = out.vectors.adjoint() * out.vectors;
    if ((gram - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::runtime_error("solve_quantum_1d: eigenvectors lost orthonormality");
    return out;
}

/// Riemann-sum phase-space average of H against a sampled density. The
/// polynomial is evaluated with its own loop (std::pow), independent of
/// eval_classical.
inline double classical_phase_average(const Eigen::MatrixXd& rho_samples,
                                      const ClassicalPolynomial& h, const Grid& gq,
                                      const Grid& gp) {
    if (rho_samples.rows() != gq.n_points || rho_samples.cols() != gp.n_points)
        throw std::invalid_argument("classical_phase_average: sample shape mismatch");
    if ((rho_samples.array() < 0.0).any())
        throw std::invalid_argument("classical_phase_average: density must be non-negative");
    const double cell = gq.spacing() * gp.spacing();
    if (std::abs(rho_samples.sum() * cell - 1.0) > 1e-8)
        throw std::invalid_argument("classical_phase_average: density is not normalized");

    double acc = 0.0;
    for (int i = 0; i < gq.n_points; ++i) {
        for (int j = 0; j < gp.n_points; ++j) {
            if (rho_samples(i, j) == 0.0) continue;
            double hval = 0.0;
            for (const auto& [key, c] : h.terms()) {
                if (!c.is_real())
                    throw std::domain_error("classical_phase_average: complex coefficients");
                hval += static_cast<double>(c.re) *
                        std::pow(gq.points[static_cast<std::size_t>(i)], key.q_exp) *
                        std::pow(gp.points[static_cast<std::size_t>(j)], key.p_exp);
            }
            acc += rho_samples(i, j) * hval * cell;
        }
    }
    return acc;
}

/// Polynomial-density variant: samples the density on the grid, normalizes
/// the Riemann sum, then averages.
inline double classical_phase_average(const ClassicalPolynomial& rho,
                                      const ClassicalPolynomial& h, const Grid& gq,
                                      const Grid& gp) {
    Eigen::MatrixXd samples(gq.n_points, gp.n_points);
    for (int i = 0; i < gq.n_points; ++i)
        for (int j = 0; j < gp.n_points; ++j) {
            double v = eval_classical(rho, gq.points[static_cast<std::size_t>(i)],
                                      gp.points[static_cast<std::size_t>(j)]);
            if (v < 0.0)
                throw std::invalid_argument("classical_phase_average: density must be non-negative");
            samples(i, j) = v;
        }
    const double total = samples.sum() * gq.spacing() * gp.spacing();
    if (!(total > 0.0)) throw std::invalid_argument("classical_phase_average: zero density");
    samples /= total;
    return classical_phase_average(samples, h, gq, gp);
}

}  // namespace opmech::oracles

#endif  // OPMECH_ORACLES_HPP
