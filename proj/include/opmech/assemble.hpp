#ifndef OPMECH_ASSEMBLE_HPP
#define OPMECH_ASSEMBLE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "opmech/factor_rep.hpp"
#include "opmech/hybrid.hpp"
#include "opmech/linalg.hpp"
#include "opmech/ncpoly.hpp"

namespace opmech {

namespace detail {

inline void check_assembly_inputs(const FactorRep& fq, const FactorRep& fp) {
    if (fq.kind != FactorKind::coordinate)
        throw std::invalid_argument("assembly: first factor must be the coordinate kind");
    if (fp.kind != FactorKind::momentum)
        throw std::invalid_argument("assembly: second factor must be the momentum kind");
}

inline HybridDims dims_of(const FactorRep& fq, const FactorRep& fp) {
    return {fq.grid.n_points, fp.grid.n_points};
}

}  // namespace detail

/// q~ = Q (x) I (x) [R_q + (1-h/h0) R_p] + I (x) Q (x) R_p, with both factor
/// representations built at the running hbar(h).
inline FactorOperator assemble_qtilde_factored(const SemiclassicalParams& params,
                                               const FactorRep& fq, const FactorRep& fp,
                                               const RFactor& r) {
    detail::check_assembly_inputs(fq, fp);
    if (fq.hbar != params.hbar_of_h() || fp.hbar != params.hbar_of_h())
        throw std::invalid_argument("assemble_qtilde: factor reps must be built at hbar(h)");
    const HybridDims dims = detail::dims_of(fq, fp);
    const double lam = params.h / params.h0;
    Eigen::Matrix2cd mix = r.Rq + (1.0 - lam) * r.Rp;
    FactorOperator out{dims, {}};
    out.terms.push_back({fq.Q, Eigen::MatrixXcd::Identity(dims.np, dims.np), mix});
    out.terms.push_back({Eigen::MatrixXcd::Identity(dims.nq, dims.nq), fp.Q, r.Rp});
    return out;
}

/// p~ = P (x) I (x) R_q + I (x) P (x) [(1-h/h0) R_q + R_p].
inline FactorOperator assemble_ptilde_factored(const SemiclassicalParams& params,
                                               const FactorRep& fq, const FactorRep& fp,
                                               const RFactor& r) {
    detail::check_assembly_inputs(fq, fp);
    if (fq.hbar != params.hbar_of_h() || fp.hbar != params.hbar_of_h())
        throw std::invalid_argument("assemble_ptilde: factor reps must be built at hbar(h)");
    const HybridDims dims = detail::dims_of(fq, fp);
    const double lam = params.h / params.h0;
    Eigen::Matrix2cd mix = (1.0 - lam) * r.Rq + r.Rp;
    FactorOperator out{dims, {}};
    out.terms.push_back({fq.P, Eigen::MatrixXcd::Identity(dims.np, dims.np), r.Rq});
    out.terms.push_back({Eigen::MatrixXcd::Identity(dims.nq, dims.nq), fp.P, mix});
    return out;
}

inline HybridOperator assemble_qtilde(const SemiclassicalParams& params, const FactorRep& fq,
                                      const FactorRep& fp, const RFactor& r) {
    return assemble_qtilde_factored(params, fq, fp, r).dense();
}

inline HybridOperator assemble_ptilde(const SemiclassicalParams& params, const FactorRep& fq,
                                      const FactorRep& fp, const RFactor& r) {
    return assemble_ptilde_factored(params, fq, fp, r).dense();
}

/// The h = h0 endpoint pair: q_qm = Q (x) I (x) R_q + I (x) Q (x) R_p and
/// p_qm = P (x) I (x) R_q + I (x) P (x) R_p.
inline std::pair<FactorOperator, FactorOperator> assemble_pair_qm_factored(const FactorRep& fq,
                                                                           const FactorRep& fp,
                                                                           const RFactor& r) {
    detail::check_assembly_inputs(fq, fp);
    if (fq.hbar != fp.hbar)
        throw std::invalid_argument("assemble_pair_qm: factor reps disagree on hbar");
    const HybridDims dims = detail::dims_of(fq, fp);
    Eigen::MatrixXcd iq = Eigen::MatrixXcd::Identity(dims.nq, dims.nq);
    Eigen::MatrixXcd ip = Eigen::MatrixXcd::Identity(dims.np, dims.np);
    FactorOperator qo{dims, {KronTerm{fq.Q, ip, r.Rq}, KronTerm{iq, fp.Q, r.Rp}}};
    FactorOperator po{dims, {KronTerm{fq.P, ip, r.Rq}, KronTerm{iq, fp.P, r.Rp}}};
    return {std::move(qo), std::move(po)};
}

/// The h = 0 endpoint pair: q_cm = diag(q) (x) I (x) I, p_cm = I (x) diag(p) (x) I.
inline std::pair<FactorOperator, FactorOperator> assemble_pair_cm_factored(const FactorRep& fq,
                                                                           const FactorRep& fp,
                                                                           const RFactor&) {
    detail::check_assembly_inputs(fq, fp);
    const HybridDims dims = detail::dims_of(fq, fp);
    Eigen::MatrixXcd iq = Eigen::MatrixXcd::Identity(dims.nq, dims.nq);
    Eigen::MatrixXcd ip = Eigen::MatrixXcd::Identity(dims.np, dims.np);
    FactorOperator qo{dims, {KronTerm{fq.Q, ip, Eigen::Matrix2cd::Identity()}}};
    FactorOperator po{dims, {KronTerm{iq, fp.P, Eigen::Matrix2cd::Identity()}}};
    return {std::move(qo), std::move(po)};
}

inline std::pair<HybridOperator, HybridOperator> assemble_pair_qm(const FactorRep& fq,
                                                                  const FactorRep& fp,
                                                                  const RFactor& r) {
    auto [qo, po] = assemble_pair_qm_factored(fq, fp, r);
    return {qo.dense(), po.dense()};
}

inline std::pair<HybridOperator, HybridOperator> assemble_pair_cm(const FactorRep& fq,
                                                                  const FactorRep& fp,
                                                                  const RFactor& r) {
    auto [qo, po] = assemble_pair_cm_factored(fq, fp, r);
    return {qo.dense(), po.dense()};
}

/// Two-factor simplification on H_q (x) H_p without the r slot: the maximal
/// commuting pair (diag(q) (x) I, I (x) diag(p)).
inline std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> assemble_pair_cm_minimal(
    const FactorRep& fq, const FactorRep& fp) {
    detail::check_assembly_inputs(fq, fp);
    const long nq = fq.grid.n_points, np = fp.grid.n_points;
    Eigen::MatrixXcd qd = Eigen::MatrixXcd::Zero(nq * np, nq * np);
    Eigen::MatrixXcd pd = Eigen::MatrixXcd::Zero(nq * np, nq * np);
    for (long i = 0; i < nq; ++i)
        for (long j = 0; j < np; ++j) {
            qd(i * np + j, i * np + j) = fq.grid.points[static_cast<std::size_t>(i)];
            pd(i * np + j, i * np + j) = fp.grid.points[static_cast<std::size_t>(j)];
        }
    return {std::move(qd), std::move(pd)};
}

/// The reducibility witness Q (x) I (x) R_p, which commutes with the whole
/// h = h0 pair.
inline FactorOperator commutant_witness_factored(const FactorRep& fq, const FactorRep& fp,
                                                 const RFactor& r) {
    detail::check_assembly_inputs(fq, fp);
    const HybridDims dims = detail::dims_of(fq, fp);
    return {dims, {KronTerm{fq.Q, Eigen::MatrixXcd::Identity(dims.np, dims.np), r.Rp}}};
}

/// Substitutes a matrix pair into the normal-ordered terms of f, with the
/// grading symbol mapped to the numeric hbar. Powers are cached as repeated
/// left multiplications.
inline Eigen::MatrixXcd evaluate_poly_matrices(const NCPolynomial& f, const Eigen::MatrixXcd& a,
                                               const Eigen::MatrixXcd& b, double hbar) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("evaluate_poly_matrices: operand shapes disagree");
    const long n = a.rows();
    int max_q = 0, max_p = 0;
    for (const auto& [k, c] : f.terms()) {
        max_q = std::max(max_q, k.q_exp);
        max_p = std::max(max_p, k.p_exp);
    }
    std::vector<Eigen::MatrixXcd> apow(static_cast<std::size_t>(max_q) + 1);
    std::vector<Eigen::MatrixXcd> bpow(static_cast<std::size_t>(max_p) + 1);
    apow[0] = Eigen::MatrixXcd::Identity(n, n);
    bpow[0] = Eigen::MatrixXcd::Identity(n, n);
    for (int e = 1; e <= max_q; ++e) apow[static_cast<std::size_t>(e)] = apow[static_cast<std::size_t>(e - 1)] * a;
    for (int e = 1; e <= max_p; ++e) bpow[static_cast<std::size_t>(e)] = bpow[static_cast<std::size_t>(e - 1)] * b;

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [k, c] : f.terms()) {
        std::complex<double> scale = c.to_complex();
        for (int j = 0; j < k.h_exp; ++j) scale *= hbar;
        out += scale * (apow[static_cast<std::size_t>(k.q_exp)] * bpow[static_cast<std::size_t>(k.p_exp)]);
    }
    return out;
}

inline HybridOperator evaluate_operator_poly(const NCPolynomial& f, const HybridOperator& a,
                                             const HybridOperator& b, double hbar) {
    if (!(a.dims == b.dims)) throw std::invalid_argument("evaluate_operator_poly: dims mismatch");
    return {a.dims, evaluate_poly_matrices(f, a.matrix, b.matrix, hbar)};
}

/// Factor-structured evaluation: powers and products stay in Kronecker-term
/// form, with exactly annihilated r products dropped, so the doubled and
/// diagonal endpoint identities come out exact instead of rounded.
inline FactorOperator evaluate_operator_poly(const NCPolynomial& f, const FactorOperator& a,
                                             const FactorOperator& b, double hbar) {
    if (!(a.dims == b.dims)) throw std::invalid_argument("evaluate_operator_poly: dims mismatch");
    int max_q = 0, max_p = 0;
    for (const auto& [k, c] : f.terms()) {
        max_q = std::max(max_q, k.q_exp);
        max_p = std::max(max_p, k.p_exp);
    }
    std::vector<FactorOperator> apow, bpow;
    apow.reserve(static_cast<std::size_t>(max_q) + 1);
    bpow.reserve(static_cast<std::size_t>(max_p) + 1);
    apow.push_back(identity_factor_operator(a.dims));
    bpow.push_back(identity_factor_operator(a.dims));
    for (int e = 1; e <= max_q; ++e) apow.push_back(apow.back() * a);
    for (int e = 1; e <= max_p; ++e) bpow.push_back(bpow.back() * b);

    FactorOperator out{a.dims, {}};
    for (const auto& [k, c] : f.terms()) {
        std::complex<double> scale = c.to_complex();
        for (int j = 0; j < k.h_exp; ++j) scale *= hbar;
        FactorOperator piece =
            apow[static_cast<std::size_t>(k.q_exp)] * bpow[static_cast<std::size_t>(k.p_exp)];
        out += piece.scaled(scale);
    }
    return out;
}

/// max over the test states of ||([A,B] - i hbar I) v|| / ||v||.
inline double commutator_residual(const FactorOperator& a, const FactorOperator& b, double hbar,
                                  const std::vector<HybridVector>& states) {
    if (states.empty()) throw std::invalid_argument("commutator_residual: empty test set");
    const std::complex<double> ih(0.0, hbar);
    double worst = 0.0;
    for (const auto& s : states) {
        if (!(s.dims == a.dims)) throw std::invalid_argument("commutator_residual: dims mismatch");
        Eigen::VectorXcd r = a.apply(b.apply(s.amplitudes)) - b.apply(a.apply(s.amplitudes)) -
                             ih * s.amplitudes;
        worst = std::max(worst, r.norm() / s.amplitudes.norm());
    }
    return worst;
}

inline double commutator_residual(const HybridOperator& a, const HybridOperator& b, double hbar,
                                  const std::vector<HybridVector>& states) {
    if (states.empty()) throw std::invalid_argument("commutator_residual: empty test set");
    const std::complex<double> ih(0.0, hbar);
    double worst = 0.0;
    for (const auto& s : states) {
        if (!(s.dims == a.dims)) throw std::invalid_argument("commutator_residual: dims mismatch");
        Eigen::VectorXcd r = a.matrix * (b.matrix * s.amplitudes) -
                             b.matrix * (a.matrix * s.amplitudes) - ih * s.amplitudes;
        worst = std::max(worst, r.norm() / s.amplitudes.norm());
    }
    return worst;
}

/// Lowest k eigenvalues of a Hermitian factor-structured operator, solved per
/// r sector when the operator is exactly block-diagonal there.
inline std::vector<double> lowest_eigenvalues(const FactorOperator& op, int k) {
    std::vector<double> all;
    if (op.r_diagonal()) {
        for (int s = 0; s < 2; ++s) {
            Eigen::VectorXd v = eigh_values(op.sector(s));
            all.insert(all.end(), v.data(), v.data() + v.size());
        }
    } else {
        Eigen::VectorXd v = eigh_values(op.dense().matrix);
        all.insert(all.end(), v.data(), v.data() + v.size());
    }
    std::sort(all.begin(), all.end());
    if (static_cast<std::size_t>(k) < all.size()) all.resize(static_cast<std::size_t>(k));
    return all;
}

/// Spectral norm of a Hermitian factor-structured operator.
inline double hermitian_operator_norm(const FactorOperator& op) {
    if (op.r_diagonal()) {
        double n0 = 0.0, n1 = 0.0;
        Eigen::MatrixXcd s0 = op.sector(0);
        Eigen::MatrixXcd s1 = op.sector(1);
        if (s0.cwiseAbs().maxCoeff() > 0.0) n0 = hermitian_operator_norm(s0);
        if (s1.cwiseAbs().maxCoeff() > 0.0) n1 = hermitian_operator_norm(s1);
        return std::max(n0, n1);
    }
    return hermitian_operator_norm(op.dense().matrix);
}

}  // namespace opmech

#endif  // OPMECH_ASSEMBLE_HPP
