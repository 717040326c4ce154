#ifndef OPMECH_STATES_HPP
#define OPMECH_STATES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "opmech/factor_rep.hpp"
#include "opmech/grid.hpp"
#include "opmech/hybrid.hpp"

namespace opmech {

/// Quadrature norm on a factor grid: sqrt(spacing * sum |v_j|^2), the
/// discrete stand-in for the L2 norm of the sampled function.
inline double quadrature_norm(const Eigen::VectorXcd& v, const Grid& g) {
    return std::sqrt(g.spacing()) * v.norm();
}

/// Real Gaussian profile exp(-(x-center)^2 / (2 sigma^2)) sampled on the grid
/// and quadrature-normalized.
inline Eigen::VectorXcd gaussian_profile(const Grid& g, double center, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_profile: sigma must be positive");
    Eigen::VectorXcd v(g.n_points);
    for (int j = 0; j < g.n_points; ++j) {
        double x = (g.points[static_cast<std::size_t>(j)] - center) / sigma;
        v(j) = std::exp(-0.5 * x * x);
    }
    v /= quadrature_norm(v, g);
    return v;
}

/// Quadrature Fourier transform onto the momentum grid:
///   out(p_k) = spacing_q / sqrt(2 pi hbar) * sum_j exp(-i p_k q_j / hbar) psi(q_j).
/// Requires the momentum grid to coincide with the hbar-scaled DFT frequency
/// grid, i.e. L_p * L_q = 2 pi hbar N.
inline Eigen::VectorXcd fourier_state(const Eigen::VectorXcd& psi, const Grid& gq, const Grid& gp,
                                      double hbar, int sign = -1) {
    if (!(hbar > 0.0))
        throw std::invalid_argument("fourier_state: hbar must be positive (classical states do not pass through this path)");
    if (psi.size() != gq.n_points) throw std::invalid_argument("fourier_state: sample count mismatch");
    if (gp.n_points != gq.n_points)
        throw std::invalid_argument("fourier_state: grids must have the same point count");
    if (sign != -1 && sign != 1) throw std::invalid_argument("fourier_state: sign must be +-1");
    const double required_lp = 2.0 * std::numbers::pi * hbar * gq.n_points / gq.length;
    if (std::abs(gp.length / required_lp - 1.0) > 1e-12)
        throw std::invalid_argument("fourier_state: incompatible grids; required L_p = " +
                                    std::to_string(required_lp));
    const int n = gq.n_points;
    const double scale_in = (sign < 0 ? gq.spacing() : gp.spacing());
    const double norm = scale_in / std::sqrt(2.0 * std::numbers::pi * hbar);
    Eigen::VectorXcd out(n);
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        const double pk = (sign < 0 ? gp.points[static_cast<std::size_t>(k)]
                                    : gq.points[static_cast<std::size_t>(k)]);
        for (int j = 0; j < n; ++j) {
            const double xj = (sign < 0 ? gq.points[static_cast<std::size_t>(j)]
                                        : gp.points[static_cast<std::size_t>(j)]);
            const double phase = sign * pk * xj / hbar;
            acc += std::complex<double>(std::cos(phase), std::sin(phase)) * psi(j);
        }
        out(k) = norm * acc;
    }
    return out;
}

/// Embedded eigenstate c_q |psi> (x) |a> (x) |r_q> + c_p |b> (x) |psi~> (x) |r_p>,
/// where |psi~> is the Fourier transport of |psi> onto the momentum grid.
/// All inputs are quadrature-normalized; the weights satisfy
/// |c_q|^2 + |c_p|^2 = 1.
inline HybridVector embed_quantum_state(const Eigen::VectorXcd& psi_q,
                                        const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                                        std::complex<double> cq, std::complex<double> cp,
                                        const RFactor& r, const Grid& gq, const Grid& gp,
                                        double hbar) {
    if (std::abs(quadrature_norm(psi_q, gq) - 1.0) > 1e-10)
        throw std::invalid_argument("embed_quantum_state: psi must be quadrature-normalized");
    if (a.size() != gp.n_points || std::abs(quadrature_norm(a, gp) - 1.0) > 1e-10)
        throw std::invalid_argument("embed_quantum_state: |a> must live on the momentum grid with unit norm");
    if (b.size() != gq.n_points || std::abs(quadrature_norm(b, gq) - 1.0) > 1e-10)
        throw std::invalid_argument("embed_quantum_state: |b> must live on the coordinate grid with unit norm");
    if (std::abs(std::norm(cq) + std::norm(cp) - 1.0) > 1e-12)
        throw std::invalid_argument("embed_quantum_state: weights must satisfy |c_q|^2 + |c_p|^2 = 1");

    Eigen::VectorXcd psi_p = fourier_state(psi_q, gq, gp, hbar);
    const HybridDims dims{gq.n_points, gp.n_points};
    HybridVector out{dims, Eigen::VectorXcd::Zero(dims.total())};
    for (int iq = 0; iq < dims.nq; ++iq)
        for (int ip = 0; ip < dims.np; ++ip)
            for (int ir = 0; ir < 2; ++ir)
                out.amplitudes(hybrid_index(dims, iq, ip, ir)) =
                    cq * psi_q(iq) * a(ip) * r.rq(ir) + cp * b(iq) * psi_p(ip) * r.rp(ir);
    return out;
}

/// Norm of a hybrid vector with the product quadrature weight.
inline double hybrid_norm(const HybridVector& v, const Grid& gq, const Grid& gp) {
    return std::sqrt(gq.spacing() * gp.spacing()) * v.amplitudes.norm();
}

/// Classical mixed state rho(q,p) (x) dyad(c_q r_q + c_p r_p). The sample
/// matrix is the density at the grid nodes; its Riemann sum must equal 1, so
/// the trace of the result is the discrete delta(0)*delta(0) norm
/// 1/(spacing_q * spacing_p).
inline HybridDensity classical_state(const Eigen::MatrixXd& rho_samples, const Grid& gq,
                                     const Grid& gp, const RFactor& r) {
    if (rho_samples.rows() != gq.n_points || rho_samples.cols() != gp.n_points)
        throw std::invalid_argument("classical_state: sample shape mismatch");
    if ((rho_samples.array() < 0.0).any())
        throw std::invalid_argument("classical_state: density samples must be non-negative");
    const double riemann = rho_samples.sum() * gq.spacing() * gp.spacing();
    if (std::abs(riemann - 1.0) > 1e-10)
        throw std::invalid_argument("classical_state: samples must have unit Riemann sum, got " +
                                    std::to_string(riemann));

    Eigen::Matrix2cd dyad;
    Eigen::Vector2cd w = r.cq * r.rq + r.cp * r.rp;
    dyad.noalias() = w * w.adjoint();

    const HybridDims dims{gq.n_points, gp.n_points};
    HybridDensity out{dims, Eigen::MatrixXcd::Zero(dims.total(), dims.total())};
    for (int iq = 0; iq < dims.nq; ++iq)
        for (int ip = 0; ip < dims.np; ++ip)
            for (int ir = 0; ir < 2; ++ir)
                for (int jr = 0; jr < 2; ++jr)
                    out.matrix(hybrid_index(dims, iq, ip, ir), hybrid_index(dims, iq, ip, jr)) =
                        rho_samples(iq, ip) * dyad(ir, jr);
    return out;
}

/// Point state at the nearest grid node: the Kronecker-delta density scaled
/// by 1/(spacing_q * spacing_p). No sub-grid interpolation.
inline HybridDensity delta_state(double q0, double p0, const Grid& gq, const Grid& gp,
                                 const RFactor& r) {
    Eigen::MatrixXd samples = Eigen::MatrixXd::Zero(gq.n_points, gp.n_points);
    samples(nearest_node(gq, q0), nearest_node(gp, p0)) = 1.0 / (gq.spacing() * gp.spacing());
    return classical_state(samples, gq, gp, r);
}

/// The mean-value quotient Tr(rho A) / Tr(rho). For Hermitian inputs the
/// imaginary part must vanish to 1e-10 relative; it is checked and dropped.
inline double mean_value(const HybridDensity& rho, const HybridOperator& a) {
    if (!(rho.dims == a.dims)) throw std::invalid_argument("mean_value: dims mismatch");
    const std::complex<double> tr = rho.matrix.trace();
    if (!(std::abs(tr) > 0.0)) throw std::invalid_argument("mean_value: state has zero trace");
    const std::complex<double> num = rho.matrix.cwiseProduct(a.matrix.transpose()).sum();
    const std::complex<double> mean = num / tr;
    if (std::abs(mean.imag()) > 1e-10 * (1.0 + std::abs(mean.real())))
        throw std::domain_error("mean_value: imaginary part exceeds tolerance; inputs not Hermitian?");
    return mean.real();
}

/// Pure-state specialization <v|A|v> / <v|v>; identical to the dyad density
/// route but avoids forming the outer product.
inline double mean_value(const HybridVector& v, const HybridOperator& a) {
    if (!(v.dims == a.dims)) throw std::invalid_argument("mean_value: dims mismatch");
    const double nrm = v.amplitudes.squaredNorm();
    if (!(nrm > 0.0)) throw std::invalid_argument("mean_value: state has zero norm");
    const std::complex<double> num = v.amplitudes.dot(a.matrix * v.amplitudes);
    const std::complex<double> mean = num / nrm;
    if (std::abs(mean.imag()) > 1e-10 * (1.0 + std::abs(mean.real())))
        throw std::domain_error("mean_value: imaginary part exceeds tolerance; inputs not Hermitian?");
    return mean.real();
}

inline double mean_value(const HybridVector& v, const FactorOperator& a) {
    if (!(v.dims == a.dims)) throw std::invalid_argument("mean_value: dims mismatch");
    const double nrm = v.amplitudes.squaredNorm();
    if (!(nrm > 0.0)) throw std::invalid_argument("mean_value: state has zero norm");
    const std::complex<double> num = v.amplitudes.dot(a.apply(v.amplitudes));
    const std::complex<double> mean = num / nrm;
    if (std::abs(mean.imag()) > 1e-10 * (1.0 + std::abs(mean.real())))
        throw std::domain_error("mean_value: imaginary part exceeds tolerance; inputs not Hermitian?");
    return mean.real();
}

}  // namespace opmech

#endif  // OPMECH_STATES_HPP
