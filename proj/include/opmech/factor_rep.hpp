#ifndef OPMECH_FACTOR_REP_HPP
#define OPMECH_FACTOR_REP_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "opmech/grid.hpp"

namespace opmech {

enum class FactorKind { coordinate, momentum };

/// Finite model of one rigged-Hilbert-space factor: the grid plus the matched
/// position/momentum matrices. Coordinate kind holds Q = diag(points),
/// P = -i*hbar*D; momentum kind holds P = diag(points), Q = +i*hbar*D, the
/// sign fixed by the conjugate-basis kernels. At hbar = 0 the derivative
/// member is the exact zero matrix.
struct FactorRep {
    Grid grid;
    double hbar = 0.0;
    FactorKind kind = FactorKind::coordinate;
    Eigen::MatrixXcd Q;
    Eigen::MatrixXcd P;
};

namespace detail {

inline Eigen::MatrixXcd diag_of_points(const Grid& g) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g.n_points, g.n_points);
    for (int j = 0; j < g.n_points; ++j) m(j, j) = g.points[static_cast<std::size_t>(j)];
    return m;
}

}  // namespace detail

inline FactorRep coordinate_rep(
    const Grid& g, double hbar,
    DerivativeConvention convention = DerivativeConvention::symmetric_nyquist_zeroed) {
    if (hbar < 0.0) throw std::invalid_argument("coordinate_rep: hbar must be >= 0");
    FactorRep rep{g, hbar, FactorKind::coordinate, detail::diag_of_points(g), {}};
    if (hbar == 0.0)
        rep.P = Eigen::MatrixXcd::Zero(g.n_points, g.n_points);
    else
        rep.P = std::complex<double>(0.0, -hbar) * spectral_derivative(g.n_points, g.length, convention);
    return rep;
}

inline FactorRep momentum_rep(
    const Grid& g, double hbar,
    DerivativeConvention convention = DerivativeConvention::symmetric_nyquist_zeroed) {
    if (hbar < 0.0) throw std::invalid_argument("momentum_rep: hbar must be >= 0");
    FactorRep rep{g, hbar, FactorKind::momentum, {}, detail::diag_of_points(g)};
    if (hbar == 0.0)
        rep.Q = Eigen::MatrixXcd::Zero(g.n_points, g.n_points);
    else
        rep.Q = std::complex<double>(0.0, hbar) * spectral_derivative(g.n_points, g.length, convention);
    return rep;
}

/// The two-dimensional bookkeeping factor: exact 0/1 projectors R_q, R_p,
/// their basis vectors, and the mixing amplitudes of point/embedded states.
struct RFactor {
    Eigen::Matrix2cd Rq;
    Eigen::Matrix2cd Rp;
    Eigen::Vector2cd rq;
    Eigen::Vector2cd rp;
    std::complex<double> cq{0.0, 0.0};
    std::complex<double> cp{0.0, 0.0};
};

inline RFactor make_rfactor(std::complex<double> cq, std::complex<double> cp) {
    double weight = std::norm(cq) + std::norm(cp);
    if (std::abs(weight - 1.0) > 1e-12)
        throw std::invalid_argument("make_rfactor: |c_q|^2 + |c_p|^2 must equal 1");
    RFactor r;
    r.Rq << 1, 0, 0, 0;
    r.Rp << 0, 0, 0, 1;
    r.rq << 1, 0;
    r.rp << 0, 1;
    r.cq = cq;
    r.cp = cp;
    return r;
}

inline RFactor make_rfactor() {
    const double w = 1.0 / std::sqrt(2.0);
    return make_rfactor({w, 0.0}, {w, 0.0});
}

/// The deformation parameter h in [0, h0] and the running Planck constant
/// hbar(h) = hbar0 * h/h0 with hbar0 = h0/(2*pi). The running value feeds the
/// conjugate-basis kernels, which is what makes both endpoint equalities of
/// the assembled pair exact in the finite model.
struct SemiclassicalParams {
    double h = 0.0;
    double h0 = 2.0 * std::numbers::pi;

    double hbar0() const { return h0 / (2.0 * std::numbers::pi); }
    double hbar_of_h() const { return hbar0() * (h / h0); }
};

inline SemiclassicalParams make_params(double h, double h0 = 2.0 * std::numbers::pi) {
    if (!(h0 > 0.0)) throw std::invalid_argument("make_params: h0 must be positive");
    if (h < 0.0 || h > h0) throw std::invalid_argument("make_params: h must lie in [0, h0]");
    return {h, h0};
}

}  // namespace opmech

#endif  // OPMECH_FACTOR_REP_HPP
