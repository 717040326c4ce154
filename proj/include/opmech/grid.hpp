#ifndef OPMECH_GRID_HPP
#define OPMECH_GRID_HPP

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace opmech {

/// Centered periodic grid: points x_j = -L/2 + j*(L/n) for j = 0..n-1.
struct Grid {
    int n_points = 0;
    double length = 0.0;
    std::vector<double> points;

    double spacing() const { return length / n_points; }
};

inline Grid uniform_grid(int n, double length) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("uniform_grid: n_points must be even and >= 2");
    if (!(length > 0.0)) throw std::invalid_argument("uniform_grid: length must be positive");
    Grid g;
    g.n_points = n;
    g.length = length;
    g.points.resize(static_cast<std::size_t>(n));
    const double step = length / n;
    for (int j = 0; j < n; ++j) g.points[static_cast<std::size_t>(j)] = -length / 2 + j * step;
    return g;
}

inline int nearest_node(const Grid& g, double x) {
    const double step = g.spacing();
    long j = std::lround((x + g.length / 2) / step);
    if (j < 0) j = 0;
    if (j >= g.n_points) j = g.n_points - 1;
    return static_cast<int>(j);
}

/// DFT frequency convention for the derivative matrix. The symmetric
/// convention zeroes the unpaired Nyquist row so the matrix stays exactly
/// anti-Hermitian; the unwrapped convention is a deliberately broken variant
/// (all frequencies taken non-negative) kept for fault-injection runs.
enum class DerivativeConvention { symmetric_nyquist_zeroed, unwrapped_fault };

/// Spectral derivative on the periodic grid: D = F^dag diag(i k) F with the
/// unitary DFT and k_j = 2*pi*j/L for j in {-n/2+1, ..., n/2-1}, Nyquist row
/// zeroed. Evaluated in closed form as a real antisymmetric circulant.
inline Eigen::MatrixXcd spectral_derivative(
    int n, double length,
    DerivativeConvention convention = DerivativeConvention::symmetric_nyquist_zeroed) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("spectral_derivative: n must be even and >= 2");
    if (!(length > 0.0))
        throw std::invalid_argument("spectral_derivative: length must be positive");

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);

    if (convention == DerivativeConvention::unwrapped_fault) {
        // Faulty path: bins 0..n-1 all read as non-negative frequencies.
        const double two_pi = 2.0 * std::numbers::pi;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                std::complex<double> acc = 0.0;
                for (int j = 0; j < n; ++j) {
                    double k = two_pi * j / length;
                    double phase = two_pi * j * (a - b) / n;
                    acc += std::complex<double>(0.0, k) *
                           std::complex<double>(std::cos(phase), std::sin(phase));
                }
                d(a, b) = acc / static_cast<double>(n);
            }
        }
        return d;
    }

    // kernel(s) = -(4*pi/(n*L)) * sum_{j=1}^{n/2-1} j * sin(2*pi*j*s/n); the
    // lower half is mirrored with a sign flip so antisymmetry is exact.
    std::vector<double> kernel(static_cast<std::size_t>(n), 0.0);
    for (int s = 1; s <= n / 2 - 1; ++s) {
        double acc = 0.0;
        for (int j = 1; j <= n / 2 - 1; ++j)
            acc += j * std::sin(2.0 * std::numbers::pi * j * s / n);
        kernel[static_cast<std::size_t>(s)] = -(4.0 * std::numbers::pi / (n * length)) * acc;
    }
    // kernel(n/2) vanishes identically (sin(pi*j) factors), and the lower
    // half mirrors with a sign flip; both are imposed so antisymmetry is
    // exact rather than rounded.
    for (int s = n / 2 + 1; s < n; ++s)
        kernel[static_cast<std::size_t>(s)] = -kernel[static_cast<std::size_t>(n - s)];

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) d(a, b) = kernel[static_cast<std::size_t>((a - b + n) % n)];
    return d;
}

}  // namespace opmech

#endif  // OPMECH_GRID_HPP
