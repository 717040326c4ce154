#ifndef OPMECH_LINALG_HPP
#define OPMECH_LINALG_HPP

#include <Eigen/Dense>
#include <lapacke.h>

#include <stdexcept>
#include <vector>

namespace opmech {

struct EighResult {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // columns; empty when values-only
};

/// Dense Hermitian eigendecomposition (LAPACK zheevd on the lower triangle).
inline EighResult eigh(const Eigen::MatrixXcd& h, bool with_vectors = true) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eigh: matrix must be square");
    const auto n = static_cast<lapack_int>(h.rows());
    EighResult r;
    r.values.resize(n);
    Eigen::MatrixXcd work = h;
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'L', n,
                              reinterpret_cast<lapack_complex_double*>(work.data()), n,
                              r.values.data());
    if (info != 0) throw std::runtime_error("eigh: zheevd failed with info " + std::to_string(info));
    if (with_vectors) r.vectors = std::move(work);
    return r;
}

inline Eigen::VectorXd eigh_values(const Eigen::MatrixXcd& h) { return eigh(h, false).values; }

/// Spectral norm of a Hermitian matrix: the largest |eigenvalue|.
inline double hermitian_operator_norm(const Eigen::MatrixXcd& h) {
    if (h.rows() == 0) return 0.0;
    Eigen::VectorXd v = eigh_values(h);
    return std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
}

}  // namespace opmech

#endif  // OPMECH_LINALG_HPP
