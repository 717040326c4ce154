#ifndef OPMECH_HYBRID_HPP
#define OPMECH_HYBRID_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace opmech {

/// Dimensions of the composite space H_q (x) H_p (x) H_r. Flat indices run
/// with the r slot fastest: index = (iq*np + ip)*2 + ir.
struct HybridDims {
    int nq = 0;
    int np = 0;

    long total() const { return 2L * nq * np; }
    friend bool operator==(const HybridDims&, const HybridDims&) = default;
};

inline long hybrid_index(const HybridDims& d, int iq, int ip, int ir) {
    return (static_cast<long>(iq) * d.np + ip) * 2 + ir;
}

struct HybridOperator {
    HybridDims dims;
    Eigen::MatrixXcd matrix;
};

struct HybridVector {
    HybridDims dims;
    Eigen::VectorXcd amplitudes;
};

struct HybridDensity {
    HybridDims dims;
    Eigen::MatrixXcd matrix;
};

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    return (a - b).cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Eigen::MatrixXcd& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// One Kronecker term A (x) B (x) R of a hybrid operator.
struct KronTerm {
    Eigen::MatrixXcd q;
    Eigen::MatrixXcd p;
    Eigen::Matrix2cd r;
};

/// Sum of Kronecker terms: the factor-structured form of a hybrid operator.
/// Dense assembly, lazy application, and sector extraction all preserve the
/// term order, so identical inputs give identical floating-point results.
struct FactorOperator {
    HybridDims dims;
    std::vector<KronTerm> terms;

    HybridOperator dense() const {
        HybridOperator out{dims, Eigen::MatrixXcd::Zero(dims.total(), dims.total())};
        for (const auto& t : terms) {
            for (int iq = 0; iq < dims.nq; ++iq)
                for (int jq = 0; jq < dims.nq; ++jq)
                    for (int ip = 0; ip < dims.np; ++ip)
                        for (int jp = 0; jp < dims.np; ++jp) {
                            const std::complex<double> qp = t.q(iq, jq) * t.p(ip, jp);
                            for (int ir = 0; ir < 2; ++ir)
                                for (int jr = 0; jr < 2; ++jr)
                                    out.matrix(hybrid_index(dims, iq, ip, ir),
                                               hybrid_index(dims, jq, jp, jr)) += qp * t.r(ir, jr);
                        }
        }
        return out;
    }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const {
        if (v.size() != dims.total()) throw std::invalid_argument("FactorOperator: size mismatch");
        const int nq = dims.nq, np = dims.np;
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
        Eigen::VectorXcd t1(v.size()), t2(v.size());
        for (const auto& term : terms) {
            // r slot: view as 2 x (np*nq)
            Eigen::Map<const Eigen::MatrixXcd> vin(v.data(), 2, static_cast<long>(np) * nq);
            Eigen::Map<Eigen::MatrixXcd> m1(t1.data(), 2, static_cast<long>(np) * nq);
            m1.noalias() = term.r * vin;
            // p slot: per-iq slices of shape 2 x np
            for (int iq = 0; iq < nq; ++iq) {
                Eigen::Map<const Eigen::MatrixXcd> s1(t1.data() + static_cast<long>(iq) * 2 * np, 2, np);
                Eigen::Map<Eigen::MatrixXcd> s2(t2.data() + static_cast<long>(iq) * 2 * np, 2, np);
                s2.noalias() = s1 * term.p.transpose();
            }
            // q slot: view as (2*np) x nq
            Eigen::Map<const Eigen::MatrixXcd> m2(t2.data(), 2L * np, nq);
            Eigen::Map<Eigen::MatrixXcd> m3(t1.data(), 2L * np, nq);
            m3.noalias() = m2 * term.q.transpose();
            out += t1;
        }
        return out;
    }

    /// True when every term has a diagonal r factor, i.e. the dense form is
    /// exactly block-diagonal over the two r sectors.
    bool r_diagonal() const {
        for (const auto& t : terms)
            if (t.r(0, 1) != 0.0 || t.r(1, 0) != 0.0) return false;
        return true;
    }

    /// The (s,s) r-sector block of size nq*np, valid for diagonal-r operators.
    Eigen::MatrixXcd sector(int s) const {
        Eigen::MatrixXcd out =
            Eigen::MatrixXcd::Zero(static_cast<long>(dims.nq) * dims.np,
                                   static_cast<long>(dims.nq) * dims.np);
        for (const auto& t : terms) {
            const std::complex<double> w = t.r(s, s);
            if (w == 0.0) continue;
            for (int iq = 0; iq < dims.nq; ++iq)
                for (int jq = 0; jq < dims.nq; ++jq)
                    for (int ip = 0; ip < dims.np; ++ip)
                        for (int jp = 0; jp < dims.np; ++jp)
                            out(static_cast<long>(iq) * dims.np + ip,
                                static_cast<long>(jq) * dims.np + jp) +=
                                (t.q(iq, jq) * t.p(ip, jp)) * w;
        }
        return out;
    }

    FactorOperator& operator+=(const FactorOperator& o) {
        if (!(dims == o.dims)) throw std::invalid_argument("FactorOperator: dims mismatch");
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        return *this;
    }

    /// Scalar multiple; the scale is folded into the q factor of each term.
    FactorOperator scaled(std::complex<double> s) const {
        FactorOperator out{dims, terms};
        for (auto& t : out.terms) t.q *= s;
        return out;
    }
};

inline FactorOperator identity_factor_operator(const HybridDims& dims) {
    return {dims,
            {KronTerm{Eigen::MatrixXcd::Identity(dims.nq, dims.nq),
                      Eigen::MatrixXcd::Identity(dims.np, dims.np),
                      Eigen::Matrix2cd::Identity()}}};
}

/// Term-by-term operator product. Terms whose 2x2 r product is exactly zero
/// are dropped; that is what collapses powers of the endpoint pairs to their
/// doubled/diagonal forms.
inline FactorOperator operator*(const FactorOperator& a, const FactorOperator& b) {
    if (!(a.dims == b.dims)) throw std::invalid_argument("FactorOperator: dims mismatch");
    FactorOperator out{a.dims, {}};
    for (const auto& ta : a.terms) {
        for (const auto& tb : b.terms) {
            Eigen::Matrix2cd r = ta.r * tb.r;
            if (r(0, 0) == 0.0 && r(0, 1) == 0.0 && r(1, 0) == 0.0 && r(1, 1) == 0.0) continue;
            out.terms.push_back(KronTerm{ta.q * tb.q, ta.p * tb.p, r});
        }
    }
    return out;
}

inline FactorOperator operator-(const FactorOperator& a, const FactorOperator& b) {
    FactorOperator out = a;
    out += b.scaled(-1.0);
    return out;
}

}  // namespace opmech

#endif  // OPMECH_HYBRID_HPP
