#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "hmod/errors.hpp"

namespace hmod {

using Complex = std::complex<double>;

// Dense complex matrix, the universal carrier. Serialized row-major; the
// in-memory layout is Eigen's default.
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline bool is_finite(const ComplexMatrix& m) noexcept {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

inline void require_finite(const ComplexMatrix& m, const std::string& context) {
    if (m.rows() < 1 || m.cols() < 1)
        throw ContractViolation(context + ": matrix dimensions must be positive, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (!is_finite(m))
        throw ValidationError(context + ": matrix contains a non-finite entry");
}

// Entrywise max modulus.
inline double max_abs(const ComplexMatrix& m) noexcept {
    double r = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            r = std::max(r, std::abs(m(i, j)));
    return r;
}

} // namespace hmod
