#include "hmod/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <sstream>

namespace hmod {

void ToleranceConfig::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0) || !(v < 1e-2)) {
            std::ostringstream os;
            os << "tolerance " << name << " must lie in (0, 1e-2), got " << v;
            throw ContractViolation(os.str());
        }
    };
    check(psd_rel_tol, "psd_rel_tol");
    check(hermitian_tol, "hermitian_tol");
    check(equality_rel_tol, "equality_rel_tol");
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& raw, double hermitian_tol) {
    if (raw.rows() != raw.cols())
        throw ContractViolation("HermitianMatrix: matrix must be square, got " +
                                std::to_string(raw.rows()) + "x" + std::to_string(raw.cols()));
    require_finite(raw, "HermitianMatrix");
    residual_ = max_abs(raw - raw.adjoint());
    // Cheap path first: max(1, ||raw||) >= 1, so residual <= tol already passes.
    if (residual_ > hermitian_tol) {
        const double scale = std::max(1.0, op_norm(raw));
        if (residual_ > hermitian_tol * scale) {
            std::ostringstream os;
            os << "HermitianMatrix: anti-Hermitian residual " << residual_
               << " exceeds " << hermitian_tol << " * max(1, ||M||) = " << hermitian_tol * scale;
            throw NumericalFailure(os.str());
        }
    }
    mat_ = 0.5 * (raw + raw.adjoint());
}

EigenDecomposition hermitian_eigen(const HermitianMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.mat());
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("hermitian_eigen: eigensolver did not converge for dimension " +
                               std::to_string(m.dim()));
    return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianMatrix psd_sqrt(const HermitianMatrix& m, const ToleranceConfig& tol) {
    EigenDecomposition eig = hermitian_eigen(m);
    const Eigen::Index n = m.dim();
    // For a Hermitian matrix the operator norm is the largest |eigenvalue|.
    const double norm = std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(n - 1)));
    const double scale = std::max(1.0, norm);
    RealVector lambda = eig.eigenvalues;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lambda(i) < -tol.psd_rel_tol * scale) {
            std::ostringstream os;
            os << "psd_sqrt: matrix is not positive semidefinite, eigenvalue " << lambda(i)
               << " below -" << tol.psd_rel_tol << " * " << scale;
            throw PreconditionViolation(os.str());
        }
        lambda(i) = lambda(i) > 0.0 ? std::sqrt(lambda(i)) : 0.0;
    }
    ComplexMatrix root =
        eig.eigenvectors * lambda.asDiagonal() * eig.eigenvectors.adjoint();
    return HermitianMatrix(root, tol.hermitian_tol);
}

PolarDecomposition polar(const ComplexMatrix& r) {
    require_finite(r, "polar");
    Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalFailure("polar: SVD did not converge for " + std::to_string(r.rows()) +
                               "x" + std::to_string(r.cols()));
    const RealVector& sigma = svd.singularValues();
    const double cutoff = sigma.size() > 0 ? 1e-12 * sigma(0) : 0.0;

    // U = U_svd D V* with D zeroing the numerically null directions; this is a
    // partial isometry exactly (D is a 0/1 diagonal).
    RealVector mask = RealVector::Zero(sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        mask(i) = (sigma(i) > cutoff && sigma(i) > 0.0) ? 1.0 : 0.0;

    ComplexMatrix u = svd.matrixU() * mask.asDiagonal() * svd.matrixV().adjoint();
    ComplexMatrix p = svd.matrixV() * sigma.asDiagonal() * svd.matrixV().adjoint();
    return {std::move(u), HermitianMatrix(p)};
}

double op_norm(const ComplexMatrix& m) {
    require_finite(m, "op_norm");
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    if (svd.info() != Eigen::Success)
        throw NumericalFailure("op_norm: SVD did not converge for " + std::to_string(m.rows()) +
                               "x" + std::to_string(m.cols()));
    return svd.singularValues()(0);
}

OrderReport loewner_leq(const HermitianMatrix& lhs, const HermitianMatrix& rhs,
                        const ToleranceConfig& tol) {
    tol.validate();
    if (lhs.dim() != rhs.dim())
        throw ContractViolation("loewner_leq: dimension mismatch, lhs " +
                                std::to_string(lhs.dim()) + " vs rhs " + std::to_string(rhs.dim()));
    HermitianMatrix gap(rhs.mat() - lhs.mat(), tol.hermitian_tol);
    EigenDecomposition gap_eig = hermitian_eigen(gap);
    EigenDecomposition rhs_eig = hermitian_eigen(rhs);
    const Eigen::Index n = rhs.dim();
    const double rhs_norm =
        std::max(std::abs(rhs_eig.eigenvalues(0)), std::abs(rhs_eig.eigenvalues(n - 1)));
    const double scale = std::max(1.0, rhs_norm);
    const double min_eig = gap_eig.eigenvalues(0);
    return OrderReport{
        .gap = std::move(gap),
        .min_eig_gap = min_eig,
        .rhs_scale = scale,
        .holds = min_eig >= -tol.psd_rel_tol * scale,
        .relative_slack = min_eig / scale,
        .near_equality = std::abs(min_eig) <= tol.equality_rel_tol * scale,
    };
}

} // namespace hmod
