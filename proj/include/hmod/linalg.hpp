#pragma once

#include "hmod/matrix.hpp"

namespace hmod {

struct ToleranceConfig {
    double psd_rel_tol = 1e-9;      // PSD slack, relative to max(1, ||rhs||)
    double hermitian_tol = 1e-10;   // admissible anti-Hermitian residual (max-norm)
    double equality_rel_tol = 1e-7; // near-equality detection band

    // All tolerances must be strictly positive and < 1e-2.
    void validate() const;
};

// Self-adjoint element. Construction accepts any square matrix whose
// anti-Hermitian part is within hermitian_tol * max(1, ||M||) in max-norm,
// and stores the symmetrization (M + M*)/2.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(const ComplexMatrix& raw, double hermitian_tol = 1e-10);

    Eigen::Index dim() const noexcept { return mat_.rows(); }
    const ComplexMatrix& mat() const noexcept { return mat_; }

    // Max-norm of (raw - raw*) observed at construction.
    double anti_hermitian_residual() const noexcept { return residual_; }

  private:
    ComplexMatrix mat_;
    double residual_ = 0.0;
};

struct EigenDecomposition {
    RealVector eigenvalues; // ascending
    ComplexMatrix eigenvectors;
};

// Spectral decomposition M = V diag(lambda) V*.
EigenDecomposition hermitian_eigen(const HermitianMatrix& m);

// Positive square root with eigenvalues in [-psd_rel_tol*scale, 0) clamped to
// zero. Throws PreconditionViolation if an eigenvalue sits below that band.
HermitianMatrix psd_sqrt(const HermitianMatrix& m, const ToleranceConfig& tol = {});

struct PolarDecomposition {
    ComplexMatrix partial_isometry; // U with U U* U = U, zero on the kernel of P
    HermitianMatrix positive_part;  // P = (R* R)^{1/2}
};

// R = U P via SVD. Rank deficiency is allowed: singular directions with
// sigma <= 1e-12 * sigma_max get zero columns in U.
PolarDecomposition polar(const ComplexMatrix& r);

// Largest singular value (the C*-norm on matrix algebras).
double op_norm(const ComplexMatrix& m);

// Outcome of one Loewner comparison lhs <= rhs.
struct OrderReport {
    HermitianMatrix gap; // rhs - lhs, symmetrized
    double min_eig_gap;
    double rhs_scale; // max(1, ||rhs||)
    bool holds;
    double relative_slack; // min_eig_gap / rhs_scale
    bool near_equality;    // |min_eig_gap| <= equality_rel_tol * rhs_scale
};

OrderReport loewner_leq(const HermitianMatrix& lhs, const HermitianMatrix& rhs,
                        const ToleranceConfig& tol = {});

} // namespace hmod
