#include "hmod/module_space.hpp"

#include <string>

namespace hmod {

void ModuleSpec::validate() const {
    if (m < 1 || d < 1)
        throw ContractViolation("ModuleSpec: dimensions must be positive, got m=" +
                                std::to_string(m) + " d=" + std::to_string(d));
}

ModuleVector::ModuleVector(ModuleSpec spec, ComplexMatrix mat)
    : spec_(spec), mat_(std::move(mat)) {
    spec_.validate();
    require_finite(mat_, "ModuleVector");
    if (mat_.rows() != spec_.m || mat_.cols() != spec_.d)
        throw ContractViolation("ModuleVector: matrix is " + std::to_string(mat_.rows()) + "x" +
                                std::to_string(mat_.cols()) + " but spec requires " +
                                std::to_string(spec_.m) + "x" + std::to_string(spec_.d));
}

AlgebraElement::AlgebraElement(ComplexMatrix mat) : mat_(std::move(mat)) {
    require_finite(mat_, "AlgebraElement");
    if (mat_.rows() != mat_.cols())
        throw ContractViolation("AlgebraElement: matrix must be square, got " +
                                std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()));
}

static void require_same_spec(const ModuleVector& x, const ModuleVector& y, const char* op) {
    if (!(x.spec() == y.spec()))
        throw ContractViolation(std::string(op) + ": module spec mismatch, (" +
                                std::to_string(x.m()) + "," + std::to_string(x.d()) + ") vs (" +
                                std::to_string(y.m()) + "," + std::to_string(y.d()) + ")");
}

AlgebraElement inner(const ModuleVector& x, const ModuleVector& y) {
    require_same_spec(x, y, "inner");
    return AlgebraElement(x.mat().adjoint() * y.mat());
}

ModuleVector right_act(const ModuleVector& x, const AlgebraElement& a) {
    if (x.d() != a.d())
        throw ContractViolation("right_act: algebra dimension " + std::to_string(a.d()) +
                                " does not match module d=" + std::to_string(x.d()));
    return ModuleVector(x.spec(), x.mat() * a.mat());
}

HermitianMatrix abs_sq(const ModuleVector& x) {
    return HermitianMatrix(x.mat().adjoint() * x.mat());
}

double module_norm(const ModuleVector& x) { return op_norm(x.mat()); }

OrderReport cauchy_schwarz_gap(const ModuleVector& x, const ModuleVector& y,
                               const ToleranceConfig& tol) {
    require_same_spec(x, y, "cauchy_schwarz_gap");
    const ComplexMatrix yx = y.mat().adjoint() * x.mat(); // <y, x>
    HermitianMatrix lhs(yx * yx.adjoint(), tol.hermitian_tol);
    const double x_inner_norm = op_norm(x.mat().adjoint() * x.mat());
    HermitianMatrix rhs(x_inner_norm * (y.mat().adjoint() * y.mat()), tol.hermitian_tol);
    return loewner_leq(lhs, rhs, tol);
}

} // namespace hmod
