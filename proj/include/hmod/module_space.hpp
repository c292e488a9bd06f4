#pragma once

#include "hmod/linalg.hpp"

namespace hmod {

// Shape of the module X = M_{m x d}(C) over the algebra A = M_d(C).
// d = 1 recovers the classical Hilbert space C^m.
struct ModuleSpec {
    int m = 1;
    int d = 1;

    void validate() const;
    // d > m makes every inner product singular; allowed but worth flagging.
    bool inner_products_singular() const noexcept { return d > m; }
    friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

// Element of the module: an m x d complex matrix.
class ModuleVector {
  public:
    ModuleVector(ModuleSpec spec, ComplexMatrix mat);

    const ModuleSpec& spec() const noexcept { return spec_; }
    const ComplexMatrix& mat() const noexcept { return mat_; }
    int m() const noexcept { return spec_.m; }
    int d() const noexcept { return spec_.d; }

  private:
    ModuleSpec spec_;
    ComplexMatrix mat_;
};

// Element of the algebra A = M_d(C).
class AlgebraElement {
  public:
    explicit AlgebraElement(ComplexMatrix mat);

    int d() const noexcept { return static_cast<int>(mat_.rows()); }
    const ComplexMatrix& mat() const noexcept { return mat_; }

  private:
    ComplexMatrix mat_;
};

// <x, y> = x* y. Conjugate-linear in the first argument.
AlgebraElement inner(const ModuleVector& x, const ModuleVector& y);

// x . a, the right action of the algebra.
ModuleVector right_act(const ModuleVector& x, const AlgebraElement& a);

// |x|^2 = <x, x>, positive semidefinite.
HermitianMatrix abs_sq(const ModuleVector& x);

// ||x|| = ||<x,x>||^{1/2}, computed as the largest singular value of the
// m x d matrix (the two routes agree; see the invariant tests).
double module_norm(const ModuleVector& x);

// Cauchy-Schwarz comparison <y,x><x,y> <= ||<x,x>|| <y,y>.
OrderReport cauchy_schwarz_gap(const ModuleVector& x, const ModuleVector& y,
                               const ToleranceConfig& tol = {});

} // namespace hmod
