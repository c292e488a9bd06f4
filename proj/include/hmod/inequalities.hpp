#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmod/module_space.hpp"

namespace hmod {

// One verifier per catalogued inequality. Tags are the wire format.
enum class InequalityId {
    bessel_3_1,
    lemma_3_2,
    bombieri_3_3,
    bombieri_cor_3_4,
    orth_ranges_3_5,
    invertible_3_6,
    scalar_comb_3_7,
    mpf_3_8,
    boas_bellman_3_9,
    bn_lemma_3_10,
    thm_3_11,
    remark_3_12,
    cauchy_schwarz,
};

inline constexpr int kInequalityCount = 13;

struct InequalityInfo {
    InequalityId id;
    std::string_view tag;      // snake_case wire tag
    std::string_view citation; // theorem / equation label
    std::string_view statement;
    std::string_view fields; // required instance fields, human readable
    bool has_branches;
};

const std::array<InequalityInfo, kInequalityCount>& inequality_registry();
const InequalityInfo& inequality_info(InequalityId id);
std::string_view to_tag(InequalityId id);
InequalityId id_from_tag(std::string_view tag); // throws ValidationError
std::vector<InequalityId> all_inequality_ids();

enum class Branch { first, second };
std::string_view to_string(Branch b);
Branch branch_from_string(std::string_view s); // throws ValidationError

enum class ScalarCombForm { squared, as_printed };

// Scalar Gram data max-ed and summed into every right-hand side of the suite.
struct GramSummary {
    RealMatrix gram_norms;        // ||<y_i, y_j>||, symmetric, nonneg
    std::vector<double> row_sums; // sum_j gram_norms(i, j)
    double max_row_sum = 0.0;
    int max_row_index = 0;
    double max_diag = 0.0; // max_i ||y_i||^2
    int max_diag_index = 0;
    double offdiag_sq_sum = 0.0; // sum_{i != j} ||<y_i,y_j>||^2
    double max_offdiag = 0.0;    // max_{i != j} ||<y_i,y_j>||
    int max_offdiag_row = 0;
    int max_offdiag_col = 0;
    double max_offdiag_row_sq_sum = 0.0; // max_i sum_{j != i} ||<y_i,y_j>||^2
    int max_offdiag_row_sq_index = 0;
};

GramSummary gram_summary(const std::vector<ModuleVector>& y);
// Same data for Hilbert-space operators with <T, S> = T* S.
GramSummary gram_summary(const std::vector<ComplexMatrix>& t);

// Common checker result: the Loewner comparison plus everything a report
// needs (both sides, Gram data, named intermediate scalars, tie-broken
// argmax indices and the observed anti-Hermitian residual).
struct CheckResult {
    OrderReport order;
    HermitianMatrix lhs;
    HermitianMatrix rhs;
    std::optional<GramSummary> gram;
    std::map<std::string, double> scalars;
    std::map<std::string, long> indices;
    double anti_hermitian_residual = 0.0;
};

// Eq. (3.1): sum_i |<e_i, x>|^2 <= |x|^2 for a unit orthogonal family.
CheckResult check_bessel(const std::vector<ModuleVector>& e, const ModuleVector& x,
                         const ToleranceConfig& tol = {});

// Lemma 3.2: a* c b + b* c* a <= ||c|| (|a|^2 + |b|^2).
CheckResult check_lemma_3_2(const AlgebraElement& a, const AlgebraElement& b,
                            const AlgebraElement& c, const ToleranceConfig& tol = {});

// Eq. (3.2): |sum_i y_i a_i|^2 <= (sum_i |a_i|^2) max_i sum_j ||<y_i,y_j>||.
CheckResult check_bombieri(const std::vector<ModuleVector>& y,
                           const std::vector<AlgebraElement>& a,
                           const ToleranceConfig& tol = {});

// Corollary 3.4 with S = sum_i |<y_i,x>|^2:
// S^2 <= |x|^2 ||S|| max_i sum_j ||<y_i,y_j>||.
CheckResult check_bombieri_cor(const std::vector<ModuleVector>& y, const ModuleVector& x,
                               const ToleranceConfig& tol = {});

// Corollary 3.5 for operators with orthogonal ranges (T_i* T_j = 0):
// |sum_i T_i S_i|^2 <= (sum_i |S_i|^2) max_i ||T_i||^2.
CheckResult check_orth_ranges(const std::vector<ComplexMatrix>& t,
                              const std::vector<ComplexMatrix>& s,
                              const ToleranceConfig& tol = {});

// Corollary 3.6 for invertible T:
// |T S1 + (T*)^{-1} S2|^2 <= (|S1|^2 + |S2|^2)(1 + max(||T||^2, ||T^{-1}||^2)).
CheckResult check_invertible(const ComplexMatrix& t, const ComplexMatrix& s1,
                             const ComplexMatrix& s2, const ToleranceConfig& tol = {});

// Corollary 3.7. The squared form is canonical:
// |sum_i lambda_i T_i|^2 <= max_i |lambda_i| (sum_j |lambda_j|) sum_i |T_i|^2.
// The as-printed form compares |sum_i lambda_i T_i| (degree one) against the
// same right-hand side and is flagged experimental in the report.
CheckResult check_scalar_comb(const std::vector<Complex>& lambda,
                              const std::vector<ComplexMatrix>& t,
                              const ToleranceConfig& tol = {},
                              ScalarCombForm form = ScalarCombForm::squared);

// Eq. (3.3): |sum_i a_i <y_i,x>|^2 <=
//   |x|^2 (sum_i ||a_i||^2) [max_i ||y_i||^2 + (sum_{i!=j} ||<y_i,y_j>||^2)^{1/2}].
CheckResult check_mpf(const std::vector<ModuleVector>& y, const ModuleVector& x,
                      const std::vector<AlgebraElement>& a, const ToleranceConfig& tol = {});

// Eq. (3.4): check_mpf specialized to a_i = <x, y_i>.
CheckResult check_boas_bellman(const std::vector<ModuleVector>& y, const ModuleVector& x,
                               const ToleranceConfig& tol = {});

// Eq. (3.5): |sum_i y_i a_i|^2 <= max_i ||y_i||^2 sum_i |a_i|^2 + B_n, with
//   B_n(first)  = (n-1) sqrt(n) max_i ||a_i|| max_{i!=j} ||<y_i,y_j>|| (sum_i |a_i|^2)^{1/2}
//   B_n(second) = sqrt(n-1) (max_i sum_{j!=i} ||<y_i,y_j>||^2)^{1/2}
//                 (sum_i ||a_i||^2)^{1/2} (sum_i |a_i|^2)^{1/2}.
CheckResult check_bn_lemma(const std::vector<ModuleVector>& y,
                           const std::vector<AlgebraElement>& a, Branch branch,
                           const ToleranceConfig& tol = {});

// Theorem 3.11 with Q = ||sum_i a_i a_i*||:
// |sum_i a_i <y_i,x>|^2 <= |x|^2 Q^{1/2} [max_i ||y_i||^2 Q^{1/2} + B_n].
CheckResult check_thm_3_11(const std::vector<ModuleVector>& y, const ModuleVector& x,
                           const std::vector<AlgebraElement>& a, Branch branch,
                           const ToleranceConfig& tol = {});

// Remark 3.12 for orthogonal families, S = sum_i |<y_i,x>|^2:
// S^2 <= |x|^2 max_i ||y_i||^2 ||S||.
CheckResult check_remark_3_12(const std::vector<ModuleVector>& y, const ModuleVector& x,
                              const ToleranceConfig& tol = {});

// Section-2 Cauchy-Schwarz as a checker.
CheckResult check_cauchy_schwarz(const ModuleVector& x, const ModuleVector& y,
                                 const ToleranceConfig& tol = {});

// Tagged bundle of inputs for one named inequality; the wire format of the
// whole suite.
struct InequalityInstance {
    InequalityId id = InequalityId::cauchy_schwarz;
    std::vector<ModuleVector> vectors;      // family first, x last where present
    std::vector<AlgebraElement> coefficients;
    std::vector<Complex> scalars;           // scalar_comb_3_7 only
    std::vector<ComplexMatrix> operators;   // operator corollaries
    std::map<std::string, std::string> meta;

    std::optional<Branch> branch() const;        // parsed from meta["branch"]
    std::optional<ScalarCombForm> form() const;  // parsed from meta["form"]
};

// Throws ValidationError listing every arity/shape problem.
void validate_instance(const InequalityInstance& inst);

struct EvalReport {
    InequalityId id;
    std::map<std::string, long> dims;
    std::optional<Branch> branch;          // set for the branchy checkers
    std::optional<ScalarCombForm> form;    // set for scalar_comb_3_7
    CheckResult result;
};

// Validates, dispatches to the matching checker, returns the full report.
EvalReport evaluate(const InequalityInstance& inst, const ToleranceConfig& tol = {});

} // namespace hmod
