#include "hmod/inequalities.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace hmod {

namespace {

constexpr std::array<InequalityInfo, kInequalityCount> kRegistry{{
    {InequalityId::bessel_3_1, "bessel_3_1", "Theorem 3.1 / Eq. (3.1)",
     "sum_i |<e_i,x>|^2 <= |x|^2 for a unit orthogonal family",
     "vectors: [e_1..e_n, x], n >= 1", false},
    {InequalityId::lemma_3_2, "lemma_3_2", "Lemma 3.2",
     "a*cb + b*c*a <= ||c|| (|a|^2 + |b|^2)", "coefficients: [a, b, c]", false},
    {InequalityId::bombieri_3_3, "bombieri_3_3", "Theorem 3.3 / Eq. (3.2)",
     "|sum_i y_i a_i|^2 <= (sum_i |a_i|^2) max_i sum_j ||<y_i,y_j>||",
     "vectors: [y_1..y_n]; coefficients: [a_1..a_n]", false},
    {InequalityId::bombieri_cor_3_4, "bombieri_cor_3_4", "Corollary 3.4",
     "S^2 <= |x|^2 ||S|| max_i sum_j ||<y_i,y_j>||, S = sum_i |<y_i,x>|^2",
     "vectors: [y_1..y_n, x]", false},
    {InequalityId::orth_ranges_3_5, "orth_ranges_3_5", "Corollary 3.5",
     "|sum_i T_i S_i|^2 <= (sum_i |S_i|^2) max_i ||T_i||^2 for T_i* T_j = 0",
     "operators: [T_1..T_n (k x h), S_1..S_n (h x h)]", false},
    {InequalityId::invertible_3_6, "invertible_3_6", "Corollary 3.6",
     "|T S1 + (T*)^{-1} S2|^2 <= (|S1|^2 + |S2|^2)(1 + max(||T||^2, ||T^{-1}||^2))",
     "operators: [T, S1, S2], square, equal dims, T invertible", false},
    {InequalityId::scalar_comb_3_7, "scalar_comb_3_7", "Corollary 3.7",
     "|sum_i l_i T_i|^2 <= max_i |l_i| (sum_j |l_j|) sum_i |T_i|^2 (squared form)",
     "scalars: [l_1..l_n]; operators: [T_1..T_n (square)]; meta.form optional", false},
    {InequalityId::mpf_3_8, "mpf_3_8", "Theorem 3.8 / Eq. (3.3)",
     "|sum_i a_i <y_i,x>|^2 <= |x|^2 sum_i ||a_i||^2 [max_i ||y_i||^2 + offdiag root]",
     "vectors: [y_1..y_n, x]; coefficients: [a_1..a_n]", false},
    {InequalityId::boas_bellman_3_9, "boas_bellman_3_9", "Corollary 3.9 / Eq. (3.4)",
     "Eq. (3.3) with a_i = <x, y_i>", "vectors: [y_1..y_n, x]", false},
    {InequalityId::bn_lemma_3_10, "bn_lemma_3_10", "Lemma 3.10 / Eq. (3.5)",
     "|sum_i y_i a_i|^2 <= max_i ||y_i||^2 sum_i |a_i|^2 + B_n (two branches)",
     "vectors: [y_1..y_n]; coefficients: [a_1..a_n]; meta.branch: first|second", true},
    {InequalityId::thm_3_11, "thm_3_11", "Theorem 3.11",
     "|sum_i a_i <y_i,x>|^2 <= |x|^2 Q^{1/2} [max_i ||y_i||^2 Q^{1/2} + B_n]",
     "vectors: [y_1..y_n, x]; coefficients: [a_1..a_n]; meta.branch: first|second", true},
    {InequalityId::remark_3_12, "remark_3_12", "Remark 3.12",
     "S^2 <= |x|^2 max_i ||y_i||^2 ||S|| for an orthogonal family",
     "vectors: [y_1..y_n, x], family orthogonal", false},
    {InequalityId::cauchy_schwarz, "cauchy_schwarz", "Cauchy-Schwarz (preliminaries)",
     "<y,x><x,y> <= ||<x,x>|| <y,y>", "vectors: [x, y]", false},
}};

HermitianMatrix track_herm(const ComplexMatrix& raw, const ToleranceConfig& tol,
                           double& residual) {
    HermitianMatrix h(raw, tol.hermitian_tol);
    residual = std::max(residual, h.anti_hermitian_residual());
    return h;
}

void require_same_family_spec(const std::vector<ModuleVector>& y, const char* who) {
    if (y.empty())
        throw ContractViolation(std::string(who) + ": empty family");
    for (std::size_t i = 1; i < y.size(); ++i)
        if (!(y[i].spec() == y[0].spec()))
            throw ContractViolation(std::string(who) + ": family member " + std::to_string(i) +
                                    " has a different module spec");
}

void require_vector_matches(const ModuleVector& x, const ModuleVector& ref, const char* who) {
    if (!(x.spec() == ref.spec()))
        throw ContractViolation(std::string(who) + ": x does not match the family module spec");
}

void require_coeff_dims(const std::vector<AlgebraElement>& a, int d, const char* who) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].d() != d)
            throw ContractViolation(std::string(who) + ": coefficient " + std::to_string(i) +
                                    " has dimension " + std::to_string(a[i].d()) +
                                    ", expected " + std::to_string(d));
}

GramSummary summarize_gram(const RealMatrix& g) {
    const Eigen::Index n = g.rows();
    GramSummary out;
    out.gram_norms = g;
    out.row_sums.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        double rs = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            rs += g(i, j);
        out.row_sums[static_cast<std::size_t>(i)] = rs;
        if (rs > out.max_row_sum || i == 0) {
            out.max_row_sum = rs;
            out.max_row_index = static_cast<int>(i);
        }
        if (g(i, i) > out.max_diag || i == 0) {
            out.max_diag = g(i, i);
            out.max_diag_index = static_cast<int>(i);
        }
        double row_off_sq = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j)
                continue;
            out.offdiag_sq_sum += g(i, j) * g(i, j);
            row_off_sq += g(i, j) * g(i, j);
            if (g(i, j) > out.max_offdiag) {
                out.max_offdiag = g(i, j);
                out.max_offdiag_row = static_cast<int>(i);
                out.max_offdiag_col = static_cast<int>(j);
            }
        }
        if (row_off_sq > out.max_offdiag_row_sq_sum || i == 0) {
            out.max_offdiag_row_sq_sum = row_off_sq;
            out.max_offdiag_row_sq_index = static_cast<int>(i);
        }
    }
    return out;
}

std::map<std::string, long> gram_indices(const GramSummary& g) {
    return {
        {"max_row_sum", g.max_row_index},
        {"max_diag", g.max_diag_index},
        {"max_offdiag_row", g.max_offdiag_row},
        {"max_offdiag_col", g.max_offdiag_col},
        {"max_offdiag_row_sq_sum", g.max_offdiag_row_sq_index},
    };
}

} // namespace

const std::array<InequalityInfo, kInequalityCount>& inequality_registry() { return kRegistry; }

const InequalityInfo& inequality_info(InequalityId id) {
    for (const auto& info : kRegistry)
        if (info.id == id)
            return info;
    throw ContractViolation("unknown inequality id");
}

std::string_view to_tag(InequalityId id) { return inequality_info(id).tag; }

InequalityId id_from_tag(std::string_view tag) {
    for (const auto& info : kRegistry)
        if (info.tag == tag)
            return info.id;
    throw ValidationError("unknown inequality tag: '" + std::string(tag) + "'");
}

std::vector<InequalityId> all_inequality_ids() {
    std::vector<InequalityId> ids;
    ids.reserve(kRegistry.size());
    for (const auto& info : kRegistry)
        ids.push_back(info.id);
    return ids;
}

std::string_view to_string(Branch b) { return b == Branch::first ? "first" : "second"; }

Branch branch_from_string(std::string_view s) {
    if (s == "first")
        return Branch::first;
    if (s == "second")
        return Branch::second;
    throw ValidationError("branch must be 'first' or 'second', got '" + std::string(s) + "'");
}

GramSummary gram_summary(const std::vector<ModuleVector>& y) {
    require_same_family_spec(y, "gram_summary");
    const Eigen::Index n = static_cast<Eigen::Index>(y.size());
    RealMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = op_norm(y[static_cast<std::size_t>(i)].mat().adjoint() *
                                     y[static_cast<std::size_t>(j)].mat());
            g(i, j) = v;
            g(j, i) = v; // ||<y_i,y_j>|| = ||<y_j,y_i>||
        }
    return summarize_gram(g);
}

GramSummary gram_summary(const std::vector<ComplexMatrix>& t) {
    if (t.empty())
        throw ContractViolation("gram_summary: empty operator family");
    const Eigen::Index n = static_cast<Eigen::Index>(t.size());
    RealMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = op_norm(t[static_cast<std::size_t>(i)].adjoint() *
                                     t[static_cast<std::size_t>(j)]);
            g(i, j) = v;
            g(j, i) = v;
        }
    return summarize_gram(g);
}

CheckResult check_bessel(const std::vector<ModuleVector>& e, const ModuleVector& x,
                         const ToleranceConfig& tol) {
    tol.validate();
    require_same_family_spec(e, "check_bessel");
    require_vector_matches(x, e[0], "check_bessel");
    GramSummary gram = gram_summary(e);
    const std::size_t n = e.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double norm_i = std::sqrt(gram.gram_norms(static_cast<Eigen::Index>(i),
                                                        static_cast<Eigen::Index>(i)));
        if (std::abs(norm_i - 1.0) > tol.equality_rel_tol) {
            std::ostringstream os;
            os << "check_bessel: e_" << i << " has norm " << norm_i << ", expected 1 within "
               << tol.equality_rel_tol;
            throw PreconditionViolation(os.str());
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram.gram_norms(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) >
                tol.psd_rel_tol) {
                std::ostringstream os;
                os << "check_bessel: pair (e_" << i << ", e_" << j << ") is not orthogonal, "
                   << "||<e_i,e_j>|| = "
                   << gram.gram_norms(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                throw PreconditionViolation(os.str());
            }

    double residual = 0.0;
    const int d = x.d();
    ComplexMatrix lhs_raw = ComplexMatrix::Zero(d, d);
    for (const auto& ei : e) {
        const ComplexMatrix g = ei.mat().adjoint() * x.mat(); // <e_i, x>
        lhs_raw += g.adjoint() * g;
    }
    HermitianMatrix lhs = track_herm(lhs_raw, tol, residual);
    HermitianMatrix rhs = track_herm(x.mat().adjoint() * x.mat(), tol, residual);
    CheckResult out{.order = loewner_leq(lhs, rhs, tol),
                    .lhs = std::move(lhs),
                    .rhs = std::move(rhs),
                    .gram = std::move(gram),
                    .scalars = {},
                    .indices = {},
                    .anti_hermitian_residual = residual};
    out.indices = gram_indices(*out.gram);
    return out;
}

CheckResult check_lemma_3_2(const AlgebraElement& a, const AlgebraElement& b,
                            const AlgebraElement& c, const ToleranceConfig& tol) {
    tol.validate();
    if (a.d() != b.d() || a.d() != c.d())
        throw ContractViolation("check_lemma_3_2: dimensions differ: a=" + std::to_string(a.d()) +
                                " b=" + std::to_string(b.d()) + " c=" + std::to_string(c.d()));
    const double c_norm = op_norm(c.mat());
    double residual = 0.0;
    ComplexMatrix lhs_raw =
        a.mat().adjoint() * c.mat() * b.mat() + b.mat().adjoint() * c.mat().adjoint() * a.mat();
    ComplexMatrix rhs_raw =
        c_norm * (a.mat().adjoint() * a.mat() + b.mat().adjoint() * b.mat());
    HermitianMatrix lhs = track_herm(lhs_raw, tol, residual);
    HermitianMatrix rhs = track_herm(rhs_raw, tol, residual);
    return CheckResult{.order = loewner_leq(lhs, rhs, tol),
                       .lhs = std::move(lhs),
                       .rhs = std::move(rhs),
                       .gram = std::nullopt,
                       .scalars = {{"c_op_norm", c_norm}},
                       .indices = {},
                       .anti_hermitian_residual = residual};
}

CheckResult check_bombieri(const std::vector<ModuleVector>& y,
                           const std::vector<AlgebraElement>& a, const ToleranceConfig& tol) {
    tol.validate();
    require_same_family_spec(y, "check_bombieri");
    if (a.size() != y.size())
        throw ContractViolation("check_bombieri: " + std::to_string(y.size()) + " vectors vs " +
                                std::to_string(a.size()) + " coefficients");
    require_coeff_dims(a, y[0].d(), "check_bombieri");

    GramSummary gram = gram_summary(y);
    const int m = y[0].m();
    const int d = y[0].d();
    ComplexMatrix sum = ComplexMatrix::Zero(m, d);
    ComplexMatrix coeff_sq = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < y.size(); ++i) {
        sum += y[i].mat() * a[i].mat();
        coeff_sq += a[i].mat().adjoint() * a[i].mat();
    }
    double residual = 0.0;
    HermitianMatrix lhs = track_herm(sum.adjoint() * sum, tol, residual);
    HermitianMatrix rhs = track_herm(gram.max_row_sum * coeff_sq, tol, residual);
    CheckResult out{.order = loewner_leq(lhs, rhs, tol),
                    .lhs = std::move(lhs),
                    .rhs = std::move(rhs),
                    .gram = std::move(gram),
                    .scalars = {},
                    .indices = {},
                    .anti_hermitian_residual = residual};
    out.scalars["coeff"] = out.gram->max_row_sum;
    out.indices = gram_indices(*out.gram);
    return out;
}

CheckResult check_bombieri_cor(const std::vector<ModuleVector>& y, const ModuleVector& x,
                               const ToleranceConfig& tol) {
    tol.validate();
    require_same_family_spec(y, "check_bombieri_cor");
    require_vector_matches(x, y[0], "check_bombieri_cor");
    GramSummary gram = gram_summary(y);
    const int d = x.d();
    double residual = 0.0;
    ComplexMatrix s_raw = ComplexMatrix::Zero(d, d);
    for (const auto& yi : y) {
        const ComplexMatrix b = yi.mat().adjoint() * x.mat(); // <y_i, x>
        s_raw += b.adjoint() * b;
    }
    HermitianMatrix s = track_herm(s_raw, tol, residual);
    const double s_norm = op_norm(s.mat());
    HermitianMatrix lhs = track_herm(s.mat() * s.mat(), tol, residual);
    const double coeff = s_norm * gram.max_row_sum;
    HermitianMatrix rhs = track_herm(coeff * (x.mat().adjoint() * x.mat()), tol, residual);
    CheckResult out{.order = loewner_leq(lhs, rhs, tol),
                    .lhs = std::move(lhs),
                    .rhs = std::move(rhs),
                    .gram = std::move(gram),
                    .scalars = {{"s_op_norm", s_norm}, {"coeff", coeff}},
                    .indices = {},
                    .anti_hermitian_residual = residual};
    out.indices = gram_indices(*out.gram);
    return out;
}

CheckResult check_orth_ranges(const std::vector<ComplexMatrix>& t,
                              const std::vector<ComplexMatrix>& s, const ToleranceConfig& tol) {
    tol.validate();
    if (t.empty())
        throw ContractViolation("check_orth_ranges: empty family");
    if (t.size() != s.size())
        throw ContractViolation("check_orth_ranges: " + std::to_string(t.size()) + " T vs " +
                                std::to_string(s.size()) + " S operators");
    const Eigen::Index k = t[0].rows();
    const Eigen::Index h = t[0].cols();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].rows() != k || t[i].cols() != h)
            throw ContractViolation("check_orth_ranges: T_" + std::to_string(i) +
                                    " has inconsistent shape");
        if (s[i].rows() != h || s[i].cols() != h)
            throw ContractViolation("check_orth_ranges: S_" + std::to_string(i) + " must be " +
                                    std::to_string(h) + "x" + std::to_string(h));
    }
    GramSummary gram = gram_summary(t);
    const double scale = std::max(1.0, gram.max_diag);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (gram.gram_norms(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) >
                tol.psd_rel_tol * scale) {
                std::ostringstream os;
                os << "check_orth_ranges: ranges of (T_" << i << ", T_" << j
                   << ") are not orthogonal, ||T_i* T_j|| = "
                   << gram.gram_norms(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                throw PreconditionViolation(os.str());
            }

    double residual = 0.0;
    ComplexMatrix sum = ComplexMatrix::Zero(k, h);
    ComplexMatrix s_sq = ComplexMatrix::Zero(h, h);
    for (std::size_t i = 0; i < t.size(); ++i) {
        sum += t[i] * s[i];
        s_sq += s[i].adjoint() * s[i];
    }
    HermitianMatrix lhs = track_herm(sum.adjoint() * sum, tol, residual);
    HermitianMatrix rhs = track_herm(gram.max_diag * s_sq, tol, residual);
    CheckResult out{.order = loewner_leq(lhs, rhs, tol),
                    .lhs = std::move(lhs),
                    .rhs = std::move(rhs),
                    .gram = std::move(gram),
                    .scalars = {},
                    .indices = {},
                    .anti_hermitian_residual = residual};
    out.scalars["max_t_norm_sq"] = out.gram->max_diag;
    out.indices = gram_indices(*out.gram);
    return out;
}

CheckResult check_invertible(const ComplexMatrix& t, const ComplexMatrix& s1,
                             const ComplexMatrix& s2, const ToleranceConfig& tol) {
    tol.validate();
    if (t.rows() != t.cols())
        throw ContractViolation("check_invertible: T must be square");
    if (s1.rows() != t.rows() || s1.cols() != t.cols() || s2.rows() != t.rows() ||
        s2.cols() != t.cols())
        throw ContractViolation("check_invertible: S1 and S2 must match T's dimensions");
    require_finite(t, "check_invertible T");

    Eigen::JacobiSVD<ComplexMatrix> svd(t);
    const double sigma_max = svd.singularValues()(0);
    const double sigma_min = svd.singularValues()(t.rows() - 1);
    if (!(sigma_min > 1e-8 * sigma_max)) {
        std::ostringstream os;
        os << "check_invertible: T is numerically singular, condition number ";
        if (sigma_min > 0.0)
            os << sigma_max / sigma_min;
        else
            os << "inf";
        throw PreconditionViolation(os.str());
    }
    const double t_inv_norm = 1.0 / sigma_min;

    Eigen::PartialPivLU<ComplexMatrix> lu(t.adjoint());
    ComplexMatrix m = t * s1 + lu.solve(s2); // T S1 + (T*)^{-1} S2
    const double coeff = 1.0 + std::max(sigma_max * sigma_max, t_inv_norm * t_inv_norm);

    double residual = 0.0;
    HermitianMatrix lhs = track_herm(m.adjoint() * m, tol, residual);
    HermitianMatrix rhs =
        track_herm(coeff * (s1.adjoint() * s1 + s2.adjoint() * s2), tol, residual);
    return CheckResult{.order = loewner_leq(lhs, rhs, tol),
                       .lhs = std::move(lhs),
                       .rhs = std::move(rhs),
                       .gram = std::nullopt,
                       .scalars = {{"t_op_norm", sigma_max},
                                   {"t_inv_op_norm", t_inv_norm},
                                   {"condition_number", sigma_max / sigma_min},
                                   {"coeff", coeff}},
                       .indices = {},
                       .anti_hermitian_residual = residual};
}

CheckResult check_scalar_comb(const std::vector<Complex>& lambda,
                              const std::vector<ComplexMatrix>& t, const ToleranceConfig& tol,
                              ScalarCombForm form) {
    tol.validate();
    if (lambda.empty())
        throw ContractViolation("check_scalar_comb: empty scalar list");
    if (lambda.size() != t.size())
        throw ContractViolation("check_scalar_comb: " + std::to_string(lambda.size()) +
                                " scalars vs " + std::to_string(t.size()) + " operators");
    const Eigen::Index h = t[0].rows();
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i].rows() != h || t[i].cols() != h)
            throw ContractViolation("check_scalar_comb: T_" + std::to_string(i) +
                                    " must be square of dimension " + std::to_string(h));

    double max_abs_lambda = 0.0;
    long max_lambda_index = 0;
    double sum_abs_lambda = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const double v = std::abs(lambda[i]);
        sum_abs_lambda += v;
        if (v > max_abs_lambda) {
            max_abs_lambda = v;
            max_lambda_index = static_cast<long>(i);
        }
    }
    ComplexMatrix sum = ComplexMatrix::Zero(h, h);
    ComplexMatrix t_sq = ComplexMatrix::Zero(h, h);
    for (std::size_t i = 0; i < t.size(); ++i) {
        sum += lambda[i] * t[i];
        t_sq += t[i].adjoint() * t[i];
    }
    const double coeff = max_abs_lambda * sum_abs_lambda;

    double residual = 0.0;
    HermitianMatrix lhs_sq = track_herm(sum.adjoint() * sum, tol, residual);
    HermitianMatrix lhs =
        form == ScalarCombForm::squared ? lhs_sq : psd_sqrt(lhs_sq, tol);
    HermitianMatrix rhs = track_herm(coeff * t_sq, tol, residual);
    return CheckResult{.order = loewner_leq(lhs, rhs, tol),
                       .lhs = std::move(lhs),
                       .rhs = std::move(rhs),
                       .gram = std::nullopt,
                       .scalars = {{"max_abs_lambda", max_abs_lambda},
                                   {"sum_abs_lambda", sum_abs_lambda},
                                   {"coeff", coeff}},
                       .indices = {{"max_abs_lambda", max_lambda_index}},
                       .anti_hermitian_residual = residual};
}

CheckResult check_mpf(const std::vector<ModuleVector>& y, const ModuleVector& x,
                      const std::vector<AlgebraElement>& a, const ToleranceConfig& tol) {
    tol.validate();
    require_same_family_spec(y, "check_mpf");
    require_vector_matches(x, y[0], "check_mpf");
    if (a.size() != y.size())
        throw ContractViolation("check_mpf: " + std::to_string(y.size()) + " vectors vs " +
                                std::to_string(a.size()) + " coefficients");
    require_coeff_dims(a, x.d(), "check_mpf");

    GramSummary gram = gram_summary(y);
    const int d = x.d();
    double sum_coeff_norm_sq = 0.0;
    double max_coeff_norm = 0.0;
    long max_coeff_index = 0;
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < y.size(); ++i) {
        sum += a[i].mat() * (y[i].mat().adjoint() * x.mat());
        const double an = op_norm(a[i].mat());
        sum_coeff_norm_sq += an * an;
        if (an > max_coeff_norm) {
            max_coeff_norm = an;
            max_coeff_index = static_cast<long>(i);
        }
    }
    const double offdiag_root = std::sqrt(gram.offdiag_sq_sum);
    const double coeff = sum_coeff_norm_sq * (gram.max_diag + offdiag_root);

    double residual = 0.0;
    HermitianMatrix lhs = track_herm(sum.adjoint() * sum, tol, residual);
    HermitianMatrix rhs = track_herm(coeff * (x.mat().adjoint() * x.mat()), tol, residual);
    CheckResult out{.order = loewner_leq(lhs, rhs, tol),
                    .lhs = std::move(lhs),
                    .rhs = std::move(rhs),
                    .gram = std::move(gram),
                    .scalars = {{"sum_coeff_norm_sq", sum_coeff_norm_sq},
                                {"max_coeff_norm", max_coeff_norm},
                                {"offdiag_root", offdiag_root},
                                {"coeff", coeff}},
                    .indices = {{"max_coeff_norm", max_coeff_index}},
                    .anti_hermitian_residual = residual};
    for (const auto& [key, value] : gram_indices(*out.gram))
        out.indices[key] = value;
    return out;
}

CheckResult check_boas_bellman(const std::vector<ModuleVector>& y, const ModuleVector& x,
                               const ToleranceConfig& tol) {
    require_same_family_spec(y, "check_boas_bellman");
    require_vector_matches(x, y[0], "check_boas_bellman");
    std::vector<AlgebraElement> a;
    a.reserve(y.size());
    for (const auto& yi : y)
        a.emplace_back(x.mat().adjoint() * yi.mat()); // a_i = <x, y_i>
    return check_mpf(y, x, a, tol);
}

CheckResult check_bn_lemma(const std::vector<ModuleVector>& y,
                           const std::vector<AlgebraElement>& a, Branch branch,
                           const ToleranceConfig& tol) {
    tol.validate();
    require_same_family_spec(y, "check_bn_lemma");
    if (a.size() != y.size())
        throw ContractViolation("check_bn_lemma: " + std::to_string(y.size()) + " vectors vs " +
                                std::to_string(a.size()) + " coefficients");
    require_coeff_dims(a, y[0].d(), "check_bn_lemma");

    GramSummary gram = gram_summary(y);
    const auto n = static_cast<double>(y.size());
    const int m = y[0].m();
    const int d = y[0].d();
    ComplexMatrix sum = ComplexMatrix::Zero(m, d);
    ComplexMatrix coeff_sq = ComplexMatrix::Zero(d, d);
    double sum_coeff_norm_sq = 0.0;
    double max_coeff_norm = 0.0;
    long max_coeff_index = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sum += y[i].mat() * a[i].mat();
        coeff_sq += a[i].mat().adjoint() * a[i].mat();
        const double an = op_norm(a[i].mat());
        sum_coeff_norm_sq += an * an;
        if (an > max_coeff_norm) {
            max_coeff_norm = an;
            max_coeff_index = static_cast<long>(i);
        }
    }
    double residual = 0.0;
    HermitianMatrix coeff_sq_h = track_herm(coeff_sq, tol, residual);
    HermitianMatrix coeff_sq_root = psd_sqrt(coeff_sq_h, tol);

    const double bn_first = (n - 1.0) * std::sqrt(n) * max_coeff_norm * gram.max_offdiag;
    const double bn_second = std::sqrt(n - 1.0) * std::sqrt(gram.max_offdiag_row_sq_sum) *
                             std::sqrt(sum_coeff_norm_sq);
    const double bn_used = branch == Branch::first ? bn_first : bn_second;

    HermitianMatrix lhs = track_herm(sum.adjoint() * sum, tol, residual);
    HermitianMatrix rhs = track_herm(
        gram.max_diag * coeff_sq_h.mat() + bn_used * coeff_sq_root.mat(), tol, residual);
    CheckResult out{.order = loewner_leq(lhs, rhs, tol),
                    .lhs = std::move(lhs),
                    .rhs = std::move(rhs),
                    .gram = std::move(gram),
                    .scalars = {{"bn_first", bn_first},
                                {"bn_second", bn_second},
                                {"bn_used", bn_used},
                                {"max_coeff_norm", max_coeff_norm},
                                {"sum_coeff_norm_sq", sum_coeff_norm_sq}},
                    .indices = {{"max_coeff_norm", max_coeff_index},
                                {"bn_smaller_branch", bn_first <= bn_second ? 0L : 1L}},
                    .anti_hermitian_residual = residual};
    for (const auto& [key, value] : gram_indices(*out.gram))
        out.indices[key] = value;
    return out;
}

CheckResult check_thm_3_11(const std::vector<ModuleVector>& y, const ModuleVector& x,
                           const std::vector<AlgebraElement>& a, Branch branch,
                           const ToleranceConfig& tol) {
    tol.validate();
    require_same_family_spec(y, "check_thm_3_11");
    require_vector_matches(x, y[0], "check_thm_3_11");
    if (a.size() != y.size())
        throw ContractViolation("check_thm_3_11: " + std::to_string(y.size()) + " vectors vs " +
                                std::to_string(a.size()) + " coefficients");
    require_coeff_dims(a, x.d(), "check_thm_3_11");

    GramSummary gram = gram_summary(y);
    const auto n = static_cast<double>(y.size());
    const int d = x.d();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    ComplexMatrix adj_sq = ComplexMatrix::Zero(d, d); // sum_i |a_i*|^2 = sum_i a_i a_i*
    double sum_coeff_norm_sq = 0.0;
    double max_coeff_norm = 0.0;
    long max_coeff_index = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sum += a[i].mat() * (y[i].mat().adjoint() * x.mat());
        adj_sq += a[i].mat() * a[i].mat().adjoint();
        const double an = op_norm(a[i].mat());
        sum_coeff_norm_sq += an * an;
        if (an > max_coeff_norm) {
            max_coeff_norm = an;
            max_coeff_index = static_cast<long>(i);
        }
    }
    const double q = op_norm(adj_sq);
    const double q_root = std::sqrt(q);
    const double bn_first = (n - 1.0) * std::sqrt(n) * max_coeff_norm * gram.max_offdiag;
    const double bn_second = std::sqrt(n - 1.0) * std::sqrt(gram.max_offdiag_row_sq_sum) *
                             std::sqrt(sum_coeff_norm_sq);
    const double bn_used = branch == Branch::first ? bn_first : bn_second;
    const double coeff = q_root * (gram.max_diag * q_root + bn_used);

    double residual = 0.0;
    HermitianMatrix lhs = track_herm(sum.adjoint() * sum, tol, residual);
    HermitianMatrix rhs = track_herm(coeff * (x.mat().adjoint() * x.mat()), tol, residual);
    CheckResult out{.order = loewner_leq(lhs, rhs, tol),
                    .lhs = std::move(lhs),
                    .rhs = std::move(rhs),
                    .gram = std::move(gram),
                    .scalars = {{"q", q},
                                {"bn_first", bn_first},
                                {"bn_second", bn_second},
                                {"bn_used", bn_used},
                                {"max_coeff_norm", max_coeff_norm},
                                {"sum_coeff_norm_sq", sum_coeff_norm_sq},
                                {"coeff", coeff}},
                    .indices = {{"max_coeff_norm", max_coeff_index},
                                {"bn_smaller_branch", bn_first <= bn_second ? 0L : 1L}},
                    .anti_hermitian_residual = residual};
    for (const auto& [key, value] : gram_indices(*out.gram))
        out.indices[key] = value;
    return out;
}

CheckResult check_remark_3_12(const std::vector<ModuleVector>& y, const ModuleVector& x,
                              const ToleranceConfig& tol) {
    tol.validate();
    require_same_family_spec(y, "check_remark_3_12");
    require_vector_matches(x, y[0], "check_remark_3_12");
    GramSummary gram = gram_summary(y);
    const double scale = std::max(1.0, gram.max_diag);
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = i + 1; j < y.size(); ++j)
            if (gram.gram_norms(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) >
                tol.psd_rel_tol * scale) {
                std::ostringstream os;
                os << "check_remark_3_12: pair (y_" << i << ", y_" << j
                   << ") is not orthogonal, ||<y_i,y_j>|| = "
                   << gram.gram_norms(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                throw PreconditionViolation(os.str());
            }

    const int d = x.d();
    double residual = 0.0;
    ComplexMatrix s_raw = ComplexMatrix::Zero(d, d);
    for (const auto& yi : y) {
        const ComplexMatrix b = yi.mat().adjoint() * x.mat();
        s_raw += b.adjoint() * b;
    }
    HermitianMatrix s = track_herm(s_raw, tol, residual);
    const double s_norm = op_norm(s.mat());
    const double coeff = gram.max_diag * s_norm;
    HermitianMatrix lhs = track_herm(s.mat() * s.mat(), tol, residual);
    HermitianMatrix rhs = track_herm(coeff * (x.mat().adjoint() * x.mat()), tol, residual);
    CheckResult out{.order = loewner_leq(lhs, rhs, tol),
                    .lhs = std::move(lhs),
                    .rhs = std::move(rhs),
                    .gram = std::move(gram),
                    .scalars = {{"s_op_norm", s_norm}, {"coeff", coeff}},
                    .indices = {},
                    .anti_hermitian_residual = residual};
    out.indices = gram_indices(*out.gram);
    return out;
}

CheckResult check_cauchy_schwarz(const ModuleVector& x, const ModuleVector& y,
                                 const ToleranceConfig& tol) {
    tol.validate();
    if (!(x.spec() == y.spec()))
        throw ContractViolation("check_cauchy_schwarz: module spec mismatch");
    const ComplexMatrix yx = y.mat().adjoint() * x.mat(); // <y, x>
    const double x_inner_norm = op_norm(x.mat().adjoint() * x.mat());
    double residual = 0.0;
    HermitianMatrix lhs = track_herm(yx * yx.adjoint(), tol, residual);
    HermitianMatrix rhs =
        track_herm(x_inner_norm * (y.mat().adjoint() * y.mat()), tol, residual);
    return CheckResult{.order = loewner_leq(lhs, rhs, tol),
                       .lhs = std::move(lhs),
                       .rhs = std::move(rhs),
                       .gram = std::nullopt,
                       .scalars = {{"x_inner_norm", x_inner_norm}},
                       .indices = {},
                       .anti_hermitian_residual = residual};
}

std::optional<Branch> InequalityInstance::branch() const {
    auto it = meta.find("branch");
    if (it == meta.end())
        return std::nullopt;
    return branch_from_string(it->second);
}

std::optional<ScalarCombForm> InequalityInstance::form() const {
    auto it = meta.find("form");
    if (it == meta.end())
        return std::nullopt;
    if (it->second == "squared")
        return ScalarCombForm::squared;
    if (it->second == "as_printed")
        return ScalarCombForm::as_printed;
    throw ValidationError("form must be 'squared' or 'as_printed', got '" + it->second + "'");
}

namespace {

struct Arity {
    std::size_t min_vectors = 0;
    bool vectors_exact = false;
    // -1: coefficient count tied to the family size (possibly minus one for x)
    long coefficients = 0;
    bool coefficients_follow_family = false;
    bool family_excludes_last_vector = false; // x is the last vector
    long scalars = 0;
    bool scalars_free = false;
    long operators = 0;
    bool operators_even_pairs = false; // orth_ranges: [T..., S...]
    bool operators_follow_scalars = false;
};

Arity arity_for(InequalityId id) {
    switch (id) {
    case InequalityId::bessel_3_1:
        return {.min_vectors = 2, .family_excludes_last_vector = true};
    case InequalityId::lemma_3_2:
        return {.coefficients = 3};
    case InequalityId::bombieri_3_3:
        return {.min_vectors = 1, .coefficients_follow_family = true};
    case InequalityId::bombieri_cor_3_4:
        return {.min_vectors = 2, .family_excludes_last_vector = true};
    case InequalityId::orth_ranges_3_5:
        return {.operators = 2, .operators_even_pairs = true};
    case InequalityId::invertible_3_6:
        return {.operators = 3};
    case InequalityId::scalar_comb_3_7:
        return {.scalars = 1, .scalars_free = true, .operators_follow_scalars = true};
    case InequalityId::mpf_3_8:
        return {.min_vectors = 2,
                .coefficients_follow_family = true,
                .family_excludes_last_vector = true};
    case InequalityId::boas_bellman_3_9:
        return {.min_vectors = 2, .family_excludes_last_vector = true};
    case InequalityId::bn_lemma_3_10:
        return {.min_vectors = 1, .coefficients_follow_family = true};
    case InequalityId::thm_3_11:
        return {.min_vectors = 2,
                .coefficients_follow_family = true,
                .family_excludes_last_vector = true};
    case InequalityId::remark_3_12:
        return {.min_vectors = 2, .family_excludes_last_vector = true};
    case InequalityId::cauchy_schwarz:
        return {.min_vectors = 2, .vectors_exact = true};
    }
    throw ContractViolation("unknown inequality id");
}

} // namespace

void validate_instance(const InequalityInstance& inst) {
    const InequalityInfo& info = inequality_info(inst.id);
    const Arity ar = arity_for(inst.id);
    std::vector<std::string> problems;
    const auto tag = std::string(info.tag);

    // vectors
    if (inst.vectors.size() < ar.min_vectors)
        problems.push_back("vectors: need at least " + std::to_string(ar.min_vectors) + ", got " +
                           std::to_string(inst.vectors.size()));
    else if (ar.vectors_exact && inst.vectors.size() != ar.min_vectors)
        problems.push_back("vectors: need exactly " + std::to_string(ar.min_vectors) + ", got " +
                           std::to_string(inst.vectors.size()));
    if (ar.min_vectors == 0 && !inst.vectors.empty())
        problems.push_back("extra field: vectors (expected none for " + tag + ")");
    for (std::size_t i = 1; i < inst.vectors.size(); ++i)
        if (!(inst.vectors[i].spec() == inst.vectors[0].spec()))
            problems.push_back("vectors: entry " + std::to_string(i) +
                               " has an inconsistent module spec");

    // coefficients
    std::size_t family_size = inst.vectors.size();
    if (ar.family_excludes_last_vector && family_size > 0)
        family_size -= 1;
    if (ar.coefficients_follow_family) {
        if (inst.coefficients.size() != family_size)
            problems.push_back("coefficients: expected " + std::to_string(family_size) +
                               " (one per family vector), got " +
                               std::to_string(inst.coefficients.size()));
    } else if (static_cast<long>(inst.coefficients.size()) != ar.coefficients) {
        if (ar.coefficients == 0)
            problems.push_back(inst.coefficients.empty()
                                   ? ""
                                   : "extra field: coefficients (expected none for " + tag + ")");
        else
            problems.push_back("coefficients: expected " + std::to_string(ar.coefficients) +
                               ", got " + std::to_string(inst.coefficients.size()));
    }
    if (!inst.vectors.empty())
        for (std::size_t i = 0; i < inst.coefficients.size(); ++i)
            if (inst.coefficients[i].d() != inst.vectors[0].d())
                problems.push_back("coefficients: entry " + std::to_string(i) +
                                   " has dimension " + std::to_string(inst.coefficients[i].d()) +
                                   ", expected d=" + std::to_string(inst.vectors[0].d()));

    // scalars
    if (ar.scalars_free) {
        if (inst.scalars.empty())
            problems.push_back("scalars: expected at least 1, got 0");
    } else if (!inst.scalars.empty()) {
        problems.push_back("extra field: scalars (expected none for " + tag + ")");
    }

    // operators
    if (ar.operators_follow_scalars) {
        if (inst.operators.size() != inst.scalars.size())
            problems.push_back("operators: expected " + std::to_string(inst.scalars.size()) +
                               " (one per scalar), got " + std::to_string(inst.operators.size()));
    } else if (ar.operators_even_pairs) {
        if (inst.operators.size() < 2 || inst.operators.size() % 2 != 0)
            problems.push_back("operators: expected an even count [T_1..T_n, S_1..S_n], got " +
                               std::to_string(inst.operators.size()));
    } else if (static_cast<long>(inst.operators.size()) != ar.operators) {
        if (ar.operators == 0)
            problems.push_back(inst.operators.empty()
                                   ? ""
                                   : "extra field: operators (expected none for " + tag + ")");
        else
            problems.push_back("operators: expected " + std::to_string(ar.operators) + ", got " +
                               std::to_string(inst.operators.size()));
    }

    // meta keys that drive dispatch must parse
    try {
        auto b = inst.branch();
        if (b && !info.has_branches)
            problems.push_back("meta.branch is only meaningful for " +
                               std::string(to_tag(InequalityId::bn_lemma_3_10)) + " and " +
                               std::string(to_tag(InequalityId::thm_3_11)));
    } catch (const ValidationError& e) {
        problems.emplace_back(e.what());
    }
    try {
        auto f = inst.form();
        if (f && inst.id != InequalityId::scalar_comb_3_7)
            problems.push_back("meta.form is only meaningful for scalar_comb_3_7");
    } catch (const ValidationError& e) {
        problems.emplace_back(e.what());
    }

    problems.erase(std::remove(problems.begin(), problems.end(), std::string{}), problems.end());
    if (!problems.empty()) {
        std::string msg = tag + ": invalid instance";
        for (const auto& p : problems)
            msg += "; " + p;
        throw ValidationError(msg);
    }
}

EvalReport evaluate(const InequalityInstance& inst, const ToleranceConfig& tol) {
    tol.validate();
    validate_instance(inst);
    std::map<std::string, long> dims;
    std::optional<Branch> branch;
    std::optional<ScalarCombForm> form;
    std::optional<CheckResult> result;

    const InequalityInfo& info = inequality_info(inst.id);
    if (info.has_branches)
        branch = inst.branch().value_or(Branch::first);

    auto family_and_x = [&inst]() {
        std::vector<ModuleVector> family(inst.vectors.begin(), inst.vectors.end() - 1);
        return std::pair{std::move(family), inst.vectors.back()};
    };

    switch (inst.id) {
    case InequalityId::bessel_3_1: {
        auto [e, x] = family_and_x();
        dims = {{"m", x.m()}, {"d", x.d()}, {"n", static_cast<long>(e.size())}};
        result = check_bessel(e, x, tol);
        break;
    }
    case InequalityId::lemma_3_2: {
        dims = {{"d", inst.coefficients[0].d()}};
        result =
            check_lemma_3_2(inst.coefficients[0], inst.coefficients[1], inst.coefficients[2], tol);
        break;
    }
    case InequalityId::bombieri_3_3: {
        dims = {{"m", inst.vectors[0].m()},
                       {"d", inst.vectors[0].d()},
                       {"n", static_cast<long>(inst.vectors.size())}};
        result = check_bombieri(inst.vectors, inst.coefficients, tol);
        break;
    }
    case InequalityId::bombieri_cor_3_4: {
        auto [y, x] = family_and_x();
        dims = {{"m", x.m()}, {"d", x.d()}, {"n", static_cast<long>(y.size())}};
        result = check_bombieri_cor(y, x, tol);
        break;
    }
    case InequalityId::orth_ranges_3_5: {
        const std::size_t n = inst.operators.size() / 2;
        std::vector<ComplexMatrix> t(inst.operators.begin(),
                                     inst.operators.begin() + static_cast<long>(n));
        std::vector<ComplexMatrix> s(inst.operators.begin() + static_cast<long>(n),
                                     inst.operators.end());
        dims = {{"k", t[0].rows()}, {"h", t[0].cols()}, {"n", static_cast<long>(n)}};
        result = check_orth_ranges(t, s, tol);
        break;
    }
    case InequalityId::invertible_3_6: {
        dims = {{"h", inst.operators[0].rows()}};
        result =
            check_invertible(inst.operators[0], inst.operators[1], inst.operators[2], tol);
        break;
    }
    case InequalityId::scalar_comb_3_7: {
        form = inst.form().value_or(ScalarCombForm::squared);
        dims = {{"h", inst.operators[0].rows()},
                       {"n", static_cast<long>(inst.scalars.size())}};
        result = check_scalar_comb(inst.scalars, inst.operators, tol, *form);
        break;
    }
    case InequalityId::mpf_3_8: {
        auto [y, x] = family_and_x();
        dims = {{"m", x.m()}, {"d", x.d()}, {"n", static_cast<long>(y.size())}};
        result = check_mpf(y, x, inst.coefficients, tol);
        break;
    }
    case InequalityId::boas_bellman_3_9: {
        auto [y, x] = family_and_x();
        dims = {{"m", x.m()}, {"d", x.d()}, {"n", static_cast<long>(y.size())}};
        result = check_boas_bellman(y, x, tol);
        break;
    }
    case InequalityId::bn_lemma_3_10: {
        dims = {{"m", inst.vectors[0].m()},
                       {"d", inst.vectors[0].d()},
                       {"n", static_cast<long>(inst.vectors.size())}};
        result = check_bn_lemma(inst.vectors, inst.coefficients, *branch, tol);
        break;
    }
    case InequalityId::thm_3_11: {
        auto [y, x] = family_and_x();
        dims = {{"m", x.m()}, {"d", x.d()}, {"n", static_cast<long>(y.size())}};
        result = check_thm_3_11(y, x, inst.coefficients, *branch, tol);
        break;
    }
    case InequalityId::remark_3_12: {
        auto [y, x] = family_and_x();
        dims = {{"m", x.m()}, {"d", x.d()}, {"n", static_cast<long>(y.size())}};
        result = check_remark_3_12(y, x, tol);
        break;
    }
    case InequalityId::cauchy_schwarz: {
        dims = {{"m", inst.vectors[0].m()}, {"d", inst.vectors[0].d()}};
        result = check_cauchy_schwarz(inst.vectors[0], inst.vectors[1], tol);
        break;
    }
    }
    return EvalReport{inst.id, std::move(dims), branch, form, std::move(*result)};
}

} // namespace hmod
