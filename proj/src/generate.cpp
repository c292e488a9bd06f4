#include "hmod/generate.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hmod {

std::string_view to_string(FamilyKind k) {
    switch (k) {
    case FamilyKind::generic:
        return "generic";
    case FamilyKind::orthogonal:
        return "orthogonal";
    case FamilyKind::unit_orthogonal:
        return "unit_orthogonal";
    case FamilyKind::near_parallel:
        return "near_parallel";
    }
    return "generic";
}

std::string_view to_string(CoeffKind k) {
    switch (k) {
    case CoeffKind::generic:
        return "generic";
    case CoeffKind::unitary:
        return "unitary";
    case CoeffKind::scalar_identity:
        return "scalar_identity";
    case CoeffKind::zero:
        return "zero";
    }
    return "generic";
}

FamilyKind family_kind_from_string(std::string_view s) {
    if (s == "generic")
        return FamilyKind::generic;
    if (s == "orthogonal")
        return FamilyKind::orthogonal;
    if (s == "unit_orthogonal")
        return FamilyKind::unit_orthogonal;
    if (s == "near_parallel")
        return FamilyKind::near_parallel;
    throw ValidationError("unknown family kind: '" + std::string(s) + "'");
}

CoeffKind coeff_kind_from_string(std::string_view s) {
    if (s == "generic")
        return CoeffKind::generic;
    if (s == "unitary")
        return CoeffKind::unitary;
    if (s == "scalar_identity")
        return CoeffKind::scalar_identity;
    if (s == "zero")
        return CoeffKind::zero;
    throw ValidationError("unknown coefficient kind: '" + std::string(s) + "'");
}

void GenConfig::validate() const {
    if (m < 1 || d < 1 || n < 1)
        throw ContractViolation("GenConfig: m, d, n must be positive, got m=" + std::to_string(m) +
                                " d=" + std::to_string(d) + " n=" + std::to_string(n));
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude))
        throw ContractViolation("GenConfig: magnitude must be finite and >= 0");
}

ComplexMatrix gen_complex_matrix(std::uint64_t seed, int rows, int cols, double scale) {
    if (rows < 1 || cols < 1)
        throw ContractViolation("gen_complex_matrix: dimensions must be positive");
    SplitMix64 rng(seed);
    ComplexMatrix out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const auto [re, im] = rng.next_normal_pair();
            out(i, j) = Complex(scale * re, scale * im);
        }
    return out;
}

ModuleVector gen_module_vector(std::uint64_t seed, int m, int d, double magnitude) {
    const double scale = magnitude / std::sqrt(2.0 * m);
    return ModuleVector(ModuleSpec{m, d}, gen_complex_matrix(seed, m, d, scale));
}

AlgebraElement gen_algebra_element(std::uint64_t seed, int d, double magnitude) {
    const double scale = magnitude / std::sqrt(2.0 * d);
    return AlgebraElement(gen_complex_matrix(seed, d, d, scale));
}

namespace {

// QR with the R-diagonal phases absorbed into Q; Haar for Gaussian input and
// continuous in the input almost everywhere.
ComplexMatrix unitarize(const ComplexMatrix& g) {
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < g.cols(); ++i) {
        const Complex rii = r(i, i);
        const double a = std::abs(rii);
        q.col(i) *= a > 1e-300 ? rii / a : Complex(1.0, 0.0);
    }
    return q;
}

// Lifts the condition number above the invertibility precondition by pushing
// small singular values up to rel * sigma_max. A zero draw falls back to the
// identity.
ComplexMatrix clamp_min_singular(const ComplexMatrix& t, double rel) {
    Eigen::JacobiSVD<ComplexMatrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
    RealVector sigma = svd.singularValues();
    if (!(sigma(0) > 1e-300))
        return ComplexMatrix::Identity(t.rows(), t.cols());
    const double floor = rel * sigma(0);
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        sigma(i) = std::max(sigma(i), floor);
    return svd.matrixU() * sigma.asDiagonal() * svd.matrixV().adjoint();
}

ModuleVector embed_block(const ComplexMatrix& block, int m, int d, int index,
                         const ComplexMatrix& mix) {
    ComplexMatrix f = ComplexMatrix::Zero(m, d);
    f.block(index * d, 0, d, d) = block;
    return ModuleVector(ModuleSpec{m, d}, mix * f);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ComplexMatrix gen_haar_unitary(std::uint64_t seed, int dim) {
    return unitarize(gen_complex_matrix(seed, dim, dim, 1.0));
}

std::vector<ModuleVector> gen_unit_orthogonal_family(std::uint64_t seed, int m, int d, int n) {
    if (n < 1 || d < 1 || m < 1)
        throw ContractViolation("gen_unit_orthogonal_family: dimensions must be positive");
    if (n * d > m)
        throw ContractViolation("gen_unit_orthogonal_family: infeasible, n*d = " +
                                std::to_string(n * d) + " > m = " + std::to_string(m));
    const ComplexMatrix mix = gen_haar_unitary(mix_seed(seed, kMixComponent), m);
    std::vector<ModuleVector> family;
    family.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ComplexMatrix block =
            gen_complex_matrix(mix_seed(seed, kFamilyBase + static_cast<std::uint64_t>(i)), d, d,
                               1.0 / std::sqrt(2.0 * d));
        const double norm = op_norm(block);
        if (norm < 1e-300)
            block = ComplexMatrix::Identity(d, d);
        else
            block /= norm;
        family.push_back(embed_block(block, m, d, i, mix));
    }
    // post-hoc check mandated by the construction contract
    for (int i = 0; i < n; ++i) {
        if (std::abs(module_norm(family[static_cast<std::size_t>(i)]) - 1.0) > 1e-12)
            throw NumericalFailure("gen_unit_orthogonal_family: e_" + std::to_string(i) +
                                   " failed the unit-norm check");
        for (int j = i + 1; j < n; ++j)
            if (op_norm(inner(family[static_cast<std::size_t>(i)],
                              family[static_cast<std::size_t>(j)])
                            .mat()) > 1e-12)
                throw NumericalFailure("gen_unit_orthogonal_family: pair (" + std::to_string(i) +
                                       "," + std::to_string(j) + ") failed the orthogonality check");
    }
    return family;
}

std::vector<ModuleVector> gen_orthogonal_family(std::uint64_t seed, int m, int d, int n,
                                                double magnitude) {
    if (n < 1 || d < 1 || m < 1)
        throw ContractViolation("gen_orthogonal_family: dimensions must be positive");
    if (n * d > m)
        throw ContractViolation("gen_orthogonal_family: infeasible, n*d = " +
                                std::to_string(n * d) + " > m = " + std::to_string(m));
    const ComplexMatrix mix = gen_haar_unitary(mix_seed(seed, kMixComponent), m);
    std::vector<ModuleVector> family;
    family.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ComplexMatrix block =
            gen_complex_matrix(mix_seed(seed, kFamilyBase + static_cast<std::uint64_t>(i)), d, d,
                               magnitude / std::sqrt(2.0 * d));
        family.push_back(embed_block(block, m, d, i, mix));
    }
    return family;
}

std::vector<ComplexMatrix> gen_orthogonal_range_operators(std::uint64_t seed, int h, int k, int n,
                                                          double magnitude) {
    if (n < 1 || h < 1 || k < 1)
        throw ContractViolation("gen_orthogonal_range_operators: dimensions must be positive");
    if (n > k)
        throw ContractViolation("gen_orthogonal_range_operators: infeasible, n = " +
                                std::to_string(n) + " > k = " + std::to_string(k));
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int row_begin = i * k / n;
        const int row_end = (i + 1) * k / n;
        ComplexMatrix t = ComplexMatrix::Zero(k, h);
        t.block(row_begin, 0, row_end - row_begin, h) =
            gen_complex_matrix(mix_seed(seed, kOperatorBase + static_cast<std::uint64_t>(i)),
                               row_end - row_begin, h, magnitude / std::sqrt(2.0 * k));
        out.push_back(std::move(t));
    }
    return out;
}

FamilyKind default_family_for(InequalityId id) {
    switch (id) {
    case InequalityId::bessel_3_1:
        return FamilyKind::unit_orthogonal;
    case InequalityId::remark_3_12:
    case InequalityId::orth_ranges_3_5:
        return FamilyKind::orthogonal;
    default:
        return FamilyKind::generic;
    }
}

bool family_kind_compatible(InequalityId id, FamilyKind kind) {
    switch (id) {
    case InequalityId::bessel_3_1:
        return kind == FamilyKind::unit_orthogonal || kind == FamilyKind::near_parallel;
    case InequalityId::remark_3_12:
        return kind == FamilyKind::orthogonal || kind == FamilyKind::unit_orthogonal;
    case InequalityId::orth_ranges_3_5:
        return kind != FamilyKind::near_parallel;
    default:
        return true;
    }
}

namespace {

// Number of family parameter matrices for the vector-family ids.
int family_param_count(FamilyKind kind, int n) {
    return kind == FamilyKind::near_parallel ? n + 1 : n;
}

int coeff_param_mats(CoeffKind kind, int n) {
    switch (kind) {
    case CoeffKind::generic:
    case CoeffKind::unitary:
        return n;
    case CoeffKind::scalar_identity:
    case CoeffKind::zero:
        return 0;
    }
    return n;
}

int coeff_param_scalars(CoeffKind kind, int n) {
    return kind == CoeffKind::scalar_identity ? n : 0;
}

std::vector<ComplexMatrix> draw_family_params(const GenConfig& cfg, InequalityId id) {
    std::vector<ComplexMatrix> mats;
    const double vec_scale = cfg.magnitude / std::sqrt(2.0 * cfg.m);
    const double block_scale = cfg.magnitude / std::sqrt(2.0 * cfg.d);
    switch (cfg.family) {
    case FamilyKind::generic:
        for (int i = 0; i < cfg.n; ++i)
            mats.push_back(gen_complex_matrix(
                mix_seed(cfg.master_seed, kFamilyBase + static_cast<std::uint64_t>(i)), cfg.m,
                cfg.d, vec_scale));
        break;
    case FamilyKind::orthogonal:
        for (int i = 0; i < cfg.n; ++i)
            mats.push_back(gen_complex_matrix(
                mix_seed(cfg.master_seed, kFamilyBase + static_cast<std::uint64_t>(i)), cfg.d,
                cfg.d, block_scale));
        break;
    case FamilyKind::unit_orthogonal:
        for (int i = 0; i < cfg.n; ++i)
            mats.push_back(gen_complex_matrix(
                mix_seed(cfg.master_seed, kFamilyBase + static_cast<std::uint64_t>(i)), cfg.d,
                cfg.d, 1.0 / std::sqrt(2.0 * cfg.d)));
        break;
    case FamilyKind::near_parallel:
        if (id == InequalityId::bessel_3_1) {
            // unitary blocks; the x-in-span coefficients are drawn elsewhere
            for (int i = 0; i < cfg.n; ++i)
                mats.push_back(gen_complex_matrix(
                    mix_seed(cfg.master_seed, kFamilyBase + static_cast<std::uint64_t>(i)), cfg.d,
                    cfg.d, 1.0 / std::sqrt(2.0 * cfg.d)));
        } else {
            for (int i = 0; i <= cfg.n; ++i)
                mats.push_back(gen_complex_matrix(
                    mix_seed(cfg.master_seed, kFamilyBase + static_cast<std::uint64_t>(i)), cfg.m,
                    cfg.d, vec_scale));
        }
        break;
    }
    return mats;
}

std::vector<ModuleVector> build_family(const GenConfig& cfg, InequalityId id,
                                       const std::vector<ComplexMatrix>& mats,
                                       std::size_t offset) {
    std::vector<ModuleVector> family;
    family.reserve(static_cast<std::size_t>(cfg.n));
    switch (cfg.family) {
    case FamilyKind::generic:
        for (int i = 0; i < cfg.n; ++i)
            family.emplace_back(ModuleSpec{cfg.m, cfg.d},
                                mats.at(offset + static_cast<std::size_t>(i)));
        break;
    case FamilyKind::orthogonal: {
        const ComplexMatrix mix =
            gen_haar_unitary(mix_seed(cfg.master_seed, kMixComponent), cfg.m);
        for (int i = 0; i < cfg.n; ++i)
            family.push_back(
                embed_block(mats.at(offset + static_cast<std::size_t>(i)), cfg.m, cfg.d, i, mix));
        break;
    }
    case FamilyKind::unit_orthogonal: {
        const ComplexMatrix mix =
            gen_haar_unitary(mix_seed(cfg.master_seed, kMixComponent), cfg.m);
        for (int i = 0; i < cfg.n; ++i) {
            ComplexMatrix block = mats.at(offset + static_cast<std::size_t>(i));
            const double norm = op_norm(block);
            if (norm < 1e-300)
                block = ComplexMatrix::Identity(cfg.d, cfg.d);
            else
                block /= norm;
            family.push_back(embed_block(block, cfg.m, cfg.d, i, mix));
        }
        break;
    }
    case FamilyKind::near_parallel: {
        if (id == InequalityId::bessel_3_1) {
            const ComplexMatrix mix =
                gen_haar_unitary(mix_seed(cfg.master_seed, kMixComponent), cfg.m);
            for (int i = 0; i < cfg.n; ++i)
                family.push_back(embed_block(
                    unitarize(mats.at(offset + static_cast<std::size_t>(i))), cfg.m, cfg.d, i,
                    mix));
        } else {
            const ComplexMatrix& base = mats.at(offset);
            for (int i = 1; i <= cfg.n; ++i)
                family.emplace_back(
                    ModuleSpec{cfg.m, cfg.d},
                    base + kNearParallelSpread * mats.at(offset + static_cast<std::size_t>(i)));
        }
        break;
    }
    }
    return family;
}

std::vector<Complex> draw_scalar_params(const GenConfig& cfg, int count) {
    SplitMix64 rng(mix_seed(cfg.master_seed, kScalarComponent));
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(count));
    const double s = cfg.magnitude / std::sqrt(2.0);
    for (int i = 0; i < count; ++i) {
        const auto [re, im] = rng.next_normal_pair();
        out.emplace_back(s * re, s * im);
    }
    return out;
}

std::vector<AlgebraElement> build_coefficients(const GenConfig& cfg,
                                               const std::vector<ComplexMatrix>& mats,
                                               std::size_t offset,
                                               const std::vector<Complex>& scalars) {
    std::vector<AlgebraElement> out;
    out.reserve(static_cast<std::size_t>(cfg.n));
    switch (cfg.coeffs) {
    case CoeffKind::generic:
        for (int i = 0; i < cfg.n; ++i)
            out.emplace_back(mats.at(offset + static_cast<std::size_t>(i)));
        break;
    case CoeffKind::unitary:
        for (int i = 0; i < cfg.n; ++i)
            out.emplace_back(unitarize(mats.at(offset + static_cast<std::size_t>(i))));
        break;
    case CoeffKind::scalar_identity:
        for (int i = 0; i < cfg.n; ++i)
            out.emplace_back(scalars.at(static_cast<std::size_t>(i)) *
                             ComplexMatrix::Identity(cfg.d, cfg.d));
        break;
    case CoeffKind::zero:
        for (int i = 0; i < cfg.n; ++i)
            out.emplace_back(ComplexMatrix::Zero(cfg.d, cfg.d));
        break;
    }
    return out;
}

std::vector<ComplexMatrix> draw_coeff_params(const GenConfig& cfg) {
    std::vector<ComplexMatrix> mats;
    const double scale = cfg.magnitude / std::sqrt(2.0 * cfg.d);
    switch (cfg.coeffs) {
    case CoeffKind::generic:
        for (int i = 0; i < cfg.n; ++i)
            mats.push_back(gen_complex_matrix(
                mix_seed(cfg.master_seed, kCoeffBase + static_cast<std::uint64_t>(i)), cfg.d,
                cfg.d, scale));
        break;
    case CoeffKind::unitary:
        for (int i = 0; i < cfg.n; ++i)
            mats.push_back(gen_complex_matrix(
                mix_seed(cfg.master_seed, kCoeffBase + static_cast<std::uint64_t>(i)), cfg.d,
                cfg.d, 1.0 / std::sqrt(2.0 * cfg.d)));
        break;
    case CoeffKind::scalar_identity:
    case CoeffKind::zero:
        break;
    }
    return mats;
}

ComplexMatrix draw_x_param(const GenConfig& cfg) {
    return gen_complex_matrix(mix_seed(cfg.master_seed, kXComponent), cfg.m, cfg.d,
                              cfg.magnitude / std::sqrt(2.0 * cfg.m));
}

void require_compatible(const GenConfig& cfg, InequalityId id) {
    cfg.validate();
    if (!family_kind_compatible(id, cfg.family))
        throw ValidationError(std::string(to_tag(id)) + ": family kind '" +
                              std::string(to_string(cfg.family)) + "' is incompatible");
    const bool block_family =
        cfg.family == FamilyKind::orthogonal || cfg.family == FamilyKind::unit_orthogonal ||
        (cfg.family == FamilyKind::near_parallel && id == InequalityId::bessel_3_1);
    switch (id) {
    case InequalityId::lemma_3_2:
    case InequalityId::invertible_3_6:
    case InequalityId::scalar_comb_3_7:
        return; // no vector family
    case InequalityId::orth_ranges_3_5:
        if (cfg.n > cfg.m)
            throw ValidationError("orth_ranges_3_5: infeasible, n = " + std::to_string(cfg.n) +
                                  " > k = " + std::to_string(cfg.m));
        return;
    case InequalityId::cauchy_schwarz:
        if (block_family && 2 * cfg.d > cfg.m)
            throw ValidationError("cauchy_schwarz: infeasible, 2*d > m for a block family");
        return;
    default:
        if (block_family && cfg.n * cfg.d > cfg.m)
            throw ValidationError(std::string(to_tag(id)) + ": infeasible family, n*d = " +
                                  std::to_string(cfg.n * cfg.d) + " > m = " +
                                  std::to_string(cfg.m));
    }
}

std::map<std::string, std::string> base_meta(const GenConfig& cfg) {
    return {{"family", std::string(to_string(cfg.family))},
            {"coeffs", std::string(to_string(cfg.coeffs))},
            {"magnitude", format_double(cfg.magnitude)},
            {"master_seed", std::to_string(cfg.master_seed)}};
}

} // namespace

InstanceParams draw_instance_params(const GenConfig& cfg, InequalityId id) {
    require_compatible(cfg, id);
    InstanceParams params;
    switch (id) {
    case InequalityId::bessel_3_1: {
        params.mats = draw_family_params(cfg, id);
        if (cfg.family == FamilyKind::near_parallel) {
            // x = sum_i e_i a_i with free span coefficients
            const double scale = cfg.magnitude / std::sqrt(2.0 * cfg.d);
            for (int i = 0; i < cfg.n; ++i)
                params.mats.push_back(gen_complex_matrix(
                    mix_seed(cfg.master_seed, kCoeffBase + static_cast<std::uint64_t>(i)), cfg.d,
                    cfg.d, scale));
        } else {
            params.mats.push_back(draw_x_param(cfg));
        }
        break;
    }
    case InequalityId::lemma_3_2: {
        const double scale = cfg.magnitude / std::sqrt(2.0 * cfg.d);
        params.mats.push_back(
            gen_complex_matrix(mix_seed(cfg.master_seed, kCoeffBase + 0), cfg.d, cfg.d, scale));
        if (cfg.family != FamilyKind::near_parallel) // near_parallel pins b = a
            params.mats.push_back(gen_complex_matrix(mix_seed(cfg.master_seed, kCoeffBase + 1),
                                                     cfg.d, cfg.d, scale));
        if (cfg.coeffs != CoeffKind::scalar_identity && cfg.coeffs != CoeffKind::zero)
            params.mats.push_back(gen_complex_matrix(mix_seed(cfg.master_seed, kCoeffBase + 2),
                                                     cfg.d, cfg.d, scale));
        break;
    }
    case InequalityId::bombieri_3_3:
    case InequalityId::bn_lemma_3_10: {
        params.mats = draw_family_params(cfg, id);
        auto coeff_mats = draw_coeff_params(cfg);
        params.mats.insert(params.mats.end(), coeff_mats.begin(), coeff_mats.end());
        params.scalars = draw_scalar_params(cfg, coeff_param_scalars(cfg.coeffs, cfg.n));
        break;
    }
    case InequalityId::mpf_3_8:
    case InequalityId::thm_3_11: {
        params.mats = draw_family_params(cfg, id);
        params.mats.push_back(draw_x_param(cfg));
        auto coeff_mats = draw_coeff_params(cfg);
        params.mats.insert(params.mats.end(), coeff_mats.begin(), coeff_mats.end());
        params.scalars = draw_scalar_params(cfg, coeff_param_scalars(cfg.coeffs, cfg.n));
        break;
    }
    case InequalityId::bombieri_cor_3_4:
    case InequalityId::boas_bellman_3_9:
    case InequalityId::remark_3_12: {
        params.mats = draw_family_params(cfg, id);
        params.mats.push_back(draw_x_param(cfg));
        break;
    }
    case InequalityId::orth_ranges_3_5: {
        const double t_scale = cfg.magnitude / std::sqrt(2.0 * cfg.m);
        for (int i = 0; i < cfg.n; ++i) {
            const int rows = (i + 1) * cfg.m / cfg.n - i * cfg.m / cfg.n;
            params.mats.push_back(gen_complex_matrix(
                mix_seed(cfg.master_seed, kOperatorBase + static_cast<std::uint64_t>(i)), rows,
                cfg.d, t_scale));
        }
        const double s_scale = cfg.magnitude / std::sqrt(2.0 * cfg.d);
        if (cfg.coeffs == CoeffKind::generic || cfg.coeffs == CoeffKind::unitary) {
            const double scale = cfg.coeffs == CoeffKind::unitary
                                     ? 1.0 / std::sqrt(2.0 * cfg.d)
                                     : s_scale;
            for (int i = 0; i < cfg.n; ++i)
                params.mats.push_back(gen_complex_matrix(
                    mix_seed(cfg.master_seed,
                             kOperatorBase + static_cast<std::uint64_t>(cfg.n + i)),
                    cfg.d, cfg.d, scale));
        }
        params.scalars = draw_scalar_params(cfg, coeff_param_scalars(cfg.coeffs, cfg.n));
        break;
    }
    case InequalityId::invertible_3_6: {
        const double scale = cfg.magnitude > 0.0 ? cfg.magnitude / std::sqrt(2.0 * cfg.d)
                                                 : 1.0 / std::sqrt(2.0 * cfg.d);
        params.mats.push_back(
            gen_complex_matrix(mix_seed(cfg.master_seed, kOperatorBase + 0), cfg.d, cfg.d, scale));
        const double s_scale = cfg.magnitude / std::sqrt(2.0 * cfg.d);
        if (cfg.coeffs != CoeffKind::zero) {
            params.mats.push_back(gen_complex_matrix(mix_seed(cfg.master_seed, kOperatorBase + 1),
                                                     cfg.d, cfg.d, s_scale));
            params.mats.push_back(gen_complex_matrix(mix_seed(cfg.master_seed, kOperatorBase + 2),
                                                     cfg.d, cfg.d, s_scale));
        }
        break;
    }
    case InequalityId::scalar_comb_3_7: {
        if (cfg.coeffs == CoeffKind::generic)
            params.scalars = draw_scalar_params(cfg, cfg.n);
        else if (cfg.coeffs == CoeffKind::unitary) {
            SplitMix64 rng(mix_seed(cfg.master_seed, kScalarComponent));
            for (int i = 0; i < cfg.n; ++i) {
                const double theta = 2.0 * std::numbers::pi * rng.next_uniform();
                params.scalars.emplace_back(std::cos(theta), std::sin(theta));
            }
        } // scalar_identity -> 1, zero -> 0; no free scalars
        const double scale = cfg.magnitude / std::sqrt(2.0 * cfg.d);
        for (int i = 0; i < cfg.n; ++i)
            params.mats.push_back(gen_complex_matrix(
                mix_seed(cfg.master_seed, kOperatorBase + static_cast<std::uint64_t>(i)), cfg.d,
                cfg.d, scale));
        break;
    }
    case InequalityId::cauchy_schwarz: {
        const bool block_family = cfg.family == FamilyKind::orthogonal ||
                                  cfg.family == FamilyKind::unit_orthogonal;
        if (block_family) {
            const double scale = cfg.magnitude / std::sqrt(2.0 * cfg.d);
            params.mats.push_back(gen_complex_matrix(mix_seed(cfg.master_seed, kFamilyBase + 0),
                                                     cfg.d, cfg.d, scale));
            params.mats.push_back(gen_complex_matrix(mix_seed(cfg.master_seed, kFamilyBase + 1),
                                                     cfg.d, cfg.d, scale));
        } else {
            params.mats.push_back(draw_x_param(cfg));
            params.mats.push_back(gen_complex_matrix(
                mix_seed(cfg.master_seed, kFamilyBase + 1), cfg.m, cfg.d,
                cfg.magnitude / std::sqrt(2.0 * cfg.m)));
        }
        break;
    }
    }
    return params;
}

InequalityInstance build_instance(const GenConfig& cfg, InequalityId id,
                                  const InstanceParams& params) {
    require_compatible(cfg, id);
    InequalityInstance inst;
    inst.id = id;
    inst.meta = base_meta(cfg);
    const std::size_t fam_count =
        static_cast<std::size_t>(family_param_count(cfg.family, cfg.n));

    switch (id) {
    case InequalityId::bessel_3_1: {
        auto family = build_family(cfg, id, params.mats, 0);
        if (cfg.family == FamilyKind::near_parallel) {
            ComplexMatrix x = ComplexMatrix::Zero(cfg.m, cfg.d);
            for (int i = 0; i < cfg.n; ++i)
                x += family[static_cast<std::size_t>(i)].mat() *
                     params.mats.at(static_cast<std::size_t>(cfg.n + i));
            inst.vectors = std::move(family);
            inst.vectors.emplace_back(ModuleSpec{cfg.m, cfg.d}, std::move(x));
        } else {
            inst.vectors = std::move(family);
            inst.vectors.emplace_back(ModuleSpec{cfg.m, cfg.d}, params.mats.at(fam_count));
        }
        break;
    }
    case InequalityId::lemma_3_2: {
        std::size_t idx = 0;
        ComplexMatrix a = params.mats.at(idx++);
        ComplexMatrix b = cfg.family == FamilyKind::near_parallel ? a : params.mats.at(idx++);
        ComplexMatrix c;
        if (cfg.coeffs == CoeffKind::scalar_identity)
            c = ComplexMatrix::Identity(cfg.d, cfg.d);
        else if (cfg.coeffs == CoeffKind::zero)
            c = ComplexMatrix::Zero(cfg.d, cfg.d);
        else
            c = params.mats.at(idx++);
        if (cfg.coeffs == CoeffKind::unitary)
            c = unitarize(c);
        inst.coefficients.emplace_back(std::move(a));
        inst.coefficients.emplace_back(std::move(b));
        inst.coefficients.emplace_back(std::move(c));
        break;
    }
    case InequalityId::bombieri_3_3:
    case InequalityId::bn_lemma_3_10: {
        inst.vectors = build_family(cfg, id, params.mats, 0);
        inst.coefficients = build_coefficients(cfg, params.mats, fam_count, params.scalars);
        break;
    }
    case InequalityId::mpf_3_8:
    case InequalityId::thm_3_11: {
        inst.vectors = build_family(cfg, id, params.mats, 0);
        inst.vectors.emplace_back(ModuleSpec{cfg.m, cfg.d}, params.mats.at(fam_count));
        inst.coefficients =
            build_coefficients(cfg, params.mats, fam_count + 1, params.scalars);
        break;
    }
    case InequalityId::bombieri_cor_3_4:
    case InequalityId::boas_bellman_3_9:
    case InequalityId::remark_3_12: {
        inst.vectors = build_family(cfg, id, params.mats, 0);
        inst.vectors.emplace_back(ModuleSpec{cfg.m, cfg.d}, params.mats.at(fam_count));
        break;
    }
    case InequalityId::orth_ranges_3_5: {
        const int k = cfg.m;
        const int h = cfg.d;
        for (int i = 0; i < cfg.n; ++i) {
            const int row_begin = i * k / cfg.n;
            const ComplexMatrix& block = params.mats.at(static_cast<std::size_t>(i));
            ComplexMatrix t = ComplexMatrix::Zero(k, h);
            ComplexMatrix payload = block;
            if (cfg.family == FamilyKind::unit_orthogonal) {
                const double norm = op_norm(payload);
                payload = norm < 1e-300 ? ComplexMatrix::Identity(block.rows(), h).eval()
                                        : (payload / norm).eval();
            }
            t.block(row_begin, 0, block.rows(), h) = payload;
            inst.operators.push_back(std::move(t));
        }
        for (int i = 0; i < cfg.n; ++i) {
            switch (cfg.coeffs) {
            case CoeffKind::generic:
                inst.operators.push_back(params.mats.at(static_cast<std::size_t>(cfg.n + i)));
                break;
            case CoeffKind::unitary:
                inst.operators.push_back(
                    unitarize(params.mats.at(static_cast<std::size_t>(cfg.n + i))));
                break;
            case CoeffKind::scalar_identity:
                inst.operators.push_back(params.scalars.at(static_cast<std::size_t>(i)) *
                                         ComplexMatrix::Identity(h, h));
                break;
            case CoeffKind::zero:
                inst.operators.push_back(ComplexMatrix::Zero(h, h));
                break;
            }
        }
        break;
    }
    case InequalityId::invertible_3_6: {
        inst.operators.push_back(clamp_min_singular(params.mats.at(0), 1e-6));
        if (cfg.coeffs == CoeffKind::zero) {
            inst.operators.push_back(ComplexMatrix::Zero(cfg.d, cfg.d));
            inst.operators.push_back(ComplexMatrix::Zero(cfg.d, cfg.d));
        } else {
            inst.operators.push_back(params.mats.at(1));
            inst.operators.push_back(params.mats.at(2));
        }
        break;
    }
    case InequalityId::scalar_comb_3_7: {
        for (int i = 0; i < cfg.n; ++i) {
            switch (cfg.coeffs) {
            case CoeffKind::generic:
            case CoeffKind::unitary:
                inst.scalars.push_back(params.scalars.at(static_cast<std::size_t>(i)));
                break;
            case CoeffKind::scalar_identity:
                inst.scalars.emplace_back(1.0, 0.0);
                break;
            case CoeffKind::zero:
                inst.scalars.emplace_back(0.0, 0.0);
                break;
            }
            inst.operators.push_back(params.mats.at(static_cast<std::size_t>(i)));
        }
        break;
    }
    case InequalityId::cauchy_schwarz: {
        const bool block_family = cfg.family == FamilyKind::orthogonal ||
                                  cfg.family == FamilyKind::unit_orthogonal;
        if (block_family) {
            GenConfig two = cfg;
            two.n = 2;
            auto family = build_family(two, id, params.mats, 0);
            inst.vectors = std::move(family);
        } else if (cfg.family == FamilyKind::near_parallel) {
            ComplexMatrix x = params.mats.at(0);
            inst.vectors.emplace_back(ModuleSpec{cfg.m, cfg.d}, x);
            inst.vectors.emplace_back(ModuleSpec{cfg.m, cfg.d},
                                      x + kNearParallelSpread * params.mats.at(1));
        } else {
            inst.vectors.emplace_back(ModuleSpec{cfg.m, cfg.d}, params.mats.at(0));
            inst.vectors.emplace_back(ModuleSpec{cfg.m, cfg.d}, params.mats.at(1));
        }
        break;
    }
    }
    validate_instance(inst);
    return inst;
}

InequalityInstance gen_instance(const GenConfig& cfg, InequalityId id) {
    return build_instance(cfg, id, draw_instance_params(cfg, id));
}

} // namespace hmod
