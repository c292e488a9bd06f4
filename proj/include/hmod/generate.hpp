#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "hmod/inequalities.hpp"
#include "hmod/rng.hpp"

namespace hmod {

enum class FamilyKind { generic, orthogonal, unit_orthogonal, near_parallel };
enum class CoeffKind { generic, unitary, scalar_identity, zero };

std::string_view to_string(FamilyKind k);
std::string_view to_string(CoeffKind k);
FamilyKind family_kind_from_string(std::string_view s); // throws ValidationError
CoeffKind coeff_kind_from_string(std::string_view s);   // throws ValidationError

// Seeded generation config. Identical configs produce bit-identical instances.
struct GenConfig {
    std::uint64_t master_seed = 0;
    int m = 4;
    int d = 2;
    int n = 2;
    FamilyKind family = FamilyKind::generic;
    CoeffKind coeffs = CoeffKind::generic;
    double magnitude = 1.0;

    void validate() const; // positivity; unit_orthogonal feasibility is per-id
};

// Component indices for per-component seed derivation seed_i = mix_seed(master, index).
// The layout is fixed so that golden files stay stable:
//   family vector / block i  -> kFamilyBase + i
//   x                        -> kXComponent
//   coefficient i            -> kCoeffBase + i
//   scalar list              -> kScalarComponent
//   operator i               -> kOperatorBase + i
//   family mixing unitary    -> kMixComponent
//   rejection retries        -> component + attempt * kRetryStride
inline constexpr std::uint64_t kFamilyBase = 0;
inline constexpr std::uint64_t kXComponent = 64;
inline constexpr std::uint64_t kCoeffBase = 128;
inline constexpr std::uint64_t kScalarComponent = 192;
inline constexpr std::uint64_t kOperatorBase = 256;
inline constexpr std::uint64_t kMixComponent = 320;
inline constexpr std::uint64_t kRetryStride = 4096;

// Spread of the near_parallel family kind: y_i = y_0 + spread * delta_i.
inline constexpr double kNearParallelSpread = 0.01;

// i.i.d. complex Gaussian entries in row-major draw order, one Box-Muller
// pair per entry: entry = scale * (z0 + i z1).
ComplexMatrix gen_complex_matrix(std::uint64_t seed, int rows, int cols, double scale);

// Entries scaled by magnitude / sqrt(2m), so ||x|| is O(magnitude).
ModuleVector gen_module_vector(std::uint64_t seed, int m, int d, double magnitude = 1.0);

// Entries scaled by magnitude / sqrt(2d).
AlgebraElement gen_algebra_element(std::uint64_t seed, int d, double magnitude = 1.0);

// Haar-distributed unitary: QR of a standard complex Gaussian with the
// R-diagonal phases absorbed into Q.
ComplexMatrix gen_haar_unitary(std::uint64_t seed, int dim);

// e_i built on disjoint row blocks [(i-1)d, i d), normalized to ||e_i|| = 1,
// then the whole family is mixed by one random m x m unitary on the left.
// Requires n*d <= m. The construction is verified post hoc:
// ||<e_i,e_j>|| <= 1e-12 for i != j and | ||e_i|| - 1 | <= 1e-12.
std::vector<ModuleVector> gen_unit_orthogonal_family(std::uint64_t seed, int m, int d, int n);

// Same block construction without normalization; ||y_i|| = O(magnitude).
std::vector<ModuleVector> gen_orthogonal_family(std::uint64_t seed, int m, int d, int n,
                                                double magnitude = 1.0);

// T_i supported on disjoint row blocks of the k-dimensional codomain, so
// T_i* T_j = 0 exactly for i != j. Requires n <= k.
std::vector<ComplexMatrix> gen_orthogonal_range_operators(std::uint64_t seed, int h, int k,
                                                          int n, double magnitude = 1.0);

// Free parameters of one instance. The search perturbs these and rebuilds;
// build_instance re-applies every structural constraint (normalization,
// block embedding, unitary mixing, singular-value clamping), so constraint
// satisfaction is exact for every iterate.
struct InstanceParams {
    std::vector<ComplexMatrix> mats;
    std::vector<Complex> scalars;
};

InstanceParams draw_instance_params(const GenConfig& cfg, InequalityId id);
InequalityInstance build_instance(const GenConfig& cfg, InequalityId id,
                                  const InstanceParams& params);

// draw + build. Throws ValidationError when the config is incompatible with
// the id (e.g. bessel_3_1 with a generic family) or infeasible (n*d > m for
// block families).
InequalityInstance gen_instance(const GenConfig& cfg, InequalityId id);

// Family/coefficient kinds a campaign uses by default for each id.
FamilyKind default_family_for(InequalityId id);

// True when `kind` can produce valid instances of `id`.
bool family_kind_compatible(InequalityId id, FamilyKind kind);

} // namespace hmod
