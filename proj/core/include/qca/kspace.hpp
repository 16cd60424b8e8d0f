/**
 * Wave-vector representation of a translation-invariant automaton: A_k
 * synthesis, unitarity and isotropy verification, dispersion relations,
 * interpolating Hamiltonians, group velocities, small-k residual fits, and the
 * translation-covariance check on finite tori.
 */
#pragma once

#include "qca/common.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qca::kspace {

/// A wave vector in physical (embedding) coordinates.
struct KPoint {
    RVec k;
    KPoint() = default;
    KPoint(RVec v) : k(std::move(v)) {}  // NOLINT: implicit by design
    int dim() const { return static_cast<int>(k.size()); }
    double operator[](int i) const { return k[i]; }
};

/// Underlying lattice of a rule; fixes the Brillouin zone and the
/// integer-to-embedding conversion.
enum class Lattice { line, square, bcc };

/// One neighbor term of a rule: generator label, integer lattice vector,
/// unit-length Euclidean embedding, and the transition matrix.
struct GeneratorTerm {
    std::string label;
    IVec coord;
    RVec embed;
    Mat matrix;
};

/// A translation-invariant local rule A = Σ_h T_h ⊗ A_h (+ optional identity
/// term A_e). Generators are listed with inverses as separate labels; the
/// label set is closed under inversion.
struct TransitionRule {
    std::string name;
    int dim = 0;   ///< spatial dimension d
    int spin = 0;  ///< internal components s
    Lattice lattice = Lattice::line;
    RMat coord_to_embed;  ///< C with embed = C * coord, k_physical = C^{-T} k_integer
    std::vector<GeneratorTerm> terms;
    std::optional<Mat> identity_term;

    const GeneratorTerm* find_term(const std::string& label) const;
    RVec embed_of(const IVec& coord) const;
    /// Physical wave vector of an integer-grid wave vector (C^{-T} k_int).
    RVec k_physical(const RVec& k_integer) const;
    /// Integer-grid wave vector of a physical one (C^T k_phys).
    RVec k_integer(const RVec& k_physical) const;
    /// Checks label uniqueness, inversion closure of the coordinate set,
    /// embedding consistency, and matrix shapes.
    void validate() const;
};

/// Fundamental domain of inequivalent physical wave vectors.
struct BrillouinZone {
    Lattice lattice = Lattice::line;
    int dim = 1;

    bool contains(const KPoint& k) const;
    /// Half-width of the axis-aligned bounding box (per component).
    double box_halfwidth() const;
    /// Uniform random point of the zone (rejection from the bounding box).
    RVec sample(std::mt19937_64& rng) const;
    /// Axis-uniform grid over the bounding box (n points per axis, endpoints
    /// included), filtered by membership.
    std::vector<RVec> uniform_grid(int points_per_axis) const;
};

BrillouinZone brillouin_zone(const TransitionRule& rule);

/// One isotropy-group element: a permutation of the generator labels together
/// with its unitary representative on the internal space.
struct IsotropyElement {
    std::string name;
    std::map<std::string, std::string> perm;  ///< generator label -> generator label
    Mat U;
};

struct IsotropyGroup {
    std::vector<IsotropyElement> elements;
};

/// A_k = A_e + Σ_h e^{−i k·h_embed} A_h at a physical wave vector.
Mat build_ak(const TransitionRule& rule, const KPoint& k);

/// Unitarity of the rule in terms of the transition matrices. cond1 is the
/// completeness residual max(‖Σ A†A − I‖, ‖Σ AA† − I‖); cond2 holds one
/// partial-sum residual per nonzero integer difference vector h⁻¹h' (and
/// h'h⁻¹), keyed by the vector rendered as "(a,b,...)".
struct UnitarityReport {
    double cond1_residual = 0.0;
    std::map<std::string, double> cond2_residuals;
    double tolerance = 0.0;
    bool pass = false;
    double worst() const;
};
UnitarityReport unitarity_report(const TransitionRule& rule,
                                 double tolerance = Tolerances{}.algebraic);

/// Covariance of the rule under an isotropy group: A_{l(h)} = U_l A_h U_l†
/// for every element and every generator (inverses included). Also verifies
/// that the permutations are closed under composition, act transitively on
/// the generator set, and that U is a faithful projective representation on
/// the multiplication table.
struct IsotropyReport {
    double worst_residual = 0.0;
    bool covariant = false;
    bool transitive = false;
    bool closed = false;
    bool faithful = false;
    bool pass = false;
};
IsotropyReport isotropy_check(const TransitionRule& rule, const IsotropyGroup& group,
                              double tolerance = Tolerances{}.algebraic);

/// Sorted eigenphases ω of A_k = exp(−i ω) per branch, folded to (−π, π].
/// Throws NonUnitaryError when A_k is not unitary within tolerance.
RVec dispersion(const TransitionRule& rule, const KPoint& k,
                double tolerance = Tolerances{}.spectral);

/// Principal interpolating Hamiltonian H with exp(−iH) = A_k, eigenphases in
/// (−π, π]. Throws BranchCutError when an eigenphase touches the cut at π.
Mat interpolating_hamiltonian(const TransitionRule& rule, const KPoint& k,
                              double tolerance = Tolerances{}.spectral);

/// Gradient of the selected dispersion branch (index into the sorted phase
/// list) by central finite differences with one Richardson refinement step.
/// Throws DegeneracyError when the branch is not isolated at k.
RVec group_velocity(const TransitionRule& rule, const KPoint& k, int branch,
                    double step = 1e-5);

/// Log-log least-squares fit of the residual ‖H_I(k) − target(k)‖_F against
/// |k| over random directions at the given magnitudes.
struct FitResult {
    double slope = 0.0;          ///< fitted exponent
    double log_prefactor = 0.0;  ///< intercept of the log-log fit
    double prefactor = 0.0;      ///< exp(intercept)
    std::size_t sample_count = 0;
    double max_residual = 0.0;   ///< largest residual norm entering the fit
};
FitResult small_k_residual_fit(const TransitionRule& rule,
                               const std::function<Mat(const RVec&)>& target,
                               const std::vector<double>& magnitudes,
                               int directions_per_magnitude = 6,
                               std::uint64_t seed = 42,
                               bool subtract_zero_offset = false);

/// Replaces the local matrix action at one site (negative-testing hook for
/// translation covariance).
struct SitePatch {
    IVec site;
    Mat factor;  ///< applied to the site's output components
};

/// True iff the one-particle evolution matrix on the Z_L^d torus commutes
/// with the unit translations and `samples` random translations.
/// Throws ShapeError when generator neighborhoods self-overlap on the torus.
bool translation_covariance_check(const TransitionRule& rule, const IVec& shape,
                                  int samples = 4, std::uint64_t seed = 7,
                                  const std::optional<SitePatch>& patch = std::nullopt,
                                  double tolerance = Tolerances{}.algebraic);

/// Sorted eigenphases of a unitary matrix, folded to (−π, π]; the shared
/// backend of dispersion/interpolating_hamiltonian, exposed for reuse.
RVec eigenphases(const Mat& unitary, double tolerance = Tolerances{}.spectral);

}  // namespace qca::kspace
