/**
 * Concrete automata: the Weyl rules in d = 1, 2, 3, the Dirac coupling, their
 * continuum target Hamiltonians, the n-vector machinery behind the
 * interpolating generator, Pauli/gamma matrices, and Planck-unit identities.
 */
#pragma once

#include "qca/kspace.hpp"

#include <optional>
#include <string>

namespace qca::models {

using kspace::KPoint;
using kspace::TransitionRule;

/// Chirality/transpose tag of a Weyl automaton.
enum class Chirality { APlus, AMinus, BPlus, BMinus };

/// Selects one member of the Weyl families: d=3 has the four chirality
/// variants, d=2 has A/B plus the one-parameter angle family, d=1 is a
/// singleton (tag and angle ignored).
struct WeylVariant {
    int dim = 3;
    Chirality chirality = Chirality::APlus;
    double theta = 0.0;  ///< d=2 family angle

    bool transposed() const {
        return chirality == Chirality::BPlus || chirality == Chirality::BMinus;
    }
    /// Sign s in u = c_x c_y c_z + s·s_x s_y s_z (d=3); +1 for '+', −1 for '−'.
    int sign() const {
        return (chirality == Chirality::APlus || chirality == Chirality::BPlus) ? +1 : -1;
    }
};

WeylVariant weyl1d();
WeylVariant weyl2d(Chirality chirality = Chirality::APlus, double theta = 0.0);
WeylVariant weyl3d(Chirality chirality = Chirality::APlus);

/// Mass parameter of the Dirac coupling; n = √(1 − m²) so n² + m² = 1.
struct DiracParams {
    double mass = 0.0;
    WeylVariant base = weyl3d();
    double n() const;
};

// Pauli matrices (1..3) and the 2x2 identity for index 0.
Mat pauli(int i);
/// Gamma matrices in the spinorial representation: γ⁰ = offdiag(I, I),
/// γ^i = offdiag(σ_i, −σ_i).
Mat gamma0();
Mat gamma(int i);

/// Closed-form one-step unitary A_k = u_k I − i σ·ñ_k of a Weyl variant at a
/// physical wave vector (with the variant's sign/transpose/angle structure).
Mat weyl_ak_closed(const WeylVariant& v, const KPoint& k);

/// Closed-form Dirac one-step unitary D_k = n u_k I − i n γ⁰γ·ñ_k + i m γ⁰.
Mat dirac_ak_closed(const DiracParams& p, const KPoint& k);

/// Transition-matrix form of a Weyl variant, with generators: d=3 BCC h₁..h₄
/// embedded at (±1,±1,±1)/√3 with zero sum; d=2 square h₁=(1,1)/√2,
/// h₂=(1,−1)/√2; d=1 a single unit-length generator. Inverse generators are
/// separate labeled terms.
TransitionRule weyl_rule(const WeylVariant& v);

/// Transition-matrix form of the Dirac coupling (s=4, same lattice as the
/// base Weyl variant; the identity term carries i m γ⁰).
/// Throws ConfigError when m is outside [0, 1].
TransitionRule dirac_rule(const DiracParams& p);

/// Inverts a trigonometric-polynomial ak over a declared generator support by
/// least squares on deterministic sample points: returns one matrix per label
/// plus the constant (identity-element) coefficient. Throws Error on
/// ill-conditioned sampling or when re-synthesis at fresh points misses the
/// input beyond tolerance (support mismatch).
struct ExtractionResult {
    std::map<std::string, Mat> matrices;
    Mat identity_term;            ///< constant coefficient (may be ~0)
    double resynthesis_residual;  ///< max check-point deviation
};
ExtractionResult extract_transition_matrices(
    const std::function<Mat(const KPoint&)>& ak,
    const std::vector<std::pair<std::string, RVec>>& generators, int spin,
    double tolerance = Tolerances{}.algebraic);

/// Continuum Weyl Hamiltonian σ·k/√d (component convention: d=1 uses σ_z,
/// d≥2 use σ_x, σ_y[, σ_z] in axis order).
Mat target_weyl_hamiltonian(int dim, const KPoint& k);

/// Continuum Dirac Hamiltonian (n/√d) γ⁰γ·k + m γ⁰ with the same component
/// convention as the Weyl target.
Mat target_dirac_hamiltonian(int dim, const KPoint& k, double mass);

/// The rotation-axis data of the interpolating generator: ñ_k from the closed
/// form, ω_k = arccos u_k, and n_k = (ω/sin ω) ñ_k with a series fallback for
/// small ω. Throws SingularPointError at ω = π (rescaling divergent).
struct NVector {
    RVec n_tilde;  ///< 3 components
    RVec n;        ///< rescaled axis vector, |n| = ω
    double omega;  ///< dispersion value arccos(u_k) ∈ [0, π]
};
NVector n_vector(const WeylVariant& v, const KPoint& k);

/// A system of lattice units tied by c = a/τ and ħ = M·a·c. The geometric
/// part (a, τ, c) is always determined; the mass pair (M, ħ) may remain free,
/// in which case only their ratio ħ/M = a·c is fixed.
struct UnitSystem {
    double a = 0.0;    ///< lattice step (m)
    double tau = 0.0;  ///< time step (s)
    double c = 0.0;    ///< a/τ (m/s)
    std::optional<double> M;     ///< mass unit (kg), when determined
    std::optional<double> hbar;  ///< M·a·c (J·s), when determined
    double hbar_per_M = 0.0;     ///< a·c, always determined
};

/// Optional inputs for planck_units; any subset may be given.
struct UnitInputs {
    std::optional<double> a, tau, M, c, hbar;
};

/// Completes a unit system from the identities c = a/τ, ħ = M·a·c.
/// Throws ConfigError when the inputs underdetermine (a, τ, c), when an
/// over-specification is inconsistent, or when a value is not positive.
UnitSystem planck_units(const UnitInputs& in);

/// Parsed CLI/config model selector ("weyl1d", "weyl2d", "weyl2dB",
/// "weyl3d+", "weyl3d-A", "weyl3d+B", "dirac", ...).
struct ModelSelection {
    bool dirac = false;
    WeylVariant variant;  ///< base variant for dirac
};
ModelSelection parse_model(const std::string& name);

/// The isotropy group acting on a model's generators: d=3 the four-element
/// group {I, iσ_x, iσ_y, iσ_z} paired with the binary-rotation permutations
/// of h₁..h₄; d=2 the two-element exchange group with U = iσ_x; d=1 the
/// trivial group. Dirac representatives act blockwise (U ⊕ U).
kspace::IsotropyGroup isotropy_group(const ModelSelection& sel);

}  // namespace qca::models
