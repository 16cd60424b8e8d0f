/**
 * The bilinear photon construction: transverse G-field dynamics as spin-1
 * rotations, emergent Maxwell equations in wave-vector space, exact
 * small-Fock-space fermionic algebra, and the bosonic-commutator deviation of
 * smeared polarization operators.
 */
#pragma once

#include "qca/models.hpp"

#include <Eigen/SparseCore>

#include <utility>
#include <vector>

namespace qca::maxwell {

using models::WeylVariant;
using kspace::KPoint;

using SpMat = Eigen::SparseMatrix<cplx>;
using Vec3c = Eigen::Vector3cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// A transverse bilinear field value at one wave vector: the 3 complex
/// components together with the rotation axis vector n_{k/2}.
struct GField {
    RVec k;      ///< physical wave vector (of the field, not the halved one)
    Vec3c value;
    Vec3 n;      ///< n_{k/2}
};

/// G minus its component along n; idempotent, n·result = 0.
/// Throws SingularPointError when n vanishes.
Vec3c transverse_project(const Vec3c& g, const Vec3& n);

/// Rotation matrix Exp(−i 2 n·J t) on component vectors: the rotation about
/// n̂ by angle 2|n|t (identity when n = 0).
Mat3 rotation_about(const Vec3& n, double t);

/// Compares the conjugation map G^i(t) built from W†^t σ^i W^t at k/2 with
/// the spin-1 rotation Exp(−i 2 n_{k/2}·J t) for integer t ≥ 0; also checks
/// that the component along the axis is invariant.
struct RotationCheckReport {
    double conjugation_deviation = 0.0;  ///< max |M_conj − R|
    double axis_invariance = 0.0;        ///< ‖R n − n‖
    bool pass = false;
};
RotationCheckReport conjugation_rotation_check(const WeylVariant& v, const KPoint& k,
                                               int t,
                                               double tolerance = Tolerances{}.algebraic);

/// Hermitian/anti-Hermitian decomposition scaled by |n|:
/// E = 2|n| Re G_T, B = 2|n| Im G_T, so that G_T = (E + iB)/(2|n|).
std::pair<Vec3, Vec3> eb_fields(const Vec3c& g_t, const Vec3& n);

/// Evolves a transverse field through the interpolating rotation and reports
/// the residuals of the emergent free Maxwell equations with the wave vector
/// replaced by 2 n_{k/2}: transversality of E and B, the two curl equations
/// in the positive-frequency form ∂_t E⁺ = i(2n)×B⁺, ∂_t B⁺ = −i(2n)×E⁺
/// (time derivative from the exact rotation generator), and the integer-step
/// cross-check against the discrete conjugation map. Also reports
/// ‖2 n_{k/2} − k/√3‖ for the small-k consistency trend.
struct MaxwellReport {
    double transversality_residual = 0.0;
    double curl_residual = 0.0;
    double integer_step_residual = 0.0;
    double n_vs_k = 0.0;  ///< ‖2 n_{k/2} − k/√3‖
    bool pass = false;
};
MaxwellReport maxwell_residual(const WeylVariant& v, const KPoint& k,
                               const std::vector<double>& times,
                               double transversality_tol = 1e-12,
                               double curl_tol = 1e-10);

/// Exact fermionic mode algebra on 2N modes (N per species) built by the
/// graded (Jordan–Wigner) construction on a 2^{2N}-dimensional space.
/// Mode order: species 0 occupies global modes 0..N−1, species 1 the rest.
class FockAlgebra {
  public:
    /// Throws ConfigError when 2N exceeds the mode cap.
    explicit FockAlgebra(int modes_per_species, int mode_cap = 12);

    int modes_per_species() const { return n_; }
    int total_modes() const { return 2 * n_; }
    std::int64_t dimension() const { return std::int64_t(1) << total_modes(); }

    /// Annihilator of a global mode index.
    const SpMat& annihilator(int mode) const;
    /// Annihilator of (species, index within species).
    const SpMat& annihilator(int species, int index) const;
    SpMat creator(int mode) const;

    /// Basis state with the given occupation bitmask (bit j = mode j occupied).
    Vec basis_state(std::uint64_t mask) const;
    Vec vacuum() const;

    /// Applies the annihilator/creator directly to a state vector
    /// (matrix-free path used by the deviation scans).
    void apply_annihilator(int mode, const Vec& in, Vec& out) const;
    void apply_creator(int mode, const Vec& in, Vec& out) const;

  private:
    int n_;
    std::vector<SpMat> ops_;
};

FockAlgebra build_fock(int modes_per_species, int mode_cap = 12);

/// Constant-modulus smearing over N_k mode slots per species (N_k = 2 ×
/// q-points, both spinor components counted): |f|² = 1/N_k on the region.
struct SmearingProfile {
    int points = 1;  ///< q-points in the region Ω_k
    int modes() const { return 2 * points; }              ///< N_k
    double weight() const;                                ///< 1/√N_k
};

/// Smeared polarization operators γ^i = Σ_q f Σ_{ab} (u_i·σ)_{ab} φ_a(q) ψ_b(q)
/// for the two transverse frame vectors u₁, u₂ of the right-handed orthonormal
/// frame (u₁, u₂, n̂). Throws ConfigError when the frame is not orthonormal
/// and right-handed or when the profile needs more modes than f provides.
std::pair<SpMat, SpMat> polarization_ops(const FockAlgebra& f,
                                         const SmearingProfile& profile,
                                         const Vec3& u1, const Vec3& u2,
                                         const Vec3& n);

/// Max over all basis states with M excitations (and over i, j) of
/// ‖([γ^i, γ^j†] − δ_ij)|state⟩‖; shrinks with M/N_k.
double boson_commutator_deviation(const FockAlgebra& f, const SpMat& gamma1,
                                  const SpMat& gamma2, int excitations);

}  // namespace qca::maxwell
