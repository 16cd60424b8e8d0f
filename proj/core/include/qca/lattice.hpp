/**
 * Position-space simulation on finite periodic lattices: Gaussian wave
 * packets, direct and spectral stepping, centroid-velocity measurement, and
 * the automaton-vs-continuum discrimination probability.
 */
#pragma once

#include "qca/kspace.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qca::lattice {

using kspace::KPoint;
using kspace::TransitionRule;

/// A spinor-valued field on a periodic integer lattice. Storage is
/// site-major with components innermost: data[site_linear * spin + c], sites
/// linearized row-major (last axis fastest).
struct SpinorField {
    IVec shape;  ///< periodic sizes per axis
    int spin = 0;
    Vec data;

    std::int64_t sites() const;
    std::int64_t site_index(const IVec& site) const;  ///< wraps periodically
    cplx& at(const IVec& site, int component);
    const cplx& at(const IVec& site, int component) const;
    double norm() const;
};

SpinorField zero_field(const IVec& shape, int spin);

/// Gaussian packet parameters. The spinor is taken per mode on the positive
/// dispersion branch (projector applied to the branch eigenvector at k₀)
/// unless a custom spinor is supplied.
struct PacketSpec {
    RVec k0;            ///< central wave vector, physical coordinates
    double width = 0.1; ///< Gaussian σ in physical k-space
    std::optional<Vec> custom_spinor;
};

/// Unit-norm Gaussian superposition of plane waves centered at k₀, k-space
/// support truncated at 5σ. Throws ConfigError when k₀ lies outside the
/// Brillouin zone and ShapeError when the shape holds fewer than 6 position
/// widths along some axis.
SpinorField make_packet(const TransitionRule& rule, const IVec& shape,
                        const PacketSpec& spec);

/// One step by the site-local neighborhood sum with periodic wrap.
/// Throws ShapeError on spin/shape mismatch or neighborhood self-overlap.
SpinorField step_direct(const TransitionRule& rule, const SpinorField& field);

/// One step through the wave-vector representation: Fourier transform,
/// A_k per mode, inverse transform.
SpinorField step_spectral(const TransitionRule& rule, const SpinorField& field);

/// T steps through the wave-vector representation using A_k^T per mode
/// (phase-exact composition of step_spectral).
SpinorField evolve_spectral(const TransitionRule& rule, const SpinorField& field,
                            int steps);

/// Density centroid of the field in integer coordinates, computed per axis by
/// the periodic (circular-mean) position estimate in [−L/2, L/2).
RVec centroid(const SpinorField& field);

/// One tracked evolution: per-step centroids (unwrapped, integer coordinates),
/// norms, and the least-squares velocity in physical coordinates.
struct Trajectory {
    std::vector<RVec> centroids;  ///< t = 0..T, unwrapped integer coordinates
    std::vector<double> norms;
    RVec velocity;                ///< physical coordinates (embedding · slope)
    bool wrapped = false;         ///< true when tracking stopped at a wrap-around
};

/// Measures the transport velocity of a packet: least-squares slope of the
/// unwrapped centroid over t = 0..T, converted to physical coordinates.
/// A centroid increment beyond a quarter torus throws WrapAroundError, or —
/// with stop_on_wrap — truncates the trajectory and sets the wrapped flag.
Trajectory track_packet(const TransitionRule& rule, const IVec& shape,
                        const PacketSpec& spec, int steps,
                        bool stop_on_wrap = false);

/// Convenience wrapper returning only the velocity of track_packet.
RVec centroid_velocity(const TransitionRule& rule, const IVec& shape,
                       const PacketSpec& spec, int steps);

/// Helstrom minimum-error probability for discriminating the automaton
/// evolution from the per-mode continuum evolution exp(−iH(k)T) of the same
/// packet: p_e = (1 − √(1 − |⟨ψ_A|ψ_H⟩|²))/2. The computation runs on the
/// packet's truncated reciprocal support, so very large shapes are fine.
/// Overlaps within 5e−14 of modulus one are treated as exactly one.
double discrimination_error(const TransitionRule& rule,
                            const std::function<Mat(const KPoint&)>& target,
                            const IVec& shape, const PacketSpec& spec, int steps);

}  // namespace qca::lattice
