#include "qca/lattice.hpp"

#include <Eigen/Eigenvalues>

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <vector>

namespace qca::lattice {

namespace {

constexpr cplx I_UNIT{0.0, 1.0};

std::int64_t product(const IVec& shape) {
    std::int64_t n = 1;
    for (int i = 0; i < shape.size(); ++i) n *= shape[i];
    return n;
}

int wrap(int x, int l) {
    int m = x % l;
    return m < 0 ? m + l : m;
}

void check_field_shape(const TransitionRule& rule, const SpinorField& field) {
    if (field.shape.size() != rule.dim) throw ShapeError("field dimension mismatch");
    if (field.spin != rule.spin) throw ShapeError("field spin mismatch");
    if (field.data.size() != product(field.shape) * field.spin)
        throw ShapeError("field storage size mismatch");
}

/// Cached FFTW plans per (shape, spin, direction); created once under a lock,
/// executed concurrently through the new-array interface.
class PlanCache {
  public:
    fftw_plan get(const IVec& shape, int spin, int sign) {
        std::vector<int> key(shape.data(), shape.data() + shape.size());
        key.push_back(spin);
        key.push_back(sign);
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        const std::int64_t n = product(shape) * spin;
        fftw_complex* scratch_in = fftw_alloc_complex(n);
        fftw_complex* scratch_out = fftw_alloc_complex(n);
        std::vector<int> dims(shape.data(), shape.data() + shape.size());
        fftw_plan plan = fftw_plan_many_dft(
            static_cast<int>(dims.size()), dims.data(), spin, scratch_in, nullptr, spin, 1,
            scratch_out, nullptr, spin, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch_in);
        fftw_free(scratch_out);
        if (!plan) throw Error("FFT plan creation failed");
        plans_[key] = plan;
        return plan;
    }

  private:
    std::mutex mutex_;
    std::map<std::vector<int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

void run_fft(const IVec& shape, int spin, int sign, const Vec& in, Vec& out) {
    fftw_plan plan = plan_cache().get(shape, spin, sign);
    out.resize(in.size());
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

/// Rejects shapes on which distinct neighborhood offsets coincide.
void check_no_wrap_overlap(const TransitionRule& rule, const IVec& shape) {
    std::set<std::vector<int>> seen;
    auto add = [&](const IVec& c) {
        std::vector<int> m(shape.size());
        for (int i = 0; i < shape.size(); ++i) m[i] = wrap(c[i], shape[i]);
        if (!seen.insert(m).second)
            throw ShapeError("neighborhood wrap-around overlap on this shape");
    };
    add(IVec::Zero(rule.dim));
    for (const auto& t : rule.terms) add(t.coord);
}

Mat unitary_power(const Mat& a, int t) {
    Mat result = Mat::Identity(a.rows(), a.cols());
    Mat base = a;
    int e = t;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

/// One reciprocal-grid mode of a truncated Gaussian packet.
struct PacketMode {
    std::int64_t linear;  ///< wrapped site index on the reciprocal grid
    RVec k_phys;          ///< physical wave vector (unwrapped representative)
    double amp;           ///< Gaussian amplitude, normalized over the support
    Vec spinor;           ///< unit internal vector for this mode
};

/// Enumerates the 5σ-truncated support of a Gaussian packet on the reciprocal
/// grid of `shape`, with per-mode positive-branch spinors (or the custom one).
std::vector<PacketMode> enumerate_packet_modes(const TransitionRule& rule,
                                               const IVec& shape, const PacketSpec& spec) {
    if (shape.size() != rule.dim) throw ShapeError("shape dimension mismatch");
    for (int i = 0; i < shape.size(); ++i)
        if (shape[i] < 2) throw ShapeError("shape sizes must be at least 2");
    if (!(spec.width > 0.0)) throw ConfigError("packet width must be positive");
    if (spec.k0.size() != rule.dim) throw ConfigError("packet wave vector dimension mismatch");

    const kspace::BrillouinZone bz = kspace::brillouin_zone(rule);
    if (!bz.contains(kspace::KPoint(spec.k0)))
        throw ConfigError("packet center lies outside the Brillouin zone");

    // The shape must accommodate at least 6 position-space widths per axis;
    // the k-space width along integer axis i is width·‖C col i‖.
    RVec sigma_int(rule.dim);
    for (int i = 0; i < rule.dim; ++i) {
        sigma_int[i] = spec.width * rule.coord_to_embed.col(i).norm();
        if (shape[i] < 6.0 / sigma_int[i])
            throw ShapeError("shape holds fewer than 6 packet widths along an axis");
    }

    // Reference spinor: supplied, or the positive-branch eigenvector at k₀.
    Vec ref;
    const bool project = !spec.custom_spinor.has_value();
    if (spec.custom_spinor) {
        ref = *spec.custom_spinor;
        if (ref.size() != rule.spin) throw ConfigError("custom spinor has wrong dimension");
        if (ref.norm() < 1e-14) throw ConfigError("custom spinor is zero");
        ref /= ref.norm();
    } else {
        Eigen::ComplexSchur<Mat> schur(kspace::build_ak(rule, kspace::KPoint(spec.k0)));
        int best = -1;
        double best_phase = 0.0;
        for (int i = 0; i < rule.spin; ++i) {
            double w = -std::arg(schur.matrixT()(i, i));
            if (w <= -pi) w += 2.0 * pi;
            if (w > 1e-12 && (best < 0 || w < best_phase)) {
                best = i;
                best_phase = w;
            }
        }
        if (best < 0)
            throw DegeneracyError("no positive dispersion branch at the packet center");
        ref = schur.matrixU().col(best);
        // Deterministic global phase: largest component real positive.
        int arg_max = 0;
        for (int i = 1; i < rule.spin; ++i)
            if (std::abs(ref[i]) > std::abs(ref[arg_max])) arg_max = i;
        ref *= std::abs(ref[arg_max]) / ref[arg_max];
    }

    const RVec k0_int = rule.k_integer(spec.k0);
    std::vector<int> center(rule.dim), halfwidth(rule.dim);
    for (int i = 0; i < rule.dim; ++i) {
        center[i] = static_cast<int>(std::lround(k0_int[i] * shape[i] / (2.0 * pi)));
        halfwidth[i] =
            static_cast<int>(std::ceil(5.0 * sigma_int[i] * shape[i] / (2.0 * pi))) + 1;
        halfwidth[i] = std::min(halfwidth[i], (shape[i] - 1) / 2);
    }

    std::vector<PacketMode> modes;
    std::vector<int> offset(rule.dim);
    for (int i = 0; i < rule.dim; ++i) offset[i] = -halfwidth[i];
    while (true) {
        RVec k_int(rule.dim);
        std::int64_t linear = 0;
        for (int i = 0; i < rule.dim; ++i) {
            const int m = center[i] + offset[i];
            k_int[i] = 2.0 * pi * m / shape[i];
            linear = linear * shape[i] + wrap(m, shape[i]);
        }
        const RVec k_phys = rule.k_physical(k_int);
        const double dist = (k_phys - spec.k0).norm();
        if (dist <= 5.0 * spec.width) {
            const double amp = std::exp(-dist * dist / (4.0 * spec.width * spec.width));
            Vec v = ref;
            if (project) {
                // Positive-branch projector at this mode applied to the
                // reference spinor keeps the packet on one band.
                Eigen::ComplexSchur<Mat> schur(kspace::build_ak(rule, kspace::KPoint(k_phys)));
                Vec projected = Vec::Zero(rule.spin);
                for (int i = 0; i < rule.spin; ++i) {
                    double w = -std::arg(schur.matrixT()(i, i));
                    if (w <= -pi) w += 2.0 * pi;
                    if (w > 1e-12) {
                        const Vec q = schur.matrixU().col(i);
                        projected += q * q.dot(ref);
                    }
                }
                if (projected.norm() >= 1e-8) v = projected / projected.norm();
                else v = Vec();  // branch content vanished; drop the mode
            }
            if (v.size() > 0) modes.push_back({linear, k_phys, amp, std::move(v)});
        }
        int axis = rule.dim - 1;
        while (axis >= 0 && ++offset[axis] > halfwidth[axis]) {
            offset[axis] = -halfwidth[axis];
            --axis;
        }
        if (axis < 0) break;
    }
    if (modes.empty()) throw ConfigError("packet support is empty on this reciprocal grid");

    double norm2 = 0.0;
    for (const PacketMode& m : modes) norm2 += m.amp * m.amp;
    const double scale = 1.0 / std::sqrt(norm2);
    for (PacketMode& m : modes) m.amp *= scale;
    return modes;
}

/// Inverse transform of a sparse reciprocal-space coefficient list into a
/// unit-norm position-space field.
SpinorField synthesize(const TransitionRule& rule, const IVec& shape,
                       const std::vector<PacketMode>& modes,
                       const std::vector<Vec>& coefficients) {
    SpinorField khat = zero_field(shape, rule.spin);
    for (std::size_t j = 0; j < modes.size(); ++j)
        khat.data.segment(modes[j].linear * rule.spin, rule.spin) += coefficients[j];
    SpinorField field = zero_field(shape, rule.spin);
    run_fft(shape, rule.spin, FFTW_BACKWARD, khat.data, field.data);
    field.data /= std::sqrt(static_cast<double>(product(shape)));
    return field;
}

RVec lsq_slope(const std::vector<RVec>& series) {
    const int dim = static_cast<int>(series.front().size());
    const double n = static_cast<double>(series.size());
    RVec slope(dim);
    double sx = 0, sxx = 0;
    for (std::size_t t = 0; t < series.size(); ++t) {
        sx += static_cast<double>(t);
        sxx += static_cast<double>(t) * static_cast<double>(t);
    }
    for (int i = 0; i < dim; ++i) {
        double sy = 0, sxy = 0;
        for (std::size_t t = 0; t < series.size(); ++t) {
            sy += series[t][i];
            sxy += static_cast<double>(t) * series[t][i];
        }
        slope[i] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return slope;
}

}  // namespace

std::int64_t SpinorField::sites() const { return product(shape); }

std::int64_t SpinorField::site_index(const IVec& site) const {
    std::int64_t idx = 0;
    for (int i = 0; i < shape.size(); ++i) idx = idx * shape[i] + wrap(site[i], shape[i]);
    return idx;
}

cplx& SpinorField::at(const IVec& site, int component) {
    return data[site_index(site) * spin + component];
}

const cplx& SpinorField::at(const IVec& site, int component) const {
    return data[site_index(site) * spin + component];
}

double SpinorField::norm() const { return data.norm(); }

SpinorField zero_field(const IVec& shape, int spin) {
    if (spin < 1) throw ShapeError("spin must be positive");
    for (int i = 0; i < shape.size(); ++i)
        if (shape[i] < 1) throw ShapeError("shape sizes must be positive");
    SpinorField f;
    f.shape = shape;
    f.spin = spin;
    f.data = Vec::Zero(product(shape) * spin);
    return f;
}

SpinorField make_packet(const TransitionRule& rule, const IVec& shape,
                        const PacketSpec& spec) {
    const std::vector<PacketMode> modes = enumerate_packet_modes(rule, shape, spec);
    std::vector<Vec> coeff(modes.size());
    for (std::size_t j = 0; j < modes.size(); ++j) coeff[j] = modes[j].amp * modes[j].spinor;
    SpinorField field = synthesize(rule, shape, modes, coeff);
    field.data /= field.norm();
    return field;
}

SpinorField step_direct(const TransitionRule& rule, const SpinorField& field) {
    check_field_shape(rule, field);
    check_no_wrap_overlap(rule, field.shape);
    const int s = rule.spin;
    const std::int64_t n = field.sites();
    SpinorField out = zero_field(field.shape, s);

    // Precompute the source-site index map once per generator term.
    const int dim = rule.dim;
    std::vector<IVec> sites(n);
    {
        IVec site = IVec::Zero(dim);
        for (std::int64_t g = 0; g < n; ++g) {
            sites[g] = site;
            int axis = dim - 1;
            while (axis >= 0 && ++site[axis] == field.shape[axis]) site[axis--] = 0;
        }
    }
    if (rule.identity_term) {
        for (std::int64_t g = 0; g < n; ++g)
            out.data.segment(g * s, s) += *rule.identity_term * field.data.segment(g * s, s);
    }
    for (const auto& term : rule.terms) {
        std::vector<std::int64_t> src(n);
        for (std::int64_t g = 0; g < n; ++g)
            src[g] = field.site_index(IVec(sites[g] - term.coord));
        for (std::int64_t g = 0; g < n; ++g)
            out.data.segment(g * s, s) += term.matrix * field.data.segment(src[g] * s, s);
    }
    return out;
}

SpinorField step_spectral(const TransitionRule& rule, const SpinorField& field) {
    return evolve_spectral(rule, field, 1);
}

SpinorField evolve_spectral(const TransitionRule& rule, const SpinorField& field, int steps) {
    check_field_shape(rule, field);
    if (steps < 0) throw ConfigError("step count must be non-negative");
    const int s = rule.spin;
    const std::int64_t n = field.sites();
    const int dim = rule.dim;

    Vec khat;
    run_fft(field.shape, s, FFTW_FORWARD, field.data, khat);

    parallel_for(n, [&](std::int64_t g) {
        RVec k_int(dim);
        std::int64_t rest = g;
        for (int i = dim - 1; i >= 0; --i) {
            k_int[i] = 2.0 * pi * static_cast<double>(rest % field.shape[i]) / field.shape[i];
            rest /= field.shape[i];
        }
        const Mat ak = kspace::build_ak(rule, kspace::KPoint(rule.k_physical(k_int)));
        khat.segment(g * s, s) = unitary_power(ak, steps) * khat.segment(g * s, s);
    });

    SpinorField out = zero_field(field.shape, s);
    run_fft(field.shape, s, FFTW_BACKWARD, khat, out.data);
    out.data /= static_cast<double>(n);
    return out;
}

RVec centroid(const SpinorField& field) {
    const int dim = static_cast<int>(field.shape.size());
    const int s = field.spin;
    const std::int64_t n = field.sites();
    std::vector<cplx> ring(dim, cplx(0.0, 0.0));
    IVec site = IVec::Zero(dim);
    for (std::int64_t g = 0; g < n; ++g) {
        double dens = field.data.segment(g * s, s).squaredNorm();
        for (int i = 0; i < dim; ++i)
            ring[i] += dens * std::exp(I_UNIT * (2.0 * pi * site[i] / field.shape[i]));
        int axis = dim - 1;
        while (axis >= 0 && ++site[axis] == field.shape[axis]) site[axis--] = 0;
    }
    RVec pos(dim);
    for (int i = 0; i < dim; ++i)
        pos[i] = std::arg(ring[i]) * field.shape[i] / (2.0 * pi);
    return pos;
}

Trajectory track_packet(const TransitionRule& rule, const IVec& shape,
                        const PacketSpec& spec, int steps, bool stop_on_wrap) {
    if (steps < 1) throw ConfigError("need at least one step");
    const std::vector<PacketMode> modes = enumerate_packet_modes(rule, shape, spec);

    // Per-mode one-step matrices; the evolution lives on the sparse support.
    std::vector<Mat> ak(modes.size());
    for (std::size_t j = 0; j < modes.size(); ++j)
        ak[j] = kspace::build_ak(rule, kspace::KPoint(modes[j].k_phys));
    std::vector<Vec> coeff(modes.size());
    for (std::size_t j = 0; j < modes.size(); ++j) coeff[j] = modes[j].amp * modes[j].spinor;
    {  // normalize in k-space so every synthesized field has norm ~1
        double norm2 = 0.0;
        for (const Vec& c : coeff) norm2 += c.squaredNorm();
        for (Vec& c : coeff) c /= std::sqrt(norm2);
    }

    Trajectory traj;
    RVec wrapped_prev;
    RVec unwrapped;
    for (int t = 0; t <= steps && !traj.wrapped; ++t) {
        const SpinorField field = synthesize(rule, shape, modes, coeff);
        const RVec wrapped = centroid(field);
        if (t == 0) {
            unwrapped = wrapped;
        } else {
            RVec inc(wrapped.size());
            for (int i = 0; i < wrapped.size(); ++i) {
                const double l = shape[i];
                double d = wrapped[i] - wrapped_prev[i];
                d = std::fmod(d + l / 2.0, l);
                if (d < 0) d += l;
                d -= l / 2.0;
                if (std::abs(d) > l / 4.0) {
                    if (!stop_on_wrap)
                        throw WrapAroundError("centroid increment exceeds a quarter torus");
                    traj.wrapped = true;
                }
                inc[i] = d;
            }
            if (traj.wrapped) break;  // keep only the reliable prefix
            unwrapped += inc;
        }
        traj.norms.push_back(field.norm());
        wrapped_prev = wrapped;
        traj.centroids.push_back(unwrapped);
        if (t < steps)
            for (std::size_t j = 0; j < modes.size(); ++j) coeff[j] = ak[j] * coeff[j];
    }
    if (traj.centroids.size() >= 2)
        traj.velocity = rule.coord_to_embed * lsq_slope(traj.centroids);
    else
        traj.velocity = RVec::Zero(rule.dim);
    return traj;
}

RVec centroid_velocity(const TransitionRule& rule, const IVec& shape,
                       const PacketSpec& spec, int steps) {
    return track_packet(rule, shape, spec, steps).velocity;
}

double discrimination_error(const TransitionRule& rule,
                            const std::function<Mat(const KPoint&)>& target,
                            const IVec& shape, const PacketSpec& spec, int steps) {
    if (steps < 0) throw ConfigError("step count must be non-negative");
    const std::vector<PacketMode> modes = enumerate_packet_modes(rule, shape, spec);
    const double t = static_cast<double>(steps);

    auto evolve = [&](const Mat& h, const Vec& v) {
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        Vec phases(h.rows());
        for (int i = 0; i < h.rows(); ++i)
            phases[i] = std::exp(-I_UNIT * es.eigenvalues()[i] * t);
        return Vec(es.eigenvectors() * phases.asDiagonal() *
                   (es.eigenvectors().adjoint() * v));
    };

    cplx overlap(0.0, 0.0);
    for (const PacketMode& m : modes) {
        const kspace::KPoint k(m.k_phys);
        const Vec via_rule = evolve(kspace::interpolating_hamiltonian(rule, k), m.spinor);
        const Vec via_target = evolve(target(k), m.spinor);
        overlap += m.amp * m.amp * via_rule.dot(via_target);
    }

    double mod = std::abs(overlap);
    // Coinciding evolutions reach modulus one up to rounding only; snap to the
    // exact indistinguishable value inside a narrow floor.
    if (std::abs(mod - 1.0) < 5e-14) return 0.5;
    mod = std::min(mod, 1.0);
    return (1.0 - std::sqrt(1.0 - mod * mod)) / 2.0;
}

}  // namespace qca::lattice
