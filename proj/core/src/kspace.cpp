#include "qca/kspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qca::kspace {

namespace {

constexpr cplx I_UNIT{0.0, 1.0};

std::string vec_key(const IVec& v) {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

struct IVecLess {
    bool operator()(const IVec& a, const IVec& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (int i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

}  // namespace

const GeneratorTerm* TransitionRule::find_term(const std::string& label) const {
    for (const GeneratorTerm& t : terms)
        if (t.label == label) return &t;
    return nullptr;
}

RVec TransitionRule::embed_of(const IVec& coord) const {
    return coord_to_embed * coord.cast<double>();
}

RVec TransitionRule::k_physical(const RVec& k_integer) const {
    return coord_to_embed.transpose().fullPivLu().solve(k_integer);
}

RVec TransitionRule::k_integer(const RVec& k_phys) const {
    return coord_to_embed.transpose() * k_phys;
}

void TransitionRule::validate() const {
    if (dim < 1 || spin < 1) throw ConfigError("rule dimensions not set");
    if (coord_to_embed.rows() != dim || coord_to_embed.cols() != dim)
        throw ConfigError("embedding conversion matrix has wrong shape");
    std::set<std::string> labels;
    std::set<IVec, IVecLess> coords;
    for (const GeneratorTerm& t : terms) {
        if (!labels.insert(t.label).second) throw ConfigError("duplicate generator label " + t.label);
        if (t.coord.size() != dim || t.embed.size() != dim)
            throw ConfigError("generator vector dimension mismatch: " + t.label);
        if (!coords.insert(t.coord).second)
            throw ConfigError("duplicate generator coordinate: " + t.label);
        if (t.matrix.rows() != spin || t.matrix.cols() != spin)
            throw ConfigError("transition matrix shape mismatch: " + t.label);
        if ((t.embed - embed_of(t.coord)).norm() > 1e-12)
            throw ConfigError("embedding inconsistent with conversion matrix: " + t.label);
    }
    for (const GeneratorTerm& t : terms) {
        if (!coords.count(IVec(-t.coord)))
            throw ConfigError("generator set not closed under inversion: " + t.label);
    }
    if (identity_term &&
        (identity_term->rows() != spin || identity_term->cols() != spin))
        throw ConfigError("identity term shape mismatch");
}

bool BrillouinZone::contains(const KPoint& k) const {
    if (k.dim() != dim) return false;
    switch (lattice) {
        case Lattice::line:
            return std::abs(k[0]) <= pi + 1e-15;
        case Lattice::square:
            return std::abs(k[0]) <= std::sqrt(2.0) * pi + 1e-15 &&
                   std::abs(k[1]) <= std::sqrt(2.0) * pi + 1e-15;
        case Lattice::bcc: {
            const double bound = std::sqrt(3.0) * pi + 1e-15;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    if (std::abs(k[i] + k[j]) > bound) return false;
                    if (std::abs(k[i] - k[j]) > bound) return false;
                }
            return true;
        }
    }
    return false;
}

double BrillouinZone::box_halfwidth() const {
    switch (lattice) {
        case Lattice::line: return pi;
        case Lattice::square: return std::sqrt(2.0) * pi;
        case Lattice::bcc: return std::sqrt(3.0) * pi;
    }
    return pi;
}

RVec BrillouinZone::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> u(-box_halfwidth(), box_halfwidth());
    while (true) {
        RVec k(dim);
        for (int i = 0; i < dim; ++i) k[i] = u(rng);
        if (contains(KPoint(k))) return k;
    }
}

std::vector<RVec> BrillouinZone::uniform_grid(int points_per_axis) const {
    if (points_per_axis < 1) throw ConfigError("grid size must be positive");
    const double hw = box_halfwidth();
    std::vector<double> axis(points_per_axis);
    for (int i = 0; i < points_per_axis; ++i)
        axis[i] = points_per_axis == 1 ? 0.0 : -hw + 2.0 * hw * i / (points_per_axis - 1);
    std::vector<RVec> grid;
    std::vector<int> idx(dim, 0);
    while (true) {
        RVec k(dim);
        for (int i = 0; i < dim; ++i) k[i] = axis[idx[i]];
        if (contains(KPoint(k))) grid.push_back(k);
        int axis_i = dim - 1;
        while (axis_i >= 0 && ++idx[axis_i] == points_per_axis) idx[axis_i--] = 0;
        if (axis_i < 0) break;
    }
    return grid;
}

BrillouinZone brillouin_zone(const TransitionRule& rule) {
    return BrillouinZone{rule.lattice, rule.dim};
}

Mat build_ak(const TransitionRule& rule, const KPoint& k) {
    if (k.dim() != rule.dim) throw ConfigError("wave vector dimension mismatch");
    if (!k.k.allFinite()) throw ConfigError("wave vector has non-finite components");
    Mat ak = rule.identity_term ? *rule.identity_term : Mat::Zero(rule.spin, rule.spin);
    for (const GeneratorTerm& t : rule.terms)
        ak += std::exp(-I_UNIT * k.k.dot(t.embed)) * t.matrix;
    return ak;
}

double UnitarityReport::worst() const {
    double w = cond1_residual;
    for (const auto& [key, r] : cond2_residuals) w = std::max(w, r);
    return w;
}

UnitarityReport unitarity_report(const TransitionRule& rule, double tolerance) {
    const int s = rule.spin;
    const Mat zero = Mat::Zero(s, s);

    // Collect the full support including the identity element at coordinate 0.
    std::vector<std::pair<IVec, Mat>> support;
    for (const GeneratorTerm& t : rule.terms) support.push_back({t.coord, t.matrix});
    if (rule.identity_term) support.push_back({IVec::Zero(rule.dim), *rule.identity_term});

    Mat sum_left = zero, sum_right = zero;
    std::map<IVec, Mat, IVecLess> left, right;  // difference vector -> partial sum
    for (const auto& [ca, ma] : support) {
        sum_left += ma.adjoint() * ma;
        sum_right += ma * ma.adjoint();
        for (const auto& [cb, mb] : support) {
            IVec diff = cb - ca;
            if (diff.cwiseAbs().sum() == 0) continue;
            auto itl = left.emplace(diff, zero).first;
            itl->second += ma.adjoint() * mb;
            auto itr = right.emplace(diff, zero).first;
            itr->second += mb * ma.adjoint();
        }
    }

    // Residuals in the operator norm (largest singular value).
    auto op_norm = [](const Mat& m) {
        return m.jacobiSvd().singularValues()[0];
    };

    UnitarityReport report;
    report.tolerance = tolerance;
    const Mat id = Mat::Identity(s, s);
    report.cond1_residual = std::max(op_norm(sum_left - id), op_norm(sum_right - id));
    for (const auto& [diff, m] : left) {
        double r = std::max(op_norm(m), op_norm(right.at(diff)));
        report.cond2_residuals[vec_key(diff)] = r;
    }
    report.pass = report.worst() <= tolerance;
    return report;
}

namespace {

bool is_positive_label(const std::string& label) {
    return label.size() < 3 || label.substr(label.size() - 3) != "inv";
}

/// Phase that best aligns b with a (least-squares over unit scalars).
cplx alignment_phase(const Mat& a, const Mat& b) {
    cplx t = (b.adjoint() * a).trace();
    double m = std::abs(t);
    return m < 1e-300 ? cplx(1.0, 0.0) : t / m;
}

bool projectively_equal(const Mat& a, const Mat& b, double tol) {
    cplx phase = alignment_phase(a, b);
    return std::abs(std::abs(phase) - 1.0) < 0.5 && (a - phase * b).norm() <= tol;
}

}  // namespace

IsotropyReport isotropy_check(const TransitionRule& rule, const IsotropyGroup& group,
                              double tolerance) {
    IsotropyReport report;
    if (group.elements.empty()) throw ConfigError("empty isotropy group");

    // Covariance A_{l(h)} = U A_h U† over every element and every generator.
    double worst = 0.0;
    for (const IsotropyElement& el : group.elements) {
        if (el.U.rows() != rule.spin || el.U.cols() != rule.spin)
            throw ConfigError("isotropy representative has wrong shape: " + el.name);
        for (const GeneratorTerm& t : rule.terms) {
            auto it = el.perm.find(t.label);
            if (it == el.perm.end())
                throw ConfigError("permutation not defined on generator " + t.label +
                                  " in element " + el.name);
            const GeneratorTerm* image = rule.find_term(it->second);
            if (!image)
                throw ConfigError("permutation maps " + t.label + " outside the generator set");
            worst = std::max(worst, (image->matrix - el.U * t.matrix * el.U.adjoint()).norm());
        }
    }
    report.worst_residual = worst;
    report.covariant = worst <= tolerance;

    // Closure of the permutation set under composition; the composed element's
    // representative must match U_a U_b up to a phase (projective faithfulness).
    report.closed = true;
    report.faithful = true;
    auto compose = [](const IsotropyElement& a, const IsotropyElement& b) {
        std::map<std::string, std::string> c;
        for (const auto& [h, bh] : b.perm) c[h] = a.perm.at(bh);
        return c;
    };
    for (const IsotropyElement& a : group.elements) {
        for (const IsotropyElement& b : group.elements) {
            std::map<std::string, std::string> ab = compose(a, b);
            const IsotropyElement* found = nullptr;
            for (const IsotropyElement& c : group.elements)
                if (c.perm == ab) {
                    found = &c;
                    break;
                }
            if (!found) {
                report.closed = false;
                continue;
            }
            if (!projectively_equal(Mat(a.U * b.U), found->U, 1e-10)) report.faithful = false;
        }
    }
    // Faithfulness also needs distinct elements to stay distinct: same
    // permutation or projectively equal representatives would collapse them.
    for (std::size_t i = 0; i < group.elements.size(); ++i) {
        for (std::size_t j = i + 1; j < group.elements.size(); ++j) {
            const IsotropyElement& a = group.elements[i];
            const IsotropyElement& b = group.elements[j];
            if (a.perm == b.perm || projectively_equal(a.U, b.U, 1e-10))
                report.faithful = false;
        }
    }

    // Transitivity on the outgoing generator set S₊.
    std::set<std::string> positive;
    for (const GeneratorTerm& t : rule.terms)
        if (is_positive_label(t.label)) positive.insert(t.label);
    std::set<std::string> orbit{*positive.begin()};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const std::string& h : std::vector<std::string>(orbit.begin(), orbit.end()))
            for (const IsotropyElement& el : group.elements)
                if (positive.count(el.perm.at(h)) && orbit.insert(el.perm.at(h)).second)
                    grew = true;
    }
    report.transitive = orbit == positive;

    report.pass = report.covariant && report.transitive && report.closed && report.faithful;
    return report;
}

RVec eigenphases(const Mat& unitary, double tolerance) {
    const int s = static_cast<int>(unitary.rows());
    double residual = (unitary.adjoint() * unitary - Mat::Identity(s, s)).norm();
    if (residual > tolerance)
        throw NonUnitaryError("matrix is not unitary (residual " + std::to_string(residual) + ")");
    Eigen::ComplexSchur<Mat> schur(unitary);
    RVec phases(s);
    for (int i = 0; i < s; ++i) {
        double w = -std::arg(schur.matrixT()(i, i));  // A = e^{-i w} per eigenvalue
        if (w <= -pi) w += 2.0 * pi;                  // fold the cut onto +π
        phases[i] = w;
    }
    std::sort(phases.data(), phases.data() + s);
    return phases;
}

RVec dispersion(const TransitionRule& rule, const KPoint& k, double tolerance) {
    return eigenphases(build_ak(rule, k), tolerance);
}

Mat interpolating_hamiltonian(const TransitionRule& rule, const KPoint& k,
                              double tolerance) {
    const Mat ak = build_ak(rule, k);
    const int s = rule.spin;
    double residual = (ak.adjoint() * ak - Mat::Identity(s, s)).norm();
    if (residual > tolerance)
        throw NonUnitaryError("A_k is not unitary (residual " + std::to_string(residual) + ")");
    Eigen::ComplexSchur<Mat> schur(ak);
    Vec phases(s);
    for (int i = 0; i < s; ++i) {
        double w = -std::arg(schur.matrixT()(i, i));
        if (w <= -pi) w += 2.0 * pi;
        if (pi - std::abs(w) < 1e-9)
            throw BranchCutError("eigenphase at the logarithm branch cut (ω = π)");
        phases[i] = w;
    }
    const Mat q = schur.matrixU();
    Mat h = q * phases.asDiagonal() * q.adjoint();
    return 0.5 * (h + Mat(h.adjoint()));
}

RVec group_velocity(const TransitionRule& rule, const KPoint& k, int branch, double step) {
    if (step <= 0.0) throw ConfigError("finite-difference step must be positive");
    const RVec base = dispersion(rule, k);
    const int s = static_cast<int>(base.size());
    if (branch < 0 || branch >= s) throw ConfigError("branch index out of range");

    // The sorted-index branch selection is only meaningful when the branch is
    // isolated by more than the finite-difference excursion.
    const double gap_floor = std::max(1e-8, 4.0 * step);
    for (int i = 0; i < s; ++i) {
        if (i == branch) continue;
        double d = std::abs(base[i] - base[branch]);
        d = std::min(d, 2.0 * pi - d);  // phases live on the circle
        if (d < gap_floor)
            throw DegeneracyError("dispersion branches cross at the requested wave vector");
    }

    const int dim = rule.dim;
    RVec grad(dim);
    auto central = [&](int axis, double h) {
        RVec kp = k.k, km = k.k;
        kp[axis] += h;
        km[axis] -= h;
        return (dispersion(rule, KPoint(kp))[branch] - dispersion(rule, KPoint(km))[branch]) /
               (2.0 * h);
    };
    for (int axis = 0; axis < dim; ++axis) {
        const double coarse = central(axis, step);
        const double fine = central(axis, step / 2.0);
        grad[axis] = (4.0 * fine - coarse) / 3.0;  // one Richardson refinement
    }
    return grad;
}

FitResult small_k_residual_fit(const TransitionRule& rule,
                               const std::function<Mat(const RVec&)>& target,
                               const std::vector<double>& magnitudes,
                               int directions_per_magnitude, std::uint64_t seed,
                               bool subtract_zero_offset) {
    if (magnitudes.size() < 2) throw ConfigError("need at least two magnitudes");
    double lo = *std::min_element(magnitudes.begin(), magnitudes.end());
    double hi = *std::max_element(magnitudes.begin(), magnitudes.end());
    if (lo <= 0.0 || hi >= 1.0) throw ConfigError("magnitudes must lie in (0, 1)");
    if (hi / lo < 10.0 * (1.0 - 1e-9)) throw ConfigError("magnitudes must span a decade");
    if (directions_per_magnitude < 1) throw ConfigError("need at least one direction");

    Mat offset = Mat::Zero(rule.spin, rule.spin);
    if (subtract_zero_offset) {
        const RVec zero = RVec::Zero(rule.dim);
        offset = interpolating_hamiltonian(rule, KPoint(zero)) - target(zero);
    }

    auto rng = seeded_rng(seed);
    std::vector<double> logk, logr;
    double max_residual = 0.0;
    constexpr double floor = 1e-13;
    std::size_t total = 0;
    for (double mag : magnitudes) {
        for (int j = 0; j < directions_per_magnitude; ++j) {
            RVec k = mag * random_unit_vector(rule.dim, rng);
            double r = (interpolating_hamiltonian(rule, KPoint(k)) - target(k) - offset).norm();
            max_residual = std::max(max_residual, r);
            ++total;
            if (r > floor) {
                logk.push_back(std::log(mag));
                logr.push_back(std::log(r));
            }
        }
    }
    std::set<double> surviving_mags(logk.begin(), logk.end());
    if (surviving_mags.size() < 2)
        throw DegenerateFitError("residuals sit at the floating-point floor; no scaling to fit");

    const double n = static_cast<double>(logk.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < logk.size(); ++i) {
        sx += logk[i];
        sy += logr[i];
        sxx += logk[i] * logk[i];
        sxy += logk[i] * logr[i];
    }
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.log_prefactor = (sy - fit.slope * sx) / n;
    fit.prefactor = std::exp(fit.log_prefactor);
    fit.sample_count = total;
    fit.max_residual = max_residual;
    return fit;
}

namespace {

std::int64_t wrap_index(std::int64_t x, int l) {
    std::int64_t m = x % l;
    return m < 0 ? m + l : m;
}

std::int64_t site_linear(const IVec& site, const IVec& shape) {
    std::int64_t idx = 0;
    for (int i = 0; i < shape.size(); ++i) idx = idx * shape[i] + wrap_index(site[i], shape[i]);
    return idx;
}

IVec site_coords(std::int64_t linear, const IVec& shape) {
    IVec site(shape.size());
    for (int i = shape.size() - 1; i >= 0; --i) {
        site[i] = static_cast<int>(linear % shape[i]);
        linear /= shape[i];
    }
    return site;
}

}  // namespace

bool translation_covariance_check(const TransitionRule& rule, const IVec& shape,
                                  int samples, std::uint64_t seed,
                                  const std::optional<SitePatch>& patch,
                                  double tolerance) {
    rule.validate();
    if (shape.size() != rule.dim) throw ShapeError("torus dimension mismatch");
    for (int i = 0; i < shape.size(); ++i)
        if (shape[i] < 1) throw ShapeError("torus sizes must be positive");

    // Neighborhoods must not self-overlap: all offsets distinct on the torus.
    std::set<IVec, IVecLess> offsets_mod;
    auto add_offset = [&](const IVec& c) {
        IVec m(shape.size());
        for (int i = 0; i < shape.size(); ++i) m[i] = static_cast<int>(wrap_index(c[i], shape[i]));
        if (!offsets_mod.insert(m).second)
            throw ShapeError("neighborhood wrap-around overlap on this torus");
    };
    add_offset(IVec::Zero(rule.dim));
    for (const GeneratorTerm& t : rule.terms) add_offset(t.coord);

    std::int64_t n_sites = 1;
    for (int i = 0; i < shape.size(); ++i) n_sites *= shape[i];
    const int s = rule.spin;
    const std::int64_t dim = n_sites * s;
    if (dim > 4096) throw ShapeError("torus too large for the dense covariance check");

    // One-particle evolution matrix: column blocks by source site.
    Mat u = Mat::Zero(dim, dim);
    for (std::int64_t g = 0; g < n_sites; ++g) {
        const IVec site = site_coords(g, shape);
        if (rule.identity_term) u.block(g * s, g * s, s, s) += *rule.identity_term;
        for (const GeneratorTerm& t : rule.terms) {
            const std::int64_t src = site_linear(IVec(site - t.coord), shape);
            u.block(g * s, src * s, s, s) += t.matrix;
        }
    }
    if (patch) {
        if (patch->factor.rows() != s || patch->factor.cols() != s)
            throw ShapeError("site patch matrix shape mismatch");
        const std::int64_t g = site_linear(patch->site, shape);
        u.block(g * s, 0, s, dim) = patch->factor * u.block(g * s, 0, s, dim);
    }

    // Site permutation of a translation by v: destination site g holds the
    // amplitude formerly at g - v.
    auto commutes = [&](const IVec& v) {
        std::vector<std::int64_t> from(n_sites);
        for (std::int64_t g = 0; g < n_sites; ++g)
            from[g] = site_linear(IVec(site_coords(g, shape) - v), shape);
        double worst = 0.0;
        // (U P_v)(r,c) = U(r, c+v) and (P_v U)(r,c) = U(r−v, c), so commutation
        // is invariance of U under the simultaneous row/column translation.
        for (std::int64_t r = 0; r < n_sites; ++r)
            for (std::int64_t c = 0; c < n_sites; ++c) {
                worst = std::max(worst, (u.block(r * s, c * s, s, s) -
                                         u.block(from[r] * s, from[c] * s, s, s))
                                            .cwiseAbs()
                                            .maxCoeff());
            }
        return worst <= tolerance;
    };

    for (int axis = 0; axis < rule.dim; ++axis) {
        IVec v = IVec::Zero(rule.dim);
        v[axis] = 1;
        if (!commutes(v)) return false;
    }
    auto rng = seeded_rng(seed);
    for (int i = 0; i < samples; ++i) {
        IVec v(rule.dim);
        for (int a = 0; a < rule.dim; ++a)
            v[a] = static_cast<int>(std::uniform_int_distribution<int>(0, shape[a] - 1)(rng));
        if (!commutes(v)) return false;
    }
    return true;
}

}  // namespace qca::kspace
