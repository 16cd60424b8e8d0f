#include "qca/maxwell.hpp"

#include <cmath>
#include <vector>

namespace qca::maxwell {

namespace {

int popcount_below(std::uint64_t mask, int mode) {
    return __builtin_popcountll(mask & ((std::uint64_t(1) << mode) - 1));
}

}  // namespace

FockAlgebra::FockAlgebra(int modes_per_species, int mode_cap) : n_(modes_per_species) {
    if (n_ < 1) throw ConfigError("need at least one mode per species");
    if (2 * n_ > mode_cap)
        throw ConfigError("mode count " + std::to_string(2 * n_) +
                          " exceeds the cap of " + std::to_string(mode_cap));
    const std::int64_t dim = dimension();
    ops_.reserve(total_modes());
    for (int mode = 0; mode < total_modes(); ++mode) {
        // Graded (Jordan-Wigner) annihilator: clears the mode bit with the
        // parity sign of the occupied modes below it.
        std::vector<Eigen::Triplet<cplx>> entries;
        entries.reserve(dim / 2);
        const std::uint64_t bit = std::uint64_t(1) << mode;
        for (std::int64_t mask = 0; mask < dim; ++mask) {
            if (!(mask & bit)) continue;
            const double sign = popcount_below(mask, mode) % 2 ? -1.0 : 1.0;
            entries.emplace_back(static_cast<int>(mask ^ bit), static_cast<int>(mask), sign);
        }
        SpMat op(dim, dim);
        op.setFromTriplets(entries.begin(), entries.end());
        ops_.push_back(std::move(op));
    }
}

const SpMat& FockAlgebra::annihilator(int mode) const {
    if (mode < 0 || mode >= total_modes()) throw ConfigError("mode index out of range");
    return ops_[mode];
}

const SpMat& FockAlgebra::annihilator(int species, int index) const {
    if (species < 0 || species > 1) throw ConfigError("species must be 0 or 1");
    if (index < 0 || index >= n_) throw ConfigError("mode index out of range");
    return ops_[species * n_ + index];
}

SpMat FockAlgebra::creator(int mode) const { return annihilator(mode).adjoint(); }

Vec FockAlgebra::basis_state(std::uint64_t mask) const {
    if (mask >= static_cast<std::uint64_t>(dimension()))
        throw ConfigError("occupation mask out of range");
    Vec v = Vec::Zero(dimension());
    v[static_cast<std::int64_t>(mask)] = 1.0;
    return v;
}

Vec FockAlgebra::vacuum() const { return basis_state(0); }

void FockAlgebra::apply_annihilator(int mode, const Vec& in, Vec& out) const {
    const std::uint64_t bit = std::uint64_t(1) << mode;
    out.setZero(in.size());
    for (std::int64_t mask = 0; mask < in.size(); ++mask) {
        if (!(mask & static_cast<std::int64_t>(bit))) continue;
        const double sign = popcount_below(mask, mode) % 2 ? -1.0 : 1.0;
        out[mask ^ static_cast<std::int64_t>(bit)] += sign * in[mask];
    }
}

void FockAlgebra::apply_creator(int mode, const Vec& in, Vec& out) const {
    const std::uint64_t bit = std::uint64_t(1) << mode;
    out.setZero(in.size());
    for (std::int64_t mask = 0; mask < in.size(); ++mask) {
        if (mask & static_cast<std::int64_t>(bit)) continue;
        const double sign = popcount_below(mask, mode) % 2 ? -1.0 : 1.0;
        out[mask ^ static_cast<std::int64_t>(bit)] += sign * in[mask];
    }
}

FockAlgebra build_fock(int modes_per_species, int mode_cap) {
    return FockAlgebra(modes_per_species, mode_cap);
}

double SmearingProfile::weight() const {
    if (points < 1) throw ConfigError("smearing region must contain at least one point");
    return 1.0 / std::sqrt(static_cast<double>(modes()));
}

std::pair<SpMat, SpMat> polarization_ops(const FockAlgebra& f, const SmearingProfile& profile,
                                         const Vec3& u1, const Vec3& u2, const Vec3& n) {
    constexpr double tol = 1e-12;
    if (std::abs(u1.norm() - 1.0) > tol || std::abs(u2.norm() - 1.0) > tol)
        throw ConfigError("polarization frame vectors must be unit length");
    if (std::abs(u1.dot(u2)) > tol) throw ConfigError("polarization frame vectors must be orthogonal");
    if (n.norm() < tol) throw ConfigError("rotation axis must be nonzero");
    const Vec3 nhat = n / n.norm();
    if (std::abs(u1.dot(nhat)) > tol || std::abs(u2.dot(nhat)) > tol)
        throw ConfigError("polarization frame must be transverse to the axis");
    if (u1.cross(u2).dot(nhat) <= 0.0)
        throw ConfigError("polarization frame must be right-handed about the axis");
    if (2 * profile.points > f.modes_per_species())
        throw ConfigError("smearing region needs more modes than the algebra provides");

    const double weight = profile.weight();
    auto build = [&](const Vec3& u) {
        Mat usigma = Mat::Zero(2, 2);
        for (int j = 1; j <= 3; ++j) usigma += u[j - 1] * models::pauli(j);
        SpMat op(f.dimension(), f.dimension());
        for (int p = 0; p < profile.points; ++p) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    if (std::abs(usigma(a, b)) < 1e-300) continue;
                    // One bilinear term: second-species annihilator times
                    // first-species annihilator, smeared with constant weight.
                    op += (weight * usigma(a, b)) *
                          SpMat(f.annihilator(1, 2 * p + a) * f.annihilator(0, 2 * p + b));
                }
            }
        }
        return op;
    };
    return {build(u1), build(u2)};
}

double boson_commutator_deviation(const FockAlgebra& f, const SpMat& gamma1,
                                  const SpMat& gamma2, int excitations) {
    const int total = f.total_modes();
    if (excitations < 0 || excitations > total)
        throw ConfigError("excitation count out of range");
    const std::int64_t dim = f.dimension();
    if (gamma1.rows() != dim || gamma2.rows() != dim)
        throw ConfigError("operator dimension mismatch");

    const SpMat* gammas[2] = {&gamma1, &gamma2};
    std::vector<SpMat> commutators;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            SpMat c = SpMat((*gammas[i]) * SpMat(gammas[j]->adjoint())) -
                      SpMat(SpMat(gammas[j]->adjoint()) * (*gammas[i]));
            if (i == j) {
                SpMat id(dim, dim);
                id.setIdentity();
                c = SpMat(c - id);
            }
            commutators.push_back(std::move(c));
        }
    }

    // Max deviation over every basis state with the given excitation count:
    // for a basis vector the action is just a column slice.
    double worst = 0.0;
    for (std::int64_t mask = 0; mask < dim; ++mask) {
        if (__builtin_popcountll(static_cast<std::uint64_t>(mask)) != excitations) continue;
        for (const SpMat& c : commutators) {
            double norm2 = 0.0;
            for (SpMat::InnerIterator it(c, static_cast<int>(mask)); it; ++it)
                norm2 += std::norm(it.value());
            worst = std::max(worst, std::sqrt(norm2));
        }
    }
    return worst;
}

}  // namespace qca::maxwell
