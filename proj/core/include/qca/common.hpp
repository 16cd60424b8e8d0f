/**
 * Shared numeric aliases, tolerance defaults, error hierarchy, and the
 * thread-capped parallel loop used by the sweep-style verifications.
 */
#pragma once

#include <Eigen/Core>
#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace qca {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using IVec = Eigen::VectorXi;

inline constexpr double pi = 3.14159265358979323846;

/// Literal-style constructors for small dynamic vectors.
inline RVec rvec(std::initializer_list<double> xs) {
    RVec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}
inline IVec ivec(std::initializer_list<int> xs) {
    IVec v(static_cast<int>(xs.size()));
    int i = 0;
    for (int x : xs) v[i++] = x;
    return v;
}

/// Default tolerances: exact algebraic identities vs spectral (eigen-) quantities.
struct Tolerances {
    double algebraic = 1e-12;
    double spectral = 1e-10;
};

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid user-facing configuration (bad model name, parameter out of range, ...).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// A matrix expected to be unitary failed the unitarity check.
class NonUnitaryError : public Error {
  public:
    using Error::Error;
};

/// An eigenphase sits on the logarithm branch cut (phase at the half-turn).
class BranchCutError : public Error {
  public:
    using Error::Error;
};

/// A band crossing makes the requested branch-resolved quantity undefined.
class DegeneracyError : public Error {
  public:
    using Error::Error;
};

/// All residuals of a scaling fit sit at the floating-point floor.
class DegenerateFitError : public Error {
  public:
    using Error::Error;
};

/// Lattice shape incompatible with the requested operation.
class ShapeError : public Error {
  public:
    using Error::Error;
};

/// A tracked centroid jumped by more than the torus can disambiguate.
class WrapAroundError : public Error {
  public:
    using Error::Error;
};

/// Graph/word navigation failed (missing edge, unreachable target).
class GraphError : public Error {
  public:
    using Error::Error;
};

/// A formula is evaluated at one of its singular points.
class SingularPointError : public Error {
  public:
    using Error::Error;
};

/// Number of worker threads: hardware concurrency, optionally capped by the
/// QCA_LAB_THREADS environment variable (values < 1 mean serial execution).
unsigned thread_budget();

/// Runs fn(i) for i in [0, n). Deterministic: the index space is split into
/// contiguous chunks; any reduction is the caller's responsibility (e.g. by
/// writing into a preallocated slot per index).
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

/// Deterministic RNG factory; all sampled verifications thread a seed through this.
inline std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Uniformly random unit vector in R^d.
RVec random_unit_vector(int d, std::mt19937_64& rng);

}  // namespace qca
