#include "qca/maxwell.hpp"

#include <cmath>

namespace qca::maxwell {

namespace {

constexpr cplx I_UNIT{0.0, 1.0};

Eigen::Matrix3d cross_matrix(const Vec3& v) {
    Eigen::Matrix3d k;
    k << 0, -v[2], v[1], v[2], 0, -v[0], -v[1], v[0], 0;
    return k;
}

Vec3c cross(const Vec3& a, const Vec3c& b) {
    Vec3c c;
    c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0];
    return c;
}

/// Axis data n_{k/2} of a Weyl variant at half the given wave vector.
Vec3 half_axis(const WeylVariant& v, const KPoint& k) {
    const models::NVector nv = models::n_vector(v, KPoint(RVec(0.5 * k.k)));
    Vec3 n;
    n << nv.n[0], nv.n[1], nv.n[2];
    return n;
}

/// Component map of the discrete conjugation: M(t)_{ij} = ½ tr(σ_j W†^t σ_i W^t).
Mat3 conjugation_map(const WeylVariant& v, const KPoint& k, int t) {
    Mat w = models::weyl_ak_closed(v, KPoint(RVec(0.5 * k.k)));
    Mat wt = Mat::Identity(2, 2);
    for (int step = 0; step < t; ++step) wt = wt * w;
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = (0.5 * (models::pauli(j + 1) * wt.adjoint() * models::pauli(i + 1) * wt)
                                 .trace())
                          .real();
    return m;
}

}  // namespace

Vec3c transverse_project(const Vec3c& g, const Vec3& n) {
    const double len = n.norm();
    if (len < 1e-14)
        throw SingularPointError("transverse projection undefined for a vanishing axis");
    const Vec3 nhat = n / len;
    const cplx along = nhat[0] * g[0] + nhat[1] * g[1] + nhat[2] * g[2];
    return g - along * nhat.cast<cplx>();
}

Mat3 rotation_about(const Vec3& n, double t) {
    const double len = n.norm();
    if (len < 1e-300) return Mat3::Identity();
    const Eigen::Matrix3d k = cross_matrix(Vec3(n / len));
    const double angle = 2.0 * len * t;
    return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
}

RotationCheckReport conjugation_rotation_check(const WeylVariant& v, const KPoint& k, int t,
                                               double tolerance) {
    if (t < 0) throw ConfigError("time must be a non-negative integer");
    const Vec3 n = half_axis(v, k);
    const Mat3 conj = conjugation_map(v, k, t);
    const Mat3 rot = rotation_about(n, static_cast<double>(t));
    RotationCheckReport report;
    report.conjugation_deviation = (conj - rot).cwiseAbs().maxCoeff();
    report.axis_invariance = (rot * n - n).norm();
    report.pass = report.conjugation_deviation <= tolerance &&
                  report.axis_invariance <= tolerance;
    return report;
}

std::pair<Vec3, Vec3> eb_fields(const Vec3c& g_t, const Vec3& n) {
    const double len = n.norm();
    return {Vec3(2.0 * len * g_t.real()), Vec3(2.0 * len * g_t.imag())};
}

MaxwellReport maxwell_residual(const WeylVariant& v, const KPoint& k,
                               const std::vector<double>& times,
                               double transversality_tol, double curl_tol) {
    const Vec3 n = half_axis(v, k);
    if (n.norm() < 1e-14)
        throw SingularPointError("Maxwell residual undefined at a vanishing rotation axis");

    // Deterministic transverse initial value.
    Vec3c seed;
    seed << cplx(1.0, 0.0), cplx(0.5, 0.5), cplx(0.0, -0.25);
    Vec3c g0 = transverse_project(seed, n);
    g0 /= g0.norm();

    const Eigen::Matrix3d kx = cross_matrix(Vec3(n / n.norm()));
    const double len = n.norm();
    // Complex-step derivative of the rotation angle: exact to machine precision.
    const double h = 1e-20;
    auto rotation_derivative = [&](double t) {
        const cplx angle = 2.0 * len * cplx(t, h);
        Eigen::Matrix3cd rc = Eigen::Matrix3cd::Identity() +
                              std::sin(angle) * kx.cast<cplx>() +
                              (1.0 - std::cos(angle)) * (kx * kx).cast<cplx>();
        return Mat3(rc.imag() / h);
    };

    MaxwellReport report;
    for (double t : times) {
        const Mat3 rot = rotation_about(n, t);
        const Vec3c g = rot.cast<cplx>() * g0;
        const Mat3 drot = rotation_derivative(t);
        const Vec3c dg = drot.cast<cplx>() * g0;

        auto [e_field, b_field] = eb_fields(g, n);
        const double trans = std::max({std::abs(n.dot(e_field)), std::abs(n.dot(b_field)),
                                       std::abs(n.cast<cplx>().dot(g))});
        report.transversality_residual = std::max(report.transversality_residual, trans);

        // Positive-frequency pair E⁺ = |n| G_T, B⁺ = −i|n| G_T solves
        // ∂_t E⁺ = i(2n)×B⁺, ∂_t B⁺ = −i(2n)×E⁺.
        const Vec3c e_plus = len * g;
        const Vec3c b_plus = -I_UNIT * len * g;
        const Vec3c de = len * dg;
        const Vec3c db = -I_UNIT * len * dg;
        const double curl = std::max((de - I_UNIT * cross(Vec3(2.0 * n), b_plus)).norm(),
                                     (db + I_UNIT * cross(Vec3(2.0 * n), e_plus)).norm());
        report.curl_residual = std::max(report.curl_residual, curl);

        if (t >= 0.0 && std::abs(t - std::round(t)) < 1e-12) {
            const Mat3 conj = conjugation_map(v, k, static_cast<int>(std::lround(t)));
            report.integer_step_residual =
                std::max(report.integer_step_residual, (conj - rot).cwiseAbs().maxCoeff());
        }
    }

    Vec3 k3;
    k3 << k[0], k[1], k[2];
    report.n_vs_k = (2.0 * n - k3 / std::sqrt(3.0)).norm();
    report.pass = report.transversality_residual <= transversality_tol &&
                  report.curl_residual <= curl_tol &&
                  report.integer_step_residual <= 1e-12;
    return report;
}

}  // namespace qca::maxwell
