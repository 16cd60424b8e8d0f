/**
 * The photon sector: transverse projection, the spin-1 rotation identity for
 * conjugated operators, the emergent-equation residuals, and the axis
 * replacement trend.
 */
#include "qca/maxwell.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace qca;
using namespace qca::maxwell;
namespace models = qca::models;

TEST(TransverseProject, IdempotentAndOrthogonal) {
    const Vec3 n(0.3, -0.2, 0.9);
    const Vec3c g(cplx(1.0, 0.5), cplx(-0.2, 0.1), cplx(0.4, -0.7));
    const Vec3c gt = transverse_project(g, n);
    EXPECT_NEAR(std::abs(n.cast<cplx>().dot(gt)), 0.0, 1e-14);
    EXPECT_NEAR((transverse_project(gt, n) - gt).norm(), 0.0, 1e-14);
    EXPECT_THROW(transverse_project(g, Vec3::Zero()), SingularPointError);
}

TEST(RotationAbout, OrthogonalAndAxisFixing) {
    const Vec3 n(0.4, 0.1, -0.3);
    const Mat3 r = rotation_about(n, 2.5);
    EXPECT_NEAR((r * r.transpose() - Mat3::Identity()).norm(), 0.0, 1e-14);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-14);
    EXPECT_NEAR((r * n - n).norm(), 0.0, 1e-14);
    EXPECT_NEAR((rotation_about(n, 0.0) - Mat3::Identity()).norm(), 0.0, 1e-15);
    // Rotation angle is 2|n|t.
    const Vec3 z(0.0, 0.0, 0.5);
    const Mat3 rz = rotation_about(z, 1.0);
    EXPECT_NEAR(rz(0, 0), std::cos(1.0), 1e-14);
}

TEST(ConjugationRotation, MatchesTheSpinOneRotation) {
    std::mt19937_64 rng(13);
    const kspace::BrillouinZone bz{kspace::Lattice::bcc, 3};
    for (auto c : {models::Chirality::APlus, models::Chirality::AMinus,
                   models::Chirality::BPlus, models::Chirality::BMinus}) {
        const models::WeylVariant v = models::weyl3d(c);
        for (int t : {0, 1, 3, 9}) {
            const RVec k = bz.sample(rng);
            const RotationCheckReport rep = conjugation_rotation_check(v, k, t);
            EXPECT_TRUE(rep.pass);
            EXPECT_LE(rep.conjugation_deviation, 1e-12);
            EXPECT_LE(rep.axis_invariance, 1e-12);
        }
    }
}

TEST(EbFields, DecomposeTheTransverseField) {
    const models::WeylVariant v = models::weyl3d();
    const RVec k = rvec({0.4, -0.6, 0.3});
    const models::NVector nv = models::n_vector(v, RVec(k / 2.0));
    const Vec3 n(nv.n[0], nv.n[1], nv.n[2]);
    Vec3c g(cplx(0.3, 0.1), cplx(-0.4, 0.2), cplx(0.1, 0.6));
    g = transverse_project(g, n);
    const auto [e, b] = eb_fields(g, n);
    const Vec3c rebuilt = (e.cast<cplx>() + cplx(0.0, 1.0) * b.cast<cplx>()) /
                          (2.0 * n.norm());
    EXPECT_NEAR((rebuilt - g).norm(), 0.0, 1e-13);
}

TEST(MaxwellResidual, FreeEquationsHoldInRotatedForm) {
    std::mt19937_64 rng(17);
    const kspace::BrillouinZone bz{kspace::Lattice::bcc, 3};
    const models::WeylVariant v = models::weyl3d();
    for (int i = 0; i < 20; ++i) {
        const RVec k = bz.sample(rng);
        const MaxwellReport rep = maxwell_residual(v, k, {1.0, 2.0, 5.0});
        EXPECT_TRUE(rep.pass);
        EXPECT_LE(rep.transversality_residual, 1e-12);
        EXPECT_LE(rep.curl_residual, 1e-10);
        EXPECT_LE(rep.integer_step_residual, 1e-12);
    }
}

TEST(MaxwellResidual, AxisReplacementIsExactOnCoordinateAxes) {
    const models::WeylVariant v = models::weyl3d();
    const MaxwellReport rep = maxwell_residual(v, rvec({0.8, 0.0, 0.0}), {1.0});
    EXPECT_LE(rep.n_vs_k, 1e-14);
}

TEST(MaxwellResidual, AxisReplacementTrendIsQuadratic) {
    const models::WeylVariant v = models::weyl3d();
    RVec dir = rvec({1.0, 2.0, 3.0});
    dir /= dir.norm();
    const double r1 = maxwell_residual(v, RVec(1e-3 * dir), {1.0}).n_vs_k;
    const double r2 = maxwell_residual(v, RVec(1e-2 * dir), {1.0}).n_vs_k;
    const double r3 = maxwell_residual(v, RVec(1e-1 * dir), {1.0}).n_vs_k;
    EXPECT_GT(r1, 0.0);
    EXPECT_GT(r2 / r1, 50.0);   // one decade in |k| ⇒ about two decades in the
    EXPECT_LT(r2 / r1, 200.0);  // deviation
    EXPECT_GT(r3 / r2, 50.0);
    EXPECT_LT(r3 / r2, 200.0);
}

}  // namespace
