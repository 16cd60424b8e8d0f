/**
 * Wave-vector machinery: A_k synthesis, unitarity and isotropy verification,
 * dispersion/eigenphase handling, interpolating Hamiltonians, group
 * velocities, residual fits, and translation covariance on small tori.
 */
#include "qca/kspace.hpp"
#include "qca/models.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace qca;
using namespace qca::kspace;
namespace models = qca::models;

std::vector<double> fit_magnitudes() {
    std::vector<double> mags;
    for (int i = 0; i <= 8; ++i) mags.push_back(std::pow(10.0, -3.0 + 0.25 * i));
    return mags;
}

Mat exp_minus_i(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec phases(h.rows());
    for (int i = 0; i < h.rows(); ++i)
        phases[i] = std::exp(cplx(0.0, -es.eigenvalues()[i]));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

TEST(BuildAk, UsesForwardPhaseConvention) {
    // One right-moving component: A_k(0,0) must carry e^{-ik}.
    const TransitionRule rule = models::weyl_rule(models::weyl1d());
    const double k = 0.7;
    const Mat ak = build_ak(rule, rvec({k}));
    EXPECT_NEAR(std::abs(ak(0, 0) - std::exp(cplx(0.0, -k))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ak(1, 1) - std::exp(cplx(0.0, +k))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ak(0, 1)), 0.0, 1e-15);
}

TEST(BrillouinZone, MembershipAndGrids) {
    const BrillouinZone line{Lattice::line, 1};
    EXPECT_TRUE(line.contains(rvec({3.14})));
    EXPECT_FALSE(line.contains(rvec({3.15})));
    EXPECT_EQ(line.uniform_grid(3).size(), 3u);

    const BrillouinZone square{Lattice::square, 2};
    EXPECT_NEAR(square.box_halfwidth(), std::sqrt(2.0) * pi, 1e-15);
    EXPECT_EQ(square.uniform_grid(3).size(), 9u);

    // BCC: |k_i ± k_j| ≤ √3 π; of the 27 corner/axis grid points only the
    // center and the six axis extremes survive.
    const BrillouinZone bcc{Lattice::bcc, 3};
    EXPECT_EQ(bcc.uniform_grid(3).size(), 7u);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) EXPECT_TRUE(bcc.contains(bcc.sample(rng)));
}

TEST(Unitarity, AllShippedRulesPass) {
    std::vector<TransitionRule> rules;
    rules.push_back(models::weyl_rule(models::weyl1d()));
    rules.push_back(models::weyl_rule(models::weyl2d()));
    rules.push_back(models::weyl_rule(models::weyl2d(models::Chirality::BPlus, 0.4)));
    for (auto c : {models::Chirality::APlus, models::Chirality::AMinus,
                   models::Chirality::BPlus, models::Chirality::BMinus})
        rules.push_back(models::weyl_rule(models::weyl3d(c)));
    for (double m : {0.0, 0.3, 0.6, 1.0})
        rules.push_back(models::dirac_rule({m, models::weyl3d()}));

    for (const TransitionRule& rule : rules) {
        const UnitarityReport rep = unitarity_report(rule);
        EXPECT_TRUE(rep.pass) << rule.name;
        EXPECT_LE(rep.worst(), 1e-12) << rule.name;
    }
}

TEST(Unitarity, ScaledNeighborsBreakCompleteness) {
    TransitionRule rule = models::weyl_rule(models::weyl1d());
    for (auto& t : rule.terms) t.matrix *= 1.01;
    const UnitarityReport rep = unitarity_report(rule);
    EXPECT_FALSE(rep.pass);
    EXPECT_NEAR(rep.cond1_residual, 0.0201, 1e-10);  // 1.01^2 - 1
}

TEST(Unitarity, PartialSumsKeyedByDifferenceVectors) {
    const TransitionRule rule = models::weyl_rule(models::weyl1d());
    const UnitarityReport rep = unitarity_report(rule);
    EXPECT_EQ(rep.cond2_residuals.count("(2)"), 1u);
    EXPECT_EQ(rep.cond2_residuals.count("(-2)"), 1u);
    EXPECT_EQ(rep.cond2_residuals.count("(0)"), 0u);
}

TEST(Isotropy, AllModelsCovariant) {
    for (const std::string name : {"weyl1d", "weyl2d", "weyl2dB", "weyl3d+", "weyl3d-",
                                   "weyl3d+B", "weyl3d-B", "dirac"}) {
        const auto sel = models::parse_model(name);
        const TransitionRule rule = sel.dirac ? models::dirac_rule({0.4, sel.variant})
                                              : models::weyl_rule(sel.variant);
        const IsotropyReport rep = isotropy_check(rule, models::isotropy_group(sel));
        EXPECT_TRUE(rep.pass) << name;
        EXPECT_TRUE(rep.covariant) << name;
        EXPECT_TRUE(rep.transitive) << name;
        EXPECT_TRUE(rep.closed) << name;
        EXPECT_TRUE(rep.faithful) << name;
        EXPECT_LE(rep.worst_residual, 1e-12) << name;
    }
}

TEST(Isotropy, AngleFamilyStaysCovariant) {
    const auto v = models::weyl2d(models::Chirality::APlus, 1.1);
    const TransitionRule rule = models::weyl_rule(v);
    models::ModelSelection sel;
    sel.variant = v;
    EXPECT_TRUE(isotropy_check(rule, models::isotropy_group(sel)).pass);
}

TEST(Isotropy, TamperedMatrixBreaksCovariance) {
    auto sel = models::parse_model("weyl3d+");
    TransitionRule rule = models::weyl_rule(sel.variant);
    rule.terms[0].matrix *= cplx(0.9, 0.1);
    const IsotropyReport rep = isotropy_check(rule, models::isotropy_group(sel));
    EXPECT_FALSE(rep.pass);
    EXPECT_FALSE(rep.covariant);
    EXPECT_GT(rep.worst_residual, 1e-3);
}

TEST(Dispersion, LineBranchesAreMinusKPlusK) {
    const TransitionRule rule = models::weyl_rule(models::weyl1d());
    for (double k : {0.3, 1.2, 2.9}) {
        const RVec w = dispersion(rule, rvec({k}));
        ASSERT_EQ(w.size(), 2);
        EXPECT_NEAR(w[0], -k, 1e-13);
        EXPECT_NEAR(w[1], +k, 1e-13);
    }
}

TEST(Dispersion, MatchesClosedFormOnRandomZonePoints) {
    const auto sel = models::parse_model("weyl3d+");
    const TransitionRule rule = models::weyl_rule(sel.variant);
    const BrillouinZone bz = brillouin_zone(rule);
    std::mt19937_64 rng(11);
    const double r = std::sqrt(3.0);
    for (int i = 0; i < 100; ++i) {
        const RVec k = bz.sample(rng);
        const double u = std::cos(k[0] / r) * std::cos(k[1] / r) * std::cos(k[2] / r) +
                         std::sin(k[0] / r) * std::sin(k[1] / r) * std::sin(k[2] / r);
        const double w = std::acos(std::clamp(u, -1.0, 1.0));
        const RVec got = dispersion(rule, k);
        EXPECT_NEAR(got[0], -w, 1e-10);
        EXPECT_NEAR(got[1], +w, 1e-10);
    }
}

TEST(Eigenphases, FoldToHalfOpenInterval) {
    Mat u = Mat::Zero(2, 2);
    u(0, 0) = std::exp(cplx(0.0, -pi));     // phase +π after folding
    u(1, 1) = std::exp(cplx(0.0, pi / 2));  // phase −π/2
    const RVec w = eigenphases(u, 1e-10);
    EXPECT_NEAR(w[0], -pi / 2, 1e-14);
    EXPECT_NEAR(w[1], pi, 1e-14);
}

TEST(Eigenphases, RejectsNonUnitaryInput) {
    Mat m = Mat::Identity(2, 2) * 1.05;
    EXPECT_THROW(eigenphases(m, 1e-10), NonUnitaryError);
}

TEST(InterpolatingHamiltonian, GeneratesTheStepExactly) {
    for (const std::string name : {"weyl1d", "weyl2d", "weyl3d-", "dirac"}) {
        const auto sel = models::parse_model(name);
        const TransitionRule rule = sel.dirac ? models::dirac_rule({0.35, sel.variant})
                                              : models::weyl_rule(sel.variant);
        const BrillouinZone bz = brillouin_zone(rule);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 25; ++i) {
            const RVec k = bz.sample(rng);
            const Mat h = interpolating_hamiltonian(rule, k);
            EXPECT_NEAR((h - h.adjoint()).norm(), 0.0, 1e-13) << name;
            EXPECT_NEAR((exp_minus_i(h) - build_ak(rule, k)).norm(), 0.0, 1e-12)
                << name;
        }
    }
}

TEST(InterpolatingHamiltonian, LineModelIsExactlyLinear) {
    const TransitionRule rule = models::weyl_rule(models::weyl1d());
    const double k = 0.8;
    const Mat h = interpolating_hamiltonian(rule, rvec({k}));
    Mat expected = Mat::Zero(2, 2);
    expected(0, 0) = k;
    expected(1, 1) = -k;
    EXPECT_NEAR((h - expected).norm(), 0.0, 1e-14);
}

TEST(InterpolatingHamiltonian, BranchCutAtPhasePi) {
    const TransitionRule rule = models::weyl_rule(models::weyl1d());
    EXPECT_THROW(interpolating_hamiltonian(rule, rvec({pi})), BranchCutError);
}

TEST(GroupVelocity, LineBranchesMoveAtUnitSpeed) {
    const TransitionRule rule = models::weyl_rule(models::weyl1d());
    const RVec v0 = group_velocity(rule, rvec({0.8}), 0);
    const RVec v1 = group_velocity(rule, rvec({0.8}), 1);
    EXPECT_NEAR(v0[0], -1.0, 1e-9);
    EXPECT_NEAR(v1[0], +1.0, 1e-9);
}

TEST(GroupVelocity, AxisSpeedIsInverseSqrtThree) {
    const TransitionRule rule = models::weyl_rule(models::weyl3d());
    const RVec v = group_velocity(rule, rvec({0.9, 0.0, 0.0}), 1);
    EXPECT_NEAR(v.norm(), 1.0 / std::sqrt(3.0), 1e-8);
}

TEST(GroupVelocity, DegenerateBranchesRejected) {
    const TransitionRule rule = models::weyl_rule(models::weyl1d());
    EXPECT_THROW(group_velocity(rule, rvec({0.0}), 0), DegeneracyError);
}

TEST(SmallKFit, WeylResidualsScaleQuadratically) {
    struct Case {
        std::string name;
        double lo, hi;
    };
    for (const auto& c : {Case{"weyl3d+", 1.85, 2.15}, Case{"weyl3d-", 1.85, 2.15},
                          Case{"weyl2d", 1.85, 2.2}}) {
        const auto sel = models::parse_model(c.name);
        const TransitionRule rule = models::weyl_rule(sel.variant);
        const int dim = sel.variant.dim;
        const auto target = [dim](const RVec& k) {
            return models::target_weyl_hamiltonian(dim, k);
        };
        const FitResult fit = small_k_residual_fit(rule, target, fit_magnitudes());
        EXPECT_GT(fit.slope, c.lo) << c.name;
        EXPECT_LT(fit.slope, c.hi) << c.name;
        EXPECT_EQ(fit.sample_count, 54u) << c.name;
    }
}

TEST(SmallKFit, MasslessDiracMatchesItsContinuumTarget) {
    const TransitionRule rule = models::dirac_rule({0.0, models::weyl3d()});
    const auto target = [](const RVec& k) {
        return models::target_dirac_hamiltonian(3, k, 0.0);
    };
    const FitResult fit = small_k_residual_fit(rule, target, fit_magnitudes());
    EXPECT_GT(fit.slope, 1.85);
    EXPECT_LT(fit.slope, 2.15);
}

TEST(SmallKFit, MassiveDiracNeedsTheZeroOffsetRemoved) {
    const double m = 0.03;
    const TransitionRule rule = models::dirac_rule({m, models::weyl3d()});
    const auto target = [m](const RVec& k) {
        return models::target_dirac_hamiltonian(3, k, m);
    };
    const FitResult fit =
        small_k_residual_fit(rule, target, fit_magnitudes(), 6, 42, true);
    EXPECT_GT(fit.slope, 1.8);
    EXPECT_LT(fit.slope, 2.1);
}

TEST(SmallKFit, ExactAgreementIsDegenerate) {
    // The d = 1 interpolating Hamiltonian equals its target identically, so
    // every residual sits at the numerical floor and no exponent is defined.
    const TransitionRule rule = models::weyl_rule(models::weyl1d());
    const auto target = [](const RVec& k) {
        return models::target_weyl_hamiltonian(1, k);
    };
    EXPECT_THROW(small_k_residual_fit(rule, target, fit_magnitudes()),
                 DegenerateFitError);
}

TEST(TranslationCovariance, HoldsForShippedRules) {
    EXPECT_TRUE(translation_covariance_check(models::weyl_rule(models::weyl1d()),
                                             ivec({16})));
    EXPECT_TRUE(translation_covariance_check(models::weyl_rule(models::weyl2d()),
                                             ivec({8, 8})));
    EXPECT_TRUE(translation_covariance_check(models::weyl_rule(models::weyl3d()),
                                             ivec({6, 6, 6})));
    EXPECT_TRUE(translation_covariance_check(models::dirac_rule({0.6, models::weyl3d()}),
                                             ivec({4, 4, 4})));
}

TEST(TranslationCovariance, SitePatchBreaksIt) {
    const TransitionRule rule = models::weyl_rule(models::weyl1d());
    SitePatch patch;
    patch.site = ivec({3});
    patch.factor = 2.0 * Mat::Identity(2, 2);
    EXPECT_FALSE(translation_covariance_check(rule, ivec({16}), 4, 7, patch));
}

TEST(TranslationCovariance, RejectsOverlappingNeighborhoods) {
    const TransitionRule rule = models::weyl_rule(models::weyl1d());
    EXPECT_THROW(translation_covariance_check(rule, ivec({2})), ShapeError);
}

TEST(KConversions, PhysicalAndIntegerGridsAgree) {
    const TransitionRule rule = models::weyl_rule(models::weyl3d());
    const RVec k_int = rvec({0.4, -0.2, 0.9});
    const RVec k_phys = rule.k_physical(k_int);
    EXPECT_NEAR((rule.k_integer(k_phys) - k_int).norm(), 0.0, 1e-13);
    // BCC embedding scales coordinates by 1/√3, wave vectors by √3.
    EXPECT_NEAR(k_phys[0], std::sqrt(3.0) * 0.4, 1e-13);
}

}  // namespace
