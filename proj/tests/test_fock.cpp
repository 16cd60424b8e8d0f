/**
 * Exact fermionic mode algebra on small spaces, smeared polarization
 * operators, and the bosonic-commutator deviation scan.
 */
#include "qca/maxwell.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace qca;
using namespace qca::maxwell;

Mat dense(const SpMat& s) { return Mat(s); }

const Vec3 ex(1.0, 0.0, 0.0);
const Vec3 ey(0.0, 1.0, 0.0);
const Vec3 ez(0.0, 0.0, 1.0);

TEST(FockAlgebraTest, CanonicalAnticommutationRelations) {
    const FockAlgebra f = build_fock(2);
    ASSERT_EQ(f.total_modes(), 4);
    ASSERT_EQ(f.dimension(), 16);
    const Mat id = Mat::Identity(16, 16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Mat ai = dense(f.annihilator(i));
            const Mat ajd = dense(f.creator(j));
            const Mat aj = dense(f.annihilator(j));
            const Mat acomm = ai * ajd + ajd * ai;
            const Mat target = (i == j) ? id : Mat(Mat::Zero(16, 16));
            EXPECT_NEAR((acomm - target).norm(), 0.0, 1e-14) << i << "," << j;
            EXPECT_NEAR((ai * aj + aj * ai).norm(), 0.0, 1e-14) << i << "," << j;
        }
    }
}

TEST(FockAlgebraTest, CreatorIsTheAdjoint) {
    const FockAlgebra f = build_fock(2);
    for (int m = 0; m < 4; ++m)
        EXPECT_NEAR((dense(f.creator(m)) - dense(f.annihilator(m)).adjoint()).norm(),
                    0.0, 0.0);
}

TEST(FockAlgebraTest, VacuumIsAnnihilated) {
    const FockAlgebra f = build_fock(3);
    const Vec vac = f.vacuum();
    EXPECT_NEAR(vac.norm(), 1.0, 0.0);
    for (int m = 0; m < f.total_modes(); ++m)
        EXPECT_NEAR((dense(f.annihilator(m)) * vac).norm(), 0.0, 0.0);
}

TEST(FockAlgebraTest, BasisStateOccupationNumbers) {
    const FockAlgebra f = build_fock(2);
    const std::uint64_t mask = 0b1011;  // modes 0, 1, 3 occupied
    const Vec state = f.basis_state(mask);
    for (int m = 0; m < 4; ++m) {
        const Mat number = dense(f.creator(m)) * dense(f.annihilator(m));
        const double expected = (mask >> m) & 1 ? 1.0 : 0.0;
        EXPECT_NEAR(std::abs(state.dot(number * state)), expected, 1e-14);
    }
    EXPECT_THROW(f.basis_state(16), ConfigError);
}

TEST(FockAlgebraTest, SpeciesIndexingSplitsTheModes) {
    const FockAlgebra f = build_fock(3);
    for (int idx = 0; idx < 3; ++idx) {
        EXPECT_NEAR((dense(f.annihilator(0, idx)) - dense(f.annihilator(idx))).norm(),
                    0.0, 0.0);
        EXPECT_NEAR((dense(f.annihilator(1, idx)) - dense(f.annihilator(3 + idx))).norm(),
                    0.0, 0.0);
    }
    EXPECT_THROW(f.annihilator(2, 0), ConfigError);
    EXPECT_THROW(f.annihilator(0, 3), ConfigError);
    EXPECT_THROW(f.annihilator(-1), ConfigError);
    EXPECT_THROW(f.annihilator(6), ConfigError);
}

TEST(FockAlgebraTest, MatrixFreeApplicationMatchesTheMatrices) {
    const FockAlgebra f = build_fock(2);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    Vec v(f.dimension());
    for (std::int64_t i = 0; i < v.size(); ++i) v[i] = cplx(gauss(rng), gauss(rng));
    Vec out;
    for (int m = 0; m < 4; ++m) {
        f.apply_annihilator(m, v, out);
        EXPECT_NEAR((out - dense(f.annihilator(m)) * v).norm(), 0.0, 1e-13);
        f.apply_creator(m, v, out);
        EXPECT_NEAR((out - dense(f.creator(m)) * v).norm(), 0.0, 1e-13);
    }
}

TEST(FockAlgebraTest, RejectsOversizedAlgebras) {
    EXPECT_THROW(build_fock(7), ConfigError);  // 14 modes > default cap 12
    EXPECT_THROW(build_fock(0), ConfigError);
    EXPECT_THROW(build_fock(4, 6), ConfigError);
    EXPECT_NO_THROW(build_fock(6));
    try {
        build_fock(8);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("exceeds the cap"), std::string::npos);
    }
}

TEST(SmearingProfileTest, ConstantModulusWeight) {
    const SmearingProfile p{3};
    EXPECT_EQ(p.modes(), 6);
    EXPECT_NEAR(p.weight(), 1.0 / std::sqrt(6.0), 1e-15);
    EXPECT_THROW((SmearingProfile{0}.weight()), ConfigError);
}

TEST(PolarizationOps, RejectsBadFrames) {
    const FockAlgebra f = build_fock(2);
    const SmearingProfile p{1};
    EXPECT_NO_THROW(polarization_ops(f, p, ex, ey, ez));
    // Non-unit, non-orthogonal, non-transverse, left-handed, zero axis.
    EXPECT_THROW(polarization_ops(f, p, Vec3(2.0 * ex), ey, ez), ConfigError);
    EXPECT_THROW(
        polarization_ops(f, p, ex, Vec3((ex + ey).normalized()), ez), ConfigError);
    EXPECT_THROW(polarization_ops(f, p, ex, ey, ex), ConfigError);
    EXPECT_THROW(polarization_ops(f, p, ey, ex, ez), ConfigError);
    EXPECT_THROW(polarization_ops(f, p, ex, ey, Vec3::Zero()), ConfigError);
    // A scaled (non-unit) axis is fine; only its direction matters.
    EXPECT_NO_THROW(polarization_ops(f, p, ex, ey, Vec3(0.3 * ez)));
    // The smearing region cannot exceed the modes the algebra provides.
    EXPECT_THROW(polarization_ops(f, SmearingProfile{2}, ex, ey, ez), ConfigError);
}

TEST(BosonDeviation, VanishesOnTheVacuumSector) {
    for (int points : {1, 2, 3}) {
        const FockAlgebra f = build_fock(2 * points);
        const auto [g1, g2] = polarization_ops(f, SmearingProfile{points}, ex, ey, ez);
        EXPECT_LE(boson_commutator_deviation(f, g1, g2, 0), 1e-14) << points;
    }
}

TEST(BosonDeviation, ScalesAsExcitationsOverModeCount) {
    // The worst-case deviation over M-excitation states is exactly M / N_k.
    for (int points : {1, 2, 3}) {
        const int n_k = 2 * points;
        const FockAlgebra f = build_fock(n_k);
        const auto [g1, g2] = polarization_ops(f, SmearingProfile{points}, ex, ey, ez);
        for (int m : {1, 2}) {
            const double dev = boson_commutator_deviation(f, g1, g2, m);
            EXPECT_NEAR(dev, static_cast<double>(m) / n_k, 1e-12)
                << "points=" << points << " m=" << m;
        }
    }
}

TEST(BosonDeviation, RejectsMismatchedInputs) {
    const FockAlgebra f = build_fock(2);
    const auto [g1, g2] = polarization_ops(f, SmearingProfile{1}, ex, ey, ez);
    EXPECT_THROW(boson_commutator_deviation(f, g1, g2, -1), ConfigError);
    EXPECT_THROW(boson_commutator_deviation(f, g1, g2, 5), ConfigError);
    const FockAlgebra g = build_fock(3);
    EXPECT_THROW(boson_commutator_deviation(g, g1, g2, 0), ConfigError);
}

}  // namespace
