#include "qca/models.hpp"

#include <cmath>

namespace qca::models {

namespace {

void check_positive(const std::optional<double>& v, const char* name) {
    if (v && !(std::isfinite(*v) && *v > 0.0))
        throw ConfigError(std::string("unit input '") + name + "' must be a positive number");
}

bool close(double x, double y) {
    return std::abs(x - y) <= 1e-12 * std::max({std::abs(x), std::abs(y), 1e-300});
}

}  // namespace

UnitSystem planck_units(const UnitInputs& in) {
    check_positive(in.a, "a");
    check_positive(in.tau, "tau");
    check_positive(in.M, "M");
    check_positive(in.c, "c");
    check_positive(in.hbar, "hbar");

    std::optional<double> a = in.a, tau = in.tau, M = in.M, c = in.c, hbar = in.hbar;

    // Fixpoint completion over the identities c = a/τ and ħ = M·a·c.
    for (int iter = 0; iter < 8; ++iter) {
        bool changed = false;
        auto set = [&changed](std::optional<double>& slot, double v) {
            if (!slot) {
                slot = v;
                changed = true;
            }
        };
        if (a && tau && !c) set(c, *a / *tau);
        if (c && tau && !a) set(a, *c * *tau);
        if (a && c && !tau) set(tau, *a / *c);
        if (M && a && c && !hbar) set(hbar, *M * *a * *c);
        if (hbar && a && c && !M) set(M, *hbar / (*a * *c));
        if (hbar && M) {
            const double ac = *hbar / *M;
            if (a && !c) set(c, ac / *a);
            if (c && !a) set(a, ac / *c);
            if (tau && !a && !c) set(a, std::sqrt(ac * *tau));
        }
        if (!changed) break;
    }

    if (!a || !tau || !c)
        throw ConfigError(
            "unit system underdetermined: the geometric part needs two of {a, tau, c} "
            "(or one plus the pair {M, hbar})");

    if (!close(*c, *a / *tau)) throw ConfigError("inconsistent units: c != a/tau");
    if (M && hbar && !close(*hbar, *M * *a * *c))
        throw ConfigError("inconsistent units: hbar != M*a*c");

    UnitSystem out;
    out.a = *a;
    out.tau = *tau;
    out.c = *c;
    out.hbar_per_M = *a * *c;
    out.M = M;
    out.hbar = hbar;
    if (M && !hbar) out.hbar = *M * out.hbar_per_M;
    if (hbar && !M) out.M = *hbar / out.hbar_per_M;
    return out;
}

}  // namespace qca::models
