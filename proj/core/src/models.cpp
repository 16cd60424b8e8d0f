#include "qca/models.hpp"

#include <Eigen/QR>

#include <cmath>

namespace qca::models {

namespace {

constexpr cplx I_UNIT{0.0, 1.0};

void check_mass(double m) {
    if (!(m >= 0.0 && m <= 1.0)) throw ConfigError("mass must lie in [0, 1]");
}

/// Pauli component indices used for a given spatial dimension: the d=1 rule
/// rotates about z, d>=2 use x, y[, z] in axis order.
int pauli_axis(int dim, int axis) { return dim == 1 ? 3 : axis + 1; }

/// Decomposes a 2x2 unitary of the form u I - i sigma·n into (u, n).
void su2_split(const Mat& a, double& u, RVec& n_tilde) {
    u = 0.5 * (a.trace()).real();
    n_tilde = RVec(3);
    for (int j = 1; j <= 3; ++j) n_tilde[j - 1] = (0.5 * I_UNIT * (pauli(j) * a).trace()).real();
}

}  // namespace

WeylVariant weyl1d() { return WeylVariant{1, Chirality::APlus, 0.0}; }

WeylVariant weyl2d(Chirality chirality, double theta) {
    if (chirality == Chirality::AMinus || chirality == Chirality::BMinus)
        throw ConfigError("d=2 Weyl variants are A or B (no sign tag)");
    return WeylVariant{2, chirality, theta};
}

WeylVariant weyl3d(Chirality chirality) { return WeylVariant{3, chirality, 0.0}; }

double DiracParams::n() const {
    check_mass(mass);
    return std::sqrt(1.0 - mass * mass);
}

Mat pauli(int i) {
    Mat m(2, 2);
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -I_UNIT, I_UNIT, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw ConfigError("Pauli index must be 0..3");
    }
    return m;
}

Mat gamma0() {
    Mat g = Mat::Zero(4, 4);
    g.block(0, 2, 2, 2) = Mat::Identity(2, 2);
    g.block(2, 0, 2, 2) = Mat::Identity(2, 2);
    return g;
}

Mat gamma(int i) {
    if (i < 1 || i > 3) throw ConfigError("gamma spatial index must be 1..3");
    Mat g = Mat::Zero(4, 4);
    g.block(0, 2, 2, 2) = pauli(i);
    g.block(2, 0, 2, 2) = -pauli(i);
    return g;
}

Mat weyl_ak_closed(const WeylVariant& v, const KPoint& k) {
    if (k.dim() != v.dim) throw ConfigError("wave vector dimension mismatch");
    double u = 0.0;
    RVec n(3);
    switch (v.dim) {
        case 1: {
            u = std::cos(k[0]);
            n << 0.0, 0.0, std::sin(k[0]);
            break;
        }
        case 2: {
            const double r = std::sqrt(2.0);
            const double cx = std::cos(k[0] / r), sx = std::sin(k[0] / r);
            const double cy = std::cos(k[1] / r), sy = std::sin(k[1] / r);
            u = cx * cy;
            n << sx * cy, cx * sy, sx * sy;
            break;
        }
        case 3: {
            const double r = std::sqrt(3.0);
            const double cx = std::cos(k[0] / r), sx = std::sin(k[0] / r);
            const double cy = std::cos(k[1] / r), sy = std::sin(k[1] / r);
            const double cz = std::cos(k[2] / r), sz = std::sin(k[2] / r);
            const double sign = v.sign();
            u = cx * cy * cz + sign * sx * sy * sz;
            n << sx * cy * cz - sign * cx * sy * sz,
                 cx * sy * cz + sign * sx * cy * sz,
                 cx * cy * sz - sign * sx * sy * cz;
            break;
        }
        default: throw ConfigError("Weyl dimension must be 1, 2, or 3");
    }
    Mat a = u * pauli(0) - I_UNIT * (n[0] * pauli(1) + n[1] * pauli(2) + n[2] * pauli(3));
    if (v.dim == 2 && v.theta != 0.0) {
        a = (std::cos(v.theta) * pauli(0) + I_UNIT * std::sin(v.theta) * pauli(1)) * a;
    }
    if (v.transposed()) a.transposeInPlace();
    return a;
}

Mat dirac_ak_closed(const DiracParams& p, const KPoint& k) {
    const double n = p.n();
    const double m = p.mass;
    double u = 0.0;
    RVec nt(3);
    su2_split(weyl_ak_closed(p.base, k), u, nt);
    Mat d = n * u * Mat::Identity(4, 4) + I_UNIT * m * gamma0();
    for (int j = 1; j <= 3; ++j) d -= I_UNIT * n * nt[j - 1] * Mat(gamma0() * gamma(j));
    return d;
}

namespace {

/// Generator labels and unit-length embeddings of the Weyl lattices, with a
/// separate inverse label per generator.
struct GeneratorLayout {
    std::vector<std::pair<std::string, IVec>> coords;
    RMat coord_to_embed;
    kspace::Lattice lattice;
};

GeneratorLayout generator_layout(int dim) {
    GeneratorLayout layout;
    switch (dim) {
        case 1: {
            layout.lattice = kspace::Lattice::line;
            layout.coord_to_embed = RMat::Identity(1, 1);
            layout.coords = {{"h", ivec({1})}, {"hinv", ivec({-1})}};
            break;
        }
        case 2: {
            layout.lattice = kspace::Lattice::square;
            layout.coord_to_embed = RMat(2, 2);
            const double r = 1.0 / std::sqrt(2.0);
            layout.coord_to_embed << r, r, r, -r;
            layout.coords = {{"h1", ivec({1, 0})},
                             {"h2", ivec({0, 1})},
                             {"h1inv", ivec({-1, 0})},
                             {"h2inv", ivec({0, -1})}};
            break;
        }
        case 3: {
            layout.lattice = kspace::Lattice::bcc;
            layout.coord_to_embed = RMat::Identity(3, 3) / std::sqrt(3.0);
            layout.coords = {{"h1", ivec({1, 1, 1})},    {"h2", ivec({1, -1, -1})},
                             {"h3", ivec({-1, 1, -1})},  {"h4", ivec({-1, -1, 1})},
                             {"h1inv", ivec({-1, -1, -1})}, {"h2inv", ivec({-1, 1, 1})},
                             {"h3inv", ivec({1, -1, 1})},   {"h4inv", ivec({1, 1, -1})}};
            break;
        }
        default: throw ConfigError("dimension must be 1, 2, or 3");
    }
    return layout;
}

std::string variant_name(const WeylVariant& v) {
    switch (v.dim) {
        case 1: return "weyl1d";
        case 2: return v.transposed() ? "weyl2dB" : "weyl2d";
        default: {
            std::string name = "weyl3d";
            name += v.sign() > 0 ? '+' : '-';
            name += v.transposed() ? 'B' : 'A';
            return name;
        }
    }
}

TransitionRule rule_from_closed_form(const std::function<Mat(const KPoint&)>& ak,
                                     int dim, int spin, const std::string& name) {
    const GeneratorLayout layout = generator_layout(dim);
    std::vector<std::pair<std::string, RVec>> embeds;
    for (const auto& [label, coord] : layout.coords)
        embeds.push_back({label, RVec(layout.coord_to_embed * coord.cast<double>())});

    ExtractionResult extracted = extract_transition_matrices(ak, embeds, spin);

    TransitionRule rule;
    rule.name = name;
    rule.dim = dim;
    rule.spin = spin;
    rule.lattice = layout.lattice;
    rule.coord_to_embed = layout.coord_to_embed;
    for (std::size_t i = 0; i < layout.coords.size(); ++i) {
        const auto& [label, coord] = layout.coords[i];
        rule.terms.push_back({label, coord, embeds[i].second, extracted.matrices.at(label)});
    }
    if (extracted.identity_term.norm() > 1e-13) rule.identity_term = extracted.identity_term;
    rule.validate();
    return rule;
}

}  // namespace

TransitionRule weyl_rule(const WeylVariant& v) {
    return rule_from_closed_form([v](const KPoint& k) { return weyl_ak_closed(v, k); }, v.dim,
                                 2, variant_name(v));
}

TransitionRule dirac_rule(const DiracParams& p) {
    check_mass(p.mass);
    std::string name = "dirac(" + variant_name(p.base) + ",m=" + std::to_string(p.mass) + ")";
    return rule_from_closed_form([p](const KPoint& k) { return dirac_ak_closed(p, k); },
                                 p.base.dim, 4, name);
}

ExtractionResult extract_transition_matrices(
    const std::function<Mat(const KPoint&)>& ak,
    const std::vector<std::pair<std::string, RVec>>& generators, int spin,
    double tolerance) {
    if (generators.empty()) throw ConfigError("empty generator support");
    const int dim = static_cast<int>(generators.front().second.size());
    const int unknowns = static_cast<int>(generators.size()) + 1;  // + identity element
    const int samples = 2 * unknowns + 5;

    // Deterministic generic sample points; nothing here depends on a lattice.
    auto rng = seeded_rng(0x1234u);
    std::uniform_real_distribution<double> uk(-3.0, 3.0);
    auto draw_k = [&]() {
        RVec k(dim);
        for (int i = 0; i < dim; ++i) k[i] = uk(rng);
        return k;
    };

    Mat coeff(samples, unknowns);
    Mat rhs(samples, spin * spin);
    std::vector<RVec> points;
    for (int p = 0; p < samples; ++p) {
        RVec k = draw_k();
        points.push_back(k);
        coeff(p, 0) = 1.0;
        for (std::size_t j = 0; j < generators.size(); ++j)
            coeff(p, static_cast<int>(j) + 1) = std::exp(-I_UNIT * k.dot(generators[j].second));
        Mat a = ak(KPoint(k));
        if (a.rows() != spin || a.cols() != spin)
            throw ConfigError("sampled matrix has unexpected shape");
        for (int r = 0; r < spin; ++r)
            for (int c = 0; c < spin; ++c) rhs(p, r * spin + c) = a(r, c);
    }

    Eigen::ColPivHouseholderQR<Mat> qr(coeff);
    if (qr.rank() < unknowns)
        throw Error("sampling does not resolve the generator support (ill-conditioned)");
    Mat solution = qr.solve(rhs);

    ExtractionResult result;
    auto unpack = [&](int row) {
        Mat m(spin, spin);
        for (int r = 0; r < spin; ++r)
            for (int c = 0; c < spin; ++c) m(r, c) = solution(row, r * spin + c);
        return m;
    };
    result.identity_term = unpack(0);
    for (std::size_t j = 0; j < generators.size(); ++j)
        result.matrices[generators[j].first] = unpack(static_cast<int>(j) + 1);

    // Re-synthesis at fresh points: any miss means the declared support is wrong.
    double residual = 0.0;
    double scale = 1.0;
    for (int p = 0; p < 7; ++p) {
        RVec k = draw_k();
        Mat synth = result.identity_term;
        for (std::size_t j = 0; j < generators.size(); ++j)
            synth += std::exp(-I_UNIT * k.dot(generators[j].second)) *
                     result.matrices[generators[j].first];
        Mat a = ak(KPoint(k));
        residual = std::max(residual, (a - synth).norm());
        scale = std::max(scale, a.norm());
    }
    result.resynthesis_residual = residual;
    if (residual > tolerance * scale * 10.0)
        throw Error("declared generator support does not reproduce the sampled function");
    return result;
}

Mat target_weyl_hamiltonian(int dim, const KPoint& k) {
    if (dim < 1 || dim > 3) throw ConfigError("dimension must be 1, 2, or 3");
    if (k.dim() != dim) throw ConfigError("wave vector dimension mismatch");
    Mat h = Mat::Zero(2, 2);
    for (int axis = 0; axis < dim; ++axis) h += k[axis] * pauli(pauli_axis(dim, axis));
    return h / std::sqrt(static_cast<double>(dim));
}

Mat target_dirac_hamiltonian(int dim, const KPoint& k, double mass) {
    check_mass(mass);
    if (dim < 1 || dim > 3) throw ConfigError("dimension must be 1, 2, or 3");
    if (k.dim() != dim) throw ConfigError("wave vector dimension mismatch");
    const double n = std::sqrt(1.0 - mass * mass);
    Mat h = mass * gamma0();
    for (int axis = 0; axis < dim; ++axis)
        h += (n / std::sqrt(static_cast<double>(dim))) * k[axis] *
             Mat(gamma0() * gamma(pauli_axis(dim, axis)));
    return h;
}

NVector n_vector(const WeylVariant& v, const KPoint& k) {
    NVector out;
    double u = 0.0;
    su2_split(weyl_ak_closed(v, k), u, out.n_tilde);
    out.omega = std::acos(std::clamp(u, -1.0, 1.0));
    if (pi - out.omega < 1e-9)
        throw SingularPointError("rescaling divergent at the dispersion half-turn (ω = π)");
    const double s = std::sin(out.omega);
    double factor;
    if (std::abs(s) < 1e-6) {
        const double w2 = out.omega * out.omega;
        factor = 1.0 + w2 / 6.0 + 7.0 * w2 * w2 / 360.0;
    } else {
        factor = out.omega / s;
    }
    out.n = factor * out.n_tilde;
    return out;
}

ModelSelection parse_model(const std::string& name) {
    ModelSelection sel;
    if (name == "weyl1d") {
        sel.variant = weyl1d();
        return sel;
    }
    if (name == "weyl2d" || name == "weyl2dA") {
        sel.variant = weyl2d(Chirality::APlus);
        return sel;
    }
    if (name == "weyl2dB") {
        sel.variant = weyl2d(Chirality::BPlus);
        return sel;
    }
    if (name.rfind("weyl3d", 0) == 0 && (name.size() == 7 || name.size() == 8)) {
        const char sign = name[6];
        const char form = name.size() == 8 ? name[7] : 'A';
        if ((sign == '+' || sign == '-') && (form == 'A' || form == 'B')) {
            Chirality c = sign == '+' ? (form == 'A' ? Chirality::APlus : Chirality::BPlus)
                                      : (form == 'A' ? Chirality::AMinus : Chirality::BMinus);
            sel.variant = weyl3d(c);
            return sel;
        }
    }
    if (name == "dirac") {
        sel.dirac = true;
        sel.variant = weyl3d();
        return sel;
    }
    throw ConfigError("unknown model '" + name +
                      "' (expected weyl1d, weyl2d[B], weyl3d±[A|B], or dirac)");
}

namespace {

/// Permutation element on the h₁..h_n labels (inverse labels follow along).
kspace::IsotropyElement make_element(const std::string& name,
                                     const std::vector<int>& target, const Mat& u,
                                     bool doubled) {
    kspace::IsotropyElement el;
    el.name = name;
    const int n = static_cast<int>(target.size());
    for (int i = 0; i < n; ++i) {
        const std::string src = n == 1 ? "h" : "h" + std::to_string(i + 1);
        const std::string dst = n == 1 ? "h" : "h" + std::to_string(target[i] + 1);
        el.perm[src] = dst;
        el.perm[src + "inv"] = dst + "inv";
    }
    if (doubled) {
        Mat big = Mat::Zero(2 * u.rows(), 2 * u.cols());
        big.topLeftCorner(u.rows(), u.cols()) = u;
        big.bottomRightCorner(u.rows(), u.cols()) = u;
        el.U = big;
    } else {
        el.U = u;
    }
    return el;
}

}  // namespace

kspace::IsotropyGroup isotropy_group(const ModelSelection& sel) {
    const bool dbl = sel.dirac;
    const cplx i1(0.0, 1.0);
    kspace::IsotropyGroup g;
    switch (sel.variant.dim) {
        case 1:
            g.elements.push_back(make_element("e", {0}, pauli(0), dbl));
            break;
        case 2:
            g.elements.push_back(make_element("e", {0, 1}, pauli(0), dbl));
            g.elements.push_back(make_element("swap", {1, 0}, i1 * pauli(1), dbl));
            break;
        case 3:
            // Binary rotations about the coordinate axes permute the four
            // body-diagonal generators in pairs; the representatives are the
            // corresponding spin rotations iσ_x, iσ_y, iσ_z.
            g.elements.push_back(make_element("e", {0, 1, 2, 3}, pauli(0), dbl));
            g.elements.push_back(make_element("rx", {1, 0, 3, 2}, i1 * pauli(1), dbl));
            g.elements.push_back(make_element("ry", {2, 3, 0, 1}, i1 * pauli(2), dbl));
            g.elements.push_back(make_element("rz", {3, 2, 1, 0}, i1 * pauli(3), dbl));
            break;
        default:
            throw ConfigError("isotropy group: unsupported dimension");
    }
    return g;
}

}  // namespace qca::models
