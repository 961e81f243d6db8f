#include "qwire/entangle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "qwire/errors.hpp"

namespace qwire {

namespace {

constexpr double kNormFloor = std::numeric_limits<double>::min();

void require_state(double norm, const char* where) {
    if (!(norm > kNormFloor)) {
        throw NoPostSelectedState(std::string(where) + ": Tr(gamma gamma^dagger) = 0, no post-selected state");
    }
}

bool is_diagonal(const Mat2C& m) { return m.a12 == cplx{} && m.a21 == cplx{}; }

} // namespace

double WMatrix::weight() const {
    double sum = 0.0;
    for (const cplx& x : w) sum += std::norm(x);
    return sum;
}

GammaState gamma_of(const Mat2C& r, const Mat2C& t) {
    GammaState g;
    g.gamma = {r.a12 * t.a11 - r.a11 * t.a12, r.a12 * t.a21 - r.a11 * t.a22,
               r.a22 * t.a11 - r.a21 * t.a12, r.a22 * t.a21 - r.a21 * t.a22};
    g.norm = frob_sq(g.gamma);
    g.r = r;
    g.t = t;
    return g;
}

double postselect_probability(const GammaState& g) { return g.norm; }

cplx both_reflected_amplitude(const Mat2C& r) { return (r * Mat2C::sigma_y() * transpose(r)).a12; }
cplx both_transmitted_amplitude(const Mat2C& t) { return (t * Mat2C::sigma_y() * transpose(t)).a12; }

double concurrence_closed(cplx r11, cplx r22, cplx t11, cplx t22) {
    const double a = std::abs(r22) * std::abs(t11);
    const double b = std::abs(r11) * std::abs(t22);
    const double denom = a * a + b * b;
    if (denom == 0.0) return 0.0;
    return 2.0 * a * b / denom;
}

double concurrence_det(const GammaState& g) {
    require_state(g.norm, "concurrence_det");
    return 2.0 * std::abs(mat2_det(g.gamma)) / g.norm;
}

WMatrix w_postselected(const GammaState& g) {
    require_state(g.norm, "w_postselected");
    const double scale = 1.0 / (2.0 * std::sqrt(g.norm));
    WMatrix w;
    for (int n = 1; n <= 2; ++n) {
        for (int m = 1; m <= 2; ++m) {
            const cplx v = scale * g.gamma(n - 1, m - 1);
            w(mode_left(n), mode_right(m)) = v;
            w(mode_right(m), mode_left(n)) = -v;
        }
    }
    return w;
}

WMatrix w_full(const Mat2C& r, const Mat2C& t) {
    // All three terms carry the same global phase only in the r sigma_y t^T form.
    const Mat2C coincidence = r * Mat2C::sigma_y() * transpose(t);
    const cplx reflected = both_reflected_amplitude(r);
    const cplx transmitted = both_transmitted_amplitude(t);
    const double total = std::norm(reflected) + std::norm(transmitted) + frob_sq(coincidence);
    if (!(total > kNormFloor)) throw InvalidInput("w_full: output state has zero norm");
    const double scale = 1.0 / (2.0 * std::sqrt(total));

    WMatrix w;
    w(mode_left(1), mode_left(2)) = scale * reflected;
    w(mode_left(2), mode_left(1)) = -scale * reflected;
    w(mode_right(1), mode_right(2)) = scale * transmitted;
    w(mode_right(2), mode_right(1)) = -scale * transmitted;
    for (int n = 1; n <= 2; ++n) {
        for (int m = 1; m <= 2; ++m) {
            const cplx v = scale * coincidence(n - 1, m - 1);
            w(mode_left(n), mode_right(m)) = v;
            w(mode_right(m), mode_left(n)) = -v;
        }
    }
    return w;
}

double concurrence_from_w(const WMatrix& w) {
    for (int a = 0; a < 4; ++a) {
        for (int b = a; b < 4; ++b) {
            if (std::abs(w(a, b) + w(b, a)) > 1e-14) throw InvalidInput("concurrence_from_w: W is not antisymmetric");
        }
    }
    if (std::abs(w.weight() - 0.5) > 1e-10) {
        throw InvalidInput("concurrence_from_w: W not normalised to Tr(W W^dagger) = 1/2");
    }
    const cplx pf = w(0, 1) * w(2, 3) + w(0, 2) * w(3, 1) + w(0, 3) * w(1, 2);
    return 8.0 * std::abs(pf);
}

ReducedDensity reduced_density(const WMatrix& w) {
    const double same_side = std::norm(w(0, 1)) + std::norm(w(2, 3));
    if (same_side > 1e-24) {
        throw InvalidInput("reduced_density: W has both-left or both-right components (not post-selected)");
    }
    if (!(w.weight() > kNormFloor)) throw NoPostSelectedState("reduced_density: empty state");

    ReducedDensity out;
    Eigen::Matrix4cd rho;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            cplx acc = 0.0;
            for (int c = 0; c < 4; ++c) acc += w(a, c) * std::conj(w(b, c));
            out.rho[a][b] = 2.0 * acc;
            rho(a, b) = 2.0 * acc;
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 4; ++i) out.eigenvalues[i] = solver.eigenvalues()(i);
    out.purity = (rho * rho).trace().real();
    return out;
}

EntanglementReport analyze(const ScattererS& s) {
    EntanglementReport rep;
    rep.mixing = !(is_diagonal(s.r) && is_diagonal(s.t));
    rep.unitarity_defect = unitarity_defect(s);

    const GammaState g = gamma_of(s.r, s.t);
    rep.p_select = postselect_probability(g);
    rep.both_reflected_prob = std::norm(both_reflected_amplitude(s.r));
    rep.both_transmitted_prob = std::norm(both_transmitted_amplitude(s.t));
    rep.full_state_eta = concurrence_from_w(w_full(s.r, s.t));

    if (g.norm > kNormFloor) {
        rep.eta_det = concurrence_det(g);
        const WMatrix w = w_postselected(g);
        rep.eta_w = concurrence_from_w(w);
        rep.rho1 = reduced_density(w);
        if (!rep.mixing) rep.eta_closed = concurrence_closed(s.r.a11, s.r.a22, s.t.a11, s.t.a22);
    }
    return rep;
}

EntanglementReport analyze(const DeltaChain& chain, double k1, double k2) {
    EntanglementReport rep = analyze(double_delta_smatrix(chain, k1, k2));
    if (!chain.u.mixing() && rep.eta_det) {
        const AmplitudePair c1 = double_delta_closed_form(chain.u.u11, k1, chain.d);
        const AmplitudePair c2 = double_delta_closed_form(chain.u.u22, k2, chain.d);
        rep.eta_closed = concurrence_closed(c1.r, c2.r, c1.t, c2.t);
    }
    return rep;
}

} // namespace qwire
