#pragma once

// Two-electron output state of the wire and its entanglement.
//
// Mode basis is fixed to (L1, L2, R1, R2): a^dagger_out,i -> L_i (left lead,
// channel i), b^dagger_out,i -> R_i (right lead, channel i). The input state
// a^dagger_in,1 a^dagger_in,2 |0> has one electron in each channel of the left
// lead.

#include <array>
#include <optional>

#include "qwire/chanmath.hpp"
#include "qwire/scattering.hpp"

namespace qwire {

/// Coincidence amplitude matrix of the post-selected (one left, one right) component.
struct GammaState {
    Mat2C gamma;
    double norm = 0.0;  ///< Tr(gamma gamma^dagger)
    Mat2C r;
    Mat2C t;
};

/// Antisymmetric 4x4 coefficient matrix of a two-fermion state, |psi> = sum W_ab c_a^dag c_b^dag |0>.
struct WMatrix {
    std::array<cplx, 16> w{};

    cplx& operator()(int a, int b) { return w[4 * a + b]; }
    const cplx& operator()(int a, int b) const { return w[4 * a + b]; }

    /// Tr(W W^dagger).
    double weight() const;
};

using Mat4C = std::array<std::array<cplx, 4>, 4>;

struct ReducedDensity {
    Mat4C rho{};
    std::array<double, 4> eigenvalues{};  ///< ascending
    double purity = 0.0;                  ///< Tr rho^2
};

/// Mode index helpers for the (L1, L2, R1, R2) basis, channel in {1, 2}.
constexpr int mode_left(int channel) { return channel - 1; }
constexpr int mode_right(int channel) { return channel + 1; }

/// gamma = [[r12 t11 - r11 t12, r12 t21 - r11 t22], [r22 t11 - r21 t12, r22 t21 - r21 t22]]
/// (equals -i r sigma_y t^T).
GammaState gamma_of(const Mat2C& r, const Mat2C& t);

/// Probability of the coincidence outcome, Tr(gamma gamma^dagger).
double postselect_probability(const GammaState& g);

/// [r sigma_y r^T]_12: amplitude for both electrons reflected.
cplx both_reflected_amplitude(const Mat2C& r);
/// [t sigma_y t^T]_12: amplitude for both electrons transmitted.
cplx both_transmitted_amplitude(const Mat2C& t);

/// Channel-diagonal concurrence 2|r22||t11||r11||t22| / (|r22 t11|^2 + |r11 t22|^2).
/// Returns 0 when the denominator vanishes.
double concurrence_closed(cplx r11, cplx r22, cplx t11, cplx t22);

/// 2|det gamma| / Tr(gamma gamma^dagger). Throws NoPostSelectedState for vanishing norm.
double concurrence_det(const GammaState& g);

/// [[0, gamma], [-gamma^T, 0]] / (2 sqrt(Tr gamma gamma^dagger)).
WMatrix w_postselected(const GammaState& g);

/// W of the complete output state (both-reflected, coincidence and
/// both-transmitted terms), normalised to Tr(W W^dagger) = 1/2.
WMatrix w_full(const Mat2C& r, const Mat2C& t);

/// 8 |W12 W34 + W13 W42 + W14 W23| (one-based labels). Requires antisymmetric W
/// with Tr(W W^dagger) = 1/2 within 1e-10.
double concurrence_from_w(const WMatrix& w);

/// One-particle reduced density matrix rho_1 = 2 W W^dagger of a post-selected
/// state (LL and RR blocks of W must vanish).
ReducedDensity reduced_density(const WMatrix& w);

struct EntanglementReport {
    std::optional<double> eta_closed;  ///< only without channel mixing
    std::optional<double> eta_det;
    std::optional<double> eta_w;
    double p_select = 0.0;
    std::optional<ReducedDensity> rho1;
    double full_state_eta = 0.0;
    double both_reflected_prob = 0.0;
    double both_transmitted_prob = 0.0;
    double unitarity_defect = 0.0;
    bool mixing = false;

    /// Concurrence of the post-selected state, empty when p_select = 0.
    std::optional<double> eta() const { return eta_det; }
};

/// Everything about one (k1, k2) point of a delta chain (internal units).
/// eta_closed uses the closed-form channel amplitudes; all other quantities
/// come from the composed S-matrix.
EntanglementReport analyze(const DeltaChain& chain, double k1, double k2);

/// Same, from an explicit S-matrix (eta_closed filled when r and t are diagonal).
EntanglementReport analyze(const ScattererS& s);

} // namespace qwire
