#pragma once

// Scattering matrices of delta barriers in a two-channel wire.
//
// Conventions (internal units, d = 1):
//   * channel equation  psi_n'' + k_n^2 psi_n = sum_m u_nm v(x) psi_m
//   * flux-normalised lead waves  e^{+-i k_n x} / sqrt(k_n), phases referenced
//     to the global origin x = 0
//   * (a_out, b_out) = [[r, t'], [t, r']] (a_in, b_in), a = left lead, b = right
//     lead; column j of r and t is the response to a wave incident from the
//     left in channel j.

#include <complex>

#include "qwire/chanmath.hpp"

namespace qwire {

/// Hermitian coupling matrix u_mn (internal units); u21 = conj(u12).
struct Coupling {
    double u11 = 0.0;
    double u22 = 0.0;
    cplx u12 = 0.0;

    Mat2C matrix() const { return {u11, u12, std::conj(u12), u22}; }
    bool mixing() const { return u12 != cplx{0.0, 0.0}; }
};

/// Two identical delta barriers u v(x), v(x) = delta(x + d/2) + delta(x - d/2).
struct DeltaChain {
    Coupling u;
    double d = 1.0;

    double left_position() const { return -0.5 * d; }
    double right_position() const { return 0.5 * d; }
};

struct ScattererS {
    Mat2C r;      ///< reflection, incident from the left
    Mat2C t;      ///< transmission left -> right
    Mat2C rp;     ///< reflection, incident from the right (r')
    Mat2C tp;     ///< transmission right -> left (t')
    double k1 = 0.0;
    double k2 = 0.0;

    /// Element of the 4x4 block matrix [[r, t'], [t, r']] (zero-based).
    cplx full(int i, int j) const;
};

struct AmplitudePair {
    cplx r;
    cplx t;
};

/// Single delta of real strength u at the origin: r = (u/2ik)/(1 - u/2ik), t = 1/(1 - u/2ik).
AmplitudePair delta_amplitudes(double u, double k);

/// Single matrix delta u delta(x - x0). Reference planes at x = 0.
ScattererS delta_smatrix(const Coupling& u, double k1, double k2, double x0);

/// Field-free region of length L (L >= 0): t = t' = diag(e^{i k_n L}), r = r' = 0.
ScattererS free_segment(double k1, double k2, double length);

/// Star product: Sa on the left, Sb on the right.
ScattererS compose(const ScattererS& sa, const ScattererS& sb);

/// Closed-form (r_jj, t_jj) for one channel of the symmetric double delta at +-d/2.
AmplitudePair double_delta_closed_form(double u, double k, double d);

/// The double-delta S-matrix assembled by composing the two single deltas.
ScattererS double_delta_smatrix(const DeltaChain& chain, double k1, double k2);

/// Frobenius norm of S^dagger S - 1 over the 4x4 block matrix.
double unitarity_defect(const ScattererS& s);

/// Max |S_ij - S_ji| over the 4x4 block matrix (zero for time-reversal-symmetric systems).
double symmetry_defect(const ScattererS& s);

} // namespace qwire
