#pragma once

// Complex 2x2 algebra and quasi-1D channel kinematics.
//
// Length unit throughout the numeric core is the barrier separation d (d = 1).
// User-facing wavenumbers and couplings are quoted in units of 2pi/d; use
// to_internal / to_user to convert at the boundary.

#include <complex>
#include <numbers>
#include <utility>

namespace qwire {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// 2pi/d units -> internal (d = 1) units.
constexpr double to_internal(double user_value) { return two_pi * user_value; }
constexpr double to_user(double internal_value) { return internal_value / two_pi; }

/// Dense 2x2 complex matrix, row-major entries a11 a12 / a21 a22.
struct Mat2C {
    cplx a11{}, a12{}, a21{}, a22{};

    static constexpr Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2C zero() { return {}; }
    static constexpr Mat2C diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }
    /// Pauli sigma_y.
    static constexpr Mat2C sigma_y() { return {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0}; }

    /// Zero-based element access (i, j in {0, 1}).
    cplx& operator()(int i, int j);
    const cplx& operator()(int i, int j) const;

    friend bool operator==(const Mat2C&, const Mat2C&) = default;
};

Mat2C operator+(const Mat2C& a, const Mat2C& b);
Mat2C operator-(const Mat2C& a, const Mat2C& b);
Mat2C operator*(const Mat2C& a, const Mat2C& b);
Mat2C operator*(cplx s, const Mat2C& m);
Mat2C operator*(const Mat2C& m, cplx s);

cplx mat2_det(const Mat2C& m);
cplx mat2_trace(const Mat2C& m);
Mat2C mat2_mul(const Mat2C& a, const Mat2C& b);
Mat2C transpose(const Mat2C& m);
Mat2C adjoint(const Mat2C& m);

/// Tr(M M^dagger), the squared Frobenius norm.
double frob_sq(const Mat2C& m);

/// Throws SingularMatrix when |det M| < 1e-14 * frob_sq(M).
Mat2C mat2_inv(const Mat2C& m);

/// Largest absolute entry of a - b.
double max_abs_diff(const Mat2C& a, const Mat2C& b);

// ---------------------------------------------------------------------------
// Channel kinematics

/// K_perp,n = n pi / w for a hard-wall wire of width w.
double transverse_wavenumber(int n, double w);

/// sqrt(k_total^2 - K_perp,n^2). Throws ChannelClosed at or below threshold.
double longitudinal_k(double k_total, int n, double w);

/// Hard-wall wire of width w carrying the two lowest transverse channels.
struct ChannelSetup {
    double w = 1.0;
    double d = 1.0;

    bool is_open(int n, double k_total) const;
    /// Longitudinal wavenumbers (k1, k2) of channels 1 and 2; both must be open.
    std::pair<double, double> channel_wavenumbers(double k_total) const;
};

} // namespace qwire
