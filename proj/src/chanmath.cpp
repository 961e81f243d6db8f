#include "qwire/chanmath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwire/errors.hpp"

namespace qwire {

cplx& Mat2C::operator()(int i, int j) {
    return i == 0 ? (j == 0 ? a11 : a12) : (j == 0 ? a21 : a22);
}

const cplx& Mat2C::operator()(int i, int j) const {
    return i == 0 ? (j == 0 ? a11 : a12) : (j == 0 ? a21 : a22);
}

Mat2C operator+(const Mat2C& a, const Mat2C& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

Mat2C operator-(const Mat2C& a, const Mat2C& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

Mat2C operator*(const Mat2C& a, const Mat2C& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

Mat2C operator*(cplx s, const Mat2C& m) { return {s * m.a11, s * m.a12, s * m.a21, s * m.a22}; }
Mat2C operator*(const Mat2C& m, cplx s) { return s * m; }

cplx mat2_det(const Mat2C& m) { return m.a11 * m.a22 - m.a12 * m.a21; }
cplx mat2_trace(const Mat2C& m) { return m.a11 + m.a22; }
Mat2C mat2_mul(const Mat2C& a, const Mat2C& b) { return a * b; }
Mat2C transpose(const Mat2C& m) { return {m.a11, m.a21, m.a12, m.a22}; }

Mat2C adjoint(const Mat2C& m) {
    return {std::conj(m.a11), std::conj(m.a21), std::conj(m.a12), std::conj(m.a22)};
}

double frob_sq(const Mat2C& m) {
    return std::norm(m.a11) + std::norm(m.a12) + std::norm(m.a21) + std::norm(m.a22);
}

Mat2C mat2_inv(const Mat2C& m) {
    const cplx det = mat2_det(m);
    const double scale = frob_sq(m);
    if (!(std::abs(det) >= 1e-14 * scale) || scale == 0.0) {
        throw SingularMatrix("mat2_inv: singular matrix (|det| = " + std::to_string(std::abs(det)) + ")");
    }
    const cplx inv_det = 1.0 / det;
    return {m.a22 * inv_det, -m.a12 * inv_det, -m.a21 * inv_det, m.a11 * inv_det};
}

double max_abs_diff(const Mat2C& a, const Mat2C& b) {
    const Mat2C d = a - b;
    return std::max({std::abs(d.a11), std::abs(d.a12), std::abs(d.a21), std::abs(d.a22)});
}

double transverse_wavenumber(int n, double w) {
    if (n < 1) throw InvalidInput("transverse_wavenumber: channel index must be >= 1");
    if (!(w > 0.0)) throw InvalidInput("transverse_wavenumber: wire width must be positive");
    return n * std::numbers::pi / w;
}

double longitudinal_k(double k_total, int n, double w) {
    const double kt = transverse_wavenumber(n, w);
    const double diff = k_total * k_total - kt * kt;
    if (!(diff > 0.0)) {
        throw ChannelClosed("channel " + std::to_string(n) + " closed: k^2 <= (n pi / w)^2");
    }
    return std::sqrt(diff);
}

bool ChannelSetup::is_open(int n, double k_total) const {
    const double kt = transverse_wavenumber(n, w);
    return k_total * k_total > kt * kt;
}

std::pair<double, double> ChannelSetup::channel_wavenumbers(double k_total) const {
    return {longitudinal_k(k_total, 1, w), longitudinal_k(k_total, 2, w)};
}

} // namespace qwire
