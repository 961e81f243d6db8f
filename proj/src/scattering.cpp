#include "qwire/scattering.hpp"

#include <cmath>

#include "qwire/errors.hpp"

namespace qwire {

namespace {

void require_open(double k1, double k2, const char* where) {
    if (!(k1 > 0.0) || !(k2 > 0.0)) {
        throw ChannelClosed(std::string(where) + ": both channel wavenumbers must be positive");
    }
}

} // namespace

cplx ScattererS::full(int i, int j) const {
    const Mat2C& block = i < 2 ? (j < 2 ? r : tp) : (j < 2 ? t : rp);
    return block(i % 2, j % 2);
}

AmplitudePair delta_amplitudes(double u, double k) {
    if (!(k > 0.0)) throw ChannelClosed("delta_amplitudes: k must be positive (evanescent/closed channel)");
    const cplx z = u / (2.0 * cplx{0.0, 1.0} * k);
    const cplx t = 1.0 / (1.0 - z);
    return {z * t, t};
}

ScattererS delta_smatrix(const Coupling& u, double k1, double k2, double x0) {
    require_open(k1, k2, "delta_smatrix");
    using namespace std::complex_literals;

    // K^{-1/2} u K^{-1/2}
    const double s1 = 1.0 / std::sqrt(k1);
    const double s2 = 1.0 / std::sqrt(k2);
    const Mat2C scaled{u.u11 * s1 * s1, u.u12 * s1 * s2, std::conj(u.u12) * s2 * s1, u.u22 * s2 * s2};

    const Mat2C t = mat2_inv(Mat2C::identity() + 0.5i * scaled);
    const Mat2C r = t - Mat2C::identity();

    const Mat2C p = Mat2C::diag(std::polar(1.0, k1 * x0), std::polar(1.0, k2 * x0));
    const Mat2C p_inv = Mat2C::diag(std::polar(1.0, -k1 * x0), std::polar(1.0, -k2 * x0));

    ScattererS s;
    s.r = p * r * p;
    s.t = p_inv * t * p;
    s.rp = p_inv * r * p_inv;
    s.tp = p * t * p_inv;
    s.k1 = k1;
    s.k2 = k2;
    return s;
}

ScattererS free_segment(double k1, double k2, double length) {
    if (!(length >= 0.0)) throw InvalidInput("free_segment: length must be non-negative");
    ScattererS s;
    s.t = Mat2C::diag(std::polar(1.0, k1 * length), std::polar(1.0, k2 * length));
    s.tp = s.t;
    s.k1 = k1;
    s.k2 = k2;
    return s;
}

ScattererS compose(const ScattererS& sa, const ScattererS& sb) {
    if (sa.k1 != sb.k1 || sa.k2 != sb.k2) {
        throw InvalidInput("compose: scatterers built for different wavenumbers");
    }
    const Mat2C one = Mat2C::identity();
    const Mat2C left_loop = one - sa.rp * sb.r;  // 1 - r'_a r_b
    const Mat2C right_loop = one - sb.r * sa.rp; // 1 - r_b r'_a
    if (std::abs(mat2_det(left_loop)) < 1e-14) throw SingularMatrix("compose: resonant singularity");
    const Mat2C left_inv = mat2_inv(left_loop);
    const Mat2C right_inv = mat2_inv(right_loop);

    ScattererS s;
    s.r = sa.r + sa.tp * sb.r * left_inv * sa.t;
    s.t = sb.t * left_inv * sa.t;
    s.rp = sb.rp + sb.t * sa.rp * right_inv * sb.tp;
    s.tp = sa.tp * right_inv * sb.tp;
    s.k1 = sa.k1;
    s.k2 = sa.k2;
    return s;
}

AmplitudePair double_delta_closed_form(double u, double k, double d) {
    if (!(d > 0.0)) throw InvalidInput("double_delta_closed_form: separation must be positive");
    const auto [r, t] = delta_amplitudes(u, k);
    const cplx round_trip = std::polar(1.0, 2.0 * k * d);
    const cplx denom = 1.0 - r * r * round_trip;
    const cplx r_jj = r * std::polar(1.0, -k * d) * (1.0 + t * t * round_trip / denom);
    const cplx t_jj = t * t / denom;
    return {r_jj, t_jj};
}

ScattererS double_delta_smatrix(const DeltaChain& chain, double k1, double k2) {
    return compose(delta_smatrix(chain.u, k1, k2, chain.left_position()),
                   delta_smatrix(chain.u, k1, k2, chain.right_position()));
}

double unitarity_defect(const ScattererS& s) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            cplx acc = 0.0;
            for (int m = 0; m < 4; ++m) acc += std::conj(s.full(m, i)) * s.full(m, j);
            if (i == j) acc -= 1.0;
            sum += std::norm(acc);
        }
    }
    return std::sqrt(sum);
}

double symmetry_defect(const ScattererS& s) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) worst = std::max(worst, std::abs(s.full(i, j) - s.full(j, i)));
    }
    return worst;
}

} // namespace qwire
