#include "qwire/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "qwire/errors.hpp"

namespace qwire {

namespace {

constexpr double kGaussianCutoff = 12.0;  // in units of sigma

struct Profile {
    double sigma;
    double centre_left;
    double centre_right;

    double operator()(double x) const {
        return bump(x - centre_left) + bump(x - centre_right);
    }

    double bump(double s) const {
        if (std::abs(s) > kGaussianCutoff * sigma) return 0.0;
        const double z = s / sigma;
        return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
    }
};

/// Y holds two independent solutions as columns; rows are channels.
struct State {
    Mat2C y;
    Mat2C dy;
};

State derivative(const State& s, double x, const Mat2C& coupling, const Mat2C& k_sq, const Profile& v) {
    return {s.dy, v(x) * (coupling * s.y) - k_sq * s.y};
}

State axpy(const State& s, double h, const State& d) {
    return {s.y + cplx{h} * d.y, s.dy + cplx{h} * d.dy};
}

struct LeadProbe {
    // Probe sample indices (step counts from the start) per channel.
    std::array<long, 2> far_index{};
    long end_index = 0;
};

struct Integration {
    std::array<Mat2C, 2> near;  // Y at the channel-specific inner probe
    Mat2C end;                  // Y at the domain end
};

/// Integrate from x_start in steps of h (signed) for n_steps, recording Y at the probes.
Integration integrate(State s, double x_start, double h, long n_steps, const LeadProbe& probe, const Mat2C& coupling,
                      const Mat2C& k_sq, const Profile& v) {
    Integration out;
    for (long i = 0; i < n_steps; ++i) {
        const double x = x_start + h * static_cast<double>(i);
        const State k1 = derivative(s, x, coupling, k_sq, v);
        const State k2 = derivative(axpy(s, 0.5 * h, k1), x + 0.5 * h, coupling, k_sq, v);
        const State k3 = derivative(axpy(s, 0.5 * h, k2), x + 0.5 * h, coupling, k_sq, v);
        const State k4 = derivative(axpy(s, h, k3), x + h, coupling, k_sq, v);
        const cplx w = h / 6.0;
        s.y = s.y + w * (k1.y + cplx{2.0} * k2.y + cplx{2.0} * k3.y + k4.y);
        s.dy = s.dy + w * (k1.dy + cplx{2.0} * k2.dy + cplx{2.0} * k3.dy + k4.dy);
        const long idx = i + 1;
        for (int n = 0; n < 2; ++n) {
            if (idx == probe.far_index[n]) out.near[n] = s.y;
        }
    }
    out.end = s.y;
    return out;
}

/// Split psi_n = (A_n e^{i k x} + B_n e^{-i k x}) / sqrt(k) using samples at xa and xb.
void decompose(cplx psi_a, cplx psi_b, double k, double xa, double xb, cplx& a, cplx& b) {
    using namespace std::complex_literals;
    const double sk = std::sqrt(k);
    const cplx det = 2.0i * std::sin(k * (xa - xb));
    a = sk * (psi_a * std::polar(1.0, -k * xb) - psi_b * std::polar(1.0, -k * xa)) / det;
    b = sk * (psi_b * std::polar(1.0, k * xa) - psi_a * std::polar(1.0, k * xb)) / det;
}

void validate(const OracleConfig& cfg) {
    if (!(cfg.k1 > 0.0) || !(cfg.k2 > 0.0)) throw ChannelClosed("fd_scatter: both channels must be open");
    if (!(cfg.sigma > 0.0)) throw InvalidInput("fd_scatter: sigma must be positive");
    if (!(cfg.grid_spacing > 0.0) || cfg.grid_spacing > cfg.sigma / 10.0) {
        throw InvalidInput("fd_scatter: grid spacing must be positive and <= sigma / 10");
    }
    if (cfg.half_length < 1.5 * cfg.d) {
        throw InvalidInput("fd_scatter: domain must include at least d of free lead on each side");
    }
}

ScattererS run(const OracleConfig& cfg, double sigma, double step) {
    const double length = 2.0 * cfg.half_length;
    const long n_steps = static_cast<long>(std::ceil(length / step));
    const double h = length / static_cast<double>(n_steps);
    const Profile v{sigma, -0.5 * cfg.d, 0.5 * cfg.d};
    const Mat2C coupling = cfg.u.matrix();
    const std::array<double, 2> k{cfg.k1, cfg.k2};
    const Mat2C k_sq = Mat2C::diag(k[0] * k[0], k[1] * k[1]);

    // Probe pairs: domain end plus a point a quarter wavelength inside,
    // clamped so that it stays in the field-free lead.
    const double lead_room = cfg.half_length - 0.5 * cfg.d - 2.0 * kGaussianCutoff * sigma;
    LeadProbe probe;
    probe.end_index = n_steps;
    std::array<double, 2> separation{};
    for (int n = 0; n < 2; ++n) {
        const double want = std::min(std::numbers::pi / (2.0 * k[n]), lead_room);
        const long m = std::max(1L, std::lround(want / h));
        probe.far_index[n] = n_steps - m;
        separation[n] = static_cast<double>(m) * h;
    }

    const double lx = cfg.half_length;

    // Incident from the left: pure outgoing wave on the right, integrate leftwards.
    State right_start;
    right_start.y = Mat2C::diag(std::polar(1.0, k[0] * lx) / std::sqrt(k[0]), std::polar(1.0, k[1] * lx) / std::sqrt(k[1]));
    right_start.dy = Mat2C::diag(cplx{0.0, k[0]} * right_start.y.a11, cplx{0.0, k[1]} * right_start.y.a22);
    const Integration leftward = integrate(right_start, lx, -h, n_steps, probe, coupling, k_sq, v);

    Mat2C incoming;
    Mat2C reflected;
    for (int n = 0; n < 2; ++n) {
        const double xa = -lx;
        const double xb = -lx + separation[n];
        for (int j = 0; j < 2; ++j) {
            decompose(leftward.end(n, j), leftward.near[n](n, j), k[n], xa, xb, incoming(n, j), reflected(n, j));
        }
    }

    // Incident from the right: pure e^{-ikx} on the left, integrate rightwards.
    State left_start;
    left_start.y = Mat2C::diag(std::polar(1.0, k[0] * lx) / std::sqrt(k[0]), std::polar(1.0, k[1] * lx) / std::sqrt(k[1]));
    left_start.dy = Mat2C::diag(cplx{0.0, -k[0]} * left_start.y.a11, cplx{0.0, -k[1]} * left_start.y.a22);
    const Integration rightward = integrate(left_start, -lx, h, n_steps, probe, coupling, k_sq, v);

    Mat2C incoming_r;
    Mat2C reflected_r;
    for (int n = 0; n < 2; ++n) {
        const double xa = lx;
        const double xb = lx - separation[n];
        for (int j = 0; j < 2; ++j) {
            decompose(rightward.end(n, j), rightward.near[n](n, j), k[n], xa, xb, reflected_r(n, j), incoming_r(n, j));
        }
    }

    ScattererS s;
    s.t = mat2_inv(incoming);
    s.r = reflected * s.t;
    s.tp = mat2_inv(incoming_r);
    s.rp = reflected_r * s.tp;
    s.k1 = cfg.k1;
    s.k2 = cfg.k2;
    return s;
}

ScattererS combine(const ScattererS& a, double wa, const ScattererS& b, double wb) {
    ScattererS s = a;
    s.r = cplx{wa} * a.r + cplx{wb} * b.r;
    s.t = cplx{wa} * a.t + cplx{wb} * b.t;
    s.rp = cplx{wa} * a.rp + cplx{wb} * b.rp;
    s.tp = cplx{wa} * a.tp + cplx{wb} * b.tp;
    return s;
}

} // namespace

OracleConfig OracleConfig::for_system(const Coupling& u, double k1, double k2, double d) {
    OracleConfig cfg;
    cfg.k1 = k1;
    cfg.k2 = k2;
    cfg.u = u;
    cfg.d = d;
    cfg.sigma = 1e-3 * d;
    cfg.grid_spacing = cfg.sigma / 20.0;
    cfg.half_length = 2.0 * d;
    return cfg;
}

double max_amplitude_diff(const ScattererS& a, const ScattererS& b) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(a.full(i, j) - b.full(i, j)));
    }
    return worst;
}

ScattererS fd_scatter_raw(const OracleConfig& cfg, double sigma, double step) {
    validate(cfg);
    return run(cfg, sigma, step);
}

OracleResult fd_scatter_detailed(const OracleConfig& cfg) {
    validate(cfg);
    const double ratio = cfg.grid_spacing / cfg.sigma;
    const ScattererS s1 = run(cfg, cfg.sigma, cfg.grid_spacing);
    const ScattererS s2 = run(cfg, 0.5 * cfg.sigma, 0.5 * cfg.sigma * ratio);
    const ScattererS s4 = run(cfg, 0.25 * cfg.sigma, 0.25 * cfg.sigma * ratio);

    // Eliminate the O(sigma) term, then the O(sigma^2) term.
    const ScattererS lin_a = combine(s2, 2.0, s1, -1.0);
    const ScattererS lin_b = combine(s4, 2.0, s2, -1.0);

    OracleResult out;
    out.base = s1;
    out.extrapolated = combine(lin_b, 4.0 / 3.0, lin_a, -1.0 / 3.0);
    out.extrapolation_change = max_amplitude_diff(out.extrapolated, s1);
    if (cfg.check_convergence) {
        const ScattererS fine = run(cfg, cfg.sigma, 0.5 * cfg.grid_spacing);
        out.refinement_change = max_amplitude_diff(fine, s1);
        if (out.refinement_change > 1e-6) {
            throw NotConverged("fd_scatter: halving the grid spacing changed an amplitude by " +
                               std::to_string(out.refinement_change));
        }
    }
    return out;
}

ScattererS fd_scatter(const OracleConfig& cfg) { return fd_scatter_detailed(cfg).extrapolated; }

} // namespace qwire
