#pragma once

// Independent numerical check of the analytic scattering amplitudes.
//
// The two delta barriers are replaced by unit-area Gaussians of width sigma
// and the coupled channel equations
//     psi_n'' + k_n^2 psi_n = sum_m u_nm v(x) psi_m
// are integrated with fixed-step RK4 across [-L, L]. Lead amplitudes are read
// off at two probe points per lead. The finite width biases the amplitudes by
// O(sigma); runs at sigma, sigma/2 and sigma/4 (same sigma/h ratio) are
// Richardson-extrapolated to sigma -> 0.
//
// Internal units (d = 1) throughout.

#include "qwire/scattering.hpp"

namespace qwire {

struct OracleConfig {
    double k1 = 0.0;
    double k2 = 0.0;
    Coupling u;
    double d = 1.0;
    double sigma = 1e-3;         ///< Gaussian width
    double grid_spacing = 5e-5;  ///< RK4 step at the base sigma; scaled with sigma
    double half_length = 2.0;    ///< domain is [-half_length, half_length]
    bool check_convergence = true;

    /// Defaults for a given system: sigma = 1e-3 d, h = sigma / 20, L = 2 d.
    static OracleConfig for_system(const Coupling& u, double k1, double k2, double d = 1.0);
};

struct OracleResult {
    ScattererS extrapolated;          ///< sigma -> 0 estimate
    ScattererS base;                  ///< raw run at cfg.sigma
    double refinement_change = 0.0;   ///< max amplitude change when h is halved at cfg.sigma
    double extrapolation_change = 0.0;///< max |extrapolated - base|
};

/// Full diagnostics. Throws NotConverged when halving the step changes any
/// amplitude by more than 1e-6 (only when cfg.check_convergence).
OracleResult fd_scatter_detailed(const OracleConfig& cfg);

/// Extrapolated S-matrix.
ScattererS fd_scatter(const OracleConfig& cfg);

/// One raw integration at the given width and step (no extrapolation).
ScattererS fd_scatter_raw(const OracleConfig& cfg, double sigma, double step);

/// Largest absolute difference over all 16 S-matrix entries.
double max_amplitude_diff(const ScattererS& a, const ScattererS& b);

} // namespace qwire
