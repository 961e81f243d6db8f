#pragma once

// Transmission resonances of the symmetric double delta and their relation to
// concurrence zeros. Wavenumbers and couplings here are in units of 2pi/d.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace qwire {

struct TransmissionSample {
    double k = 0.0;
    double transmission = 0.0;  ///< |t_jj(k)|^2
};

struct Resonance {
    double k_res = 0.0;
    double transmission_at_peak = 0.0;
    double refinement_width = 0.0;  ///< final golden-section bracket
};

struct ResonanceTable {
    int channel = 1;
    std::vector<Resonance> entries;  ///< ascending in k_res

    /// Resonance closest to k, if any.
    std::optional<Resonance> nearest(double k) const;
};

struct MinimumResult {
    double x = 0.0;
    double value = 0.0;
    double width = 0.0;
};

/// Golden-section search for a minimum of a unimodal f on [a, b], stopping
/// once the bracket is narrower than tol.
MinimumResult golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol);

/// Uniform samples of |t_jj|^2 for coupling u on [k_lo, k_hi], separation d.
std::vector<TransmissionSample> scan_transmission(double u, double d, double k_lo, double k_hi, int n_samples);

/// Number of scan samples used by find_resonances: 40 per resonance spacing (0.5 in 2pi/d units).
int default_scan_samples(double k_lo, double k_hi);

/// Sampled local maxima of |t|^2 refined by golden section on |r_jj| until
/// the bracket is below tol; only peaks with |t|^2 >= 1 - 1e-10 are kept.
ResonanceTable find_resonances(double u, double d, double k_lo, double k_hi, double tol, int channel = 1);

inline constexpr double kResonancePeakFloor = 1.0 - 1e-10;
inline constexpr double kDefaultResonanceTol = 1e-10;

struct ConcurrenceZero {
    double dk = 0.0;
    double k2 = 0.0;
    double eta = 0.0;
    std::optional<double> nearest_resonance;
    double distance = 0.0;
    bool matched = false;
};

struct ZeroAlignmentReport {
    std::vector<ConcurrenceZero> zeros;

    std::size_t unmatched() const;
    double max_distance() const;
};

inline constexpr double kEtaZeroThreshold = 1e-8;

/// Locate the zeros of eta(dk) at fixed k1: every sampled local minimum of
/// eta on dk_grid is refined by golden section (bracket < tol / 100) and kept
/// when the refined eta is below 1e-8. Each zero is paired with the nearest
/// channel-2 resonance; zeros further than 10 tol from every resonance are
/// flagged unmatched. An identically-zero curve has no isolated zeros.
ZeroAlignmentReport zero_alignment(const std::function<double(double)>& eta_of_dk, std::span<const double> dk_grid,
                                   double k1, const ResonanceTable& channel2, double tol);

} // namespace qwire
