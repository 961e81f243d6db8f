#include "qwire/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qwire/chanmath.hpp"
#include "qwire/errors.hpp"
#include "qwire/scattering.hpp"

namespace qwire {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt 5 - 1) / 2

void validate_range(double k_lo, double k_hi) {
    if (!(k_lo > 0.0) || !(k_hi > k_lo)) throw InvalidInput("resonance scan: need 0 < k_lo < k_hi");
}

double internal_k(double k_user, double d) { return to_internal(k_user) / d; }
double internal_u(double u_user, double d) { return to_internal(u_user) / d; }

} // namespace

std::optional<Resonance> ResonanceTable::nearest(double k) const {
    std::optional<Resonance> best;
    for (const Resonance& res : entries) {
        if (!best || std::abs(res.k_res - k) < std::abs(best->k_res - k)) best = res;
    }
    return best;
}

MinimumResult golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) std::swap(a, b);
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
        // Bracket can no longer shrink in floating point.
        if (c >= d) break;
    }
    const double x = 0.5 * (a + b);
    return {x, f(x), b - a};
}

std::vector<TransmissionSample> scan_transmission(double u, double d, double k_lo, double k_hi, int n_samples) {
    validate_range(k_lo, k_hi);
    if (n_samples < 2) throw InvalidInput("scan_transmission: n_samples must be >= 2");
    if (!(d > 0.0)) throw InvalidInput("scan_transmission: d must be positive");
    std::vector<TransmissionSample> out(static_cast<std::size_t>(n_samples));
    const double u_int = internal_u(u, d);
    for (int i = 0; i < n_samples; ++i) {
        const double k = k_lo + (k_hi - k_lo) * i / (n_samples - 1);
        const AmplitudePair a = double_delta_closed_form(u_int, internal_k(k, d), d);
        out[static_cast<std::size_t>(i)] = {k, std::norm(a.t)};
    }
    return out;
}

int default_scan_samples(double k_lo, double k_hi) {
    constexpr double spacing = 0.5;
    constexpr int per_spacing = 40;
    return std::max(3, static_cast<int>(std::ceil((k_hi - k_lo) / spacing * per_spacing)) + 1);
}

ResonanceTable find_resonances(double u, double d, double k_lo, double k_hi, double tol, int channel) {
    validate_range(k_lo, k_hi);
    if (!(tol > 0.0) || tol > 1e-6) throw InvalidInput("find_resonances: tol must lie in (0, 1e-6]");

    ResonanceTable table;
    table.channel = channel;
    const auto scan = scan_transmission(u, d, k_lo, k_hi, default_scan_samples(k_lo, k_hi));
    const double u_int = internal_u(u, d);
    // |r_jj| has a simple zero at a resonance, so it localises the peak far
    // better than the quadratically flat |t_jj|^2.
    const auto reflection = [&](double k) { return std::abs(double_delta_closed_form(u_int, internal_k(k, d), d).r); };

    for (std::size_t i = 1; i + 1 < scan.size(); ++i) {
        const double here = scan[i].transmission;
        if (!(here > scan[i - 1].transmission && here >= scan[i + 1].transmission)) continue;
        const MinimumResult m = golden_section_minimize(reflection, scan[i - 1].k, scan[i + 1].k, tol);
        const double peak = std::norm(double_delta_closed_form(u_int, internal_k(m.x, d), d).t);
        if (peak < kResonancePeakFloor) continue;
        table.entries.push_back({m.x, peak, m.width});
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const Resonance& a, const Resonance& b) { return a.k_res < b.k_res; });
    return table;
}

std::size_t ZeroAlignmentReport::unmatched() const {
    return static_cast<std::size_t>(std::count_if(zeros.begin(), zeros.end(), [](const auto& z) { return !z.matched; }));
}

double ZeroAlignmentReport::max_distance() const {
    double worst = 0.0;
    for (const auto& z : zeros) worst = std::max(worst, z.distance);
    return worst;
}

ZeroAlignmentReport zero_alignment(const std::function<double(double)>& eta_of_dk, std::span<const double> dk_grid,
                                   double k1, const ResonanceTable& channel2, double tol) {
    if (dk_grid.size() < 3) throw InvalidInput("zero_alignment: need at least 3 samples");
    std::vector<double> eta(dk_grid.size());
    std::transform(dk_grid.begin(), dk_grid.end(), eta.begin(), eta_of_dk);

    ZeroAlignmentReport report;
    for (std::size_t i = 1; i + 1 < eta.size(); ++i) {
        if (!(eta[i] < eta[i - 1] && eta[i] <= eta[i + 1])) continue;
        const MinimumResult m = golden_section_minimize(eta_of_dk, dk_grid[i - 1], dk_grid[i + 1], 0.01 * tol);
        if (!(m.value < kEtaZeroThreshold)) continue;
        ConcurrenceZero z;
        z.dk = m.x;
        z.k2 = k1 + m.x;
        z.eta = m.value;
        if (const auto res = channel2.nearest(z.k2)) {
            z.nearest_resonance = res->k_res;
            z.distance = std::abs(res->k_res - z.k2);
            z.matched = z.distance <= 10.0 * tol;
        } else {
            z.distance = std::numeric_limits<double>::infinity();
        }
        report.zeros.push_back(z);
    }
    return report;
}

} // namespace qwire
