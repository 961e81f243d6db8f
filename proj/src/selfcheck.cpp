#include "qwire/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "qwire/entangle.hpp"
#include "qwire/oracle.hpp"
#include "qwire/resonance.hpp"
#include "qwire/scattering.hpp"
#include "qwire/sweep.hpp"

namespace qwire {

namespace {

struct Draw {
    DeltaChain chain;
    double k1 = 0.0;
    double k2 = 0.0;
};

/// Random systems in 2pi/d units: u_jj in [0, 5], |u12| in [0, 2], k in (0.05, 3].
std::vector<Draw> random_draws(unsigned n, bool mixing, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coupling(0.0, 5.0);
    std::uniform_real_distribution<double> mix_mag(0.0, 2.0);
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    std::uniform_real_distribution<double> wavenumber(0.05, 3.0);
    std::vector<Draw> out(n);
    for (auto& d : out) {
        d.chain.u.u11 = to_internal(coupling(rng));
        d.chain.u.u22 = to_internal(coupling(rng));
        if (mixing) d.chain.u.u12 = std::polar(to_internal(mix_mag(rng)), phase(rng));
        d.k1 = to_internal(wavenumber(rng));
        d.k2 = to_internal(wavenumber(rng));
    }
    return out;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

ScattererS scaled(const ScattererS& s, double factor) {
    ScattererS out = s;
    out.r = cplx{factor} * s.r;
    out.t = cplx{factor} * s.t;
    out.rp = cplx{factor} * s.rp;
    out.tp = cplx{factor} * s.tp;
    return out;
}

SuiteResult unitarity_suite(const SelfcheckOptions& opt) {
    double worst = 0.0;
    for (const Draw& d : random_draws(opt.draws, true, 1)) {
        ScattererS s = double_delta_smatrix(d.chain, d.k1, d.k2);
        if (opt.inject_fault == "unitarity") s = scaled(s, 1.1);
        worst = std::max(worst, unitarity_defect(s));
    }
    return {"unitarity_defect", worst < 1e-12, "max defect " + sci(worst)};
}

SuiteResult route_suite(const SelfcheckOptions& opt) {
    double worst = 0.0;
    for (const bool mixing : {false, true}) {
        for (const Draw& d : random_draws(opt.draws, mixing, mixing ? 3 : 2)) {
            const EntanglementReport rep = analyze(d.chain, d.k1, d.k2);
            if (!rep.eta_det || !rep.eta_w) continue;
            worst = std::max(worst, std::abs(*rep.eta_det - *rep.eta_w));
            if (rep.eta_closed) worst = std::max(worst, std::abs(*rep.eta_closed - *rep.eta_det));
        }
    }
    return {"route_equivalence", worst < 1e-12, "max spread " + sci(worst)};
}

SuiteResult budget_suite(const SelfcheckOptions& opt) {
    double worst = 0.0;
    for (const Draw& d : random_draws(opt.draws, true, 4)) {
        const EntanglementReport rep = analyze(d.chain, d.k1, d.k2);
        const double total = rep.p_select + rep.both_reflected_prob + rep.both_transmitted_prob;
        worst = std::max(worst, std::abs(total - 1.0));
    }
    return {"probability_budget", worst < 1e-12, "max |sum - 1| " + sci(worst)};
}

SuiteResult purity_suite(const SelfcheckOptions& opt) {
    double worst = 0.0;
    bool in_range = true;
    for (const Draw& d : random_draws(opt.draws, false, 5)) {
        const EntanglementReport rep = analyze(d.chain, d.k1, d.k2);
        if (!rep.rho1 || !rep.eta_det) continue;
        const double eta = *rep.eta_det;
        worst = std::max(worst, std::abs(rep.rho1->purity - (2.0 - eta * eta) / 4.0));
        double trace = 0.0;
        for (int i = 0; i < 4; ++i) trace += rep.rho1->rho[i][i].real();
        worst = std::max(worst, std::abs(trace - 1.0));
        in_range = in_range && rep.rho1->eigenvalues[0] >= -1e-12 && rep.rho1->purity >= 0.25 - 1e-12 &&
                   rep.rho1->purity <= 0.5 + 1e-12;
    }
    return {"purity_identity", worst < 1e-12 && in_range, "max deviation " + sci(worst)};
}

SuiteResult full_state_suite(const SelfcheckOptions& opt) {
    double worst = 0.0;
    for (const Draw& d : random_draws(opt.draws, true, 6)) {
        worst = std::max(worst, analyze(d.chain, d.k1, d.k2).full_state_eta);
    }
    return {"full_state_zero", worst < 1e-12, "max full-state eta " + sci(worst)};
}

SuiteResult alignment_suite() {
    RunConfig cfg;  // u0 = 0.01, k1 = 1.0, dk in [0, 2] with 2000 steps
    const DeltaChain chain = cfg.chain();
    const ResonanceTable channel2 =
        find_resonances(cfg.u22, cfg.d, cfg.k1 + cfg.dk_min, cfg.k1 + cfg.dk_max, kDefaultResonanceTol, 2);
    std::vector<double> grid(static_cast<std::size_t>(cfg.dk_steps));
    for (int i = 0; i < cfg.dk_steps; ++i) grid[static_cast<std::size_t>(i)] = grid_value(cfg.dk_min, cfg.dk_max, cfg.dk_steps, i);
    const auto eta = [&](double dk) { return eta_at(chain, cfg.k1, dk); };
    const ZeroAlignmentReport rep = zero_alignment(eta, grid, cfg.k1, channel2, kDefaultResonanceTol);

    double eta_at_res = 0.0;
    for (const auto& res : channel2.entries) eta_at_res = std::max(eta_at_res, eta(res.k_res - cfg.k1));
    const bool ok = !rep.zeros.empty() && rep.zeros.size() == channel2.entries.size() && rep.unmatched() == 0 &&
                    rep.max_distance() < 1e-8 && eta_at_res < 1e-8;
    return {"zero_alignment", ok,
            std::to_string(rep.zeros.size()) + " zeros, " + std::to_string(channel2.entries.size()) +
                " resonances, max distance " + sci(rep.max_distance()) + ", max eta at resonance " + sci(eta_at_res)};
}

SuiteResult oracle_suite() {
    struct Case {
        double u11, u22;
        cplx u12;
        double k1, k2;
    };
    // 2pi/d units
    const Case cases[] = {
        {0.01, 0.01, 0.0, 1.0, 1.0},
        {0.0, 0.0, 0.0, 0.8, 1.2},
        {0.5, 0.2, 0.0, 0.7, 1.1},
        {0.0, 0.0, 0.3, 1.0, 1.0},
        {0.1, 0.05, 0.3, 1.0, 1.3},
        {0.2, 0.3, cplx{0.2, 0.1}, 0.9, 0.6},
    };
    double worst = 0.0;
    for (const Case& c : cases) {
        DeltaChain chain;
        chain.u = {to_internal(c.u11), to_internal(c.u22), to_internal(1.0) * c.u12};
        const double k1 = to_internal(c.k1);
        const double k2 = to_internal(c.k2);
        const ScattererS numeric = fd_scatter(OracleConfig::for_system(chain.u, k1, k2));
        worst = std::max(worst, max_amplitude_diff(numeric, double_delta_smatrix(chain, k1, k2)));
    }
    return {"oracle_agreement", worst < 1e-6, "max amplitude difference " + sci(worst)};
}

} // namespace

std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& options) {
    std::vector<SuiteResult> out;
    out.push_back(unitarity_suite(options));
    out.push_back(route_suite(options));
    out.push_back(budget_suite(options));
    out.push_back(purity_suite(options));
    out.push_back(full_state_suite(options));
    out.push_back(alignment_suite());
    if (options.oracle) out.push_back(oracle_suite());
    return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed; });
}

std::string format_selfcheck(const std::vector<SuiteResult>& results) {
    std::string out;
    std::size_t passed = 0;
    for (const auto& r : results) {
        out += std::string(r.passed ? "PASS " : "FAIL ") + r.name + " (" + r.detail + ")\n";
        passed += r.passed ? 1 : 0;
    }
    out += std::string(passed == results.size() ? "PASS " : "FAIL ") + std::to_string(passed) + "/" +
           std::to_string(results.size()) + " suites\n";
    return out;
}

} // namespace qwire
