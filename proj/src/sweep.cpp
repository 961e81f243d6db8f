#include "qwire/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "qwire/errors.hpp"

#ifndef QWIRE_VERSION
#define QWIRE_VERSION "dev"
#endif

namespace qwire {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw InvalidInput("invalid number for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view key, std::string_view text) {
    text = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InvalidInput("invalid integer for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    return value;
}

std::string exact(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fixed12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

std::string opt_number(const std::optional<double>& x) { return x ? format_number(*x) : "nan"; }

void require(bool ok, const std::string& message) {
    if (!ok) throw InvalidInput(message);
}

} // namespace

DeltaChain RunConfig::chain() const {
    DeltaChain c;
    c.u.u11 = to_internal(u11);
    c.u.u22 = to_internal(u22);
    c.u.u12 = to_internal(1.0) * cplx{u12_re, u12_im};
    c.d = 1.0;
    return c;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    if (key == "u11") cfg.u11 = parse_double(key, value);
    else if (key == "u22") cfg.u22 = parse_double(key, value);
    else if (key == "u12_re") cfg.u12_re = parse_double(key, value);
    else if (key == "u12_im") cfg.u12_im = parse_double(key, value);
    else if (key == "d") cfg.d = parse_double(key, value);
    else if (key == "k1") cfg.k1 = parse_double(key, value);
    else if (key == "dk") cfg.dk = parse_double(key, value);
    else if (key == "dk_min") cfg.dk_min = parse_double(key, value);
    else if (key == "dk_max") cfg.dk_max = parse_double(key, value);
    else if (key == "dk_steps") cfg.dk_steps = parse_int(key, value);
    else if (key == "k1_min") cfg.k1_min = parse_double(key, value);
    else if (key == "k1_max") cfg.k1_max = parse_double(key, value);
    else if (key == "k1_steps") cfg.k1_steps = parse_int(key, value);
    else if (key == "k_lo") cfg.k_lo = parse_double(key, value);
    else if (key == "k_hi") cfg.k_hi = parse_double(key, value);
    else if (key == "out" || key == "output_path") cfg.output_path = std::string(trim(value));
    else throw InvalidInput("unknown config key '" + std::string(key) + "'");
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidInput("config line " + std::to_string(line_no) + ": expected key=value");
        }
        apply_setting(base, body.substr(0, eq), body.substr(eq + 1));
    }
    return base;
}

std::vector<std::string> config_lines(const RunConfig& cfg) {
    return {
        "u11=" + exact(cfg.u11),
        "u22=" + exact(cfg.u22),
        "u12_re=" + exact(cfg.u12_re),
        "u12_im=" + exact(cfg.u12_im),
        "d=" + exact(cfg.d),
        "k1=" + exact(cfg.k1),
        "dk=" + exact(cfg.dk),
        "dk_min=" + exact(cfg.dk_min),
        "dk_max=" + exact(cfg.dk_max),
        "dk_steps=" + std::to_string(cfg.dk_steps),
        "k1_min=" + exact(cfg.k1_min),
        "k1_max=" + exact(cfg.k1_max),
        "k1_steps=" + std::to_string(cfg.k1_steps),
        "k_lo=" + exact(cfg.k_lo),
        "k_hi=" + exact(cfg.k_hi),
    };
}

RunConfig config_from_csv_header(std::string_view csv) {
    constexpr std::string_view prefix = "# config: ";
    std::string text;
    std::istringstream in{std::string(csv)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) text += line.substr(prefix.size()) + "\n";
    }
    return parse_config_text(text);
}

void validate(const RunConfig& cfg, Command cmd) {
    require(cfg.d == 1.0, "d is the length unit and must be 1");
    for (double u : {cfg.u11, cfg.u22, cfg.u12_re, cfg.u12_im}) require(std::isfinite(u), "couplings must be finite");
    switch (cmd) {
    case Command::point:
        require(cfg.k1 > 0.0, "k1 must be positive");
        require(cfg.k1 + cfg.dk > 0.0, "k2 = k1 + dk must be positive");
        break;
    case Command::fig2:
        require(cfg.k1 > 0.0, "k1 must be positive");
        require(cfg.dk_steps >= 2, "dk_steps must be >= 2");
        require(cfg.dk_max > cfg.dk_min, "dk_max must exceed dk_min");
        require(cfg.k1 + cfg.dk_min > 0.0, "k1 + dk_min must be positive");
        break;
    case Command::fig3:
        require(cfg.k1_min > 0.0 && cfg.k1_max > cfg.k1_min, "need 0 < k1_min < k1_max");
        require(cfg.k1_steps >= 2 && cfg.dk_steps >= 2, "k1_steps and dk_steps must be >= 2");
        require(cfg.dk_max > cfg.dk_min, "dk_max must exceed dk_min");
        require(cfg.k1_min + cfg.dk_min > 0.0, "k1_min + dk_min must be positive");
        break;
    case Command::resonances:
        require(cfg.k_lo > 0.0 && cfg.k_hi > cfg.k_lo, "need 0 < k_lo < k_hi");
        require(!cfg.mixing(), "resonance tables are defined per channel and need u12 = 0");
        break;
    case Command::selfcheck:
        break;
    }
}

double grid_value(double min, double max, int steps, int i) {
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

double eta_at(const DeltaChain& chain, double k1_user, double dk_user) {
    const ScattererS s = double_delta_smatrix(chain, to_internal(k1_user), to_internal(k1_user + dk_user));
    const GammaState g = gamma_of(s.r, s.t);
    if (!(g.norm > std::numeric_limits<double>::min())) return std::numeric_limits<double>::quiet_NaN();
    return concurrence_det(g);
}

std::vector<Fig2Row> fig2_rows(const RunConfig& cfg) {
    validate(cfg, Command::fig2);
    const DeltaChain chain = cfg.chain();
    std::vector<Fig2Row> rows(static_cast<std::size_t>(cfg.dk_steps));
    for (int i = 0; i < cfg.dk_steps; ++i) {
        const double dk = grid_value(cfg.dk_min, cfg.dk_max, cfg.dk_steps, i);
        const ScattererS s = double_delta_smatrix(chain, to_internal(cfg.k1), to_internal(cfg.k1 + dk));
        rows[static_cast<std::size_t>(i)] = {dk, eta_at(chain, cfg.k1, dk), std::norm(s.t.a11), std::norm(s.t.a22)};
    }
    return rows;
}

std::vector<Fig3Row> fig3_rows(const RunConfig& cfg, unsigned threads) {
    validate(cfg, Command::fig3);
    const DeltaChain chain = cfg.chain();
    const auto n1 = static_cast<std::size_t>(cfg.k1_steps);
    const auto n2 = static_cast<std::size_t>(cfg.dk_steps);
    std::vector<Fig3Row> rows(n1 * n2);

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < n1; i = next++) {
            const double k1 = grid_value(cfg.k1_min, cfg.k1_max, cfg.k1_steps, static_cast<int>(i));
            for (std::size_t j = 0; j < n2; ++j) {
                const double dk = grid_value(cfg.dk_min, cfg.dk_max, cfg.dk_steps, static_cast<int>(j));
                rows[i * n2 + j] = {k1, dk, eta_at(chain, k1, dk)};
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n1));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    return rows;
}

std::vector<ResonanceTable> resonance_tables(const RunConfig& cfg, double tol) {
    validate(cfg, Command::resonances);
    return {find_resonances(cfg.u11, cfg.d, cfg.k_lo, cfg.k_hi, tol, 1),
            find_resonances(cfg.u22, cfg.d, cfg.k_lo, cfg.k_hi, tol, 2)};
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string_view tool_version() { return QWIRE_VERSION; }

std::string csv_header(const RunConfig& cfg, std::string_view command) {
    std::string out;
    out += "# qwire " + std::string(tool_version()) + "\n";
    out += "# command: " + std::string(command) + "\n";
    out += "# units: wavenumbers and couplings in 2pi/d, d = 1\n";
    if (cfg.mixing()) out += "# note: u12 != 0 uses the matrix-delta channel-mixing extension\n";
    for (const auto& line : config_lines(cfg)) out += "# config: " + line + "\n";
    return out;
}

std::string fig2_csv(const RunConfig& cfg, const std::vector<Fig2Row>& rows) {
    std::string out = csv_header(cfg, "fig2");
    out += "dk,eta,t11_sq,t22_sq\n";
    for (const auto& r : rows) {
        out += format_number(r.dk) + "," + format_number(r.eta) + "," + format_number(r.t11_sq) + "," +
               format_number(r.t22_sq) + "\n";
    }
    return out;
}

std::string fig3_csv(const RunConfig& cfg, const std::vector<Fig3Row>& rows) {
    std::string out = csv_header(cfg, "fig3");
    out += "k1,dk,eta\n";
    for (const auto& r : rows) out += format_number(r.k1) + "," + format_number(r.dk) + "," + format_number(r.eta) + "\n";
    return out;
}

std::string resonances_csv(const RunConfig& cfg, const std::vector<ResonanceTable>& tables) {
    std::string out = csv_header(cfg, "resonances");
    out += "channel,k_res,peak,width\n";
    for (const auto& table : tables) {
        for (const auto& e : table.entries) {
            out += std::to_string(table.channel) + "," + format_number(e.k_res) + "," +
                   format_number(e.transmission_at_peak) + "," + format_number(e.refinement_width) + "\n";
        }
    }
    return out;
}

std::string point_csv(const RunConfig& cfg, const EntanglementReport& rep) {
    std::string out = csv_header(cfg, "point");
    out += "k1,dk,eta,eta_closed,eta_det,eta_w,p_select,purity,full_state_eta,unitarity_defect\n";
    const std::optional<double> purity = rep.rho1 ? std::optional<double>(rep.rho1->purity) : std::nullopt;
    out += format_number(cfg.k1) + "," + format_number(cfg.dk) + "," + opt_number(rep.eta()) + "," +
           opt_number(rep.eta_closed) + "," + opt_number(rep.eta_det) + "," + opt_number(rep.eta_w) + "," +
           format_number(rep.p_select) + "," + opt_number(purity) + "," + format_number(rep.full_state_eta) + "," +
           format_number(rep.unitarity_defect) + "\n";
    return out;
}

std::string point_report(const RunConfig& cfg, const EntanglementReport& rep) {
    std::string out;
    out += "k1=" + format_number(cfg.k1) + "\n";
    out += "k2=" + format_number(cfg.k1 + cfg.dk) + "\n";
    if (rep.mixing) out += "note=channel mixing uses the matrix-delta extension\n";
    const auto value = [](const std::optional<double>& x) { return x ? fixed12(*x) : std::string("undefined"); };
    out += "eta=" + value(rep.eta()) + "\n";
    out += "eta_closed=" + (rep.mixing ? std::string("n/a") : value(rep.eta_closed)) + "\n";
    out += "eta_det=" + value(rep.eta_det) + "\n";
    out += "eta_w=" + value(rep.eta_w) + "\n";
    out += "p_select=" + fixed12(rep.p_select) + "\n";
    out += "p_both_reflected=" + fixed12(rep.both_reflected_prob) + "\n";
    out += "p_both_transmitted=" + fixed12(rep.both_transmitted_prob) + "\n";
    if (rep.rho1) {
        out += "rho1_eigenvalues=";
        for (int i = 0; i < 4; ++i) out += (i ? "," : "") + fixed12(rep.rho1->eigenvalues[i]);
        out += "\npurity=" + fixed12(rep.rho1->purity) + "\n";
    } else {
        out += "rho1_eigenvalues=undefined\npurity=undefined\n";
    }
    out += "full_state_eta=" + sci(rep.full_state_eta) + "\n";
    out += "unitarity_defect=" + sci(rep.unitarity_defect) + "\n";
    return out;
}

} // namespace qwire
