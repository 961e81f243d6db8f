#pragma once

// Run configuration and parameter sweeps behind the command-line tool.
// Every value in RunConfig is in units of 2pi/d with d = 1.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwire/entangle.hpp"
#include "qwire/resonance.hpp"
#include "qwire/scattering.hpp"

namespace qwire {

struct RunConfig {
    double u11 = 0.01;
    double u22 = 0.01;
    double u12_re = 0.0;
    double u12_im = 0.0;
    double d = 1.0;
    double k1 = 1.0;
    double dk = 0.0;  ///< single-point offset (point command)
    double dk_min = 0.0;
    double dk_max = 2.0;
    int dk_steps = 2000;
    double k1_min = 0.6;
    double k1_max = 1.4;
    int k1_steps = 200;
    double k_lo = 0.1;
    double k_hi = 1.5;
    std::string output_path;

    bool mixing() const { return u12_re != 0.0 || u12_im != 0.0; }
    /// Coupling and geometry in internal units.
    DeltaChain chain() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Sets one key (u11, u12_re, dk_steps, out, ...) from its text value. Throws InvalidInput.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Parses key=value lines; blank lines and '#' comments are skipped.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});

/// key=value lines with round-trip exact numbers (output path excluded).
std::vector<std::string> config_lines(const RunConfig& cfg);

/// Recovers the RunConfig echoed in a CSV header ("# config: key=value" lines).
RunConfig config_from_csv_header(std::string_view csv);

enum class Command { point, fig2, fig3, resonances, selfcheck };

/// Throws InvalidInput when cfg is not usable for cmd.
void validate(const RunConfig& cfg, Command cmd);

/// min + (max - min) i / (steps - 1)
double grid_value(double min, double max, int steps, int i);

/// Post-selected concurrence at (k1, k1 + dk); NaN when there is no post-selected state.
double eta_at(const DeltaChain& chain, double k1_user, double dk_user);

struct Fig2Row {
    double dk = 0.0;
    double eta = 0.0;
    double t11_sq = 0.0;
    double t22_sq = 0.0;
};

struct Fig3Row {
    double k1 = 0.0;
    double dk = 0.0;
    double eta = 0.0;
};

std::vector<Fig2Row> fig2_rows(const RunConfig& cfg);

/// Row-major in k1. Rows of constant k1 are computed on up to `threads`
/// workers (0 = hardware concurrency); output order is deterministic.
std::vector<Fig3Row> fig3_rows(const RunConfig& cfg, unsigned threads = 0);

/// Channel 1 (u11) and channel 2 (u22) tables over [k_lo, k_hi]. Requires u12 = 0.
std::vector<ResonanceTable> resonance_tables(const RunConfig& cfg, double tol = kDefaultResonanceTol);

/// %.15g, with "nan" for NaN.
std::string format_number(double x);

/// '#' header block: tool version, units, command, config echo.
std::string csv_header(const RunConfig& cfg, std::string_view command);

std::string fig2_csv(const RunConfig& cfg, const std::vector<Fig2Row>& rows);
std::string fig3_csv(const RunConfig& cfg, const std::vector<Fig3Row>& rows);
std::string resonances_csv(const RunConfig& cfg, const std::vector<ResonanceTable>& tables);
std::string point_csv(const RunConfig& cfg, const EntanglementReport& rep);

/// Human-readable key=value report of a single point.
std::string point_report(const RunConfig& cfg, const EntanglementReport& rep);

std::string_view tool_version();

} // namespace qwire
