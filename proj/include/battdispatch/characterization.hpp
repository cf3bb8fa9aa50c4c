#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "battdispatch/battery.hpp"

// SOC-dependent current and power limits, charge/discharge efficiencies,
// terminal<->internal power maps and the sampled convex-envelope sets that
// the linear dispatch formulations consume.

namespace battd::charac {

enum class Mode { discharge, charge };

inline const char* mode_name(Mode m) { return m == Mode::discharge ? "discharge" : "charge"; }

class NoRealRootError : public std::runtime_error {
  public:
    NoRealRootError(const std::string& what, double a, double b, double c)
        : std::runtime_error(what), a(a), b(b), c(c) {}
    double a, b, c;
};

class InfeasiblePowerError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One side of the current limit: the charge-transfer root and the value
// after the manufacturer C-rate cap.
struct CurrentLimit {
    double i_root_A = 0.0;  // smallest nonnegative root of the surface-SOC quadratic
    double i_max_A = 0.0;   // min(root, c_rate * nominal current)
    bool capped = false;    // true when the C-rate cap is the binding value
};

struct CurrentLimits {
    CurrentLimit dis;
    CurrentLimit cha;
};

struct PowerLimit {
    double p_max_W = 0.0;
    CurrentLimit current;
    bool cutoff = false;  // discharge power went non-positive at the current limit
};

// Smallest nonnegative root of the quadratic that pins surface SOC to its
// active bound (0 when discharging, 1 when charging), capped by C-rate.
CurrentLimit max_discharge_current(double soc, double T, const BatteryParams& p);
CurrentLimit max_charge_current(double soc, double T, const BatteryParams& p);
CurrentLimits current_limits(double soc, double T, const BatteryParams& p);

PowerLimit max_power(double soc, double T, Mode mode, const BatteryParams& p);

// Terminal-side efficiency at current magnitude i.
double efficiency(double soc, double i, double T, Mode mode, const BatteryParams& p);

struct InternalOperation {
    double current_A = 0.0;
    double p_internal_W = 0.0;  // power crossing the equilibrium-voltage source
};

// Inverts the circuit relation p_terminal(i) for the physical branch and
// reports the matching cell-side power v_eq * i.
InternalOperation terminal_to_internal(double soc, double p_terminal, double T, Mode mode,
                                       const BatteryParams& p);

struct EnvelopeSample {
    double soc = 0.0;
    double p_terminal_W = 0.0;
    double p_internal_W = 0.0;
};

struct EnvelopeSet {
    Mode mode = Mode::discharge;
    double temperature_K = 0.0;
    std::vector<EnvelopeSample> samples;  // anchors first, then soc-major/power-minor
    std::string provenance;               // sampling grid description
    Eigen::ArrayXd soc_grid;
    Eigen::ArrayXd power_fraction_grid;
};

// Structural checks: both anchors present, no duplicates, one-sided
// internal-vs-terminal ordering. min_samples is 3 for envelopes feeding a
// dispatch model; anchors-only sets (2 samples) are valid as plain files.
ValidationReport validate_envelope(const EnvelopeSet& e, std::size_t min_samples = 3);

// Samples the characteristic surface at every (soc, fraction-of-max-power)
// grid intersection plus the two mandatory anchors [0,0,0] and [1,0,0].
EnvelopeSet sample_surface(Mode mode, const Eigen::ArrayXd& soc_grid,
                           const Eigen::ArrayXd& power_fraction_grid, double T,
                           const BatteryParams& p);

// Paper-shaped defaults: 14 discharge and 20 charge samples in total.
Eigen::ArrayXd default_soc_grid(Mode mode);
Eigen::ArrayXd default_power_fraction_grid(Mode mode);
EnvelopeSet default_envelope(Mode mode, double T, const BatteryParams& p);

struct ErrorReport {
    double max_rel_error = 0.0;
    double mean_rel_error = 0.0;
    double std_rel_error = 0.0;
    std::size_t n_samples = 0;       // evaluation points inside the hull
    std::size_t n_outside_hull = 0;  // reported separately, never folded into the stats
    std::string evaluation_grid;
};

// Compares the envelope's economically active face (min attainable p_out
// for discharge, max attainable p_in for charge) against the exact circuit
// value over an n_soc x n_power evaluation grid.
ErrorReport envelope_error(const EnvelopeSet& envelope, double T, const BatteryParams& p,
                           int n_soc = 100, int n_power = 100);

std::string envelope_to_json_text(const EnvelopeSet& e);
EnvelopeSet envelope_from_json_text(const std::string& text);
void save_envelope(const EnvelopeSet& e, const std::string& path);
EnvelopeSet load_envelope(const std::string& path);

}  // namespace battd::charac
