#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace battd {

// Everything the steady-state equivalent circuit needs, plus pack ratings.
// Interaction coefficients are stored in J/mol and turned into volts inside
// the Redlich-Kister evaluation; E_A is kJ/mol as usually tabulated.
struct BatteryParams {
    double U_bat0 = 0.0;                 // reference equilibrium potential [V]
    std::array<double, 7> A_and{};       // anode interaction coefficients [J/mol]
    std::array<double, 7> A_ctd{};       // cathode interaction coefficients [J/mol]

    double R_ohm_0 = 0.0;                // [ohm]
    double R_ohm_T = 0.0;                // [ohm/K]
    double R_ohm_SOC = 0.0;              // [ohm]

    double E_A = 0.0;                    // activation energy [kJ/mol]
    double A_SEI = 0.0;                  // solid-electrolyte interface area [m^2]
    double k_0 = 0.0;                    // reaction rate constant [m/s]

    double K_dif_mem = 0.0;              // [ohm]
    double b_dif_mem = 0.0;              // [K]
    double T0_dif_mem = 0.0;             // [K]
    double K_dif_elec = 0.0;             // [ohm]
    double b_dif_elec = 0.0;             // [K]
    double T0_dif_elec = 0.0;            // [K]

    double eta_c0 = 1.0;                 // coulombic efficiency offset [-]
    double eta_cT = 0.0;                 // [1/K]
    double eta_ci = 0.0;                 // [1/A]

    double capacity_Ah = 0.0;            // nominal capacity [Ah]
    double rated_voltage = 0.0;          // [V]
    double energy_capacity_Wh = 0.0;     // [Wh]
    double c_rate_dis = 0.0;             // discharge C-rate cap [p.u. of nominal current]
    double c_rate_cha = 0.0;             // charge C-rate cap [p.u. of nominal current]
    double T_ref = 298.15;               // operating temperature [K]

    // Nominal current (1C) in amperes.
    double nominal_current() const { return capacity_Ah; }
};

struct OperatingPoint {
    double soc = 0.0;          // per-unit in [0,1]
    double temperature = 0.0;  // [K]
    double current = 0.0;      // [A], magnitude; mode flags give direction
};

struct ValidationIssue {
    bool fatal = false;
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const {
        for (const auto& i : issues)
            if (i.fatal) return false;
        return true;
    }
    std::string to_string() const;
};

class ValidationError : public std::runtime_error {
  public:
    ValidationError(std::string what, ValidationReport report)
        : std::runtime_error(std::move(what)), report(std::move(report)) {}
    ValidationReport report;
};

// Checks every structural invariant plus the derived-positivity conditions
// (ohmic resistance over soc in [0,1], coulombic efficiency in (0,1] over the
// admissible current range, both swept over T_ref +/- 10 K).
ValidationReport validate_params(const BatteryParams& p);

// JSON round trip. load_battery_params throws ValidationError when the
// parameter set fails validation.
BatteryParams battery_params_from_json_text(const std::string& text);
BatteryParams load_battery_params(const std::string& path);
std::string battery_params_to_json_text(const BatteryParams& p);
void save_battery_params(const BatteryParams& p, const std::string& path);

}  // namespace battd
