#include "battdispatch/battery.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

#include "battdispatch/electrochem.hpp"
#include "battdispatch/provenance.hpp"

namespace battd {

using nlohmann::json;

std::string ValidationReport::to_string() const {
    std::ostringstream ss;
    if (issues.empty()) return "all checks passed\n";
    for (const auto& i : issues)
        ss << (i.fatal ? "error" : "note") << " [" << i.field << "]: " << i.message << "\n";
    return ss.str();
}

namespace {

void check(ValidationReport& r, bool ok, const std::string& field, const std::string& msg) {
    if (!ok) r.issues.push_back({true, field, msg});
}

}  // namespace

ValidationReport validate_params(const BatteryParams& p) {
    ValidationReport r;
    check(r, p.capacity_Ah > 0, "capacity_Ah", "must be positive");
    check(r, p.energy_capacity_Wh > 0, "energy_capacity_Wh", "must be positive");
    check(r, p.rated_voltage > 0, "rated_voltage", "must be positive");
    check(r, p.c_rate_dis > 0, "c_rate_dis", "must be positive");
    check(r, p.c_rate_cha > 0, "c_rate_cha", "must be positive");
    check(r, p.T_ref > 0, "T_ref", "must be positive");
    check(r, p.A_SEI > 0, "A_SEI", "must be positive");
    check(r, p.k_0 > 0, "k_0", "must be positive");
    check(r, p.K_dif_mem > 0, "K_dif_mem", "must be positive");
    check(r, p.K_dif_elec > 0, "K_dif_elec", "must be positive");
    check(r, p.T0_dif_mem != p.T_ref, "T0_dif_mem", "must differ from T_ref");
    check(r, p.T0_dif_elec != p.T_ref, "T0_dif_elec", "must differ from T_ref");
    if (!r.ok()) return r;

    // Derived positivity over soc in [0,1] and T_ref +/- 10 K.
    for (double dT : {-10.0, 0.0, 10.0}) {
        const double T = p.T_ref + dT;
        for (int i = 0; i <= 100; ++i) {
            const double soc = i / 100.0;
            const double ro = electrochem::ohmic_resistance(soc, T, p);
            if (!(ro > 0)) {
                r.issues.push_back({true, "R_ohm_*",
                                    "ohmic resistance non-positive at soc=" + std::to_string(soc) +
                                        " T=" + std::to_string(T)});
                return r;
            }
        }
        const double i_max =
            std::max(p.c_rate_dis, p.c_rate_cha) * p.nominal_current();
        for (int k = 0; k <= 100; ++k) {
            const double i = i_max * k / 100.0;
            const double eta = electrochem::coulombic_efficiency(i, T, p);
            if (!(eta > 0 && eta <= 1)) {
                r.issues.push_back({true, "eta_c*",
                                    "coulombic efficiency outside (0,1] at i=" + std::to_string(i) +
                                        " T=" + std::to_string(T)});
                return r;
            }
        }
    }
    return r;
}

namespace {

std::array<double, 7> coeffs_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 7)
        throw ValidationError("field " + field + " must be an array of 7 numbers", {});
    std::array<double, 7> a{};
    for (int i = 0; i < 7; ++i) a[i] = j[i].get<double>();
    return a;
}

}  // namespace

BatteryParams battery_params_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("battery file is not valid JSON: ") + e.what(), {});
    }
    BatteryParams p;
    try {
        p.U_bat0 = j.at("U_bat0").get<double>();
        p.A_and = coeffs_from_json(j.at("A_and"), "A_and");
        p.A_ctd = coeffs_from_json(j.at("A_ctd"), "A_ctd");
        p.R_ohm_0 = j.at("R_ohm_0").get<double>();
        p.R_ohm_T = j.at("R_ohm_T").get<double>();
        p.R_ohm_SOC = j.at("R_ohm_SOC").get<double>();
        p.E_A = j.at("E_A").get<double>();
        p.A_SEI = j.at("A_SEI").get<double>();
        p.k_0 = j.at("k_0").get<double>();
        p.K_dif_mem = j.at("K_dif_mem").get<double>();
        p.b_dif_mem = j.at("b_dif_mem").get<double>();
        p.T0_dif_mem = j.at("T0_dif_mem").get<double>();
        p.K_dif_elec = j.at("K_dif_elec").get<double>();
        p.b_dif_elec = j.at("b_dif_elec").get<double>();
        p.T0_dif_elec = j.at("T0_dif_elec").get<double>();
        p.eta_c0 = j.at("eta_c0").get<double>();
        p.eta_cT = j.at("eta_cT").get<double>();
        p.eta_ci = j.at("eta_ci").get<double>();
        p.capacity_Ah = j.at("capacity_Ah").get<double>();
        p.rated_voltage = j.at("rated_voltage").get<double>();
        p.energy_capacity_Wh = j.at("energy_capacity_Wh").get<double>();
        p.c_rate_dis = j.at("c_rate_dis").get<double>();
        p.c_rate_cha = j.at("c_rate_cha").get<double>();
        p.T_ref = j.at("T_ref").get<double>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("battery file missing or malformed field: ") + e.what(),
                              {});
    }
    ValidationReport rep = validate_params(p);
    if (!rep.ok())
        throw ValidationError("battery parameter validation failed:\n" + rep.to_string(), rep);
    return p;
}

BatteryParams load_battery_params(const std::string& path) {
    return battery_params_from_json_text(read_file(path));
}

std::string battery_params_to_json_text(const BatteryParams& p) {
    json j;
    j["_note"] = "synthetic placeholder parameter set; not fitted to any measured cell";
    j["U_bat0"] = p.U_bat0;
    j["A_and"] = p.A_and;
    j["A_ctd"] = p.A_ctd;
    j["R_ohm_0"] = p.R_ohm_0;
    j["R_ohm_T"] = p.R_ohm_T;
    j["R_ohm_SOC"] = p.R_ohm_SOC;
    j["E_A"] = p.E_A;
    j["A_SEI"] = p.A_SEI;
    j["k_0"] = p.k_0;
    j["K_dif_mem"] = p.K_dif_mem;
    j["b_dif_mem"] = p.b_dif_mem;
    j["T0_dif_mem"] = p.T0_dif_mem;
    j["K_dif_elec"] = p.K_dif_elec;
    j["b_dif_elec"] = p.b_dif_elec;
    j["T0_dif_elec"] = p.T0_dif_elec;
    j["eta_c0"] = p.eta_c0;
    j["eta_cT"] = p.eta_cT;
    j["eta_ci"] = p.eta_ci;
    j["capacity_Ah"] = p.capacity_Ah;
    j["rated_voltage"] = p.rated_voltage;
    j["energy_capacity_Wh"] = p.energy_capacity_Wh;
    j["c_rate_dis"] = p.c_rate_dis;
    j["c_rate_cha"] = p.c_rate_cha;
    j["T_ref"] = p.T_ref;
    return j.dump(2) + "\n";
}

void save_battery_params(const BatteryParams& p, const std::string& path) {
    write_file(path, battery_params_to_json_text(p));
}

}  // namespace battd
