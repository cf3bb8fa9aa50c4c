#pragma once

#include <string>

#include "battdispatch/network.hpp"

namespace battd::testcase {

// Synthetic pack-level parameter set for a 40 Ah / 133 V battery. Placeholder
// values chosen for qualitatively correct curves (discharge limit collapse at
// low SOC, charge taper above SOC ~ 0.93); they are not fitted to any cell.
BatteryParams synthetic_battery_params();

// Desk-scale 24-bus analog: meshed topology skeleton, synthetic double-peak
// load shape, ten generators with a broad cost spread and one battery.
// The stressed variant sharpens the evening peak, raises peaker prices and
// starts the battery low so an idealized schedule overdraws it.
dispatch::NetworkCase make_testcase(bool stressed = false);

struct TestcaseFiles {
    std::string case_path;
    std::string stressed_case_path;
    std::string battery_path;
};

// Writes case.json/demand.csv, case_stressed.json/demand_stressed.csv and
// default_battery.json into out_dir.
TestcaseFiles write_testcase(const std::string& out_dir);

}  // namespace battd::testcase
