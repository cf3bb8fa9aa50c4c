#pragma once

#include <map>
#include <string>

#include "battdispatch/lp.hpp"

namespace battd::optim {

class MpsError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Column-aligned MPS (NAME/ROWS/COLUMNS/RHS/BOUNDS/ENDATA, INTORG/INTEND
// markers around binaries, coefficients to 12 significant digits). Names
// longer than the classic 8-character fields are kept verbatim, so the
// output is free-format compatible.
std::string mps_text(const MixedIntegerProgram& mip, const std::string& model_name = "BATTD");
void write_mps(const MixedIntegerProgram& mip, const std::string& path,
               const std::string& model_name = "BATTD");

MixedIntegerProgram read_mps(const std::string& path);
MixedIntegerProgram mps_from_text(const std::string& text);

// External-solver result import: "name,value" CSV with a header line.
std::map<std::string, double> read_solution_csv(const std::string& path);

}  // namespace battd::optim
