#include "battdispatch/mps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "battdispatch/provenance.hpp"

// Column-aligned MPS with INTORG/INTEND markers. Field widths grow with the
// longest name, so files stay readable and free-format parsers (including
// the reader here, used for round-trip checks and external-solver handoff)
// consume them unchanged. RANGES is not used.

namespace battd::optim {

namespace {

constexpr const char* kObjRow = "COST";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string pad(const std::string& s, std::size_t w) {
    std::string r = s;
    if (r.size() < w) r.append(w - r.size(), ' ');
    return r;
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

double parse_num(const std::string& t, int lineno) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw MpsError("MPS line " + std::to_string(lineno) + ": bad number '" + t + "'");
    }
}

}  // namespace

std::string mps_text(const MixedIntegerProgram& mip, const std::string& model_name) {
    mip.validate();
    const LinearProgram& lp = mip.lp;

    std::size_t w = 8;
    for (const auto& v : lp.variables) w = std::max(w, v.name.size());
    for (const auto& c : lp.constraints) w = std::max(w, c.name.size());
    w += 2;

    std::vector<char> is_bin(lp.num_vars(), 0);
    for (int j : mip.binary_variables) is_bin[j] = 1;

    // Column-major view of the constraint matrix.
    std::vector<std::vector<std::pair<int, double>>> cols(lp.num_vars());
    for (int i = 0; i < lp.num_rows(); ++i)
        for (const auto& [j, a] : lp.constraints[i].coeffs) cols[j].emplace_back(i, a);

    std::ostringstream out;
    out << "NAME          " << model_name << "\n";
    out << "ROWS\n";
    out << " N  " << kObjRow << "\n";
    for (const auto& c : lp.constraints)
        out << " " << static_cast<char>(c.sense) << "  " << c.name << "\n";

    out << "COLUMNS\n";
    bool in_int = false;
    int marker_id = 0;
    for (int j = 0; j < lp.num_vars(); ++j) {
        if (is_bin[j] && !in_int) {
            out << "    " << pad("MARKER" + std::to_string(marker_id++), w)
                << pad("'MARKER'", w) << "'INTORG'\n";
            in_int = true;
        } else if (!is_bin[j] && in_int) {
            out << "    " << pad("MARKER" + std::to_string(marker_id++), w)
                << pad("'MARKER'", w) << "'INTEND'\n";
            in_int = false;
        }
        const auto& v = lp.variables[j];
        std::vector<std::pair<std::string, double>> entries;
        if (v.objective != 0.0 || cols[j].empty()) entries.emplace_back(kObjRow, v.objective);
        for (const auto& [i, a] : cols[j]) entries.emplace_back(lp.constraints[i].name, a);
        for (std::size_t k = 0; k < entries.size(); k += 2) {
            out << "    " << pad(v.name, w) << pad(entries[k].first, w)
                << pad(num(entries[k].second), 14);
            if (k + 1 < entries.size())
                out << "  " << pad(entries[k + 1].first, w) << num(entries[k + 1].second);
            out << "\n";
        }
    }
    if (in_int)
        out << "    " << pad("MARKER" + std::to_string(marker_id++), w) << pad("'MARKER'", w)
            << "'INTEND'\n";

    out << "RHS\n";
    for (const auto& c : lp.constraints)
        if (c.rhs != 0.0)
            out << "    " << pad("RHS", w) << pad(c.name, w) << num(c.rhs) << "\n";

    out << "BOUNDS\n";
    for (int j = 0; j < lp.num_vars(); ++j) {
        const auto& v = lp.variables[j];
        const bool lo_inf = !std::isfinite(v.lower);
        const bool up_inf = !std::isfinite(v.upper);
        if (is_bin[j] && v.lower == 0.0 && v.upper == 1.0) {
            out << " BV " << pad("BND", w) << v.name << "\n";
            continue;
        }
        if (v.lower == v.upper) {
            out << " FX " << pad("BND", w) << pad(v.name, w) << num(v.lower) << "\n";
            continue;
        }
        if (lo_inf && up_inf) {
            out << " FR " << pad("BND", w) << v.name << "\n";
            continue;
        }
        if (lo_inf)
            out << " MI " << pad("BND", w) << v.name << "\n";
        else if (v.lower != 0.0 || (!up_inf && v.upper < 0.0))
            out << " LO " << pad("BND", w) << pad(v.name, w) << num(v.lower) << "\n";
        if (!up_inf) out << " UP " << pad("BND", w) << pad(v.name, w) << num(v.upper) << "\n";
    }
    out << "ENDATA\n";
    return out.str();
}

void write_mps(const MixedIntegerProgram& mip, const std::string& path,
               const std::string& model_name) {
    try {
        write_file(path, mps_text(mip, model_name));
    } catch (const std::exception& e) {
        throw MpsError(std::string("MPS export failed: ") + e.what());
    }
}

MixedIntegerProgram mps_from_text(const std::string& text) {
    MixedIntegerProgram mip;
    LinearProgram& lp = mip.lp;

    enum Section { none, rows, columns, rhs, bounds, ranges, done };
    Section sec = none;
    bool in_int = false;
    std::string obj_row;
    std::vector<char> is_bin_flags;
    std::vector<char> has_bound;

    auto ensure_var = [&](const std::string& name) -> int {
        int j = lp.variable_index(name);
        if (j < 0) {
            j = lp.add_variable(name, 0.0, kInf, 0.0);
            is_bin_flags.push_back(in_int ? 1 : 0);
            has_bound.push_back(0);
        }
        return j;
    };

    std::unordered_map<std::string, int> row_of;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '*') continue;
        const bool header = !std::isspace(static_cast<unsigned char>(line[0]));
        auto tok = tokens(line);
        if (tok.empty()) continue;

        if (header) {
            const std::string& h = tok[0];
            if (h == "NAME") sec = none;
            else if (h == "ROWS") sec = rows;
            else if (h == "COLUMNS") sec = columns;
            else if (h == "RHS") sec = rhs;
            else if (h == "BOUNDS") sec = bounds;
            else if (h == "RANGES") throw MpsError("RANGES section is not supported");
            else if (h == "ENDATA") { sec = done; break; }
            else throw MpsError("MPS line " + std::to_string(lineno) + ": unknown section " + h);
            continue;
        }

        switch (sec) {
            case rows: {
                if (tok.size() < 2)
                    throw MpsError("MPS line " + std::to_string(lineno) + ": short ROWS entry");
                const std::string& type = tok[0];
                const std::string& name = tok[1];
                if (type == "N") {
                    if (obj_row.empty()) obj_row = name;  // extra N rows ignored
                } else if (type == "L" || type == "G" || type == "E") {
                    const Sense s = type == "L" ? Sense::le : (type == "G" ? Sense::ge : Sense::eq);
                    row_of[name] = lp.add_constraint(name, s, 0.0);
                } else {
                    throw MpsError("MPS line " + std::to_string(lineno) + ": bad row type " + type);
                }
                break;
            }
            case columns: {
                if (tok.size() >= 3 && tok[1] == "'MARKER'") {
                    if (tok[2] == "'INTORG'") in_int = true;
                    else if (tok[2] == "'INTEND'") in_int = false;
                    break;
                }
                if (tok.size() < 3 || tok.size() % 2 == 0)
                    throw MpsError("MPS line " + std::to_string(lineno) + ": bad COLUMNS entry");
                const int j = ensure_var(tok[0]);
                for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
                    const std::string& row = tok[k];
                    const double val = parse_num(tok[k + 1], lineno);
                    if (row == obj_row) {
                        lp.variables[j].objective += val;
                    } else {
                        auto it = row_of.find(row);
                        if (it == row_of.end())
                            throw MpsError("MPS line " + std::to_string(lineno) +
                                           ": unknown row " + row);
                        if (val != 0.0) lp.add_coeff(it->second, j, val);
                    }
                }
                break;
            }
            case rhs: {
                if (tok.size() < 3 || tok.size() % 2 == 0)
                    throw MpsError("MPS line " + std::to_string(lineno) + ": bad RHS entry");
                for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
                    if (tok[k] == obj_row) continue;  // objective offset unsupported
                    auto it = row_of.find(tok[k]);
                    if (it == row_of.end())
                        throw MpsError("MPS line " + std::to_string(lineno) + ": unknown row " +
                                       tok[k]);
                    lp.constraints[it->second].rhs = parse_num(tok[k + 1], lineno);
                }
                break;
            }
            case bounds: {
                if (tok.size() < 3)
                    throw MpsError("MPS line " + std::to_string(lineno) + ": short BOUNDS entry");
                const std::string& type = tok[0];
                const int j = ensure_var(tok[2]);
                has_bound[j] = 1;
                auto& v = lp.variables[j];
                if (type == "UP") v.upper = parse_num(tok.at(3), lineno);
                else if (type == "LO") v.lower = parse_num(tok.at(3), lineno);
                else if (type == "FX") v.lower = v.upper = parse_num(tok.at(3), lineno);
                else if (type == "FR") { v.lower = -kInf; v.upper = kInf; }
                else if (type == "MI") v.lower = -kInf;
                else if (type == "PL") v.upper = kInf;
                else if (type == "BV") { v.lower = 0.0; v.upper = 1.0; }
                else throw MpsError("MPS line " + std::to_string(lineno) + ": bound type " + type);
                break;
            }
            case none: break;
            default: break;
        }
    }
    if (sec != done) throw MpsError("missing ENDATA");

    for (int j = 0; j < lp.num_vars(); ++j) {
        if (is_bin_flags[j]) {
            if (!has_bound[j]) {  // conventional integer default
                lp.variables[j].lower = 0.0;
                lp.variables[j].upper = 1.0;
            }
            mip.binary_variables.push_back(j);
        }
    }
    mip.validate();
    return mip;
}

MixedIntegerProgram read_mps(const std::string& path) {
    try {
        return mps_from_text(read_file(path));
    } catch (const MpsError&) {
        throw;
    } catch (const std::exception& e) {
        throw MpsError(std::string("MPS import failed (") + path + "): " + e.what());
    }
}

std::map<std::string, double> read_solution_csv(const std::string& path) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    std::map<std::string, double> out;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        // names may contain commas (pg[0,1]); the value is the last field
        const auto comma = line.rfind(',');
        if (comma == std::string::npos)
            throw MpsError("solution file line " + std::to_string(lineno) + ": expected name,value");
        const std::string name = line.substr(0, comma);
        if (lineno == 1 && name == "name") continue;  // header
        out[name] = parse_num(line.substr(comma + 1), lineno);
    }
    return out;
}

}  // namespace battd::optim
