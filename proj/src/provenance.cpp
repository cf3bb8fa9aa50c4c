#include "battdispatch/provenance.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "battdispatch/constants.hpp"

namespace battd {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string hash_file(const std::string& path) { return fnv1a64_hex(read_file(path)); }

Provenance::Provenance() : version(kToolVersion) {}

nlohmann::json Provenance::to_json() const {
    nlohmann::json j;
    j["tool"] = tool;
    j["version"] = version;
    j["input_hashes"] = input_hashes;
    j["config"] = config;
    return j;
}

std::string Provenance::to_csv_comment() const {
    std::ostringstream ss;
    ss << "# tool: " << tool << " " << version << "\n";
    for (const auto& [k, v] : input_hashes) ss << "# input " << k << ": " << v << "\n";
    for (const auto& [k, v] : config) ss << "# config " << k << ": " << v << "\n";
    return ss.str();
}

}  // namespace battd
