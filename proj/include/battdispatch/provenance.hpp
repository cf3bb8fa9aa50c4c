#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

// Provenance block embedded in every output file: tool version, FNV-1a
// hashes of the inputs and an echo of the effective configuration.

namespace battd {

std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

// Hash of a file's raw bytes; throws std::runtime_error on I/O failure.
std::string hash_file(const std::string& path);

struct Provenance {
    std::string tool = "battdispatch";
    std::string version;
    std::map<std::string, std::string> input_hashes;  // label -> fnv1a hex
    std::map<std::string, std::string> config;        // flag echo

    Provenance();
    nlohmann::json to_json() const;
    // "# key: value" comment lines for CSV headers.
    std::string to_csv_comment() const;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace battd
