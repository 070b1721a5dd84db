#pragma once

// Machine-readable run reports. The serialized form is canonical: sorted
// keys, exact rationals as "p/q" strings, shortest round-trip decimals for
// floats, and no volatile fields (wall time goes to stderr, not the file),
// so equal inputs produce byte-identical files.

#include <string>

#include <nlohmann/json.hpp>

namespace frogcert {

struct RunReport {
    std::string command;
    nlohmann::json config;
    nlohmann::json results;
    bool pass = false;
    double wall_time_seconds = 0.0; // reported on stderr only
};

// Canonical serialization; rejects non-finite numbers anywhere in the
// payload.
std::string report_to_json(const RunReport& report);

// Writes the canonical form to a file, or to stdout when path is "-".
void emit_report(const RunReport& report, const std::string& path);

} // namespace frogcert
