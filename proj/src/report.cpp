#include "frogcert/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace frogcert {

namespace {

void reject_non_finite(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v))
            throw std::invalid_argument("report: non-finite value at " + where);
    } else if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            reject_non_finite(it.value(), where + "/" + it.key());
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            reject_non_finite(j[i], where + "/" + std::to_string(i));
    }
}

} // namespace

std::string report_to_json(const RunReport& report) {
    const nlohmann::json j{{"command", report.command},
                           {"config", report.config},
                           {"results", report.results},
                           {"verdict", report.pass ? "pass" : "fail"}};
    reject_non_finite(j, "");
    return j.dump(2) + "\n";
}

void emit_report(const RunReport& report, const std::string& path) {
    const std::string text = report_to_json(report);
    if (path == "-" || path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("emit_report: cannot open " + path);
    f << text;
    if (!f)
        throw std::runtime_error("emit_report: write failed for " + path);
}

} // namespace frogcert
