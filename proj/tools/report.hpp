#pragma once

// Machine-readable run reports: config echo, named tables, and pass/fail
// verdicts that always carry the measured value and its threshold. The
// JSON layout is pinned by schemas/verify_report.schema.json.
//
// generated_at honors SOURCE_DATE_EPOCH so that reports are byte-stable
// under fixed (config, seed).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reidlab/errors.hpp"

namespace reidlab::report {

struct Verdict {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string note;  // optional, e.g. expected-skip explanations
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Report {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::vector<Table> tables;
    std::vector<Verdict> verdicts;

    bool all_pass() const {
        for (const auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }
};

inline std::string timestamp_utc() {
    std::time_t now;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    } else {
        now = std::time(nullptr);
    }
    char buffer[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

inline nlohmann::json to_json(const Report& report) {
    nlohmann::json j;
    j["metadata"] = {
        {"tool", "reidlab"},
        {"version", "0.1.0"},
        {"command", report.command},
        {"generated_at", timestamp_utc()},
        {"seed", report.seed},
        {"config", report.config},
    };
    j["tables"] = nlohmann::json::object();
    for (const auto& table : report.tables) {
        j["tables"][table.name] = {
            {"columns", table.columns},
            {"rows", table.rows},
        };
    }
    j["verdicts"] = nlohmann::json::array();
    for (const auto& v : report.verdicts) {
        nlohmann::json jv = {
            {"name", v.name},
            {"pass", v.pass},
            {"measured", v.measured},
            {"threshold", v.threshold},
        };
        if (!v.note.empty()) jv["note"] = v.note;
        j["verdicts"].push_back(jv);
    }
    return j;
}

inline void write_json(const Report& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("report: cannot open " + path);
    out << to_json(report).dump(2) << "\n";
}

inline void print_verdicts(const Report& report) {
    for (const auto& v : report.verdicts) {
        std::printf("[%s] %-42s measured=%.3e threshold=%.3e%s%s\n",
                    v.pass ? "PASS" : "FAIL", v.name.c_str(), v.measured,
                    v.threshold, v.note.empty() ? "" : "  -- ",
                    v.note.c_str());
    }
}

}  // namespace reidlab::report
