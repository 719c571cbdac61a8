#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "gammalab/instance.hpp"

namespace gammalab {

enum class Status { kPass, kFail, kFinding, kSkipped };

std::string status_name(Status s);

struct CheckRecord {
    std::string name;
    std::string anchor;  // the structural statement the check instantiates
    Status status = Status::kSkipped;
    nlohmann::json payload;  // witness / counterexample / measurement
    double ms = 0.0;
};

struct Report {
    static constexpr int kSchemaVersion = 1;

    nlohmann::json instance_echo;
    std::string command;
    std::vector<CheckRecord> records;

    void sort_records();  // record order is fixed by name, not execution order
    bool any_fail() const;
    int exit_status() const { return any_fail() ? 1 : 0; }

    nlohmann::json to_json(bool include_timing = true) const;
    std::string to_csv() const;
    std::string to_text() const;
};

nlohmann::json instance_json(const Instance& inst);

}  // namespace gammalab
