#include "gammalab/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace gammalab {

std::string status_name(Status s) {
    switch (s) {
        case Status::kPass: return "pass";
        case Status::kFail: return "fail";
        case Status::kFinding: return "finding";
        case Status::kSkipped: return "skipped";
    }
    return "?";
}

void Report::sort_records() {
    std::stable_sort(records.begin(), records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

bool Report::any_fail() const {
    return std::any_of(records.begin(), records.end(),
                       [](const CheckRecord& r) { return r.status == Status::kFail; });
}

nlohmann::json Report::to_json(bool include_timing) const {
    nlohmann::json recs = nlohmann::json::array();
    for (const CheckRecord& r : records) {
        nlohmann::json rec{{"name", r.name},
                           {"anchor", r.anchor},
                           {"status", status_name(r.status)},
                           {"payload", r.payload}};
        if (include_timing) rec["ms"] = r.ms;
        recs.push_back(std::move(rec));
    }
    int pass = 0, fail = 0, finding = 0, skipped = 0;
    for (const CheckRecord& r : records) {
        switch (r.status) {
            case Status::kPass: ++pass; break;
            case Status::kFail: ++fail; break;
            case Status::kFinding: ++finding; break;
            case Status::kSkipped: ++skipped; break;
        }
    }
    return nlohmann::json{{"schema_version", kSchemaVersion},
                          {"command", command},
                          {"instance", instance_echo},
                          {"records", std::move(recs)},
                          {"summary",
                           {{"pass", pass},
                            {"fail", fail},
                            {"finding", finding},
                            {"skipped", skipped}}}};
}

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "name,anchor,status,ms,payload\n";
    for (const CheckRecord& r : records) {
        os << r.name << ',' << csv_quote(r.anchor) << ',' << status_name(r.status) << ','
           << std::fixed << std::setprecision(2) << r.ms << ','
           << csv_quote(r.payload.dump()) << '\n';
    }
    return os.str();
}

std::string Report::to_text() const {
    std::ostringstream os;
    for (const CheckRecord& r : records) {
        os << std::left << std::setw(36) << r.name << ' ' << std::setw(8)
           << status_name(r.status) << ' ' << std::setw(18) << ("[" + r.anchor + "]")
           << ' ' << std::fixed << std::setprecision(1) << r.ms << " ms\n";
        if (!r.payload.empty()) {
            std::string p = r.payload.dump();
            if (p.size() > 400) p = p.substr(0, 400) + "... (json format has the rest)";
            os << "    " << p << '\n';
        }
    }
    int fails = 0;
    for (const CheckRecord& r : records)
        if (r.status == Status::kFail) ++fails;
    os << (fails ? "FAIL (" + std::to_string(fails) + " failing)" : "OK") << '\n';
    return os.str();
}

nlohmann::json instance_json(const Instance& inst) {
    return nlohmann::json{{"n", inst.n},
                          {"s", inst.s},
                          {"prime", inst.prime},
                          {"max_oracle_dim", inst.caps.max_oracle_dim},
                          {"seed", inst.caps.seed}};
}

}  // namespace gammalab
