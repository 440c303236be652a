#include "vmlab/verdict.hpp"

#include <algorithm>

namespace vmlab {

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::inapplicable: return "inapplicable";
        case Status::bug: return "bug";
    }
    return "?";
}

Verdict& Verdict::set(const std::string& name, ExtReal v) {
    for (auto& [k, val] : quantities)
        if (k == name) {
            val = v;
            return *this;
        }
    quantities.emplace_back(name, v);
    return *this;
}

Verdict& Verdict::hypothesis(const std::string& name, bool holds) {
    for (auto& [k, val] : hypotheses)
        if (k == name) {
            val = holds;
            return *this;
        }
    hypotheses.emplace_back(name, holds);
    return *this;
}

std::optional<ExtReal> Verdict::quantity(const std::string& name) const {
    for (const auto& [k, v] : quantities)
        if (k == name) return v;
    return std::nullopt;
}

std::optional<bool> Verdict::hypothesis_value(const std::string& name) const {
    for (const auto& [k, v] : hypotheses)
        if (k == name) return v;
    return std::nullopt;
}

const Verdict* Verdict::child(const std::string& id) const {
    for (const auto& c : children)
        if (c.check_id == id) return &c;
    return nullptr;
}

bool Verdict::all_hypotheses() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const auto& h) { return h.second; });
}

void Verdict::settle(bool conclusion_holds) {
    if (!all_hypotheses())
        status = Status::inapplicable;
    else
        status = conclusion_holds ? Status::pass : Status::bug;
}

Status aggregate(const std::vector<Verdict>& parts) {
    auto rank = [](Status s) {
        switch (s) {
            case Status::bug: return 3;
            case Status::fail: return 2;
            case Status::pass: return 1;
            case Status::inapplicable: return 0;
        }
        return 0;
    };
    Status worst = Status::inapplicable;
    for (const auto& p : parts)
        if (rank(p.status) > rank(worst)) worst = p.status;
    return worst;
}

nlohmann::ordered_json to_json(const Verdict& v) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["check_id"] = v.check_id;
    doc["status"] = to_string(v.status);
    auto& q = doc["quantities"] = nlohmann::ordered_json::object();
    for (const auto& [k, x] : v.quantities) q[k] = format_number(x);
    auto& h = doc["hypotheses"] = nlohmann::ordered_json::object();
    for (const auto& [k, b] : v.hypotheses) h[k] = b;
    doc["horizon"] = format_number(v.horizon);
    doc["tolerance"] = format_number(v.tolerance);
    doc["assumptions"] = v.assumptions;
    if (!v.notes.empty()) doc["notes"] = v.notes;
    if (!v.children.empty()) {
        auto& c = doc["children"] = nlohmann::ordered_json::array();
        for (const auto& ch : v.children) {
            auto sub = to_json(ch);
            sub.erase("schema_version");
            c.push_back(std::move(sub));
        }
    }
    return doc;
}

std::string csv_header() { return "check_id,status,horizon,tolerance,quantities"; }

std::string to_csv_row(const Verdict& v) {
    std::string q;
    for (const auto& [k, x] : v.quantities) {
        if (!q.empty()) q += ';';
        q += k + "=" + format_number(x);
    }
    return v.check_id + "," + to_string(v.status) + "," + format_number(v.horizon) + "," +
           format_number(v.tolerance) + "," + q;
}

}  // namespace vmlab
