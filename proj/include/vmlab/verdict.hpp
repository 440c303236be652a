#pragma once

#include "vmlab/ext_real.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace vmlab {

inline constexpr int kReportSchemaVersion = 1;

enum class Status { pass, fail, inapplicable, bug };

std::string to_string(Status s);

/// Structured outcome of one check or theorem engine.
///
/// Engines follow one rule: a failed hypothesis gives `inapplicable`; a
/// conclusion that fails while every hypothesis holds gives `bug`. Plain
/// diagnostics (convergence checks and the like) use `pass` / `fail`.
struct Verdict {
    std::string check_id;
    Status status = Status::pass;
    std::vector<std::pair<std::string, ExtReal>> quantities;
    std::vector<std::pair<std::string, bool>> hypotheses;
    double horizon = 0;
    double tolerance = 0;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;
    std::vector<Verdict> children;

    Verdict& set(const std::string& name, ExtReal v);
    Verdict& hypothesis(const std::string& name, bool holds);
    std::optional<ExtReal> quantity(const std::string& name) const;
    std::optional<bool> hypothesis_value(const std::string& name) const;
    const Verdict* child(const std::string& id) const;

    bool all_hypotheses() const;

    /// Sets status from the hypothesis report and a conclusion flag.
    void settle(bool conclusion_holds);
};

/// Worst-first aggregation used for parents of sub-verdicts:
/// bug > fail > pass > inapplicable.
Status aggregate(const std::vector<Verdict>& parts);

nlohmann::ordered_json to_json(const Verdict& v);

/// Fixed column order: check_id,status,horizon,tolerance,quantities
/// where quantities is `name=value` pairs joined by ';'.
std::string csv_header();
std::string to_csv_row(const Verdict& v);

}  // namespace vmlab
