#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ipbounds/bounds.hpp"
#include "ipbounds/exponents.hpp"
#include "ipbounds/instance.hpp"
#include "ipbounds/optimizer.hpp"
#include "ipbounds/verify.hpp"

namespace ipbounds {

using Json = nlohmann::ordered_json;

/// Malformed instance or report file. `where` names the field path
/// (e.g. "ys[1][0]") or "line L, column C" for syntax errors.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    [[nodiscard]] const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Exponents stored alongside an instance (counterexample files carry them).
struct StoredParams {
    double p = 2.0;
    std::optional<double> alpha;
    std::optional<double> gamma;
};

struct InstanceFile {
    Instance instance;
    std::optional<StoredParams> params;
};

/// Accepts either {x, ys, c?} or {gram, proj, norm_x_sq, c?}; complex numbers
/// are [re, im] pairs. Unknown keys are ignored.
InstanceFile parse_instance(const Json& doc);
InstanceFile parse_instance_text(const std::string& text);
InstanceFile read_instance_file(const std::filesystem::path& path);

Json instance_to_json(const Instance& instance);
Json complex_to_json(Complex z);

struct ReportRow {
    std::string bound;
    int branch = 0;
    Form form = Form::Derived;
    HolderParams params;
    bool has_params = false;
    double value = 0.0;
    double lhs = 0.0;  // the quantity the bound claims to dominate
    double slack = 0.0;
    double tightness = 0.0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

ReportRow make_row(std::string bound, int branch, Form form, std::optional<HolderParams> params, double value,
                   double lhs);

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> info;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<ReportRow> rows;

    friend bool operator==(const Report&, const Report&) = default;
};

Json to_json(const Report& report);
Report report_from_json(const Json& doc);

/// Fixed column order; 17 significant digits; empty cells for absent params.
inline constexpr const char* kTabularHeader =
    "bound,branch,form,p,q,alpha,beta,gamma,delta,value,lhs,slack,tightness";
std::string to_tabular(const Report& report);

std::string format_double(double v);

Json to_json(const FuzzSummary& summary);
Json to_json(const AuditReport& report, const std::vector<std::string>& counterexample_files = {});

/// A replayable instance file: the instance, its params, and an "audit" block.
Json counterexample_to_json(const AuditCounterexample& cex);
AuditCounterexample counterexample_from_json(const Json& doc);

/// Recomputes printed, derived and middle values of a counterexample.
AuditValues replay(const AuditCounterexample& cex);

std::string dump(const Json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ipbounds
