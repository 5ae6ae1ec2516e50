#include "ipbounds/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ipbounds {

namespace {

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

double parse_number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(path, "number is not finite");
    return v;
}

Complex parse_complex(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected an [re, im] pair");
    return {parse_number(j[0], index_path(path, 0)), parse_number(j[1], index_path(path, 1))};
}

CVector parse_cvector(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected a list of [re, im] pairs");
    CVector out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], index_path(path, i)));
    return out;
}

std::vector<CVector> parse_cmatrix(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ParseError(path, "expected a nonempty list of rows");
    std::vector<CVector> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_cvector(j[i], index_path(path, i)));
    return out;
}

void require_length(const std::optional<CVector>& v, std::size_t n, const char* field) {
    if (v && v->size() != n) {
        throw ParseError(field, "has " + std::to_string(v->size()) + " entries, expected " + std::to_string(n));
    }
}

const Json& require(const Json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(key, "required field is missing");
    return doc.at(key);
}

Json cvector_to_json(const CVector& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(complex_to_json(z));
    return out;
}

// Non-finite values are written as strings so reports stay valid JSON and round-trip.
Json number_to_json(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double number_from_json(const Json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::nan("");
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
    }
    throw ParseError(path, "expected a number");
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json params_to_json(const HolderParams& params) {
    Json out = Json::object();
    out["p"] = params.pq.p;
    out["q"] = params.pq.q;
    if (params.ab) {
        out["alpha"] = params.ab->p;
        out["beta"] = params.ab->q;
    }
    if (params.gd) {
        out["gamma"] = params.gd->p;
        out["delta"] = params.gd->q;
    }
    return out;
}

HolderParams params_from_json(const Json& j, const std::string& path) {
    HolderParams out;
    out.pq = {number_from_json(require(j, "p"), path + ".p"), number_from_json(require(j, "q"), path + ".q")};
    if (j.contains("alpha")) out.ab = ConjugatePair{j["alpha"].get<double>(), j["beta"].get<double>()};
    if (j.contains("gamma")) out.gd = ConjugatePair{j["gamma"].get<double>(), j["delta"].get<double>()};
    return out;
}

std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

InstanceFile parse_instance(const Json& doc) {
    if (!doc.is_object()) throw ParseError("<root>", "expected a JSON object");
    const bool coords = doc.contains("ys");
    const bool gram = doc.contains("gram");
    if (coords == gram) throw ParseError("<root>", "expected exactly one of 'ys' (coordinates) or 'gram'");

    std::optional<CVector> c;
    if (doc.contains("c")) c = parse_cvector(doc["c"], "c");

    InstanceFile out;
    try {
        if (coords) {
            const CVector x = parse_cvector(require(doc, "x"), "x");
            auto ys = parse_cmatrix(doc["ys"], "ys");
            for (std::size_t i = 0; i < ys.size(); ++i) {
                if (ys[i].size() != x.size()) {
                    throw ParseError(index_path("ys", i), "has dimension " + std::to_string(ys[i].size()) +
                                                              ", x has dimension " + std::to_string(x.size()));
                }
            }
            require_length(c, ys.size(), "c");
            out.instance = Instance::from_coordinates(VectorFamily(std::move(ys)), x, std::move(c));
        } else {
            const auto rows = parse_cmatrix(doc["gram"], "gram");
            ProjectionData proj{parse_cvector(require(doc, "proj"), "proj"),
                                parse_number(require(doc, "norm_x_sq"), "norm_x_sq")};
            if (proj.norm_x_sq < 0.0) throw ParseError("norm_x_sq", "must be nonnegative");
            require_length(proj.proj, rows.size(), "proj");
            require_length(c, rows.size(), "c");
            // Symmetrizing is exact on a matrix that is already Hermitian, so this is idempotent.
            out.instance = Instance::from_gram(gram_from_matrix(rows).g, std::move(proj), std::move(c));
        }
    } catch (const InputError& e) {
        throw ParseError(coords ? "ys" : "gram", e.what());
    }

    if (doc.contains("params")) {
        const Json& p = doc["params"];
        if (!p.is_object()) throw ParseError("params", "expected an object");
        StoredParams sp;
        sp.p = parse_number(require(p, "p"), "params.p");
        if (p.contains("alpha")) sp.alpha = parse_number(p["alpha"], "params.alpha");
        if (p.contains("gamma")) sp.gamma = parse_number(p["gamma"], "params.gamma");
        out.params = sp;
    }
    return out;
}

InstanceFile parse_instance_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(line_column(text, e.byte), "malformed JSON");
    } catch (const Json::out_of_range& e) {
        // overflowing literals like 1e999; the lexer gives no position, so locate the literal itself
        const std::string what = e.what();
        const auto open = what.find('\'');
        const auto close = what.rfind('\'');
        std::size_t at = std::string::npos;
        if (open != std::string::npos && close > open) at = text.find(what.substr(open + 1, close - open - 1));
        throw ParseError(at == std::string::npos ? "<root>" : line_column(text, at + 1), "number out of range");
    }
    return parse_instance(doc);
}

InstanceFile read_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str());
}

Json instance_to_json(const Instance& instance) {
    Json out = Json::object();
    if (instance.coordinate_form()) {
        out["x"] = cvector_to_json(*instance.x);
        Json ys = Json::array();
        for (const auto& y : instance.family->vectors()) ys.push_back(cvector_to_json(y));
        out["ys"] = std::move(ys);
    } else {
        Json g = Json::array();
        for (std::size_t i = 0; i < instance.size(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < instance.size(); ++j) row.push_back(complex_to_json(instance.gram.g(i, j)));
            g.push_back(std::move(row));
        }
        out["gram"] = std::move(g);
        out["proj"] = cvector_to_json(instance.proj.proj);
        out["norm_x_sq"] = instance.proj.norm_x_sq;
    }
    if (instance.c) out["c"] = cvector_to_json(*instance.c);
    return out;
}

ReportRow make_row(std::string bound, int branch, Form form, std::optional<HolderParams> params, double value,
                   double lhs) {
    ReportRow row;
    row.bound = std::move(bound);
    row.branch = branch;
    row.form = form;
    row.has_params = params.has_value();
    if (params) row.params = *params;
    row.value = value;
    row.lhs = lhs;
    row.slack = value - lhs;
    row.tightness = value / std::max(lhs, 1e-300);
    return row;
}

Json to_json(const Report& report) {
    Json out = Json::object();
    out["command"] = report.command;
    Json info = Json::object();
    for (const auto& [k, v] : report.info) info[k] = v;
    out["info"] = std::move(info);
    Json metrics = Json::object();
    for (const auto& [k, v] : report.metrics) metrics[k] = number_to_json(v);
    out["metrics"] = std::move(metrics);
    Json rows = Json::array();
    for (const auto& r : report.rows) {
        Json row = Json::object();
        row["bound"] = r.bound;
        row["branch"] = r.branch;
        row["form"] = to_string(r.form);
        row["params"] = r.has_params ? params_to_json(r.params) : Json(nullptr);
        row["value"] = number_to_json(r.value);
        row["lhs"] = number_to_json(r.lhs);
        row["slack"] = number_to_json(r.slack);
        row["tightness"] = number_to_json(r.tightness);
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    return out;
}

Report report_from_json(const Json& doc) {
    Report out;
    out.command = require(doc, "command").get<std::string>();
    for (const auto& [k, v] : require(doc, "info").items()) out.info.emplace_back(k, v.get<std::string>());
    for (const auto& [k, v] : require(doc, "metrics").items()) {
        out.metrics.emplace_back(k, number_from_json(v, "metrics." + k));
    }
    const Json& rows = require(doc, "rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Json& j = rows[i];
        const std::string path = index_path("rows", i);
        ReportRow r;
        r.bound = j.at("bound").get<std::string>();
        r.branch = j.at("branch").get<int>();
        r.form = j.at("form").get<std::string>() == "printed" ? Form::Printed : Form::Derived;
        r.has_params = !j.at("params").is_null();
        if (r.has_params) r.params = params_from_json(j["params"], path + ".params");
        r.value = number_from_json(j.at("value"), path + ".value");
        r.lhs = number_from_json(j.at("lhs"), path + ".lhs");
        r.slack = number_from_json(j.at("slack"), path + ".slack");
        r.tightness = number_from_json(j.at("tightness"), path + ".tightness");
        out.rows.push_back(std::move(r));
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_tabular(const Report& report) {
    std::string out = std::string(kTabularHeader) + "\n";
    for (const auto& r : report.rows) {
        auto opt = [&](bool present, double v) { return present ? format_double(v) : std::string(); };
        const bool ab = r.has_params && r.params.ab.has_value();
        const bool gd = r.has_params && r.params.gd.has_value();
        out += r.bound + "," + std::to_string(r.branch) + "," + to_string(r.form) + "," +
               opt(r.has_params, r.params.pq.p) + "," + opt(r.has_params, r.params.pq.q) + "," +
               opt(ab, ab ? r.params.ab->p : 0.0) + "," + opt(ab, ab ? r.params.ab->q : 0.0) + "," +
               opt(gd, gd ? r.params.gd->p : 0.0) + "," + opt(gd, gd ? r.params.gd->q : 0.0) + "," +
               format_double(r.value) + "," + format_double(r.lhs) + "," + format_double(r.slack) + "," +
               format_double(r.tightness) + "\n";
    }
    return out;
}

Json to_json(const FuzzSummary& summary) {
    Json out = Json::object();
    out["seed"] = summary.seed;
    out["instances"] = summary.instances;
    out["total_checks"] = summary.total_checks;
    out["violations"] = summary.violations;
    Json links = Json::array();
    for (const auto& l : summary.links) {
        links.push_back(Json{{"link", l.name},
                             {"checks", l.checks},
                             {"violations", l.violations},
                             {"min_slack", nullable(l.min_slack)},
                             {"min_relative_slack", nullable(l.min_relative_slack)},
                             {"worst_instance", l.worst_instance}});
    }
    out["links"] = std::move(links);
    Json tight = Json::array();
    for (const auto& t : summary.tightness) {
        tight.push_back(Json{{"bound", t.bound},
                             {"count", t.count},
                             {"min", nullable(t.min)},
                             {"q05", nullable(t.q05)},
                             {"median", nullable(t.median)},
                             {"q95", nullable(t.q95)},
                             {"max", nullable(t.max)}});
    }
    out["tightness"] = std::move(tight);
    Json viol = Json::array();
    for (const auto& v : summary.first_violations) {
        viol.push_back(Json{{"instance", v.instance_id},
                            {"param_index", v.param_index},
                            {"link", v.link},
                            {"lhs", nullable(v.lhs)},
                            {"rhs", nullable(v.rhs)}});
    }
    out["first_violations"] = std::move(viol);
    return out;
}

Json to_json(const AuditReport& report, const std::vector<std::string>& counterexample_files) {
    Json out = Json::object();
    out["seed"] = report.seed;
    out["instances"] = report.instances;
    Json rows = Json::array();
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const AuditRow& r = report.rows[i];
        Json row = Json::object();
        row["source"] = to_string(r.source);
        row["branch"] = r.branch;
        row["coincides"] = r.coincides;
        row["printed_formula"] = r.printed_formula;
        row["derived_formula"] = r.derived_formula;
        row["checks"] = r.checks;
        row["violations_vs_middle"] = r.violations_vs_middle;
        row["violations_vs_lhs"] = r.violations_vs_lhs;
        row["derived_violations"] = r.derived_violations;
        row["worst_relative_gap"] = nullable(r.worst_relative_gap);
        if (r.worst) {
            Json w = Json::object();
            w["instance_id"] = r.worst->instance_id;
            w["param_index"] = r.worst->param_index;
            w["printed"] = r.worst->printed;
            w["derived"] = r.worst->derived;
            w["middle"] = r.worst->middle;
            if (i < counterexample_files.size() && !counterexample_files[i].empty()) {
                w["file"] = counterexample_files[i];
            }
            row["worst"] = std::move(w);
        } else {
            row["worst"] = nullptr;
        }
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    return out;
}

Json counterexample_to_json(const AuditCounterexample& cex) {
    Json out = instance_to_json(cex.instance);
    Json params = Json::object();
    params["p"] = cex.params.pq.p;
    if (cex.params.ab) params["alpha"] = cex.params.ab->p;
    if (cex.params.gd) params["gamma"] = cex.params.gd->p;
    out["params"] = std::move(params);
    out["audit"] = Json{{"source", to_string(cex.source)},
                        {"branch", cex.branch},
                        {"instance_id", cex.instance_id},
                        {"param_index", cex.param_index},
                        {"printed", cex.printed},
                        {"derived", cex.derived},
                        {"middle", cex.middle}};
    return out;
}

AuditCounterexample counterexample_from_json(const Json& doc) {
    InstanceFile file = parse_instance(doc);
    if (!file.params) throw ParseError("params", "counterexample needs stored params");
    const Json& audit = require(doc, "audit");
    AuditCounterexample cex;
    cex.instance = std::move(file.instance);
    cex.params = HolderParams::make(file.params->p, file.params->alpha, file.params->gamma);
    cex.source = formula_source_from_string(require(audit, "source").get<std::string>());
    cex.branch = require(audit, "branch").get<int>();
    cex.instance_id = require(audit, "instance_id").get<std::uint64_t>();
    cex.param_index = require(audit, "param_index").get<std::size_t>();
    cex.printed = parse_number(require(audit, "printed"), "audit.printed");
    cex.derived = parse_number(require(audit, "derived"), "audit.derived");
    cex.middle = parse_number(require(audit, "middle"), "audit.middle");
    return cex;
}

AuditValues replay(const AuditCounterexample& cex) {
    return audit_values(cex.instance, cex.params, cex.source, cex.branch);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace ipbounds
