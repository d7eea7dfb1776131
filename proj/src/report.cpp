#include "posdiv/report.hpp"

#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace posdiv {

std::string status_name(ReportStatus s)
{
    switch (s) {
    case ReportStatus::ok:
        return "ok";
    case ReportStatus::unsupported:
        return "unsupported";
    case ReportStatus::gross_alarm:
        return "gross_alarm";
    case ReportStatus::ingest_error:
        return "ingest_error";
    case ReportStatus::invariant_failure:
        return "invariant_failure";
    case ReportStatus::error:
        return "error";
    }
    return "error";
}

int exit_code(ReportStatus s)
{
    switch (s) {
    case ReportStatus::ok:
        return 0;
    case ReportStatus::unsupported:
        return 3;
    case ReportStatus::gross_alarm:
        return 4;
    case ReportStatus::ingest_error:
        return 5;
    case ReportStatus::invariant_failure:
    case ReportStatus::error:
        return 1;
    }
    return 1;
}

namespace {

using Kind = ReportField::Kind;

ReportField text(std::string key, std::string v)
{
    return {std::move(key), Kind::text, std::move(v)};
}

ReportField integer(std::string key, long long v)
{
    return {std::move(key), Kind::number, std::to_string(v)};
}

ReportField boolean(std::string key, bool v)
{
    return {std::move(key), Kind::boolean, v ? "true" : "false"};
}

ReportField null(std::string key)
{
    return {std::move(key), Kind::null, ""};
}

ReportField group(std::string key, std::optional<AbelianGroupType> const & g)
{
    return g ? text(std::move(key), g->to_string()) : null(std::move(key));
}

std::string fixed_seconds(double s)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << s;
    return os.str();
}

} // namespace

std::vector<ReportField> report_fields(AnalysisReport const & r, bool with_timing)
{
    std::vector<ReportField> f;
    f.push_back(text("id", r.id));
    f.push_back(r.disc ? ReportField{"disc", Kind::number, r.disc->get_str()} : null("disc"));
    f.push_back(text("status", status_name(r.status)));
    AnalysisResult const * a = r.result ? &*r.result : nullptr;
    if (a) {
        f.push_back(integer("P", (long long)a->num_dyadic));
        f.push_back(integer("PE", (long long)a->num_pe));
        f.push_back(group("Cl", a->cl));
        f.push_back(group("Cl_prime", a->cl_prime));
        f.push_back(group("Cl_log", a->cl_log));
        f.push_back(group("Cl_pos", a->cl_pos));
        f.push_back(boolean("Cl_pos_routes_agree", a->cl_pos_routes_agree));
        f.push_back(group("Cl_pos_deg0", a->cl_pos_deg0));
        f.push_back(group("Cl_pos_deg0_A2", a->cl_pos_deg0_a2));
        f.push_back(boolean("Cl_pos_deg0_agree", a->deg0_agree));
        f.push_back(a->rk2 ? integer("rk2", *a->rk2) : null("rk2"));
        f.push_back(text("case", case_name(a->tcase)));
        f.push_back(a->primitive ? boolean("primitive", *a->primitive) : null("primitive"));
        f.push_back(group("WK2", a->wk2));
        if (a->wk2_candidates.size() > 1) {
            std::string c;
            for (auto const & g : a->wk2_candidates)
                c += (c.empty() ? "" : " | ") + g.to_string();
            f.push_back(text("WK2_candidates", c));
        } else {
            f.push_back(null("WK2_candidates"));
        }
        f.push_back(integer("precision", a->eta));
    } else {
        for (char const * k : {"P", "PE", "Cl", "Cl_prime", "Cl_log", "Cl_pos", "Cl_pos_routes_agree", "Cl_pos_deg0",
                               "Cl_pos_deg0_A2", "Cl_pos_deg0_agree", "rk2", "case", "primitive", "WK2",
                               "WK2_candidates", "precision"})
            f.push_back(null(k));
    }
    if (r.verification) {
        bool ok = true;
        for (auto const & c : *r.verification)
            ok = ok && c.ok();
        f.push_back(text("verify", ok ? "pass" : "fail"));
    } else {
        f.push_back(null("verify"));
    }
    f.push_back(r.error_kind.empty() ? null("error_kind") : text("error_kind", r.error_kind));
    f.push_back(r.message.empty() ? null("message") : text("message", r.message));
    if (with_timing)
        f.push_back({"seconds", Kind::number, fixed_seconds(r.seconds)});
    return f;
}

ReportFormat parse_format(std::string const & s)
{
    if (s == "table")
        return ReportFormat::table;
    if (s == "csv")
        return ReportFormat::csv;
    if (s == "json")
        return ReportFormat::json;
    throw std::invalid_argument("unknown format '" + s + "'");
}

std::string csv_escape(std::string const & s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

namespace {

nlohmann::ordered_json to_json(AnalysisReport const & r, bool with_timing)
{
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    for (auto const & f : report_fields(r, with_timing)) {
        switch (f.kind) {
        case Kind::null:
            j[f.key] = nullptr;
            break;
        case Kind::boolean:
            j[f.key] = f.text == "true";
            break;
        case Kind::number:
            // parse keeps big discriminants exact
            j[f.key] = nlohmann::ordered_json::parse(f.text);
            break;
        case Kind::text:
            j[f.key] = f.text;
            break;
        }
    }
    if (r.verification) {
        auto & v = j["verification"] = nlohmann::ordered_json::array();
        for (auto const & c : *r.verification)
            v.push_back({{"check", c.name},
                         {"samples", c.samples},
                         {"failures", c.failures},
                         {"first_failure", c.first_failure.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(c.first_failure)}});
    }
    return j;
}

size_t column_width(std::string const & key)
{
    static std::map<std::string, size_t> const w = {
        {"id", 20},    {"disc", 8},          {"status", 11},       {"Cl", 10},          {"Cl_prime", 10},
        {"Cl_log", 10}, {"Cl_pos", 12},      {"Cl_pos_deg0", 11},  {"Cl_pos_deg0_A2", 14}, {"WK2", 8},
        {"WK2_candidates", 14}, {"message", 0},
    };
    auto it = w.find(key);
    size_t const d = it == w.end() ? 0 : it->second;
    return std::max(d, key.size());
}

std::string table_cell(ReportField const & f)
{
    return f.kind == Kind::null ? "-" : f.text;
}

} // namespace

ReportWriter::ReportWriter(std::ostream & out, ReportFormat fmt, bool with_timing)
    : out_(out)
    , fmt_(fmt)
    , timing_(with_timing)
{
}

void ReportWriter::write(AnalysisReport const & r)
{
    auto const fields = report_fields(r, timing_);
    switch (fmt_) {
    case ReportFormat::json:
        out_ << to_json(r, timing_).dump() << '\n';
        break;
    case ReportFormat::csv:
        if (!header_done_) {
            for (size_t i = 0; i < fields.size(); ++i)
                out_ << (i ? "," : "") << fields[i].key;
            out_ << '\n';
        }
        for (size_t i = 0; i < fields.size(); ++i)
            out_ << (i ? "," : "") << csv_escape(fields[i].text);
        out_ << '\n';
        break;
    case ReportFormat::table:
        if (!header_done_) {
            for (size_t i = 0; i < fields.size(); ++i)
                out_ << (i ? "  " : "") << std::left << std::setw(int(column_width(fields[i].key))) << fields[i].key;
            out_ << '\n';
        }
        for (size_t i = 0; i < fields.size(); ++i)
            out_ << (i ? "  " : "") << std::left << std::setw(int(column_width(fields[i].key))) << table_cell(fields[i]);
        out_ << '\n';
        break;
    }
    header_done_ = true;
    out_.flush();
}

void ReportWriter::finish()
{
    out_.flush();
}

void write_report_block(std::ostream & out, AnalysisReport const & r, bool with_timing)
{
    size_t w = 0;
    auto const fields = report_fields(r, with_timing);
    for (auto const & f : fields)
        w = std::max(w, f.key.size());
    for (auto const & f : fields)
        out << std::left << std::setw(int(w)) << f.key << "  " << table_cell(f) << '\n';
    if (r.verification)
        for (auto const & c : *r.verification) {
            out << "  [" << (c.ok() ? "pass" : "FAIL") << "] " << c.name << " (" << c.samples << " checks";
            if (!c.ok())
                out << ", " << c.failures << " failures; first: " << c.first_failure;
            out << ")\n";
        }
}

} // namespace posdiv
