#ifndef POSDIV_REPORT_HPP
#define POSDIV_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "posdiv/invariants.hpp"
#include "posdiv/positive.hpp"

namespace posdiv {

inline constexpr char const * kReportSchema = "posdiv-report/1";

enum class ReportStatus { ok, unsupported, gross_alarm, ingest_error, invariant_failure, error };

std::string status_name(ReportStatus s);

/// Process exit code for a single-field run.
int exit_code(ReportStatus s);

struct AnalysisReport
{
    std::string id;
    std::optional<mpz_class> disc;
    ReportStatus status = ReportStatus::ok;
    std::string error_kind; // module error identity, empty on success
    std::string message;
    std::optional<AnalysisResult> result;
    std::optional<std::vector<InvariantCheck>> verification;
    double seconds = 0;
};

/* One named value of a report.  Every renderer walks the same list, so the
 * formats cannot drift apart. */
struct ReportField
{
    enum class Kind { text, number, boolean, null };
    std::string key;
    Kind kind = Kind::null;
    std::string text; // canonical textual value (empty for null)
};

std::vector<ReportField> report_fields(AnalysisReport const & r, bool with_timing);

enum class ReportFormat { table, csv, json };

ReportFormat parse_format(std::string const & s);

/* Streaming writer: the header (if any) goes out with the first row. */
class ReportWriter
{
  public:
    ReportWriter(std::ostream & out, ReportFormat fmt, bool with_timing);
    void write(AnalysisReport const & r);
    void finish();

  private:
    std::ostream & out_;
    ReportFormat fmt_;
    bool timing_;
    bool header_done_ = false;
};

/// Key/value layout for a single report in table format.
void write_report_block(std::ostream & out, AnalysisReport const & r, bool with_timing);

std::string csv_escape(std::string const & s);

} // namespace posdiv

#endif
