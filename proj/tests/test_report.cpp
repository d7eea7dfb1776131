#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"

#include "posdiv/driver.hpp"

using namespace posdiv;

namespace {

std::vector<std::string> split_csv(std::string const & line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char const ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"')
                cur += '"', ++i;
            else if (ch == '"')
                quoted = false;
            else
                cur += ch;
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> lines(std::string const & s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

std::string render(std::vector<AnalysisReport> const & rs, ReportFormat f)
{
    std::ostringstream os;
    ReportWriter w(os, f, false);
    for (auto const & r : rs)
        w.write(r);
    return os.str();
}

std::string json_text(nlohmann::json const & v)
{
    if (v.is_null())
        return "";
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

} // namespace

TEST(Report, GroupRendering)
{
    EXPECT_EQ(AbelianGroupType::parse("2,2").to_string(), "[ 2,2 ]");
    EXPECT_EQ(AbelianGroupType::parse("").to_string(), "[ ]");
}

TEST(Report, RenderersAgreeFieldForField)
{
    RunOptions o;
    o.analysis.k2o = AbelianGroupType::parse("2,12");
    o.analysis.index = 2;
    std::vector<AnalysisReport> rs{analyze_quadratic(-399, o), analyze_quadratic(29665, {}), analyze_quadratic(28, {}),
                                   analyze_quadratic(18, {})};
    ASSERT_EQ(rs[2].status, ReportStatus::unsupported);
    ASSERT_EQ(rs[3].status, ReportStatus::error);

    auto const csv = lines(render(rs, ReportFormat::csv));
    auto const js = lines(render(rs, ReportFormat::json));
    auto const tab = lines(render(rs, ReportFormat::table));
    ASSERT_EQ(csv.size(), rs.size() + 1);
    ASSERT_EQ(js.size(), rs.size());
    ASSERT_EQ(tab.size(), rs.size() + 1);

    auto const header = split_csv(csv[0]);
    for (size_t i = 0; i < rs.size(); ++i) {
        auto const fields = report_fields(rs[i], false);
        auto const row = split_csv(csv[i + 1]);
        auto const j = nlohmann::json::parse(js[i]);
        EXPECT_EQ(j["schema"], kReportSchema);
        ASSERT_EQ(row.size(), fields.size());
        ASSERT_EQ(header.size(), fields.size());
        for (size_t k = 0; k < fields.size(); ++k) {
            EXPECT_EQ(header[k], fields[k].key);
            EXPECT_EQ(row[k], fields[k].text) << fields[k].key;
            EXPECT_EQ(json_text(j[fields[k].key]), fields[k].text) << fields[k].key;
            // table cells are whitespace-separated and never empty
            std::string const cell = fields[k].kind == ReportField::Kind::null ? "-" : fields[k].text;
            EXPECT_NE(tab[i + 1].find(cell), std::string::npos) << fields[k].key;
        }
    }
}

TEST(Report, CsvEscaping)
{
    EXPECT_EQ(csv_escape("[ 2 ]"), "[ 2 ]");
    EXPECT_EQ(csv_escape("[ 2,4 ]"), "\"[ 2,4 ]\"");
    EXPECT_EQ(csv_escape("a\"b"), "\"a\"\"b\"");
}

TEST(Report, ExitCodes)
{
    EXPECT_EQ(exit_code(ReportStatus::ok), 0);
    EXPECT_EQ(exit_code(ReportStatus::error), 1);
    EXPECT_EQ(exit_code(ReportStatus::unsupported), 3);
    EXPECT_EQ(exit_code(ReportStatus::gross_alarm), 4);
    EXPECT_EQ(exit_code(ReportStatus::ingest_error), 5);
}

TEST(Report, ErrorsCarryModuleIdentity)
{
    AnalysisReport const r = analyze_quadratic(18, {});
    EXPECT_EQ(r.status, ReportStatus::error);
    EXPECT_EQ(r.error_kind, "fields");
    AnalysisReport const f = analyze_file("/nonexistent/field.json", {});
    EXPECT_EQ(f.status, ReportStatus::ingest_error);
    EXPECT_EQ(f.error_kind, "fields.schema");
}

TEST(Batch, FundamentalDiscriminants)
{
    EXPECT_TRUE(fundamental_discriminants(2, 3).empty());
    auto const d = fundamental_discriminants(-20, 20);
    std::vector<long> got;
    for (auto const & x : d)
        got.push_back(x.get_si());
    EXPECT_EQ(got, (std::vector<long>{-20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17}));
}

TEST(Batch, Filter)
{
    AnalysisReport const r = analyze_quadratic(-184, {});
    EXPECT_TRUE(BatchFilter("pe>=1").accepts(r));
    EXPECT_FALSE(BatchFilter("pe>=2").accepts(r));
    EXPECT_TRUE(BatchFilter("pe==1,rk2==1, d<0").accepts(r));
    EXPECT_FALSE(BatchFilter("p!=1").accepts(r));
    EXPECT_THROW(BatchFilter("pe>>1"), std::invalid_argument);
    EXPECT_THROW(BatchFilter("colour==2"), std::invalid_argument);
    // errors stay visible whatever the filter
    EXPECT_TRUE(BatchFilter("pe>=5").accepts(analyze_quadratic(18, {})));
}

TEST(Batch, DeterministicAcrossJobCounts)
{
    auto const discs = fundamental_discriminants(-300, 300);
    std::string out[3];
    unsigned const jobs[3] = {1, 3, 8};
    for (int k = 0; k < 3; ++k) {
        std::ostringstream os;
        ReportWriter w(os, ReportFormat::json, false);
        run_batch(discs, {}, BatchFilter("pe>=1"), jobs[k], [&](AnalysisReport const & r) { w.write(r); });
        out[k] = os.str();
    }
    EXPECT_FALSE(out[0].empty());
    EXPECT_EQ(out[0], out[1]);
    EXPECT_EQ(out[0], out[2]);
}

TEST(Batch, OrderedByDiscriminant)
{
    std::vector<long> seen;
    run_batch(fundamental_discriminants(-100, 100), {}, BatchFilter(), 4,
              [&](AnalysisReport const & r) { seen.push_back(r.disc->get_si()); });
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    EXPECT_EQ(seen.size(), fundamental_discriminants(-100, 100).size());
}
