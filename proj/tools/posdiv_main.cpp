#include <cstdlib>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "posdiv/driver.hpp"

using namespace posdiv;

namespace {

constexpr int kUsageError = 2;

int default_precision()
{
    char const * env = std::getenv("POSDIV_PRECISION");
    if (!env || !*env)
        return PrecisionPolicy{}.initial;
    try {
        size_t pos = 0;
        int const v = std::stoi(env, &pos);
        if (pos != std::string(env).size())
            throw std::invalid_argument(env);
        return v;
    } catch (std::exception const &) {
        throw CLI::ValidationError("POSDIV_PRECISION", std::string("not an integer: ") + env);
    }
}

void set_precision(RunOptions & o, int bits)
{
    if (bits < 16 || bits > kMaxTwoAdicPrecision)
        throw CLI::ValidationError("--precision", "must lie in [16, " + std::to_string(kMaxTwoAdicPrecision) + "]");
    o.analysis.policy.initial = bits;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Positive divisor classes and the 2-rank of the wild kernel"};
    app.require_subcommand(1);

    std::string format = "table";
    int precision = 0;

    auto * analyze = app.add_subcommand("analyze", "analyze one field");
    std::string disc, path, k2;
    uint64_t index = 0;
    bool verify = false;
    auto * disc_opt = analyze->add_option("--disc", disc, "fundamental discriminant of a quadratic field");
    auto * field_opt = analyze->add_option("--field", path, "posdiv-field/1 ingestion file")->check(CLI::ExistingFile);
    disc_opt->excludes(field_opt);
    analyze->add_option("--precision", precision, "initial 2-adic precision in bits");
    analyze->add_flag("--verify", verify, "run the invariant suites on random S-units");
    auto * k2_opt = analyze->add_option("--k2", k2, "type of K2(O_F), e.g. \"2,12\"");
    auto * index_opt = analyze->add_option("--index", index, "index (K2(O_F) : WK2)")->check(CLI::PositiveNumber);
    k2_opt->needs(index_opt);
    index_opt->needs(k2_opt);
    analyze->add_option("--format", format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));

    auto * batch = app.add_subcommand("batch", "analyze every fundamental discriminant in a range");
    std::vector<long long> range;
    std::string filter;
    unsigned jobs = 1;
    bool timings = false;
    batch->add_option("--range", range, "LO HI")->expected(2)->required();
    batch->add_option("--filter", filter, "conditions such as pe>=1,rk2>1");
    batch->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    batch->add_option("--precision", precision, "initial 2-adic precision in bits");
    batch->add_flag("--timings", timings, "add per-field timings (output is then no longer reproducible)");
    batch->add_option("--format", format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));

    RunOptions opts;
    try {
        app.parse(argc, argv);
        set_precision(opts, precision ? precision : default_precision());
        if (*analyze && !*disc_opt && !*field_opt)
            throw CLI::RequiredError("--disc or --field");
        if (!k2.empty()) {
            opts.analysis.k2o = AbelianGroupType::parse(k2);
            opts.analysis.index = index;
        }
    } catch (CLI::ParseError const & e) {
        int const rc = app.exit(e);
        return rc == 0 ? 0 : kUsageError;
    } catch (std::exception const & e) {
        std::cerr << "posdiv: " << e.what() << '\n';
        return kUsageError;
    }
    ReportFormat const fmt = parse_format(format);

    if (*analyze) {
        opts.verify = verify;
        AnalysisReport r;
        if (*disc_opt) {
            mpz_class D;
            if (D.set_str(disc, 10) != 0) {
                std::cerr << "posdiv: --disc: not an integer: " << disc << '\n';
                return kUsageError;
            }
            r = analyze_quadratic(D, opts);
        } else {
            r = analyze_file(path, opts);
        }
        if (fmt == ReportFormat::table) {
            write_report_block(std::cout, r, true);
        } else {
            ReportWriter w(std::cout, fmt, true);
            w.write(r);
        }
        if (r.status != ReportStatus::ok)
            std::cerr << "posdiv: " << status_name(r.status) << (r.message.empty() ? "" : ": " + r.message) << '\n';
        return exit_code(r.status);
    }

    BatchFilter flt;
    try {
        if (!filter.empty())
            flt = BatchFilter(filter);
    } catch (std::exception const & e) {
        std::cerr << "posdiv: --filter: " << e.what() << '\n';
        return kUsageError;
    }
    if (range[0] > range[1]) {
        std::cerr << "posdiv: --range: LO exceeds HI\n";
        return kUsageError;
    }
    ReportWriter w(std::cout, fmt, timings);
    try {
        run_batch(fundamental_discriminants(range[0], range[1]), opts, flt, jobs,
                  [&](AnalysisReport const & r) { w.write(r); });
    } catch (std::exception const & e) {
        std::cerr << "posdiv: " << e.what() << '\n';
        return 1;
    }
    w.finish();
    return 0;
}
