#include "posdiv/driver.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <map>
#include <mutex>
#include <optional>
#include <regex>
#include <thread>

#include "posdiv/quadratic.hpp"

namespace posdiv {

namespace {

using clock_type = std::chrono::steady_clock;

void fail(AnalysisReport & r, ReportStatus s, std::string kind, std::string const & msg)
{
    r.status = s;
    r.error_kind = std::move(kind);
    r.message = msg;
}

/* Runs `body`, translating the library's exceptions into report statuses
 * under the module that raised them. */
template <class Body>
void guarded(AnalysisReport & r, Body && body)
{
    try {
        body();
    } catch (IngestError const & e) {
        fail(r, ReportStatus::ingest_error, "fields." + IngestError::name(e.kind()), e.what());
    } catch (GrossAlarm const & e) {
        fail(r, ReportStatus::gross_alarm, "logarithmic.gross_alarm", e.what());
    } catch (WildKernelError const & e) {
        fail(r, ReportStatus::error, "positive.wild_kernel", e.what());
    } catch (DyadicError const & e) {
        fail(r, ReportStatus::error, "dyadic", e.what());
    } catch (LinalgError const & e) {
        fail(r, ReportStatus::error, "zlinalg", e.what());
    } catch (LogError const & e) {
        fail(r, ReportStatus::error, "logarithmic", e.what());
    } catch (FieldError const & e) {
        fail(r, ReportStatus::error, "fields", e.what());
    } catch (std::exception const & e) {
        fail(r, ReportStatus::error, "internal", e.what());
    }
}

void finish_analysis(AnalysisReport & r, FieldData const & F, RunOptions const & opts)
{
    r.id = F.id;
    r.disc = F.quadratic_disc ? *F.quadratic_disc : F.disc;
    r.result = analyze_field(F, opts.analysis);
    if (r.result->tcase == TheoremCase::pls_without_pe)
        r.status = ReportStatus::unsupported;
    if (!opts.verify)
        return;
    LogOptions lo;
    lo.eta = r.result->eta;
    lo.primitive_choice = opts.analysis.primitive_choice;
    lo.deg_unit = opts.analysis.deg_unit;
    LogContext const ctx = build_log_context(F, lo);
    PlaceClassification const C = classify_places(ctx);
    r.verification = check_invariants(ctx, C, random_s_units(F, opts.verify_samples, opts.verify_seed));
    for (auto const & c : *r.verification)
        if (!c.ok() && r.status == ReportStatus::ok)
            fail(r, ReportStatus::invariant_failure, "invariants", c.name + ": " + c.first_failure);
}

double since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

} // namespace

AnalysisReport analyze_report(FieldData const & F, RunOptions const & opts)
{
    auto const t0 = clock_type::now();
    AnalysisReport r;
    r.id = F.id;
    guarded(r, [&] { finish_analysis(r, F, opts); });
    r.seconds = since(t0);
    return r;
}

AnalysisReport analyze_quadratic(mpz_class const & D, RunOptions const & opts)
{
    auto const t0 = clock_type::now();
    AnalysisReport r;
    r.id = "Q(sqrt(" + D.get_str() + "))";
    r.disc = D;
    guarded(r, [&] {
        FieldData const F = quadratic_field(D);
        finish_analysis(r, F, opts);
    });
    r.seconds = since(t0);
    return r;
}

AnalysisReport analyze_file(std::string const & path, RunOptions const & opts)
{
    auto const t0 = clock_type::now();
    AnalysisReport r;
    r.id = path;
    guarded(r, [&] {
        FieldData const F = load_field(path);
        finish_analysis(r, F, opts);
    });
    r.seconds = since(t0);
    return r;
}

BatchFilter::BatchFilter(std::string const & expr)
{
    static std::regex const cond(R"(\s*(p|pe|rk2|d)\s*(<=|>=|==|!=|<|>)\s*(-?\d+)\s*)");
    size_t start = 0;
    while (start <= expr.size()) {
        size_t const comma = expr.find(',', start);
        std::string const part = expr.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::smatch m;
        if (!std::regex_match(part, m, cond))
            throw std::invalid_argument("bad filter condition '" + part + "'");
        conds_.push_back({m[1], m[2], std::stoll(m[3])});
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
}

bool BatchFilter::accepts(AnalysisReport const & r) const
{
    if (!r.result)
        return true;
    AnalysisResult const & a = *r.result;
    for (auto const & c : conds_) {
        std::optional<long long> v;
        if (c.key == "p")
            v = (long long)a.num_dyadic;
        else if (c.key == "pe")
            v = (long long)a.num_pe;
        else if (c.key == "rk2" && a.rk2)
            v = *a.rk2;
        else if (c.key == "d" && r.disc && r.disc->fits_slong_p())
            v = r.disc->get_si();
        if (!v)
            return false;
        bool const ok = c.op == "<"    ? *v < c.value
                        : c.op == "<=" ? *v <= c.value
                        : c.op == "==" ? *v == c.value
                        : c.op == "!=" ? *v != c.value
                        : c.op == ">=" ? *v >= c.value
                                       : *v > c.value;
        if (!ok)
            return false;
    }
    return true;
}

std::vector<mpz_class> fundamental_discriminants(long long lo, long long hi)
{
    std::vector<mpz_class> out;
    for (long long d = lo; d <= hi; ++d)
        if (is_fundamental_discriminant(mpz_class(std::to_string(d))))
            out.emplace_back(std::to_string(d));
    return out;
}

void run_batch(std::vector<mpz_class> const & discs, RunOptions const & opts, BatchFilter const & filter, unsigned jobs,
               std::function<void(AnalysisReport const &)> const & sink)
{
    if (jobs == 0)
        jobs = 1;
    std::vector<std::optional<AnalysisReport>> done(discs.size());
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<size_t> next{0};

    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < discs.size();) {
            AnalysisReport r = analyze_quadratic(discs[i], opts);
            std::lock_guard<std::mutex> lk(mu);
            done[i] = std::move(r);
            cv.notify_one();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
        pool.emplace_back(worker);

    // emit in input order as prefixes complete
    for (size_t i = 0; i < discs.size(); ++i) {
        std::unique_lock<std::mutex> lk(mu);
        cv.wait(lk, [&] { return done[i].has_value(); });
        AnalysisReport r = std::move(*done[i]);
        done[i].reset();
        lk.unlock();
        if (filter.accepts(r))
            sink(r);
    }
    for (auto & t : pool)
        t.join();
}

} // namespace posdiv
