#ifndef POSDIV_DRIVER_HPP
#define POSDIV_DRIVER_HPP

#include <functional>
#include <string>
#include <vector>

#include "posdiv/report.hpp"

namespace posdiv {

struct RunOptions
{
    AnalysisOptions analysis;
    bool verify = false;
    size_t verify_samples = 100;
    uint64_t verify_seed = 1;
};

AnalysisReport analyze_quadratic(mpz_class const & D, RunOptions const & opts);
AnalysisReport analyze_file(std::string const & path, RunOptions const & opts);
/// Analysis of an already loaded field; errors become report statuses.
AnalysisReport analyze_report(FieldData const & F, RunOptions const & opts);

/* Batch filter: comma-separated conditions "key op value" with key one of
 * p, pe, rk2, d and op one of < <= == != >= >. */
class BatchFilter
{
  public:
    BatchFilter() = default;
    explicit BatchFilter(std::string const & expr);

    /// Reports without analysis data (errors) always pass.
    bool accepts(AnalysisReport const & r) const;
    bool empty() const { return conds_.empty(); }

  private:
    struct Cond
    {
        std::string key, op;
        long long value;
    };
    std::vector<Cond> conds_;
};

std::vector<mpz_class> fundamental_discriminants(long long lo, long long hi);

/* Runs every discriminant, `jobs` at a time, and hands the accepted reports
 * to `sink` in input order as soon as each prefix is complete. */
void run_batch(std::vector<mpz_class> const & discs, RunOptions const & opts, BatchFilter const & filter, unsigned jobs,
               std::function<void(AnalysisReport const &)> const & sink);

} // namespace posdiv

#endif
