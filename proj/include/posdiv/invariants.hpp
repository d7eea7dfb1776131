#ifndef POSDIV_INVARIANTS_HPP
#define POSDIV_INVARIANTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "posdiv/signatures.hpp"

namespace posdiv {

struct InvariantCheck
{
    std::string name;
    size_t samples = 0;
    size_t failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0; }
};

/* Random S-units x = +-2^a * prod t^{k_t}, built as actual field elements
 * and evaluated place by place (not through the cached valuation table). */
struct SUnitSample
{
    QPoly value;
    std::vector<int> exponents; // over the tracked elements
    int sign = 1;
    int two_power = 0;
};

std::vector<SUnitSample> random_s_units(FieldData const & F, size_t count, uint64_t seed, int max_exponent = 2,
                                        size_t max_factors = 3);

/* The identities every S-unit must satisfy:
 *   sum_p v~_p(x) deg p = 0, deg(div~ x) = 0 (both up to 2 bits),
 *   prod_v (x, -1)_v = 1 over S and the real places,
 *   sg_p(x) = (-1)^{v~_p(x)} on PS \ PLS, sg_p(x) = 1 off PS,
 *   (div~ x, sg(x)) is positive. */
std::vector<InvariantCheck> check_invariants(LogContext const & ctx, PlaceClassification const & C,
                                             std::vector<SUnitSample> const & samples);

} // namespace posdiv

#endif
