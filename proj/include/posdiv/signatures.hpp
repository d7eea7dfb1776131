#ifndef POSDIV_SIGNATURES_HPP
#define POSDIV_SIGNATURES_HPP

#include <vector>

#include "posdiv/logarithmic.hpp"

namespace posdiv {

using SignVector = std::vector<int>; // entries +-1, aligned with the PLS order

/* Logarithmically signed places in the fixed order: exceptional dyadic
 * places (by increasing v2(deg)), then the real places. */
struct PlaceClassification
{
    std::vector<size_t> pe;      // indices into S
    size_t real = 0;             // number of real places
    std::vector<bool> in_ps;     // per place of S
    std::vector<bool> in_pls;    // per place of S
    std::vector<bool> ps_not_pls; // per place of S, where sg = (-1)^v~

    size_t e() const { return pe.size(); }
    size_t m() const { return pe.size() + real; }
};

/// sg at a finite place of S.
int sg_finite(LogContext const & ctx, size_t place, QPoly const & x);
/// sg at a dyadic place for a local element (no global valuation data needed).
int sg_local_dyadic(LogContext const & ctx, size_t place, QPoly const & x);

PlaceClassification classify_places(LogContext const & ctx);

SignVector sign_vector(LogContext const & ctx, PlaceClassification const & C, QPoly const & x);
/// Sign vector of every tracked element, computed once.
std::vector<SignVector> tracked_sign_vectors(LogContext const & ctx, PlaceClassification const & C);
/// Sign vector of prod t^{alpha_t}; only parities matter.
SignVector sign_of_exponents(std::vector<SignVector> const & tracked, ModVec const & alpha, size_t m);

/// sg(a, e): product of (-1)^{a_p} over PS \ PLS and of the entries of e.
int positive_sign_check(Divisor const & a, SignVector const & e, PlaceClassification const & C);

/// Whether 2 is a square in the completion at a dyadic place.
bool two_is_local_square(LogContext const & ctx, size_t place);

} // namespace posdiv

#endif
