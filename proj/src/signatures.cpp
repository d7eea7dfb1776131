#include "posdiv/signatures.hpp"

#include <algorithm>

namespace posdiv {

int sg_local_dyadic(LogContext const & ctx, size_t place, QPoly const & x)
{
    return epsilon(local_norm_2adic(ctx.field().places.at(place).local, x));
}

int sg_finite(LogContext const & ctx, size_t place, QPoly const & x)
{
    FieldData const & F = ctx.field();
    FinitePlace const & P = F.places.at(place);
    if (P.dyadic())
        return sg_local_dyadic(ctx, place, F.K->reduce(x));
    // epsilon(Np^{-v}) = epsilon(Np)^v
    int64_t const v = place_valuation(F, place, x);
    mpz_class const np = P.norm();
    return (v % 2 != 0 && np % 4 == 3) ? -1 : 1;
}

bool two_is_local_square(LogContext const & ctx, size_t place)
{
    return is_local_square(ctx.field().places.at(place).local, ctx.dyadic.at(place), QPoly{2});
}

PlaceClassification classify_places(LogContext const & ctx)
{
    FieldData const & F = ctx.field();
    PlaceClassification C;
    size_t const n = F.places.size();
    C.in_ps.assign(n, false);
    C.in_pls.assign(n, false);
    C.ps_not_pls.assign(n, false);
    C.real = size_t(F.r);
    for (size_t i = 0; i < n; ++i) {
        FinitePlace const & P = F.places[i];
        if (!P.dyadic()) {
            // i lies in F_p iff Np = 1 mod 4
            C.in_ps[i] = P.norm() % 4 == 3;
            C.ps_not_pls[i] = C.in_ps[i];
            continue;
        }
        DyadicStructure const & ds = ctx.dyadic[i];
        C.in_ps[i] = !is_local_square(P.local, ds, QPoly{-1});
        if (!C.in_ps[i])
            continue;
        // exceptional iff sg * (-1)^v~ is a nontrivial character on F_q^x
        bool exceptional = false;
        for (auto const & g : ds.square_class_generators) {
            int const s = sg_local_dyadic(ctx, i, g);
            TwoAdic const v = local_log_valuation(ctx, i, g);
            int const parity = v.is_zero() ? 0 : (v.valuation() == 0 ? 1 : 0);
            if (s * (parity ? -1 : 1) == -1) {
                exceptional = true;
                break;
            }
        }
        C.in_pls[i] = exceptional;
        C.ps_not_pls[i] = !exceptional;
        if (exceptional)
            C.pe.push_back(i);
    }
    std::stable_sort(C.pe.begin(), C.pe.end(),
                     [&](size_t a, size_t b) { return ctx.deg[a].valuation() < ctx.deg[b].valuation(); });
    return C;
}

SignVector sign_vector(LogContext const & ctx, PlaceClassification const & C, QPoly const & x)
{
    SignVector s;
    for (size_t q : C.pe)
        s.push_back(sg_finite(ctx, q, x));
    for (int r : real_signs(ctx.field(), x))
        s.push_back(r);
    return s;
}

std::vector<SignVector> tracked_sign_vectors(LogContext const & ctx, PlaceClassification const & C)
{
    FieldData const & F = ctx.field();
    std::vector<SignVector> out;
    for (size_t t = 0; t < F.tracked.size(); ++t) {
        SignVector s;
        for (size_t q : C.pe)
            s.push_back(epsilon(ctx.dyadic_norms[t][q]));
        for (int r : real_signs(F, F.tracked[t].value))
            s.push_back(r);
        out.push_back(s);
    }
    return out;
}

SignVector sign_of_exponents(std::vector<SignVector> const & tracked, ModVec const & alpha, size_t m)
{
    SignVector s(m, 1);
    for (size_t t = 0; t < alpha.size(); ++t)
        if (alpha[t] & 1)
            for (size_t i = 0; i < m; ++i)
                s[i] *= tracked[t][i];
    return s;
}

int positive_sign_check(Divisor const & a, SignVector const & e, PlaceClassification const & C)
{
    int s = 1;
    for (size_t i = 0; i < a.size() && i < C.ps_not_pls.size(); ++i)
        if (C.ps_not_pls[i] && (a[i] & 1))
            s = -s;
    for (int x : e)
        s *= x;
    return s;
}

} // namespace posdiv
