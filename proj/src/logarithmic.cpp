#include "posdiv/logarithmic.hpp"

#include <algorithm>

namespace posdiv {

TwoAdic place_degree(FieldData const & F, size_t place, DyadicStructure const * ds, int eta, long deg_unit)
{
    FinitePlace const & P = F.places.at(place);
    if (!P.dyadic())
        return iwasawa_log(mpq_class(P.norm()), eta);
    if (!ds)
        throw LogError("place_degree: missing dyadic structure for " + P.label);
    TwoAdic best;
    bool found = false;
    for (auto const & g : ds->square_class_generators) {
        TwoAdic n = local_norm_2adic(P.local, g);
        TwoAdic d = -iwasawa_log(n, eta);
        if (d.is_zero())
            continue;
        // first achiever of the minimal valuation is the pinned value
        if (!found || d.valuation() < best.valuation()) {
            best = d;
            found = true;
        }
    }
    if (!found)
        throw LogError("place_degree: Log vanishes on all generators at " + P.label);
    return best * TwoAdic::from_integer(int64_t(deg_unit), eta);
}

TwoAdic local_log_valuation(LogContext const & ctx, size_t place, QPoly const & x)
{
    FinitePlace const & P = ctx.field().places.at(place);
    TwoAdic n = local_norm_2adic(P.local, x);
    if (n.precision() < ctx.eta)
        throw DyadicError(DyadicError::Kind::precision_exhausted,
                          "local norm at " + P.label + " known to " + std::to_string(n.precision()) + " bits only");
    TwoAdic lg = -iwasawa_log(n, ctx.eta);
    return TwoAdic::exact_quotient(lg, ctx.deg[place]);
}

TwoAdic log_valuation(LogContext const & ctx, size_t place, QPoly const & x)
{
    FieldData const & F = ctx.field();
    if (!F.places.at(place).dyadic())
        return TwoAdic::from_integer(place_valuation(F, place, x));
    return local_log_valuation(ctx, place, F.K->reduce(x));
}

std::vector<TwoAdic> log_divisor(LogContext const & ctx, QPoly const & x)
{
    std::vector<TwoAdic> d;
    for (size_t i = 0; i < ctx.num_places(); ++i)
        d.push_back(log_valuation(ctx, i, x));
    return d;
}

TwoAdic divisor_degree(LogContext const & ctx, Divisor const & d)
{
    TwoAdic s;
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0)
            s = s + TwoAdic::from_residue(d[i], ctx.bits) * ctx.deg[i];
    return s;
}

uint64_t degree_ratio(LogContext const & ctx, size_t place)
{
    return TwoAdic::exact_quotient(ctx.deg.at(place), ctx.deg.at(ctx.primitive)).residue(ctx.bits);
}

LogContext build_log_context(FieldData const & F, LogOptions const & opts)
{
    if (opts.eta < 16 || opts.eta > kMaxTwoAdicPrecision)
        throw LogError("precision must lie in [16, 64] bits");
    if (opts.deg_unit % 2 == 0)
        throw LogError("degree rescaling must be by an odd unit");
    LogContext ctx;
    ctx.F = &F;
    ctx.eta = opts.eta;
    ctx.bits = opts.eta - 8;
    ctx.deg_unit = opts.deg_unit;
    for (size_t i = 0; i < F.num_dyadic; ++i)
        ctx.dyadic.push_back(analyze_dyadic(F.places[i].local));
    for (size_t i = 0; i < F.places.size(); ++i)
        ctx.deg.push_back(place_degree(F, i, i < F.num_dyadic ? &ctx.dyadic[i] : nullptr, ctx.eta, opts.deg_unit));

    int vmin = 1 << 20;
    for (auto const & d : ctx.deg)
        vmin = std::min<int>(vmin, int(d.valuation()));
    // dyadic places come first in S, so they are preferred automatically
    for (size_t i = 0; i < ctx.deg.size(); ++i)
        if (ctx.deg[i].valuation() == vmin)
            ctx.primitive_candidates.push_back(i);
    int expected = 2;
    if (F.quadratic_disc && *F.quadratic_disc == 8)
        expected = 3;
    if (vmin < 2 || (F.quadratic_disc && vmin != expected))
        throw LogError("no primitive place in factor base (minimal v2(deg) = " + std::to_string(vmin) + ")");
    ctx.primitive = ctx.primitive_candidates[opts.primitive_choice % ctx.primitive_candidates.size()];
    ctx.primitive_valuation = vmin;

    ctx.vt.resize(F.tracked.size());
    ctx.dyadic_norms.resize(F.tracked.size());
    for (size_t t = 0; t < F.tracked.size(); ++t) {
        QPoly const x = F.K->reduce(F.tracked[t].value);
        for (size_t i = 0; i < F.places.size(); ++i) {
            if (i < F.num_dyadic) {
                ctx.dyadic_norms[t].push_back(local_norm_2adic(F.places[i].local, x));
                ctx.vt[t].push_back(local_log_valuation(ctx, i, x));
            } else {
                ctx.vt[t].push_back(TwoAdic::from_integer(F.valuations[t][i]));
            }
        }
    }
    return ctx;
}

namespace {

Divisor expand_basis(LogContext const & ctx, LogClassGroup const & G, ModVec const & y)
{
    uint64_t const mask = low_mask(ctx.bits);
    Divisor d(ctx.num_places(), 0);
    uint64_t bcoef = 0;
    for (size_t k = 0; k < G.basis_places.size(); ++k) {
        d[G.basis_places[k]] = y[k] & mask;
        bcoef -= y[k] * degree_ratio(ctx, G.basis_places[k]);
    }
    d[ctx.primitive] = bcoef & mask;
    return d;
}

} // namespace

LogClassGroup compute_log_class_group(LogContext const & ctx)
{
    FieldData const & F = ctx.field();
    LogClassGroup G;
    for (size_t i = 0; i < ctx.num_places(); ++i)
        if (i != ctx.primitive)
            G.basis_places.push_back(i);
    G.relations = Mat2(F.tracked.size(), G.basis_places.size(), ctx.bits);
    for (size_t t = 0; t < F.tracked.size(); ++t)
        for (size_t k = 0; k < G.basis_places.size(); ++k)
            G.relations.set(t, k, ctx.vt[t][G.basis_places[k]]);
    G.ck = cokernel(G.relations, true);
    if (G.ck.unbounded > 0)
        throw GrossAlarm("logarithmic class group is infinite at precision " + std::to_string(ctx.eta) + " (" +
                         std::to_string(G.ck.unbounded) + " free factor(s))");
    G.type = G.ck.type;
    G.exponents = G.ck.exponents;
    for (size_t k = 0; k < G.exponents.size(); ++k)
        G.generators.push_back(expand_basis(ctx, G, G.ck.generator(k)));
    for (size_t k = 0; k < G.exponents.size(); ++k) {
        Divisor d = G.generators[k];
        for (auto & x : d)
            x = (x << G.exponents[k]) & low_mask(ctx.bits);
        Decomposition dec = decompose_class(ctx, G, d);
        for (auto c : dec.coeffs)
            if (c != 0)
                throw LogError("order relation of a class group generator does not decompose trivially");
        G.order_elements.push_back(dec.alpha);
    }
    return G;
}

Decomposition decompose_class(LogContext const & ctx, LogClassGroup const & G, Divisor const & d)
{
    if (d.size() != ctx.num_places())
        throw LogError("decompose_class: divisor has wrong length");
    TwoAdic const deg = divisor_degree(ctx, d);
    if (!deg.is_zero() && deg.valuation() < ctx.bits - 2)
        throw LogError("decompose_class: divisor has nonzero degree " + deg.to_string());
    uint64_t const mask = low_mask(ctx.bits);
    ModVec y(G.basis_places.size());
    for (size_t k = 0; k < y.size(); ++k)
        y[k] = d[G.basis_places[k]] & mask;
    Decomposition out;
    out.coeffs = G.ck.coordinates(y);
    ModVec r = y;
    for (size_t j = 0; j < out.coeffs.size(); ++j) {
        ModVec g = G.ck.generator(j);
        for (size_t k = 0; k < r.size(); ++k)
            r[k] = (r[k] - out.coeffs[j] * g[k]) & mask;
    }
    Mat2 Rt(G.relations.cols(), G.relations.rows(), ctx.bits);
    for (size_t i = 0; i < G.relations.rows(); ++i)
        for (size_t k = 0; k < G.relations.cols(); ++k)
            Rt.set(k, i, G.relations(i, k));
    auto x = solve_mod(Rt, r);
    if (!x)
        throw LogError("decompose_class: divisor not in span of the factor base relations");
    out.alpha = *x;
    return out;
}

Divisor recompose(LogContext const & ctx, LogClassGroup const & G, Decomposition const & dec)
{
    uint64_t const mask = low_mask(ctx.bits);
    Divisor d(ctx.num_places(), 0);
    for (size_t j = 0; j < dec.coeffs.size(); ++j)
        for (size_t i = 0; i < d.size(); ++i)
            d[i] += dec.coeffs[j] * G.generators[j][i];
    for (size_t t = 0; t < dec.alpha.size(); ++t)
        for (size_t i = 0; i < d.size(); ++i)
            d[i] += dec.alpha[t] * ctx.vt[t][i].residue(ctx.bits);
    for (auto & x : d)
        x &= mask;
    return d;
}

AbelianGroupType compute_cl_prime(FieldData const & F)
{
    std::vector<std::vector<mpz_class>> rows;
    for (auto const & v : F.valuations) {
        std::vector<mpz_class> row;
        for (int64_t x : v)
            row.push_back(mpz_class(std::to_string(x)));
        rows.push_back(row);
    }
    for (size_t q = 0; q < F.num_dyadic; ++q) {
        std::vector<mpz_class> row(F.places.size(), 0);
        row[q] = 1;
        rows.push_back(row);
    }
    return integer_cokernel_type(rows, F.places.size()).two_part();
}

} // namespace posdiv
