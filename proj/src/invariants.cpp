#include "posdiv/invariants.hpp"

#include <random>
#include <sstream>

namespace posdiv {

namespace {

int parity(TwoAdic const & v)
{
    if (v.is_zero())
        return 0;
    if (v.valuation() < 0)
        throw LogError("logarithmic valuation is not integral");
    return v.valuation() == 0 ? 1 : 0;
}

std::string describe(SUnitSample const & s, FieldData const & F)
{
    std::ostringstream os;
    os << (s.sign < 0 ? "-" : "") << "2^" << s.two_power;
    for (size_t t = 0; t < s.exponents.size(); ++t)
        if (s.exponents[t] != 0)
            os << " * " << F.tracked[t].label << "^" << s.exponents[t];
    return os.str();
}

void record(InvariantCheck & c, bool pass, SUnitSample const & s, FieldData const & F, std::string const & detail)
{
    ++c.samples;
    if (pass)
        return;
    if (c.failures++ == 0)
        c.first_failure = describe(s, F) + ": " + detail;
}

} // namespace

std::vector<SUnitSample> random_s_units(FieldData const & F, size_t count, uint64_t seed, int max_exponent,
                                        size_t max_factors)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> expo(-max_exponent, max_exponent);
    std::uniform_int_distribution<size_t> pick(0, F.tracked.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> two(-2, 2);
    std::vector<SUnitSample> out;
    while (out.size() < count) {
        SUnitSample s;
        s.exponents.assign(F.tracked.size(), 0);
        for (size_t k = 0; k < max_factors; ++k)
            s.exponents[pick(rng)] += expo(rng);
        s.sign = coin(rng) ? -1 : 1;
        s.two_power = two(rng);
        mpq_class c = s.sign;
        if (s.two_power >= 0)
            c *= mpq_class(mpz_class(1) << s.two_power);
        else
            c /= mpq_class(mpz_class(1) << -s.two_power);
        QPoly x = F.K->from_rational(c);
        for (size_t t = 0; t < F.tracked.size(); ++t)
            if (s.exponents[t] != 0)
                x = F.K->mul(x, F.K->pow(F.tracked[t].value, s.exponents[t]));
        s.value = x;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<InvariantCheck> check_invariants(LogContext const & ctx, PlaceClassification const & C,
                                             std::vector<SUnitSample> const & samples)
{
    FieldData const & F = ctx.field();
    InvariantCheck sum_check;
    sum_check.name = "log valuations sum to zero";
    InvariantCheck deg_check;
    deg_check.name = "principal divisors have degree zero";
    InvariantCheck product;
    product.name = "sign product formula";
    InvariantCheck ps_check;
    ps_check.name = "sign equals valuation parity on PS\\PLS";
    InvariantCheck off_ps;
    off_ps.name = "sign trivial outside PS";
    InvariantCheck positive;
    positive.name = "principal pairs are positive";
    int const tol = ctx.bits - 2;
    uint64_t const mask = low_mask(ctx.bits);

    for (auto const & s : samples) {
        std::vector<TwoAdic> const v = log_divisor(ctx, s.value);

        TwoAdic sum;
        for (size_t i = 0; i < v.size(); ++i)
            sum = sum + v[i] * ctx.deg[i];
        record(sum_check, sum.is_zero() || sum.valuation() >= tol, s, F, "sum = " + sum.to_string());

        Divisor d(v.size());
        for (size_t i = 0; i < v.size(); ++i)
            d[i] = v[i].residue(ctx.bits) & mask;
        TwoAdic const dg = divisor_degree(ctx, d);
        record(deg_check, dg.is_zero() || dg.valuation() >= tol, s, F, "deg = " + dg.to_string());

        std::vector<int> sg(F.places.size());
        int prod = 1;
        for (size_t i = 0; i < F.places.size(); ++i) {
            sg[i] = sg_finite(ctx, i, s.value);
            prod *= sg[i];
        }
        for (int r : real_signs(F, s.value))
            prod *= r;
        record(product, prod == 1, s, F, "product of local signs is -1");

        for (size_t i = 0; i < F.places.size(); ++i) {
            if (C.ps_not_pls[i]) {
                int const expect = parity(v[i]) ? -1 : 1;
                record(ps_check, sg[i] == expect, s, F, "mismatch at " + F.places[i].label);
            } else if (!C.in_ps[i]) {
                record(off_ps, sg[i] == 1, s, F, "sign -1 at " + F.places[i].label);
            }
        }

        record(positive, positive_sign_check(d, sign_vector(ctx, C, s.value), C) == 1, s, F,
               "sg(div~ x, sg x) = -1");
    }
    return {sum_check, deg_check, product, ps_check, off_ps, positive};
}

} // namespace posdiv
