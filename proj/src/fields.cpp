#include "posdiv/fields.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>

#include "posdiv/quadratic.hpp"

namespace posdiv {

namespace {

int const kDyadicBits = 256;
int const kAuxiliaryPrimes = 48;

mpz_class ipow(mpz_class const & p, unsigned long k)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), k);
    return r;
}

mpz_class next_prime(mpz_class const & p)
{
    mpz_class q;
    mpz_nextprime(q.get_mpz_t(), p.get_mpz_t());
    return q;
}

/// Digits of p-adic precision matching roughly kDyadicBits bits.
int odd_precision(mpz_class const & p)
{
    size_t const bits = mpz_sizeinbase(p.get_mpz_t(), 2);
    return int(kDyadicBits / (bits - 1)) + 4;
}

IngestError fail(IngestError::Kind k, std::string const & msg)
{
    return IngestError(k, msg);
}

mpz_class strip_primes(mpz_class z, std::set<mpz_class> const & primes)
{
    z = abs(z);
    for (auto const & p : primes)
        while (z != 0 && mpz_divisible_p(z.get_mpz_t(), p.get_mpz_t()))
            z /= p;
    return z;
}

/// x mod p at a root r of f mod p; nullopt if some denominator vanishes mod p.
std::optional<long> eval_mod(QPoly const & x, long r, long p)
{
    mpz_class acc = 0, P = p, R = r;
    for (size_t i = x.size(); i-- > 0;) {
        mpz_class den = x[i].get_den();
        mpz_class inv;
        if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()))
            return std::nullopt;
        acc = (acc * R + x[i].get_num() * inv) % P;
    }
    acc %= P;
    if (acc < 0)
        acc += P;
    return acc.get_si();
}

int legendre(long a, long p)
{
    mpz_class A = a, P = p;
    return mpz_legendre(A.get_mpz_t(), P.get_mpz_t());
}

/// Simple root of f modulo the odd prime p, if any.
std::optional<long> simple_root_mod(ZPoly const & f, long p)
{
    for (long r = 0; r < p; ++r) {
        mpz_class v = 0, d = 0;
        for (size_t i = f.size(); i-- > 0;) {
            d = (d * r + v) % p;
            v = (v * r + f[i]) % p;
        }
        if (v % p == 0 && d % p != 0)
            return r;
    }
    return std::nullopt;
}

size_t rank_real(std::vector<std::vector<double>> m)
{
    size_t rank = 0;
    size_t const cols = m.empty() ? 0 : m[0].size();
    double scale = 0;
    for (auto const & row : m)
        for (double x : row)
            scale = std::max(scale, std::abs(x));
    double const tol = 1e-7 * std::max(1.0, scale);
    for (size_t c = 0; c < cols && rank < m.size(); ++c) {
        size_t piv = rank;
        for (size_t i = rank; i < m.size(); ++i)
            if (std::abs(m[i][c]) > std::abs(m[piv][c]))
                piv = i;
        if (std::abs(m[piv][c]) <= tol)
            continue;
        std::swap(m[piv], m[rank]);
        for (size_t i = 0; i < m.size(); ++i)
            if (i != rank) {
                double t = m[i][c] / m[rank][c];
                for (size_t j = c; j < cols; ++j)
                    m[i][j] -= t * m[rank][j];
            }
        ++rank;
    }
    return rank;
}

mpq_class trace(QPoly const & x, ZPoly const & f)
{
    auto M = multiplication_matrix(x, f);
    mpq_class t = 0;
    for (size_t i = 0; i < M.size(); ++i)
        t += M[i][i];
    return t;
}

QPoly derivative(ZPoly const & f)
{
    QPoly d;
    for (size_t i = 1; i < f.size(); ++i)
        d.push_back(mpq_class(f[i] * long(i)));
    return d;
}

std::vector<std::vector<mpq_class>> invert(std::vector<std::vector<mpq_class>> a)
{
    size_t const n = a.size();
    std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c] == 0)
            ++piv;
        if (piv == n)
            throw FieldError("singular integral basis");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        mpq_class s = 1 / a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] *= s;
            inv[c][j] *= s;
        }
        for (size_t i = 0; i < n; ++i)
            if (i != c && a[i][c] != 0) {
                mpq_class t = a[i][c];
                for (size_t j = 0; j < n; ++j) {
                    a[i][j] -= t * a[c][j];
                    inv[i][j] -= t * inv[c][j];
                }
            }
    }
    return inv;
}

void check_local_factors(FieldData const & F)
{
    using K = IngestError::Kind;
    ZPoly const & f = F.K->poly();
    size_t const n = F.degree();
    size_t dyadic_degree = 0;
    ZPoly prod{1};
    int min_prec = 1 << 30;
    for (size_t i = 0; i < F.places.size(); ++i) {
        LocalFactor const & L = F.places[i].local;
        if ((i < F.num_dyadic) != (L.p == 2))
            throw fail(K::local_factor_mismatch, "dyadic places must come first");
        if (L.factor.empty() || L.factor.back() != 1 || L.factor.size() != size_t(L.e * L.f) + 1)
            throw fail(K::local_factor_mismatch, F.places[i].label + ": degree differs from e*f");
        if (!mpz_fits_ulong_p(L.p.get_mpz_t()))
            throw fail(K::local_factor_mismatch, F.places[i].label + ": prime too large");
        auto fac = factor_mod_p(L.factor, L.p.get_ui());
        if (fac.size() != 1 || fac[0].second != L.e || fac[0].first.size() != size_t(L.f) + 1)
            throw fail(K::local_factor_mismatch, F.places[i].label + ": reduction is not h^e with deg h = f");
        mpz_class const m = L.modulus();
        ZPoly rem;
        {
            // f mod (factor, p^precision) must vanish
            QPoly r = poly_rem(to_q(f), L.factor);
            for (auto const & c : r) {
                if (c.get_den() != 1 || !mpz_divisible_p(mpz_class(c.get_num()).get_mpz_t(), m.get_mpz_t()))
                    throw fail(K::local_factor_mismatch, F.places[i].label + ": does not divide the defining polynomial");
            }
        }
        if (L.p == 2) {
            dyadic_degree += L.factor.size() - 1;
            prod = poly_mul(prod, L.factor);
            min_prec = std::min(min_prec, L.precision);
        }
    }
    if (F.num_dyadic == 0 || dyadic_degree != n)
        throw fail(K::local_factor_mismatch, "dyadic places do not account for the full degree");
    mpz_class const m = ipow(2, static_cast<unsigned long>(min_prec));
    ZPoly diff = prod;
    for (size_t i = 0; i < f.size(); ++i)
        diff[i] -= f[i];
    for (auto const & c : diff)
        if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t()))
            throw fail(K::local_factor_mismatch, "product of dyadic factors differs from the defining polynomial");
}

void check_disc(FieldData const & F)
{
    using K = IngestError::Kind;
    ZPoly const & f = F.K->poly();
    size_t const n = F.degree();
    if (F.integral_basis.size() != n)
        throw fail(K::schema, "integral basis has wrong length");
    std::vector<std::vector<mpq_class>> T(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            T[i][j] = trace(F.K->mul(F.integral_basis[i], F.integral_basis[j]), f);
    mpq_class d = det(T);
    if (d != mpq_class(F.disc))
        throw fail(K::schema, "discriminant of the integral basis differs from disc");
    // the power basis discriminant must be disc times a square
    mpq_class pd = F.K->norm(derivative(f));
    if ((n * (n - 1) / 2) % 2)
        pd = -pd;
    mpq_class q = pd / d;
    if (q.get_den() != 1 || !mpz_perfect_square_p(q.get_num_mpz_t()))
        throw fail(K::schema, "polynomial discriminant is not disc times a square");
}

void check_signature(FieldData const & F)
{
    using K = IngestError::Kind;
    size_t const n = F.degree();
    if (F.r < 0 || F.c < 0 || size_t(F.r + 2 * F.c) != n)
        throw fail(K::schema, "signature does not match the degree");
    if (F.real_roots.size() != size_t(F.r))
        throw fail(K::schema, "number of real roots differs from r");
    ZPoly const & f = F.K->poly();
    auto sg = [&](mpq_class const & t) {
        mpq_class acc = 0;
        for (size_t i = f.size(); i-- > 0;)
            acc = acc * t + f[i];
        return sgn(acc);
    };
    for (size_t i = 0; i < F.real_roots.size(); ++i) {
        auto const & R = F.real_roots[i];
        if (!(R.lo < R.hi) || sg(R.lo) * sg(R.hi) >= 0)
            throw fail(K::schema, "real root interval does not isolate a sign change");
        for (size_t j = 0; j < i; ++j)
            if (!(F.real_roots[j].hi <= R.lo || R.hi <= F.real_roots[j].lo))
                throw fail(K::schema, "real root intervals overlap");
    }
    size_t real_count = 0;
    for (auto const & z : complex_roots(f))
        if (std::abs(z.im) < 1e-9L * std::max<long double>(1, std::abs(z.re)))
            ++real_count;
    if (real_count != size_t(F.r))
        throw fail(K::schema, "number of real roots differs from r");
}

/* Every tracked element must be an S-unit: denominators of x and 1/x over
 * the integral basis only involve primes under S, and at each such prime
 * the valuations at S account for the whole norm.  (With two or more places
 * above p outside S this last test is necessary but not sufficient.) */
void check_support(FieldData const & F)
{
    using K = IngestError::Kind;
    std::set<mpz_class> under;
    for (auto const & P : F.places)
        under.insert(P.local.p);
    for (size_t t = 0; t < F.tracked.size(); ++t) {
        auto const & T = F.tracked[t];
        K const kind = T.role == ElementRole::relation ? K::principality_witness_invalid : K::unit_rank_mismatch;
        if (F.K->is_zero(T.value))
            throw fail(kind, T.label + " is zero");
        for (QPoly const & y : {T.value, F.K->inverse(T.value)})
            for (auto const & c : to_integral_basis(F, y))
                if (strip_primes(c.get_den(), under) != 1)
                    throw fail(kind, T.label + " has support outside S");
        mpq_class const N = F.K->norm(T.value);
        if (strip_primes(N.get_num(), under) != 1 || strip_primes(N.get_den(), under) != 1)
            throw fail(kind, T.label + " has support outside S");
        for (auto const & p : under) {
            int64_t s = 0;
            for (size_t i = 0; i < F.places.size(); ++i)
                if (F.places[i].local.p == p)
                    s += int64_t(F.places[i].local.f) * F.valuations[t][i];
            if (s != padic_valuation(N, p))
                throw fail(kind, T.label + " has valuation outside S above " + p.get_str());
        }
        if (T.role == ElementRole::unit || T.role == ElementRole::torsion) {
            for (int64_t v : F.valuations[t])
                if (v != 0)
                    throw fail(kind, T.label + " is not a unit");
        }
        if (T.role == ElementRole::two_unit)
            for (size_t i = F.num_dyadic; i < F.places.size(); ++i)
                if (F.valuations[t][i] != 0)
                    throw fail(kind, T.label + " is not a 2-unit");
    }
    if (F.tracked.empty() || F.tracked[0].role != ElementRole::torsion)
        throw fail(K::unit_rank_mismatch, "missing torsion generator");
    if (F.K->is_zero(F.K->sub(F.K->pow(F.tracked[0].value, F.torsion_order), F.K->one())) == false)
        throw fail(K::unit_rank_mismatch, "torsion generator has the wrong order");
}

void check_rank(FieldData const & F)
{
    using K = IngestError::Kind;
    size_t const expect = F.unit_rank() + F.places.size();
    if (F.tracked.size() - 1 != expect)
        throw fail(K::unit_rank_mismatch, "expected " + std::to_string(expect) + " S-unit generators, got " +
                                              std::to_string(F.tracked.size() - 1));
    std::vector<ComplexApprox> croots;
    if (F.c > 0 && F.unit_rank() > size_t(F.r))
        for (auto const & z : complex_roots(F.K->poly()))
            if (z.im > 1e-9L)
                croots.push_back(z);
    std::vector<std::vector<double>> m;
    for (size_t t = 1; t < F.tracked.size(); ++t) {
        std::vector<double> row;
        QPoly const & x = F.tracked[t].value;
        for (size_t j = 0; j < F.unit_rank(); ++j) {
            if (j < size_t(F.r)) {
                row.push_back(real_log_abs(F.K->poly(), F.real_roots[j], x));
            } else {
                // complex places: floating evaluation, diagnostics quality
                auto z = croots.at(j - size_t(F.r));
                std::complex<long double> tz(z.re, z.im), acc = 0;
                for (size_t i = x.size(); i-- > 0;)
                    acc = acc * tz + std::complex<long double>(x[i].get_d(), 0);
                row.push_back(2.0 * double(std::log(std::abs(acc))));
            }
        }
        for (int64_t v : F.valuations[t])
            row.push_back(double(v));
        m.push_back(row);
    }
    if (rank_real(m) != expect)
        throw fail(K::unit_rank_mismatch, "S-unit generators are dependent");
}

/* No nontrivial product of generators (torsion included) may be a square:
 * F_2-independence of signs, valuations mod 2 and quadratic characters at
 * auxiliary degree-one primes. */
void check_two_saturation(FieldData const & F)
{
    using K = IngestError::Kind;
    std::set<mpz_class> excluded;
    for (auto const & P : F.places)
        excluded.insert(P.local.p);
    std::vector<std::vector<int>> rows(F.tracked.size());
    for (size_t t = 0; t < F.tracked.size(); ++t) {
        for (auto const & R : F.real_roots)
            rows[t].push_back(real_sign(F.K->poly(), R, F.tracked[t].value) < 0);
        for (int64_t v : F.valuations[t])
            rows[t].push_back(int(v & 1));
    }
    mpz_class p = 2;
    int used = 0;
    mpz_class const fdisc = F.disc;
    while (used < kAuxiliaryPrimes + int(F.tracked.size())) {
        p = next_prime(p);
        if (excluded.count(p) || mpz_divisible_p(fdisc.get_mpz_t(), p.get_mpz_t()) || p > 1000000)
            continue;
        long const pl = p.get_si();
        auto r = simple_root_mod(F.K->poly(), pl);
        if (!r)
            continue;
        std::vector<int> col;
        bool ok = true;
        for (auto const & T : F.tracked) {
            auto v = eval_mod(T.value, *r, pl);
            if (!v || *v == 0) {
                ok = false;
                break;
            }
            col.push_back(legendre(*v, pl) < 0);
        }
        if (!ok)
            continue;
        for (size_t t = 0; t < F.tracked.size(); ++t)
            rows[t].push_back(col[t]);
        ++used;
    }
    if (f2_rank(rows) != F.tracked.size())
        throw fail(K::unit_rank_mismatch, "S-unit generators are not 2-saturated");
}

} // namespace

std::string IngestError::name(Kind k)
{
    switch (k) {
    case Kind::schema:
        return "schema";
    case Kind::principality_witness_invalid:
        return "principality_witness_invalid";
    case Kind::unit_rank_mismatch:
        return "unit_rank_mismatch";
    case Kind::local_factor_mismatch:
        return "local_factor_mismatch";
    case Kind::relation_index_mismatch:
        return "relation_index_mismatch";
    }
    return "ingestion error";
}

mpz_class FinitePlace::norm() const
{
    return ipow(local.p, static_cast<unsigned long>(local.f));
}

std::vector<mpq_class> to_integral_basis(FieldData const & F, QPoly const & x)
{
    size_t const n = F.degree();
    // columns of B are the basis elements in power coordinates
    std::vector<std::vector<mpq_class>> B(n, std::vector<mpq_class>(n));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < F.integral_basis[j].size() && i < n; ++i)
            B[i][j] = F.integral_basis[j][i];
    auto Binv = invert(B);
    QPoly y = F.K->reduce(x);
    std::vector<mpq_class> c(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < y.size(); ++k)
            c[i] += Binv[i][k] * y[k];
    return c;
}

QPoly from_integral_basis(FieldData const & F, std::vector<mpq_class> const & coords)
{
    if (coords.size() != F.degree())
        throw FieldError("coordinate vector has wrong length");
    QPoly x;
    for (size_t j = 0; j < coords.size(); ++j)
        x = F.K->add(x, F.K->scale(F.integral_basis[j], coords[j]));
    return x;
}

TwoAdic local_norm_2adic(LocalFactor const & L, QPoly const & x, int bits)
{
    if (L.p != 2)
        throw FieldError("local_norm_2adic at a non-dyadic place");
    // clear denominators so the determinant is accurate modulo 2^precision
    QPoly y = poly_rem(x, L.factor);
    mpz_class D = 1;
    for (auto const & c : y)
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
    for (auto & c : y)
        c *= D;
    mpq_class N = local_norm(L, y);
    if (N == 0)
        throw FieldError("local norm vanishes at working precision");
    int64_t const v = v2(N);
    int64_t const rel = int64_t(L.precision) - v;
    if (rel < 1)
        throw FieldError("local norm below working precision");
    mpz_class Dd = ipow(D, static_cast<unsigned long>(L.factor.size() - 1));
    return TwoAdic::from_rational(N / mpq_class(Dd), int(std::min<int64_t>(bits, rel)));
}

TwoAdic local_norm_2adic(FieldData const & F, size_t place, QPoly const & x, int bits)
{
    return local_norm_2adic(F.places.at(place).local, F.K->reduce(x), bits);
}

int64_t place_valuation(FieldData const & F, size_t place, QPoly const & x)
{
    return local_valuation(F.places.at(place).local, F.K->reduce(x));
}

std::vector<int> real_signs(FieldData const & F, QPoly const & x)
{
    std::vector<int> s;
    for (auto const & R : F.real_roots)
        s.push_back(real_sign(F.K->poly(), R, x));
    return s;
}

void verify_field(FieldData & F, std::optional<mpz_class> const & class_number)
{
    using K = IngestError::Kind;
    if (!F.K)
        throw fail(K::schema, "missing field");
    check_signature(F);
    check_disc(F);
    check_local_factors(F);
    F.valuations.assign(F.tracked.size(), std::vector<int64_t>(F.places.size(), 0));
    for (size_t t = 0; t < F.tracked.size(); ++t)
        for (size_t i = 0; i < F.places.size(); ++i) {
            try {
                F.valuations[t][i] = place_valuation(F, i, F.tracked[t].value);
            } catch (FieldError const & e) {
                throw fail(K::local_factor_mismatch, F.tracked[t].label + " at " + F.places[i].label + ": " + e.what());
            }
        }
    // (p, generator) must cut out exactly the place among those above p
    for (size_t i = 0; i < F.places.size(); ++i) {
        auto const & P = F.places[i];
        if (F.K->is_zero(P.generator))
            continue;
        for (size_t j = 0; j < F.places.size(); ++j) {
            if (F.places[j].local.p != P.local.p)
                continue;
            int64_t const v = std::min<int64_t>(F.places[j].local.e, place_valuation(F, j, P.generator));
            if (v != (i == j ? 1 : 0))
                throw fail(K::local_factor_mismatch, P.label + ": generators do not match the local factor");
        }
    }
    check_support(F);
    check_rank(F);
    check_two_saturation(F);
    std::vector<std::vector<mpz_class>> rows;
    for (auto const & v : F.valuations) {
        std::vector<mpz_class> row;
        for (int64_t x : v)
            row.push_back(mpz_class(std::to_string(x)));
        rows.push_back(row);
    }
    AbelianGroupType cl;
    try {
        cl = integer_cokernel_type(rows, F.places.size());
    } catch (LinalgError const &) {
        throw fail(K::relation_index_mismatch, "relations do not have full rank");
    }
    if (class_number) {
        mpz_class h = *class_number;
        mpz_class h2 = 1;
        while (h % 2 == 0) {
            h /= 2;
            h2 *= 2;
        }
        if (mpz_class(std::to_string(cl.two_part().order())) != h2)
            throw fail(K::relation_index_mismatch, "2-part of Z^S/relations is " + cl.two_part().to_string() +
                                                       ", class number has 2-part " + h2.get_str());
    }
    F.class_group = cl;
}

FieldData quadratic_field(mpz_class const & D, QuadraticOptions const & opts)
{
    if (!is_fundamental_discriminant(D))
        throw FieldError("not a fundamental discriminant: " + D.get_str());
    QuadraticEngine eng(D);
    FieldData F;
    F.id = "Q(sqrt(" + D.get_str() + "))";
    F.K = std::make_shared<NumberField const>(eng.field());
    F.disc = D;
    F.quadratic_disc = D;
    F.integral_basis = {QPoly{1}, QPoly{0, 1}};
    int const delta = eng.delta();
    mpz_class const s = eng.isqrt_disc();
    if (D > 0) {
        F.r = 2;
        F.c = 0;
        F.real_roots.push_back({mpq_class(delta + s, 2), mpq_class(delta + s + 1, 2)});
        F.real_roots.push_back({mpq_class(delta - s - 1, 2), mpq_class(delta - s, 2)});
        for (auto & R : F.real_roots) {
            R.lo.canonicalize();
            R.hi.canonicalize();
        }
    } else {
        F.r = 0;
        F.c = 1;
    }
    ZPoly const & f = eng.field().poly();

    auto make_place = [&](QIdeal const & I, mpz_class const & p) {
        FinitePlace P;
        P.local.p = p;
        int const prec = p == 2 ? kDyadicBits : odd_precision(p);
        P.local.precision = prec;
        mpz_class const r = (I.b + delta) / 2; // theta = r mod P
        P.generator = eng.element(-r, 1);
        if (eng.kronecker(p) == 0) {
            P.local.e = 2;
            P.local.f = 1;
            P.local.factor = f;
        } else {
            P.local.e = 1;
            P.local.f = 1;
            mpz_class r0 = r % p;
            if (r0 < 0)
                r0 += p;
            P.local.factor = hensel_lift(f, ZPoly{-r0, 1}, p, prec);
        }
        return P;
    };

    // candidate primes: dyadic (forced), odd up to the reduction bound, and
    // primitive-degree primes when needed
    mpz_class const bound = D > 0 ? mpz_class(sqrt(D) / 2 + 1) : mpz_class(sqrt(abs(D) / 3) + 1);
    int need_primitive = opts.extra_primitive_primes;
    mpz_class const D64 = ((D % 64) + 64) % 64;
    if (D64 == 8 && D != 8)
        ++need_primitive;
    std::vector<std::pair<QIdeal, bool>> candidates;
    for (auto const & P : eng.primes_above(2))
        candidates.push_back({P, true});
    for (mpz_class p = 3; p <= bound || need_primitive > 0; p = next_prime(p)) {
        auto ps = eng.primes_above(p);
        bool primitive = false;
        mpz_class const p8 = p % 8;
        if (need_primitive > 0 && !ps.empty() && (p8 == 3 || p8 == 5)) {
            primitive = true;
            --need_primitive;
        }
        if (!ps.empty() && (p <= bound || primitive))
            candidates.push_back({ps.front(), primitive});
    }
    QuadraticClassGroup cg = quadratic_class_group(eng, candidates);

    bool const inert2 = eng.kronecker(2) == -1;
    if (inert2) {
        FinitePlace P;
        P.local = LocalFactor{2, 1, 2, f, kDyadicBits};
        P.label = "q1";
        F.places.push_back(P);
    }
    int dyadic_count = inert2 ? 1 : 0;
    for (auto const & I : cg.primes) {
        mpz_class p = I.a; // prime ideals here have norm p
        if (!mpz_probab_prime_p(p.get_mpz_t(), 30))
            throw FieldError("unexpected non-prime norm in factor base");
        FinitePlace P = make_place(I, p);
        if (p == 2)
            P.label = "q" + std::to_string(++dyadic_count);
        else
            P.label = "p" + p.get_str() + (eng.kronecker(p) == 1 ? "(" + I.b.get_str() + ")" : "");
        F.places.push_back(P);
    }
    F.num_dyadic = size_t(dyadic_count);

    // torsion
    TrackedElement tor;
    tor.role = ElementRole::torsion;
    if (D == -4) {
        F.torsion_order = 4;
        tor.value = eng.element(0, 1);
        tor.label = "i";
    } else if (D == -3) {
        F.torsion_order = 6;
        tor.value = eng.element(0, 1);
        tor.label = "zeta6";
    } else {
        F.torsion_order = 2;
        tor.value = QPoly{-1};
        tor.label = "-1";
    }
    F.tracked.push_back(tor);
    if (D > 0)
        F.tracked.push_back({eng.fundamental_unit(), ElementRole::unit, "eps"});
    if (inert2)
        F.tracked.push_back({QPoly{2}, ElementRole::two_unit, "2"});
    for (size_t i = 0; i < cg.witnesses.size(); ++i) {
        bool dyadic_only = true;
        for (size_t j = 0; j < cg.primes.size(); ++j)
            if (cg.relations[i][j] != 0 && cg.primes[j].a != 2)
                dyadic_only = false;
        F.tracked.push_back({cg.witnesses[i], dyadic_only ? ElementRole::two_unit : ElementRole::relation,
                             "w" + std::to_string(i + 1)});
    }
    mpz_class h = 1;
    {
        // full class number from the relation lattice over primes that generate Cl
        std::vector<std::vector<mpz_class>> rows;
        for (auto const & r : cg.relations) {
            std::vector<mpz_class> row;
            for (long x : r)
                row.push_back(x);
            rows.push_back(row);
        }
        h = mpz_class(std::to_string(integer_cokernel_type(rows, cg.primes.size()).order()));
    }
    verify_field(F, h);
    return F;
}

} // namespace posdiv
