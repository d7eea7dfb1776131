#include "posdiv/quadratic.hpp"

#include <algorithm>

namespace posdiv {

namespace {

mpz_class fmod(mpz_class const & x, mpz_class const & m)
{
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool squarefree(mpz_class n)
{
    n = abs(n);
    for (mpz_class p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0)
            return false;
        while (n % p == 0)
            n /= p;
    }
    return true;
}

constexpr long kMaxSteps = 5'000'000;

} // namespace

bool is_fundamental_discriminant(mpz_class const & D)
{
    if (D == 0 || D == 1)
        return false;
    mpz_class r4 = fmod(D, 4);
    if (r4 == 1)
        return squarefree(D);
    if (r4 != 0)
        return false;
    mpz_class m = D / 4;
    mpz_class m4 = fmod(m, 4);
    return (m4 == 2 || m4 == 3) && squarefree(m);
}

static ZPoly quadratic_poly(mpz_class const & D)
{
    int const delta = fmod(D, 4) == 1 ? 1 : 0;
    // theta^2 - delta theta - (D - delta)/4
    return ZPoly{-(D - delta) / 4, mpz_class(-delta), mpz_class(1)};
}

QuadraticEngine::QuadraticEngine(mpz_class D)
    : D_(std::move(D))
    , delta_(fmod(D_, 4) == 1 ? 1 : 0)
    , K_(quadratic_poly(D_))
{
    if (!is_fundamental_discriminant(D_))
        throw FieldError("not a fundamental discriminant: " + D_.get_str());
    mpz_class ad = abs(D_);
    mpz_sqrt(s_.get_mpz_t(), ad.get_mpz_t());
}

QPoly QuadraticEngine::element(mpz_class const & x, mpz_class const & y) const
{
    return QPoly{mpq_class(x), mpq_class(y)};
}

QPoly QuadraticEngine::from_sqrt_form(mpq_class const & u, mpq_class const & v) const
{
    // sqrt D = 2 theta - delta
    return QPoly{u - v * delta_, 2 * v};
}

QIdeal QuadraticEngine::normalize(QIdeal I) const
{
    if (I.a <= 0)
        throw FieldError("ideal norm must be positive");
    mpz_class two_a = 2 * I.a;
    mpz_class b = fmod(I.b, two_a);
    if (b > I.a)
        b -= two_a;
    if ((b * b - D_) % (4 * I.a) != 0)
        throw FieldError("invalid ideal (a, b)");
    return {I.a, b};
}

TrackedIdeal QuadraticEngine::unit_ideal() const
{
    return {normalize({1, delta_}), K_.one()};
}

TrackedIdeal QuadraticEngine::mul(TrackedIdeal const & x, TrackedIdeal const & y) const
{
    // generators a1 a2, a1 beta2, a2 beta1, beta1 beta2 in the basis (1, theta)
    auto beta = [&](QIdeal const & I) { return element((-I.b - delta_) / 2, 1); };
    QPoly b1 = beta(x.I), b2 = beta(y.I);
    std::vector<QPoly> gens = {K_.from_rational(mpq_class(x.I.a * y.I.a)),
                               K_.scale(b2, mpq_class(x.I.a)), K_.scale(b1, mpq_class(y.I.a)),
                               K_.mul(b1, b2)};
    // Hermite form: pivot row (m, n2) and a gcd n1 of the pure rational parts
    mpz_class x0 = gens[0][0].get_num(), y0 = gens[0][1].get_num();
    mpz_class n1 = 0;
    for (size_t i = 1; i < gens.size(); ++i) {
        mpz_class xi = gens[i][0].get_num(), yi = gens[i][1].get_num();
        if (yi == 0) {
            n1 = gcd(n1, xi);
            continue;
        }
        mpz_class g, u, v;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), y0.get_mpz_t(), yi.get_mpz_t());
        mpz_class nx = u * x0 + v * xi;
        mpz_class other = (yi / g) * x0 - (y0 / g) * xi;
        n1 = gcd(n1, other);
        x0 = nx;
        y0 = g;
    }
    if (y0 < 0) {
        y0 = -y0;
        x0 = -x0;
    }
    n1 = abs(n1);
    mpz_class const n2 = y0;
    mpz_class const m = fmod(x0, n1);
    if (n1 % n2 != 0 || m % n2 != 0)
        throw FieldError("ideal product: lattice is not an ideal multiple");
    mpz_class a3 = n1 / n2;
    mpz_class b3 = -2 * (m / n2) - delta_;
    TrackedIdeal out;
    out.I = normalize({a3, b3});
    if (!x.gamma.empty() && !y.gamma.empty())
        out.gamma = K_.scale(K_.mul(x.gamma, y.gamma), mpq_class(n2));
    return out;
}

mpz_class QuadraticEngine::choose_b(mpz_class const & target, mpz_class const & a) const
{
    mpz_class two_a = 2 * a;
    if (!real() || a > s_) {
        mpz_class b = fmod(target, two_a);
        if (b > a)
            b -= two_a;
        return b;
    }
    // s - 2a < b <= s
    return s_ - fmod(s_ - target, two_a);
}

TrackedIdeal QuadraticEngine::rho(TrackedIdeal const & x) const
{
    mpz_class const & a = x.I.a;
    mpz_class const & b = x.I.b;
    mpz_class c = (b * b - D_) / (4 * a);
    if (c == 0)
        throw FieldError("rho: degenerate form");
    TrackedIdeal out;
    mpz_class na = abs(c);
    out.I = {na, choose_b(-b, na)};
    if (!x.gamma.empty()) {
        QPoly beta = element((-b - delta_) / 2, 1);
        out.gamma = K_.scale(K_.mul(x.gamma, beta), 1 / mpq_class(c));
    }
    return out;
}

bool QuadraticEngine::is_reduced(QIdeal const & I) const
{
    if (!real()) {
        mpz_class c = (I.b * I.b - D_) / (4 * I.a);
        if (abs(I.b) > I.a || I.a > c)
            return false;
        if ((abs(I.b) == I.a || I.a == c) && I.b < 0)
            return false;
        return true;
    }
    // |sqrt D - 2a| < b < sqrt D
    return I.b >= 1 && I.b <= s_ && 2 * I.a - I.b <= s_ && 2 * I.a + I.b >= s_ + 1;
}

TrackedIdeal QuadraticEngine::reduce(TrackedIdeal x) const
{
    x.I = normalize(x.I);
    for (long step = 0; step < kMaxSteps; ++step) {
        if (!real()) {
            mpz_class c = (x.I.b * x.I.b - D_) / (4 * x.I.a);
            if (x.I.a < c || (x.I.a == c && x.I.b >= 0))
                return x;
        } else if (is_reduced(x.I)) {
            return x;
        }
        x = rho(x);
    }
    throw FieldError("reduction did not terminate");
}

TrackedIdeal QuadraticEngine::canonical(TrackedIdeal const & x) const
{
    TrackedIdeal r = reduce(x);
    if (!real())
        return r;
    TrackedIdeal best = r, cur = r;
    for (long step = 0; step < kMaxSteps; ++step) {
        cur = rho(cur);
        if (cur.I == r.I)
            return best;
        if (cur.I < best.I)
            best = cur;
    }
    throw FieldError("ideal cycle did not close");
}

std::optional<QPoly> QuadraticEngine::principal_generator(TrackedIdeal const & x) const
{
    TrackedIdeal r = reduce(x);
    if (!real())
        return r.I.a == 1 ? std::optional<QPoly>(r.gamma) : std::nullopt;
    TrackedIdeal cur = r;
    for (long step = 0; step < kMaxSteps; ++step) {
        if (cur.I.a == 1)
            return cur.gamma;
        cur = rho(cur);
        if (cur.I == r.I)
            return std::nullopt;
    }
    throw FieldError("ideal cycle did not close");
}

int QuadraticEngine::kronecker(mpz_class const & p) const
{
    if (p == 2) {
        mpz_class r = fmod(D_, 8);
        if (r == 1)
            return 1;
        if (r == 5)
            return -1;
        return 0;
    }
    return mpz_kronecker(D_.get_mpz_t(), p.get_mpz_t());
}

std::vector<QIdeal> QuadraticEngine::primes_above(mpz_class const & p) const
{
    std::vector<QIdeal> out;
    for (mpz_class b = 0; b < 2 * p; ++b) {
        if ((b * b - D_) % (4 * p) != 0)
            continue;
        QIdeal I = normalize({p, b});
        if (std::find(out.begin(), out.end(), I) == out.end())
            out.push_back(I);
    }
    std::sort(out.begin(), out.end(), [](QIdeal const & x, QIdeal const & y) { return x.b > y.b; });
    return out;
}

int QuadraticEngine::sign_at_positive_root(QPoly const & x) const
{
    // theta = (delta + sqrt D)/2 lies in ((delta + s)/2, (delta + s + 1)/2)
    RealRoot root{mpq_class(delta_ + s_, 2), mpq_class(delta_ + s_ + 1, 2)};
    return real_sign(K_.poly(), root, x);
}

QPoly QuadraticEngine::fundamental_unit() const
{
    if (!real())
        throw FieldError("fundamental unit requested for an imaginary field");
    TrackedIdeal start = reduce(unit_ideal());
    TrackedIdeal cur = start;
    for (long step = 0; step < kMaxSteps; ++step) {
        cur = rho(cur);
        if (cur.I == start.I)
            break;
    }
    if (!(cur.I == start.I))
        throw FieldError("principal cycle did not close");
    QPoly eta = K_.mul(cur.gamma, K_.inverse(start.gamma));
    if (abs(K_.norm(eta)) != 1)
        throw FieldError("principal cycle multiplier is not a unit");
    if (sign_at_positive_root(eta) < 0)
        eta = K_.neg(eta);
    if (sign_at_positive_root(K_.sub(eta, K_.one())) < 0)
        eta = K_.inverse(eta);
    if (sign_at_positive_root(K_.sub(eta, K_.one())) <= 0)
        throw FieldError("trivial unit from principal cycle");
    return eta;
}

QPoly QuadraticEngine::relation_witness(std::vector<QIdeal> const & primes, std::vector<long> const & exps) const
{
    TrackedIdeal t = unit_ideal();
    mpz_class denom = 1;
    for (size_t i = 0; i < primes.size(); ++i) {
        long e = exps[i];
        QIdeal P = e > 0 ? primes[i] : conjugate(primes[i]);
        for (long k = 0; k < std::abs(e); ++k) {
            t = reduce(mul(t, track(P)));
            if (e < 0)
                denom *= primes[i].a;
        }
    }
    auto g = principal_generator(t);
    if (!g)
        throw FieldError("relation is not principal");
    return K_.scale(*g, 1 / mpq_class(denom));
}

QuadraticClassGroup quadratic_class_group(QuadraticEngine const & eng,
                                          std::vector<std::pair<QIdeal, bool>> const & candidates)
{
    auto key = [&](QIdeal const & I) { return eng.canonical(TrackedIdeal{I, {}}).I; };
    auto mul = [&](QIdeal const & x, QIdeal const & y) {
        return eng.mul(TrackedIdeal{x, {}}, TrackedIdeal{y, {}}).I;
    };
    struct Entry
    {
        QIdeal rep;
        std::vector<long> exps;
    };
    std::map<QIdeal, Entry> H;
    QIdeal one = eng.unit_ideal().I;
    H[key(one)] = {key(one), {}};

    QuadraticClassGroup out;
    for (auto const & [P, forced] : candidates) {
        QIdeal cur = P;
        long k = 1;
        while (!H.count(key(cur))) {
            cur = mul(cur, P);
            ++k;
        }
        if (k == 1 && !forced)
            continue;
        size_t const idx = out.primes.size();
        out.primes.push_back(P);
        for (auto & [kk, e] : H)
            e.exps.resize(idx + 1, 0);
        std::vector<long> rel = H.at(key(cur)).exps;
        for (auto & x : rel)
            x = -x;
        rel[idx] += k;
        out.relations.push_back(rel);
        for (auto & r : out.relations)
            r.resize(idx + 1, 0);
        if (k > 1) {
            std::map<QIdeal, Entry> grown = H;
            QIdeal pj = P;
            for (long j = 1; j < k; ++j) {
                for (auto const & [kk, e] : H) {
                    QIdeal c = key(mul(e.rep, pj));
                    std::vector<long> v = e.exps;
                    v[idx] += j;
                    grown[c] = {c, v};
                }
                pj = mul(pj, P);
            }
            H = std::move(grown);
            out.order *= uint64_t(k);
        }
    }
    for (auto const & r : out.relations)
        out.witnesses.push_back(eng.relation_witness(out.primes, r));
    return out;
}

} // namespace posdiv
