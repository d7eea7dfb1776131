#include "posdiv/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace posdiv {

/* ---- polynomials ---- */

void trim(ZPoly & a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

void trim(QPoly & a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

QPoly to_q(ZPoly const & a)
{
    return QPoly(a.begin(), a.end());
}

QPoly poly_mul(QPoly const & a, QPoly const & b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

ZPoly poly_mul(ZPoly const & a, ZPoly const & b)
{
    if (a.empty() || b.empty())
        return {};
    ZPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

QPoly poly_rem(QPoly a, ZPoly const & g)
{
    size_t const d = g.size() - 1;
    trim(a);
    while (a.size() > d) {
        mpq_class lead = a.back();
        size_t shift = a.size() - 1 - d;
        for (size_t i = 0; i <= d; ++i)
            a[shift + i] -= lead * g[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

ZPoly poly_mod_coeffs(ZPoly a, mpz_class const & m)
{
    for (auto & c : a)
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    trim(a);
    return a;
}

std::string poly_to_string(ZPoly const & a)
{
    std::ostringstream os;
    bool first = true;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0)
            continue;
        mpz_class c = a[i];
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        c = abs(c);
        if (c != 1 || i == 0)
            os << c;
        if (i > 0)
            os << "x" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return first ? "0" : os.str();
}

mpq_class det(std::vector<std::vector<mpq_class>> m)
{
    size_t const n = m.size();
    mpq_class d = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && m[p][k] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != k) {
            std::swap(m[p], m[k]);
            d = -d;
        }
        d *= m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0)
                continue;
            mpq_class q = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j)
                m[i][j] -= q * m[k][j];
        }
    }
    return d;
}

std::vector<std::vector<mpq_class>> multiplication_matrix(QPoly const & x, ZPoly const & g)
{
    size_t const d = g.size() - 1;
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d));
    QPoly cur = poly_rem(x, g);
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < d; ++i)
            m[i][j] = i < cur.size() ? cur[i] : mpq_class(0);
        cur.insert(cur.begin(), mpq_class(0));
        cur = poly_rem(cur, g);
    }
    return m;
}

mpq_class relative_norm(QPoly const & x, ZPoly const & g)
{
    return det(multiplication_matrix(x, g));
}

/* ---- F_p polynomial arithmetic (small p) ---- */

namespace {

using FpPoly = std::vector<long>;

void fp_trim(FpPoly & a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

FpPoly fp_from(ZPoly const & a, long p)
{
    FpPoly r;
    for (auto const & c : a) {
        mpz_class m;
        mpz_fdiv_r_ui(m.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
        r.push_back(long(m.get_si()));
    }
    fp_trim(r);
    return r;
}

long fp_inv(long a, long p)
{
    long r = 1, b = a % p, e = p - 2;
    if (b < 0)
        b += p;
    while (e > 0) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

FpPoly fp_mul(FpPoly const & a, FpPoly const & b, long p)
{
    if (a.empty() || b.empty())
        return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    fp_trim(r);
    return r;
}

FpPoly fp_sub(FpPoly a, FpPoly const & b, long p)
{
    a.resize(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < b.size(); ++i)
        a[i] = ((a[i] - b[i]) % p + p) % p;
    fp_trim(a);
    return a;
}

void fp_divmod(FpPoly a, FpPoly const & b, long p, FpPoly & q, FpPoly & r)
{
    fp_trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    long inv = fp_inv(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        long c = a.back() * inv % p;
        size_t s = a.size() - b.size();
        q[s] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[s + i] = ((a[s + i] - c * b[i]) % p + p) % p;
        fp_trim(a);
    }
    fp_trim(q);
    r = a;
}

/* extended gcd: s a + t b = 1 for coprime a, b */
void fp_bezout(FpPoly const & a, FpPoly const & b, long p, FpPoly & s, FpPoly & t)
{
    FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        FpPoly q, r;
        fp_divmod(r0, r1, p, q, r);
        r0 = r1;
        r1 = r;
        FpPoly ns = fp_sub(s0, fp_mul(q, s1, p), p);
        FpPoly nt = fp_sub(t0, fp_mul(q, t1, p), p);
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if (r0.size() != 1)
        throw FieldError("hensel_lift: factors are not coprime modulo p");
    long inv = fp_inv(r0[0], p);
    for (auto & c : s0)
        c = c * inv % p;
    for (auto & c : t0)
        c = c * inv % p;
    s = s0;
    t = t0;
}

ZPoly zp_from(FpPoly const & a)
{
    ZPoly r;
    for (long c : a)
        r.emplace_back(c);
    return r;
}

/* exact division of integer polynomials over Z/m (monic divisor) */
ZPoly z_divmod_monic(ZPoly a, ZPoly const & b, ZPoly & rem)
{
    trim(a);
    size_t const d = b.size() - 1;
    ZPoly q(a.size() > d ? a.size() - d : 0);
    while (a.size() > d) {
        mpz_class c = a.back();
        size_t s = a.size() - 1 - d;
        q[s] = c;
        for (size_t i = 0; i <= d; ++i)
            a[s + i] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    rem = a;
    return q;
}

} // namespace

ZPoly hensel_lift(ZPoly const & f, ZPoly const & g0, mpz_class const & p, int k)
{
    if (!p.fits_slong_p())
        throw FieldError("hensel_lift: prime too large");
    long const pl = p.get_si();
    FpPoly gbar = fp_from(g0, pl);
    FpPoly fbar = fp_from(f, pl);
    FpPoly hbar, rbar;
    fp_divmod(fbar, gbar, pl, hbar, rbar);
    if (!rbar.empty())
        throw FieldError("hensel_lift: factor does not divide f modulo p");
    FpPoly s, t;
    fp_bezout(gbar, hbar, pl, s, t); // s g + t h = 1
    ZPoly g = zp_from(gbar), h = zp_from(hbar);
    mpz_class pj = p;
    for (int j = 1; j < k; ++j) {
        ZPoly diff = f;
        ZPoly gh = poly_mul(g, h);
        diff.resize(std::max(diff.size(), gh.size()));
        for (size_t i = 0; i < gh.size(); ++i)
            diff[i] -= gh[i];
        for (auto & c : diff) {
            if (!mpz_divisible_p(c.get_mpz_t(), pj.get_mpz_t()))
                throw FieldError("hensel_lift: lifting invariant broken");
            c /= pj;
        }
        FpPoly e = fp_from(diff, pl);
        // dg = (e t) mod g, dh = (e - h dg) / g
        FpPoly q, dg, dh, r;
        fp_divmod(fp_mul(e, t, pl), gbar, pl, q, dg);
        fp_divmod(fp_sub(e, fp_mul(hbar, dg, pl), pl), gbar, pl, dh, r);
        if (!r.empty())
            throw FieldError("hensel_lift: correction not exact");
        ZPoly zdg = zp_from(dg), zdh = zp_from(dh);
        g.resize(std::max(g.size(), zdg.size()));
        h.resize(std::max(h.size(), zdh.size()));
        for (size_t i = 0; i < zdg.size(); ++i)
            g[i] += pj * zdg[i];
        for (size_t i = 0; i < zdh.size(); ++i)
            h[i] += pj * zdh[i];
        pj *= p;
    }
    return poly_mod_coeffs(g, pj);
}

bool irreducible_mod_p(ZPoly const & f, unsigned long p)
{
    FpPoly a = fp_from(f, long(p));
    size_t const d = a.empty() ? 0 : a.size() - 1;
    if (d == 0)
        return false;
    // trial division by all monic polynomials of degree <= d/2
    for (size_t k = 1; 2 * k <= d; ++k) {
        size_t count = 1;
        for (size_t i = 0; i < k; ++i)
            count *= p;
        for (size_t code = 0; code < count; ++code) {
            FpPoly g(k + 1, 0);
            size_t c = code;
            for (size_t i = 0; i < k; ++i) {
                g[i] = long(c % p);
                c /= p;
            }
            g[k] = 1;
            FpPoly q, r;
            fp_divmod(a, g, long(p), q, r);
            if (r.empty())
                return false;
        }
    }
    return true;
}

std::vector<std::pair<ZPoly, int>> factor_mod_p(ZPoly const & f, unsigned long p)
{
    FpPoly a = fp_from(f, long(p));
    std::vector<std::pair<ZPoly, int>> out;
    size_t const d = a.empty() ? 0 : a.size() - 1;
    for (size_t k = 1; k <= d && a.size() > 1; ++k) {
        size_t count = 1;
        for (size_t i = 0; i < k; ++i)
            count *= p;
        for (size_t code = 0; code < count && a.size() > 1; ++code) {
            FpPoly g(k + 1, 0);
            size_t c = code;
            for (size_t i = 0; i < k; ++i) {
                g[i] = long(c % p);
                c /= p;
            }
            g[k] = 1;
            if (!irreducible_mod_p(zp_from(g), p))
                continue;
            int mult = 0;
            for (;;) {
                FpPoly q, r;
                fp_divmod(a, g, long(p), q, r);
                if (!r.empty())
                    break;
                a = q;
                ++mult;
            }
            if (mult)
                out.emplace_back(zp_from(g), mult);
        }
    }
    return out;
}

/* ---- number field ---- */

NumberField::NumberField(ZPoly f)
    : f_(std::move(f))
{
    trim(f_);
    if (f_.size() < 2 || f_.back() != 1)
        throw FieldError("defining polynomial must be monic of degree >= 1");
    n_ = f_.size() - 1;
}

QPoly NumberField::reduce(QPoly a) const
{
    a = poly_rem(std::move(a), f_);
    a.resize(n_);
    return a;
}

QPoly NumberField::one() const
{
    return from_rational(1);
}

QPoly NumberField::from_rational(mpq_class const & q) const
{
    QPoly r(n_);
    r[0] = q;
    return r;
}

QPoly NumberField::generator() const
{
    QPoly r(n_);
    if (n_ == 1)
        r[0] = -mpq_class(f_[0]);
    else
        r[1] = 1;
    return r;
}

QPoly NumberField::add(QPoly const & a, QPoly const & b) const
{
    QPoly r(n_);
    for (size_t i = 0; i < n_; ++i)
        r[i] = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    return r;
}

QPoly NumberField::sub(QPoly const & a, QPoly const & b) const
{
    return add(a, neg(b));
}

QPoly NumberField::neg(QPoly const & a) const
{
    return scale(a, -1);
}

QPoly NumberField::scale(QPoly const & a, mpq_class const & s) const
{
    QPoly r(n_);
    for (size_t i = 0; i < n_ && i < a.size(); ++i)
        r[i] = a[i] * s;
    return r;
}

QPoly NumberField::mul(QPoly const & a, QPoly const & b) const
{
    QPoly x = a, y = b;
    trim(x);
    trim(y);
    return reduce(poly_mul(x, y));
}

QPoly NumberField::pow(QPoly const & a, long k) const
{
    QPoly base = k < 0 ? inverse(a) : a;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    QPoly r = one();
    while (e) {
        if (e & 1)
            r = mul(r, base);
        e >>= 1;
        if (e)
            base = mul(base, base);
    }
    return r;
}

QPoly NumberField::inverse(QPoly const & a) const
{
    if (is_zero(a))
        throw FieldError("inverse of zero");
    // solve M y = e_0 with M the multiplication matrix of a
    auto m = multiplication_matrix(a, f_);
    size_t const n = n_;
    std::vector<mpq_class> rhs(n);
    rhs[0] = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && m[p][k] == 0)
            ++p;
        if (p == n)
            throw FieldError("inverse: singular multiplication matrix (reducible polynomial?)");
        std::swap(m[p], m[k]);
        std::swap(rhs[p], rhs[k]);
        for (size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0)
                continue;
            mpq_class q = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j)
                m[i][j] -= q * m[k][j];
            rhs[i] -= q * rhs[k];
        }
    }
    QPoly y(n);
    for (size_t i = 0; i < n; ++i)
        y[i] = rhs[i] / m[i][i];
    return y;
}

bool NumberField::is_zero(QPoly const & a) const
{
    return std::all_of(a.begin(), a.end(), [](mpq_class const & c) { return c == 0; });
}

bool NumberField::equal(QPoly const & a, QPoly const & b) const
{
    return is_zero(sub(a, b));
}

mpq_class NumberField::norm(QPoly const & a) const
{
    return relative_norm(a, f_);
}

/* ---- local data ---- */

mpz_class LocalFactor::modulus() const
{
    mpz_class m;
    mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(precision));
    return m;
}

mpq_class local_norm(LocalFactor const & P, QPoly const & x)
{
    return relative_norm(x, P.factor);
}

int64_t padic_valuation(mpq_class const & q, mpz_class const & p)
{
    if (q == 0)
        throw FieldError("valuation of zero");
    auto val = [&](mpz_class z) {
        int64_t v = 0;
        z = abs(z);
        while (mpz_divisible_p(z.get_mpz_t(), p.get_mpz_t())) {
            z /= p;
            ++v;
        }
        return v;
    };
    return val(q.get_num()) - val(q.get_den());
}

int64_t local_valuation(LocalFactor const & P, QPoly const & x)
{
    mpq_class nrm = local_norm(P, x);
    if (nrm == 0)
        throw FieldError("local valuation: element vanishes in the local factor");
    int64_t v = padic_valuation(nrm, P.p);
    // the factor is exact only modulo p^precision; demand a safety margin
    if (v >= int64_t(P.f) * (P.precision / 2))
        throw FieldError("local valuation exceeds certified precision");
    if (v % P.f != 0)
        throw FieldError("local norm valuation not divisible by residue degree");
    return v / P.f;
}

/* ---- real roots ---- */

namespace {

struct Interval
{
    mpq_class lo, hi;
};

Interval imul(Interval const & a, Interval const & b)
{
    mpq_class c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval eval_interval(QPoly const & x, Interval const & t)
{
    Interval acc{0, 0};
    for (size_t i = x.size(); i-- > 0;) {
        acc = imul(acc, t);
        acc.lo += x[i];
        acc.hi += x[i];
    }
    return acc;
}

int sgn_eval(ZPoly const & f, mpq_class const & t)
{
    mpq_class acc = 0;
    for (size_t i = f.size(); i-- > 0;)
        acc = acc * t + f[i];
    return sgn(acc);
}

void bisect(ZPoly const & f, RealRoot & r)
{
    mpq_class mid = (r.lo + r.hi) / 2;
    int sm = sgn_eval(f, mid);
    if (sm == 0) {
        r.lo = r.hi = mid;
        return;
    }
    if (sm == sgn_eval(f, r.lo))
        r.lo = mid;
    else
        r.hi = mid;
}

} // namespace

int real_sign(ZPoly const & f, RealRoot root, QPoly const & x)
{
    QPoly y = x;
    trim(y);
    if (y.empty())
        throw FieldError("real_sign of zero");
    if (sgn_eval(f, root.lo) * sgn_eval(f, root.hi) > 0)
        throw FieldError("real root interval does not isolate a sign change");
    for (int it = 0; it < 20000; ++it) {
        Interval v = eval_interval(y, {root.lo, root.hi});
        if (v.lo > 0)
            return 1;
        if (v.hi < 0)
            return -1;
        if (root.lo == root.hi)
            break;
        bisect(f, root);
    }
    throw FieldError("real_sign: could not separate value from zero");
}

long double real_value(ZPoly const & f, RealRoot root, QPoly const & x)
{
    for (int it = 0; it < 80 && root.lo != root.hi; ++it)
        bisect(f, root);
    long double t = mpq_class((root.lo + root.hi) / 2).get_d();
    long double acc = 0;
    for (size_t i = x.size(); i-- > 0;)
        acc = acc * t + x[i].get_d();
    return acc;
}

double real_log_abs(ZPoly const & f, RealRoot root, QPoly const & x)
{
    QPoly y = x;
    trim(y);
    if (y.empty())
        throw FieldError("real_log_abs of zero");
    for (int it = 0; it < 20000; ++it) {
        Interval v = eval_interval(y, {root.lo, root.hi});
        bool const separated = v.lo > 0 || v.hi < 0;
        if (separated || root.lo == root.hi) {
            mpq_class a = abs(v.lo), b = abs(v.hi);
            mpq_class lo = a < b ? a : b, hi = a < b ? b : a;
            // relative width below 2^-40 is plenty for rank decisions
            if (root.lo == root.hi || (hi - lo) * (mpz_class(1) << 40) <= lo) {
                mpq_class mid = (lo + hi) / 2;
                long en, ed;
                double mn = mpz_get_d_2exp(&en, mid.get_num_mpz_t());
                double md = mpz_get_d_2exp(&ed, mid.get_den_mpz_t());
                return std::log(mn / md) + double(en - ed) * std::log(2.0);
            }
        }
        bisect(f, root);
    }
    throw FieldError("real_log_abs: no convergence");
}

std::vector<ComplexApprox> complex_roots(ZPoly const & f)
{
    using C = std::complex<long double>;
    size_t const n = f.size() - 1;
    std::vector<C> z(n);
    for (size_t i = 0; i < n; ++i)
        z[i] = std::pow(C(0.4L, 0.9L), int(i));
    auto ev = [&](C t) {
        C acc = 0;
        for (size_t i = f.size(); i-- > 0;)
            acc = acc * t + C(f[i].get_d(), 0);
        return acc;
    };
    for (int it = 0; it < 2000; ++it) {
        long double delta = 0;
        for (size_t i = 0; i < n; ++i) {
            C den = 1;
            for (size_t j = 0; j < n; ++j)
                if (j != i)
                    den *= (z[i] - z[j]);
            C step = ev(z[i]) / den;
            z[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-18L)
            break;
    }
    std::vector<ComplexApprox> out;
    for (auto const & c : z)
        out.push_back({c.real(), c.imag()});
    return out;
}

/* ---- dyadic completions ---- */

namespace {

/* all sums sum_{j<layers} pi^j (sum_k c_jk y_k), c in {0,1} */
std::vector<QPoly> residue_combinations(LocalFactor const & q, DyadicStructure const & ds, int layers,
                                        bool unit_leading)
{
    ZPoly const & g = q.factor;
    std::vector<QPoly> layer_vals; // residue representatives
    size_t const f = ds.residue_lifts.size();
    for (size_t code = 0; code < (size_t{1} << f); ++code) {
        QPoly s;
        for (size_t k = 0; k < f; ++k)
            if (code >> k & 1) {
                s.resize(std::max(s.size(), ds.residue_lifts[k].size()));
                for (size_t i = 0; i < ds.residue_lifts[k].size(); ++i)
                    s[i] += ds.residue_lifts[k][i];
            }
        layer_vals.push_back(poly_rem(s, g));
    }
    std::vector<QPoly> out{QPoly{}};
    QPoly pij{1};
    for (int j = 0; j < layers; ++j) {
        std::vector<QPoly> next;
        for (auto const & base : out)
            for (size_t code = 0; code < layer_vals.size(); ++code) {
                if (j == 0 && unit_leading && code == 0)
                    continue;
                QPoly add = poly_rem(poly_mul(pij, layer_vals[code]), g);
                QPoly s = base;
                s.resize(std::max(s.size(), add.size()));
                for (size_t i = 0; i < add.size(); ++i)
                    s[i] += add[i];
                trim(s);
                next.push_back(s);
            }
        out = std::move(next);
        pij = poly_rem(poly_mul(pij, ds.uniformizer), g);
    }
    return out;
}

int64_t local_val_or_big(LocalFactor const & q, QPoly const & x)
{
    mpq_class n = local_norm(q, x);
    if (n == 0)
        return int64_t{1} << 40;
    return padic_valuation(n, q.p);
}

} // namespace

DyadicStructure analyze_dyadic(LocalFactor const & q)
{
    if (q.p != 2)
        throw FieldError("analyze_dyadic: not a dyadic place");
    DyadicStructure ds;
    size_t const d = q.factor.size() - 1;
    if (size_t(q.e * q.f) != d)
        throw FieldError("analyze_dyadic: e*f differs from local degree");
    // uniformizer: small integer polynomial whose local norm has valuation f
    bool found = false;
    if (q.e == 1) {
        ds.uniformizer = QPoly{2};
        found = true;
    }
    for (int bound = 1; !found && bound <= 3; ++bound) {
        std::vector<int> coeffs(d, -bound);
        for (;;) {
            QPoly cand(coeffs.begin(), coeffs.end());
            trim(cand);
            if (!cand.empty() && local_val_or_big(q, cand) == q.f) {
                ds.uniformizer = cand;
                found = true;
                break;
            }
            size_t i = 0;
            while (i < d && coeffs[i] == bound)
                coeffs[i++] = -bound;
            if (i == d)
                break;
            ++coeffs[i];
        }
    }
    if (!found)
        throw FieldError("analyze_dyadic: no small uniformizer found");
    // residue field basis: powers of the root
    for (int k = 0; k < q.f; ++k) {
        QPoly y(size_t(k) + 1);
        y[size_t(k)] = 1;
        ds.residue_lifts.push_back(poly_rem(y, q.factor));
    }
    ds.square_class_generators.push_back(ds.uniformizer);
    QPoly pij = ds.uniformizer;
    for (int j = 1; j <= 2 * q.e; ++j) {
        for (auto const & y : ds.residue_lifts) {
            QPoly g = poly_rem(poly_mul(pij, y), q.factor);
            if (g.empty())
                g.resize(1);
            g[0] += 1;
            ds.square_class_generators.push_back(g);
        }
        pij = poly_rem(poly_mul(pij, ds.uniformizer), q.factor);
    }
    ds.square_class_generators.push_back(QPoly{-1});
    ds.square_class_generators.push_back(QPoly{5});
    return ds;
}

bool is_local_square(LocalFactor const & q, DyadicStructure const & ds, QPoly const & x0)
{
    QPoly x = poly_rem(x0, q.factor);
    if (x.empty())
        return true;
    int64_t v = local_val_or_big(q, x) / q.f;
    // make the valuation non-negative by square factors of pi
    QPoly pi2 = poly_rem(poly_mul(ds.uniformizer, ds.uniformizer), q.factor);
    while (v < 0) {
        x = poly_rem(poly_mul(x, pi2), q.factor);
        v += 2;
    }
    if (v % 2)
        return false;
    // y = pi^(v/2) * (unit mod pi^(e+1)); need v_q(y^2 - x) >= v + 2e + 1
    QPoly lead{1};
    for (int64_t i = 0; i < v / 2; ++i)
        lead = poly_rem(poly_mul(lead, ds.uniformizer), q.factor);
    int64_t const need = (v + 2 * q.e + 1) * q.f;
    for (auto const & u : residue_combinations(q, ds, q.e + 1, true)) {
        QPoly y = poly_rem(poly_mul(lead, u), q.factor);
        QPoly diff = poly_rem(poly_mul(y, y), q.factor);
        diff.resize(std::max(diff.size(), x.size()));
        for (size_t i = 0; i < x.size(); ++i)
            diff[i] -= x[i];
        trim(diff);
        if (diff.empty() || local_val_or_big(q, diff) >= need)
            return true;
    }
    return false;
}

} // namespace posdiv
