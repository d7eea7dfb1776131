#include "posdiv/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

namespace posdiv {

namespace {

using u128 = unsigned __int128;

constexpr int64_t kExactPrecision = std::numeric_limits<int64_t>::max() / 4;

[[noreturn]] void throw_zero(char const * where)
{
    throw DyadicError(DyadicError::Kind::valuation_undefined,
                      std::string(where) + ": valuation of zero is undefined");
}

u128 mask128(int bits)
{
    return bits >= 128 ? ~u128{0} : ((u128{1} << bits) - 1);
}

u128 odd_inverse128(u128 u)
{
    u128 x = u;
    for (int i = 0; i < 7; ++i)
        x *= 2 - u * x;
    return x;
}

/* low 64 bits of the odd part of z (two's complement for negatives) */
uint64_t low_word(mpz_class const & z)
{
    mpz_class r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), z.get_mpz_t(), 64);
    uint64_t lo = mpz_get_ui(r.get_mpz_t());
    if (sizeof(unsigned long) < 8) {
        mpz_class hi = r >> 32;
        lo = (uint64_t(mpz_get_ui(hi.get_mpz_t())) << 32) | (lo & 0xffffffffu);
    }
    return lo;
}

} // namespace

uint64_t odd_inverse(uint64_t u)
{
    uint64_t x = u;
    for (int i = 0; i < 6; ++i)
        x *= 2 - u * x;
    return x;
}

TwoAdic TwoAdic::approx_zero(int64_t absolute_precision)
{
    TwoAdic r;
    r.exact_zero_ = false;
    r.valuation_ = absolute_precision;
    r.unit_ = 0;
    r.precision_ = 0;
    return r;
}

TwoAdic TwoAdic::from_parts(int64_t valuation, uint64_t unit, int precision)
{
    precision = std::clamp(precision, 0, kMaxTwoAdicPrecision);
    if (precision == 0)
        return approx_zero(valuation);
    if (!(unit & 1))
        throw std::invalid_argument("TwoAdic::from_parts: unit must be odd");
    TwoAdic r;
    r.exact_zero_ = false;
    r.valuation_ = valuation;
    r.unit_ = unit & low_mask(precision);
    r.precision_ = precision;
    return r;
}

TwoAdic TwoAdic::from_integer(mpz_class const & x, int precision)
{
    if (x == 0)
        return exact_zero();
    mp_bitcnt_t v = mpz_scan1(x.get_mpz_t(), 0);
    mpz_class odd = x >> v;
    return from_parts(int64_t(v), low_word(odd), precision);
}

TwoAdic TwoAdic::from_integer(int64_t x, int precision)
{
    return from_integer(mpz_class(static_cast<long>(x)), precision);
}

TwoAdic TwoAdic::from_rational(mpq_class const & x, int precision)
{
    if (x == 0)
        return exact_zero();
    TwoAdic n = from_integer(mpz_class(x.get_num()), precision);
    TwoAdic d = from_integer(mpz_class(x.get_den()), precision);
    return n / d;
}

TwoAdic TwoAdic::from_residue(uint64_t r, int bits)
{
    bits = std::clamp(bits, 0, 64);
    r &= low_mask(bits);
    if (r == 0)
        return approx_zero(bits);
    int v = std::countr_zero(r);
    return from_parts(v, r >> v, bits - v);
}

int64_t TwoAdic::valuation() const
{
    if (exact_zero_)
        throw_zero("TwoAdic::valuation");
    return valuation_;
}

int64_t TwoAdic::absolute_precision() const
{
    if (exact_zero_)
        return kExactPrecision;
    return valuation_ + precision_;
}

bool TwoAdic::is_integral() const
{
    return exact_zero_ || valuation_ >= 0;
}

uint64_t TwoAdic::residue(int bits) const
{
    if (bits < 0 || bits > 64)
        throw std::invalid_argument("TwoAdic::residue: bits out of range");
    if (exact_zero_)
        return 0;
    if (!is_integral())
        throw DyadicError(DyadicError::Kind::non_integral_quotient,
                          "TwoAdic::residue: value is not integral");
    if (absolute_precision() < bits)
        throw DyadicError(DyadicError::Kind::precision_exhausted,
                          "TwoAdic::residue: only " + std::to_string(absolute_precision()) +
                                  " bits known, " + std::to_string(bits) + " requested");
    if (precision_ == 0 || valuation_ >= bits)
        return 0;
    return (unit_ << valuation_) & low_mask(bits);
}

TwoAdic TwoAdic::operator-() const
{
    if (is_zero())
        return *this;
    return from_parts(valuation_, ~unit_ + 1, precision_);
}

TwoAdic operator+(TwoAdic const & a, TwoAdic const & b)
{
    if (a.exact_zero_)
        return b;
    if (b.exact_zero_)
        return a;
    int64_t abs_prec = std::min(a.absolute_precision(), b.absolute_precision());
    int64_t base = std::min(a.valuation_, b.valuation_);
    if (abs_prec <= base)
        return TwoAdic::approx_zero(abs_prec);
    int bits = int(abs_prec - base); // <= 64 by construction
    auto shifted = [&](TwoAdic const & x) -> uint64_t {
        if (x.precision_ == 0)
            return 0;
        int64_t s = x.valuation_ - base;
        return s >= 64 ? 0 : (x.unit_ << s);
    };
    uint64_t sum = (shifted(a) + shifted(b)) & low_mask(bits);
    TwoAdic r = TwoAdic::from_residue(sum, bits);
    r.valuation_ += base;
    return r;
}

TwoAdic operator*(TwoAdic const & a, TwoAdic const & b)
{
    if (a.exact_zero_ || b.exact_zero_)
        return TwoAdic::exact_zero();
    if (a.precision_ == 0 || b.precision_ == 0) {
        // O(2^k) * y is O(2^(k + v(y)))
        return TwoAdic::approx_zero(a.valuation_ + b.valuation_);
    }
    int p = std::min(a.precision_, b.precision_);
    return TwoAdic::from_parts(a.valuation_ + b.valuation_, a.unit_ * b.unit_, p);
}

TwoAdic operator/(TwoAdic const & a, TwoAdic const & b)
{
    if (b.is_zero())
        throw_zero("TwoAdic division");
    if (a.exact_zero_)
        return TwoAdic::exact_zero();
    if (a.precision_ == 0)
        return TwoAdic::approx_zero(a.valuation_ - b.valuation_);
    int p = std::min(a.precision_, b.precision_);
    return TwoAdic::from_parts(a.valuation_ - b.valuation_, a.unit_ * odd_inverse(b.unit_), p);
}

TwoAdic TwoAdic::exact_quotient(TwoAdic const & a, TwoAdic const & b)
{
    if (b.is_zero())
        throw_zero("TwoAdic::exact_quotient");
    if (!a.exact_zero_ && a.precision_ > 0 && a.valuation_ < b.valuation_)
        throw DyadicError(DyadicError::Kind::non_integral_quotient,
                          "quotient " + a.to_string() + " / " + b.to_string() +
                                  " is not a 2-adic integer");
    return a / b;
}

bool TwoAdic::agrees_with(TwoAdic const & o) const
{
    return (*this - o).is_zero();
}

std::string TwoAdic::to_string() const
{
    if (exact_zero_)
        return "0";
    std::ostringstream os;
    if (precision_ == 0) {
        os << "O(2^" << valuation_ << ")";
        return os.str();
    }
    os << "2^" << valuation_ << "*" << unit_ << " + O(2^" << absolute_precision() << ")";
    return os.str();
}

int64_t v2(mpz_class const & x)
{
    if (x == 0)
        throw_zero("v2");
    return int64_t(mpz_scan1(x.get_mpz_t(), 0));
}

int64_t v2(mpq_class const & x)
{
    if (x == 0)
        throw_zero("v2");
    return v2(mpz_class(x.get_num())) - v2(mpz_class(x.get_den()));
}

int64_t v2(TwoAdic const & x)
{
    if (x.is_zero())
        throw_zero("v2");
    return x.valuation();
}

CanonicalDecomposition canonical_decompose(TwoAdic const & x)
{
    if (x.is_zero())
        throw_zero("canonical_decompose");
    if (x.precision() < 2)
        throw DyadicError(DyadicError::Kind::precision_exhausted,
                          "canonical_decompose: sign needs 2 bits of unit");
    uint64_t u = x.unit();
    int sign = (u & 3) == 1 ? 1 : -1;
    if (sign < 0)
        u = ~u + 1;
    return {x.valuation(), TwoAdic::from_parts(0, u, x.precision()), sign};
}

int epsilon(TwoAdic const & x)
{
    return canonical_decompose(x).sign;
}

int epsilon(mpq_class const & x)
{
    return epsilon(TwoAdic::from_rational(x, 8));
}

TwoAdic iwasawa_log(TwoAdic const & x, int bits)
{
    if (x.is_zero())
        throw_zero("iwasawa_log");
    int p = x.precision();
    if (bits > p)
        throw DyadicError(DyadicError::Kind::precision_exhausted,
                          "iwasawa_log: " + std::to_string(bits) + " bits requested but unit known to " +
                                  std::to_string(p));
    if (bits <= 0)
        return TwoAdic::approx_zero(std::max(bits, 0));
    // Log(u) = log(u^2)/2 with u^2 = 1 + t, v(t) >= 3.  u^2 is known mod 2^(p+1),
    // hence log(u^2) mod 2^(p+1) and Log(u) mod 2^p.
    int const target = p + 1;
    int const work = target + 8;
    u128 const wmask = mask128(work);
    u128 u = x.unit();
    u128 t = (u * u - 1) & wmask;
    u128 acc = 0;
    u128 power = t;
    for (int n = 1;; ++n) {
        int vn = std::countr_zero(unsigned(n));
        int lg = std::bit_width(unsigned(n)) - 1;
        if (3 * n - lg >= target)
            break;
        u128 term = (power >> vn) * odd_inverse128(u128(n >> vn));
        if (n % 2 == 1)
            acc += term;
        else
            acc -= term;
        power = (power * t) & wmask;
    }
    acc &= mask128(target);
    uint64_t log_u = uint64_t(acc >> 1) & low_mask(p);
    return TwoAdic::from_residue(log_u & low_mask(bits), bits);
}

TwoAdic iwasawa_log(mpq_class const & x, int bits)
{
    return iwasawa_log(TwoAdic::from_rational(x, kMaxTwoAdicPrecision), bits);
}

void PrecisionPolicy::validate() const
{
    if (initial < 8)
        throw std::invalid_argument("precision policy: initial precision must be >= 8 bits");
    if (step < 4)
        throw std::invalid_argument("precision policy: growth step must be >= 4 bits");
    if (stable_runs < 2)
        throw std::invalid_argument("precision policy: stabilization count must be >= 2");
}

} // namespace posdiv
