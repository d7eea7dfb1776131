#ifndef POSDIV_DYADIC_HPP
#define POSDIV_DYADIC_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace posdiv {

/// Largest relative precision (in bits) a TwoAdic can carry.
inline constexpr int kMaxTwoAdicPrecision = 64;

class DyadicError : public std::runtime_error
{
  public:
    enum class Kind { valuation_undefined, precision_exhausted, non_integral_quotient };

    DyadicError(Kind kind, std::string const & what)
        : std::runtime_error(what)
        , kind_(kind)
    {
    }

    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

/* An element of Q_2 known to finite precision.
 *
 * A nonzero value is 2^valuation * unit, with unit odd and known modulo
 * 2^precision (relative precision).  A value with precision 0 is
 * "zero at absolute precision valuation", i.e. O(2^valuation).  The exact
 * zero is flagged separately.  Values are immutable.
 */
class TwoAdic
{
  public:
    TwoAdic() = default; // exact zero

    static TwoAdic exact_zero() { return {}; }
    static TwoAdic approx_zero(int64_t absolute_precision);
    static TwoAdic from_parts(int64_t valuation, uint64_t unit, int precision);
    static TwoAdic from_integer(mpz_class const & x, int precision = kMaxTwoAdicPrecision);
    static TwoAdic from_integer(int64_t x, int precision = kMaxTwoAdicPrecision);
    static TwoAdic from_rational(mpq_class const & x, int precision = kMaxTwoAdicPrecision);
    /// Value r mod 2^bits, where r is taken as a 2-adic integer known to
    /// absolute precision `bits`.
    static TwoAdic from_residue(uint64_t r, int bits);

    bool is_exact_zero() const { return exact_zero_; }
    /// True for the exact zero and for O(2^k).
    bool is_zero() const { return exact_zero_ || precision_ == 0; }

    int64_t valuation() const;
    uint64_t unit() const { return unit_; }
    int precision() const { return exact_zero_ ? kMaxTwoAdicPrecision : precision_; }
    /// valuation + precision; for O(2^k) this is k.
    int64_t absolute_precision() const;

    bool is_integral() const;
    /// The 2-adic integer reduced modulo 2^bits (bits <= 64).  Requires the
    /// value to be integral and known to absolute precision >= bits.
    uint64_t residue(int bits) const;

    TwoAdic operator-() const;
    friend TwoAdic operator+(TwoAdic const & a, TwoAdic const & b);
    friend TwoAdic operator-(TwoAdic const & a, TwoAdic const & b) { return a + (-b); }
    friend TwoAdic operator*(TwoAdic const & a, TwoAdic const & b);
    /// Division in Q_2; throws valuation_undefined on a zero divisor.
    friend TwoAdic operator/(TwoAdic const & a, TwoAdic const & b);

    /// Quotient that must land in Z_2 (v2(a) >= v2(b)); otherwise throws
    /// non_integral_quotient.
    static TwoAdic exact_quotient(TwoAdic const & a, TwoAdic const & b);

    /// Agreement of two approximations on their common precision.
    bool agrees_with(TwoAdic const & o) const;

    std::string to_string() const;

  private:
    bool exact_zero_ = true;
    int64_t valuation_ = 0;
    uint64_t unit_ = 0;
    int precision_ = 0;
};

/// 2-adic valuation of a nonzero rational.
int64_t v2(mpq_class const & x);
int64_t v2(mpz_class const & x);
int64_t v2(TwoAdic const & x);

/// Q_2^x = 2^Z x (1 + 4Z_2) x <-1>.
struct CanonicalDecomposition
{
    int64_t exponent;
    TwoAdic principal_unit; // congruent to 1 mod 4
    int sign;               // +1 or -1
};

CanonicalDecomposition canonical_decompose(TwoAdic const & x);

/// Projection of Q_2^x onto <-1>: +1 iff the odd part is 1 mod 4.
int epsilon(TwoAdic const & x);
int epsilon(mpq_class const & x);

/// Iwasawa logarithm (Log 2 = Log(-1) = 0), returned to absolute precision
/// `bits`.  Throws precision_exhausted if x is not known well enough.
TwoAdic iwasawa_log(TwoAdic const & x, int bits);
TwoAdic iwasawa_log(mpq_class const & x, int bits);

/// Inverse of an odd residue modulo 2^64 (callers mask as needed).
uint64_t odd_inverse(uint64_t u);

inline uint64_t low_mask(int bits)
{
    return bits >= 64 ? ~uint64_t{0} : ((uint64_t{1} << bits) - 1);
}

/// Adaptive precision schedule: eta0, eta0 + step, ...
struct PrecisionPolicy
{
    int initial = 32;
    int step = 16;
    int stable_runs = 2;

    void validate() const;
    int at(int attempt) const { return initial + attempt * step; }
};

} // namespace posdiv

#endif
