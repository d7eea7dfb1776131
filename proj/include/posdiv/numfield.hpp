#ifndef POSDIV_NUMFIELD_HPP
#define POSDIV_NUMFIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace posdiv {

using ZPoly = std::vector<mpz_class>; // ascending coefficients
using QPoly = std::vector<mpq_class>;

class FieldError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/* ---- polynomial helpers ---- */

void trim(ZPoly & a);
void trim(QPoly & a);
QPoly to_q(ZPoly const & a);
QPoly poly_mul(QPoly const & a, QPoly const & b);
/// Remainder modulo a monic integer polynomial.
QPoly poly_rem(QPoly a, ZPoly const & g);
ZPoly poly_mul(ZPoly const & a, ZPoly const & b);
ZPoly poly_mod_coeffs(ZPoly a, mpz_class const & m);
std::string poly_to_string(ZPoly const & a);

mpq_class det(std::vector<std::vector<mpq_class>> m);

/// Multiplication-by-x matrix on Q[t]/(g), basis 1, t, ..., t^{d-1}.
std::vector<std::vector<mpq_class>> multiplication_matrix(QPoly const & x, ZPoly const & g);
/// N_{(Q[t]/g)/Q}(x) for monic g.
mpq_class relative_norm(QPoly const & x, ZPoly const & g);

/// Lift a monic factor g0 of f modulo p (f/g0 coprime to g0 mod p) to a
/// monic factor modulo p^k.
ZPoly hensel_lift(ZPoly const & f, ZPoly const & g0, mpz_class const & p, int k);
/// Monic factors of f over F_p with multiplicities (p small, f monic).
std::vector<std::pair<ZPoly, int>> factor_mod_p(ZPoly const & f, unsigned long p);
bool irreducible_mod_p(ZPoly const & f, unsigned long p);

/* ---- number fields ---- */

/* Q[t]/(f) for a monic irreducible integer polynomial f.  Elements are
 * rational coefficient vectors in the power basis. */
class NumberField
{
  public:
    explicit NumberField(ZPoly f);

    size_t degree() const { return n_; }
    ZPoly const & poly() const { return f_; }

    QPoly reduce(QPoly a) const;
    QPoly one() const;
    QPoly from_rational(mpq_class const & q) const;
    QPoly generator() const; // the root t
    QPoly add(QPoly const & a, QPoly const & b) const;
    QPoly sub(QPoly const & a, QPoly const & b) const;
    QPoly neg(QPoly const & a) const;
    QPoly scale(QPoly const & a, mpq_class const & s) const;
    QPoly mul(QPoly const & a, QPoly const & b) const;
    QPoly pow(QPoly const & a, long k) const; // negative k inverts
    QPoly inverse(QPoly const & a) const;
    bool is_zero(QPoly const & a) const;
    bool equal(QPoly const & a, QPoly const & b) const;
    mpq_class norm(QPoly const & a) const;

  private:
    ZPoly f_;
    size_t n_;
};

/* A finite place given by a monic factor of f over Q_p, known modulo
 * p^precision. */
struct LocalFactor
{
    mpz_class p;
    int e = 1;
    int f = 1;
    ZPoly factor;
    int precision = 0;

    mpz_class modulus() const;
};

/// N_{F_P/Q_p}(x), as an exact rational (correct modulo the factor's precision).
mpq_class local_norm(LocalFactor const & P, QPoly const & x);
/// v_P(x) = v_p(N_P(x)) / f.  Throws if x vanishes at the working precision.
int64_t local_valuation(LocalFactor const & P, QPoly const & x);
/// p-adic valuation of a nonzero rational.
int64_t padic_valuation(mpq_class const & q, mpz_class const & p);

/* Real root of f given by an isolating interval (lo, hi) on which f changes
 * sign. */
struct RealRoot
{
    mpq_class lo, hi;
};

/// Sign of x at the real root, refining the interval as needed.
int real_sign(ZPoly const & f, RealRoot root, QPoly const & x);
/// Floating approximation of x at the root (for diagnostics and rank checks).
long double real_value(ZPoly const & f, RealRoot root, QPoly const & x);
/// log|x| at the real root, refined until the value is known to ~40 bits.
double real_log_abs(ZPoly const & f, RealRoot root, QPoly const & x);

/// Complex roots by Durand-Kerner, long double (diagnostics only).
struct ComplexApprox
{
    long double re, im;
};
std::vector<ComplexApprox> complex_roots(ZPoly const & f);

/* Structure of the completion at a dyadic place used to generate
 * F_q^x / F_q^x2 and to run local square tests. */
struct DyadicStructure
{
    QPoly uniformizer;
    std::vector<QPoly> residue_lifts;          // F_2-basis of the residue field
    std::vector<QPoly> square_class_generators; // pi, 1 + pi^j y_k (1 <= j <= 2e), -1, 5
};

DyadicStructure analyze_dyadic(LocalFactor const & q);

/// Whether x (a q-adic unit or not) is a square in F_q, by exhaustion of
/// approximate roots modulo a power of pi.
bool is_local_square(LocalFactor const & q, DyadicStructure const & ds, QPoly const & x);

} // namespace posdiv

#endif
