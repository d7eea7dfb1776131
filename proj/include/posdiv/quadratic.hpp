#ifndef POSDIV_QUADRATIC_HPP
#define POSDIV_QUADRATIC_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "posdiv/numfield.hpp"

namespace posdiv {

bool is_fundamental_discriminant(mpz_class const & D);

/// Primitive ideal [a, (-b + sqrt D)/2] of the maximal order, b^2 = D mod 4a.
struct QIdeal
{
    mpz_class a, b;
    bool operator<(QIdeal const & o) const { return a < o.a || (a == o.a && b < o.b); }
    bool operator==(QIdeal const & o) const { return a == o.a && b == o.b; }
};

/// The fractional ideal gamma * I.  An empty gamma means "not tracked".
struct TrackedIdeal
{
    QIdeal I;
    QPoly gamma;
};

/* Arithmetic in Q(sqrt D) with O = Z[theta], theta = (delta + sqrt D)/2. */
class QuadraticEngine
{
  public:
    explicit QuadraticEngine(mpz_class D);

    mpz_class const & disc() const { return D_; }
    int delta() const { return delta_; }
    NumberField const & field() const { return K_; }
    bool real() const { return D_ > 0; }
    mpz_class const & isqrt_disc() const { return s_; } // floor(sqrt |D|)

    QPoly element(mpz_class const & x, mpz_class const & y) const; // x + y theta
    QPoly from_sqrt_form(mpq_class const & u, mpq_class const & v) const; // u + v sqrt D

    QIdeal normalize(QIdeal I) const;
    TrackedIdeal unit_ideal() const;
    TrackedIdeal track(QIdeal const & I) const { return {normalize(I), K_.one()}; }
    TrackedIdeal mul(TrackedIdeal const & x, TrackedIdeal const & y) const;
    QIdeal conjugate(QIdeal const & I) const { return normalize({I.a, -I.b}); }
    TrackedIdeal rho(TrackedIdeal const & x) const;
    TrackedIdeal reduce(TrackedIdeal x) const;
    bool is_reduced(QIdeal const & I) const;

    /// Canonical reduced representative of the ideal class (tracked).
    TrackedIdeal canonical(TrackedIdeal const & x) const;
    /// Generator of gamma * I when principal.
    std::optional<QPoly> principal_generator(TrackedIdeal const & x) const;

    /// Prime ideals above p: one for ramified p, two (b, -b) for split p,
    /// none for inert p.
    std::vector<QIdeal> primes_above(mpz_class const & p) const;
    int kronecker(mpz_class const & p) const; // (D/p), with p = 2 handled

    /// Fundamental unit > 1 at the embedding sqrt D > 0 (real case only),
    /// read off the principal cycle.
    QPoly fundamental_unit() const;
    /// Sign of x at the embedding sqrt D > 0 (real case).
    int sign_at_positive_root(QPoly const & x) const;

    /// Generator of prod P_i^{e_i} (negative exponents allowed); throws when
    /// not principal.
    QPoly relation_witness(std::vector<QIdeal> const & primes, std::vector<long> const & exps) const;

  private:
    mpz_class choose_b(mpz_class const & target, mpz_class const & a) const;

    mpz_class D_;
    int delta_;
    mpz_class s_;
    NumberField K_;
};

/* Class group of the maximal order generated by a list of prime ideals:
 * triangular relation basis over the chosen generators, with witnesses. */
struct QuadraticClassGroup
{
    std::vector<QIdeal> primes;             // factor base, in input order
    std::vector<std::vector<long>> relations; // rows over primes, one per prime
    std::vector<QPoly> witnesses;           // generator of each relation
    uint64_t order = 1;                     // of the subgroup generated
};

/// Subgroup-closure class group computation.  `forced` prime ideals always
/// receive a relation row, others only when they enlarge the subgroup.
QuadraticClassGroup quadratic_class_group(QuadraticEngine const & eng,
                                          std::vector<std::pair<QIdeal, bool>> const & candidates);

} // namespace posdiv

#endif
