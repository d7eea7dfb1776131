#!/usr/bin/env python3
"""Upper bounds on the 2-rank of the wild kernel from the Birch-Tate formula.

For a totally real field F, |K2(O_F)| = w2(F) |zeta_F(-1)| (2-part proven).
The wild kernel has index prod_{v real} 2 * prod_{v | 2} |mu(F_v)|_2 / |mu(F)|_2
in the 2-part of K2(O_F), so |WK2|_2 follows and bounds rk2 from above.

For a real quadratic field zeta_F(-1) = B_{2,chi}/24 with the generalized
Bernoulli number B_{2,chi} = D sum_{a=1}^{D} chi(a) B_2(a/D).
The cubic value needs PARI (cypari), used only when installed.

usage: birch_tate_check.py [D ...]
"""

import sys
from fractions import Fraction



def jacobi(a, n):
    """Jacobi symbol (a/n), n odd and positive."""
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def kronecker(D, n):
    """Kronecker symbol (D/n) for n > 0 and D a discriminant."""
    s = 1
    while n % 2 == 0:
        if D % 2 == 0:
            return 0
        s *= 1 if D % 8 in (1, 7) else -1
        n //= 2
    return s * jacobi(D, n) if n > 1 else s


def zeta_minus_one_real_quadratic(D):
    # B_{2,chi} = (sum chi(a) a^2) / D - sum chi(a) a, as sum chi(a) = 0
    s1 = s2 = 0
    for a in range(1, D + 1):
        chi = kronecker(D, a)
        s1 += chi * a
        s2 += chi * a * a
    return (Fraction(s2, D) - s1) / 24


def v2(q):
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero")
    n, d, v = q.numerator, q.denominator, 0
    while n % 2 == 0:
        n //= 2
        v += 1
    while d % 2 == 0:
        d //= 2
        v -= 1
    return v


def local_mu2_quadratic(D):
    """2-parts of mu(F_v) for the places v | 2 of Q(sqrt D)."""
    # Q_2(sqrt D) contains i iff D is -1 times a square in Q_2
    if D % 8 == 1:
        return [2, 2]  # split: two copies of Q_2
    m = D // 4 if D % 4 == 0 else D
    # Q_2(sqrt m) = Q_2(i) iff m / -1 is a 2-adic square, i.e. -m = 1 mod 8
    return [4] if (-m) % 8 == 1 else [2]


def wild_bound_real_quadratic(D):
    z = zeta_minus_one_real_quadratic(D)
    w2 = 4 if D == 8 else 3  # v2 of w2(F): 16 for Q(sqrt 2), else 8
    k2 = w2 + v2(z)
    idx = 2 + sum(v2(m) for m in local_mu2_quadratic(D)) - 1
    return z, k2, k2 - idx


def cubic_x3_10x_1():
    try:
        import cypari
    except ImportError:
        return None
    pari = cypari.pari
    z = pari("lfun(nfinit(x^3-10*x+1), -1)")
    return Fraction(str(pari.bestappr(z, 10**6)))


def main(argv):
    discs = [int(a) for a in argv] or [776, 904, 29665, 34689, 69064, 90321, 104584, 248584, 300040, 374105,
                                       171865, 285160, 318097, 469221, 651784]
    print(f"{'D':>8} {'zeta_F(-1)':>14} {'v2|K2O|':>8} {'v2|WK2|':>8}")
    for D in discs:
        z, k2, wk = wild_bound_real_quadratic(D)
        print(f"{D:>8} {str(z):>14} {k2:>8} {wk:>8}", flush=True)
    z = cubic_x3_10x_1()
    if z is not None:
        # three real places, two dyadic places with F_v = Q_2 and Q_4 (no i), mu(F) = +-1
        k2 = 3 + v2(z)
        wk = k2 - (3 + 1 + 1 - 1)
        print(f"{'x^3-10x+1':>8} {str(z):>14} {k2:>8} {wk:>8}")


if __name__ == "__main__":
    main(sys.argv[1:])
