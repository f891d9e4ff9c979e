"""Slow, independent reference implementations used as test oracles.

These deliberately avoid the package's folds, caches and prime table.
"""

from fractions import Fraction

from meadow.term import Add, Inv, Lit, Mul, Neg


def is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def nth_prime(i):
    n, count = 1, -1
    while count < i:
        n += 1
        if is_prime(n):
            count += 1
    return n


def brute_inverse(a, p):
    a %= p
    return next((x for x in range(p) if a * x % p == 1), 0)


def ref_phi(t):
    if isinstance(t, Lit):
        return Fraction(t.n)
    if isinstance(t, Neg):
        return -ref_phi(t.t)
    if isinstance(t, Inv):
        v = ref_phi(t.t)
        return 1 / v if v else Fraction(0)
    a, b = ref_phi(t.l), ref_phi(t.r)
    return a + b if isinstance(t, Add) else a * b


def ref_phi_p(p, t):
    if isinstance(t, Lit):
        return t.n % p
    if isinstance(t, Neg):
        return -ref_phi_p(p, t.t) % p
    if isinstance(t, Inv):
        return brute_inverse(ref_phi_p(p, t.t), p)
    a, b = ref_phi_p(p, t.l), ref_phi_p(p, t.r)
    return (a + b) % p if isinstance(t, Add) else a * b % p


def ref_mu(d):
    return sum(1 for n in range(2, d + 1) if is_prime(n))


def ref_psi(t, verbatim=False):
    """Index bound by direct recursion.

    With ``verbatim`` the product clause is the bare maximum of the two
    subterm bounds and the nonzero sum clause is ``mu`` of the larger
    denominator alone, which is too small.
    """
    if isinstance(t, Lit):
        return 0
    if isinstance(t, (Neg, Inv)):
        return ref_psi(t.t, verbatim)
    a, b = ref_psi(t.l, verbatim), ref_psi(t.r, verbatim)
    x, y = ref_phi(t.l), ref_phi(t.r)
    if verbatim:
        if isinstance(t, Mul):
            return max(a, b)
        if x == 0 or y == 0:
            return max(a, b)
        return ref_mu(max(x.denominator, y.denominator))
    if x == 0 or y == 0:
        return max(a, b)
    return max(a, b, ref_mu(max(x.denominator, y.denominator)))


def ztmod_ref(q, p):
    return q.numerator * brute_inverse(q.denominator, p) % p


def ref_decide(s, t, psi=ref_psi):
    """Loop over every index below the larger bound, then the rationals."""
    n = max(psi(s), psi(t))
    for i in range(n):
        p = nth_prime(i)
        a, b = ref_phi_p(p, s), ref_phi_p(p, t)
        if a != b:
            return ("prime", i, a, b)
    if ref_phi(s) != ref_phi(t):
        return ("rational", ref_phi(s), ref_phi(t))
    return None
