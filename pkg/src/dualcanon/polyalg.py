"""Univariate polynomials over Q and over the dual numbers.

Coefficient lists are stored lowest degree first. The zero polynomial has
degree -1.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import NamedTuple, Sequence

from .dual_core import DualMatrix, DualScalar, KMatrix, as_rational
from .errors import NotCoprime

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class QPoly:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        self.coeffs = _trim(as_rational(c) for c in coeffs)

    @classmethod
    def _wrap(cls, coeffs) -> "QPoly":
        p = object.__new__(cls)
        p.coeffs = _trim(coeffs)
        return p

    @classmethod
    def constant(cls, c) -> "QPoly":
        return cls([c])

    @classmethod
    def t(cls) -> "QPoly":
        return cls._wrap((_ZERO, _ONE))

    @classmethod
    def from_roots(cls, roots: Sequence) -> "QPoly":
        p = cls.constant(1)
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    @staticmethod
    def _coerce(other) -> "QPoly":
        if isinstance(other, QPoly):
            return other
        return QPoly.constant(other)

    def __add__(self, other):
        if isinstance(other, DPoly):
            return NotImplemented
        o = QPoly._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return QPoly._wrap(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return QPoly._wrap(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, DPoly):
            return NotImplemented
        return self + (-QPoly._coerce(other))

    def __rsub__(self, other):
        return QPoly._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, DPoly):
            return NotImplemented
        o = QPoly._coerce(other)
        if not self.coeffs or not o.coeffs:
            return QPoly()
        out = [_ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return QPoly._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        out = QPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        o = QPoly._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = o.degree
        inv_lead = 1 / o.lead
        quot = [_ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lead
            if c:
                quot[k - dq] = c
                for j, b in enumerate(o.coeffs):
                    rem[k - dq + j] -= c * b
        return QPoly._wrap(quot), QPoly._wrap(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return QPoly._wrap(c * inv for c in self.coeffs)

    def derivative(self) -> "QPoly":
        return QPoly._wrap(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        """Horner evaluation at a rational, DualScalar, KMatrix or DualMatrix."""
        if isinstance(x, (KMatrix, DualMatrix)):
            return DPoly(self, QPoly())(x if isinstance(x, DualMatrix) else DualMatrix(x))
        acc = 0 if not isinstance(x, DualScalar) else DualScalar()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, DPoly):
            return other.part1.is_zero() and other.part0 == self
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "QPoly(0)"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            terms.append(f"{c}" if k == 0 else f"{c}*t^{k}" if k > 1 else f"{c}*t")
        return "QPoly(" + " + ".join(terms) + ")"


class DPoly:
    """Polynomial ``part0(t) + part1(t)*z`` with ``z*z = 0``."""

    __slots__ = ("part0", "part1")

    def __init__(self, part0, part1=None):
        self.part0 = part0 if isinstance(part0, QPoly) else QPoly(part0)
        if part1 is None:
            self.part1 = QPoly()
        else:
            self.part1 = part1 if isinstance(part1, QPoly) else QPoly(part1)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "DPoly":
        ds = [DualScalar.coerce(c) for c in coeffs]
        return cls(QPoly([c.a0 for c in ds]), QPoly([c.a1 for c in ds]))

    def coefficients(self) -> list[DualScalar]:
        n = self.degree + 1
        return [DualScalar(self.part0.coeff(k), self.part1.coeff(k)) for k in range(n)]

    @property
    def degree(self) -> int:
        return max(self.part0.degree, self.part1.degree)

    def is_monic(self) -> bool:
        d = self.degree
        return self.part0.coeff(d) == 1 and self.part1.coeff(d) == 0

    @staticmethod
    def _coerce(other) -> "DPoly":
        if isinstance(other, DPoly):
            return other
        if isinstance(other, QPoly):
            return DPoly(other)
        d = DualScalar.coerce(other)
        return DPoly(QPoly.constant(d.a0), QPoly.constant(d.a1))

    def __add__(self, other):
        o = DPoly._coerce(other)
        return DPoly(self.part0 + o.part0, self.part1 + o.part1)

    __radd__ = __add__

    def __neg__(self):
        return DPoly(-self.part0, -self.part1)

    def __sub__(self, other):
        return self + (-DPoly._coerce(other))

    def __rsub__(self, other):
        return DPoly._coerce(other) - self

    def __mul__(self, other):
        o = DPoly._coerce(other)
        return DPoly(self.part0 * o.part0, self.part0 * o.part1 + self.part1 * o.part0)

    __rmul__ = __mul__

    def at_zeta_zero(self) -> QPoly:
        return self.part0

    def __call__(self, x):
        """Evaluate at a DualScalar or a DualMatrix (Horner)."""
        coeffs = self.coefficients()
        if isinstance(x, KMatrix):
            x = DualMatrix(x)
        if isinstance(x, DualMatrix):
            n = x.n
            eye = KMatrix.identity(n)
            acc = DualMatrix.zeros(n)
            for c in reversed(coeffs):
                acc = acc @ x + DualMatrix(eye * c.a0, eye * c.a1)
            return acc
        x = DualScalar.coerce(x)
        acc = DualScalar()
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (DPoly, QPoly)):
            o = DPoly._coerce(other)
            return self.part0 == o.part0 and self.part1 == o.part1
        return NotImplemented

    def __hash__(self):
        return hash((self.part0, self.part1))

    def __repr__(self):
        return f"DPoly({self.part0!r}, {self.part1!r})"


# --------------------------------------------------------------------------
# gcd and Bezout
# --------------------------------------------------------------------------

def bezout(f: QPoly, g: QPoly) -> tuple[QPoly, QPoly, QPoly]:
    """Extended Euclid: ``(u, v, d)`` with ``u*f + v*g = d = gcd(f, g)``, d monic."""
    if f.is_zero() and g.is_zero():
        raise ValueError("bezout of two zero polynomials")
    r0, r1 = f, g
    s0, s1 = QPoly.constant(1), QPoly()
    t0, t1 = QPoly(), QPoly.constant(1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lead
    return s0 * inv, t0 * inv, r0 * inv


def poly_gcd(f: QPoly, g: QPoly) -> QPoly:
    return bezout(f, g)[2]


# --------------------------------------------------------------------------
# resultants
# --------------------------------------------------------------------------

def _sylvester_rows(fc, gc, zero):
    # fc, gc highest degree first; f rows come first
    m = len(fc) - 1
    k = len(gc) - 1
    size = m + k
    rows = []
    for i in range(k):
        rows.append([zero] * i + list(fc) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(gc) + [zero] * (size - k - 1 - i))
    return rows


def sylvester_matrix(f: QPoly, g: QPoly) -> KMatrix:
    """Sylvester matrix with the deg(g) shifted rows of f first."""
    if f.degree < 1 or g.degree < 1:
        raise ValueError("resultant needs degrees >= 1")
    return KMatrix(_sylvester_rows(f.coeffs[::-1], g.coeffs[::-1], _ZERO))


def resultant_q(f: QPoly, g: QPoly) -> Fraction:
    """Classical resultant, det of ``sylvester_matrix(f, g)``.

    With this convention ``Res(t - a, t - b) = b - a``.
    """
    return sylvester_matrix(f, g).det()


def resultant(f, g) -> DualScalar:
    """Resultant over the dual numbers: det of the dual Sylvester matrix.

    The formal degree ``max(deg part0, deg part1)`` fixes the matrix size.
    """
    f = DPoly._coerce(f)
    g = DPoly._coerce(g)
    if f.degree < 1 or g.degree < 1:
        raise ValueError("resultant needs degrees >= 1")
    fc = f.coefficients()[::-1]
    gc = g.coefficients()[::-1]
    rows = _sylvester_rows(fc, gc, DualScalar())
    return DualMatrix.from_entries(rows).det()


# --------------------------------------------------------------------------
# coprime lifting over D
# --------------------------------------------------------------------------

def lift_factorization(f, f0p: QPoly, f0pp: QPoly, reduce: bool = True) -> tuple[DPoly, DPoly]:
    """Lift a coprime factorization ``f.part0 = f0p * f0pp`` to ``f = fp * fpp``.

    With ``g1*f0p + g2*f0pp = 1`` the raw lift is
    ``fp = f0p + g2*f1*z``, ``fpp = f0pp + g1*f1*z``. When ``reduce`` is set
    the z-part of ``fp`` is taken modulo ``f0p`` and the quotient moved into
    ``fpp``, so for monic inputs both factors come out monic.
    """
    f = DPoly._coerce(f)
    if f.part0 != f0p * f0pp:
        raise ValueError("f.part0 is not f0p * f0pp")
    g1, g2, d = bezout(f0p, f0pp)
    if d.degree != 0:
        raise NotCoprime(f"gcd of the classical factors is {d}")
    f1 = f.part1
    if not reduce:
        return DPoly(f0p, g2 * f1), DPoly(f0pp, g1 * f1)
    q, fp1 = divmod(g2 * f1, f0p)
    fpp1 = g1 * f1 + q * f0pp
    return DPoly(f0p, fp1), DPoly(f0pp, fpp1)


# --------------------------------------------------------------------------
# rational roots
# --------------------------------------------------------------------------

class RootSet(NamedTuple):
    roots: list  # [(Fraction, multiplicity)] ascending
    complete: bool

    def as_dict(self) -> dict:
        return dict(self.roots)


_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % d for d in range(2, int(p**0.5) + 1))]


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 64
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    rng = random.Random(0)
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m, rng)
        stack.extend([d, m // d])
    return out


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in _factor(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _primitive_int(f: QPoly) -> list[int]:
    den = 1
    for c in f.coeffs:
        den = math.lcm(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return [x // g for x in ints]


def _int_divide_linear(coeffs: list[int], p: int, q: int) -> list[int] | None:
    # exact division of sum c_i t^i by (q t - p); None if not divisible
    d = len(coeffs) - 1
    quot = [0] * d
    rem = coeffs[:]
    for k in range(d, 0, -1):
        c, r = divmod(rem[k], q)
        if r:
            return None
        quot[k - 1] = c
        rem[k - 1] += c * p
        rem[k] = 0
    return quot if rem[0] == 0 else None


def rational_roots(f: QPoly) -> RootSet:
    """All rational roots with multiplicities via divisor enumeration.

    ``complete`` is true iff the multiplicities add up to ``deg f``.
    """
    if f.is_zero():
        raise ValueError("rational_roots of the zero polynomial")
    coeffs = _primitive_int(f)
    roots: list[tuple[Fraction, int]] = []
    zero_mult = 0
    while coeffs[0] == 0:
        coeffs = coeffs[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    if len(coeffs) > 1:
        lead, const = coeffs[-1], coeffs[0]
        bound = 1 + max(Fraction(abs(c), abs(lead)) for c in coeffs[:-1])
        cands = set()
        for q in _divisors(lead):
            for p in _divisors(const):
                if math.gcd(p, q) == 1 and Fraction(p, q) <= bound:
                    cands.add(Fraction(p, q))
                    cands.add(Fraction(-p, q))
        for r in sorted(cands):
            if len(coeffs) == 1:
                break
            mult = 0
            while len(coeffs) > 1:
                quot = _int_divide_linear(coeffs, r.numerator, r.denominator)
                if quot is None:
                    break
                coeffs = quot
                mult += 1
            if mult:
                roots.append((r, mult))
    roots.sort()
    total = sum(m for _, m in roots)
    return RootSet(roots, total == f.degree)


# --------------------------------------------------------------------------
# characteristic polynomials
# --------------------------------------------------------------------------

def char_poly(a: DualMatrix) -> DPoly:
    """``det(tE - A)`` over the dual numbers (Faddeev-LeVerrier, exact).

    The recurrence only divides by integers, so it is valid over D.
    """
    if isinstance(a, KMatrix):
        a = DualMatrix(a)
    n = a.n
    eye = KMatrix.identity(n)
    coeffs = [DualScalar()] * (n + 1)
    coeffs[n] = DualScalar(1)
    m = DualMatrix.zeros(n)
    for k in range(1, n + 1):
        c = coeffs[n - k + 1]
        m = a @ m + DualMatrix(eye * c.a0, eye * c.a1)
        tr = (a @ m).trace()
        coeffs[n - k] = DualScalar(-tr.a0 / k, -tr.a1 / k)
    return DPoly.from_coefficients(coeffs)


def char_poly_q(a: KMatrix) -> QPoly:
    """Classical characteristic polynomial ``det(tE - A)``."""
    n = a.n
    eye = KMatrix.identity(n)
    coeffs = [_ZERO] * (n + 1)
    coeffs[n] = _ONE
    m = KMatrix.zeros(n)
    for k in range(1, n + 1):
        m = a @ m + eye * coeffs[n - k + 1]
        coeffs[n - k] = -(a @ m).trace() / k
    return QPoly(coeffs)
