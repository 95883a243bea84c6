"""Exact arithmetic in Q(zeta_N) in the power basis mod the N-th cyclotomic
polynomial.

One conductor N serves a whole computation session; every root of unity of
order n | N is the coherent power zeta_N^(N/n).  A CycNumber stores an integer
coefficient vector over a single positive denominator, so products stay in
integer arithmetic; Fractions appear only at the API boundary.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import (
    ConductorError,
    FractionalPowerError,
    InvalidAutomorphismError,
    NotARootError,
    NotInvertibleError,
    PreconditionError,
)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # b monic up to sign, division known exact
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] // lb
        q[i - db] = c
        if c:
            for j, y in enumerate(b):
                a[i - db + j] -= c * y
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return q


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low degree first, via the Moebius product."""
    divisors = [d for d in range(1, n + 1) if n % d == 0]

    def mu(m: int) -> int:
        out, q = 1, 2
        while q * q <= m:
            if m % q == 0:
                m //= q
                if m % q == 0:
                    return 0
                out = -out
            q += 1
        if m > 1:
            out = -out
        return out

    num = [1]
    dens = []
    for d in divisors:
        m = mu(n // d)
        if m == 1:
            num = _poly_mul(num, [-1] + [0] * (d - 1) + [1])
        elif m == -1:
            dens.append([-1] + [0] * (d - 1) + [1])
    for b in dens:
        num = _poly_divexact(num, b)
    return tuple(num)


class CycContext:
    """Cached data for one conductor: Phi_N and reduced powers of x."""

    _cache: dict[int, "CycContext"] = {}

    def __new__(cls, n: int):
        if n in cls._cache:
            return cls._cache[n]
        self = super().__new__(cls)
        cls._cache[n] = self
        return self

    def __init__(self, n: int):
        if getattr(self, "n", None) == n:
            return
        if n < 1 or n % 2 == 0:
            raise ConductorError(f"conductor {n} must be odd and positive")
        self.n = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        # x^phi = -(low part of Phi), then iterate x^k = x * x^(k-1)
        top = tuple(-c for c in self.poly[:-1])
        rows: list[tuple[int, ...]] = [
            tuple(1 if i == k else 0 for i in range(self.phi)) for k in range(self.phi)
        ]
        upto = max(n, 2 * self.phi - 1)
        for _ in range(self.phi, upto):
            prev = rows[-1]
            row = [0] * self.phi
            for i in range(self.phi - 1):
                row[i + 1] = prev[i]
            lead = prev[self.phi - 1]
            if lead:
                for i in range(self.phi):
                    row[i] += lead * top[i]
            rows.append(tuple(row))
        self.xpow = rows
        self._zero = None
        self._one = None

    def __repr__(self):
        return f"CycContext({self.n})"

    def reduce(self, vec: list[int]) -> tuple[int, ...]:
        """Reduce an integer coefficient vector of any degree mod Phi_N."""
        out = list(vec[: self.phi]) + [0] * max(0, self.phi - len(vec))
        for k in range(self.phi, len(vec)):
            c = vec[k]
            if c:
                row = self.xpow[k]
                for i in range(self.phi):
                    out[i] += c * row[i]
        return tuple(out)

    def zero(self) -> "CycNumber":
        if self._zero is None:
            self._zero = CycNumber(self, (0,) * self.phi, 1)
        return self._zero

    def one(self) -> "CycNumber":
        if self._one is None:
            self._one = CycNumber(self, (1,) + (0,) * (self.phi - 1), 1)
        return self._one

    def zeta_power(self, k: int) -> "CycNumber":
        return CycNumber(self, self.xpow[k % self.n], 1)

    def from_rational(self, r) -> "CycNumber":
        r = Fraction(r)
        return CycNumber(self, (r.numerator,) + (0,) * (self.phi - 1), r.denominator)

    def from_fractions(self, coeffs) -> "CycNumber":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != self.phi:
            raise ConductorError(f"need {self.phi} coefficients for conductor {self.n}")
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return CycNumber(self, tuple(c.numerator * (den // c.denominator) for c in coeffs), den)


class CycNumber:
    """Element of Q(zeta_N): integer vector / common positive denominator."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: CycContext, num, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den, num = -den, tuple(-c for c in num)
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.ctx = ctx
        self.num = tuple(num)
        self.den = den

    # -- constructors ----------------------------------------------------

    @staticmethod
    def rational(ctx: CycContext, r) -> "CycNumber":
        return ctx.from_rational(r)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotARootError("value is not rational")
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.ctx.n != self.ctx.n:
                raise ConductorError(f"conductor mismatch {self.ctx.n} vs {other.ctx.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self, o
        num = tuple(x * b.den + y * a.den for x, y in zip(a.num, b.num))
        return CycNumber(self.ctx, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.ctx, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        conv = _poly_mul(list(self.num), list(o.num))
        return CycNumber(self.ctx, self.ctx.reduce(conv), self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return cyc_inverse(self) ** (-n)
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.ctx.n, self.num, self.den))

    def __repr__(self):
        return f"CycNumber(N={self.ctx.n}, {'/'.join([str(list(self.num)), str(self.den)])})"

    # -- automorphisms ----------------------------------------------------

    def galois(self, k: int) -> "CycNumber":
        return galois_apply(self, k)


def root_of_unity(ctx: CycContext, n: int, power: int = 1) -> CycNumber:
    """zeta_n^power as zeta_N^(N/n * power); n must divide the conductor."""
    if n < 1 or ctx.n % n != 0:
        raise ConductorError(f"root order {n} does not divide conductor {ctx.n}")
    return ctx.zeta_power((ctx.n // n) * power)


def galois_apply(x: CycNumber, k: int) -> CycNumber:
    """Field automorphism zeta_N -> zeta_N^k, gcd(k, N) = 1."""
    n = x.ctx.n
    if gcd(k, n) != 1:
        raise InvalidAutomorphismError(f"exponent {k} shares a factor with {n}")
    k %= n
    phi = x.ctx.phi
    out = [0] * phi
    for j, c in enumerate(x.num):
        if c:
            row = x.ctx.xpow[(j * k) % n]
            for i in range(phi):
                out[i] += c * row[i]
    return CycNumber(x.ctx, tuple(out), x.den)


def discrete_log_in_mu(x: CycNumber, n: int) -> int:
    """The j in [0, n) with x = zeta_n^j, by linear scan."""
    if n < 1 or x.ctx.n % n != 0:
        raise ConductorError(f"root order {n} does not divide conductor {x.ctx.n}")
    if x.den == 1:
        step = x.ctx.n // n
        for j in range(n):
            if x.num == x.ctx.xpow[(step * j) % x.ctx.n]:
                return j
    raise NotARootError(f"value is not in mu_{n}")


def cyc_inverse(x: CycNumber) -> CycNumber:
    """Exact inverse via the extended Euclidean algorithm mod Phi_N."""
    if x.is_zero():
        raise NotInvertibleError("zero is not invertible")
    if x.is_rational():
        r = x.as_rational()
        return x.ctx.from_rational(Fraction(r.denominator, r.numerator))
    # work over Q[x]: r0 = Phi, r1 = x; track only the cofactor of x
    r0 = [Fraction(c) for c in x.ctx.poly]
    r1 = [Fraction(c, x.den) for c in x.num]
    while r1 and r1[-1] == 0:
        r1.pop()
    t0: list[Fraction] = []
    t1: list[Fraction] = [Fraction(1)]

    def degree(p):
        return len(p) - 1

    def sub_scaled(a, b, c, shift):
        # a -= c * x^shift * b, in place semantics via new list
        out = list(a) + [Fraction(0)] * max(0, len(b) + shift - len(a))
        for i, y in enumerate(b):
            out[i + shift] -= c * y
        while out and out[-1] == 0:
            out.pop()
        return out

    while degree(r1) > 0:
        while degree(r0) >= degree(r1):
            c = r0[-1] / r1[-1]
            shift = degree(r0) - degree(r1)
            r0 = sub_scaled(r0, r1, c, shift)
            t0 = sub_scaled(t0, t1, c, shift)
            if not r0:
                break
        r0, r1, t0, t1 = r1, r0, t1, t0
    if not r1:
        raise NotInvertibleError("value shares a factor with the modulus")
    lead = r1[0]
    inv = [c / lead for c in t1]
    inv += [Fraction(0)] * (x.ctx.phi - len(inv))
    return x.ctx.from_fractions(inv[: x.ctx.phi])


def content_ord(x: CycNumber, p: int):
    """ord_p of the rational content of x; +infinity for zero."""
    if x.is_zero():
        return float("inf")

    def vp(m: int) -> int:
        v = 0
        while m % p == 0:
            m //= p
            v += 1
        return v

    num_v = min(vp(abs(c)) for c in x.num if c)
    return num_v - vp(x.den)


def cyc_det(rows) -> CycNumber:
    """Determinant of a square CycNumber matrix (Gaussian elimination)."""
    n = len(rows)
    ctx = rows[0][0].ctx
    m = [list(row) for row in rows]
    det = ctx.one()
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return ctx.zero()
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        det = det * m[col][col]
        inv = cyc_inverse(m[col][col])
        for r in range(col + 1, n):
            if m[r][col].is_zero():
                continue
            factor = m[r][col] * inv
            for c in range(col, n):
                m[r][c] = m[r][c] - factor * m[col][c]
    return det if sign == 1 else -det


def cyc_to_json(x: CycNumber) -> dict:
    return {"N": x.ctx.n, "coeffs": [f"{c.numerator}/{c.denominator}" for c in x.coefficients()]}


def cyc_from_json(data: dict) -> CycNumber:
    ctx = CycContext(int(data["N"]))
    return ctx.from_fractions([Fraction(c) for c in data["coeffs"]])


class CycAlgebra:
    """Adapter giving Q(zeta_N) the common coefficient-algebra surface.

    ``p`` is the residue characteristic used for integrality questions;
    it must not divide the conductor, so content order is the honest
    valuation floor at every prime above p.
    """

    kind = "cyclotomic"

    def __init__(self, ctx: CycContext, p: int | None = None):
        if p is not None and ctx.n % p == 0:
            raise ConductorError(f"residue characteristic {p} divides conductor {ctx.n}")
        self.ctx = ctx
        self.p = p

    def zero(self) -> CycNumber:
        return self.ctx.zero()

    def one(self) -> CycNumber:
        return self.ctx.one()

    def from_cyc(self, c: CycNumber) -> CycNumber:
        if c.ctx.n != self.ctx.n:
            raise ConductorError(f"conductor mismatch {c.ctx.n} vs {self.ctx.n}")
        return c

    def from_rational(self, r) -> CycNumber:
        return self.ctx.from_rational(r)

    def is_zero(self, x: CycNumber) -> bool:
        return x.is_zero()

    def inv(self, x: CycNumber) -> CycNumber:
        return cyc_inverse(x)

    def frac_power(self, x: CycNumber, e: Fraction) -> CycNumber:
        e = Fraction(e)
        if e.denominator == 1:
            return x ** e.numerator
        if x.is_one():
            return self.ctx.one()
        j = discrete_log_in_mu(x, self.ctx.n)  # NotARootError if impossible
        je = j * e
        if je.denominator != 1:
            raise FractionalPowerError(f"no {e.denominator}-th root of zeta^{j} at conductor {self.ctx.n}")
        return self.ctx.zeta_power(je.numerator % self.ctx.n)

    def val(self, x: CycNumber):
        if self.p is None:
            raise PreconditionError("no residue characteristic attached")
        return content_ord(x, self.p)

    def to_json(self, x: CycNumber) -> dict:
        return cyc_to_json(x)

    def from_json(self, data: dict) -> CycNumber:
        x = cyc_from_json(data)
        return self.from_cyc(x)
