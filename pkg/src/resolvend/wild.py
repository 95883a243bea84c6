"""Formal algebra for the wild generator construction.

Everything happens in a Laurent-polynomial algebra over Q(zeta_p) on
commuting variables y_1 .. y_{p-1} (one block per "copy" when several
independent towers are multiplied together).  The variables stand for the
p-th roots x_i^(1/p) of the division-field units; all the identities the
construction needs hold formally once the Galois actions

    omega_j:  y_i -> y_{ji},   zeta -> zeta^{c(j^{-1})}
    tau^c(j): y_i -> zeta^{c(i^{-1}) c(-1) c(j)} y_i

are imposed, and valuations are tracked by a weight that assigns
weight(y_i - 1) = 1, weight(zeta - 1) = p, weight(p) = p(p-1).
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycContext, CycNumber, cyc_inverse, discrete_log_in_mu, galois_apply
from .errors import (
    FractionalPowerError,
    NotInvertibleError,
    PreconditionError,
)
from .faults import OMEGA_UNINVERTED, is_active
from .groupring import (
    GMap,
    identity_resolvend,
    involution,
    resolvent,
    resolvend_product_transport,
    to_resolvend,
)
from .groups import FiniteAbelianGroup, GroupElement, element_order
from .stickelberger import char_exponent, char_inv, characters, stickelberger_pairing

INF = float("inf")


def centered(p: int, i: int) -> int:
    """The representative of i mod p in [(1-p)/2, (p-1)/2]."""
    half = (p - 1) // 2
    return (i + half) % p - half


def omega_exponent(p: int, j: int) -> int:
    """Cyclotomic exponent of omega_j, the centered representative of j^{-1};
    the fault switch drops the inversion."""
    j = j % p
    if j == 0:
        raise PreconditionError("omega index must be a unit mod p")
    if is_active(OMEGA_UNINVERTED):
        return centered(p, j)
    return centered(p, pow(j, -1, p))


class WildAlgebra:
    """Laurent algebra Q(zeta_p)[y_i^{+-1}] with `copies` disjoint variable blocks."""

    kind = "wild"

    _cache: dict = {}

    def __new__(cls, p: int, copies: int = 1):
        key = (p, copies)
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        cls._cache[key] = self
        return self

    def __init__(self, p: int, copies: int = 1):
        if getattr(self, "p", None) == p:
            return
        if p < 3 or p % 2 == 0 or any(p % d == 0 for d in range(3, int(p ** 0.5) + 1, 2)):
            raise PreconditionError(f"p = {p} is not an odd prime")
        if copies < 1:
            raise PreconditionError("need at least one variable block")
        self.p = p
        self.copies = copies
        self.nvars = copies * (p - 1)
        self.ctx = CycContext(p)

    def __repr__(self):
        return f"WildAlgebra(p={self.p}, copies={self.copies})"

    def var_index(self, i: int, copy: int = 0) -> int:
        if not 1 <= i <= self.p - 1:
            raise PreconditionError(f"variable index {i} out of range")
        if not 0 <= copy < self.copies:
            raise PreconditionError(f"copy {copy} out of range")
        return copy * (self.p - 1) + (i - 1)

    # -- constructors ------------------------------------------------------

    def zero(self) -> "WildElement":
        return WildElement(self, {})

    def one(self) -> "WildElement":
        return WildElement(self, {(0,) * self.nvars: self.ctx.one()})

    def from_cyc(self, c: CycNumber) -> "WildElement":
        return WildElement(self, {(0,) * self.nvars: c})

    def from_rational(self, r) -> "WildElement":
        return self.from_cyc(self.ctx.from_rational(r))

    def monomial(self, exps, coeff: CycNumber) -> "WildElement":
        return WildElement(self, {tuple(exps): coeff})

    def y(self, i: int, copy: int = 0, power: int = 1) -> "WildElement":
        exps = [0] * self.nvars
        exps[self.var_index(i, copy)] = power
        return self.monomial(exps, self.ctx.one())

    # -- algebra protocol --------------------------------------------------

    def is_zero(self, x: "WildElement") -> bool:
        return not x.terms

    def inv(self, x: "WildElement") -> "WildElement":
        if len(x.terms) != 1:
            raise NotInvertibleError("only monomials invert in the formal algebra")
        (exps, c), = x.terms.items()
        return self.monomial(tuple(-e for e in exps), cyc_inverse(c))

    def frac_power(self, x: "WildElement", e) -> "WildElement":
        e = Fraction(e)
        if e.denominator == 1:
            return x ** e.numerator
        if len(x.terms) != 1:
            raise FractionalPowerError("fractional powers need a monomial")
        (exps, c), = x.terms.items()
        new = []
        for n in exps:
            ne = n * e
            if ne.denominator != 1:
                raise FractionalPowerError(f"exponent {ne} is not integral")
            new.append(ne.numerator)
        if c.is_one():
            return self.monomial(new, self.ctx.one())
        j = discrete_log_in_mu(c, self.p)
        je = j * e
        if je.denominator != 1:
            raise FractionalPowerError("no matching root of the coefficient")
        return self.monomial(new, self.ctx.zeta_power(je.numerator % self.p))

    def val(self, x: "WildElement"):
        """Certified lower bound for the valuation; exact on monomials."""
        return weight_lower_bound(x)

    def is_unit_monomial(self, x: "WildElement") -> bool:
        """Single Laurent term whose coefficient is a unit of Z[zeta_p]."""
        if len(x.terms) != 1:
            return False
        (_, c), = x.terms.items()
        if c.den != 1:
            return False
        return cyc_inverse(c).den == 1


class WildElement:
    """Finite Laurent combination of monomials in the y-variables."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: WildAlgebra, terms: dict):
        clean = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != algebra.nvars:
                raise PreconditionError("exponent vector has the wrong arity")
            if not c.is_zero():
                clean[exps] = c
        self.algebra = algebra
        self.terms = clean

    def _coerce(self, other):
        if isinstance(other, WildElement):
            return other if other.algebra is self.algebra else None
        if isinstance(other, CycNumber):
            if other.ctx.n != self.algebra.p:
                return None
            return self.algebra.from_cyc(other)
        if isinstance(other, (int, Fraction)):
            return self.algebra.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in o.terms.items():
            terms[exps] = terms[exps] + c if exps in terms else c
        return WildElement(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return WildElement(self.algebra, {e: -c for e, c in self.terms.items()})

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
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                terms[e] = terms[e] + c if e in terms else c
        return WildElement(self.algebra, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.algebra.inv(self) ** (-n)
        out = self.algebra.one()
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
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "Wild(0)"
        bits = []
        for exps in sorted(self.terms):
            mono = "*".join(f"y{k+1}^{e}" for k, e in enumerate(exps) if e) or "1"
            bits.append(f"{self.terms[exps]!r}*{mono}")
        return "Wild(" + " + ".join(bits) + ")"


# -- Galois actions ----------------------------------------------------------


def omega_action(x: WildElement, j: int) -> WildElement:
    """y_i -> y_{ji} in every block, zeta -> zeta^{c(j^{-1})} on coefficients."""
    alg = x.algebra
    p = alg.p
    k = omega_exponent(p, j) % p
    terms = {}
    for exps, c in x.terms.items():
        new = [0] * alg.nvars
        for copy in range(alg.copies):
            for i in range(1, p):
                new[alg.var_index(j * i % p, copy)] = exps[alg.var_index(i, copy)]
        terms[tuple(new)] = galois_apply(c, k)
    return WildElement(alg, terms)


def tau_action(x: WildElement, j: int, copy: int = 0) -> WildElement:
    """tau~^{c(j)}: y_i -> zeta^{c(i^{-1}) c(-1) c(j)} y_i on the given block,
    coefficients and other blocks fixed."""
    alg = x.algebra
    p = alg.p
    cj = centered(p, j)
    cm1 = centered(p, -1)
    terms = {}
    for exps, c in x.terms.items():
        phase = 0
        for i in range(1, p):
            phase += omega_exponent(p, i) * cm1 * cj * exps[alg.var_index(i, copy)]
        terms[exps] = c * alg.ctx.zeta_power(phase % p)
    return WildElement(alg, terms)


def is_omega_invariant(x: WildElement) -> bool:
    return all(omega_action(x, j) == x for j in range(1, x.algebra.p))


# -- the generator element ---------------------------------------------------


def build_alpha(p: int, algebra: WildAlgebra | None = None, copy: int = 0) -> WildElement:
    """alpha = (1/p) sum_k prod_i y_i^{c(ik)}; omega-invariant by construction."""
    alg = algebra or WildAlgebra(p)
    acc = alg.zero()
    for k in range(p):
        exps = [0] * alg.nvars
        for i in range(1, p):
            exps[alg.var_index(i, copy)] = centered(p, i * k)
        acc = acc + alg.monomial(exps, alg.ctx.one())
    return acc * Fraction(1, p)


def wild_generator(group: FiniteAbelianGroup, t: GroupElement,
                   algebra: WildAlgebra | None = None, copy: int = 0) -> GMap:
    """The map a(t^{c(j)}) = tau~^{c(j)}(alpha), supported on <t>."""
    t = group.element(t)
    p = element_order(group, t)
    alg = algebra or WildAlgebra(p)
    if alg.p != p:
        raise PreconditionError(f"algebra is for p = {alg.p}, |t| = {p}")
    alpha = build_alpha(p, alg, copy)
    values = {}
    for j in range(p):
        values[group.scale(t, centered(p, j))] = tau_action(alpha, j, copy)
    return GMap(group, alg, values)


def pth_power_map(group: FiniteAbelianGroup, t: GroupElement,
                  algebra: WildAlgebra, copy: int = 0) -> GMap:
    """g(t^{c(i)}) = x_i := y_i^p for i != 0, and 1 at the identity."""
    p = algebra.p
    t = group.element(t)
    values = {group.identity: algebra.one()}
    for i in range(1, p):
        values[group.scale(t, centered(p, i))] = algebra.y(i, copy, power=p)
    return GMap(group, algebra, values)


# -- the verified identities --------------------------------------------------


def tau_scaling_check(p: int) -> bool:
    """tau~^{c(j)}(prod_i y_i^{c(ik)}) = zeta^{c(jk)} prod_i y_i^{c(ik)} for all j, k."""
    alg = WildAlgebra(p)
    for k in range(p):
        exps = [0] * alg.nvars
        for i in range(1, p):
            exps[i - 1] = centered(p, i * k)
        mono = alg.monomial(exps, alg.ctx.one())
        for j in range(p):
            want = mono * alg.ctx.zeta_power(centered(p, j * k) % p)
            if tau_action(mono, j) != want:
                return False
    return True


def wild_resolvent_identity(group: FiniteAbelianGroup, t: GroupElement,
                            algebra: WildAlgebra | None = None) -> bool:
    """Three-way equality, for every character chi of <t> with chi(t) = zeta^{c(k)}:
    resolvent(a, chi) = prod_i y_i^{c(ik)} = transpose-lift of g at chi."""
    t = group.element(t)
    p = element_order(group, t)
    alg = algebra or WildAlgebra(p)
    a = wild_generator(group, t, alg)
    g = pth_power_map(group, t, alg)
    step = group.exponent // p
    for chi in characters(group):
        # chi(t) = zeta_exp^m with (exp/p) | m, so chi(t) = zeta_p^k
        k = char_exponent(group, chi, t) // step % p
        exps = [0] * alg.nvars
        for i in range(1, p):
            exps[i - 1] = centered(p, i * k)
        mono = alg.monomial(exps, alg.ctx.one())
        if resolvent(a, chi) != mono:
            return False
        lift = alg.one()
        for s in group.elements():
            if s == group.identity:
                continue
            ex = stickelberger_pairing(group, chi, s)
            if ex:
                lift = lift * alg.frac_power(g.value(s), ex)
        if lift != mono:
            return False
    return True


# -- weights ------------------------------------------------------------------


def _zeta_minus_one_ord(c: CycNumber):
    """Exact (zeta_p - 1)-adic valuation of c in Q(zeta_p)."""
    if c.is_zero():
        return INF
    p = c.ctx.n
    den_v = 0
    d = c.den
    while d % p == 0:
        d //= p
        den_v += 1
    # strip the denominator's p-part; remaining denominator is a unit here
    x = c * (p ** den_v)
    v = 0
    pi_inv = cyc_inverse(c.ctx.zeta_power(1) - c.ctx.one())
    while True:
        if x.is_zero():
            return INF
        if x.den != 1 or sum(x.num) % p:
            break
        x = x * pi_inv
        v += 1
    return v - den_v * (p - 1)


def weight_lower_bound(x: WildElement):
    """Certified lower bound for v_{L(zeta)}(x): rewrite in z_i = y_i - 1 and
    take the minimum of (sum of z-exponents) + p * ord_{zeta-1}(coefficient).
    Exact on monomials; a lower bound in general."""
    alg = x.algebra
    p = alg.p
    if not x.terms:
        return INF
    # clear negative exponents with a unit monomial shift
    shift = [0] * alg.nvars
    for exps in x.terms:
        for k, e in enumerate(exps):
            shift[k] = max(shift[k], -e)
    # expand each shifted monomial in the z-basis, coefficients stay exact
    zterms: dict = {}
    for exps, c in x.terms.items():
        expansion = {(0,) * alg.nvars: c}
        for k, e in enumerate(exps):
            n = e + shift[k]
            if n == 0:
                continue
            # y^n = sum_m C(n, m) z^m
            row = [1]
            for _ in range(n):
                row = [a + b for a, b in zip(row + [0], [0] + row)]
            new: dict = {}
            for zexp, zc in expansion.items():
                for m, binom in enumerate(row):
                    if binom == 0:
                        continue
                    key = zexp[:k] + (zexp[k] + m,) + zexp[k + 1:]
                    add = zc * binom
                    new[key] = new[key] + add if key in new else add
            expansion = new
        for zexp, zc in expansion.items():
            zterms[zexp] = zterms[zexp] + zc if zexp in zterms else zc
    best = INF
    for zexp, zc in zterms.items():
        if zc.is_zero():
            continue
        w = sum(zexp) + p * _zeta_minus_one_ord(zc)
        best = min(best, w)
    return best


def alpha_valuation_bound(p: int):
    """The certified chain: weight_lower_bound(p*alpha - p) >= 1 and alpha
    omega-invariant give v_L(alpha) >= ceil((W - p(p-1))/(p-1)) with
    W = min(bound, p(p-1)); the target inequality is v_L(alpha) >= 1 - p."""
    alg = WildAlgebra(p)
    alpha = build_alpha(p, alg)
    if not is_omega_invariant(alpha):
        raise PreconditionError("alpha is not omega-invariant; no descent to L")
    w = weight_lower_bound(alpha * p - p)
    if w == INF:
        return INF
    scaled = min(w, p * (p - 1)) - p * (p - 1)
    num = Fraction(scaled, p - 1)
    return -((-num.numerator) // num.denominator)  # ceil


# -- unit resolvents and products ---------------------------------------------


def wild_unit_resolvents(group: FiniteAbelianGroup, t: GroupElement,
                         algebra: WildAlgebra | None = None) -> bool:
    """Every resolvent of the wild generator is a unit monomial and
    r(a) r(a)^{[-1]} = 1."""
    t = group.element(t)
    p = element_order(group, t)
    alg = algebra or WildAlgebra(p)
    a = wild_generator(group, t, alg)
    for chi in characters(group):
        r1 = resolvent(a, chi)
        if not alg.is_unit_monomial(r1):
            return False
        if r1 * resolvent(a, char_inv(group, chi)) != alg.one():
            return False
    r = to_resolvend(a)
    return r * involution(r) == identity_resolvend(group, alg)


def elementary_product_check(p: int, r: int) -> bool:
    """Product construction on (Z/p)^r: convolve r independent wild generators
    (disjoint variable blocks) and confirm that every resolvent of the product
    is the product of the per-block resolvents and a unit monomial."""
    if r < 1 or r > 3:
        raise PreconditionError("block count out of the supported range")
    group = FiniteAbelianGroup((p,) * r)
    alg = WildAlgebra(p, copies=r)
    gens = []
    for copy in range(r):
        coords = [0] * r
        coords[copy] = 1
        gens.append(wild_generator(group, group.element(coords), alg, copy))
    a = gens[0]
    for b in gens[1:]:
        a = resolvend_product_transport(a, b)
    for chi in characters(group):
        res = resolvent(a, chi)
        if not alg.is_unit_monomial(res):
            return False
        prod = alg.one()
        for g in gens:
            prod = prod * resolvent(g, chi)
        if res != prod:
            return False
    return True
