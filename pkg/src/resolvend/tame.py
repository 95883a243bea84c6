"""Tame local homomorphisms and the explicit ramified generator.

The model extension is F(pi^(1/e))/F with e odd dividing q-1.  A local
homomorphism is the pair (image of Frobenius, image of the inertia
generator); the generator map sends sigma^i to the i-th conjugate of

    alpha = (1/e) * sum_k  Pi^(k + (1-e)/2),        Pi = pi^(1/e),

and its resolvend factors as a unit times the transpose lift of the
prime element map f_s.  Everything here is verified by exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .cyclotomic import CycAlgebra, CycContext, cyc_det, galois_apply, root_of_unity
from .errors import (
    NotAGeneratorError,
    PreconditionError,
    SearchFailureError,
    TamenessError,
)
from .faults import ALPHA_UNNORMALIZED, is_active
from .groupring import (
    CharacterVector,
    GMap,
    Resolvend,
    from_character_space,
    generator_certificate,
    invert_resolvend,
    reduced_equal,
    to_character_space,
    to_resolvend,
    unit_certificate,
    unit_map,
)
from .groups import FiniteAbelianGroup, GroupElement, element_order
from .localfield import LocalModel, prime_power_base
from .stickelberger import DetKernelBasis, characters, det_kernel_basis, stickelberger_pairing


@dataclass(frozen=True)
class TameHom:
    """A homomorphism out of the local Galois group, recorded by the images
    of Frobenius (t_phi) and of the inertia generator (s_sigma)."""

    group: FiniteAbelianGroup
    t_phi: GroupElement
    s_sigma: GroupElement
    q: int

    def __post_init__(self):
        object.__setattr__(self, "t_phi", self.group.element(self.t_phi))
        object.__setattr__(self, "s_sigma", self.group.element(self.s_sigma))
        e = element_order(self.group, self.s_sigma)
        if (self.q - 1) % e:
            raise TamenessError(f"inertia image has order {e}, not dividing q-1 = {self.q - 1}")
        if math.gcd(self.q, self.group.order) != 1:
            raise TamenessError("residue size q must be coprime to the group order")

    @property
    def ramification_order(self) -> int:
        return element_order(self.group, self.s_sigma)

    def level(self) -> int:
        """0 when unramified, 1 otherwise."""
        return 0 if self.s_sigma == self.group.identity else 1


def factorize(h: TameHom) -> tuple[TameHom, TameHom]:
    """Split into the unramified part (t, 1) and the totally ramified part (1, s)."""
    one = h.group.identity
    return (TameHom(h.group, h.t_phi, one, h.q), TameHom(h.group, one, h.s_sigma, h.q))


@dataclass(frozen=True)
class PrimeFElement:
    """The map on G sending s to the base uniformizer and all else to 1."""

    group: FiniteAbelianGroup
    model: LocalModel
    s: GroupElement

    def value(self, t: GroupElement):
        if t == self.s and t != self.group.identity:
            return self.model.pi_power(1)
        return self.model.one()

    def as_gmap(self) -> GMap:
        over = {}
        if self.s != self.group.identity:
            over[self.s] = self.model.pi_power(1)
        return unit_map(self.group, self.model, over)


def transpose_lift(g: GMap) -> CharacterVector:
    """Character-space lift of a unit-valued map: chi -> prod over s != 1 of
    g(s)^<chi,s>, with the fractional powers taken in the coefficient algebra."""
    group, alg = g.group, g.algebra
    one = alg.one()
    values = {}
    for chi in characters(group):
        acc = one
        for s in group.elements():
            if s == group.identity:
                continue
            v = g.value(s)
            ex = stickelberger_pairing(group, chi, s)
            if ex == 0 or v == one:
                continue
            acc = acc * alg.frac_power(v, ex)
        values[chi] = acc
    return CharacterVector(group, alg, values)


def transpose_lift_resolvend(g: GMap) -> Resolvend:
    return from_character_space(transpose_lift(g))


def build_model(e: int, q: int, conductor: int | None = None) -> LocalModel:
    if conductor is None:
        conductor = e if e > 1 else 1
    return LocalModel(e, q, conductor)


def _alpha(model: LocalModel):
    """(1/e) sum_k Pi^(k+(1-e)/2) in the Puiseux model; the fault switch
    drops the 1/e normalization."""
    e = model.e
    lo = (1 - e) // 2
    acc = model.zero()
    for k in range(e):
        acc = acc + model.pi_power(Fraction(k + lo, e))
    if is_active(ALPHA_UNNORMALIZED):
        return acc
    return acc * Fraction(1, e)


def tame_generator(group: FiniteAbelianGroup, s: GroupElement, q: int,
                   conductor: int | None = None) -> GMap:
    """Generator map for the totally ramified extension attached to s:
    supported on <s>, with a(s^i) = sigma^i(alpha)."""
    s = group.element(s)
    e = element_order(group, s)
    if (q - 1) % e:
        raise TamenessError(f"order {e} of s does not divide q-1 = {q - 1}")
    model = build_model(e, q, conductor)
    alpha = _alpha(model)
    values = {}
    current = alpha
    for i in range(e):
        values[group.scale(s, i)] = current
        current = model.sigma(current)
    return GMap(group, model, values)


def inversion_identity_check(e: int, q: int, conductor: int | None = None) -> bool:
    """sum_i sigma^i(alpha) zeta_e^(-(l+(1-e)/2) i) = Pi^(l+(1-e)/2) for all l."""
    model = build_model(e, q, conductor)
    alpha = _alpha(model)
    lo = (1 - e) // 2
    conj = []
    current = alpha
    for _ in range(e):
        conj.append(current)
        current = model.sigma(current)
    for l in range(e):
        acc = model.zero()
        for i in range(e):
            acc = acc + conj[i] * root_of_unity(model.ctx, e, -(l + lo) * i)
        if acc != model.pi_power(Fraction(l + lo, e)):
            return False
    return True


def basis_change_determinant(group: FiniteAbelianGroup, s: GroupElement, q: int,
                             conductor: int | None = None):
    """Determinant of the matrix expressing the conjugates sigma^i(alpha) in
    the power basis Pi^(k+(1-e)/2); a unit determinant certifies that the
    conjugates form a basis over the base ring."""
    a = tame_generator(group, s, q, conductor)
    model = a.algebra
    e = model.e
    lo = (1 - e) // 2
    span = [group.scale(group.element(s), i) for i in range(e)]
    rows = []
    for g in span:
        x = a.value(g)
        rows.append([x.terms.get(Fraction(k + lo, e), model.ctx.zero()) for k in range(e)])
    return cyc_det(rows)


def decompose_tame_resolvend(h: TameHom, a: GMap,
                             basis: DetKernelBasis | None = None) -> tuple[Resolvend, PrimeFElement]:
    """Factor r(a) as u * lift(f_s): checks the generator certificate, builds
    the unit part u in character space, certifies u and u^{-1} integral, and
    verifies the factorization on the determinant kernel."""
    model = a.algebra
    group = a.group
    e = element_order(group, h.s_sigma)
    cert = generator_certificate(a, (1 - e) // 2)
    if not cert.ok:
        raise NotAGeneratorError("; ".join(cert.witnesses) or "certificate failed")
    f = PrimeFElement(group, model, h.s_sigma)
    vf = transpose_lift(f.as_gmap())
    va = to_character_space(to_resolvend(a))
    u_vals = {chi: va.values[chi] * model.inv(vf.values[chi]) for chi in va.values}
    u = from_character_space(CharacterVector(group, model, u_vals))
    for g, c in u.coeffs.items():
        if model.val(c) < 0:
            raise NotAGeneratorError(f"unit part not integral at {g}")
    for g, c in invert_resolvend(u).coeffs.items():
        if model.val(c) < 0:
            raise NotAGeneratorError(f"inverse of unit part not integral at {g}")
    if basis is None:
        basis = det_kernel_basis(group)
    if not reduced_equal(to_resolvend(a), u * from_character_space(vf), basis):
        raise NotAGeneratorError("factorization fails reduced equality")
    return u, f


def recompose(u: Resolvend, f: PrimeFElement) -> Resolvend:
    """Inverse direction of the decomposition: u * lift(f)."""
    return u * transpose_lift_resolvend(f.as_gmap())


def _ord_mod(q: int, r: int) -> int:
    if math.gcd(q, r) != 1:
        raise PreconditionError(f"gcd({q}, {r}) != 1")
    k, acc = 1, q % r
    while acc != 1:
        acc = acc * q % r
        k += 1
    return k


def _search_candidates(r: int, bound: int, max_support: int):
    """Coefficient vectors on zeta_r^0..zeta_r^(r-1), ordered by L1 weight
    then lexicographically; deterministic."""
    for weight in range(1, bound * max_support + 1):
        for size in range(1, max_support + 1):
            for positions in combinations(range(r), size):
                for mags in _compositions(weight, size, bound):
                    for signs in product((1, -1), repeat=size):
                        yield tuple(zip(positions, (m * s for m, s in zip(mags, signs))))


def _compositions(total: int, parts: int, bound: int):
    if parts == 1:
        if 1 <= total <= bound:
            yield (total,)
        return
    for first in range(1, min(bound, total - parts + 1) + 1):
        for rest in _compositions(total - first, parts - 1, bound):
            yield (first,) + rest


def _fp_coprime_to_minpoly(coeffs: list, base: list, p: int) -> bool:
    """gcd of two polynomials over F_p is a nonzero constant (ascending
    coefficient lists)."""
    def trim(v):
        v = [c % p for c in v]
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(base), trim(coeffs)
    while b:
        db = len(b) - 1
        inv = pow(b[-1], -1, p)
        rem = a[:]
        while rem and len(rem) - 1 >= db:
            c = rem[-1]
            if c:
                f = c * inv % p
                off = len(rem) - 1 - db
                for i in range(db + 1):
                    rem[off + i] = (rem[off + i] - f * b[i]) % p
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        a, b = b, rem
    return len(a) == 1


def _unit_above_p(values, ctx: CycContext, p: int) -> bool:
    """Mod-p invertibility of p-integral cyclotomic numbers.

    The coefficient ring modulo p is F_p[x] modulo the reduced minimal
    polynomial, so a p-integral number is a unit at every prime above p
    exactly when its reduction is coprime to that polynomial.  This is an
    equivalence, not just a filter, but the caller still runs the full
    certificate on the survivor.
    """
    for v in values:
        coeffs = []
        for c in v.coefficients():
            den = c.denominator % p
            if den == 0:
                return False
            coeffs.append(c.numerator * pow(den, -1, p) % p)
        if not _fp_coprime_to_minpoly(coeffs, ctx.poly, p):
            return False
    return True


def unramified_generator_search(group: FiniteAbelianGroup, q: int, t: GroupElement,
                                r: int, ctx: CycContext | None = None,
                                bound: int = 2, max_support: int = 3) -> GMap:
    """Bounded search for a normal-basis style generator of the degree-|t|
    unramified extension, modeled inside Q(zeta_r) with Frobenius zeta -> zeta^q.

    Returns the first map a(t^i) = phi^i(theta) whose resolvents all have
    valuation zero and whose resolvend inverse is integral.  Raises
    SearchFailureError when the bounded space is exhausted.
    """
    t = group.element(t)
    m = element_order(group, t)
    if ctx is None:
        ctx = CycContext(math.lcm(group.exponent, r))
    if ctx.n % r:
        raise PreconditionError(f"search context N={ctx.n} lacks order-{r} roots")
    p = prime_power_base(q)
    alg = CycAlgebra(ctx, p=p)
    if t == group.identity:
        return GMap(group, alg, {group.identity: alg.one()})
    if _ord_mod(q, r) != m:
        raise PreconditionError(f"ord_{r}({q}) = {_ord_mod(q, r)} != |t| = {m}")
    if math.gcd(q, ctx.n) != 1:
        raise PreconditionError(f"Frobenius exponent {q} not invertible mod {ctx.n}")
    # search and certify over the cyclic span; the certificate transfers to the
    # ambient group because resolvents there only see the restriction to <t>
    habs = FiniteAbelianGroup((m,))
    for cand in _search_candidates(r, bound, max_support):
        theta = alg.zero()
        for j, coeff in cand:
            theta = theta + root_of_unity(ctx, r, j) * coeff
        values = {}
        current = theta
        for i in range(m):
            values[(i,)] = current
            current = galois_apply(current, q)
        a = GMap(habs, alg, values)
        vec = to_character_space(to_resolvend(a))
        if any(alg.val(v) != 0 for v in vec.values.values()):
            continue
        if not _unit_above_p(vec.values.values(), ctx, p):
            continue
        if unit_certificate(a).ok:
            return GMap(group, alg, {group.scale(t, i): values[(i,)] for i in range(m)})
    raise SearchFailureError(
        f"no certified generator with support <= {max_support}, coefficients in [-{bound},{bound}]")
