"""Self-verification suite.

Every check re-derives one identity from scratch, in exact arithmetic, and
reports a pass/fail entry.  Entries carry a short statement of the identity
being tested plus the parameters, so a failing report is reproducible on
its own.  The runner is deterministic for a fixed seed; wall-clock timings
are attached only on request because they would otherwise break
byte-identical reruns.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import faults
from .cyclotomic import CycAlgebra, CycContext
from .errors import PreconditionError, ResolvendError
from .groups import FiniteAbelianGroup
from .groupring import (
    GMap,
    associated_hom,
    delta_resolvend,
    from_character_space,
    from_resolvend,
    generator_certificate,
    identity_resolvend,
    involution,
    reduced_equal,
    resolvend_inverse_transport,
    resolvend_product_transport,
    resolvent,
    to_character_space,
    to_resolvend,
    trace_pairing_identity_check,
    unit_certificate,
)
from .localfield import (
    RamFiltration,
    different_valuation,
    is_weakly_ramified,
    prime_power_base,
    sqrt_inverse_different_valuation,
    validate_abelian_filtration,
)
from .stickelberger import (
    DetKernelBasis,
    characters,
    det_map,
    equivariance_check,
    integrality_check,
    stickelberger_pairing,
)
from .tame import (
    TameHom,
    basis_change_determinant,
    build_model,
    decompose_tame_resolvend,
    factorize,
    inversion_identity_check,
    recompose,
    tame_generator,
    transpose_lift,
    unramified_generator_search,
)
from .wild import (
    WildAlgebra,
    alpha_valuation_bound,
    build_alpha,
    elementary_product_check,
    is_omega_invariant,
    omega_action,
    tau_action,
    tau_scaling_check,
    weight_lower_bound,
    wild_resolvent_identity,
    wild_unit_resolvents,
)

MAX_ORDER = 27
ALLOWED_P = (3, 5, 7)
ALLOWED_E = (3, 5, 7, 9)

# ramified model constants: smallest prime q = 1 (mod e) avoiding |G| issues
TAME_Q = {3: 7, 5: 11, 7: 29, 9: 19}


@dataclass
class SuiteEntry:
    check_id: str
    identity: str
    params: dict
    status: str
    witness: str | None = None
    wall_ms: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"check_id": self.check_id, "identity": self.identity,
               "params": dict(self.params), "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.wall_ms is not None:
            out["wall_ms"] = self.wall_ms
        return out


@dataclass
class SuiteReport:
    entries: list

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def counts(self) -> dict:
        passed = sum(1 for e in self.entries if e.ok)
        return {"pass": passed, "fail": len(self.entries) - passed}

    def to_json(self) -> dict:
        return {"status": "pass" if self.ok else "fail",
                "counts": self.counts(),
                "entries": [e.to_json() for e in self.entries]}


@dataclass
class SuiteConfig:
    max_order: int = MAX_ORDER
    p_list: tuple = ALLOWED_P
    e_list: tuple = ALLOWED_E
    seed: int = 0
    shared: dict = field(default_factory=dict)


def _entry(check_id: str, identity: str, params: dict, ok: bool,
           witness: str | None = None) -> SuiteEntry:
    return SuiteEntry(check_id, identity, params, "pass" if ok else "fail",
                      witness if not ok else None)


def odd_abelian_groups(max_order: int):
    """Every abelian group of odd order in [3, max_order], one per
    isomorphism class, as ascending invariant-factor chains."""
    out = []
    for order in range(3, max_order + 1, 2):
        for chain in sorted(_invariant_chains(order, order)):
            out.append(FiniteAbelianGroup(chain))
    return out


def _invariant_chains(n: int, cap: int):
    if n == 1:
        yield ()
        return
    for d in range(2, n + 1):
        if n % d == 0 and cap % d == 0:
            for rest in _invariant_chains(n // d, d):
                yield rest + (d,)


# ---------------------------------------------------------------- check 01


def check_01_integrality(cfg: SuiteConfig):
    """Integrality of the image group-ring element is equivalent to
    triviality of the determinant character: exhaustive for |G| <= 9 over
    coefficients in [-2, 2], sampled beyond, with a scalar cross-check."""
    identity = ("a character combination has integral image coefficients "
                "exactly when its determinant character is trivial")
    for group in odd_abelian_groups(cfg.max_order):
        chars = list(characters(group))
        ctx = CycContext(group.exponent)
        n = group.order
        big_l = group.exponent
        elements = [s for s in group.elements() if s != group.identity]
        rows = []
        for chi in chars:
            row = []
            for s in elements:
                scaled = stickelberger_pairing(group, chi, s, ctx) * big_l
                if scaled.denominator != 1:
                    raise PreconditionError("pairing times exponent not integral")
                row.append(scaled.numerator)
            rows.append(row)
        pair_mat = np.array(rows, dtype=np.int64)
        det_mat = np.array([list(chi) for chi in chars], dtype=np.int64)
        d_vec = np.array(group.factors, dtype=np.int64)

        exhaustive = n <= 9
        rng = random.Random(f"{cfg.seed}:integrality:{group.spec}")
        mismatch = None
        checked = 0

        def verdicts(block):
            integral = ((block @ pair_mat) % big_l == 0).all(axis=1)
            trivial = ((block @ det_mat) % d_vec[None, :] == 0).all(axis=1)
            return integral, trivial

        if exhaustive:
            total = 5 ** n
            powers = 5 ** np.arange(n, dtype=np.int64)
            for start in range(0, total, 250_000):
                stop = min(start + 250_000, total)
                idx = np.arange(start, stop, dtype=np.int64)
                block = (idx[:, None] // powers[None, :]) % 5 - 2
                integral, trivial = verdicts(block)
                if not np.array_equal(integral, trivial):
                    k = int(np.nonzero(integral != trivial)[0][0])
                    mismatch = (block[k].tolist(), bool(integral[k]), bool(trivial[k]))
                    break
                checked += stop - start
            sample_vecs = []
            for _ in range(8):
                k = rng.randrange(total)
                sample_vecs.append([(k // 5 ** j) % 5 - 2 for j in range(n)])
        else:
            count = 10_000
            flat = rng.choices((-2, -1, 0, 1, 2), k=count * n)
            block = np.array(flat, dtype=np.int64).reshape(count, n)
            integral, trivial = verdicts(block)
            if not np.array_equal(integral, trivial):
                k = int(np.nonzero(integral != trivial)[0][0])
                mismatch = (block[k].tolist(), bool(integral[k]), bool(trivial[k]))
            checked = count
            sample_vecs = [block[rng.randrange(count)].tolist() for _ in range(8)]

        cross_ok = True
        cross_note = None
        if mismatch is None:
            for vec in sample_vecs:
                psi = {chi: c for chi, c in zip(chars, vec) if c}
                scalar_integral = integrality_check(group, psi, ctx)
                scalar_trivial = det_map(group, psi) == group.identity
                arr = np.array(vec, dtype=np.int64)
                vec_integral = bool(((arr @ pair_mat) % big_l == 0).all())
                if scalar_integral != vec_integral or scalar_integral != scalar_trivial:
                    cross_ok = False
                    cross_note = (f"scalar/vector disagree at psi={vec}: "
                                  f"scalar integral={scalar_integral}, "
                                  f"matrix integral={vec_integral}, "
                                  f"det trivial={scalar_trivial}")
                    break

        ok = mismatch is None and cross_ok
        witness = cross_note
        if mismatch is not None:
            witness = (f"psi={mismatch[0]}: integral={mismatch[1]} "
                       f"but det trivial={mismatch[2]}")
        yield _entry("01-integrality-equivalence", identity,
                     {"group": group.spec,
                      "mode": "exhaustive" if exhaustive else "sampled",
                      "count": checked, "coefficients": "[-2,2]",
                      "seed": cfg.seed},
                     ok, witness)


# ---------------------------------------------------------------- check 02


EQUIVARIANCE_GROUPS = ((3,), (9,), (27,), (3, 3), (3, 9), (5,), (7,), (15,))


def check_02_equivariance(cfg: SuiteConfig):
    identity = ("the pairing commutes with power twists: "
                "<chi^k, s> = <chi, s^k> for every unit k")
    for spec in EQUIVARIANCE_GROUPS:
        group = FiniteAbelianGroup(spec)
        ctx = CycContext(group.exponent)
        twists = [k for k in range(1, group.exponent + 1)
                  if gcd(k, group.exponent) == 1]
        bad = None
        for k in twists:
            if not equivariance_check(group, k, ctx):
                bad = k
                break
        yield _entry("02-pairing-equivariance", identity,
                     {"group": group.spec, "twists": len(twists)},
                     bad is None,
                     None if bad is None else f"twist k={bad} fails")


# ---------------------------------------------------------------- check 03


SELF_DUALITY_GROUPS = ((3,), (5,), (7,), (9,), (3, 3))


def check_03_self_duality(cfg: SuiteConfig):
    identity = ("the lift of a unit-valued class map satisfies "
                "r * involution(r) = 1 under exact convolution")
    trials = 100
    for spec in SELF_DUALITY_GROUPS:
        group = FiniteAbelianGroup(spec)
        e = group.exponent
        model = build_model(e, TAME_Q[e])
        rng = random.Random(f"{cfg.seed}:self-duality:{group.spec}")
        units = [k for k in range(1, e + 1) if gcd(k, e) == 1]
        orbit_of: dict = {}
        reps = []
        for s in group.elements():
            if s in orbit_of:
                continue
            for k in units:
                orbit_of[group.scale(s, k)] = len(reps)
            reps.append(s)
        one = identity_resolvend(group, model)
        bad = None
        for trial in range(trials):
            exps = [rng.randint(-2, 2) for _ in reps]
            values = {s: model.pi_power(exps[orbit_of[s]]) for s in group.elements()}
            values[group.identity] = model.one()
            g = GMap(group, model, values)
            r = from_character_space(transpose_lift(g))
            if r * involution(r) != one:
                bad = (trial, exps)
                break
        yield _entry("03-self-duality", identity,
                     {"group": group.spec, "trials": trials, "seed": cfg.seed},
                     bad is None,
                     None if bad is None else f"trial {bad[0]} exponents {bad[1]}")


# ---------------------------------------------------------------- check 04


def check_04_tame_generator(cfg: SuiteConfig):
    cid = "04-ramified-generator"
    for e in cfg.e_list:
        q = TAME_Q[e]
        group = FiniteAbelianGroup((e,))
        s = (1,)
        model = build_model(e, q)
        ctx = CycContext(e)
        a = tame_generator(group, s, q)

        bad_chi = None
        for chi in characters(group):
            expected = model.pi_power(stickelberger_pairing(group, chi, s, ctx))
            if resolvent(a, chi) != expected:
                bad_chi = chi
                break
        yield _entry(cid, "the generator's resolvent equals pi to the pairing "
                          "exponent at every character",
                     {"e": e, "q": q, "aspect": "resolvent-table"},
                     bad_chi is None,
                     None if bad_chi is None else f"character {bad_chi}")

        yield _entry(cid, "twisted conjugate sums of the generator recover "
                          "each fractional pi power",
                     {"e": e, "q": q, "aspect": "inversion"},
                     inversion_identity_check(e, q))

        cert = generator_certificate(a, (1 - e) // 2)
        yield _entry(cid, "the generator map passes the exact certificate at "
                          "valuation floor (1-e)/2",
                     {"e": e, "q": q, "aspect": "certificate"},
                     cert.ok, "; ".join(cert.witnesses) or None)

        det = basis_change_determinant(group, s, q)
        alg = CycAlgebra(ctx, prime_power_base(q))
        det_ok = alg.val(det) == 0
        yield _entry(cid, "the determinant of the conjugate-to-pi-power basis "
                          "change is a unit above q",
                     {"e": e, "q": q, "aspect": "basis-determinant"},
                     det_ok, None if det_ok else f"valuation {alg.val(det)}")

        twists = [(name, fn) for name, _, fn in model.galois_twists()]
        found = associated_hom(a, twists)
        hom_ok = found == {"sigma": s, "phi": group.identity}
        yield _entry(cid, "coefficient automorphisms act on the generator "
                          "through translation by the expected elements",
                     {"e": e, "q": q, "aspect": "twist-hom"},
                     hom_ok, None if hom_ok else f"found {found}")


# ---------------------------------------------------------------- check 05


def _composite(cfg: SuiteConfig) -> dict:
    """Shared composite instance: totally ramified times unramified over
    the rank-2 group of exponent 3, conductor 57."""
    if "composite" not in cfg.shared:
        group = FiniteAbelianGroup((3, 3))
        s = (1, 0)
        t = (0, 1)
        q, r, conductor = 7, 19, 57
        ctx = CycContext(conductor)
        model = build_model(3, q, conductor=conductor)
        a_ram = tame_generator(group, s, q, conductor=conductor)
        a_nr = unramified_generator_search(group, q, t, r, ctx=ctx)
        a_nr = a_nr.into(model, model.from_cyc)
        cfg.shared["composite"] = {
            "group": group, "s": s, "t": t, "q": q, "r": r,
            "model": model, "a_ram": a_ram, "a_nr": a_nr,
            "a": resolvend_product_transport(a_ram, a_nr),
            "h": TameHom(group, t, s, q),
            "basis": DetKernelBasis(group),
        }
    return cfg.shared["composite"]


def check_05_decompose(cfg: SuiteConfig):
    cid = "05-decompose-roundtrip"
    c = _composite(cfg)
    group, model, basis = c["group"], c["model"], c["basis"]
    params = {"group": group.spec, "q": c["q"], "r": c["r"], "conductor": 57}

    cert = unit_certificate(c["a_nr"])
    yield _entry(cid, "the unramified search result stays a certified unit "
                      "after transport into the ramified model",
                 dict(params, aspect="search-unit"), cert.ok,
                 "; ".join(cert.witnesses) or None)

    h1, h2 = factorize(c["h"])
    fact_ok = (h1.s_sigma == group.identity and h1.t_phi == c["t"]
               and h2.t_phi == group.identity and h2.s_sigma == c["s"]
               and h1.level() == 0 and h2.level() == 1)
    yield _entry(cid, "a surjection factors into an unramified part and a "
                      "totally ramified part",
                 dict(params, aspect="factorization"), fact_ok)

    try:
        u, f = decompose_tame_resolvend(c["h"], c["a"], basis)
        dec_ok = f.s == c["s"]
        dec_witness = None if dec_ok else f"prime part attached to {f.s}"
    except ResolvendError as exc:
        u = f = None
        dec_ok = False
        dec_witness = f"{type(exc).__name__}: {exc}"
    yield _entry(cid, "the composite generator splits into an integral unit "
                      "resolvend times the lifted prime element",
                 dict(params, aspect="decompose"), dec_ok, dec_witness)

    if u is not None:
        rec_ok = reduced_equal(recompose(u, f), to_resolvend(c["a"]), basis)
        yield _entry(cid, "recomposition reproduces the original reduced "
                          "resolvend", dict(params, aspect="recompose"), rec_ok)
    else:
        yield _entry(cid, "recomposition reproduces the original reduced "
                          "resolvend", dict(params, aspect="recompose"),
                     False, "decomposition unavailable")

    twists = [(name, fn) for name, _, fn in model.galois_twists()]
    found = associated_hom(c["a"], twists)
    hom_ok = found == {"sigma": c["s"], "phi": c["t"]}
    yield _entry(cid, "the twist-translation homomorphism recovers both the "
                      "ramified and unramified structure maps",
                 dict(params, aspect="twist-hom"), hom_ok,
                 None if hom_ok else f"found {found}")


# ---------------------------------------------------------------- check 06


def check_06_transport(cfg: SuiteConfig):
    cid = "06-transport-closure"
    group = FiniteAbelianGroup((3,))
    s = (1,)
    q = 7
    model = build_model(3, q)
    a = tame_generator(group, s, q)
    floor = -1

    inv_cert = generator_certificate(resolvend_inverse_transport(a), floor)
    yield _entry(cid, "generator certificates survive resolvend inversion",
                 {"e": 3, "q": q, "aspect": "inverse"},
                 inv_cert.ok, "; ".join(inv_cert.witnesses) or None)

    bad_t = None
    for t in group.elements():
        twist = from_resolvend(delta_resolvend(group, model, t))
        cert = generator_certificate(resolvend_product_transport(a, twist), floor)
        if not cert.ok:
            bad_t = t
            break
    yield _entry(cid, "generator certificates survive translation twists",
                 {"e": 3, "q": q, "aspect": "translation"},
                 bad_t is None,
                 None if bad_t is None else f"twist by {bad_t}")

    c = _composite(cfg)
    inv_unit = unit_certificate(resolvend_inverse_transport(c["a_nr"]))
    yield _entry(cid, "unit certificates survive resolvend inversion",
                 {"group": c["group"].spec, "aspect": "unit-inverse"},
                 inv_unit.ok, "; ".join(inv_unit.witnesses) or None)

    sq_unit = unit_certificate(resolvend_product_transport(c["a_nr"], c["a_nr"]))
    yield _entry(cid, "unit certificates survive resolvend products",
                 {"group": c["group"].spec, "aspect": "unit-product"},
                 sq_unit.ok, "; ".join(sq_unit.witnesses) or None)

    comp_cert = generator_certificate(c["a"], floor)
    yield _entry(cid, "the product of a generator and a unit map stays a "
                      "certified generator",
                 {"group": c["group"].spec, "aspect": "generator-times-unit"},
                 comp_cert.ok, "; ".join(comp_cert.witnesses) or None)

    conv_ok = True
    witness = None
    for other in (a, from_resolvend(delta_resolvend(group, model, (1,)))):
        via_group = to_character_space(to_resolvend(resolvend_product_transport(a, other)))
        lhs = to_character_space(to_resolvend(a))
        rhs = to_character_space(to_resolvend(other))
        pointwise = {chi: lhs.values[chi] * rhs.values[chi] for chi in lhs.values}
        if via_group.values != pointwise:
            conv_ok = False
            witness = "convolution and pointwise products disagree"
            break
    yield _entry(cid, "direct convolution matches pointwise multiplication "
                      "of character values",
                 {"e": 3, "q": q, "aspect": "convolution"}, conv_ok, witness)


# ---------------------------------------------------------------- check 07


def check_07_filtration(cfg: SuiteConfig):
    cid = "07-filtration-valuations"

    bad_e = None
    for e in range(3, 28, 2):
        filt = RamFiltration([e, 1])
        if different_valuation(filt) != e - 1 or not is_weakly_ramified(filt):
            bad_e = e
            break
        if not validate_abelian_filtration(filt):
            bad_e = e
            break
    yield _entry(cid, "a single tame jump of order e has different "
                      "valuation e - 1",
                 {"e": "3..27 odd", "aspect": "tame"},
                 bad_e is None, None if bad_e is None else f"e={bad_e}")

    for p in (3, 5, 7):
        filt = RamFiltration([p, p, 1])
        ok = (different_valuation(filt) == 2 * (p - 1)
              and sqrt_inverse_different_valuation(filt) == -(p - 1)
              and is_weakly_ramified(filt)
              and validate_abelian_filtration(filt))
        yield _entry(cid, "the weakly ramified chain [p, p, 1] has different "
                          "valuation 2(p-1) and square-root valuation -(p-1)",
                     {"p": p, "aspect": "wild"},
                     ok, None if ok else
                     f"v_D={different_valuation(filt)}, "
                     f"v_A={sqrt_inverse_different_valuation(filt)}")

    deep = RamFiltration([3, 3, 3, 1])
    yield _entry(cid, "weak ramification fails exactly when the second "
                      "higher group is nontrivial",
                 {"orders": "3,3,3", "aspect": "negative"},
                 not is_weakly_ramified(deep))


# ---------------------------------------------------------------- check 08


def _random_wild(rng: random.Random, alg: WildAlgebra):
    x = alg.zero()
    for _ in range(3):
        exps = [rng.randint(-2, 2) for _ in range(alg.copies * (alg.p - 1))]
        coeff = alg.ctx.zero()
        for k in range(alg.ctx.phi):
            coeff = coeff + alg.ctx.zeta_power(k) * rng.randint(-2, 2)
        if not coeff.is_zero():
            x = x + alg.monomial(exps, coeff)
    return x


def check_08_wild(cfg: SuiteConfig):
    cid = "08-wild-verification"
    for p in cfg.p_list:
        alg = WildAlgebra(p)
        group = FiniteAbelianGroup((p,))
        t = (1,)
        alpha = build_alpha(p, alg)

        yield _entry(cid, "the averaged spanning element is invariant under "
                          "every coefficient twist",
                     {"p": p, "aspect": "omega-invariance"},
                     is_omega_invariant(alpha))

        yield _entry(cid, "each twist scales the standard monomial by the "
                          "predicted root of unity",
                     {"p": p, "aspect": "tau-scaling"},
                     tau_scaling_check(p))

        yield _entry(cid, "the resolvent of the twist orbit equals the "
                          "distinguished monomial and its transpose lift",
                     {"p": p, "aspect": "resolvent-identity"},
                     wild_resolvent_identity(group, t, alg))

        one = alg.one()
        zeta = alg.from_cyc(alg.ctx.zeta_power(1) - alg.ctx.one())
        w_y = weight_lower_bound(alg.y(1) - one)
        w_yinv = weight_lower_bound(alg.y(1, power=-1) - one)
        w_zeta = weight_lower_bound(zeta)
        w_alpha = weight_lower_bound(alpha * p - p)
        bound = alpha_valuation_bound(p)
        weights_ok = (w_y == 1 and w_yinv == 1 and w_zeta == p
                      and w_alpha == p - 1 and bound == 1 - p)
        yield _entry(cid, "weight bounds: w(y-1)=1, w(zeta-1)=p, "
                          "w(p*alpha-p)=p-1, so v(alpha) >= 1-p",
                     {"p": p, "aspect": "weight-bounds"},
                     weights_ok, None if weights_ok else
                     f"w(y-1)={w_y}, w(1/y-1)={w_yinv}, w(zeta-1)={w_zeta}, "
                     f"w(p*alpha-p)={w_alpha}, bound={bound}")

        yield _entry(cid, "every resolvent of the twist orbit is a unit "
                          "monomial and r * involution(r) = 1",
                     {"p": p, "aspect": "unit-duality"},
                     wild_unit_resolvents(group, t, alg))

        rng = random.Random(f"{cfg.seed}:wild:{p}")
        rel_ok = True
        witness = None
        for sample in range(3):
            x = _random_wild(rng, alg)
            if omega_action(x, 1) != x:
                rel_ok, witness = False, "identity twist moved an element"
                break
            y = x
            for _ in range(p):
                y = tau_action(y, 1)
            if y != x:
                rel_ok, witness = False, "tau does not have order p"
                break
            for i in range(1, p):
                for j in range(1, p):
                    if omega_action(omega_action(x, i), j) != omega_action(x, (i * j) % p):
                        rel_ok, witness = False, f"omega composition fails at ({i},{j})"
                        break
                    if omega_action(tau_action(x, j), i) != tau_action(omega_action(x, i), j):
                        rel_ok, witness = False, f"omega/tau compatibility fails at ({i},{j})"
                        break
                if not rel_ok:
                    break
            if not rel_ok:
                break
        yield _entry(cid, "the coefficient twists compose multiplicatively, "
                          "commute with tau, and tau has order p",
                     {"p": p, "aspect": "action-relations", "seed": cfg.seed},
                     rel_ok, witness)


# ---------------------------------------------------------------- check 09


def check_09_product(cfg: SuiteConfig):
    ok = elementary_product_check(3, 2)
    yield _entry("09-product-construction",
                 "the two-block product generator has unit monomial "
                 "resolvents at all nine characters, factoring blockwise",
                 {"p": 3, "blocks": 2}, ok)


# ---------------------------------------------------------------- check 10


def _random_cyc(rng: random.Random, ctx: CycContext):
    c = ctx.zero()
    for k in range(ctx.phi):
        c = c + ctx.zeta_power(k) * rng.randint(-2, 2)
    if rng.random() < 0.25:
        c = c * Fraction(1, rng.choice((2, 3)))
    return c


def check_10_trace(cfg: SuiteConfig):
    cid = "10-trace-identity"
    identity = ("the convolution r(a) * involution(r(b)) equals the trace-form "
                "expansion computed coefficient by coefficient")
    group = FiniteAbelianGroup((3,))
    pairs = 1000

    ctx = CycContext(3)
    alg = CycAlgebra(ctx)
    rng = random.Random(f"{cfg.seed}:trace:cyclotomic")
    bad = None
    for trial in range(pairs):
        a = GMap(group, alg, {s: _random_cyc(rng, ctx) for s in group.elements()})
        b = GMap(group, alg, {s: _random_cyc(rng, ctx) for s in group.elements()})
        if not trace_pairing_identity_check(a, b):
            bad = trial
            break
    yield _entry(cid, identity,
                 {"algebra": "cyclotomic", "group": group.spec,
                  "pairs": pairs, "seed": cfg.seed},
                 bad is None, None if bad is None else f"pair {bad}")

    model = build_model(3, 7)
    rng = random.Random(f"{cfg.seed}:trace:puiseux")

    def random_local():
        x = model.zero()
        for _ in range(rng.randint(1, 2)):
            x = x + model.monomial(Fraction(rng.randint(-3, 3), 3),
                                   _random_cyc(rng, model.ctx))
        return x

    bad = None
    for trial in range(pairs):
        a = GMap(group, model, {s: random_local() for s in group.elements()})
        b = GMap(group, model, {s: random_local() for s in group.elements()})
        if not trace_pairing_identity_check(a, b):
            bad = trial
            break
    yield _entry(cid, identity,
                 {"algebra": "fractional-power", "group": group.spec,
                  "pairs": pairs, "seed": cfg.seed},
                 bad is None, None if bad is None else f"pair {bad}")


# ---------------------------------------------------------------- check 11


def _pairing_flip_detected() -> bool:
    group = FiniteAbelianGroup((3,))
    s = (1,)
    model = build_model(3, 7)
    a = tame_generator(group, s, 7)
    ctx = CycContext(3)
    for chi in characters(group):
        expected = model.pi_power(stickelberger_pairing(group, chi, s, ctx))
        if resolvent(a, chi) != expected:
            return True
    return False


def _alpha_fault_detected() -> bool:
    return not inversion_identity_check(3, 7)


def _omega_fault_detected() -> bool:
    return not tau_scaling_check(5)


MUTATIONS = (
    (faults.PAIRING_SIGN_FLIP, "resolvent table at e=3, q=7", _pairing_flip_detected),
    (faults.ALPHA_UNNORMALIZED, "inversion identity at e=3, q=7", _alpha_fault_detected),
    (faults.OMEGA_UNINVERTED, "tau scaling at p=5", _omega_fault_detected),
)


def check_11_mutations(cfg: SuiteConfig):
    cid = "11-mutation-sensitivity"
    for name, detector_name, detector in MUTATIONS:
        clean_before = not detector()
        with faults.inject(name):
            caught = detector()
        clean_after = not detector()
        ok = clean_before and caught and clean_after
        if not clean_before:
            witness = "detector already failing without the mutation"
        elif not caught:
            witness = "mutation was not detected"
        elif not clean_after:
            witness = "mutation did not deactivate cleanly"
        else:
            witness = None
        yield _entry(cid, "the deliberately misstated formula is caught by "
                          "the targeted re-check and only then",
                     {"mutation": name, "detector": detector_name}, ok, witness)


# ---------------------------------------------------------------- runner


CHECKS = (
    ("01-integrality-equivalence", check_01_integrality),
    ("02-pairing-equivariance", check_02_equivariance),
    ("03-self-duality", check_03_self_duality),
    ("04-ramified-generator", check_04_tame_generator),
    ("05-decompose-roundtrip", check_05_decompose),
    ("06-transport-closure", check_06_transport),
    ("07-filtration-valuations", check_07_filtration),
    ("08-wild-verification", check_08_wild),
    ("09-product-construction", check_09_product),
    ("10-trace-identity", check_10_trace),
    ("11-mutation-sensitivity", check_11_mutations),
)


def run_suite(max_order: int = MAX_ORDER, p_list=ALLOWED_P, e_list=ALLOWED_E,
              seed: int = 0, mutate: str | None = None, checks=None,
              timings: bool = False) -> SuiteReport:
    """Run the selected checks and return a deterministic report.

    ``checks`` filters by check-id prefix; ``mutate`` activates one named
    fault for the whole run.  Timings are opt-in so that reruns with the
    same parameters produce byte-identical reports.
    """
    if not 3 <= max_order <= MAX_ORDER:
        raise PreconditionError(f"max_order must lie in [3, {MAX_ORDER}]")
    p_list = tuple(sorted(set(p_list)))
    e_list = tuple(sorted(set(e_list)))
    if any(p not in ALLOWED_P for p in p_list):
        raise PreconditionError(f"p_list must be a subset of {ALLOWED_P}")
    if any(e not in ALLOWED_E for e in e_list):
        raise PreconditionError(f"e_list must be a subset of {ALLOWED_E}")
    cfg = SuiteConfig(max_order=max_order, p_list=p_list, e_list=e_list, seed=seed)

    selected = CHECKS
    if checks is not None:
        wanted = tuple(checks)
        selected = tuple((cid, fn) for cid, fn in CHECKS
                         if any(cid.startswith(w) for w in wanted))
        if not selected:
            raise PreconditionError(f"no checks match {wanted}")

    entries: list[SuiteEntry] = []

    def execute():
        for cid, fn in selected:
            t0 = time.perf_counter()
            try:
                for entry in fn(cfg):
                    t1 = time.perf_counter()
                    if timings:
                        entry.wall_ms = int(round((t1 - t0) * 1000))
                    t0 = t1
                    entries.append(entry)
            except ResolvendError as exc:
                entries.append(SuiteEntry(cid, "check aborted by a raised error",
                                          {"seed": seed}, "fail",
                                          f"{type(exc).__name__}: {exc}"))

    if mutate is not None:
        with faults.inject(mutate):
            execute()
    else:
        execute()

    entries.sort(key=lambda e: e.check_id)
    return SuiteReport(entries)
