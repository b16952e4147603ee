"""Pluggable partially ordered groups with exact integer-tuple elements.

Every handle offers exact arithmetic (add, neg, zero), the positivity
predicate deciding the order, seeded samplers, and a few constructive helpers
(upper bounds, positive presentations g = g1 - g2) that the constructions
module leans on.  Properties of infinite structures are only ever probed on
samples; reports carry the sample count and seed and never upgrade a sampled
pass to a universal claim.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from .core import InputError, PealError


class InfiniteIntervalError(PealError):
    """The interval [0, u] is provably infinite; use the symbolic route."""


class BoundExceededError(PealError):
    """Enumeration exceeded the requested cap."""


class PoGroupHandle:
    """Base interface; concrete groups override the arithmetic and order."""

    name = "group"
    abelian = False

    def zero(self):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def is_positive(self, x) -> bool:
        raise NotImplementedError

    def le(self, x, y) -> bool:
        return self.is_positive(self.add(y, self.neg(x)))

    def scale(self, m: int, x):
        acc = self.zero()
        step = x if m >= 0 else self.neg(x)
        for _ in range(abs(m)):
            acc = self.add(acc, step)
        return acc

    def format(self, x) -> str:
        return repr(x)

    def sample(self, rng: random.Random, bound: int):
        raise NotImplementedError

    def sample_nonneg(self, rng: random.Random, bound: int):
        raise NotImplementedError

    def sample_dominating(self, rng: random.Random, bound: int, g):
        """Some d >= 0 with g + d >= 0 (used for positive presentations)."""
        raise NotImplementedError

    def upper_bound(self, x, y):
        """A constructive witness c with x, y <= c."""
        raise NotImplementedError

    def interval_elements(self, u, cap: int) -> List:
        """All elements of [0, u], or raise when infinite / above cap."""
        raise InfiniteIntervalError(
            "%s does not support finite interval enumeration" % (self.name,)
        )

    def nonneg_presentations(self, rng: random.Random, bound: int, g, count: int):
        """Pairs (g1, g2), both >= 0, with g1 - g2 = g (i.e. g1 = g + g2)."""
        out = []
        for _ in range(count):
            g2 = self.sample_dominating(rng, bound, g)
            g1 = self.add(g, g2)
            if not (self.is_positive(g1) and self.is_positive(g2)):
                raise InputError("dominating sample failed to produce a presentation")
            out.append((g1, g2))
        return out

    def __repr__(self):
        return "<po-group %s>" % (self.name,)


class IntVectorGroup(PoGroupHandle):
    """Z^k with the pointwise or lexicographic order."""

    def __init__(self, k: int, order: str = "pointwise"):
        if k < 1:
            raise InputError("dimension must be >= 1")
        if order not in ("pointwise", "lex"):
            raise InputError("order must be 'pointwise' or 'lex'")
        self.k = k
        self.order = order
        self.name = "Z^%d(%s)" % (k, order)
        self.abelian = True

    def zero(self):
        return (0,) * self.k

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def is_positive(self, x) -> bool:
        if self.order == "pointwise":
            return all(a >= 0 for a in x)
        for a in x:
            if a != 0:
                return a > 0
        return True

    def format(self, x) -> str:
        if self.k == 1:
            return str(x[0])
        return "(%s)" % ",".join(str(a) for a in x)

    def sample(self, rng, bound):
        return tuple(rng.randint(-bound, bound) for _ in range(self.k))

    def sample_nonneg(self, rng, bound):
        if self.order == "pointwise":
            return tuple(rng.randint(0, bound) for _ in range(self.k))
        lead = rng.randint(0, bound)
        if lead == 0:
            if self.k == 1:
                return (0,)
            return (0,) + IntVectorGroup(self.k - 1, "lex").sample_nonneg(rng, bound)
        return (lead,) + tuple(rng.randint(-bound, bound) for _ in range(self.k - 1))

    def sample_dominating(self, rng, bound, g):
        if self.order == "pointwise":
            return tuple(max(-a, 0) + rng.randint(0, bound) for a in g)
        lead = abs(g[0]) + 1 + rng.randint(0, bound)
        return (lead,) + tuple(rng.randint(-bound, bound) for _ in range(self.k - 1))

    def upper_bound(self, x, y):
        if self.order == "pointwise":
            return tuple(max(a, b) for a, b in zip(x, y))
        return x if self.le(y, x) else y

    def interval_elements(self, u, cap):
        if not self.is_positive(u):
            return []
        if self.order == "pointwise":
            total = 1
            for a in u:
                total *= a + 1
            if total > cap:
                raise BoundExceededError(
                    "interval has %d elements, cap is %d" % (total, cap)
                )
            def rec(prefix, rest):
                if not rest:
                    yield prefix
                    return
                for v in range(rest[0] + 1):
                    yield from rec(prefix + (v,), rest[1:])
            return list(rec((), u))
        # lex order: finite only when all leading coordinates vanish
        if any(a != 0 for a in u[:-1]):
            raise InfiniteIntervalError(
                "lex interval [0, %s] is infinite" % (self.format(u),)
            )
        if u[-1] + 1 > cap:
            raise BoundExceededError("interval exceeds cap %d" % (cap,))
        return [(0,) * (self.k - 1) + (v,) for v in range(u[-1] + 1)]


class TwistedZ3Group(PoGroupHandle):
    """Z^3 with parity-twisted addition and the level-then-pointwise order.

    Adding (x, y, z) on the right swaps the first operand's last two
    coordinates when x is odd; a lattice-ordered group with strong unit
    (1, 0, 0).
    """

    name = "twisted-Z3"
    abelian = False
    k = 3

    def zero(self):
        return (0, 0, 0)

    def add(self, x, y):
        a, b, c = x
        p, q, r = y
        if p % 2 == 0:
            return (a + p, b + q, c + r)
        return (a + p, c + q, b + r)

    def neg(self, x):
        a, b, c = x
        if a % 2 == 0:
            return (-a, -b, -c)
        return (-a, -c, -b)

    def is_positive(self, x) -> bool:
        a, b, c = x
        return a > 0 or (a == 0 and b >= 0 and c >= 0)

    def format(self, x) -> str:
        return "(%s)" % ",".join(str(a) for a in x)

    def sample(self, rng, bound):
        return tuple(rng.randint(-bound, bound) for _ in range(3))

    def sample_nonneg(self, rng, bound):
        lead = rng.randint(0, bound)
        if lead == 0:
            return (0, rng.randint(0, bound), rng.randint(0, bound))
        return (lead, rng.randint(-bound, bound), rng.randint(-bound, bound))

    def sample_dominating(self, rng, bound, g):
        lead = abs(g[0]) + 1 + rng.randint(0, bound)
        return (lead, rng.randint(-bound, bound), rng.randint(-bound, bound))

    def upper_bound(self, x, y):
        return (max(x[0], y[0]) + 1, 0, 0)

    def interval_elements(self, u, cap):
        if not self.is_positive(u):
            return []
        if u[0] >= 1:
            raise InfiniteIntervalError(
                "interval [0, %s] in the twisted group is infinite" % (self.format(u),)
            )
        total = (u[1] + 1) * (u[2] + 1)
        if total > cap:
            raise BoundExceededError("interval has %d elements, cap is %d" % (total, cap))
        return [(0, b, c) for b in range(u[1] + 1) for c in range(u[2] + 1)]


class LexExtensionGroup(PoGroupHandle):
    """Z lex-extended by another group: pairs (m, g) ordered lexicographically;
    the group law is componentwise."""

    def __init__(self, inner: PoGroupHandle):
        self.inner = inner
        self.name = "Z-lex-(%s)" % (inner.name,)
        self.abelian = inner.abelian

    def zero(self):
        return (0, self.inner.zero())

    def add(self, x, y):
        return (x[0] + y[0], self.inner.add(x[1], y[1]))

    def neg(self, x):
        return (-x[0], self.inner.neg(x[1]))

    def is_positive(self, x) -> bool:
        if x[0] != 0:
            return x[0] > 0
        return self.inner.is_positive(x[1])

    def format(self, x) -> str:
        return "(%d,%s)" % (x[0], self.inner.format(x[1]))

    def sample(self, rng, bound):
        return (rng.randint(-bound, bound), self.inner.sample(rng, bound))

    def sample_nonneg(self, rng, bound):
        lead = rng.randint(0, bound)
        if lead == 0:
            return (0, self.inner.sample_nonneg(rng, bound))
        return (lead, self.inner.sample(rng, bound))

    def sample_dominating(self, rng, bound, g):
        lead = abs(g[0]) + 1 + rng.randint(0, bound)
        return (lead, self.inner.sample(rng, bound))

    def upper_bound(self, x, y):
        return (max(x[0], y[0]) + 1, self.inner.zero())

    def interval_elements(self, u, cap):
        if not self.is_positive(u):
            return []
        if u[0] >= 1:
            raise InfiniteIntervalError(
                "interval [0, %s] in a lex extension is infinite" % (self.format(u),)
            )
        return [(0, g) for g in self.inner.interval_elements(u[1], cap)]


class DerivedConeGroup(PoGroupHandle):
    """Same group law as the base handle, with a replaced positive cone.

    Used for automorphism-obfuscated presentations and for the group carved
    out of a symbolic algebra's bottom slice.
    """

    def __init__(self, base: PoGroupHandle, positive: Callable, name: str,
                 sample_nonneg: Optional[Callable] = None,
                 sample_dominating: Optional[Callable] = None):
        self.base = base
        self._positive = positive
        self.name = name
        self.abelian = base.abelian
        self._sample_nonneg = sample_nonneg
        self._sample_dominating = sample_dominating

    def zero(self):
        return self.base.zero()

    def add(self, x, y):
        return self.base.add(x, y)

    def neg(self, x):
        return self.base.neg(x)

    def is_positive(self, x):
        return self._positive(x)

    def format(self, x):
        return self.base.format(x)

    def sample(self, rng, bound):
        return self.base.sample(rng, bound)

    def sample_nonneg(self, rng, bound):
        if self._sample_nonneg is not None:
            return self._sample_nonneg(rng, bound)
        for _ in range(200):
            g = self.base.sample(rng, bound)
            if self.is_positive(g):
                return g
        raise InputError("rejection sampling of the cone failed for %s" % (self.name,))

    def sample_dominating(self, rng, bound, g):
        if self._sample_dominating is not None:
            return self._sample_dominating(rng, bound, g)
        for _ in range(200):
            d = self.sample_nonneg(rng, bound)
            if self.is_positive(self.add(g, d)):
                return d
        raise InputError("no dominating element found for %s" % (self.name,))

    def upper_bound(self, x, y):
        return self.base.upper_bound(x, y)


@dataclass(frozen=True)
class UnitalPoGroup:
    group: PoGroupHandle
    u: object

    def __post_init__(self):
        if not self.group.is_positive(self.u):
            raise InputError("strong unit candidate must be positive")


def builtin_group(spec: str, order: str = "pointwise") -> PoGroupHandle:
    """Builtin group from a CLI-style spec: 'z:K' (with order), 'twisted-z3',
    or 'lex:z:K' for the lex extension of Z^K."""
    spec = spec.lower()
    if spec == "twisted-z3":
        return TwistedZ3Group()
    if spec.startswith("z:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError:
            raise InputError("bad group spec %r" % (spec,)) from None
        return IntVectorGroup(k, order)
    if spec.startswith("lex:z:"):
        try:
            k = int(spec.rsplit(":", 1)[1])
        except ValueError:
            raise InputError("bad group spec %r" % (spec,)) from None
        return LexExtensionGroup(IntVectorGroup(k, order))
    raise InputError("unknown group spec %r" % (spec,))


# -- probes ---------------------------------------------------------------


@dataclass(frozen=True)
class ProbeReport:
    name: str
    passed: bool
    status: str
    samples: int
    seed: int
    failures: Tuple[Tuple[str, str], ...] = ()
    witnesses: Tuple[str, ...] = ()


def probe_pogroup(handle: PoGroupHandle, samples: int = 1000, seed: int = 0, bound: int = 10) -> ProbeReport:
    """Sampled po-group laws: associativity, identity, inverses, cone closure,
    antisymmetry, and translation invariance of the order."""
    rng = random.Random(seed)
    failures: List[Tuple[str, str]] = []

    def fail(check, *els):
        failures.append((check, ", ".join(handle.format(e) for e in els)))

    zero = handle.zero()
    for _ in range(samples):
        a = handle.sample(rng, bound)
        b = handle.sample(rng, bound)
        c = handle.sample(rng, bound)
        if handle.add(handle.add(a, b), c) != handle.add(a, handle.add(b, c)):
            fail("associativity", a, b, c)
            break
        if handle.add(a, zero) != a or handle.add(zero, a) != a:
            fail("identity", a)
            break
        if handle.add(a, handle.neg(a)) != zero or handle.add(handle.neg(a), a) != zero:
            fail("inverse", a)
            break
        p = handle.sample_nonneg(rng, bound)
        q = handle.sample_nonneg(rng, bound)
        if not handle.is_positive(handle.add(p, q)):
            fail("cone-closure", p, q)
            break
        if handle.is_positive(a) and handle.is_positive(handle.neg(a)) and a != zero:
            fail("antisymmetry", a)
            break
        lower = handle.sample(rng, bound)
        upper = handle.add(lower, p)
        if not handle.le(lower, upper):
            fail("order-vs-cone", lower, upper)
            break
        translated_l = handle.add(handle.add(c, lower), b)
        translated_u = handle.add(handle.add(c, upper), b)
        if not handle.le(translated_l, translated_u):
            fail("translation-invariance", lower, upper, c, b)
            break
        if handle.le(lower, upper) != handle.is_positive(
            handle.add(handle.neg(lower), upper)
        ):
            fail("left-right-difference", lower, upper)
            break
    passed = not failures
    return ProbeReport(
        "pogroup:%s" % handle.name, passed, "pass" if passed else "fail",
        samples, seed, tuple(failures),
    )


def is_commutator(handle: PoGroupHandle, c, samples: int = 1000, seed: int = 0, bound: int = 10):
    """Sampled centrality of c; exact (no sampling) for declared-abelian groups."""
    if handle.abelian:
        return True, None
    rng = random.Random(seed)
    for _ in range(samples):
        x = handle.sample(rng, bound)
        if handle.add(x, c) != handle.add(c, x):
            return False, x
    return True, None


def probe_torsion_free(handle: PoGroupHandle, samples: int = 500, cap: int = 12, seed: int = 0, bound: int = 10):
    rng = random.Random(seed)
    zero = handle.zero()
    for _ in range(samples):
        g = handle.sample(rng, bound)
        if g == zero:
            continue
        acc = zero
        for m in range(1, cap + 1):
            acc = handle.add(acc, g)
            if acc == zero:
                return False, (g, m)
    return True, None


def probe_strong_unit(unital: UnitalPoGroup, samples: int = 500, cap: int = 64, seed: int = 0, bound: int = 10) -> ProbeReport:
    """Per-sample witnesses n with g <= n*u; a sample with no witness within
    the cap makes the probe inconclusive, never false."""
    handle, u = unital.group, unital.u
    rng = random.Random(seed)
    witnesses = []
    unresolved = None
    for _ in range(samples):
        g = handle.sample(rng, bound)
        n = None
        acc = handle.zero()
        for m in range(1, cap + 1):
            acc = handle.add(acc, u)
            if handle.le(g, acc):
                n = m
                break
        if n is None:
            unresolved = g
            break
        witnesses.append("%s <= %d*u" % (handle.format(g), n))
    if unresolved is not None:
        return ProbeReport(
            "strong-unit:%s" % handle.name, False, "inconclusive", samples, seed,
            (("no-witness-within-cap", handle.format(unresolved)),),
            tuple(witnesses[:3]),
        )
    return ProbeReport(
        "strong-unit:%s" % handle.name, True, "pass", samples, seed, (),
        tuple(witnesses[:3]),
    )


def probe_directed(handle: PoGroupHandle, samples: int = 500, seed: int = 0, bound: int = 10) -> ProbeReport:
    rng = random.Random(seed)
    witnesses = []
    failures = []
    for _ in range(samples):
        a = handle.sample(rng, bound)
        b = handle.sample(rng, bound)
        c = handle.upper_bound(a, b)
        if not (handle.le(a, c) and handle.le(b, c)):
            failures.append(("upper-bound", "%s, %s" % (handle.format(a), handle.format(b))))
            break
        witnesses.append(handle.format(c))
    passed = not failures
    return ProbeReport(
        "directed:%s" % handle.name, passed, "pass" if passed else "fail",
        samples, seed, tuple(failures), tuple(witnesses[:3]),
    )
