"""Truncated completed quantum torus with exact Q(q) coefficients.

Elements have the normal form  Y^gamma * sum_delta c_delta Y^delta
with gamma in Z^n, delta running over nonnegative shift vectors of
total degree at most the truncation order, and c_delta in Q(q).  The
generators obey

    q^<alpha,beta> Y^alpha Y^beta = Y^(alpha+beta),
    <alpha,beta> = alpha^T B beta,

so Y^alpha Y^beta = q^(2<beta,alpha>) Y^beta Y^alpha.  Every operation
is exact; truncation only ever drops whole terms above the order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IncompatibleContexts, NonInvertible, NonTruncating
from .exchange import ExchangeMatrix
from .ratfunc import QCoefficient
from . import ratfunc


def pairing(alpha, beta, B: ExchangeMatrix) -> int:
    """<alpha, beta> = alpha^T B beta."""
    n = B.n
    if len(alpha) != n or len(beta) != n:
        raise ValueError(f"exponent vectors must have length {n}")
    b = B.entries
    total = 0
    for i, ai in enumerate(alpha):
        if ai:
            row = b[i]
            total += ai * sum(int(row[j]) * bj for j, bj in enumerate(beta) if bj)
    return total


def _row_B(alpha, B: ExchangeMatrix) -> tuple:
    """The covector alpha^T B, so <alpha, beta> = row . beta."""
    b = B.entries
    return tuple(int(sum(ai * b[i, j] for i, ai in enumerate(alpha) if ai))
                 for j in range(B.n))


@dataclass(frozen=True)
class TorusElement:
    """Normal form Y^base * sum_delta terms[delta] * Y^delta."""

    matrix: ExchangeMatrix
    order: int
    base: tuple
    terms: dict
    ring: object = ratfunc.EXACT

    def __post_init__(self):
        zero_key = (0,) * self.matrix.n
        terms = {d: c for d, c in self.terms.items()
                 if not c.is_zero() or d == zero_key}
        if zero_key not in terms:
            terms[zero_key] = self.ring.zero()
        object.__setattr__(self, "terms", terms)

    @property
    def n(self) -> int:
        return self.matrix.n

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.terms.values())

    def constant_coefficient(self) -> QCoefficient:
        """Coefficient of the delta = 0 shift."""
        return self.terms[(0,) * self.n]

    def degree_floor(self) -> int:
        """Least total shift degree carrying a nonzero coefficient."""
        degs = [sum(d) for d, c in self.terms.items() if not c.is_zero()]
        return min(degs) if degs else self.order + 1

    def scale(self, c: QCoefficient) -> "TorusElement":
        """Multiply by a central scalar from Q(q)."""
        return TorusElement(self.matrix, self.order, self.base,
                            {d: v * c for d, v in self.terms.items()}, self.ring)

    def scale_q_power(self, j: int) -> "TorusElement":
        return TorusElement(self.matrix, self.order, self.base,
                            {d: v.mul_q_power(j) for d, v in self.terms.items()},
                            self.ring)

    def __neg__(self):
        return TorusElement(self.matrix, self.order, self.base,
                            {d: -v for d, v in self.terms.items()}, self.ring)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, -other)

    def __mul__(self, other):
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        try:
            _check_context(self, other)
        except IncompatibleContexts:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.matrix, self.order, self.base))

    def evaluate_commutative(self, yvals, q0=1) -> float:
        """Send Y_i to commuting numbers yvals[i] and q to q0.

        Only meaningful for elements whose coefficients are regular at
        q0 (trajectory elements are; quantum-dilogarithm series are
        not regular at q0 = 1).
        """
        q0 = Fraction(q0)
        total = 0.0
        for d, c in self.terms.items():
            if c.is_zero():
                continue
            mono = 1.0
            for i, e in enumerate(d):
                mono *= float(yvals[i]) ** (self.base[i] + e)
            total += float(c.evaluate(q0)) * mono
        return total

    def pretty(self) -> str:
        bits = []
        for d in sorted(self.terms, key=lambda t: (sum(t), t)):
            c = self.terms[d]
            if c.is_zero():
                continue
            mono = "*".join(f"Y{i+1}^{e}" for i, e in enumerate(d) if e)
            bits.append(f"{c!r}{'*' + mono if mono else ''}")
        body = " + ".join(bits) if bits else "0"
        if any(self.base):
            head = "*".join(f"Y{i+1}^{e}" for i, e in enumerate(self.base) if e)
            return f"Y^{self.base}[{head}] * ({body})"
        return body


def _check_context(a: TorusElement, b: TorusElement) -> None:
    if a.matrix != b.matrix or a.order != b.order or a.ring != b.ring:
        raise IncompatibleContexts(
            "torus elements carry different matrices, truncation orders, "
            "or coefficient fields")


def monomial(alpha, B: ExchangeMatrix, N: int, ring=ratfunc.EXACT) -> TorusElement:
    """The Laurent monomial Y^alpha at truncation order N."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != B.n:
        raise ValueError(f"exponent vector must have length {B.n}")
    return TorusElement(B, N, alpha, {(0,) * B.n: ring.one()}, ring)


def unit(B: ExchangeMatrix, N: int, ring=ratfunc.EXACT) -> TorusElement:
    return monomial((0,) * B.n, B, N, ring)


def zero_element(B: ExchangeMatrix, N: int, ring=ratfunc.EXACT) -> TorusElement:
    return TorusElement(B, N, (0,) * B.n, {(0,) * B.n: ring.zero()}, ring)


def scalar(c, B: ExchangeMatrix, N: int, ring=ratfunc.EXACT) -> TorusElement:
    return TorusElement(B, N, (0,) * B.n, {(0,) * B.n: c}, ring)


def _rebase(elem: TorusElement, newbase: tuple) -> dict:
    """Terms of elem re-expressed over a lower base (entrywise <=).

    Y^g sum c_d Y^d = Y^g' sum c_d q^(<g',s> - <s,d>) Y^(s+d), s = g-g'.
    Terms pushed above the order are dropped, consistently with the
    truncation contract.
    """
    g = elem.base
    s = tuple(a - b for a, b in zip(g, newbase))
    if not any(s):
        return dict(elem.terms)
    B, N = elem.matrix, elem.order
    head = pairing(newbase, s, B)
    row_s = _row_B(s, B)
    out = {}
    for d, c in elem.terms.items():
        nd = tuple(si + di for si, di in zip(s, d))
        if sum(nd) > N:
            continue
        e = head - sum(r * di for r, di in zip(row_s, d))
        out[nd] = c.mul_q_power(e)
    return out


def add(a: TorusElement, b: TorusElement) -> TorusElement:
    _check_context(a, b)
    newbase = tuple(min(x, y) for x, y in zip(a.base, b.base))
    ta = _rebase(a, newbase)
    tb = _rebase(b, newbase)
    for d, c in tb.items():
        if d in ta:
            ta[d] = ta[d] + c
        else:
            ta[d] = c
    return TorusElement(a.matrix, a.order, newbase, ta, a.ring)


def multiply(a: TorusElement, b: TorusElement) -> TorusElement:
    """Graded product; exact coefficients, terms above the order dropped."""
    _check_context(a, b)
    B, N = a.matrix, a.order
    g1, g2 = a.base, b.base
    head = -pairing(g1, g2, B)
    out = {}
    bterms = list(b.terms.items())
    for d, cd in a.terms.items():
        if cd.is_zero():
            continue
        wd = sum(d)
        e1 = head + 2 * pairing(g2, d, B)
        row_d = _row_B(d, B)
        for e, ce in bterms:
            if ce.is_zero() or wd + sum(e) > N:
                continue
            key = tuple(x + y for x, y in zip(d, e))
            qexp = e1 - sum(r * ei for r, ei in zip(row_d, e))
            val = (cd * ce).mul_q_power(qexp)
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return TorusElement(B, N, tuple(x + y for x, y in zip(g1, g2)), out, a.ring)


def power(a: TorusElement, m: int) -> TorusElement:
    """a^m for m >= 0 by repeated multiplication (noncommutative)."""
    if m < 0:
        raise ValueError("negative powers go through invert()")
    acc = unit(a.matrix, a.order, a.ring)
    for _ in range(m):
        acc = multiply(acc, a)
    return acc


def invert(a: TorusElement) -> TorusElement:
    """Two-sided inverse up to the truncation order.

    Requires a nonzero delta = 0 coefficient; computed by geometric
    series applied to the shift part, then shifted by Y^(-base).
    """
    c0 = a.constant_coefficient()
    if c0.is_zero():
        raise NonInvertible("element has zero constant-shift coefficient")
    B, N, ring = a.matrix, a.order, a.ring
    u = multiply(monomial(tuple(-x for x in a.base), B, N, ring), a)
    c0 = u.constant_coefficient()
    c0_inv = c0.inverse()
    zero_key = (0,) * B.n
    w = TorusElement(B, N, zero_key,
                     {d: c * c0_inv for d, c in u.terms.items() if d != zero_key},
                     ring)
    acc = unit(B, N, ring)
    t = unit(B, N, ring)
    for _ in range(N):
        t = -multiply(t, w)
        if t.is_zero():
            break
        acc = add(acc, t)
    acc = acc.scale(c0_inv)
    return multiply(acc, monomial(tuple(-x for x in a.base), B, N, ring))


def psi_series(x: TorusElement, N: int | None = None) -> TorusElement:
    """The quantum dilogarithm series sum_n (-q x)^n / (q^2; q^2)_n.

    The argument must push degrees up under powers: its base exponent
    vector is nonnegative and nonzero, or zero with no constant term.
    Anything else cannot truncate and raises NonTruncating.
    """
    if N is not None and N != x.order:
        raise IncompatibleContexts("requested order differs from the argument's")
    N = x.order
    base = x.base
    if any(e < 0 for e in base):
        raise NonTruncating(
            f"argument base {base} has a negative exponent; powers of the "
            "argument do not raise the total degree")
    step = sum(base)
    if step == 0:
        if not x.constant_coefficient().is_zero():
            raise NonTruncating(
                "argument has a degree-0 component; the series does not truncate")
        step = x.degree_floor()
        if step > N:
            return unit(x.matrix, x.order, x.ring)
    acc = unit(x.matrix, N, x.ring)
    xp = unit(x.matrix, N, x.ring)
    for n in range(1, N // step + 1):
        xp = multiply(xp, x)
        if xp.is_zero():
            break
        acc = add(acc, xp.scale(x.ring.psi_coefficient(n)))
    return acc


def deviation_from(elem: TorusElement, reference: TorusElement) -> list:
    """Nonzero terms of elem - reference, reported as
    (total exponent vector, canonical coefficient) pairs."""
    diff = elem - reference
    out = []
    for d, c in sorted(diff.terms.items(), key=lambda t: (sum(t[0]), t[0])):
        if not c.is_zero():
            expo = tuple(b + e for b, e in zip(diff.base, d))
            out.append((expo, c.canonical()))
    return out
