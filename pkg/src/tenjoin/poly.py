"""Exact univariate polynomials over the rationals.

Coefficients are stored in ascending order (``coeffs[i]`` multiplies ``x**i``)
as :class:`fractions.Fraction`. The zero polynomial has no coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

__all__ = ["RationalPoly", "as_fraction"]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and decimal/``p/q`` strings to a Fraction.

    Floats are refused: they would smuggle rounding into exact arithmetic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"float {value!r} is not exact; pass a Fraction or a string")
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class RationalPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "RationalPoly":
        return cls((c,))

    @classmethod
    def one(cls) -> "RationalPoly":
        return cls((1,))

    @classmethod
    def linear_root(cls, root) -> "RationalPoly":
        """The monic factor ``x - root``."""
        return cls((-as_fraction(root), 1))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RationalPoly":
        p = cls.one()
        for r in roots:
            p = p * cls.linear_root(r)
        return p

    @classmethod
    def from_descending(cls, coeffs: Sequence) -> "RationalPoly":
        return cls(reversed(list(coeffs)))

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def descending(self) -> list[Fraction]:
        return list(reversed(self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if power == 0:
                body = str(mag)
            else:
                mono = "x" if power == 1 else f"x^{power}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly.const(other)

    def __add__(self, other) -> "RationalPoly":
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "RationalPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            c = as_fraction(other)
            return RationalPoly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RationalPoly":
        if k < 0:
            raise ValueError("negative power")
        result, base = RationalPoly.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        if len(rem) - 1 < dq:
            return RationalPoly(), RationalPoly(rem)
        quot = [Fraction(0)] * (len(rem) - dq)
        for shift in range(len(rem) - 1 - dq, -1, -1):
            c = rem[shift + dq] / lead
            quot[shift] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] -= c * b
        return RationalPoly(quot), RationalPoly(rem[:dq])

    def __floordiv__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "RationalPoly") -> "RationalPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        """Horner evaluation; exact for Fraction/int input."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- algebra ----------------------------------------------------------

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def derivative(self) -> "RationalPoly":
        return RationalPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def gcd(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> list[tuple["RationalPoly", int]]:
        """Yun's square-free decomposition of the monic part.

        Returns ``[(f_k, k), ...]`` with each ``f_k`` square-free, monic and
        non-constant, such that ``self.monic() == prod f_k**k``.
        """
        if self.degree < 1:
            return []
        f = self.monic()
        out = []
        a = f.gcd(f.derivative())
        b = f.exact_div(a)
        c = f.derivative().exact_div(a) if a.degree >= 0 else f.derivative()
        d = c - b.derivative()
        k = 1
        while b.degree > 0:
            g = b.gcd(d)
            if g.degree > 0:
                out.append((g, k))
            b = b.exact_div(g)
            c = d.exact_div(g)
            d = c - b.derivative()
            k += 1
        return out

    def affine_image(self, scale, shift) -> "RationalPoly":
        """Monic polynomial whose roots are ``scale*r + shift`` for the roots r.

        For ``scale == 0`` every root maps to ``shift``.
        """
        scale, shift = as_fraction(scale), as_fraction(shift)
        d = self.degree
        if d < 1:
            return RationalPoly.one()
        if scale == 0:
            return RationalPoly.linear_root(shift) ** d
        # q(x) = scale^d * p((x - shift) / scale), monic after dividing by lead
        inner = RationalPoly((-shift / scale, 1 / scale))
        acc = RationalPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc.monic()

    def integer_form(self) -> tuple[list[int], int]:
        """Primitive integer coefficients (ascending) and the scaling used."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        g = g or 1
        return [v // g for v in ints], den

    # -- roots ------------------------------------------------------------

    def rational_roots(self) -> tuple[list[tuple[Fraction, int]], "RationalPoly"]:
        """Split off every rational root.

        Returns ``(roots, rest)`` where ``roots`` lists ``(root, multiplicity)``
        and ``rest`` is the monic cofactor with no rational roots.  Candidates
        come from floating roots of each square-free part and are confirmed by
        exact evaluation, so a missed candidate only leaves it inside ``rest``.
        """
        if self.degree < 1:
            return [], RationalPoly.one()
        found: dict[Fraction, int] = {}
        rest = RationalPoly.one()
        for part, mult in self.squarefree():
            remaining = part
            for cand in _rational_candidates(part):
                if remaining.degree < 1:
                    break
                if remaining(cand) == 0:
                    remaining = remaining.exact_div(RationalPoly.linear_root(cand))
                    found[cand] = found.get(cand, 0) + mult
            if remaining.degree > 0:
                rest = rest * remaining ** mult
        roots = sorted(found.items())
        return roots, rest

    def float_roots(self) -> np.ndarray:
        """Real parts of all roots with multiplicity, sorted ascending."""
        if self.degree < 1:
            return np.zeros(0)
        out: list[float] = []
        for part, mult in self.squarefree():
            rs = _squarefree_roots(part)
            out.extend(float(mpmath.re(r)) for r in rs for _ in range(mult))
        return np.sort(np.array(out, dtype=float))


def _mpf_to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    man, exp = x.man_exp
    f = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -f if x < 0 else f


def _squarefree_roots(p: RationalPoly, dps: int = 40) -> list:
    """High-precision roots of a square-free polynomial (mpmath complex).

    numpy's companion-matrix roots seed a Newton polish at ``dps`` digits;
    if polishing collapses two seeds onto one root, mpmath's own solver is
    used instead.
    """
    if p.degree == 1:
        c0, c1 = p.coeffs
        return [mpmath.mpf(-c0.numerator) / c0.denominator / (mpmath.mpf(c1.numerator) / c1.denominator)]
    with mpmath.workdps(dps):
        desc = [mpmath.mpf(c.numerator) / c.denominator for c in p.descending()]
        seeds = np.roots([float(c) for c in p.descending()])
        roots = [_newton(desc, mpmath.mpc(complex(g))) for g in seeds]
        gap = min(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:])
        if len(roots) != p.degree or gap < mpmath.mpf(10) ** (-dps // 2):
            roots = mpmath.polyroots(desc, maxsteps=800, extraprec=8 * dps)
        return [+r for r in roots]


def _newton(desc, z, steps: int = 60):
    for _ in range(steps):
        val, der = mpmath.mpc(0), mpmath.mpc(0)
        for c in desc:
            der = der * z + val
            val = val * z + c
        if der == 0:
            break
        step = val / der
        z -= step
        if abs(step) < mpmath.mpf(10) ** (-mpmath.mp.dps + 5):
            break
    return z


def _rational_candidates(p: RationalPoly) -> list[Fraction]:
    ints, _ = p.integer_form()
    lead = abs(ints[-1])
    cands = []
    if p.coeffs and p.coeffs[0] == 0:
        cands.append(Fraction(0))
    with mpmath.workdps(40):
        for r in _squarefree_roots(p):
            if abs(mpmath.im(r)) > mpmath.mpf(10) ** -20 * max(1, abs(r)):
                continue
            cands.append(_mpf_to_fraction(mpmath.re(r)).limit_denominator(lead))
    return list(dict.fromkeys(cands))
