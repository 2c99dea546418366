"""Exact arithmetic on the extended real line [-inf, +inf].

Three ordered structures share the carrier:

* ``w``  -- the whole line with the extended sum (``+inf`` absorbs everything,
  including ``-inf``) and its internal hom, the extended difference;
* ``w+`` -- the half line [0, +inf] with the truncated difference;
* ``w*`` -- [0, +inf] with the multiplicative product (``0 * inf = inf``).

Finite values are :class:`fractions.Fraction`; the two infinities are separate
tags so that ``-inf + inf = inf`` and ``inf - inf = -inf`` can never be produced
by accident from IEEE semantics.
"""

from __future__ import annotations

import decimal
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Union

__all__ = [
    "ExtReal",
    "NEG_INF",
    "POS_INF",
    "ZERO",
    "ONE",
    "ext",
    "esum",
    "esum_all",
    "ediff",
    "trunc_diff",
    "scale",
    "positive_part",
    "emin",
    "emax",
    "wmul",
    "wdiv",
    "IsoValue",
    "exp_iso",
    "ln_iso",
    "parse_ext",
    "render_ext",
]

_NEG, _FIN, _POS = -1, 0, 1
_Q0 = Fraction(0)

Number = Union[int, Fraction, Rational]


class ExtReal:
    """A value of [-inf, +inf] with an exact rational payload when finite.

    Instances are immutable and totally ordered.  Plain ``int`` and
    ``Fraction`` operands are coerced, so ``ExtReal(2) < 3`` works.
    """

    __slots__ = ("_tag", "_q")

    def __init__(self, value: Number = 0, _tag: int = _FIN) -> None:
        if _tag == _FIN:
            if isinstance(value, bool) or not isinstance(value, (int, Fraction, Rational)):
                raise TypeError(f"finite ExtReal needs an exact rational, got {value!r}")
            q = Fraction(value)
        else:
            q = _Q0
        object.__setattr__(self, "_tag", _tag)
        object.__setattr__(self, "_q", q)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("ExtReal is immutable")

    def __reduce__(self):
        return (_rebuild, (self._q, self._tag))

    # -- inspection -----------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self._tag == _FIN

    @property
    def is_pos_inf(self) -> bool:
        return self._tag == _POS

    @property
    def is_neg_inf(self) -> bool:
        return self._tag == _NEG

    @property
    def value(self) -> Fraction:
        """The rational payload; raises for the infinities."""
        if self._tag != _FIN:
            raise ValueError(f"{self} has no finite value")
        return self._q

    # -- order ----------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._tag == other._tag and self._q == other._q

    def __hash__(self):
        # finite values hash like the rationals they compare equal to
        return hash(self._q) if self._tag == _FIN else hash(("ExtReal", self._tag))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._tag != other._tag:
            return self._tag < other._tag
        return self._q < other._q

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._tag != other._tag:
            return self._tag < other._tag
        return self._q <= other._q

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other < self

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other <= self

    # -- operators mirror the quantale, not IEEE ------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return esum(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ediff(self, other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ediff(other, self)

    def __neg__(self):
        return ediff(ZERO, self)

    def __repr__(self):
        return f"ExtReal({render_ext(self)})"

    def __str__(self):
        return render_ext(self)


_new = object.__new__
_set = object.__setattr__


def _finite(q: Fraction) -> "ExtReal":
    # fast path for already-exact payloads
    x = _new(ExtReal)
    _set(x, "_tag", _FIN)
    _set(x, "_q", q)
    return x


def _rebuild(q, tag):
    if tag == _POS:
        return POS_INF
    if tag == _NEG:
        return NEG_INF
    return ExtReal(q)


def _coerce(x):
    if isinstance(x, ExtReal):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return ExtReal(x)
    return NotImplemented


NEG_INF = ExtReal(0, _NEG)
POS_INF = ExtReal(0, _POS)
ZERO = ExtReal(0)
ONE = ExtReal(1)


def ext(x) -> ExtReal:
    """Coerce ``x`` (ExtReal, int, Fraction or literal string) to ExtReal."""
    if isinstance(x, ExtReal):
        return x
    if isinstance(x, str):
        return parse_ext(x)
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to ExtReal")
    return c


# ---------------------------------------------------------------------------
# w: extended sum and extended difference


def esum(a: ExtReal, b: ExtReal) -> ExtReal:
    """Extended sum; ``+inf`` absorbs everything, then ``-inf`` absorbs finites."""
    ta, tb = a._tag, b._tag
    if ta == _POS or tb == _POS:
        return POS_INF
    if ta == _NEG or tb == _NEG:
        return NEG_INF
    return _finite(a._q + b._q)


def esum_all(values: Iterable[ExtReal]) -> ExtReal:
    """Sum of a finite family; the empty sum is 0."""
    total = ZERO
    for v in values:
        total = esum(total, v)
    return total


def ediff(nu: ExtReal, mu: ExtReal) -> ExtReal:
    """Internal hom of ``w``: the least ``lam`` with ``lam + mu >= nu``."""
    tn, tm = nu._tag, mu._tag
    if tm == _POS:
        # lam + inf = inf >= nu for every lam
        return NEG_INF
    if tm == _NEG:
        # lam + (-inf) is -inf unless lam = inf
        return NEG_INF if tn == _NEG else POS_INF
    if tn == _FIN:
        return _finite(nu._q - mu._q)
    return nu


def trunc_diff(nu: ExtReal, mu: ExtReal) -> ExtReal:
    """Internal hom of ``w+``: ``(nu - mu) v 0`` with ``inf - inf = 0``."""
    if nu < ZERO or mu < ZERO:
        raise ValueError("trunc_diff is defined on [0, inf] only")
    if mu._tag == _POS:
        return ZERO
    if nu._tag == _POS:
        return POS_INF
    d = nu._q - mu._q
    return ExtReal(d) if d > 0 else ZERO


def positive_part(a: ExtReal) -> ExtReal:
    """``a v 0``, the coreflection of ``w`` onto ``w+``."""
    return a if a._tag == _POS or (a._tag == _FIN and a._q > 0) else ZERO


def scale(lam, a: ExtReal) -> ExtReal:
    """Multiply by a finite coefficient ``lam >= 0``; ``0 * (+-inf) = +-inf``."""
    if isinstance(lam, ExtReal):
        if not lam.is_finite:
            raise ValueError("scale coefficient must be finite")
        lam = lam.value
    if isinstance(lam, bool) or not isinstance(lam, (int, Fraction)):
        raise TypeError(f"scale coefficient must be an exact rational, got {lam!r}")
    if lam < 0:
        raise ValueError("scale coefficient must be >= 0")
    if a._tag != _FIN:
        return a
    return ExtReal(Fraction(lam) * a._q)


def emin(*values: ExtReal) -> ExtReal:
    return min(values)


def emax(*values: ExtReal) -> ExtReal:
    return max(values)


# ---------------------------------------------------------------------------
# w*: multiplicative weights


def _require_weight(x: ExtReal, name: str) -> None:
    if x < ZERO:
        raise ValueError(f"{name} must lie in [0, inf], got {x}")


def wmul(a: ExtReal, b: ExtReal) -> ExtReal:
    """Product of ``w*``; ``lam * inf = inf`` for every ``lam``, including 0."""
    _require_weight(a, "a")
    _require_weight(b, "b")
    if a._tag == _POS or b._tag == _POS:
        return POS_INF
    return ExtReal(a._q * b._q)


def wdiv(nu: ExtReal, mu: ExtReal) -> ExtReal:
    """Internal hom of ``w*``: the least ``lam`` with ``lam * mu >= nu``."""
    _require_weight(nu, "nu")
    _require_weight(mu, "mu")
    if mu._tag == _POS:
        return ZERO
    if nu._tag == _POS:
        return POS_INF
    if mu._q == 0:
        return ZERO if nu._q == 0 else POS_INF
    return ExtReal(nu._q / mu._q)


class IsoValue(NamedTuple):
    """Result of the exp/ln isomorphism; ``exact`` is False for decimal approximations."""

    value: ExtReal
    exact: bool


ISO_PRECISION = 40


def exp_iso(a: ExtReal) -> IsoValue:
    """``w -> w*``.  Finite non-zero inputs are evaluated to ``ISO_PRECISION`` digits."""
    if a._tag == _NEG:
        return IsoValue(ZERO, True)
    if a._tag == _POS:
        return IsoValue(POS_INF, True)
    if a._q == 0:
        return IsoValue(ONE, True)
    with decimal.localcontext() as ctx:
        ctx.prec = ISO_PRECISION
        x = decimal.Decimal(a._q.numerator) / decimal.Decimal(a._q.denominator)
        return IsoValue(ExtReal(Fraction(x.exp())), False)


def ln_iso(b: ExtReal) -> IsoValue:
    """``w* -> w``, inverse of :func:`exp_iso`."""
    if b._tag == _NEG or (b._tag == _FIN and b._q < 0):
        raise ValueError(f"ln_iso needs a value in [0, inf], got {b}")
    if b._tag == _POS:
        return IsoValue(POS_INF, True)
    if b._q == 0:
        return IsoValue(NEG_INF, True)
    if b._q == 1:
        return IsoValue(ZERO, True)
    with decimal.localcontext() as ctx:
        ctx.prec = ISO_PRECISION
        x = decimal.Decimal(b._q.numerator) / decimal.Decimal(b._q.denominator)
        return IsoValue(ExtReal(Fraction(x.ln())), False)


# ---------------------------------------------------------------------------
# text form


def parse_ext(text) -> ExtReal:
    """Parse ``"inf"``, ``"-inf"``, ``"p/q"``, decimals and integers exactly."""
    if isinstance(text, ExtReal):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not an extended real: {text!r}")
    if isinstance(text, (int, Fraction)):
        return ExtReal(text)
    if isinstance(text, float):
        raise ValueError("binary floats are not accepted; use a decimal or 'p/q' string")
    s = str(text).strip().lower()
    if s in ("inf", "+inf", "infinity", "+infinity"):
        return POS_INF
    if s in ("-inf", "-infinity"):
        return NEG_INF
    try:
        return ExtReal(Fraction(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an extended real: {text!r}") from exc


def render_ext(a: ExtReal) -> str:
    if a._tag == _POS:
        return "inf"
    if a._tag == _NEG:
        return "-inf"
    q = a._q
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
