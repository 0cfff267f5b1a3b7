"""Exact scalar and rational-function arithmetic for localization sums.

Scalars are arbitrary-precision rationals (``fractions.Fraction``), which
already guarantee lowest terms and a positive denominator.  On top of that
this module implements ``TFunction``: a univariate rational function in the
auxiliary dilation variable t, stored in canonical form so that equality and
hashing are structural.

Canonical form: numerator and denominator are coprime dense polynomials over
Fraction, and the denominator is monic.  All arithmetic is exact; nothing in
this package ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PoleAtZero(ArithmeticError):
    """Evaluation at t=0 was requested for a function with a pole there."""


class ZeroFunction(ArithmeticError):
    """The order of vanishing of the zero function was requested."""


# ---------------------------------------------------------------------------
# dense polynomial helpers; a polynomial is a tuple of Fractions, index = power
# ---------------------------------------------------------------------------

def _trim(cs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _pscale(a, c: Fraction):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    """Quotient and remainder of dense polynomials over the rationals."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [_ZERO] * max(len(a) - len(b) + 1, 0)
    inv_lead = 1 / b[-1]
    while len(_trim(a)) >= len(b):
        a = list(_trim(a))
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead
        q[shift] = coef
        for i, cb in enumerate(b):
            a[shift + i] -= coef * cb
    return _trim(q), _trim(a)


def _pmonic(a):
    if not a or a[-1] == 1:
        return a
    return _pscale(a, 1 / a[-1])


def _pgcd(a, b):
    a, b = _pmonic(_trim(a)), _pmonic(_trim(b))
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, _pmonic(r)
    return a if a else ()


def _pval(a) -> int:
    for i, c in enumerate(a):
        if c != 0:
            return i
    raise ZeroFunction("zero polynomial has no valuation")


def _pstr(a) -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            var = "t" if i == 1 else f"t^{i}"
            term = f"{'-' if c < 0 else ''}{mag}{var}"
            if parts and c > 0:
                term = term
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class TFunction:
    """A rational function in t with exact rational coefficients.

    ``num`` and ``den`` are dense coefficient tuples in canonical form:
    coprime, den monic and nonzero.  The zero function is ((), (1,)).
    """

    num: Tuple[Fraction, ...]
    den: Tuple[Fraction, ...]

    # -- constructors -------------------------------------------------------

    @staticmethod
    def _make(num: Iterable[Fraction], den: Iterable[Fraction]) -> "TFunction":
        num, den = _trim(tuple(num)), _trim(tuple(den))
        if not den:
            raise ZeroDivisionError("denominator is the zero polynomial")
        if not num:
            return TFunction((), (_ONE,))
        g = _pgcd(num, den)
        if len(g) > 1:
            num, _ = _pdivmod(num, g)
            den, _ = _pdivmod(den, g)
        lead = den[-1]
        if lead != 1:
            num = _pscale(num, 1 / lead)
            den = _pscale(den, 1 / lead)
        return TFunction(num, den)

    @staticmethod
    def from_scalar(x) -> "TFunction":
        x = _as_fraction(x)
        return TFunction((x,), (_ONE,)) if x else TFunction((), (_ONE,))

    @staticmethod
    def variable() -> "TFunction":
        """The coordinate function t."""
        return TFunction((_ZERO, _ONE), (_ONE,))

    @staticmethod
    def linear(constant, slope=1) -> "TFunction":
        """The polynomial slope*t + constant."""
        return TFunction._make((_as_fraction(constant), _as_fraction(slope)), (_ONE,))

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def as_scalar(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant function: {self}")
        return self.num[0] if self.num else _ZERO

    # -- arithmetic (ints and Fractions coerce to constant functions) -------

    @staticmethod
    def _coerce(x):
        if isinstance(x, TFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return TFunction.from_scalar(x)
        return None

    def __add__(self, other) -> "TFunction":
        other = TFunction._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return TFunction._make(_padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return TFunction._make(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self) -> "TFunction":
        return TFunction(_pneg(self.num), self.den)

    def __sub__(self, other) -> "TFunction":
        other = TFunction._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "TFunction":
        other = TFunction._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "TFunction":
        other = TFunction._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return TFunction((), (_ONE,))
        return TFunction._make(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TFunction":
        other = TFunction._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return TFunction._make(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other) -> "TFunction":
        other = TFunction._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int) -> "TFunction":
        if k < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of the zero function")
            return TFunction._make(self.den, self.num) ** (-k)
        out = TFunction.from_scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def scale(self, c) -> "TFunction":
        c = _as_fraction(c)
        if c == 0 or self.is_zero():
            return TFunction((), (_ONE,))
        return TFunction(_pscale(self.num, c), self.den)

    # -- evaluation / orders -------------------------------------------------

    def eval_at_zero(self) -> Fraction:
        den0 = self.den[0]
        if den0 == 0:
            raise PoleAtZero(f"pole of order {_pval(self.den)} at t=0")
        return (self.num[0] if self.num else _ZERO) / den0

    def valuation_at_zero(self) -> int:
        if self.is_zero():
            raise ZeroFunction("the zero function has no valuation at t=0")
        return _pval(self.num) - _pval(self.den)

    def __str__(self) -> str:
        if len(self.den) == 1:
            return _pstr(self.num)
        return f"({_pstr(self.num)}) / ({_pstr(self.den)})"


TF_ZERO = TFunction((), (_ONE,))
TF_ONE = TFunction((_ONE,), (_ONE,))


# ---------------------------------------------------------------------------
# operation-style entry points
# ---------------------------------------------------------------------------

def tf_add(a: TFunction, b: TFunction) -> TFunction:
    return a + b


def tf_mul(a: TFunction, b: TFunction) -> TFunction:
    return a * b


def tf_div(a: TFunction, b: TFunction) -> TFunction:
    return a / b


def tf_eval_at_zero(f: TFunction) -> Fraction:
    return f.eval_at_zero()


def tf_valuation_at_zero(f: TFunction) -> int:
    return f.valuation_at_zero()


def tf_sum(terms: Iterable[TFunction]) -> TFunction:
    """Sum many rational functions, grouping by denominator first.

    Localization sums hit the same small set of denominators thousands of
    times; adding numerators per denominator before cross-multiplying keeps
    intermediate degrees flat.
    """
    by_den: dict = {}
    for f in terms:
        cur = by_den.get(f.den)
        by_den[f.den] = f.num if cur is None else _padd(cur, f.num)
    total = TF_ZERO
    for den, num in by_den.items():
        total = total + TFunction._make(num, den)
    return total
