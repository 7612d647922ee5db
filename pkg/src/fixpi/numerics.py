"""Arbitrary-precision decimal fixed point.

A value is an integer mantissa scaled by ``10**-frac_digits``.  Every
precision-bounded operation truncates toward zero; the single rounding entry
point is :meth:`BigFixed.round_to_significant`, which the iteration layer
uses when it commits a step at its published significant-digit budget.

The digit crunching is delegated to the stdlib ``decimal`` module (libmpdec),
which multiplies million-digit coefficients in milliseconds.  All arithmetic
goes through one wide-open context whose precision ceiling is astronomically
larger than anything produced here, so context operations are exact and the
explicit ``quantize`` calls below do all precision control.  Never route a
value through bare ``Decimal`` operators: those consult the thread-local
context, which defaults to 28 digits.
"""

from __future__ import annotations

import decimal
from decimal import Decimal, ROUND_DOWN, ROUND_HALF_EVEN

from .errors import NumberParseError

__all__ = ["BigFixed"]

_CTX = decimal.Context(
    prec=decimal.MAX_PREC,
    Emin=decimal.MIN_EMIN,
    Emax=decimal.MAX_EMAX,
    rounding=ROUND_DOWN,
)

_DIGITS = frozenset("0123456789")


def _ten_pow(exp: int) -> Decimal:
    # 10**exp built structurally, so no context limit applies.
    return Decimal((0, (1,), exp))


def _check_precision(digits) -> None:
    if not isinstance(digits, int) or digits < 1:
        raise ValueError(f"precision must be a positive integer, got {digits!r}")


def _check_grid(digits) -> None:
    if not isinstance(digits, int) or digits < 0:
        raise ValueError(f"digits must be a non-negative int, got {digits!r}")


def _trunc(d: Decimal, digits: int) -> Decimal:
    q = d.quantize(_ten_pow(-digits), rounding=ROUND_DOWN, context=_CTX)
    if q.is_zero() and q.is_signed():
        q = q.copy_abs()
    return q


def _validate_numeral(text: str) -> None:
    # Grammar: [+-] digits [. digits] [ (e|E) [+-] digits ]
    n = len(text)
    i = 0
    if n == 0:
        raise NumberParseError("empty numeral", 0, text)
    if text[i] in "+-":
        i += 1
    start = i
    while i < n and text[i] in _DIGITS:
        i += 1
    if i == start:
        raise NumberParseError("expected digit", i, text)
    if i < n and text[i] == ".":
        i += 1
        start = i
        while i < n and text[i] in _DIGITS:
            i += 1
        if i == start:
            raise NumberParseError("expected digit after decimal point", i, text)
    if i < n and text[i] in "eE":
        i += 1
        if i < n and text[i] in "+-":
            i += 1
        start = i
        while i < n and text[i] in _DIGITS:
            i += 1
        if i == start:
            raise NumberParseError("expected digit in exponent", i, text)
    if i != n:
        raise NumberParseError("unexpected character", i, text)


class BigFixed:
    """Immutable decimal fixed-point number.

    Equality and ordering compare values, so ``BigFixed(300, 2) ==
    BigFixed(3, 0)``.  ``frac_digits`` is representation, not value: it states
    the grid the mantissa lives on.
    """

    __slots__ = ("_dec", "_frac")

    def __init__(self, mantissa: int, frac_digits: int = 0):
        if not isinstance(mantissa, int):
            raise TypeError(f"mantissa must be an int, got {type(mantissa).__name__}")
        if not isinstance(frac_digits, int) or frac_digits < 0:
            raise ValueError(f"frac_digits must be a non-negative int, got {frac_digits!r}")
        self._dec = _CTX.scaleb(Decimal(mantissa), -frac_digits)
        self._frac = frac_digits

    @classmethod
    def _wrap(cls, dec: Decimal, frac: int) -> "BigFixed":
        # Internal fast path: dec's exponent is already -frac.
        if dec.is_zero() and dec.is_signed():
            dec = dec.copy_abs()
        obj = object.__new__(cls)
        obj._dec = dec
        obj._frac = frac
        return obj

    # -- construction ------------------------------------------------------

    @classmethod
    def parse(cls, text: str, digits: int) -> "BigFixed":
        """Parse an optionally signed decimal numeral (scientific notation
        allowed), truncated toward zero at ``digits`` fractional digits.

        Raises NumberParseError naming the 0-based offending position.
        """
        _check_precision(digits)
        if not isinstance(text, str):
            raise NumberParseError("numeral must be a string", 0, repr(text))
        _validate_numeral(text)
        return cls._wrap(_trunc(Decimal(text), digits), digits)

    @classmethod
    def from_int(cls, value: int) -> "BigFixed":
        return cls(value, 0)

    # -- representation probes ---------------------------------------------

    @property
    def mantissa(self) -> int:
        return int(_CTX.scaleb(self._dec, self._frac))

    @property
    def frac_digits(self) -> int:
        return self._frac

    def is_zero(self) -> bool:
        return self._dec.is_zero()

    def magnitude_exponent(self):
        """floor(log10 |x|), read off the digit structure in O(1); None for 0."""
        if self._dec.is_zero():
            return None
        return self._dec.adjusted()

    # -- precision control ---------------------------------------------------

    def round_to(self, digits: int) -> "BigFixed":
        """Truncate toward zero onto the ``digits``-fractional-digit grid.

        Growing the grid is exact padding, so round_to is idempotent and
        never changes a value that already fits.
        """
        _check_grid(digits)
        return BigFixed._wrap(_trunc(self._dec, digits), digits)

    def round_to_significant(self, sig_digits: int) -> "BigFixed":
        """Round to nearest (ties to even) at ``sig_digits`` significant digits.

        The one rounding operation in the package: committing an iteration
        step this way keeps the stored value within half an ulp of the
        evaluated one, so the guard digits spent on the evaluation are not
        wasted.  Zero is returned unchanged.
        """
        _check_precision(sig_digits)
        if self._dec.is_zero():
            return self
        exp = self._dec.adjusted() - sig_digits + 1
        q = self._dec.quantize(_ten_pow(exp), rounding=ROUND_HALF_EVEN, context=_CTX)
        if exp > 0:
            # value's precision grid is coarser than integers; re-anchor at 1
            return BigFixed._wrap(_trunc(q, 0), 0)
        return BigFixed._wrap(q, -exp)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        frac = max(self._frac, other._frac)
        return BigFixed._wrap(_CTX.add(self._dec, other._dec), frac)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        frac = max(self._frac, other._frac)
        return BigFixed._wrap(_CTX.subtract(self._dec, other._dec), frac)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other.__sub__(self)

    def __neg__(self) -> "BigFixed":
        return BigFixed._wrap(self._dec.copy_negate(), self._frac)

    def __abs__(self) -> "BigFixed":
        return BigFixed._wrap(self._dec.copy_abs(), self._frac)

    def mul(self, other: "BigFixed", digits: int) -> "BigFixed":
        """Exact product truncated toward zero at ``digits`` fractional digits."""
        _check_grid(digits)
        return BigFixed._wrap(_trunc(_CTX.multiply(self._dec, other._dec), digits), digits)

    def mul_int(self, k: int) -> "BigFixed":
        """Exact scaling by an integer; the grid is unchanged."""
        if not isinstance(k, int):
            raise TypeError(f"k must be an int, got {type(k).__name__}")
        return BigFixed._wrap(_CTX.multiply(self._dec, Decimal(k)), self._frac)

    def div_int(self, m: int, digits: int) -> "BigFixed":
        """Quotient by a nonzero integer, truncated toward zero at ``digits``.

        |result - x/m| < 10**-digits, via integer division of the scaled
        mantissa (divide_int truncates toward zero and is exact).
        """
        _check_grid(digits)
        if not isinstance(m, int):
            raise TypeError(f"m must be an int, got {type(m).__name__}")
        if m == 0:
            raise ZeroDivisionError("division by zero")
        scaled = _CTX.scaleb(self._dec, digits)
        q = _CTX.divide_int(scaled, Decimal(m))
        return BigFixed._wrap(_CTX.scaleb(q, -digits), digits)

    # -- rendering -----------------------------------------------------------

    def _sig_digits_string(self, sig_digits: int):
        # (sign, digit string of exactly sig_digits, adjusted exponent)
        e = self._dec.adjusted()
        q = self._dec.quantize(_ten_pow(e - sig_digits + 1), rounding=ROUND_DOWN, context=_CTX)
        sign = "-" if q.is_signed() else ""
        return sign, "".join(map(str, q.as_tuple().digits)).rjust(sig_digits, "0"), e

    def to_decimal_string(self, sig_digits: int) -> str:
        """First ``sig_digits`` significant digits, truncated toward zero.

        Positional form when the leading digit sits in 10**e with
        -3 <= e < sig_digits, scientific ``d.ddd e<exp>`` otherwise; zero
        renders as "0".
        """
        _check_precision(sig_digits)
        if self._dec.is_zero():
            return "0"
        sign, ds, e = self._sig_digits_string(sig_digits)
        if -3 <= e < sig_digits:
            if e >= 0:
                ip, fp = ds[: e + 1], ds[e + 1 :]
                return sign + (ip + "." + fp if fp else ip)
            return sign + "0." + "0" * (-e - 1) + ds
        mant = ds[0] + ("." + ds[1:] if sig_digits > 1 else "")
        return sign + mant + "e" + str(e)

    def significand_string(self, sig_digits: int) -> str:
        """Leading significant digits as ``d.ddd`` with no exponent part.

        Pads with zeros when the value has fewer stored digits; "0" for zero.
        """
        _check_precision(sig_digits)
        if self._dec.is_zero():
            return "0"
        sign, ds, _ = self._sig_digits_string(sig_digits)
        return sign + ds[0] + ("." + ds[1:] if sig_digits > 1 else "")

    def positional_string(self) -> str:
        """Exact positional rendering with all frac_digits digits."""
        return format(self._dec, "f")

    def __repr__(self) -> str:
        s = self.positional_string()
        if len(s) > 44:
            s = self.to_decimal_string(24) + "..."
        return f"BigFixed('{s}', frac_digits={self._frac})"

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._dec == other._dec

    def __lt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._dec < other._dec

    def __le__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._dec <= other._dec

    def __gt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._dec > other._dec

    def __ge__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._dec >= other._dec

    def __hash__(self):
        return hash(self._dec)

    def __bool__(self):
        return not self._dec.is_zero()


def _coerce(value):
    if isinstance(value, BigFixed):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return BigFixed(value, 0)
    return None
