"""
Truncated Laurent series in q^-1 with exact rational coefficients.

A series is a finite map e -> r meaning sum r * q^-e, together with a
truncation order T: coefficients at exponents e > T are undefined, not zero.
T = None marks an exact (finite) series.
"""
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from shared_utils.errors import BeyondTruncation

Number = Union[int, Fraction]


def _min_order(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def format_fraction(value: Fraction) -> str:
    """Serialise an exact rational as "num/den" (or "num" when integral)"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class LaurentQ:
    __slots__ = ("_coeffs", "_order")

    def __init__(self, coeffs: Optional[Mapping[int, Number]] = None, order: Optional[int] = None):
        cleaned: Dict[int, Fraction] = {}
        for e, r in (coeffs or {}).items():
            if order is not None and e > order:
                continue
            r = Fraction(r)
            if r:
                cleaned[int(e)] = r
        self._coeffs = cleaned
        self._order = order

    # ------------- constructors -------------

    @classmethod
    def zero(cls, order: Optional[int] = None) -> "LaurentQ":
        return cls({}, order)

    @classmethod
    def monomial(cls, e: int, r: Number = 1, order: Optional[int] = None) -> "LaurentQ":
        return cls({e: r}, order)

    @classmethod
    def geometric(cls, start: int, step: int, order: int, coefficient: Number = 1) -> "LaurentQ":
        """sum_{j >= 0} coefficient * q^-(start + j*step) truncated at order (step >= 1)"""
        if step < 1:
            raise ValueError("geometric series needs a positive step")
        coeffs = {}
        e = start
        while e <= order:
            coeffs[e] = coefficient
            e += step
        return cls(coeffs, order)

    # ------------- accessors -------------

    @property
    def order(self) -> Optional[int]:
        return self._order

    @property
    def is_exact(self) -> bool:
        return self._order is None

    @property
    def valuation(self) -> Optional[int]:
        """Lowest exponent of the true series; None for the exact zero series"""
        if self._coeffs:
            return min(self._coeffs)
        if self._order is None:
            return None
        return self._order + 1

    def coefficient(self, e: int) -> Fraction:
        if self._order is not None and e > self._order:
            raise BeyondTruncation(
                f"coefficient of q^-{e} is undetermined beyond truncation order {self._order}",
                exponent=e,
                order=self._order,
            )
        return self._coeffs.get(e, Fraction(0))

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        for e in sorted(self._coeffs):
            yield e, self._coeffs[e]

    def truncate(self, order: Optional[int]) -> "LaurentQ":
        return LaurentQ(self._coeffs, _min_order(self._order, order))

    def evaluate(self, q: int) -> Fraction:
        """Numerical value of the known part at a given q"""
        q = Fraction(q)
        return sum((r * q ** (-e) for e, r in self._coeffs.items()), Fraction(0))

    # ------------- arithmetic -------------

    def _coerce(self, other) -> "LaurentQ":
        if isinstance(other, LaurentQ):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentQ({0: other})
        return NotImplemented

    def __add__(self, other) -> "LaurentQ":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = _min_order(self._order, other._order)
        coeffs = dict(self._coeffs)
        for e, r in other._coeffs.items():
            coeffs[e] = coeffs.get(e, 0) + r
        return LaurentQ(coeffs, order)

    __radd__ = __add__

    def __neg__(self) -> "LaurentQ":
        return LaurentQ({e: -r for e, r in self._coeffs.items()}, self._order)

    def __sub__(self, other) -> "LaurentQ":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentQ":
        return (-self) + other

    def __mul__(self, other) -> "LaurentQ":
        if isinstance(other, (int, Fraction)):
            return LaurentQ({e: r * other for e, r in self._coeffs.items()}, self._order)
        if not isinstance(other, LaurentQ):
            return NotImplemented

        va, vb = self.valuation, other.valuation
        if va is None or vb is None:
            # exact zero annihilates whatever the other side is
            return LaurentQ.zero()

        bounds = []
        if self._order is not None:
            bounds.append(self._order + vb)
        if other._order is not None:
            bounds.append(other._order + va)
        order = min(bounds) if bounds else None

        coeffs: Dict[int, Fraction] = {}
        for ea, ra in self._coeffs.items():
            for eb, rb in other._coeffs.items():
                e = ea + eb
                if order is not None and e > order:
                    continue
                coeffs[e] = coeffs.get(e, 0) + ra * rb
        return LaurentQ(coeffs, order)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentQ":
        """Multiply by q^k"""
        order = None if self._order is None else self._order - k
        return LaurentQ({e - k: r for e, r in self._coeffs.items()}, order)

    # ------------- comparison -------------

    def agrees_with(self, other: "LaurentQ", order: Optional[int] = None) -> bool:
        """Coefficient-wise equality up to the common truncation order (and order, if given)"""
        limit = _min_order(_min_order(self._order, other._order), order)
        exponents = set(self._coeffs) | set(other._coeffs)
        for e in exponents:
            if limit is not None and e > limit:
                continue
            if self._coeffs.get(e, 0) != other._coeffs.get(e, 0):
                return False
        return True

    def first_difference(self, other: "LaurentQ") -> Optional[int]:
        limit = _min_order(self._order, other._order)
        for e in sorted(set(self._coeffs) | set(other._coeffs)):
            if limit is not None and e > limit:
                break
            if self._coeffs.get(e, 0) != other._coeffs.get(e, 0):
                return e
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentQ):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._order, tuple(sorted(self._coeffs.items()))))

    # ------------- output -------------

    def to_dict(self) -> dict:
        return {
            "order": self._order,
            "coeffs": {str(e): format_fraction(r) for e, r in self.items()},
        }

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, Number]], order: Optional[int] = None) -> "LaurentQ":
        coeffs: Dict[int, Fraction] = {}
        for e, r in pairs:
            coeffs[e] = coeffs.get(e, 0) + Fraction(r)
        return cls(coeffs, order)

    def __str__(self) -> str:
        parts = []
        for e, r in self.items():
            text = format_fraction(r)
            if e == 0:
                parts.append(text)
            else:
                parts.append(f"{text}*q^{-e}")
        body = " + ".join(parts) if parts else "0"
        if self._order is not None:
            body += f" + O(q^{-(self._order + 1)})"
        return body

    def __repr__(self) -> str:
        return f"LaurentQ({str(self)!r})"
