"""Exact integer polynomials in one variable ``T``.

Polynomials are immutable and stored sparsely as an ascending tuple of
``(exponent, coefficient)`` pairs with no zero coefficients. The zero
polynomial has empty support and ``degree`` ``None``.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .kernels import convolve, horner


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[int, int] = {}
        for e, c in terms:
            e = int(e)
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            acc[e] = acc.get(e, 0) + int(c)
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    @classmethod
    def _from_sorted(cls, terms):
        # trusted path: terms already ascending and zero-free
        p = cls.__new__(cls)
        p._terms = tuple(terms)
        p._hash = None
        return p

    @classmethod
    def from_dense(cls, coeffs, offset: int = 0) -> "Polynomial":
        return cls._from_sorted((i + offset, c) for i, c in enumerate(coeffs) if c)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int | None:
        """Highest exponent in the support, ``None`` for the zero polynomial."""
        return self._terms[-1][0] if self._terms else None

    @property
    def valuation(self) -> int | None:
        """Lowest exponent in the support, ``None`` for the zero polynomial."""
        return self._terms[0][0] if self._terms else None

    def coefficient(self, e: int) -> int:
        return coefficient(self, e)

    def to_dict(self) -> dict[int, int]:
        return dict(self._terms)

    def dense(self) -> list[int]:
        """Coefficients ``c_0 .. c_deg`` (empty for zero)."""
        if not self._terms:
            return []
        out = [0] * (self._terms[-1][0] + 1)
        for e, c in self._terms:
            out[e] = c
        return out

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_sorted((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ONE, self
        while m:
            if m & 1:
                result = mul(result, base)
            m >>= 1
            if m:
                base = mul(base, base)
        return result

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``T**k``."""
        if k < 0:
            raise ValueError("negative shift")
        return Polynomial._from_sorted((e + k, c) for e, c in self._terms)

    def __call__(self, t: int) -> int:
        return evaluate(self, t)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial({0: other})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Polynomial({dict(self._terms)!r})"

    def __str__(self):
        return render(self)


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial({0: x}) if x else ZERO
    return NotImplemented


def monomial(c: int, e: int) -> Polynomial:
    """``c * T**e``; the zero polynomial when ``c == 0``."""
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    return Polynomial._from_sorted(((e, c),) if c else ())


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    if not a._terms:
        return b
    if not b._terms:
        return a
    acc = dict(a._terms)
    for e, c in b._terms:
        acc[e] = acc.get(e, 0) + c
    return Polynomial._from_sorted(sorted((e, c) for e, c in acc.items() if c))


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    if not a._terms or not b._terms:
        return ZERO
    if len(a._terms) == 1 and len(b._terms) == 1:
        (ea, ca), = a._terms
        (eb, cb), = b._terms
        return Polynomial._from_sorted(((ea + eb, ca * cb),))
    lo_a, lo_b = a._terms[0][0], b._terms[0][0]
    da = [0] * (a._terms[-1][0] - lo_a + 1)
    for e, c in a._terms:
        da[e - lo_a] = c
    db = [0] * (b._terms[-1][0] - lo_b + 1)
    for e, c in b._terms:
        db[e - lo_b] = c
    return Polynomial.from_dense(convolve(da, db), lo_a + lo_b)


def evaluate(p: Polynomial, t: int) -> int:
    """Exact value of ``p`` at the integer ``t``."""
    if not p._terms:
        return 0
    if t == 1:
        return sum(c for _, c in p._terms)
    return horner(p.dense(), t)


def coefficient(p: Polynomial, e: int) -> int:
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    for ee, c in p._terms:
        if ee == e:
            return c
        if ee > e:
            break
    return 0


def _render(p, power):
    if not p._terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(p._terms):
        if e == 0:
            body = str(abs(c))
        else:
            body = ("" if abs(c) == 1 else str(abs(c))) + power(e)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def render(p: Polynomial, var: str = "T") -> str:
    """Ascending-order text such as ``2T^4 + T^5``; ``0`` for zero."""
    return _render(p, lambda e: var if e == 1 else f"{var}^{e}")


def render_latex(p: Polynomial, var: str = "T") -> str:
    """Like :func:`render`, bracing multi-digit exponents (``T^{10}``)."""
    return _render(p, lambda e: var if e == 1 else f"{var}^{e}" if e < 10 else f"{var}^{{{e}}}")


ZERO = Polynomial()
ONE = Polynomial({0: 1})
T = Polynomial({1: 1})
