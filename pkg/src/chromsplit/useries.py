"""Truncated power series in ``u`` with :class:`Polynomial` coefficients.

A :class:`Series` of truncation ``N`` holds ``c_0 .. c_N`` and stands for an
element of ``Z[T][[u]]`` known only modulo ``u**(N+1)``. Binary operations on
operands of different truncation return the smaller truncation.
"""

from __future__ import annotations

from typing import Sequence

from .exactpoly import ONE, ZERO, Polynomial, mul as pmul, render as prender


class NonUnitError(ArithmeticError):
    """Inversion of a series whose constant term is not +1 or -1."""

    def __init__(self, constant: Polynomial):
        self.constant = constant
        super().__init__(f"constant term {prender(constant)} is not a unit (must be 1 or -1)")


class Series:
    __slots__ = ("trunc", "coeffs")

    def __init__(self, coeffs: Sequence[Polynomial | int], trunc: int | None = None):
        coeffs = [c if isinstance(c, Polynomial) else Polynomial({0: c}) for c in coeffs]
        if trunc is None:
            trunc = len(coeffs) - 1
        if trunc < 0:
            raise ValueError(f"negative truncation {trunc}")
        if len(coeffs) > trunc + 1:
            coeffs = coeffs[: trunc + 1]
        coeffs.extend([ZERO] * (trunc + 1 - len(coeffs)))
        self.trunc = trunc
        self.coeffs = tuple(coeffs)

    def __getitem__(self, n: int) -> Polynomial:
        return coefficient_at(self, n)

    def truncate(self, trunc: int) -> "Series":
        if trunc > self.trunc:
            raise ValueError(f"cannot widen truncation {self.trunc} to {trunc}")
        return Series(self.coeffs[: trunc + 1], trunc)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        return add(self, _promote(other, self.trunc))

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        return add(self, -_promote(other, self.trunc))

    def __rsub__(self, other):
        return add(_promote(other, self.trunc), -self)

    def __mul__(self, other):
        if isinstance(other, (Polynomial, int)):
            return Series([c * other for c in self.coeffs], self.trunc)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative power of a series")
        result = constant(ONE, self.trunc)
        base = self
        while m:
            if m & 1:
                result = mul(result, base)
            m >>= 1
            if m:
                base = mul(base, base)
        return result

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, self.coeffs))

    def __repr__(self):
        return f"Series({list(self.coeffs)!r}, trunc={self.trunc})"

    def __str__(self):
        return render(self)


def _promote(x, trunc):
    if isinstance(x, Series):
        return x
    return constant(x if isinstance(x, Polynomial) else Polynomial({0: x}), trunc)


def constant(p: Polynomial, trunc: int) -> Series:
    if trunc < 0:
        raise ValueError(f"negative truncation {trunc}")
    return Series([p], trunc)


def variable(trunc: int) -> Series:
    """The series ``u`` at truncation ``trunc``."""
    return Series([ZERO, ONE], trunc)


def add(f: Series, g: Series) -> Series:
    n = min(f.trunc, g.trunc)
    return Series([f.coeffs[i] + g.coeffs[i] for i in range(n + 1)], n)


def mul(f: Series, g: Series) -> Series:
    """Cauchy product truncated at ``min(f.trunc, g.trunc)``."""
    n = min(f.trunc, g.trunc)
    fc, gc = f.coeffs, g.coeffs
    out = []
    for k in range(n + 1):
        acc = ZERO
        for j in range(k + 1):
            if fc[j] and gc[k - j]:
                acc = acc + pmul(fc[j], gc[k - j])
        out.append(acc)
    return Series(out, n)


def invert(f: Series) -> Series:
    """Multiplicative inverse modulo ``u**(N+1)``.

    Only constant terms ``1`` and ``-1`` are invertible over the integers.
    Uses ``g_0 = c_0`` and ``g_n = -c_0 * sum_{j=1..n} f_j g_{n-j}``.
    """
    c0 = f.coeffs[0]
    if c0 == ONE:
        sign = 1
    elif c0 == -ONE:
        sign = -1
    else:
        raise NonUnitError(c0)
    fc = f.coeffs
    g = [c0]
    for n in range(1, f.trunc + 1):
        acc = ZERO
        for j in range(1, n + 1):
            if fc[j] and g[n - j]:
                acc = acc + pmul(fc[j], g[n - j])
        g.append(-acc if sign == 1 else acc)
    return Series(g, f.trunc)


def substitute_u_scale(f: Series, p: Polynomial) -> Series:
    """Apply ``u -> u*p``: the ``u**n`` coefficient is multiplied by ``p**n``."""
    out = []
    scale = ONE
    for n, c in enumerate(f.coeffs):
        out.append(pmul(c, scale))
        if n < f.trunc:
            scale = pmul(scale, p)
    return Series(out, f.trunc)


def coefficient_at(f: Series, n: int) -> Polynomial:
    if not 0 <= n <= f.trunc:
        raise IndexError(f"coefficient u^{n} outside truncation 0..{f.trunc}")
    return f.coeffs[n]


def render(f: Series) -> str:
    out = []
    for n, c in enumerate(f.coeffs):
        if not c:
            continue
        neg = len(c.terms) == 1 and c.terms[0][1] < 0
        mag = -c if neg else c
        body = prender(mag)
        if len(mag.terms) > 1:
            body = f"({body})"
        if n:
            upow = "u" if n == 1 else f"u^{n}"
            body = upow if mag == ONE else f"{body}*{upow}"
        if out:
            out.append(("- " if neg else "+ ") + body)
        else:
            out.append(("-" if neg else "") + body)
    return (" ".join(out) or "0") + f" + O(u^{f.trunc + 1})"
