"""Poincare series ``L_n(T)`` of the rational part of the chromatic tower.

Five routes compute the same polynomial and are kept deliberately apart:

``l_direct``
    sums ``T**(|I|+1) * L_{n-1-i_l}`` over nonempty increasing index
    sequences ``I`` in ``[0, n-1]``; never touches ``epsilon``.
``l_recursive``
    ``Lt_n = sum_{k<n} eps_{n-k-1} Lt_k`` with ``L_n = T**(2n) Lt_n``.
``l_genfun``
    coefficient extraction from ``(1 - sum_k eps_{k-1} (u T^2)^k)^(-1)``.
``l_closed_form``
    ``T**(2n)`` times the sum over compositions ``(k_1..k_r)`` of ``n`` of
    ``prod eps_{k_j - 1}``.
``spectrum_poincare``
    Poincare series of the wedge of ``S^{2n} (prod U(k_j - 1))_+`` built from
    the exterior-algebra cohomology of unitary groups.

The closed form follows from expanding ``(2 - eps(u))^(-1)`` as a geometric
series in ``eps(u) - 1 = sum_{k>=1} eps_{k-1} u^k``: the ``u**n`` coefficient
collects one term per composition of ``n``. Grouping compositions by their
multiset of parts gives the partition form with multiplicity
``r! / prod m_j!`` where ``r`` is the number of parts.
"""

from __future__ import annotations

import functools
import math
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import useries
from .exactpoly import ONE, ZERO, Polynomial, monomial, evaluate, render
from .kernels import add_into, convolve
from .useries import Series

EpsilonFn = Callable[[int], Polynomial]


# -- combinatorial types ------------------------------------------------------


@dataclass(frozen=True)
class IndexSequence:
    """Strictly increasing ``0 <= i_1 < ... < i_l < n``, ``l >= 1``."""

    n: int
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = self.indices
        if not idx:
            raise ValueError("index sequence must be nonempty")
        if idx[0] < 0 or idx[-1] >= self.n:
            raise ValueError(f"indices {idx} outside [0, {self.n - 1}]")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices {idx} not strictly increasing")

    @property
    def weight(self) -> int:
        return 2 * sum(self.indices) + len(self.indices)

    @property
    def last(self) -> int:
        return self.indices[-1]


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError(f"composition parts must be positive: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)


@dataclass(frozen=True)
class PartitionWithMultiplicity:
    """Unordered parts recorded as ``(part, count)`` pairs, ascending by part."""

    multiplicities: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, parts) -> "PartitionWithMultiplicity":
        return cls(tuple(sorted(Counter(parts).items())))

    @property
    def n(self) -> int:
        return sum(j * m for j, m in self.multiplicities)

    @property
    def r(self) -> int:
        return sum(m for _, m in self.multiplicities)

    @property
    def multinomial(self) -> int:
        """Number of compositions with this multiset of parts."""
        out = math.factorial(self.r)
        for _, m in self.multiplicities:
            out //= math.factorial(m)
        return out


@dataclass(frozen=True)
class WedgeSummand:
    suspension: int
    unitary_ranks: tuple[int, ...]

    def poincare(self) -> Polynomial:
        p = ONE
        for k in self.unitary_ranks:
            p = p * unitary_poincare(k)
        return p.shift(self.suspension)


@dataclass(frozen=True)
class NormalizedL:
    """``Lt_n(T)``, related to ``L_n`` by ``L_n = T**(2n) * Lt_n``."""

    n: int
    poly: Polynomial

    def denormalize(self) -> Polynomial:
        return self.poly.shift(2 * self.n)


# -- enumerators ----------------------------------------------------------------


def _require_positive(n: int, what: str):
    if n < 1:
        raise ValueError(f"{what} requires n >= 1, got {n}")


def _increasing(start: int, stop: int) -> Iterator[tuple[int, ...]]:
    for first in range(start, stop):
        yield (first,)
        for rest in _increasing(first + 1, stop):
            yield (first,) + rest


def enumerate_index_sequences(n: int) -> list[IndexSequence]:
    """All ``2**n - 1`` nonempty increasing sequences in ``[0, n-1]``, lexicographic."""
    _require_positive(n, "enumerate_index_sequences")
    return [IndexSequence(n, idx) for idx in _increasing(0, n)]


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def enumerate_compositions(n: int) -> list[Composition]:
    """All ``2**(n-1)`` compositions of ``n``, largest first part first."""
    _require_positive(n, "enumerate_compositions")
    return [Composition(c) for c in _compositions(n)]


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[PartitionWithMultiplicity]:
    _require_positive(n, "enumerate_partitions")
    return [PartitionWithMultiplicity.of(p) for p in _partitions(n, n)]


# -- epsilon and unitary groups -------------------------------------------------

_eps_cache: list[Polynomial] = [ONE]
_eps_lock = threading.Lock()


def epsilon(k: int) -> Polynomial:
    """``prod_{i=0}^{k-1} (1 + T^(2i+1))``, so ``epsilon(0) == 1``."""
    if k < 0:
        raise ValueError(f"epsilon requires k >= 0, got {k}")
    if k < len(_eps_cache):
        return _eps_cache[k]
    with _eps_lock:
        while len(_eps_cache) <= k:
            i = len(_eps_cache) - 1
            _eps_cache.append(_eps_cache[-1] * (ONE + monomial(1, 2 * i + 1)))
        return _eps_cache[k]


@functools.lru_cache(maxsize=None)
def unitary_poincare(k: int) -> Polynomial:
    """Poincare polynomial of ``U(k)``: exterior algebra on degrees 1, 3, ..., 2k-1."""
    if k < 0:
        raise ValueError(f"unitary_poincare requires k >= 0, got {k}")
    p = ONE
    for i in range(1, k + 1):
        p = p * Polynomial({0: 1, 2 * i - 1: 1})
    return p


# -- the five routes ------------------------------------------------------------

_direct_cache: list[Polynomial] = [ONE]
_direct_lock = threading.Lock()


def _direct_step(n: int, lower: list[Polynomial]) -> Polynomial:
    acc: dict[int, int] = {}
    for seq in _increasing(0, n):
        shift = 2 * sum(seq) + len(seq) + 1
        for e, c in lower[n - 1 - seq[-1]].terms:
            acc[e + shift] = acc.get(e + shift, 0) + c
    return Polynomial(acc)


def l_direct(n: int) -> Polynomial:
    """Sum over index sequences, memoized by height."""
    if n < 0:
        raise ValueError(f"height must be >= 0, got {n}")
    if n < len(_direct_cache):
        return _direct_cache[n]
    with _direct_lock:
        while len(_direct_cache) <= n:
            _direct_cache.append(_direct_step(len(_direct_cache), _direct_cache))
        return _direct_cache[n]


_normalized_cache: list[Polynomial] = [ONE]
_normalized_lock = threading.Lock()


def _extend_normalized(lt: list[Polynomial], n: int, eps: EpsilonFn) -> None:
    while len(lt) <= n:
        m = len(lt)
        acc = ZERO
        for k in range(m):
            acc = acc + eps(m - k - 1) * lt[k]
        lt.append(acc)


def normalized_sequence(n: int, eps: EpsilonFn = epsilon) -> list[Polynomial]:
    """``[Lt_0, ..., Lt_n]`` from the linear recursion (memoized for the true epsilon)."""
    if n < 0:
        raise ValueError(f"height must be >= 0, got {n}")
    if eps is not epsilon:
        lt = [ONE]
        _extend_normalized(lt, n, eps)
        return lt
    if n >= len(_normalized_cache):
        with _normalized_lock:
            _extend_normalized(_normalized_cache, n, eps)
    return _normalized_cache[: n + 1]


def normalized_l(n: int, eps: EpsilonFn = epsilon) -> NormalizedL:
    return NormalizedL(n, normalized_sequence(n, eps)[n])


def l_recursive(n: int, eps: EpsilonFn = epsilon) -> Polynomial:
    return normalized_l(n, eps).denormalize()


def master_series(trunc: int, eps: EpsilonFn = epsilon) -> Series:
    """``sum_n L_n(T) u^n`` modulo ``u**(trunc+1)``."""
    if trunc < 0:
        raise ValueError(f"negative truncation {trunc}")
    inner = Series([ZERO] + [eps(k - 1) for k in range(1, trunc + 1)], trunc)
    scaled = useries.substitute_u_scale(inner, monomial(1, 2))
    return useries.invert(useries.constant(ONE, trunc) - scaled)


def l_genfun(n: int, trunc: int | None = None, eps: EpsilonFn = epsilon) -> Polynomial:
    if n < 0:
        raise ValueError(f"height must be >= 0, got {n}")
    if trunc is None:
        trunc = n
    if trunc < n:
        raise IndexError(f"truncation {trunc} is below the requested height {n}")
    return useries.coefficient_at(master_series(trunc, eps), n)


def _product_sum(keys, factor: Callable[[int], list[int]]) -> list[int]:
    """Dense ``sum_key prod_j factor(key_j)``; products are memoized by key prefix."""
    prefix: dict[tuple[int, ...], list[int]] = {(): [1]}
    acc: list[int] = []
    for key in keys:
        for cut in range(len(key)):
            head = key[: cut + 1]
            if head not in prefix:
                prefix[head] = convolve(prefix[key[:cut]], factor(key[cut]))
        prod = prefix[key]
        if len(prod) > len(acc):
            acc.extend([0] * (len(prod) - len(acc)))
        add_into(acc, prod)
    return acc


def l_closed_form(n: int, eps: EpsilonFn = epsilon) -> Polynomial:
    """``T**(2n)`` times the sum over compositions of ``prod eps_{k_j - 1}``."""
    if n < 0:
        raise ValueError(f"height must be >= 0, got {n}")
    if n == 0:
        return ONE
    factors = {k: eps(k - 1).dense() for k in range(1, n + 1)}
    return Polynomial.from_dense(_product_sum(_compositions(n), factors.__getitem__), 2 * n)


def l_closed_form_partitions(n: int, eps: EpsilonFn = epsilon) -> Polynomial:
    """Same value grouped by partitions, weighted by ``r! / prod m_j!``."""
    if n < 0:
        raise ValueError(f"height must be >= 0, got {n}")
    if n == 0:
        return ONE
    acc = ZERO
    for part in enumerate_partitions(n):
        term = Polynomial({0: part.multinomial})
        for j, m in part.multiplicities:
            term = term * eps(j - 1) ** m
        acc = acc + term
    return acc.shift(2 * n)


def spectrum_summands(n: int) -> list[WedgeSummand]:
    """One ``S^{2n} (prod U(k_j - 1))_+`` per composition of ``n``."""
    _require_positive(n, "spectrum_summands")
    return [WedgeSummand(2 * n, tuple(k - 1 for k in c)) for c in _compositions(n)]


def spectrum_poincare(n: int) -> Polynomial:
    """Sum of the summands' Poincare series (all share the suspension ``2n``)."""
    _require_positive(n, "spectrum_poincare")
    summands = spectrum_summands(n)
    factors = {k: unitary_poincare(k).dense() for k in range(n)}
    acc = _product_sum((s.unitary_ranks for s in summands), factors.__getitem__)
    return Polynomial.from_dense(acc, summands[0].suspension)


def total_rank(n: int) -> int:
    """``L_n(1)``: ``1`` at height 0 and ``3**(n-1)`` above."""
    return evaluate(l_recursive(n), 1)


def clear_caches() -> None:
    """Drop all memoized values (for cold timings)."""
    with _eps_lock:
        del _eps_cache[1:]
    with _direct_lock:
        del _direct_cache[1:]
    with _normalized_lock:
        del _normalized_cache[1:]
    unitary_poincare.cache_clear()


ROUTES: dict[str, Callable[[int], Polynomial]] = {
    "direct": l_direct,
    "recursive": l_recursive,
    "genfun": l_genfun,
    "closed": l_closed_form,
    "spectrum": spectrum_poincare,
}


# -- series at T = 1 ------------------------------------------------------------


def epsilon_series(trunc: int, eps: EpsilonFn = epsilon) -> Series:
    """``1 + sum_{i>=0} eps_i u^(i+1)``."""
    return Series([ONE] + [eps(i) for i in range(trunc)], trunc)


def normalized_series(trunc: int, eps: EpsilonFn = epsilon) -> Series:
    """``(2 - eps(u))^(-1) = sum_n Lt_n(T) u^n``."""
    two = useries.constant(Polynomial({0: 2}), trunc)
    return useries.invert(two - epsilon_series(trunc, eps))


def specialize(f: Series, t: int) -> Series:
    """Evaluate every coefficient at ``T = t``."""
    return Series([evaluate(c, t) for c in f.coeffs], f.trunc)


def rational_series(num: list[int], den: list[int], trunc: int) -> Series:
    """Integer expansion of ``num(u) / den(u)``; ``den`` must start with +-1."""
    return useries.mul(Series(num, trunc), useries.invert(Series(den, trunc)))


# -- verification ---------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    height: int
    name: str
    passed: bool
    counterexample: str | None = None


@dataclass
class VerificationReport:
    n_max: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def first_failure(self) -> CheckResult | None:
        fails = self.failures
        return fails[0] if fails else None


def _check_height(n: int, eps: EpsilonFn) -> list[CheckResult]:
    out = []
    values = {
        "direct": l_direct(n),
        "recursive": l_recursive(n, eps),
        "genfun": l_genfun(n, n, eps),
        "closed": l_closed_form(n, eps),
        "closed_partitions": l_closed_form_partitions(n, eps),
    }
    if n >= 1:
        values["spectrum"] = spectrum_poincare(n)
    ref = values["direct"]
    bad = [k for k, v in values.items() if v != ref]
    out.append(CheckResult(
        n, "route_agreement", not bad,
        None if not bad else "; ".join(f"{k}: {render(values[k])}" for k in ["direct"] + bad),
    ))

    want = 1 if n == 0 else 3 ** (n - 1)
    got = evaluate(values["recursive"], 1)
    out.append(CheckResult(n, "total_rank", got == want,
                           None if got == want else f"L_{n}(1) = {got}, expected {want}"))

    p = values["recursive"]
    problems = []
    if n == 0:
        if p != ONE:
            problems.append(f"L_0 = {render(p)}")
    elif p.is_zero():
        problems.append("L_n is zero")
    else:
        if p.valuation != 2 * n or p.coefficient(2 * n) != 2 ** (n - 1):
            problems.append(f"lowest term {p.terms[0]}, expected ({2 * n}, {2 ** (n - 1)})")
        if p.degree != n * n + 1 or p.terms[-1][1] != 1:
            problems.append(f"top term {p.terms[-1]}, expected ({n * n + 1}, 1)")
        if any(c < 0 for _, c in p.terms):
            problems.append("negative coefficient")
    out.append(CheckResult(n, "edge_laws", not problems, "; ".join(problems) or None))

    e = eps(n)
    problems = []
    if evaluate(e, 1) != 2 ** n:
        problems.append(f"eps_{n}(1) = {evaluate(e, 1)}")
    if e.degree != n * n:
        problems.append(f"degree {e.degree}, expected {n * n}")
    d = e.degree or 0
    if any(e.coefficient(i) != e.coefficient(d - i) for i in range(d + 1)):
        problems.append(f"eps_{n} = {render(e)} is not palindromic")
    out.append(CheckResult(n, "epsilon_palindromic", not problems, "; ".join(problems) or None))

    u = unitary_poincare(n)
    out.append(CheckResult(n, "epsilon_unitary", u == e,
                           None if u == e else f"eps_{n} = {render(e)}, U({n}) = {render(u)}"))
    return sorted(out, key=lambda r: r.name)


def verify(n_max: int, eps: EpsilonFn = epsilon, workers: int = 1) -> VerificationReport:
    """Run every consistency check for heights ``0..n_max``.

    Failures are recorded in the report, never raised. ``eps`` may be swapped
    for fault injection; ``l_direct`` and the spectrum route ignore it.
    """
    _require_positive(n_max, "verify")
    heights = range(n_max + 1)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            chunks = list(pool.map(lambda n: _check_height(n, eps), heights))
    else:
        chunks = [_check_height(n, eps) for n in heights]
    results = sorted((r for chunk in chunks for r in chunk), key=lambda r: (r.height, r.name))
    return VerificationReport(n_max, results)
