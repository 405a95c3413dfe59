"""Continued fractions and fundamental units of real quadratic fields.

The expansion of (P0 + sqrt(N))/Q0 runs on the classical integer state
recurrence

    a_i = (P_i + isqrt(N)) // Q_i,
    P_{i+1} = a_i * Q_i - P_i,
    Q_{i+1} = (N - P_{i+1}^2) / Q_i   (always exact),

with the period read off at the first repeated (P, Q) state.  Convergents
are accumulated alongside; the first one giving p^2 - N q^2 = +-4 is the
fundamental unit, in either integral basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import chain, cycle, islice

from .quadring import (
    HALF_ONE_PLUS_SQRT_N,
    InternalInconsistency,
    NotApplicable,
    QuadField,
    QuadInt,
    field,
    is_square,
    make,
    squarefree_range,
)

SQRT_KIND = "SqrtN"
OMEGA_KIND = "Omega"

_MAX_CF_STEPS = 10**6


@dataclass(frozen=True)
class CFExpansion:
    """Periodic continued fraction: preamble digits, then a repeating cycle."""

    N: int
    kind: str
    preamble: tuple[int, ...]
    period: tuple[int, ...]

    @property
    def a0(self) -> int:
        return self.preamble[0] if self.preamble else self.period[0]

    def digits(self, count: int) -> list[int]:
        return list(islice(chain(self.preamble, cycle(self.period)), count))


def _resolve(field_or_n) -> QuadField:
    return field_or_n if isinstance(field_or_n, QuadField) else field(field_or_n)


def _cf_states(N: int, P0: int, Q0: int):
    """Yield (a_i, P_i, Q_i) forever for the expansion of (P0+sqrt(N))/Q0."""
    r = math.isqrt(N)
    P, Q = P0, Q0
    while True:
        a = (P + r) // Q
        yield a, P, Q
        P = a * Q - P
        num = N - P * P
        assert num % Q == 0, "continued-fraction state left the integer lattice"
        Q = num // Q


def cf_expand(field_or_n, kind: str = SQRT_KIND) -> CFExpansion:
    """Periodic continued fraction of sqrt(N) or of (1+sqrt(N))/2.

    The Omega kind is only defined when N = 1 mod 4 (otherwise the
    half-integer point is not in the ring).
    """
    fld = _resolve(field_or_n)
    if fld.N < 0:
        raise NotApplicable("continued fractions need a real field")
    if kind == SQRT_KIND:
        P0, Q0 = 0, 1
    elif kind == OMEGA_KIND:
        if fld.N % 4 != 1:
            raise NotApplicable(f"(1+sqrt({fld.N}))/2 is not an algebraic integer")
        P0, Q0 = 1, 2
    else:
        raise ValueError(f"unknown expansion kind {kind!r}")

    digits: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    for a, P, Q in _cf_states(fld.N, P0, Q0):
        if (P, Q) in seen:
            j = seen[(P, Q)]
            return CFExpansion(fld.N, kind, tuple(digits[:j]), tuple(digits[j:]))
        seen[(P, Q)] = len(digits)
        digits.append(a)
        if len(digits) > _MAX_CF_STEPS:
            raise InternalInconsistency(f"no period found for N={fld.N}")


@dataclass(frozen=True)
class FundamentalUnit:
    """The smallest unit > 1 of the ring, as eps = (t + u*sqrt(N)) / 2."""

    N: int
    eps: QuadInt
    t: int
    u: int
    unit_norm: int  # +1 or -1

    def __str__(self) -> str:
        return f"eps_{self.N} = {self.eps} (norm {self.unit_norm:+d})"


@lru_cache(maxsize=None)
def _fundamental_unit_cached(N: int) -> FundamentalUnit:
    fld = field(N)
    omega_basis = fld.omega_kind == HALF_ONE_PLUS_SQRT_N
    exp = cf_expand(fld, OMEGA_KIND if omega_basis else SQRT_KIND)
    h1, h2 = 1, 0  # h_{-1}, h_{-2}
    k1, k2 = 0, 1
    for a in islice(chain(exp.preamble, cycle(exp.period)), _MAX_CF_STEPS):
        h1, h2 = a * h1 + h2, h1
        k1, k2 = a * k1 + k2, k1
        # convergent h/k approximates omega; rebuild doubled coordinates
        p, q = (2 * h1 - k1, k1) if omega_basis else (2 * h1, 2 * k1)
        d = p * p - N * q * q
        if d == 4 or d == -4:
            eps = make(fld, p, q)
            return FundamentalUnit(N, eps, p, q, d // 4)
    raise InternalInconsistency(f"no unit among the first convergents for N={N}")


def fundamental_unit(field_or_n) -> FundamentalUnit:
    fld = _resolve(field_or_n)
    if fld.N < 0:
        raise NotApplicable("imaginary quadratic fields have no unit > 1")
    return _fundamental_unit_cached(fld.N)


def negative_pell_solvable(field_or_n) -> bool:
    """Whether x^2 - N y^2 = -1 has a solution.

    Decided two independent ways — parity of the sqrt(N) period, and the
    norm of the fundamental unit — which must agree.
    """
    fld = _resolve(field_or_n)
    if fld.N < 0:
        raise NotApplicable("negative Pell is a real-field question")
    by_period = len(cf_expand(fld, SQRT_KIND).period) % 2 == 1
    by_norm = fundamental_unit(fld).unit_norm == -1
    if by_period != by_norm:
        raise InternalInconsistency(
            f"period parity and unit norm disagree for N={fld.N}"
        )
    return by_norm


def pell_witness_search(field_or_n, bound: int) -> tuple[int, int] | None:
    """Least (kappa, n) certifying unit norm +1, or None.

    A witness is squarefree kappa >= 2 and n >= 1 with kappa*n^2 - 4
    positive and not a perfect square, such that kappa*(kappa*n^2 - 4) is
    N times a perfect square.  Such a pair squares the scaled unit:
    ((kappa*n^2 - 2) + n*s*sqrt(N))/2 is a norm-one unit with an integral
    square root of norm kappa, which is impossible when the fundamental
    unit has norm -1.  Both kappa and n are capped by `bound`; pairs are
    scanned in lexicographic order, so the first hit is the least witness.
    """
    fld = _resolve(field_or_n)
    if fld.N < 0:
        raise NotApplicable("witness search is a real-field operation")
    N = fld.N
    for kappa in squarefree_range(bound):
        if kappa < 2:
            continue
        # m = kappa*(kappa*n^2-4) = N * square needs N' | kappa*n^2 - 4
        # where N' = N / gcd(kappa, N); solve the quadratic residue first.
        n_mod = N // math.gcd(kappa, N)
        roots = [r for r in range(n_mod) if (kappa * r * r - 4) % n_mod == 0]
        if not roots:
            continue
        for n in range(1, bound + 1):
            if n % n_mod not in roots:
                continue
            v = kappa * n * n - 4
            if v <= 0 or is_square(v):
                continue
            m = kappa * v
            if m % N == 0 and is_square(m // N):
                return kappa, n
    return None
