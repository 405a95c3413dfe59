"""Arithmetic screens for candidate fusion-category dimensions.

Everything here is number theory on the global dimension: quantum
integers for a unit, the solver splitting a candidate global dimension
ell * eps^m into an integral part plus objects of squared dimension
c * eps^j, dimension formulas for the near-group / Haagerup-Izumi /
generalized near-group families, and the small-dimension screen that
matches a target against sums of 4cos^2(pi/n).  No category theory is
performed or implied; a survivor here has merely not been ruled out by
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dnumbers import (
    CanonicalFactorization,
    evaluate,
    generator_set,
    is_dnumber,
    sqrt_class,
)
from .dplus import in_dplus
from .quadring import (
    InternalInconsistency,
    NotApplicable,
    NotDivisible,
    NotInDPlus,
    PrecisionInsufficient,
    QuadField,
    QuadInt,
    Rejected,
    _floor_value_scaled,
    divisors,
    exact_divide,
    field,
    make,
    squarefree_decompose,
)
from .units import fundamental_unit

# ---------------------------------------------------------------------------
# quantum integers


@dataclass(frozen=True)
class QuantumInt:
    """[m] = (eps^m - eps^-m)/(eps - eps^-1), always an algebraic integer."""

    field: QuadField
    m: int
    value: QuadInt


def quantum_int(field_or_n, m: int) -> QuantumInt:
    """[m] by the recurrence [k+1] = (eps + eps^-1)[k] - [k-1].

    When the unit norm is +1 (or m is odd) the value is a rational
    integer; with unit norm -1 and even m it lies in Z*sqrt(N).  Both
    facts are asserted.
    """
    fld = field_or_n if isinstance(field_or_n, QuadField) else field(field_or_n)
    if fld.N < 2:
        raise NotApplicable("quantum integers need a real field")
    fu = fundamental_unit(fld)
    # eps + eps^-1 is the trace t when the norm is +1, else u*sqrt(N)
    s = fld.integer(fu.t) if fu.unit_norm == 1 else make(fld, 0, 2 * fu.u)
    prev, cur = fld.zero(), fld.one()
    for _ in range(abs(m) - 1):
        prev, cur = cur, s * cur - prev
    value = fld.zero() if m == 0 else (cur if m > 0 else -cur)
    if fu.unit_norm == 1 or m % 2:
        if value.q != 0:
            raise InternalInconsistency(f"[{m}] should be rational for N={fld.N}")
    elif value.p != 0:
        raise InternalInconsistency(f"[{m}] should be in Z*sqrt(N) for N={fld.N}")
    return QuantumInt(fld, m, value)


# ---------------------------------------------------------------------------
# global-dimension decomposition


@dataclass(frozen=True)
class Decomposition:
    """d_int + sum_j ell_j * eps^j = ell * eps^m with every ell_j >= 0."""

    field: QuadField
    target: CanonicalFactorization
    d_int: int
    coeffs: tuple[tuple[int, int], ...]  # (j, ell_j), ascending j, nonzero only

    def coeff(self, j: int) -> int:
        return dict(self.coeffs).get(j, 0)


@dataclass(frozen=True)
class DecompositionScan:
    """Solver outcome plus the size of the raw search space it covered."""

    field: QuadField
    target: CanonicalFactorization
    candidates_scanned: int
    solutions: tuple[Decomposition, ...]


def _exact_floor(x: QuadInt) -> int:
    return _floor_value_scaled(Fraction(x.p, 2), Fraction(x.q, 2), x.N, 1)


def decompose_global_dim(
    field_or_n, ell: int, m: int, divisor_constraint: int | None = None
) -> DecompositionScan:
    """All ways to write ell * eps^m as d_int + sum ell_j * eps^j.

    d_int ranges over the divisors of divisor_constraint (default: of
    ell); j over 1..j_max with eps^j <= target, even j only when the unit
    norm is -1.  Solutions are matched coordinatewise in the basis
    (1, eps) and re-checked against the quantum-integer identity
    [m]*d_int = sum ell_j * [j-m].
    """
    fld = field_or_n if isinstance(field_or_n, QuadField) else field(field_or_n)
    if ell < 1 or m < 0:
        raise ValueError("need ell >= 1 and m >= 0")
    fu = fundamental_unit(fld)
    target = fu.eps**m * ell
    if not in_dplus(target):
        raise NotInDPlus(f"{target} = {ell}*eps^{m} is not a dominant d-number")
    gs = generator_set(fld)
    step = 2 if fu.unit_norm == -1 else 1
    pool = divisors(divisor_constraint if divisor_constraint else ell)
    j_max = 0
    while fu.eps ** (j_max + 1) <= target:
        j_max += 1
    js = [j for j in range(1, j_max + 1) if j % step == 0]
    caps = {j: _exact_floor(target * fu.eps**-j) for j in js}
    scanned = len(pool)
    for j in js:
        scanned *= caps[j]
    solutions: list[Decomposition] = []
    fact = CanonicalFactorization(fld.N, ell, m, (0, 0, 0), gs.case)

    def walk(idx: int, rem: QuadInt, chosen: list[tuple[int, int]]) -> None:
        if idx < 0:
            if rem.is_zero():
                coeffs = tuple((j, lj) for j, lj in sorted(chosen) if lj)
                solutions.append(Decomposition(fld, fact, d, coeffs))
            return
        j = js[idx]
        power = fu.eps**j
        top = 0 if rem.sign() <= 0 else _exact_floor(rem * fu.eps**-j)
        for lj in range(top, -1, -1):
            walk(idx - 1, rem - power * lj, chosen + [(j, lj)])

    for d in pool:
        rem0 = target - d
        if rem0.sign() < 0:
            continue
        walk(len(js) - 1, rem0, [])

    for sol in solutions:
        total = fld.integer(sol.d_int)
        for j, lj in sol.coeffs:
            total = total + fu.eps**j * lj
        lhs = quantum_int(fld, m).value * sol.d_int
        rhs = fld.zero()
        for j, lj in sol.coeffs:
            rhs = rhs + quantum_int(fld, j - m).value * lj
        if total != target or lhs != rhs:
            raise InternalInconsistency(f"solver check failed on {sol}")
    solutions.sort(key=lambda s: (-s.d_int, s.coeffs))
    return DecompositionScan(fld, fact, scanned, tuple(solutions))


# ---------------------------------------------------------------------------
# simple-dimension refinement


@dataclass(frozen=True)
class SimpleDimProfile:
    """One way to split each ell_j into simple squared dimensions c*eps^j."""

    decomposition: Decomposition
    parts: tuple[tuple[int, int], ...]  # (c, j) per non-integral simple object


def _partitions(total: int, parts: list[int]) -> list[tuple[int, ...]]:
    """Multiset partitions of total into the given parts (descending)."""
    out: list[tuple[int, ...]] = []

    def rec(rest: int, idx: int, acc: list[int]) -> None:
        if rest == 0:
            out.append(tuple(acc))
            return
        for i in range(idx, len(parts)):
            if parts[i] <= rest:
                rec(rest - parts[i], i, acc + [parts[i]])

    rec(total, 0, [])
    return out


def refine_simple_dims(
    d: Decomposition, apply_modular_filter: bool = False
) -> list[SimpleDimProfile]:
    """Split every ell_j into parts c with sqrt(c * eps^j) a d-number.

    A part c qualifies when c = k^2 * c0 with squarefree c0 admitted by
    sqrt_class for the parity of j; the optional filter additionally
    requires target/(c * eps^j) to be an algebraic integer.
    """
    fld = d.field
    fu = fundamental_unit(fld)
    target_value = evaluate(d.target)
    per_j: list[list[tuple[tuple[int, int], ...]]] = []
    for j, lj in d.coeffs:
        allowed = []
        for c in range(1, lj + 1):
            _, c0 = squarefree_decompose(c)
            if not sqrt_class(c0, j % 2, fld):
                continue
            if apply_modular_filter:
                try:
                    exact_divide(target_value, fu.eps**j * c)
                except NotDivisible:
                    continue
            allowed.append(c)
        choices = [
            tuple((c, j) for c in partition)
            for partition in _partitions(lj, sorted(allowed, reverse=True))
        ]
        if not choices:
            return []
        per_j.append(choices)

    profiles = [()]
    for choices in per_j:
        profiles = [got + extra for got in profiles for extra in choices]
    return [SimpleDimProfile(d, tuple(sorted(parts))) for parts in sorted(profiles)]


# ---------------------------------------------------------------------------
# dimension formulas for known families


def tambara_yamagami_dim(group_order: int) -> int:
    """Global dimension 2|G| of the weakly integral n=0 near-group case."""
    if group_order < 1:
        raise ValueError("group order must be positive")
    return 2 * group_order


def near_group_dim(group_order: int, n: int) -> tuple[QuadInt, QuadInt, bool]:
    """(rho^2, global dimension, unit check) for a near-group fusion rule.

    rho is the largest root of x^2 - n|G|x - |G|; the global dimension is
    sqrt(n^2|G|^2 + 4|G|) * rho; the check confirms rho^2/|G| is a unit.
    """
    if group_order < 1:
        raise ValueError("group order must be positive")
    if n < 1:
        raise ValueError("n must be >= 1; the n=0 case is tambara_yamagami_dim")
    disc = n * n * group_order * group_order + 4 * group_order
    s, f = squarefree_decompose(disc)
    fld = field(f)
    rho = make(fld, n * group_order, s)
    rho_sq = rho * rho
    cat = make(fld, 0, 2 * s) * rho
    quotient = exact_divide(rho_sq, fld.integer(group_order))
    return rho_sq, cat, abs(quotient.norm()) == 1


def haagerup_izumi_dim(group_order: int) -> tuple[QuadInt, QuadInt]:
    """(rho, global dimension |G|(1 + rho^2)) with rho = (|G|+sqrt(|G|^2+4))/2.

    rho is always a unit of norm -1 in its field; asserted, along with the
    identity 1 + rho^2 = |G|*rho + 2.
    """
    if group_order < 1:
        raise ValueError("group order must be positive")
    s, f = squarefree_decompose(group_order * group_order + 4)
    fld = field(f)
    rho = make(fld, group_order, s)
    if rho.norm() != -1:
        raise InternalInconsistency(f"rho for |G|={group_order} is not norm -1")
    one_plus_sq = fld.one() + rho * rho
    if one_plus_sq != rho * group_order + 2:
        raise InternalInconsistency("1 + rho^2 != |G|*rho + 2")
    return rho, one_plus_sq * group_order


def generalized_near_group_check(
    group_order: int, stabilizer_order: int, big_k: int
):
    """(rho, global dimension) for the generalized near-group shape, or
    Rejected when the stabilizer order does not divide K^2.

    rho is the largest root of x^2 - Kx - |G_rho| and the dimension is
    [G : G_rho] * (rho^2 + |G_rho|).  rho degenerates to a rational
    integer when K^2 + 4|G_rho| is a perfect square.
    """
    if group_order < 1 or stabilizer_order < 1 or big_k < 0:
        raise ValueError("orders must be positive and K nonnegative")
    if group_order % stabilizer_order:
        raise ValueError("stabilizer order must divide the group order")
    if (big_k * big_k) % stabilizer_order:
        raise Rejected(
            f"|G_rho|={stabilizer_order} does not divide K^2={big_k * big_k}"
        )
    index = group_order // stabilizer_order
    s, f = squarefree_decompose(big_k * big_k + 4 * stabilizer_order)
    if f == 1:
        rho = (big_k + s) // 2
        return rho, index * (rho * rho + stabilizer_order)
    fld = field(f)
    rho = make(fld, big_k, s)
    if not is_dnumber(rho):
        raise InternalInconsistency(f"rho={rho} is not a d-number")
    return rho, (rho * rho + stabilizer_order) * index


# ---------------------------------------------------------------------------
# certified bounds on 4cos^2(pi/n)


class _Ambiguous(Exception):
    """Internal: interval too wide to decide; retry at higher precision."""


def _atan_inv_scaled(x: int, scale: int) -> tuple[int, int]:
    """Integer bounds on scale * atan(1/x)."""
    total, k = 0, 0
    while True:
        t = scale // (x ** (2 * k + 1) * (2 * k + 1))
        if t == 0:
            break
        total += t if k % 2 == 0 else -t
        k += 1
    slack = k + 1  # floor losses plus the alternating tail
    return total - slack, total + slack


def _pi_scaled(scale: int) -> tuple[int, int]:
    a5 = _atan_inv_scaled(5, scale)
    a239 = _atan_inv_scaled(239, scale)
    return 16 * a5[0] - 4 * a239[1], 16 * a5[1] - 4 * a239[0]


def _cos_scaled(x: int, scale: int) -> tuple[int, int]:
    """Integer bounds on scale * cos(x/scale) for 0 <= x/scale <= 1."""
    total, sign, k = scale, -1, 1
    while True:
        t = x ** (2 * k) // (scale ** (2 * k - 1) * math.factorial(2 * k))
        if t == 0:
            break
        total += sign * t
        sign, k = -sign, k + 1
    slack = k + 1
    return total - slack, total + slack


def _cos_value_bounds(n: int, prec: int) -> tuple[Fraction, Fraction]:
    """Certified bounds on 4cos^2(pi/n) = 2 + 2cos(2pi/n), n >= 7."""
    guard = 32
    scale = 1 << (prec + guard)
    pi_lo, pi_hi = _pi_scaled(scale)
    x_lo, x_hi = (2 * pi_lo) // n, -((-2 * pi_hi) // n)
    # 2pi/n <= 2pi/7 < 1 and cos decreases there
    c_lo = _cos_scaled(x_hi, scale)[0]
    c_hi = _cos_scaled(x_lo, scale)[1]
    return (
        Fraction(2 * scale + 2 * c_lo, scale),
        Fraction(2 * scale + 2 * c_hi, scale),
    )


# Exact values: 4cos^2(pi/n) = 2 + 2cos(2pi/n) is rational or quadratic
# exactly when phi(n) <= 4; represented as {radicand: coefficient} with
# radicand 1 holding the rational part.
_EXACT_COS_SQUARES = {
    3: {1: Fraction(1)},
    4: {1: Fraction(2)},
    5: {1: Fraction(3, 2), 5: Fraction(1, 2)},
    6: {1: Fraction(3)},
    8: {1: Fraction(2), 2: Fraction(1)},
    10: {1: Fraction(5, 2), 5: Fraction(1, 2)},
    12: {1: Fraction(2), 3: Fraction(1)},
}

# 2cos(pi/n) itself is at most quadratic only for n <= 6
_EXACT_COS_DIMS = {
    3: {1: Fraction(1)},
    4: {2: Fraction(1)},
    5: {1: Fraction(1, 2), 5: Fraction(1, 2)},
    6: {3: Fraction(1)},
}


def _dict_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for rad, coeff in b.items():
        out[rad] = out.get(rad, Fraction(0)) - coeff
    return {rad: c for rad, c in out.items() if c}


def _dict_add_scaled(a: dict, b: dict, k: int) -> dict:
    out = dict(a)
    for rad, coeff in b.items():
        out[rad] = out.get(rad, Fraction(0)) + k * coeff
    return {rad: c for rad, c in out.items() if c}


def _dict_bounds(d: dict, prec: int) -> tuple[Fraction, Fraction]:
    scale = 1 << prec
    lo = hi = Fraction(0)
    for rad, coeff in d.items():
        if rad == 1:
            lo += coeff
            hi += coeff
            continue
        root = math.isqrt(rad * scale * scale)
        r_lo, r_hi = Fraction(root, scale), Fraction(root + 1, scale)
        if coeff >= 0:
            lo += coeff * r_lo
            hi += coeff * r_hi
        else:
            lo += coeff * r_hi
            hi += coeff * r_lo
    return lo, hi


@dataclass(frozen=True)
class _Screened:
    """One candidate squared dimension 4cos^2(pi/n) with certified handles."""

    n: int
    exact: tuple | None  # sorted (radicand, coeff) pairs or None
    lo: Fraction
    hi: Fraction

    @property
    def exact_dict(self) -> dict | None:
        return dict(self.exact) if self.exact is not None else None


def _screened_value(n: int, prec: int) -> _Screened:
    exact = _EXACT_COS_SQUARES.get(n)
    if exact is not None:
        lo, hi = _dict_bounds(exact, prec)
        return _Screened(n, tuple(sorted(exact.items())), lo, hi)
    lo, hi = _cos_value_bounds(n, prec)
    return _Screened(n, None, lo, hi)


def _dict_is_zero_or_sign(d: dict, prec: int) -> int:
    """Sign of a sum of rational multiples of square roots, exactly (0 on
    exact zero), via intervals with a square-root-conjugation fallback."""
    if not d:
        return 0
    lo, hi = _dict_bounds(d, prec)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    # narrow interval straddling zero: the only way the value is zero is
    # literal cancellation, which _dict_sub would have produced; escalate
    for extra in (64, 256, 1024):
        lo, hi = _dict_bounds(d, prec + extra)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
    raise _Ambiguous(str(d))


def _match_as_combination(
    need_exact: dict | None,
    need_bounds: tuple[Fraction, Fraction],
    dims: list[tuple[dict | None, tuple[Fraction, Fraction]]],
    prec: int,
) -> bool:
    """Is `need` a nonnegative-integer combination of the given dims?

    Exact dictionaries decide whenever every participant has one;
    otherwise certified intervals refute, and a straddling interval
    raises _Ambiguous for the caller to retry at higher precision.
    """

    def rec(idx: int, exact: dict | None, lo: Fraction, hi: Fraction) -> bool:
        if hi < 0:
            return False
        if idx == len(dims):
            if exact is not None:
                return not exact
            if lo > 0 or hi < 0:
                return False
            raise _Ambiguous("zero test on interval-only remainder")
        d_exact, (d_lo, d_hi) = dims[idx]
        top = math.floor(hi / d_lo) if d_lo > 0 else 0
        for count in range(top + 1):
            if count == 0:
                nxt_exact = exact
            elif exact is not None and d_exact is not None:
                nxt_exact = _dict_add_scaled(exact, d_exact, -count)
            else:
                nxt_exact = None
            if rec(idx + 1, nxt_exact, lo - count * d_hi, hi - count * d_lo):
                return True
        return False

    return rec(0, need_exact, need_bounds[0], need_bounds[1])


def _tensor_square_consistent(members: tuple[int, ...], prec: int) -> bool:
    """Necessary fusion condition on a candidate simple-dimension multiset:
    for each member X, dim(X)^2 - 1 must be a nonnegative-integer
    combination of the members' dimensions (X (x) dual(X) minus the unit)."""
    dims = []
    for n in sorted(set(members)):
        exact = _EXACT_COS_DIMS.get(n)
        if exact is not None:
            dims.append((exact, _dict_bounds(exact, prec)))
        else:
            v_lo, v_hi = _cos_value_bounds(n, prec)
            scale = 1 << prec
            root_lo = Fraction(math.isqrt((v_lo.numerator * scale * scale) // v_lo.denominator), scale)
            root_hi = Fraction(math.isqrt((v_hi.numerator * scale * scale) // v_hi.denominator) + 1, scale)
            dims.append((None, (root_lo, root_hi)))
    for n in sorted(set(members)):
        v = _screened_value(n, prec)
        need_exact = (
            _dict_sub(v.exact_dict, {1: Fraction(1)})
            if v.exact is not None
            else None
        )
        bounds = (v.lo - 1, v.hi - 1)
        if not _match_as_combination(need_exact, bounds, dims, prec):
            return False
    return True


def _screen_once(
    target: QuadInt, prec: int, apply_tensor_filter: bool
) -> list[tuple[int, ...]]:
    goal = {1: Fraction(target.p, 2) - 1}
    if target.q:
        goal[target.N] = Fraction(target.q, 2)
    goal = {rad: c for rad, c in goal.items() if c}
    goal_lo, goal_hi = _dict_bounds(goal, prec)
    # candidate list: every n with 4cos^2(pi/n) <= target - 1
    values: list[_Screened] = []
    n = 3
    while True:
        v = _screened_value(n, prec)
        if v.exact is not None:
            sign = _dict_is_zero_or_sign(_dict_sub(v.exact_dict, goal), prec)
            if sign > 0:
                break
        else:
            if v.lo > goal_hi:
                break
            if v.hi > goal_lo:
                # straddles the cutoff; degree >= 3 forbids equality
                raise _Ambiguous(f"cutoff test for n={n}")
        values.append(v)
        n += 1
    values.reverse()  # descending magnitude for the search

    survivors: list[tuple[int, ...]] = []

    def rec(idx: int, exact: dict | None, lo: Fraction, hi: Fraction,
            chosen: list[int]) -> None:
        if hi < 0:
            return
        if idx == len(values):
            if exact is not None:
                if not exact:
                    survivors.append(tuple(sorted(chosen)))
                return
            if lo > 0 or hi < 0:
                return
            raise _Ambiguous("sum test with interval-only members")
        v = values[idx]
        top = math.floor(hi / v.lo) if v.lo > 0 else 0
        for count in range(top + 1):
            if count == 0:
                nxt_exact = exact
            elif exact is not None and v.exact is not None:
                nxt_exact = _dict_add_scaled(exact, v.exact_dict, -count)
            else:
                nxt_exact = None
            rec(
                idx + 1,
                nxt_exact,
                lo - count * v.hi,
                hi - count * v.lo,
                chosen + [v.n] * count,
            )

    rec(0, goal, goal_lo, goal_hi, [])
    if apply_tensor_filter:
        survivors = [s for s in survivors if _tensor_square_consistent(s, prec)]
    return sorted(survivors)


def kronecker_screen(
    target: QuadInt,
    precision_bits: int = 128,
    apply_tensor_filter: bool = True,
) -> list[tuple[int, ...]]:
    """Multisets {n_i} with 1 + sum 4cos^2(pi/n_i) = target, arithmetic-
    consistent under the tensor-square condition; empty means the target
    is eliminated as a global dimension built from dimensions below 2.

    Requires the target to be a dominant d-number with target - 1 < 4.
    """
    if not in_dplus(target):
        raise NotInDPlus(f"{target} is not a dominant d-number")
    if (target - 5).sign() >= 0:
        raise NotApplicable("screen needs target - 1 < 4")
    prec = precision_bits
    while True:
        try:
            return _screen_once(target, prec, apply_tensor_filter)
        except _Ambiguous as reason:
            if prec >= 8 * precision_bits:
                raise PrecisionInsufficient(
                    f"undecided at {prec} bits: {reason}"
                ) from None
            prec *= 2


# ---------------------------------------------------------------------------
# the strictly quadratic quantum-group dimension table


@dataclass(frozen=True)
class QuantumGroupDim:
    """One strictly quadratic global dimension from the X_{n,k} table."""

    series: str
    n: int
    k: int
    ell: int
    unit_power: int
    N: int
    with_sqrt_n: bool
    value: QuadInt

    def label(self) -> str:
        return f"{self.series}{self.n},{self.k}"


def quantum_group_table() -> list[QuantumGroupDim]:
    """Parse the shipped table of strictly quadratic X_{n,k} dimensions."""
    rows = []
    path = Path(__file__).with_name("data") / "quantum_group_dims.tsv"
    for line in path.read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        series, n, k, ell, power, big_n, flag = line.split("\t")
        fld = field(int(big_n))
        value = fundamental_unit(fld).eps ** int(power) * int(ell)
        if int(flag):
            value = value * fld.sqrt_n()
        rows.append(
            QuantumGroupDim(
                series, int(n), int(k), int(ell), int(power), int(big_n),
                bool(int(flag)), value,
            )
        )
    return rows
