"""Exact arithmetic in rings of quadratic integers.

Elements of the ring of integers of Q(sqrt(N)) are stored in doubled
coordinates: ``x = (p + q*sqrt(N)) / 2`` with ``p``, ``q`` integers of equal
parity, and both even when N is not 1 mod 4.  This gives one uniform code
path for both integral bases (sqrt(N) and (1+sqrt(N))/2).

Everything on a correctness path is integer arithmetic: signs of
``p + q*sqrt(N)`` are decided by comparing p^2 against N*q^2, real values are
bracketed with ``math.isqrt`` when a decimal is needed, and floating point
never decides anything.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from random import Random


# ---------------------------------------------------------------------------
# errors


class ParityError(ValueError):
    """Raw coordinates (p, q) do not describe an algebraic integer."""


class NotAlgebraicInteger(ParityError):
    """Membership-level wrapper for ParityError on user-facing queries."""


class FieldMismatch(ValueError):
    """Operands live in different quadratic fields."""


class DivByZero(ZeroDivisionError):
    pass


class NotDivisible(ArithmeticError):
    """Exact division requested but the quotient is not integral."""


class FactorizationLimit(RuntimeError):
    """Factoring ran out of budget before finishing (never a wrong answer)."""


class ZeroElement(ValueError):
    """Operation undefined for zero."""


class NotADNumber(ValueError):
    pass


class NotInDPlus(ValueError):
    """Element is not in the positive cone (some real embedding < 1)."""


class NotApplicable(TypeError):
    """Operation undefined for this field (e.g. real order on N < 0)."""


class InternalInconsistency(AssertionError):
    """Two independent routes disagreed; a bug, not a domain error."""


class PrecisionInsufficient(RuntimeError):
    """Certified intervals still overlap at the precision cap."""


class Rejected(ValueError):
    """A screening predicate failed; the reason is the message."""


# ---------------------------------------------------------------------------
# integer factorization (trial division + Miller-Rabin + Brent's rho)

_SIEVE_BOUND = 10**6
_small_primes: list[int] | None = None

#: Iteration budget for Pollard rho; set_factor_budget / CLI --budget adjust it.
DEFAULT_FACTOR_BUDGET = 10**7
_factor_budget = DEFAULT_FACTOR_BUDGET


def set_factor_budget(budget: int) -> None:
    global _factor_budget
    if budget <= 0:
        raise ValueError("budget must be positive")
    _factor_budget = budget


def _primes() -> list[int]:
    global _small_primes
    if _small_primes is None:
        sieve = bytearray([1]) * (_SIEVE_BOUND + 1)
        sieve[0] = sieve[1] = 0
        for i in range(2, math.isqrt(_SIEVE_BOUND) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _small_primes = [i for i in range(_SIEVE_BOUND + 1) if sieve[i]]
    return _small_primes


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Deterministic below 3.3e24 with these twelve bases; above that we add
    # random rounds (a composite slipping through 64 rounds is ~2^-128).
    bases = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    if n >= 3_317_044_064_679_887_385_961_981:
        rng = Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(64)]
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, budget: list[int]) -> int:
    """One nontrivial factor of odd composite n, or raise FactorizationLimit."""
    rng = Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget[0] -= min(m, r - k)
                if budget[0] <= 0:
                    raise FactorizationLimit(f"factor budget exhausted on {n}")
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                budget[0] -= 1
                if budget[0] <= 0:
                    raise FactorizationLimit(f"factor budget exhausted on {n}")
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as an exponent dict.

    Raises FactorizationLimit if the rho budget runs out; never returns a
    wrong factorization.
    """
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    for p in _primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    budget = [_factor_budget]
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _brent_rho(m, budget)
        stack += [d, m // d]
    return dict(sorted(out.items()))


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, ascending."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n >= 1 as s^2 * f with f squarefree; return (s, f)."""
    if n < 1:
        raise ValueError("squarefree_decompose expects n >= 1")
    s = f = 1
    for p, e in factorize(n).items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    assert s * s * f == n
    return s, f


def squarefree_part(n: int) -> int:
    return squarefree_decompose(n)[1]


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return squarefree_part(abs(n)) == abs(n)


def squarefree_range(limit: int) -> list[int]:
    """Squarefree integers in [1, limit], by sieving square multiples."""
    flags = bytearray([1]) * (limit + 1)
    for d in range(2, math.isqrt(limit) + 1):
        flags[d * d :: d * d] = bytearray(len(flags[d * d :: d * d]))
    return [n for n in range(1, limit + 1) if flags[n]]


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


# ---------------------------------------------------------------------------
# fields and elements

SQRT_N = "SqrtN"
HALF_ONE_PLUS_SQRT_N = "HalfOnePlusSqrtN"


class QuadField:
    """The ring of integers of Q(sqrt(N)), N squarefree and not 0 or 1."""

    __slots__ = ("N", "omega_kind")

    def __init__(self, N: int):
        if N in (0, 1) or not is_squarefree(N):
            raise ValueError(f"N must be squarefree and != 0, 1 (got {N})")
        object.__setattr__(self, "N", N)
        # Python's % is nonnegative for positive modulus, so -3 % 4 == 1 and
        # the Eisenstein case lands in the half-integer basis as it should.
        kind = HALF_ONE_PLUS_SQRT_N if N % 4 == 1 else SQRT_N
        object.__setattr__(self, "omega_kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("QuadField is immutable")

    def __eq__(self, other):
        return isinstance(other, QuadField) and self.N == other.N

    def __hash__(self):
        return hash(("QuadField", self.N))

    def __repr__(self):
        return f"QuadField({self.N})"

    @property
    def is_real(self) -> bool:
        return self.N > 0

    def omega(self) -> "QuadInt":
        """The second basis element: sqrt(N), or (1+sqrt(N))/2 when N = 1 mod 4."""
        if self.omega_kind == HALF_ONE_PLUS_SQRT_N:
            return QuadInt(self, 1, 1)
        return QuadInt(self, 0, 2)

    def sqrt_n(self) -> "QuadInt":
        return QuadInt(self, 0, 2)

    def one(self) -> "QuadInt":
        return QuadInt(self, 2, 0)

    def zero(self) -> "QuadInt":
        return QuadInt(self, 0, 0)

    def integer(self, k: int) -> "QuadInt":
        return QuadInt(self, 2 * k, 0)


@lru_cache(maxsize=None)
def field(N: int) -> QuadField:
    return QuadField(N)


def _check_parity(fld: QuadField, p: int, q: int) -> None:
    if (p - q) % 2 != 0:
        raise ParityError(
            f"(p={p}, q={q}) has mixed parity; (p + q*sqrt({fld.N}))/2 "
            "is not an algebraic integer"
        )
    if fld.omega_kind == SQRT_N and p % 2 != 0:
        raise ParityError(
            f"(p={p}, q={q}) must both be even: {fld.N} is not 1 mod 4, so "
            "half-integer coordinates are not integral"
        )


class QuadInt:
    """(p + q*sqrt(N)) / 2 with validated parity.  Immutable."""

    __slots__ = ("field", "p", "q")

    def __init__(self, fld: QuadField, p: int, q: int):
        if not isinstance(p, int) or not isinstance(q, int):
            raise TypeError("coordinates must be int")
        _check_parity(fld, p, q)
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("QuadInt is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def N(self) -> int:
        return self.field.N

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q != 0:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p, 2)

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def conjugate(self) -> "QuadInt":
        return QuadInt(self.field, self.p, -self.q)

    def norm(self) -> int:
        num = self.p * self.p - self.N * self.q * self.q
        assert num % 4 == 0
        return num // 4

    def trace(self) -> int:
        return self.p

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuadInt):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return QuadInt(self.field, 2 * other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.field, self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.field, self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.field, o.p - self.p, o.q - self.q)

    def __neg__(self):
        return QuadInt(self.field, -self.p, -self.q)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadInt(self.field, self.p * other, self.q * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        pp = self.p * o.p + self.N * self.q * o.q
        qq = self.p * o.q + self.q * o.p
        assert pp % 2 == 0 and qq % 2 == 0
        return QuadInt(self.field, pp // 2, qq // 2)

    __rmul__ = __mul__

    def inverse(self) -> "QuadInt":
        n = self.norm()
        if abs(n) != 1:
            raise NotDivisible(f"{self} is not a unit (norm {n})")
        c = self.conjugate()
        return c if n == 1 else -c

    def __pow__(self, k: int) -> "QuadInt":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = self.field.one()
        for bit in bin(abs(k))[2:]:
            out = out * out
            if bit == "1":
                out = out * base
        return out

    # -- comparisons (exact; real fields only for order) -------------------

    def __eq__(self, other):
        if isinstance(other, QuadInt):
            if self.q == 0 and other.q == 0:
                return self.p == other.p  # same rational, any ambient field
            return (
                self.field == other.field
                and self.p == other.p
                and self.q == other.q
            )
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and Fraction(self.p, 2) == other
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, 2))
        return hash((self.N, self.p, self.q))

    def sign(self) -> int:
        """Sign of the real value; NotApplicable for imaginary fields."""
        if self.N < 0:
            raise NotApplicable("no real ordering for N < 0")
        return _sign_of_radical(Fraction(self.p), Fraction(self.q), self.N)

    def _cmp(self, other) -> int:
        if isinstance(other, QuadInt):
            if other.field != self.field:
                raise FieldMismatch(
                    "ordering two quadratic integers needs a common field; "
                    "use compare_values for cross-field comparison"
                )
            return (self - other).sign()
        if isinstance(other, int):
            return (self - other).sign()
        if isinstance(other, Fraction):
            if self.N < 0:
                raise NotApplicable("no real ordering for N < 0")
            r = Fraction(self.p, 2) - other
            return _sign_of_radical(r, Fraction(self.q, 2), self.N)
        raise TypeError(f"cannot order QuadInt and {type(other).__name__}")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"QuadInt({self.N}, {self.p}, {self.q})"


def make(field_or_n, p: int, q: int) -> QuadInt:
    """Build (p + q*sqrt(N))/2, validating integrality of the coordinates."""
    fld = field_or_n if isinstance(field_or_n, QuadField) else field(field_or_n)
    return QuadInt(fld, p, q)


def conjugate(x: QuadInt) -> QuadInt:
    return x.conjugate()


def norm(x: QuadInt) -> int:
    return x.norm()


def trace(x: QuadInt) -> int:
    return x.trace()


def sign(x: QuadInt) -> int:
    return x.sign()


def compare(x: QuadInt, y) -> int:
    """-1, 0, or 1 as x <, =, > y.  Same field (or rational) only."""
    return x._cmp(y)


def exact_divide(x: QuadInt, y: QuadInt) -> QuadInt:
    """x / y when the quotient lies in the ring; NotDivisible otherwise."""
    if y.field != x.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")
    if y.is_zero():
        raise DivByZero("division by zero element")
    n = y.norm()
    z = x * y.conjugate()
    if z.p % n or z.q % n:
        raise NotDivisible(f"{y} does not divide {x}")
    try:
        return QuadInt(x.field, z.p // n, z.q // n)
    except ParityError:
        # Coordinates divide but the quotient is a half-integer point
        # outside the ring (possible only in the 1 mod 4 basis).
        raise NotDivisible(f"{y} does not divide {x}") from None


def divides(y: QuadInt, x: QuadInt) -> bool:
    try:
        exact_divide(x, y)
        return True
    except NotDivisible:
        return False


# ---------------------------------------------------------------------------
# exact sign / interval machinery


def _sign_of_radical(r: Fraction, s: Fraction, N: int) -> int:
    """Sign of r + s*sqrt(N) for N > 0 squarefree, exactly."""
    if s == 0:
        return (r > 0) - (r < 0)
    if s > 0:
        if r >= 0:
            return 1
        return 1 if r * r < s * s * N else (-1 if r * r > s * s * N else 0)
    if r <= 0:
        return -1
    return -1 if r * r < s * s * N else (1 if r * r > s * s * N else 0)


def _floor_sqrt_scaled(a: int, b: int, N: int, scale: int) -> int:
    """floor((a/b) * sqrt(N) * scale) for b > 0, N >= 0, any sign of a."""
    if a >= 0:
        return math.isqrt(a * a * N * scale * scale) // b
    m = a * a * N * scale * scale
    r = math.isqrt(m)
    # floor(-y/b) = -ceil(y/b), and ceil(y/b) = ceil(ceil(y)/b) for b > 0
    num = r if r * r == m else r + 1
    return -((num + b - 1) // b)


def _floor_value_scaled(r: Fraction, s: Fraction, N: int, scale: int) -> int:
    """floor((r + s*sqrt(N)) * scale), exactly."""
    if s == 0:
        return math.floor(r * scale)
    # common denominator d: value*scale = (a + c*sqrt(N))*scale / d
    d = math.lcm(r.denominator, s.denominator)
    a = r.numerator * (d // r.denominator)
    c = s.numerator * (d // s.denominator)
    f = _floor_sqrt_scaled(c, 1, N, scale)  # floor(c*sqrt(N)*scale)
    # a*scale + c*sqrt(N)*scale lies in [a*scale + f, a*scale + f + 1); the
    # value is irrational (c != 0), so dividing by d keeps the floor honest.
    return (a * scale + f) // d


def _parts(x) -> tuple[Fraction, Fraction, int]:
    """(rational part, coefficient of sqrt(N), N) with s = 0 for rationals."""
    if isinstance(x, QuadInt):
        if x.N < 0:
            raise NotApplicable("no real value for N < 0")
        if x.q == 0:
            return Fraction(x.p, 2), Fraction(0), 0
        return Fraction(x.p, 2), Fraction(x.q, 2), x.N
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(0), 0
    raise TypeError(f"cannot interpret {type(x).__name__} as a real value")


def real_interval(x, scale: int) -> tuple[Fraction, Fraction]:
    """A width-1/scale interval [lo, hi] certified to contain the value."""
    r, s, N = _parts(x)
    f = _floor_value_scaled(r, s, N, scale)
    return Fraction(f, scale), Fraction(f + 1, scale)


def compare_values(a, b) -> int:
    """Exact three-way comparison of mixed QuadInt / int / Fraction values.

    Same-field and single-radical cases resolve by integer sign arguments;
    genuinely mixed radicals (which can never be equal) escalate certified
    intervals until they separate.
    """
    ra, sa, Na = _parts(a)
    rb, sb, Nb = _parts(b)
    if sa == 0 and sb == 0:
        d = ra - rb
        return (d > 0) - (d < 0)
    if sa == 0 or sb == 0 or Na == Nb:
        N = Na if sa != 0 else Nb
        return _sign_of_radical(ra - rb, sa - sb, N)
    # distinct radicands, both irrational: never equal
    scale = 10**8
    while True:
        lo_a, hi_a = real_interval(a, scale)
        lo_b, hi_b = real_interval(b, scale)
        if hi_a < lo_b:
            return -1
        if hi_b < lo_a:
            return 1
        scale *= 10**8


def decimal_str(x, places: int = 6) -> str:
    """Floor-rounded decimal rendering, computed without floating point."""
    r, s, N = _parts(x)
    scale = 10**places
    v = _floor_value_scaled(r, s, N, scale)
    sign_str = "-" if v < 0 else ""
    v = abs(v)
    whole, frac = divmod(v, scale)
    return f"{sign_str}{whole}.{frac:0{places}d}" if places else f"{sign_str}{whole}"


# ---------------------------------------------------------------------------
# rendering


def _radical_str(N: int) -> str:
    return f"√{N}"


def render(x: QuadInt) -> str:
    """Canonical text form: a+b*sqrt(N) when q is even, (p+q*sqrt(N))/2 else."""
    p, q, N = x.p, x.q, x.N
    rad = _radical_str(N)
    if q == 0:
        return str(p // 2)
    if q % 2 == 0:
        a, b = p // 2, q // 2
        if b < 0:
            bs = rad if b == -1 else f"{-b}{rad}"
            return f"-{bs}" if a == 0 else f"{a}-{bs}"
        bs = rad if b == 1 else f"{b}{rad}"
        return bs if a == 0 else f"{a}+{bs}"
    # half-integer coordinates
    if q < 0:
        qs = rad if q == -1 else f"{-q}{rad}"
        return f"({p}-{qs})/2"
    qs = rad if q == 1 else f"{q}{rad}"
    return f"({p}+{qs})/2"
