"""Working-precision arithmetic context and exact combinatorial helpers.

Everything downstream (zeta evaluation, series, quadrature, oracles) runs on
mpmath real/complex numbers at ``digits + guard`` decimal digits and reports
results at ``digits``.  Combinatorial quantities that are prone to
cancellation (harmonic numbers, Pochhammer ratios) are built in exact
integer/rational arithmetic and rounded once.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

__all__ = [
    "DomainError",
    "PrecisionContext",
    "CoeffRatio",
    "pochhammer",
    "pochhammer_int",
    "harmonic",
    "harmonic_fraction",
    "log_power",
    "coeff_ratio",
    "bernoulli",
    "to_real",
    "to_complex",
    "render_real",
    "render_complex",
    "parse_real",
    "parse_complex",
]


class DomainError(ValueError):
    """A precondition on a numeric operation's domain was violated."""


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision for all numeric operations.

    ``digits`` is the reported precision; ``guard`` extra digits are carried
    internally so that accumulated rounding stays below the reporting scale.
    """

    digits: int = 30
    guard: int = 10

    def __post_init__(self) -> None:
        if self.digits < 15:
            raise DomainError("digits must be >= 15")
        if self.guard < 0:
            raise DomainError("guard must be >= 0")

    @property
    def working_dps(self) -> int:
        return self.digits + self.guard

    def workprec(self):
        """Context manager switching mpmath to the working precision."""
        return mp.mp.workdps(self.working_dps)

    def eps(self) -> mp.mpf:
        """10^(-digits), the reporting-scale unit."""
        with self.workprec():
            return mp.mpf(10) ** (-self.digits)


DEFAULT_CONTEXT = PrecisionContext()


def to_real(x) -> mp.mpf:
    """Coerce int/float/str/Fraction/mpf to mpf at current precision."""
    if isinstance(x, mp.mpf):
        return x
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    if isinstance(x, str):
        return mp.mpf(x)
    if isinstance(x, numbers.Real):
        return mp.mpf(x)
    raise DomainError(f"cannot interpret {x!r} as a real number")


def to_complex(x) -> mp.mpc:
    """Coerce any supported scalar (or {'re','im'} mapping) to mpc."""
    if isinstance(x, mp.mpc):
        return x
    if isinstance(x, dict):
        return mp.mpc(to_real(x.get("re", 0)), to_real(x.get("im", 0)))
    if isinstance(x, complex):
        return mp.mpc(x)
    return mp.mpc(to_real(x))


def pochhammer(s, j: int) -> mp.mpc:
    """Rising factorial s(s+1)...(s+j-1); equals 1 for j = 0."""
    if j < 0:
        raise DomainError("pochhammer order must be non-negative")
    s = to_complex(s)
    out = mp.mpc(1)
    for i in range(j):
        out *= s + i
    return out


def pochhammer_int(r: int, j: int) -> int:
    """Exact integer rising factorial r(r+1)...(r+j-1)."""
    if j < 0:
        raise DomainError("pochhammer order must be non-negative")
    out = 1
    for i in range(j):
        out *= r + i
    return out


_HARMONIC: list[Fraction] = [Fraction(0)]


def harmonic_fraction(j: int) -> Fraction:
    """H_j as an exact rational; H_0 = 0."""
    if j < 0:
        raise DomainError("harmonic index must be non-negative")
    while len(_HARMONIC) <= j:
        i = len(_HARMONIC)
        _HARMONIC.append(_HARMONIC[-1] + Fraction(1, i))
    return _HARMONIC[j]


def harmonic(j: int) -> mp.mpf:
    """H_j = 1 + 1/2 + ... + 1/j rounded once from the exact rational."""
    h = harmonic_fraction(j)
    return mp.mpf(h.numerator) / mp.mpf(h.denominator)


def log_power(a, k: int) -> mp.mpc:
    """(ln a)^k on the principal branch, with (ln a)^0 = 1 even at a = 1."""
    if k < 0:
        raise DomainError("log power must be non-negative")
    a = to_complex(a)
    if a == 0:
        raise DomainError("log_power requires a != 0")
    if k == 0:
        return mp.mpc(1)
    return mp.log(a) ** k


@dataclass(frozen=True)
class CoeffRatio:
    """The exact ratio (-m)_j / (-n-m)_j rounded to working precision."""

    m: int
    n: int
    j: int
    value: mp.mpf


def coeff_ratio_fraction(m: int, n: int, j: int) -> Fraction:
    """Exact (-m)_j / (-n-m)_j; requires j <= n+m so the denominator is nonzero."""
    if min(m, n, j) < 0:
        raise DomainError("coeff_ratio arguments must be non-negative")
    if j > n + m:
        raise DomainError(f"coeff_ratio requires j <= n+m (got j={j}, n+m={n + m})")
    num = pochhammer_int(-m, j)
    den = pochhammer_int(-n - m, j)
    return Fraction(num, den)


def coeff_ratio(m: int, n: int, j: int) -> CoeffRatio:
    frac = coeff_ratio_fraction(m, n, j)
    value = mp.mpf(frac.numerator) / mp.mpf(frac.denominator)
    return CoeffRatio(m=m, n=n, j=j, value=value)


_BERNOULLI_CACHE: dict[tuple[int, int], mp.mpf] = {}


def bernoulli(n: int) -> mp.mpf:
    """Bernoulli number B_n at current working precision (cached per dps)."""
    key = (n, mp.mp.dps)
    b = _BERNOULLI_CACHE.get(key)
    if b is None:
        b = mp.bernoulli(n)
        _BERNOULLI_CACHE[key] = b
    return b


# ---------------------------------------------------------------------------
# Decimal-string serialization.  Reals render as optionally signed decimals
# with an `e` exponent marker; complexes as {"re": ..., "im": ...}.  The
# round trip parse(render(x)) recovers x to the context's reported precision.
# ---------------------------------------------------------------------------


def render_real(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> str:
    x = to_real(x)
    if mp.isnan(x) or mp.isinf(x):
        raise DomainError("cannot serialize non-finite value")
    return mp.nstr(
        x, ctx.digits + 2, strip_zeros=True, min_fixed=0, max_fixed=0, show_zero_exponent=True
    )


def render_complex(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> dict[str, str]:
    x = to_complex(x)
    return {"re": render_real(x.real, ctx), "im": render_real(x.imag, ctx)}


def parse_real(text: str) -> mp.mpf:
    return mp.mpf(text.strip())


def parse_complex(obj) -> mp.mpc:
    if isinstance(obj, dict):
        return mp.mpc(parse_real(obj["re"]), parse_real(obj.get("im", "0")))
    return mp.mpc(parse_real(obj))
