"""Limiting constants, closed-form tail bounds and dominated-tree bounds.

Constants that multiply a logarithm are returned in natural-log units and
tagged so; :func:`convert_log_base` moves them to per-``log2`` units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Literal, Optional

import numpy as np
from scipy import integrate

LN2 = math.log(2.0)
INV_LN2 = 1.0 / LN2
# constant of the symmetric log-moment lemma, and the round safe value above it
ALPHA = 2.0 * (1.0 + math.sqrt(math.log(8.0))) ** 2
ALPHA_SAFE = 19.0

LAMBDA_TOL = 1e-12
EQUATION_TOL = 1e-10
QUAD_RTOL = 1e-8
U_MAX = 80.0  # truncation point of exponential-weight integrals

LogBase = Optional[Literal["natural", "two"]]


@dataclass(frozen=True)
class BoundResult:
    value: float
    log_base: LogBase = None
    valid: bool = True
    residual: float = 0.0


def convert_log_base(b: BoundResult, to: Literal["natural", "two"]) -> BoundResult:
    """Re-express a ``c * log n`` constant in another base.

    ``c ln n == (c ln 2) log2 n``, so natural -> two multiplies by ln 2.
    """
    if to not in ("natural", "two"):
        raise ValueError(f"unknown log base {to!r}")
    if b.log_base is None:
        raise ValueError("result carries no log base")
    if b.log_base == to:
        return b
    factor = LN2 if to == "two" else INV_LN2
    return replace(b, value=b.value * factor, log_base=to, residual=b.residual * factor)


# ---------------------------------------------------------------------------
# root finding


def _bisect(f: Callable[[float], float], lo: float, hi: float) -> tuple[float, float]:
    """Bisect a sign change of ``f`` on ``[lo, hi]`` to machine precision.

    Returns ``(root, |f(root)|)``.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, 0.0
    if fhi == 0.0:
        return hi, 0.0
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid, 0.0
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return (lo, abs(flo)) if abs(flo) <= abs(fhi) else (hi, abs(fhi))


def _window(t: int) -> np.ndarray:
    return np.arange(t + 1, 2 * t + 2, dtype=float)


# ---------------------------------------------------------------------------
# fringe-tree / moment-curve constants


def lambda_poblete_exact(t: int) -> Fraction:
    """``1 / sum_{i=t+1}^{2t+1} 1/(i+1)`` as an exact rational."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return 1 / sum(Fraction(1, i + 1) for i in range(t + 1, 2 * t + 2))


def lambda_poblete(t: int) -> BoundResult:
    """Limiting ``D_n / ln n`` of the median-of-(2t+1) tree."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t <= 500:
        return BoundResult(float(lambda_poblete_exact(t)), "natural")
    s = math.fsum(1.0 / (i + 1) for i in range(t + 1, 2 * t + 2))
    return BoundResult(1.0 / s, "natural")


def solve_lambda_of_c(c: float, t: int) -> BoundResult:
    """Root ``lam > -(t+1)`` of ``1/c = sum_{i=t+1}^{2t+1} 1/(lam+i)``.

    The right side decreases strictly in ``lam``, so the root is unique.  It
    is positive exactly when ``1/c < sum 1/i``; otherwise ``valid`` is False.
    At ``c = Lambda(t)`` the root is ``lam = 1``.
    """
    if c <= 0:
        raise ValueError("c must be positive")
    i = _window(t)
    target = 1.0 / c

    def g(lam):
        return float(np.sum(1.0 / (lam + i))) - target

    if g(0.0) > 0:
        lo, hi = 0.0, 1.0
        while g(hi) > 0:
            lo, hi = hi, 2.0 * hi
    else:
        hi, step = 0.0, 1.0
        lo = -(t + 1) + step
        while g(lo) <= 0:
            step *= 0.5
            lo = -(t + 1) + step
    lam, res = _bisect(g, lo, hi)
    return BoundResult(lam, None, valid=lam > 0 and res <= LAMBDA_TOL, residual=res)


def _height_equation(c: float, t: int) -> float:
    i = _window(t)
    lam = solve_lambda_of_c(c, t).value
    return lam - c * float(np.sum(np.log1p(lam / i))) + c * LN2


def height_constant(t: int, c_max: float = 64.0) -> BoundResult:
    """Limiting ``H_n / ln n`` of the median-of-(2t+1) tree.

    Root of ``lam(c) - c sum log(1 + lam(c)/i) + c log 2`` on
    ``(Lambda(t), c_max]``.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    lo = lambda_poblete(t).value
    # step off the left end, where lam(c) = 1 and the equation equals 1
    lo = lo * (1 + 1e-12)
    f = lambda c: _height_equation(c, t)  # noqa: E731
    if f(lo) * f(c_max) > 0:
        return BoundResult(math.nan, "natural", valid=False, residual=math.inf)
    c, res = _bisect(f, lo, c_max)
    return BoundResult(c, "natural", valid=res <= EQUATION_TOL, residual=res)


def moment_depth_lower(t: int) -> BoundResult:
    """``1/ln 2 + ln(3/2)/(4t)``, a lower bound on ``Lambda(t)`` for large t."""
    if t < 1:
        raise ValueError("t must be at least 1")
    return BoundResult(INV_LN2 + math.log(1.5) / (4 * t), "natural")


def moment_height_lower(t: int, c: float) -> BoundResult:
    """``1/ln 2 + c/sqrt(t)`` for ``0 < c < sqrt(ln 2)``."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if not 0 < c < math.sqrt(LN2):
        raise ValueError("need 0 < c < sqrt(ln 2)")
    return BoundResult(INV_LN2 + c / math.sqrt(t), "natural")


# ---------------------------------------------------------------------------
# balance-lemma bounds


def balance_bound_exact(n: int, d: int, x) -> Fraction:
    """Cantelli bound on ``P(N >= (n-d)/2 + x)`` for the coin-side ``N``."""
    if n < d + 1:
        raise ValueError("need n >= d+1")
    x = Fraction(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    m = n - d
    var = Fraction(m, 4) + Fraction(m * m, 4 * (d + 1))
    return var / (var + x * x)


def balance_bound(n: int, d: int, x: float) -> BoundResult:
    return BoundResult(float(balance_bound_exact(n, d, x)))


def simplified_balance_exact(d: int, x) -> Fraction:
    """``min(1/2, 1/(1 + 4(d+1)(x-1/2)^2))`` bounding ``P(N/n >= x)``, x > 1/2."""
    x = Fraction(x)
    if not Fraction(1, 2) < x:
        raise ValueError("need x > 1/2")
    h = x - Fraction(1, 2)
    return min(Fraction(1, 2), 1 / (1 + 4 * (d + 1) * h * h))


def simplified_balance_bound(d: int, x: float) -> BoundResult:
    if not 0.5 < x <= 1:
        raise ValueError("need 1/2 < x <= 1")
    return BoundResult(float(simplified_balance_exact(d, x)))


def wagner_hoeffding_tail(d: int, x: float) -> BoundResult:
    """``4 exp(-2d(x-1/2)^2)``; flagged invalid where it is not below 1."""
    if not 0.5 <= x <= 1:
        raise ValueError("need 1/2 <= x <= 1")
    v = 4.0 * math.exp(-2.0 * d * (x - 0.5) ** 2)
    return BoundResult(v, valid=v < 1.0)


def _binom_cdf_exact(d: int, x: Fraction, k: int) -> Fraction:
    if k < 0:
        return Fraction(0)
    y = 1 - x
    return sum(math.comb(d, j) * x**j * y ** (d - j) for j in range(0, min(k, d) + 1))


def beta_tail_fraction(d: int, x) -> Fraction:
    """``P(B >= x)`` for ``B ~ beta(ceil(d/2), ceil(d/2))`` via binomial duality.

    Odd d: ``P(Bin(d, x) <= (d-1)/2)``.  Even d: mean of
    ``P(Bin(d, x) <= d/2 - 1)`` and ``P(Bin(d, x) <= d/2)``.
    """
    x = Fraction(x)
    if x <= 0:
        return Fraction(1)
    if x >= 1:
        return Fraction(0)
    if d % 2:
        return _binom_cdf_exact(d, x, (d - 1) // 2)
    return (_binom_cdf_exact(d, x, d // 2 - 1) + _binom_cdf_exact(d, x, d // 2)) / 2


def beta_tail_exact(d: int, x: float) -> BoundResult:
    if d < 1:
        raise ValueError("d must be positive")
    return BoundResult(float(beta_tail_fraction(d, x)))


# ---------------------------------------------------------------------------
# split laws


@dataclass(frozen=True)
class SplitLaw:
    """Symmetric split law ``Z = 1/2 + sigma V`` with ``V`` in ``[0, 1/2]``.

    ``example2``: ``V = min(1/2, sqrt(1/(2(d+1)U)))``, U uniform.
    ``wagner``:   ``V = min(1/2, sqrt((E + ln 4)/(2d)))``, E exponential.
    ``explicit``: ``V = min(1/2, a sqrt(E + b))``.
    """

    kind: Literal["example2", "wagner", "explicit"]
    d: int = 0
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.kind in ("example2", "wagner"):
            if self.d < 1:
                raise ValueError("d must be at least 1")
        elif self.kind == "explicit":
            if not self.a > 0 or self.b < 0:
                raise ValueError("need a > 0 and b >= 0")
        else:
            raise ValueError(f"unknown law kind {self.kind!r}")

    @classmethod
    def example2(cls, d: int) -> "SplitLaw":
        return cls("example2", d=d)

    @classmethod
    def wagner(cls, d: int) -> "SplitLaw":
        return cls("wagner", d=d)

    @classmethod
    def explicit(cls, a: float, b: float) -> "SplitLaw":
        return cls("explicit", a=a, b=b)

    def atom(self) -> float:
        """``P(V = 1/2)``, i.e. the weight of ``Z* = 1`` (or ``W = 1``)."""
        if self.kind == "example2":
            return min(1.0, 2.0 / (self.d + 1))
        return math.exp(-self._e_cut()) if self._e_cut() > 0 else 1.0

    def _e_cut(self) -> float:
        # exponential level at which V reaches 1/2
        if self.kind == "wagner":
            return self.d / 2.0 - math.log(4.0)
        return 1.0 / (4.0 * self.a * self.a) - self.b

    def _v(self, s):
        if self.kind == "example2":
            return np.minimum(0.5, np.sqrt(1.0 / (2.0 * (self.d + 1) * s)))
        if self.kind == "wagner":
            return np.minimum(0.5, np.sqrt((s + math.log(4.0)) / (2.0 * self.d)))
        return np.minimum(0.5, self.a * np.sqrt(s + self.b))

    def expect(self, g: Callable[[float], float]) -> tuple[float, float]:
        """``E[g(V)]`` by adaptive quadrature plus the atom at ``V = 1/2``.

        Returns ``(value, error estimate)``.
        """
        w = self.atom()
        head = w * g(0.5)
        if w >= 1.0:
            return head, 0.0
        if self.kind == "example2":
            u0 = 2.0 / (self.d + 1)
            val, err = integrate.quad(
                lambda u: g(float(self._v(u))), u0, 1.0, epsabs=0.0, epsrel=1e-11, limit=200
            )
            return head + val, err
        top = min(self._e_cut(), U_MAX)
        val, err = integrate.quad(
            lambda u: g(float(self._v(u))) * math.exp(-u),
            0.0,
            top,
            epsabs=0.0,
            epsrel=1e-11,
            limit=200,
        )
        # mass between U_MAX and the cut is at most exp(-U_MAX) * sup|g|
        tail = math.exp(-U_MAX) * max(abs(g(0.0)), abs(g(0.5))) if top < self._e_cut() else 0.0
        return head + val, err + tail

    def tail(self, x: float) -> float:
        """``P(Z* >= x)`` where ``Z* = 1/2 + V``."""
        if x <= 0.5:
            return 1.0
        if x > 1.0:
            return 0.0
        h = x - 0.5
        if self.kind == "example2":
            return min(1.0, 1.0 / (2.0 * (self.d + 1) * h * h))
        if self.kind == "wagner":
            return min(1.0, 4.0 * math.exp(-2.0 * self.d * h * h))
        return min(1.0, math.exp(-(h * h / (self.a * self.a) - self.b)))

    def sample_v(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "example2":
            return self._v(1.0 - rng.random(size))
        return self._v(rng.standard_exponential(size))


# ---------------------------------------------------------------------------
# dominated trees


def rho(b: float) -> tuple[float, float]:
    """``E[exp(sqrt(E + b))]`` for standard exponential E: ``(value, error)``."""
    if b < 0:
        raise ValueError("b must be nonnegative")
    val, err = integrate.quad(
        lambda u: math.exp(math.sqrt(u + b) - u), 0.0, U_MAX, epsabs=0.0, epsrel=1e-12, limit=200
    )
    # sqrt is concave, so past U_MAX the integrand is below
    # exp(s + (u-U)/(2s) - u) with s = sqrt(U_MAX + b)
    s = math.sqrt(U_MAX + b)
    tail = math.exp(s - U_MAX) / (1.0 - 1.0 / (2.0 * s))
    if not (err + tail) <= QUAD_RTOL * val:
        raise ArithmeticError("quadrature for rho did not converge")
    return val + tail, err + tail


def dominated_height_gamma(law: SplitLaw) -> BoundResult:
    """``1 / (ln 2 - 2a ln(2 rho))``: heights stay below ``gamma ln n`` w.h.p.

    Invalid (vacuous) when the denominator is not positive.
    """
    if law.kind != "explicit":
        raise ValueError("dominated_height_gamma needs an explicit (a, b) law")
    r, err = rho(law.b)
    den = LN2 - 2.0 * law.a * math.log(2.0 * r)
    if den <= 0:
        return BoundResult(math.inf, "natural", valid=False, residual=err)
    return BoundResult(1.0 / den, "natural", valid=True, residual=err)


def theorem_height_law(d: int) -> SplitLaw:
    """``a = 1/sqrt(2d)``, ``b = ln 8``: the explicit law for a d-dimensional HST."""
    return SplitLaw.explicit(1.0 / math.sqrt(2.0 * d), math.log(8.0))


def height_condition_holds(gamma: float, law: SplitLaw, lam: float) -> bool:
    """``e^lam (2 E[Z*^lam])^gamma < 1`` for ``Z* = 1/2 + V``."""
    if not lam > 0:
        raise ValueError("lambda must be positive")
    m, _ = law.expect(lambda v: (0.5 + v) ** lam)
    return lam + gamma * math.log(2.0 * m) < 0


def log_moment(law: SplitLaw) -> BoundResult:
    """``mu = 2 E[Z ln(1/Z)]`` by quadrature (0 ln 0 = 0)."""

    def h(v):
        s = 0.0
        for z in (0.5 + v, 0.5 - v):
            if z > 0:
                s -= z * math.log(z)
        return s

    val, err = law.expect(h)
    return BoundResult(val, valid=val > 0, residual=err)


def log_moment_lower(law: SplitLaw, alpha: float = ALPHA) -> BoundResult:
    """Lower bound ``ln 2 - alpha E[V^2]`` on the logarithmic moment.

    Closed forms are used for ``example2`` and ``wagner``; ``explicit`` laws
    take ``E[V^2]`` by quadrature.  Invalid when the bound is not positive.
    """
    if law.kind == "example2":
        d = law.d
        v = LN2 - alpha / (2.0 * (d + 1)) * (1.0 + math.log((d + 1) / 2.0))
        err = 0.0
    elif law.kind == "wagner":
        v = LN2 - alpha * (1.0 + math.log(4.0)) / (2.0 * law.d)
        err = 0.0
    else:
        ev2, err = law.expect(lambda x: x * x)
        v = LN2 - alpha * ev2
    return BoundResult(v, valid=v > 0, residual=err)


def depth_tail_bound(n: int, t: int, lam: float, law: SplitLaw) -> BoundResult:
    """``min(1, n^lam phi(lam)^t)`` with ``phi(lam) = E[Z^(lam+1) + (1-Z)^(lam+1)]``."""
    if not lam > 0:
        raise ValueError("lambda must be positive")
    if t < 0:
        raise ValueError("t must be nonnegative")
    phi, err = law.expect(lambda v: (0.5 + v) ** (lam + 1) + (0.5 - v) ** (lam + 1))
    log_raw = lam * math.log(n) + t * math.log(phi) if phi > 0 else -math.inf
    raw = math.exp(min(log_raw, 700.0))
    return BoundResult(min(1.0, raw), valid=raw < 1.0, residual=err)
