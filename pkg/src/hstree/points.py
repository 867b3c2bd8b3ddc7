"""Point-set generators and the text file format."""

from __future__ import annotations

import math
import os
from fractions import Fraction

from .geom import DEFAULT_BUDGET, BudgetExceeded, PointSet, is_general_position
from .rng import SplitMix64, derive_seed

MODELS = ("unit-cube-rational", "sphere-rational")
MAX_NONCE = 16
LABEL_PREFIX = "# label: "


class PointFileError(ValueError):
    pass


class GeneralPositionError(RuntimeError):
    pass


def moment_curve(n: int, d: int) -> PointSet:
    """Points ``(i, i**2, ..., i**d)`` for ``i = 1..n``, ordered by ``i``."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    pts = tuple(tuple(Fraction(i**k) for k in range(1, d + 1)) for i in range(1, n + 1))
    return PointSet(d, pts, f"moment:n={n}:d={d}")


def _draw(rng: SplitMix64, d: int, model: str, precision: int) -> tuple[Fraction, ...]:
    den = 1 << precision
    if model == "unit-cube-rational":
        return tuple(Fraction(rng.bits(precision), den) for _ in range(d))
    # Box-Muller deviates projected to the unit sphere, then rounded to the
    # dyadic grid; the result lies within d * 2**-precision of the sphere.
    while True:
        g = []
        while len(g) < d:
            u1 = 1.0 - rng.random()
            u2 = rng.random()
            r = math.sqrt(-2.0 * math.log(u1))
            g.append(r * math.cos(2 * math.pi * u2))
            g.append(r * math.sin(2 * math.pi * u2))
        g = g[:d]
        norm = math.sqrt(sum(x * x for x in g))
        if norm > 0:
            return tuple(Fraction(round(x / norm * den), den) for x in g)


def random_pointset(
    n: int,
    d: int,
    model: str = "unit-cube-rational",
    seed: int = 0,
    precision: int = 32,
    budget: int = DEFAULT_BUDGET,
) -> PointSet:
    """Random dyadic-rational point set, deterministic in its arguments.

    When ``C(n, d+1)`` fits in ``budget`` the set is checked for general
    position and regenerated with an incremented nonce on failure.  The nonce
    actually used is recorded in the label.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if precision < 32:
        raise ValueError("precision must be at least 32 bits")
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
    if model == "sphere-rational" and d == 1 and n > 2:
        raise ValueError("the 0-sphere has only two points")
    checkable = math.comb(n, d + 1) <= budget
    for nonce in range(MAX_NONCE):
        rng = SplitMix64(derive_seed(seed, nonce))
        pts = tuple(_draw(rng, d, model, precision) for _ in range(n))
        label = f"random:{model}:n={n}:d={d}:seed={seed}:precision={precision}:nonce={nonce}"
        ps = PointSet(d, pts, label)
        if len(set(pts)) < n:
            continue
        if not checkable:
            return ps
        try:
            if is_general_position(ps, budget):
                return ps
        except BudgetExceeded:  # pragma: no cover - guarded by `checkable`
            return ps
    raise GeneralPositionError(
        f"no general-position set after {MAX_NONCE} nonces (n={n}, d={d}, seed={seed})"
    )


def format_points(ps: PointSet) -> str:
    lines = []
    if ps.label:
        lines.append(LABEL_PREFIX + ps.label)
    lines.append(f"{ps.d} {ps.n}")
    for p in ps.points:
        lines.append(" ".join(str(c) for c in p))
    return "\n".join(lines) + "\n"


def parse_points(text: str) -> PointSet:
    label = ""
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if raw.startswith(LABEL_PREFIX) and header is None:
                label = raw[len(LABEL_PREFIX):]
            continue
        toks = line.split()
        if header is None:
            if len(toks) != 2:
                raise PointFileError(f"line {lineno}: header must be 'd n', got {line!r}")
            try:
                d, n = int(toks[0]), int(toks[1])
            except ValueError:
                raise PointFileError(f"line {lineno}: header must be two integers") from None
            if d < 1 or n < 1:
                raise PointFileError(f"line {lineno}: d and n must be positive")
            header = (d, n, lineno)
            continue
        d = header[0]
        if len(toks) != d:
            raise PointFileError(
                f"line {lineno}: row {len(rows) + 1} has {len(toks)} coordinates, expected {d}"
            )
        coords = []
        for col, tok in enumerate(toks, start=1):
            try:
                coords.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise PointFileError(
                    f"line {lineno}, column {col}: bad rational {tok!r}"
                ) from None
        rows.append(tuple(coords))
    if header is None:
        raise PointFileError("missing header")
    d, n, _ = header
    if len(rows) != n:
        raise PointFileError(f"header declares {n} points but file has {len(rows)}")
    return PointSet(d, tuple(rows), label)


def save_points(ps: PointSet, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_points(ps))


def load_points(path: str | os.PathLike) -> PointSet:
    with open(path, encoding="utf-8") as fh:
        return parse_points(fh.read())
