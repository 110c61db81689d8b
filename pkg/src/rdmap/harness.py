"""Convergence harness: sweep heat parameters and record defect brackets.

Each grid point fixes a rate r and a truncation radius n, builds the
rescaled truncated heat multiplier, and brackets the operator-norm defect
of the identity-approximation step on a chosen test element.  Rows are
deterministic given the seed; canonical exports zero the runtime column so
reruns are byte-identical.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .groups import DEFAULT_BALL_CAP, Group
from .kernels import decay_certificate
from .multipliers import certified_scale, map_defect, scaled_multiplier
from .operators import (
    GroupRingElement,
    RdParams,
    opnorm_lower,
    random_element,
    sobolev_norm,
)

DEFAULT_R_VALUES = (0.5, 0.1, 0.02)

CSV_HEADER = "r,n,U,K_n,defect_lower,defect_upper,runtime_ms"


def default_n_rule(s: float) -> Callable[[float], int]:
    """Truncation rule n(r) = ceil(40 s / r).

    Deep enough that the tail correction C*K_n stays far below the defect
    sizes of interest for every r on the default grid, so the rate limit
    dominates the convergence picture.
    """

    def rule(r: float) -> int:
        return math.ceil(40.0 * s / r)

    return rule


@dataclass(frozen=True)
class GridSchedule:
    """Decreasing rates r with a truncation rule and decay parameters."""

    r_values: tuple
    rd: RdParams
    n_rule: Optional[Callable[[float], int]] = None

    def __post_init__(self):
        values = tuple(float(r) for r in self.r_values)
        object.__setattr__(self, "r_values", values)
        if not values:
            raise ValueError("schedule needs at least one rate")
        if any(r <= 0 for r in values):
            raise ValueError("rates must be positive")
        if any(b >= a for a, b in zip(values, values[1:])):
            raise ValueError("rates must be strictly decreasing")
        if self.n_rule is None:
            object.__setattr__(self, "n_rule", default_n_rule(self.rd.s))
        for r in values:
            n = self.n_rule(r)
            if n < self.rd.s / r - 1.0:
                raise ValueError(
                    f"truncation n={n} at r={r} sits before the tail peak"
                )


def default_schedule(rd: RdParams, r_values=DEFAULT_R_VALUES) -> GridSchedule:
    return GridSchedule(r_values=tuple(r_values), rd=rd)


@dataclass(frozen=True)
class ConvergenceRow:
    r: float
    n: int
    U: float
    K_n: float
    defect_lower: float
    defect_upper: float
    runtime_ms: float

    def __post_init__(self):
        if self.defect_lower > self.defect_upper:
            raise ValueError("defect bracket out of order")
        if self.U < 1.0:
            raise ValueError("scale U must be at least 1")


def _default_radius(g: Group, f: GroupRingElement) -> int:
    longest = max((g.length(x) for x in f.terms), default=0)
    return 2 * longest + 1


def run_grid(
    g: Group,
    f: GroupRingElement,
    schedule: GridSchedule,
    radius: Optional[int] = None,
    cap: int = DEFAULT_BALL_CAP,
    seed: int = 0,
) -> list:
    """One ConvergenceRow per rate, in schedule order."""
    rd = schedule.rd
    if radius is None:
        radius = _default_radius(g, f)
    rows = []
    for r in schedule.r_values:
        start = time.perf_counter()
        n = schedule.n_rule(r)
        K_n = decay_certificate(r, rd.s).tail(n)
        U = certified_scale(r, rd.s, n, rd.C)
        rho = scaled_multiplier(g, r, rd.s, n, rd.C)
        bracket = map_defect(g, f, rho, rd, radius, cap=cap, seed=seed)
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        rows.append(
            ConvergenceRow(
                r=r,
                n=n,
                U=U,
                K_n=K_n,
                defect_lower=bracket.lower,
                defect_upper=bracket.upper,
                runtime_ms=elapsed_ms,
            )
        )
    return rows


def select_epsilon(rows: list, epsilon: float) -> Optional[ConvergenceRow]:
    """Earliest row whose certified defect upper bound beats epsilon."""
    if not rows:
        raise ValueError("no grid rows to select from")
    for row in rows:
        if row.defect_upper < epsilon:
            return row
    return None


def _row_fields(row: ConvergenceRow, include_runtime: bool) -> dict:
    return {
        "r": row.r,
        "n": row.n,
        "U": row.U,
        "K_n": row.K_n,
        "defect_lower": row.defect_lower,
        "defect_upper": row.defect_upper,
        "runtime_ms": row.runtime_ms if include_runtime else 0.0,
    }


def rows_to_csv(rows: list, include_runtime: bool = False) -> str:
    """Canonical CSV with shortest round-trip float formatting."""
    lines = [CSV_HEADER]
    for row in rows:
        values = _row_fields(row, include_runtime)
        lines.append(
            ",".join(
                [
                    repr(values["r"]),
                    str(values["n"]),
                    repr(values["U"]),
                    repr(values["K_n"]),
                    repr(values["defect_lower"]),
                    repr(values["defect_upper"]),
                    repr(values["runtime_ms"]),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list, include_runtime: bool = False) -> str:
    payload = [_row_fields(row, include_runtime) for row in rows]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class RdSampleReport:
    """Outcome of a random soundness sweep of the decay inequality.

    `worst_element` is the sample attaining `worst_ratio`, kept so a
    failing sweep can print its offender.
    """

    count: int
    worst_ratio: float
    passed: bool
    tolerance: float = 1e-9
    worst_element: Optional[GroupRingElement] = None


def rd_sample_report(
    g: Group,
    rd: RdParams,
    count: int,
    seed: int,
    radius: int = 4,
    sample_radius: int = 3,
    max_terms: int = 6,
    cap: int = DEFAULT_BALL_CAP,
    tolerance: float = 1e-9,
) -> RdSampleReport:
    """Check lower <= C * Sobolev on seeded random elements.

    The reported ratio is lower / (C * Sobolev); the sweep passes when no
    sample pushes it above 1 beyond the tolerance.
    """
    if count <= 0:
        raise ValueError("sample count must be positive")
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_element = None
    passed = True
    for _ in range(count):
        f = random_element(g, sample_radius, rng, max_terms=max_terms, cap=cap)
        lower = opnorm_lower(g, f, radius, cap=cap)
        ceiling = rd.C * sobolev_norm(g, f, rd.s)
        ratio = lower / ceiling
        if ratio > worst:
            worst = ratio
            worst_element = f
        if lower > ceiling + tolerance:
            passed = False
    return RdSampleReport(
        count=count,
        worst_ratio=worst,
        passed=passed,
        tolerance=tolerance,
        worst_element=worst_element,
    )
