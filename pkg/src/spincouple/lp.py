"""Exact-rational linear feasibility and optimization.

Programs are equality-constrained over nonnegative variables:

    minimize / maximize  c . x    subject to    A x = b,  x >= 0

with every coefficient an exact rational.  Solving is two-phase simplex
under Bland's anti-cycling rule, so results are deterministic and never
carry floating-point doubt: a Feasible outcome includes an exact witness,
Infeasible means exactly that.

Two speed choices are made once at import:

* coefficient arithmetic: gmpy2.mpq when gmpy2 is importable, else
  fractions.Fraction.  Override with SPINCOUPLE_RATIONAL=fraction|gmpy2.
* pivot kernel: the compiled extension (spincouple._kernel_cy) when it is
  built and mpq arithmetic is active (it drives GMP directly and cannot
  run on Fractions), else the pure-Python twin (_kernel_pure).  Both run
  the identical pivot sequence.  Override with SPINCOUPLE_KERNEL=pure|compiled.

The environment variables are development/testing knobs (used by the parity
tests and the benchmark); results are identical either way.

Callers see fractions.Fraction everywhere regardless of the internal
arithmetic.  A cheap presolve fixes variables that equality rows with zero
right-hand side pin to zero; coupling problems with almost-sure-equality
constraints collapse from 256 variables to a handful, which is what makes
the large randomized campaigns affordable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .errors import DomainError, StructuralError
from . import _kernel_pure

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpq = None

try:
    from . import _kernel_cy as _compiled_kernel
except ImportError:  # pragma: no cover - extension not built
    _compiled_kernel = None

_env_rational = os.environ.get("SPINCOUPLE_RATIONAL", "").strip().lower()
if _env_rational in ("fraction", "fractions"):
    _mpq = None
elif _env_rational == "gmpy2" and _mpq is None:
    raise ImportError("SPINCOUPLE_RATIONAL=gmpy2 but gmpy2 is not importable")

_env_kernel = os.environ.get("SPINCOUPLE_KERNEL", "").strip().lower()
if _env_kernel == "pure":
    _kernel = _kernel_pure
elif _env_kernel == "compiled":
    if _compiled_kernel is None:
        raise ImportError("SPINCOUPLE_KERNEL=compiled but the extension is not built")
    if _mpq is None:
        raise ImportError("SPINCOUPLE_KERNEL=compiled requires gmpy2 arithmetic")
    _kernel = _compiled_kernel
else:
    _kernel = (
        _compiled_kernel
        if _compiled_kernel is not None and _mpq is not None
        else _kernel_pure
    )
_KERNEL_NAME = "compiled" if _kernel is _compiled_kernel else "pure"


def kernel_backend() -> str:
    """Identify the active kernel and arithmetic, e.g. 'compiled+gmpy2'."""
    return f"{_KERNEL_NAME}+{'gmpy2' if _mpq is not None else 'fractions'}"


Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce int / Fraction / 'num/den' or decimal string to Fraction.

    Floats are refused: every probability in this package is exact, and a
    silently converted float almost always means an upstream mistake.  Use
    connections.rationalize for deliberate float-to-rational conversion.
    """
    if isinstance(value, bool):
        raise DomainError("booleans are not probabilities")
    if isinstance(value, float):
        raise DomainError(
            f"refusing float {value!r}: pass a Fraction, an int, or a string like '7/10'"
        )
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational from {value!r}") from exc
    if _mpq is not None and isinstance(value, type(_mpq(0))):
        return Fraction(int(value.numerator), int(value.denominator))
    raise DomainError(f"cannot interpret {type(value).__name__} as an exact rational")


class LpStatus(Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    witness: Optional[tuple[Fraction, ...]] = None
    optimum: Optional[Fraction] = None


@dataclass
class LinearProgram:
    """Equality-form program; nonnegativity of all variables is implicit."""

    num_vars: int
    equalities: list[tuple[Sequence[Fraction], Fraction]]
    objective: Optional[Sequence[Fraction]] = None

    def validate(self) -> None:
        if self.num_vars < 1:
            raise StructuralError(f"num_vars must be >= 1, got {self.num_vars}")
        for k, (row, _) in enumerate(self.equalities):
            if len(row) != self.num_vars:
                raise StructuralError(
                    f"equality row {k} has {len(row)} coefficients, expected {self.num_vars}"
                )
        if self.objective is not None and len(self.objective) != self.num_vars:
            raise StructuralError(
                f"objective has {len(self.objective)} coefficients, expected {self.num_vars}"
            )


_ZERO = Fraction(0)


def _presolve(lp: LinearProgram):
    """Fix variables that zero-rhs single-signed rows force to zero.

    Returns ('infeasible', None) when a row is contradictory on its face,
    else ('reduced', (keep, rows, rhs)) where keep maps reduced columns back
    to original indices and rows/rhs hold the reduced system (zero rows
    dropped).
    """
    n = lp.num_vars
    forced = bytearray(n)
    src_rows = [row for row, _ in lp.equalities]
    src_rhs = [b for _, b in lp.equalities]
    changed = True
    while changed:
        changed = False
        for row, b in zip(src_rows, src_rhs):
            any_pos = False
            any_neg = False
            for j in range(n):
                if forced[j]:
                    continue
                v = row[j]
                if v > _ZERO:
                    any_pos = True
                elif v < _ZERO:
                    any_neg = True
                if any_pos and any_neg:
                    break
            if any_pos and any_neg:
                continue
            if not any_pos and not any_neg:
                if b != _ZERO:
                    return "infeasible", None
                continue
            if b == _ZERO:
                # single-signed row summing to zero: every participating
                # variable is pinned to 0 by nonnegativity
                for j in range(n):
                    if not forced[j] and row[j] != _ZERO:
                        forced[j] = 1
                        changed = True
            elif (b > _ZERO and not any_pos) or (b < _ZERO and not any_neg):
                return "infeasible", None
    keep = [j for j in range(n) if not forced[j]]
    rows = []
    rhs = []
    for row, b in zip(src_rows, src_rhs):
        red = [row[j] for j in keep]
        if any(red):
            rows.append(red)
            rhs.append(b)
        elif b != _ZERO:
            return "infeasible", None
    return "reduced", (keep, rows, rhs)


def _solve(lp: LinearProgram, objective, maximize: bool) -> LpOutcome:
    lp.validate()
    verdict, reduced = _presolve(lp)
    if verdict == "infeasible":
        return LpOutcome(LpStatus.INFEASIBLE)
    keep, rows, rhs = reduced

    if not rows and objective is None:
        # nothing constrains the surviving variables; the kernel cannot
        # even infer their count without rows or an objective
        witness = tuple(Fraction(0) for _ in range(lp.num_vars))
        _check_witness(lp, witness)
        return LpOutcome(LpStatus.FEASIBLE, witness, None)

    if _mpq is not None:
        zero, one = _mpq(0), _mpq(1)
        conv = lambda v: _mpq(v.numerator, v.denominator)  # noqa: E731
    else:
        zero, one = Fraction(0), Fraction(1)
        conv = lambda v: v  # noqa: E731
    krows = [[conv(Fraction(v)) for v in row] for row in rows]
    krhs = [conv(Fraction(b)) for b in rhs]
    kobj = None
    if objective is not None:
        kobj = [conv(Fraction(objective[j])) for j in keep]

    code, wit, opt = _kernel.solve(krows, krhs, kobj, maximize, zero, one)
    if code == _kernel_pure.INFEASIBLE:
        return LpOutcome(LpStatus.INFEASIBLE)
    if code == _kernel_pure.UNBOUNDED:
        return LpOutcome(LpStatus.UNBOUNDED)

    full = [Fraction(0)] * lp.num_vars
    for pos, j in enumerate(keep):
        v = wit[pos]
        if v:
            full[j] = Fraction(int(v.numerator), int(v.denominator))
    witness = tuple(full)
    _check_witness(lp, witness)
    optimum = None
    if objective is not None:
        optimum = sum((objective[j] * witness[j] for j in range(lp.num_vars)), Fraction(0))
        if opt is not None:
            assert optimum == Fraction(int(opt.numerator), int(opt.denominator))
    return LpOutcome(LpStatus.FEASIBLE, witness, optimum)


def _check_witness(lp: LinearProgram, witness: tuple[Fraction, ...]) -> None:
    # Exactness guard: a witness that misses any equality is a kernel bug.
    for row, b in lp.equalities:
        acc = Fraction(0)
        for j in range(lp.num_vars):
            w = witness[j]
            if w:
                if w < 0:
                    raise AssertionError("kernel produced a negative witness component")
                acc += row[j] * w
        if acc != b:
            raise AssertionError("kernel witness violates an equality row")


def solve_feasibility(lp: LinearProgram) -> LpOutcome:
    """Decide A x = b, x >= 0 exactly; Feasible outcomes carry a witness."""
    return _solve(lp, None, False)


def optimize(lp: LinearProgram, direction: Literal["min", "max"]) -> LpOutcome:
    """Optimize lp.objective over the feasible region, exactly."""
    if lp.objective is None:
        raise StructuralError("optimize requires an objective row")
    if direction not in ("min", "max"):
        raise DomainError(f"direction must be 'min' or 'max', got {direction!r}")
    return _solve(lp, list(lp.objective), direction == "max")
