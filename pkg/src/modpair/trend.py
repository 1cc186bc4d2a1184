"""Refinement protocol shared by the detectors.

A defect measured at N and again at 2N is classified as

* ``True``  when it is within ``tol`` and does not grow (beyond a 5% slack, or
  it sits below ``floor``, by default a thousandth of ``tol``),
* ``False`` when it exceeds ``10·tol`` at both sizes and does not halve,
* ``None``  (indeterminate) otherwise.
"""
from __future__ import annotations

from typing import Optional

# Defects three decades below the tolerance count as converged whatever their trend.
FLOOR_FRACTION = 1e-3
# N-independent error floors (periodic wrap on the padded grid) wobble at the
# 1e-3 relative level; 5% separates that from real growth.
GROWTH_SLACK = 1.05


def shrinks(coarse: float, fine: float, floor: float = 0.0) -> bool:
    return fine <= GROWTH_SLACK * coarse or fine <= floor


def stable(coarse: float, fine: float) -> bool:
    return fine >= 0.5 * coarse


def classify(coarse: float, fine: float, tol: float, floor: Optional[float] = None) -> Optional[bool]:
    floor = FLOOR_FRACTION * tol if floor is None else floor
    if coarse <= tol and fine <= tol and shrinks(coarse, fine, floor):
        return True
    if coarse > 10 * tol and fine > 10 * tol and stable(coarse, fine):
        return False
    return None


def verdict_label(v: Optional[bool]) -> str:
    return {True: "true", False: "false", None: "indeterminate"}[v]
