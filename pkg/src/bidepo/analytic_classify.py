"""Closed-form region membership for the bipartite depolarizing family.

Every property (positivity, complete positivity, complete copositivity,
entanglement breaking, PPT inducing, entanglement annihilation) has an
exact inequality description.  Each predicate returns a verdict together
with the signed slack of every inequality in its verbatim unscaled form,
keyed by the expression itself, so certificates can be checked by hand.

All regions are closed; membership means every slack >= -1e-12.  The two
scalar noise-threshold classifiers (global depolarizing, local product)
use exact slack >= 0 so their flip points sit at the analytic thresholds
to machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .map_family import ChiParams, PhiParams
from .tensor_core import Dims

#: Signed-slack tolerance for closed-region membership.
BOUNDARY_TOL = 1e-12

SQRT3 = math.sqrt(3.0)


def _ok(slacks: dict[str, float], tol: float = BOUNDARY_TOL) -> bool:
    return all(s >= -tol for s in slacks.values())


def chi_positive(p: ChiParams) -> tuple[bool, dict[str, float]]:
    """Positivity of chi[a, c]: a >= 0 and c + a/n + 1 >= 0, or
    -2 <= a < 0 and a + c + 1 >= 0."""
    a, c, n = p.a, p.c, p.n
    if a >= 0:
        slacks = {"a": a, "c+a/n+1": c + a / n + 1}
    else:
        slacks = {"a+2": a + 2, "a+c+1": a + c + 1}
    return _ok(slacks), slacks


def phi_positive(p: PhiParams) -> tuple[bool, dict[str, float]]:
    """Positivity of Phi: alpha, beta >= -1 plus the chi[alpha+beta, gamma]
    condition, which splits on the sign of alpha + beta."""
    a, b, g, n = p.alpha, p.beta, p.gamma, p.n
    slacks = {"alpha+1": a + 1, "beta+1": b + 1}
    if a + b >= 0:
        slacks["gamma+(alpha+beta)/n+1"] = g + (a + b) / n + 1
    else:
        slacks["alpha+beta+gamma+1"] = a + b + g + 1
    return _ok(slacks), slacks


def phi_cp(p: PhiParams) -> tuple[bool, dict[str, float]]:
    """Complete positivity: nonnegativity of the three nontrivial Choi
    eigenvalues, written as alpha >= -1/dB, beta >= -1/dA and
    1 + dB alpha + dA beta + dA dB gamma >= 0."""
    a, b, g = p.alpha, p.beta, p.gamma
    dA, dB = p.dims.dA, p.dims.dB
    slacks = {
        "alpha+1/dB": a + 1 / dB,
        "beta+1/dA": b + 1 / dA,
        "1+dB*alpha+dA*beta+dA*dB*gamma": 1 + dB * a + dA * b + dA * dB * g,
    }
    return _ok(slacks), slacks


def phi_cocp(p: PhiParams) -> tuple[bool, dict[str, float]]:
    """Complete copositivity: the partially transposed Choi matrix has
    spectrum {1 ± alpha ± beta ± gamma}/(dA dB) with correlated signs;
    all four sign combinations must be nonnegative."""
    a, b, g = p.alpha, p.beta, p.gamma
    slacks = {
        "1+alpha+beta+gamma": 1 + a + b + g,
        "1+alpha-beta-gamma": 1 + a - b - g,
        "1-alpha+beta-gamma": 1 - a + b - g,
        "1-alpha-beta+gamma": 1 - a - b + g,
    }
    return _ok(slacks), slacks


def _eb_slacks_ordered(a: float, b: float, g: float, dA: int, dB: int) -> dict[str, float]:
    """Entanglement-breaking inequalities assuming dA <= dB."""
    slacks = {
        "alpha+1/dB": a + 1 / dB,
        "1+dB*alpha+dA*beta+dA*dB*gamma": 1 + dB * a + dA * b + dA * dB * g,
        "1-alpha+beta-gamma": 1 - a + b - g,
        "1+alpha-beta-gamma": 1 + a - b - g,
        "1-alpha-beta+gamma": 1 - a - b + g,
    }
    if dA != dB:
        slacks["(dA*dB-1)*(dA*beta+1)-(dB-dA)*(alpha+dA*gamma)"] = (dA * dB - 1) * (
            dA * b + 1
        ) - (dB - dA) * (a + dA * g)
    return slacks


def phi_eb(p: PhiParams) -> tuple[bool, dict[str, float]]:
    """Entanglement breaking, i.e. separability of the Choi state.

    The inequality system assumes dA <= dB; for dA > dB the roles of the
    two sides are exchanged (alpha <-> beta, dA <-> dB) before evaluating,
    and the reported slack keys refer to the exchanged parameters.  The
    final inequality is dropped when dA = dB, where complete positivity
    plus a positive partial transpose is already equivalent.
    """
    a, b, g = p.alpha, p.beta, p.gamma
    dA, dB = p.dims.dA, p.dims.dB
    if dA > dB:
        a, b = b, a
        dA, dB = dB, dA
    slacks = _eb_slacks_ordered(a, b, g, dA, dB)
    return _ok(slacks), slacks


def phi_ea(p: PhiParams) -> tuple[bool, dict[str, float]]:
    """Entanglement annihilation: positivity together with
    gamma <= alpha + beta + 2."""
    pos, slacks = phi_positive(p)
    slacks = dict(slacks)
    slacks["alpha+beta+2-gamma"] = p.alpha + p.beta + 2 - p.gamma
    return _ok(slacks), slacks


@dataclass
class ClassificationReport:
    """All verdicts for one parameter point, with per-inequality slacks.

    ``ppt_inducing`` and ``ea`` coincide for this family: within the
    positive maps, producing only PPT outputs is equivalent to producing
    only separable outputs, and both amount to gamma <= alpha + beta + 2.
    Slack keys are prefixed by the property they belong to.
    """

    positive: bool
    cp: bool
    cocp: bool
    eb: bool
    ppt_inducing: bool | None = None
    ea: bool | None = None
    slacks: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "positive": self.positive,
            "cp": self.cp,
            "cocp": self.cocp,
            "eb": self.eb,
            "ppt_inducing": self.ppt_inducing,
            "ea": self.ea,
            "slacks": {k: float(v) for k, v in self.slacks.items()},
        }


def classify(p: PhiParams) -> ClassificationReport:
    """Evaluate every region predicate at one parameter point."""
    pos, s_pos = phi_positive(p)
    cp, s_cp = phi_cp(p)
    cocp, s_cocp = phi_cocp(p)
    eb, s_eb = phi_eb(p)
    ea, s_ea = phi_ea(p)
    slacks: dict[str, float] = {}
    for prefix, s in (("pos", s_pos), ("cp", s_cp), ("cocp", s_cocp), ("eb", s_eb), ("ea", s_ea)):
        for k, v in s.items():
            slacks[f"{prefix}:{k}"] = v
    return ClassificationReport(
        positive=pos, cp=cp, cocp=cocp, eb=eb, ppt_inducing=ea, ea=ea, slacks=slacks
    )


def classify_depolarizing(q: float, d: int) -> ClassificationReport:
    """Interval classification of the single-system depolarizing map D_q.

    positive iff -1/(d-1) <= q <= 1, CP iff -1/(d^2-1) <= q <= 1,
    coCP iff -1/(d-1) <= q <= 1/(d+1), and entanglement breaking iff CP
    and coCP.  Entanglement annihilation does not apply to a single
    system, so those fields stay None.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    s_pos = {"q+1/(d-1)": q + 1 / (d - 1), "1-q": 1 - q}
    s_cp = {"q+1/(d^2-1)": q + 1 / (d * d - 1), "1-q": 1 - q}
    s_cocp = {"q+1/(d-1)": q + 1 / (d - 1), "1/(d+1)-q": 1 / (d + 1) - q}
    pos, cp, cocp = _ok(s_pos), _ok(s_cp), _ok(s_cocp)
    slacks: dict[str, float] = {}
    for prefix, s in (("pos", s_pos), ("cp", s_cp), ("cocp", s_cocp)):
        for k, v in s.items():
            slacks[f"{prefix}:{k}"] = v
    return ClassificationReport(
        positive=pos, cp=cp, cocp=cocp, eb=cp and cocp, slacks=slacks
    )


def local_product_ea_slack(q1: float, q2: float, d: int) -> float:
    """Signed slack of 2 + (d-2)(q1+q2) - (d^2+2d-2) q1 q2 >= 0."""
    return 2 + (d - 2) * (q1 + q2) - (d * d + 2 * d - 2) * q1 * q2


def classify_local_product(q1: float, q2: float, d: int) -> tuple[bool, bool, dict[str, float]]:
    """Positivity and entanglement annihilation of D_{q1} ⊗ D_{q2}.

    The product of local depolarizing maps is positive exactly when both
    factors are, i.e. -1/(d-1) <= q_i <= 1, and then annihilates all
    entanglement exactly when (d^2+2d-2) q1 q2 <= 2 + (d-2)(q1+q2).
    Returns (positive, ea, slacks); membership is exact (slack >= 0) so
    the threshold is resolved to machine precision.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    lo = -1.0 / (d - 1)
    s_pos = {
        "q1+1/(d-1)": q1 - lo,
        "1-q1": 1 - q1,
        "q2+1/(d-1)": q2 - lo,
        "1-q2": 1 - q2,
    }
    ea_slack = local_product_ea_slack(q1, q2, d)
    positive = all(v >= 0 for v in s_pos.values())
    ea = positive and ea_slack >= 0
    slacks = dict(s_pos)
    slacks["2+(d-2)*(q1+q2)-(d^2+2d-2)*q1*q2"] = ea_slack
    return positive, ea, slacks


def classify_global_depolarizing(q: float, d: int) -> tuple[bool, dict[str, float]]:
    """Entanglement annihilation of the global depolarizing map on d ⊗ d.

    Within its positivity range -1/(d^2-1) <= q <= 1, the map D_q on the
    composite system annihilates entanglement iff q <= 2/(d^2 + 2).
    Membership is exact (slack >= 0).
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    thr = global_ea_threshold(d)
    slacks = {
        "q+1/(d^2-1)": q + 1.0 / (d * d - 1),
        "1-q": 1.0 - q,
        "2/(d^2+2)-q": thr - q,
    }
    return all(v >= 0 for v in slacks.values()), slacks


def global_ea_threshold(d: int) -> float:
    """Largest global depolarizing q that still annihilates entanglement."""
    return 2.0 / (d * d + 2)


def symmetric_ea_interval(d: int) -> tuple[float, float]:
    """Exact q-interval in which D_q ⊗ D_q annihilates entanglement.

    Endpoints -(sqrt(3)-1)/(d+1-sqrt(3)) and (1+sqrt(3))/(d+1+sqrt(3)),
    the roots of the symmetric quadratic form of the product condition.
    """
    return (-(SQRT3 - 1) / (d + 1 - SQRT3), (1 + SQRT3) / (d + 1 + SQRT3))


def symmetric_ea_sufficient_bound(d: int) -> float:
    """Conservative symmetric-noise bound predating the exact threshold.

    q <= (d - 2 + d sqrt(2d/(d+1))) / ((d-1)(d+2)) guarantees annihilation
    but is not tight for d >= 3; the exact threshold is the upper endpoint
    of :func:`symmetric_ea_interval`.
    """
    return (d - 2 + d * math.sqrt(2 * d / (d + 1))) / ((d - 1) * (d + 2))


def local_product_ea_sufficient(q1: float, q2: float, d: int) -> bool:
    """Two-parameter version of the conservative sufficient condition:
    (d^2-1) q1 q2 <= 1 + (d-2)(d+1)/(d+2) (q1+q2)."""
    return (d * d - 1) * q1 * q2 <= 1 + (d - 2) * (d + 1) / (d + 2) * (q1 + q2)


def classify_grid(
    alpha: np.ndarray, beta: np.ndarray, gamma: np.ndarray, dims: Dims, tol: float = BOUNDARY_TOL
) -> dict[str, np.ndarray]:
    """Vectorized region membership over arrays of parameter points.

    The three input arrays are broadcast together; the result maps each
    property name to a boolean array of the broadcast shape.  Agrees
    pointwise with :func:`classify` (exercised by the test suite).
    """
    a, b, g = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float), np.asarray(gamma, float))
    dA, dB, n = dims.dA, dims.dB, dims.n
    ab = a + b

    chi_slack = np.where(ab >= 0, g + ab / n + 1, ab + g + 1)
    positive = (a >= -1 - tol) & (b >= -1 - tol) & (chi_slack >= -tol)

    cp = (
        (a >= -1 / dB - tol)
        & (b >= -1 / dA - tol)
        & (1 + dB * a + dA * b + dA * dB * g >= -tol)
    )
    cocp = (
        (1 + a + b + g >= -tol)
        & (1 + a - b - g >= -tol)
        & (1 - a + b - g >= -tol)
        & (1 - a - b + g >= -tol)
    )

    if dA <= dB:
        ea_, eb_, d1, d2 = a, b, dA, dB
    else:
        ea_, eb_, d1, d2 = b, a, dB, dA
    eb = (
        (ea_ >= -1 / d2 - tol)
        & (1 + d2 * ea_ + d1 * eb_ + d1 * d2 * g >= -tol)
        & (1 - ea_ + eb_ - g >= -tol)
        & (1 + ea_ - eb_ - g >= -tol)
        & (1 - ea_ - eb_ + g >= -tol)
    )
    if d1 != d2:
        eb = eb & ((d1 * d2 - 1) * (d1 * eb_ + 1) - (d2 - d1) * (ea_ + d1 * g) >= -tol)

    ea = positive & (a + b + 2 - g >= -tol)
    return {
        "positive": positive,
        "cp": cp,
        "cocp": cocp,
        "eb": eb,
        "ppt_inducing": ea,
        "ea": ea,
    }
