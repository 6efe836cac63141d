"""Subsystem entropies and entropy inequalities for stabilizer code states.

The global state throughout is the uniform mixture over the code space (the
maximally mixed code state): its reduced state on a region R is flat on the
joint eigenspace of the supported subgroup, so

    S(R) = |R| - log2 |S_R|   bits,   log2 |S_R| = s - rank(G restricted to R^c).

Everything here is exact integer arithmetic over GF(2) ranks; no tolerances
enter until the least-squares fits at the end.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import f2
from .geometry import PartitionSequence, Region, Tripartition
from .pauli import StabilizerGroup, code_parameters
from .records import BoundVerdict, EntropyReport, ScalingFit

RegionLike = Union[Region, Iterable[int]]


def _indices(region: RegionLike) -> frozenset[int]:
    if isinstance(region, Region):
        return region.indices
    return frozenset(region)


def entropy_bits(group: StabilizerGroup, region: RegionLike) -> int:
    """Entropy of the maximally mixed code state on a region, in bits."""
    idx = _indices(region)
    comp_mask = group.region_mask(q for q in range(group.n) if q not in idx)
    supported = group.s - f2.rank_of_ints(r & comp_mask for r in group.generators.data)
    return len(idx) - supported


def stabilizer_entropy(group: StabilizerGroup, region: RegionLike) -> EntropyReport:
    idx = _indices(region)
    label = region.describe() if isinstance(region, Region) else f"region(size={len(idx)})"
    return EntropyReport(
        region=label,
        qubits=len(idx),
        entropy_bits=entropy_bits(group, idx),
        backend="stabilizer",
    )


def cmi(group: StabilizerGroup, tri: Tripartition) -> int:
    """Conditional mutual information I(A:C|B) = S(AB)+S(BC)-S(B)-S(ABC).

    Nonnegative for every valid input by strong subadditivity; a negative
    value would be an engine bug.
    """
    a, b, c = tri.A.indices, tri.B.indices, tri.C.indices
    return (
        entropy_bits(group, a | b)
        + entropy_bits(group, b | c)
        - entropy_bits(group, b)
        - entropy_bits(group, a | b | c)
    )


def _chain_terms(group: StabilizerGroup, seq: PartitionSequence) -> tuple[int, list[int]]:
    """S(A1 B1) plus the per-stage S(B_i C_i) - S(B_i) contributions."""
    first = seq.stages[0]
    head = entropy_bits(group, first.A.indices | first.B.indices)
    deltas = []
    for st in seq:
        deltas.append(
            entropy_bits(group, st.B.indices | st.C.indices)
            - entropy_bits(group, st.B.indices)
        )
    return head, deltas


def med_bound(group: StabilizerGroup, seq: PartitionSequence) -> BoundVerdict:
    """Markov-chain entropy bound: k <= S(A1 B1) + sum_i [S(B_i C_i) - S(B_i)].

    The right-hand side minus the full-system entropy is a sum of conditional
    mutual informations, so the bound is a theorem; `holds` must come out
    true on every structurally valid sequence.
    """
    if seq.n != group.n:
        raise ValueError("sequence and group qubit counts differ")
    head, deltas = _chain_terms(group, seq)
    rhs = head + sum(deltas)
    lhs = group.k
    detail = f"head={head}, stage_deltas={deltas}"
    return BoundVerdict.check("med-bound", lhs, rhs, witness=detail)


def telescoping_residual(group: StabilizerGroup, seq: PartitionSequence) -> int:
    """sum_i I(A_i:C_i|B_i) - (bound_rhs - S(full)); identically zero.

    Integer arithmetic end to end, so any nonzero return is a bug, not a
    tolerance issue.
    """
    if seq.n != group.n:
        raise ValueError("sequence and group qubit counts differ")
    head, deltas = _chain_terms(group, seq)
    rhs = head + sum(deltas)
    total = entropy_bits(group, range(group.n))
    cmi_sum = sum(cmi(group, st) for st in seq)
    return cmi_sum - (rhs - total)


def tee_kitaev_preskill(group: StabilizerGroup, tri: Tripartition) -> int:
    """Topological entanglement entropy from three mutually adjacent sectors:
    gamma = -[S(A)+S(B)+S(C)-S(AB)-S(BC)-S(CA)+S(ABC)]."""
    a, b, c = tri.A.indices, tri.B.indices, tri.C.indices
    combo = (
        entropy_bits(group, a)
        + entropy_bits(group, b)
        + entropy_bits(group, c)
        - entropy_bits(group, a | b)
        - entropy_bits(group, b | c)
        - entropy_bits(group, c | a)
        + entropy_bits(group, a | b | c)
    )
    return -combo


def degeneracy_bound(group: StabilizerGroup, gamma: float) -> BoundVerdict:
    """Long-range entanglement limit on the code dimension: k <= 2 gamma."""
    lhs = group.k
    return BoundVerdict.check("degeneracy-tee", lhs, 2 * gamma)


def quantum_dimension_gamma(dims: Sequence[float]) -> float:
    """gamma = log2 sqrt(sum_a d_a^2) for anyon quantum dimensions d_a >= 1."""
    if not dims:
        raise ValueError("need at least one quantum dimension")
    if any(d < 1 for d in dims):
        raise ValueError("quantum dimensions are at least 1")
    return math.log2(math.sqrt(sum(d * d for d in dims)))


def partition_bound(
    group: StabilizerGroup, parts: Sequence[RegionLike], d: int
) -> BoundVerdict:
    """k <= sum_i S(X_i) over a partition into parts smaller than the distance.

    Every part must have fewer than d qubits (for d = 1 no nonempty part
    qualifies, which correctly rejects distance-1 codes), and the parts must
    tile the system exactly.
    """
    if d < 1:
        raise ValueError("distance must be positive")
    sets = [_indices(p) for p in parts]
    seen: set[int] = set()
    for i, part in enumerate(sets):
        if len(part) >= d:
            raise ValueError(
                f"part {i} has {len(part)} qubits; parts must have fewer than d={d}"
            )
        if part & seen:
            raise ValueError(f"part {i} overlaps an earlier part")
        seen |= part
    if seen != set(range(group.n)):
        raise ValueError("parts must partition all qubits")
    rhs = sum(entropy_bits(group, part) for part in sets)
    lhs = group.k
    return BoundVerdict.check("partition-bound", lhs, rhs, witness=f"parts={len(sets)}")


def tradeoff_report(
    params, D: int, alpha: float
) -> dict:
    """Both code-tradeoff products and their ratios to n; report only.

    The commuting-Hamiltonian product is k * d^(2/(D-1)); the subvolume-law
    product is k * d^(1-alpha). The asymptotic constants are unspecified, so
    no verdict is attached.
    """
    if params.d is None:
        raise ValueError("tradeoff report needs a code distance")
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    if D < 1:
        raise ValueError("dimension must be positive")
    n, k, d = params.n, params.k, params.d
    commuting = k * d ** (2.0 / (D - 1)) if D > 1 else None
    subvolume = k * d ** (1.0 - alpha)
    return {
        "n": n,
        "k": k,
        "d": d,
        "D": D,
        "alpha": alpha,
        "commuting_product": commuting,
        "commuting_ratio": (commuting / n) if commuting is not None else None,
        "subvolume_product": subvolume,
        "subvolume_ratio": subvolume / n,
    }


def fit_scaling(
    samples: Sequence[tuple[float, float]],
    form: str = "linear",
    degree: Optional[int] = None,
) -> ScalingFit:
    """Least-squares fit of (size, entropy_bits) samples.

    Forms: "linear" fits S = a1 * l + a0 and reports gamma_hat = -a0;
    "proportional" fits S = c * l through the origin (one coefficient);
    "polynomial" fits descending powers down to the constant (degree
    required); "power" fits S = c * l^alpha through the log-log plane and
    reports alpha_hat. Requires at least two more samples than coefficients.
    """
    pts = [(float(x), float(y)) for x, y in samples]
    if form == "linear":
        degree = 1
    elif form == "polynomial":
        if degree is None or degree < 1:
            raise ValueError("polynomial form needs a positive degree")
    elif form in ("power", "proportional"):
        degree = 1
    else:
        raise ValueError(f"unknown fit form {form!r}")
    n_coeff = 1 if form == "proportional" else degree + 1
    if len(pts) < n_coeff + 2:
        raise ValueError(
            f"need at least {n_coeff + 2} samples for {n_coeff} coefficients"
        )
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if form == "power":
        if np.any(xs <= 0) or np.any(ys <= 0):
            raise ValueError("power-law fit needs positive sizes and entropies")
        design = np.column_stack([np.log(xs), np.ones_like(xs)])
        target = np.log(ys)
    elif form == "proportional":
        design = xs[:, None]
        target = ys
    else:
        design = np.column_stack([xs**p for p in range(degree, -1, -1)])
        target = ys
    if np.linalg.matrix_rank(design) < design.shape[1]:
        raise ValueError("rank-deficient design matrix; vary the sample sizes")
    coef, _, _, _ = np.linalg.lstsq(design, target, rcond=None)
    residual = float(np.linalg.norm(design @ coef - target))
    if form == "power":
        alpha = float(coef[0])
        return ScalingFit(
            form=form,
            coefficients=(float(math.exp(coef[1])), alpha),
            residual_norm=residual,
            samples=tuple(pts),
            alpha_hat=alpha,
        )
    if form == "proportional":
        return ScalingFit(
            form=form,
            coefficients=(float(coef[0]),),
            residual_norm=residual,
            samples=tuple(pts),
        )
    return ScalingFit(
        form=form,
        coefficients=tuple(float(c) for c in coef),
        residual_norm=residual,
        samples=tuple(pts),
        gamma_hat=-float(coef[-1]),
    )


__all__ = [
    "BoundVerdict",
    "EntropyReport",
    "ScalingFit",
    "cmi",
    "code_parameters",
    "degeneracy_bound",
    "entropy_bits",
    "fit_scaling",
    "med_bound",
    "partition_bound",
    "quantum_dimension_gamma",
    "stabilizer_entropy",
    "telescoping_residual",
    "tee_kitaev_preskill",
    "tradeoff_report",
]
