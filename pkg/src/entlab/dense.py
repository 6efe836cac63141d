"""Explicit density-matrix oracle for small systems (at most QMAX qubits).

This module is the independent cross-check for the GF(2) entropy engine: it
never touches rank computations, only eigenvalues of explicitly built
matrices. Qubit 0 is the most significant bit of the computational-basis
index.

Local-distinguishability suprema are evaluated in closed form through trace
norm duality rather than by sampling observables: for any operator phi
supported on R with ||phi|| <= 1,

    sup |tr[phi (rho_R - sigma_R)]|        = ||rho_R - sigma_R||_1
    sup |<psi_i| phi (x) 1 |psi_j>|        = || tr_{R^c} |psi_j><psi_i| ||_1,

where the second trace norm is a sum of singular values of a generally
non-Hermitian matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .geometry import Region
from .pauli import StabilizerGroup

QMAX = 12

_HERMITICITY_TOL = 1e-12
_TRACE_TOL = 1e-10
_EIG_FLOOR = -1e-10
_ORTHO_TOL = 1e-9

RegionLike = Union[Region, Iterable[int]]


def _region_indices(region: RegionLike) -> list[int]:
    if isinstance(region, Region):
        return region.sorted_indices()
    return sorted(set(region))


class DenseState:
    """Validated density matrix on q qubits."""

    def __init__(self, matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("state must be a square matrix")
        dim = matrix.shape[0]
        q = dim.bit_length() - 1
        if 2**q != dim:
            raise ValueError("dimension must be a power of two")
        if q > QMAX:
            raise ValueError(f"{q} qubits exceed the dense limit of {QMAX}")
        if np.abs(matrix - matrix.conj().T).max() > _HERMITICITY_TOL:
            raise ValueError("state is not Hermitian")
        tr = complex(np.trace(matrix))
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ValueError(f"trace is {tr}, not 1")
        self.q = q
        self.matrix = matrix

    @classmethod
    def from_vector(cls, vec: Sequence[complex]) -> "DenseState":
        v = np.asarray(vec, dtype=complex)
        norm = np.linalg.norm(v)
        if norm < 1e-12:
            raise ValueError("zero vector")
        v = v / norm
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, q: int) -> "DenseState":
        d = 2**q
        return cls(np.eye(d) / d)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def is_pure(self, tol: float = 1e-9) -> bool:
        return abs(self.purity() - 1.0) <= tol

    def vector(self) -> np.ndarray:
        """State vector of a pure state (global phase unspecified)."""
        if not self.is_pure():
            raise ValueError("state is not pure")
        vals, vecs = np.linalg.eigh(self.matrix)
        return vecs[:, int(np.argmax(vals))]


@dataclass(frozen=True)
class Observable:
    """Hermitian operator on q qubits."""

    q: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2**self.q, 2**self.q):
            raise ValueError("shape does not match the qubit count")
        if np.abs(m - m.conj().T).max() > _HERMITICITY_TOL:
            raise ValueError("observable is not Hermitian")
        object.__setattr__(self, "matrix", m)

    def operator_norm(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvalsh(self.matrix))))


def von_neumann_entropy(state: DenseState) -> float:
    """-sum lambda log2 lambda over the spectrum, with 0 log 0 = 0."""
    vals = np.linalg.eigvalsh(state.matrix)
    if vals.min() < _EIG_FLOOR:
        raise ValueError(f"state has eigenvalue {vals.min()}, below the PSD floor")
    vals = np.clip(vals, 0.0, None)
    vals = vals[vals > 0]
    return float(-(vals * np.log2(vals)).sum())


def partial_trace(state: DenseState, keep: RegionLike) -> DenseState:
    """Reduced state on the kept qubits (trace preserved)."""
    keep_idx = _region_indices(keep)
    q = state.q
    if any(not 0 <= i < q for i in keep_idx):
        raise ValueError("kept qubit out of range")
    drop = [i for i in range(q) if i not in keep_idx]
    if not drop:
        return DenseState(state.matrix.copy())
    tensor = state.matrix.reshape([2] * (2 * q))
    # axes: row qubits 0..q-1, then column qubits
    perm = keep_idx + drop + [q + i for i in keep_idx] + [q + i for i in drop]
    tensor = tensor.transpose(perm)
    dk = 2 ** len(keep_idx)
    dd = 2 ** len(drop)
    tensor = tensor.reshape(dk, dd, dk, dd)
    reduced = np.einsum("abcb->ac", tensor)
    return DenseState(reduced)


def trace_distance(rho: DenseState, sigma: DenseState) -> float:
    """Unnormalized trace norm ||rho - sigma||_1, in [0, 2]."""
    if rho.q != sigma.q:
        raise ValueError("dimension mismatch")
    diff = rho.matrix - sigma.matrix
    return float(np.abs(np.linalg.eigvalsh(diff)).sum())


def fannes_bound(eps: float, dim: int) -> float:
    """Entropy continuity bound eps*log2(dim) - eps*log2(eps), 0 at eps = 0.

    The -eps*log2(eps) term is monotone only for eps <= 1/e, so quantitative
    use is restricted to that regime.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if dim < 2:
        raise ValueError("dimension must be at least 2")
    if eps == 0:
        return 0.0
    return eps * math.log2(dim) - eps * math.log2(eps)


def _as_vectors(states: Sequence[Union[DenseState, np.ndarray]]) -> list[np.ndarray]:
    vecs = []
    for s in states:
        if isinstance(s, DenseState):
            vecs.append(s.vector())
        else:
            v = np.asarray(s, dtype=complex)
            norm = np.linalg.norm(v)
            if abs(norm - 1.0) > _ORTHO_TOL:
                raise ValueError("state vectors must be normalized")
            vecs.append(v)
    return vecs


def tqo_epsilon(
    states: Sequence[Union[DenseState, np.ndarray]], region: RegionLike
) -> tuple[float, float]:
    """Exact local-distinguishability errors (eps_offdiag, eps_diag) on a region.

    eps_diag is the largest trace distance between reduced states (the
    supremum of expectation gaps over unit-norm local operators); eps_offdiag
    is the largest trace norm of a partially traced off-diagonal outer
    product (the supremum of local transition amplitudes).
    """
    if len(states) < 2:
        raise ValueError("need at least two states")
    vecs = _as_vectors(states)
    q = int(np.log2(len(vecs[0])))
    for v in vecs:
        if len(v) != 2**q:
            raise ValueError("states have mismatched dimensions")
    gram = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
    if np.abs(gram - np.eye(len(vecs))).max() > 1e-6:
        raise ValueError("states must be orthonormal")
    keep = _region_indices(region)
    drop = [i for i in range(q) if i not in keep]
    dk, dd = 2 ** len(keep), 2 ** len(drop)

    def reshaped(v: np.ndarray) -> np.ndarray:
        t = v.reshape([2] * q)
        t = t.transpose(keep + drop)
        return t.reshape(dk, dd)

    mats = [reshaped(v) for v in vecs]
    eps_offdiag = 0.0
    eps_diag = 0.0
    for i in range(len(mats)):
        for j in range(len(mats)):
            if i == j:
                continue
            cross = mats[j] @ mats[i].conj().T  # tr_{R^c} |psi_j><psi_i|
            eps_offdiag = max(
                eps_offdiag, float(np.linalg.svd(cross, compute_uv=False).sum())
            )
            diff = mats[i] @ mats[i].conj().T - mats[j] @ mats[j].conj().T
            eps_diag = max(eps_diag, float(np.abs(np.linalg.eigvalsh(diff)).sum()))
    return eps_offdiag, eps_diag


def _pauli_phase_table(bits: int, dim: int) -> np.ndarray:
    """(-1)^{popcount(bits & index)} for every basis index."""
    out = np.empty(dim)
    for i in range(dim):
        out[i] = -1.0 if (bits & i).bit_count() & 1 else 1.0
    return out


def stabilizer_to_dense(group: StabilizerGroup) -> DenseState:
    """Maximally mixed code state: the code projector normalized to trace 1.

    Built by applying (1 + W_i)/2 for every generator, where W_i is the
    Hermitian Pauli i^{x.z} X^x Z^z; entropy of the result is k bits.
    """
    n = group.n
    if n > QMAX:
        raise ValueError(f"{n} qubits exceed the dense limit of {QMAX}")
    d = 2**n
    proj = np.eye(d, dtype=complex)
    idx = np.arange(d)
    for g in range(group.s):
        p = group.generator(g)
        # transfer to big-endian bit masks over basis indices
        x = sum(1 << (n - 1 - q) for q in range(n) if (p.x >> q) & 1)
        z = sum(1 << (n - 1 - q) for q in range(n) if (p.z >> q) & 1)
        phase = (1j) ** ((p.x & p.z).bit_count() % 4)
        signs = _pauli_phase_table(z, d)
        permuted = proj[idx ^ x, :]
        proj = 0.5 * (proj + phase * signs[(idx ^ x)][:, None] * permuted)
    trace = float(np.real(np.trace(proj)))
    expected = 2.0 ** (n - group.s)
    if abs(trace - expected) > 1e-6 * expected:
        raise AssertionError("projector trace mismatch; generator phases inconsistent")
    return DenseState(proj / trace)


def code_basis_states(group: StabilizerGroup) -> list[np.ndarray]:
    """Orthonormal basis of the code space (eigenvectors of the projector)."""
    state = stabilizer_to_dense(group)
    dim = 2**group.k
    vals, vecs = np.linalg.eigh(state.matrix)
    order = np.argsort(vals)[::-1]
    top = order[:dim]
    if vals[top].min() < 0.9 / dim:
        raise AssertionError("code projector spectrum is not flat")
    return [vecs[:, i] for i in top]


def random_density_matrix(q: int, rng: np.random.Generator, rank: int = 0) -> DenseState:
    """Haar-ish random mixed state from a Gaussian factor (full rank when 0)."""
    d = 2**q
    r = rank or d
    a = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    m = a @ a.conj().T
    return DenseState(m / np.trace(m))
