"""Symplectic (binary) representation of Pauli operators and stabilizer groups.

A Pauli on n qubits is a pair of n-bit vectors (x, z); the operator on qubit q
is I, X, Z, Y for (x_q, z_q) = (0,0), (1,0), (0,1), (1,1). Signs are fixed to
+1 throughout: subsystem entropies and correctability are insensitive to
phases, so the group is treated at the sign-free level and individual code
states are never singled out.

Generator matrices are s x 2n BitMatrix values in (x|z) block form: bits
[0, n) hold the x part, bits [n, 2n) the z part.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import f2
from .f2 import BitMatrix, BitVector
from .geometry import TorusLattice, ball
from .records import BoundVerdict

_PAULI_CHARS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_CHAR_BITS = {v: k for k, v in _PAULI_CHARS.items()}


@dataclass(frozen=True)
class PauliOperator:
    """Sign-free n-qubit Pauli operator."""

    n: int
    x: int
    z: int

    def __post_init__(self) -> None:
        if self.x >> self.n or self.z >> self.n or self.x < 0 or self.z < 0:
            raise ValueError("x/z bits outside the qubit count")

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, 0)

    @classmethod
    def from_string(cls, s: str) -> "PauliOperator":
        x = z = 0
        for q, c in enumerate(s):
            if c not in _CHAR_BITS:
                raise ValueError(f"invalid Pauli character {c!r} at position {q}")
            xb, zb = _CHAR_BITS[c]
            x |= xb << q
            z |= zb << q
        return cls(len(s), x, z)

    @classmethod
    def single(cls, n: int, q: int, kind: str) -> "PauliOperator":
        xb, zb = _CHAR_BITS[kind]
        return cls(n, xb << q, zb << q)

    @classmethod
    def from_symplectic(cls, n: int, row: int) -> "PauliOperator":
        mask = (1 << n) - 1
        return cls(n, row & mask, row >> n)

    @property
    def symplectic(self) -> int:
        """Packed (x|z) row, x in the low half."""
        return self.x | (self.z << self.n)

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def support(self) -> list[int]:
        return BitVector(self.n, self.x | self.z).indices()

    def xpart(self) -> BitVector:
        return BitVector(self.n, self.x)

    def zpart(self) -> BitVector:
        return BitVector(self.n, self.z)

    def compose(self, other: "PauliOperator") -> "PauliOperator":
        """Sign-free product."""
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        return PauliOperator(self.n, self.x ^ other.x, self.z ^ other.z)

    def commutes_with(self, other: "PauliOperator") -> bool:
        return symplectic_product(self, other) == 0

    def to_string(self) -> str:
        return "".join(
            _PAULI_CHARS[((self.x >> q) & 1, (self.z >> q) & 1)] for q in range(self.n)
        )

    def __str__(self) -> str:
        return self.to_string()


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    """0 when p and q commute, 1 when they anticommute."""
    if p.n != q.n:
        raise ValueError("qubit count mismatch")
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) & 1


def _symp_rows(n: int, r1: int, r2: int) -> int:
    mask = (1 << n) - 1
    x1, z1 = r1 & mask, r1 >> n
    x2, z2 = r2 & mask, r2 >> n
    return ((x1 & z2).bit_count() + (z1 & x2).bit_count()) & 1


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    d: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n:
            raise ValueError("need 0 <= k <= n")
        if self.d is not None and not 1 <= self.d <= self.n:
            raise ValueError("need 1 <= d <= n")


@dataclass(frozen=True)
class LogicalSet:
    """One (X-like, Z-like) anticommuting pair per encoded qubit."""

    pairs: tuple[tuple[PauliOperator, PauliOperator], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def all_operators(self) -> list[PauliOperator]:
        return [op for pair in self.pairs for op in pair]


class StabilizerGroup:
    """Commuting, independent Pauli generators defining a code space.

    Construction validates pairwise commutation and independence
    (rank == generator count); both are hard invariants for everything
    downstream.
    """

    def __init__(self, n: int, generators: BitMatrix):
        if generators.cols != 2 * n:
            raise ValueError("generator matrix must have 2n columns")
        if generators.rows > n:
            raise ValueError("more generators than qubits")
        rows = generators.data
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                if _symp_rows(n, rows[i], rows[j]):
                    raise ValueError(f"generators {i} and {j} anticommute")
        if f2.rank(generators) != generators.rows:
            raise ValueError("generators are dependent")
        self.n = n
        self.generators = generators

    @classmethod
    def from_paulis(cls, paulis: Sequence[PauliOperator]) -> "StabilizerGroup":
        if not paulis:
            raise ValueError("empty generator list; use trivial(n) instead")
        n = paulis[0].n
        rows = tuple(p.symplectic for p in paulis)
        return cls(n, BitMatrix(len(rows), 2 * n, rows))

    @classmethod
    def from_strings(cls, strings: Sequence[str]) -> "StabilizerGroup":
        return cls.from_paulis([PauliOperator.from_string(s) for s in strings])

    @classmethod
    def trivial(cls, n: int) -> "StabilizerGroup":
        return cls(n, BitMatrix(0, 2 * n, ()))

    @property
    def s(self) -> int:
        return self.generators.rows

    @property
    def k(self) -> int:
        return self.n - self.s

    def generator(self, i: int) -> PauliOperator:
        return PauliOperator.from_symplectic(self.n, self.generators.data[i])

    def generator_paulis(self) -> list[PauliOperator]:
        return [self.generator(i) for i in range(self.s)]

    def contains(self, p: PauliOperator) -> bool:
        """Sign-free membership: p is a product of generators."""
        if p.n != self.n:
            raise ValueError("qubit count mismatch")
        return f2.in_row_space(self.generators, BitVector(2 * self.n, p.symplectic))

    def region_mask(self, qubits: Iterable[int]) -> int:
        m = 0
        for q in qubits:
            if not 0 <= q < self.n:
                raise ValueError(f"qubit {q} out of range")
            m |= (1 << q) | (1 << (self.n + q))
        return m

    def __repr__(self) -> str:
        return f"StabilizerGroup(n={self.n}, s={self.s})"


def code_parameters(group: StabilizerGroup, d: Optional[int] = None) -> CodeParameters:
    """n, k = n - s; the distance is not computed here."""
    return CodeParameters(n=group.n, k=group.n - group.s, d=d)


def subgroup_rank_on(group: StabilizerGroup, qubits: Iterable[int]) -> int:
    """log2 of the number of group elements supported entirely inside the region.

    The subgroup supported in R is the kernel of restriction to the
    complement, so its log-size is s minus the rank of the generator matrix
    with the R columns zeroed away.
    """
    mask = group.region_mask(qubits)
    comp_mask = ((1 << (2 * group.n)) - 1) ^ mask
    return group.s - f2.rank_of_ints(r & comp_mask for r in group.generators.data)


def _restricted_commutation_matrix(group: StabilizerGroup, region: Sequence[int]) -> BitMatrix:
    """Rows r_i with r_i . (px|pz) = symplectic product of generator i with a
    Pauli (px, pz) supported on the region (region-local column order)."""
    m = len(region)
    pos = {q: j for j, q in enumerate(region)}
    rows = []
    for g in group.generators.data:
        gx, gz = g & ((1 << group.n) - 1), g >> group.n
        row = 0
        for q, j in pos.items():
            row |= ((gz >> q) & 1) << j          # pairs with px
            row |= ((gx >> q) & 1) << (m + j)    # pairs with pz
        rows.append(row)
    return BitMatrix(len(rows), 2 * m, tuple(rows))


def _embed_region_pauli(n: int, region: Sequence[int], packed: int) -> PauliOperator:
    m = len(region)
    x = z = 0
    for j, q in enumerate(region):
        x |= ((packed >> j) & 1) << q
        z |= ((packed >> (m + j)) & 1) << q
    return PauliOperator(n, x, z)


def is_correctable_region(
    group: StabilizerGroup, qubits: Iterable[int]
) -> tuple[bool, Optional[PauliOperator]]:
    """True when no nontrivial logical operator is supported on the region.

    Every Pauli on the region commuting with the whole group must already be
    a group member. The normalizer-on-region is the kernel of the symplectic
    pairing against the generators; it always contains the supported
    subgroup, so comparing dimensions decides the question, and a kernel
    basis element outside the group is a logical witness.
    """
    region = sorted(set(qubits))
    if not region:
        return True, None
    mat = _restricted_commutation_matrix(group, region)
    kernel = f2.kernel_basis(mat)
    if kernel.rows == subgroup_rank_on(group, region):
        return True, None
    for i in range(kernel.rows):
        p = _embed_region_pauli(group.n, region, kernel.data[i])
        if not group.contains(p):
            return False, p
    raise AssertionError("kernel exceeded subgroup but no witness found")


def logical_operators(group: StabilizerGroup) -> LogicalSet:
    """k anticommuting logical pairs generating the normalizer modulo the group.

    Symplectic Gram-Schmidt over the kernel of the commutation map: pick a
    kernel element outside the group, pair it with an anticommuting partner,
    sweep the rest to commute with the pair, repeat k times.
    """
    n, s, k = group.n, group.s, group.k
    full = _restricted_commutation_matrix(group, list(range(n)))
    candidates = list(f2.kernel_basis(full).data)
    span = list(group.generators.data)
    pairs = []
    for _ in range(k):
        a = None
        for idx, c in enumerate(candidates):
            if not f2.in_row_space(
                BitMatrix(len(span), 2 * n, tuple(span)), BitVector(2 * n, c)
            ):
                a = c
                candidates.pop(idx)
                break
        if a is None:
            raise AssertionError("ran out of logical candidates before k pairs")
        b = None
        for idx, c in enumerate(candidates):
            if _symp_rows(n, a, c):
                b = c
                candidates.pop(idx)
                break
        if b is None:
            raise AssertionError("no anticommuting partner for a logical candidate")
        swept = []
        for c in candidates:
            if _symp_rows(n, c, b):
                c ^= a
            if _symp_rows(n, c, a):
                c ^= b
            swept.append(c)
        candidates = swept
        pairs.append(
            (PauliOperator.from_symplectic(n, a), PauliOperator.from_symplectic(n, b))
        )
        span.extend((a, b))
    return LogicalSet(tuple(pairs))


def brute_force_distance(
    group: StabilizerGroup, cutoff: Optional[int] = None
) -> Optional[int]:
    """Minimum weight of a Pauli in the normalizer but outside the group.

    Enumerates supports of increasing size; for each support the normalizer
    dimension is compared with the supported-subgroup dimension. Returns None
    when k = 0 or no logical exists up to the cutoff (default n // 2).
    """
    if group.k == 0:
        return None
    n = group.n
    if cutoff is None:
        cutoff = max(1, (n + 1) // 2)
    for w in range(1, cutoff + 1):
        for support in combinations(range(n), w):
            mat = _restricted_commutation_matrix(group, support)
            kernel_dim = 2 * w - f2.rank(mat)
            if kernel_dim > subgroup_rank_on(group, support):
                return w
    return None


def tqo_check(group: StabilizerGroup, lattice: TorusLattice, r: int) -> BoundVerdict:
    """Local-indistinguishability check over all radius-r metric balls.

    Exact at the stabilizer level: the check passes (epsilon = 0) iff every
    ball is a correctable region. On failure the first ball supporting a
    logical operator is reported; a logical Pauli witness splits the code
    space into opposite eigenvalue sectors, so the worst-case expectation gap
    over code states is exactly 2 (with the operator norm 1).
    """
    if lattice.n_qubits != group.n:
        raise ValueError("lattice and group qubit counts differ")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    for center in range(lattice.n_cells):
        region = ball(lattice, center, r)
        ok, witness = is_correctable_region(group, region.indices)
        if not ok:
            detail = (
                f"ball(center={center}, r={r}) supports logical {witness.to_string()}"
            )
            return BoundVerdict(
                name="tqo",
                lhs=2.0,
                rhs=0.0,
                holds=False,
                slack=-2.0,
                witness=detail,
            )
    return BoundVerdict(
        name="tqo", lhs=0.0, rhs=0.0, holds=True, slack=0.0, witness=f"r={r}"
    )


def parse_check_matrix(text: str) -> StabilizerGroup:
    """Load generators from lines of the form "x...x|z...z".

    The x block comes first, one character per qubit, left to right; blank
    lines and lines starting with '#' are skipped. Commutation and
    independence are validated on construction.
    """
    rows = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "|" not in line:
            raise ValueError(f"line {lineno}: missing '|' separator")
        xs, zs = line.split("|", 1)
        if len(xs) != len(zs):
            raise ValueError(f"line {lineno}: x and z blocks differ in length")
        if n is None:
            n = len(xs)
        elif len(xs) != n:
            raise ValueError(f"line {lineno}: expected {n} qubits, got {len(xs)}")
        try:
            x = BitVector.from_string(xs).bits
            z = BitVector.from_string(zs).bits
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        rows.append(x | (z << n))
    if n is None:
        raise ValueError("no generators found")
    return StabilizerGroup(n, BitMatrix(len(rows), 2 * n, tuple(rows)))


def format_check_matrix(group: StabilizerGroup) -> str:
    lines = []
    for i in range(group.s):
        p = group.generator(i)
        lines.append(p.xpart().to01() + "|" + p.zpart().to01())
    return "\n".join(lines) + "\n"
