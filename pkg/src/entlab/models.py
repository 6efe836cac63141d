"""Constructors for the concrete lattice models and small reference codes.

Cubic-code conventions (two qubits A, B per site of an L^3 periodic lattice,
unit vectors x, y, z): the X-type generator at cell c acts as

    X on A at  c, c+x, c+y, c+z
    X on B at  c, c+x+y, c+y+z, c+z+x

and the Z-type generator at cell c acts as

    Z on A at  c, c-x-y, c-y-z, c-z-x
    Z on B at  c, c-x, c-y, c-z.

The Z pattern is the point reflection of the X pattern with the A/B roles
swapped, which makes every pair of generators commute on the torus. The raw
2 L^3 generators are dependent; construction keeps a maximal independent
subset in deterministic cell order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .f2 import BitMatrix, EchelonBasis
from .geometry import TorusLattice
from .pauli import StabilizerGroup, _symp_rows, parse_check_matrix


def toric_code(L: int) -> tuple[StabilizerGroup, TorusLattice]:
    """Toric code on an L x L periodic grid: 2 L^2 edge qubits, k = 2.

    Vertex stars are X-type, plaquettes Z-type; one of each is dropped to
    remove the two product-of-all dependencies, so the generators are
    independent by construction.
    """
    if L < 2:
        raise ValueError("need L >= 2")
    lattice = TorusLattice((L, L), placement="edge")
    n = lattice.n_qubits

    def h(x: int, y: int) -> int:
        return lattice.edge_index(0, (x, y))

    def v(x: int, y: int) -> int:
        return lattice.edge_index(1, (x, y))

    rows = []
    for x in range(L):
        for y in range(L):
            if (x, y) == (0, 0):
                continue
            star = 0
            for e in (h(x, y), h(x - 1, y), v(x, y), v(x, y - 1)):
                star |= 1 << e
            rows.append(star)
    for x in range(L):
        for y in range(L):
            if (x, y) == (0, 0):
                continue
            plaq = 0
            for e in (h(x, y), h(x, y + 1), v(x, y), v(x + 1, y)):
                plaq |= 1 << (n + e)
            rows.append(plaq)
    group = StabilizerGroup(n, BitMatrix(len(rows), 2 * n, tuple(rows)))
    return group, lattice


def repetition_code(n: int) -> StabilizerGroup:
    """Classical repetition code as a stabilizer group: Z_i Z_{i+1} chain, k = 1."""
    if n < 2:
        raise ValueError("need n >= 2")
    rows = []
    for i in range(n - 1):
        rows.append((1 << (n + i)) | (1 << (n + i + 1)))
    return StabilizerGroup(n, BitMatrix(len(rows), 2 * n, tuple(rows)))


def ring_lattice(n: int) -> TorusLattice:
    """1D periodic site lattice used to run metric-ball checks on chains."""
    return TorusLattice((n,), placement="site", multiplicity=1)


def haah_cubic_code(L: int) -> tuple[StabilizerGroup, TorusLattice]:
    """Cubic code on an L^3 torus with two qubits per site (patterns above)."""
    if L < 2:
        raise ValueError("need L >= 2")
    lattice = TorusLattice((L, L, L), placement="site", multiplicity=2)
    n = lattice.n_qubits

    def qa(i: int, j: int, k: int) -> int:
        return 2 * lattice.site_index((i, j, k))

    def qb(i: int, j: int, k: int) -> int:
        return 2 * lattice.site_index((i, j, k)) + 1

    x_offsets = [
        (0, 0, 0, qa), (1, 0, 0, qa), (0, 1, 0, qa), (0, 0, 1, qa),
        (0, 0, 0, qb), (1, 1, 0, qb), (0, 1, 1, qb), (1, 0, 1, qb),
    ]
    z_offsets = [
        (0, 0, 0, qa), (-1, -1, 0, qa), (0, -1, -1, qa), (-1, 0, -1, qa),
        (0, 0, 0, qb), (-1, 0, 0, qb), (0, -1, 0, qb), (0, 0, -1, qb),
    ]
    basis = EchelonBasis()
    kept = []
    for i in range(L):
        for j in range(L):
            for k in range(L):
                gx = 0
                for di, dj, dk, q in x_offsets:
                    gx |= 1 << q(i + di, j + dj, k + dk)
                gz = 0
                for di, dj, dk, q in z_offsets:
                    gz |= 1 << (n + q(i + di, j + dj, k + dk))
                for g in (gx, gz):
                    if basis.add(g):
                        kept.append(g)
    group = StabilizerGroup(n, BitMatrix(len(kept), 2 * n, tuple(kept)))
    return group, lattice


def random_stabilizer_code(n: int, s: int, seed: int) -> StabilizerGroup:
    """Seeded random code: s independent commuting generators.

    Draws a full symplectic basis by Gram-Schmidt over the binary symplectic
    space and keeps the first s primal vectors, which commute pairwise by
    construction. Deterministic per seed.
    """
    if not 0 <= s <= n:
        raise ValueError("need 0 <= s <= n")
    rng = random.Random(seed)
    basis = [1 << i for i in range(2 * n)]
    primal = []
    for _ in range(n):
        v = 0
        while v == 0:
            v = 0
            for b in basis:
                if rng.getrandbits(1):
                    v ^= b
        w = next(b for b in basis if _symp_rows(n, v, b) == 1)
        swept = []
        for b in basis:
            if _symp_rows(n, b, w):
                b ^= v
            if _symp_rows(n, b, v):
                b ^= w
            swept.append(b)
        echelon = EchelonBasis()
        basis = [b for b in swept if echelon.add(b)]
        primal.append(v)
        if len(primal) == n:
            break
    rows = tuple(primal[:s])
    return StabilizerGroup(n, BitMatrix(s, 2 * n, rows))


def ghz_code(n: int) -> StabilizerGroup:
    """GHZ stabilizer group: X...X plus a Z Z chain; k = 0 (a pure state)."""
    if n < 2:
        raise ValueError("need n >= 2")
    strings = ["X" * n]
    for i in range(n - 1):
        strings.append("I" * i + "ZZ" + "I" * (n - i - 2))
    return StabilizerGroup.from_strings(strings)


def cluster_chain(n: int) -> StabilizerGroup:
    """Open 1D cluster state: K_i = Z_{i-1} X_i Z_{i+1}; k = 0."""
    if n < 2:
        raise ValueError("need n >= 2")
    strings = []
    for i in range(n):
        chars = ["I"] * n
        chars[i] = "X"
        if i > 0:
            chars[i - 1] = "Z"
        if i < n - 1:
            chars[i + 1] = "Z"
        strings.append("".join(chars))
    return StabilizerGroup.from_strings(strings)


def five_qubit_code() -> StabilizerGroup:
    """[[5,1,3]] code with cyclic XZZXI generators."""
    return StabilizerGroup.from_strings(["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])


def named_small_codes() -> dict[str, StabilizerGroup]:
    """Fixed catalog of small reference groups for oracle tests."""
    return {
        "bell": StabilizerGroup.from_strings(["XX", "ZZ"]),
        "ghz3": ghz_code(3),
        "ghz4": ghz_code(4),
        "cluster5": cluster_chain(5),
        "five_qubit": five_qubit_code(),
    }


def stacked(a: StabilizerGroup, b: StabilizerGroup) -> StabilizerGroup:
    """Tensor product of two groups on the disjoint union of their qubits."""
    n = a.n + b.n
    rows = []
    for i in range(a.s):
        p = a.generator(i)
        rows.append(p.x | (p.z << n))
    for i in range(b.s):
        p = b.generator(i)
        rows.append((p.x << a.n) | (p.z << (n + a.n)))
    return StabilizerGroup(n, BitMatrix(len(rows), 2 * n, tuple(rows)))


@dataclass(frozen=True)
class Model:
    """A named code instance with optional geometry and known distance."""

    name: str
    params: dict
    group: StabilizerGroup
    lattice: Optional[TorusLattice] = None
    distance_hint: Optional[int] = None

    def describe(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}:{inner}"


def parse_model_spec(spec: str) -> tuple[str, dict]:
    """Split "name:k=v,k=v" into the name and an integer parameter dict."""
    if ":" in spec:
        name, _, tail = spec.partition(":")
        if name == "file":
            return name, {"path": tail}
        params = {}
        for chunk in tail.split(","):
            if not chunk:
                continue
            if "=" not in chunk:
                raise ValueError(f"malformed model parameter {chunk!r} in {spec!r}")
            key, _, val = chunk.partition("=")
            try:
                params[key.strip()] = int(val)
            except ValueError as exc:
                raise ValueError(f"model parameter {chunk!r} is not an integer") from exc
        return name.strip(), params
    return spec.strip(), {}


def build_model(name: str, params: dict) -> Model:
    """Instantiate a registry model; unknown names raise ValueError."""
    if name == "toric":
        L = int(params.get("L", 4))
        group, lattice = toric_code(L)
        return Model("toric", {"L": L}, group, lattice, distance_hint=L)
    if name == "cubic":
        L = int(params.get("L", 2))
        group, lattice = haah_cubic_code(L)
        return Model("cubic", {"L": L}, group, lattice)
    if name == "repetition":
        n = int(params.get("n", 5))
        return Model("repetition", {"n": n}, repetition_code(n), ring_lattice(n), 1)
    if name == "random":
        n = int(params.get("n", 8))
        s = int(params.get("s", n - 2))
        seed = int(params.get("seed", 0))
        return Model("random", {"n": n, "s": s, "seed": seed}, random_stabilizer_code(n, s, seed))
    if name == "ghz":
        n = int(params.get("n", 3))
        return Model("ghz", {"n": n}, ghz_code(n))
    if name == "cluster":
        n = int(params.get("n", 5))
        return Model("cluster", {"n": n}, cluster_chain(n))
    if name == "five_qubit":
        return Model("five_qubit", {}, five_qubit_code(), distance_hint=3)
    if name == "file":
        path = params.get("path")
        if not path:
            raise ValueError("file model needs a path, e.g. file:codes/my.chk")
        with open(path, "r", encoding="utf-8") as fh:
            return Model("file", {"path": path}, parse_check_matrix(fh.read()))
    catalog = named_small_codes()
    if name in catalog:
        return Model(name, {}, catalog[name])
    raise ValueError(f"unknown model {name!r}")


def parse_model(spec: str) -> Model:
    name, params = parse_model_spec(spec)
    return build_model(name, params)
