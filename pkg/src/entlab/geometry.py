"""Torus lattices, qubit regions, metric balls and nested partition sequences.

Cells are the qubit-carrying objects of a periodic lattice: edges of a 2D
square grid ("edge" placement, one qubit per edge) or lattice sites ("site"
placement, any multiplicity). The metric is graph distance on cells, where
edge cells are adjacent when they share a vertex and site cells when they
differ by one step along one axis. Every construction here is a pure value;
regions are immutable index sets tagged with their lattice.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class TorusLattice:
    """Periodic lattice in 1, 2 or 3 dimensions.

    placement "edge" is only defined for D = 2 and puts one qubit on every
    edge of the square grid; placement "site" puts `multiplicity` qubits on
    every lattice site.
    """

    def __init__(self, dims: Sequence[int], placement: str = "site", multiplicity: int = 1):
        dims = tuple(int(d) for d in dims)
        if not 1 <= len(dims) <= 3:
            raise ValueError("dimension must be 1, 2 or 3")
        if any(d < 2 for d in dims):
            raise ValueError("every axis length must be at least 2")
        if placement not in ("edge", "site"):
            raise ValueError(f"unknown placement {placement!r}")
        if placement == "edge" and len(dims) != 2:
            raise ValueError("edge placement is defined for 2D lattices only")
        if multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if placement == "edge" and multiplicity != 1:
            raise ValueError("edge placement carries one qubit per edge")
        self.dims = dims
        self.D = len(dims)
        self.placement = placement
        self.multiplicity = multiplicity

    # --- cells ---------------------------------------------------------

    @property
    def n_sites(self) -> int:
        out = 1
        for d in self.dims:
            out *= d
        return out

    @property
    def n_cells(self) -> int:
        if self.placement == "edge":
            return 2 * self.n_sites
        return self.n_sites

    @property
    def n_qubits(self) -> int:
        return self.n_cells * self.multiplicity

    def site_index(self, coords: Sequence[int]) -> int:
        idx = 0
        for c, d in zip(coords, self.dims):
            idx = idx * d + (c % d)
        return idx

    def site_coords(self, idx: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.dims):
            out.append(idx % d)
            idx //= d
        return tuple(reversed(out))

    def edge_index(self, axis: int, coords: Sequence[int]) -> int:
        """Edge from `coords` one step along `axis` (edge placement only)."""
        if self.placement != "edge":
            raise ValueError("edge_index requires edge placement")
        if axis not in (0, 1):
            raise ValueError("axis must be 0 or 1")
        return axis * self.n_sites + self.site_index(coords)

    def edge_parts(self, cell: int) -> tuple[int, tuple[int, ...]]:
        axis, site = divmod(cell, self.n_sites)
        return axis, self.site_coords(site)

    def edge_endpoints(self, cell: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        axis, (x, y) = self.edge_parts(cell)
        if axis == 0:
            return (x, y), ((x + 1) % self.dims[0], y)
        return (x, y), (x, (y + 1) % self.dims[1])

    def cell_qubits(self, cell: int) -> tuple[int, ...]:
        base = cell * self.multiplicity
        return tuple(range(base, base + self.multiplicity))

    def qubit_cell(self, qubit: int) -> int:
        return qubit // self.multiplicity

    # --- adjacency and metric ------------------------------------------

    def adjacent_cells(self, cell: int) -> list[int]:
        if self.placement == "edge":
            out = set()
            for vx, vy in self.edge_endpoints(cell):
                out.add(self.edge_index(0, (vx, vy)))
                out.add(self.edge_index(0, (vx - 1, vy)))
                out.add(self.edge_index(1, (vx, vy)))
                out.add(self.edge_index(1, (vx, vy - 1)))
            out.discard(cell)
            return sorted(out)
        coords = self.site_coords(cell)
        out = []
        for axis in range(self.D):
            for step in (-1, 1):
                nb = list(coords)
                nb[axis] = (nb[axis] + step) % self.dims[axis]
                out.append(self.site_index(nb))
        return sorted(set(out))

    def cells_within(self, center: int, r: int) -> set[int]:
        """All cells at graph distance <= r from the center cell."""
        if r < 0:
            raise ValueError("radius must be nonnegative")
        seen = {center}
        frontier = [center]
        for _ in range(r):
            nxt = []
            for c in frontier:
                for nb in self.adjacent_cells(c):
                    if nb not in seen:
                        seen.add(nb)
                        nxt.append(nb)
            if not nxt:
                break
            frontier = nxt
        return seen

    def cell_distances(self, center: int) -> list[int]:
        """BFS distances from a cell to every cell."""
        dist = [-1] * self.n_cells
        dist[center] = 0
        q = deque([center])
        while q:
            c = q.popleft()
            for nb in self.adjacent_cells(c):
                if dist[nb] < 0:
                    dist[nb] = dist[c] + 1
                    q.append(nb)
        return dist

    def describe(self) -> str:
        dims = "x".join(str(d) for d in self.dims)
        return f"torus[{dims}] {self.placement} x{self.multiplicity}"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TorusLattice)
            and self.dims == other.dims
            and self.placement == other.placement
            and self.multiplicity == other.multiplicity
        )

    def __hash__(self) -> int:
        return hash((self.dims, self.placement, self.multiplicity))

    def __repr__(self) -> str:
        return f"TorusLattice(dims={self.dims}, placement={self.placement!r}, multiplicity={self.multiplicity})"


@dataclass(frozen=True)
class Region:
    """Immutable set of qubit indices inside a universe of n qubits."""

    n: int
    indices: frozenset[int]
    lattice: Optional[TorusLattice] = None

    def __post_init__(self) -> None:
        if any(not 0 <= q < self.n for q in self.indices):
            raise ValueError("qubit index out of range")
        if self.lattice is not None and self.lattice.n_qubits != self.n:
            raise ValueError("region universe does not match the lattice qubit count")

    @classmethod
    def of(cls, n: int, indices: Iterable[int], lattice: Optional[TorusLattice] = None) -> "Region":
        return cls(n, frozenset(indices), lattice)

    @classmethod
    def empty(cls, n: int, lattice: Optional[TorusLattice] = None) -> "Region":
        return cls(n, frozenset(), lattice)

    @classmethod
    def full(cls, n: int, lattice: Optional[TorusLattice] = None) -> "Region":
        return cls(n, frozenset(range(n)), lattice)

    @classmethod
    def from_cells(cls, lattice: TorusLattice, cells: Iterable[int]) -> "Region":
        qubits = []
        for c in cells:
            qubits.extend(lattice.cell_qubits(c))
        return cls(lattice.n_qubits, frozenset(qubits), lattice)

    @property
    def size(self) -> int:
        return len(self.indices)

    def sorted_indices(self) -> list[int]:
        return sorted(self.indices)

    def _merged_lattice(self, other: "Region") -> Optional[TorusLattice]:
        if self.n != other.n:
            raise ValueError("regions live in different qubit universes")
        if self.lattice is not None and other.lattice is not None:
            if self.lattice != other.lattice:
                raise ValueError("cannot mix regions from different lattices")
        return self.lattice or other.lattice

    def union(self, other: "Region") -> "Region":
        return Region(self.n, self.indices | other.indices, self._merged_lattice(other))

    def intersection(self, other: "Region") -> "Region":
        return Region(self.n, self.indices & other.indices, self._merged_lattice(other))

    def difference(self, other: "Region") -> "Region":
        return Region(self.n, self.indices - other.indices, self._merged_lattice(other))

    def complement(self) -> "Region":
        return Region(self.n, frozenset(range(self.n)) - self.indices, self.lattice)

    def isdisjoint(self, other: "Region") -> bool:
        return self.indices.isdisjoint(other.indices)

    def __or__(self, other: "Region") -> "Region":
        return self.union(other)

    def __and__(self, other: "Region") -> "Region":
        return self.intersection(other)

    def __sub__(self, other: "Region") -> "Region":
        return self.difference(other)

    def __contains__(self, qubit: int) -> bool:
        return qubit in self.indices

    def __len__(self) -> int:
        return len(self.indices)

    def cells(self) -> set[int]:
        """Cells touched by the region; requires a lattice and cell alignment."""
        if self.lattice is None:
            raise ValueError("region has no lattice")
        lat = self.lattice
        cells = {lat.qubit_cell(q) for q in self.indices}
        for c in cells:
            if any(q not in self.indices for q in lat.cell_qubits(c)):
                raise ValueError(f"region splits cell {c}; cell-aligned region required")
        return cells

    def describe(self) -> str:
        return f"region(size={self.size})"


@dataclass(frozen=True)
class Tripartition:
    """Three pairwise disjoint regions; a leftover environment is allowed."""

    A: Region
    B: Region
    C: Region

    def __post_init__(self) -> None:
        if not (self.A.n == self.B.n == self.C.n):
            raise ValueError("tripartition parts live in different universes")
        if (
            not self.A.isdisjoint(self.B)
            or not self.B.isdisjoint(self.C)
            or not self.A.isdisjoint(self.C)
        ):
            raise ValueError("tripartition parts must be pairwise disjoint")

    @property
    def n(self) -> int:
        return self.A.n

    def union(self) -> Region:
        return self.A | self.B | self.C


@dataclass(frozen=True)
class PartitionSequence:
    """Nested tripartitions (A_i, B_i, C_i) whose unions chain stage to stage."""

    stages: tuple[Tripartition, ...]

    def __post_init__(self) -> None:
        if not self.stages:
            raise ValueError("need at least one stage")
        for i in range(len(self.stages) - 1):
            cur = self.stages[i].union()
            nxt = self.stages[i + 1].A | self.stages[i + 1].B
            if cur.indices != nxt.indices:
                raise ValueError(
                    f"stage {i}: A_i B_i C_i must equal A_{i+1} B_{i+1}"
                )
        last = self.stages[-1].union()
        if last.indices != frozenset(range(last.n)):
            raise ValueError("final stage union must cover the entire system")

    @property
    def n(self) -> int:
        return self.stages[0].n

    def __len__(self) -> int:
        return len(self.stages)

    def __iter__(self):
        return iter(self.stages)


# --- metric helpers -----------------------------------------------------


def ball(lattice: TorusLattice, center: int, r: int) -> Region:
    """Qubits of all cells within metric distance r of the center cell."""
    return Region.from_cells(lattice, lattice.cells_within(center, r))


def min_enclosing_radius(region: Region) -> int:
    """Smallest r so the region fits inside some metric ball of radius r."""
    cells = region.cells()
    if not cells:
        return 0
    lat = region.lattice
    best = None
    for center in range(lat.n_cells):
        dist = lat.cell_distances(center)
        r = max(dist[c] for c in cells)
        if best is None or r < best:
            best = r
    return best


def fits_in_ball(region: Region, r: int) -> bool:
    return min_enclosing_radius(region) <= r


# --- boundary components -------------------------------------------------


def _axis_gap_check(lattice: TorusLattice, cells: set[int]) -> None:
    """Reject regions that touch themselves around the torus.

    For every axis there must be at least one coordinate value no region cell
    touches; only then is the region embeddable in a planar patch and its
    boundary-component count unambiguous.
    """
    touched: list[set[int]] = [set() for _ in range(lattice.D)]
    for c in cells:
        if lattice.placement == "edge":
            for v in lattice.edge_endpoints(c):
                for axis, x in enumerate(v):
                    touched[axis].add(x)
        else:
            for axis, x in enumerate(lattice.site_coords(c)):
                touched[axis].add(x)
    for axis, vals in enumerate(touched):
        if len(vals) >= lattice.dims[axis]:
            raise ValueError(
                f"region wraps around axis {axis}; boundary components undefined"
            )


def boundary_components(region: Region) -> int:
    """Connected components of the region's boundary in the cell adjacency.

    Boundary cells are region cells adjacent to a cell outside the region;
    components are counted by flood fill over the boundary cells. The empty
    region and the full lattice have an empty boundary (0 components).
    Regions wrapping around the torus are rejected.
    """
    cells = region.cells()
    lat = region.lattice
    if not cells or len(cells) == lat.n_cells:
        return 0
    _axis_gap_check(lat, cells)
    boundary = {
        c for c in cells if any(nb not in cells for nb in lat.adjacent_cells(c))
    }
    components = 0
    seen: set[int] = set()
    for start in sorted(boundary):
        if start in seen:
            continue
        components += 1
        stack = [start]
        seen.add(start)
        while stack:
            c = stack.pop()
            for nb in lat.adjacent_cells(c):
                if nb in boundary and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    return components


# --- edge-lattice constructions ------------------------------------------


def _require_edge_2d(lattice: TorusLattice, what: str) -> None:
    if lattice.placement != "edge" or lattice.D != 2:
        raise ValueError(f"{what} requires a 2D edge-placement lattice")


def block_region(lattice: TorusLattice, xs: Iterable[int], ys: Iterable[int]) -> Region:
    """Half-open block: all edges whose base coordinate lies in xs x ys."""
    _require_edge_2d(lattice, "block_region")
    cells = set()
    for x in xs:
        for y in ys:
            cells.add(lattice.edge_index(0, (x, y)))
            cells.add(lattice.edge_index(1, (x, y)))
    return Region.from_cells(lattice, cells)


def rect_region(lattice: TorusLattice, x0: int, y0: int, x1: int, y1: int) -> Region:
    """All edges with both endpoints inside the closed vertex box
    [x0..x1] x [y0..y1]; the box must not wrap (side < L on each axis)."""
    _require_edge_2d(lattice, "rect_region")
    Lx, Ly = lattice.dims
    if x1 < x0 or y1 < y0:
        raise ValueError("rect needs x0 <= x1 and y0 <= y1")
    if x1 - x0 >= Lx or y1 - y0 >= Ly:
        raise ValueError("rect side must be smaller than the lattice")
    cells = set()
    for x in range(x0, x1):
        for y in range(y0, y1 + 1):
            cells.add(lattice.edge_index(0, (x, y)))
    for x in range(x0, x1 + 1):
        for y in range(y0, y1):
            cells.add(lattice.edge_index(1, (x, y)))
    return Region.from_cells(lattice, cells)


def annulus_region(lattice: TorusLattice, cx: int, cy: int, r_in: int, r_out: int) -> Region:
    """Cells at metric distance within [r_in, r_out] of the center cell.

    For edge lattices the center cell is the axis-0 edge based at (cx, cy).
    """
    if r_in < 0 or r_out < r_in:
        raise ValueError("need 0 <= r_in <= r_out")
    if lattice.D != 2:
        raise ValueError("annulus_region is defined for 2D lattices")
    if lattice.placement == "edge":
        center = lattice.edge_index(0, (cx, cy))
    else:
        center = lattice.site_index((cx, cy))
    dist = lattice.cell_distances(center)
    cells = {c for c in range(lattice.n_cells) if r_in <= dist[c] <= r_out}
    return Region.from_cells(lattice, cells)


def _cells_near(lattice: TorusLattice, src: set[int], tgt: set[int], dist: int) -> set[int]:
    """Cells of src within graph distance <= dist of the target set."""
    seen = set(tgt)
    frontier = set(tgt)
    for _ in range(dist):
        nxt = set()
        for c in frontier:
            nxt.update(lattice.adjacent_cells(c))
        nxt -= seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
    return src & seen


def build_med_sequence(
    lattice: TorusLattice,
    stages: int = 3,
    shield: int = 2,
    x_cut: Optional[int] = None,
    y_cut: Optional[int] = None,
) -> PartitionSequence:
    """Nested growth sequence closing the torus in `stages` steps.

    The covered area starts as a block of whole columns, grows column strips
    until the first handle closes, then adds the top-left and finally the
    top-right block so the union is the entire lattice. Each buffer B_i is
    the set of already-covered cells within graph distance `shield` of the
    incoming piece C_i, which makes every stage an exact Markov shield for
    fixed-point codes; shields thinner than 2 leave generator-straddling
    contacts and are rejected.
    """
    _require_edge_2d(lattice, "build_med_sequence")
    Lx, Ly = lattice.dims
    if stages < 3:
        raise ValueError("the construction needs at least 3 stages")
    if shield < 2:
        raise ValueError("shield thickness below 2 cannot screen plaquette terms")
    n_strips = stages - 2
    if x_cut is None:
        x_cut = max(1, min(Lx // 2, Lx - n_strips))
    if y_cut is None:
        y_cut = max(1, Ly // 2)
    if not 1 <= x_cut < Lx:
        raise ValueError(f"x_cut {x_cut} infeasible: need 1 <= x_cut < {Lx}")
    if not 1 <= y_cut < Ly:
        raise ValueError(f"y_cut {y_cut} infeasible: need 1 <= y_cut < {Ly}")
    if Lx - x_cut < n_strips:
        raise ValueError(
            f"{stages} stages need {n_strips} column strips but only "
            f"{Lx - x_cut} columns remain right of x_cut {x_cut}"
        )

    def cells_of(xs: Iterable[int], ys: Iterable[int]) -> set[int]:
        out = set()
        for x in xs:
            for y in ys:
                out.add(lattice.edge_index(0, (x, y)))
                out.add(lattice.edge_index(1, (x, y)))
        return out

    cols = list(range(x_cut, Lx))
    base, extra = divmod(len(cols), n_strips)
    strips = []
    i = 0
    for s in range(n_strips):
        w = base + (1 if s < extra else 0)
        strips.append(cols[i : i + w])
        i += w
    grows = [cells_of(chunk, range(0, y_cut)) for chunk in strips]
    grows.append(cells_of(range(0, x_cut), range(y_cut, Ly)))
    grows.append(cells_of(range(x_cut, Lx), range(y_cut, Ly)))

    covered = cells_of(range(0, x_cut), range(0, y_cut))
    tripartitions = []
    for piece in grows:
        buffer = _cells_near(lattice, covered, piece, shield)
        core = covered - buffer
        tripartitions.append(
            Tripartition(
                Region.from_cells(lattice, core),
                Region.from_cells(lattice, buffer),
                Region.from_cells(lattice, piece),
            )
        )
        covered |= piece
    return PartitionSequence(tuple(tripartitions))


def kitaev_preskill_sectors(
    lattice: TorusLattice, x0: int = 0, y0: int = 0, side: int = 4
) -> Tripartition:
    """Contractible square disk split into three mutually adjacent sectors.

    The disk collects every edge inside the vertex box of the given side; the
    top half is one sector, the bottom half splits left/right at the vertical
    midline, so all three sectors meet at a central point. The disk side must
    leave at least two free vertex columns (side <= L - 2) or the subleading
    entropy terms pick up wrap-around artifacts.
    """
    _require_edge_2d(lattice, "kitaev_preskill_sectors")
    Lx, Ly = lattice.dims
    if side < 2:
        raise ValueError("disk side must be at least 2 cells")
    if side > min(Lx, Ly) - 2:
        raise ValueError(
            f"disk side {side} too large: need side <= L - 2 = {min(Lx, Ly) - 2}"
        )
    half_x = x0 + side / 2
    half_y = y0 + side / 2
    a_cells, b_cells, c_cells = set(), set(), set()
    for x in range(x0, x0 + side):
        for y in range(y0, y0 + side + 1):
            mx, my = x + 0.5, float(y)
            cell = lattice.edge_index(0, (x, y))
            (a_cells if my >= half_y else (b_cells if mx < half_x else c_cells)).add(cell)
    for x in range(x0, x0 + side + 1):
        for y in range(y0, y0 + side):
            mx, my = float(x), y + 0.5
            cell = lattice.edge_index(1, (x, y))
            (a_cells if my >= half_y else (b_cells if mx < half_x else c_cells)).add(cell)
    return Tripartition(
        Region.from_cells(lattice, a_cells),
        Region.from_cells(lattice, b_cells),
        Region.from_cells(lattice, c_cells),
    )


# --- random generators for property tests --------------------------------


def random_partition_sequence(
    n: int, stages: int, rng: random.Random
) -> PartitionSequence:
    """Random structurally valid sequence over n abstract qubits."""
    if stages < 1:
        raise ValueError("need at least one stage")
    if n < 1:
        raise ValueError("need at least one qubit")
    order = list(range(n))
    rng.shuffle(order)
    # nondecreasing union sizes, ending at the full system
    bounds = sorted(rng.randint(1, n) for _ in range(stages - 1)) + [n]
    prev_size = rng.randint(1, bounds[0])
    tris = []
    for bound in bounds:
        grow = order[prev_size:bound]
        split = order[:prev_size]
        picks = rng.sample(split, rng.randint(0, prev_size))
        b = set(picks)
        a = set(split) - b
        tris.append(
            Tripartition(Region.of(n, a), Region.of(n, b), Region.of(n, grow))
        )
        prev_size = bound
    return PartitionSequence(tuple(tris))


def random_connected_region(
    lattice: TorusLattice, n_cells: int, rng: random.Random
) -> Region:
    """Random cell-connected region grown by BFS with shuffled frontiers."""
    if not 1 <= n_cells <= lattice.n_cells:
        raise ValueError("cell count out of range")
    start = rng.randrange(lattice.n_cells)
    chosen = {start}
    frontier = set(lattice.adjacent_cells(start))
    while len(chosen) < n_cells and frontier:
        c = rng.choice(sorted(frontier))
        frontier.discard(c)
        chosen.add(c)
        frontier.update(nb for nb in lattice.adjacent_cells(c) if nb not in chosen)
    return Region.from_cells(lattice, chosen)


# --- region mini-language -------------------------------------------------


def parse_region(lattice: TorusLattice, spec: str) -> Region:
    """Parse one region spec: `rect x0 y0 x1 y1`, `annulus cx cy r_in r_out`,
    `ball cx cy r` (plus a cz before r for 3D lattices), `explicit [i, j, ...]`.

    Errors carry the character position of the offending token.
    """
    text = spec.strip()
    if not text:
        raise ValueError("empty region spec")
    head = text.split(None, 1)[0]
    rest = text[len(head):]

    if head == "explicit":
        open_at = text.find("[")
        if open_at < 0:
            raise ValueError(f"position {len(head)}: expected '[' after 'explicit'")
        close_at = text.find("]", open_at)
        if close_at < 0:
            raise ValueError(f"position {len(text)}: missing closing ']'")
        body = text[open_at + 1 : close_at]
        indices = []
        offset = open_at + 1
        for part in body.split(","):
            token = part.strip()
            if not token:
                continue
            if not token.lstrip("-").isdigit():
                raise ValueError(
                    f"position {offset + part.index(token[0])}: invalid index {token!r}"
                )
            indices.append(int(token))
            offset += len(part) + 1
        try:
            return Region.of(lattice.n_qubits, indices, lattice)
        except ValueError as exc:
            raise ValueError(f"position {open_at}: {exc}") from exc

    args = []
    offset = len(head)
    for part in rest.split():
        at = text.index(part, offset)
        if not part.lstrip("-").isdigit():
            raise ValueError(f"position {at}: expected integer, got {part!r}")
        args.append(int(part))
        offset = at + len(part)

    def need(count: int) -> None:
        if len(args) != count:
            raise ValueError(
                f"position {len(text)}: '{head}' takes {count} integers, got {len(args)}"
            )

    if head == "rect":
        need(4)
        return rect_region(lattice, *args)
    if head == "annulus":
        need(4)
        return annulus_region(lattice, *args)
    if head == "ball":
        if lattice.placement == "edge":
            need(3)
            center = lattice.edge_index(0, (args[0], args[1]))
            radius = args[2]
        else:
            need(lattice.D + 1)
            center = lattice.site_index(tuple(args[: lattice.D]))
            radius = args[lattice.D]
        return ball(lattice, center, radius)
    raise ValueError(f"position 0: unknown region kind {head!r}")
