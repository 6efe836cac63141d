"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest -v tests/test_acceptance.py` (or `-s` to see the lines
inline). Tolerances are pinned here and nowhere else.
"""

import json
import math
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from entlab import cli, dense, entropy, geometry, models, pauli
from entlab.geometry import Region, Tripartition, build_med_sequence, kitaev_preskill_sectors


@contextmanager
def criterion(num, desc):
    try:
        yield
    except Exception:
        print(f"criterion {num:02d} FAIL - {desc}")
        raise
    print(f"criterion {num:02d} PASS - {desc}")


def small_models(rng):
    """Stream of stabilizer groups on at most 10 qubits."""
    named = list(models.named_small_codes().values())
    toric2, _ = models.toric_code(2)
    while True:
        pick = rng.random()
        if pick < 0.25:
            yield named[rng.randrange(len(named))]
        elif pick < 0.35:
            yield toric2
        else:
            n = rng.randint(2, 10)
            s = rng.randint(0, n)
            yield models.random_stabilizer_code(n, s, rng.getrandbits(32))


def test_c01_oracle_equivalence():
    with criterion(1, "stabilizer entropy equals dense oracle on 200 random pairs"):
        rng = random.Random(1001)
        start = time.monotonic()
        stream = small_models(rng)
        pairs = 0
        worst = 0.0
        while pairs < 200:
            group = next(stream)
            state = dense.stabilizer_to_dense(group)
            for _ in range(4):
                if pairs >= 200:
                    break
                region = [q for q in range(group.n) if rng.random() < 0.5]
                stab = entropy.entropy_bits(group, region)
                dn = dense.von_neumann_entropy(dense.partial_trace(state, region))
                worst = max(worst, abs(dn - stab))
                pairs += 1
        elapsed = time.monotonic() - start
        assert worst <= 1e-9, f"worst gap {worst}"
        assert elapsed < 60, f"took {elapsed:.1f}s"


def test_c02_ssa_nonnegative():
    with criterion(2, "conditional mutual information >= 0 on 1000 random draws"):
        rng = random.Random(1002)
        start = time.monotonic()
        for _ in range(1000):
            n = rng.randint(4, 14)
            s = rng.randint(0, n)
            group = models.random_stabilizer_code(n, s, rng.getrandbits(32))
            qubits = list(range(n))
            rng.shuffle(qubits)
            ca, cb, cc = sorted(rng.sample(range(1, n + 1), k=3))
            tri = Tripartition(
                Region.of(n, qubits[:ca]),
                Region.of(n, qubits[ca:cb]),
                Region.of(n, qubits[cb:cc]),
            )
            value = entropy.cmi(group, tri)
            assert isinstance(value, int)
            assert value >= 0
        assert time.monotonic() - start < 60


def test_c03_telescoping_identity():
    with criterion(3, "telescoping residual is exactly zero"):
        for L in (4, 6):
            group, lattice = models.toric_code(L)
            seq = build_med_sequence(lattice)
            assert entropy.telescoping_residual(group, seq) == 0
        rng = random.Random(1003)
        for _ in range(100):
            n = rng.randint(4, 16)
            s = rng.randint(0, n)
            group = models.random_stabilizer_code(n, s, rng.getrandbits(32))
            seq = geometry.random_partition_sequence(n, rng.randint(1, 5), rng)
            assert entropy.telescoping_residual(group, seq) == 0


def test_c04_med_bound_saturation():
    with criterion(4, "Markov bound holds; toric rhs = 2 with zero slack, all L"):
        for L in (3, 4, 5, 6):
            group, lattice = models.toric_code(L)
            verdict = entropy.med_bound(group, build_med_sequence(lattice))
            assert verdict.holds
            assert verdict.lhs == 2 and verdict.rhs == 2 and verdict.slack == 0
        rng = random.Random(1004)
        for _ in range(100):
            n = rng.randint(4, 14)
            s = rng.randint(0, n)
            group = models.random_stabilizer_code(n, s, rng.getrandbits(32))
            seq = geometry.random_partition_sequence(n, rng.randint(1, 4), rng)
            assert entropy.med_bound(group, seq).holds


def test_c05_tee_and_degeneracy_bound():
    with criterion(5, "toric TEE = 1 exactly; k <= 2 gamma saturates; stack doubles"):
        for L in (4, 5, 6, 8):
            group, lattice = models.toric_code(L)
            side = min(4, L - 2)
            tri = kitaev_preskill_sectors(lattice, side=side)
            gamma = entropy.tee_kitaev_preskill(group, tri)
            assert gamma == 1, f"L={L} side={side}: gamma={gamma}"
            verdict = entropy.degeneracy_bound(group, gamma)
            assert verdict.holds and verdict.lhs == 2 and verdict.rhs == 2
        group, lattice = models.toric_code(6)
        double = models.stacked(group, group)
        tri = kitaev_preskill_sectors(lattice, side=4)
        lifted = Tripartition(
            *(
                Region.of(double.n, set(r.indices) | {q + group.n for q in r.indices})
                for r in (tri.A, tri.B, tri.C)
            )
        )
        gamma2 = entropy.tee_kitaev_preskill(double, lifted)
        assert gamma2 == 2
        verdict = entropy.degeneracy_bound(double, gamma2)
        assert verdict.holds and verdict.lhs == 4 and verdict.rhs == 4


def test_c06_tqo_condition():
    with criterion(6, "toric passes TQO at r=1; repetition fails with gap 2"):
        group, lattice = models.toric_code(4)
        verdict = pauli.tqo_check(group, lattice, 1)
        assert verdict.holds and verdict.lhs == 0.0

        rep = models.repetition_code(5)
        verdict = pauli.tqo_check(rep, models.ring_lattice(5), 0)
        assert not verdict.holds
        assert verdict.lhs == 2.0

        v0 = np.zeros(32)
        v0[0] = 1.0
        v1 = np.zeros(32)
        v1[-1] = 1.0
        off, diag = dense.tqo_epsilon([v0, v1], [0])
        assert diag == pytest.approx(2.0, abs=1e-12)

        toric2, _ = models.toric_code(2)
        states = dense.code_basis_states(toric2)
        for edge in range(8):
            off, diag = dense.tqo_epsilon(states, [edge])
            assert max(off, diag) < 1e-9


def test_c07_partition_bound():
    with criterion(7, "partition bound holds on toric; repetition rejected at d=1"):
        rng = random.Random(1007)
        for L in (4, 5):
            group, _ = models.toric_code(L)
            for _ in range(20):
                parts = cli.random_partition(group.n, L - 1, rng)
                verdict = entropy.partition_bound(group, parts, d=L)
                assert verdict.holds and verdict.lhs == 2
        rep = models.repetition_code(5)
        with pytest.raises(ValueError):
            entropy.partition_bound(rep, [{i} for i in range(5)], d=1)


def test_c08_brute_force_distance():
    with criterion(8, "brute-force distance: toric L=3 -> 3, five-qubit -> 3"):
        start = time.monotonic()
        group, _ = models.toric_code(3)
        assert pauli.brute_force_distance(group) == 3
        assert time.monotonic() - start < 300
        start = time.monotonic()
        assert pauli.brute_force_distance(models.five_qubit_code()) == 3
        assert time.monotonic() - start < 300


def test_c09_cubic_code_growth():
    with criterion(9, "cubic-code k(L) grows linearly on L in {2,4,8}"):
        start = time.monotonic()
        pinned = {2: 6, 4: 14, 8: 30}  # frozen after first rank derivation
        ks = {}
        for L in (2, 4, 8):
            group, _ = models.haah_cubic_code(L)
            assert group.n == 2 * L**3
            ks[L] = group.k
        assert ks == pinned
        fit = entropy.fit_scaling(sorted(ks.items()), form="proportional")
        assert fit.coefficients[0] > 0
        # the pinned values sit exactly on k = 4L - 2
        assert all(k == 4 * L - 2 for L, k in ks.items())
        assert time.monotonic() - start < 120


def test_c10_area_law_fit():
    with criterion(10, "toric square entropies fit S = a1*l - 1 exactly"):
        group, lattice = models.toric_code(8)
        samples = []
        for l in range(2, 7):
            region = geometry.rect_region(lattice, 0, 0, l, l)
            assert geometry.boundary_components(region) == 1
            samples.append((l, entropy.entropy_bits(group, region)))
        assert [s[1] for s in samples] == [7, 11, 15, 19, 23]
        fit = entropy.fit_scaling(samples, form="linear")
        assert fit.residual_norm < 1e-9
        assert abs(fit.coefficients[1] + 1.0) < 1e-9  # intercept -1
        assert abs(fit.gamma_hat - 1.0) < 1e-9


def test_c11_fannes_inequality():
    with criterion(11, "entropy continuity bound holds on 500 qubit pairs"):
        rng = np.random.default_rng(1011)
        checked = 0
        violations = 0
        while checked < 500:
            a = dense.random_density_matrix(1, rng)
            b = dense.random_density_matrix(1, rng)
            eps = dense.trace_distance(a, b)
            if eps > 1 / math.e:
                continue
            gap = abs(dense.von_neumann_entropy(a) - dense.von_neumann_entropy(b))
            if gap > dense.fannes_bound(eps, 2) + 1e-9:
                violations += 1
            checked += 1
        assert violations == 0


def test_c12_selfcheck_determinism(tmp_path):
    with criterion(12, "two CLI self-check runs are byte-identical"):
        out1 = tmp_path / "run1"
        out2 = tmp_path / "run2"
        assert cli.main(["--selfcheck", "--seed", "123", "--out", str(out1)]) == 0
        assert cli.main(["--selfcheck", "--seed", "123", "--out", str(out2)]) == 0
        b1 = (out1 / "selfcheck.json").read_bytes()
        b2 = (out2 / "selfcheck.json").read_bytes()
        assert b1 == b2
        payload = json.loads(b1)
        assert payload["violations"] == 0
        assert payload["tool"]["version"]
