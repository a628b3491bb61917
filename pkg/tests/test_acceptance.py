"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines inline; they are
also collected into an "acceptance criteria" section of the terminal summary.
"""
import contextlib
import io
import itertools
import math
import subprocess
import sys
import time
from math import comb, factorial

import numpy as np
import pytest

import conftest
from epr_universe import families
from epr_universe.cli import run
from epr_universe.cosmology import expansion_series, flatness_score
from epr_universe.macrotime import (
    DecayPolicy,
    aligned_cutoffs,
    entropy_series,
    generate_chain,
    resolution_entropy,
)
from epr_universe.spectral import StateVector, fourier_expand, resum, spectral_basis
from epr_universe.symmetry import (
    automorphisms,
    brute_force_automorphisms,
    cyclic_group,
    frucht_realize,
    group_order,
    klein_four_group,
    symmetric_group,
    trivial_group,
)
from epr_universe.universe import (
    all_complexes,
    aspects_extending,
    join_in_aspect,
    leq,
    make_complex,
    meet,
    parse,
    serialize,
)

SEEDS = range(100)


@contextlib.contextmanager
def criterion(number, title, limit=None):
    """Time the body, then record and print one PASS/FAIL line.

    The body fills ``result["ok"]`` and ``result["detail"]``; an exception
    counts as a failure and is re-raised.
    """
    result = {"ok": False, "detail": ""}
    start = time.perf_counter()
    try:
        yield result
    except Exception as exc:
        result["ok"] = False
        result["detail"] = f"{type(exc).__name__}: {exc}"
        raise
    finally:
        elapsed = time.perf_counter() - start
        in_time = limit is None or elapsed < limit
        budget = f"{elapsed:.2f} s" + (f" < {limit} s" if limit else "")
        status = "PASS" if result["ok"] and in_time else "FAIL"
        line = f"{status} [{number:2d}] {title}: {result['detail']} ({budget})"
        conftest.ACCEPTANCE[number] = line
        print(line)
    assert result["ok"], line
    assert in_time, line


@pytest.fixture(scope="module")
def universe():
    u = all_complexes(4)
    assert len(u) == 113
    return u


@pytest.fixture(scope="module")
def order_matrix(universe):
    return np.array([[leq(a, b) for b in universe] for a in universe])


def test_01_poset_laws(universe):
    with criterion(1, "poset laws over the N=4 universe", limit=5) as r:
        le = np.array([[leq(a, b) for b in universe] for a in universe])
        n = len(universe)
        reflexive = int(n - le.diagonal().sum())
        antisymmetric = int(np.sum(le & le.T & ~np.eye(n, dtype=bool)))
        # transitivity: any a<=b, b<=c with not a<=c
        composed = (le.astype(int) @ le.astype(int)) > 0
        transitive = int(np.sum(composed & ~le))
        bad = reflexive + antisymmetric + transitive
        r["ok"] = bad == 0
        r["detail"] = f"{bad} violations over {n} complexes"


def test_02_join_oracle(universe, order_matrix):
    with criterion(2, "join against brute-force minimum", limit=60) as r:
        aspects = [i for i, a in enumerate(universe) if len(a.objects) == 4]
        mismatches = triples = 0
        for ai in aspects:
            below = np.flatnonzero(order_matrix[:, ai])
            for i, j in itertools.product(below, repeat=2):
                uppers = [k for k in below if order_matrix[i, k] and order_matrix[j, k]]
                minimum = [k for k in uppers if all(order_matrix[k, u] for u in uppers)]
                got = join_in_aspect(universe[ai], [universe[i], universe[j]])
                triples += 1
                if len(minimum) != 1 or universe[minimum[0]] != got:
                    mismatches += 1
        r["ok"] = mismatches == 0
        r["detail"] = f"{mismatches} mismatches over {triples} triples"


def test_03_meet_maximality(universe, order_matrix):
    with criterion(3, "meet returns every maximal common lower bound", limit=30) as r:
        index = {c: i for i, c in enumerate(universe)}
        strictly = order_matrix & ~np.eye(len(universe), dtype=bool)
        wrong = 0
        for ei, ai in itertools.product(range(len(universe)), repeat=2):
            common = order_matrix[:, ei] & order_matrix[:, ai]
            dominated = (strictly[common][:, common]).any(axis=1)
            expected = set(np.flatnonzero(common)[~dominated])
            got = {index[b] for b in meet(universe[ei], universe[ai]).bounds}
            wrong += got != expected
        edge = make_complex([0, 1], [(0, 1)], n_phi=2)
        edgeless = make_complex([0, 1], [], n_phi=2)
        example = meet(edge, edgeless)
        r["ok"] = wrong == 0 and example.unique is False
        r["detail"] = (f"{wrong} wrong bound sets over {len(universe) ** 2} pairs; "
                       f"edge vs edgeless aspect unique={example.unique}")


def test_04_aspect_counting():
    with criterion(4, "aspect count formula against enumeration, N <= 5") as r:
        bad = checked = 0
        for n in range(1, 6):
            for e in all_complexes(n):
                expected = 2 ** (comb(n, 2) - comb(len(e.objects), 2))
                listed = aspects_extending(e, enumerate_all=True, limit=comb(n, 2)).aspects
                bad += not (len(listed) == expected == aspects_extending(e).count)
                bad += not all(leq(e, a) for a in listed)
                checked += 1
        r["ok"] = bad == 0
        r["detail"] = f"{bad} mismatches over {checked} complexes"


def test_05_automorphisms(universe):
    with criterion(5, "automorphism group orders", limit=120) as r:
        failures = []
        for n in range(3, 9):
            if automorphisms(families.cycle(n)).order() != 2 * n:
                failures.append(f"C_{n}")
        for n in range(1, 7):
            if automorphisms(families.complete(n)).order() != factorial(n):
                failures.append(f"K_{n}")
        if automorphisms(families.path(3)).order() != 2:
            failures.append("path_3")
        petersen = families.petersen()
        if not automorphisms(petersen).order() == brute_force_automorphisms(petersen).order() == 120:
            failures.append("Petersen")
        for e in universe:
            if automorphisms(e).order() != brute_force_automorphisms(e).order():
                failures.append(serialize(e))
        r["ok"] = not failures
        r["detail"] = f"{len(failures)} mismatches" + (f" {failures[:3]}" if failures else "")


def test_06_frucht():
    groups = {"trivial": trivial_group(), "Z2": cyclic_group(2), "Z3": cyclic_group(3),
              "Z4": cyclic_group(4), "Z2xZ2": klein_four_group(), "S3": symmetric_group(3)}
    with criterion(6, "Frucht realization of six small groups", limit=60) as r:
        got = {name: automorphisms(frucht_realize(g)).order() for name, g in groups.items()}
        want = {name: group_order(g) for name, g in groups.items()}
        r["ok"] = got == want
        r["detail"] = ", ".join(f"{k} {got[k]}/{want[k]}" for k in groups)


def test_07_spectral():
    with criterion(7, "Laplacian spectra, orthonormality, Parseval") as r:
        eig_err = ortho_err = 0.0
        for n in range(3, 17):
            for e, want in ((families.cycle(n), 2 - 2 * np.cos(2 * np.pi * np.arange(n) / n)),
                            (families.complete(n), np.array([0.0] + [float(n)] * (n - 1)))):
                b = spectral_basis(e)
                eig_err = max(eig_err, np.max(np.abs(np.sort(b.eigenvalues) - np.sort(want))))
                ortho_err = max(ortho_err, np.max(np.abs(b.vectors.T @ b.vectors - np.eye(n))))
        parseval_err = trip_err = 0.0
        rng = np.random.default_rng(7)
        carriers = [families.cycle(16), families.petersen(), families.gnp(20, 0.3, 4)]
        for i in range(100):
            e = carriers[i % len(carriers)]
            b = spectral_basis(e)
            s = StateVector(e, rng.normal(size=len(e)))
            f = fourier_expand(s, b)
            parseval_err = max(parseval_err, abs(np.sum(f.coefficients ** 2) - s.norm ** 2))
            trip_err = max(trip_err, np.max(np.abs(resum(f, b).amplitudes - s.amplitudes)))
        r["ok"] = eig_err <= 1e-9 and ortho_err <= 1e-9 and parseval_err <= 1e-10 and trip_err <= 1e-10
        r["detail"] = (f"eigenvalues {eig_err:.1e}, orthonormality {ortho_err:.1e}, "
                       f"Parseval {parseval_err:.1e}, round-trip {trip_err:.1e}")


def test_08_resolution_entropy():
    with criterion(8, "resolution entropy non-decreasing, log2(32/8) = 2") as r:
        negative = chains = 0
        for seed, (removals, steps) in itertools.product(range(10), [(1, 5), (2, 4), (3, 3), (4, 7)]):
            chain = generate_chain(families.cycle(32), None, DecayPolicy(removals, steps, seed))
            negative += sum(d < 0 for d in entropy_series(chain, "resolution").deltas)
            chains += 1
        chain = generate_chain(families.cycle(32), None, DecayPolicy(4, 7, 42))
        value = resolution_entropy(chain, chain.sizes.index(8))
        r["ok"] = negative == 0 and value == 2.0
        r["detail"] = f"{negative} negative steps over {chains} chains; 32->8 gives {value}"


def dft_delta_entropy(n, k):
    """Entropy of a delta on C_n low-passed to the block-aligned k lowest modes."""
    if k == n:
        modes = range(n)
    else:
        modes = [0] + [m for j in range(1, (k - 1) // 2 + 1) for m in (j, -j)]
    x = np.arange(n)
    psi = sum(np.exp(2j * np.pi * m * x / n) for m in modes).real / n
    p = psi ** 2 / np.sum(psi ** 2)
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


def c64_chain(seed):
    return generate_chain(families.cycle(64), None, DecayPolicy(4, 7, seed))


def test_09_diffusion_entropy():
    with criterion(9, "diffusion entropy on C_64, 100 seeds", limit=300) as r:
        seed42 = c64_chain(42)
        oracle = [dft_delta_entropy(64, k) for k in aligned_cutoffs(seed42)]
        oracle_err = float(np.max(np.abs(np.array(entropy_series(seed42, "diffusion").values) - oracle)))
        fractions = [entropy_series(c64_chain(s), "diffusion").monotone_fraction for s in SEEDS]
        mean = float(np.mean(fractions))
        r["ok"] = oracle_err <= 1e-9 and mean >= 0.95
        r["detail"] = f"seed-42 oracle error {oracle_err:.1e}; mean monotone fraction {mean:.3f} >= 0.95"


def test_10_expansion():
    with criterion(10, "spread expansion on C_64, 100 seeds") as r:
        mean = float(np.mean([expansion_series(c64_chain(s)).monotone_fraction for s in SEEDS]))
        one_mode = generate_chain(families.cycle(64), None, DecayPolicy(9, 7, 42))
        report = expansion_series(one_mode)
        closed = math.sqrt(sum(min(j, 64 - j) ** 2 for j in range(64)) / 64)
        err = abs(report.spread_series[-1] - closed)
        r["ok"] = mean >= 0.95 and report.cutoff_series[-1] == 1 and err <= 1e-9
        r["detail"] = f"mean monotone fraction {mean:.3f} >= 0.95; sigma at K=1 error {err:.1e}"


def test_11_flatness():
    with criterion(11, "flatness of cycles, complete graphs and star_5") as r:
        flat = all(flatness_score(families.cycle(n)) == 1.0 and flatness_score(families.complete(n)) == 1.0
                   for n in range(3, 11))
        star = flatness_score(families.star(5))
        r["ok"] = flat and star < 1.0
        r["detail"] = f"C_n and K_n flat for n=3..10: {flat}; star_5 {star:.3f}"


def test_12_determinism_and_formats(universe, tmp_path):
    with criterion(12, "byte-identical CLI output, JSON round-trip") as r:
        source = tmp_path / "c32.json"
        out = io.StringIO()
        run(["gen", "cycle", "32"], stdout=out, stderr=io.StringIO())
        source.write_text(out.getvalue())
        argv = [sys.executable, "-m", "epr_universe.cli", "chain", "--in", str(source),
                "--removals", "4", "--steps", "7", "--seed", "42", "--measure", "diffusion"]
        runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
        identical = runs[0] == runs[1] and len(runs[0]) > 0
        broken = sum(parse(serialize(e)) != e for e in universe)
        r["ok"] = identical and broken == 0
        r["detail"] = f"two runs identical: {identical}; {broken} round-trip failures over {len(universe)}"
