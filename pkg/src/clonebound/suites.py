"""Randomized verification suites with deterministic seeding.

Each suite draws its trials from a PCG64 stream derived from (seed, suite
index), evaluates a fixed set of inequality or certificate checks per trial,
and reports the number of failures and the worst margin seen. Margins follow
one convention: for an inequality lhs <= rhs the margin is rhs - lhs, for an
equality certificate it is minus the absolute deviation; a check fails when
its margin drops below -tolerance.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import bounds, cloner, geometry, hilbert

DEFAULT_TOL = 1e-9

# Agreement demanded between the z-form and angle-form curve evaluations.
TWO_PATH_TOL = 1e-10

SUITE_NAMES = ("angles", "fidelity", "transition", "cloners", "bounds", "mixed")

__all__ = [
    "DEFAULT_TOL",
    "TWO_PATH_TOL",
    "SUITE_NAMES",
    "SuiteReport",
    "run_suite",
    "run_suites",
    "measurement_deviation_suite",
]


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    trials: int
    failures: int
    worst_margin: float
    seed: int
    wall_time: float

    def to_json_dict(self) -> dict:
        # wall_time is deliberately not serialized: report files must be
        # bit-identical for a fixed seed.
        return {
            "suite": self.suite,
            "trials": self.trials,
            "failures": self.failures,
            "worst_margin": self.worst_margin,
            "seed": self.seed,
        }


class _Stats:
    """Failure counter and worst-margin tracker shared by all suites."""

    def __init__(self):
        self.failures = 0
        self.worst = math.inf

    def add(self, margin: float, tol: float = DEFAULT_TOL):
        if margin < self.worst:
            self.worst = margin
        if margin < -tol:
            self.failures += 1

    def add_check(self, check: geometry.InequalityCheck):
        self.add(check.margin, check.tolerance)


def _suite_rng(seed: int, name: str) -> np.random.Generator:
    entropy = np.random.SeedSequence((int(seed), SUITE_NAMES.index(name)))
    return np.random.Generator(np.random.PCG64(entropy))


def _run_angles(trials: int, rng: np.random.Generator, dim_cap: int) -> _Stats:
    stats = _Stats()
    for _ in range(trials):
        dim = int(rng.integers(2, dim_cap + 1))
        a = hilbert.random_state(dim, rng)
        b = hilbert.random_state(dim, rng)
        rank = int(rng.integers(1, dim + 1))
        proj = hilbert.random_projector(dim, rank, rng)
        stats.add_check(geometry.projector_deviation_check(a, b, proj))
        c = hilbert.random_state(dim, rng)
        stats.add_check(geometry.spherical_triangle_check(a, b, c))
    return stats


def _run_fidelity(trials: int, rng: np.random.Generator, dim_cap: int) -> _Stats:
    stats = _Stats()
    for _ in range(trials):
        dim = int(rng.integers(2, dim_cap + 1))
        chi = hilbert.random_density(dim, rng)
        omega = hilbert.random_density(dim, rng)
        rank = int(rng.integers(1, dim + 1))
        proj = hilbert.random_projector(dim, rank, rng)
        stats.add_check(geometry.mixed_probability_bound_check(chi, omega, proj))
    return stats


def _mixed_ancilla(dim: int, n_terms: int, rng: np.random.Generator) -> np.ndarray:
    weights = rng.dirichlet(np.ones(n_terms))
    anc = np.zeros((dim, dim), dtype=np.complex128)
    for w in weights:
        vec = hilbert.random_state(dim, rng)
        anc += w * np.outer(vec, vec.conj())
    return 0.5 * (anc + anc.conj().T)


def _run_transition(trials: int, rng: np.random.Generator, dim_cap: int) -> _Stats:
    stats = _Stats()
    for trial in range(trials):
        dim_sys = int(rng.integers(2, dim_cap + 1))
        dim_anc = int(rng.integers(2, dim_cap + 1))
        phi = hilbert.random_state(dim_sys, rng)
        psi = hilbert.random_state(dim_sys, rng)
        anc = _mixed_ancilla(dim_anc, int(rng.integers(1, 4)), rng)
        unitary = hilbert.random_unitary(dim_sys * dim_anc, rng)
        # alternate between the rank-1 target form and a general projector
        if trial % 2 == 0:
            target = hilbert.random_state(dim_sys, rng)
            stats.add_check(
                geometry.transition_probability_check(phi, psi, anc, unitary, target)
            )
        else:
            rank = int(rng.integers(1, dim_sys + 1))
            proj = hilbert.random_projector(dim_sys, rank, rng)
            stats.add_check(
                geometry.transition_projector_check(phi, psi, anc, unitary, proj)
            )
    return stats


def _random_task(rng: np.random.Generator) -> cloner.CloneTask:
    z = float(rng.uniform(0.05, 0.95))
    n_in = int(rng.integers(1, 6))
    n_out = int(rng.integers(n_in + 1, 7))
    return cloner.CloneTask(cloner.PreparedPair.from_overlap(z), n_in, n_out)


def _run_cloners(trials: int, rng: np.random.Generator, _dim_cap: int) -> _Stats:
    stats = _Stats()
    for _ in range(trials):
        task = _random_task(rng)
        z = task.pair.z
        floor = cloner.ideal_angle_floor(task)
        sym = cloner.symmetric_cloner(task)
        asym = cloner.asymmetric_cloner(task)
        rand = cloner.split_cloner(task, float(rng.uniform(0.0, floor)))
        for result in (sym, asym, rand):
            stats.add(-cloner.gram_residual(task, result))
            stats.add(-max(result.v_phi.residual, result.v_psi.residual))
            stats.add(result.delta_phi + result.delta_psi - floor)
        stats.add(-abs(asym.errors.re - bounds.re_lower_bound(z, task.n_in, task.n_out)))
        stats.add(-abs(asym.errors.ae - bounds.ae_lower_bound(z, task.n_in, task.n_out)))
        stats.add(-abs(sym.errors.re - bounds.re_symmetric(z, task.n_in, task.n_out)))
        stats.add(sym.errors.re - asym.errors.re)
        stats.add(sym.errors.ae - asym.errors.ae)
        stats.add(rand.errors.re - asym.errors.re)
    return stats


def _run_bounds(trials: int, rng: np.random.Generator, _dim_cap: int) -> _Stats:
    stats = _Stats()
    for _ in range(trials):
        z = float(rng.uniform(0.0, 1.0 - 1e-6))
        n_in = int(rng.integers(1, 6))
        n_out = int(rng.integers(n_in + 1, 8))
        re_low = bounds.re_lower_bound(z, n_in, n_out)
        ae_low = bounds.ae_lower_bound(z, n_in, n_out)
        re_sym = bounds.re_symmetric(z, n_in, n_out)
        stats.add(re_sym - re_low)
        stats.add(z**n_in - re_low)
        stats.add(
            -abs(re_low - bounds.re_lower_bound_from_angles(z, n_in, n_out)),
            TWO_PATH_TOL,
        )
        stats.add(
            -abs(ae_low - bounds.ae_lower_bound_from_angles(z, n_in, n_out)),
            TWO_PATH_TOL,
        )
        stats.add(
            -abs(re_sym - bounds.re_symmetric_from_angles(z, n_in, n_out)),
            TWO_PATH_TOL,
        )
        if re_low >= 1e-12:
            f_val = bounds.f_rel_diff(z, n_in, n_out)
            stats.add(f_val)
            if z > 0.0:
                coherent = bounds.f_rel_diff_from_angles(z, n_in, n_out)
                stats.add(coherent)
    return stats


def _run_mixed(trials: int, rng: np.random.Generator, _dim_cap: int) -> _Stats:
    stats = _Stats()
    for _ in range(trials):
        task = _random_task(rng)
        floor = cloner.ideal_angle_floor(task)
        members = tuple(
            cloner.split_cloner(task, float(s))
            for s in rng.uniform(0.0, floor, 3)
        )
        weights = tuple(float(w) for w in rng.dirichlet(np.ones(3)))
        report = cloner.mixed_machine_report(
            cloner.MachineEnsemble(weights=weights, members=members)
        )
        stats.add(report.re - bounds.re_lower_bound(task.pair.z, task.n_in, task.n_out))
        stats.add(report.ae - bounds.ae_lower_bound(task.pair.z, task.n_in, task.n_out))
    return stats


_RUNNERS = {
    "angles": (_run_angles, 8),
    "fidelity": (_run_fidelity, 6),
    "transition": (_run_transition, 4),
    "cloners": (_run_cloners, 0),
    "bounds": (_run_bounds, 0),
    "mixed": (_run_mixed, 0),
}


def run_suite(name: str, trials: int, seed: int, dim: int = None) -> SuiteReport:
    """Run one named suite and report failures and the worst margin."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}, expected one of {SUITE_NAMES}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    runner, default_dim = _RUNNERS[name]
    dim_cap = default_dim if dim is None else int(dim)
    if default_dim and dim_cap < 2:
        raise ValueError(f"dim must be >= 2, got {dim_cap}")
    rng = _suite_rng(seed, name)
    start = time.perf_counter()
    stats = runner(int(trials), rng, dim_cap)
    elapsed = time.perf_counter() - start
    return SuiteReport(
        suite=name,
        trials=int(trials),
        failures=stats.failures,
        worst_margin=stats.worst,
        seed=int(seed),
        wall_time=elapsed,
    )


def run_suites(names, trials: int, seed: int, dim: int = None):
    """Run several suites in order; each draws an independent stream."""
    return [run_suite(name, trials, seed, dim) for name in names]


def measurement_deviation_suite(
    n_projectors: int = 1000,
    seed: int = 0,
    triples=((0.5, 1, 2), (0.3, 2, 6), (0.7, 3, 10)),
    kind: str = "asymmetric",
) -> SuiteReport:
    """Full-tensor check that single-slot statistics stay within the error size.

    For each task the cloner outputs are expanded to the full n_out-fold
    space; for every random rank-1 outcome and every slot the probability of
    that outcome on the output may deviate from the ideal single-particle
    value by at most the output's error size x_s.
    """
    rng = _suite_rng(seed, "cloners")
    stats = _Stats()
    total = 0
    start = time.perf_counter()
    for z, n_in, n_out in triples:
        task = cloner.CloneTask(cloner.PreparedPair.from_overlap(z), int(n_in), int(n_out))
        if kind == "symmetric":
            result = cloner.symmetric_cloner(task)
        else:
            result = cloner.asymmetric_cloner(task)
        outputs = (
            ("phi", task.pair.phi, cloner.plane_to_full(task, result.v_phi), result.errors.x_phi),
            ("psi", task.pair.psi, cloner.plane_to_full(task, result.v_psi), result.errors.x_psi),
        )
        dim = task.pair.phi.size
        for _ in range(int(n_projectors)):
            outcome = hilbert.random_state(dim, rng)
            for _, single, full, x_err in outputs:
                ideal = abs(hilbert.inner_product(outcome, single)) ** 2
                for slot in range(task.n_out):
                    observed = cloner.slot_probability(full, outcome, slot, dim)
                    stats.add(x_err - abs(observed - ideal))
                    total += 1
    elapsed = time.perf_counter() - start
    return SuiteReport(
        suite="measurement",
        trials=total,
        failures=stats.failures,
        worst_margin=stats.worst,
        seed=int(seed),
        wall_time=elapsed,
    )
