"""Coplanar cloner constructions and error accounting for a two-state set.

A cloning task fixes two prescribed single-particle states, the number of
identically prepared inputs n_in, and the number of outputs n_out > n_in. The
pair is rephased once so its overlap z is real and nonnegative; after that
every quantity depends on the pair only through z.

Cloner outputs are represented in the canonical orthonormal frame of the
plane spanned by the two ideal product outputs phi^(x L) and psi^(x L):
e1 is the phi ray and e2 completes the frame with a positive second
coordinate for the psi ray. A cloner is the pair of its two outputs in that
frame. Existence of a unitary realizing the map is certified by preservation
of the pair Gram matrix (inputs and outputs both overlap z**n_in), so no
d**n_out unitary is ever materialized.

The split parametrization walks the family that meets the angle-sum floor
with equality: the phi output sits at polar angle `split` and the psi output
at `delta_in + split`, which keeps their mutual angle at delta_in exactly
while the two error angles are `split` and `floor - split`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hilbert
from .bounds import one_minus_pow
from .hilbert import DegeneratePairError

# Error sizes and certificates are asserted at this tolerance throughout.
CERT_TOL = 1e-9

# Pairs with overlap this close to 1 are treated as collinear.
_DEGENERATE_Z = 1.0 - 1e-12

__all__ = [
    "CERT_TOL",
    "PreparedPair",
    "CloneTask",
    "PlaneVector",
    "ErrorReport",
    "ClonerResult",
    "MachineEnsemble",
    "BruteForceResult",
    "canonical_plane",
    "plane_coords",
    "plane_to_full",
    "decompose_output",
    "ideal_angle_floor",
    "split_cloner",
    "symmetric_cloner",
    "asymmetric_cloner",
    "error_report",
    "gram_residual",
    "mixed_machine_report",
    "brute_force_min_re",
    "slot_probability",
]


@dataclass(frozen=True, eq=False)
class PreparedPair:
    """Two unit states rephased so that <phi|psi> = z is real in [0, 1]."""

    phi: np.ndarray
    psi: np.ndarray
    z: float

    @classmethod
    def from_states(cls, phi, psi) -> "PreparedPair":
        phi = hilbert.as_state(phi)
        psi = hilbert.as_state(psi)
        if phi.size != psi.size:
            raise ValueError("the two prescribed states must share one dimension")
        overlap = hilbert.inner_product(phi, psi)
        if abs(overlap) > 1e-14:
            psi = psi * np.exp(-1j * np.angle(overlap))
        return cls(phi=phi, psi=psi, z=min(1.0, abs(overlap)))

    @classmethod
    def from_overlap(cls, z: float, dim: int = 2) -> "PreparedPair":
        """Canonical pair with the requested overlap: phi = |0>, psi in span{|0>,|1>}."""
        z = float(z)
        if not 0.0 <= z <= 1.0:
            raise ValueError(f"overlap must lie in [0, 1], got {z!r}")
        if dim < 2:
            raise ValueError("a two-state set needs dimension >= 2")
        psi = np.zeros(dim, dtype=np.complex128)
        psi[0] = z
        psi[1] = math.sqrt(max(0.0, (1.0 - z) * (1.0 + z)))
        return cls(phi=hilbert.basis_state(0, dim), psi=psi, z=z)


@dataclass(frozen=True, eq=False)
class CloneTask:
    """A prepared pair plus copy counts n_in -> n_out and the blank slot state."""

    pair: PreparedPair
    n_in: int
    n_out: int
    blank: np.ndarray = None

    def __post_init__(self):
        if not isinstance(self.n_in, int) or not isinstance(self.n_out, int):
            raise ValueError("copy counts must be integers")
        if self.n_in < 1:
            raise ValueError(f"input copy count must be >= 1, got {self.n_in}")
        if self.n_out <= self.n_in:
            raise ValueError(
                f"output count {self.n_out} must exceed input count {self.n_in}"
            )
        blank = self.blank
        if blank is None:
            blank = hilbert.basis_state(0, self.pair.phi.size)
        blank = hilbert.as_state(blank)
        if blank.size != self.pair.phi.size:
            raise ValueError("blank state dimension must match the pair")
        object.__setattr__(self, "blank", blank)

    @property
    def n_blank(self) -> int:
        return self.n_out - self.n_in

    @property
    def delta_in(self) -> float:
        """Angle between the n_in-fold inputs: arccos(z**n_in)."""
        return math.acos(min(1.0, self.pair.z**self.n_in))

    @property
    def delta_out(self) -> float:
        """Angle between the ideal n_out-fold outputs: arccos(z**n_out)."""
        return math.acos(min(1.0, self.pair.z**self.n_out))

    @property
    def gram_target(self) -> float:
        """Inner product every realizable cloner must preserve: z**n_in."""
        return self.pair.z**self.n_in

    @property
    def denominator(self) -> float:
        """sin of the ideal output separation, sqrt(1 - z**(2 n_out))."""
        return math.sqrt(one_minus_pow(self.pair.z, 2 * self.n_out))


@dataclass(frozen=True)
class PlaneVector:
    """Unit vector written in the canonical frame plus an off-plane remainder.

    c1 and c2 are the coefficients along e1 and e2; residual >= 0 is the norm
    of whatever lies outside the plane, so |c1|^2 + |c2|^2 + residual^2 = 1.
    """

    c1: complex
    c2: complex
    residual: float = 0.0

    def __post_init__(self):
        if self.residual < -1e-15:
            raise ValueError("off-plane residual must be nonnegative")
        total = abs(self.c1) ** 2 + abs(self.c2) ** 2 + self.residual**2
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"plane vector norm {total!r} deviates from 1")


@dataclass(frozen=True)
class ErrorReport:
    """Error sizes of one cloner: x_s = sin of the angle to the ideal s ray."""

    x_phi: float
    x_psi: float
    ae: float
    re: float
    denom: float


@dataclass(frozen=True)
class ClonerResult:
    kind: str
    v_phi: PlaneVector
    v_psi: PlaneVector
    delta_phi: float
    delta_psi: float
    errors: ErrorReport


@dataclass(frozen=True)
class MachineEnsemble:
    """Convex mixture of cloners sharing one task, weighted by machine weights."""

    weights: tuple
    members: tuple

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        members = tuple(self.members)
        if len(weights) != len(members) or not members:
            raise ValueError("weights and members must be nonempty and aligned")
        if min(weights) < 0.0:
            raise ValueError("machine weights must be nonnegative")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise ValueError("machine weights must sum to 1")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "members", members)


@dataclass(frozen=True)
class BruteForceResult:
    """Minimum relative error seen across a scan of realizable cloners."""

    min_re: float
    best_split: float
    grid_min: float
    over_floor_min: float
    off_plane_min: float


def _require_cloneable(task: CloneTask) -> None:
    if task.pair.z >= _DEGENERATE_Z:
        raise DegeneratePairError(
            "cloner constructions are undefined for collinear pairs (z = 1)"
        )


def canonical_plane(task: CloneTask):
    """Full-space orthonormal frame (e1, e2) of the ideal output plane.

    e1 is phi^(x n_out) and e2 is chosen so that psi^(x n_out) has coordinates
    (z**n_out, sqrt(1 - z**(2 n_out))) with a positive second entry. Requires
    the full tensor dimension to stay under the size cap.
    """
    _require_cloneable(task)
    phi_out = hilbert.tensor_power(task.pair.phi, task.n_out)
    psi_out = hilbert.tensor_power(task.pair.psi, task.n_out)
    return hilbert.gram_schmidt_pair(phi_out, psi_out)


def plane_coords(task: CloneTask, vector) -> PlaneVector:
    """Coordinates of a full-space unit vector in the canonical frame."""
    e1, e2 = canonical_plane(task)
    vec = hilbert.as_state(vector)
    if vec.size != e1.size:
        raise ValueError("vector does not live in the n_out-fold space")
    c1 = hilbert.inner_product(e1, vec)
    c2 = hilbert.inner_product(e2, vec)
    # norm of the actual remainder vector; the alternative 1 - |c1|^2 - |c2|^2
    # turns rounding noise into a sqrt-amplified spurious residual
    remainder = vec - c1 * e1 - c2 * e2
    return PlaneVector(c1=c1, c2=c2, residual=float(np.linalg.norm(remainder)))


def plane_to_full(task: CloneTask, vector: PlaneVector) -> np.ndarray:
    """Materialize an in-plane PlaneVector as a full n_out-fold state vector."""
    if vector.residual > 1e-9:
        raise ValueError("only in-plane vectors can be materialized exactly")
    e1, e2 = canonical_plane(task)
    full = vector.c1 * e1 + vector.c2 * e2
    return full / np.linalg.norm(full)


def decompose_output(output, ideal_base):
    """Split an output against the ideal ray, allowing a trailing machine factor.

    Args:
        output: unit vector whose dimension is a multiple of the base's.
        ideal_base: the ideal product state, e.g. phi^(x n_out).

    Returns:
        (parallel_norm, perp_norm): the norm of the component of the form
        ideal_base (x) q and the norm of the remainder. Their squares sum to 1.
    """
    out = hilbert.as_state(output)
    base = hilbert.as_state(ideal_base)
    if out.size % base.size != 0:
        raise ValueError(
            f"output dimension {out.size} is not a multiple of {base.size}"
        )
    block = out.reshape(base.size, -1)
    machine_part = base.conj() @ block
    parallel = min(1.0, float(np.linalg.norm(machine_part)))
    remainder = block - np.outer(base, machine_part)
    return parallel, float(np.linalg.norm(remainder))


def ideal_angle_floor(task: CloneTask) -> float:
    """Least possible sum of the two error angles: delta_out - delta_in."""
    return task.delta_out - task.delta_in


def _report_from_angles(task: CloneTask, delta_phi: float, delta_psi: float) -> ErrorReport:
    denom = task.denominator
    if denom < CERT_TOL:
        raise DegeneratePairError("relative error is undefined at z = 1")
    x_phi = math.sin(delta_phi)
    x_psi = math.sin(delta_psi)
    ae = x_phi + x_psi
    return ErrorReport(x_phi=x_phi, x_psi=x_psi, ae=ae, re=ae / denom, denom=denom)


def _build_split(task: CloneTask, split: float, kind: str) -> ClonerResult:
    _require_cloneable(task)
    floor = ideal_angle_floor(task)
    theta_phi = split
    theta_psi = task.delta_in + split
    v_phi = PlaneVector(
        c1=complex(math.cos(theta_phi)), c2=complex(math.sin(theta_phi))
    )
    v_psi = PlaneVector(
        c1=complex(math.cos(theta_psi)), c2=complex(math.sin(theta_psi))
    )
    delta_phi = split
    delta_psi = max(0.0, floor - split)
    return ClonerResult(
        kind=kind,
        v_phi=v_phi,
        v_psi=v_psi,
        delta_phi=delta_phi,
        delta_psi=delta_psi,
        errors=_report_from_angles(task, delta_phi, delta_psi),
    )


def split_cloner(task: CloneTask, split: float) -> ClonerResult:
    """Floor-saturating cloner with error angles (split, floor - split)."""
    _require_cloneable(task)
    floor = ideal_angle_floor(task)
    if not 0.0 <= split <= floor + 1e-12:
        raise ValueError(
            f"split {split!r} outside the admissible range [0, {floor!r}]"
        )
    return _build_split(task, min(float(split), floor), "custom-split")


def symmetric_cloner(task: CloneTask) -> ClonerResult:
    """Cloner erring equally on both states: each angle is half the floor."""
    _require_cloneable(task)
    return _build_split(task, 0.5 * ideal_angle_floor(task), "symmetric")


def asymmetric_cloner(task: CloneTask, perfect: str = "phi") -> ClonerResult:
    """Cloner copying one state exactly, loading the whole floor on the other."""
    _require_cloneable(task)
    if perfect == "phi":
        split = 0.0
    elif perfect == "psi":
        split = ideal_angle_floor(task)
    else:
        raise ValueError(f"perfect must be 'phi' or 'psi', got {perfect!r}")
    return _build_split(task, split, "asymmetric")


def _ideal_plane_rays(task: CloneTask):
    z_out = task.pair.z**task.n_out
    return (1.0 + 0.0j, 0.0j), (complex(z_out), complex(task.denominator))


def _error_size(task: CloneTask, output, ideal_ray: str) -> float:
    if isinstance(output, PlaneVector):
        ray_phi, ray_psi = _ideal_plane_rays(task)
        ray = ray_phi if ideal_ray == "phi" else ray_psi
        parallel = abs(ray[0].conjugate() * output.c1 + ray[1].conjugate() * output.c2)
        parallel = min(1.0, parallel)
        return math.sqrt(max(0.0, (1.0 - parallel) * (1.0 + parallel)))
    state = task.pair.phi if ideal_ray == "phi" else task.pair.psi
    base = hilbert.tensor_power(state, task.n_out)
    _, perp = decompose_output(output, base)
    return perp


def error_report(task: CloneTask, v_phi, v_psi) -> ErrorReport:
    """Error sizes for a supplied output pair, in plane or full coordinates."""
    denom = task.denominator
    if denom < CERT_TOL:
        raise DegeneratePairError("relative error is undefined at z = 1")
    x_phi = _error_size(task, v_phi, "phi")
    x_psi = _error_size(task, v_psi, "psi")
    ae = x_phi + x_psi
    return ErrorReport(x_phi=x_phi, x_psi=x_psi, ae=ae, re=ae / denom, denom=denom)


def gram_residual(task: CloneTask, result: ClonerResult) -> float:
    """|<v_phi|v_psi> - z**n_in| over the in-plane parts of the two outputs."""
    inner = (
        result.v_phi.c1.conjugate() * result.v_psi.c1
        + result.v_phi.c2.conjugate() * result.v_psi.c2
    )
    return abs(inner - task.gram_target)


def mixed_machine_report(ensemble: MachineEnsemble) -> ErrorReport:
    """Aggregate error report of a machine-state mixture.

    Error sizes average linearly over the mixture, while the relative error is
    the weighted sum of per-member ratios (each against its own denominator),
    not the ratio of the averaged quantities.
    """
    x_phi = 0.0
    x_psi = 0.0
    rel = 0.0
    denom = 0.0
    for weight, member in zip(ensemble.weights, ensemble.members):
        report = member.errors
        if report.denom < CERT_TOL:
            raise DegeneratePairError("relative error is undefined at z = 1")
        x_phi += weight * report.x_phi
        x_psi += weight * report.x_psi
        rel += weight * (report.x_phi + report.x_psi) / report.denom
        denom += weight * report.denom
    return ErrorReport(
        x_phi=x_phi, x_psi=x_psi, ae=x_phi + x_psi, re=rel, denom=denom
    )


def brute_force_min_re(
    task: CloneTask,
    grid_points: int = 1000,
    over_floor_samples: int = 1000,
    rng: np.random.Generator = None,
) -> BruteForceResult:
    """Scan realizable cloners for the smallest relative error.

    Three families are scanned: the floor-saturating splits on a uniform grid,
    in-plane pairs whose angle sum exceeds the floor (polar angle drawn from
    [-pi, pi]), and out-of-plane pairs obtained by rotating an in-plane pair
    with a random 3-dimensional unitary. Every sample preserves the pair Gram
    matrix, so each one is a realizable cloner.
    """
    _require_cloneable(task)
    if grid_points < 100:
        raise ValueError(f"grid_points must be >= 100, got {grid_points}")
    if over_floor_samples < 0:
        raise ValueError("over_floor_samples must be nonnegative")
    if rng is None:
        rng = hilbert.make_rng(0)

    floor = ideal_angle_floor(task)
    d_in = task.delta_in
    d_out = task.delta_out
    denom = task.denominator

    splits = np.linspace(0.0, floor, grid_points)
    grid_re = (np.sin(splits) + np.sin(floor - splits)) / denom
    grid_idx = int(np.argmin(grid_re))
    grid_min = float(grid_re[grid_idx])
    best_split = float(splits[grid_idx])

    n_plane = over_floor_samples // 2
    n_rotated = over_floor_samples - n_plane

    over_floor_min = math.inf
    if n_plane:
        theta = rng.uniform(-math.pi, math.pi, n_plane)
        err_phi = np.arccos(np.abs(np.cos(theta)))
        err_psi = np.arccos(np.abs(np.cos(theta + d_in - d_out)))
        sample_re = (np.sin(err_phi) + np.sin(err_psi)) / denom
        over_floor_min = float(np.min(sample_re))

    off_plane_min = math.inf
    if n_rotated:
        z_out = task.pair.z**task.n_out
        ray_phi = np.array([1.0, 0.0, 0.0], dtype=np.complex128)
        ray_psi = np.array([z_out, denom, 0.0], dtype=np.complex128)
        for _ in range(n_rotated):
            theta = float(rng.uniform(-math.pi, math.pi))
            u_phi = np.array(
                [math.cos(theta), math.sin(theta), 0.0], dtype=np.complex128
            )
            u_psi = np.array(
                [math.cos(theta + d_in), math.sin(theta + d_in), 0.0],
                dtype=np.complex128,
            )
            rot = hilbert.random_unitary(3, rng)
            out_phi = rot @ u_phi
            out_psi = rot @ u_psi
            x_phi = math.sqrt(max(0.0, 1.0 - abs(np.vdot(ray_phi, out_phi)) ** 2))
            x_psi = math.sqrt(max(0.0, 1.0 - abs(np.vdot(ray_psi, out_psi)) ** 2))
            off_plane_min = min(off_plane_min, (x_phi + x_psi) / denom)

    return BruteForceResult(
        min_re=min(grid_min, over_floor_min, off_plane_min),
        best_split=best_split,
        grid_min=grid_min,
        over_floor_min=over_floor_min,
        off_plane_min=off_plane_min,
    )


def slot_probability(output, outcome, slot: int, dim: int = 2) -> float:
    """P(outcome at the given slot | output) for a rank-1 slot projector.

    The output is reshaped as n_slots factors of the given single-particle
    dimension; the probability is the squared norm of the contraction of the
    outcome's conjugate with the chosen axis.
    """
    out = np.asarray(output, dtype=np.complex128)
    probe = hilbert.as_state(outcome)
    if probe.size != dim:
        raise ValueError("outcome dimension must match the slot dimension")
    n_slots = int(round(math.log(out.size, dim)))
    if dim**n_slots != out.size:
        raise ValueError(
            f"output size {out.size} is not a power of the slot dimension {dim}"
        )
    if not 0 <= slot < n_slots:
        raise ValueError(f"slot {slot} out of range for {n_slots} slots")
    tensor = out.reshape((dim,) * n_slots)
    contracted = np.tensordot(probe.conj(), tensor, axes=([0], [slot]))
    return float(np.real(np.vdot(contracted, contracted)))
