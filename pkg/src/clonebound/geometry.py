"""Angle metric on pure states and the operator inequalities built on it.

The distance between two unit vectors is the angle arccos|<a|b>|, which lives
in [0, pi/2] and ignores global phases. Each check function evaluates one
inequality and returns an InequalityCheck record carrying both sides, the
margin (rhs - lhs), and a pass flag at the stated tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hilbert

DEFAULT_TOL = 1e-9

__all__ = [
    "DEFAULT_TOL",
    "InequalityCheck",
    "overlap_magnitude",
    "angle",
    "projector_deviation_check",
    "uhlmann_fidelity",
    "mixed_probability_bound_check",
    "spherical_triangle_check",
    "transition_projector_check",
    "transition_probability_check",
]


@dataclass(frozen=True)
class InequalityCheck:
    """Outcome of a single inequality evaluation: passed iff margin >= -tolerance."""

    lhs: float
    rhs: float
    margin: float
    passed: bool
    tolerance: float = DEFAULT_TOL


def _as_check(lhs: float, rhs: float, tol: float = DEFAULT_TOL) -> InequalityCheck:
    margin = rhs - lhs
    return InequalityCheck(
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        passed=bool(margin >= -tol),
        tolerance=float(tol),
    )


def overlap_magnitude(a, b) -> float:
    """|<a|b>| clipped into [0, 1]."""
    a = hilbert.as_state(a)
    b = hilbert.as_state(b)
    return min(1.0, abs(hilbert.inner_product(a, b)))


def angle(a, b) -> float:
    """Angle metric arccos|<a|b>| in [0, pi/2]; zero iff a, b are parallel."""
    return math.acos(overlap_magnitude(a, b))


def projector_deviation_check(a, b, proj, tol: float = DEFAULT_TOL) -> InequalityCheck:
    """|<a|P|a> - <b|P|b>| <= sin(angle(a, b)) for any orthogonal projector P."""
    a = hilbert.as_state(a)
    b = hilbert.as_state(b)
    proj = hilbert.check_projector(proj)
    if proj.shape[0] != a.size or a.size != b.size:
        raise ValueError("projector and states must share one dimension")
    exp_a = float(np.real(np.vdot(a, proj @ a)))
    exp_b = float(np.real(np.vdot(b, proj @ b)))
    return _as_check(abs(exp_a - exp_b), math.sin(angle(a, b)), tol)


def _fidelity_core(chi: np.ndarray, omega: np.ndarray) -> float:
    # inputs assumed validated; see uhlmann_fidelity for the contract
    root = hilbert.matrix_sqrt_psd(chi)
    inner = root @ omega @ root
    inner = 0.5 * (inner + inner.conj().T)
    vals = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    # rank-deficient inputs leave O(eps) noise eigenvalues whose square roots
    # would dominate the error; zero everything below the eigh noise floor
    floor = vals.size * np.finfo(float).eps * max(vals[-1], 0.0)
    vals[vals < floor] = 0.0
    return float(np.sum(np.sqrt(vals)) ** 2)


def uhlmann_fidelity(chi, omega) -> float:
    """Fidelity (Tr sqrt(sqrt(chi) omega sqrt(chi)))**2 of two density operators.

    Symmetric in its arguments, equal to |<u|v>|**2 on pure states, and equal
    to 1 exactly when the operators coincide.
    """
    chi = hilbert.check_density(chi)
    omega = hilbert.check_density(omega)
    if chi.shape != omega.shape:
        raise ValueError("fidelity requires operators of equal dimension")
    return _fidelity_core(chi, omega)


def mixed_probability_bound_check(chi, omega, proj, tol: float = DEFAULT_TOL) -> InequalityCheck:
    """|Tr(P chi) - Tr(P omega)| <= sqrt(1 - F(chi, omega))."""
    chi = hilbert.check_density(chi)
    omega = hilbert.check_density(omega)
    proj = hilbert.check_projector(proj)
    if proj.shape != chi.shape or chi.shape != omega.shape:
        raise ValueError("projector and operators must share one dimension")
    p_chi = float(np.real(np.trace(proj @ chi)))
    p_omega = float(np.real(np.trace(proj @ omega)))
    fid = _fidelity_core(chi, omega)
    rhs = math.sqrt(max(0.0, 1.0 - fid))
    return _as_check(abs(p_chi - p_omega), rhs, tol)


def spherical_triangle_check(x, y, z, tol: float = DEFAULT_TOL) -> InequalityCheck:
    """Triangle inequality of the angle metric: angle(x,y) <= angle(x,z) + angle(y,z)."""
    return _as_check(angle(x, y), angle(x, z) + angle(y, z), tol)


def transition_projector_check(
    phi, psi, ancilla, joint_unitary, proj, tol: float = DEFAULT_TOL
) -> InequalityCheck:
    """Deviation bound for projective statistics after a joint unitary.

    The system is prepared in phi or psi next to a (possibly mixed) ancilla,
    evolved by the joint unitary, and measured with a projector on the system
    factor. The two outcome probabilities can differ by at most
    sin(angle(phi, psi)) regardless of the unitary and the ancilla.
    """
    phi = hilbert.as_state(phi)
    psi = hilbert.as_state(psi)
    if phi.size != psi.size:
        raise ValueError("phi and psi must share one dimension")
    anc = hilbert.check_density(ancilla)
    dim_sys = phi.size
    dim_anc = anc.shape[0]
    unitary = np.asarray(joint_unitary, dtype=np.complex128)
    joint_dim = dim_sys * dim_anc
    if unitary.shape != (joint_dim, joint_dim):
        raise ValueError(
            f"joint unitary shape {unitary.shape} does not match {joint_dim}"
        )
    proj = hilbert.check_projector(proj)
    if proj.shape != (dim_sys, dim_sys):
        raise ValueError("projector must act on the system factor")

    # with B = U (s (x) 1), the evolved joint state is B anc B*, and its
    # system reduction contracts over the ancilla index directly; this skips
    # materializing the (dim_sys*dim_anc)^2 joint density
    u_blocks = unitary.reshape(joint_dim, dim_sys, dim_anc)
    probs = []
    for state in (phi, psi):
        b = np.tensordot(u_blocks, state, axes=([1], [0]))
        c = (b @ anc).reshape(dim_sys, dim_anc, dim_anc)
        reduced = np.einsum(
            "xjm,yjm->xy", c, b.conj().reshape(dim_sys, dim_anc, dim_anc)
        )
        probs.append(float(np.real(np.einsum("xy,yx->", proj, reduced))))
    return _as_check(abs(probs[0] - probs[1]), math.sin(angle(phi, psi)), tol)


def transition_probability_check(
    phi, psi, ancilla, joint_unitary, target, tol: float = DEFAULT_TOL
) -> InequalityCheck:
    """Rank-1 special case: transition probabilities into a target state."""
    return transition_projector_check(
        phi, psi, ancilla, joint_unitary, hilbert.projector_onto(target), tol
    )
