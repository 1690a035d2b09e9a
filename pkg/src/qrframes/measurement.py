"""Measurement-theoretic checkers: probability reproducibility, relational
reproducibility, and their realization by relative-orientation observables.

A measurement scheme couples a pointer system R to the measured system S by a
unitary interaction; the scheme reproduces a target observable when pointer
statistics after the interaction match the target statistics on every input
state.  Both conditions are checked as exact operator identities obtained by
conditioning on the pointer state, so no state sampling is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .groups import FiniteGroup
from .operators import DEFAULT_TOL, as_operator, dagger, is_density, op_norm
from .quantum import (
    Frame,
    POVM,
    UnitaryRep,
    UnsupportedFrameError,
    canonical_pvm,
    left_regular_rep,
    localizing_state,
)
from .relativize import PreconditionError, relative_orientation, restrict


@dataclass
class MeasurementScheme:
    """Pointer coupling (U, f, E_R, omega_p) for a target observable E_S."""

    interaction: np.ndarray
    pointer_povm: POVM
    pointer_state: np.ndarray
    outcome_map: Sequence[int]
    target: POVM

    def __post_init__(self) -> None:
        u = as_operator(self.interaction)
        d = self.pointer_povm.dim * self.target.dim
        if u.shape[0] != d:
            raise ValueError(f"interaction dim {u.shape[0]} != pointer*system dim {d}")
        if op_norm(u @ dagger(u) - np.eye(d)) > 1e-9:
            raise ValueError("interaction is not unitary")
        if not is_density(self.pointer_state, 1e-6):
            raise ValueError("pointer state must be a density operator")
        f = [int(x) for x in self.outcome_map]
        if len(f) != self.pointer_povm.size:
            raise ValueError("outcome map must be total on the pointer sample space")
        if any(not 0 <= x < self.target.size for x in f):
            raise ValueError("outcome map hits outcomes outside the target sample space")
        self.interaction = u
        self.outcome_map = tuple(f)

    def evolved_pointer_effect(self, xs: Sequence[int]) -> np.ndarray:
        """U (E_R(X) (x) 1) U^dag for a pointer subset X."""
        singles = self._evolved_singles()
        total = np.zeros_like(self.interaction)
        for x in xs:
            total = total + singles[x]
        return total

    def _evolved_singles(self) -> list:
        if not hasattr(self, "_singles"):
            eye = np.eye(self.target.dim, dtype=complex)
            self._singles = [
                self.interaction @ np.kron(self.pointer_povm.effect(x), eye)
                @ dagger(self.interaction)
                for x in range(self.pointer_povm.size)
            ]
        return self._singles

    def preimage(self, y: int) -> list:
        return [x for x in range(self.pointer_povm.size) if self.outcome_map[x] == y]


def check_prc(scheme: MeasurementScheme, tol: float = DEFAULT_TOL) -> dict:
    """Probability reproducibility: conditioning the evolved pointer effect on
    the pointer state must return the target effect, for every outcome."""
    worst = 0.0
    for y in range(scheme.target.size):
        lhs = restrict(scheme.pointer_state, scheme.evolved_pointer_effect(scheme.preimage(y)))
        worst = max(worst, op_norm(lhs - scheme.target.effect(y)))
    return {"max_deviation": float(worst), "pass": bool(worst <= tol),
            "outcomes": scheme.target.size}


def commutation_deviation(scheme: MeasurementScheme, rep_r: UnitaryRep) -> tuple:
    """Worst-case || [U, U_R(g) (x) 1] || and the element attaining it."""
    d_s = scheme.target.dim
    worst, worst_g = 0.0, rep_r.group.identity
    for g in rep_r.group.elements():
        ug = np.kron(rep_r.mat(g), np.eye(d_s, dtype=complex))
        dev = op_norm(scheme.interaction @ ug - ug @ scheme.interaction)
        if dev > worst:
            worst, worst_g = dev, g
    return worst, worst_g


def check_rrc(scheme: MeasurementScheme, rep_r: UnitaryRep, tol: float = DEFAULT_TOL) -> dict:
    """Relational reproducibility: rotating the pointer preparation to
    U(h) omega U(h)^dag while rotating the read-out set to h.X must leave the
    reproduced statistics unchanged, for every h.

    Requires the interaction to commute with frame rotations; the rotated
    preparation moves the pointer's localization from e to h.
    """
    dev, worst_g = commutation_deviation(scheme, rep_r)
    if dev > tol:
        raise PreconditionError(
            f"interaction does not commute with frame rotations (worst at g={worst_g})", dev
        )
    worst = 0.0
    for h in rep_r.group.elements():
        omega_h = rep_r.act_op(h, scheme.pointer_state)
        for y in range(scheme.target.size):
            shifted = [scheme.pointer_povm.act(h, x) for x in scheme.preimage(y)]
            lhs = restrict(omega_h, scheme.evolved_pointer_effect(shifted))
            worst = max(worst, op_norm(lhs - scheme.target.effect(y)))
    return {"max_deviation": float(worst), "pass": bool(worst <= tol),
            "pairs": rep_r.group.order * scheme.target.size}


def rrc_relative_orientation(frame_r: Frame, system: Frame,
                             tol: float = DEFAULT_TOL) -> dict:
    """Exact relational reproducibility of the relative-orientation observable.

    With the pointer localized at the identity, for every h and every sample
    point x the conditioned effect of E_S * E_R at h.x under the rotated
    pointer state equals E_S(x).
    """
    if not (frame_r.localizable and frame_r.principal):
        raise UnsupportedFrameError(
            "relative-orientation reproducibility needs a localizable principal frame"
        )
    orientation = relative_orientation(frame_r, system)
    omega = localizing_state(frame_r, frame_r.group.identity)
    worst = 0.0
    for h in frame_r.group.elements():
        omega_h = frame_r.rep.act_state(h, omega)
        for x in range(system.povm.size):
            hx = orientation.act(h, x)
            lhs = restrict(omega_h, orientation.effect(hx))
            worst = max(worst, op_norm(lhs - system.povm.effect(x)))
    return {"max_deviation": float(worst), "pass": bool(worst <= tol),
            "pairs": frame_r.group.order * system.povm.size}


def canonical_scheme(group: FiniteGroup) -> MeasurementScheme:
    """The package's reference fixture on L2(G) (x) L2(G).

    The pointer carries the left-regular representation with its canonical
    PVM and starts at |e><e|; the interaction is the relative shift
    U|g,h> = |g h^-1, h>, which writes the system value into the pointer,
    commutes with frame rotations U_R(k) (x) 1, and reproduces the canonical
    PVM on the system exactly.
    """
    n = group.order
    u = np.zeros((n * n, n * n), dtype=complex)
    for g in range(n):
        for h in range(n):
            src = g * n + h
            dst = group.mul(g, group.inv(h)) * n + h
            u[dst, src] = 1.0
    rep = left_regular_rep(group)
    pointer = canonical_pvm(rep)
    target = canonical_pvm(rep)
    omega_p = np.zeros((n, n), dtype=complex)
    omega_p[group.identity, group.identity] = 1.0
    return MeasurementScheme(
        interaction=u,
        pointer_povm=pointer,
        pointer_state=omega_p,
        outcome_map=list(range(n)),
        target=target,
    )
