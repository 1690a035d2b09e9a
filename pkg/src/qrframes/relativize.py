"""The relativization map and the machinery built on it: POVM convolution,
relative-orientation observables, restriction, conditioned relativization,
preduals, product-relative states, and the homogeneous-space extension.

For a principal frame R with effects E(g) and a system representation U_S,
the relativization channel sends a system operator A to

    yen(A) = sum_g E(g) (x) U_S(g) A U_S(g)^dag,

an invariant framed operator on the composite space.  Its predual maps
composite trace-class operators back to the system and is the workhorse for
relative states and frame changes.
"""

from __future__ import annotations

import numpy as np

from .operators import (
    DEFAULT_TOL,
    as_operator,
    contract_factor,
    is_density,
    kron,
    op_norm,
)
from .quantum import (
    CosetSampleSpace,
    Frame,
    GroupSpace,
    POVM,
    UnitaryRep,
    UnsupportedFrameError,
    born,
)


class PreconditionError(ValueError):
    """Raised when an operand fails a mathematical precondition, carrying the
    measured deviation."""

    def __init__(self, message: str, deviation: float):
        self.deviation = deviation
        super().__init__(f"{message} (deviation {deviation:.3e})")


class YenMap:
    """The relativization channel of a principal frame against a system rep."""

    def __init__(self, frame: Frame, sys_rep: UnitaryRep) -> None:
        if not frame.principal:
            raise UnsupportedFrameError(
                "relativization needs a principal frame; use yen_homogeneous "
                "for frames on coset spaces"
            )
        if sys_rep.group != frame.group:
            raise ValueError("frame and system must represent the same group")
        self.frame = frame
        self.sys_rep = sys_rep
        self.dim_frame = frame.dim
        self.dim_sys = sys_rep.dim
        self.dim_total = frame.dim * sys_rep.dim

    def apply(self, a: np.ndarray) -> np.ndarray:
        """sum_g E(g) (x) g.A; unital, completely positive, invariant."""
        a = as_operator(a)
        if a.shape[0] != self.dim_sys:
            raise ValueError(f"operand dim {a.shape[0]} does not match system dim {self.dim_sys}")
        out = np.zeros((self.dim_total, self.dim_total), dtype=complex)
        for g in self.frame.group.elements():
            out += kron(self.frame.povm.effect(g), self.sys_rep.act_op(g, a))
        return out

    def predual(self, omega: np.ndarray) -> np.ndarray:
        """The unique map with tr[predual(W) A] = tr[W apply(A)].

        Closed form: sum_g U_S(g)^dag Tr_R[(E(g) (x) 1) W] U_S(g).
        """
        omega = as_operator(omega)
        if omega.shape[0] != self.dim_total:
            raise ValueError(
                f"operand dim {omega.shape[0]} does not match composite dim {self.dim_total}"
            )
        dims = (self.dim_frame, self.dim_sys)
        out = np.zeros((self.dim_sys, self.dim_sys), dtype=complex)
        for g in self.frame.group.elements():
            block = contract_factor(omega, dims, 0, self.frame.povm.effect(g))
            out += self.sys_rep.act_state(g, block)
        return out

    def conditioned(self, omega: np.ndarray, a: np.ndarray) -> np.ndarray:
        """Restriction of apply(a) by a frame state: sum_g mu_omega(g) g.A."""
        mu = born(self.frame.povm, omega)
        a = as_operator(a)
        out = np.zeros((self.dim_sys, self.dim_sys), dtype=complex)
        for g in self.frame.group.elements():
            out += mu[g] * self.sys_rep.act_op(g, a)
        return out

    def matrix(self) -> np.ndarray:
        """The channel as a matrix on column-vectorized operators (oracle use)."""
        d_in = self.dim_sys
        cols = []
        for j in range(d_in * d_in):
            unit = np.zeros((d_in, d_in), dtype=complex)
            unit[j // d_in, j % d_in] = 1.0
            cols.append(self.apply(unit).reshape(-1))
        return np.stack(cols, axis=1)


def yen(frame: Frame, sys_rep: UnitaryRep, a: np.ndarray) -> np.ndarray:
    """Relativize a system operator: sum_g E(g) (x) U_S(g) A U_S(g)^dag."""
    return YenMap(frame, sys_rep).apply(a)


def yen_predual(frame: Frame, sys_rep: UnitaryRep, omega: np.ndarray) -> np.ndarray:
    """Predual of the relativization map, composite -> system trace class."""
    return YenMap(frame, sys_rep).predual(omega)


def convolve(povm_s: POVM, frame: Frame, sys_rep: UnitaryRep) -> POVM:
    """Relativize a system POVM pointwise; the result has invariant effects
    on the composite space, over the original sample space."""
    ym = YenMap(frame, sys_rep)
    if povm_s.dim != sys_rep.dim:
        raise ValueError("system POVM does not match the system representation")
    effects = [ym.apply(e) for e in povm_s.effects]
    return POVM(povm_s.space, effects)


def relative_orientation(frame1: Frame, frame2: Frame) -> POVM:
    """The observable of relative orientation of frame2 with respect to
    frame1: sample space G, effects sum_g E1(g) (x) g.E2(x)."""
    if frame1.group != frame2.group:
        raise ValueError("frames must share one group")
    if not (frame1.principal and frame2.principal):
        raise UnsupportedFrameError("relative orientation needs principal frames")
    ym = YenMap(frame1, frame2.rep)
    effects = [ym.apply(e) for e in frame2.povm.effects]
    return POVM(GroupSpace(frame1.group), effects)


def restrict(omega: np.ndarray, a: np.ndarray) -> np.ndarray:
    """The omega-restriction map: A_R (x) A_S -> tr[omega A_R] A_S, extended
    linearly; computed as Tr_R[(omega (x) 1) A]."""
    omega = as_operator(omega)
    a = as_operator(a)
    d_r = omega.shape[0]
    if a.shape[0] % d_r != 0:
        raise ValueError(
            f"composite dim {a.shape[0]} is not a multiple of the frame dim {d_r}"
        )
    d_s = a.shape[0] // d_r
    return contract_factor(a, (d_r, d_s), 0, omega)


def conditioned_yen(frame: Frame, sys_rep: UnitaryRep, omega: np.ndarray,
                    a: np.ndarray) -> np.ndarray:
    """The omega-conditioned relativization: sum_g mu_omega(g) U(g) A U(g)^dag.

    Depends on omega only through its outcome distribution under the frame
    observable.
    """
    return YenMap(frame, sys_rep).conditioned(omega, a)


def product_relative_state(frame: Frame, sys_rep: UnitaryRep, omega: np.ndarray,
                           rho: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    """The system state smeared by the frame's orientation distribution:
    sum_g mu_omega(g) U(g)^dag rho U(g), equal to yen_predual(omega (x) rho)."""
    if not is_density(omega, tol):
        raise ValueError("omega must be a density operator")
    if not is_density(rho, tol):
        raise ValueError("rho must be a density operator")
    mu = born(frame.povm, omega)
    out = np.zeros((sys_rep.dim, sys_rep.dim), dtype=complex)
    for g in frame.group.elements():
        out += mu[g] * sys_rep.act_state(g, rho)
    return out


# ---------------------------------------------------------------------------
# Homogeneous-space relativization
# ---------------------------------------------------------------------------

def subgroup_variance(rep: UnitaryRep, members, a: np.ndarray) -> float:
    """max over the listed elements of || h.A - A ||."""
    a = as_operator(a)
    return max(op_norm(rep.act_op(h, a) - a) for h in members)


class HomogeneousYenMap:
    """Relativization against a frame on a coset space G/H; accepts only
    H-invariant system operators, on which the coset-wise conjugation is
    independent of the representative choice."""

    def __init__(self, frame: Frame, sys_rep: UnitaryRep, tol: float = DEFAULT_TOL) -> None:
        if not isinstance(frame.povm.space, CosetSampleSpace):
            raise UnsupportedFrameError(
                "homogeneous relativization needs a frame on a coset space"
            )
        if sys_rep.group != frame.group:
            raise ValueError("frame and system must represent the same group")
        self.frame = frame
        self.sys_rep = sys_rep
        self.cosets = frame.povm.space.cosets
        self.tol = tol
        self.dim_total = frame.dim * sys_rep.dim

    def apply(self, a: np.ndarray) -> np.ndarray:
        a = as_operator(a)
        dev = subgroup_variance(self.sys_rep, self.cosets.subgroup, a)
        if dev > self.tol:
            raise PreconditionError(
                "operand is not invariant under the isotropy subgroup", dev
            )
        out = np.zeros((self.dim_total, self.dim_total), dtype=complex)
        for c in range(self.cosets.n_cosets):
            rep_elt = self.cosets.reps[c]
            out += kron(self.frame.povm.effect(c), self.sys_rep.act_op(rep_elt, a))
        return out


def yen_homogeneous(frame: Frame, sys_rep: UnitaryRep, a: np.ndarray,
                    tol: float = DEFAULT_TOL) -> np.ndarray:
    """Coset-space relativization sum_{gH} E(gH) (x) gH.A of an H-invariant
    operator; well defined independently of the chosen representatives."""
    return HomogeneousYenMap(frame, sys_rep, tol=tol).apply(a)


def relational_span_report(frame: Frame, sys_rep: UnitaryRep) -> dict:
    """Compare the span of relativized H-invariant operators with the
    framed-and-invariant operators, without asserting equality.

    For principal frames the relativized span is known to exhaust the framed
    invariant operators; on proper coset spaces both sides are computed and
    reported per instance.
    """
    from .opequiv import (
        EffectContext,
        average_over,
        framed_subspace,
        intersect,
        invariant_subspace,
    )
    from .operators import HermitianBasis

    sys_basis = HermitianBasis(sys_rep.dim)
    if isinstance(frame.povm.space, CosetSampleSpace):
        members = list(frame.povm.space.cosets.subgroup)
        ym = HomogeneousYenMap(frame, sys_rep)
        h_inv = [average_over(sys_rep, members, b) for b in sys_basis.matrices]
        relativized = [ym.apply(b) for b in h_inv]
    else:
        ym = YenMap(frame, sys_rep)
        relativized = [ym.apply(b) for b in sys_basis.matrices]
    rel_ctx = EffectContext(relativized, dim=frame.dim * sys_rep.dim)
    diag_rep = frame.rep.tensor(sys_rep)
    target = intersect(framed_subspace(frame, sys_rep.dim), invariant_subspace(diag_rep))
    contained = all(
        op_norm(row - target.project(row)) <= 1e-9 for row in rel_ctx.span_basis
    )
    return {
        "relativized_rank": rel_ctx.rank,
        "relational_rank": target.rank,
        "relativized_inside_relational": contained,
        "equal": contained and rel_ctx.rank == target.rank,
    }
