"""Frame-change maps between internal relative descriptions.

A multi-frame scenario fixes a total space H_1 (x) ... (x) H_N (x) H_S with a
diagonal group action and one covariant frame observable per frame factor.
The localized frame-change map out of frame j lifts a relative state by
attaching the localizing state of frame j, applies the predual relativization
of the target frame, and projects onto the classes framed by the source
observable.  The map is affine, well defined on classes, invertible between
localizable frames, and composable across three frames.
"""

from __future__ import annotations

from typing import Optional, Sequence, Union

import numpy as np

from .operators import (
    DEFAULT_TOL,
    HermitianBasis,
    as_operator,
    contract_factor,
    kron,
    pair_trace,
    permute_factors,
)
from .opequiv import EffectContext, OperationalState, invariant_subspace
from .quantum import Frame, UnitaryRep, UnsupportedFrameError, localizing_state


class MultiFrameScenario:
    """Frames plus an optional system factor under one diagonal group action."""

    def __init__(self, frames: Sequence[Frame], system_rep: Optional[UnitaryRep] = None) -> None:
        if len(frames) < 1:
            raise ValueError("a scenario needs at least one frame")
        group = frames[0].group
        for i, f in enumerate(frames):
            if f.group != group:
                raise ValueError(f"frame {i} represents a different group")
            if not f.principal:
                raise UnsupportedFrameError("scenario frames must be principal")
        if system_rep is not None and system_rep.group != group:
            raise ValueError("system representation must share the frames' group")
        self.group = group
        self.frames = list(frames)
        self.system_rep = system_rep
        self.factor_reps = [f.rep for f in frames] + (
            [system_rep] if system_rep is not None else []
        )
        self.dims = tuple(r.dim for r in self.factor_reps)
        self.n_factors = len(self.dims)
        self.total_dim = int(np.prod(self.dims))
        self._rest_reps: dict = {}
        self._contexts: dict = {}

    @property
    def shape(self) -> tuple:
        return self.dims

    @property
    def diagonal_rep(self) -> UnitaryRep:
        return self.rest_rep(None)

    def complement(self, j: Optional[int]) -> list:
        """Factor positions excluding slot j (all positions for j=None)."""
        return [k for k in range(self.n_factors) if k != j]

    def complement_dims(self, j: Optional[int]) -> tuple:
        return tuple(self.dims[k] for k in self.complement(j))

    def rest_rep(self, j: Optional[int]) -> UnitaryRep:
        """Tensor representation on the complement of slot j (cached)."""
        if j not in self._rest_reps:
            reps = [self.factor_reps[k] for k in self.complement(j)]
            rep = reps[0]
            for r in reps[1:]:
                rep = rep.tensor(r)
            self._rest_reps[j] = rep
        return self._rest_reps[j]

    def _check_frame_index(self, j: int) -> None:
        if not 0 <= j < len(self.frames):
            raise ValueError(f"frame index {j} out of range")

    def yen_total(self, j: int, a_rest: np.ndarray) -> np.ndarray:
        """Relativize an operator on the complement of frame j into the total
        space: sum_g E_j(g) at slot j (x) g.A on the rest."""
        self._check_frame_index(j)
        a_rest = as_operator(a_rest)
        rest = self.complement(j)
        rest_rep = self.rest_rep(j)
        if a_rest.shape[0] != rest_rep.dim:
            raise ValueError("operand does not match the complement dimension")
        order = [j] + rest
        order_dims = [self.dims[f] for f in order]
        inverse = [order.index(k) for k in range(self.n_factors)]
        out = np.zeros((self.total_dim, self.total_dim), dtype=complex)
        for g in self.group.elements():
            block = kron(self.frames[j].povm.effect(g), rest_rep.act_op(g, a_rest))
            out += permute_factors(block, order_dims, inverse)
        return out

    def yen_predual_total(self, j: int, omega: np.ndarray) -> np.ndarray:
        """Predual of yen_total: total trace class -> complement of slot j."""
        self._check_frame_index(j)
        omega = as_operator(omega)
        if omega.shape[0] != self.total_dim:
            raise ValueError("operand does not match the total dimension")
        rest_rep = self.rest_rep(j)
        out = np.zeros((rest_rep.dim, rest_rep.dim), dtype=complex)
        for g in self.group.elements():
            block = contract_factor(omega, self.dims, j, self.frames[j].povm.effect(g))
            out += rest_rep.act_state(g, block)
        return out

    def lift_total(self, j: int, omega: np.ndarray, omega_rel: np.ndarray) -> np.ndarray:
        """Attach a frame-j state to an operator on the complement of slot j."""
        self._check_frame_index(j)
        omega = as_operator(omega)
        omega_rel = as_operator(omega_rel)
        rest = self.complement(j)
        order = [j] + rest
        order_dims = [self.dims[f] for f in order]
        inverse = [order.index(k) for k in range(self.n_factors)]
        return permute_factors(kron(omega, omega_rel), order_dims, inverse)

    def framing_context(self, reference: int, framed: Sequence[int],
                        tol: float = DEFAULT_TOL) -> EffectContext:
        """Context on the complement of ``reference`` whose generators put the
        listed frames' effects at their slots and a Hermitian basis everywhere
        else."""
        self._check_frame_index(reference)
        framed = sorted({int(k) for k in framed})
        for k in framed:
            self._check_frame_index(k)
            if k == reference:
                raise ValueError("the reference frame cannot also be framed")
        key = (reference, tuple(framed))
        if key in self._contexts:
            return self._contexts[key]
        rest = self.complement(reference)
        pieces_per_slot = []
        for pos in rest:
            if pos in framed:
                pieces_per_slot.append(self.frames[pos].povm.effects)
            else:
                pieces_per_slot.append(HermitianBasis(self.dims[pos]).matrices)
        gens = []
        def build(slot: int, acc: Optional[np.ndarray]):
            if slot == len(rest):
                gens.append(acc)
                return
            for piece in pieces_per_slot[slot]:
                build(slot + 1, piece if acc is None else kron(acc, piece))
        build(0, None)
        dim = int(np.prod(self.complement_dims(reference)))
        ctx = EffectContext(gens, dim=dim, tol=tol)
        self._contexts[key] = ctx
        return ctx

    def __repr__(self) -> str:
        return (f"MultiFrameScenario({self.group.name}, {len(self.frames)} frames, "
                f"dims={self.dims})")


class FramedRelativeState:
    """A relative state (matrix on the complement of its reference frame)
    considered up to the operational equivalence of its framing context."""

    def __init__(self, scenario: MultiFrameScenario, reference: int,
                 matrix: np.ndarray, framed: Sequence[int],
                 context: Optional[EffectContext] = None) -> None:
        self.scenario = scenario
        self.reference = int(reference)
        self.matrix = as_operator(matrix)
        self.framed = tuple(sorted(int(k) for k in framed))
        expected = int(np.prod(scenario.complement_dims(self.reference)))
        if self.matrix.shape[0] != expected:
            raise ValueError(
                f"state dim {self.matrix.shape[0]} does not match the complement "
                f"dim {expected} of frame {reference}"
            )
        self.context = context if context is not None else scenario.framing_context(
            self.reference, self.framed
        )
        self._canonical: Optional[np.ndarray] = None

    @property
    def canonical(self) -> np.ndarray:
        if self._canonical is None:
            self._canonical = self.context.project(self.matrix)
        return self._canonical

    def same_class(self, other: Union["FramedRelativeState", np.ndarray],
                   tol: float = DEFAULT_TOL) -> bool:
        if isinstance(other, FramedRelativeState):
            if other.reference != self.reference or other.framed != self.framed:
                raise ValueError("states live in different framed descriptions")
            other = other.matrix
        delta = self.matrix - as_operator(other)
        return all(abs(pair_trace(delta, f)) <= tol for f in self.context.generators)

    def class_deviation(self, other: Union["FramedRelativeState", np.ndarray]) -> float:
        if isinstance(other, FramedRelativeState):
            other = other.matrix
        delta = self.matrix - as_operator(other)
        return max(abs(pair_trace(delta, f)) for f in self.context.generators)

    def __repr__(self) -> str:
        return (f"FramedRelativeState(reference={self.reference}, "
                f"framed={self.framed}, dim={self.matrix.shape[0]})")


def framed_relative_context(scenario: MultiFrameScenario, reference: int,
                            framed: int, tol: float = DEFAULT_TOL) -> EffectContext:
    """Context over the total space generated by relativizing the framed
    observable's effects tensored with a Hermitian basis of the remaining
    factors; its equivalence mirrors the framing context under the predual."""
    scenario._check_frame_index(reference)
    scenario._check_frame_index(framed)
    if reference == framed:
        raise ValueError("reference and framed indices must differ")
    rest = scenario.complement(reference)
    pieces_per_slot = []
    for pos in rest:
        if pos == framed:
            pieces_per_slot.append(scenario.frames[pos].povm.effects)
        else:
            pieces_per_slot.append(HermitianBasis(scenario.dims[pos]).matrices)
    gens = []
    def build(slot: int, acc: Optional[np.ndarray]):
        if slot == len(rest):
            gens.append(scenario.yen_total(reference, acc))
            return
        for piece in pieces_per_slot[slot]:
            build(slot + 1, piece if acc is None else kron(acc, piece))
    build(0, None)
    return EffectContext(gens, dim=scenario.total_dim, tol=tol)


def lift(frame: Frame, sys_rep: UnitaryRep, omega: np.ndarray,
         omega_rel: np.ndarray) -> OperationalState:
    """Lift a system trace-class operator to the invariant description of the
    composite by attaching the frame state omega; the result is the class of
    omega (x) omega_rel under the invariant effects."""
    omega = as_operator(omega)
    omega_rel = as_operator(omega_rel)
    if omega.shape[0] != frame.dim or omega_rel.shape[0] != sys_rep.dim:
        raise ValueError("operand dimensions do not match the frame/system split")
    ctx = invariant_subspace(frame.rep.tensor(sys_rep))
    return OperationalState(kron(omega, omega_rel), ctx)


def frame_change(scenario: MultiFrameScenario, src: int, dst: int,
                 state: Union[FramedRelativeState, np.ndarray],
                 localize_at: Optional[int] = None,
                 tol: float = DEFAULT_TOL) -> FramedRelativeState:
    """The localized frame-change map from frame ``src`` to frame ``dst``.

    Lifts through the exact localizing state of the source frame (at the
    identity unless ``localize_at`` says otherwise), relativizes with respect
    to the target frame, and projects onto the source-framed classes.
    """
    scenario._check_frame_index(src)
    scenario._check_frame_index(dst)
    if src == dst:
        raise ValueError("source and target frames must differ")
    if not scenario.frames[src].localizable:
        raise UnsupportedFrameError("frame changes require a localizable source frame")
    matrix = state.matrix if isinstance(state, FramedRelativeState) else as_operator(state)
    point = scenario.group.identity if localize_at is None else int(localize_at)
    omega = localizing_state(scenario.frames[src], point, tol)
    total = scenario.lift_total(src, omega, matrix)
    out = scenario.yen_predual_total(dst, total)
    ctx = scenario.framing_context(dst, (src,))
    return FramedRelativeState(scenario, dst, ctx.project(out), framed=(src,), context=ctx)


def coherent_frame_change_unitary(scenario: MultiFrameScenario, src: int = 0,
                                  dst: int = 1) -> np.ndarray:
    """The coherent change-of-frame unitary sum_g |g^-1><g| (x) U_S(g) for a
    pair of ideal frames in the left-right convention.

    Maps the complement of the source slot to the complement of the target
    slot; valid for the leading two frame slots, where both complements list
    the other frame factor first.
    """
    if {src, dst} != {0, 1}:
        raise ValueError("the coherent unitary is defined for the leading frame pair")
    for k in (src, dst):
        f = scenario.frames[k]
        if not f.ideal or f.rep.kind != "left_right":
            raise UnsupportedFrameError(
                "the coherent unitary needs ideal frames in the left-right convention"
            )
    group = scenario.group
    n = group.order
    rest = [k for k in range(scenario.n_factors) if k not in (src, dst)]
    rest_dim = int(np.prod([scenario.dims[k] for k in rest])) if rest else 1
    out = np.zeros((n * rest_dim, n * rest_dim), dtype=complex)
    for g in group.elements():
        hop = np.zeros((n, n), dtype=complex)
        hop[group.inv(g), g] = 1.0
        if rest:
            u = scenario.factor_reps[rest[0]].mat(g)
            for k in rest[1:]:
                u = np.kron(u, scenario.factor_reps[k].mat(g))
            out += np.kron(hop, u)
        else:
            out += hop
    return out


def operational_agreement(scenario: MultiFrameScenario, state: np.ndarray,
                          tol: float = DEFAULT_TOL) -> dict:
    """Compare the operational frame change 0 -> 1 with the coherent unitary
    pipeline on one input state, at the level of source-framed pairings."""
    state = as_operator(state)
    changed = frame_change(scenario, 0, 1, state)
    u = coherent_frame_change_unitary(scenario, 0, 1)
    coherent = u @ state @ np.conj(u).T
    deviation = changed.class_deviation(coherent)
    return {
        "agree": bool(deviation <= tol),
        "max_deviation": float(deviation),
        "operational": changed,
        "coherent": coherent,
    }


def compose_check(scenario: MultiFrameScenario, state: np.ndarray,
                  tol: float = DEFAULT_TOL) -> dict:
    """Deviation between changing from the first frame to the third directly
    and composing through the second, paired against the jointly framed
    generators (slots 0, 1, 2 of the scenario)."""
    if len(scenario.frames) < 3:
        raise ValueError("composition needs at least three frames")
    for k in (0, 1):
        if not scenario.frames[k].localizable:
            raise UnsupportedFrameError("composition requires localizable frames 1 and 2")
    direct = frame_change(scenario, 0, 2, state)
    via = frame_change(scenario, 1, 2, frame_change(scenario, 0, 1, state))
    joint = scenario.framing_context(2, framed=(0, 1))
    delta = direct.matrix - via.matrix
    deviation = max(abs(pair_trace(delta, f)) for f in joint.generators)
    return {"max_deviation": float(deviation), "pass": bool(deviation <= tol)}


def triangular_reconstruction(frame1: Frame, frame2: Frame, rho_rel1: np.ndarray,
                              sys_rep: UnitaryRep, omega_joint: np.ndarray,
                              orientation=None) -> np.ndarray:
    """Reconstruct the state relative to a second external frame by weighting
    the group orbit of the first relative state with the relative-orientation
    distribution of a joint frame state:

        sum_h mu(h) U_S(h)^dag rho U_S(h),  mu = born(E2 * E1, omega_joint).
    """
    from .relativize import relative_orientation

    rho_rel1 = as_operator(rho_rel1)
    if orientation is None:
        orientation = relative_orientation(frame1, frame2)
    omega_joint = as_operator(omega_joint)
    mu = np.array([pair_trace(omega_joint, e).real for e in orientation.effects])
    if abs(mu.sum() - 1.0) > 1e-6:
        raise ValueError("joint state must be normalized")
    out = np.zeros_like(rho_rel1)
    for h in frame1.group.elements():
        out += mu[h] * sys_rep.act_state(h, rho_rel1)
    return out
