"""Unitary representations, POVMs, covariance, and quantum reference frames.

Conventions: a group element acts on operators as g.A = U(g) A U(g)^dag and
on states as g.rho = U(g)^dag rho U(g), so that tr[(g.rho) A] = tr[rho (g.A)].
Sample spaces of frame observables carry the left-multiplication action (on
the group itself) or the left coset action (on G/H).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .groups import CosetSpace, FiniteGroup, Subgroup
from .operators import (
    DEFAULT_TOL,
    as_operator,
    dagger,
    is_effect,
    is_hermitian,
    op_norm,
    pair_trace,
)


class CovarianceError(ValueError):
    """Raised when a POVM fails the covariance identity required of a frame."""


class UnsupportedFrameError(ValueError):
    """Raised when an operation needs a frame property (principal,
    localizable, ideal) that the given frame lacks."""


class ResolutionOfIdentityError(ValueError):
    """Raised when a coherent-state family fails to resolve the identity."""

    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(
            f"resolution-of-identity failure: frame operator deviates from a "
            f"scalar by {deviation:.3e} in operator norm"
        )


class UnitaryRep:
    """A unitary representation g -> U(g) of a finite group.

    Validates U(e) = I, unitarity of each U(g) and the homomorphism property
    U(g)U(h) = U(gh), all within ``tol``.
    """

    def __init__(
        self,
        group: FiniteGroup,
        matrices: Sequence[np.ndarray],
        kind: str = "custom",
        tol: float = DEFAULT_TOL,
        validate: bool = True,
    ) -> None:
        mats = np.asarray([as_operator(m) for m in matrices], dtype=complex)
        if mats.shape[0] != group.order:
            raise ValueError(f"need {group.order} matrices, got {mats.shape[0]}")
        dim = mats.shape[1]
        if validate:
            eye = np.eye(dim)
            if np.max(np.abs(mats[group.identity] - eye)) > tol:
                raise ValueError("U(e) is not the identity")
            for g in group.elements():
                if np.max(np.abs(mats[g] @ dagger(mats[g]) - eye)) > tol:
                    raise ValueError(f"U({g}) is not unitary")
            for g in group.elements():
                for h in group.elements():
                    gh = group.cayley[g, h]
                    if np.max(np.abs(mats[g] @ mats[h] - mats[gh])) > tol:
                        raise ValueError(f"homomorphism fails at pair ({g}, {h})")
        mats.setflags(write=False)
        self.group = group
        self.dim = dim
        self.matrices = mats
        self.kind = kind

    def mat(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def act_op(self, g: int, a: np.ndarray) -> np.ndarray:
        """g.A = U(g) A U(g)^dag."""
        a = np.asarray(a, dtype=complex)
        if a.shape != (self.dim, self.dim):
            raise ValueError(f"operator shape {a.shape} does not match rep dim {self.dim}")
        u = self.matrices[g]
        return u @ a @ dagger(u)

    def act_state(self, g: int, rho: np.ndarray) -> np.ndarray:
        """g.rho = U(g)^dag rho U(g), the dual action on states."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.dim, self.dim):
            raise ValueError(f"state shape {rho.shape} does not match rep dim {self.dim}")
        u = self.matrices[g]
        return dagger(u) @ rho @ u

    def tensor(self, other: "UnitaryRep") -> "UnitaryRep":
        """Pointwise tensor product representation on the same group."""
        if other.group != self.group:
            raise ValueError("tensor factors must represent the same group")
        mats = [np.kron(self.matrices[g], other.matrices[g]) for g in self.group.elements()]
        return UnitaryRep(self.group, mats, kind="custom", validate=False)

    def __repr__(self) -> str:
        return f"UnitaryRep({self.group.name}, dim={self.dim}, kind={self.kind})"


def left_regular_rep(group: FiniteGroup) -> UnitaryRep:
    """Permutation matrices U(g)|h> = |gh> on C^|G|."""
    n = group.order
    mats = np.zeros((n, n, n), dtype=complex)
    for g in range(n):
        for h in range(n):
            mats[g, group.cayley[g, h], h] = 1.0
    return UnitaryRep(group, mats, kind="left_regular", validate=False)


def left_right_rep(group: FiniteGroup) -> UnitaryRep:
    """Permutation matrices U(g)|h> = |h g^-1> on C^|G|."""
    n = group.order
    mats = np.zeros((n, n, n), dtype=complex)
    for g in range(n):
        ginv = group.inv(g)
        for h in range(n):
            mats[g, group.cayley[h, ginv], h] = 1.0
    return UnitaryRep(group, mats, kind="left_right", validate=False)


def trivial_rep(group: FiniteGroup, dim: int = 1) -> UnitaryRep:
    eye = np.eye(dim, dtype=complex)
    return UnitaryRep(group, [eye] * group.order, kind="custom", validate=False)


def rep_from_matrices(group: FiniteGroup, matrices: Sequence[np.ndarray],
                      tol: float = DEFAULT_TOL) -> UnitaryRep:
    """Validated representation from explicit matrices indexed by element."""
    return UnitaryRep(group, matrices, kind="custom", tol=tol, validate=True)


def g_act_op(rep: UnitaryRep, g: int, a: np.ndarray) -> np.ndarray:
    return rep.act_op(g, a)


def g_act_state(rep: UnitaryRep, g: int, rho: np.ndarray) -> np.ndarray:
    return rep.act_state(g, rho)


# ---------------------------------------------------------------------------
# Sample spaces and POVMs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpace:
    """Sample space = the group itself, with left multiplication."""
    group: FiniteGroup

    @property
    def size(self) -> int:
        return self.group.order

    def act(self, g: int, x: int) -> int:
        return int(self.group.cayley[g, x])


@dataclass(frozen=True)
class CosetSampleSpace:
    """Sample space = left cosets G/H with the coset action."""
    cosets: CosetSpace

    @property
    def group(self) -> FiniteGroup:
        return self.cosets.parent

    @property
    def size(self) -> int:
        return self.cosets.n_cosets

    def act(self, g: int, x: int) -> int:
        return self.cosets.act(g, x)


@dataclass(frozen=True)
class PointSpace:
    """A plain finite sample space without a group action."""
    n: int

    @property
    def size(self) -> int:
        return self.n

    def act(self, g: int, x: int) -> int:
        raise ValueError("this sample space carries no group action")


class POVM:
    """A POVM on a finite sample space: one effect per point, summing to I."""

    def __init__(self, space, effects: Sequence[np.ndarray], tol: float = DEFAULT_TOL) -> None:
        effects = [as_operator(e) for e in effects]
        if len(effects) != space.size:
            raise ValueError(f"need {space.size} effects, got {len(effects)}")
        dim = effects[0].shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for i, e in enumerate(effects):
            if e.shape[0] != dim:
                raise ValueError("all effects must share one dimension")
            if not is_effect(e, tol):
                raise ValueError(f"entry {i} is not an effect (0 <= E <= 1)")
            total += e
        if np.max(np.abs(total - np.eye(dim))) > tol:
            raise ValueError("effects do not sum to the identity")
        self.space = space
        self.effects = [e.copy() for e in effects]
        self.dim = dim

    @property
    def size(self) -> int:
        return self.space.size

    def effect(self, x: int) -> np.ndarray:
        return self.effects[x]

    def act(self, g: int, x: int) -> int:
        return self.space.act(g, x)

    def __repr__(self) -> str:
        return f"POVM({self.size} outcomes, dim={self.dim})"


def canonical_pvm(rep: UnitaryRep) -> POVM:
    """The sharp covariant PVM matched to one of the built-in regular reps.

    For the left-regular representation this is P(g) = |g><g|; for the
    left-right representation it is P(g) = |g^-1><g^-1|.
    """
    group = rep.group
    n = group.order
    if rep.kind == "left_regular":
        point = list(range(n))
    elif rep.kind == "left_right":
        point = [group.inv(g) for g in range(n)]
    else:
        raise ValueError("canonical_pvm requires a left_regular or left_right rep")
    effects = []
    for g in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[point[g], point[g]] = 1.0
        effects.append(e)
    return POVM(GroupSpace(group), effects)


def uniform_povm(rep: UnitaryRep) -> POVM:
    """The trivially covariant POVM E(g) = I / |G| on the group."""
    n = rep.group.order
    return POVM(GroupSpace(rep.group), [np.eye(rep.dim, dtype=complex) / n] * n)


def coherent_state_povm(rep: UnitaryRep, seed_vector: np.ndarray,
                        tol: float = DEFAULT_TOL) -> POVM:
    """Covariant POVM from the orbit of a seed vector.

    With phi(g) = U(g) phi, the frame operator S = sum_g |phi(g)><phi(g)| must
    be a scalar multiple lam * I of the identity; the effects are then
    |phi(g)><phi(g)| / lam.
    """
    phi = np.asarray(seed_vector, dtype=complex).reshape(-1)
    if phi.shape[0] != rep.dim:
        raise ValueError(f"seed vector length {phi.shape[0]} does not match rep dim {rep.dim}")
    orbit = [rep.mat(g) @ phi for g in rep.group.elements()]
    frame_op = sum(np.outer(v, np.conj(v)) for v in orbit)
    lam = np.trace(frame_op).real / rep.dim
    deviation = op_norm(frame_op - lam * np.eye(rep.dim))
    if deviation > tol:
        raise ResolutionOfIdentityError(deviation)
    effects = [np.outer(v, np.conj(v)) / lam for v in orbit]
    return POVM(GroupSpace(rep.group), effects)


def coset_permutation_rep(cosets: CosetSpace) -> UnitaryRep:
    """Permutation representation of G on the coset space, U(g)|c> = |g.c>."""
    n = cosets.parent.order
    m = cosets.n_cosets
    mats = np.zeros((n, m, m), dtype=complex)
    for g in range(n):
        for c in range(m):
            mats[g, cosets.act(g, c), c] = 1.0
    return UnitaryRep(cosets.parent, mats, kind="custom", validate=False)


def canonical_coset_pvm(cosets: CosetSpace) -> POVM:
    """The sharp covariant PVM P(c) = |c><c| on the coset permutation space."""
    m = cosets.n_cosets
    effects = []
    for c in range(m):
        e = np.zeros((m, m), dtype=complex)
        e[c, c] = 1.0
        effects.append(e)
    return POVM(CosetSampleSpace(cosets), effects)


# ---------------------------------------------------------------------------
# Covariance and frame classification
# ---------------------------------------------------------------------------

def covariance_deviation(povm: POVM, rep: UnitaryRep, action=None) -> float:
    """max over (g, x) of || U(g) E(x) U(g)^dag - E(g.x) ||."""
    if rep.dim != povm.dim:
        raise ValueError("representation and POVM dimensions differ")
    act = action if action is not None else povm.act
    worst = 0.0
    for g in rep.group.elements():
        for x in range(povm.size):
            dev = op_norm(rep.act_op(g, povm.effect(x)) - povm.effect(act(g, x)))
            worst = max(worst, dev)
    return worst


def is_covariant(povm: POVM, rep: UnitaryRep, action=None, tol: float = DEFAULT_TOL) -> bool:
    """Exhaustive check of E(g.x) = U(g) E(x) U(g)^dag over all pairs."""
    return covariance_deviation(povm, rep, action) <= tol


@dataclass(frozen=True)
class Frame:
    """A quantum reference frame: a representation with a covariant POVM,
    together with its computed classification flags."""

    rep: UnitaryRep
    povm: POVM
    principal: bool
    sharp: bool
    ideal: bool
    localizable: bool
    complete: bool
    isotropy: Subgroup

    @property
    def group(self) -> FiniteGroup:
        return self.rep.group

    @property
    def dim(self) -> int:
        return self.rep.dim

    def __repr__(self) -> str:
        flags = [name for name in ("principal", "sharp", "ideal", "localizable", "complete")
                 if getattr(self, name)]
        return f"Frame({self.group.name}, dim={self.dim}, {'/'.join(flags) or 'plain'})"


def classify_frame(rep: UnitaryRep, povm: POVM, tol: float = DEFAULT_TOL) -> Frame:
    """Check covariance and compute the frame classification flags.

    localizable uses the norm-1 property on singletons only: for positive
    effects E(X) >= E({x}) forces ||E(X)|| >= max_x ||E({x})|| while
    ||E(X)|| <= 1 always, so singleton norms in {0, 1} decide every subset.
    """
    dev = covariance_deviation(povm, rep)
    if dev > tol:
        raise CovarianceError(f"POVM is not covariant (deviation {dev:.3e})")
    group = rep.group
    principal = isinstance(povm.space, GroupSpace)
    sharp = all(op_norm(e @ e - e) <= tol for e in povm.effects)
    norms = [op_norm(e) for e in povm.effects]
    localizable = all(nm <= tol or abs(nm - 1.0) <= tol for nm in norms)
    iso_members = [
        h for h in group.elements()
        if all(op_norm(rep.act_op(h, povm.effect(x)) - povm.effect(x)) <= tol
               for x in range(povm.size))
    ]
    isotropy = Subgroup(group, iso_members)
    complete = isotropy.is_trivial
    return Frame(
        rep=rep,
        povm=povm,
        principal=principal,
        sharp=sharp,
        ideal=principal and sharp,
        localizable=localizable,
        complete=complete,
        isotropy=isotropy,
    )


def canonical_frame(group: FiniteGroup, kind: str = "left_regular") -> Frame:
    """The ideal frame built from a regular representation of the group."""
    rep = left_regular_rep(group) if kind == "left_regular" else left_right_rep(group)
    return classify_frame(rep, canonical_pvm(rep))


def localizing_state(frame: Frame, x: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The pure state xi with <xi|E(x)|xi> = 1, exact in finite dimension.

    Requires a localizable frame; the state is the top eigenvector of E(x).
    """
    if not frame.localizable:
        raise UnsupportedFrameError("localizing states require a localizable frame")
    e = frame.povm.effect(x)
    vals, vecs = np.linalg.eigh((e + dagger(e)) / 2)
    top = vals[-1]
    if abs(top - 1.0) > tol:
        raise UnsupportedFrameError(
            f"effect at sample point {x} has norm {top:.6f}; cannot localize there"
        )
    v = vecs[:, -1]
    return np.outer(v, np.conj(v))


def born(povm: POVM, rho: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    """Outcome distribution mu(x) = tr[rho E(x)] of a POVM in a state."""
    rho = as_operator(rho)
    if rho.shape[0] != povm.dim:
        raise ValueError(f"state dim {rho.shape[0]} does not match POVM dim {povm.dim}")
    if abs(np.trace(rho) - 1) > tol or not is_hermitian(rho, tol):
        raise ValueError("born requires a density operator (unit trace, Hermitian)")
    return np.array([pair_trace(rho, e).real for e in povm.effects])
