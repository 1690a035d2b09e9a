"""Built-in groups and small concrete representations.

Every verification suite must run without authoring files, so this module
catalogs the groups z1..z8, d3..d5, s3, s4 and q8, and gives each one a small
(dimension <= 3) unitary representation to serve as the system factor.
"""

from __future__ import annotations

import numpy as np

from .groups import FiniteGroup, cyclic_group, dihedral_group, quaternion_group, symmetric_group
from .quantum import UnitaryRep

BUILTIN_NAMES = (
    "z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8",
    "d3", "d4", "d5", "s3", "s4", "q8",
)


def builtin_group(name: str) -> FiniteGroup:
    key = name.strip().lower()
    if key.startswith("z") and key[1:].isdigit():
        n = int(key[1:])
        if 1 <= n <= 8:
            return cyclic_group(n)
    if key.startswith("d") and key[1:].isdigit():
        n = int(key[1:])
        if 3 <= n <= 5:
            return dihedral_group(n)
    if key in ("s3", "s4"):
        return symmetric_group(int(key[1]))
    if key == "q8":
        return quaternion_group()
    raise ValueError(f"unknown builtin group {name!r}; choose one of {', '.join(BUILTIN_NAMES)}")


def character_rep(group: FiniteGroup, exponents) -> UnitaryRep:
    """Diagonal representation of a cyclic group: U(g) = diag(w^(g*k_j)) with
    w the primitive |G|-th root of unity and k_j the given exponents."""
    n = group.order
    w = np.exp(2j * np.pi / n)
    mats = [np.diag([w ** (g * int(k)) for k in exponents]) for g in range(n)]
    return UnitaryRep(group, mats, kind="custom", validate=True)


def permutation_rep(group: FiniteGroup) -> UnitaryRep:
    """Permutation matrices of a symmetric group built by symmetric_group."""
    perms = getattr(group, "permutations", None)
    if perms is None:
        raise ValueError("permutation_rep needs a group built by symmetric_group")
    n = len(perms[0])
    mats = np.zeros((group.order, n, n), dtype=complex)
    for g, p in enumerate(perms):
        for i in range(n):
            mats[g, p[i], i] = 1.0
    return UnitaryRep(group, mats, kind="custom", validate=False)


def standard_rep_symmetric(group: FiniteGroup) -> UnitaryRep:
    """The (n-1)-dimensional standard representation of S_n: the permutation
    action compressed onto the complement of the uniform vector."""
    perm = permutation_rep(group)
    n = perm.dim
    basis = np.linalg.qr(np.column_stack([np.ones(n)] + [np.eye(n)[:, k] for k in range(n - 1)]))[0]
    q = basis[:, 1:]
    mats = [q.T @ perm.mat(g) @ q for g in group.elements()]
    return UnitaryRep(group, mats, kind="custom", validate=True)


def sign_rep(group: FiniteGroup, extra_dim: int = 2) -> UnitaryRep:
    """diag(1, sgn(pi)) representation of a symmetric group."""
    perms = getattr(group, "permutations", None)
    if perms is None:
        raise ValueError("sign_rep needs a group built by symmetric_group")

    def sign(p):
        seen = [False] * len(p)
        s = 1
        for i in range(len(p)):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    mats = [np.diag([1.0] + [float(sign(p))] * (extra_dim - 1)) for p in perms]
    return UnitaryRep(group, mats, kind="custom", validate=True)


def dihedral_standard_rep(group: FiniteGroup) -> UnitaryRep:
    """The 2-dimensional rotation/reflection representation of a dihedral
    group built by dihedral_group (rotations first, then reflections)."""
    order = group.order
    if order % 2 != 0:
        raise ValueError("dihedral_standard_rep needs a dihedral group")
    n = order // 2
    mats = []
    for k in range(n):
        t = 2 * np.pi * k / n
        mats.append(np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]], dtype=complex))
    for k in range(n):
        t = -2 * np.pi * k / n       # reflection angles run against the rotations
        mats.append(np.array([[np.cos(t), np.sin(t)], [np.sin(t), -np.cos(t)]], dtype=complex))
    return UnitaryRep(group, mats, kind="custom", validate=True)


def quaternion_2d_rep(group: FiniteGroup) -> UnitaryRep:
    """The faithful 2-dimensional representation of Q8 by quaternion units."""
    eye = np.eye(2, dtype=complex)
    qi = 1j * np.array([[1, 0], [0, -1]], dtype=complex)
    qj = 1j * np.array([[0, -1j], [1j, 0]], dtype=complex)
    qk = 1j * np.array([[0, 1], [1, 0]], dtype=complex)
    table = [eye, -eye, qi, -qi, qj, -qj, qk, -qk]
    return UnitaryRep(group, table, kind="custom", validate=True)


def standard_system_rep(group: FiniteGroup, dim: int = 2) -> UnitaryRep:
    """A small concrete representation of a builtin group at the given
    dimension (2 or 3), used as the system factor in verification suites."""
    name = group.name
    if name.startswith("z"):
        n = group.order
        return character_rep(group, [k % n for k in range(dim)])
    if name.startswith("d"):
        if dim == 2:
            return dihedral_standard_rep(group)
        base = dihedral_standard_rep(group)
        mats = [np.block([[base.mat(g), np.zeros((2, 1))], [np.zeros((1, 2)), np.ones((1, 1))]])
                for g in group.elements()]
        return UnitaryRep(group, mats, kind="custom", validate=False)
    if name.startswith("s"):
        n = int(name[1])
        if dim == n - 1:
            return standard_rep_symmetric(group)
        if dim == n:
            return permutation_rep(group)
        return sign_rep(group, extra_dim=dim)
    if name == "q8":
        if dim == 2:
            return quaternion_2d_rep(group)
        base = quaternion_2d_rep(group)
        mats = [np.block([[base.mat(g), np.zeros((2, 1))], [np.zeros((1, 2)), np.ones((1, 1))]])
                for g in group.elements()]
        return UnitaryRep(group, mats, kind="custom", validate=False)
    raise ValueError(f"no standard system representation for group {name!r} at dim {dim}")
