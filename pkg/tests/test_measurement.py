import numpy as np
import pytest

from qrframes import (
    MeasurementScheme,
    POVM,
    UnsupportedFrameError,
    born,
    canonical_frame,
    canonical_pvm,
    canonical_scheme,
    check_prc,
    check_rrc,
    classify_frame,
    cyclic_group,
    dihedral_group,
    left_regular_rep,
    rrc_relative_orientation,
    symmetric_group,
    uniform_povm,
)
from qrframes.operators import random_density
from qrframes.quantum import GroupSpace
from qrframes.relativize import PreconditionError

GROUPS = [cyclic_group(2), cyclic_group(4), symmetric_group(3), dihedral_group(4)]


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.name)
def test_canonical_scheme_prc_exact(group):
    scheme = canonical_scheme(group)
    report = check_prc(scheme)
    assert report["max_deviation"] <= 1e-10


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.name)
def test_canonical_scheme_rrc_exact(group):
    scheme = canonical_scheme(group)
    report = check_rrc(scheme, left_regular_rep(group))
    assert report["max_deviation"] <= 1e-10


def test_prc_statistics_match_state_sampling(s3, rng):
    # the operator identity implies the stated probability reproduction
    scheme = canonical_scheme(s3)
    u = scheme.interaction
    for _ in range(5):
        rho = random_density(rng, 6)
        evolved = u.conj().T @ np.kron(scheme.pointer_state, rho) @ u
        for y in range(6):
            lhs = np.trace(evolved @ np.kron(scheme.pointer_povm.effect(y), np.eye(6))).real
            rhs = born(scheme.target, rho)[y]
            assert lhs == pytest.approx(rhs)


def test_decoupled_scheme_constant_target(z3):
    # U = 1 and a constant target: E_S(x) = mu(x) * 1 satisfies reproduction
    rep = left_regular_rep(z3)
    pointer = canonical_pvm(rep)
    omega = np.diag([0.5, 0.3, 0.2]).astype(complex)
    mu = born(pointer, omega)
    target = POVM(GroupSpace(z3), [m * np.eye(3, dtype=complex) for m in mu])
    scheme = MeasurementScheme(
        interaction=np.eye(9, dtype=complex),
        pointer_povm=pointer,
        pointer_state=omega,
        outcome_map=list(range(3)),
        target=target,
    )
    assert check_prc(scheme)["max_deviation"] <= 1e-12


def test_perturbed_pointer_state_breaks_prc(z3):
    scheme = canonical_scheme(z3)
    drift = np.diag([0.9, 0.05, 0.05]).astype(complex)
    perturbed = MeasurementScheme(
        interaction=scheme.interaction,
        pointer_povm=scheme.pointer_povm,
        pointer_state=drift,
        outcome_map=scheme.outcome_map,
        target=scheme.target,
    )
    assert check_prc(perturbed)["max_deviation"] > 1e-3


def test_rrc_at_identity_is_prc(s3):
    scheme = canonical_scheme(s3)
    prc = check_prc(scheme)
    rep = left_regular_rep(s3)
    # restricting the relational check to h = e reproduces the plain one
    omega = scheme.pointer_state
    worst = 0.0
    for y in range(scheme.target.size):
        lhs_ops = scheme.evolved_pointer_effect(scheme.preimage(y))
        from qrframes import restrict

        lhs = restrict(omega, lhs_ops)
        worst = max(worst, np.max(np.abs(lhs - scheme.target.effect(y))))
    assert worst <= 1e-10
    assert prc["pass"]


def test_rrc_rejects_non_commuting_interaction(z3):
    n = 3
    swap = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            swap[j * 3 + i, i * 3 + j] = 1.0
    scheme = canonical_scheme(z3)
    swapped = MeasurementScheme(
        interaction=swap,
        pointer_povm=scheme.pointer_povm,
        pointer_state=scheme.pointer_state,
        outcome_map=scheme.outcome_map,
        target=scheme.target,
    )
    with pytest.raises(PreconditionError, match="commute"):
        check_rrc(swapped, left_regular_rep(z3))


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.name)
def test_rrc_relative_orientation_exact(group):
    frame = canonical_frame(group)
    system = canonical_frame(group)
    report = rrc_relative_orientation(frame, system)
    assert report["max_deviation"] <= 1e-10


def test_rrc_relative_orientation_sampled_statistics(z4, rng):
    # Born-level statement: localizing the frame at h and shifting the
    # read-out set reproduces the target statistics on sampled states
    from qrframes import kron, localizing_state, relative_orientation

    frame = canonical_frame(z4)
    system = canonical_frame(z4)
    orientation = relative_orientation(frame, system)
    omega = localizing_state(frame, z4.identity)
    for _ in range(5):
        rho = random_density(rng, 4)
        target_stats = born(system.povm, rho)
        for h in z4.elements():
            state = kron(frame.rep.act_state(h, omega), rho)
            mu = born(orientation, state)
            for x in z4.elements():
                assert mu[z4.mul(h, x)] == pytest.approx(target_stats[x])


def test_rrc_relative_orientation_needs_localizable(z3):
    rep = left_regular_rep(z3)
    fuzzy = classify_frame(rep, uniform_povm(rep))
    with pytest.raises(UnsupportedFrameError):
        rrc_relative_orientation(fuzzy, canonical_frame(z3))


def test_scheme_validation():
    z2 = cyclic_group(2)
    scheme = canonical_scheme(z2)
    with pytest.raises(ValueError, match="unitary"):
        MeasurementScheme(
            interaction=np.ones((4, 4), dtype=complex),
            pointer_povm=scheme.pointer_povm,
            pointer_state=scheme.pointer_state,
            outcome_map=[0, 1],
            target=scheme.target,
        )
    with pytest.raises(ValueError, match="total"):
        MeasurementScheme(
            interaction=scheme.interaction,
            pointer_povm=scheme.pointer_povm,
            pointer_state=scheme.pointer_state,
            outcome_map=[0],
            target=scheme.target,
        )
    with pytest.raises(ValueError, match="outside"):
        MeasurementScheme(
            interaction=scheme.interaction,
            pointer_povm=scheme.pointer_povm,
            pointer_state=scheme.pointer_state,
            outcome_map=[0, 5],
            target=scheme.target,
        )


def test_outcome_map_merging(z4):
    # a non-injective read-out map sums the pointer effects it identifies
    scheme = canonical_scheme(z4)
    merged = scheme.evolved_pointer_effect([0, 2])
    parts = scheme.evolved_pointer_effect([0]) + scheme.evolved_pointer_effect([2])
    assert np.allclose(merged, parts)
