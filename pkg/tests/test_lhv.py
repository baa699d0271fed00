import itertools

import numpy as np
import pytest

from ghzlab import DimensionOverflowError, ParameterError
from ghzlab.ghz import GhzSpec, expected_residue, joint_distribution
from ghzlab.lhv import (
    ConstraintSystem,
    LhvAssignment,
    Satisfiability,
    brute_force_search,
    build_constraints,
    decide,
    exhaustive_search,
    gcd_criterion,
    realism_system,
    unsat_certificate,
    verify_assignment,
)
from ghzlab.observables import concurrent_set

SAT, UNSAT = Satisfiability.SAT, Satisfiability.UNSAT


def test_build_constraints_examples():
    cs = build_constraints(2, 3)
    assert len(cs.realism_equations) == 3
    assert all(eq.rhs == 1 for eq in cs.realism_equations)
    assert cs.quantum_equation.rhs == 0 and cs.quantum_equation.x_coeffs == (1, 1, 1)

    assert all(eq.rhs == 3 for eq in build_constraints(4, 3).realism_equations)

    cs = build_constraints(4, 5)
    assert len(cs.realism_equations) == 5
    for i, eq in enumerate(cs.realism_equations):
        assert sum(eq.x_coeffs) == 1 and eq.x_coeffs[i] == 1
        assert sum(eq.y_coeffs) == 4 and eq.y_coeffs[i] == 0


def test_build_constraints_validation():
    for d, N in [(1, 3), (4, 4), (4, 1)]:
        with pytest.raises(ParameterError):
            build_constraints(d, N)


def test_verify_assignment_examples():
    cs = build_constraints(3, 3)
    assert verify_assignment(cs, LhvAssignment.from_ints((0, 0, 0), (1, 1, 1), 3))
    cs = build_constraints(2, 3)
    assert not verify_assignment(cs, LhvAssignment.from_ints((0, 0, 0), (0, 0, 0), 2))
    trivial = realism_system(1, 3)
    assert verify_assignment(trivial, LhvAssignment.from_ints((5, 2, 7), (1, 0, 3), 1))
    with pytest.raises(ParameterError):
        verify_assignment(cs, LhvAssignment.from_ints((0, 0), (0, 0), 2))


def test_search_examples():
    assert exhaustive_search(build_constraints(2, 3)) is None
    assert exhaustive_search(build_constraints(4, 3)) is None
    cs = build_constraints(3, 3)
    found = exhaustive_search(cs)
    assert found is not None and verify_assignment(cs, found)


@pytest.mark.parametrize("d", [2, 3])
def test_forced_x_reduction_matches_full_enumeration(d):
    cs = build_constraints(d, 3)
    assert (exhaustive_search(cs) is None) == (brute_force_search(cs) is None)
    # count of solutions: every y gives exactly one x, so full space holds d^N * [criterion] of them
    full = sum(
        verify_assignment(cs, LhvAssignment.from_ints(v[:3], v[3:], d))
        for v in itertools.product(range(d), repeat=6)
    )
    ys = sum(
        1
        for y in itertools.product(range(d), repeat=3)
        if (-3 - 2 * sum(y)) % d == 0
    )
    assert full == ys


@pytest.mark.parametrize("d", range(2, 7))
@pytest.mark.parametrize("N", [3, 5])
def test_gcd_criterion_agrees_with_search(d, N):
    cs = build_constraints(d, N)
    found = exhaustive_search(cs)
    assert gcd_criterion(d, N) == (SAT if found is not None else UNSAT)
    if found is not None:
        assert verify_assignment(cs, found)


def test_gcd_criterion_examples():
    for d in (2, 4, 6, 8, 10):
        for N in (3, 5, 7, 9):
            assert gcd_criterion(d, N) is UNSAT
    assert gcd_criterion(3, 3) is SAT
    assert gcd_criterion(9, 7) is UNSAT
    assert exhaustive_search(build_constraints(9, 7)) is None


@pytest.mark.parametrize("d", [2, 4, 6, 8])
@pytest.mark.parametrize("N", [3, 5])
def test_even_d_theorem(d, N):
    assert exhaustive_search(build_constraints(d, N)) is None


@pytest.mark.parametrize("d, N", [(2, 3), (4, 3), (4, 5), (6, 3)])
def test_quantum_support_satisfies_every_relation(d, N):
    # every realism equation's outcome-sum constraint AND the quantum one hold with certainty
    spec = GhzSpec(d, N)
    for label in concurrent_set(d, N).setting_labels:
        dist = joint_distribution(spec, label)
        assert dist.mass_off_residue(expected_residue(label, d)) < 1e-10


def test_unsat_certificate():
    cert = unsat_certificate(4, 3)
    assert cert["coefficient"] == 2 and cert["rhs"] == 1 and cert["gcd"] == 2
    assert not cert["gcd_divides_rhs"]
    assert unsat_certificate(3, 3)["gcd_divides_rhs"]


def test_decide():
    v = decide(4, 3)
    assert v.status is UNSAT and v.agrees and v.assignment is None
    v = decide(5, 3)
    assert v.status is SAT and v.assignment is not None
    assert verify_assignment(build_constraints(5, 3), v.assignment)


def test_parallel_search_verdict():
    # 7^7 = 823543 points, enough to exercise the partitioned path
    cs = build_constraints(7, 7)
    serial = exhaustive_search(cs)
    parallel = exhaustive_search(cs, workers=2)
    assert (serial is None) == (parallel is None)
    assert parallel is None or verify_assignment(cs, parallel)
    cs = build_constraints(8, 7)
    assert exhaustive_search(cs, workers=2) is None


def test_search_cap(monkeypatch):
    monkeypatch.setenv("GHZLAB_MAX_SPACE", "1000")
    with pytest.raises(DimensionOverflowError):
        exhaustive_search(build_constraints(4, 5))


def test_even_party_count_is_accepted_by_the_criterion():
    # the paper makes no claim here; the verdict is simply reported
    assert gcd_criterion(4, 4) in (SAT, UNSAT)
    cs = realism_system(3, 4)
    assert isinstance(cs, ConstraintSystem)
    found = exhaustive_search(cs)
    assert (found is not None) == (gcd_criterion(3, 4) is SAT)


def test_assignment_roundtrip():
    a = LhvAssignment.from_ints([5, -1, 2], [0, 3, 4], 4)
    assert a.as_ints() == ([1, 3, 2], [0, 3, 0])
    assert np.array(a.as_ints()).shape == (2, 3)
