import random

import pytest

from logk3.boundary import Circular, Elliptic, LogSurfacePair, Nodal
from logk3.classify import (
    COUNTABLY_INFINITE,
    INCONSISTENT,
    NOT_INFINITE,
    a1_abundance,
    b2_fails_on_model,
    canonical_cycle,
    enumerate_types,
    fig2_witness,
    hodge_obstruction,
    normalize,
)
from logk3.surgery import run_script
from scripts import random_script, random_type


def pair(*lam):
    return LogSurfacePair(Circular(tuple(lam)))


def label(S):
    return normalize(S)[0].label


@pytest.mark.parametrize(
    "shape, expected",
    [
        (Elliptic(9), "C0"),
        (Nodal(9), "C1"),
        (Circular((5, -1)), "C1"),
        (Circular((1, -2, -3, -2, -4)), "C2"),
        (Circular((0, -2, -3, -2, -4)), "C2"),
        (Circular((0, 7)), "C3"),
        (Circular((0, 0)), "C3"),
        (Circular((1, 1)), "C4"),
        (Circular((1, 3)), "C4"),
        (Circular((3, 3)), INCONSISTENT),
        (Circular((2, 3, -2)), INCONSISTENT),
        (Circular((-2, -2, -2)), "C2"),
    ],
)
def test_examples(shape, expected):
    assert label(LogSurfacePair(shape)) == expected


def test_normal_types_are_rotated():
    cls, normal, _ = normalize(pair(-2, -2, 3, -2))
    assert cls.label == "C2" and cls.normal_type == (3, -2, -2, -2)
    assert normal.shape.lambdas == cls.normal_type
    cls, _, _ = normalize(pair(5, 0))
    assert cls.normal_type == (5, 0)


def test_hodge_obstruction():
    assert hodge_obstruction(Circular((1, 1))) is None
    assert hodge_obstruction(Circular((2, 2))).startswith("Hodge index")
    assert hodge_obstruction(Circular((1, 4))).startswith("Hodge index")
    assert hodge_obstruction(Nodal(9)) is None
    cls, _, trace = normalize(pair(2, 3, -2))
    assert not cls.consistent and "Hodge index" in cls.reason and len(trace) == 0


def test_normal_form_is_idempotent():
    rng = random.Random(4)
    for _ in range(500):
        cls, normal, _ = normalize(pair(*random_type(rng)))
        if not cls.consistent:
            continue
        cls2, normal2, trace2 = normalize(normal)
        assert cls2 == cls and normal2.shape == normal.shape and len(trace2) == 0


def test_termination_bound():
    # each pivot block ends with a blowdown, so the trace stays linear in n + sum|lambda|
    rng = random.Random(5)
    for _ in range(1000):
        lam = random_type(rng, 6, -8, 8)
        _, _, trace = normalize(pair(*lam))
        assert len(trace) <= 2 * (len(lam) + sum(abs(x) for x in lam)) + 2


def test_class_invariant_under_random_log_isomorphisms():
    rng = random.Random(6)
    for _ in range(400):
        S = pair(*random_type(rng))
        base = label(S)
        _, pairs = random_script(rng, S)
        for T in pairs[1:]:
            assert label(T) == base, (S.shape, T.shape)


def test_hodge_signature_is_invariant():
    from logk3.boundary import shape_matrix
    from logk3.lattice import matrix_signature

    rng = random.Random(7)
    for _ in range(300):
        S = pair(*random_type(rng))
        p0, _, z0 = matrix_signature(shape_matrix(S.shape))
        _, pairs = random_script(rng, S)
        for T in pairs[1:]:
            p, _, z = matrix_signature(shape_matrix(T.shape))
            assert (p, z) == (p0, z0)


def test_trace_replays_to_normal_form():
    rng = random.Random(8)
    for _ in range(200):
        S = pair(*random_type(rng))
        cls, normal, trace = normalize(S)
        out, _ = run_script(S, [t.step for t in trace.steps])
        assert sorted(out.lambdas) == sorted(normal.lambdas)


# -- (B2) and the decision ---------------------------------------------------------


def test_two_cycle_never_fails_on_its_own_model():
    assert not b2_fails_on_model(pair(1, 1)).fails
    assert b2_fails_on_model(fig2_witness(pair(1, 1))).fails


def test_fig2_witness_shape():
    assert fig2_witness(pair(1, 3)).shape.lambdas == (-1, -1, 1, -1)
    with pytest.raises(ValueError):
        fig2_witness(pair(1, 1, 1))


def test_b2_on_longer_cycles():
    res = b2_fails_on_model(pair(0, 0, 1))
    assert res.fails and len(res.witnessing_pairs) == 3 and res.independence == "assumed"
    assert not b2_fails_on_model(pair(0, -2, -3, -2, -4)).fails


@pytest.mark.parametrize("lam", [(1, 1), (1, 2), (1, 3), (2, 1), (-1, -1, 1, -1)])
def test_c4_verdict_has_failing_witness(lam):
    v = a1_abundance(pair(*lam))
    assert v.kind == NOT_INFINITE and v.canonical_class.label == "C4"
    assert v.b2_check.fails
    assert v.describe() == "not infinitely many A¹ curves"


def test_countable_and_inconsistent_verdicts():
    assert a1_abundance(pair(0, -2, -3)).kind == COUNTABLY_INFINITE
    assert a1_abundance(LogSurfacePair(Nodal(9))).countably_infinite
    assert a1_abundance(pair(4, 4)).kind == INCONSISTENT


# -- enumeration -------------------------------------------------------------------


def test_canonical_cycle():
    assert canonical_cycle((3, 1, 2)) == (1, 2, 3)
    assert canonical_cycle((1, 3, 2)) == (1, 2, 3)
    assert canonical_cycle((0, -1)) == (-1, 0)


def test_enumerate_small_box():
    rows = enumerate_types(2, 0, 1)
    assert [(r.type, r.canonical_class.label, r.verdict.kind) for r in rows] == [
        ((0, 0), "C3", COUNTABLY_INFINITE),
        ((0, 1), "C3", COUNTABLY_INFINITE),
        ((1, 1), "C4", NOT_INFINITE),
    ]


def test_enumerate_rows_are_dihedral_representatives():
    rows = enumerate_types(4, -2, 1)
    types = [r.type for r in rows]
    assert types == sorted(set(types))
    assert all(canonical_cycle(t) == t for t in types)
    for r in rows:
        assert r.canonical_class == normalize(pair(*r.type))[0]
