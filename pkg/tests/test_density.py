import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from young.catalog import catalog, seeds_b1
from young.density import log_indices, power_root, theorem7_seq, theorem8_seq, verify_convergence
from young.fixed_b import h_b, member_fixed, scale_to_b
from young.funcrep import Compose, Convex, Id, IdPlusSoft, Log1p, Power, WeightVector, evaluate


def test_seq7_examples():
    assert evaluate(theorem7_seq(Power(0.5), 1.0, 1), 16.0) == pytest.approx(2.0, rel=1e-14)
    assert evaluate(theorem7_seq(Id(), 1.0, 3), 16.0) == pytest.approx(8.0, rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(catalog())), st.floats(0.01, 100), st.integers(1, 500))
def test_seq7_members_are_in_A_b(name, b, n):
    psi = theorem7_seq(catalog()[name], b, n)
    assert member_fixed(psi, b) and psi.in_A() is True


def test_power_root_examples():
    assert evaluate(power_root(1.0, 3), 16.0) == pytest.approx(8.0, rel=1e-14)
    assert evaluate(power_root(4.0, 2), 4.0) == pytest.approx(4.0, rel=1e-14)
    assert evaluate(theorem8_seq(Id(), 1.0, 3), 16.0) == pytest.approx(8.0, rel=1e-14)


def test_seq8_convex_maps_over_summands():
    p, l = seeds_b1()[:2]
    delta = Convex(WeightVector((0.5, 0.5)), (Compose(p, l), Compose(l, p)))
    out = theorem8_seq(delta, 1.0, 4)
    assert isinstance(out, Convex) and out.weights == delta.weights
    assert all(isinstance(a, Compose) for a in out.args)
    assert member_fixed(out, 1.0) and out.in_A() is True


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 300), st.sampled_from([0.5, 1.0, 4.0]))
def test_seq8_flagged_and_fixed(j, b):
    delta = scale_to_b(IdPlusSoft(1.0), b)
    out = theorem8_seq(delta, b, j)
    assert member_fixed(out, b) and out.in_A() is True


def test_seq8_rejects_unfixed():
    with pytest.raises(ValueError):
        theorem8_seq(Log1p(), 1.0, 2)


def test_log_indices():
    assert log_indices(20) == [1, 2, 3, 5, 8, 13, 20]
    assert log_indices(13) == [1, 2, 3, 5, 8, 13]


def test_convergence_log1p():
    target = scale_to_b(Log1p(), 1.0)
    rep = verify_convergence(target, lambda n: theorem7_seq(Log1p(), 1.0, n), 200, 0.05)
    assert rep.verdict == "converged" and rep.final <= 0.05
    assert rep.monotone_from is not None and rep.monotone_from <= 5


def test_convergence_id_decreasing():
    rep = verify_convergence(Id(), lambda n: theorem7_seq(Id(), 1.0, n), 50, 0.05)
    ds = [d for _, d in rep.pairs]
    assert all(b < a for a, b in zip(ds, ds[1:]))


def test_convergence_trivial_sequence():
    rep = verify_convergence(Log1p(), lambda n: Log1p(), 20, 1e-12)
    assert all(d == 0.0 for _, d in rep.pairs) and rep.verdict == "converged"


def test_stalled_sequence():
    rep = verify_convergence(Id(), lambda n: Power(0.5), 20, 0.05)
    assert rep.verdict == "stalled"


def test_n_max_precondition():
    with pytest.raises(ValueError):
        verify_convergence(Id(), lambda n: Id(), 5, 0.1)


@pytest.mark.parametrize("name", ["log1p", "power_half", "id_plus_soft"])
def test_domination_by_h_b(name):
    b = 1.0
    x = np.logspace(-3, 4, 64)
    target = scale_to_b(catalog()[name], b)
    assert np.all(evaluate(target, x) <= h_b(x, b) * (1 + 1e-12))
    for n in (1, 5, 50):
        psi = theorem7_seq(catalog()[name], b, n)
        assert np.all(evaluate(psi, x) <= h_b(x, b) * (1 + 1e-12))
