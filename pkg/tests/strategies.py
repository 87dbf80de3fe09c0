"""Hypothesis strategies for random expression trees and finite measure spaces."""

from hypothesis import strategies as st

from young.funcrep import (
    Compose, Convex, Id, IdPlusSoft, Log1p, Power, PowerOf, Scale, Sum, WeightVector,
)
from young.lpspace import DiscreteMeasureSpace, MeasurableFn

alphas = st.floats(0.2, 1.0)
scales = st.floats(0.1, 10.0)

atoms = st.one_of(
    st.just(Id()),
    st.just(Log1p()),
    alphas.map(Power),
    st.floats(0.05, 10.0).map(IdPlusSoft),
)


@st.composite
def weight_vectors(draw, k):
    raw = draw(st.lists(st.floats(0.05, 1.0), min_size=k, max_size=k))
    total = sum(raw)
    w = [r / total for r in raw[:-1]]
    w.append(1.0 - sum(w))
    return WeightVector(tuple(w))


def _extend(children):
    return st.one_of(
        st.tuples(children, scales).map(lambda t: Scale(*t)),
        st.tuples(st.floats(0.2, 0.99), children).map(lambda t: PowerOf(*t)),
        st.tuples(children, children).map(lambda t: Compose(*t)),
        st.lists(children, min_size=2, max_size=3).map(lambda xs: Sum(tuple(xs))),
        st.lists(children, min_size=2, max_size=3).flatmap(
            lambda xs: weight_vectors(len(xs)).map(lambda w: Convex(w, tuple(xs)))
        ),
    )


trees = st.recursive(atoms, _extend, max_leaves=4)


@st.composite
def spaces_and_functions(draw, max_atoms=6):
    k = draw(st.integers(1, max_atoms))
    w = draw(st.lists(st.floats(0.1, 2.0), min_size=k, max_size=k))
    v = draw(st.lists(st.floats(0.0, 10.0), min_size=k, max_size=k))
    space = DiscreteMeasureSpace(tuple((f"w{i}", wi) for i, wi in enumerate(w)))
    return space, MeasurableFn(tuple(v))
