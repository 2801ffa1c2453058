"""Hypothesis strategies for formulas, programs and small structures."""

from hypothesis import strategies as st

from kripkelab.kripke import Frame, Model
from kripkelab.programs import Atom, Comp, DynNeg, Test, Union
from kripkelab.syntax import fo, modal


def modal_formulas(props=("p", "q"), labels=("a", "b"), max_leaves=12, constants=True):
    leaves = [st.sampled_from(props).map(modal.Prop)]
    if constants:
        leaves.append(st.sampled_from([modal.TOP, modal.BOT]))

    def extend(sub):
        binary = st.sampled_from([modal.And, modal.Or, modal.Implies, modal.Iff])
        return st.one_of(
            sub.map(modal.Not),
            st.builds(lambda c, a, b: c(a, b), binary, sub, sub),
            st.builds(modal.Dia, st.sampled_from(labels), sub),
            st.builds(modal.Box, st.sampled_from(labels), sub),
        )
    return st.recursive(st.one_of(*leaves), extend, max_leaves=max_leaves)


def fo_formulas(variables=("x", "y", "z"), max_leaves=10):
    var = st.sampled_from(variables)
    atoms = st.one_of(
        st.builds(lambda r, v: fo.Atom(r, (v,)), st.sampled_from(["P", "Q"]), var),
        st.builds(lambda r, v, w: fo.Atom(r, (v, w)), st.sampled_from(["R", "S"]), var, var),
        st.builds(fo.Equals, var, var),
        st.sampled_from([fo.TRUE, fo.FALSE]),
    )

    def extend(sub):
        return st.one_of(
            sub.map(fo.Not),
            st.builds(lambda c, a, b: c(a, b), st.sampled_from([fo.And, fo.Or, fo.Implies]), sub, sub),
            st.builds(lambda q, v, b: q(v, b), st.sampled_from([fo.Forall, fo.Exists]), var, sub),
            st.builds(lambda q, k, v, b: q(k, v, b), st.sampled_from([fo.CountGE, fo.CountLE]),
                      st.integers(0, 3), var, sub),
            st.builds(lambda b, s, t: fo.TC("x", "y", b, s, t), sub, var, var),
        )
    return st.recursive(atoms, extend, max_leaves=max_leaves)


def programs(props=("p",), labels=("a",), max_leaves=6):
    base = st.one_of(st.sampled_from(labels).map(Atom),
                     st.sampled_from(props).map(lambda p: Test(modal.Prop(p))))

    def extend(sub):
        return st.one_of(sub.map(DynNeg), st.builds(Comp, sub, sub), st.builds(Union, sub, sub))
    return st.recursive(base, extend, max_leaves=max_leaves)


@st.composite
def frames(draw, max_worlds=3, labels=("a",), min_worlds=1):
    n = draw(st.integers(min_worlds, max_worlds))
    pairs = [(v, w) for v in range(n) for w in range(n)]
    rels = {label: draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
            for label in labels}
    return Frame(n, rels)


@st.composite
def models(draw, max_worlds=3, props=("p", "q"), labels=("a",), min_worlds=1):
    F = draw(frames(max_worlds, labels, min_worlds))
    val = {p: draw(st.sets(st.integers(0, F.n - 1))) for p in props}
    return Model.on(F, val)
