import random

import pytest
from hypothesis import given, strategies as st

from kripkelab.errors import ShapeKindError
from kripkelab.folog import as_structure, fo_eval
from kripkelab.kripke import Model, extension
from kripkelab.kripke.enumerate import all_models
from kripkelab import programs as pg
from kripkelab.programs import (Atom, Comp, DynNeg, Union, ca_to_program,
                                find_safety_violation, intersection, prog_eval, prog_props,
                                prog_st, safety_test)
from kripkelab.syntax import fo, parse_modal, parse_program
from kripkelab.syntax.generate import enumerate_ca_terms, random_ca_formula

from strategies import models, programs

M = parse_modal
P = parse_program
CHAIN = Model(["w", "v"], {"a": [(0, 1)]}, {"p": [0]})


class TestSemantics:
    def test_atom(self):
        assert prog_eval(CHAIN, P("a")) == {(0, 1)}

    def test_dynamic_negation(self):
        assert prog_eval(CHAIN, P("~a")) == {(1, 1)}

    def test_test(self):
        assert prog_eval(CHAIN, P("p?")) == {(0, 0)}
        assert prog_eval(CHAIN, P("(<a>true)?")) == {(0, 0)}

    @given(models(max_worlds=4, props=("p",), labels=("a", "b")))
    def test_test_then_atom(self, N):
        tested = {(w, v) for (w, v) in prog_eval(N, P("a")) if w in N.val("p")}
        assert prog_eval(N, P("p?;a")) == tested

    @given(models(max_worlds=4, props=("p",), labels=("a", "b")), programs(labels=("a", "b")),
           programs(labels=("a", "b")))
    def test_composition_and_union(self, N, left, right):
        a, b = prog_eval(N, left), prog_eval(N, right)
        assert prog_eval(N, Comp(left, right)) == {(x, z) for (x, y) in a for (y2, z) in b if y == y2}
        assert prog_eval(N, Union(left, right)) == a | b
        domain = {x for x, _ in a}
        assert prog_eval(N, DynNeg(left)) == {(w, w) for w in N.worlds if w not in domain}


class TestTranslation:
    def test_examples(self):
        assert prog_st(P("a")) == fo.Atom("a", ("x", "y"))
        assert prog_st(P("p?")) == fo.And(fo.Equals("x", "y"), fo.Atom("p", ("x",)))

    def test_free_variables(self):
        assert fo.free_vars(prog_st(P("~(a;b)|p?;a"))) == {"x", "y"}

    @given(models(max_worlds=4, props=("p",), labels=("a", "b")),
           programs(labels=("a", "b"), max_leaves=5))
    def test_agreement(self, N, prog):
        rel = prog_eval(N, prog)
        A = as_structure(N)
        st_prog = prog_st(prog)
        for w in N.worlds:
            for v in N.worlds:
                assert fo_eval(A, st_prog, {"x": w, "y": v}) == ((w, v) in rel)

    def test_composition_on_four_worlds(self):
        rng = random.Random(3)
        st_prog = prog_st(P("a;b"))
        for _ in range(40):
            pairs = [(x, y) for x in range(4) for y in range(4)]
            N = Model(4, {"a": rng.sample(pairs, 5), "b": rng.sample(pairs, 5)})
            rel = prog_eval(N, P("a;b"))
            A = as_structure(N)
            for w in range(4):
                for v in range(4):
                    assert fo_eval(A, st_prog, {"x": w, "y": v}) == ((w, v) in rel)


def contract_holds(theta, prog, N):
    truth = extension(N, theta)
    rel = prog_eval(N, prog)
    reach = {w for (w, v) in rel if v in N.val("p")}
    return all(bool(truth >> w & 1) == (w in reach) for w in N.worlds)


class TestCompiler:
    def test_base_case(self):
        assert ca_to_program(M("p & true"), "p") == pg.Test(M("true"))

    def test_step(self):
        assert ca_to_program(M("true & <a>(p & true)"), "p") == Comp(Comp(pg.Test(M("true")), Atom("a")),
                                                                     pg.Test(M("true")))

    def test_guarded_step(self):
        theta = M("q & <a>(p & ~q)")
        prog = ca_to_program(theta, "p")
        assert str(prog) == str(P("q?;a;(~q)?"))
        for N in all_models(3, props=("p", "q"), labels=("a",)):
            assert contract_holds(theta, prog, N)

    def test_disjunction_becomes_union(self):
        prog = ca_to_program(M("(p & q) | (true & <a>(p & true))"), "p")
        assert isinstance(prog, Union)

    def test_rejects_outside_grammar(self):
        with pytest.raises(ShapeKindError):
            ca_to_program(M("[a]p"), "p")

    @given(st.randoms(use_true_random=False), models(max_worlds=3, props=("p", "q"), labels=("a",)))
    def test_random_terms(self, rng, N):
        theta = random_ca_formula(rng)
        prog = ca_to_program(theta, "p")
        assert "p" not in prog_props(prog)
        assert contract_holds(theta, prog, N)


class TestSafety:
    def test_atom_and_test_are_safe(self):
        assert safety_test(P("a"), samples=100).ok
        assert safety_test(P("p?"), samples=100).ok

    def test_compiled_programs_are_safe(self):
        for theta in list(enumerate_ca_terms(5))[:40]:
            assert safety_test(ca_to_program(theta, "p"), samples=20, props=("p", "q")).ok

    def test_dynamic_negation_is_safe(self):
        assert safety_test(P("~(a;b)|b"), samples=100).ok

    def test_intersection_is_not_safe(self):
        found = find_safety_violation(intersection("a", "b"))
        assert found is not None
        assert "no matching answer" in found.describe()
