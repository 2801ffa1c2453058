import random

import pytest
from hypothesis import given

from kripkelab.errors import ArityError, ParseError, PositivityError, ShapeKindError
from kripkelab.folog import as_structure, fo_eval
from kripkelab.kripke import model_check
from kripkelab.kripke.enumerate import all_models

from kripkelab.syntax import (fo, modal, modal_depth, nnf, parse_fo, parse_modal, parse_program, relativize_fo,
                              relativize_modal, shape_check, standard_translation, substitute)
from kripkelab.syntax.generate import random_fo, random_modal

from kripkelab.kripke.batch import evaluate

from helpers import batched_models
from strategies import fo_formulas, modal_formulas, models, programs

M = parse_modal


class TestParsing:
    def test_modal_example(self):
        phi = M("<a>p & [a]~p")
        assert phi == modal.And(modal.Dia("a", modal.Prop("p")),
                                modal.Box("a", modal.Not(modal.Prop("p"))))

    def test_fo_example(self):
        phi = parse_fo("A x. E y. R(x,y)")
        assert phi == fo.Forall("x", fo.Exists("y", fo.Atom("R", ("x", "y"))))

    def test_lfp_node(self):
        phi = parse_fo("LFP[X,x]{P(x) | E y.(R(y,x) & X(y))}(s)")
        assert isinstance(phi, fo.LFP)
        assert (phi.setvar, phi.x, phi.s) == ("X", "x", "s")

    def test_negative_lfp_rejected(self):
        with pytest.raises(PositivityError):
            parse_fo("LFP[X,x]{!X(x)}(s)")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_modal("<a>p &")
        assert info.value.line == 1
        assert info.value.column == 7

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            parse_fo("R(x) & R(x,y)")

    def test_comment_and_whitespace(self):
        assert M("  p   &\n q  # trailing") == M("p&q")

    def test_universal_label_in_modal_text(self):
        assert M("[U]p") == modal.Box(modal.UNIVERSAL, modal.Prop("p"))

    def test_fresh_names_not_writable(self):
        # '#' opens a comment, so no input can name a generated proposition
        assert parse_modal("p#1") == modal.Prop("p")

    def test_precedence(self):
        assert M("p | q & r") == M("p | (q & r)")
        assert M("p -> q -> r") == M("p -> (q -> r)")
        assert M("~<a>p & q") == M("(~(<a>p)) & q")

    @pytest.mark.parametrize("text", ["<a>p & [a]~p", "p <-> (q -> ~r)", "[a][b]<a>true | false"])
    def test_print_parse_fixed_point(self, text):
        phi = M(text)
        assert M(str(phi)) == phi
        assert str(M(str(phi))) == str(phi)


class TestRoundTrip:
    @given(modal_formulas())
    def test_modal(self, phi):
        assert parse_modal(str(phi)) == phi

    @given(fo_formulas())
    def test_fo(self, phi):
        assert parse_fo(str(phi)) == phi

    @given(programs(props=("p", "q"), labels=("a", "b")))
    def test_program(self, prog):
        assert parse_program(str(prog)) == prog

    def test_thousand_generated_per_kind(self):
        rng = random.Random(3)
        for _ in range(1000):
            phi = random_modal(rng, ("p", "q", "r"), ("a", "b", "U"), depth=4, size=10)
            assert parse_modal(str(phi)) == phi
            psi = random_fo(rng, ("P", "Q"), ("R", "S"))
            assert parse_fo(str(psi)) == psi


class TestTransformations:
    def test_nnf_example(self):
        assert nnf(M("~([R]p & q)")) == M("<R>~p | ~q")

    def test_substitute_example(self):
        assert substitute(M("<R>p & q"), "p", M("p | r")) == M("<R>(p | r) & q")

    def test_relativize_example(self):
        assert relativize_modal(M("<R>p"), "s") == M("<R>(s & p)")

    def test_relativize_box(self):
        assert relativize_modal(M("[R]p"), "s") == M("[R](s -> p)")

    def test_depth_example(self):
        assert modal_depth(M("[R]([R]p -> p) -> [R]p")) == 2

    @given(modal_formulas())
    def test_nnf_shape(self, phi):
        for node in modal.subformulas(nnf(phi)):
            assert not isinstance(node, (modal.Implies, modal.Iff))
            if isinstance(node, modal.Not):
                assert isinstance(node.sub, modal.Prop)

    def test_nnf_preserves_truth_exhaustively(self):
        rng = random.Random(5)
        formulas = [random_modal(rng, ("p", "q"), ("a",), depth=3, size=8) for _ in range(60)]
        for n in (1, 2, 3):
            ctx = batched_models(n, ("p", "q"), ("a",))
            for phi in formulas:
                assert (evaluate(phi, ctx) == evaluate(nnf(phi), ctx)).all()

    def test_relativize_fo_guards_quantifiers(self):
        phi = relativize_fo(parse_fo("E x. P(x)"), "D")
        assert phi == parse_fo("E x. (D(x) & P(x))")


class TestStandardTranslation:
    def test_prop(self):
        assert standard_translation(M("p")) == fo.Atom("p", ("x",))

    def test_diamond(self):
        assert standard_translation(M("<a>p")) == parse_fo("E y. (a(x,y) & p(y))")

    def test_single_free_variable(self):
        assert fo.free_vars(standard_translation(M("[a]<b>(p | [a]q)"))) == {"x"}

    def test_box_dia_exhaustive(self):
        st_phi = standard_translation(M("[a]<a>p"))
        for N in all_models(3, props=("p",), labels=("a",)):
            A = as_structure(N)
            for w in N.worlds:
                assert fo_eval(A, st_phi, {"x": w}) == model_check(N, w, M("[a]<a>p"))

    @given(modal_formulas(max_leaves=6), modal_formulas(props=("q", "r"), max_leaves=4),
           models(props=("p", "q", "r")))
    def test_commutes_with_substitution(self, phi, psi, N):
        left = standard_translation(substitute(phi, "p", psi))

        def replace(atom):
            if atom.rel == "p" and len(atom.args) == 1:
                return standard_translation(psi, atom.args[0])
            return atom
        right = fo.map_atoms(standard_translation(phi), replace)
        A = as_structure(N)
        for w in N.worlds:
            assert fo_eval(A, left, {"x": w}) == fo_eval(A, right, {"x": w})


def _reference_ca(phi, p):
    """Recursive-descent reading of the grammar on an nnf formula."""
    def free(f):
        return p not in modal.props(f)

    def term(f):
        if not isinstance(f, modal.And):
            return False
        if f.left == modal.Prop(p):
            return free(f.right)
        r = f.right
        return free(f.left) and isinstance(r, modal.Dia) and r.label != "U" and term(r.sub)

    def disjunction(f):
        if isinstance(f, modal.Or):
            return disjunction(f.left) and disjunction(f.right)
        return term(f)
    return disjunction(nnf(phi))


class TestShapes:
    def test_examples(self):
        assert shape_check("ca_grammar", M("p & true"), "p")
        assert not shape_check("box_only_nnf", M("<R>p"))
        assert shape_check("positive", M("<R>p | [R](q -> p)"), "p")
        assert shape_check("two_way_restricted", parse_fo("A y. (R(z,y) -> P(y))"))

    def test_positive_rejects_negated_p(self):
        assert not shape_check("positive", M("[a](p -> q)"), "p")

    def test_box_only_sees_through_negation(self):
        assert not shape_check("box_only_nnf", M("~[a]p"))
        assert shape_check("box_only_nnf", M("~<a>p"))

    def test_ca_accepts_disjunctions(self):
        assert shape_check("ca_grammar", M("(p & q) | (true & <a>(p & ~q))"), "p")
        assert not shape_check("ca_grammar", M("[a]p"), "p")
        assert not shape_check("ca_grammar", M("p"), "p")

    def test_continuous(self):
        assert shape_check("continuous", M("<a>p & [a]q"), "p")
        assert not shape_check("continuous", M("[a]p"), "p")
        assert not shape_check("continuous", M("~p"), "p")

    def test_kind_mismatch(self):
        with pytest.raises(ShapeKindError):
            shape_check("positive", parse_fo("P(x)"), "p")
        with pytest.raises(ShapeKindError):
            shape_check("exists_bounded", M("p"))
        with pytest.raises(ShapeKindError):
            shape_check("nonsense", M("p"))

    def test_exists_bounded(self):
        assert shape_check("exists_bounded", parse_fo("E y. (R(x,y) & P(y))"))
        assert shape_check("exists_bounded", parse_fo("A y. P(y)"))
        assert not shape_check("exists_bounded", parse_fo("E y. P(y)"))

    def test_p_sentence(self):
        assert not shape_check("p_sentence", parse_fo("P(x)"))

    @given(modal_formulas(props=("p", "q"), labels=("a", "U"), max_leaves=10))
    def test_ca_matches_reference(self, phi):
        assert shape_check("ca_grammar", phi, "p") == _reference_ca(phi, "p")

    def test_ca_matches_reference_on_positives(self):
        from kripkelab.syntax.generate import enumerate_ca_terms, random_ca_formula
        rng = random.Random(9)
        for theta in list(enumerate_ca_terms(6)) + [random_ca_formula(rng) for _ in range(200)]:
            assert shape_check("ca_grammar", theta, "p")
            assert _reference_ca(theta, "p")
