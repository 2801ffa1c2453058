import itertools
import random

import pytest
from hypothesis import given, strategies as st

from kripkelab.errors import ParseError, StructureError
from kripkelab.gallery import make_parity_frames
from kripkelab.kripke import (FOStructure, Frame, Model, bisimilar, bisimilar_naive,
                              bisimulation_classes, disjoint_union, extension,
                              find_bounded_morphism_onto, format_structure,
                              gaifman_r_neighbourhood, generated_subframe, is_bounded_morphism,
                              is_isomorphism, is_model_bounded_morphism, model_check, model_pair,
                              parse_structure, parse_structures, quotient, reachable, restrict,
                              to_dot, tree_unravel, ultrafilter_extension_finite,
                              unravel_projection)
from kripkelab.kripke.structures import members
from kripkelab.kripke.enumerate import all_frames, all_models, frame_stack, random_model
from kripkelab.syntax import modal, parse_modal, shape_check
from kripkelab.syntax.generate import random_modal

from strategies import frames, modal_formulas, models

M = parse_modal


def chain(n, label="R"):
    return Frame(n, {label: [(i, i + 1) for i in range(n - 1)]})


class TestStructures:
    def test_pairs_must_reference_worlds(self):
        with pytest.raises(StructureError):
            Frame(2, {"R": [(0, 2)]})

    def test_valuation_must_reference_worlds(self):
        with pytest.raises(StructureError):
            Model(1, {}, {"p": [3]})

    def test_universal_label_reserved(self):
        with pytest.raises(StructureError):
            Frame(1, {"U": []})

    def test_duplicate_pairs_collapse(self):
        F = Frame(2, {"R": [(0, 1), (0, 1)]})
        assert F.rel("R") == frozenset({(0, 1)})

    def test_names(self):
        F = Frame(["w", "v"], {"R": [(0, 1)]})
        assert F.index("v") == 1
        assert model_check(Model.on(F, {"p": [1]}), "w", M("<R>p"))

    def test_unknown_world(self):
        with pytest.raises(StructureError):
            model_check(Model.on(chain(2)), 5, M("p"))

    def test_model_as_structure(self):
        N = Model.on(chain(2), {"p": [1]})
        A = N.to_structure()
        assert A.unary["p"] == frozenset({1})
        assert A.binary["R"] == frozenset({(0, 1)})


class TestModelCheck:
    def test_reflexive_point(self):
        N = Model(1, {"R": [(0, 0)]}, {"p": [0]})
        assert model_check(N, 0, M("[R]p"))

    def test_two_chain(self):
        N = Model(2, {"R": [(0, 1)]}, {"p": [1]})
        assert model_check(N, 0, M("<R>p"))
        assert not model_check(N, 1, M("<R>true"))

    def test_parity_valuation(self):
        F = make_parity_frames(5)[0]
        N = Model.on(F, {"p": [F.index(f"b{i}") for i in (0, 2, 4)]})
        assert model_check(N, "r", M("[R]<R>p & ~<R>[R]p"))

    def test_missing_prop_is_empty(self):
        assert not model_check(Model.on(chain(1)), 0, M("q"))

    def test_universal_modality(self):
        N = Model(3, {"R": []}, {"p": [2]})
        assert model_check(N, 0, M("<U>p"))
        assert not model_check(N, 0, M("[U]p"))

    @given(models(props=("p", "q"), labels=("a", "b")), modal_formulas())
    def test_duals(self, N, phi):
        assert extension(N, modal.Box("a", phi)) == N.full & ~extension(N, modal.Dia("a", modal.Not(phi)))


class TestOperations:
    def test_generated_subframe(self):
        G = generated_subframe(Frame(["w", "v"], {"R": [(0, 1)]}), [1])
        assert G.n == 1 and not G.rel("R")

    def test_generated_subframe_requires_closure(self):
        with pytest.raises(StructureError):
            generated_subframe(chain(2), [0])

    def test_cycle_collapses_to_reflexive_point(self):
        cycle = Frame(2, {"R": [(0, 1), (1, 0)]})
        point = Frame(1, {"R": [(0, 0)]})
        assert is_bounded_morphism(cycle, point, [0, 0])
        assert not is_bounded_morphism(point, cycle, [0])

    def test_find_constant_map(self):
        N = Model(2, {"R": [(0, 1), (1, 0)]}, {"p": [0, 1]})
        target = Model(1, {"R": [(0, 0)]}, {"p": [0]})
        assert find_bounded_morphism_onto(N, target) == [0, 0]

    def test_find_respects_valuation(self):
        N = Model(2, {"R": [(0, 1), (1, 0)]}, {"p": [0]})
        target = Model(1, {"R": [(0, 0)]}, {"p": [0]})
        assert find_bounded_morphism_onto(N, target) is None

    def test_find_agrees_with_map_enumeration(self):
        sources = list(all_models(3, props=("p",)))
        targets = list(all_models(2, props=("p",)))
        rng = random.Random(2)
        for N in rng.sample(sources, 150):
            for T in targets:
                maps = [list(f) for f in itertools.product(range(T.n), repeat=N.n)]
                exists = any(is_model_bounded_morphism(N, T, f) for f in maps)
                found = find_bounded_morphism_onto(N, T)
                assert (found is not None) == exists
                if found is not None:
                    assert is_model_bounded_morphism(N, T, found)

    def test_disjoint_union_sizes(self):
        U = disjoint_union([chain(2), chain(3)])
        assert U.n == 5
        assert U.rel("R") == frozenset({(0, 1), (2, 3), (3, 4)})

    def test_reachable(self):
        assert reachable(chain(3), 1) == 0b110
        assert reachable(chain(3), [0]) == 0b111

    @given(models(max_worlds=4, props=("p", "q")), modal_formulas(max_leaves=8))
    def test_box_only_formulas_survive_generated_subframes(self, N, phi):
        if not shape_check("box_only_nnf", phi):
            return
        for w in N.worlds:
            keep = members(reachable(N, w))
            sub = restrict(N, keep)
            if model_check(N, w, phi):
                assert model_check(sub, keep.index(w), phi)


class TestBisimulation:
    def test_examples(self):
        a = Model(1, {}, {"p": [0]})
        b = Model(1, {}, {})
        assert not bisimilar(a, 0, b, 0)
        cycle = Model(2, {"R": [(0, 1), (1, 0)]})
        point = Model(1, {"R": [(0, 0)]})
        assert bisimilar(cycle, 0, point, 0)

    def test_partition_equals_naive_small(self):
        ms = list(all_models(2, props=("p",)))
        for A, B in itertools.product(ms, repeat=2):
            for w in A.worlds:
                for v in B.worlds:
                    assert bisimilar(A, w, B, v) == bisimilar_naive(A, w, B, v)

    @given(models(max_worlds=4, props=("p", "q"), labels=("a",)),
           models(max_worlds=4, props=("p", "q"), labels=("a",)))
    def test_partition_equals_naive(self, A, B):
        for w in A.worlds:
            for v in B.worlds:
                assert bisimilar(A, w, B, v) == bisimilar_naive(A, w, B, v)

    @given(models(max_worlds=4, props=("p", "q")), st.randoms(use_true_random=False))
    def test_bisimilar_worlds_agree_on_formulas(self, N, rng):
        Q, block = quotient(N)
        assert block == bisimulation_classes(N)
        formulas = [random_modal(rng, ("p", "q"), ("a",), depth=3, size=8) for _ in range(10)]
        for phi in formulas:
            ext, qext = extension(N, phi), extension(Q, phi)
            for w in N.worlds:
                assert bool(ext >> w & 1) == bool(qext >> block[w] & 1)

    @given(models(max_worlds=3, props=("p",)), st.integers(0, 3))
    def test_unravelling_is_bisimilar_up_to_depth(self, N, depth):
        for w in N.worlds:
            T, root = tree_unravel(N, w, depth)
            assert root == 0
            rng = random.Random(depth * 7 + w)
            for _ in range(10):
                phi = random_modal(rng, ("p",), ("a",), depth=depth, size=8)
                if modal.modal_depth(phi) <= depth:
                    assert model_check(T, root, phi) == model_check(N, w, phi)

    def test_unravelling_examples(self):
        point = Model(1, {"R": [(0, 0)]}, {"p": [0]})
        T, root = tree_unravel(point, 0, 2)
        assert T.n == 3 and T.rel("R") == frozenset({(0, 1), (1, 2)})
        T0, _ = tree_unravel(point, 0, 0)
        assert T0.n == 1 and T0.val("p") == frozenset({0})

    def test_unravel_projection(self):
        point = Model(1, {"R": [(0, 0)]}, {"p": [0]})
        T, root, proj = unravel_projection(point, 0, 2)
        assert root == 0 and proj == [0, 0, 0]

    def test_full_unravelling_of_dag_is_bisimilar(self):
        N = Model(3, {"R": [(0, 1), (0, 2), (1, 2)]}, {"p": [2]})
        T, root = tree_unravel(N, 0, 3)
        assert bisimilar(T, root, N, 0)


class TestUltrafilters:
    def test_examples(self):
        for F in (Frame(1, {"R": []}), chain(2), make_parity_frames(5)[0]):
            ue, iso = ultrafilter_extension_finite(F)
            assert is_isomorphism(F, ue, iso)

    @given(frames(max_worlds=4, labels=("a", "b")))
    def test_identity(self, F):
        ue, iso = ultrafilter_extension_finite(F)
        assert is_isomorphism(F, ue, iso)

    def test_six_worlds(self):
        rng = random.Random(6)
        for _ in range(20):
            F = random_model(rng, 6, props=(), density=0.3).frame
            ue, iso = ultrafilter_extension_finite(F)
            assert is_isomorphism(F, ue, iso)


class TestFirstOrderStructures:
    def test_neighbourhood_radius_zero(self):
        A = make_parity_frames(3)[1]
        assert gaifman_r_neighbourhood(A, "a1", 0).names == ("a1",)

    def test_parity_neighbourhoods(self):
        A = make_parity_frames(4)[1]
        for i in range(1, 4):
            assert set(gaifman_r_neighbourhood(A, f"a{i}", 1).names) == {f"a{i}", f"b{i}", f"b{i + 1}"}

    def test_model_pair(self):
        K = FOStructure(["k"], {}, {})
        N = FOStructure(["m"], {}, {})
        pair = model_pair(K, N)
        assert pair.n == 2
        assert pair.unary["P"] == frozenset({0}) and pair.unary["Q"] == frozenset({1})

    def test_model_pair_rejects_clash(self):
        K = FOStructure(["k"], {"P": [0]}, {})
        with pytest.raises(StructureError):
            model_pair(K, FOStructure(["m"], {}, {}))


class TestFileFormat:
    TEXT = """# two blocks
frame F
world w
world v
rel R w v
model N
world u
rel a u u
prop p u
structure S
world x
urel P x
rel E x x
"""

    def test_parse_kinds(self):
        F, N, S = parse_structures(self.TEXT)
        assert isinstance(F, Frame) and not isinstance(F, Model)
        assert isinstance(N, Model) and N.val("p") == frozenset({0})
        assert isinstance(S, FOStructure) and S.unary["P"] == frozenset({0})

    @given(models(max_worlds=4, props=("p", "q"), labels=("a", "b")))
    def test_round_trip(self, N):
        again = parse_structure(format_structure(N))
        assert again.key() == N.key()

    def test_errors(self):
        with pytest.raises(ParseError):
            parse_structures("world w\n")
        with pytest.raises(ParseError):
            parse_structures("frame F\nrel R w v\n")
        with pytest.raises(ParseError):
            parse_structures("frame F\nworld w\nrel U w w\n")
        with pytest.raises(ParseError):
            parse_structures("frame F\nworld w\nworld w\n")

    def test_dot(self):
        text = to_dot(Model(["w", "v"], {"a": [(0, 1)]}, {"p": [1]}))
        assert text.startswith("digraph")
        assert 'label="a"' in text
        assert "doublecircle" in text


class TestEnumeration:
    def test_counts(self):
        assert len(frame_stack(2)) == 16
        assert len(frame_stack(2, up_to_iso=True)) == 10
        assert len(frame_stack(3, up_to_iso=True)) == 104
        assert len(list(all_frames(3))) == 2 + 10 + 104
