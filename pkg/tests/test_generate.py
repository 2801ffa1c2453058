import random

from hypothesis import given, strategies as st

from kripkelab.syntax import modal, shape_check
from kripkelab.syntax.generate import (enumerate_ca_terms, enumerate_modal, random_ca_formula,
                                       random_exists_bounded, random_modal, random_shaped)

from helpers import enumerate_programs


def test_enumerate_counts():
    sizes = [modal.size(f) for f in enumerate_modal(3, ("q",), ("a",))]
    # size 1: q, true, false; size 2: three unary operators over them; size 3 adds binaries
    assert sizes.count(1) == 3
    assert sizes.count(2) == 9
    assert sizes.count(3) == 27 + 2 * 9


def test_ca_terms():
    terms = list(enumerate_ca_terms(6))
    assert len(terms) == 309
    assert len(set(map(str, terms))) == 309
    assert all(modal.size(t) <= 6 and shape_check("ca_grammar", t, "p") for t in terms)


def test_program_counts():
    assert len(list(enumerate_programs(5))) == 154


@given(st.randoms(use_true_random=False), st.sampled_from(["positive", "box_only_nnf", "ca_grammar", "continuous"]))
def test_shaped_generators_hit_their_grammar(rng, kind):
    assert shape_check(kind, random_shaped(rng, kind, "p", ("q",), ("a", "b")), "p")


@given(st.randoms(use_true_random=False))
def test_random_ca(rng):
    assert shape_check("ca_grammar", random_ca_formula(rng), "p")


@given(st.randoms(use_true_random=False))
def test_random_modal_bounds(rng):
    phi = random_modal(rng, ("p",), ("a",), depth=2, size=6)
    assert modal.modal_depth(phi) <= 2


@given(st.randoms(use_true_random=False))
def test_exists_bounded(rng):
    assert shape_check("exists_bounded", random_exists_bounded(rng))


def test_seeded_generation_is_reproducible():
    a = [str(random_modal(random.Random(4), depth=3, size=8)) for _ in range(5)]
    b = [str(random_modal(random.Random(4), depth=3, size=8)) for _ in range(5)]
    assert a == b
