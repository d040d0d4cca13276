import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parcelex.beads import links_cover
from parcelex.errors import InstanceTooLargeError, UnsupportedArityError
from parcelex.galechurch import (
    GCParams,
    align_gale_church,
    alignment_cost,
    bead_cost,
    exhaustive_align,
    length_delta,
)

P = GCParams()


def test_delta_equal_lengths():
    assert length_delta(100, 100, P) == 0.0


def test_delta_direct_arithmetic():
    assert length_delta(100, 120, P) == pytest.approx(20 / math.sqrt(680), abs=1e-9)
    assert length_delta(100, 120, P) == pytest.approx(0.76696, abs=1e-5)


def test_delta_zero_source_floored():
    d = length_delta(0, 50, P)
    assert math.isfinite(d)
    assert d == pytest.approx(50 / math.sqrt(6.8))


def test_equal_length_one_one_cost():
    cost = bead_cost([100], [100], (1, 1), P)
    assert cost == pytest.approx(-math.log(0.89), abs=1e-12)
    assert cost == pytest.approx(0.11653, abs=1e-5)


def test_unsupported_arity():
    with pytest.raises(UnsupportedArityError):
        bead_cost([1, 2, 3], [1, 2, 3], (3, 3), P)


def test_cost_monotone_in_delta():
    costs = [bead_cost([100], [100 + d], (1, 1), P) for d in (0, 10, 40, 90, 200)]
    assert costs == sorted(costs)


def test_skip_cost_finite_and_large():
    cost = bead_cost([100], [], (1, 0), P)
    assert math.isfinite(cost)
    assert cost > bead_cost([100], [100], (1, 1), P)


def test_extreme_delta_finite():
    assert math.isfinite(bead_cost([1], [100000], (1, 1), P))


def test_three_equal_paragraphs():
    pars = ["x" * 80] * 3
    alignment = align_gale_church(pars, pars, P)
    assert [l.arity for l in alignment.links] == [(1, 1)] * 3
    assert alignment.links[0].src_pars == (1,)
    assert alignment.links[2].tgt_pars == (3,)


def test_deletion_found_at_extra_position():
    # The extra paragraph must be long enough that absorbing it into a 2-1
    # bead costs more than the skip prior; short extras get merged instead.
    lengths = [100, 140, 400, 180, 110]
    src = ["x" * n for n in lengths]
    tgt = [src[0], src[1], src[3], src[4]]  # third source paragraph untranslated
    alignment = align_gale_church(src, tgt, P)
    oracle = exhaustive_align(src, tgt, P)
    assert alignment.links == oracle.links
    skips = [l for l in alignment.links if l.arity == (1, 0)]
    assert len(skips) == 1 and skips[0].src_pars == (3,)


def test_split_found():
    src = ["x" * 200]
    tgt = ["y" * 100, "y" * 99]
    alignment = align_gale_church(src, tgt, P)
    oracle = exhaustive_align(src, tgt, P)
    assert alignment.links == oracle.links
    assert [l.arity for l in alignment.links] == [(1, 2)]


def test_empty_target_all_skips():
    src = ["x" * 50, "x" * 60]
    alignment = align_gale_church(src, [], P)
    assert [l.arity for l in alignment.links] == [(1, 0), (1, 0)]
    oracle = exhaustive_align(src, [], P)
    assert oracle.links == alignment.links


def test_both_empty():
    assert align_gale_church([], [], P).links == ()


def test_oracle_rejects_large_instance():
    pars = ["x" * 10] * 13
    with pytest.raises(InstanceTooLargeError):
        exhaustive_align(pars, pars, P)


def test_oracle_equivalence_batch():
    rng = random.Random(193)
    for _ in range(60):
        n, m = rng.randint(0, 10), rng.randint(0, 10)
        if n == 0 and m == 0:
            m = 1
        src = ["x" * rng.randint(10, 250) for _ in range(n)]
        tgt = ["y" * rng.randint(10, 250) for _ in range(m)]
        dp = align_gale_church(src, tgt, P)
        oracle = exhaustive_align(src, tgt, P)
        assert alignment_cost(dp) == alignment_cost(oracle)
        assert dp.links == oracle.links


def test_completeness():
    rng = random.Random(7)
    src = ["x" * rng.randint(20, 200) for _ in range(14)]
    tgt = ["y" * rng.randint(20, 200) for _ in range(11)]
    alignment = align_gale_church(src, tgt, P)
    assert links_cover(alignment.links, 14, 11)


def test_uniform_text_duplication_keeps_structure():
    rng = random.Random(11)
    src = ["x" * rng.randint(40, 120) for _ in range(8)]
    tgt = [s + "y" * rng.randint(0, 6) for s in src]
    base = align_gale_church(src, tgt, P)
    doubled = align_gale_church([s * 2 for s in src], [t * 2 for t in tgt], P)
    assert [l.arity for l in base.links] == [(1, 1)] * 8
    assert [(l.src_pars, l.tgt_pars) for l in base.links] == [
        (l.src_pars, l.tgt_pars) for l in doubled.links
    ]


def test_first_n_offsets():
    pars = ["x" * 90] * 2
    alignment = align_gale_church(pars, pars, P, first_src=2, first_tgt=2)
    assert alignment.links[0].src_pars == (2,)
    assert alignment.links[1].tgt_pars == (3,)


def test_hard_links_split_blocks():
    src = ["x" * 100] * 4
    tgt = ["y" * 100] * 4
    plain = align_gale_church(src, tgt, P)
    anchored = align_gale_church(src, tgt, P, hard_links=[(2, 2)])
    assert anchored.links == plain.links  # both all 1-1 here
    with pytest.raises(ValueError):
        align_gale_church(src, tgt, P, hard_links=[(9, 1)])


def test_word_length_unit():
    params = GCParams(length_unit="words")
    src = ["one two three", "four five"]
    tgt = ["uno due tre", "quattro cinque"]
    alignment = align_gale_church(src, tgt, params)
    assert [l.arity for l in alignment.links] == [(1, 1), (1, 1)]


@given(st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_oracle_equivalence_property(n, m, rnd):
    src = ["x" * rnd.randint(5, 300) for _ in range(n)]
    tgt = ["y" * rnd.randint(5, 300) for _ in range(m)]
    dp = align_gale_church(src, tgt, P)
    oracle = exhaustive_align(src, tgt, P)
    assert alignment_cost(dp) == alignment_cost(oracle)


def test_params_validation():
    with pytest.raises(ValueError):
        GCParams(variance=0)
    with pytest.raises(ValueError):
        GCParams(arity_priors={(1, 1): 1.5})
    with pytest.raises(ValueError):
        GCParams(length_unit="syllables")


def test_digest_stable():
    assert GCParams().digest() == GCParams().digest()
    assert GCParams().digest() != GCParams(variance=7.0).digest()
