from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cylruling.corpus import corpus, random_front, small_front
from cylruling.errors import BadParams, CutHitsFront, NotACrossing, NotShort
from cylruling.front import (BIRTH, CROSSING, DEATH, FrontDiagram, Slice, builtin_front, compute_maslov, cover,
                             stacked_saucers)
from cylruling.rulings import (CircularRuling, DiskRuling, check_normal, chi, classify_crossing,
                               count_circular_rulings, count_disk_rulings, critical_fibers, enumerate_circular_rulings,
                               enumerate_disk_rulings, expand_short, eyes, is_eps_short, length_spectrum, max_length,
                               planar_ruling_count, upper_lower)
from oracles import brute_circular_count, brute_disk_count

F = Fraction
CORPUS = corpus(count=6)
EMPTY = FrontDiagram((Slice(F(0), F(1), ()),), ())


def unknot():
    return builtin_front("unknot_area_1")


def saucer():
    return builtin_front("flying_saucer")


# -- counts on named fronts ---------------------------------------------------------

def test_unknot_counts():
    assert count_disk_rulings(unknot()) == 1
    assert count_circular_rulings(unknot()) == 0
    assert enumerate_circular_rulings(unknot()) == []


def test_empty_front_has_one_empty_ruling():
    assert count_disk_rulings(EMPTY) == 1
    assert count_circular_rulings(EMPTY) == 1
    (r,) = enumerate_disk_rulings(EMPTY)
    assert chi(EMPTY, r) == 0
    assert is_eps_short(EMPTY, r, F(1, 3))


def test_stacked_saucers_one_ruling():
    f = stacked_saucers(2)
    (r,) = enumerate_disk_rulings(f)
    assert chi(f, r) == -2
    assert len(eyes(f, r)) == 2


def test_saucer_single_circular_ruling():
    (c,) = enumerate_circular_rulings(saucer())
    (r,) = enumerate_disk_rulings(saucer())
    assert expand_short(saucer(), r) == c


def test_double_cover_has_no_circular_ruling():
    assert count_circular_rulings(cover(unknot(), 2)) == 0


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_enumeration_matches_count(name):
    f = CORPUS[name]
    assert len(enumerate_disk_rulings(f)) == count_disk_rulings(f)
    assert len(enumerate_circular_rulings(f)) == count_circular_rulings(f)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_counts_match_brute_force(name):
    f = CORPUS[name]
    assert count_disk_rulings(f) == brute_disk_count(f)
    assert count_circular_rulings(f) == brute_circular_count(f)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_counts_match_brute_force(seed):
    f = random_front(seed, max_crossings=5, max_pairs=2)
    assert count_disk_rulings(f) == brute_disk_count(f)
    assert count_circular_rulings(f) == brute_circular_count(f)


def test_rulings_are_distinct_and_normal():
    for f in CORPUS.values():
        for rs in (enumerate_disk_rulings(f), enumerate_circular_rulings(f)):
            assert len(set(rs)) == len(rs)
            for r in rs:
                assert check_normal(f, r) == r


# -- crossing classification ------------------------------------------------------------

def test_non_crossing_event_rejected():
    (r,) = enumerate_disk_rulings(unknot())
    with pytest.raises(NotACrossing):
        classify_crossing(unknot(), r, 0)


def test_crossing_classes():
    seen_switch = False
    for f in CORPUS.values():
        mu = compute_maslov(f).mu
        for r in enumerate_disk_rulings(f) + enumerate_circular_rulings(f):
            for i in f.crossing_indices():
                c = classify_crossing(f, r, i)
                up, lo = upper_lower(f, i)
                assert c.maslov == (mu[up] == mu[lo])
                if not c.switching:
                    assert c.positive
                else:
                    seen_switch = True
                    assert c.positive and c.maslov
    assert seen_switch


def test_trefoil_switch_patterns():
    f = CORPUS["trefoil_braid"]
    switches = sorted(sum(r.switches) for r in enumerate_disk_rulings(f))
    assert switches == [1, 1, 3]
    assert sorted(chi(f, r) for r in enumerate_disk_rulings(f)) == [-1, -1, 1]


# -- eyes ---------------------------------------------------------------------------------

def test_unknot_single_eye():
    (r,) = enumerate_disk_rulings(unknot())
    (e,) = eyes(unknot(), r)
    assert (e.birth_event, e.death_event) == (0, 2)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_eyes_cover_births(name):
    f = CORPUS[name]
    births = sum(1 for e in f.events if e.kind == BIRTH)
    for r in enumerate_disk_rulings(f):
        es = eyes(f, r)
        assert len(es) == births
        assert {e.birth_event for e in es} == {i for i, ev in enumerate(f.events) if ev.kind == BIRTH}


# -- length spectra -----------------------------------------------------------------------

def test_unknot_spectrum_reaches_half():
    (r,) = enumerate_disk_rulings(unknot())
    assert length_spectrum(unknot(), r, F(1, 2)).lengths == (F(1, 2),)
    assert max_length(unknot(), r) == F(1, 2)
    assert not is_eps_short(unknot(), r, F(1, 1000))


def test_saucer_spectrum():
    (r,) = enumerate_disk_rulings(saucer())
    assert length_spectrum(saucer(), r, F(5)).lengths == ()
    assert max_length(saucer(), r) == F(1, 5)
    assert is_eps_short(saucer(), r, F(1, 4))


def test_eps_must_be_positive():
    (r,) = enumerate_disk_rulings(saucer())
    with pytest.raises(BadParams):
        is_eps_short(saucer(), r, 0)


def test_fold_lengths_vanish():
    for f in CORPUS.values():
        for r in enumerate_disk_rulings(f) + enumerate_circular_rulings(f):
            for i, ev in enumerate(f.events):
                if ev.kind in (BIRTH, DEATH):
                    side = "right" if ev.kind == BIRTH else "left"
                    assert F(0) in length_spectrum(f, r, f.fiber(i), side).lengths


def test_spectrum_continuous_across_crossings():
    for f in CORPUS.values():
        for r in enumerate_disk_rulings(f) + enumerate_circular_rulings(f):
            for i in f.crossing_indices():
                x = f.fiber(i)
                assert length_spectrum(f, r, x, "left") == length_spectrum(f, r, x, "right")


# -- expansion ----------------------------------------------------------------------------------

def test_unknot_not_short():
    (r,) = enumerate_disk_rulings(unknot())
    with pytest.raises(NotShort) as exc:
        expand_short(unknot(), r)
    assert exc.value.details["fiber"] == F(1, 2)


def test_stacked_saucers_expand_componentwise():
    f = stacked_saucers(2)
    (r,) = enumerate_disk_rulings(f)
    c = expand_short(f, r)
    assert isinstance(c, CircularRuling)
    assert all(n == 0 for sl in c.offsets for _, _, n in sl)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_expansion_injective_on_small_fronts(seed):
    f = small_front(seed)
    disk = enumerate_disk_rulings(f)
    circ = set(enumerate_circular_rulings(f))
    images = [expand_short(f, r) for r in disk]
    assert len(set(images)) == len(images)
    assert set(images) <= circ
    assert len(disk) <= len(circ)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_small_fronts_are_quarter_eps_short(seed):
    # slopes in [0, 3/4], width 3/4: eps = 1/4, so every ruling is 1/16-short
    f = small_front(seed)
    for r in enumerate_disk_rulings(f) + enumerate_circular_rulings(f):
        assert is_eps_short(f, r, F(1, 16))


# -- planar cut ---------------------------------------------------------------------------------

def test_planar_cut_examples():
    assert planar_ruling_count(saucer(), F(1, 2)) == 1
    assert planar_ruling_count(stacked_saucers(2), F(1, 2)) == 1
    with pytest.raises(CutHitsFront):
        planar_ruling_count(unknot(), F(1, 3))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_planar_cut_matches_disk_count(seed):
    # squeezed fronts fill at most 3/4 of the circle, so some cut misses them
    f = small_front(seed)
    counts = []
    for cut in (F(k, 17) for k in range(17)):
        try:
            counts.append(planar_ruling_count(f, cut))
        except CutHitsFront:
            continue
    assert counts and set(counts) == {count_disk_rulings(f)}


def test_critical_fibers_include_events():
    (r,) = enumerate_disk_rulings(unknot())
    xs = critical_fibers(unknot(), r)
    assert F(1, 2) in xs and F(0) in xs and F(1) in xs


def test_disk_ruling_partner_lookup():
    (r,) = enumerate_disk_rulings(unknot())
    assert isinstance(r, DiskRuling)
    assert r.partner(1, 1) == 2 and r.partner(1, 2) == 1
    assert CROSSING not in [e.kind for e in unknot().events]
