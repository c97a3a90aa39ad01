import itertools
import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cylruling.errors import BadParams, NonNilpotentCohomology, NotNilpotent, ParseError
from cylruling.fp import Matrix, kernel, random_invertible, solve
from cylruling.quiver import (BarClass, CyclicQuiverRep, LinearQuiverRep, PeriodicComplex, bar_footprint,
                              bars_from_ranks, complex_from_dict, complex_to_dict, conjugate_random, decompose_linear,
                              decompose_nilpotent_cyclic, decompose_periodic, direct_sum, is_nilpotent, make_bar,
                              make_interval, periodic_cohomology, random_bars, random_periodic_complex,
                              rep_from_dict, rep_of_bars, rep_to_dict, zero_differentials, zero_rep)
from oracles import orbit_labels

FIX = Path(__file__).parent / "fixtures"


def B(s, L, shift=0):
    return BarClass(s, L, shift)


# -- field arithmetic ------------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_inverse_and_kernel(p):
    rng = random.Random(p)
    g = random_invertible(rng, p, 4)
    assert g @ g.inverse() == Matrix.identity(p, 4)
    m = Matrix.of(p, 2, 3, [[1, 2, 3], [2, 4, 6]])
    for v in kernel(p, m.entries, 3):
        assert not any(m @ v)
    assert len(kernel(p, m.entries, 3)) == 3 - m.rank()


def test_solve():
    cols = [(1, 0, 1), (0, 1, 1)]
    assert solve(5, cols, (2, 3, 0), 3) == (2, 3)
    assert solve(5, cols, (1, 0, 0), 3) is None


@pytest.mark.parametrize("p", [1, 4, 101, 0])
def test_bad_prime(p):
    with pytest.raises(BadParams):
        make_bar(3, 0, 1, p)


# -- bars and nilpotence ---------------------------------------------------------------

def test_make_bar_shapes():
    r = make_bar(3, 0, 1)
    assert r.dims == (1, 0, 0)
    assert all(a.is_zero() for a in r.arrows)
    assert make_bar(3, 2, 5).dims == (2, 1, 2)


@pytest.mark.parametrize("args", [(3, 3, 1), (3, 0, 0), (0, 0, 1)])
def test_make_bar_rejects(args):
    with pytest.raises(BadParams):
        make_bar(*args)


def test_nilpotence():
    assert is_nilpotent(zero_rep(3))
    assert is_nilpotent(make_bar(3, 0, 2))
    one = Matrix.identity(5, 1)
    local = CyclicQuiverRep(3, 5, (1, 1, 1), (one, one, one))
    assert not is_nilpotent(local)
    with pytest.raises(NotNilpotent):
        decompose_nilpotent_cyclic(local)


def test_direct_sum_dims():
    a, b = make_bar(4, 1, 3), make_bar(4, 3, 6)
    assert direct_sum(a, b).dims == tuple(x + y for x, y in zip(a.dims, b.dims))


def test_basic_decompositions():
    assert decompose_nilpotent_cyclic(zero_rep(3)) == ()
    assert decompose_nilpotent_cyclic(make_bar(3, 0, 2)) == (B(0, 2),)
    r = conjugate_random(direct_sum(make_bar(3, 0, 2), make_bar(3, 1, 1)), 17)
    assert decompose_nilpotent_cyclic(r) == (B(0, 2), B(1, 1))


bar_sums = st.tuples(st.integers(1, 6), st.sampled_from([2, 3, 5]), st.integers(0, 2 ** 32))


@settings(max_examples=60, deadline=None)
@given(bar_sums)
def test_conjugated_sum_recovers_bars(params):
    n, p, seed = params
    rng = random.Random(seed)
    bars = random_bars(rng, n, 12)
    rep = conjugate_random(rep_of_bars(bars, n, p), seed)
    assert decompose_nilpotent_cyclic(rep) == bars
    assert bar_footprint(bars, n) == rep.dims


@settings(max_examples=40, deadline=None)
@given(bar_sums)
def test_decomposition_matches_rank_formula(params):
    n, p, seed = params
    rng = random.Random(seed)
    rep = conjugate_random(rep_of_bars(random_bars(rng, n, 10), n, p), seed + 1)
    assert decompose_nilpotent_cyclic(rep) == bars_from_ranks(rep)


@settings(max_examples=30, deadline=None)
@given(bar_sums, bar_sums)
def test_krull_schmidt(x, y):
    n, p, s1 = x
    rng = random.Random(s1)
    a = conjugate_random(rep_of_bars(random_bars(rng, n, 6), n, p), s1)
    b = conjugate_random(rep_of_bars(random_bars(rng, n, 6), n, p), y[2])
    joint = decompose_nilpotent_cyclic(direct_sum(a, b))
    assert joint == tuple(sorted(decompose_nilpotent_cyclic(a) + decompose_nilpotent_cyclic(b)))


def test_reseeding_does_not_change_answer():
    rep = rep_of_bars((B(0, 3), B(1, 1), B(2, 4)), 3, 3)
    answers = {decompose_nilpotent_cyclic(conjugate_random(rep, s)) for s in range(10)}
    assert len(answers) == 1


def test_f2_orbit_oracle():
    for n in (1, 2):
        for dims in itertools.product(range(4), repeat=n):
            if sum(dims) > 3:
                continue
            labels = orbit_labels(n, dims, 2)
            by_orbit = {}
            for arrows, k in labels.items():
                rep = CyclicQuiverRep(n, 2, dims, arrows)
                if is_nilpotent(rep):
                    by_orbit.setdefault(k, set()).add(decompose_nilpotent_cyclic(rep))
            assert all(len(v) == 1 for v in by_orbit.values())
            classes = [next(iter(v)) for v in by_orbit.values()]
            assert len(set(classes)) == len(classes)


# -- linear quiver -----------------------------------------------------------------------

def test_linear_examples():
    zero = LinearQuiverRep(2, 5, (0, 0), (Matrix.zero(5, 0, 0),))
    assert decompose_linear(zero) == ()
    ident = LinearQuiverRep(2, 5, (1, 1), (Matrix.identity(5, 1),))
    (bar,) = decompose_linear(ident)
    assert bar.interval == (1, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2 ** 32))
def test_linear_conjugated_intervals(n, seed):
    rng = random.Random(seed)
    intervals = []
    for _ in range(4):
        a = rng.randint(1, n)
        intervals.append((a, rng.randint(a, n)))
    rep = make_interval(n, *intervals[0], p=3)
    for a, b in intervals[1:]:
        rep = direct_sum(rep, make_interval(n, a, b, p=3))
    got = decompose_linear(conjugate_random(rep, seed))
    assert sorted(b.interval for b in got) == sorted(intervals)
    assert all(b.start + b.length <= n + 1 for b in got)


# -- periodic complexes ----------------------------------------------------------------------

def test_zero_differentials_cohomology():
    E, O = make_bar(3, 0, 2), make_bar(3, 1, 1)
    c = zero_differentials(E, O)
    he, ho = periodic_cohomology(c)
    assert decompose_nilpotent_cyclic(he) == (B(0, 2),)
    assert decompose_nilpotent_cyclic(ho) == (B(1, 1),)
    assert decompose_periodic(c) == (B(0, 2, 0), B(1, 1, 1))
    # cohomology of the cohomology is itself
    he2, ho2 = periodic_cohomology(zero_differentials(he, ho))
    assert he2 == he and ho2 == ho


def test_acyclic_complex():
    E = O = make_bar(3, 0, 1)
    d0 = (Matrix.identity(5, 1), Matrix.zero(5, 0, 0), Matrix.zero(5, 0, 0))
    d1 = (Matrix.zero(5, 1, 1), Matrix.zero(5, 0, 0), Matrix.zero(5, 0, 0))
    c = PeriodicComplex(E, O, d0, d1)
    he, ho = periodic_cohomology(c)
    assert he.dims == (0, 0, 0) and ho.dims == (0, 0, 0)
    assert decompose_periodic(c) == ()


def test_zero_complex():
    assert decompose_periodic(zero_differentials(zero_rep(2), zero_rep(2))) == ()


def test_bad_complex():
    E = O = make_bar(1, 0, 1)
    one = Matrix.identity(5, 1)
    with pytest.raises(BadParams):
        PeriodicComplex(E, O, (one,), (one,))


def test_non_nilpotent_cohomology():
    one = Matrix.identity(5, 1)
    local = CyclicQuiverRep(2, 5, (1, 1), (one, one))
    with pytest.raises(NonNilpotentCohomology):
        decompose_periodic(zero_differentials(local, zero_rep(2)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.sampled_from([2, 3, 5]), st.integers(0, 2 ** 32))
def test_random_complex_euler_and_bars(n, p, seed):
    c, he_bars, ho_bars = random_periodic_complex(seed, n, p)
    he, ho = periodic_cohomology(c)
    for i in range(n):
        assert he.dims[i] - ho.dims[i] == c.even.dims[i] - c.odd.dims[i]
    want = sorted([B(b.start, b.length, 0) for b in he_bars] + [B(b.start, b.length, 1) for b in ho_bars])
    assert decompose_periodic(c) == tuple(want)


# -- files ---------------------------------------------------------------------------------------

def test_rep_roundtrip():
    rep = conjugate_random(make_bar(4, 1, 5, 7), 3)
    assert rep_from_dict(json.loads(json.dumps(rep_to_dict(rep)))) == rep


def test_complex_roundtrip():
    c, _, _ = random_periodic_complex(5, 3, 3)
    assert complex_from_dict(json.loads(json.dumps(complex_to_dict(c)))) == c


def test_fixture_bar_sum():
    rep = rep_from_dict(json.loads((FIX / "bar_sum.json").read_text()))
    assert decompose_nilpotent_cyclic(rep) == (B(0, 2), B(1, 1), B(2, 4))


def test_bad_rep_record():
    with pytest.raises(ParseError):
        rep_from_dict({"n": 2, "p": 5, "dims": [1, 1], "arrows": [[[1]]]})
