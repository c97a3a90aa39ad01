import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cylruling.certify import (CONCLUSION, Certificate, SuspensionSpec, nonsqueeze_certificate, suspension_counts,
                               torus_local_systems)
from cylruling.corpus import corpus
from cylruling.errors import BadParams
from cylruling.front import builtin_front, cover, front_hash
from cylruling.moves import fuzz_moves


def test_unknot_certificate():
    f = builtin_front("unknot_area_1")
    c = nonsqueeze_certificate(f)
    assert (c.disk_count, c.circular_count, c.inequality_violated) == (1, 0, True)
    assert c.conclusion == CONCLUSION
    assert c.front_hash == front_hash(f)


def test_saucer_certificate_has_no_conclusion():
    c = nonsqueeze_certificate(builtin_front("flying_saucer"))
    assert (c.disk_count, c.circular_count, c.inequality_violated) == (1, 1, False)
    assert c.conclusion == ""


def test_certificate_json_is_stable():
    f = builtin_front("unknot_area_1")
    a = nonsqueeze_certificate(f).to_json()
    b = nonsqueeze_certificate(f).to_json()
    assert a == b
    assert json.loads(a)["schema"].startswith("cylruling-certificate/")


def test_certificate_flag_must_match_counts():
    with pytest.raises(BadParams):
        Certificate("h", 1, 1, True, CONCLUSION)


def test_certificates_stable_under_fuzzing():
    f = corpus(count=0)["hopf_pair"]
    base = nonsqueeze_certificate(f)
    fronts, _ = fuzz_moves(f, 5, 10, max_crossings=8)
    for g in fronts:
        c = nonsqueeze_certificate(g)
        assert (c.disk_count, c.circular_count) == (base.disk_count, base.circular_count)


def test_cover_certificates():
    # the lifted counts on the k-fold cover: see the acceptance suite
    for k in (2, 3):
        c = nonsqueeze_certificate(cover(builtin_front("unknot_area_1"), k))
        assert c.circular_count == 0
        assert c.inequality_violated == (c.disk_count > 0)


def test_suspension_examples():
    assert suspension_counts(SuspensionSpec(1, 0, 7)) == (7, 0, True)
    assert suspension_counts(SuspensionSpec(0, 0, 7)) == (0, 0, False)
    assert suspension_counts(SuspensionSpec(2, 2, 5)) == (10, 10, False)


def test_torus_local_systems():
    assert torus_local_systems(2, 5) == 16
    assert torus_local_systems(0, 3) == 1
    with pytest.raises(BadParams):
        torus_local_systems(1, 4)


@pytest.mark.parametrize("args", [(-1, 0, 1), (1, 0, -2), (1, 1, 1, 6)])
def test_bad_suspension_spec(args):
    with pytest.raises(BadParams):
        SuspensionSpec(*args)


counts = st.integers(0, 50)


@given(counts, counts, counts, st.integers(1, 5))
def test_suspension_multiplicative_and_monotone(d, c, ls, k):
    d1, c1, _ = suspension_counts(SuspensionSpec(d, c, ls))
    dk, ck, _ = suspension_counts(SuspensionSpec(d, c, ls * k))
    assert (dk, ck) == (d1 * k, c1 * k)
    d2, c2, _ = suspension_counts(SuspensionSpec(d + 1, c + 1, ls))
    assert d2 >= d1 and c2 >= c1
