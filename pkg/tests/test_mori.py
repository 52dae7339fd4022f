from fractions import Fraction

import pytest

from fm_oracle import fan_is_projective
from toricfan.fan import wall_lookup, walls
from toricfan.gallery import get_fan
from toricfan.intersection import all_relations
from toricfan.lattice import vdot
from toricfan.mori import (
    Birational,
    Fibration,
    NotExtremal,
    classify_contraction,
    extremal_classes,
    is_extremal,
    is_projective,
    mori_generators,
)


def test_p2_generators(p2):
    gens = mori_generators(p2)
    assert len(gens) == 1
    vec, ws = gens[0]
    assert vec == (1, 1, 1) and len(ws) == 3
    assert is_extremal(p2, ws[0])


def test_p1xp1_generators(p1xp1):
    gens = mori_generators(p1xp1)
    assert len(gens) == 2
    assert all(len(ws) == 2 for _, ws in gens)


def test_f1_classes_and_extremality(f1):
    gens = dict(mori_generators(f1))
    exceptional = (1, -1, 1, 0)
    fiber = (0, 1, 0, 1)
    section = (1, 0, 1, 1)
    assert set(gens) == {exceptional, fiber, section}
    extremal = {vec for vec, _ in extremal_classes(f1)}
    assert extremal == {exceptional, fiber}
    # the non-extremal generator decomposes explicitly
    assert section == tuple(a + b for a, b in zip(exceptional, fiber))
    assert not is_extremal(f1, wall_lookup(f1, (3,)))


def test_projectivity_witness_p2(p2):
    verdict = is_projective(p2)
    assert verdict.projective and verdict.degeneracy_certificate is None
    for rel in all_relations(p2):
        assert vdot(verdict.ample_witness, rel.coeffs) >= 1


def test_oda_certificate(oda):
    verdict = is_projective(oda.fan)
    assert not verdict.projective and verdict.ample_witness is None
    cert = verdict.degeneracy_certificate
    assert cert and all(y > 0 for y in cert.values())
    total = [0] * oda.fan.n_rays
    for w, y in cert.items():
        rel = next(r for r in all_relations(oda.fan) if r.wall == w)
        for i, c in enumerate(rel.coeffs):
            total[i] += y * c
    assert all(v == 0 for v in total)


def test_verdict_serialization(p2, oda):
    d = is_projective(p2).to_dict(p2)
    assert d["projective"] is True
    assert all(isinstance(s, str) for s in d["witness"])
    d = is_projective(oda.fan).to_dict(oda.fan)
    assert d["projective"] is False
    assert all(set(item) == {"wall", "y"} for item in d["certificate"])


def test_xab_non_projective():
    assert not is_projective(get_fan("xab", 1, 0).fan).projective


def test_contraction_classification(p2, f1, p1xp1):
    info = classify_contraction(p2, wall_lookup(p2, (0,)))
    assert info.alpha == 0 and info.beta == 0
    assert info.kind == Fibration(base_dim=0)
    assert info.mori_extremal

    info = classify_contraction(f1, wall_lookup(f1, (1,)))
    assert info.kind == Birational(exceptional_dim=1, image_dim=0, fiber_dim=1, divisorial=True)
    assert info.mori_extremal

    info = classify_contraction(p1xp1, wall_lookup(p1xp1, (0,)))
    assert info.kind == Fibration(base_dim=1)

    with pytest.raises(NotExtremal):
        classify_contraction(f1, wall_lookup(f1, (3,)))


def test_contraction_bounds(oda):
    f = oda.fan
    for vec, ws in extremal_classes(f):
        info = classify_contraction(f, ws[0])
        assert 0 <= info.alpha <= info.beta <= f.dim - 1
        if isinstance(info.kind, Birational):
            assert info.alpha >= 1
            assert info.kind.exceptional_dim == f.dim - info.alpha
            assert info.kind.divisorial == (info.alpha == 1)


def test_fm_oracle_agrees_on_small_set(p2, p3, f1, p1xp1, oda):
    for f in (p2, p3, f1, p1xp1, oda.fan, get_fan("xab", 1, 0).fan, get_fan("xab", 0, 2).fan):
        assert fan_is_projective(f) == is_projective(f).projective
