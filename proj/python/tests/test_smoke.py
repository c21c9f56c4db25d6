import json
import math

import numpy as np
import pytest

import entire_dynamics as ed


def test_erf_matches_real_erf():
    for x in (-2.0, -0.3, 0.0, 0.7, 3.1):
        assert abs(ed.erf(complex(x, 0.0)) - math.erf(x)) < 1e-14


def test_derived_params_are_consistent():
    p = ed.derive_params(ed.solve_erf_equals_one().root)
    z0 = p.fixed_point
    assert abs(ed.f_ab(z0, p.alpha, p.beta) - z0) < 1e-10
    assert abs(ed.f_ab_prime(z0, p.alpha) - 1.0) < 1e-10


def test_classify_polynomial():
    sq = ed.make_map("quadratic")
    assert ed.classify(sq, 0.5 + 0j).tag == ed.OrbitTag.Bounded
    assert ed.classify(sq, 1.5 + 0j).tag == ed.OrbitTag.Escaping


def test_raster_and_topology():
    sq = ed.make_map("quadratic")
    raster = ed.rasterize(sq, ed.GridSpec(0j, 4.0, 41, 41), ed.ClassifierConfig(), 1)
    cells = raster.cells
    assert cells.shape == (41, 41)
    counts = raster.counts()
    assert counts["Bounded"] > 0 and counts["Escaping"] > 0
    bounded = cells == int(ed.OrbitTag.Bounded)
    assert ed.connected_with_infinity(bounded) == 2


def test_ring_separates_and_detects_web():
    ring = np.zeros((21, 21), dtype=np.uint8)
    ring[5, 5:16] = ring[15, 5:16] = ring[5:16, 5] = ring[5:16, 15] = 1
    assert ed.separates_from_infinity(ring, 10, 10)
    assert not ed.separates_from_infinity(ring, 1, 1)
    assert not ed.spiderweb_detect(ring)["candidate"]


def test_errors_carry_codes():
    with pytest.raises(ed.EdError) as info:
        ed.make_map("no-such-map")
    assert info.value.code == "NotFound"


def test_cli_derive_params():
    code, out, _ = ed.edyn("derive-params")
    assert code == 0
    report = json.loads(out)
    assert "alpha" in json.dumps(report)
    code, _, err = ed.edyn("render", "--width", "-1")
    assert code == 2 and err
