import math
import os

import pytest

import henon

QUAD = '{"factors":[{"kind":"henon","p":[0,0,1],"delta":1}]}'
SCALED = '{"factors":[{"kind":"henon","p":[0,0,4],"delta":1}]}'


def test_map_roundtrip():
    h = henon.HenonMap(QUAD)
    assert h.degree == 2
    assert h.to_json() == QUAD
    z = henon.Point(0.3 + 0.1j, -0.2j)
    back = h.apply_inverse(h.apply(z))
    assert abs(back.x - z.x) < 1e-14 and abs(back.y - z.y) < 1e-14


def test_green_values():
    h = henon.HenonMap(QUAD)
    assert henon.filtration_radius(h) == 3.0
    assert henon.green_plus(h, henon.Point(0, 0))["value"] == 0.0
    g = henon.green_plus(h, henon.Point(0, 1e8))
    assert g["escaped"] and abs(g["value"] - math.log(1e8)) < 1e-6
    assert henon.green_minus(h, henon.Point(1e8, 0))["escaped"]
    assert henon.in_K_plus(h, henon.Point(0, 0)) == "true"


def test_functorial_and_boettcher():
    h = henon.HenonMap(QUAD)
    ok, report = henon.verify_functorial(h, samples=200)
    assert ok and report.startswith("verdict: PASS")
    s = henon.HenonMap(SCALED)
    assert henon.leading_constants(s) == ("4", "4")
    phi, err = henon.boettcher_plus(s, henon.Point(0, 1e6))
    assert abs(phi / 1e6 - 1) < 1e-6 and err < 1e-6
    with pytest.raises(henon.BranchError):
        henon.boettcher_plus(h, henon.Point(0, 0))


def test_errors_and_cli():
    with pytest.raises(henon.MapSpecError):
        henon.HenonMap('{"factors":[{"kind":"henon","p":[0,0,1],"delta":0}]}')
    data = os.environ.get("HENON_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "tests", "data"))
    code, out, _ = henon.run_cli(["green", "--map", os.path.join(data, "quad.json"), "--point", "0,0"])
    assert code == 0 and "value: 0" in out
    code, _, err = henon.run_cli(["green", "--map", os.path.join(data, "bad_delta.json"), "--point", "0,0"])
    assert code == 2 and "delta must be nonzero" in err


def test_render_is_deterministic():
    h = henon.HenonMap(QUAD)
    a = henon.render_ppm(h, size=64, c=0.5, threads=1)
    b = henon.render_ppm(h, size=64, c=0.5, threads=3)
    assert a == b and a.startswith(b"P6\n64 64\n255\n")
    assert henon.sha256_hex(a) == henon.sha256_hex(b)
