import json
import shutil
import tempfile
from pathlib import Path

import pytest

from singulator import Singulator, __version__
from singulator.errors import NonIsolatedSingularityError


def test_api_invariants_of_cusp():
    sing = Singulator()
    report = sing.invariants(sing.parse("x^2 + y^3", ["x", "y"]))

    assert report["input"] == "y^3 + x^2"
    assert (report["mu"], report["nu"], report["lct"]) == (2, 2, "5/6")
    # default range: two periods of lcm(2, 3, 6)
    assert report["lefschetz"] == [0, 2, 3, 2, 0, -1, 0, 2, 3, 2, 0, -1]
    assert report["zeta"] == {"2": -1, "3": -1, "6": 1}
    assert report["fiber"]["genus"] == 1
    assert len(report["fingerprint"]) == 16


def test_api_surface_has_no_curve_invariants():
    sing = Singulator()
    report = sing.invariants(sing.parse("x^2 + y^2 + z^2", ["x", "y", "z"]))
    assert report["mu"] == 1 and report["nu"] == 2
    assert report["lct"] == report["zeta"] == report["fiber"] == "unavailable"


def test_api_config_caps_lefschetz_range():
    sing = Singulator({"lefschetz_cap": 4})
    assert len(sing.invariants(sing.parse("x^2 + y^3"))["lefschetz"]) == 4


def test_api_config_from_file():
    d = tempfile.mkdtemp(prefix="singulator_pytest_")
    try:
        p = Path(d) / "config.json"
        p.write_text(json.dumps({"lefschetz_periods": 1}))
        sing = Singulator.from_file(p)
        assert sing.config["lefschetz_periods"] == 1
        assert sing.config["json_indent"] == 2
    finally:
        shutil.rmtree(d)


def test_api_milnor_tjurina_sigma():
    sing = Singulator()
    report = sing.milnor(sing.parse("x^4 + y^5 + x^2*y^3", ["x", "y"]))
    assert report["mu"] == 12
    assert report["tau"] < report["mu"]


def test_api_rejects_non_isolated():
    sing = Singulator()
    with pytest.raises(NonIsolatedSingularityError):
        sing.invariants(sing.parse("x^2*y", ["x", "y"]))


def test_api_spectral_page_and_floer_lct():
    sing = Singulator()
    f = sing.parse("x^2 + y^3", ["x", "y"])
    tree, page = sing.spectral_page(f, 2)
    assert tree.is_separating(2)
    assert page.euler_characteristic() == -2
    assert str(sing.floer_lct(f)) == "5/6"


def test_api_digest_is_stable():
    sing = Singulator()
    assert sing.digest({"b": 1, "a": [1, 2]}) == sing.digest({"a": [1, 2], "b": 1})


def test_version():
    assert __version__ == "0.1.0"


def test_api_invariants_with_tree():
    sing = Singulator()
    report, tree = sing.invariants_with_tree(sing.parse("x^3 + y^4", ["x", "y"]))
    assert tree == sing.resolve(sing.parse("x^3 + y^4", ["x", "y"]))
    assert report["lct"] == "7/12"
    _, no_tree = sing.invariants_with_tree(sing.parse("x^2 + y^2 + z^2"))
    assert no_tree is None
