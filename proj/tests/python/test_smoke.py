import os

import pytest

import gfperiod


@pytest.fixture(scope="module", autouse=True)
def cache(tmp_path_factory):
    gfperiod.configure(12, os.environ.get("GFPERIOD_CACHE", str(tmp_path_factory.mktemp("cache"))))


def test_reduce():
    assert gfperiod.reduce("z(4)") == "2/5*z(2)^2"
    assert gfperiod.reduce("z(1,2)") == "z(3)"


def test_periods():
    assert gfperiod.period_seq("22") == "6*z(3)"
    assert gfperiod.period_zigzag(5) == "441/8*z(7)"
    assert gfperiod.classify_word("2012") == "zigzag(5)"


def test_divergent_word():
    with pytest.raises(gfperiod.MathError, match="divergent"):
        gfperiod.gf_seq("02")


def test_plane_integral():
    assert gfperiod.integrate_plane("(P[01]-P[10])^4/256") == ("9/2*z(3)-27/4*z(5)+189/32*z(7)", True)


def test_numeric():
    v = gfperiod.sv_eval("P[01]-P[10]", 1j)
    assert abs(v - 4j * 0.915965594177219015) < 1e-14
    assert gfperiod.mzv_eval("z(3)", 20).startswith("1.202056903159594285")


def test_parse_error():
    with pytest.raises(gfperiod.MathError, match="column 4"):
        gfperiod.reduce("z(2")
