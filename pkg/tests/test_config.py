import pytest

from lunezeta.config import RunConfig, load_config, parse_config


def test_defaults():
    cfg = load_config(None)
    assert cfg == RunConfig()
    assert cfg.route_tol == 1e-9 and cfg.quadrature.target_abs_err == 1e-14


def test_parse_all_keys(tmp_path):
    text = """
# accuracy
target_abs_err = 1e-12
compensated = yes
route_tol = 1e-8   # looser
target.Z2 = 0.6666666667
"""
    path = tmp_path / "run.cfg"
    path.write_text(text)
    cfg = load_config(str(path))
    assert cfg.quadrature.target_abs_err == 1e-12
    assert cfg.compensated is True
    assert cfg.route_tol == 1e-8
    assert cfg.targets == {"Z2": pytest.approx(0.6666666667)}


def test_overrides_take_precedence():
    cfg = parse_config("route_tol = 1e-8").with_overrides(route_tol=1e-6, target_abs_err=1e-13)
    assert cfg.route_tol == 1e-6 and cfg.quadrature.target_abs_err == 1e-13
    assert parse_config("").with_overrides() == RunConfig()


@pytest.mark.parametrize("text", ["colour = blue", "route_tol = -1", "target_abs_err = 0", "route_tol = fast"])
def test_bad_config(text):
    with pytest.raises(ValueError):
        parse_config(text)
