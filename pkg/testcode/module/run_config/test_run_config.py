import pytest

import run_config
from errors import ConfigError


def _write(tmp_path, text):
    path = tmp_path / "run.conf"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_defaults():
    config = run_config.build_config()

    assert (config.m, config.lam, config.s, config.k) == (1.0, 0.2, 0.5, -1)
    assert config.zero_index == 1
    assert config.r_max == 25.0 and config.n == 20000
    assert config.out is None and config.energy is None
    assert config.mix.lam == 0.2
    assert config.grid.n == 20000
    assert config.grid.r_max == 25.0


def test_load_config_file(tmp_path):
    path = _write(tmp_path, "# quasi-bound run\nm=1.0\nlambda=0.3\ns=0.25\n\nk=-2\nenergy=1.6\n")
    values = run_config.load_config(path)

    assert values == {"m": "1.0", "lambda": "0.3", "s": "0.25", "k": "-2", "energy": "1.6"}

    config = run_config.build_config(values)
    assert config.lam == 0.3
    assert config.s == 0.25
    assert config.k == -2
    assert config.energy == 1.6


def test_flags_override_file(tmp_path):
    path = _write(tmp_path, "m=2.0\ns=0.0\n")
    config = run_config.build_config(run_config.load_config(path), {"m": 3.0})

    assert config.m == 3.0
    assert config.s == 0.0


def test_unknown_key(tmp_path):
    path = _write(tmp_path, "m=1.0\nmass=2.0\n")
    with pytest.raises(ConfigError, match="mass"):
        run_config.load_config(path)
    with pytest.raises(ConfigError, match="mass"):
        run_config.build_config({"mass": "2.0"})


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        run_config.load_config(str(tmp_path / "missing.conf"))


@pytest.mark.parametrize("key, value", [
    ("s", "1.5"),
    ("lambda", "-0.2"),
    ("m", "abc"),
    ("k", "0"),
    ("n", "10"),
    ("param", "k"),
])
def test_invalid_value_names_key(key, value):
    with pytest.raises(ConfigError, match=key):
        run_config.build_config({key: value})


def test_dump_round_trip(tmp_path):
    config = run_config.build_config(overrides={"lambda": 0.1 + 0.2, "s": 0.3, "energy": 1.5828, "out": "x.csv"})
    text = run_config.dump_config(config)

    assert "lambda=0.30000000000000004\n" in text
    assert "energy=1.5828\n" in text
    assert "param" not in text

    path = _write(tmp_path, text)
    assert run_config.build_config(run_config.load_config(path)) == config


def test_with_value():
    config = run_config.build_config()
    changed = config.with_value("lambda", 0.4)

    assert changed.lam == 0.4
    assert config.lam == 0.2
    with pytest.raises(ConfigError):
        config.with_value("s", 2.0)


def test_model_types():
    config = run_config.build_config({"m": "2.0", "k": "2"})

    assert config.particle.m == 2.0
    assert config.quantum_numbers.k == 2
    assert config.quantum_numbers.j == 1.5
    assert config.quantum_numbers.l == 2
    assert run_config.build_config().quantum_numbers.l == 0
