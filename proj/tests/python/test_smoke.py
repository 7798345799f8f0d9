import math

import pytest

import nanosim


def test_presets_listed():
    names = nanosim.list_presets()
    assert len(names) == 8
    assert "loopback_latency" in names and "incast_ndp" in names


def test_preset_config_resolves():
    cfg = nanosim.resolve("bounded_mpt")
    assert cfg["experiment"] == "bounded_mpt"
    assert cfg["scheduler"]["restore"] == "never"


def test_unknown_field_rejected():
    with pytest.raises(nanosim.ConfigError, match="kv.num_cors"):
        nanosim.resolve("mica_kv", ["kv.num_cors=4"])


def test_loopback_run():
    r = nanosim.run("loopback_latency")
    assert not r.incomplete
    m = r.metrics()
    assert m["internal_loopback_ns"] == pytest.approx(13.0)
    assert m["wire_to_wire_ns"] == pytest.approx(65.0)


def test_run_is_deterministic():
    a = nanosim.run("loopback_latency", seed=3)
    b = nanosim.run("loopback_latency", seed=3)
    assert a.files == b.files


def test_helpers():
    assert nanosim.percentile([5.0, 1.0, 3.0, 2.0, 4.0], 50) == 3.0
    with pytest.raises(ValueError):
        nanosim.percentile([], 50)
    assert math.isclose(nanosim.nic_packet_rate(72) / 1e6, 347.2222, rel_tol=1e-5)
    assert nanosim.parse_load_grid("0.1:0.3:0.1") == pytest.approx([0.1, 0.2, 0.3])
