import pytest

from oamring.config import (dumps_config, load_bundled_config, load_config,
                            loads_config, parse_quantity)
from oamring.errors import (MissingSection, ParseError, UnknownKey,
                            ValidationError)

GOOD = """
[ring]
radius = 2 um
width = 60 nm
depth = 10 nm

[material]
pair_density = 2.1e28 /m^3
london_depth = 50 nm
skin_depth = 7 nm

[beam]
oam_index = 1
polarization = linear-x
intensity = 6.6e-3 W/cm^2

[two_qubit]
ring_separation = 0.1 mm

[simulation]
t_final = 27 ps
tol = 1e-9
mode = rwa
n_max = 8

[conventions]
intensity_convention = paper-consistent
effective_radius_rule = rosa
"""


def test_bundled_paper_design():
    config = load_bundled_config()
    assert config.design.radius == pytest.approx(2e-6, rel=1e-15)
    assert config.design.width == pytest.approx(60e-9, rel=1e-15)
    assert config.design.depth == pytest.approx(10e-9, rel=1e-15)
    assert config.material.pair_density == pytest.approx(2.1e28, rel=1e-15)
    assert config.beam.oam_index == 1
    assert config.beam.polarization == "linear-x"
    assert config.beam.intensity == pytest.approx(66.0, rel=1e-15)
    assert config.two_qubit_separation == pytest.approx(1e-4, rel=1e-15)
    assert config.conventions.intensity_convention == "paper-consistent"


def test_unit_parsing():
    length = {"m": 1.0, "nm": 1e-9}
    assert parse_quantity("2.5", length, "x") == 2.5
    assert parse_quantity("60 nm", length, "x") == pytest.approx(6e-8, rel=1e-15)
    with pytest.raises(ValidationError, match="unknown unit"):
        parse_quantity("3 furlong", length, "x")
    with pytest.raises(ValidationError, match="not a number"):
        parse_quantity("sixty nm", length, "x")


def test_intensity_units_convert():
    config = loads_config(GOOD)
    assert config.beam.intensity == pytest.approx(66.0, rel=1e-15)


def test_detuning_accepts_cyclic_units():
    import math
    text = GOOD.replace("intensity = 6.6e-3 W/cm^2",
                        "intensity = 6.6e-3 W/cm^2\ndetuning = 1 GHz")
    config = loads_config(text)
    assert config.beam.detuning == pytest.approx(2 * math.pi * 1e9, rel=1e-15)


def test_negative_width_rejected():
    bad = GOOD.replace("width = 60 nm", "width = -1 nm")
    with pytest.raises(ValidationError, match="width"):
        loads_config(bad)


def test_unknown_key_rejected():
    bad = GOOD.replace("depth = 10 nm", "depth = 10 nm\ncolour = blue")
    with pytest.raises(UnknownKey, match="ring.colour"):
        loads_config(bad)


def test_unknown_section_rejected():
    with pytest.raises(UnknownKey, match="cryostat"):
        loads_config(GOOD + "\n[cryostat]\ntemperature = 10\n")


def test_syntax_error_reports_line():
    with pytest.raises(ParseError, match="line"):
        loads_config(GOOD + "\norphan value without key\n")


def test_missing_required_section():
    bad = GOOD.replace("[material]", "[simulation2]")
    with pytest.raises((UnknownKey, MissingSection)):
        loads_config(bad)
    no_ring = "\n".join(line for line in GOOD.splitlines()
                        if not line.startswith(("[ring]", "radius", "width",
                                                "depth")))
    with pytest.raises(MissingSection, match="ring"):
        loads_config(no_ring)


def test_two_qubit_section_optional():
    text = GOOD.replace("[two_qubit]\nring_separation = 0.1 mm\n", "")
    config = loads_config(text)
    assert config.two_qubit_separation is None
    with pytest.raises(MissingSection, match="two_qubit"):
        config.require_two_qubit()


def test_intensity_and_amplitude_exclusive():
    both = GOOD.replace("intensity = 6.6e-3 W/cm^2",
                        "intensity = 6.6e-3 W/cm^2\namplitude = 8.6e-14")
    with pytest.raises(ValidationError, match="exactly one"):
        loads_config(both)
    neither = GOOD.replace("intensity = 6.6e-3 W/cm^2", "")
    with pytest.raises(ValidationError, match="exactly one"):
        loads_config(neither)


def test_amplitude_only_config():
    text = GOOD.replace("intensity = 6.6e-3 W/cm^2", "amplitude = 8.6e-14")
    config = loads_config(text)
    assert config.beam.intensity is None
    assert config.beam.amplitude == pytest.approx(8.6e-14, rel=1e-15)


def test_mode_and_convention_choices():
    with pytest.raises(ValidationError, match="mode"):
        loads_config(GOOD.replace("mode = rwa", "mode = floquet"))
    with pytest.raises(ValidationError, match="intensity_convention"):
        loads_config(GOOD.replace("paper-consistent", "mystery"))
    with pytest.raises(ValidationError, match="tol"):
        loads_config(GOOD.replace("tol = 1e-9", "tol = 1e-3"))


def test_explicit_radius_rule_needs_radius():
    bad = GOOD.replace("effective_radius_rule = rosa",
                       "effective_radius_rule = explicit")
    with pytest.raises(ValidationError, match="explicit_radius"):
        loads_config(bad)
    good = GOOD.replace("effective_radius_rule = rosa",
                        "effective_radius_rule = explicit\n"
                        "explicit_radius = 14 nm")
    config = loads_config(good)
    assert config.conventions.explicit_radius == pytest.approx(1.4e-8,
                                                               rel=1e-15)


def test_defaults_when_sections_omitted():
    minimal = """
[ring]
radius = 2 um
width = 60 nm
depth = 10 nm

[material]
pair_density = 2.1e28 /m^3
london_depth = 50 nm
skin_depth = 7 nm

[beam]
oam_index = 1
polarization = linear-x
intensity = 6.6e-3 W/cm^2
"""
    config = loads_config(minimal)
    assert config.simulation.mode == "rwa"
    assert config.simulation.n_max == 8
    assert config.conventions.effective_radius_rule == "rosa"


def test_dump_load_round_trip(tmp_path):
    config = loads_config(GOOD)
    dumped = dumps_config(config)
    again = loads_config(dumped)
    assert again == config
    # and through the filesystem
    path = tmp_path / "resolved.cfg"
    path.write_text(dumped, encoding="utf-8")
    assert load_config(str(path)) == config


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_config(str(tmp_path / "nope.cfg"))


def test_beam_phase_reaches_drive():
    import cmath
    from oamring.workbench import resolve
    text = GOOD.replace("polarization = linear-x",
                        "polarization = linear-x\nphase = 90 deg")
    model = resolve(loads_config(text))
    assert cmath.phase(model.drive.a0) == pytest.approx(cmath.pi / 2, rel=1e-12)
    assert abs(model.drive.a0) == pytest.approx(model.a0_magnitude, rel=1e-12)
