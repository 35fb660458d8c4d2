"""Smoke tests for the python bindings: thin checks that the module loads and
mirrors the core library, not a re-test of the numerics."""

import math

import pytest

import liquilens as ll


def test_resolve_cap_from_each_parameter():
    by_volume = ll.resolve_cap(2.0, volume=0.2)
    by_sag = ll.resolve_cap(2.0, sag=by_volume.sag)
    by_angle = ll.resolve_cap(2.0, contact_angle_deg=by_volume.contact_angle_deg)
    assert by_volume.radius == pytest.approx(4.0113097917500502, rel=1e-12)
    assert by_sag.volume == pytest.approx(0.2, rel=1e-9)
    assert by_angle.sag == pytest.approx(by_volume.sag, rel=1e-9)
    assert "CapState" in repr(by_volume)


def test_resolve_cap_requires_exactly_one_parameter():
    with pytest.raises(ValueError):
        ll.resolve_cap(2.0)
    with pytest.raises(ValueError):
        ll.resolve_cap(2.0, sag=0.1, volume=0.2)


def test_domain_errors_become_value_errors():
    with pytest.raises(ValueError, match="exceeds hemispherical regime"):
        ll.resolve_cap(2.0, volume=3.0)
    with pytest.raises(ValueError, match="unreachable focal length"):
        ll.focal_to_volume(3.0)


def test_focal_volume_round_trip():
    f = ll.volume_to_focal(0.2)
    assert f == pytest.approx(12.155484217424394, rel=1e-12)
    assert ll.focal_to_volume(f) == pytest.approx(0.2, rel=1e-9)
    assert ll.hemisphere_focal_bound() == pytest.approx(1.0 / 0.33, rel=1e-12)


def test_theoretical_curve_shape():
    curve = ll.theoretical_curve(4.0, 12.0, steps=9)
    assert len(curve) == 9
    assert curve[0].focal_length == pytest.approx(4.0)
    volumes = [p.volume for p in curve]
    assert volumes == sorted(volumes, reverse=True)


def test_simulate_reports_metrics_and_warnings():
    r = ll.simulate(0.2, f_number=2.8)
    assert r.efl == pytest.approx(12.155484217424394, rel=1e-12)
    assert r.metrics.marginal_focus_z < r.metrics.best_focus_z < r.metrics.paraxial_focus_z
    assert r.metrics.colc_diameter_um > 0
    assert r.rays_dropped == 0
    assert any("exceeds the lens rim" in w for w in r.warnings)


def test_prescription_level_trace():
    p = ll.Prescription(curved_radius=1.3244, center_thickness=0.4557, index=1.33,
                        aperture_radius=0.6)
    efl = ll.paraxial_efl(p)
    assert efl == pytest.approx(1.3244 / 0.33, rel=1e-6)
    m = ll.best_focus(p, ray_count=201)
    assert m.marginal_focus_z < m.paraxial_focus_z


def test_calibration_pipeline():
    series = ll.sample_measurements()
    assert len(series) == 6
    lin = ll.linear_fit(series)
    assert lin.r_squared == pytest.approx(0.9944874889541282, rel=1e-12)
    cal = ll.fit_volume_model(series)
    assert cal.rms_residual < 5.0
    theta = ll.predict_theta(cal, 2.0, series.points[0].pumped_volume)
    assert 0.0 < theta < 90.0


def test_compare_endpoint_analysis():
    table = ll.compare(ll.sample_measurements(), reference=ll.sample_reported_focal_range())
    assert len(table.rows) == 6
    assert table.rows[0].theta_theory_deg == pytest.approx(14.43580560046274, rel=1e-9)
    assert table.endpoint is not None
    assert table.endpoint.short_end_relative_error < 0.02
    assert table.endpoint.long_end_relative_error > 0.02
    assert 1.41 < table.endpoint.implied_index < 1.42
    assert any("NOT reproducible" in n for n in table.notes)


def test_load_measurements_from_file(tmp_path):
    path = tmp_path / "series.csv"
    path.write_text("volume,contact_angle_deg\n100,10.5\n300,21.0\n500,29.5\n")
    series = ll.load_measurements(str(path))
    assert len(series) == 3
    assert series.points[2].contact_angle_deg == 29.5
    bad = tmp_path / "bad.csv"
    bad.write_text("volume,contact_angle_deg\n100,10.5\n50,12.0\n")
    # data-quality problems surface as the parse-error family, not ValueError
    with pytest.raises(RuntimeError, match="does not increase"):
        ll.load_measurements(str(bad))


def test_unit_conventions():
    cap = ll.resolve_cap(2.0, contact_angle_deg=90.0)
    assert cap.sag == pytest.approx(1.0, rel=1e-12)
    assert cap.volume == pytest.approx(2.0 * math.pi / 3.0, rel=1e-12)
