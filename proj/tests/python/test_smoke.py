"""Smoke tests for the Python bindings: one round through each main operation."""

import math

import pytest

import rfimon


def test_frame_round_trip():
    f = rfimon.RawFrame()
    f.msg_class = 0x0A
    f.msg_id = 0x31
    f.payload = bytes(range(32))
    wire = rfimon.encode_frame(f)
    assert wire[:2] == b"\xb5\x62"
    g = rfimon.parse_frame(wire)
    assert g.msg_class == 0x0A
    assert g.msg_id == 0x31
    assert g.payload == bytes(range(32))

    corrupted = wire[:-1] + bytes([wire[-1] ^ 0x01])
    with pytest.raises(Exception):
        rfimon.parse_frame(corrupted)


def test_weight_table_and_aggregation():
    table = rfimon.l1ca_weight_table()
    assert len(table.fractions) == 10
    assert math.isclose(sum(table.fractions), 1.001, rel_tol=1e-12)

    rec = rfimon.SpectrumRecord()
    rec.f0_hz = 1573.0e6
    rec.df_hz = 0.5e6
    rec.bins_db = [-57.0] * 10
    agg = rfimon.aggregate_power(rec, table)
    assert math.isclose(agg, -57.0 + 10.0 * math.log10(1.001), abs_tol=1e-9)

    computed = rfimon.compute_l1ca_weights([1573.0e6 + 0.5e6 * i for i in range(10)])
    assert math.isclose(sum(computed.fractions), 1.0, abs_tol=1e-5)
    assert all(f >= 0.0 for f in computed.fractions)


def test_calibration_chain():
    cfg = rfimon.CalibrationConfig()
    rec = rfimon.SpectrumRecord()
    rec.f0_hz = 1573.0e6
    rec.bins_db = [-120.0] * 10
    rec.pga = 10.0
    adjusted = rfimon.adjust_agc(rec, cfg)
    assert math.isclose(adjusted.bins_db[0], -120.0 - 37.0)
    with pytest.raises(Exception):
        rfimon.adjust_agc(adjusted, cfg)

    assert math.isclose(rfimon.to_dbw_hz(-75.3, cfg), -75.3 - 100.0 - 24.9)


def test_fit_classify_round():
    import random

    rng = random.Random(3)
    points = [
        rfimon.MetricPoint(
            t=float(k),
            sat="S131",
            rx_power=rng.gauss(-200.0, 1.0),
            cn0=rng.gauss(45.0, 1.5),
            elevation_deg=46.0,
        )
        for k in range(500)
    ]
    model = rfimon.fit_nominal(points)
    mx, my = model.mean
    assert abs(mx + 200.0) < 0.5
    assert abs(my - 45.0) < 0.5

    ellipse = rfimon.ThresholdEllipse(center=model.mean, semi_axes=(6.0, 6.0))
    regions = rfimon.build_regions(model, ellipse)
    assert regions.noise_floor < -200.0

    nominal = rfimon.classify(rfimon.MetricPoint(rx_power=mx, cn0=my), regions)
    assert nominal.label == rfimon.Label.Nominal
    jammed = rfimon.classify(rfimon.MetricPoint(rx_power=-170.0, cn0=20.0), regions)
    assert jammed.label == rfimon.Label.Jamming
    lost = rfimon.classify(rfimon.MetricPoint(rx_power=mx, cn0=None), regions)
    assert lost.label == rfimon.Label.SignalLoss
    assert lost.loss_attribution == rfimon.Label.Blocked


def test_estimate_and_optimize():
    points = []
    import random

    rng = random.Random(4)
    points = [
        rfimon.MetricPoint(rx_power=rng.gauss(0.0, 1.0), cn0=rng.gauss(0.0, 1.0))
        for _ in range(2000)
    ]
    model = rfimon.fit_nominal(points)

    cfg = rfimon.FalsificationConfig()
    cfg.rollouts = 50000
    cfg.target_fpr = 1e-2
    cfg.seed = 5
    cfg.quantize = False

    r = math.sqrt(-2.0 * math.log(1e-2))
    est = rfimon.estimate_fpr(model, rfimon.ThresholdEllipse(model.mean, (r, r)), cfg)
    # the fitted covariance differs from identity by sampling noise, so only a
    # coarse agreement with the analytic tail is expected
    assert est.p_hat == pytest.approx(1e-2, rel=0.25)

    rep = rfimon.optimize_threshold(model, cfg)
    assert rep.area == pytest.approx(math.pi * r * r, rel=0.3)


def test_simulate_and_score():
    s = rfimon.ScenarioScript()
    s.duration_s = 100.0
    ev = rfimon.Event()
    ev.kind = rfimon.EventKind.StepJam
    ev.t_start = 20.0
    ev.t_end = 60.0
    ev.power_db = 10.0
    s.events = [ev]

    stream = rfimon.render(s, 1)
    assert len(stream.points) == 100
    assert len(stream.truth) == 100
    assert stream.truth[30] == rfimon.Label.Jamming
    assert stream.truth[10] == rfimon.Label.Nominal
    excess = 10.0 * math.log10(11.0)
    assert stream.points[30].rx_power == pytest.approx(-200.0 + excess)

    pred = [
        rfimon.Label.Jamming if p.rx_power > -195.0 else rfimon.Label.Nominal
        for p in stream.points
    ]
    report = rfimon.score_detection(pred, stream.truth, {rfimon.Label.Jamming})
    assert report.accuracy == pytest.approx(1.0)
    assert report.counts.tp == 40


def test_ramp_crossing():
    import random

    rng = random.Random(6)
    points = [
        rfimon.MetricPoint(rx_power=rng.gauss(-200.0, 1.0), cn0=rng.gauss(45.0, 1.0))
        for _ in range(500)
    ]
    model = rfimon.fit_nominal(points)
    regions = rfimon.build_regions(
        model, rfimon.ThresholdEllipse((-200.0, 45.0), (3.0, 3.0))
    )

    s = rfimon.ScenarioScript()
    s.duration_s = 400.0
    ev = rfimon.Event()
    ev.kind = rfimon.EventKind.RampJam
    ev.t_start = 10.0
    ev.t_end = 350.0
    ev.ramp_rate = 0.1
    s.events = [ev]
    t = rfimon.ramp_crossing_time(s, regions)
    assert t == pytest.approx(10.0 + (3.0 / math.sqrt(2.0)) / 0.1, abs=1e-6)
