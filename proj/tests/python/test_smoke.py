import json
import pathlib

import numpy as np
import pytest

import handdepth as hd

SCHEMA = pathlib.Path(__file__).resolve().parents[2] / "docs" / "report.schema.json"


def five_finger_hand(x=100.0, y=100.0):
    h = hd.HandSpec()
    h.palm_center = (x, y)
    h.palm_radius = 18
    h.finger_count = 5
    h.finger_lengths = [24.0] * 5
    h.finger_widths = [7.0] * 5
    h.base_depth_cm = 80
    return h


def test_calibration():
    assert hd.raw_to_cm(0) == pytest.approx(26.30, abs=0.05)
    assert hd.raw_to_cm(800) == pytest.approx(107.4, abs=0.05)
    assert hd.cm_to_raw(hd.raw_to_cm(500)) == 500
    assert hd.valid_domain() == 1116
    with pytest.raises(hd.DomainError):
        hd.raw_to_cm(hd.SENTINEL)


def test_frame_round_trips():
    rng = np.random.default_rng(3)
    frame = rng.integers(0, 2048, size=(7, 11), dtype=np.uint16)
    decoded, clamped = hd.read_pgm(hd.write_pgm(frame))
    assert clamped == 0
    np.testing.assert_array_equal(decoded, frame)
    np.testing.assert_array_equal(hd.read_raw(hd.write_raw(frame), 11, 7), frame)
    with pytest.raises(hd.FormatError):
        hd.read_pgm(b"P2\n1 1\n255\n0\n")


def test_distance_transform_and_morphology():
    mask = np.zeros((9, 9), dtype=bool)
    mask[2:7, 2:7] = True
    d = hd.distance_transform(mask)
    assert d.dtype == np.int64
    assert d[4, 4] == 9 and d[2, 2] == 1 and d[0, 0] == 0
    eroded = hd.erode(mask, 1)
    assert eroded.sum() == 9
    opened = hd.opening(mask, 1)
    assert not (opened & ~mask).any()
    labels = hd.connected_components(mask)
    assert labels.max() == 1


def test_detect_single_hand_matches_schema():
    jsonschema = pytest.importorskip("jsonschema")
    frame, truths = hd.render_scene([five_finger_hand()], 200, 200, 200.0)
    assert frame.shape == (200, 200)
    assert len(truths[0]["fingertips"]) == 5
    (out,) = hd.detect([frame], {"write_overlays": True})
    report = out["report"]
    jsonschema.validate(report, json.loads(SCHEMA.read_text()))
    (hand,) = report["hands"]
    assert hand["id"] == "Single"
    assert hand["overlay_color"] == [255, 255, 255]
    assert len(hand["fingertips"]) == 5
    px, py = truths[0]["palm_center"]
    assert abs(hand["palm_center"]["x"] - px) <= 4 and abs(hand["palm_center"]["y"] - py) <= 4
    assert out["overlay"].startswith(b"P6\n200 200\n255\n")


def test_two_hands_are_right_and_left():
    frame, _ = hd.render_scene([five_finger_hand(70, 100), five_finger_hand(230, 100)],
                               300, 200, 200.0, seed=4, dropout_rate=0.02)
    (out,) = hd.detect([frame])
    ids = [(h["id"], h["overlay_color"]) for h in out["report"]["hands"]]
    assert ids == [("Right", [255, 255, 255]), ("Left", [255, 105, 180])]


def test_config_errors():
    with pytest.raises(hd.ConfigError):
        hd.detect([np.full((4, 4), hd.SENTINEL, dtype=np.uint16)], {"unknown": 1})
    empty = hd.detect([np.full((4, 4), hd.SENTINEL, dtype=np.uint16)])
    assert empty[0]["report_text"] == '{"frame_index":0,"hands":[]}'


def test_benchmark_small_corpus():
    corpus = hd.generate_corpus(count=8, seed=2)
    frames = hd.render_corpus(corpus)
    assert len(frames) == 8
    metrics = hd.benchmark(corpus)
    assert metrics["scenes"] == 8
    assert metrics["fingertips"]["count_recall"] >= 0.9
