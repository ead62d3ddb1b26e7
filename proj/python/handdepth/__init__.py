"""Hand, palm and fingertip detection on raw depth frames.

Frames are ``uint16`` arrays of shape ``(height, width)`` holding 11-bit raw
samples (2047 marks a missing measurement). Masks are ``bool`` arrays.
"""

import json

from ._handdepth import (
    SENTINEL,
    ConfigError,
    DegenerateHand,
    DomainError,
    EmptyResult,
    Error,
    FormatError,
    GeometryError,
    HandSpec,
    NotFound,
    NoValidDepth,
    cm_to_raw,
    connected_components,
    default_config,
    dilate,
    distance_transform,
    erode,
    generate_corpus,
    opening,
    raw_to_cm,
    read_pgm,
    read_raw,
    render_corpus,
    render_scene,
    valid_domain,
    write_pgm,
    write_raw,
)
from ._handdepth import run_benchmark as _run_benchmark
from ._handdepth import run_pipeline as _run_pipeline


def _config_text(config):
    if config is None:
        return ""
    return config if isinstance(config, str) else json.dumps(config)


def detect(frames, config=None):
    """Run the pipeline over a frame sequence.

    Returns a list of ``(report, overlay_ppm_bytes, warnings)`` tuples in
    frame order. ``report`` is the parsed JSON document; the exact
    serialized text is under ``report_text``. ``config`` may be a dict or
    JSON text.
    """
    out = []
    for text, overlay, warnings in _run_pipeline(list(frames), _config_text(config)):
        out.append({"report": json.loads(text), "report_text": text,
                    "overlay": overlay, "warnings": list(warnings)})
    return out


def benchmark(corpus_json, config=None):
    """Score the pipeline on a corpus (JSON text); returns a metrics dict."""
    return json.loads(_run_benchmark(corpus_json, _config_text(config)))


__all__ = [name for name in dir() if not name.startswith("_")]
