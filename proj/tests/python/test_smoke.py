import json
import math
import os
import subprocess

import pytest

import brjuno


def golden_phi_reference():
    theta = (math.sqrt(5.0) - 1.0) / 2.0
    return math.log(1.0 / theta) / (1.0 - theta)


def test_phi_golden_encloses_closed_form():
    lo, hi = brjuno.phi("[;ones]", 48)
    ref = golden_phi_reference()
    assert lo - 1e-12 <= ref <= hi + 1e-12
    assert hi - lo < 2.0 ** -40


def test_phi_trunc_half_is_log_two():
    lo, hi = brjuno.phi_trunc("1/2", 48)
    assert lo <= math.log(2.0) <= hi


def test_convergents_golden_prefix():
    assert brjuno.convergents("[;ones]", 5) == [(1, 1), (1, 2), (2, 3), (3, 5), (5, 8)]
    rows = brjuno.convergents("[1,1,1,20]", 4)
    assert rows[-1] == (41, 62)


def test_upsilon_half_matches_log_two_pi_over_two():
    row = brjuno.upsilon_rational("1/2")
    lo, hi = row["upsilon"]
    assert lo <= math.log(2.0 * math.pi) / 2.0 <= hi
    a_lo, a_hi = row["abs_a"]
    assert a_lo <= 2.0 <= a_hi


def test_connectivity_examples():
    assert brjuno.classify_connectivity("0", "0")["verdict"] == "connected"
    rep = brjuno.classify_connectivity("1", "0")
    assert rep["verdict"] == "cantor"
    assert rep["escape_index"] == 3


def test_choose_m_floor():
    choice = brjuno.choose_m("[1,1,1;ones]", 3, "1/2")
    assert choice["m"] >= 2
    assert choice["m"] >= choice["m_tail"]


def test_render_deterministic_and_claimed(tmp_path):
    out = {}
    for tag in ("a", "b"):
        img = tmp_path / f"{tag}.pgm"
        balls = tmp_path / f"{tag}.jsonl"
        out[tag] = brjuno.render_to_files(
            "0", "0", "5/4", 64, 4, 2048, str(img), str(balls)
        )
    assert out["a"] == out["b"]
    assert out["a"]["unresolved"] == 0
    assert out["a"]["has_claim"]
    assert (tmp_path / "a.pgm").read_bytes() == (tmp_path / "b.pgm").read_bytes()
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()

    lines = (tmp_path / "a.jsonl").read_text().splitlines()
    meta = json.loads(next(l for l in lines if not l.startswith("#")))
    assert meta["type"] == "meta"
    assert meta["count"] == out["a"]["balls"]

    lo, hi = brjuno.hausdorff_files(str(tmp_path / "a.jsonl"), str(tmp_path / "b.jsonl"))
    assert lo == 0.0
    assert hi <= 1.0 / 4096.0


def cli(*args, expect=0):
    exe = os.environ["BRJUNO_BIN"]
    proc = subprocess.run([exe, *args], capture_output=True, text=True)
    assert proc.returncode == expect, proc.stderr
    return proc.stdout


def test_cli_phi_echoes_config():
    out = cli("phi", "--cf", "[1,1,1,20;ones]", "--prec", "30")
    first, value = out.splitlines()[:2]
    assert first.startswith("# brjuno phi")
    assert "[1,1,1,20;ones]" in first
    assert "1.869" in value


def test_cli_usage_error_is_exit_two():
    cli("phi", "--no-such-flag", expect=2)
    cli("frobnicate", expect=2)


def test_cli_render_and_hausdorff_roundtrip(tmp_path):
    balls = tmp_path / "circle.jsonl"
    cli(
        "render", "--c", "0+0i", "--res", "64", "--m", "4",
        "--balls", str(balls),
    )
    out = cli("hausdorff", "--a", str(balls), "--b", str(balls))
    assert out.splitlines()[0].startswith("# brjuno hausdorff")


def test_cli_byte_identical_reruns(tmp_path):
    images = []
    for tag in ("x", "y"):
        img = tmp_path / f"{tag}.pgm"
        cli("render", "--c", "-3/4+0i", "--res", "32", "--m", "3", "--out", str(img))
        images.append(img.read_bytes())
    assert images[0] == images[1]
