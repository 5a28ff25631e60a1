"""Conformance tests against a live bridge server (spawned via its CLI)."""

import json
import re
import subprocess
import sys
import time
from importlib import resources

import numpy as np
import pytest

from paintgrid_client import (
    OBS_LEN,
    BridgeClient,
    ProtocolError,
    encode_request,
    normalize_observation,
)

EPISODE_LENGTH = 40


@pytest.fixture(scope="module")
def live_server(tmp_path_factory):
    log_path = tmp_path_factory.mktemp("server") / "session_log.jsonl"
    proc = subprocess.Popen(
        [
            sys.executable, "-m", "paintgrid.cli", "serve",
            "--port", "0", "--episode-length", str(EPISODE_LENGTH),
            "--log", str(log_path),
        ],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
        text=True,
    )
    banner = proc.stdout.readline()
    m = re.search(r"listening on 127\.0\.0\.1:(\d+)", banner)
    assert m, f"unexpected server banner: {banner!r}"
    yield int(m.group(1)), log_path
    proc.terminate()
    proc.wait(timeout=10)


def test_ten_seeded_episodes_match_server_log(live_server):
    port, log_path = live_server
    rng = np.random.default_rng(501)
    sums = []
    with BridgeClient(port=port).connect() as client:
        for ep in range(10):
            reply = client.swap_reset() if ep % 2 else client.reset()
            assert reply.done is False
            total_p, total_g = 0.0, 0.0
            done = False
            steps = 0
            while not done:
                reply = client.step(int(rng.integers(5)), int(rng.integers(5)))
                total_p += reply.pink_reward
                total_g += reply.green_reward
                steps += 1
                done = reply.done
            assert steps == EPISODE_LENGTH
            sums.append((total_p, total_g))
    # the server flushes each episode's log entry before sending done=true,
    # so after the final reply the log is complete
    with open(log_path) as f:
        entries = [json.loads(line) for line in f]
    assert len(entries) == 10
    for ep, (entry, (total_p, total_g)) in enumerate(zip(entries, sums), start=1):
        assert entry["episode"] == ep
        assert entry["swap"] == (ep % 2 == 0)
        assert entry["steps"] == EPISODE_LENGTH
        # float-exact: both sides sum the identical wire-rounded rewards in order
        assert entry["ret_pink"] == total_p
        assert entry["ret_green"] == total_g


def test_request_encoding_matches_golden_transcript():
    data = resources.files("paintgrid") / "data"
    golden = (data / "golden_requests.txt").read_text().splitlines()
    assert len(golden) > 200
    for line in golden:
        msg = json.loads(line)
        encoded = encode_request(msg["pink_action"], msg["green_action"])
        assert encoded == (line + "\n").encode("utf-8")


def test_reset_shapes_and_start_positions(live_server):
    port, _ = live_server
    with BridgeClient(port=port).connect() as client:
        reply = client.reset()
        assert len(reply.pink_obs) == OBS_LEN and len(reply.green_obs) == OBS_LEN
        # raw (unnormalised) coordinates come through as-is
        assert reply.pink_obs[0:4] == [3, 3, 6, 6]
        assert reply.green_obs[0:4] == [6, 6, 3, 3]
        swapped = client.swap_reset()
        assert swapped.pink_obs[0:4] == [6, 6, 3, 3]


def test_error_reply_raises(live_server):
    port, _ = live_server
    with BridgeClient(port=port).connect() as client:
        with pytest.raises(ProtocolError, match="no active episode"):
            client.step(0, 0)
        client.reset()
        with pytest.raises(ProtocolError, match="out of range"):
            client.step(7, 0)
        # the connection survives error replies
        reply = client.step(0, 0)
        assert reply.done is False


def test_step_before_connect_raises():
    with pytest.raises(ProtocolError, match="not connected"):
        BridgeClient(port=1).step(0, 0)


def test_normalize_observation_scaling(live_server):
    port, _ = live_server
    with BridgeClient(port=port).connect() as client:
        raw = np.asarray(client.reset().pink_obs)
    scaled = normalize_observation(raw, episode_length=EPISODE_LENGTH)
    assert scaled.shape == raw.shape
    assert scaled[0] == pytest.approx(3 / 9)
    assert scaled[2] == pytest.approx(6 / 9)
    assert np.all(scaled[4:104] <= 1.0)
    assert scaled[204] == pytest.approx(1.0)  # full episode remaining
    assert raw[0] == 3  # input untouched
    with pytest.raises(ValueError, match="expected 206 features"):
        normalize_observation(np.zeros(10))
