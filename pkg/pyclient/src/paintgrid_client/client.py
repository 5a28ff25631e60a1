"""Socket client for the newline-delimited JSON episode bridge.

One connection, one request in flight at a time, replies consumed in order.
Not thread-safe by contract; wrap access in your own lock if you must share.
"""

import json
import socket
from dataclasses import dataclass
from typing import Optional

RESET = -1
SWAP_RESET = -2
OBS_LEN = 206
# replies are a few KB; anything near this size means a framing bug
MAX_REPLY_BYTES = 1 << 20


class ProtocolError(RuntimeError):
    """Error reply from the server, or a reply we cannot interpret."""


@dataclass
class StepReply:
    pink_obs: list
    green_obs: list
    pink_reward: float
    green_reward: float
    done: bool


def encode_request(pink_action: int, green_action: int) -> bytes:
    """Canonical wire encoding of one action message.

    Byte-stable on purpose: serialized sessions can be diffed against the
    reference transcripts the server ships.
    """
    return (
        json.dumps({"pink_action": int(pink_action), "green_action": int(green_action)})
        + "\n"
    ).encode("utf-8")


class BridgeClient:
    """Drive episodes over TCP: connect, reset, then step until done."""

    def __init__(self, host: str = "127.0.0.1", port: int = 9000):
        self.host = host
        self.port = port
        self._sock: Optional[socket.socket] = None
        self._buf = b""

    def connect(self, timeout: float = 10.0) -> "BridgeClient":
        sock = socket.create_connection((self.host, self.port), timeout=timeout)
        # request-reply traffic; Nagle only adds latency
        sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
        self._sock = sock
        self._buf = b""
        return self

    def close(self) -> None:
        if self._sock is not None:
            self._sock.close()
            self._sock = None

    def __enter__(self) -> "BridgeClient":
        if self._sock is None:
            self.connect()
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # ---- protocol verbs ----------------------------------------------------

    def reset(self) -> StepReply:
        """Start a fresh episode; returns the initial observations."""
        return self._roundtrip(RESET, 0)

    def swap_reset(self) -> StepReply:
        """Start an episode with the two starting positions exchanged."""
        return self._roundtrip(SWAP_RESET, 0)

    def step(self, pink_action: int, green_action: int) -> StepReply:
        return self._roundtrip(pink_action, green_action)

    # ---- wire plumbing -------------------------------------------------------

    def _roundtrip(self, pink: int, green: int) -> StepReply:
        if self._sock is None:
            raise ProtocolError("not connected; call connect() first")
        self._sock.sendall(encode_request(pink, green))
        return self._parse_reply(self._read_line())

    def _read_line(self) -> bytes:
        assert self._sock is not None
        while b"\n" not in self._buf:
            chunk = self._sock.recv(65536)
            if not chunk:
                raise ProtocolError("connection closed mid-reply")
            self._buf += chunk
            if len(self._buf) > MAX_REPLY_BYTES:
                raise ProtocolError("reply line too long")
        line, self._buf = self._buf.split(b"\n", 1)
        return line

    @staticmethod
    def _parse_reply(line: bytes) -> StepReply:
        try:
            msg = json.loads(line)
        except json.JSONDecodeError as e:
            raise ProtocolError(f"unparseable reply: {e}") from None
        if not isinstance(msg, dict):
            raise ProtocolError("reply is not a json object")
        if "error" in msg:
            raise ProtocolError(msg["error"])
        try:
            reply = StepReply(
                pink_obs=msg["pink_obs"],
                green_obs=msg["green_obs"],
                pink_reward=float(msg["pink_reward"]),
                green_reward=float(msg["green_reward"]),
                done=bool(msg["done"]),
            )
        except KeyError as e:
            raise ProtocolError(f"reply missing field {e.args[0]}") from None
        for name, obs in (("pink_obs", reply.pink_obs), ("green_obs", reply.green_obs)):
            if not isinstance(obs, list):
                raise ProtocolError(f"{name} is not a list")
            if len(obs) != OBS_LEN:
                raise ProtocolError(f"{name} has length {len(obs)}, expected {OBS_LEN}")
        return reply
