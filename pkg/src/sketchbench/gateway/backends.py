"""Pluggable chat-completion backends with rate limiting, retries, and a disk cache.

Endpoints starting with ``mock:`` resolve through an in-process registry so the
whole pipeline runs hermetically; anything else is treated as an OpenAI-style
chat endpoint reached over HTTP with the key taken from the environment.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
import time
from collections import deque
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Protocol

from sketchbench.gateway.prompts import PromptBundle

log = logging.getLogger(__name__)


class GatewayError(Exception):
    """Base class for backend failures."""


class AuthError(GatewayError):
    """Credentials missing or rejected; never retried."""


class GatewayTimeout(GatewayError):
    """A single request exceeded the backend timeout."""


class RetriesExhausted(GatewayError):
    """Transient failures persisted past max_retries."""


class TransientTransportError(GatewayError):
    """Raised by transports for retryable conditions (429, 5xx, network hiccups)."""


@dataclass(frozen=True)
class BackendSpec:
    """One model endpoint. `name` doubles as the chat model id sent on the wire."""

    name: str
    endpoint: str
    api_key_env: str = ""
    rate_limit: int = 60          # requests per minute
    max_retries: int = 2
    timeout: float = 30.0         # seconds per request
    temperature: float = 0.2      # bump to 1.0 for diversity sampling
    max_tokens: int = 1024

    def __post_init__(self) -> None:
        if self.rate_limit <= 0:
            raise ValueError("rate_limit must be > 0")
        if self.timeout <= 0:
            raise ValueError("timeout must be > 0")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "endpoint": self.endpoint,
            "api_key_env": self.api_key_env,
            "rate_limit": self.rate_limit,
            "max_retries": self.max_retries,
            "timeout": self.timeout,
            "temperature": self.temperature,
            "max_tokens": self.max_tokens,
        }

    @classmethod
    def from_json(cls, data: dict) -> "BackendSpec":
        return cls(**data)


@dataclass(frozen=True)
class ResponseRecord:
    backend: str
    prompt: PromptBundle
    raw_text: str
    latency: float
    attempt: int
    timestamp: float
    transcript: tuple[tuple[str, str], ...] = ()   # (role, text) pairs incl. two-stage exchange

    def to_json(self) -> dict:
        return {
            "backend": self.backend,
            "prompt": self.prompt.to_json(),
            "raw_text": self.raw_text,
            "latency": self.latency,
            "attempt": self.attempt,
            "timestamp": self.timestamp,
            "transcript": [list(t) for t in self.transcript],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ResponseRecord":
        return cls(
            backend=data["backend"],
            prompt=PromptBundle.from_json(data["prompt"]),
            raw_text=data["raw_text"],
            latency=data["latency"],
            attempt=data["attempt"],
            timestamp=data["timestamp"],
            transcript=tuple((r, t) for r, t in data.get("transcript", [])),
        )


class RateLimiter:
    """Sliding-window limiter: at most `limit` acquisitions in any 60-second window."""

    def __init__(
        self,
        limit: int,
        *,
        window: float = 60.0,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        self.limit = limit
        self.window = window
        self._clock = clock
        self._sleep = sleep
        self._stamps: deque[float] = deque()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        while True:
            with self._lock:
                now = self._clock()
                while self._stamps and now - self._stamps[0] >= self.window:
                    self._stamps.popleft()
                if len(self._stamps) < self.limit:
                    self._stamps.append(now)
                    return
                wait = self.window - (now - self._stamps[0])
            self._sleep(max(wait, 1e-4))


class Transport(Protocol):
    def __call__(self, spec: BackendSpec, messages: list[dict]) -> str: ...


_MOCK_TRANSPORTS: dict[str, Transport] = {}


def register_mock_transport(name: str, transport: Transport) -> None:
    """Make `mock:<name>` endpoints resolvable; used by tests and demo configs."""
    _MOCK_TRANSPORTS[name] = transport


def _http_transport(spec: BackendSpec, messages: list[dict]) -> str:
    import requests

    headers = {"Content-Type": "application/json"}
    if spec.api_key_env:
        key = os.environ.get(spec.api_key_env)
        if not key:
            raise AuthError(f"environment variable {spec.api_key_env} is not set")
        headers["Authorization"] = f"Bearer {key}"
    payload = {
        "model": spec.name,
        "messages": messages,
        "temperature": spec.temperature,
        "max_tokens": spec.max_tokens,
    }
    try:
        resp = requests.post(spec.endpoint, json=payload, headers=headers, timeout=spec.timeout)
    except requests.Timeout as exc:
        raise GatewayTimeout(f"request to {spec.endpoint} timed out after {spec.timeout}s") from exc
    except requests.RequestException as exc:
        raise TransientTransportError(str(exc)) from exc
    if resp.status_code in (401, 403):
        raise AuthError(f"backend rejected credentials (HTTP {resp.status_code})")
    if resp.status_code == 429 or resp.status_code >= 500:
        raise TransientTransportError(f"HTTP {resp.status_code}")
    resp.raise_for_status()
    return resp.json()["choices"][0]["message"]["content"]


def _resolve_transport(spec: BackendSpec) -> Transport:
    if spec.endpoint.startswith("mock:"):
        name = spec.endpoint[len("mock:"):]
        if name not in _MOCK_TRANSPORTS:
            raise GatewayError(f"no mock transport registered under {name!r}")
        return _MOCK_TRANSPORTS[name]
    return _http_transport


def _messages(prompt: PromptBundle, history: list[dict] | None = None) -> list[dict]:
    msgs: list[dict] = []
    if prompt.system_text:
        msgs.append({"role": "system", "content": prompt.system_text})
    msgs.extend(history or [])
    msgs.append({"role": "user", "content": prompt.user_text})
    return msgs


class ResponseCache:
    """Content-addressed response store; keys cover backend, prompt, decoding, and sample index."""

    def __init__(self, root: Path | str) -> None:
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(spec: BackendSpec, prompt: PromptBundle, sample_index: int = 0) -> str:
        material = json.dumps(
            {
                "backend": spec.name,
                "endpoint": spec.endpoint,
                "prompt": prompt.to_json(),
                "temperature": spec.temperature,
                "max_tokens": spec.max_tokens,
                "sample_index": sample_index,
            },
            sort_keys=True,
        )
        return hashlib.sha256(material.encode("utf-8")).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> ResponseRecord | None:
        path = self._path(key)
        if not path.exists():
            return None
        return ResponseRecord.from_json(json.loads(path.read_text(encoding="utf-8")))

    def put(self, key: str, record: ResponseRecord) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(record.to_json(), ensure_ascii=False), encoding="utf-8")
        tmp.replace(path)


_LIMITERS: dict[str, RateLimiter] = {}
_LIMITERS_LOCK = threading.Lock()


def _limiter_for(
    spec: BackendSpec,
    clock: Callable[[], float],
    sleep: Callable[[float], None],
) -> RateLimiter:
    with _LIMITERS_LOCK:
        limiter = _LIMITERS.get(spec.name)
        if limiter is None or limiter.limit != spec.rate_limit:
            limiter = RateLimiter(spec.rate_limit, clock=clock, sleep=sleep)
            _LIMITERS[spec.name] = limiter
        return limiter


def _call_with_retries(
    spec: BackendSpec,
    transport: Transport,
    messages: list[dict],
    limiter: RateLimiter,
    sleep: Callable[[float], None],
    backoff_base: float,
) -> tuple[str, int]:
    last_error: Exception | None = None
    for attempt in range(1, spec.max_retries + 2):
        limiter.acquire()
        try:
            return transport(spec, messages), attempt
        except TransientTransportError as exc:
            last_error = exc
            if attempt <= spec.max_retries:
                sleep(backoff_base * (2 ** (attempt - 1)))
    raise RetriesExhausted(
        f"{spec.name}: gave up after {spec.max_retries + 1} attempts ({last_error})"
    ) from last_error


def complete(
    spec: BackendSpec,
    prompt: PromptBundle,
    *,
    cache: ResponseCache | None = None,
    sample_index: int = 0,
    transport: Transport | None = None,
    clock: Callable[[], float] = time.monotonic,
    sleep: Callable[[float], None] = time.sleep,
    backoff_base: float = 0.5,
) -> ResponseRecord:
    """Send a prompt, honoring the rate limit and retrying transient failures.

    Two-stage prompts issue the describe turn first and feed its reply back as
    history for the code turn; the full exchange lands in the transcript.
    """
    if cache is not None:
        key = ResponseCache.key(spec, prompt, sample_index)
        hit = cache.get(key)
        if hit is not None:
            log.debug("cache hit %s for backend %s", key, spec.name)
            return hit

    resolved = transport or _resolve_transport(spec)
    limiter = _limiter_for(spec, clock, sleep)
    started = clock()
    transcript: list[tuple[str, str]] = []
    history: list[dict] = []
    max_attempt = 1

    if prompt.strategy == "two_stage":
        stage_one = PromptBundle(
            user_text=prompt.describe_text or "",
            system_text=prompt.system_text,
        )
        text, attempt = _call_with_retries(
            spec, resolved, _messages(stage_one), limiter, sleep, backoff_base
        )
        max_attempt = max(max_attempt, attempt)
        history = [
            {"role": "user", "content": stage_one.user_text},
            {"role": "assistant", "content": text},
        ]
        transcript.extend([("user", stage_one.user_text), ("assistant", text)])

    text, attempt = _call_with_retries(
        spec, resolved, _messages(prompt, history), limiter, sleep, backoff_base
    )
    max_attempt = max(max_attempt, attempt)
    transcript.extend([("user", prompt.user_text), ("assistant", text)])

    record = ResponseRecord(
        backend=spec.name,
        prompt=prompt,
        raw_text=text,
        latency=clock() - started,
        attempt=max_attempt,
        timestamp=time.time(),
        transcript=tuple(transcript),
    )
    if cache is not None:
        cache.put(key, record)
        log.debug("cached %s for backend %s", key, spec.name)
    return record


def for_diversity(spec: BackendSpec) -> BackendSpec:
    """Decoding variant used when sampling multiple drawings of one concept."""
    return replace(spec, temperature=1.0)
