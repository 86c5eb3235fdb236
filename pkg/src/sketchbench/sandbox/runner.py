"""Execute wrapped graphics code in isolated process groups and classify outcomes.

Each job runs in its own session with a scrubbed environment (no inherited
credentials, HOME/TMPDIR pointed into a private temp dir), is killed as a
whole process group on timeout, and has its output normalized and blank-checked.
Isolation is process-group + filesystem-jail level; operators needing stronger
guarantees can set ``container_command`` in the toolchain config.
"""

from __future__ import annotations

import hashlib
import os
import shutil
import signal
import subprocess
import tempfile
import threading
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Sequence

from PIL import Image, UnidentifiedImageError

from sketchbench.gateway.extract import CodeSample
from sketchbench.sandbox.normalize import is_blank, normalize_image
from sketchbench.sandbox.types import (
    RenderLimits,
    RenderResult,
    SandboxEnvironmentError,
    STATUS_COMPILE_ERROR,
    STATUS_EMPTY_IMAGE,
    STATUS_OK,
    STATUS_RUNTIME_ERROR,
    STATUS_TIMEOUT,
    ToolchainConfig,
)
from sketchbench.sandbox.wrap import ExecutableUnit, wrap_source

_EXCERPT_CHARS = 800
_PY_COMPILE_MARKERS = ("SyntaxError", "IndentationError", "TabError")


def code_hash(code: CodeSample, seed: int = 0) -> str:
    material = f"{code.toolchain}\n{seed}\n{code.source}"
    return hashlib.sha256(material.encode("utf-8")).hexdigest()[:16]


class RenderPool:
    """Bounds the number of live child process groups; tracks the high-water mark."""

    def __init__(self, max_parallel: int = 4) -> None:
        if max_parallel < 1:
            raise ValueError("max_parallel must be >= 1")
        self._semaphore = threading.Semaphore(max_parallel)
        self._lock = threading.Lock()
        self._active = 0
        self.max_active = 0

    @contextmanager
    def slot(self):
        self._semaphore.acquire()
        with self._lock:
            self._active += 1
            self.max_active = max(self.max_active, self._active)
        try:
            yield
        finally:
            with self._lock:
                self._active -= 1
            self._semaphore.release()


def _scrubbed_env(jobdir: Path) -> dict[str, str]:
    return {
        "PATH": os.environ.get("PATH", "/usr/bin:/bin"),
        "HOME": str(jobdir),
        "TMPDIR": str(jobdir),
        "TEMP": str(jobdir),
        "TMP": str(jobdir),
        "MPLCONFIGDIR": str(jobdir / ".mplconfig"),
        "PYTHONDONTWRITEBYTECODE": "1",
        "PYTHONIOENCODING": "utf-8",
        "LANG": "C.UTF-8",
    }


def _kill_group(proc: subprocess.Popen, grace: float) -> None:
    try:
        os.killpg(proc.pid, signal.SIGTERM)
    except ProcessLookupError:
        return
    try:
        proc.wait(timeout=max(grace, 0.1))
    except subprocess.TimeoutExpired:
        try:
            os.killpg(proc.pid, signal.SIGKILL)
        except ProcessLookupError:
            pass
        proc.wait()


def _run_steps(
    unit: ExecutableUnit, limits: RenderLimits, env: dict[str, str]
) -> tuple[str, str, float]:
    """Run unit steps sequentially under one wall budget. Returns (status, stderr, elapsed)."""
    started = time.monotonic()
    stderr_tail = ""
    for argv in unit.steps:
        binary = argv[0]
        if shutil.which(binary) is None and not Path(binary).exists():
            raise SandboxEnvironmentError(f"toolchain binary not found: {binary}")
        remaining = limits.wall_timeout - (time.monotonic() - started)
        if remaining <= 0:
            return STATUS_TIMEOUT, stderr_tail, time.monotonic() - started
        proc = subprocess.Popen(
            argv,
            cwd=unit.workdir,
            env=env,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            start_new_session=True,
        )
        try:
            _, stderr = proc.communicate(timeout=remaining)
        except subprocess.TimeoutExpired:
            _kill_group(proc, limits.kill_grace)
            return STATUS_TIMEOUT, stderr_tail, time.monotonic() - started
        stderr_tail = stderr.decode("utf-8", errors="replace")[-_EXCERPT_CHARS:]
        if proc.returncode == 21:
            return STATUS_COMPILE_ERROR, stderr_tail, time.monotonic() - started
        if proc.returncode == 22:
            return STATUS_RUNTIME_ERROR, stderr_tail, time.monotonic() - started
        if proc.returncode != 0:
            if any(marker in stderr_tail for marker in _PY_COMPILE_MARKERS):
                return STATUS_COMPILE_ERROR, stderr_tail, time.monotonic() - started
            return STATUS_RUNTIME_ERROR, stderr_tail, time.monotonic() - started
    return STATUS_OK, stderr_tail, time.monotonic() - started


def render(
    code: CodeSample,
    limits: RenderLimits | None = None,
    *,
    toolchains: ToolchainConfig | None = None,
    images_dir: Path | str | None = None,
    pool: RenderPool | None = None,
    seed: int = 0,
    keep_workdir: bool = False,
) -> RenderResult:
    """Render one code sample; never raises for code-level failures.

    Environment problems (missing toolchain binaries) raise
    :class:`SandboxEnvironmentError` so batch drivers can abort instead of
    silently recording everything as broken code.
    """
    limits = limits or RenderLimits()
    chash = code_hash(code, seed)
    jobdir = Path(tempfile.mkdtemp(prefix="sketchbench-job-"))

    def finish(status: str, image_path: Path | None, stderr: str, elapsed: float) -> RenderResult:
        if not keep_workdir:
            shutil.rmtree(jobdir, ignore_errors=True)
        return RenderResult(
            status=status,
            image_path=image_path,
            stderr_excerpt=stderr,
            wall_time=elapsed,
            toolchain=code.toolchain,
            code_hash=chash,
        )

    try:
        unit = wrap_source(code, jobdir, toolchains, seed=seed)
        env = _scrubbed_env(jobdir)
        Path(env["MPLCONFIGDIR"]).mkdir(exist_ok=True)

        if pool is not None:
            with pool.slot():
                status, stderr, elapsed = _run_steps(unit, limits, env)
        else:
            status, stderr, elapsed = _run_steps(unit, limits, env)

        if status != STATUS_OK:
            return finish(status, None, stderr, elapsed)

        if not unit.output_path.exists():
            return finish(STATUS_RUNTIME_ERROR, None, stderr + "\n[no output image produced]", elapsed)
        try:
            with Image.open(unit.output_path) as img:
                if img.width * img.height > limits.max_output_pixels:
                    return finish(
                        STATUS_RUNTIME_ERROR, None,
                        f"output image {img.width}x{img.height} exceeds pixel limit", elapsed,
                    )
                img.load()
                normalized = normalize_image(img, limits.canvas_size)
        except (UnidentifiedImageError, OSError) as exc:
            return finish(STATUS_RUNTIME_ERROR, None, f"undecodable output image: {exc}", elapsed)

        if images_dir is not None:
            target_dir = Path(images_dir)
            target_dir.mkdir(parents=True, exist_ok=True)
            target = target_dir / f"{chash}.png"
        else:
            fd, name = tempfile.mkstemp(prefix="sketchbench-render-", suffix=".png")
            os.close(fd)
            target = Path(name)
        normalized.save(target, format="PNG")

        if is_blank(normalized, limits.blank_std_threshold):
            return finish(STATUS_EMPTY_IMAGE, target, stderr, elapsed)
        return finish(STATUS_OK, target, stderr, elapsed)
    except SandboxEnvironmentError:
        if not keep_workdir:
            shutil.rmtree(jobdir, ignore_errors=True)
        raise


def compile_rate(results: Sequence[RenderResult | str]) -> float:
    """Fraction of results that executed to an image: status in {ok, empty_image}."""
    if not results:
        raise ValueError("compile_rate needs at least one result")
    statuses = [r if isinstance(r, str) else r.status for r in results]
    good = sum(1 for s in statuses if s in (STATUS_OK, STATUS_EMPTY_IMAGE))
    return good / len(statuses)
