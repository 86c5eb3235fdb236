"""Shared sandbox types: limits, results, and toolchain discovery."""

from __future__ import annotations

import os
import shlex
import sys
from dataclasses import dataclass, field
from pathlib import Path

STATUS_OK = "ok"
STATUS_COMPILE_ERROR = "compile_error"
STATUS_RUNTIME_ERROR = "runtime_error"
STATUS_TIMEOUT = "timeout"
STATUS_EMPTY_IMAGE = "empty_image"
RENDER_STATUSES = (
    STATUS_OK,
    STATUS_COMPILE_ERROR,
    STATUS_RUNTIME_ERROR,
    STATUS_TIMEOUT,
    STATUS_EMPTY_IMAGE,
)
# Result logs may additionally carry gateway extraction failures so that
# compile-rate denominators include responses that never yielded code.
STATUS_EXTRACTION_ERROR = "extraction_error"
LOG_STATUSES = RENDER_STATUSES + (STATUS_EXTRACTION_ERROR,)


class SandboxEnvironmentError(RuntimeError):
    """The host is missing a configured toolchain binary; distinct from code failure."""


@dataclass(frozen=True)
class RenderLimits:
    wall_timeout: float = 60.0
    max_output_pixels: int = 16_777_216   # 4096 x 4096 guard against decompression bombs
    canvas_size: int = 384
    kill_grace: float = 5.0
    # Pixel std-dev threshold (on a 0..1 scale) below which an image counts as blank.
    blank_std_threshold: float = 1.0 / 255

    def __post_init__(self) -> None:
        if self.wall_timeout <= 0:
            raise ValueError("wall_timeout must be > 0")
        if self.canvas_size <= 0:
            raise ValueError("canvas_size must be positive (square canvas)")


@dataclass(frozen=True)
class RenderResult:
    status: str
    image_path: Path | None
    stderr_excerpt: str
    wall_time: float
    toolchain: str
    code_hash: str

    def __post_init__(self) -> None:
        if self.status not in LOG_STATUSES:
            raise ValueError(f"unknown render status {self.status!r}")
        if self.status == STATUS_OK and self.image_path is None:
            raise ValueError("ok results must carry an image path")

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "image_path": str(self.image_path) if self.image_path else None,
            "stderr_excerpt": self.stderr_excerpt,
            "wall_time": self.wall_time,
            "toolchain": self.toolchain,
            "code_hash": self.code_hash,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RenderResult":
        return cls(
            status=data["status"],
            image_path=Path(data["image_path"]) if data.get("image_path") else None,
            stderr_excerpt=data.get("stderr_excerpt", ""),
            wall_time=data.get("wall_time", 0.0),
            toolchain=data["toolchain"],
            code_hash=data["code_hash"],
        )


@dataclass(frozen=True)
class ToolchainConfig:
    """Where to find external toolchains. Unset entries fall back to the bundled runners.

    ``pdf_to_png`` is a command template with ``{pdf}`` and ``{png}`` placeholders.
    ``container_command`` is prefixed to every sandbox invocation for operators who
    want to wrap jobs in an external container runtime.
    """

    python: str = sys.executable
    processing_java: str | None = None
    tex_engine: str | None = None
    pdf_to_png: str | None = None
    container_command: tuple[str, ...] = ()

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "ToolchainConfig":
        env = os.environ if env is None else env
        container = env.get("SKETCHBENCH_CONTAINER_CMD", "")
        return cls(
            python=env.get("SKETCHBENCH_PYTHON", sys.executable),
            processing_java=env.get("SKETCHBENCH_PROCESSING_JAVA") or None,
            tex_engine=env.get("SKETCHBENCH_TEX_ENGINE") or None,
            pdf_to_png=env.get("SKETCHBENCH_PDF_TO_PNG") or None,
            container_command=tuple(shlex.split(container)) if container else (),
        )
