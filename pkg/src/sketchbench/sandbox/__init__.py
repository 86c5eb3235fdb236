from sketchbench.sandbox.normalize import is_blank, load_image, normalize_image, pixel_std
from sketchbench.sandbox.runner import RenderPool, code_hash, compile_rate, render
from sketchbench.sandbox.types import (
    LOG_STATUSES,
    RENDER_STATUSES,
    RenderLimits,
    RenderResult,
    SandboxEnvironmentError,
    STATUS_COMPILE_ERROR,
    STATUS_EMPTY_IMAGE,
    STATUS_EXTRACTION_ERROR,
    STATUS_OK,
    STATUS_RUNTIME_ERROR,
    STATUS_TIMEOUT,
    ToolchainConfig,
)
from sketchbench.sandbox.wrap import ExecutableUnit, wrap_source

__all__ = [
    "ExecutableUnit",
    "LOG_STATUSES",
    "RENDER_STATUSES",
    "RenderLimits",
    "RenderPool",
    "RenderResult",
    "SandboxEnvironmentError",
    "STATUS_COMPILE_ERROR",
    "STATUS_EMPTY_IMAGE",
    "STATUS_EXTRACTION_ERROR",
    "STATUS_OK",
    "STATUS_RUNTIME_ERROR",
    "STATUS_TIMEOUT",
    "ToolchainConfig",
    "code_hash",
    "compile_rate",
    "is_blank",
    "load_image",
    "normalize_image",
    "pixel_std",
    "render",
    "wrap_source",
]
