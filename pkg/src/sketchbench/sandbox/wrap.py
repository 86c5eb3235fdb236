"""Wrap untrusted graphics code into an executable unit for one toolchain.

Wrapping only prepends/appends harness lines (or embeds the code in the
required document/sketch scaffold); user statements are never edited. Each
unit forces off-screen rendering, saves exactly one image to the designated
output path, and exits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from sketchbench.gateway.extract import CodeSample
from sketchbench.sandbox.types import RenderLimits, SandboxEnvironmentError, ToolchainConfig

OUTPUT_NAME = "out.png"


@dataclass(frozen=True)
class ExecutableUnit:
    """One renderable job: commands run in order inside the job directory."""

    steps: tuple[tuple[str, ...], ...]
    workdir: Path
    output_path: Path
    toolchain: str
    uses_external: bool = False


_MPL_PRELUDE = """\
import random as _sb_random
_sb_random.seed({seed})
try:
    import numpy as _sb_np
    _sb_np.random.seed({seed})
except Exception:
    pass
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
_SB_OUT = {out!r}
_sb_saved = []
_sb_real_savefig = matplotlib.figure.Figure.savefig
def _sb_savefig(self, *args, **kwargs):
    kwargs.pop("format", None)
    kwargs.pop("fname", None)
    keep = {{k: v for k, v in kwargs.items() if k in ("dpi", "facecolor", "bbox_inches")}}
    _sb_real_savefig(self, _SB_OUT, **keep)
    _sb_saved.append(_SB_OUT)
matplotlib.figure.Figure.savefig = _sb_savefig
plt.show = lambda *a, **k: None
"""

_MPL_EPILOGUE = """\
import matplotlib.pyplot as _sb_plt
if not _sb_saved:
    _sb_real_savefig(_sb_plt.gcf(), _SB_OUT)
"""

_TURTLE_PRELUDE = """\
import random as _sb_random
_sb_random.seed({seed})
import sys as _sb_sys
from sketchbench.sandbox import headless_turtle as _sb_turtle
_sb_turtle.reset_state(width=640, height=480, output={out!r})
_sb_sys.modules["turtle"] = _sb_turtle
"""

_TURTLE_EPILOGUE = """\
from sketchbench.sandbox import headless_turtle as _sb_turtle
_sb_turtle.export()
"""


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def wrap_source(
    code: CodeSample,
    workdir: Path,
    toolchains: ToolchainConfig | None = None,
    *,
    seed: int = 0,
) -> ExecutableUnit:
    """Build the executable unit for `code` inside `workdir`."""
    if not code.source.strip():
        raise ValueError("cannot wrap empty source")
    toolchains = toolchains or ToolchainConfig.from_env()
    workdir = Path(workdir)
    out = workdir / OUTPUT_NAME
    prefix = toolchains.container_command

    if code.toolchain == "matplotlib":
        script = (
            _MPL_PRELUDE.format(out=str(out), seed=seed)
            + "\n" + code.source + "\n\n" + _MPL_EPILOGUE
        )
        job = _write(workdir / "job.py", script)
        return ExecutableUnit(
            steps=(prefix + (toolchains.python, "-I", str(job)),),
            workdir=workdir, output_path=out, toolchain=code.toolchain,
        )

    if code.toolchain == "turtle":
        script = (
            _TURTLE_PRELUDE.format(out=str(out), seed=seed)
            + "\n" + code.source + "\n\n" + _TURTLE_EPILOGUE
        )
        job = _write(workdir / "job.py", script)
        return ExecutableUnit(
            steps=(prefix + (toolchains.python, "-I", str(job)),),
            workdir=workdir, output_path=out, toolchain=code.toolchain,
        )

    if code.toolchain == "processing":
        if toolchains.processing_java:
            sketch_dir = workdir / "job"
            sketch_dir.mkdir(exist_ok=True)
            source = code.source
            # Static sketches get save+exit statements appended; active sketches
            # without draw() get a saving draw(). Sketches defining their own
            # draw() must save and exit themselves (documented limitation).
            if "void draw" not in source and "void setup" not in source and "void settings" not in source:
                source += f'\nsave("{out}");\nexit();\n'
            elif "void draw" not in source:
                source += f'\nvoid draw() {{ save("{out}"); exit(); }}\n'
            _write(sketch_dir / "job.pde", source)
            return ExecutableUnit(
                steps=(prefix + (toolchains.processing_java, f"--sketch={sketch_dir}", "--run"),),
                workdir=workdir, output_path=out, toolchain=code.toolchain, uses_external=True,
            )
        sketch = _write(workdir / "job.pde", code.source)
        return ExecutableUnit(
            steps=(
                prefix
                + (
                    toolchains.python, "-I", "-m",
                    "sketchbench.sandbox.processing_runtime",
                    str(sketch), str(out), "--seed", str(seed),
                ),
            ),
            workdir=workdir, output_path=out, toolchain=code.toolchain,
        )

    if code.toolchain == "tikz":
        source = code.source
        if "\\documentclass" not in source:
            if "\\begin{tikzpicture}" not in source:
                source = "\\begin{tikzpicture}\n" + source + "\n\\end{tikzpicture}"
            source = (
                "\\documentclass[tikz,border=2pt]{standalone}\n"
                "\\begin{document}\n" + source + "\n\\end{document}\n"
            )
        job = _write(workdir / "job.tex", source)
        if toolchains.tex_engine:
            if not toolchains.pdf_to_png:
                raise SandboxEnvironmentError(
                    "tex_engine configured without a pdf_to_png converter"
                )
            pdf = workdir / "job.pdf"
            convert = tuple(
                part.format(pdf=str(pdf), png=str(out))
                for part in toolchains.pdf_to_png.split()
            )
            return ExecutableUnit(
                steps=(
                    prefix + (toolchains.tex_engine, "-interaction=nonstopmode",
                              "-halt-on-error", str(job)),
                    prefix + convert,
                ),
                workdir=workdir, output_path=out, toolchain=code.toolchain, uses_external=True,
            )
        return ExecutableUnit(
            steps=(
                prefix
                + (toolchains.python, "-I", "-m",
                   "sketchbench.sandbox.tikz_fallback", str(job), str(out)),
            ),
            workdir=workdir, output_path=out, toolchain=code.toolchain,
        )

    raise SandboxEnvironmentError(f"unsupported toolchain {code.toolchain!r}")
