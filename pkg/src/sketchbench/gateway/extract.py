"""Pull code blocks and multiple-choice answers out of free-form model replies."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from sketchbench.gateway.backends import ResponseRecord
from sketchbench.toolchains import check_toolchain


class ExtractionError(ValueError):
    """No usable code found in a response; counts as a failure in compile-rate."""


@dataclass(frozen=True)
class CodeSample:
    source: str
    toolchain: str
    concept_id: str = ""
    backend: str = ""
    iteration: int = 0
    extraction_rule: str = ""

    def __post_init__(self) -> None:
        if not self.source.strip():
            raise ValueError("code source must be non-empty")
        check_toolchain(self.toolchain)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "toolchain": self.toolchain,
            "concept_id": self.concept_id,
            "backend": self.backend,
            "iteration": self.iteration,
            "extraction_rule": self.extraction_rule,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CodeSample":
        return cls(**data)


_FENCE_RE = re.compile(r"```[ \t]*([A-Za-z0-9+_.#-]*)[ \t]*\r?\n(.*?)```", re.DOTALL)

# Fence language tags acceptable for each toolchain; the empty tag matches all.
_COMPATIBLE_TAGS = {
    "matplotlib": {"", "python", "py", "python3", "matplotlib"},
    "turtle": {"", "python", "py", "python3", "turtle"},
    "processing": {"", "processing", "java", "pde"},
    "tikz": {"", "tex", "latex", "tikz"},
}

# Line-level lexical cues used by the no-fence fallback.
_CODE_LINE_PATTERNS = {
    "matplotlib": [
        r"^\s*(import|from)\s+\w",
        r"^\s*(def|class|if|for|while|return)\b",
        r"^\s*[\w.\[\]]+\s*=[^=]",
        r"plt\.",
        r"^\s*[\w.]+\(.*\)\s*$",
        r"^\s*#",
    ],
    "turtle": [
        r"^\s*(import|from)\s+\w",
        r"^\s*(def|class|if|for|while|return)\b",
        r"^\s*[\w.\[\]]+\s*=[^=]",
        r"turtle\.|\.forward\(|\.left\(|\.right\(|\.goto\(|\.penup\(|\.pendown\(",
        r"^\s*[\w.]+\(.*\)\s*$",
        r"^\s*#",
    ],
    "processing": [
        r"^\s*(void|int|float|boolean|color)\s+\w",
        r"^\s*(size|background|fill|stroke|noStroke|noFill|ellipse|circle|rect|line|triangle|quad|point|arc|beginShape|vertex|endShape|strokeWeight|translate|rotate)\s*\(",
        r"^\s*[{}]\s*$",
        r";\s*$",
        r"^\s*//",
    ],
    "tikz": [
        r"\\(draw|fill|filldraw|shade|path|node|coordinate|foreach|definecolor)\b",
        r"\\(documentclass|usepackage|usetikzlibrary)\b",
        r"\\(begin|end)\{",
        r"^\s*%",
    ],
}


def _compatible_fenced_blocks(text: str, toolchain: str) -> list[str]:
    tags = _COMPATIBLE_TAGS[toolchain]
    blocks = []
    for match in _FENCE_RE.finditer(text):
        tag = match.group(1).lower()
        if tag in tags:
            blocks.append(match.group(2).rstrip("\n"))
    return blocks


def _heuristic_region(text: str, toolchain: str) -> str | None:
    """Longest contiguous run of >=2 lines where most lines look like toolchain code."""
    patterns = [re.compile(p) for p in _CODE_LINE_PATTERNS[toolchain]]
    lines = text.splitlines()
    flags = [any(p.search(line) for p in patterns) for line in lines]

    best: tuple[int, int] | None = None
    start = None
    for i, line in enumerate(lines + [""]):  # sentinel terminates the last run
        in_run = i < len(lines) and (flags[i] or (start is not None and not line.strip()))
        if in_run and start is None:
            start = i
        elif not in_run and start is not None:
            end = i
            while end > start and not lines[end - 1].strip():
                end -= 1
            code_lines = [l for l in lines[start:end] if l.strip()]
            matched = sum(
                1 for l in lines[start:end] if l.strip() and any(p.search(l) for p in patterns)
            )
            if len(code_lines) >= 2 and matched * 2 > len(code_lines):
                if best is None or (end - start) > (best[1] - best[0]):
                    best = (start, end)
            start = None
    if best is None:
        return None
    return "\n".join(lines[best[0]:best[1]])


def extract_code(
    response: ResponseRecord,
    toolchain: str,
    *,
    concept_id: str = "",
    iteration: int = 0,
) -> CodeSample:
    """First compatible fenced block, else the best code-looking region, else an error."""
    check_toolchain(toolchain)
    text = response.raw_text

    blocks = _compatible_fenced_blocks(text, toolchain)
    if blocks:
        source, rule = blocks[0], "fenced"
    else:
        region = _heuristic_region(text, toolchain)
        if region is None or not region.strip():
            raise ExtractionError(
                f"no extractable {toolchain} code in response from {response.backend}"
            )
        source, rule = region, "heuristic"

    if "```" in source:
        raise ExtractionError("extracted region still contains fence markers")
    return CodeSample(
        source=source,
        toolchain=toolchain,
        concept_id=concept_id,
        backend=response.backend,
        iteration=iteration,
        extraction_rule=rule,
    )


def _normalize(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip().lower()


def parse_choice(response: ResponseRecord, options: Sequence[str]) -> int | None:
    """Option index (1-based) if the reply names exactly one option; None if ambiguous or absent."""
    text = response.raw_text
    norm_text = _normalize(text)
    candidates: set[int] = set()

    for match in re.finditer(r"(?<![\w.])([0-9]+)(?![\w.])", text):
        value = int(match.group(1))
        if 1 <= value <= len(options):
            candidates.add(value)

    for idx, option in enumerate(options, start=1):
        if _normalize(option) in norm_text:
            candidates.add(idx)

    if len(candidates) == 1:
        return candidates.pop()
    return None
