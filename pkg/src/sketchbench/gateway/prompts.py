"""Prompt builders for generation, recognition, and self-correction.

Every template is byte-stable and pinned by golden-file tests; change a
template and the goldens must be regenerated deliberately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from sketchbench.concepts import Concept
from sketchbench.toolchains import DISPLAY_NAMES, check_toolchain

REINFORCEMENTS = ("none", "light", "strong")
STRATEGIES = ("single_shot", "two_stage")

_LIGHT_OPENER = "You are a helpful assistant and an excellent programmer."
_STRONG_OPENER = (
    "The images you've created using code are a testament to your creativity,"
    " innovation, and technical expertise."
)
_SCAFFOLD = 'You output a code in the programming language "{language}" that draws what the user asks to draw.'
# Processing sketches need the off-screen-friendly entry point.
_PROCESSING_EXTRA = "Remove any text. Use settings() instead of setup()."


@dataclass(frozen=True)
class PromptBundle:
    """A ready-to-send prompt. `describe_text` holds the first message of a two-stage exchange."""

    user_text: str
    system_text: str | None = None
    strategy: str = "single_shot"
    reinforcement: str = "none"
    describe_text: str | None = None

    def __post_init__(self) -> None:
        if not self.user_text:
            raise ValueError("user_text must be non-empty")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.reinforcement not in REINFORCEMENTS:
            raise ValueError(f"unknown reinforcement {self.reinforcement!r}")
        if self.strategy == "two_stage" and not self.describe_text:
            raise ValueError("two_stage prompts must record the describe message")

    def rendered(self) -> str:
        """Single-string view (system-like preamble + stages) for single-message backends."""
        parts = [p for p in (self.system_text, self.describe_text, self.user_text) if p]
        return "\n\n".join(parts)

    def to_json(self) -> dict:
        return {
            "user_text": self.user_text,
            "system_text": self.system_text,
            "strategy": self.strategy,
            "reinforcement": self.reinforcement,
            "describe_text": self.describe_text,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PromptBundle":
        return cls(
            user_text=data["user_text"],
            system_text=data.get("system_text"),
            strategy=data.get("strategy", "single_shot"),
            reinforcement=data.get("reinforcement", "none"),
            describe_text=data.get("describe_text"),
        )


def _preamble(toolchain: str, reinforcement: str) -> str:
    scaffold = _SCAFFOLD.format(language=DISPLAY_NAMES[toolchain])
    if toolchain == "processing":
        scaffold = f"{scaffold} {_PROCESSING_EXTRA}"
    if reinforcement == "none":
        return scaffold
    opener = _LIGHT_OPENER if reinforcement == "light" else _STRONG_OPENER
    return f"{opener} {scaffold}"


def build_generation_prompt(
    concept: Concept,
    toolchain: str,
    reinforcement: str = "none",
    strategy: str = "single_shot",
) -> PromptBundle:
    """Drawing request: the language is named in the system-like preamble, the concept in the user turn."""
    check_toolchain(toolchain)
    if reinforcement not in REINFORCEMENTS:
        raise ValueError(f"unknown reinforcement {reinforcement!r}")
    describe = None
    if strategy == "two_stage":
        describe = f"describe how to draw {concept.caption}"
    return PromptBundle(
        user_text=f"write a code that draws {concept.caption}",
        system_text=_preamble(toolchain, reinforcement),
        strategy=strategy,
        reinforcement=reinforcement,
        describe_text=describe,
    )


def build_parametrized_function_prompt(
    concept: Concept,
    toolchain: str,
    reinforcement: str = "none",
) -> PromptBundle:
    """Diversity variant: ask for one randomized drawing function instead of one drawing."""
    check_toolchain(toolchain)
    if toolchain == "tikz":
        raise ValueError("tikz cannot express randomized drawing functions")
    return PromptBundle(
        user_text=(
            f"write a code with a parametrized function that draws {concept.caption};"
            " every call of the function must produce a different drawing."
            " The code must call the function once."
        ),
        system_text=_preamble(toolchain, reinforcement),
        strategy="single_shot",
        reinforcement=reinforcement,
    )


def build_recognition_prompt(code_source: str, options: Sequence[str]) -> PromptBundle:
    """Multi-class identification: five captions, labeled 1-5, in the order given."""
    if len(options) != 5:
        raise ValueError(f"recognition prompts take exactly 5 options, got {len(options)}")
    if len(set(options)) != len(options):
        raise ValueError("recognition options must be distinct")
    if not code_source.strip():
        raise ValueError("code must be non-empty")
    listing = "\n".join(f"{i}. {opt}" for i, opt in enumerate(options, start=1))
    return PromptBundle(
        user_text=(
            "Which of the following concepts from the list does the code below represent?\n\n"
            f"{code_source}\n\n{listing}"
        )
    )


def build_feedback_prompt(code_source: str, concept: Concept) -> PromptBundle:
    """Self-correction turn embedding the previous code verbatim."""
    if not code_source.strip():
        raise ValueError("code must be non-empty")
    return PromptBundle(
        user_text=(
            f"The following\n{code_source}\ndoes not accurately represent"
            f" the {concept.caption}. How can you do better?"
        )
    )
