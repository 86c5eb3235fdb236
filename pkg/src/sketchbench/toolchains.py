"""The four graphics toolchains models are asked to write code for."""

from __future__ import annotations

TOOLCHAINS = ("matplotlib", "turtle", "processing", "tikz")

# Names used when a prompt has to mention the language.
DISPLAY_NAMES = {
    "matplotlib": "python-matplotlib",
    "turtle": "python-turtle",
    "processing": "Processing",
    "tikz": "TikZ",
}


def check_toolchain(toolchain: str) -> str:
    if toolchain not in TOOLCHAINS:
        raise ValueError(f"unknown toolchain {toolchain!r}; expected one of {TOOLCHAINS}")
    return toolchain
