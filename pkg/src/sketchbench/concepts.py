"""Drawable-concept corpora: a compositional shape grammar plus object and scene loaders.

Three tiers of captions drive every experiment: shapes instantiated from a
config-driven template grammar, the most frequent object names of a scene
dataset, and natural scene captions sampled from a caption dump. A fixed
ten-item digit list is available as an optional extra category.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

CATEGORIES = ("shapes", "objects", "scenes", "digits")

_SLOT_RE = re.compile(r"\[([^\[\]]+)\]")


class CorpusError(ValueError):
    """Base class for corpus construction failures."""


class CapacityError(CorpusError):
    """Requested more items than the source can provide."""


class ParseError(CorpusError):
    """A source file row could not be parsed; message carries the line number."""


@dataclass(frozen=True)
class Concept:
    """One drawable prompt."""

    id: str
    caption: str
    category: str
    tags: frozenset[str] = frozenset()
    is_sentinel: bool = False

    def __post_init__(self) -> None:
        if not self.caption:
            raise CorpusError("caption must be non-empty")
        if self.category not in CATEGORIES:
            raise CorpusError(f"unknown category {self.category!r}")
        if self.is_sentinel and self.category != "shapes":
            raise CorpusError("sentinel concepts must belong to category 'shapes'")


@dataclass(frozen=True)
class CaptionTemplate:
    """Caption text with [slot] placeholders; slots name attribute dimensions or shape classes."""

    text: str
    is_sentinel: bool = False

    def slots(self) -> list[str]:
        return _SLOT_RE.findall(self.text)


@dataclass(frozen=True)
class ShapeGrammarConfig:
    """Fully config-driven grammar: shape classes, attribute vocabulary, caption templates."""

    shape_classes: dict[str, tuple[str, ...]]
    attribute_vocab: dict[str, tuple[str, ...]]
    relation_templates: tuple[CaptionTemplate, ...]

    def slot_values(self, slot: str) -> tuple[str, ...]:
        if slot in self.attribute_vocab:
            return self.attribute_vocab[slot]
        if slot in self.shape_classes:
            return self.shape_classes[slot]
        if slot == "shape":
            return tuple(itertools.chain.from_iterable(self.shape_classes.values()))
        raise CorpusError(f"template slot [{slot}] names no attribute dimension or shape class")

    def shape_class_of(self, value: str) -> str | None:
        for cls, values in self.shape_classes.items():
            if value in values:
                return cls
        return None

    @property
    def attribute_value_count(self) -> int:
        return sum(len(v) for v in self.attribute_vocab.values())

    def validate(self) -> None:
        for tpl in self.relation_templates:
            for slot in tpl.slots():
                self.slot_values(slot)


def default_shape_grammar() -> ShapeGrammarConfig:
    """Default grammar: 26 shapes over four classes, 32 attribute values over six dimensions.

    The attribute split (8 colors + 4 textures + 6 locations + 5 arrangements +
    5 counts + 4 sizes = 32) is this project's documented choice; the grammar is
    config-driven so alternative splits can be swapped in.
    """
    return ShapeGrammarConfig(
        shape_classes={
            "points": ("point", "dot"),
            "lines": ("line", "vertical line", "horizontal line", "diagonal line"),
            "2Dshapes": (
                "circle",
                "square",
                "rectangle",
                "triangle",
                "oval",
                "trapezium",
                "parallelogram",
                "octagon",
                "pentagon",
                "hexagon",
                "rhombus",
                "semicircle",
            ),
            "3Dshapes": (
                "cube",
                "sphere",
                "cylinder",
                "cone",
                "pyramid",
                "prism",
                "tube",
                "cuboid",
            ),
        },
        attribute_vocab={
            "color": ("red", "blue", "green", "yellow", "orange", "purple", "cyan", "pink"),
            "texture": ("solid", "dashed", "dotted", "striped"),
            "location": ("top", "bottom", "left", "right", "top left", "bottom right"),
            "arrangement": ("on top of", "below", "to the left of", "to the right of", "next to"),
            "count": ("two", "three", "four", "five", "six"),
            "size": ("small", "large", "thin", "thick"),
        },
        relation_templates=(
            CaptionTemplate("a [color] [shape]", is_sentinel=True),
            CaptionTemplate("a [size] [color] [shape]"),
            CaptionTemplate("a [texture] [color] [shape]"),
            CaptionTemplate("a [color] [shape] on the [location] of the image"),
            CaptionTemplate("a [color] [shape] [arrangement] a [color] [shape]"),
            CaptionTemplate("[count] [color] [shape]s"),
            CaptionTemplate(
                "[count] [shape]s on the [location] of the image"
                " and [count] [shape]s on the [location] of the image"
            ),
        ),
    )


def _template_axis_sizes(config: ShapeGrammarConfig, tpl: CaptionTemplate) -> list[int]:
    return [len(config.slot_values(slot)) for slot in tpl.slots()]


def enumerate_caption_space(config: ShapeGrammarConfig) -> int:
    """Exact count of distinct caption instantiations the grammar can emit."""
    config.validate()
    return sum(math.prod(_template_axis_sizes(config, tpl)) for tpl in config.relation_templates)


def _decode_caption(config: ShapeGrammarConfig, index: int) -> Concept:
    """Map a global caption index to its Concept via mixed-radix decoding."""
    remaining = index
    for t_idx, tpl in enumerate(config.relation_templates):
        size = math.prod(_template_axis_sizes(config, tpl))
        if remaining >= size:
            remaining -= size
            continue
        slots = tpl.slots()
        values: list[str] = []
        radix = remaining
        for slot in reversed(slots):
            options = config.slot_values(slot)
            radix, digit = divmod(radix, len(options))
            values.append(options[digit])
        values.reverse()

        caption = tpl.text
        tags = {f"template:{t_idx}"}
        for slot, value in zip(slots, values):
            caption = caption.replace(f"[{slot}]", value, 1)
            if slot == "shape" or slot in config.shape_classes:
                cls = config.shape_class_of(value) or slot
                tags.add(f"class:{cls}")
            elif slot == "arrangement":
                tags.add(f"relation:{value}")
            elif slot == "color":
                tags.add(f"color:{value}")
        return Concept(
            id=f"shape-{index:07d}",
            caption=caption,
            category="shapes",
            tags=frozenset(tags),
            is_sentinel=tpl.is_sentinel,
        )
    raise CorpusError(f"caption index {index} out of range")


def build_shape_corpus(
    config: ShapeGrammarConfig, sample_size: int, seed: int
) -> list[Concept]:
    """Sample `sample_size` distinct captions from the grammar, deterministically per seed."""
    total = enumerate_caption_space(config)
    if sample_size > total:
        raise CapacityError(f"sample_size {sample_size} exceeds caption space of {total}")
    rng = random.Random(seed)
    indices = rng.sample(range(total), sample_size)
    concepts = [_decode_caption(config, i) for i in indices]
    seen: dict[str, str] = {}
    for c in concepts:
        if c.caption in seen:
            raise CorpusError(
                f"grammar emitted duplicate caption {c.caption!r} ({seen[c.caption]} vs {c.id});"
                " check the config for repeated values"
            )
        seen[c.caption] = c.id
    return concepts


def _split_row(line: str) -> tuple[str, str]:
    if "\t" in line:
        name, _, count = line.rpartition("\t")
    else:
        name, _, count = line.rpartition(",")
    return name.strip(), count.strip()


def load_object_corpus(source: Path | str, top_k: int) -> list[Concept]:
    """Top-k object names by descending frequency; equal frequencies break lexicographically."""
    rows: list[tuple[str, int]] = []
    seen_names: set[str] = set()
    for lineno, raw in enumerate(Path(source).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        name, count_text = _split_row(line)
        if not name or not count_text:
            raise ParseError(f"line {lineno}: expected two delimited columns, got {raw!r}")
        try:
            count = int(count_text)
        except ValueError:
            raise ParseError(f"line {lineno}: frequency {count_text!r} is not an integer") from None
        if name in seen_names:
            raise ParseError(f"line {lineno}: duplicate object name {name!r}")
        seen_names.add(name)
        rows.append((name, count))
    if top_k > len(rows):
        raise CapacityError(f"top_k {top_k} exceeds {len(rows)} parsed rows")
    rows.sort(key=lambda r: (-r[1], r[0]))
    return [
        Concept(
            id=f"object-{rank:04d}",
            caption=name,
            category="objects",
            tags=frozenset({f"frequency:{count}"}),
        )
        for rank, (name, count) in enumerate(rows[:top_k])
    ]


def load_scene_corpus(source: Path | str, n: int, seed: int) -> list[Concept]:
    """Uniform sample of n scene captions without replacement, deterministic per seed.

    Duplicate caption lines are collapsed (first occurrence wins) so a corpus
    never contains repeated captions.
    """
    captions: list[tuple[int, str]] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(Path(source).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line in seen:
            continue
        seen.add(line)
        captions.append((lineno, line))
    if n > len(captions):
        raise CapacityError(f"requested {n} scenes but source has {len(captions)} distinct captions")
    rng = random.Random(seed)
    sample = rng.sample(captions, n)
    return [
        Concept(id=f"scene-{lineno:05d}", caption=caption, category="scenes")
        for lineno, caption in sample
    ]


def digit_concepts() -> list[Concept]:
    """Fixed ten-caption digit list; a standalone hard case worth tracking separately."""
    return [
        Concept(
            id=f"digit-{d}",
            caption=f"the digit {d}",
            category="digits",
            tags=frozenset({f"digit:{d}"}),
        )
        for d in range(10)
    ]


def write_corpus(concepts: Iterable[Concept], path: Path | str) -> None:
    """Line-delimited UTF-8 records: {id, caption, category, tags, is_sentinel}."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for c in concepts:
            fh.write(
                json.dumps(
                    {
                        "id": c.id,
                        "caption": c.caption,
                        "category": c.category,
                        "tags": sorted(c.tags),
                        "is_sentinel": c.is_sentinel,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def read_corpus(path: Path | str) -> list[Concept]:
    concepts = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            concepts.append(
                Concept(
                    id=rec["id"],
                    caption=rec["caption"],
                    category=rec["category"],
                    tags=frozenset(rec.get("tags", [])),
                    is_sentinel=rec.get("is_sentinel", False),
                )
            )
        except (KeyError, json.JSONDecodeError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    ids = [c.id for c in concepts]
    if len(set(ids)) != len(ids):
        raise ParseError("corpus file contains duplicate concept ids")
    return concepts


def by_category(concepts: Sequence[Concept], category: str) -> list[Concept]:
    return [c for c in concepts if c.category == category]
