"""Renderer for a practical subset of TikZ, used when no TeX engine is configured.

Handles the constructs drawing-oriented TikZ actually leans on: ``\\draw`` /
``\\fill`` / ``\\filldraw`` / ``\\shade`` paths with line-to, rectangle,
circle, ellipse, arc, bezier and polar coordinates, ``\\node`` labels,
``\\coordinate`` definitions, ``\\foreach`` loops, scopes, color mixes like
``red!30``, and the usual line-width keys. Anything outside the subset raises
a compile error (exit 21), mirroring how a TeX run would fail.

Invoked as ``python -m sketchbench.sandbox.tikz_fallback job.tex out.png``.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from PIL import Image, ImageDraw

SUPERSAMPLE = 2
PT_PER_CM = 28.4527

BASE_COLORS = {
    "black": (0, 0, 0), "white": (255, 255, 255), "red": (255, 0, 0),
    "green": (0, 255, 0), "blue": (0, 0, 255), "cyan": (0, 255, 255),
    "magenta": (255, 0, 255), "yellow": (255, 255, 0), "orange": (255, 128, 0),
    "purple": (191, 0, 64), "pink": (255, 191, 191), "brown": (191, 128, 64),
    "gray": (128, 128, 128), "grey": (128, 128, 128), "lightgray": (191, 191, 191),
    "lightgrey": (191, 191, 191), "darkgray": (64, 64, 64), "darkgrey": (64, 64, 64),
    "violet": (128, 0, 128), "olive": (128, 128, 0), "lime": (191, 255, 0),
    "teal": (0, 128, 128),
}

THICKNESS_PT = {
    "ultra thin": 0.1, "very thin": 0.2, "thin": 0.4, "semithick": 0.6,
    "thick": 0.8, "very thick": 1.2, "ultra thick": 1.6,
}

KNOWN_COMMANDS = (
    "draw", "fill", "filldraw", "shade", "shadedraw", "path", "node",
    "coordinate", "definecolor", "foreach", "scopepush", "scopepop", "tikzset",
)

_NUM_EXPR_RE = re.compile(r"^[0-9+\-*/(). ]+$")


class TikzError(Exception):
    pass


@dataclass
class Prim:
    kind: str                 # "poly" | "circle" | "ellipse" | "arcpath" | "text"
    points: list[tuple[float, float]] = field(default_factory=list)
    closed: bool = False
    center: tuple[float, float] = (0.0, 0.0)
    radii: tuple[float, float] = (0.0, 0.0)
    text: str = ""
    stroke: tuple[int, int, int] | None = None
    fill: tuple[int, int, int] | None = None
    width_pt: float = 0.4


# ---------------------------------------------------------------------------
# Source handling
# ---------------------------------------------------------------------------

def extract_body(source: str) -> str:
    source = re.sub(r"(?<!\\)%[^\n]*", "", source)  # strip comments
    m = re.search(r"\\begin\{tikzpicture\}(\[[^\]]*\])?(.*?)\\end\{tikzpicture\}", source, re.DOTALL)
    if m:
        return m.group(2)
    m = re.search(r"\\begin\{document\}(.*?)\\end\{document\}", source, re.DOTALL)
    if m:
        return m.group(1)
    return source


def normalize_scopes(body: str) -> str:
    body = re.sub(r"\\begin\{scope\}(\[[^\]]*\])?", lambda m: f"\\scopepush{m.group(1) or '[]'};", body)
    body = body.replace(r"\end{scope}", r"\scopepop;")
    return body


def split_commands(body: str) -> list[str]:
    commands: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in body:
        if ch in "{[":
            depth += 1
        elif ch in "}]":
            depth -= 1
            if depth < 0:
                raise TikzError("unbalanced braces")
        if ch == ";" and depth == 0:
            cmd = "".join(current).strip()
            if cmd:
                commands.append(cmd)
            current = []
        else:
            current.append(ch)
    tail = "".join(current).strip()
    if tail:
        raise TikzError(f"unterminated command near {tail[:40]!r}")
    if depth != 0:
        raise TikzError("unbalanced braces")
    return commands


# ---------------------------------------------------------------------------
# Small parsing helpers
# ---------------------------------------------------------------------------

def eval_dim(text: str) -> float:
    """Evaluate a length expression; bare numbers are centimeters."""
    text = text.strip()
    scale = 1.0
    for unit, factor in (("cm", 1.0), ("pt", 1.0 / PT_PER_CM), ("mm", 0.1), ("in", 2.54)):
        if text.endswith(unit):
            text = text[: -len(unit)].strip()
            scale = factor
            break
    if not text:
        raise TikzError("empty dimension")
    if not _NUM_EXPR_RE.match(text):
        raise TikzError(f"cannot evaluate dimension {text!r}")
    try:
        return float(eval(text, {"__builtins__": {}})) * scale  # chars whitelisted above
    except Exception:
        raise TikzError(f"cannot evaluate dimension {text!r}") from None


def split_top(text: str, sep: str) -> list[str]:
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch in "{([":
            depth += 1
        elif ch in "})]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


class ColorTable:
    def __init__(self) -> None:
        self.colors = dict(BASE_COLORS)

    def define(self, name: str, model: str, spec: str) -> None:
        parts = [p.strip() for p in spec.split(",")]
        if model.lower() == "rgb":
            rgb = tuple(round(float(p) * 255) for p in parts)
        elif model.upper() == "RGB":
            rgb = tuple(round(float(p)) for p in parts)
        elif model.lower() == "gray":
            g = round(float(parts[0]) * 255)
            rgb = (g, g, g)
        else:
            raise TikzError(f"unsupported color model {model!r}")
        self.colors[name] = rgb  # type: ignore[assignment]

    def resolve(self, spec: str) -> tuple[int, int, int]:
        spec = spec.strip()
        if "!" in spec:
            parts = spec.split("!")
            base = self.resolve(parts[0])
            i = 1
            while i < len(parts):
                pct = float(parts[i]) / 100.0
                other = self.resolve(parts[i + 1]) if i + 1 < len(parts) else (255, 255, 255)
                base = tuple(round(b * pct + o * (1 - pct)) for b, o in zip(base, other))
                i += 2
            return base  # type: ignore[return-value]
        if spec in self.colors:
            return self.colors[spec]
        raise TikzError(f"unknown color {spec!r}")


@dataclass
class Style:
    stroke: tuple[int, int, int] | None = None
    fill: tuple[int, int, int] | None = None
    width_pt: float = 0.4
    scale: float = 1.0
    rotate: float = 0.0
    shift: tuple[float, float] = (0.0, 0.0)
    step: float = 1.0

    def transform(self, x: float, y: float) -> tuple[float, float]:
        if self.rotate:
            rad = math.radians(self.rotate)
            x, y = x * math.cos(rad) - y * math.sin(rad), x * math.sin(rad) + y * math.cos(rad)
        return (x * self.scale + self.shift[0], y * self.scale + self.shift[1])


def parse_options(opts: str, colors: ColorTable, base: Style, fill_action: bool, draw_action: bool) -> Style:
    style = Style(
        stroke=(0, 0, 0) if draw_action else None,
        fill=None,
        width_pt=base.width_pt,
        scale=base.scale,
        rotate=base.rotate,
        shift=base.shift,
    )
    default_color: tuple[int, int, int] | None = None
    for raw in split_top(opts, ","):
        opt = raw.strip()
        if not opt:
            continue
        if "=" in opt:
            key, _, value = opt.partition("=")
            key, value = key.strip(), value.strip()
            if key == "fill":
                style.fill = colors.resolve(value)
            elif key in ("draw", "color"):
                style.stroke = colors.resolve(value)
                default_color = style.stroke
            elif key == "line width":
                style.width_pt = eval_dim(value) * PT_PER_CM
            elif key == "scale":
                style.scale = base.scale * float(value)
            elif key == "rotate":
                style.rotate = base.rotate + float(value)
            elif key == "xshift":
                style.shift = (style.shift[0] + eval_dim(value), style.shift[1])
            elif key == "yshift":
                style.shift = (style.shift[0], style.shift[1] + eval_dim(value))
            elif key == "shift":
                inner = value.strip().lstrip("{(").rstrip(")}")
                dx, dy = (eval_dim(p) for p in split_top(inner, ",")[:2])
                style.shift = (style.shift[0] + dx, style.shift[1] + dy)
            elif key == "step":
                style.step = eval_dim(value)
            # radius keys are consumed by the shape operations; other keys are
            # cosmetic (opacity, cap, dash phase ...) and ignored by this subset
            continue
        if opt in THICKNESS_PT:
            style.width_pt = THICKNESS_PT[opt]
            continue
        if opt in ("dashed", "dotted", "solid", "rounded corners", "smooth", "draw", "->", "<-", "<->"):
            if opt == "draw":
                style.stroke = style.stroke or (0, 0, 0)
            continue
        try:
            default_color = colors.resolve(opt)
            style.stroke = default_color
        except TikzError:
            continue  # unknown cosmetic key: ignore rather than die
    if fill_action and style.fill is None:
        style.fill = default_color or (0, 0, 0)
    if fill_action and not draw_action and "draw" not in opts:
        style.stroke = None if "draw=" not in opts else style.stroke
    return style


# ---------------------------------------------------------------------------
# Path parser
# ---------------------------------------------------------------------------

_COORD_RE = re.compile(r"^\s*(\+\+|\+)?\s*\(")


class PathParser:
    def __init__(self, text: str, style: Style, coords: dict[str, tuple[float, float]]):
        self.text = text
        self.pos = 0
        self.style = style
        self.named = coords
        self.current = (0.0, 0.0)
        self.prims: list[Prim] = []
        self.subpath: list[tuple[float, float]] = []

    def error(self, message: str) -> TikzError:
        return TikzError(f"{message} near {self.text[self.pos:self.pos + 30]!r}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def try_word(self, word: str) -> bool:
        self.skip_ws()
        if self.text.startswith(word, self.pos):
            self.pos += len(word)
            return True
        return False

    def read_group(self, open_ch: str, close_ch: str) -> str:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != open_ch:
            raise self.error(f"expected {open_ch!r}")
        depth = 0
        start = self.pos
        for i in range(self.pos, len(self.text)):
            if self.text[i] == open_ch:
                depth += 1
            elif self.text[i] == close_ch:
                depth -= 1
                if depth == 0:
                    self.pos = i + 1
                    return self.text[start + 1:i]
        raise self.error(f"unterminated {open_ch!r}")

    def parse_coordinate(self) -> tuple[float, float]:
        self.skip_ws()
        m = _COORD_RE.match(self.text[self.pos:])
        if not m:
            raise self.error("expected coordinate")
        rel = m.group(1)
        self.pos += m.end() - 1
        inner = self.read_group("(", ")")
        point = self.resolve_coord(inner)
        if rel:
            point = (self.current[0] + point[0], self.current[1] + point[1])
            if rel == "++":
                pass  # caller updates current
        return point

    def resolve_coord(self, inner: str) -> tuple[float, float]:
        inner = inner.strip()
        if ":" in inner and "," not in inner:
            angle_text, radius_text = inner.split(":", 1)
            angle = math.radians(float(angle_text))
            radius = eval_dim(radius_text)
            return (radius * math.cos(angle), radius * math.sin(angle))
        if "," in inner:
            xs, ys = split_top(inner, ",")[:2]
            return (eval_dim(xs), eval_dim(ys))
        if inner in self.named:
            return self.named[inner]
        raise TikzError(f"unknown coordinate {inner!r}")

    def flush_subpath(self, closed: bool = False) -> None:
        if len(self.subpath) >= 2:
            self.prims.append(
                Prim(
                    kind="poly",
                    points=[self.style.transform(*p) for p in self.subpath],
                    closed=closed,
                    stroke=self.style.stroke,
                    fill=self.style.fill if (closed or len(self.subpath) >= 3) else None,
                    width_pt=self.style.width_pt,
                )
            )
        self.subpath = []

    def run(self) -> list[Prim]:
        if self.at_end():
            return self.prims
        self.current = self.parse_coordinate()
        self.subpath = [self.current]
        while not self.at_end():
            if self.try_word("--") or self.try_word("to"):
                if self.text[self.pos:self.pos + 1] == "[":
                    self.read_group("[", "]")  # bend options: rendered straight
                self.skip_ws()
                if self.try_word("cycle"):
                    self.flush_subpath(closed=True)
                    if not self.at_end():
                        self.current = self.parse_coordinate()
                        self.subpath = [self.current]
                    continue
                point = self.parse_coordinate()
                self.current = point
                self.subpath.append(point)
            elif self.try_word("-|"):
                point = self.parse_coordinate()
                self.subpath.append((point[0], self.current[1]))
                self.subpath.append(point)
                self.current = point
            elif self.try_word("|-"):
                point = self.parse_coordinate()
                self.subpath.append((self.current[0], point[1]))
                self.subpath.append(point)
                self.current = point
            elif self.try_word("rectangle"):
                corner = self.parse_coordinate()
                x0, y0 = self.current
                x1, y1 = corner
                self.subpath.extend([(x1, y0), (x1, y1), (x0, y1), (x0, y0)])
                self.flush_subpath(closed=True)
                self.current = corner
                self.subpath = [self.current]
            elif self.try_word("circle"):
                self.skip_ws()
                if self.text[self.pos:self.pos + 1] == "[":
                    opts = self.read_group("[", "]")
                    radius = self._radius_from_opts(opts, "radius")
                    rx = ry = radius
                else:
                    rx = ry = eval_dim(self.read_group("(", ")"))
                self._emit_ellipse(rx, ry)
            elif self.try_word("ellipse"):
                self.skip_ws()
                if self.text[self.pos:self.pos + 1] == "[":
                    opts = self.read_group("[", "]")
                    rx = self._radius_from_opts(opts, "x radius")
                    ry = self._radius_from_opts(opts, "y radius")
                else:
                    inner = self.read_group("(", ")")
                    parts = re.split(r"\s+and\s+", inner.strip())
                    if len(parts) != 2:
                        raise self.error("ellipse expects '(rx and ry)'")
                    rx, ry = eval_dim(parts[0]), eval_dim(parts[1])
                self._emit_ellipse(rx, ry)
            elif self.try_word("arc"):
                self.skip_ws()
                if self.text[self.pos:self.pos + 1] == "[":
                    opts = self.read_group("[", "]")
                    start = self._radius_from_opts(opts, "start angle", unit=False)
                    end = self._radius_from_opts(opts, "end angle", unit=False)
                    radius = self._radius_from_opts(opts, "radius")
                else:
                    inner = self.read_group("(", ")")
                    parts = inner.split(":")
                    if len(parts) != 3:
                        raise self.error("arc expects '(start:end:radius)'")
                    start, end = float(parts[0]), float(parts[1])
                    radius = eval_dim(parts[2])
                cx = self.current[0] - radius * math.cos(math.radians(start))
                cy = self.current[1] - radius * math.sin(math.radians(start))
                n = max(8, int(abs(end - start) / 6))
                for i in range(1, n + 1):
                    theta = math.radians(start + (end - start) * i / n)
                    point = (cx + radius * math.cos(theta), cy + radius * math.sin(theta))
                    self.subpath.append(point)
                self.current = self.subpath[-1]
            elif self.try_word(".."):
                if not self.try_word("controls"):
                    raise self.error("expected 'controls' after '..'")
                c1 = self.parse_coordinate()
                c2 = c1
                if self.try_word("and"):
                    c2 = self.parse_coordinate()
                if not self.try_word(".."):
                    raise self.error("expected '..' closing controls")
                end = self.parse_coordinate()
                p0 = self.current
                for i in range(1, 25):
                    t = i / 24
                    mt = 1 - t
                    x = mt**3 * p0[0] + 3 * mt**2 * t * c1[0] + 3 * mt * t**2 * c2[0] + t**3 * end[0]
                    y = mt**3 * p0[1] + 3 * mt**2 * t * c1[1] + 3 * mt * t**2 * c2[1] + t**3 * end[1]
                    self.subpath.append((x, y))
                self.current = end
            elif self.try_word("node"):
                self.skip_ws()
                if self.text[self.pos:self.pos + 1] == "[":
                    self.read_group("[", "]")
                self.skip_ws()
                if self.try_word("at"):
                    anchor = self.parse_coordinate()
                else:
                    anchor = self.current
                label = self.read_group("{", "}")
                self.prims.append(
                    Prim(kind="text", center=self.style.transform(*anchor), text=label,
                         stroke=self.style.stroke or (0, 0, 0))
                )
            elif self.try_word("grid"):
                corner = self.parse_coordinate()
                self._emit_grid(corner)
                self.current = corner
                self.subpath = [self.current]
            else:
                # a bare coordinate starts a new subpath (move-to)
                self.skip_ws()
                if _COORD_RE.match(self.text[self.pos:]):
                    self.flush_subpath()
                    self.current = self.parse_coordinate()
                    self.subpath = [self.current]
                else:
                    raise self.error("unsupported path operation")
        self.flush_subpath()
        return self.prims

    def _radius_from_opts(self, opts: str, key: str, unit: bool = True) -> float:
        for part in split_top(opts, ","):
            k, _, v = part.partition("=")
            if k.strip() == key:
                return eval_dim(v) if unit else float(v)
        raise TikzError(f"missing {key!r} in [{opts}]")

    def _emit_ellipse(self, rx: float, ry: float) -> None:
        cx, cy = self.current
        pts = [
            (cx + rx * math.cos(2 * math.pi * i / 96), cy + ry * math.sin(2 * math.pi * i / 96))
            for i in range(96)
        ]
        self.prims.append(
            Prim(
                kind="poly",
                points=[self.style.transform(*p) for p in pts],
                closed=True,
                stroke=self.style.stroke,
                fill=self.style.fill,
                width_pt=self.style.width_pt,
            )
        )

    def _emit_grid(self, corner: tuple[float, float]) -> None:
        x0, y0 = self.current
        x1, y1 = corner
        step = self.style.step
        x = min(x0, x1)
        while x <= max(x0, x1) + 1e-9:
            self.prims.append(Prim(kind="poly", points=[self.style.transform(x, y0), self.style.transform(x, y1)],
                                   stroke=self.style.stroke, width_pt=self.style.width_pt))
            x += step
        y = min(y0, y1)
        while y <= max(y0, y1) + 1e-9:
            self.prims.append(Prim(kind="poly", points=[self.style.transform(x0, y), self.style.transform(x1, y)],
                                   stroke=self.style.stroke, width_pt=self.style.width_pt))
            y += step


# ---------------------------------------------------------------------------
# Command interpreter
# ---------------------------------------------------------------------------

_FOREACH_RE = re.compile(r"^\\foreach\s+(\\[A-Za-z]+)\s+in\s*", re.DOTALL)


class TikzRenderer:
    def __init__(self) -> None:
        self.colors = ColorTable()
        self.named: dict[str, tuple[float, float]] = {}
        self.prims: list[Prim] = []
        self.scope_stack: list[str] = []

    def run_body(self, body: str) -> None:
        for command in split_commands(normalize_scopes(body)):
            self.run_command(command)

    def run_command(self, command: str) -> None:
        command = command.strip()
        if not command:
            return
        if not command.startswith("\\"):
            raise TikzError(f"expected a \\command, found {command[:30]!r}")
        m = re.match(r"\\([a-zA-Z]+)", command)
        if not m:
            raise TikzError(f"malformed command {command[:30]!r}")
        name = m.group(1)
        rest = command[m.end():].strip()

        if name == "scopepush":
            opts = rest.lstrip("[").rstrip("]") if rest.startswith("[") else ""
            self.scope_stack.append(opts)
            return
        if name == "scopepop":
            if self.scope_stack:
                self.scope_stack.pop()
            return
        if name == "tikzset":
            return
        if name == "definecolor":
            dm = re.match(r"\{([^}]*)\}\{([^}]*)\}\{([^}]*)\}", rest)
            if not dm:
                raise TikzError(f"malformed \\definecolor {rest[:30]!r}")
            self.colors.define(dm.group(1).strip(), dm.group(2).strip(), dm.group(3))
            return
        if name == "foreach":
            self.run_foreach(command)
            return
        if name == "coordinate":
            cm = re.match(r"(\[[^\]]*\])?\s*\(([^)]*)\)\s*at\s*\(([^)]*)\)", rest)
            if not cm:
                raise TikzError(f"malformed \\coordinate {rest[:30]!r}")
            parser = PathParser("", Style(), self.named)
            self.named[cm.group(2).strip()] = parser.resolve_coord(cm.group(3))
            return
        if name == "node":
            nm = re.match(r"(\[[^\]]*\])?\s*(\(([^)]*)\))?\s*at\s*\(([^)]*)\)\s*\{", rest)
            if not nm:
                raise TikzError(f"malformed \\node {rest[:40]!r}")
            parser = PathParser("", Style(), self.named)
            anchor = parser.resolve_coord(nm.group(4))
            brace_start = rest.index("{", nm.end() - 1)
            label = rest[brace_start + 1: rest.rindex("}")]
            self.prims.append(Prim(kind="text", center=anchor, text=label, stroke=(0, 0, 0)))
            return
        if name not in ("draw", "fill", "filldraw", "shade", "shadedraw", "path"):
            raise TikzError(f"unsupported command \\{name}")

        opts = ""
        if rest.startswith("["):
            depth = 0
            for i, ch in enumerate(rest):
                if ch == "[":
                    depth += 1
                elif ch == "]":
                    depth -= 1
                    if depth == 0:
                        opts = rest[1:i]
                        rest = rest[i + 1:]
                        break
        scope_opts = ",".join(o for o in self.scope_stack if o)
        merged = f"{scope_opts},{opts}" if scope_opts else opts

        fill_action = name in ("fill", "filldraw", "shade", "shadedraw")
        draw_action = name in ("draw", "filldraw", "shadedraw")
        if name == "path":
            fill_action = "fill" in merged
            draw_action = "draw" in merged
        style = parse_options(merged, self.colors, Style(), fill_action, draw_action)
        parser = PathParser(rest, style, self.named)
        self.prims.extend(parser.run())

    def run_foreach(self, command: str) -> None:
        m = _FOREACH_RE.match(command)
        if not m:
            raise TikzError(f"malformed \\foreach {command[:40]!r}")
        macro = m.group(1)
        rest = command[m.end():].lstrip()
        if not rest.startswith("{"):
            raise TikzError("\\foreach expects a {list}")
        depth = 0
        for i, ch in enumerate(rest):
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    list_text = rest[1:i]
                    body = rest[i + 1:].strip()
                    break
        else:
            raise TikzError("unterminated \\foreach list")
        if not (body.startswith("{") and body.endswith("}")):
            raise TikzError("\\foreach expects a {body}")
        body = body[1:-1]

        for value in self._expand_list(list_text):
            text = body.replace(macro, value)
            for sub in split_commands(text if text.rstrip().endswith(";") else text + ";"):
                self.run_command(sub)

    @staticmethod
    def _expand_list(text: str):
        items = [p.strip() for p in split_top(text, ",")]
        i = 0
        while i < len(items):
            item = items[i]
            if item == "...":
                if i == 0 or i + 1 >= len(items):
                    raise TikzError("malformed '...' range in \\foreach")
                start = float(items[i - 1])
                step = start - float(items[i - 2]) if i >= 2 and _is_number(items[i - 2]) else 1.0
                if step == 0:
                    raise TikzError("zero step in \\foreach range")
                end = float(items[i + 1])
                value = start + step
                while (step > 0 and value <= end + 1e-9) or (step < 0 and value >= end - 1e-9):
                    yield _fmt_number(value)
                    value += step
                i += 2
                continue
            yield item
            i += 1

    # -- rasterization -------------------------------------------------------
    def render(self, output: Path) -> None:
        xs: list[float] = []
        ys: list[float] = []
        for prim in self.prims:
            if prim.kind == "text":
                xs.extend([prim.center[0] - 0.3, prim.center[0] + 0.3])
                ys.extend([prim.center[1] - 0.2, prim.center[1] + 0.2])
            else:
                xs.extend(p[0] for p in prim.points)
                ys.extend(p[1] for p in prim.points)

        if not xs:
            Image.new("RGB", (200, 200), (255, 255, 255)).save(output, format="PNG")
            return

        margin = 0.1
        x0, x1 = min(xs) - margin, max(xs) + margin
        y0, y1 = min(ys) - margin, max(ys) + margin
        extent = max(x1 - x0, y1 - y0, 1e-3)
        px_per_cm = max(30.0, min(300.0, 600.0 / extent))
        s = SUPERSAMPLE
        width = max(32, math.ceil((x1 - x0) * px_per_cm))
        height = max(32, math.ceil((y1 - y0) * px_per_cm))

        img = Image.new("RGB", (width * s, height * s), (255, 255, 255))
        draw = ImageDraw.Draw(img)

        def dev(p: tuple[float, float]) -> tuple[float, float]:
            return ((p[0] - x0) * px_per_cm * s, (y1 - p[1]) * px_per_cm * s)

        for prim in self.prims:
            if prim.kind == "text":
                draw.text(dev(prim.center), prim.text, fill=prim.stroke or (0, 0, 0), anchor="mm")
                continue
            device = [dev(p) for p in prim.points]
            if prim.fill is not None and len(device) >= 3:
                draw.polygon(device, fill=prim.fill)
            if prim.stroke is not None and len(device) >= 2:
                path = device + [device[0]] if prim.closed else device
                width_px = max(1, round(prim.width_pt / PT_PER_CM * px_per_cm * s))
                draw.line(path, fill=prim.stroke, width=width_px, joint="curve")

        img.resize((width, height), Image.LANCZOS).save(output, format="PNG")


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def _fmt_number(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else f"{value:g}"


def render_source(source: str, output: Path | str) -> None:
    renderer = TikzRenderer()
    renderer.run_body(extract_body(source))
    renderer.render(Path(output))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description="Render a TikZ-subset picture to PNG")
    parser.add_argument("texfile")
    parser.add_argument("output")
    args = parser.parse_args(argv)
    source = Path(args.texfile).read_text(encoding="utf-8")
    try:
        render_source(source, args.output)
    except TikzError as exc:
        print(f"compile error: {exc}", file=sys.stderr)
        return 21
    except RecursionError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 22
    return 0


if __name__ == "__main__":
    sys.exit(main())
