"""Interpreter for the 2D-drawing subset of the Processing language.

Used as the default sketch runner when no ``processing-java`` binary is
configured: sketches execute inside an isolated subprocess
(``python -m sketchbench.sandbox.processing_runtime sketch.pde out.png``)
and rasterize through Pillow. The subset covers what drawing-oriented sketches
use in practice: ``settings``/``setup``/``draw`` (one frame), user functions,
numeric variables, control flow, the primitive-shape API, transforms, and
seeded ``random``. Arrays, classes, strings-as-data, and image/IO calls are
out of scope and fail with clear errors.

Exit codes: 0 ok, 21 parse (compile) error, 22 runtime error.
"""

from __future__ import annotations

import argparse
import math
import random
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from PIL import Image, ImageDraw

SUPERSAMPLE = 2
MAX_CANVAS = 2000

TYPE_WORDS = {"void", "int", "float", "boolean", "color", "long", "double", "char", "String"}
KEYWORDS = TYPE_WORDS | {"if", "else", "for", "while", "return", "true", "false", "new"}


class SketchParseError(Exception):
    pass


class SketchRuntimeError(Exception):
    pass


class _Exit(Exception):
    pass


class _Return(Exception):
    def __init__(self, value):
        self.value = value


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*|/\*.*?\*/)
  | (?P<hexcolor>\#[0-9a-fA-F]{6})
  | (?P<number>(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?)
  | (?P<string>"(\\.|[^"\\])*")
  | (?P<char>'(\\.|[^'\\])')
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\+\+|--|\+=|-=|\*=|/=|%=|==|!=|<=|>=|&&|\|\||[-+*/%=<>!?:;,(){}\[\]])
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if not m:
            raise SketchParseError(f"line {line}: unexpected character {source[pos]!r}")
        text = m.group(0)
        kind = m.lastgroup or "op"
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, text, line))
        line += text.count("\n")
        pos = m.end()
    tokens.append(Token("eof", "", line))
    return tokens


# ---------------------------------------------------------------------------
# AST + parser (recursive descent)
# ---------------------------------------------------------------------------

@dataclass
class FuncDef:
    name: str
    params: list[str]
    body: list
    line: int


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise SketchParseError(f"line {tok.line}: expected {text!r}, found {tok.text!r}")
        return tok

    def parse_program(self) -> tuple[list, dict[str, FuncDef]]:
        statements: list = []
        functions: dict[str, FuncDef] = {}
        while self.peek().kind != "eof":
            if (
                self.peek().text in TYPE_WORDS
                and self.peek(1).kind == "ident"
                and self.peek(2).text == "("
            ):
                fn = self.parse_funcdef()
                functions[fn.name] = fn
            else:
                statements.append(self.parse_statement())
        return statements, functions

    def parse_funcdef(self) -> FuncDef:
        line = self.next().line          # return type
        name = self.next().text
        self.expect("(")
        params: list[str] = []
        while self.peek().text != ")":
            if self.peek().text in TYPE_WORDS:
                self.next()
            if self.peek().text == "[":
                raise SketchParseError(f"line {self.peek().line}: arrays are not supported")
            params.append(self.next().text)
            if self.peek().text == ",":
                self.next()
        self.expect(")")
        body = self.parse_block()
        return FuncDef(name, params, body, line)

    def parse_block(self) -> list:
        self.expect("{")
        statements = []
        while self.peek().text != "}":
            if self.peek().kind == "eof":
                raise SketchParseError(f"line {self.peek().line}: unterminated block")
            statements.append(self.parse_statement())
        self.expect("}")
        return statements

    def parse_statement(self):
        tok = self.peek()
        if tok.text == "{":
            return ("block", self.parse_block())
        if tok.text == ";":
            self.next()
            return ("nop",)
        if tok.text == "if":
            return self.parse_if()
        if tok.text == "for":
            return self.parse_for()
        if tok.text == "while":
            return self.parse_while()
        if tok.text == "return":
            self.next()
            value = None if self.peek().text == ";" else self.parse_expr()
            self.expect(";")
            return ("return", value)
        if tok.text in TYPE_WORDS:
            stmt = self.parse_vardecl()
            self.expect(";")
            return stmt
        stmt = self.parse_simple()
        self.expect(";")
        return stmt

    def parse_vardecl(self):
        self.next()  # type word
        if self.peek().text == "[":
            raise SketchParseError(f"line {self.peek().line}: arrays are not supported")
        decls = []
        while True:
            name_tok = self.next()
            if name_tok.kind != "ident":
                raise SketchParseError(
                    f"line {name_tok.line}: expected variable name, found {name_tok.text!r}"
                )
            if self.peek().text == "[":
                raise SketchParseError(f"line {self.peek().line}: arrays are not supported")
            value = None
            if self.peek().text == "=":
                self.next()
                value = self.parse_expr()
            decls.append((name_tok.text, value))
            if self.peek().text != ",":
                break
            self.next()
        return ("decl", decls)

    def parse_simple(self):
        """Assignment, increment/decrement, or a bare expression (typically a call)."""
        tok = self.peek()
        if tok.kind == "ident":
            nxt = self.peek(1).text
            if nxt in ("=", "+=", "-=", "*=", "/=", "%="):
                name = self.next().text
                op = self.next().text
                return ("assign", name, op, self.parse_expr())
            if nxt in ("++", "--"):
                name = self.next().text
                op = self.next().text
                return ("assign", name, "+=" if op == "++" else "-=", ("num", 1.0))
        if tok.text in ("++", "--"):
            op = self.next().text
            name = self.next().text
            return ("assign", name, "+=" if op == "++" else "-=", ("num", 1.0))
        return ("expr", self.parse_expr())

    def parse_if(self):
        self.expect("if")
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        then = self.parse_statement()
        otherwise = None
        if self.peek().text == "else":
            self.next()
            otherwise = self.parse_statement()
        return ("if", cond, then, otherwise)

    def parse_for(self):
        self.expect("for")
        self.expect("(")
        init = None
        if self.peek().text != ";":
            init = self.parse_vardecl() if self.peek().text in TYPE_WORDS else self.parse_simple()
        self.expect(";")
        cond = None if self.peek().text == ";" else self.parse_expr()
        self.expect(";")
        update = None if self.peek().text == ")" else self.parse_simple()
        self.expect(")")
        body = self.parse_statement()
        return ("for", init, cond, update, body)

    def parse_while(self):
        self.expect("while")
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        return ("while", cond, self.parse_statement())

    # -- expressions, lowest to highest precedence ---------------------------
    def parse_expr(self):
        return self.parse_ternary()

    def parse_ternary(self):
        cond = self.parse_or()
        if self.peek().text == "?":
            self.next()
            then = self.parse_expr()
            self.expect(":")
            otherwise = self.parse_expr()
            return ("ternary", cond, then, otherwise)
        return cond

    def _binary(self, sub, ops):
        node = sub()
        while self.peek().text in ops:
            op = self.next().text
            node = ("bin", op, node, sub())
        return node

    def parse_or(self):
        return self._binary(self.parse_and, ("||",))

    def parse_and(self):
        return self._binary(self.parse_equality, ("&&",))

    def parse_equality(self):
        return self._binary(self.parse_relational, ("==", "!="))

    def parse_relational(self):
        return self._binary(self.parse_additive, ("<", "<=", ">", ">="))

    def parse_additive(self):
        return self._binary(self.parse_multiplicative, ("+", "-"))

    def parse_multiplicative(self):
        return self._binary(self.parse_unary, ("*", "/", "%"))

    def parse_unary(self):
        tok = self.peek()
        if tok.text in ("-", "+", "!"):
            self.next()
            return ("unary", tok.text, self.parse_unary())
        return self.parse_primary()

    def parse_primary(self):
        tok = self.next()
        if tok.kind == "number":
            return ("num", float(tok.text))
        if tok.kind == "hexcolor":
            value = tok.text.lstrip("#")
            return ("color", (int(value[0:2], 16), int(value[2:4], 16), int(value[4:6], 16)))
        if tok.kind == "string":
            return ("str", tok.text[1:-1].replace('\\"', '"').replace("\\\\", "\\"))
        if tok.kind == "char":
            return ("str", tok.text[1:-1])
        if tok.text == "(":
            # Either a grouped expression or a C-style cast like (int) x.
            if self.peek().text in TYPE_WORDS and self.peek(1).text == ")":
                cast = self.next().text
                self.expect(")")
                return ("call", cast if cast in ("int", "float") else "float", [self.parse_unary()])
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.text == "true":
            return ("num", 1.0)
        if tok.text == "false":
            return ("num", 0.0)
        if tok.kind == "ident" or tok.text in TYPE_WORDS:
            if self.peek().text == "(":
                self.next()
                args = []
                while self.peek().text != ")":
                    args.append(self.parse_expr())
                    if self.peek().text == ",":
                        self.next()
                self.expect(")")
                return ("call", tok.text, args)
            if self.peek().text == "[":
                raise SketchParseError(f"line {tok.line}: arrays are not supported")
            return ("var", tok.text)
        raise SketchParseError(f"line {tok.line}: unexpected token {tok.text!r}")


# ---------------------------------------------------------------------------
# Graphics state
# ---------------------------------------------------------------------------

def _clamp8(v: float) -> int:
    return max(0, min(255, round(v)))


def _color_from_args(args) -> tuple[int, int, int]:
    if len(args) == 1 and isinstance(args[0], tuple):
        return args[0]
    nums = [a for a in args if isinstance(a, (int, float))]
    if len(nums) == 1:
        g = _clamp8(nums[0])
        return (g, g, g)
    if len(nums) == 2:  # gray + alpha; alpha ignored
        g = _clamp8(nums[0])
        return (g, g, g)
    if len(nums) >= 3:
        return (_clamp8(nums[0]), _clamp8(nums[1]), _clamp8(nums[2]))
    raise SketchRuntimeError(f"bad color arguments: {args!r}")


class Graphics:
    def __init__(self, output: Path):
        self.output = output
        self.width = 100
        self.height = 100
        self.fill_color: tuple[int, int, int] | None = (255, 255, 255)
        self.stroke_color: tuple[int, int, int] | None = (0, 0, 0)
        self.stroke_weight = 1.0
        self.ellipse_mode = "CENTER"
        self.rect_mode = "CORNER"
        self.matrix = (1.0, 0.0, 0.0, 1.0, 0.0, 0.0)  # a b c d e f
        self.matrix_stack: list[tuple] = []
        self.shape_vertices: list[tuple[float, float]] | None = None
        self._new_canvas()

    def _new_canvas(self):
        s = SUPERSAMPLE
        self.img = Image.new("RGB", (self.width * s, self.height * s), (204, 204, 204))
        self.draw = ImageDraw.Draw(self.img)

    def size(self, w: float, h: float):
        self.width = max(1, min(MAX_CANVAS, int(w)))
        self.height = max(1, min(MAX_CANVAS, int(h)))
        self._new_canvas()

    def xform(self, x: float, y: float) -> tuple[float, float]:
        a, b, c, d, e, f = self.matrix
        return ((a * x + c * y + e) * SUPERSAMPLE, (b * x + d * y + f) * SUPERSAMPLE)

    def translate(self, tx: float, ty: float):
        a, b, c, d, e, f = self.matrix
        self.matrix = (a, b, c, d, a * tx + c * ty + e, b * tx + d * ty + f)

    def rotate(self, angle: float):
        a, b, c, d, e, f = self.matrix
        ca, sa = math.cos(angle), math.sin(angle)
        self.matrix = (a * ca + c * sa, b * ca + d * sa, -a * sa + c * ca, -b * sa + d * ca, e, f)

    def scale(self, sx: float, sy: float | None = None):
        sy = sx if sy is None else sy
        a, b, c, d, e, f = self.matrix
        self.matrix = (a * sx, b * sx, c * sy, d * sy, e, f)

    def push(self):
        self.matrix_stack.append(self.matrix)

    def pop(self):
        if self.matrix_stack:
            self.matrix = self.matrix_stack.pop()

    # -- drawing ---------------------------------------------------------------
    def background(self, rgb: tuple[int, int, int]):
        self.draw.rectangle([0, 0, self.img.width, self.img.height], fill=rgb)

    def _stroke_px(self) -> int:
        return max(1, round(self.stroke_weight * SUPERSAMPLE))

    def _emit(self, pts: list[tuple[float, float]], closed: bool):
        device = [self.xform(x, y) for x, y in pts]
        if self.fill_color is not None and closed and len(device) >= 3:
            self.draw.polygon(device, fill=self.fill_color)
        if self.stroke_color is not None:
            path = device + [device[0]] if closed else device
            w = self._stroke_px()
            self.draw.line(path, fill=self.stroke_color, width=w, joint="curve")
            if w > 2:
                r = w / 2
                for px, py in path:
                    self.draw.ellipse([px - r, py - r, px + r, py + r], fill=self.stroke_color)

    def _ellipse_points(self, cx, cy, rx, ry, start=0.0, stop=2 * math.pi, segments=96):
        span = stop - start
        n = max(8, int(segments * abs(span) / (2 * math.pi)))
        return [
            (cx + rx * math.cos(start + span * i / n), cy + ry * math.sin(start + span * i / n))
            for i in range(n + 1)
        ]

    def ellipse(self, x, y, w, h):
        if self.ellipse_mode == "CORNER":
            cx, cy, rx, ry = x + w / 2, y + h / 2, abs(w) / 2, abs(h) / 2
        elif self.ellipse_mode == "RADIUS":
            cx, cy, rx, ry = x, y, abs(w), abs(h)
        elif self.ellipse_mode == "CORNERS":
            cx, cy, rx, ry = (x + w) / 2, (y + h) / 2, abs(w - x) / 2, abs(h - y) / 2
        else:
            cx, cy, rx, ry = x, y, abs(w) / 2, abs(h) / 2
        self._emit(self._ellipse_points(cx, cy, rx, ry)[:-1], closed=True)

    def arc(self, x, y, w, h, start, stop):
        cx, cy, rx, ry = x, y, abs(w) / 2, abs(h) / 2
        pts = self._ellipse_points(cx, cy, rx, ry, start, stop)
        if self.fill_color is not None:
            device = [self.xform(*p) for p in ([(cx, cy)] + pts)]
            self.draw.polygon(device, fill=self.fill_color)
        if self.stroke_color is not None:
            device = [self.xform(*p) for p in pts]
            self.draw.line(device, fill=self.stroke_color, width=self._stroke_px(), joint="curve")

    def rect(self, x, y, w, h):
        if self.rect_mode == "CENTER":
            x0, y0, x1, y1 = x - w / 2, y - h / 2, x + w / 2, y + h / 2
        elif self.rect_mode == "CORNERS":
            x0, y0, x1, y1 = x, y, w, h
        elif self.rect_mode == "RADIUS":
            x0, y0, x1, y1 = x - w, y - h, x + w, y + h
        else:
            x0, y0, x1, y1 = x, y, x + w, y + h
        self._emit([(x0, y0), (x1, y0), (x1, y1), (x0, y1)], closed=True)

    def line(self, x0, y0, x1, y1):
        if self.stroke_color is None:
            return
        p0, p1 = self.xform(x0, y0), self.xform(x1, y1)
        w = self._stroke_px()
        self.draw.line([p0, p1], fill=self.stroke_color, width=w)
        if w > 2:
            r = w / 2
            for px, py in (p0, p1):
                self.draw.ellipse([px - r, py - r, px + r, py + r], fill=self.stroke_color)

    def point(self, x, y):
        if self.stroke_color is None:
            return
        px, py = self.xform(x, y)
        r = max(1.0, self.stroke_weight * SUPERSAMPLE / 2)
        self.draw.ellipse([px - r, py - r, px + r, py + r], fill=self.stroke_color)

    def save(self):
        out = self.img.resize((self.width, self.height), Image.LANCZOS)
        out.save(self.output, format="PNG")


# ---------------------------------------------------------------------------
# Evaluator
# ---------------------------------------------------------------------------

class Interpreter:
    def __init__(self, graphics: Graphics, seed: int = 0):
        self.g = graphics
        self.rng = random.Random(seed)
        self.globals: dict[str, object] = {}
        self.functions: dict[str, FuncDef] = {}
        self.saved = False

    # constants resolved as variables
    _CONSTANTS = {
        "PI": math.pi,
        "TWO_PI": 2 * math.pi,
        "HALF_PI": math.pi / 2,
        "QUARTER_PI": math.pi / 4,
        "CENTER": "CENTER",
        "CORNER": "CORNER",
        "CORNERS": "CORNERS",
        "RADIUS": "RADIUS",
        "CLOSE": "CLOSE",
        "mouseX": 0.0,
        "mouseY": 0.0,
        "frameCount": 1.0,
    }

    def run(self, source: str):
        statements, functions = Parser(tokenize(source)).parse_program()
        self.functions = functions
        try:
            for stmt in statements:
                self.exec_stmt(stmt, self.globals)
            for hook in ("settings", "setup", "draw"):
                if hook in functions:
                    self.call_function(hook, [])
        except _Exit:
            pass
        self.g.save()

    def call_function(self, name: str, args: list):
        fn = self.functions[name]
        if len(args) != len(fn.params):
            raise SketchRuntimeError(
                f"{name}() takes {len(fn.params)} arguments, got {len(args)}"
            )
        scope = dict(zip(fn.params, args))
        try:
            for stmt in fn.body:
                self.exec_stmt(stmt, scope)
        except _Return as ret:
            return ret.value
        return None

    def exec_stmt(self, stmt, scope: dict):
        kind = stmt[0]
        if kind == "nop":
            return
        if kind == "block":
            for inner in stmt[1]:
                self.exec_stmt(inner, scope)
        elif kind == "decl":
            for name, value in stmt[1]:
                scope[name] = 0.0 if value is None else self.eval(value, scope)
        elif kind == "assign":
            _, name, op, expr = stmt
            value = self.eval(expr, scope)
            target = scope if name in scope or name not in self.globals else self.globals
            if op != "=":
                current = self._lookup(name, scope)
                if op == "+=":
                    value = current + value
                elif op == "-=":
                    value = current - value
                elif op == "*=":
                    value = current * value
                elif op == "/=":
                    value = current / value
                elif op == "%=":
                    value = math.fmod(current, value)
            target[name] = value
        elif kind == "expr":
            self.eval(stmt[1], scope)
        elif kind == "if":
            _, cond, then, otherwise = stmt
            if self._truthy(self.eval(cond, scope)):
                self.exec_stmt(then, scope)
            elif otherwise is not None:
                self.exec_stmt(otherwise, scope)
        elif kind == "for":
            _, init, cond, update, body = stmt
            if init is not None:
                self.exec_stmt(init, scope)
            while cond is None or self._truthy(self.eval(cond, scope)):
                self.exec_stmt(body, scope)
                if update is not None:
                    self.exec_stmt(update, scope)
        elif kind == "while":
            _, cond, body = stmt
            while self._truthy(self.eval(cond, scope)):
                self.exec_stmt(body, scope)
        elif kind == "return":
            raise _Return(None if stmt[1] is None else self.eval(stmt[1], scope))
        else:
            raise SketchRuntimeError(f"unhandled statement {kind!r}")

    @staticmethod
    def _truthy(value) -> bool:
        return bool(value) if not isinstance(value, float) else value != 0.0

    def _lookup(self, name: str, scope: dict):
        if name in scope:
            return scope[name]
        if name in self.globals:
            return self.globals[name]
        if name == "width":
            return float(self.g.width)
        if name == "height":
            return float(self.g.height)
        if name in self._CONSTANTS:
            return self._CONSTANTS[name]
        raise SketchRuntimeError(f"undefined variable {name!r}")

    def eval(self, node, scope: dict):
        kind = node[0]
        if kind == "num":
            return node[1]
        if kind == "str":
            return node[1]
        if kind == "color":
            return node[1]
        if kind == "var":
            return self._lookup(node[1], scope)
        if kind == "unary":
            value = self.eval(node[2], scope)
            if node[1] == "-":
                return -value
            if node[1] == "+":
                return value
            return 0.0 if self._truthy(value) else 1.0
        if kind == "bin":
            return self._binop(node[1], node[2], node[3], scope)
        if kind == "ternary":
            return (
                self.eval(node[2], scope)
                if self._truthy(self.eval(node[1], scope))
                else self.eval(node[3], scope)
            )
        if kind == "call":
            return self.call(node[1], [self.eval(a, scope) for a in node[2]])
        raise SketchRuntimeError(f"unhandled expression {kind!r}")

    def _binop(self, op, left_node, right_node, scope):
        if op == "&&":
            return 1.0 if self._truthy(self.eval(left_node, scope)) and self._truthy(self.eval(right_node, scope)) else 0.0
        if op == "||":
            return 1.0 if self._truthy(self.eval(left_node, scope)) or self._truthy(self.eval(right_node, scope)) else 0.0
        left = self.eval(left_node, scope)
        right = self.eval(right_node, scope)
        if op == "+":
            if isinstance(left, str) or isinstance(right, str):
                return f"{left}{right}"
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if op == "/":
            if right == 0:
                raise SketchRuntimeError("division by zero")
            return left / right
        if op == "%":
            return math.fmod(left, right)
        if op == "==":
            return 1.0 if left == right else 0.0
        if op == "!=":
            return 1.0 if left != right else 0.0
        if op == "<":
            return 1.0 if left < right else 0.0
        if op == "<=":
            return 1.0 if left <= right else 0.0
        if op == ">":
            return 1.0 if left > right else 0.0
        if op == ">=":
            return 1.0 if left >= right else 0.0
        raise SketchRuntimeError(f"unhandled operator {op!r}")

    # -- builtin calls -----------------------------------------------------------
    def call(self, name: str, args: list):
        g = self.g
        if name in self.functions:
            return self.call_function(name, args)

        if name == "size":
            g.size(args[0], args[1])
            return None
        if name == "background":
            g.background(_color_from_args(args))
            return None
        if name == "fill":
            g.fill_color = _color_from_args(args)
            return None
        if name == "noFill":
            g.fill_color = None
            return None
        if name == "stroke":
            g.stroke_color = _color_from_args(args)
            return None
        if name == "noStroke":
            g.stroke_color = None
            return None
        if name == "strokeWeight":
            g.stroke_weight = float(args[0])
            return None
        if name == "ellipseMode":
            g.ellipse_mode = str(args[0])
            return None
        if name == "rectMode":
            g.rect_mode = str(args[0])
            return None
        if name == "ellipse":
            g.ellipse(*args[:4])
            return None
        if name == "circle":
            g.ellipse(args[0], args[1], args[2], args[2])
            return None
        if name == "arc":
            g.arc(*args[:6])
            return None
        if name == "rect":
            g.rect(*args[:4])
            return None
        if name == "square":
            g.rect(args[0], args[1], args[2], args[2])
            return None
        if name == "line":
            g.line(*args[:4])
            return None
        if name == "point":
            g.point(*args[:2])
            return None
        if name == "triangle":
            g._emit([(args[0], args[1]), (args[2], args[3]), (args[4], args[5])], closed=True)
            return None
        if name == "quad":
            g._emit(
                [(args[0], args[1]), (args[2], args[3]), (args[4], args[5]), (args[6], args[7])],
                closed=True,
            )
            return None
        if name == "beginShape":
            g.shape_vertices = []
            return None
        if name == "vertex":
            if g.shape_vertices is None:
                raise SketchRuntimeError("vertex() outside beginShape()/endShape()")
            g.shape_vertices.append((args[0], args[1]))
            return None
        if name == "endShape":
            if g.shape_vertices is None:
                raise SketchRuntimeError("endShape() without beginShape()")
            closed = bool(args) and args[0] == "CLOSE"
            if len(g.shape_vertices) >= 2:
                g._emit(g.shape_vertices, closed=closed)
            g.shape_vertices = None
            return None
        if name == "translate":
            g.translate(args[0], args[1])
            return None
        if name == "rotate":
            g.rotate(args[0])
            return None
        if name == "scale":
            g.scale(*args[:2])
            return None
        if name in ("pushMatrix", "push"):
            g.push()
            return None
        if name in ("popMatrix", "pop"):
            g.pop()
            return None
        if name in ("saveFrame", "save"):
            g.save()
            self.saved = True
            return None
        if name == "exit":
            raise _Exit()
        if name in ("noLoop", "loop", "smooth", "noSmooth", "frameRate", "delay", "strokeCap",
                    "strokeJoin", "textSize", "textAlign", "text", "print", "println",
                    "colorMode", "noCursor", "cursor"):
            return None  # accepted, irrelevant off-screen (text is out of subset scope)
        if name == "color":
            return _color_from_args(args)
        if name == "random":
            if len(args) == 1:
                return self.rng.uniform(0.0, float(args[0]))
            return self.rng.uniform(float(args[0]), float(args[1]))
        if name == "randomSeed":
            self.rng.seed(int(args[0]))
            return None

        mathfns = {
            "abs": abs, "sqrt": math.sqrt, "sin": math.sin, "cos": math.cos,
            "tan": math.tan, "atan2": math.atan2, "atan": math.atan, "asin": math.asin,
            "acos": math.acos, "radians": math.radians, "degrees": math.degrees,
            "floor": math.floor, "ceil": math.ceil, "round": round, "exp": math.exp,
            "log": math.log, "pow": math.pow, "min": min, "max": max,
        }
        if name in mathfns:
            return float(mathfns[name](*args))
        if name == "int":
            return float(int(args[0]))
        if name == "float":
            return float(args[0])
        if name == "map":
            v, a, b, c, d = args[:5]
            return c + (d - c) * ((v - a) / (b - a))
        if name == "constrain":
            return max(args[1], min(args[2], args[0]))
        if name == "dist":
            return math.hypot(args[2] - args[0], args[3] - args[1])
        if name == "lerp":
            return args[0] + (args[1] - args[0]) * args[2]

        raise SketchRuntimeError(f"unknown function {name!r}")


def run_source(source: str, output: Path | str, seed: int = 0) -> None:
    graphics = Graphics(Path(output))
    Interpreter(graphics, seed=seed).run(source)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description="Run a Processing-subset sketch headlessly")
    parser.add_argument("sketch")
    parser.add_argument("output")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    source = Path(args.sketch).read_text(encoding="utf-8")
    try:
        run_source(source, args.output, seed=args.seed)
    except SketchParseError as exc:
        print(f"compile error: {exc}", file=sys.stderr)
        return 21
    except (SketchRuntimeError, OverflowError, RecursionError, ZeroDivisionError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 22
    return 0


if __name__ == "__main__":
    sys.exit(main())
