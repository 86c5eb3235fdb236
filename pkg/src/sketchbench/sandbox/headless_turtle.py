"""Display-free stand-in for the stdlib ``turtle`` module.

The render harness installs this module under ``sys.modules["turtle"]`` before
untrusted code runs, so sketches execute without a Tk display. Drawing commands
accumulate into a display list that :func:`export` rasterizes (supersampled,
then downsampled) onto a white canvas with the usual turtle coordinate system:
origin at the center, y pointing up.

Window/animation calls (``tracer``, ``speed``, ``done`` ...) are accepted and
ignored. Export happens via the harness epilogue; ``exactly one`` output file
is written per run.
"""

from __future__ import annotations

import math
from PIL import Image, ImageColor, ImageDraw

_SUPERSAMPLE = 3


class _State:
    def __init__(self) -> None:
        self.width = 640
        self.height = 480
        self.output = "turtle_out.png"
        self.bg = (255, 255, 255)
        self.colormode_value = 1.0
        self.ops: list[tuple] = []


_state = _State()


def reset_state(width: int = 640, height: int = 480, output: str = "turtle_out.png") -> None:
    global _state, _default_turtle
    _state = _State()
    _state.width, _state.height, _state.output = width, height, output
    _default_turtle = Turtle()


def _to_rgb(spec, mode=None) -> tuple[int, int, int]:
    mode = _state.colormode_value if mode is None else mode
    if isinstance(spec, str):
        return ImageColor.getrgb(spec)
    if isinstance(spec, (tuple, list)) and len(spec) == 3:
        r, g, b = spec
        if mode == 1.0:
            return (round(r * 255), round(g * 255), round(b * 255))
        return (round(r), round(g), round(b))
    raise ValueError(f"bad color specification: {spec!r}")


class Turtle:
    def __init__(self) -> None:
        self._x = 0.0
        self._y = 0.0
        self._heading = 0.0
        self._pen_down = True
        self._pen_size = 1.0
        self._pen_color = (0, 0, 0)
        self._fill_color = (0, 0, 0)
        self._filling = False
        self._fill_path: list[tuple[float, float]] = []
        self._visible = True

    # -- motion -------------------------------------------------------------
    def forward(self, distance):
        rad = math.radians(self._heading)
        self._move_to(self._x + distance * math.cos(rad), self._y + distance * math.sin(rad))

    fd = forward

    def backward(self, distance):
        self.forward(-distance)

    bk = back = backward

    def right(self, angle):
        self._heading = (self._heading - angle) % 360.0

    rt = right

    def left(self, angle):
        self._heading = (self._heading + angle) % 360.0

    lt = left

    def goto(self, x, y=None):
        if y is None:
            x, y = x
        self._move_to(float(x), float(y))

    setpos = setposition = goto

    def setx(self, x):
        self._move_to(float(x), self._y)

    def sety(self, y):
        self._move_to(self._x, float(y))

    def setheading(self, angle):
        self._heading = float(angle) % 360.0

    seth = setheading

    def home(self):
        self._move_to(0.0, 0.0)
        self._heading = 0.0

    def circle(self, radius, extent=None, steps=None):
        if extent is None:
            extent = 360.0
        if steps is None:
            steps = max(12, int(abs(extent) / 6) + 1)
        sign = 1.0 if radius >= 0 else -1.0
        r = abs(radius)
        center_angle = math.radians(self._heading + sign * 90.0)
        cx = self._x + r * math.cos(center_angle)
        cy = self._y + r * math.sin(center_angle)
        start = math.atan2(self._y - cy, self._x - cx)
        for i in range(1, steps + 1):
            theta = start + sign * math.radians(extent) * i / steps
            self._move_to(cx + r * math.cos(theta), cy + r * math.sin(theta))
        self._heading = (self._heading + sign * extent) % 360.0

    def dot(self, size=None, *color):
        if size is None:
            size = max(self._pen_size + 4, 2 * self._pen_size)
        rgb = _to_rgb(color[0] if len(color) == 1 else color) if color else self._pen_color
        _state.ops.append(("dot", self._x, self._y, float(size), rgb))

    def speed(self, *_args, **_kwargs):
        return 0

    def _move_to(self, x, y):
        if self._pen_down:
            _state.ops.append(
                ("line", self._x, self._y, x, y, self._pen_color, self._pen_size)
            )
        if self._filling:
            self._fill_path.append((x, y))
        self._x, self._y = x, y

    # -- pen state ------------------------------------------------------------
    def penup(self):
        self._pen_down = False

    pu = up = penup

    def pendown(self):
        self._pen_down = True

    pd = down = pendown

    def isdown(self):
        return self._pen_down

    def pensize(self, width=None):
        if width is None:
            return self._pen_size
        self._pen_size = float(width)

    width = pensize

    def pencolor(self, *args):
        if not args:
            return self._pen_color
        self._pen_color = _to_rgb(args[0] if len(args) == 1 else args)

    def fillcolor(self, *args):
        if not args:
            return self._fill_color
        self._fill_color = _to_rgb(args[0] if len(args) == 1 else args)

    def color(self, *args):
        if not args:
            return self._pen_color, self._fill_color
        if len(args) == 2:
            self.pencolor(args[0])
            self.fillcolor(args[1])
        else:
            self.pencolor(*args)
            self.fillcolor(*args)

    def filling(self):
        return self._filling

    def begin_fill(self):
        self._filling = True
        self._fill_path = [(self._x, self._y)]
        self._fill_marker = len(_state.ops)

    def end_fill(self):
        if self._filling and len(self._fill_path) >= 3:
            # Insert the fill before the outline segments drawn while filling,
            # so the border stays visible like on a real turtle canvas.
            _state.ops.insert(
                getattr(self, "_fill_marker", len(_state.ops)),
                ("poly", list(self._fill_path), self._fill_color),
            )
        self._filling = False
        self._fill_path = []

    def write(self, arg, move=False, align="left", font=("Arial", 8, "normal")):
        _state.ops.append(("text", self._x, self._y, str(arg), self._pen_color))

    # -- queries ----------------------------------------------------------------
    def position(self):
        return (self._x, self._y)

    pos = position

    def xcor(self):
        return self._x

    def ycor(self):
        return self._y

    def heading(self):
        return self._heading

    def towards(self, x, y=None):
        if y is None:
            x, y = x
        return math.degrees(math.atan2(y - self._y, x - self._x)) % 360.0

    def distance(self, x, y=None):
        if y is None:
            x, y = x
        return math.hypot(x - self._x, y - self._y)

    # -- appearance / housekeeping (mostly no-ops off-screen) --------------------
    def hideturtle(self):
        self._visible = False

    ht = hideturtle

    def showturtle(self):
        self._visible = True

    st = showturtle

    def isvisible(self):
        return self._visible

    def shape(self, *_args):
        return "classic"

    def shapesize(self, *_args, **_kwargs):
        return None

    def stamp(self):
        return 0

    def clear(self):
        _state.ops.clear()

    def reset(self):
        self.clear()
        self.__init__()


class Pen(Turtle):
    pass


RawTurtle = Turtle


class _Screen:
    def setup(self, width=640, height=480, *_args, **_kwargs):
        _state.width, _state.height = int(width), int(height)

    def screensize(self, canvwidth=None, canvheight=None, bg=None):
        if canvwidth and canvheight:
            _state.width, _state.height = int(canvwidth), int(canvheight)
        if bg is not None:
            self.bgcolor(bg)
        return (_state.width, _state.height)

    def bgcolor(self, *args):
        if not args:
            return _state.bg
        _state.bg = _to_rgb(args[0] if len(args) == 1 else args)

    def colormode(self, cmode=None):
        if cmode is None:
            return _state.colormode_value
        if cmode not in (1.0, 255):
            raise ValueError("colormode must be 1.0 or 255")
        _state.colormode_value = cmode

    def window_width(self):
        return _state.width

    def window_height(self):
        return _state.height

    def title(self, *_args):
        pass

    def tracer(self, *_args, **_kwargs):
        pass

    def update(self):
        pass

    def delay(self, *_args):
        return 0

    def mainloop(self):
        pass

    done = mainloop

    def exitonclick(self):
        pass

    def bye(self):
        pass

    def clearscreen(self):
        _state.ops.clear()

    resetscreen = clearscreen


_screen = _Screen()
_default_turtle = Turtle()


def Screen() -> _Screen:
    return _screen


def export(path: str | None = None) -> str:
    """Rasterize the display list and write the PNG; called by the harness epilogue."""
    path = path or _state.output
    s = _SUPERSAMPLE
    w, h = _state.width, _state.height
    img = Image.new("RGB", (w * s, h * s), _state.bg)
    draw = ImageDraw.Draw(img)

    def dev(x: float, y: float) -> tuple[float, float]:
        return ((w / 2 + x) * s, (h / 2 - y) * s)

    for op in _state.ops:
        kind = op[0]
        if kind == "line":
            _, x0, y0, x1, y1, rgb, width = op
            lw = max(1, round(width * s))
            p0, p1 = dev(x0, y0), dev(x1, y1)
            draw.line([p0, p1], fill=rgb, width=lw)
            if lw > 2:  # round the joints
                r = lw / 2
                for px, py in (p0, p1):
                    draw.ellipse([px - r, py - r, px + r, py + r], fill=rgb)
        elif kind == "poly":
            _, pts, rgb = op
            draw.polygon([dev(x, y) for x, y in pts], fill=rgb)
        elif kind == "dot":
            _, x, y, size, rgb = op
            px, py = dev(x, y)
            r = size * s / 2
            draw.ellipse([px - r, py - r, px + r, py + r], fill=rgb)
        elif kind == "text":
            _, x, y, text, rgb = op
            draw.text(dev(x, y), text, fill=rgb)

    img = img.resize((w, h), Image.LANCZOS)
    img.save(path, format="PNG")
    return path


# ---------------------------------------------------------------------------
# Module-level API operating on an anonymous default turtle, mirroring stdlib.
# ---------------------------------------------------------------------------

def _expose(name):
    def fn(*args, **kwargs):
        return getattr(_default_turtle, name)(*args, **kwargs)

    fn.__name__ = name
    return fn


for _name in (
    "forward", "fd", "backward", "bk", "back", "right", "rt", "left", "lt",
    "goto", "setpos", "setposition", "setx", "sety", "setheading", "seth",
    "home", "circle", "dot", "speed", "penup", "pu", "up", "pendown", "pd",
    "down", "isdown", "pensize", "width", "pencolor", "fillcolor", "color",
    "filling", "begin_fill", "end_fill", "write", "position", "pos", "xcor",
    "ycor", "heading", "towards", "distance", "hideturtle", "ht", "showturtle",
    "st", "isvisible", "shape", "shapesize", "stamp", "clear", "reset",
):
    globals()[_name] = _expose(_name)


def bgcolor(*args):
    return _screen.bgcolor(*args)


def colormode(cmode=None):
    return _screen.colormode(cmode)


def setup(width=640, height=480, *args, **kwargs):
    _screen.setup(width, height, *args, **kwargs)


def screensize(*args, **kwargs):
    return _screen.screensize(*args, **kwargs)


def title(*args):
    pass


def tracer(*args, **kwargs):
    pass


def update():
    pass


def delay(*args):
    return 0


def mainloop():
    pass


def done():
    pass


def exitonclick():
    pass


def bye():
    pass


def window_width():
    return _state.width


def window_height():
    return _state.height


def clearscreen():
    _screen.clearscreen()


def resetscreen():
    _screen.clearscreen()
