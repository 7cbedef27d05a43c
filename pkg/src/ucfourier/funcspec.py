"""Compact function specifications used by the CLI and experiments.

Grammar::

    spec  := atom | comb
    atom  := "e:" INT | "g:" INT | "dirichlet:" INT | "fejer:" INT
           | "rand:" INT ":" INT [":unit"] | "file:" PATH
    comb  := "scale:" NUMBER ":(" spec ")"
           | "sum:(" spec "):(" spec ")"
           | "mod:" INT ":(" spec ")"

``NUMBER`` is any literal accepted by :class:`complex` (``2.5``, ``-1j``,
``1+2j``).  ``PATH`` extends to the end of the text or the closing
parenthesis of the enclosing combinator.
"""

from __future__ import annotations

from typing import Sequence

from .constructions import dirichlet, exponential, fejer, random_trig_poly, salem_g
from .errors import DomainError, SpecParseError
from .trigpoly import TrigPoly, modulate, read_coefficients


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise SpecParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek_word(self) -> str:
        end = self.text.find(":", self.pos)
        if end < 0:
            self.fail("expected ':'")
        return self.text[self.pos:end]

    def expect(self, s: str) -> None:
        if not self.text.startswith(s, self.pos):
            self.fail(f"expected {s!r}")
        self.pos += len(s)

    def token(self) -> str:
        # up to the next ':' or ')' or end
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ":)":
            self.pos += 1
        if self.pos == start:
            self.fail("empty token")
        return self.text[start:self.pos]

    def integer(self) -> int:
        tok = self.token()
        try:
            return int(tok)
        except ValueError:
            self.fail(f"expected integer, got {tok!r}")

    def nonneg(self, name: str, minimum: int = 0) -> int:
        v = self.integer()
        if v < minimum:
            self.fail(f"{name} order must be >= {minimum}")
        return v

    def group(self) -> TrigPoly:
        self.expect("(")
        p = self.spec()
        self.expect(")")
        return p

    def path(self) -> str:
        # balanced-paren scan so paths may contain '(' ')' pairs
        start, depth = self.pos, 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            self.pos += 1
        if self.pos == start:
            self.fail("empty path")
        return self.text[start:self.pos]

    def spec(self) -> TrigPoly:
        word = self.peek_word()
        self.pos += len(word) + 1
        if word == "e":
            return exponential(self.integer())
        if word == "g":
            return salem_g(self.nonneg("g", 1))
        if word == "dirichlet":
            return dirichlet(self.nonneg("dirichlet"))
        if word == "fejer":
            return fejer(self.nonneg("fejer", 1))
        if word == "rand":
            K = self.nonneg("rand")
            self.expect(":")
            seed = self.nonneg("seed")
            norm = "none"
            if self.text.startswith(":unit", self.pos):
                self.pos += 5
                norm = "unit_sup_norm"
            return random_trig_poly(K, seed, norm)
        if word == "file":
            try:
                return read_coefficients(self.path())
            except OSError as exc:
                raise SpecParseError(f"cannot read coefficient file: {exc}") from exc
        if word == "scale":
            tok = self.token()
            try:
                c = complex(tok)
            except ValueError:
                self.fail(f"bad scale factor {tok!r}")
            self.expect(":")
            p = self.group()
            return p * (c.real if c.imag == 0 else c)
        if word == "sum":
            a = self.group()
            self.expect(":")
            return a + self.group()
        if word == "mod":
            n = self.integer()
            self.expect(":")
            return modulate(self.group(), n)
        self.fail(f"unknown function kind {word!r}")


def parse_function(text: str) -> TrigPoly:
    """Build the polynomial described by ``text``.

    Examples
    --------
    >>> parse_function("mod:3:(g:4)").degree
    6
    >>> parse_function("sum:(e:1):(e:-1)")(0.0).real
    2.0
    """
    text = text.strip()
    if not text:
        raise SpecParseError("empty function spec")
    parser = _Parser(text)
    try:
        p = parser.spec()
    except DomainError:
        raise
    except (ValueError, IndexError) as exc:
        raise SpecParseError(f"malformed spec {text!r}: {exc}") from exc
    if parser.pos != len(text):
        parser.fail("trailing characters")
    return p


def parse_n_list(text: str) -> list[int]:
    """Parse ``"2,4,...,64"`` style lists; ``...`` continues by doubling.

    The element before ``...`` is doubled until it reaches the element
    after it, which must be hit exactly.
    """
    parts = [s.strip() for s in text.split(",") if s.strip()]
    if not parts:
        raise SpecParseError("empty n-list")
    out: list[int] = []
    i = 0
    while i < len(parts):
        tok = parts[i]
        if tok in ("...", "…"):
            if not out or i + 1 >= len(parts):
                raise SpecParseError(f"'...' needs neighbours in {text!r}")
            try:
                stop = int(parts[i + 1])
            except ValueError:
                raise SpecParseError(f"bad n-list entry {parts[i + 1]!r}") from None
            v = out[-1]
            if v <= 0:
                raise SpecParseError("doubling needs a positive start")
            while v * 2 <= stop:
                v *= 2
                out.append(v)
            if out[-1] != stop:
                raise SpecParseError(f"{stop} is not reached by doubling from {parts[i - 1]}")
            i += 2
            continue
        try:
            out.append(int(tok))
        except ValueError:
            raise SpecParseError(f"bad n-list entry {tok!r}") from None
        i += 1
    if any(b <= a for a, b in zip(out, out[1:])):
        raise SpecParseError(f"n-list must be strictly ascending: {out}")
    if out[0] < 1:
        raise SpecParseError("n-list entries must be positive")
    return out


def parse_float_list(text: str) -> list[float]:
    try:
        vals = [float(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise SpecParseError(f"bad number list {text!r}") from exc
    if not vals:
        raise SpecParseError("empty number list")
    return vals


def format_n_list(ns: Sequence[int]) -> str:
    return ",".join(str(n) for n in ns)
