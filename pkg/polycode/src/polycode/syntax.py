"""LL(1) grammar for polytope expressions.

    expr     := box(int {, int}) | simplex(int, int) | seg(int)
              | prod(expr, expr) | join(expr, expr) | msum(expr, expr)
              | dsum(expr, expr [, hypothesis])
              | dilate(expr, int) | embed(expr, int)
              | atom(@path) | atom([vertex {, vertex}])
    vertex   := [int {, int}]
    hypothesis := asserted | violated | unknown

``atom(@name)`` reads a JSON polytope document from a file, falling back
to the packaged fixture of that name.
"""

from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional

from polycode.errors import (
    ExpressionSyntaxError,
    GeometryError,
    InvalidExpression,
    InvalidPolytopeDocument,
)
from polycode.expressions import (
    Atom,
    Box,
    Dilate,
    DirectSum,
    Embed,
    Hypothesis,
    Join,
    MinkowskiSum,
    PolytopeExpr,
    Product,
    Segment,
    Simplex,
)
from polycode.lattice import LatticePolytope, load_polytope
from polycode.resources import polytope_fixture

HYPOTHESES = tuple(h.value for h in Hypothesis)


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "(),[]":
            tokens.append(Token(c, c, i))
            i += 1
        elif c.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], i))
            i = j
        elif c.isdigit() or (c == "-" and text[i + 1 : i + 2].isdigit()):
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], i))
            i = j
        elif c == "@":
            j = i + 1
            while j < len(text) and text[j] not in "),":
                j += 1
            reference = text[i + 1 : j].strip()
            if not reference:
                found = text[i + 1 : j] or None
                raise ExpressionSyntaxError(i + 1, ["path"], found)
            tokens.append(Token("path", reference, i))
            i = j
        else:
            raise ExpressionSyntaxError(i, ["expression"], c)
    tokens.append(Token("end", "", len(text)))
    return tokens


class Parser:
    def __init__(self, text: str, base_dir: Optional[Path] = None) -> None:
        self._tokens = tokenize(text)
        self._index = 0
        self._base_dir = base_dir
        self._rules: Dict[str, Callable[[], PolytopeExpr]] = {
            "atom": self._atom,
            "box": self._box,
            "dilate": self._dilate,
            "dsum": self._dsum,
            "embed": self._embed,
            "join": lambda: Join(*self._pair()),
            "msum": lambda: MinkowskiSum(*self._pair()),
            "prod": lambda: Product(*self._pair()),
            "seg": lambda: Segment(self._natural()),
            "simplex": self._simplex,
        }

    def parse(self) -> PolytopeExpr:
        e = self._expr()
        self._expect("end", "end of input")
        return e

    def _peek(self) -> Token:
        return self._tokens[self._index]

    def _advance(self) -> Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _fail(self, *expected: str) -> ExpressionSyntaxError:
        token = self._peek()
        found = token.text if token.kind != "end" else None
        return ExpressionSyntaxError(token.position, expected, found)

    def _expect(self, kind: str, description: Optional[str] = None) -> Token:
        if self._peek().kind != kind:
            raise self._fail(f"'{kind}'" if description is None else description)
        return self._advance()

    def _accept(self, kind: str) -> bool:
        if self._peek().kind == kind:
            self._advance()
            return True
        return False

    def _integer(self) -> int:
        return int(self._expect("int", "integer").text)

    def _natural(self) -> int:
        if self._peek().kind != "int" or self._peek().text.startswith("-"):
            raise self._fail("non-negative integer")
        return self._integer()

    def _positive(self) -> int:
        if self._peek().kind != "int" or int(self._peek().text) < 1:
            raise self._fail("positive integer")
        return self._integer()

    def _expr(self) -> PolytopeExpr:
        token = self._peek()
        rule = self._rules.get(token.text) if token.kind == "name" else None
        if rule is None:
            raise self._fail(*self._rules)
        self._advance()
        self._expect("(")
        try:
            e = rule()
        except (GeometryError, ValueError) as error:
            raise InvalidExpression(f"{token.position}: {error}") from error
        self._expect(")")
        return e

    def _pair(self):
        left = self._expr()
        self._expect(",")
        return left, self._expr()

    def _box(self) -> PolytopeExpr:
        lengths = [self._natural()]
        while self._accept(","):
            lengths.append(self._natural())
        return Box(tuple(lengths))

    def _simplex(self) -> PolytopeExpr:
        dimension = self._positive()
        self._expect(",")
        return Simplex(dimension, self._natural())

    def _dsum(self) -> PolytopeExpr:
        left, right = self._pair()
        hypothesis = None
        if self._accept(","):
            token = self._peek()
            if token.kind != "name" or token.text not in HYPOTHESES:
                raise self._fail(*HYPOTHESES)
            hypothesis = Hypothesis(self._advance().text)
        return DirectSum(left, right, hypothesis)

    def _dilate(self) -> PolytopeExpr:
        child = self._expr()
        self._expect(",")
        return Dilate(child, self._positive())

    def _embed(self) -> PolytopeExpr:
        child = self._expr()
        self._expect(",")
        return Embed(child, self._positive())

    def _vertex(self) -> List[int]:
        self._expect("[")
        coordinates = [self._integer()]
        while self._accept(","):
            coordinates.append(self._integer())
        self._expect("]")
        return coordinates

    def _atom(self) -> PolytopeExpr:
        token = self._peek()
        if token.kind == "path":
            self._advance()
            return Atom(self._load(token.text), token.text)
        if token.kind == "[":
            self._advance()
            vertices = [self._vertex()]
            while self._accept(","):
                vertices.append(self._vertex())
            self._expect("]")
            return Atom(LatticePolytope(vertices))
        raise self._fail("'@'", "'['")

    def _load(self, reference: str) -> LatticePolytope:
        path = Path(reference)
        if self._base_dir is not None and not path.is_absolute():
            path = self._base_dir / path
        if path.is_file():
            return load_polytope(path.read_text())
        try:
            return load_polytope(polytope_fixture(reference))
        except (ImportError, OSError, ValueError) as e:
            raise InvalidPolytopeDocument(
                f"No polytope file or fixture named {reference!r}."
            ) from e


def parse_expression(text: str, base_dir: Optional[Path] = None) -> PolytopeExpr:
    return Parser(text, base_dir).parse()


def render(e: PolytopeExpr) -> str:
    return e.to_text()
