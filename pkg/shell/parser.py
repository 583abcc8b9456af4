"""
Recursive-descent parser for class expressions.

Precedence from loosest to tightest: '+', '*', postfix twist '{k}'.
Errors carry the byte offset of the offending token and the set of tokens
that would have been accepted there.
"""
import logging
import re
from typing import List, NamedTuple, Sequence

from shared_utils.errors import ExprSyntaxError
from .expr import INDEXED_ATOMS, PLAIN_ATOMS, Add, Dual, Expr, Leaf, Mul, Num, Twist

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[-+*{}()]))")

PRIMARY_START = ("int", "-", "(", "dual") + PLAIN_ATOMS + INDEXED_ATOMS


class Token(NamedTuple):
    kind: str  # int, name, a symbol character, or end
    text: str
    offset: int


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    encoded = src.encode("utf-8")
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            rest = src[pos:]
            stripped = rest.lstrip()
            if not stripped:
                break
            bad = pos + len(rest) - len(stripped)
            offset = len(src[:bad].encode("utf-8"))
            raise ExprSyntaxError(
                f"unexpected character {src[bad]!r}", offset, expected=PRIMARY_START + ("+", "*", "{", "}", ")")
            )
        start = m.start(m.lastgroup)
        offset = len(src[:start].encode("utf-8"))
        kind = m.lastgroup if m.lastgroup != "sym" else m.group("sym")
        tokens.append(Token(kind, m.group(m.lastgroup), offset))
        pos = m.end()
    tokens.append(Token("end", "", len(encoded)))
    return tokens


class Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def _fail(self, expected: Sequence[str]):
        token = self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise ExprSyntaxError(f"unexpected {found}", token.offset, expected=expected)

    def _expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            self._fail([kind])
        return self._advance()

    def parse(self) -> Expr:
        expr = self.sum()
        if self.current.kind != "end":
            self._fail(["+", "*", "{", "end of input"])
        return expr

    def sum(self) -> Expr:
        left = self.prod()
        while self.current.kind == "+":
            self._advance()
            left = Add(left, self.prod())
        return left

    def prod(self) -> Expr:
        left = self.twisted()
        while self.current.kind == "*":
            self._advance()
            left = Mul(left, self.twisted())
        return left

    def twisted(self) -> Expr:
        expr = self.primary()
        while self.current.kind == "{":
            self._advance()
            k = self.integer()
            self._expect("}")
            expr = Twist(expr, k)
        return expr

    def integer(self) -> int:
        sign = 1
        if self.current.kind == "-":
            self._advance()
            sign = -1
        if self.current.kind != "int":
            self._fail(["int"] if sign < 0 else ["int", "-"])
        return sign * int(self._advance().text)

    def natural(self) -> int:
        if self.current.kind != "int":
            self._fail(["int"])
        return int(self._advance().text)

    def primary(self) -> Expr:
        token = self.current
        if token.kind in ("int", "-"):
            return Num(self.integer())
        if token.kind == "(":
            self._advance()
            inner = self.sum()
            self._expect(")")
            return inner
        if token.kind == "name":
            if token.text == "dual":
                self._advance()
                self._expect("(")
                inner = self.sum()
                self._expect(")")
                return Dual(inner)
            if token.text in PLAIN_ATOMS:
                self._advance()
                return Leaf(token.text)
            if token.text in INDEXED_ATOMS:
                self._advance()
                self._expect("(")
                arg = self.integer() if token.text == "Z" else self.natural()
                self._expect(")")
                return Leaf(token.text, arg)
        self._fail(PRIMARY_START)


def parse(src: str) -> Expr:
    expr = Parser(src).parse()
    logger.debug(f"Parsed {src!r} as {expr!r}")
    return expr
