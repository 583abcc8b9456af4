"""
Abstract syntax of class expressions and their canonical surface text.

    expr    := sum
    sum     := prod ('+' prod)*
    prod    := twisted ('*' twisted)*
    twisted := primary ('{' int '}')*
    primary := int | atom | 'dual' '(' expr ')' | '(' expr ')'
    atom    := 'L' | 'Jac' | 'BGm' | 'BGmC' | 'P' '(' nat ')' | 'Sym' '(' nat ')' | 'Z' '(' int ')'
"""
from dataclasses import dataclass
from typing import Optional, Union

PLAIN_ATOMS = ("L", "Jac", "BGm", "BGmC")
INDEXED_ATOMS = ("P", "Sym", "Z")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Leaf:
    """An atom; arg is the index of P, Sym and Z"""
    name: str
    arg: Optional[int] = None


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Twist:
    inner: "Expr"
    k: int


@dataclass(frozen=True)
class Dual:
    inner: "Expr"


Expr = Union[Num, Leaf, Add, Mul, Twist, Dual]


def _wrap(e: Expr, *kinds) -> str:
    text = render(e)
    return f"({text})" if isinstance(e, kinds) else text


def render(e: Expr) -> str:
    """Canonical text; parse(render(e)) == e"""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Leaf):
        return e.name if e.arg is None else f"{e.name}({e.arg})"
    if isinstance(e, Add):
        return f"{render(e.left)} + {_wrap(e.right, Add)}"
    if isinstance(e, Mul):
        return f"{_wrap(e.left, Add)} * {_wrap(e.right, Add, Mul)}"
    if isinstance(e, Twist):
        return f"{_wrap(e.inner, Add, Mul)}{{{e.k}}}"
    if isinstance(e, Dual):
        return f"dual({render(e.inner)})"
    raise TypeError(f"not an expression node: {e!r}")
