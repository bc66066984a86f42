"""
Predicate mini-language over report flags

    expr   ::= term (('|' | '∨') term)*
    term   ::= factor (('&' | '∧') factor)*
    factor ::= ('!' | '¬') factor | '(' expr ')' | FLAG

Evaluation is three-valued: a flag that was not computed is None, and
None propagates unless the other operand decides the result.
"""

import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

from ringlab.errors import PredicateSyntaxError, UnknownFlag
from ringlab.models import CleannessReport, Flag, ModuleReport, RingClassReport

EXTRA_RING_FLAGS = ("abelian", "commutative", "star", "finite_regular_units")

ALIASES: Dict[str, Tuple[str, ...]] = {
    "nonsingular": ("right_nonsingular",),
    "rickart": ("rickart_right", "rickart_left"),
    "morphic": ("morphic_right",),
    "regular": ("vn_regular",),
}


def _flag_fields(model: type) -> Tuple[str, ...]:
    return tuple(name for name, info in model.model_fields.items() if info.annotation is Flag)


RING_FLAGS: FrozenSet[str] = frozenset(
    _flag_fields(CleannessReport) + _flag_fields(RingClassReport) + EXTRA_RING_FLAGS
)
MODULE_FLAGS: FrozenSet[str] = frozenset(_flag_fields(ModuleReport))

TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[&|!()∧∨¬]))")


@dataclass(frozen=True)
class Name:
    flag: str


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


Expr = Union[Name, Not, And, Or]

_CANONICAL = {"∧": "&", "∨": "|", "¬": "!"}


class Predicate:
    """A parsed predicate; ``evaluate`` takes the flag mapping of one instance"""

    def __init__(self, text: str, known: FrozenSet[str] = RING_FLAGS):
        self.text = text
        self.known = known
        self._tokens = self._tokenize(text)
        self._pos = 0
        if not self._tokens:
            raise PredicateSyntaxError("empty predicate", 0)
        self.tree = self._expr()
        if self._pos != len(self._tokens):
            kind, value, position = self._tokens[self._pos]
            raise PredicateSyntaxError(f"unexpected {value!r}", position)

    @staticmethod
    def _tokenize(text: str) -> List[Tuple[str, str, int]]:
        tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = TOKEN.match(text, pos)
            if match is None:
                offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise PredicateSyntaxError(f"unexpected character {text[offset]!r}", offset)
            kind = match.lastgroup or ""
            value = match.group(kind)
            tokens.append((kind, _CANONICAL.get(value, value), match.start(kind)))
            pos = match.end()
        return tokens

    def _peek(self) -> Optional[str]:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos][1]
        return None

    def _end_position(self) -> int:
        return len(self.text)

    def _expr(self) -> Expr:
        node = self._term()
        while self._peek() == "|":
            self._pos += 1
            node = Or(node, self._term())
        return node

    def _term(self) -> Expr:
        node = self._factor()
        while self._peek() == "&":
            self._pos += 1
            node = And(node, self._factor())
        return node

    def _factor(self) -> Expr:
        if self._pos >= len(self._tokens):
            raise PredicateSyntaxError("unexpected end of predicate", self._end_position())
        kind, value, position = self._tokens[self._pos]
        self._pos += 1
        if value == "!":
            return Not(self._factor())
        if value == "(":
            node = self._expr()
            if self._peek() != ")":
                raise PredicateSyntaxError("missing ')'", self._end_position() if self._peek() is None else self._tokens[self._pos][2])
            self._pos += 1
            return node
        if kind != "name":
            raise PredicateSyntaxError(f"unexpected {value!r}", position)
        if value in self.known:
            return Name(value)
        if value in ALIASES:
            parts = [Name(flag) for flag in ALIASES[value]]
            node: Expr = parts[0]
            for part in parts[1:]:
                node = And(node, part)
            return node
        raise UnknownFlag(f"unknown flag {value!r}", position)

    def flags(self) -> FrozenSet[str]:
        found = set()
        stack: List[Expr] = [self.tree]
        while stack:
            node = stack.pop()
            if isinstance(node, Name):
                found.add(node.flag)
            elif isinstance(node, Not):
                stack.append(node.operand)
            else:
                stack.extend([node.left, node.right])
        return frozenset(found)

    def evaluate(self, values: Mapping[str, Optional[bool]]) -> Optional[bool]:
        return _evaluate(self.tree, values)

    def __repr__(self) -> str:
        return f"Predicate({self.text!r})"


def _evaluate(node: Expr, values: Mapping[str, Optional[bool]]) -> Optional[bool]:
    if isinstance(node, Name):
        return values.get(node.flag)
    if isinstance(node, Not):
        inner = _evaluate(node.operand, values)
        return None if inner is None else not inner
    left = _evaluate(node.left, values)
    right = _evaluate(node.right, values)
    if isinstance(node, And):
        if left is False or right is False:
            return False
        return None if left is None or right is None else True
    if left is True or right is True:
        return True
    return None if left is None or right is None else False


def parse_predicate(text: str, modules: bool = False) -> Predicate:
    return Predicate(text, MODULE_FLAGS if modules else RING_FLAGS)
