"""
Ring and module specification language

    ring <name> = <expr> [with involution identity|transpose|swap|raw("<file>")]
    module <name> over <ring> = free(INT) | cyclic(INT, ...) | sum(<mod>, ...) | raw("<file>") | <name>
    embedding <name> = <ring> into <ring>

    expr ::= zmod(INT) | gf(INT[, INT]) | matrix(expr, INT) | uppertri(expr, INT)
           | product(expr, expr) | opposite(expr) | raw("<file>") | <name>

One statement per line; ``#`` starts a comment.
"""

import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from ringlab.core import spec_tree as st
from ringlab.errors import SpecSyntaxError, UnknownConstructor

TOKEN_PATTERN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<punct>[(),=])
    """,
    re.VERBOSE,
)

RING_CONSTRUCTORS = ("zmod", "gf", "matrix", "uppertri", "product", "opposite", "raw")
MODULE_CONSTRUCTORS = ("free", "cyclic", "sum", "raw")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        if match is None:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup or ""
        if kind == "newline":
            tokens.append(Token("newline", "\n", line, pos - line_start + 1))
            line, line_start = line + 1, match.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Optional[Token] = None) -> SpecSyntaxError:
        token = token or self.current
        return SpecSyntaxError(message, token.line, token.column)

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        token = self.current
        return token.kind == kind and (text is None or token.text == text)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        if not self.at(kind, text):
            wanted = text or kind
            found = self.current.text or self.current.kind
            raise self.error(f"expected {wanted!r}, found {found!r}")
        return self.advance()

    def skip_newlines(self) -> None:
        while self.at("newline"):
            self.advance()

    def integer(self) -> int:
        return int(self.expect("int").text)

    def string(self) -> str:
        return self.expect("string").text[1:-1]

    # statements

    def document(self) -> List[st.Statement]:
        statements: List[st.Statement] = []
        self.skip_newlines()
        while not self.at("eof"):
            statements.append(self.statement())
            if not self.at("eof"):
                self.expect("newline")
            self.skip_newlines()
        return statements

    def statement(self) -> st.Statement:
        keyword = self.current
        if self.at("name", "ring"):
            return self.ring_statement()
        if self.at("name", "module"):
            return self.module_statement()
        if self.at("name", "embedding"):
            return self.embedding_statement()
        raise self.error(f"expected 'ring', 'module' or 'embedding', found {keyword.text or keyword.kind!r}")

    def ring_statement(self) -> st.RingSpec:
        line = self.expect("name", "ring").line
        name = self.expect("name").text
        self.expect("punct", "=")
        expr = self.ring_expr()
        involution = None
        if self.at("name", "with"):
            self.advance()
            self.expect("name", "involution")
            involution = self.involution()
        return st.RingSpec(name=name, expr=expr, involution=involution, line=line)

    def involution(self) -> st.Involution:
        token = self.expect("name")
        if token.text not in st.INVOLUTION_KINDS:
            raise self.error(f"unknown involution kind {token.text!r}", token)
        if token.text == "raw":
            self.expect("punct", "(")
            path = self.string()
            self.expect("punct", ")")
            return st.Involution("raw", path)
        return st.Involution(token.text)

    def module_statement(self) -> st.ModuleSpec:
        line = self.expect("name", "module").line
        name = self.expect("name").text
        self.expect("name", "over")
        ring = self.expect("name").text
        self.expect("punct", "=")
        return st.ModuleSpec(name=name, ring=ring, expr=self.module_expr(), line=line)

    def embedding_statement(self) -> st.EmbeddingSpec:
        line = self.expect("name", "embedding").line
        name = self.expect("name").text
        self.expect("punct", "=")
        source = self.expect("name").text
        self.expect("name", "into")
        target = self.expect("name").text
        return st.EmbeddingSpec(name=name, source=source, target=target, line=line)

    # expressions

    def call_args(self, parsers: Sequence[Callable[[], object]], optional_tail: int = 0) -> List[object]:
        self.expect("punct", "(")
        values = []
        for i, parse in enumerate(parsers):
            required = i < len(parsers) - optional_tail
            if i > 0:
                if not required and not self.at("punct", ","):
                    break
                self.expect("punct", ",")
            values.append(parse())
        self.expect("punct", ")")
        return values

    def ring_expr(self) -> st.RingExpr:
        token = self.expect("name")
        if not self.at("punct", "("):
            return st.NameRef(token.text)
        if token.text not in RING_CONSTRUCTORS:
            raise UnknownConstructor(f"unknown ring constructor {token.text!r}", token.line, token.column)
        name = token.text
        if name == "zmod":
            (n,) = self.call_args([self.integer])
            if n < 1:
                raise self.error("zmod needs n >= 1", token)
            return st.ZMod(n)
        if name == "gf":
            args = self.call_args([self.integer, self.integer], optional_tail=1)
            k = args[1] if len(args) > 1 else 1
            if k < 1:
                raise self.error("gf needs k >= 1", token)
            return st.GF(args[0], k)
        if name in ("matrix", "uppertri"):
            base, k = self.call_args([self.ring_expr, self.integer])
            if k < 1:
                raise self.error(f"{name} needs k >= 1", token)
            return st.Matrix(base, k) if name == "matrix" else st.UpperTri(base, k)
        if name == "product":
            left, right = self.call_args([self.ring_expr, self.ring_expr])
            return st.Product(left, right)
        if name == "opposite":
            (base,) = self.call_args([self.ring_expr])
            return st.Opposite(base)
        (path,) = self.call_args([self.string])
        return st.Raw(path)

    def module_expr(self) -> st.ModuleExpr:
        token = self.expect("name")
        if not self.at("punct", "("):
            return st.ModuleRef(token.text)
        if token.text not in MODULE_CONSTRUCTORS:
            raise UnknownConstructor(f"unknown module constructor {token.text!r}", token.line, token.column)
        if token.text == "free":
            (k,) = self.call_args([self.integer])
            return st.Free(k)
        if token.text == "raw":
            (path,) = self.call_args([self.string])
            return st.RawModule(path)
        self.expect("punct", "(")
        items: List[object] = []
        item = self.integer if token.text == "cyclic" else self.module_expr
        if not self.at("punct", ")"):
            items.append(item())
            while self.at("punct", ","):
                self.advance()
                items.append(item())
        self.expect("punct", ")")
        if token.text == "cyclic":
            return st.Cyclic(tuple(int(i) for i in items))
        if not items:
            raise self.error("sum needs at least one module", token)
        return st.DirectSum(tuple(items))  # type: ignore[arg-type]


def parse_document(text: str) -> List[st.Statement]:
    """Parse a whole catalog file into statements"""
    return _Parser(text).document()


def parse_spec(text: str) -> st.RingSpec:
    """Parse a single ring statement, or a bare ring expression"""
    parser = _Parser(text)
    parser.skip_newlines()
    if parser.at("name", "ring"):
        spec = parser.ring_statement()
    else:
        expr = parser.ring_expr()
        spec = st.RingSpec(name=format_expr(expr), expr=expr, line=1)
    parser.skip_newlines()
    if not parser.at("eof"):
        raise parser.error("expected a single ring statement")
    return spec


# printing

def format_expr(expr: st.RingExpr) -> str:
    if isinstance(expr, st.ZMod):
        return f"zmod({expr.n})"
    if isinstance(expr, st.GF):
        return f"gf({expr.p})" if expr.k == 1 else f"gf({expr.p}, {expr.k})"
    if isinstance(expr, st.Matrix):
        return f"matrix({format_expr(expr.base)}, {expr.k})"
    if isinstance(expr, st.UpperTri):
        return f"uppertri({format_expr(expr.base)}, {expr.k})"
    if isinstance(expr, st.Product):
        return f"product({format_expr(expr.left)}, {format_expr(expr.right)})"
    if isinstance(expr, st.Opposite):
        return f"opposite({format_expr(expr.base)})"
    if isinstance(expr, st.Raw):
        return f'raw("{expr.path}")'
    if isinstance(expr, st.NameRef):
        return expr.name
    raise TypeError(f"not a ring expression: {expr!r}")


def format_module_expr(expr: st.ModuleExpr) -> str:
    if isinstance(expr, st.Free):
        return f"free({expr.k})"
    if isinstance(expr, st.Cyclic):
        return f"cyclic({', '.join(str(g) for g in expr.generators)})"
    if isinstance(expr, st.DirectSum):
        return f"sum({', '.join(format_module_expr(p) for p in expr.parts)})"
    if isinstance(expr, st.RawModule):
        return f'raw("{expr.path}")'
    if isinstance(expr, st.ModuleRef):
        return expr.name
    raise TypeError(f"not a module expression: {expr!r}")


def print_spec(statement: st.Statement) -> str:
    if isinstance(statement, st.RingSpec):
        text = f"ring {statement.name} = {format_expr(statement.expr)}"
        inv = statement.involution
        if inv is not None:
            kind = f'raw("{inv.path}")' if inv.kind == "raw" else inv.kind
            text += f" with involution {kind}"
        return text
    if isinstance(statement, st.ModuleSpec):
        return f"module {statement.name} over {statement.ring} = {format_module_expr(statement.expr)}"
    if isinstance(statement, st.EmbeddingSpec):
        return f"embedding {statement.name} = {statement.source} into {statement.target}"
    raise TypeError(f"not a statement: {statement!r}")


def print_document(statements: Sequence[st.Statement]) -> str:
    return "".join(print_spec(s) + "\n" for s in statements)


def split_statements(statements: Sequence[st.Statement]) -> Dict[str, List[st.Statement]]:
    """Group statements by kind: rings, modules, embeddings"""
    groups: Dict[str, List[st.Statement]] = {"rings": [], "modules": [], "embeddings": []}
    for s in statements:
        key = "rings" if isinstance(s, st.RingSpec) else "modules" if isinstance(s, st.ModuleSpec) else "embeddings"
        groups[key].append(s)
    return groups
