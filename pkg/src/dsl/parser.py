"""
Recursive-descent parser for theory files.

Grammar (informal):

    theory ID { statement* }
    statement := base dim INT coords ( ID, ... ) ;
               | (field | param) ID : (scalar[INT] | scalar | covector | sym2)
                     [variational | parametric] ;
               | const ID, ... ;
               | metric (fixed minkowski | parametric ID | variational ID | none) ;
               | target ID : metric ( ID ) [euclidean | minkowski] ;
               | let ID [ [idx, ...] ] = expr ;
               | generator ID [ ( params : p, q[^mu], ... ) ]
                     { [base : expr, ... ;] [fiber : lhs = expr, ... ;] }
               | lagrangian expr ;
    expr := term (( + | - ) term)*
    term := unary (( * | / ) unary)*
    unary := - unary | power
    power := atom [ ** unary ]
    atom := NUMBER | ID | ID [ idx, ... ] | sqrt ( expr ) | d ( expr , idx )
          | dd ( expr , idx , idx ) | ( expr )
    idx := [^] (ID | INT)

Errors never raise: they become diagnostics and the parser resumes after
the next `;` (or after the block that contained the error).
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from i18n import i18n

from .diagnostics import Diagnostic, SourceSpan, error, has_errors
from .lexer import Token, TokenKind, tokenize
from .nodes import (
    BaseDecl,
    BinOp,
    Call,
    FieldDecl,
    FiberAssign,
    GeneratorDecl,
    Group,
    IndexRef,
    Indexed,
    LetDecl,
    MetricDecl,
    Name,
    Neg,
    Node,
    Num,
    ParamDecl,
    TargetDecl,
    TheoryDocument,
)

logger = logging.getLogger(__name__)

FIELD_KINDS = ("scalar", "covector", "sym2")
METRIC_DECL_KINDS = ("fixed", "parametric", "variational", "none")
SIGNATURES = ("euclidean", "minkowski")
CALLS = {"sqrt": 0, "d": 1, "dd": 2}


class _SyntaxError(Exception):
    def __init__(self, span: SourceSpan, message: str, hint: str = ""):
        super().__init__(message)
        self.span = span
        self.message = message
        self.hint = hint


@dataclass
class ParseResult:
    """A document when parsing succeeded, and every diagnostic in source order."""
    document: Optional[TheoryDocument]
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.document is not None and not has_errors(self.diagnostics)


class Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0
        self.diagnostics: List[Diagnostic] = []

    # ----- token helpers -----

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != TokenKind.EOF:
            self.pos += 1
        return tok

    def peek(self, text: str) -> bool:
        tok = self.token
        return tok.is_punct(text) or tok.is_word(text)

    def accept(self, text: str) -> Optional[Token]:
        if self.peek(text):
            return self.advance()
        return None

    def expect(self, text: str, hint: str = "") -> Token:
        tok = self.accept(text)
        if tok is None:
            raise _SyntaxError(self.token.span, i18n.t(
                "diagnostics.expected", expected=text, found=self._describe(self.token)), hint)
        return tok

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.token
        if tok.kind != TokenKind.IDENT:
            raise _SyntaxError(tok.span, i18n.t("diagnostics.expected", expected=what,
                                                found=self._describe(tok)))
        return self.advance()

    def expect_int(self) -> int:
        tok = self.token
        if tok.kind != TokenKind.INT:
            raise _SyntaxError(tok.span, i18n.t("diagnostics.expected", expected="integer",
                                                found=self._describe(tok)))
        self.advance()
        return int(tok.text)

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of input" if tok.kind == TokenKind.EOF else repr(tok.text)

    def report(self, exc: _SyntaxError):
        self.diagnostics.append(error(exc.span, exc.message, exc.hint))

    def synchronize(self):
        """Skip past the next `;` or the next complete block, stopping before an unmatched `}`."""
        depth = 0
        while self.token.kind != TokenKind.EOF:
            tok = self.token
            if tok.is_punct("{"):
                depth += 1
            elif tok.is_punct("}"):
                if depth == 0:
                    return
                depth -= 1
                self.advance()
                if depth == 0:
                    return
                continue
            elif tok.is_punct(";") and depth == 0:
                self.advance()
                return
            self.advance()

    # ----- document -----

    def parse_document(self) -> Optional[TheoryDocument]:
        if self.token.kind == TokenKind.EOF:
            self.diagnostics.append(error(self.token.span, i18n.t("diagnostics.missing_theory"),
                                          i18n.t("diagnostics.missing_theory_hint")))
            return None
        try:
            head = self.expect("theory", i18n.t("diagnostics.missing_theory_hint"))
            name = self.expect_ident("theory name").text
            self.expect("{")
        except _SyntaxError as exc:
            self.report(exc)
            return None
        state = _DocumentState(name, head.span)
        while not self.peek("}") and self.token.kind != TokenKind.EOF:
            start = self.pos
            try:
                self.statement(state)
            except _SyntaxError as exc:
                self.report(exc)
                self.synchronize()
            if self.pos == start:
                self.advance()
        try:
            self.expect("}", i18n.t("diagnostics.close_theory_hint"))
        except _SyntaxError as exc:
            self.report(exc)
        if self.token.kind != TokenKind.EOF:
            self.diagnostics.append(error(self.token.span, i18n.t("diagnostics.trailing_input")))
        return state.finish(self.diagnostics)

    def statement(self, state: "_DocumentState"):
        tok = self.token
        keyword = tok.text if tok.kind == TokenKind.IDENT else ""
        handler = {
            "base": self.base_decl,
            "field": self.field_decl,
            "param": self.field_decl,
            "const": self.const_decl,
            "metric": self.metric_decl,
            "target": self.target_decl,
            "let": self.let_decl,
            "generator": self.generator_decl,
            "lagrangian": self.lagrangian_decl,
        }.get(keyword)
        if handler is None:
            raise _SyntaxError(tok.span, i18n.t("diagnostics.unknown_statement",
                                                found=self._describe(tok)))
        state.seen.add(keyword)
        handler(state)

    # ----- declarations -----

    def base_decl(self, state: "_DocumentState"):
        head = self.expect("base")
        self.expect("dim")
        dim = self.expect_int()
        self.expect("coords")
        self.expect("(")
        coords = [self.expect_ident("coordinate name").text]
        while self.accept(","):
            coords.append(self.expect_ident("coordinate name").text)
        self.expect(")")
        self.expect(";")
        if state.base is not None:
            state.duplicate(head.span, "base")
        state.base = BaseDecl(dim, tuple(coords), head.span)

    def field_decl(self, state: "_DocumentState"):
        head = self.advance()
        name_tok = self.expect_ident("field name")
        self.expect(":")
        kind_tok = self.expect_ident("field kind")
        if kind_tok.text not in FIELD_KINDS:
            raise _SyntaxError(kind_tok.span, i18n.t("diagnostics.unknown_field_kind", kind=kind_tok.text),
                               ", ".join(FIELD_KINDS))
        target_dim = 1
        if kind_tok.text == "scalar" and self.peek("["):
            open_tok = self.advance()
            target_dim = self.expect_int()
            self._close_bracket(open_tok)
        variational = head.text == "field"
        if self.accept("variational"):
            variational = True
        elif self.accept("parametric"):
            variational = False
        self.expect(";")
        state.declare(name_tok, self.diagnostics)
        state.fields.append(FieldDecl(name_tok.text, kind_tok.text, target_dim, variational, name_tok.span))

    def const_decl(self, state: "_DocumentState"):
        self.expect("const")
        names = [self.expect_ident("constant name")]
        while self.accept(","):
            names.append(self.expect_ident("constant name"))
        self.expect(";")
        for tok in names:
            state.declare(tok, self.diagnostics)
            state.consts.append(Name(tok.text, tok.span))

    def metric_decl(self, state: "_DocumentState"):
        head = self.expect("metric")
        kind_tok = self.expect_ident("metric kind")
        if kind_tok.text not in METRIC_DECL_KINDS:
            raise _SyntaxError(kind_tok.span, i18n.t("diagnostics.unknown_metric_kind", kind=kind_tok.text),
                               ", ".join(METRIC_DECL_KINDS))
        field_name = None
        if kind_tok.text == "fixed":
            self.expect("minkowski")
        elif kind_tok.text in ("parametric", "variational"):
            field_name = self.expect_ident("metric field").text
        self.expect(";")
        if state.metric is not None:
            state.duplicate(head.span, "metric")
        state.metric = MetricDecl(kind_tok.text, field_name, head.span)

    def target_decl(self, state: "_DocumentState"):
        self.expect("target")
        label = self.expect_ident("target metric name")
        self.expect(":")
        self.expect("metric")
        self.expect("(")
        field_name = self.expect_ident("field name").text
        self.expect(")")
        signature = "euclidean"
        for sig in SIGNATURES:
            if self.accept(sig):
                signature = sig
        self.expect(";")
        state.declare(label, self.diagnostics)
        state.targets.append(TargetDecl(label.text, field_name, signature, label.span))

    def let_decl(self, state: "_DocumentState"):
        self.expect("let")
        name = self.expect_ident("name")
        indices: Tuple[IndexRef, ...] = ()
        if self.peek("["):
            indices = self.index_list()
        self.expect("=")
        body = self.expression()
        self.expect(";")
        state.declare(name, self.diagnostics)
        state.lets.append(LetDecl(name.text, indices, body, name.span))

    def generator_decl(self, state: "_DocumentState"):
        self.expect("generator")
        name = self.expect_ident("generator name")
        params: List[ParamDecl] = []
        if self.accept("("):
            self.expect("params")
            self.expect(":")
            params.append(self.param())
            while self.accept(","):
                params.append(self.param())
            self.expect(")")
        self.expect("{")
        base: List[Node] = []
        fiber: List[FiberAssign] = []
        while not self.peek("}") and self.token.kind != TokenKind.EOF:
            try:
                if self.accept("base"):
                    self.expect(":")
                    base.append(self.expression())
                    while self.accept(","):
                        base.append(self.expression())
                    self.expect(";")
                elif self.accept("fiber"):
                    self.expect(":")
                    fiber.append(self.fiber_assign())
                    while self.accept(","):
                        fiber.append(self.fiber_assign())
                    self.expect(";")
                else:
                    raise _SyntaxError(self.token.span, i18n.t(
                        "diagnostics.expected", expected="base or fiber", found=self._describe(self.token)))
            except _SyntaxError as exc:
                self.report(exc)
                self.synchronize()
        self.expect("}")
        if name.text in state.generators:
            state.duplicate(name.span, name.text)
        state.generators[name.text] = GeneratorDecl(name.text, tuple(params), tuple(base),
                                                    tuple(fiber), name.span)

    def param(self) -> ParamDecl:
        tok = self.expect_ident("parameter name")
        if self.peek("["):
            indices = self.index_list()
            if len(indices) != 1 or not indices[0].up or not indices[0].symbolic:
                raise _SyntaxError(tok.span, i18n.t("diagnostics.param_index"))
            return ParamDecl(tok.text, True, tok.span)
        return ParamDecl(tok.text, False, tok.span)

    def fiber_assign(self) -> FiberAssign:
        tok = self.expect_ident("field name")
        target: Node = Name(tok.text, tok.span)
        if self.peek("["):
            target = Indexed(tok.text, self.index_list(), tok.span)
        self.expect("=")
        return FiberAssign(target, self.expression(), tok.span)

    def lagrangian_decl(self, state: "_DocumentState"):
        head = self.expect("lagrangian")
        body = self.expression()
        self.expect(";")
        if state.lagrangian is not None:
            state.duplicate(head.span, "lagrangian")
        state.lagrangian = body
        state.lagrangian_span = head.span

    # ----- expressions -----

    def expression(self) -> Node:
        node = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.advance()
            node = BinOp(op.text, node, self.term(), op.span)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek("*") or self.peek("/"):
            op = self.advance()
            node = BinOp(op.text, node, self.unary(), op.span)
        return node

    def unary(self) -> Node:
        if self.peek("-"):
            op = self.advance()
            return Neg(self.unary(), op.span)
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek("**"):
            op = self.advance()
            return BinOp("**", base, self.unary(), op.span)
        return base

    def atom(self) -> Node:
        tok = self.token
        if tok.kind in (TokenKind.INT, TokenKind.DECIMAL):
            self.advance()
            return Num(tok.text, tok.span)
        if tok.is_punct("("):
            self.advance()
            inner = self.expression()
            self._close(tok, ")")
            return Group(inner, tok.span)
        if tok.kind == TokenKind.IDENT:
            self.advance()
            if self.peek("("):
                return self.call(tok)
            if self.peek("["):
                return Indexed(tok.text, self.index_list(), tok.span)
            return Name(tok.text, tok.span)
        raise _SyntaxError(tok.span, i18n.t("diagnostics.expected", expected="expression",
                                            found=self._describe(tok)))

    def call(self, func: Token) -> Node:
        if func.text not in CALLS:
            raise _SyntaxError(func.span, i18n.t("diagnostics.unknown_function", name=func.text),
                               "sqrt, d, dd")
        open_tok = self.expect("(")
        arg = self.expression()
        indices = []
        for _ in range(CALLS[func.text]):
            self.expect(",")
            indices.append(self.index())
        self._close(open_tok, ")")
        return Call(func.text, (arg,), tuple(indices), func.span)

    def index_list(self) -> Tuple[IndexRef, ...]:
        open_tok = self.expect("[")
        indices = [self.index()]
        while self.accept(","):
            indices.append(self.index())
        self._close_bracket(open_tok)
        return tuple(indices)

    def index(self) -> IndexRef:
        caret = self.accept("^")
        tok = self.token
        if tok.kind == TokenKind.IDENT:
            self.advance()
            return IndexRef(tok.text, caret is not None, caret.span if caret else tok.span)
        if tok.kind == TokenKind.INT:
            self.advance()
            return IndexRef(int(tok.text), caret is not None, caret.span if caret else tok.span)
        raise _SyntaxError(tok.span, i18n.t("diagnostics.expected", expected="index",
                                            found=self._describe(tok)))

    def _close_bracket(self, open_tok: Token):
        self._close(open_tok, "]")

    def _close(self, open_tok: Token, closer: str):
        if not self.accept(closer):
            raise _SyntaxError(open_tok.span, i18n.t("diagnostics.unbalanced", opener=open_tok.text,
                                                     closer=closer),
                               i18n.t("diagnostics.unbalanced_hint", closer=closer))


class _DocumentState:
    """Declarations collected while parsing, with duplicate detection."""

    def __init__(self, name: str, span: SourceSpan):
        self.name = name
        self.span = span
        self.seen = set()
        self.names: Dict[str, SourceSpan] = {}
        self.base: Optional[BaseDecl] = None
        self.fields: List[FieldDecl] = []
        self.consts: List[Name] = []
        self.metric: Optional[MetricDecl] = None
        self.targets: List[TargetDecl] = []
        self.lets: List[LetDecl] = []
        self.generators: Dict[str, GeneratorDecl] = {}
        self.lagrangian: Optional[Node] = None
        self.lagrangian_span: Optional[SourceSpan] = None
        self._duplicates: List[Diagnostic] = []

    def declare(self, tok: Token, diagnostics: List[Diagnostic]):
        if tok.text in self.names:
            first = self.names[tok.text]
            diagnostics.append(error(tok.span, i18n.t("diagnostics.duplicate", name=tok.text),
                                     i18n.t("diagnostics.first_declared", line=first.line)))
        else:
            self.names[tok.text] = tok.span

    def duplicate(self, span: SourceSpan, what: str):
        self._duplicates.append(error(span, i18n.t("diagnostics.duplicate", name=what)))

    def finish(self, diagnostics: List[Diagnostic]) -> TheoryDocument:
        diagnostics.extend(self._duplicates)
        if self.base is None and "base" not in self.seen:
            diagnostics.append(error(self.span, i18n.t("diagnostics.missing", what="base")))
        if self.lagrangian is None and "lagrangian" not in self.seen:
            diagnostics.append(error(self.span, i18n.t("diagnostics.missing", what="lagrangian")))
        diagnostics.sort(key=lambda d: (d.span.line, d.span.column))
        return TheoryDocument(
            name=self.name,
            span=self.span,
            base=self.base,
            fields=tuple(self.fields),
            consts=tuple(self.consts),
            metric=self.metric,
            targets=tuple(self.targets),
            lets=tuple(self.lets),
            generators=tuple(self.generators.values()),
            lagrangian=self.lagrangian,
            lagrangian_span=self.lagrangian_span,
        )


def parse(source: str) -> ParseResult:
    """Parse a theory file; never raises for malformed input."""
    tokens, diagnostics = tokenize(source)
    parser = Parser(tokens)
    document = parser.parse_document()
    diagnostics = sorted(diagnostics + parser.diagnostics, key=lambda d: (d.span.line, d.span.column))
    logger.debug("parsed %d tokens with %d diagnostics", len(tokens), len(diagnostics))
    return ParseResult(document, diagnostics)
