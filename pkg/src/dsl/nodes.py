"""
Syntax tree of a theory file.

Expressions keep index positions exactly as written; the elaborator
expands them.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from .diagnostics import SourceSpan


# =================== Expressions ===================

@dataclass(frozen=True)
class IndexRef:
    """An index slot: a name or a literal component, `^` for upper."""
    value: Union[str, int]
    up: bool
    span: SourceSpan

    @property
    def symbolic(self) -> bool:
        return isinstance(self.value, str)


@dataclass(frozen=True)
class Num:
    text: str
    span: SourceSpan


@dataclass(frozen=True)
class Name:
    name: str
    span: SourceSpan


@dataclass(frozen=True)
class Indexed:
    name: str
    indices: Tuple[IndexRef, ...]
    span: SourceSpan


@dataclass(frozen=True)
class Call:
    """sqrt(expr), d(X, mu) and dd(X, mu, nu)."""
    func: str
    args: Tuple["Node", ...]
    indices: Tuple[IndexRef, ...]
    span: SourceSpan


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    span: SourceSpan


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    span: SourceSpan


@dataclass(frozen=True)
class Group:
    """A parenthesized expression; summation indices do not leak out of it."""
    inner: "Node"
    span: SourceSpan


Node = Union[Num, Name, Indexed, Call, BinOp, Neg, Group]


# =================== Declarations ===================

@dataclass(frozen=True)
class BaseDecl:
    dim: int
    coords: Tuple[str, ...]
    span: SourceSpan


@dataclass(frozen=True)
class FieldDecl:
    """`field A : covector variational;` or `param g : sym2 parametric;`"""
    name: str
    kind: str
    target_dim: int
    variational: bool
    span: SourceSpan


@dataclass(frozen=True)
class MetricDecl:
    """kind is fixed, parametric, variational or none; field names the sym2 field."""
    kind: str
    field: Optional[str]
    span: SourceSpan


@dataclass(frozen=True)
class TargetDecl:
    label: str
    field: str
    signature: str
    span: SourceSpan


@dataclass(frozen=True)
class LetDecl:
    name: str
    indices: Tuple[IndexRef, ...]
    body: Node
    span: SourceSpan


@dataclass(frozen=True)
class ParamDecl:
    """An algebra function of a generator; `xi[^mu]` declares one per base index."""
    name: str
    indexed: bool
    span: SourceSpan


@dataclass(frozen=True)
class FiberAssign:
    target: Union[Name, Indexed]
    value: Node
    span: SourceSpan


@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    params: Tuple[ParamDecl, ...]
    base: Tuple[Node, ...]
    fiber: Tuple[FiberAssign, ...]
    span: SourceSpan


@dataclass(frozen=True)
class TheoryDocument:
    """A parsed theory file, declarations in source order."""
    name: str
    span: SourceSpan
    base: Optional[BaseDecl] = None
    fields: Tuple[FieldDecl, ...] = ()
    consts: Tuple[Name, ...] = ()
    metric: Optional[MetricDecl] = None
    targets: Tuple[TargetDecl, ...] = ()
    lets: Tuple[LetDecl, ...] = ()
    generators: Tuple[GeneratorDecl, ...] = ()
    lagrangian: Optional[Node] = None
    lagrangian_span: Optional[SourceSpan] = field(default=None, compare=False)
