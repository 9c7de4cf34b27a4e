"""
Elaborator - turns a parsed theory document into a Theory.

Index expressions are expanded into components:
- an index written twice in one product, once upper and once lower, is summed
- every other index is free; both sides of + and - must have the same free indices
- fields carry their natural positions (covectors and sym2 fields lower,
  scalar multiplets upper); other positions are reached with the metric
- eps, delta and eta take the range of the index they are contracted with

Problems are collected per statement; elaborate raises ElaborationError
carrying every diagnostic.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import sympy

from i18n import i18n

from ..jets import DuplicateFieldName, JetBundle, NotProjectable, check_projectable, jet_bundle, total_derivative
from ..models import (
    BundleSpec,
    FieldKind,
    FieldSpec,
    GeneratorFamily,
    MetricKind,
    MetricSpec,
    TargetSpec,
    Theory,
)
from ..symcore import SYMBOLS, Expr, canonicalize, minkowski_signature
from ..theories import levi_civita
from .diagnostics import Diagnostic, ElaborationError, SourceSpan, error
from .nodes import (
    BinOp,
    Call,
    FiberAssign,
    GeneratorDecl,
    Group,
    IndexRef,
    Indexed,
    LetDecl,
    Name,
    Neg,
    Node,
    Num,
    TheoryDocument,
)

logger = logging.getLogger(__name__)

Range = Tuple[str, int]
BUILTIN_TENSORS = ("eps", "delta", "eta")


class _Error(Exception):
    def __init__(self, span: SourceSpan, message: str, hint: str = ""):
        super().__init__(message)
        self.span = span
        self.message = message
        self.hint = hint


@dataclass(frozen=True)
class Slot:
    name: str
    up: bool
    range: Range


@dataclass
class Tensor:
    """Components keyed by index values, in slot order."""
    slots: Tuple[Slot, ...]
    components: Dict[Tuple[int, ...], Expr]

    @classmethod
    def scalar(cls, value) -> "Tensor":
        return cls((), {(): sympy.sympify(value)})

    @property
    def is_scalar(self) -> bool:
        return not self.slots

    @property
    def value(self) -> Expr:
        return self.components[()]

    def free(self) -> set:
        return {(s.name, s.up) for s in self.slots}

    def at(self, assignment: Dict[str, int]) -> Expr:
        return self.components[tuple(assignment[s.name] for s in self.slots)]

    def map(self, fn: Callable[[Expr], Expr]) -> "Tensor":
        return Tensor(self.slots, {k: fn(v) for k, v in self.components.items()})


@dataclass
class _Let:
    ups: Tuple[bool, ...]
    ranges: Tuple[Range, ...]
    components: Dict[Tuple[int, ...], Expr]


def _describe_free(free: set) -> str:
    if not free:
        return "none"
    return ", ".join(("^" if up else "") + name for name, up in sorted(free))


class Elaborator:
    def __init__(self, doc: TheoryDocument):
        self.doc = doc
        self.diagnostics: List[Diagnostic] = []
        self.jb: Optional[JetBundle] = None
        self.consts: Dict[str, sympy.Symbol] = {}
        self.lets: Dict[str, _Let] = {}
        self.params: Dict[str, bool] = {}
        self.metric: Optional[Tuple[sympy.Matrix, sympy.Matrix, Expr]] = None
        self._derivatives: Dict[Tuple[Expr, int], Expr] = {}

    # ----- entry point -----

    def run(self) -> Theory:
        spec = self._bundle()
        self._fail_if_errors()
        try:
            self.jb = jet_bundle(spec)
        except DuplicateFieldName as exc:
            self.diagnostics.append(error(self.doc.base.span, str(exc)))
            self._fail_if_errors()
        if spec.metric.kind != MetricKind.NONE:
            self.metric = self.jb.metric_matrices()

        for let in self.doc.lets:
            self._guard(self._let, let)
        L = self._guard(self._lagrangian)
        generators: Dict[str, GeneratorFamily] = {}
        for decl in self.doc.generators:
            family = self._guard(self._generator, decl)
            if family is not None:
                generators[decl.name] = family
        self._fail_if_errors()

        parametrized = any(
            SYMBOLS.jet_root_of(s) is not None
            for family in generators.values()
            for c in family.base_components
            for s in sympy.sympify(c).free_symbols)
        logger.info("elaborated theory %s: %d generators, parametrized=%s",
                    self.doc.name, len(generators), parametrized)
        return Theory(self.doc.name, spec, L, generators, parametrized=parametrized,
                      constants=tuple(self.consts.values()))

    def _guard(self, fn, *args):
        try:
            return fn(*args)
        except _Error as exc:
            self.diagnostics.append(error(exc.span, exc.message, exc.hint))
            return None

    def _fail_if_errors(self):
        if self.diagnostics:
            self.diagnostics.sort(key=lambda d: (d.span.line, d.span.column))
            raise ElaborationError(self.diagnostics)

    # ----- declarations -----

    def _bundle(self) -> Optional[BundleSpec]:
        doc = self.doc
        base = doc.base
        if base is None:
            self.diagnostics.append(error(doc.span, i18n.t("diagnostics.missing", what="base")))
            return None
        if base.dim != len(base.coords):
            self.diagnostics.append(error(base.span, i18n.t(
                "elaboration.base_coords", dim=base.dim, count=len(base.coords))))
        n1 = len(base.coords)
        fields = tuple(FieldSpec(f.name, FieldKind(f.kind), f.variational, f.target_dim)
                       for f in doc.fields)
        by_name = {f.name: f for f in fields}
        for decl in doc.fields:
            if decl.target_dim < 1:
                self.diagnostics.append(error(decl.span, i18n.t("elaboration.target_dim", name=decl.name)))

        metric = MetricSpec()
        if doc.metric is not None:
            kind = MetricKind(doc.metric.kind)
            if kind == MetricKind.FIXED:
                metric = MetricSpec(kind, None, minkowski_signature(n1))
            elif kind in (MetricKind.PARAMETRIC, MetricKind.VARIATIONAL):
                f = by_name.get(doc.metric.field)
                if f is None or f.kind != FieldKind.SYM2:
                    self.diagnostics.append(error(doc.metric.span, i18n.t(
                        "elaboration.metric_field", name=doc.metric.field)))
                elif f.variational != (kind == MetricKind.VARIATIONAL):
                    self.diagnostics.append(error(doc.metric.span, i18n.t(
                        "elaboration.metric_kind", name=f.name, kind=kind.value)))
                metric = MetricSpec(kind, doc.metric.field, minkowski_signature(n1))

        targets = []
        for t in doc.targets:
            f = by_name.get(t.field)
            if f is None or f.kind != FieldKind.SCALAR:
                self.diagnostics.append(error(t.span, i18n.t("elaboration.target_field", name=t.field)))
                continue
            sig = minkowski_signature(f.target_dim) if t.signature == "minkowski" else (1,) * f.target_dim
            targets.append(TargetSpec(t.label, t.field, sig))

        for c in doc.consts:
            if c.name in base.coords:
                self.diagnostics.append(error(c.span, i18n.t("diagnostics.duplicate", name=c.name)))
            self.consts[c.name] = SYMBOLS.parameter(c.name)

        if self.diagnostics:
            return None
        try:
            return BundleSpec(n1, base.coords, fields, metric, tuple(targets))
        except ValueError as exc:
            self.diagnostics.append(error(base.span, str(exc)))
            return None

    def _let(self, decl: LetDecl):
        names = [r.value for r in decl.indices]
        if any(not r.symbolic for r in decl.indices) or len(set(names)) != len(names):
            raise _Error(decl.span, i18n.t("elaboration.let_indices", name=decl.name))
        body = self.expression(decl.body)
        declared = {(r.value, r.up) for r in decl.indices}
        if body.free() != declared:
            raise _Error(decl.span, i18n.t("elaboration.free_mismatch", left=_describe_free(declared),
                                           right=_describe_free(body.free())))
        by_name = {s.name: s for s in body.slots}
        ranges = tuple(by_name[r.value].range for r in decl.indices)
        comps = {}
        for combo in product(*(range(rng[1]) for rng in ranges)):
            comps[combo] = canonicalize(body.at(dict(zip(names, combo))))
        self.lets[decl.name] = _Let(tuple(r.up for r in decl.indices), ranges, comps)

    def _lagrangian(self) -> Expr:
        span = self.doc.lagrangian_span or self.doc.span
        if self.doc.lagrangian is None:
            raise _Error(span, i18n.t("diagnostics.missing", what="lagrangian"))
        value = self.expression(self.doc.lagrangian)
        if not value.is_scalar:
            raise _Error(span, i18n.t("elaboration.lagrangian_free", names=_describe_free(value.free())))
        return canonicalize(value.value)

    def _generator(self, decl: GeneratorDecl) -> Optional[GeneratorFamily]:
        jb = self.jb
        roots: List[str] = []
        self.params = {}
        for p in decl.params:
            if p.name in self.consts or jb.spec.field_named(p.name) or p.name in self.lets:
                raise _Error(p.span, i18n.t("diagnostics.duplicate", name=p.name))
            names = [f"{p.name}{mu}" for mu in range(jb.n1)] if p.indexed else [p.name]
            for root in names:
                SYMBOLS.register_jet_root(root, jb.base)
            roots.extend(names)
            self.params[p.name] = p.indexed
        try:
            base = self._generator_base(decl)
            fiber: Dict[sympy.Symbol, Expr] = {}
            for assign in decl.fiber:
                self._fiber_assign(assign, fiber)
        finally:
            self.params = {}
        try:
            check_projectable(jb, base)
        except NotProjectable as exc:
            raise _Error(decl.span, i18n.t("elaboration.not_projectable", detail=str(exc))) from None
        fiber = {y: v for y, v in fiber.items() if v != 0}
        return GeneratorFamily(decl.name, base, fiber, tuple(roots))

    def _generator_base(self, decl: GeneratorDecl) -> Tuple[Expr, ...]:
        n1 = self.jb.n1
        if not decl.base:
            return tuple(sympy.Integer(0) for _ in range(n1))
        values = [self.expression(e) for e in decl.base]
        if len(values) == 1 and len(values[0].slots) == 1:
            slot = values[0].slots[0]
            if slot.up and slot.range == ("base", n1):
                return tuple(canonicalize(values[0].components[(mu,)]) for mu in range(n1))
        if len(values) == n1 and all(v.is_scalar for v in values):
            return tuple(canonicalize(v.value) for v in values)
        raise _Error(decl.span, i18n.t("elaboration.base_mismatch", dim=n1, count=len(values)))

    def _fiber_assign(self, assign: FiberAssign, fiber: Dict[sympy.Symbol, Expr]):
        jb = self.jb
        target = assign.target
        name = target.name
        spec = jb.spec.field_named(name)
        if spec is None:
            raise _Error(target.span, i18n.t("elaboration.unknown_identifier", name=name))
        refs = target.indices if isinstance(target, Indexed) else ()
        natural_up = spec.kind == FieldKind.SCALAR
        expected = self._field_rank(spec)
        if len(refs) != expected:
            raise _Error(target.span, i18n.t("elaboration.index_count", name=name,
                                             expected=expected, found=len(refs)))
        if any(r.up != natural_up for r in refs):
            raise _Error(target.span, i18n.t("elaboration.natural_position", name=name))
        value = self.expression(assign.value)
        declared = {(r.value, r.up) for r in refs if r.symbolic}
        if value.free() != declared:
            raise _Error(assign.span, i18n.t("elaboration.free_mismatch", left=_describe_free(declared),
                                             right=_describe_free(value.free())))
        ranges = [self._field_range(spec)] * len(refs)

        def assign_component(values: Tuple[int, ...]) -> Expr:
            return jb.field(name, *values)

        symbolic = [r for r in refs if r.symbolic]
        for combo in product(*(range(rng[1]) for r, rng in zip(refs, ranges) if r.symbolic)):
            it = iter(combo)
            values = tuple(next(it) if r.symbolic else self._literal(r, rng)
                           for r, rng in zip(refs, ranges))
            if spec.kind == FieldKind.SYM2 and values[0] > values[1]:
                continue
            y = assign_component(values)
            if y in fiber:
                raise _Error(assign.span, i18n.t("elaboration.assigned_twice", name=y.name))
            fiber[y] = canonicalize(value.at({r.value: v for r, v in zip(symbolic, combo)}))

    # ----- expressions -----

    def expression(self, node: Node) -> Tensor:
        if isinstance(node, BinOp) and node.op in ("+", "-"):
            left = self.expression(node.left)
            right = self.expression(node.right)
            if left.free() != right.free():
                raise _Error(node.span, i18n.t("elaboration.free_mismatch", left=_describe_free(left.free()),
                                               right=_describe_free(right.free())))
            ranges = {s.name: s.range for s in left.slots}
            for s in right.slots:
                if ranges[s.name] != s.range:
                    raise _Error(node.span, i18n.t("elaboration.range_mismatch", name=s.name))
            sign = 1 if node.op == "+" else -1
            comps = {}
            for key, v in left.components.items():
                assignment = {s.name: k for s, k in zip(left.slots, key)}
                comps[key] = v + sign * right.at(assignment)
            return Tensor(left.slots, comps)
        return self._product(node)

    def _product(self, node: Node) -> Tensor:
        factors: List[Node] = []
        denominators: List[Node] = []
        sign = self._flatten(node, factors, denominators)
        tensors: List[Tensor] = []
        known: Dict[str, Range] = {}
        deferred = []
        for f in factors:
            if isinstance(f, Indexed) and f.name in BUILTIN_TENSORS:
                deferred.append(f)
                continue
            t = self._factor(f)
            for s in t.slots:
                known.setdefault(s.name, s.range)
            tensors.append(t)
        for f in deferred:
            tensors.append(self._builtin(f, known))
        result = self._contract(tensors, node.span)
        scale = sympy.Integer(sign)
        for d in denominators:
            den = self.expression(d)
            if not den.is_scalar:
                raise _Error(d.span, i18n.t("elaboration.scalar_required", what="denominator"))
            scale = scale / den.value
        if scale == 1:
            return result
        return result.map(lambda v: scale * v)

    def _flatten(self, node: Node, factors: List[Node], denominators: List[Node]) -> int:
        if isinstance(node, BinOp) and node.op == "*":
            return self._flatten(node.left, factors, denominators) * \
                self._flatten(node.right, factors, denominators)
        if isinstance(node, BinOp) and node.op == "/":
            denominators.append(node.right)
            return self._flatten(node.left, factors, denominators)
        if isinstance(node, Neg):
            return -self._flatten(node.operand, factors, denominators)
        factors.append(node)
        return 1

    def _factor(self, node: Node) -> Tensor:
        if isinstance(node, Num):
            return Tensor.scalar(sympy.Rational(node.text))
        if isinstance(node, Name):
            return Tensor.scalar(self._name(node))
        if isinstance(node, Indexed):
            return self._indexed(node)
        if isinstance(node, Call):
            return self._call(node)
        if isinstance(node, Group):
            return self.expression(node.inner)
        if isinstance(node, BinOp) and node.op == "**":
            base = self.expression(node.left)
            exponent = self.expression(node.right)
            if not (base.is_scalar and exponent.is_scalar):
                raise _Error(node.span, i18n.t("elaboration.scalar_required", what="power"))
            return Tensor.scalar(base.value ** exponent.value)
        return self.expression(node)

    def _contract(self, tensors: Sequence[Tensor], span: SourceSpan) -> Tensor:
        occurrences: Dict[str, List[Slot]] = {}
        for t in tensors:
            for s in t.slots:
                occurrences.setdefault(s.name, []).append(s)
        free: List[Slot] = []
        summed: List[Tuple[str, Range]] = []
        for name, slots in occurrences.items():
            if len(slots) > 2:
                raise _Error(span, i18n.t("elaboration.repeated_index", name=name))
            if len(slots) == 2:
                a, b = slots
                if a.up == b.up:
                    raise _Error(span, i18n.t("elaboration.twice", name=name,
                                              position="up" if a.up else "down"),
                                 i18n.t("elaboration.twice_hint", name=name))
                if a.range != b.range:
                    raise _Error(span, i18n.t("elaboration.range_mismatch", name=name))
                summed.append((name, a.range))
            else:
                free.append(slots[0])
        comps = {}
        for fcombo in product(*(range(s.range[1]) for s in free)):
            total = sympy.Integer(0)
            for scombo in product(*(range(rng[1]) for _, rng in summed)):
                assignment = {s.name: v for s, v in zip(free, fcombo)}
                assignment.update({name: v for (name, _), v in zip(summed, scombo)})
                term = sympy.Integer(1)
                for t in tensors:
                    c = t.at(assignment) if t.slots else t.value
                    if c == 0:
                        term = sympy.Integer(0)
                        break
                    term = term * c
                total += term
            comps[fcombo] = total
        return Tensor(tuple(free), comps)

    # ----- atoms -----

    def _name(self, node: Name) -> Expr:
        jb = self.jb
        name = node.name
        if name == "sqrtdetg":
            if self.metric is None:
                raise _Error(node.span, i18n.t("elaboration.needs_metric", name=name))
            return self.metric[2]
        if name in self.consts:
            return self.consts[name]
        if name in self.params:
            if self.params[name]:
                raise _Error(node.span, i18n.t("elaboration.index_count", name=name, expected=1, found=0))
            return SYMBOLS.jet_parameter(name)
        if name in self.lets:
            let = self.lets[name]
            if let.ranges:
                raise _Error(node.span, i18n.t("elaboration.index_count", name=name,
                                               expected=len(let.ranges), found=0))
            return let.components[()]
        spec = jb.spec.field_named(name)
        if spec is not None:
            if self._field_rank(spec) != 0:
                raise _Error(node.span, i18n.t("elaboration.index_count", name=name,
                                               expected=self._field_rank(spec), found=0))
            return jb.field(name)
        if name in jb.spec.coords:
            return jb.base[jb.spec.coords.index(name)]
        raise _Error(node.span, i18n.t("elaboration.unknown_identifier", name=name))

    def _indexed(self, node: Indexed) -> Tensor:
        jb = self.jb
        name, refs = node.name, node.indices
        base = ("base", jb.n1)
        if name in self.params:
            self._arity(node, 1 if self.params[name] else 0)
            fn = lambda v: SYMBOLS.jet_parameter(f"{name}{v[0]}")
            return self._tabulate(refs, [base], self._adjust(fn, (True,), refs, node), node)
        if name in self.lets:
            let = self.lets[name]
            self._arity(node, len(let.ranges))
            self._fixed_positions(node, let.ranges, let.ups)
            fn = lambda v: let.components[tuple(v)]
            return self._tabulate(refs, let.ranges, self._adjust(fn, let.ups, refs, node), node)
        target = jb.targets.get(name)
        if target is not None:
            self._arity(node, 2)
            rng = ("target:" + self._target_field(name), target.dim)
            self._fixed_positions(node, (rng, rng), (False, False))
            fn = lambda v: SYMBOLS.target_component(name, *v)
            return self._tabulate(refs, [rng, rng], fn, node)
        spec = jb.spec.field_named(name)
        if spec is None:
            raise _Error(node.span, i18n.t("elaboration.unknown_identifier", name=name))
        rank = self._field_rank(spec)
        self._arity(node, rank)
        rng = self._field_range(spec)
        ranges = [rng] * rank
        if spec.kind == FieldKind.SCALAR:
            self._fixed_positions(node, ranges, (True,))
            return self._tabulate(refs, ranges, lambda v: jb.field(name, *v), node)
        if spec.kind == FieldKind.SYM2 and jb.spec.metric.field == name:
            return self._tabulate(refs, ranges, self._metric_component(refs), node)
        natural = (False,) * rank
        fn = lambda v: jb.field(name, *v)
        return self._tabulate(refs, ranges, self._adjust(fn, natural, refs, node), node)

    def _builtin(self, node: Indexed, known: Dict[str, Range]) -> Tensor:
        refs = node.indices
        hinted = [known[r.value] for r in refs if r.symbolic and r.value in known]
        if node.name == "eps":
            dim = len(refs)
            rng = hinted[0] if hinted else ("base", self.jb.n1)
            if rng[1] != dim or any(h != rng for h in hinted):
                raise _Error(node.span, i18n.t("elaboration.eps_dim", count=dim, dim=rng[1]))
            return self._tabulate(refs, [rng] * dim, lambda v: sympy.Integer(levi_civita(*v)), node)
        self._arity(node, 2)
        rng = hinted[0] if hinted else ("base", self.jb.n1)
        if node.name == "delta":
            return self._tabulate(refs, [rng, rng], lambda v: sympy.Integer(int(v[0] == v[1])), node)
        sig = minkowski_signature(rng[1])
        return self._tabulate(refs, [rng, rng],
                              lambda v: sympy.Integer(sig[v[0]] if v[0] == v[1] else 0), node)

    def _call(self, node: Call) -> Tensor:
        inner = self.expression(node.args[0])
        if node.func == "sqrt":
            if not inner.is_scalar:
                raise _Error(node.span, i18n.t("elaboration.scalar_required", what="sqrt argument"))
            return Tensor.scalar(sympy.sqrt(canonicalize(inner.value)))
        jb = self.jb
        parametric = set(jb.parametric)
        for v in inner.components.values():
            bad = sympy.sympify(v).free_symbols & parametric
            if bad:
                raise _Error(node.span, i18n.t("elaboration.differentiate_parametric",
                                               name=jb.field_of[sorted(bad, key=str)[0]]))
        refs = node.indices
        ranges = [("base", jb.n1)] * len(refs)
        natural = (False,) * len(refs)
        comps: Dict[Tuple[int, ...], Expr] = {}
        slots: Tuple[Slot, ...] = ()
        for key, e in inner.components.items():
            def fn(v, e=e):
                out = e
                for mu in v:
                    out = self._derivative(out, mu)
                return out
            sub = self._tabulate(refs, ranges, self._adjust(fn, natural, refs, node), node)
            slots = sub.slots
            for dkey, val in sub.components.items():
                comps[key + dkey] = val
        return Tensor(inner.slots + slots, comps)

    def _derivative(self, e: Expr, mu: int) -> Expr:
        key = (e, mu)
        if key not in self._derivatives:
            self._derivatives[key] = total_derivative(self.jb, e, mu)
        return self._derivatives[key]

    # ----- index helpers -----

    def _tabulate(self, refs: Sequence[IndexRef], ranges: Sequence[Range],
                  fn: Callable[[Tuple[int, ...]], Expr], node) -> Tensor:
        slots = []
        for r, rng in zip(refs, ranges):
            if r.symbolic:
                slots.append(Slot(r.value, r.up, rng))
            else:
                self._literal(r, rng)
        comps = {}
        for combo in product(*(range(s.range[1]) for s in slots)):
            it = iter(combo)
            values = tuple(next(it) if r.symbolic else r.value for r in refs)
            comps[combo] = sympy.sympify(fn(values))
        return Tensor(tuple(slots), comps)

    @staticmethod
    def _literal(ref: IndexRef, rng: Range) -> int:
        if not 0 <= ref.value < rng[1]:
            raise _Error(ref.span, i18n.t("elaboration.out_of_range", index=ref.value, dim=rng[1]))
        return ref.value

    def _adjust(self, fn, natural: Sequence[bool], refs: Sequence[IndexRef], node):
        """Move indices from their natural positions to the written ones with g and its inverse."""
        flips = [i for i, (n, r) in enumerate(zip(natural, refs)) if n != r.up]
        if not flips:
            return fn
        if self.metric is None:
            raise _Error(node.span, i18n.t("elaboration.needs_metric", name=node.name),
                         i18n.t("elaboration.needs_metric_hint"))
        g, ginv, _ = self.metric
        n1 = self.jb.n1

        def adjusted(values):
            total = sympy.Integer(0)
            for inner in product(range(n1), repeat=len(flips)):
                moved = list(values)
                coeff = sympy.Integer(1)
                for i, k in zip(flips, inner):
                    coeff *= (ginv if refs[i].up else g)[values[i], k]
                    moved[i] = k
                if coeff != 0:
                    total += coeff * fn(tuple(moved))
            return total

        return adjusted

    def _metric_component(self, refs: Sequence[IndexRef]):
        g, ginv, _ = self.metric
        ups = tuple(r.up for r in refs)
        if ups == (True, True):
            return lambda v: ginv[v[0], v[1]]
        if ups == (False, False):
            return lambda v: g[v[0], v[1]]
        return lambda v: sympy.Integer(int(v[0] == v[1]))

    def _fixed_positions(self, node: Indexed, ranges: Sequence[Range], natural: Sequence[bool]):
        for r, rng, up in zip(node.indices, ranges, natural):
            if r.up != up and rng[0] != "base":
                raise _Error(r.span, i18n.t("elaboration.fixed_position", name=node.name))

    def _arity(self, node: Indexed, expected: int):
        if len(node.indices) != expected:
            raise _Error(node.span, i18n.t("elaboration.index_count", name=node.name,
                                           expected=expected, found=len(node.indices)))

    @staticmethod
    def _field_rank(spec: FieldSpec) -> int:
        if spec.kind == FieldKind.SCALAR:
            return 0 if spec.target_dim == 1 else 1
        return 1 if spec.kind == FieldKind.COVECTOR else 2

    def _field_range(self, spec: FieldSpec) -> Range:
        if spec.kind == FieldKind.SCALAR:
            return ("target:" + spec.name, spec.target_dim)
        return ("base", self.jb.n1)

    def _target_field(self, label: str) -> str:
        for t in self.jb.spec.targets:
            if t.label == label:
                return t.field
        raise KeyError(label)


def elaborate(doc: TheoryDocument) -> Theory:
    """
    Build a Theory from a parsed document.

    Raises:
        ElaborationError: with one diagnostic per failing statement
    """
    return Elaborator(doc).run()
