"""
Data models for multiphase

This module contains the dataclasses describing field theories:
- FieldKind / FieldSpec: index structure of a field and whether it is varied
- MetricKind / MetricSpec: how a theory carries its spacetime metric
- TargetSpec: metric on the target manifold of a scalar multiplet
- BundleSpec: base dimension, coordinate names and fields of Y -> X
- Section: a symbolic section of Y -> X
- GeneratorFamily: infinitesimal generators of a gauge algebra on Y
- Theory: bundle, Lagrangian density and generators
- ExpectedObject / CatalogEntry: closed forms the engine must reproduce
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Mapping, Optional, Sequence, Tuple

import sympy

from .symcore import SYMBOLS, Expr, SymbolKind, substitute


class FieldKind(Enum):
    """Index structure of a field."""
    SCALAR = "scalar"
    COVECTOR = "covector"
    SYM2 = "sym2"


class MetricKind(Enum):
    """
    How a theory carries its spacetime metric.

    - FIXED: numeric Minkowski components, no symbols
    - PARAMETRIC: a sym2 field with fiber coordinates but no multivelocities
    - VARIATIONAL: a sym2 field varied like any other
    - NONE: no metric; raising indices is an error
    """
    FIXED = "fixed"
    PARAMETRIC = "parametric"
    VARIATIONAL = "variational"
    NONE = "none"


@dataclass(frozen=True)
class FieldSpec:
    """
    A field declaration.

    Attributes:
        name: Field name, also the prefix of its fiber coordinates
        kind: Index structure
        variational: False for parametric fields (no multivelocities, no momenta)
        target_dim: Number of components of a scalar multiplet
    """
    name: str
    kind: FieldKind
    variational: bool = True
    target_dim: int = 1


@dataclass(frozen=True)
class MetricSpec:
    """Metric declaration; `field` names the sym2 field for parametric/variational metrics."""
    kind: MetricKind = MetricKind.NONE
    field: Optional[str] = None
    signature: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class TargetSpec:
    """A metric G_AB(phi) over the fiber coordinates of a scalar multiplet."""
    label: str
    field: str
    signature: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class BundleSpec:
    """
    A covariant configuration bundle Y -> X.

    Attributes:
        base_dim: n+1, the dimension of X
        coords: Names of the base coordinates
        fields: Field declarations, in fiber-coordinate order
        metric: Metric declaration
        targets: Target-manifold metrics
    """
    base_dim: int
    coords: Tuple[str, ...]
    fields: Tuple[FieldSpec, ...]
    metric: MetricSpec = field(default_factory=MetricSpec)
    targets: Tuple[TargetSpec, ...] = ()

    def __post_init__(self):
        if self.base_dim < 1:
            raise ValueError("base dimension must be at least 1")
        if len(self.coords) != self.base_dim:
            raise ValueError(f"expected {self.base_dim} coordinate names, got {len(self.coords)}")
        if not any(f.variational for f in self.fields):
            raise ValueError("a bundle needs at least one variational field")

    def field_named(self, name: str) -> Optional[FieldSpec]:
        for f in self.fields:
            if f.name == name:
                return f
        return None


@dataclass(frozen=True)
class Section:
    """
    A symbolic section phi of Y -> X.

    Attributes:
        components: Fiber coordinate -> expression in the base coordinates;
            missing fiber coordinates are left as their own (constant) symbols
    """
    components: Mapping[sympy.Symbol, Expr] = field(default_factory=dict)

    def component(self, y: sympy.Symbol) -> Expr:
        return self.components.get(y, y)


@dataclass(frozen=True)
class GeneratorFamily:
    """
    Infinitesimal generators xi_Y = xi^mu d_mu + xi^A d_A of a gauge algebra.

    Components are expressions in chart coordinates and jet parameters of the
    algebra functions named in `jet_roots` (chi, xi0, lam, ...).

    Attributes:
        name: Generator name as used on the command line
        base_components: xi^mu, one per base coordinate
        fiber_components: Fiber coordinate -> xi^A (absent means zero)
        jet_roots: Names of the algebra functions
        description: One-line human description
    """
    name: str
    base_components: Tuple[Expr, ...]
    fiber_components: Mapping[sympy.Symbol, Expr] = field(default_factory=dict)
    jet_roots: Tuple[str, ...] = ()
    description: str = ""

    def fiber_component(self, y: sympy.Symbol) -> Expr:
        return self.fiber_components.get(y, sympy.Integer(0))

    def is_zero(self) -> bool:
        return (all(c == 0 for c in self.base_components)
                and all(c == 0 for c in self.fiber_components.values()))

    def relabeled(self, suffix: str, base_coords: Sequence[sympy.Symbol]) -> "GeneratorFamily":
        """
        A copy whose algebra functions are renamed root -> root + suffix.

        Used to form a second, independent algebra element of the same family.
        """
        for root in self.jet_roots:
            SYMBOLS.register_jet_root(root + suffix, base_coords)
        bindings = {}
        for e in list(self.base_components) + list(self.fiber_components.values()):
            for s in sympy.sympify(e).free_symbols:
                sid = SYMBOLS.get(s)
                if sid is not None and sid.kind == SymbolKind.JET_PARAMETER \
                        and sid.label in self.jet_roots:
                    bindings[s] = SYMBOLS.jet_parameter(sid.label + suffix, *sid.indices)
        return GeneratorFamily(
            name=self.name + suffix,
            base_components=tuple(substitute(c, bindings) for c in self.base_components),
            fiber_components={y: substitute(c, bindings) for y, c in self.fiber_components.items()},
            jet_roots=tuple(r + suffix for r in self.jet_roots),
            description=self.description,
        )


@dataclass
class Theory:
    """
    A first-order field theory.

    Attributes:
        name: Theory identifier (catalog id for shipped theories)
        bundle: The configuration bundle
        lagrangian: L, the coefficient of d^{n+1}x, an expression on J1Y
        generators: Generator families by name
        parametrized: True when the gauge group covers the base diffeomorphisms
        constants: Free parameters such as masses
        description: One-line human description
    """
    name: str
    bundle: BundleSpec
    lagrangian: Expr
    generators: Dict[str, GeneratorFamily] = field(default_factory=dict)
    parametrized: bool = False
    constants: Tuple[sympy.Symbol, ...] = ()
    description: str = ""

    @property
    def metric_kind(self) -> MetricKind:
        return self.bundle.metric.kind

    def generator(self, name: str) -> GeneratorFamily:
        try:
            return self.generators[name]
        except KeyError:
            raise KeyError(f"theory {self.name} has no generator {name!r}") from None


@dataclass(frozen=True)
class ExpectedObject:
    """
    A closed form the engine must reproduce.

    Attributes:
        value: Expr, mapping of Exprs, or DiffForm
        note: Where the closed form comes from, in words
    """
    value: object
    note: str = ""


@dataclass
class CatalogEntry:
    """A shipped theory together with its expected derived objects."""
    id: str
    theory: Theory
    expected: Dict[str, ExpectedObject] = field(default_factory=dict)
