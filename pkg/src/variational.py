"""
Variational - the Lagrangian side of a first-order field theory.

This module handles:
- The covariant Legendre transform (multimomenta, covariant Hamiltonian, FL map)
- The Cartan form by three routes (direct formula, FL pullback, contact form)
- Omega_L, Euler-Lagrange expressions, and the section identities that
  connect them (EL through the Cartan form, Lagrangian reconstruction,
  vanishing of W ⨼ Omega_L for tangent or vertical W)
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import sympy

from .geometry import (
    ChartMap,
    DiffForm,
    VectorField,
    base_hodge,
    coordinate_form,
    exterior_d,
    interior,
    pullback,
    volume_form,
    wedge,
)
from .jets import (
    JetBundle,
    canonical_omega,
    canonical_theta,
    jet_bundle,
    prolong_section,
    prolong_vector,
    section_bindings,
    total_derivative,
)
from .models import Section, Theory
from .symcore import (
    Expr,
    MultiphaseError,
    canonicalize,
    diff,
    equal_symbolic,
    is_zero_symbolic,
    substitute,
)

logger = logging.getLogger(__name__)


class WNotInEitherClass(MultiphaseError):
    key = "errors.w_not_in_either_class"


class NotVertical(MultiphaseError):
    key = "errors.not_vertical"


def tidy(e) -> Expr:
    """Canonical form, collapsed to 0 when cancellation over radicals shows it vanishes."""
    e = canonicalize(e)
    if e != 0 and is_zero_symbolic(e):
        return sympy.Integer(0)
    return e


@dataclass(frozen=True)
class LegendreTransform:
    """
    Result of the covariant Legendre transform.

    Attributes:
        momenta: p_A^mu symbol -> ∂L/∂v^A_mu
        hamiltonian: p = L - p_A^mu v^A_mu
        chart_map: FL: J1Y -> Z fixing base and fiber coordinates
    """
    momenta: Dict[sympy.Symbol, Expr]
    hamiltonian: Expr
    chart_map: ChartMap


def legendre(theory: Theory) -> LegendreTransform:
    jb = jet_bundle(theory.bundle)
    L = theory.lagrangian
    momenta: Dict[sympy.Symbol, Expr] = {}
    contraction = sympy.Integer(0)
    for A in jb.variational:
        for mu in range(jb.n1):
            v = jb.velocity(A, mu)
            pA = tidy(diff(L, v))
            momenta[jb.momentum(A, mu)] = pA
            contraction += pA * v
    hamiltonian = tidy(L - contraction)
    values = {jb.hamiltonian: hamiltonian, **momenta}
    comps = tuple(values.get(c, c) for c in jb.Z.coords)
    return LegendreTransform(momenta, hamiltonian, ChartMap(jb.J1Y, jb.Z, comps))


def _cartan_from_coefficients(jb: JetBundle, momenta: Dict[sympy.Symbol, Expr],
                              hamiltonian: Expr) -> DiffForm:
    chart = jb.J1Y
    form = volume_form(chart).scale(hamiltonian)
    for A in jb.variational:
        dA = coordinate_form(chart, A)
        for mu in range(jb.n1):
            coeff = momenta[jb.momentum(A, mu)]
            if coeff != 0:
                form = form + wedge(dA, base_hodge(chart, mu)).scale(coeff)
    return form


def cartan_form(theory: Theory) -> DiffForm:
    """Theta_L = (∂L/∂v^A_mu) dy^A ^ d^n x_mu + (L - (∂L/∂v^A_mu) v^A_mu) d^{n+1}x."""
    jb = jet_bundle(theory.bundle)
    leg = legendre(theory)
    return _cartan_from_coefficients(jb, leg.momenta, leg.hamiltonian)


def cartan_form_via_legendre(theory: Theory) -> DiffForm:
    """FL^* Theta."""
    jb = jet_bundle(theory.bundle)
    return pullback(legendre(theory).chart_map, canonical_theta(jb))


def cartan_form_via_contact(theory: Theory) -> DiffForm:
    """L d^{n+1}x + (∂L/∂v^A_mu)(dy^A - v^A_nu dx^nu) ^ d^n x_mu."""
    jb = jet_bundle(theory.bundle)
    chart = jb.J1Y
    L = theory.lagrangian
    form = volume_form(chart).scale(L)
    for A in jb.variational:
        contact = coordinate_form(chart, A)
        for nu, x in enumerate(jb.base):
            contact = contact - coordinate_form(chart, x).scale(jb.velocity(A, nu))
        for mu in range(jb.n1):
            coeff = diff(L, jb.velocity(A, mu))
            if coeff != 0:
                form = form + wedge(contact, base_hodge(chart, mu)).scale(coeff)
    return form.map_coefficients(tidy)


def omega_L(theory: Theory) -> DiffForm:
    """Omega_L = -d Theta_L."""
    return -exterior_d(cartan_form(theory))


def omega_L_via_legendre(theory: Theory) -> DiffForm:
    """FL^* Omega."""
    jb = jet_bundle(theory.bundle)
    return pullback(legendre(theory).chart_map, canonical_omega(jb))


def euler_lagrange(theory: Theory) -> Dict[sympy.Symbol, Expr]:
    """
    δL/δy^A = ∂L/∂y^A - D_mu(∂L/∂v^A_mu), one expression on J2Y per
    variational fiber coordinate. Parametric fields produce no equation.
    """
    jb = jet_bundle(theory.bundle)
    L = theory.lagrangian
    out: Dict[sympy.Symbol, Expr] = {}
    for A in jb.variational:
        e = diff(L, A)
        for mu in range(jb.n1):
            e -= total_derivative(jb, diff(L, jb.velocity(A, mu)), mu)
        out[A] = tidy(e)
    return out


def _require_vertical(jb: JetBundle, V: VectorField):
    if any(V.component(x) != 0 for x in jb.base):
        raise NotVertical("variation field has base components")
    if any(V.component(y) != 0 for y in jb.parametric):
        raise NotVertical("variation field moves a parametric field")


def el_via_cartan(theory: Theory, phi: Section, V: VectorField) -> Expr:
    """
    Top coefficient of (j^1 phi)^*(j^1 V ⨼ Omega_L) for a vertical V on Y.

    Raises:
        NotVertical: V has base components or parametric components
    """
    jb = jet_bundle(theory.bundle)
    _require_vertical(jb, V)
    contracted = interior(prolong_vector(jb, V), omega_L(theory))
    pulled = pullback(prolong_section(jb, phi), contracted)
    return pulled.coefficient(tuple(range(jb.n1)))


def el_residual_contraction(theory: Theory, phi: Section, V: VectorField) -> Expr:
    """V^A (D_mu(∂L/∂v^A_mu) - ∂L/∂y^A) on j^2 phi."""
    jb = jet_bundle(theory.bundle)
    el = euler_lagrange(theory)
    bindings = section_bindings(jb, phi, order=2)
    total = sympy.Integer(0)
    for A, e in el.items():
        VA = V.component(A)
        if VA != 0:
            total -= VA * e
    return substitute(total, bindings)


def lagrangian_reconstruction(theory: Theory, phi: Section) -> Tuple[Expr, Expr]:
    """
    Both sides of (j^1 phi)^* Theta_L = L(j^1 phi) d^{n+1}x.

    Returns:
        (top coefficient of the pulled-back Cartan form, L on j^1 phi)
    """
    jb = jet_bundle(theory.bundle)
    pulled = pullback(prolong_section(jb, phi), cartan_form(theory))
    lhs = pulled.coefficient(tuple(range(jb.n1)))
    rhs = substitute(theory.lagrangian, section_bindings(jb, phi))
    return canonicalize(lhs), rhs


def vertical_contraction_check(theory: Theory, phi: Section, W: VectorField) -> Expr:
    """
    Top coefficient of (j^1 phi)^*(W ⨼ Omega_L).

    W must be, along the image of j^1 phi, the sum of T(j^1 phi)·w (with
    w^mu = W^{x^mu}) and a field vertical over Y.

    Raises:
        WNotInEitherClass: the Y-part of W is not tangent to the image
    """
    jb = jet_bundle(theory.bundle)
    j1 = prolong_section(jb, phi)
    bindings = j1.bindings()
    w = [substitute(W.component(x), bindings) for x in jb.base]
    for c, comp in zip(jb.Y.coords, j1.components[:jb.Y.dim]):
        tangent = sum((w[mu] * sympy.diff(comp, x) for mu, x in enumerate(jb.base)),
                      sympy.Integer(0))
        if not equal_symbolic(substitute(W.component(c), bindings), tangent):
            raise WNotInEitherClass(f"component along {c} is neither tangent nor vertical")
    pulled = pullback(j1, interior(W, omega_L(theory)))
    return pulled.coefficient(tuple(range(jb.n1)))


def tangent_lift(theory: Theory, phi: Section, w: List[Expr]) -> VectorField:
    """
    A vector field on J1Y that equals T(j^1 phi)·w along the image.

    Components are the base derivatives of the prolonged section, expressed
    in base coordinates, so they only make sense on the image.
    """
    jb = jet_bundle(theory.bundle)
    j1 = prolong_section(jb, phi)
    comps = {}
    for c, comp in zip(jb.J1Y.coords, j1.components):
        comps[c] = sum((w[mu] * sympy.diff(comp, x) for mu, x in enumerate(jb.base)),
                       sympy.Integer(0))
    return VectorField.build(jb.J1Y, comps)
