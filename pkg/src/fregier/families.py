"""Canonical conic families and their closed-form Frégier loci.

Every family stores two vectorized builders: the studied conic and its
Frégier locus, both as polynomial matrices in the parameters (rational
closed forms are multiplied through by their denominators).  Builders
accept numpy arrays and broadcast, which is what the parameter scans use.

Hyperbolic and elliptic general conics use semi-axis parameters,
``x1^2/a^2 + x2^2/b^2 = x0^2``; the Euclidean general conic uses
coefficients, ``b x1^2 + a x2^2 = x0^2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

from .conic import Conic, rank_classify
from .errors import DomainViolation
from .locus import LocusResult, _describe_degenerate
from .metric import ELLIPTIC, EUCLIDEAN, HYPERBOLIC, Geometry
from .projective import DEFAULT_TOL, Tolerance

_ALIASES = {"lambda": "lam", "λ": "lam", "l": "lam", "μ": "mu", "m": "mu"}


def _sym(m00, m11, m22, m01=0.0, m02=0.0, m12=0.0) -> np.ndarray:
    m00, m11, m22, m01, m02, m12 = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (m00, m11, m22, m01, m02, m12)))
    return np.stack([
        np.stack([m00, m01, m02], -1),
        np.stack([m01, m11, m12], -1),
        np.stack([m02, m12, m22], -1),
    ], -2)


def _absolute_plus(scale, extra) -> np.ndarray:
    """scale * (x1^2 + x2^2 - x0^2) + extra."""
    scale = np.asarray(scale, dtype=float)[..., None, None]
    return scale * np.diag([-1.0, 1.0, 1.0]) + extra


# -- builders -----------------------------------------------------------------

def _eu_general_conic(a, b):
    return _sym(-1.0, b, a)


def _eu_general_locus(a, b):
    # scaling by (a - b)/(a + b) about the centre
    return _sym(-(a - b) ** 2, b * (a + b) ** 2, a * (a + b) ** 2)


def _eu_parabola_conic(a):
    return _sym(0.0, a, 0.0, 0.0, -0.5, 0.0)


def _eu_parabola_locus(a):
    # x0 x2 = a x1^2 + x0^2 / a, times a
    return _sym(1.0, a * a, 0.0, 0.0, -a / 2, 0.0)


def _semi_axis_conic(a, b):
    a2, b2 = a * a, b * b
    return _sym(-a2 * b2, b2, a2)


def _semi_axis_locus(a, b, eps):
    """Locus of x1^2/a^2 + x2^2/b^2 = x0^2 for dual absolute diag(eps, 1, 1)."""
    a2, b2 = a * a, b * b
    p = a2 + b2 + eps * a2 * b2
    q1 = a2 - b2 - eps * a2 * b2
    q2 = b2 - a2 - eps * a2 * b2
    return _sym(-a2 * b2 * q1**2 * q2**2, b2 * p**2 * q2**2, a2 * p**2 * q1**2)


def _hy_general_locus(a, b):
    return _semi_axis_locus(a, b, -1.0)


def _el_general_locus(a, b):
    return _semi_axis_locus(a, b, 1.0)


def _hy_parabola_conic(lam, mu):
    # lam N + (x0 + x1)(mu (x0 + x1) + x1)
    return _absolute_plus(lam, _sym(mu, mu + 1, 0.0, mu + 0.5))


def _hy_parabola_locus(lam, mu):
    k = 5 * mu * lam**3 + 12 * mu * lam**2 + 9 * mu * lam + 2 * mu + 1
    c0 = k + 4 * lam * (lam + 1)
    c1 = k + lam * (5 * lam**2 + 8 * lam + 5)
    # lam^4 N + (x0 + x1)(c0 x0 + c1 x1)
    return _absolute_plus(lam**4, _sym(c0, c1, 0.0, (c0 + c1) / 2))


def _hy_osc_conic(lam):
    return _absolute_plus(lam, _sym(0.0, 0.0, 0.0, 0.0, 0.5, 0.5))


def _hy_osc_locus(lam):
    # lam^2 N + (x0 + x1)(5 lam x2 + 4 (x0 + x1))
    return _absolute_plus(lam**2, _sym(4.0, 4.0, 0.0, 4.0, 2.5 * lam, 2.5 * lam))


def _hy_circle_real_conic(lam):
    return _absolute_plus(lam, _sym(-1.0, 1.0, 0.0))


def _hy_circle_real_locus(lam):
    k = 5 * lam**2 + 8 * lam + 4
    return _absolute_plus(lam**3, _sym(-k, k, 0.0))


def _hy_circle_complex_conic(lam):
    return _absolute_plus(lam, _sym(0.0, 1.0, 1.0))


def _hy_circle_complex_locus(lam):
    k = 5 * lam**2 + 8 * lam + 4
    return _absolute_plus(lam**3, _sym(0.0, k, k))


def _hy_horocycle_conic(lam):
    return _absolute_plus(lam, _sym(1.0, 0.0, 1.0, 0.0, -1.0))


def _hy_horocycle_locus(lam):
    return _absolute_plus(lam, _sym(5.0, 0.0, 5.0, 0.0, -5.0))


# -- domains ----------------------------------------------------------------------

_EXACT = 1e-12


def _nonzero(eps=_EXACT, **kw):
    return [f"{k} must be non-zero" for k, v in kw.items() if abs(v) <= eps]


def _not_both_negative(a, b):
    return ["a and b must not both be negative"] if a < 0 and b < 0 else []


def _excluded(lam, values, eps=_EXACT):
    return [f"lam = {v:g} is excluded" for v in values if abs(lam - v) <= eps]


def _eu_general_domain(a, b, eps=_EXACT):
    return _nonzero(eps, a=a, b=b) + _not_both_negative(a, b)


def _hy_general_domain(a, b, eps=_EXACT):
    errs = _nonzero(eps, a=a, b=b) + _not_both_negative(a, b)
    if abs(a * a - 1) <= eps and abs(b * b - 1) <= eps:
        errs.append("a and b must not both be 1 (the absolute itself)")
    return errs


def _el_general_domain(a, b, eps=_EXACT):
    return _nonzero(eps, a=a, b=b) + _not_both_negative(a, b)


# -- pencil labels ------------------------------------------------------------

def _close(x, y):
    return abs(x - y) <= 1e-9 * max(1.0, abs(x), abs(y))


def _hy_general_class(a, b):
    a2, b2 = a * a, b * b
    if _close(a2, 1) or _close(b2, 1) or _close(a2, b2):
        return "bitangent"
    return "general"


def _el_general_class(a, b):
    return "bitangent" if _close(a * a, b * b) else "general"


def _hy_parabola_class(lam, mu):
    return "bitangent" if _close(mu, -0.5) else "simple_contact"


@dataclass(frozen=True)
class Family:
    tag: str
    geometry: Geometry
    params: tuple
    conic: Callable
    locus: Callable
    domain: Callable  # (**params, eps) -> list of violated conditions
    pencil_class: Callable | None
    description: str


def _fam(tag, g, params, conic, locus, domain, pclass, description):
    return Family(tag, g, params, conic, locus, domain, pclass, description)


FAMILIES: Mapping[str, Family] = MappingProxyType({f.tag: f for f in [
    _fam("eu_general", EUCLIDEAN, ("a", "b"), _eu_general_conic, _eu_general_locus,
         _eu_general_domain, None, "b x1^2 + a x2^2 = x0^2"),
    _fam("eu_parabola", EUCLIDEAN, ("a",), _eu_parabola_conic, _eu_parabola_locus,
         lambda a, eps=_EXACT: _nonzero(eps, a=a), None, "x0 x2 = a x1^2"),
    _fam("hy_general", HYPERBOLIC, ("a", "b"), _semi_axis_conic, _hy_general_locus,
         _hy_general_domain, _hy_general_class, "x1^2/a^2 + x2^2/b^2 = x0^2"),
    _fam("hy_parabola", HYPERBOLIC, ("lam", "mu"), _hy_parabola_conic, _hy_parabola_locus,
         lambda lam, mu, eps=_EXACT: _excluded(lam, (0.0, -0.5), eps), _hy_parabola_class,
         "lam N + (x0 + x1)(mu (x0 + x1) + x1) = 0"),
    _fam("hy_osc_parabola", HYPERBOLIC, ("lam",), _hy_osc_conic, _hy_osc_locus,
         lambda lam, eps=_EXACT: _excluded(lam, (0.0,), eps), lambda lam: "osculating",
         "lam N + (x0 + x1) x2 = 0"),
    _fam("hy_circle_real", HYPERBOLIC, ("lam",), _hy_circle_real_conic, _hy_circle_real_locus,
         lambda lam, eps=_EXACT: _excluded(lam, (0.0, -1.0), eps), lambda lam: "bitangent",
         "lam N + (x1 - x0)(x1 + x0) = 0"),
    _fam("hy_circle_complex", HYPERBOLIC, ("lam",), _hy_circle_complex_conic,
         _hy_circle_complex_locus, lambda lam, eps=_EXACT: _excluded(lam, (0.0, -1.0), eps),
         lambda lam: "bitangent", "lam N + x1^2 + x2^2 = 0"),
    _fam("hy_horocycle", HYPERBOLIC, ("lam",), _hy_horocycle_conic, _hy_horocycle_locus,
         lambda lam, eps=_EXACT: _excluded(lam, (0.0,), eps), lambda lam: "hyperosculating",
         "lam N + (x2 - x0)^2 = 0"),
    _fam("el_general", ELLIPTIC, ("a", "b"), _semi_axis_conic, _el_general_locus,
         _el_general_domain, _el_general_class, "x1^2/a^2 + x2^2/b^2 = x0^2"),
]})


def canonical_param(name: str) -> str:
    return _ALIASES.get(name, name)


def get_family(tag: str) -> Family:
    try:
        return FAMILIES[tag.replace("-", "_")]
    except KeyError:
        raise DomainViolation(f"unknown family {tag!r}; known: {sorted(FAMILIES)}") from None


@dataclass(frozen=True)
class FamilySpec:
    """A family tag with concrete parameter values inside its domain."""

    tag: str
    params: Mapping[str, float]

    def __init__(self, tag: str, params: Mapping[str, float] | None = None, **kw):
        fam = get_family(tag)
        values = {canonical_param(k): float(v) for k, v in {**(params or {}), **kw}.items()}
        missing = [p for p in fam.params if p not in values]
        extra = [k for k in values if k not in fam.params]
        if missing or extra:
            raise DomainViolation(f"{fam.tag} takes parameters {fam.params}; "
                                  f"missing {missing}, unexpected {extra}")
        ordered = {p: values[p] for p in fam.params}
        errs = fam.domain(**ordered)
        if errs:
            raise DomainViolation(f"{fam.tag}{tuple(ordered.values())}: " + "; ".join(errs))
        object.__setattr__(self, "tag", fam.tag)
        object.__setattr__(self, "params", MappingProxyType(ordered))

    @property
    def family(self) -> Family:
        return FAMILIES[self.tag]

    @property
    def geometry(self) -> Geometry:
        return self.family.geometry

    def conic(self) -> Conic:
        return Conic(self.family.conic(**self.params))

    def locus_conic(self) -> Conic:
        """Closed-form Frégier locus (denominators cleared)."""
        return Conic(self.family.locus(**self.params))

    @property
    def pencil_class(self) -> str | None:
        pc = self.family.pencil_class
        return None if pc is None else pc(**self.params)

    def __repr__(self):
        args = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"FamilySpec({self.tag}: {args})"


def closed_form_locus(spec: FamilySpec, tol: Tolerance = DEFAULT_TOL,
                      with_range: bool = True) -> LocusResult:
    """Closed-form Frégier locus of a family member, with rank and carriers."""
    conic = spec.locus_conic()
    rank = rank_classify(conic, tol)
    if rank.rank == 3:
        return LocusResult("closed_form", conic.normalized(), rank, "conic")
    return _describe_degenerate(spec.geometry, spec.conic(), conic.matrix, tol,
                                source="closed_form", with_range=with_range)
