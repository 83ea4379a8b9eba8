"""Pencils spanned by a conic and the absolute: singular members, base points, class.

The singular members of ``lam C + mu N`` are the roots of a binary cubic,
found as generalized eigenvalues of ``(C, -N)`` (QZ, so no polynomial
coefficients are formed).  Eigenvalues belonging to a defective root are
individually inaccurate but their mean is not, so clustered roots are
replaced by the cluster mean before the member is built.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .conic import (
    ConicRank,
    _maybe_real,
    intersect_line,
    matrix_of,
    normalize_matrix,
    rank_classify,
    split_line_pair,
)
from .errors import ClassificationAmbiguous, ProportionalConics, SingularConic
from .projective import DEFAULT_TOL, ProjPoint, Tolerance, normalize

ROOT_MERGE = 1e-2
POINT_MERGE = 1e-6
MEMBER_TOL = Tolerance(eps_rel=1e-8, eps_abs=1e-12)

CLASSES = ("general", "simple_contact", "bitangent", "osculating", "hyperosculating")
_BY_MULTIPLICITY = {
    (1, 1, 1, 1): "general",
    (2, 1, 1): "simple_contact",
    (2, 2): "bitangent",
    (3, 1): "osculating",
    (4,): "hyperosculating",
}


@dataclass(frozen=True)
class SingularMember:
    """Member ``lam C + mu N`` with ``det = 0``; ``multiplicity`` is that of the root."""

    parameter: tuple
    matrix: np.ndarray
    rank: ConicRank
    multiplicity: int

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.matrix)


@dataclass(frozen=True)
class PencilClass:
    label: str
    base_points: tuple
    singular_members: tuple

    @property
    def multiplicities(self) -> tuple:
        return tuple(sorted((m for _, m in self.base_points), reverse=True))


def _prepare(c, n):
    c = matrix_of(c)
    n = matrix_of(n)
    sc = np.max(np.abs(c))
    sn = np.max(np.abs(n))
    cn, nn = c / sc, n / sn
    if min(np.max(np.abs(cn - nn)), np.max(np.abs(cn + nn))) <= 1e-12:
        raise ProportionalConics("the conics are proportional")
    return cn, nn, sc, sn


def _real_if_close(z: complex, scale: float = 1.0) -> complex | float:
    return float(z.real) if abs(z.imag) <= 1e-10 * max(1.0, scale) else complex(z)


_PARTITIONS = (
    ((0, 1, 2),),
    ((0, 1), (2,)), ((0, 2), (1,)), ((1, 2), (0,)),
    ((0,), (1,), (2,)),
)


def _group_roots(ts, cn, nn):
    """Merge eigenvalues that belong to one multiple root.

    A group is accepted when it is tight (``ROOT_MERGE``) and the member at
    its mean is singular; genuinely distinct roots fail the second test
    because the mean then lies between two regular members.
    """
    for part in _PARTITIONS:
        groups = []
        for idx in part:
            vals = [ts[i] for i in idx]
            m = complex(np.mean(vals))
            spread = max(abs(v - m) for v in vals)
            if spread > ROOT_MERGE * max(1.0, abs(m)):
                break
            if len(idx) > 1 and rank_classify(cn + m * nn, MEMBER_TOL).rank == 3:
                break
            groups.append((m, len(idx)))
        else:
            return groups
    raise ClassificationAmbiguous("pencil roots could not be grouped")


def singular_members(c, n) -> list[SingularMember]:
    """Roots ``(lam : mu)`` of ``det(lam C + mu N)`` with their members.

    Members are reported for the matrices as given.  ``N`` must be regular,
    so ``lam`` never vanishes and parameters are returned as ``(1, mu)``.
    """
    cn, nn, sc, sn = _prepare(c, n)
    if rank_classify(nn, DEFAULT_TOL).rank < 3:
        raise SingularConic("the second conic of the pencil must be regular")
    w = scipy.linalg.eigvals(cn, -nn, homogeneous_eigvals=True)
    alpha, beta = w
    ts = [complex(a / b) for a, b in zip(alpha, beta)]
    out = []
    for t, mult in _group_roots(ts, cn, nn):
        t = _real_if_close(t, abs(t))
        member = cn + t * nn
        rank = rank_classify(member, MEMBER_TOL)
        mu = t * sc / sn
        mu = _real_if_close(complex(mu), abs(mu))
        out.append(SingularMember((1.0, mu), normalize_matrix(member), rank, mult))
    return sorted(out, key=lambda s: (not s.is_real, -s.multiplicity,
                                      complex(s.parameter[1]).real, complex(s.parameter[1]).imag))


def _merge_points(points, radius=POINT_MERGE):
    groups: list[list[np.ndarray]] = []
    for p in points:
        u = p / np.linalg.norm(p)
        for g in groups:
            q = g[0] / np.linalg.norm(g[0])
            if np.linalg.norm(np.cross(u, q)) <= radius:
                g.append(p)
                break
        else:
            groups.append([p])
    # normalize() fixes scale and phase, so representatives can be averaged
    return [(ProjPoint(_maybe_real(sum(normalize(p) for p in g) / len(g), MEMBER_TOL)), len(g))
            for g in groups]


def _pick_member(members):
    order = sorted(members, key=lambda s: (
        s.rank.rank != 2, s.multiplicity != 1, not s.is_real))
    for s in order:
        if s.rank.rank in (1, 2):
            return s
    raise ClassificationAmbiguous("no degenerate member of the pencil was found")


def _split(member: SingularMember):
    if member.rank.rank == 1:
        line = split_line_pair(member.matrix, MEMBER_TOL)[0]
        return [line, line]
    return list(split_line_pair(member.matrix, MEMBER_TOL))


def base_points(c, n, members=None) -> list[tuple[ProjPoint, int]]:
    """Common points of ``c`` and ``n`` (complex allowed) with multiplicities summing to 4."""
    cn, nn, _, _ = _prepare(c, n)
    members = singular_members(cn, nn) if members is None else members
    raw = []
    for line in _split(_pick_member(members)):
        a, b = intersect_line(nn, line.coords, MEMBER_TOL)
        raw += [a.coords, b.coords]
    return _merge_points(raw)


def _root_class(members) -> str:
    pattern = sorted((s.multiplicity, s.rank.rank) for s in members)
    mults = sorted(s.multiplicity for s in members)
    if mults == [1, 1, 1]:
        return "general"
    if mults == [1, 2]:
        double = next(s for s in members if s.multiplicity == 2)
        return "bitangent" if double.rank.rank == 1 else "simple_contact"
    if mults == [3]:
        return "hyperosculating" if members[0].rank.rank == 1 else "osculating"
    raise ClassificationAmbiguous(f"unexpected root pattern {pattern}")


def classify(c, n) -> PencilClass:
    """One of ``general``, ``simple_contact``, ``bitangent``, ``osculating``, ``hyperosculating``.

    The class read off the singular members must agree with the clustered
    base-point multiplicities, otherwise :class:`ClassificationAmbiguous`.
    """
    cn, nn, _, _ = _prepare(c, n)
    for m in (cn, nn):
        if rank_classify(m, DEFAULT_TOL).rank < 3:
            raise SingularConic("both conics of the pencil must be regular")
    members = singular_members(c, n)
    pts = base_points(cn, nn, members)
    mults = tuple(sorted((m for _, m in pts), reverse=True))
    by_points = _BY_MULTIPLICITY.get(mults)
    by_roots = _root_class(members)
    if by_points != by_roots:
        raise ClassificationAmbiguous(
            f"root pattern says {by_roots}, base points {mults} say {by_points}")
    return PencilClass(by_roots, tuple(pts), tuple(members))

