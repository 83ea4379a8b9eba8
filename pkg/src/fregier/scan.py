"""Parameter scans for singular Frégier loci.

The determinant of the closed-form locus is sampled on a uniform grid.
Odd-order roots show up as sign changes and are bisected.  Even-order
roots (factors such as ``(lam + 2)^4``) never change sign; they are found
as local minima of ``|det|`` and then located by minimising the smallest
relative singular value of the locus matrix, which vanishes only to
second order there and so pins the root far more sharply than ``det``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainViolation
from .families import FamilySpec, canonical_param, get_family

ROOT_XTOL = 1e-12
SIGMA_TOL = 1e-12   # relative smallest singular value accepted as singular
ADMISSIBLE_EPS = 1e-6


@dataclass(frozen=True)
class Sweep:
    param: str
    lo: float
    hi: float
    step: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and math.isfinite(self.step)):
            raise DomainViolation("sweep bounds must be finite")
        if self.hi <= self.lo or self.step <= 0:
            raise DomainViolation("sweep needs lo < hi and step > 0")
        if (self.hi - self.lo) / self.step > 5e7:
            raise DomainViolation("sweep grid is too large")
        object.__setattr__(self, "param", canonical_param(self.param))

    @classmethod
    def parse(cls, text: str) -> Sweep:
        """Parse ``param:lo:hi:step``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise DomainViolation(f"sweep {text!r} is not param:lo:hi:step")
        try:
            lo, hi, step = (float(x) for x in parts[1:])
        except ValueError:
            raise DomainViolation(f"sweep {text!r} has non-numeric bounds") from None
        return cls(parts[0], lo, hi, step)

    def grid(self) -> np.ndarray:
        n = int(math.floor((self.hi - self.lo) / self.step + 1e-9))
        return self.lo + self.step * np.arange(n + 1)


@dataclass(frozen=True)
class ScanRoot:
    value: float
    parity: str          # "odd" (sign change) or "even" (|det| minimum)
    admissible: bool
    sigma_ratio: float   # smallest / largest singular value at the root


@dataclass(frozen=True)
class ScanResult:
    family: str
    fixed: dict
    sweep: Sweep
    grid: np.ndarray
    det: np.ndarray
    roots: tuple

    @property
    def admissible_roots(self) -> list[float]:
        return [r.value for r in self.roots if r.admissible]

    def flags(self) -> np.ndarray:
        """1 on the grid row nearest each root."""
        out = np.zeros(len(self.grid), dtype=int)
        for r in self.roots:
            out[int(np.argmin(np.abs(self.grid - r.value)))] = 1
        return out

    def csv(self) -> str:
        lines = ["param,det,singular"]
        for x, d, s in zip(self.grid, self.det, self.flags()):
            lines.append(f"{x:.12g},{d:.17g},{s}")
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        head = f"{self.family} {self.sweep.param} in [{self.sweep.lo:g}, {self.sweep.hi:g}]"
        if not self.roots:
            return head + ": no singular parameters\n"
        lines = [head + f": {len(self.roots)} singular parameter(s)"]
        for r in self.roots:
            flag = "admissible" if r.admissible else "inadmissible"
            lines.append(f"  {self.sweep.param} = {r.value:.12g}  {r.parity}  {flag}  "
                         f"sigma_ratio={r.sigma_ratio:.3g}")
        return "\n".join(lines) + "\n"


class _Scanner:
    def __init__(self, family, fixed, param):
        self.fam = family
        self.fixed = fixed
        self.param = param

    def matrices(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        kw = {k: np.full(x.shape, v) for k, v in self.fixed.items()}
        kw[self.param] = x
        m = self.fam.locus(**kw)
        scale = np.max(np.abs(m), axis=(-2, -1))
        scale = np.where(scale > 0, scale, 1.0)
        return m / scale[..., None, None]

    def det(self, x) -> np.ndarray:
        return np.linalg.det(self.matrices(x))

    def sigma(self, x: float) -> float:
        s = np.linalg.svd(self.matrices(x), compute_uv=False)
        return float(s[-1] / s[0]) if s[0] > 0 else 0.0

    def admissible(self, x: float) -> bool:
        return not self.fam.domain(**{**self.fixed, self.param: x}, eps=ADMISSIBLE_EPS)

    def bisect(self, a: float, b: float, fa: float) -> float:
        while b - a > ROOT_XTOL * max(1.0, abs(a)):
            m = 0.5 * (a + b)
            if m <= a or m >= b:
                break
            fm = float(self.det(m))
            if fm == 0.0:
                return m
            if (fm > 0) == (fa > 0):
                a, fa = m, fm
            else:
                b = m
        return 0.5 * (a + b)

    def minimise(self, a: float, b: float) -> float:
        """Locate the minimum of the relative smallest singular value in [a, b]."""
        for _ in range(200):
            m = 0.5 * (a + b)
            h = 1e-7 * max(1.0, abs(m))
            if b - a <= 2 * h:
                break
            if self.sigma(m + h) > self.sigma(m - h):
                b = m + h
            else:
                a = m - h
        xs = np.linspace(a, b, 9)
        return float(xs[int(np.argmin([self.sigma(x) for x in xs]))])


def _chunks(n: int, jobs: int) -> list[slice]:
    size = max(1, math.ceil(n / jobs))
    return [slice(i, min(i + size, n)) for i in range(0, n, size)]


def singular_scan(family: str, fixed: dict, sweep: Sweep | str, jobs: int = 1) -> ScanResult:
    """Locate parameters where the closed-form Frégier locus is singular.

    ``fixed`` binds every family parameter except the swept one.  Roots
    outside the family's domain are kept and flagged inadmissible.  With
    ``jobs > 1`` the grid is evaluated in parallel chunks; the result does
    not depend on the chunking.
    """
    fam = get_family(family)
    sweep = Sweep.parse(sweep) if isinstance(sweep, str) else sweep
    fixed = {canonical_param(k): float(v) for k, v in fixed.items()}
    if sweep.param not in fam.params:
        raise DomainViolation(f"{fam.tag} has no parameter {sweep.param!r}")
    expected = set(fam.params) - {sweep.param}
    if set(fixed) != expected:
        raise DomainViolation(f"{fam.tag} sweep over {sweep.param} needs fixed {sorted(expected)}, "
                              f"got {sorted(fixed)}")
    sc = _Scanner(fam, fixed, sweep.param)
    grid = sweep.grid()
    if all(fam.domain(**{**fixed, sweep.param: float(x)}) for x in grid[:: max(1, len(grid) // 64)]):
        # no grid value makes a valid member: the fixed parameters are at fault
        FamilySpec(fam.tag, {**fixed, sweep.param: float(grid[len(grid) // 2])})

    jobs = max(1, int(jobs))
    parts = _chunks(len(grid), jobs)
    if jobs == 1:
        det = sc.det(grid)
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            det = np.concatenate(list(pool.map(lambda s: sc.det(grid[s]), parts)))

    roots: list[tuple[float, str]] = []
    sign = np.sign(det)
    for k in np.flatnonzero(sign == 0):
        left = sign[k - 1] if k > 0 else 0
        right = sign[k + 1] if k + 1 < len(sign) else 0
        roots.append((float(grid[k]), "even" if left * right > 0 else "odd"))
    change = np.flatnonzero(sign[:-1] * sign[1:] < 0)
    for k in change:
        roots.append((sc.bisect(float(grid[k]), float(grid[k + 1]), float(det[k])), "odd"))

    near_change = np.zeros(len(grid), dtype=bool)
    near_change[change] = near_change[change + 1] = True
    ad = np.abs(det)
    cand = np.flatnonzero((ad[1:-1] <= ad[:-2]) & (ad[1:-1] <= ad[2:]) & (ad[1:-1] > 0)) + 1
    for k in cand:
        if near_change[k - 1:k + 2].any():
            continue
        x = sc.minimise(float(grid[k - 1]), float(grid[k + 1]))
        if sc.sigma(x) < SIGMA_TOL:
            roots.append((x, "even"))

    merged: list[tuple[float, str]] = []
    for x, parity in sorted(roots):
        if merged and abs(x - merged[-1][0]) < sweep.step:
            continue
        merged.append((x, parity))
    out = tuple(ScanRoot(x, parity, sc.admissible(x), sc.sigma(x)) for x, parity in merged)
    return ScanResult(fam.tag, fixed, sweep, grid, det, out)
