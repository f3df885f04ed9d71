"""Euclidean geometry of cusp cross-section lattices.

A cusp torus is the quotient of a horosphere by a rank-two lattice of
Euclidean translations.  Slopes are primitive lattice elements up to sign,
written ``(p, q)`` in the basis ``(v1, v2)``; the translation of ``(p, q)``
is ``p*v1 + q*v2`` and its length is the slope length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from cuspgauge.config import geometry_tol
from cuspgauge.errors import DegeneratePair, InvalidInput, InvalidLattice, InvalidSlope, PreconditionError

SQRT3 = math.sqrt(3.0)


class EuclideanVector(NamedTuple):
    x: float
    y: float

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def scaled(self, c: float) -> "EuclideanVector":
        return EuclideanVector(c * self.x, c * self.y)


def det2(a: EuclideanVector, b: EuclideanVector) -> float:
    return a.x * b.y - a.y * b.x


@dataclass(frozen=True, order=True)
class Slope:
    """Unoriented primitive class ``(p, q)``; always in canonical form.

    Canonical means ``q > 0``, or ``(p, q) == (1, 0)``.  Use
    :func:`normalize_slope` to build one from an arbitrary nonzero pair.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if not isinstance(p, (int, np.integer)) or not isinstance(q, (int, np.integer)):
            raise InvalidSlope(f"slope entries must be integers, got ({p!r}, {q!r})")
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "q", int(q))
        if math.gcd(p, q) != 1:
            raise InvalidSlope(f"({p}, {q}) is not primitive")
        if not (q > 0 or (q == 0 and p == 1)):
            raise InvalidSlope(f"({p}, {q}) is not in canonical orientation")

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def normalize_slope(p: int, q: int) -> Slope:
    """Canonical representative of the unoriented class of ``(p, q)``.

    >>> normalize_slope(2, -4)
    Slope(p=-1, q=2)
    """
    p, q = int(p), int(q)
    if p == 0 and q == 0:
        raise InvalidSlope("(0, 0) is not a slope")
    d = math.gcd(p, q)
    p, q = p // d, q // d
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return Slope(p, q)


def parse_slope(text: str) -> Slope:
    """Read ``"p,q"`` or ``"p/q"`` and normalize it."""
    for sep in (",", "/"):
        if sep in text:
            a, _, b = text.partition(sep)
            try:
                return normalize_slope(int(a), int(b))
            except ValueError as exc:
                if isinstance(exc, InvalidInput):
                    raise
                break
    raise InvalidSlope(f"cannot parse slope {text!r}; expected 'p,q'")


@dataclass(frozen=True)
class CuspLattice:
    v1: EuclideanVector
    v2: EuclideanVector
    claimed_maximal: bool = False

    def __post_init__(self):
        v1 = EuclideanVector(*map(float, self.v1))
        v2 = EuclideanVector(*map(float, self.v2))
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)
        if not all(math.isfinite(c) for c in (*v1, *v2)):
            raise InvalidLattice("lattice vectors must be finite")
        scale = v1.norm * v2.norm
        if scale == 0 or abs(det2(v1, v2)) <= geometry_tol() * scale:
            raise InvalidLattice("lattice vectors are linearly dependent")
        if self.claimed_maximal:
            problems = maximality_failures(self)
            if problems:
                raise InvalidLattice("claimed maximal but " + "; ".join(problems))

    @classmethod
    def from_lists(cls, v1, v2, claimed_maximal: bool = False) -> "CuspLattice":
        if len(v1) != 2 or len(v2) != 2:
            raise InvalidLattice("lattice vectors must have two components")
        return cls(EuclideanVector(*v1), EuclideanVector(*v2), claimed_maximal)

    def scaled(self, c: float) -> "CuspLattice":
        return CuspLattice(self.v1.scaled(c), self.v2.scaled(c), False)

    def translation(self, p: int, q: int) -> EuclideanVector:
        return EuclideanVector(p * self.v1.x + q * self.v2.x, p * self.v1.y + q * self.v2.y)

    @property
    def gram(self) -> np.ndarray:
        b = np.array([self.v1, self.v2], dtype=float)
        return b @ b.T


class SlopeMeasurement(NamedTuple):
    slope: Slope
    translation: EuclideanVector
    length: float


def slope_length(lattice: CuspLattice, s: Slope) -> SlopeMeasurement:
    w = lattice.translation(s.p, s.q)
    return SlopeMeasurement(s, w, w.norm)


def intersection_number(s1: Slope, s2: Slope) -> int:
    return abs(s1.p * s2.q - s2.p * s1.q)


def lattice_area(lattice: CuspLattice) -> float:
    return abs(det2(lattice.v1, lattice.v2))


def _candidate_shortest(lattice: CuspLattice) -> float:
    v1, v2 = lattice.v1, lattice.v2
    return min(
        v1.norm,
        v2.norm,
        lattice.translation(1, 1).norm,
        lattice.translation(1, -1).norm,
    )


def enumeration_bounds(lattice: CuspLattice, max_length: float) -> tuple[int, int]:
    """Bounds ``(P, Q)`` with ``|p| <= P``, ``|q| <= Q`` for every vector of length <= max_length.

    ``|q|`` times the distance from ``v2`` to the line through ``v1`` is at
    most the length of ``p*v1 + q*v2``; that distance is ``area/|v1|``.
    Symmetrically for ``p``.
    """
    area = lattice_area(lattice)
    slack = 1.0 + geometry_tol()
    bp = math.ceil(max_length * slack * lattice.v2.norm / area)
    bq = math.ceil(max_length * slack * lattice.v1.norm / area)
    return bp, bq


def _canonical_grid(bp: int, bq: int) -> tuple[np.ndarray, np.ndarray]:
    p, q = np.meshgrid(np.arange(-bp, bp + 1), np.arange(0, bq + 1), indexing="ij")
    p, q = p.ravel(), q.ravel()
    keep = ((q > 0) | ((q == 0) & (p == 1))) & (np.gcd(p, q) == 1)
    return p[keep], q[keep]


def _sorted_measurements(lattice: CuspLattice, ps, qs, lengths) -> list[SlopeMeasurement]:
    order = np.argsort(lengths, kind="stable")
    tol = geometry_tol()
    # group near-equal lengths so ties break on (p, q) regardless of rounding
    groups: list[list[int]] = []
    for i in order:
        if groups and lengths[i] - lengths[groups[-1][0]] <= tol * max(1.0, lengths[groups[-1][0]]):
            groups[-1].append(i)
        else:
            groups.append([i])
    out = []
    for g in groups:
        for i in sorted(g, key=lambda j: (ps[j], qs[j])):
            out.append(slope_length(lattice, Slope(int(ps[i]), int(qs[i]))))
    return out


def enumerate_slopes(lattice: CuspLattice, max_length: float) -> list[SlopeMeasurement]:
    """All canonical slopes of length <= ``max_length``, sorted by (length, p, q)."""
    if not (max_length > 0) or not math.isfinite(max_length):
        raise InvalidInput(f"max_length must be positive and finite, got {max_length}")
    bp, bq = enumeration_bounds(lattice, max_length)
    ps, qs = _canonical_grid(bp, bq)
    xs = ps * lattice.v1.x + qs * lattice.v2.x
    ys = ps * lattice.v1.y + qs * lattice.v2.y
    lengths = np.hypot(xs, ys)
    cut = max_length * (1.0 + geometry_tol())
    keep = lengths <= cut
    return _sorted_measurements(lattice, ps[keep], qs[keep], lengths[keep])


def minimal_slope(lattice: CuspLattice) -> SlopeMeasurement:
    """A globally shortest slope; ties go to the lexicographically smallest (p, q)."""
    return enumerate_slopes(lattice, _candidate_shortest(lattice))[0]


def shortest_length(lattice: CuspLattice) -> float:
    return minimal_slope(lattice).length


def maximality_failures(lattice: CuspLattice) -> list[str]:
    """Which of the maximal-cusp necessary conditions fail (empty if none)."""
    tol = geometry_tol()
    problems = []
    shortest = shortest_length(lattice)
    if shortest < 1.0 - tol:
        problems.append(f"shortest slope length {shortest:.12g} < 1")
    area = lattice_area(lattice)
    if area < SQRT3 * (1.0 - tol):
        problems.append(f"area {area:.12g} < sqrt(3)")
    return problems


def admissibility(lattice: CuspLattice, lower_bound: float) -> dict:
    """Check the hypotheses under which the length-product inequality is proved."""
    tol = geometry_tol()
    shortest = shortest_length(lattice)
    area = lattice_area(lattice)
    needed = SQRT3 * lower_bound**2
    return {
        "lower_bound": lower_bound,
        "shortest_length": shortest,
        "area": area,
        "area_required": needed,
        "shortest_ok": shortest >= lower_bound * (1.0 - tol),
        "area_ok": area >= needed * (1.0 - tol),
    }


def parallelogram_identity_check(lattice: CuspLattice, s1: Slope, s2: Slope) -> dict:
    """Compare |det(w1, w2)| with Delta(s1, s2) * area."""
    if s1 == s2:
        raise DegeneratePair(f"slopes coincide: {s1}")
    w1 = slope_length(lattice, s1).translation
    w2 = slope_length(lattice, s2).translation
    lhs = abs(det2(w1, w2))
    delta = intersection_number(s1, s2)
    rhs = delta * lattice_area(lattice)
    diff = abs(lhs - rhs)
    return {
        "slopes": [str(s1), str(s2)],
        "intersection_number": delta,
        "translation_area": lhs,
        "delta_times_area": rhs,
        "abs_difference": diff,
        "holds": diff <= geometry_tol() * max(1.0, rhs),
    }


def verify_length_product(lattice: CuspLattice, s1: Slope, s2: Slope, lower_bound: float = 1.0) -> dict:
    """Check l(s1) l(s2) >= sqrt(3) L^2 Delta(s1, s2) for a uniform lower bound L.

    The lattice must be admissible for ``L``: every slope has length >= L and
    the fundamental domain has area >= sqrt(3) L^2.  Otherwise
    :class:`PreconditionError` names the failing condition.
    """
    if not lower_bound > 0:
        raise InvalidInput("lower bound L must be positive")
    adm = admissibility(lattice, lower_bound)
    if not adm["shortest_ok"]:
        raise PreconditionError(
            f"shortest slope length {adm['shortest_length']:.12g} is below L = {lower_bound:.12g}"
        )
    if not adm["area_ok"]:
        raise PreconditionError(
            f"area {adm['area']:.12g} < sqrt(3) L^2 = {adm['area_required']:.12g}"
        )
    tol = geometry_tol()
    l1 = slope_length(lattice, s1).length
    l2 = slope_length(lattice, s2).length
    delta = intersection_number(s1, s2)
    product = l1 * l2
    bound = SQRT3 * lower_bound**2 * delta
    report = {
        "slopes": [str(s1), str(s2)],
        "lengths": [l1, l2],
        "product": product,
        "intersection_number": delta,
        "bound": bound,
        "holds": product >= bound - tol * max(1.0, bound),
    }
    if lattice.claimed_maximal:
        weak = SQRT3 * delta
        report["bound_unit"] = weak
        report["holds_unit"] = product >= weak - tol * max(1.0, weak)
    return report
