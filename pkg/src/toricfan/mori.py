"""Mori cone generators, projectivity decision and contraction types.

The cone of effective curves of a smooth complete toric variety is generated
by its wall classes.  Projectivity is the feasibility of an exact rational
linear program: a divisor is ample iff it is strictly positive on every wall
curve, so the fan is projective iff {d : <d, class(w)> >= 1 for all walls w}
is nonempty (the system is homogeneous up to scaling, so ">= 1" loses
nothing).  Infeasibility comes with a Gordan-type certificate: a nonnegative,
nonzero combination of wall classes summing to zero.  Both sides of every
verdict are re-verified exactly before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .fan import Fan, Wall, walls
from .intersection import CurveClass, all_relations, anticanonical_degree, wall_relation
from .lattice import phase_one, rational_rank, vdot


class NotExtremal(ValueError):
    """The wall's class is not an edge of the Mori cone."""


@dataclass(frozen=True)
class ProjectivityVerdict:
    """Either an ample rational divisor or a degeneracy certificate.

    Exactly one of `ample_witness` (a rational divisor vector with
    <d, class(w)> >= 1 on every wall) and `degeneracy_certificate` (a mapping
    wall -> nonnegative rational, not all zero, whose weighted class sum is
    zero) is present.
    """

    projective: bool
    ample_witness: tuple[Fraction, ...] | None = None
    degeneracy_certificate: dict[Wall, Fraction] | None = None

    def to_dict(self, f: Fan) -> dict:
        if self.projective:
            return {
                "projective": True,
                "witness": [_format_rational(a) for a in self.ample_witness],
            }
        order = {w: i for i, w in enumerate(walls(f))}
        cert = sorted((order[w], y) for w, y in self.degeneracy_certificate.items())
        return {
            "projective": False,
            "certificate": [{"wall": i, "y": _format_rational(y)} for i, y in cert],
        }


@dataclass(frozen=True)
class Fibration:
    base_dim: int


@dataclass(frozen=True)
class Birational:
    exceptional_dim: int
    image_dim: int
    fiber_dim: int
    divisorial: bool


@dataclass(frozen=True)
class ContractionInfo:
    """Numerical type of the extremal contraction of a wall class."""

    alpha: int
    beta: int
    kind: Fibration | Birational
    mori_extremal: bool


def _format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def mori_generators(f: Fan):
    """Deduplicated wall classes, each with the walls realizing it."""
    return _generators_raw(f.dim, f.rays, f.max_cones)


@lru_cache(maxsize=None)
def _generators_raw(dim, rays, cones):
    f = Fan(dim, rays, cones)
    grouped: dict[CurveClass, list[Wall]] = {}
    for rel in all_relations(f):
        grouped.setdefault(rel.coeffs, []).append(rel.wall)
    return tuple((vec, tuple(ws)) for vec, ws in sorted(grouped.items()))


def _primitive_direction(vec):
    g = 0
    for a in vec:
        g = gcd(g, abs(a))
    return tuple(a // g for a in vec) if g else vec


def is_projective(f: Fan) -> ProjectivityVerdict:
    """Decide projectivity by exact LP; the verdict carries its own proof."""
    return _projectivity_raw(f.dim, f.rays, f.max_cones)


@lru_cache(maxsize=None)
def _projectivity_raw(dim, rays, cones):
    f = Fan(dim, rays, cones)
    gens = mori_generators(f)
    classes = [vec for vec, _ in gens]
    reps = [ws[0] for _, ws in gens]
    k = f.n_rays
    m = len(classes)
    rows = []
    for i, vec in enumerate(classes):
        row = list(vec) + [-a for a in vec] + [-(int(j == i)) for j in range(m)]
        rows.append(row)
    feasible, x, y = phase_one(rows, [1] * m)
    if feasible:
        witness = tuple(x[j] - x[k + j] for j in range(k))
        for vec, _ in gens:
            if vdot(witness, vec) < 1:
                raise AssertionError("ample witness failed re-verification")
        return ProjectivityVerdict(True, ample_witness=witness)
    # normalize the certificate to primitive integers
    denom_lcm = 1
    for v in y:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in y]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    if any(v < 0 for v in ints) or not any(v > 0 for v in ints):
        raise AssertionError("certificate signs are wrong")
    combo = [0] * k
    for coeff, vec in zip(ints, classes):
        for j in range(k):
            combo[j] += coeff * vec[j]
    if any(c != 0 for c in combo):
        raise AssertionError("degeneracy certificate failed re-verification")
    cert = {reps[i]: Fraction(ints[i]) for i in range(m) if ints[i] != 0}
    return ProjectivityVerdict(False, degeneracy_certificate=cert)


def is_extremal(f: Fan, w: Wall) -> bool:
    """Whether the wall's class spans an edge of the cone of wall classes.

    Classes proportional (by a positive rational) to the tested one are set
    aside; the test asks for a nonnegative combination of the rest.
    """
    return _extremal_raw(f.dim, f.rays, f.max_cones, wall_relation(f, w).coeffs)


@lru_cache(maxsize=None)
def _extremal_raw(dim, rays, cones, target):
    f = Fan(dim, rays, cones)
    direction = _primitive_direction(target)
    others = [
        vec for vec, _ in mori_generators(f) if _primitive_direction(vec) != direction
    ]
    if not others:
        return True
    rows = [[vec[i] for vec in others] for i in range(f.n_rays)]
    feasible, _, _ = phase_one(rows, list(target))
    return not feasible


def classify_contraction(f: Fan, w: Wall) -> ContractionInfo:
    """Numerical contraction type of an extremal wall, after Reid.

    alpha and beta count the negative and nonpositive normal degrees; the
    contraction is a smooth fibration onto a base of dimension beta when
    alpha = 0, and otherwise birational with exceptional locus of dimension
    n - alpha mapping onto a (beta - alpha)-fold with weighted-projective
    fibers of dimension n - beta.
    """
    if not is_extremal(f, w):
        raise NotExtremal(f"wall {w} does not span an edge of the Mori cone")
    rel = wall_relation(f, w)
    degrees = rel.normal_degrees
    alpha = sum(1 for a in degrees if a < 0)
    beta = sum(1 for a in degrees if a <= 0)
    if alpha == 0:
        kind = Fibration(base_dim=beta)
    else:
        kind = Birational(
            exceptional_dim=f.dim - alpha,
            image_dim=beta - alpha,
            fiber_dim=f.dim - beta,
            divisorial=(alpha == 1),
        )
    return ContractionInfo(alpha, beta, kind, anticanonical_degree(rel) > 0)


def extremal_classes(f: Fan):
    """The subset of mori_generators whose class spans an edge of the cone."""
    out = []
    for vec, ws in mori_generators(f):
        if is_extremal(f, ws[0]):
            out.append((vec, ws))
    return tuple(out)


def mori_extremal_classes(f: Fan):
    """Extremal classes with positive anticanonical degree."""
    out = []
    for vec, ws in extremal_classes(f):
        if anticanonical_degree(wall_relation(f, ws[0])) > 0:
            out.append((vec, ws))
    return tuple(out)


def class_matrix_rank(f: Fan) -> int:
    """Rank of the matrix of all wall classes (equals the Picard number)."""
    return rational_rank([list(rel.coeffs) for rel in all_relations(f)])
