"""Fan data model for smooth complete toric varieties.

A fan is stored as primitive ray generators plus maximal cones given as index
sets.  Validation certifies smoothness (unimodular maximal cones),
completeness (every wall bounds exactly two maximal cones) and the fan
property (pairwise intersections of cones are common faces); the three checks
together certify that the data describes a smooth complete toric variety.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .lattice import (
    ZeroVector,
    determinant,
    phase_one,
    primitive_vector,
    unimodular_inverse,
    vdot,
)


class MalformedInput(ValueError):
    """Structurally invalid fan data (bad indices, sizes or rays)."""


def _exact_int(value, what: str) -> int:
    try:
        out = int(value)
    except (TypeError, ValueError):
        raise MalformedInput(f"{what} {value!r} is not an integer") from None
    if out != value:
        raise MalformedInput(f"{what} {value!r} is not an integer")
    return out


class NotComplete(ValueError):
    """A wall is not shared by exactly two maximal cones."""


class NotAWall(ValueError):
    """The given index set is not a wall of the fan."""


@dataclass(frozen=True, eq=False)
class Fan:
    """Immutable fan: ray generators plus maximal cones as sorted index sets.

    Rays are canonicalized to primitive vectors on construction; duplicate
    rays are rejected.  Equality ignores the ordering of the rays (and the
    induced relabeling of cones) but nothing else.
    """

    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.dim < 1:
            raise MalformedInput(f"dimension must be positive, got {self.dim}")
        rays = []
        for r in self.rays:
            r = tuple(_exact_int(a, "ray coordinate") for a in r)
            if len(r) != self.dim:
                raise MalformedInput(f"ray {r} does not have dimension {self.dim}")
            try:
                rays.append(primitive_vector(r))
            except ZeroVector:
                raise MalformedInput("the zero vector is not a valid ray") from None
        if len(set(rays)) != len(rays):
            raise MalformedInput("duplicate rays (after canonicalization)")
        cones = set()
        for cone in self.max_cones:
            cone = tuple(sorted(_exact_int(i, "ray index") for i in cone))
            if len(cone) != self.dim or len(set(cone)) != self.dim:
                raise MalformedInput(f"maximal cone {cone} does not have {self.dim} distinct rays")
            if cone and (cone[0] < 0 or cone[-1] >= len(rays)):
                raise MalformedInput(f"cone {cone} references a ray out of range")
            cones.add(cone)
        object.__setattr__(self, "rays", tuple(rays))
        object.__setattr__(self, "max_cones", tuple(sorted(cones)))

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_vectors(self, cone):
        return [self.rays[i] for i in cone]

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        return _canonical_form(self.dim, self.rays, self.max_cones) == _canonical_form(
            other.dim, other.rays, other.max_cones
        )

    def __hash__(self):
        return hash(_canonical_form(self.dim, self.rays, self.max_cones))

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
        }

    @classmethod
    def from_dict(cls, data) -> "Fan":
        try:
            dim = data["dim"]
            rays = data["rays"]
            cones = data["max_cones"]
        except (TypeError, KeyError) as exc:
            raise MalformedInput(f"fan file is missing field {exc}") from None
        if not isinstance(dim, int) or not isinstance(rays, list) or not isinstance(cones, list):
            raise MalformedInput("fan file fields have the wrong types")
        try:
            return cls(dim, tuple(tuple(r) for r in rays), tuple(tuple(c) for c in cones))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, MalformedInput):
                raise
            raise MalformedInput(str(exc)) from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Fan":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


@lru_cache(maxsize=None)
def _canonical_form(dim, rays, cones):
    order = sorted(range(len(rays)), key=lambda i: rays[i])
    relabel = {old: new for new, old in enumerate(order)}
    new_rays = tuple(rays[i] for i in order)
    new_cones = tuple(sorted(tuple(sorted(relabel[i] for i in c)) for c in cones))
    return dim, new_rays, new_cones


@dataclass(frozen=True)
class Wall:
    """Codimension-one cone shared by two maximal cones (an invariant curve).

    `rays` are the wall's own ray indices, `apexes` the two ray indices that
    complete it to its adjacent maximal cones.
    """

    rays: tuple[int, ...]
    apexes: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(sorted(self.rays)))
        object.__setattr__(self, "apexes", tuple(sorted(self.apexes)))

    def to_dict(self) -> dict:
        return {"rays": list(self.rays), "apexes": list(self.apexes)}


@dataclass(frozen=True)
class ValidationReport:
    smooth: bool
    complete: bool
    proper: bool
    failures: tuple[str, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return self.smooth and self.complete and self.proper


def validate(f: Fan) -> ValidationReport:
    """Check smoothness, completeness and the fan property, exactly."""
    return _validate_raw(f.dim, f.rays, f.max_cones)


@lru_cache(maxsize=None)
def _validate_raw(dim, rays, cones):
    failures = []
    dets = {}
    smooth = True
    for cone in cones:
        d = determinant([rays[i] for i in cone])
        dets[cone] = d
        if abs(d) != 1:
            smooth = False
            failures.append(f"cone {cone} has determinant {d}")

    complete = bool(cones)
    if not cones:
        failures.append("fan has no maximal cones")
    for facet, adjacent in _facet_map(dim, cones).items():
        if len(adjacent) != 2:
            complete = False
            failures.append(f"wall {facet} bounds {len(adjacent)} maximal cones")

    proper = True
    used = set(itertools.chain.from_iterable(cones))
    for i in range(len(rays)):
        if i not in used:
            proper = False
            failures.append(f"ray {i} is not a face of any maximal cone")
    degenerate = {c for c, d in dets.items() if d == 0}
    if degenerate:
        proper = False
    normals = {c: _facet_normals(rays, c, dets[c]) for c in cones if c not in degenerate}
    for a in range(len(cones)):
        for b in range(a + 1, len(cones)):
            sa, sb = cones[a], cones[b]
            if sa in degenerate or sb in degenerate:
                continue
            if not _pair_is_face(rays, sa, sb, normals[sa], normals[sb]):
                proper = False
                failures.append(f"cones {sa} and {sb} do not meet in a common face")
    return ValidationReport(smooth, complete, proper, tuple(failures))


def _facet_normals(rays, cone, det):
    """Integer functionals h_k with h_k(u_j) = |det| * delta_jk over the cone.

    For a unimodular cone these are the dual basis; otherwise the positively
    scaled adjugate is used, which keeps every entry integral and preserves
    all the sign information the face tests need.
    """
    mat = [rays[i] for i in cone]
    n = len(cone)
    if abs(det) == 1:
        inv = unimodular_inverse(mat)
        return [tuple(inv[i][k] for i in range(n)) for k in range(n)]
    sign = 1 if det > 0 else -1
    adj = [
        [sign * (-1) ** (i + j) * determinant([[mat[r][c] for c in range(n) if c != i] for r in range(n) if r != j])
         for j in range(n)]
        for i in range(n)
    ]
    return [tuple(adj[i][k] for i in range(n)) for k in range(n)]


def _pair_is_face(rays, sa, sb, normals_a, normals_b):
    """Exact test that cone(sa) and cone(sb) intersect in cone(sa & sb)."""
    common = set(sa) & set(sb)
    # cheap certificate: a functional >= 0 on one cone, zero exactly on the
    # common face, and <= 0 on the other cone
    for cone, normals, other in ((sa, normals_a, sb), (sb, normals_b, sa)):
        psi = None
        for pos, idx in enumerate(cone):
            if idx not in common:
                h = normals[pos]
                psi = h if psi is None else tuple(x + y for x, y in zip(psi, h))
        if psi is None:
            return True  # identical index sets cannot occur for distinct cones
        if all(vdot(psi, rays[j]) <= 0 for j in other):
            return True
    # exact fallback: search for a point of cone(sa) inside cone(sb) that uses
    # a generator outside the common face
    n = len(sa)
    m_rows = []
    for j in range(n):
        # row j: coefficients of lambda in the j-th sb-coordinate of sum(lambda_i u_i)
        m_rows.append([vdot(rays[sa[i]], normals_b[j]) for i in range(n)])
    for i_out in range(n):
        if sa[i_out] in common:
            continue
        rows = []
        rhs = []
        for j in range(n):  # sb-coordinates >= 0, written with slacks
            rows.append([m_rows[j][i] for i in range(n)] + [-(int(k == j)) for k in range(n)])
            rhs.append(0)
        rows.append([int(i == i_out) for i in range(n)] + [0] * n)
        rhs.append(1)
        feasible, _, _ = phase_one(rows, rhs)
        if feasible:
            return False
    return True


def _facet_map(dim, cones):
    facets = {}
    for cone in cones:
        for drop in range(dim):
            facet = cone[:drop] + cone[drop + 1 :]
            facets.setdefault(facet, []).append((cone, cone[drop]))
    return facets


def walls(f: Fan) -> tuple[Wall, ...]:
    """All walls of a complete fan, each with its two apex rays."""
    return _walls_raw(f.dim, f.rays, f.max_cones)


@lru_cache(maxsize=None)
def _walls_raw(dim, rays, cones):
    out = []
    for facet, adjacent in sorted(_facet_map(dim, cones).items()):
        if len(adjacent) != 2:
            raise NotComplete(f"wall {facet} bounds {len(adjacent)} maximal cones")
        out.append(Wall(facet, (adjacent[0][1], adjacent[1][1])))
    return tuple(out)


def wall_lookup(f: Fan, ray_indices) -> Wall:
    """The wall of `f` with the given ray index set, or NotAWall."""
    key = tuple(sorted(ray_indices))
    for w in walls(f):
        if w.rays == key:
            return w
    raise NotAWall(f"{key} is not a wall of the fan")


def star(f: Fan, ray: int) -> tuple[tuple[int, ...], ...]:
    """Maximal cones containing the given ray."""
    if not 0 <= ray < f.n_rays:
        raise MalformedInput(f"ray index {ray} out of range")
    return tuple(c for c in f.max_cones if ray in c)


def picard_number(f: Fan) -> int:
    """Rank of the divisor class group: #rays - dim for smooth complete fans."""
    return f.n_rays - f.dim


def lattice_isomorphism(f: Fan, g: Fan):
    """A unimodular matrix M with rays(f) . M = rays(g) as fans, or None.

    The matrix acts on row vectors; it identifies the two fans up to the
    choice of lattice basis and ray numbering.
    """
    if f.dim != g.dim or f.n_rays != g.n_rays or len(f.max_cones) != len(g.max_cones):
        return None
    if not f.max_cones:
        return None
    base = f.max_cones[0]
    base_mat = [f.rays[i] for i in base]
    inv_rows = _inverse_rows(base_mat)
    if inv_rows is None:
        return None
    g_ray_set = set(g.rays)
    g_cone_set = set(g.max_cones)
    for target in g.max_cones:
        for perm in itertools.permutations(target):
            img = [g.rays[i] for i in perm]
            # solve base_mat . M = img row-wise, i.e. M = base_mat^{-1} . img
            M = [
                tuple(sum(inv_rows[r][k] * img[k][c] for k in range(f.dim)) for c in range(f.dim))
                for r in range(f.dim)
            ]
            if any(a.denominator != 1 for row in M for a in row):
                continue
            M = [tuple(int(a) for a in row) for row in M]
            if abs(determinant(M)) != 1:
                continue
            mapped = {}
            ok = True
            for idx, r in enumerate(f.rays):
                image = tuple(sum(r[k] * M[k][c] for k in range(f.dim)) for c in range(f.dim))
                if image not in g_ray_set:
                    ok = False
                    break
                mapped[idx] = g.rays.index(image)
            if not ok or len(set(mapped.values())) != f.n_rays:
                continue
            if all(tuple(sorted(mapped[i] for i in c)) in g_cone_set for c in f.max_cones):
                return tuple(tuple(row) for row in M)
    return None


def _inverse_rows(mat):
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [a / pv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                fct = aug[r][col]
                aug[r] = [a - fct * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
