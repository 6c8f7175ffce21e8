"""Lyapunov hyperplane arrangements: genericity, stable elements, chambers.

A hyperplane is the kernel of a root functional, stored as a primitive
integer normal (first nonzero entry positive) with the originating roots as
labels; antipodal and proportional functionals merge.  A plane (or a higher
dimensional region) is a rational subspace given by a basis or by ambient
equations.

Strict feasibility (all listed functionals negative somewhere on the region)
is decided by exact Fourier-Motzkin elimination on the scaled system
l(y) <= -1; the homogeneity of the system makes the two formulations
equivalent.  Eliminations track provenance, so infeasibility returns a
Farkas certificate: nonnegative rational weights whose functional
combination vanishes identically on the region.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .roots import CartanVector, Root


class ArrangementError(ValueError):
    pass


def _as_vector(v):
    if isinstance(v, Root):
        return tuple(Fraction(c) for c in v.coeffs)
    if isinstance(v, CartanVector):
        return tuple(v.coords)
    return tuple(Fraction(x) for x in v)


def _primitive(vec):
    """Scale to a primitive integer vector with positive first nonzero entry."""
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ArrangementError("zero functional has no kernel hyperplane")
    ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


@dataclass(frozen=True)
class Hyperplane:
    """ker of a functional; normal is primitive, labels are source roots."""

    normal: tuple
    labels: tuple

    def eval_at(self, point):
        coords = _as_vector(point)
        if len(coords) != len(self.normal):
            raise ArrangementError("dimension mismatch")
        return sum((c * x for c, x in zip(self.normal, coords)), Fraction(0))

    def __str__(self):
        return ",".join(str(c) for c in self.normal)


def lyapunov_hyperplanes(roots, ambient_dim=None):
    """Deduplicated kernel hyperplanes of the given functionals.

    Proportional normals (in particular r and -r) merge, labels accumulate.
    """
    out = []
    index = {}
    for r in roots:
        vec = _as_vector(r)
        if ambient_dim is not None and len(vec) != ambient_dim:
            raise ArrangementError("functional %s has dimension %d, expected %d"
                                   % (r, len(vec), ambient_dim))
        normal = _primitive(vec)
        label = r if isinstance(r, Root) else Root(normal) if _rootish(normal) else None
        if normal in index:
            k = index[normal]
            labels = out[k].labels + ((label,) if label is not None else ())
            out[k] = Hyperplane(normal, labels)
        else:
            index[normal] = len(out)
            out.append(Hyperplane(normal,
                                  (label,) if label is not None else ()))
    return out


def _rootish(vec):
    vals = sorted(abs(v) for v in vec if v)
    return vals == [1, 1] or vals == [2]


@dataclass(frozen=True)
class Plane:
    """Rational subspace: basis vectors satisfying optional ambient equations."""

    ambient_dim: int
    basis: tuple
    constraints: tuple = ()

    def __post_init__(self):
        basis = tuple(tuple(Fraction(x) for x in b) for b in self.basis)
        constraints = tuple(tuple(Fraction(x) for x in c)
                            for c in self.constraints)
        for b in basis:
            if len(b) != self.ambient_dim:
                raise ArrangementError("basis vector dimension mismatch")
        for c in constraints:
            if len(c) != self.ambient_dim:
                raise ArrangementError("constraint dimension mismatch")
        if _rank(basis) != len(basis):
            raise ArrangementError("basis vectors are linearly dependent")
        for b in basis:
            for c in constraints:
                if _dot(b, c) != 0:
                    raise ArrangementError("basis vector violates a constraint")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "constraints", constraints)

    @property
    def dim(self):
        return len(self.basis)

    @staticmethod
    def from_equations(ambient_dim, equations):
        """The solution space of the homogeneous equations, with a basis."""
        eqs = [tuple(Fraction(x) for x in e) for e in equations]
        basis = _nullspace(eqs, ambient_dim)
        return Plane(ambient_dim, tuple(basis), tuple(eqs))

    @staticmethod
    def full(ambient_dim):
        basis = tuple(tuple(Fraction(1 if i == j else 0)
                            for j in range(ambient_dim))
                      for i in range(ambient_dim))
        return Plane(ambient_dim, basis)

    def point_from_local(self, ys):
        coords = [Fraction(0)] * self.ambient_dim
        for y, b in zip(ys, self.basis):
            for k in range(self.ambient_dim):
                coords[k] += y * b[k]
        return CartanVector(tuple(coords))

    def contains(self, point):
        coords = _as_vector(point)
        rows = [list(b) for b in self.basis]
        return _rank(tuple(tuple(r) for r in rows + [list(coords)])) == self.dim


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _rank(rows):
    work = [list(r) for r in rows]
    m = len(work)
    if m == 0:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, m):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        for r in range(m):
            if r != rank and work[r][col]:
                f = work[r][col] / pv
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def _nullspace(eqs, dim):
    """Basis of the solution space of homogeneous rational equations."""
    work = [list(e) for e in eqs if any(e)]
    pivots = []
    rank = 0
    for col in range(dim):
        piv = None
        for r in range(rank, len(work)):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        work[rank] = [x / pv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    free = [c for c in range(dim) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(tuple(vec))
    return basis


# ---------------------------------------------------------------------------
# Genericity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenericityVerdict:
    generic: bool
    reason: str = ""                      # "", "contained", "shared-line"
    witness_pair: tuple | None = None     # offending hyperplane(s)
    shared_line: tuple | None = None      # primitive ambient direction

    def describe(self):
        out = {"generic": self.generic}
        if not self.generic:
            out["reason"] = self.reason
            out["witness"] = [str(h) for h in self.witness_pair]
            if self.shared_line is not None:
                out["line"] = [str(c) for c in self.shared_line]
        return out


def is_generic(plane, hyperplanes):
    """A 2-plane is generic iff it meets distinct hyperplanes in distinct lines.

    Verdicts carry a witness: the containing hyperplane, or the first pair
    sharing an intersection line together with that line's primitive ambient
    direction.
    """
    if plane.dim != 2:
        raise ArrangementError("genericity is defined for 2-planes; got dim %d"
                               % plane.dim)
    b1, b2 = plane.basis
    restricted = []
    for h in hyperplanes:
        a = _dot(h.normal, b1)
        b = _dot(h.normal, b2)
        if a == 0 and b == 0:
            return GenericityVerdict(False, "contained", (h,), None)
        restricted.append((h, a, b))
    for k in range(len(restricted)):
        h1, a1, c1 = restricted[k]
        for l in range(k + 1, len(restricted)):
            h2, a2, c2 = restricted[l]
            if a1 * c2 - a2 * c1 == 0:
                # shared line direction: kernel of (a1, c1) inside the plane
                y = (-c1, a1)
                ambient = tuple(y[0] * u + y[1] * v for u, v in zip(b1, b2))
                return GenericityVerdict(False, "shared-line", (h1, h2),
                                         _primitive(ambient))
    return GenericityVerdict(True)


# ---------------------------------------------------------------------------
# Strict feasibility via Fourier-Motzkin with certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StableSearchResult:
    point: CartanVector | None
    certificate: tuple | None   # ((root_index, weight), ...) Farkas weights

    @property
    def feasible(self):
        return self.point is not None

    def describe(self, roots=None):
        if self.feasible:
            return {"feasible": True, "point": [str(c) for c in self.point]}
        cert = [{"index": i, "weight": str(w)} for i, w in self.certificate]
        if roots is not None:
            for entry in cert:
                entry["root"] = str(roots[entry["index"]])
        return {"feasible": False, "certificate": cert}


def find_stable_element(roots, region=None, ambient_dim=None):
    """A rational point of the region with every functional strictly negative.

    Either a point (re-validated before returning) or a Farkas certificate:
    nonnegative weights, not all zero, whose weighted functional sum vanishes
    identically on the region.
    """
    roots = list(roots)
    if not roots:
        raise ArrangementError("need at least one functional")
    vecs = [_as_vector(r) for r in roots]
    if region is None:
        if ambient_dim is None:
            ambient_dim = len(vecs[0])
        region = Plane.full(ambient_dim)
    dim = region.dim
    # restrict each functional to the region's local coordinates
    rows = []
    for k, v in enumerate(vecs):
        if len(v) != region.ambient_dim:
            raise ArrangementError("functional %d has wrong dimension" % k)
        rows.append(([_dot(v, b) for b in region.basis], {k: Fraction(1)}))
    feasible, point_or_cert = _strict_feasible(rows, dim)
    if feasible:
        point = region.point_from_local(point_or_cert)
        for k, v in enumerate(vecs):
            if _dot(v, tuple(point)) >= 0:
                raise ArrangementError("internal error: point fails check %d" % k)
        return StableSearchResult(point, None)
    cert = tuple(sorted((k, w) for k, w in point_or_cert.items() if w))
    return StableSearchResult(None, cert)


def _strict_feasible(rows, dim):
    """Feasibility of {coeffs . y <= -1} via Fourier-Motzkin.

    rows: (coeffs, provenance) pairs; provenance maps original indices to
    nonnegative weights.  Returns (True, y) or (False, provenance).
    """
    system = [(list(c), dict(p), Fraction(-1)) for c, p in rows]
    stages = []
    for var in range(dim):
        pos, neg, rest = [], [], []
        for coeffs, prov, rhs in system:
            cv = coeffs[var]
            if cv > 0:
                pos.append((coeffs, prov, rhs))
            elif cv < 0:
                neg.append((coeffs, prov, rhs))
            else:
                rest.append((coeffs, prov, rhs))
        stages.append((var, pos, neg))
        new_system = list(rest)
        for cp, pp, rp in pos:
            for cn, pn, rn in neg:
                a = cp[var]
                b = -cn[var]
                # b*row_pos + a*row_neg eliminates var; weights stay >= 0
                coeffs = [b * x + a * y for x, y in zip(cp, cn)]
                prov = {}
                for k, w in pp.items():
                    prov[k] = prov.get(k, Fraction(0)) + b * w
                for k, w in pn.items():
                    prov[k] = prov.get(k, Fraction(0)) + a * w
                rhs = b * rp + a * rn
                coeffs[var] = Fraction(0)
                new_system.append((coeffs, prov, rhs))
        system = new_system
        # contradiction scan: 0 <= rhs with rhs < 0
        for coeffs, prov, rhs in system:
            if rhs < 0 and not any(coeffs):
                return (False, prov)
    # all variables eliminated; remaining rows are 0 <= rhs checks
    for coeffs, prov, rhs in system:
        if rhs < 0:
            return (False, prov)
    # back-substitute a point, last stage first
    point = [Fraction(0)] * dim
    for var, pos, neg in reversed(stages):
        lo, hi = None, None
        for coeffs, _prov, rhs in pos:
            # coeffs.y <= rhs with positive var coefficient: upper bound
            bound = (rhs - sum(coeffs[k] * point[k] for k in range(dim)
                               if k != var)) / coeffs[var]
            hi = bound if hi is None else min(hi, bound)
        for coeffs, _prov, rhs in neg:
            bound = (rhs - sum(coeffs[k] * point[k] for k in range(dim)
                               if k != var)) / coeffs[var]
            lo = bound if lo is None else max(lo, bound)
        if lo is None and hi is None:
            point[var] = Fraction(0)
        elif lo is None:
            point[var] = hi - 1
        elif hi is None:
            point[var] = lo + 1
        else:
            if lo > hi:
                raise ArrangementError("internal error: empty interval")
            point[var] = (lo + hi) / 2
    return (True, point)


# ---------------------------------------------------------------------------
# Weyl chambers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChamberMap:
    """Realizable full sign vectors with exact sample points."""

    hyperplanes: tuple
    chambers: tuple   # ((sign, ...), CartanVector) pairs

    def __len__(self):
        return len(self.chambers)

    def describe(self):
        return [{"signs": list(signs), "sample": [str(c) for c in pt]}
                for signs, pt in self.chambers]


def weyl_chambers(hyperplanes, region=None, ambient_dim=None):
    """Enumerate all realizable chambers of the arrangement on the region.

    Recursive sign-vector search with Fourier-Motzkin pruning; every chamber
    comes with a strictly-regular rational sample point.
    """
    hyperplanes = list(hyperplanes)
    if not hyperplanes:
        raise ArrangementError("need at least one hyperplane")
    if region is None:
        if ambient_dim is None:
            ambient_dim = len(hyperplanes[0].normal)
        region = Plane.full(ambient_dim)
    if region.dim < 1:
        raise ArrangementError("region must have dimension at least 1")
    restricted = [[_dot(h.normal, b) for b in region.basis]
                  for h in hyperplanes]
    chambers = []

    def recurse(prefix):
        k = len(prefix)
        # sign s demands s*h(x) > 0, i.e. (-s)*h(x) < 0 for the solver
        rows = [([-s * c for c in restricted[i]], {i: Fraction(1)})
                for i, s in enumerate(prefix)]
        feasible, payload = _strict_feasible(rows, region.dim)
        if not feasible:
            return
        if k == len(hyperplanes):
            point = region.point_from_local(payload)
            chambers.append((tuple(prefix), point))
            return
        recurse(prefix + [1])
        recurse(prefix + [-1])

    recurse([])
    return ChamberMap(tuple(hyperplanes), tuple(chambers))
