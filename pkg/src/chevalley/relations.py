"""Exact verification of the generating relations and conjugation identities.

Families (reports carry these ids):

* ``additivity``            x_r(a) x_r(b) = x_r(a+b)
* ``commutator``            [x_r(a), x_p(b)] = prod_{ir+jp in Phi} x_{ir+jp}(g_ij(a,b))
* ``trivial-commutator``    [x_r(a), x_p(b)] = id when r+p is outside the system
* ``h-multiplicativity``    h_{L1-L2}(a) h_{L1-L2}(b) = h_{L1-L2}(ab)
* ``h-involution``          h_{2Ln}(-1)^2 = id, with the explicit diagonal form
* ``h-diagonal-form``       h_{L1-L2} diagonal displays
* ``h-literal-form``        normalized h agrees with the literal two-factor product
* ``weyl-conj-1..6``        conjugation of w/h letters by w elements (sp)
* ``weyl-w-conj-1..3``      w-by-w conjugation displays (sl)
* ``w-inversion``           w_g(t1,t2) = w_{-g}(-1/t1, -1/t2) and variants
* ``weyl-component-conj``   w-conjugation permutes restricted components (sl)
* ``h-decomposition-*``     long-root h decomposition through the short torus (sp)
* ``monomial-form-1..7``    the explicit permutation-times-diagonal displays

Two regimes: ``grid`` evaluates over a deterministic rational grid (every
scalar slot sweeps all grid values; relations in scope are Laurent-polynomial
of total degree <= 8 per parameter, and the default grid has 11 values);
``symbolic`` treats parameters as Laurent symbols and decides by canonical
equality, which certifies the identity for all parameter values at once.

The hot path works on sparse "identity plus delta" dictionaries
{(row, col): scalar}; every generator's nilpotent part squares to zero, so
x-letters are exactly I + f and products stay tiny.  The dense ExactMatrix
route is independent and is cross-checked against this one in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .generators import (GeneratorError, GroupModel, gen_h, gen_h_literal,
                         position_component_table, root_entry_positions)
from .matrices import ExactMatrix
from .roots import Root, build_root_system, positive_combinations
from .scalars import (LAURENT, RATIONAL, GaussianRational, LaurentFrac,
                      LaurentPoly, format_scalar, mode_of, scalar_one)

DEFAULT_GRID = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
                Fraction(3), Fraction(-3), Fraction(1, 2), Fraction(-1, 2),
                Fraction(2, 3), Fraction(-2, 3), Fraction(5, 7))

GRID = "grid"
SYMBOLIC = "symbolic"
REGIMES = (GRID, SYMBOLIC)


class RelationError(ValueError):
    pass


class DecompositionError(RelationError):
    """Residual not identity after peeling; carries the residual matrix."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


# ---------------------------------------------------------------------------
# Sparse identity+delta arithmetic
# ---------------------------------------------------------------------------

def delta_mul(a, b):
    """Delta of (I+a)(I+b): a + b + a*b, zero entries pruned."""
    out = dict(a)
    for k, v in b.items():
        cur = out.get(k)
        if cur is None:
            out[k] = v
        else:
            cur = cur + v
            if cur:
                out[k] = cur
            else:
                del out[k]
    if a and b:
        rows_b = {}
        for (i, j), v in b.items():
            rows_b.setdefault(i, []).append((j, v))
        for (i, k), va in a.items():
            for j, vb in rows_b.get(k, ()):
                key = (i, j)
                cur = out.get(key)
                p = va * vb
                if cur is None:
                    if p:
                        out[key] = p
                else:
                    cur = cur + p
                    if cur:
                        out[key] = cur
                    else:
                        del out[key]
    return out


def delta_word(deltas):
    out = {}
    for d in deltas:
        out = delta_mul(out, d)
    return out


def delta_to_matrix(delta, size, mode=None):
    """The matrix I + delta."""
    if mode is None:
        mode = _delta_mode(delta)
    m = ExactMatrix.identity(size, mode)
    rows = [list(r) for r in m.rows]
    for (i, j), v in delta.items():
        if i == j:
            rows[i - 1][j - 1] = rows[i - 1][j - 1] + v
        else:
            rows[i - 1][j - 1] = v
    return ExactMatrix(rows, mode)


def matrix_to_delta(m):
    """The delta M - I of a matrix, zero entries pruned."""
    out = {}
    one = scalar_one(m.mode)
    for i in range(m.size):
        for j in m._support[i]:
            v = m.rows[i][j]
            if i == j:
                v = v - one
            if v:
                out[(i + 1, j + 1)] = v
    for i in range(m.size):
        if not m.rows[i][i]:
            out[(i + 1, i + 1)] = -one
    return out


def x_delta(model, root, params):
    """Delta of the x-letter: the root-space element itself (f^2 = 0)."""
    positions = root_entry_positions(model, root.untagged())
    out = {}
    if root.restricted_tag is not None:
        r, c, _s = positions[root.restricted_tag - 1]
        if params[0]:
            out[(r, c)] = params[0]
        return out
    if len(params) == 1:
        t = params[0]
        if t:
            for (r, c, s) in positions:
                out[(r, c)] = t if s == 1 else -t
    else:
        for p, (r, c, _s) in zip(params, positions):
            if p:
                out[(r, c)] = p
    return out


@lru_cache(maxsize=65536)
def _w_delta_cached(model, root, params):
    neg_inv = tuple((-(1 / p)) if p else p for p in params)
    xa = x_delta(model, root, params)
    xb = x_delta(model, -root, neg_inv)
    return _freeze(delta_word([xa, xb, xa]))


@lru_cache(maxsize=65536)
def _h_delta_cached(model, root, params):
    ref = tuple(scalar_one(mode_of(p)) if p else p for p in params)
    w_t = w_delta(model, root, params)
    w_ref_inv = w_delta(model, root, tuple(-p for p in ref))
    return _freeze(delta_mul(w_t, w_ref_inv))


def _freeze(d):
    return tuple(sorted(d.items()))


def _thaw(t):
    return dict(t)


def w_delta(model, root, params):
    return _thaw(_w_delta_cached(model, root, tuple(params)))


def h_delta(model, root, params):
    return _thaw(_h_delta_cached(model, root, tuple(params)))


def commutator_delta(model, r, p, a, b):
    """Delta of [x_r(a), x_p(b)] = x_r(a) x_p(b) x_r(-a) x_p(-b)."""
    xa = x_delta(model, r, a)
    xb = x_delta(model, p, b)
    xai = x_delta(model, r, tuple(-t for t in a))
    xbi = x_delta(model, p, tuple(-t for t in b))
    return delta_word([xa, xb, xai, xbi])


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    """Outcome of one relation family on one root datum."""

    relation_id: str
    model: GroupModel
    roots: tuple
    regime: str
    verdict: str                 # "pass" | "fail"
    instances: int
    params: str = ""             # description of the parameter sweep
    witness: dict | None = None  # failing params / entry / both sides
    note: str = ""

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_json_dict(self):
        out = {
            "relation_id": self.relation_id,
            "model": self.model.family,
            "n": self.model.n,
            "roots": [str(r) for r in self.roots],
            "params": self.params,
            "regime": self.regime,
            "verdict": self.verdict,
            "instances": self.instances,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


def _delta_witness(params, lhs, rhs):
    keys = sorted(set(lhs) | set(rhs))
    for k in keys:
        l = lhs.get(k)
        r = rhs.get(k)
        if (l is None) != (r is None) or (l is not None and l != r):
            zero = "0"
            return {
                "params": [format_scalar(p) for p in params],
                "entry": [k[0], k[1]],
                "lhs": format_scalar(l) if l is not None else zero,
                "rhs": format_scalar(r) if r is not None else zero,
            }
    return None


def _mismatch(relation_id, model, roots, regime, count, params, lhs, rhs, note=""):
    return VerificationReport(relation_id, model, tuple(roots), regime, "fail",
                              count, note=note,
                              witness=_delta_witness(params, lhs, rhs))


# ---------------------------------------------------------------------------
# Parameter sweeps
# ---------------------------------------------------------------------------

def grid_for_model(model, grid=None):
    """The default grid, embedded into Q(i) for the complex model."""
    grid = tuple(grid) if grid is not None else DEFAULT_GRID
    if len(set(grid)) < 9 or any(not g for g in grid):
        raise RelationError("grid must hold at least 9 distinct nonzero values")
    if model.family == "sl-c":
        return tuple(GaussianRational(g) for g in grid)
    return grid


def pair_sweep(grid):
    """30+ two-slot values: joint diagonal plus both axis embeddings.

    Each scalar slot ranges over the full grid within the sweep.
    """
    zero = grid[0] - grid[0]
    rot = grid[3:] + grid[:3]
    out = [(g, h) for g, h in zip(grid, rot)]
    out += [(g, zero) for g in grid]
    out += [(zero, g) for g in grid]
    return out


def param_tuples(arity_a, arity_b, grid):
    """Deterministic grid-regime designs per scalar-slot count.

    Up to two slots get the full Cartesian product; three slots cross the
    two-slot sweep with the full grid; four slots use an anchored design
    (each letter sweeps against a pinned partner, plus a joint diagonal).
    The symbolic regime provides the complete polynomial certificate.
    """
    if arity_a == 1 and arity_b == 1:
        return [((a,), (b,)) for a in grid for b in grid]
    if arity_a == 2 and arity_b == 1:
        return [(pa, (b,)) for pa in pair_sweep(grid) for b in grid]
    if arity_a == 1 and arity_b == 2:
        return [((a,), pb) for a in grid for pb in pair_sweep(grid)]
    ps = pair_sweep(grid)
    rot = ps[7:] + ps[:7]
    pinned_a = (grid[2], grid[4])
    pinned_b = (grid[4], grid[6])
    out = [(pa, pinned_b) for pa in ps]
    out += [(pinned_a, pb) for pb in ps]
    out += list(zip(ps, rot))
    return out


def unit_tuples(arity, grid):
    """Parameter tuples for letters that need units: no zero slots."""
    if arity == 1:
        return [(g,) for g in grid]
    rot = grid[3:] + grid[:3]
    rot2 = grid[7:] + grid[:7]
    return [(g, h) for g, h in zip(grid, rot)] + \
        [(g, h) for g, h in zip(grid, rot2)]


def symbolic_params(arity, prefix):
    if arity == 1:
        return (LaurentFrac.symbol(prefix),)
    return tuple(LaurentFrac.symbol("%s%d" % (prefix, k)) for k in (1, 2))


# ---------------------------------------------------------------------------
# Structure functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureFunction:
    """Exact parameter law of one commutator factor x_{i r + j p}.

    Each output slot is a homogeneous polynomial of bidegree exactly (i, j)
    in the slot variables of (a, b); for sp it is a single integer monomial.
    """

    i: int
    j: int
    target: Root
    slot_laws: tuple          # one LaurentPoly per output slot
    a_vars: tuple
    b_vars: tuple

    def evaluate(self, a, b):
        point = dict(zip(self.a_vars, a))
        point.update(zip(self.b_vars, b))
        return tuple(law.evaluate(point) for law in self.slot_laws)

    def bidegree_ok(self):
        for law in self.slot_laws:
            for key in law.terms:
                exps = dict(key)
                da = sum(exps.get(v, 0) for v in self.a_vars)
                db = sum(exps.get(v, 0) for v in self.b_vars)
                if law.terms[key] and (da, db) != (self.i, self.j):
                    return False
        return True

    def describe(self):
        return {
            "i": self.i,
            "j": self.j,
            "target": str(self.target),
            "laws": [_poly_text(law) for law in self.slot_laws],
        }


def _poly_text(p):
    return format_scalar(LaurentFrac(p))


def _target_slots(model, q):
    """Support positions of each parameter slot of x_q, with sp signs."""
    positions = root_entry_positions(model, q)
    if model.param_arity(q) == 1:
        return [positions[0]]
    return positions


@lru_cache(maxsize=None)
def fit_structure_functions(model, r, p):
    """Symbolically extract the g-laws of [x_r(a), x_p(b)]; cached.

    Raises DecompositionError if the factors do not reassemble, and
    RelationError if a law violates its bidegree or (sp) is not a single
    integer monomial.
    """
    a_vars = ("a",) if model.param_arity(r) == 1 else ("a1", "a2")
    b_vars = ("b",) if model.param_arity(p) == 1 else ("b1", "b2")
    a = tuple(LaurentFrac.symbol(v) for v in a_vars)
    b = tuple(LaurentFrac.symbol(v) for v in b_vars)
    comm = commutator_delta(model, r, p, a, b)
    combos = positive_combinations(r, p)
    used = set()
    for _i, _j, q in combos:
        for (row, col, _s) in root_entry_positions(model, q):
            if (row, col) in used:
                raise RelationError("overlapping factor supports for %s,%s" % (r, p))
            used.add((row, col))
    laws = []
    factors = []
    zero = LaurentFrac(0)
    for i, j, q in combos:
        slots = _target_slots(model, q)
        vals = []
        for (row, col, s) in slots:
            v = comm.get((row, col), zero)
            vals.append(v if s == 1 else -v)
        polys = []
        for v in vals:
            if v.den != LaurentPoly.const(1):
                raise RelationError("non-polynomial structure law for %s,%s" % (r, p))
            polys.append(v.num)
        sf = StructureFunction(i, j, q, tuple(polys), a_vars, b_vars)
        if not sf.bidegree_ok():
            raise RelationError("bidegree violation at %s for pair %s,%s" % (q, r, p))
        if model.is_sp:
            terms = polys[0].terms
            if len(terms) > 1 or any(c.denominator != 1 for c in terms.values()):
                raise RelationError("sp law is not a single integer monomial")
        laws.append(sf)
        factors.append(x_delta(model, q, tuple(vals)))
    rhs = delta_word(factors)
    if rhs != comm:
        diff = delta_mul(comm, _delta_invert_unipotent(rhs, model.size))
        raise DecompositionError(
            "structure-law reassembly failed for %s,%s" % (r, p),
            delta_to_matrix(diff, model.size, LAURENT))
    return tuple(laws)


def decompose_commutator(model, r, p, a, b):
    """Peel [x_r(a), x_p(b)] into root-ordered factors; exact reassembly.

    Returns (factors, laws) where factors is a list of (root, params) in the
    positive-combination order and laws are the fitted StructureFunctions.
    """
    a = _tuple_params(model, r, a)
    b = _tuple_params(model, p, b)
    if all(x + y == 0 for x, y in zip(r.coeffs, p.coeffs)):
        raise RelationError("antipodal pair rejected")
    comm = commutator_delta(model, r, p, a, b)
    combos = positive_combinations(r, p)
    factors = []
    deltas = []
    for i, j, q in combos:
        slots = _target_slots(model, q)
        vals = []
        for (row, col, s) in slots:
            v = comm.get((row, col))
            if v is None:
                v = a[0] - a[0]  # typed zero
            vals.append(v if s == 1 else -v)
        factors.append((q, tuple(vals)))
        deltas.append(x_delta(model, q, tuple(vals)))
    rhs = delta_word(deltas)
    if rhs != comm:
        diff = delta_mul(comm, _delta_invert_unipotent(rhs, model.size))
        raise DecompositionError("decomposition residual is not the identity",
                                 delta_to_matrix(diff, model.size))
    laws = fit_structure_functions(model, r, p)
    return factors, laws


def _delta_invert_unipotent(delta, size):
    """Inverse delta of I+delta via the nilpotent geometric series."""
    out = {}
    power = dict(delta)
    sign = -1
    for _ in range(size + 1):
        if not power:
            break
        for k, v in power.items():
            cur = out.get(k)
            w = v if sign > 0 else -v
            if cur is None:
                out[k] = w
            else:
                cur = cur + w
                if cur:
                    out[k] = cur
                else:
                    del out[k]
        nxt = {}
        rows = {}
        for (i, j), v in delta.items():
            rows.setdefault(i, []).append((j, v))
        for (i, k), v in power.items():
            for j, w in rows.get(k, ()):
                key = (i, j)
                cur = nxt.get(key)
                pv = v * w
                if cur is None:
                    if pv:
                        nxt[key] = pv
                else:
                    cur = cur + pv
                    if cur:
                        nxt[key] = cur
                    else:
                        del nxt[key]
        power = nxt
        sign = -sign
    return out


def _tuple_params(model, root, params):
    if not isinstance(params, (tuple, list)):
        params = (params,)
    params = tuple(Fraction(p) if isinstance(p, int) else p for p in params)
    arity = model.param_arity(root)
    if len(params) != arity:
        raise GeneratorError("root %s takes %d parameter(s), got %d"
                             % (root, arity, len(params)))
    return params


# ---------------------------------------------------------------------------
# Single-relation verifiers
# ---------------------------------------------------------------------------

def verify_additivity(model, r, a, b, regime=GRID):
    """x_r(a) x_r(b) = x_r(a+b) as one report."""
    a = _tuple_params(model, r, a)
    b = _tuple_params(model, r, b)
    lhs = delta_mul(x_delta(model, r, a), x_delta(model, r, b))
    rhs = x_delta(model, r, tuple(x + y for x, y in zip(a, b)))
    if lhs == rhs:
        return VerificationReport("additivity", model, (r,), regime, "pass", 1,
                                  params=_ptxt(a, b))
    return _mismatch("additivity", model, (r,), regime, 1, a + b, lhs, rhs)


def verify_commutator(model, r, p, a, b, regime=GRID):
    """[x_r(a), x_p(b)] equals the product of its structure factors."""
    a = _tuple_params(model, r, a)
    b = _tuple_params(model, p, b)
    comm = commutator_delta(model, r, p, a, b)
    laws = fit_structure_functions(model, r, p)
    deltas = [x_delta(model, law.target, law.evaluate(a, b)) for law in laws]
    rhs = delta_word(deltas)
    if comm == rhs:
        return VerificationReport("commutator", model, (r, p), regime, "pass", 1,
                                  params=_ptxt(a, b))
    return _mismatch("commutator", model, (r, p), regime, 1, a + b, comm, rhs)


def verify_trivial_commutator(model, r, p, a, b, regime=GRID):
    a = _tuple_params(model, r, a)
    b = _tuple_params(model, p, b)
    rsum = tuple(x + y for x, y in zip(r.coeffs, p.coeffs))
    if any(rsum) and build_root_system(model.n).is_root(rsum):
        raise RelationError("pair %s,%s sums to a root; not a trivial pair" % (r, p))
    comm = commutator_delta(model, r, p, a, b)
    if not comm:
        return VerificationReport("trivial-commutator", model, (r, p), regime,
                                  "pass", 1, params=_ptxt(a, b))
    return _mismatch("trivial-commutator", model, (r, p), regime, 1, a + b,
                     comm, {})


def _ptxt(*tuples):
    return "; ".join(",".join(format_scalar(x) for x in t) for t in tuples)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def _sweep(relation_id, model, roots, regime, tuples, check):
    """Run check(params...) over all tuples; aggregate into one report."""
    count = 0
    for tup in tuples:
        count += 1
        bad = check(*tup)
        if bad is not None:
            lhs, rhs, flat = bad
            rep = _mismatch(relation_id, model, roots, regime, count, flat,
                            lhs, rhs)
            return rep
    return VerificationReport(relation_id, model, tuple(roots), regime, "pass",
                              count, params=_sweep_text(tuples))


def _sweep_text(tuples):
    return "%d parameter tuples" % len(tuples)


def additivity_suite(model, regime, grid):
    system = build_root_system(model.n)
    reports = []
    for r in system.roots:
        arity = model.param_arity(r)
        if regime == SYMBOLIC:
            tuples = [(symbolic_params(arity, "a"), symbolic_params(arity, "b"))]
        else:
            tuples = param_tuples(arity, arity, grid)

        def check(a, b, r=r):
            lhs = delta_mul(x_delta(model, r, a), x_delta(model, r, b))
            rhs = x_delta(model, r, tuple(x + y for x, y in zip(a, b)))
            if lhs != rhs:
                return (lhs, rhs, a + b)
            return None

        reports.append(_sweep("additivity", model, (r,), regime, tuples, check))
    return reports


def commutator_suites(model, regime, grid):
    """Relation families (2)/(3) over every ordered root pair with r+p != 0."""
    system = build_root_system(model.n)
    reports = []
    for r in system.roots:
        for p in system.roots:
            if all(x + y == 0 for x, y in zip(r.coeffs, p.coeffs)):
                continue
            rsum = tuple(x + y for x, y in zip(r.coeffs, p.coeffs))
            in_phi = system.is_root(rsum)
            arity_r = model.param_arity(r)
            arity_p = model.param_arity(p)
            if regime == SYMBOLIC:
                tuples = [(symbolic_params(arity_r, "a"),
                           symbolic_params(arity_p, "b"))]
            else:
                tuples = param_tuples(arity_r, arity_p, grid)
            if in_phi:
                try:
                    laws = fit_structure_functions(model, r, p)
                except RelationError as exc:
                    reports.append(VerificationReport(
                        "commutator", model, (r, p), regime, "fail", 0,
                        note=str(exc)))
                    continue

                def check(a, b, r=r, p=p, laws=laws):
                    comm = commutator_delta(model, r, p, a, b)
                    rhs = delta_word([x_delta(model, law.target,
                                              law.evaluate(a, b))
                                      for law in laws])
                    if comm != rhs:
                        return (comm, rhs, a + b)
                    return None

                reports.append(_sweep("commutator", model, (r, p), regime,
                                      tuples, check))
            else:
                def check(a, b, r=r, p=p):
                    comm = commutator_delta(model, r, p, a, b)
                    if comm:
                        return (comm, {}, a + b)
                    return None

                reports.append(_sweep("trivial-commutator", model, (r, p),
                                      regime, tuples, check))
    return reports


def h_relation_suite(model, regime, grid):
    """h-multiplicativity, h-involution, diagonal forms, literal agreement."""
    reports = []
    n = model.n
    r12 = Root.of(n, 1, 2, 1, -1)
    ln = Root.of(n, n)

    def h_params(t):
        return (t,) if model.is_sp else (t, t - t)

    if regime == SYMBOLIC:
        s = LaurentFrac.symbol("a")
        u = LaurentFrac.symbol("b")
        hm_tuples = [(s, u)]
    else:
        hm_tuples = [(a, b) for a in grid for b in grid]

    def hm_check(a, b):
        lhs = delta_mul(h_delta(model, r12, h_params(a)),
                        h_delta(model, r12, h_params(b)))
        rhs = h_delta(model, r12, h_params(a * b))
        if lhs != rhs:
            return (lhs, rhs, (a, b))
        return None

    reports.append(_sweep("h-multiplicativity", model, (r12,), regime,
                          hm_tuples, check=hm_check))

    # involution: h_{2Ln}(-1)^2 = id with the explicit diagonal form
    one = grid[0] / grid[0]
    minus_one = -one
    hm = h_delta(model, ln, (minus_one,))
    # diag(1,..,-1 at n,1,..,-1 at 2n) as a delta from the identity
    expected = {(n, n): minus_one - one, (2 * n, 2 * n): minus_one - one}
    sq = delta_mul(hm, hm)
    if hm == expected and not sq:
        reports.append(VerificationReport("h-involution", model, (ln,), regime,
                                          "pass", 1, params="-1"))
    else:
        lhs = sq if hm == expected else hm
        rhs = {} if hm == expected else expected
        reports.append(_mismatch("h-involution", model, (ln,), regime, 1,
                                 (minus_one,), lhs, rhs))

    # diagonal form of h_{L1-L2}
    def diag_check(t):
        hd = h_delta(model, r12, h_params(t))
        tinv = 1 / t
        exp = {(1, 1): t - 1, (2, 2): tinv - 1}
        if model.is_sp:
            exp[(1 + n, 1 + n)] = tinv - 1
            exp[(2 + n, 2 + n)] = t - 1
        exp = {k: v for k, v in exp.items() if v}
        if hd != exp:
            return (hd, exp, (t,))
        return None

    diag_tuples = [(LaurentFrac.symbol("a"),)] if regime == SYMBOLIC \
        else [(g,) for g in grid]
    reports.append(_sweep("h-diagonal-form", model, (r12,), regime,
                          diag_tuples, diag_check))

    # literal two-factor h displays agree with the normalized definition
    def literal_check(t):
        params = h_params(t)
        normalized = gen_h(model, r12, params).matrix
        literal = gen_h_literal(model, r12, params).matrix
        if normalized != literal:
            d1 = {(i + 1, j + 1): normalized.rows[i][j]
                  for i in range(normalized.size) for j in range(normalized.size)}
            d2 = {(i + 1, j + 1): literal.rows[i][j]
                  for i in range(literal.size) for j in range(literal.size)}
            return (d1, d2, (t,))
        return None

    lit_tuples = [(LaurentFrac.symbol("a"),)] if regime == SYMBOLIC \
        else [(g,) for g in grid[:5]]
    reports.append(_sweep("h-literal-form", model, (r12,), regime,
                          lit_tuples, literal_check))
    return reports


# ---------------------------------------------------------------------------
# Weyl-element conjugation suites
# ---------------------------------------------------------------------------

def _conj(w, inner, w_inv):
    return delta_mul(delta_mul(w, inner), w_inv)


def weyl_conjugation_suite(model, regime, grid):
    """Conjugation identities among w and h letters, verified as matrices."""
    if model.is_sp:
        return _sp_weyl_suite(model, regime, grid) + \
            _h_decomposition_suite(model, regime, grid)
    return (_sl_component_conjugation(model, regime, grid)
            + _sl_w_conjugation(model, regime, grid)
            + _w_inversion_suite(model, regime, grid))


def _sp_weyl_suite(model, regime, grid):
    n = model.n
    short = Root.of(n, n - 1, n, 1, -1)       # L_{n-1} - L_n
    plus = Root.of(n, n - 1, n, 1, 1)         # L_{n-1} + L_n
    long_n = Root.of(n, n)                    # 2L_n
    long_n1 = Root.of(n, n - 1)               # 2L_{n-1}
    if regime == SYMBOLIC:
        tuples = [(LaurentFrac.symbol("a"), LaurentFrac.symbol("b"))]
    else:
        tuples = [(a, t) for a in grid for t in grid]

    cases = [
        ("weyl-conj-1", (long_n, short, plus),
         lambda a, t: (_conj(w_delta(model, long_n, (a,)),
                             w_delta(model, short, (t,)),
                             w_delta(model, long_n, (-a,))),
                       w_delta(model, plus, (-(a * t),)))),
        ("weyl-conj-2", (long_n, plus, short),
         lambda a, t: (_conj(w_delta(model, long_n, (a,)),
                             w_delta(model, plus, (t,)),
                             w_delta(model, long_n, (-a,))),
                       w_delta(model, short, (t / a,)))),
        ("weyl-conj-3", (short, long_n, long_n1),
         lambda a, t: (_conj(w_delta(model, short, (t,)),
                             w_delta(model, long_n, (a,)),
                             w_delta(model, short, (-t,))),
                       w_delta(model, long_n1, (a * t * t,)))),
        ("weyl-conj-4", (short, long_n1, long_n),
         lambda a, t: (_conj(w_delta(model, short, (t,)),
                             w_delta(model, long_n1, (a,)),
                             w_delta(model, short, (-t,))),
                       w_delta(model, long_n, (a / (t * t),)))),
        ("weyl-conj-5", (short, long_n, long_n),
         lambda a, t: (_conj(h_delta(model, short, (t,)),
                             w_delta(model, long_n, (a,)),
                             h_delta(model, short, (1 / t,))),
                       w_delta(model, long_n, (a / (t * t),)))),
        ("weyl-conj-6", (long_n, short, plus),
         lambda a, t: (_conj(w_delta(model, long_n, (a,)),
                             h_delta(model, short, (t,)),
                             w_delta(model, long_n, (-a,))),
                       delta_mul(h_delta(model, plus, (-(a * t),)),
                                 h_delta(model, plus, (-(1 / a),))))),
    ]
    reports = []
    for rid, roots, sides in cases:
        def check(a, t, sides=sides):
            lhs, rhs = sides(a, t)
            if lhs != rhs:
                return (lhs, rhs, (a, t))
            return None

        reports.append(_sweep(rid, model, roots, regime, tuples, check))
    return reports


def _h_decomposition_suite(model, regime, grid):
    """Long-root torus elements through the short-root torus (sp)."""
    n = model.n
    short = Root.of(n, n - 1, n, 1, -1)
    plus = Root.of(n, n - 1, n, 1, 1)
    long_n = Root.of(n, n)
    one = grid[0] / grid[0]
    minus_one = -one
    reports = []

    # (h_{L_{n-1}-L_n}(-1))^2 = id
    hs = h_delta(model, short, (minus_one,))
    sq = delta_mul(hs, hs)
    reports.append(VerificationReport(
        "h-decomposition-square", model, (short,), regime,
        "pass" if not sq else "fail", 1, params="-1",
        witness=None if not sq else _delta_witness((minus_one,), sq, {})))

    # h_{L_{n-1}-L_n}(-1) h_{L_{n-1}+L_n}(-1)^{±1} = id
    hp = h_delta(model, plus, (minus_one,))
    pair = delta_mul(hs, hp)
    reports.append(VerificationReport(
        "h-decomposition-pair", model, (short, plus), regime,
        "pass" if not pair else "fail", 1, params="-1,-1",
        witness=None if not pair else _delta_witness((minus_one,), pair, {})))
    hp_inv = h_delta(model, plus, (minus_one,))  # h(-1)^{-1} = h(-1)
    pair_inv = delta_mul(hs, hp_inv)
    reports.append(VerificationReport(
        "h-decomposition-pair-inverse", model, (short, plus), regime,
        "pass" if not pair_inv else "fail", 1, params="-1,-1",
        witness=None if not pair_inv else _delta_witness((minus_one,),
                                                         pair_inv, {})))

    # h_{2Ln}(s z^2) = h_short(1/z) w_{2Ln}(s) h_short(1/z)^{-1} w_{2Ln}(-1)
    if regime == SYMBOLIC:
        tuples = [(s, LaurentFrac.symbol("b")) for s in (one, minus_one)]
    else:
        tuples = [(s, z) for s in (one, minus_one) for z in grid]

    def split_check(s, z):
        lhs = h_delta(model, long_n, (s * z * z,))
        zinv = 1 / z
        rhs = delta_word([h_delta(model, short, (zinv,)),
                          w_delta(model, long_n, (s,)),
                          h_delta(model, short, (z,)),
                          w_delta(model, long_n, (-one,))])
        if lhs != rhs:
            return (lhs, rhs, (s, z))
        return None

    reports.append(_sweep("h-decomposition-split", model, (long_n, short),
                          regime, tuples, split_check))
    return reports


def _sl_component_conjugation(model, regime, grid):
    """w x^delta_beta(v) w^{-1} is a single component letter at the permuted
    support; one aggregated report per w-form."""
    n = model.n
    system = build_root_system(n)
    table = position_component_table(n)
    reports = []
    w_forms = _w_forms(model, grid, regime)
    if regime == SYMBOLIC:
        v = LaurentFrac.symbol("c")
    else:
        v = grid[6]  # 1/2
    for (gamma, wparams, label) in w_forms:
        wd = w_delta(model, gamma, wparams)
        wd_inv = w_delta(model, gamma, tuple(-u for u in wparams))
        perm = _delta_perm(wd, 2 * n)

        def check(beta, delta, gamma=gamma, wd=wd, wd_inv=wd_inv, perm=perm):
            positions = root_entry_positions(model, beta)
            row, col, _s = positions[delta - 1]
            inner = {(row, col): v}
            out = _conj(wd, inner, wd_inv)
            if len(out) != 1:
                return (out, inner, (v,))
            (orow, ocol), _val = next(iter(out.items()))
            if (orow, ocol) != (perm[row], perm[col]):
                return (out, {(perm[row], perm[col]): v}, (v,))
            if (orow, ocol) not in table:
                return (out, {}, (v,))
            return None

        count = 0
        failure = None
        for beta in system.roots:
            deltas = (1,) if beta.is_long else (1, 2)
            for d in deltas:
                count += 1
                failure = check(beta, d)
                if failure is not None:
                    break
            if failure is not None:
                break
        if failure is None:
            reports.append(VerificationReport(
                "weyl-component-conj", model, (gamma,), regime, "pass", count,
                params=label))
        else:
            lhs, rhs, pr = failure
            reports.append(_mismatch("weyl-component-conj", model, (gamma,),
                                     regime, count, pr, lhs, rhs))
    return reports


def _w_forms(model, grid, regime):
    """Representative w letters: (u,0), (0,u), (u,u') on short; (u) on long."""
    n = model.n
    system = build_root_system(n)
    if regime == SYMBOLIC:
        u = LaurentFrac.symbol("u")
        u2 = LaurentFrac.symbol("v")
        zero = LaurentFrac(0)
    else:
        u = grid[2]
        u2 = grid[4]
        zero = u - u
    forms = []
    for gamma in system.roots:
        if gamma.is_long:
            forms.append((gamma, (u,), "u"))
        else:
            forms.append((gamma, (u, zero), "(u,0)"))
            forms.append((gamma, (zero, u), "(0,u)"))
            forms.append((gamma, (u, u2), "(u,v)"))
    return forms


def _delta_perm(wd, size):
    """Permutation of a monomial matrix given as a delta; 1-based map."""
    m = delta_to_matrix(wd, size)
    perm = {}
    for j in range(1, size + 1):
        col = [i for i in range(1, size + 1) if m.entry(i, j)]
        if len(col) != 1:
            raise RelationError("w element is not monomial")
        perm[j] = col[0]
    return perm


def _delta_mode(delta):
    for v in delta.values():
        return mode_of(v)
    return RATIONAL


def _sl_w_conjugation(model, regime, grid):
    """The three w-by-w conjugation displays for the sl families."""
    n = model.n
    if regime == SYMBOLIC:
        a = LaurentFrac.symbol("a")
        t1 = LaurentFrac.symbol("b1")
        t2 = LaurentFrac.symbol("b2")
        tuples = [(a, t1, t2)]
    else:
        tuples = [(a, t1, t2) for a in grid
                  for (t1, t2) in unit_tuples(2, grid)[:11]]
    reports = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rsum = Root.of(n, i, j, 1, 1)
            rdiff = Root.of(n, i, j, 1, -1)
            rdiff_op = Root.of(n, j, i, 1, -1)   # L_j - L_i
            li2 = Root.of(n, i)
            lj2neg = Root.of(n, j, si=-1)

            def zero_like(x):
                return x - x

            def check1(a, t1, t2, rsum=rsum, rdiff=rdiff, li2=li2,
                       lj2neg=lj2neg):
                z = zero_like(a)
                w_out = w_delta(model, rsum, (a, z))
                w_in = w_delta(model, rdiff, (t1, t2))
                lhs = _conj(w_out, w_in, w_delta(model, rsum, (-a, z)))
                rhs = delta_mul(w_delta(model, lj2neg, (-(t1 / a),)),
                                w_delta(model, li2, (a * t2,)))
                if lhs != rhs:
                    return (lhs, rhs, (a, t1, t2))
                return None

            def check2(a, t1, t2, rsum=rsum, rdiff_op=rdiff_op, li2=li2):
                w_out = w_delta(model, li2, (a,))
                w_in = w_delta(model, rsum, (t1, t2))
                lhs = _conj(w_out, w_in, w_delta(model, li2, (-a,)))
                rhs = w_delta(model, rdiff_op, (t2 / a, -(t1 / a)))
                if lhs != rhs:
                    return (lhs, rhs, (a, t1, t2))
                return None

            def check3(a, t1, t2, rsum=rsum, rdiff_op=rdiff_op, li2=li2):
                z = zero_like(a)
                w_out = w_delta(model, li2, (a,))
                w_in = w_delta(model, rsum, (t1, z))
                lhs = _conj(w_out, w_in, w_delta(model, li2, (-a,)))
                rhs = w_delta(model, rdiff_op, (z, -(t1 / a)))
                if lhs != rhs:
                    return (lhs, rhs, (a, t1))
                return None

            reports.append(_sweep("weyl-w-conj-1", model, (rsum, rdiff),
                                  regime, tuples, check1))
            reports.append(_sweep("weyl-w-conj-2", model, (li2, rsum),
                                  regime, tuples, check2))
            reports.append(_sweep("weyl-w-conj-3", model, (li2, rsum),
                                  regime, tuples, check3))
    return reports


def _w_inversion_suite(model, regime, grid):
    """w_g(t1,t2) = w_{-g}(-1/t1,-1/t2) and the one-parameter variants."""
    system = build_root_system(model.n)
    reports = []
    if regime == SYMBOLIC:
        t1 = LaurentFrac.symbol("a")
        t2 = LaurentFrac.symbol("b")
        pairs = [(t1, t2)]
        singles = [(t1,)]
    else:
        pairs = unit_tuples(2, grid)
        singles = [(g,) for g in grid]
    for gamma in system.roots:
        if gamma.is_long:
            def check(t, gamma=gamma):
                lhs = w_delta(model, gamma, (t,))
                rhs = w_delta(model, -gamma, (-(1 / t),))
                if lhs != rhs:
                    return (lhs, rhs, (t,))
                return None

            reports.append(_sweep("w-inversion", model, (gamma,), regime,
                                  singles, check))
        else:
            def check(t1, t2, gamma=gamma):
                z = t1 - t1
                for params in ((t1, t2), (t1, z), (z, t2)):
                    lhs = w_delta(model, gamma, params)
                    inv = tuple((-(1 / p)) if p else p for p in params)
                    rhs = w_delta(model, -gamma, inv)
                    if lhs != rhs:
                        return (lhs, rhs, params)
                return None

            reports.append(_sweep("w-inversion", model, (gamma,), regime,
                                  pairs, check))
    return reports


# ---------------------------------------------------------------------------
# Monomial-form suite
# ---------------------------------------------------------------------------

def _perm_diag_delta(size, swaps, diag, mode_probe):
    """Delta of p(pi) diag(...) with pi a product of disjoint swaps.

    diag maps position -> value (positions absent mean 1).
    """
    one = mode_probe / mode_probe
    perm = {k: k for k in range(1, size + 1)}
    for (x, y) in swaps:
        perm[x], perm[y] = y, x
    out = {}
    for j in range(1, size + 1):
        dj = diag.get(j, one)
        i = perm[j]
        if i == j:
            v = dj - one
            if v:
                out[(i, j)] = v
        else:
            out[(i, j)] = dj
            out[(j, j)] = -one
    return out


def monomial_form_suite(model, regime, grid):
    """The seven explicit w displays; sl gets all, sp gets the long-root one."""
    n = model.n
    reports = []
    if regime == SYMBOLIC:
        t1 = LaurentFrac.symbol("a")
        t2 = LaurentFrac.symbol("b")
        pairs = [(t1, t2)]
        singles = [t1]
    else:
        pairs = unit_tuples(2, grid)
        singles = list(grid)

    def tup(*vals):
        return tuple(vals)

    for i in range(1, n + 1):
        # display 7: w_{2Li}(t) = p((i,i+n)) diag(-1/t at i, t at i+n)
        long_i = Root.of(n, i)

        def check7(t, long_i=long_i, i=i):
            lhs = w_delta(model, long_i, (t,))
            rhs = _perm_diag_delta(model.size, [(i, i + n)],
                                   {i: -(1 / t), i + n: t}, t)
            if lhs != rhs:
                return (lhs, rhs, (t,))
            return None

        reports.append(_sweep("monomial-form-7", model, (long_i,), regime,
                              [(s,) for s in singles], check7))
    if model.is_sp:
        return reports

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rdiff = Root.of(n, i, j, 1, -1)
            rsum = Root.of(n, i, j, 1, 1)

            def check1(t1, t2, rdiff=rdiff, i=i, j=j):
                lhs = w_delta(model, rdiff, (t1, t2))
                rhs = _perm_diag_delta(
                    model.size, [(i, j), (i + n, j + n)],
                    {i: -(1 / t1), j: t1, i + n: t2, j + n: -(1 / t2)}, t1)
                if lhs != rhs:
                    return (lhs, rhs, (t1, t2))
                return None

            def check2(t1, t2, rdiff=rdiff, i=i, j=j):
                lhs = w_delta(model, rdiff, (t1, t1 - t1))
                rhs = _perm_diag_delta(model.size, [(i, j)],
                                       {i: -(1 / t1), j: t1}, t1)
                if lhs != rhs:
                    return (lhs, rhs, (t1,))
                return None

            def check3(t1, t2, rdiff=rdiff, i=i, j=j):
                lhs = w_delta(model, rdiff, (t2 - t2, t2))
                rhs = _perm_diag_delta(model.size, [(i + n, j + n)],
                                       {i + n: t2, j + n: -(1 / t2)}, t2)
                if lhs != rhs:
                    return (lhs, rhs, (t2,))
                return None

            def check4(t1, t2, rsum=rsum, i=i, j=j):
                lhs = w_delta(model, rsum, (t1, t2))
                rhs = _perm_diag_delta(
                    model.size, [(i, j + n), (j, i + n)],
                    {i: -(1 / t1), j: -(1 / t2), i + n: t2, j + n: t1}, t1)
                if lhs != rhs:
                    return (lhs, rhs, (t1, t2))
                return None

            def check5(t1, t2, rsum=rsum, i=i, j=j):
                lhs = w_delta(model, rsum, (t2 - t2, t2))
                rhs = _perm_diag_delta(model.size, [(j, i + n)],
                                       {j: -(1 / t2), i + n: t2}, t2)
                if lhs != rhs:
                    return (lhs, rhs, (t2,))
                return None

            def check6(t1, t2, rsum=rsum, i=i, j=j):
                lhs = w_delta(model, rsum, (t1, t1 - t1))
                rhs = _perm_diag_delta(model.size, [(i, j + n)],
                                       {i: -(1 / t1), j + n: t1}, t1)
                if lhs != rhs:
                    return (lhs, rhs, (t1,))
                return None

            for rid, chk, roots in (("monomial-form-1", check1, (rdiff,)),
                                    ("monomial-form-2", check2, (rdiff,)),
                                    ("monomial-form-3", check3, (rdiff,)),
                                    ("monomial-form-4", check4, (rsum,)),
                                    ("monomial-form-5", check5, (rsum,)),
                                    ("monomial-form-6", check6, (rsum,))):
                reports.append(_sweep(rid, model, roots, regime, pairs, chk))
    return reports


# ---------------------------------------------------------------------------
# Drivers
# ---------------------------------------------------------------------------

def verify_h_relations(model, regime=GRID, grid=None):
    """The h-multiplicativity/involution/diagonal family as reports."""
    g = _suite_grid(model, regime, grid)
    return h_relation_suite(model, regime, g)


def verify_weyl_conjugation_suite(model, regime=GRID, grid=None):
    """Weyl-element conjugation and torus-decomposition identities."""
    g = _suite_grid(model, regime, grid)
    return weyl_conjugation_suite(model, regime, g)


def verify_monomial_forms(model, regime=GRID, grid=None):
    """The explicit permutation-times-diagonal display identities."""
    g = _suite_grid(model, regime, grid)
    return monomial_form_suite(model, regime, g)


def _suite_grid(model, regime, grid):
    if regime == SYMBOLIC:
        return tuple(grid) if grid is not None else DEFAULT_GRID
    return grid_for_model(model, grid)


SUITES = ("relations", "weyl", "monomial", "all")


def run_suite(model, suite="all", regime=GRID, grid=None):
    """Run the selected suites; deterministic report order."""
    if regime not in REGIMES:
        raise RelationError("unknown regime %r" % regime)
    if suite not in SUITES:
        raise RelationError("unknown suite %r" % suite)
    # in the symbolic regime grid constants stay rational: symbols and
    # gaussian scalars do not mix, and the polynomial identity covers Q(i)
    g = _suite_grid(model, regime, grid)
    reports = []
    if suite in ("relations", "all"):
        reports += additivity_suite(model, regime, g)
        reports += commutator_suites(model, regime, g)
        reports += h_relation_suite(model, regime, g)
    if suite in ("weyl", "all"):
        reports += weyl_conjugation_suite(model, regime, g)
    if suite in ("monomial", "all"):
        reports += monomial_form_suite(model, regime, g)
    return reports
