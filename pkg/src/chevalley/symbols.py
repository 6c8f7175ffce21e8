"""Formal Steinberg-symbol engine over a finite multiplicative universe.

A symbol expression is a formal product prod {s_k, t_k}^{e_k} with the pair
arguments drawn from a finite universe U of nonzero rationals (or Gaussian
rationals).  The axiom families are

* bilinearity in either slot:  {t1*t2, t3} = {t1,t3}{t2,t3} (and mirrored),
  instantiated whenever all three arguments and the product lie in U;
* antisymmetry:                {t1,t2} = {t2,t1}^{-1};
* one-minus:                   {t, 1-t} = 1  (t != 1, 1-t in U);
* minus-self:                  {t, -t} = 1.

Written additively in the exponent lattice Z^(U x U), an expression is a
consequence of the axioms iff its exponent vector lies in the integer row
span of the axiom instance vectors.  Membership is decided by Hermite-style
integer elimination; every reduced row carries its provenance combination,
so a positive answer returns an exact integer certificate that replays to
the empty expression.

Soundness of anything judged true is guaranteed against the matrix
realization: the symbol {s, t} maps to h(s) h(t) h(st)^{-1}, which is the
identity matrix for all s, t (h-multiplicativity holds in the matrix group),
so the realization check can only confirm, never refute --- it tests the
engine's bookkeeping, not completeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .generators import GroupModel, gen_h
from .matrices import mat_mul
from .roots import Root
from .scalars import GaussianRational, format_scalar, parse_scalar

AXIOM_BILINEAR_LEFT = "bilinear-left"
AXIOM_BILINEAR_RIGHT = "bilinear-right"
AXIOM_ANTISYMMETRY = "antisymmetry"
AXIOM_ONE_MINUS = "one-minus"
AXIOM_MINUS_SELF = "minus-self"
ALL_AXIOMS = (AXIOM_BILINEAR_LEFT, AXIOM_BILINEAR_RIGHT, AXIOM_ANTISYMMETRY,
              AXIOM_ONE_MINUS, AXIOM_MINUS_SELF)
BILINEAR_ONLY = (AXIOM_BILINEAR_LEFT, AXIOM_BILINEAR_RIGHT)


class SymbolError(ValueError):
    pass


def _canon(value):
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, GaussianRational)):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    raise SymbolError("universe elements must be exact scalars: %r" % (value,))


@dataclass(frozen=True)
class SymbolExpr:
    """Formal product of symbol pairs with integer exponents.

    Canonical: pairs deduplicated and sorted, zero exponents dropped.
    """

    pairs: tuple  # tuple of ((s, t), exponent)

    @staticmethod
    def from_pairs(items):
        acc = {}
        for (s, t), e in items:
            key = (_canon(s), _canon(t))
            if not key[0] or not key[1]:
                raise SymbolError("symbol arguments must be nonzero")
            e = int(e)
            acc[key] = acc.get(key, 0) + e
        cleaned = tuple(sorted(((k, e) for k, e in acc.items() if e),
                               key=lambda item: _pair_key(item[0])))
        return SymbolExpr(cleaned)

    @staticmethod
    def single(s, t, e=1):
        return SymbolExpr.from_pairs([((s, t), e)])

    def vector(self):
        return {k: e for k, e in self.pairs}

    def __mul__(self, other):
        return SymbolExpr.from_pairs(list(self.pairs) + list(other.pairs))

    def inverse(self):
        return SymbolExpr(tuple((k, -e) for k, e in self.pairs))

    def is_empty(self):
        return not self.pairs

    def describe(self):
        return [[format_scalar(s), format_scalar(t), e]
                for (s, t), e in self.pairs]

    def __str__(self):
        if not self.pairs:
            return "1"
        bits = []
        for (s, t), e in self.pairs:
            head = "{%s,%s}" % (format_scalar(s), format_scalar(t))
            bits.append(head if e == 1 else "%s^%d" % (head, e))
        return "*".join(bits)


def _pair_key(pair):
    return tuple(_scalar_key(x) for x in pair)


def _scalar_key(x):
    if isinstance(x, Fraction):
        return (0, x.numerator, x.denominator)
    return (1, x.re.numerator, x.re.denominator, x.im.numerator,
            x.im.denominator)


@dataclass(frozen=True)
class AxiomInstance:
    kind: str
    args: tuple
    vector: tuple  # frozen dict items: ((s,t), coefficient)

    def describe(self):
        return {"kind": self.kind,
                "args": [format_scalar(a) for a in self.args],
                "pairs": [[format_scalar(s), format_scalar(t), c]
                          for (s, t), c in self.vector]}


@dataclass(frozen=True)
class AxiomLattice:
    universe: tuple
    kinds: tuple
    instances: tuple

    def describe(self):
        return {"universe": [format_scalar(u) for u in self.universe],
                "kinds": list(self.kinds),
                "instances": len(self.instances)}


MAX_UNIVERSE = 32


def build_axiom_lattice(universe, kinds=ALL_AXIOMS):
    """Enumerate every axiom instance whose arguments stay inside U."""
    u_set = []
    for v in universe:
        c = _canon(v)
        if not c:
            raise SymbolError("0 is not a unit; universe must avoid it")
        if c not in u_set:
            u_set.append(c)
    if len(u_set) > MAX_UNIVERSE:
        raise SymbolError("universe capped at %d elements" % MAX_UNIVERSE)
    u_sorted = tuple(sorted(u_set, key=_scalar_key))
    members = set(u_sorted)
    for kind in kinds:
        if kind not in ALL_AXIOMS:
            raise SymbolError("unknown axiom kind %r" % kind)
    instances = []
    seen = set()

    def emit(kind, args, items):
        acc = {}
        for key, c in items:
            acc[key] = acc.get(key, 0) + c
        vec = tuple(sorted(((k, c) for k, c in acc.items() if c),
                           key=lambda item: _pair_key(item[0])))
        if not vec:
            return
        if vec in seen:
            return
        seen.add(vec)
        instances.append(AxiomInstance(kind, args, vec))

    if AXIOM_BILINEAR_LEFT in kinds:
        for t1 in u_sorted:
            for t2 in u_sorted:
                prod = t1 * t2
                if prod not in members:
                    continue
                for t3 in u_sorted:
                    emit(AXIOM_BILINEAR_LEFT, (t1, t2, t3),
                         [((prod, t3), 1), ((t1, t3), -1), ((t2, t3), -1)])
    if AXIOM_BILINEAR_RIGHT in kinds:
        for t2 in u_sorted:
            for t3 in u_sorted:
                prod = t2 * t3
                if prod not in members:
                    continue
                for t1 in u_sorted:
                    emit(AXIOM_BILINEAR_RIGHT, (t1, t2, t3),
                         [((t1, prod), 1), ((t1, t2), -1), ((t1, t3), -1)])
    if AXIOM_ANTISYMMETRY in kinds:
        for t1 in u_sorted:
            for t2 in u_sorted:
                emit(AXIOM_ANTISYMMETRY, (t1, t2),
                     [((t1, t2), 1), ((t2, t1), 1)])
    if AXIOM_ONE_MINUS in kinds:
        one = Fraction(1)
        for t in u_sorted:
            if t == one:
                continue
            om = one - t if isinstance(t, Fraction) else GaussianRational(1) - t
            if om in members:
                emit(AXIOM_ONE_MINUS, (t,), [((t, om), 1)])
    if AXIOM_MINUS_SELF in kinds:
        for t in u_sorted:
            if -t in members:
                emit(AXIOM_MINUS_SELF, (t,), [((t, -t), 1)])
    return AxiomLattice(u_sorted, tuple(kinds), tuple(instances))


# ---------------------------------------------------------------------------
# Integer lattice membership with certificates
# ---------------------------------------------------------------------------

class _Echelon:
    """Hermite-style row echelon over Z with provenance tracking.

    Rows are sparse dicts over pair columns; each row remembers the integer
    combination of original instances that produced it.
    """

    def __init__(self, column_order):
        self.rank_of = {c: k for k, c in enumerate(column_order)}
        self.pivots = {}  # column -> (row dict, combo dict)

    def _lead(self, row):
        best = None
        for c in row:
            k = self.rank_of[c]
            if best is None or k < best[0]:
                best = (k, c)
        return best[1] if best else None

    def insert(self, row, combo):
        row = dict(row)
        combo = dict(combo)
        while True:
            lead = self._lead(row)
            if lead is None:
                return
            if lead not in self.pivots:
                if row[lead] < 0:
                    row = {c: -v for c, v in row.items()}
                    combo = {i: -v for i, v in combo.items()}
                self.pivots[lead] = (row, combo)
                return
            prow, pcombo = self.pivots[lead]
            a, b = prow[lead], row[lead]
            if b % a == 0:
                q = b // a
                row = _row_sub(row, prow, q)
                combo = _row_sub(combo, pcombo, q)
                continue
            # replace pivot by gcd combination (extended Euclid step)
            g, x, y = _xgcd(a, b)
            new_row = _row_comb(prow, x, row, y)
            new_combo = _row_comb(pcombo, x, combo, y)
            alt_row = _row_comb(prow, b // g, row, -(a // g))
            alt_combo = _row_comb(pcombo, b // g, combo, -(a // g))
            self.pivots[lead] = (new_row, new_combo)
            row, combo = alt_row, alt_combo

    def reduce(self, vector):
        """Reduce a target vector; returns (residue, combo) with the combo
        expressing the removed part as an instance combination."""
        res = dict(vector)
        combo = {}
        while True:
            lead = self._lead(res)
            if lead is None or lead not in self.pivots:
                return res, combo
            prow, pcombo = self.pivots[lead]
            a, b = prow[lead], res[lead]
            if b % a != 0:
                return res, combo
            q = b // a
            res = _row_sub(res, prow, q)
            combo = _row_add(combo, pcombo, q)


def _row_sub(row, other, q):
    out = dict(row)
    for c, v in other.items():
        w = out.get(c, 0) - q * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


def _row_add(row, other, q):
    out = dict(row)
    for c, v in other.items():
        w = out.get(c, 0) + q * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


def _row_comb(r1, c1, r2, c2):
    out = {}
    for c, v in r1.items():
        w = c1 * v
        if w:
            out[c] = w
    for c, v in r2.items():
        w = out.get(c, 0) + c2 * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class ConsequenceResult:
    is_consequence: bool
    certificate: tuple | None   # ((instance_index, coefficient), ...)
    residue: tuple              # leftover vector if not a consequence

    def describe(self, lattice):
        out = {"consequence": self.is_consequence}
        if self.certificate is not None:
            out["certificate"] = [
                {"coefficient": c, **lattice.instances[i].describe()}
                for i, c in self.certificate]
        if self.residue:
            out["residue"] = [[format_scalar(s), format_scalar(t), e]
                              for (s, t), e in self.residue]
        return out


def is_consequence(expr, lattice):
    """Decide lattice membership of the expression's exponent vector.

    Returns a ConsequenceResult whose certificate satisfies
    sum_i c_i * instance_i = expr (as exponent vectors).
    """
    columns = sorted({k for inst in lattice.instances for k, _c in inst.vector}
                     | {k for k, _e in expr.pairs}, key=_pair_key)
    ech = _Echelon(columns)
    for idx, inst in enumerate(lattice.instances):
        ech.insert(dict(inst.vector), {idx: 1})
    residue, combo = ech.reduce(expr.vector())
    if residue:
        return ConsequenceResult(False, None,
                                 tuple(sorted(residue.items(),
                                              key=lambda kv: _pair_key(kv[0]))))
    cert = tuple(sorted(combo.items()))
    return ConsequenceResult(True, cert, ())


def replay_certificate(result, lattice):
    """Re-apply the certificate; returns the combined exponent vector."""
    if not result.is_consequence:
        raise SymbolError("no certificate to replay")
    acc = {}
    for idx, coeff in result.certificate:
        for key, c in lattice.instances[idx].vector:
            w = acc.get(key, 0) + coeff * c
            if w:
                acc[key] = w
            else:
                acc.pop(key, None)
    return acc


def matrix_realization_check(expr, model=None):
    """Evaluate the expression under the matrix realization of the symbol.

    {s, t} maps to h(s) h(t) h(st)^{-1} at the first short root; the result
    is the identity for every pair, so this can only confirm soundness.
    Gaussian arguments use the complex model.
    """
    if model is None:
        gaussian = any(isinstance(x, GaussianRational)
                       for (s, t), _e in expr.pairs for x in (s, t))
        model = GroupModel("sl-c" if gaussian else "sp", 2)
    r12 = Root.of(model.n, 1, 2, 1, -1)

    def h_of(t):
        params = (t,) if model.is_sp else (t, 0)
        return gen_h(model, r12, params).matrix

    total = None
    for (s, t), e in expr.pairs:
        sym = mat_mul(mat_mul(h_of(s), h_of(t)),
                      _mat_pow(h_of(s * t), -1))
        m = _mat_pow(sym, e)
        total = m if total is None else mat_mul(total, m)
    if total is None:
        return True
    return total.is_identity()


def _mat_pow(m, e):
    from .matrices import mat_inv
    if e < 0:
        m = mat_inv(m)
        e = -e
    out = None
    for _ in range(e):
        out = m if out is None else mat_mul(out, m)
    if out is None:
        from .matrices import ExactMatrix
        return ExactMatrix.identity(m.size, m.mode)
    return out
