"""Chevalley-style generators for Sp(2n,R) and SL(2n,K), K = R or C.

The symplectic family takes one parameter per root; the special-linear
families take two parameters on the short roots ±L_i±L_j (whose restricted
root spaces are 2-dimensional, components delta = 1, 2) and one on ±2L_i.

Root-space entry tables (1-based matrix positions, e_{k,l}):

  sp:  f_{L_i+L_j}  = e_{i,j+n} + e_{j,i+n}      (i < j)
       f_{L_i-L_j}  = e_{i,j}   - e_{j+n,i+n}    (i != j)
       f_{-L_i-L_j} = e_{j+n,i} + e_{i+n,j}      (i < j)
       f_{2L_i}     = e_{i,i+n}
       f_{-2L_i}    = e_{i+n,i}
  sl:  component 1 / component 2 of the same positions, with the
       L_i-L_j second component carrying + sign: t1*e_{i,j} + t2*e_{j+n,i+n}.

The -2L_i space sits at the transpose position e_{i+n,i} of the 2L_i space;
this is forced by Lie-algebra membership (the lower-left block of sp(2n) is
symmetric) and by the -2L_i weight under the torus.

Every f here squares to zero, so x_r = exp f_r = I + f_r exactly; w and h
are built from the standard words w_r(t) = x_r(t) x_{-r}(-1/t) x_r(t) and
h_r(t) = w_r(t) w_r(ref)^{-1} with ref the all-ones parameter of the same
zero pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .matrices import ExactMatrix, exp_nilpotent, mat_inv, mat_mul
from .roots import Root
from .scalars import (RATIONAL, coerce, format_scalar, is_unit, join_mode,
                      mode_of, parse_scalar, scalar_one, scalar_zero)

FAMILIES = ("sp", "sl-r", "sl-c")


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class GroupModel:
    """Group family and rank; matrices are 2n x 2n."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GeneratorError("unknown family %r" % (self.family,))
        if self.n < 2:
            raise GeneratorError("rank must be at least 2, got %d" % self.n)

    @property
    def size(self):
        return 2 * self.n

    @property
    def is_sp(self):
        return self.family == "sp"

    def param_arity(self, root):
        """Number of scalar parameters an x-letter on this root takes."""
        if self.is_sp or root.is_long:
            return 1
        return 2

    def __str__(self):
        return "%s n=%d" % (self.family, self.n)


def _canonical_indices(root):
    """(kind, i, j) with kind in {'diff', 'sum', 'negsum', 'long', 'neglong'}.

    'diff' means L_i - L_j (any order of magnitude, i != j); the paired-sign
    kinds use i < j.
    """
    c = root.coeffs
    idx = root.support
    if root.is_long:
        i = idx[0]
        return ("long", i, None) if c[i - 1] > 0 else ("neglong", i, None)
    i, j = idx
    si, sj = c[i - 1], c[j - 1]
    if si == 1 and sj == -1:
        return ("diff", i, j)
    if si == -1 and sj == 1:
        return ("diff", j, i)
    if si == 1 and sj == 1:
        return ("sum", i, j)
    return ("negsum", i, j)


@lru_cache(maxsize=None)
def root_entry_positions(model, root):
    """Entry positions of the root space, with signs.

    Returns a list of (row, col, sign) triples; for sp the signs scale the
    single parameter, for sl each triple is one restricted component (the
    sl signs are all +1).
    """
    n = model.n
    kind, i, j = _canonical_indices(root)
    if kind == "long":
        return [(i, i + n, 1)]
    if kind == "neglong":
        return [(i + n, i, 1)]
    if kind == "diff":
        sign2 = -1 if model.is_sp else 1
        return [(i, j, 1), (j + n, i + n, sign2)]
    if kind == "sum":
        return [(i, j + n, 1), (j, i + n, 1)]
    return [(j + n, i, 1), (i + n, j, 1)]


def _coerce_params(model, root, params, mode=None):
    if not isinstance(params, (tuple, list)):
        params = (params,)
    arity = model.param_arity(root)
    if len(params) != arity:
        raise GeneratorError("root %s takes %d parameter(s) in %s, got %d"
                             % (root, arity, model.family, len(params)))
    params = tuple(Fraction(p) if isinstance(p, int) else p for p in params)
    if mode is None:
        mode = join_mode(mode_of(p) for p in params)
    if model.family == "sp" and mode == "gaussian":
        raise GeneratorError("sp parameters must be real (rational) scalars")
    return tuple(coerce(p, mode) for p in params), mode


def gen_f(model, root, params):
    """The root-space element f_r(params); nilpotent, in the Lie algebra."""
    if root.n != model.n:
        raise GeneratorError("root rank %d does not match model rank %d"
                             % (root.n, model.n))
    params, mode = _coerce_params(model, root, params)
    positions = root_entry_positions(model, root)
    entries = {}
    if len(params) == 1:
        t = params[0]
        for (r, c, s) in positions:
            entries[(r, c)] = t if s == 1 else -t
    else:
        if root.restricted_tag is not None:
            raise GeneratorError("tagged roots take a single component parameter")
        for p, (r, c, _s) in zip(params, positions):
            entries[(r, c)] = p
    size = model.size
    rows = [[scalar_zero(mode) for _ in range(size)] for _ in range(size)]
    for (r, c), v in entries.items():
        rows[r - 1][c - 1] = v
    return ExactMatrix(rows, mode)


def gen_f_component(model, root, delta, param):
    """Single restricted component f^delta_r(t) for sl models."""
    if model.is_sp:
        raise GeneratorError("sp roots have no restricted components")
    if root.is_long:
        if delta != 1:
            raise GeneratorError("long roots have a single component")
        return gen_f(model, root, (param,))
    pair = [scalar_zero(RATIONAL)] * 2
    pair[delta - 1] = param
    return gen_f(model, root.untagged(), tuple(pair))


@dataclass(frozen=True)
class GroupElement:
    """Group matrix tagged with its model."""

    matrix: ExactMatrix
    model: GroupModel


@dataclass(frozen=True)
class MonomialForm:
    """Permutation-times-diagonal decomposition p(pi) * diag(d).

    perm[j-1] = pi(j), 1-based; the matrix has column j equal to
    d_j * e_{pi(j)} ("the i,j entry of p(pi) is 1 if i = pi(j)").
    """

    perm: tuple
    diag: tuple

    def to_matrix(self, mode=None):
        size = len(self.perm)
        if mode is None:
            mode = join_mode(mode_of(d) for d in self.diag)
        rows = [[scalar_zero(mode) for _ in range(size)] for _ in range(size)]
        for j, (pj, dj) in enumerate(zip(self.perm, self.diag), start=1):
            rows[pj - 1][j - 1] = coerce(dj, mode)
        return ExactMatrix(rows, mode)

    @staticmethod
    def from_matrix(m):
        size = m.size
        perm = []
        diag = []
        seen = set()
        for j in range(size):
            col = [(i, m.rows[i][j]) for i in range(size) if m.rows[i][j]]
            if len(col) != 1:
                raise GeneratorError("matrix is not monomial at column %d" % (j + 1))
            i, v = col[0]
            if i in seen:
                raise GeneratorError("matrix is not monomial (row %d repeats)" % (i + 1))
            seen.add(i)
            perm.append(i + 1)
            diag.append(v)
        return MonomialForm(tuple(perm), tuple(diag))


# ---------------------------------------------------------------------------
# Letters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorLetter:
    """One generator occurrence: kind x/w/h, root, parameter tuple.

    A restricted tag on the root of an x-letter selects one component of a
    2-dimensional sl root space; the letter then takes a single parameter.
    """

    model: GroupModel
    kind: str
    root: Root
    params: tuple

    def __post_init__(self):
        if self.kind not in ("x", "w", "h"):
            raise GeneratorError("letter kind must be x, w or h")
        params = self.params if isinstance(self.params, tuple) else tuple(self.params)
        params = tuple(Fraction(p) if isinstance(p, int) else p for p in params)
        if self.root.restricted_tag is not None:
            if self.kind != "x" or self.model.is_sp:
                raise GeneratorError("restricted tags only on sl x-letters")
            if len(params) != 1:
                raise GeneratorError("component letters take one parameter")
        else:
            arity = self.model.param_arity(self.root)
            if len(params) != arity:
                raise GeneratorError("%s-letter on %s takes %d parameter(s)"
                                     % (self.kind, self.root, arity))
        if self.kind in ("w", "h"):
            if not any(params):
                raise GeneratorError("w/h letters need a nonzero parameter")
            if not all(is_unit(p) or not p for p in params):
                raise GeneratorError("w/h parameters must be units (or 0 slots)")
        mode = join_mode(mode_of(p) for p in params) if params else RATIONAL
        if self.model.is_sp and mode == "gaussian":
            raise GeneratorError("sp parameters must be real scalars")
        object.__setattr__(self, "params", params)

    def matrix(self):
        return _letter_matrix(self.model, self.kind, self.root, self.params)

    def inverse(self):
        if self.kind in ("x", "w"):
            return GeneratorLetter(self.model, self.kind, self.root,
                                   tuple(-p for p in self.params))
        inv = tuple((1 / p) if p else p for p in self.params)
        return GeneratorLetter(self.model, self.kind, self.root, inv)

    def is_inverse_of(self, other):
        return (self.model == other.model and self.kind == other.kind
                and self.root == other.root
                and other.inverse().params == self.params)

    def format(self):
        return "%s %s (%s)" % (self.kind, self.root.format(),
                               ", ".join(format_scalar(p) for p in self.params))

    @staticmethod
    def parse(text, model):
        bits = text.strip().split(None, 1)
        if len(bits) != 2:
            raise GeneratorError("bad letter %r" % text)
        kind, rest = bits
        if "(" not in rest or not rest.rstrip().endswith(")"):
            raise GeneratorError("bad letter %r" % text)
        root_txt, params_txt = rest.split("(", 1)
        params_txt = params_txt.rstrip().rstrip(")")
        root = Root.parse(root_txt)
        params = tuple(parse_scalar(p) for p in params_txt.split(",") if p.strip())
        return GeneratorLetter(model, kind, root, params)

    def __str__(self):
        return self.format()


@lru_cache(maxsize=65536)
def _letter_matrix(model, kind, root, params):
    if kind == "x":
        if root.restricted_tag is not None:
            f = gen_f_component(model, root.untagged(), root.restricted_tag,
                                params[0])
        else:
            f = gen_f(model, root, params)
        return exp_nilpotent(f)
    if kind == "w":
        return _w_word_matrix(model, root, params)
    # h = w(params) * w(reference)^{-1}; the reference shares the zero pattern
    ref = tuple(scalar_one(mode_of(p)) if p else p for p in params)
    w_t = _w_word_matrix(model, root, params)
    w_ref = _w_word_matrix(model, root, ref)
    return mat_mul(w_t, mat_inv(w_ref))


def _w_word_matrix(model, root, params):
    neg_inv = tuple((-(1 / p)) if p else p for p in params)
    x_t = _letter_matrix(model, "x", root, params)
    x_neg = _letter_matrix(model, "x", -root, neg_inv)
    return mat_mul(mat_mul(x_t, x_neg), x_t)


def gen_x(model, root, params):
    """Unipotent generator x_r(params) = exp f_r(params)."""
    letter = GeneratorLetter(model, "x", root, _as_tuple(params))
    return GroupElement(letter.matrix(), model)


def gen_w(model, root, params):
    """Weyl representative w_r(params) with its monomial decomposition."""
    letter = GeneratorLetter(model, "w", root, _as_tuple(params))
    m = letter.matrix()
    form = MonomialForm.from_matrix(m)
    if form.to_matrix(m.mode) != m:
        raise GeneratorError("monomial decomposition failed to round-trip")
    return GroupElement(m, model), form


def gen_h(model, root, params):
    """Torus element h_r(params) = w_r(params) w_r(reference)^{-1}."""
    letter = GeneratorLetter(model, "h", root, _as_tuple(params))
    m = letter.matrix()
    if not m.is_diagonal():
        raise GeneratorError("h element is not diagonal")
    return GroupElement(m, model)


def gen_h_literal(model, root, params):
    """h via the literal two-factor displays: w(params) * w(-reference).

    Provided for comparison with gen_h; the two coincide exactly because
    w_r(-ref) = w_r(ref)^{-1}.
    """
    params = _as_tuple(params)
    params = tuple(Fraction(p) if isinstance(p, int) else p for p in params)
    neg_ref = tuple(-scalar_one(mode_of(p)) if p else p for p in params)
    w_t = _w_word_matrix(model, root, params)
    w_ref = _w_word_matrix(model, root, neg_ref)
    return GroupElement(mat_mul(w_t, w_ref), model)


def _as_tuple(params):
    if isinstance(params, (tuple, list)):
        return tuple(params)
    return (params,)


def h_word_letters(model, root, params):
    """The defining word of h_r(params) as six x-letters."""
    params = tuple(Fraction(p) if isinstance(p, int) else p
                   for p in _as_tuple(params))
    ref = tuple(scalar_one(mode_of(p)) if p else p for p in params)
    return w_word_letters(model, root, params) + \
        w_word_letters(model, root, tuple(-p for p in ref))


def w_word_letters(model, root, params):
    """The defining word of w_r(params) as three x-letters."""
    params = tuple(Fraction(p) if isinstance(p, int) else p
                   for p in _as_tuple(params))
    neg_inv = tuple((-(1 / p)) if p else p for p in params)
    x1 = GeneratorLetter(model, "x", root, params)
    x2 = GeneratorLetter(model, "x", -root, neg_inv)
    return [x1, x2, x1]


# ---------------------------------------------------------------------------
# Torus elements and conjugation characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorusElement:
    """diag(d_1..d_n, 1/d_1..1/d_n) for units d_i; the multiplicative
    stand-in for the exponentiated Cartan coordinates."""

    d: tuple

    def __post_init__(self):
        d = tuple(Fraction(x) if isinstance(x, int) else x for x in self.d)
        if not all(is_unit(x) for x in d):
            raise GeneratorError("torus entries must be units")
        object.__setattr__(self, "d", d)

    @property
    def n(self):
        return len(self.d)

    def to_matrix(self, mode=None):
        if mode is None:
            mode = join_mode(mode_of(x) for x in self.d)
        size = 2 * self.n
        rows = [[scalar_zero(mode) for _ in range(size)] for _ in range(size)]
        for i, di in enumerate(self.d):
            rows[i][i] = coerce(di, mode)
            rows[i + self.n][i + self.n] = coerce(1 / di, mode)
        return ExactMatrix(rows, mode)

    def character(self, root):
        """chi_r(D) = prod d_i^{c_i}, the multiplicative weight of the root."""
        out = None
        for di, c in zip(self.d, root.coeffs):
            if c:
                v = di ** c
                out = v if out is None else out * v
        return out


def torus_conjugate(torus, letter):
    """D x_r(a) D^{-1} = x_r(chi_r(D) a), returned as the rescaled letter."""
    if letter.kind != "x":
        raise GeneratorError("torus conjugation is defined on x-letters")
    chi = torus.character(letter.root)
    return GeneratorLetter(letter.model, "x", letter.root,
                           tuple(chi * p for p in letter.params))


# ---------------------------------------------------------------------------
# Matrix-position <-> restricted-component lookup (sl models)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def position_component_table(n):
    """Map (row, col), row != col, to (root, delta) for rank n (size 2n)."""
    table = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                table[(i, j)] = (Root.of(n, i, j, 1, -1), 1)
                table[(i + n, j + n)] = (Root.of(n, j, i, 1, -1), 2)
            if i < j:
                table[(i, j + n)] = (Root.of(n, i, j, 1, 1), 1)
                table[(j, i + n)] = (Root.of(n, i, j, 1, 1), 2)
                table[(j + n, i)] = (Root.of(n, i, j, -1, -1), 1)
                table[(i + n, j)] = (Root.of(n, i, j, -1, -1), 2)
        table[(i, i + n)] = (Root.of(n, i), 1)
        table[(i + n, i)] = (Root.of(n, i, si=-1), 1)
    return table


def recognize_component_letter(model, m):
    """Identify I + v*e_{k,l} as a tagged component x-letter; None if not."""
    size = m.size
    hits = []
    one = scalar_one(m.mode)
    for i in range(size):
        for j in m._support[i]:
            if i == j:
                if m.rows[i][j] != one:
                    return None
            else:
                hits.append((i + 1, j + 1, m.rows[i][j]))
    for i in range(size):
        if not m.rows[i][i]:
            return None
    if len(hits) != 1:
        return None
    k, l, v = hits[0]
    root, delta = position_component_table(model.n)[(k, l)]
    if model.is_sp:
        # sp short-root letters occupy two positions; only long roots match
        if not root.is_long:
            return None
        tagged = root
    elif root.is_long:
        tagged = root
    else:
        tagged = Root(root.coeffs, delta)
    return GeneratorLetter(model, "x", tagged, (v,))
