"""Configurations of reduced isotropic vectors: fingerprints, reduction, enumeration,
classification, stabilizers and incidence counts."""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .gaussian import (
    GVec3,
    GaussianInt,
    GaussianRat,
    UNITS,
    det3,
    gi,
    is_isotropic,
    is_reduced,
    norm_q,
    q_form,
    span_dimension,
    unit_normalize,
    vec,
)
from .group import FiniteGroup, GroupElement, Word, close_subgroup, eval_word, is_member, parse_word

__all__ = [
    "ConfigClass",
    "Configuration",
    "E1",
    "E3",
    "REPRESENTATIVES",
    "REPRESENTATIVE_WORDS",
    "STRONGLY_ADMISSIBLE",
    "order_two_census",
    "extension_closure",
    "isotropic_vector",
    "q_matrix",
    "is_c_bounded",
    "matching_order",
    "reduce_vector_pair",
    "word_to_p0",
    "express_as_word",
    "enumerate_extensions",
    "transformations",
    "classify",
    "stabilizer",
    "count_supersets",
    "count_subsets",
    "incidence_counts",
    "IncidenceCounts",
]


class ConfigClass(str, enum.Enum):
    J2_1 = "J2_1"
    J2_2 = "J2_2"
    J3_1 = "J3_1"
    J3_2 = "J3_2"
    J3_3 = "J3_3"
    J4_1 = "J4_1"
    J4_2 = "J4_2"
    J5 = "J5"
    J8 = "J8"
    NOT_BOUNDED = "NotBounded"
    UNRECOGNIZED = "Unrecognized"

    @property
    def pretty(self) -> str:
        sup = {"2": "²", "3": "³", "4": "⁴", "5": "⁵", "8": "⁸"}
        sub = {"1": "₁", "2": "₂", "3": "₃"}
        if not self.value.startswith("J"):
            return self.value
        body = self.value[1:]
        order, _, idx = body.partition("_")
        return "J" + sup[order] + (sub[idx] if idx else "")

    @property
    def order(self) -> int:
        return int(self.value[1:].partition("_")[0])


STRONGLY_ADMISSIBLE: Tuple[ConfigClass, ...] = (
    ConfigClass.J2_1, ConfigClass.J2_2, ConfigClass.J3_1, ConfigClass.J3_2, ConfigClass.J3_3,
    ConfigClass.J4_1, ConfigClass.J4_2, ConfigClass.J5, ConfigClass.J8,
)


def isotropic_vector(v) -> GVec3:
    """Validate and unit-normalize a reduced isotropic vector."""
    v = vec(v) if not (isinstance(v, tuple) and all(isinstance(x, GaussianInt) for x in v)) else v
    if not is_isotropic(v):
        raise ValueError(f"{v} is not isotropic")
    if not is_reduced(v):
        raise ValueError(f"{v} is not reduced")
    return unit_normalize(v)


@dataclass(frozen=True, eq=False)
class Configuration:
    """An ordered list of distinct isotropic lines; equality is as sets of lines."""

    vectors: Tuple[GVec3, ...]

    def __post_init__(self):
        vs = tuple(isotropic_vector(v) for v in self.vectors)
        if len(set(vs)) != len(vs):
            raise ValueError("configuration contains a repeated line")
        object.__setattr__(self, "vectors", vs)

    @classmethod
    def of(cls, *vectors) -> "Configuration":
        return cls(tuple(vectors))

    @property
    def key(self) -> FrozenSet[GVec3]:
        return frozenset(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __contains__(self, v):
        return unit_normalize(vec(v) if not isinstance(v[0], GaussianInt) else v) in self.key

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def apply(self, g: GroupElement) -> "Configuration":
        return Configuration(tuple(g.act(v) for v in self.vectors))

    def with_vector(self, v) -> "Configuration":
        return Configuration(self.vectors + (v,))

    def span_dimension(self) -> int:
        return span_dimension(self.vectors)

    def __repr__(self):
        return "Configuration(" + ", ".join(str(list(v)) for v in self.vectors) + ")"


E1 = vec(1, 0, 0)
E3 = vec(0, 0, 1)

_J = {
    ConfigClass.J2_1: [E1, E3],
    ConfigClass.J2_2: [E1, vec(1j, 1 + 1j, 1 + 1j)],
}
_J[ConfigClass.J3_1] = _J[ConfigClass.J2_1] + [vec(1, 0, 1)]
_J[ConfigClass.J3_2] = _J[ConfigClass.J2_1] + [vec(1j, 1 + 1j, 1)]
_J[ConfigClass.J3_3] = _J[ConfigClass.J2_1] + [vec(1 + 1j, 1 + 1j, 1)]
_J[ConfigClass.J4_1] = _J[ConfigClass.J3_1] + [vec(1j, 1 + 1j, 1)]
_J[ConfigClass.J4_2] = _J[ConfigClass.J3_3] + [vec(-1, -1 + 1j, 1 + 1j)]
_J[ConfigClass.J5] = _J[ConfigClass.J4_1] + [vec(1 + 1j, 1 + 1j, 1)]
_J[ConfigClass.J8] = [
    E1, E3, vec(-1, 1 + 1j, 1 + 1j), vec(-1 + 1j, 1 + 1j, 1), vec(1 + 1j, 1 - 1j, 1),
    vec(1j, 1 + 1j, 1 + 1j), vec(2j, 2, 1), vec(1j, 2, 2),
]

REPRESENTATIVES: Dict[ConfigClass, Configuration] = {k: Configuration(tuple(v)) for k, v in _J.items()}

# Each member of the representative set as a translate g.(1,0,0) of the standard line.
REPRESENTATIVE_WORDS: Dict[ConfigClass, Tuple[Word, ...]] = {
    tag: tuple(parse_word(w) for w in words)
    for tag, words in {
        ConfigClass.J2_1: ["1", "w"],
        ConfigClass.J2_2: ["1", "x"],
        ConfigClass.J3_1: ["1", "w", "t w"],
        ConfigClass.J3_2: ["1", "w", "s w"],
        ConfigClass.J3_3: ["1", "w", "t s w"],
        ConfigClass.J4_1: ["1", "w", "t w", "s w"],
        ConfigClass.J4_2: ["1", "w", "t s w", "w^-1 t sc w"],
        ConfigClass.J5: ["1", "w", "t w", "s w", "t s w"],
        ConfigClass.J8: ["1", "w", "w t s w", "t^-1 s w", "t sc w", "t w t s w", "t^2 sc s w", "e w x^4 w"],
    }.items()
}


def q_matrix(c: Configuration) -> Tuple[Tuple[int, ...], ...]:
    """Matrix of |Q(v_i, v_j)|^2 in the configuration's order."""
    return tuple(tuple(norm_q(u, v) for v in c.vectors) for u in c.vectors)


def matching_order(c: Configuration, target: Sequence[Sequence[int]]) -> Optional[List[int]]:
    """An ordering of the members of ``c`` whose Q-matrix equals ``target``, or None."""
    qm = q_matrix(c)
    n = len(target)
    if len(qm) != n:
        return None

    def extend(chosen: List[int]) -> Optional[List[int]]:
        k = len(chosen)
        if k == n:
            return chosen
        for j in range(n):
            if j not in chosen and all(qm[chosen[i]][j] == target[i][k] for i in range(k)):
                got = extend(chosen + [j])
                if got:
                    return got
        return None

    return extend([])


def is_c_bounded(c: Configuration, bound: int) -> bool:
    vs = c.vectors
    return all(norm_q(vs[i], vs[j]) <= bound for i in range(len(vs)) for j in range(i + 1, len(vs)))


# reduction relative to (1,0,0) ----------------------------------------------
def _ratio(a: GaussianInt, b: GaussianInt) -> GaussianRat:
    return GaussianRat.coerce(a) / b


def _round_half_down(x: Fraction) -> int:
    # nearest integer, ties toward -inf so the result lies in [x - 1/2, x + 1/2)
    return math.ceil(x - Fraction(1, 2))


def _apply(word: Word, v: GVec3) -> GVec3:
    return eval_word(word).act(v)


def reduce_vector_pair(v) -> Tuple[Word, GVec3]:
    """Move ``v`` by elements fixing the line (1,0,0) into normal form.

    Returns ``(word, v')`` with ``v' ~ eval(word) v`` where, writing ``v' = (n', p', q')``,
    ``p'/q'`` lies in the closed triangle with vertices 0, 1, i and
    ``n'/q' = d + c i`` with ``-1/2 < d <= 1/2``.
    """
    v = vec(v) if not isinstance(v[0], GaussianInt) else tuple(v)
    if v[2].is_zero():
        raise ValueError("vector is a multiple of (1,0,0); nothing to reduce")
    word = Word()

    # p/q into the square |Re| + |Im| <= 1 using sigma (p += (1+i)q) and sigma-check (p += (1-i)q)
    x = _ratio(v[1], v[2])
    if abs(x.re) + abs(x.im) > 1:
        y = x / GaussianInt(1, 1)
        mr, mi = _round_half_down(y.re), _round_half_down(y.im)
        # (1+i)(mr + i mi) = mr (1+i) - mi (1-i)
        step = Word((("s", -mr), ("sc", mi)))
        v = _apply(step, v)
        word = step * word
        x = _ratio(v[1], v[2])
    # rotate p/q by powers of i (epsilon multiplies p/q by i) into the triangle 0, 1, i
    for k in range(4):
        if x.re >= 0 and x.im >= 0 and x.re + x.im <= 1:
            break
        v = _apply(Word((("e", 1),)), v)
        word = Word((("e", 1),)) * word
        x = _ratio(v[1], v[2])
    else:
        raise AssertionError("rotation failed to reach the triangle")
    # n/q real part into (-1/2, 1/2] using tau (n += q)
    d = _ratio(v[0], v[2]).re
    m = math.floor(Fraction(1, 2) - d)
    if m:
        step = Word((("t", m),))
        v = _apply(step, v)
        word = step * word
    return word, unit_normalize(v)


def word_to_p0(v) -> Word:
    """A word ``W`` with ``eval(W) v`` a unit multiple of (1,0,0).

    Each round reduces relative to (1,0,0) and then applies ``w``; the reduced form has
    ``|n'|^2 <= |q'|^2 / 2``, so ``|q|`` strictly decreases.
    """
    v = unit_normalize(vec(v) if not isinstance(v[0], GaussianInt) else tuple(v))
    word = Word()
    while not v[2].is_zero():
        step, v = reduce_vector_pair(v)
        word = Word((("w", 1),)) * step * word
        v = unit_normalize(_apply(Word((("w", 1),)), v))
    return word


def express_as_word(g: GroupElement) -> Word:
    """Write an element of SU(2,1; Z[i]) as a word in the named generators."""
    w1 = word_to_p0(g.act(E1))
    h = eval_word(w1) * g
    u = h.act(E3)
    w2, red = reduce_vector_pair(u) if not u[2].is_zero() else (Word(), unit_normalize(u))
    if red != E3:
        raise ArithmeticError("element does not map (0,0,1) to a line at distance 1 from (1,0,0)")
    k = eval_word(w2) * h
    eps = eval_word("e")
    for j in range(4):
        if k == eps ** j:
            result = (w2 * w1).inverse() * Word((("e", j),))
            assert eval_word(result) == g
            return result
    raise ArithmeticError("element is not in the group generated by the named generators")


# enumeration ------------------------------------------------------------------
def _gaussians_in_disc(radius_sq: float, center: complex = 0j) -> List[GaussianInt]:
    r = math.sqrt(max(radius_sq, 0.0)) + 1e-9
    out = []
    for a in range(math.floor(center.real - r), math.ceil(center.real + r) + 1):
        for b in range(math.floor(center.imag - r), math.ceil(center.imag + r) + 1):
            if (a - center.real) ** 2 + (b - center.imag) ** 2 <= radius_sq + 1e-9:
                out.append(GaussianInt(a, b))
    return out


def enumerate_extensions(c: Configuration, bound: int) -> List[GVec3]:
    """All reduced isotropic lines ``v`` outside ``c`` such that ``c + {v}`` is ``bound``-bounded.

    ``c`` must contain (1,0,0) and at least one other line ``u = (n_u, p_u, q_u)``.  The search
    box follows from the form: ``|q|^2 = |Q(e1, v)|^2 <= bound``; ``b = Q(u, v)`` ranges over
    Gaussian integers with ``|b|^2 <= bound`` and then fixes ``n`` linearly from ``(p, q, b)``;
    isotropy ``|p|^2 = 2 Im(n conj q) <= 2|n||q|`` together with that linear relation
    bounds ``|p|``.
    """
    if E1 not in c.key:
        raise ValueError("configuration must contain (1,0,0)")
    others = [u for u in c.vectors if u != E1]
    if not others:
        raise ValueError("need at least one line besides (1,0,0) to bound the search")
    u = min(others, key=lambda t: (t[0].norm() + t[1].norm(), -t[2].norm()))
    nu, pu, qu = u
    sqrt_b = math.sqrt(bound)
    abs_nu, abs_pu, abs_qu = math.sqrt(nu.norm()), math.sqrt(pu.norm()), math.sqrt(qu.norm())
    i = GaussianInt(0, 1)
    denom = i * qu.conj()
    bs = [b for b in _gaussians_in_disc(bound) if not b.is_zero()]
    found = set()
    for q in _gaussians_in_disc(bound):
        if q.is_zero():
            continue
        aq = math.sqrt(q.norm())
        alpha = 2 * aq * abs_pu / abs_qu
        beta = 2 * aq * (abs_nu * aq + sqrt_b) / abs_qu
        pmax = (alpha + math.sqrt(alpha * alpha + 4 * beta)) / 2
        for p in _gaussians_in_disc(pmax * pmax + 1e-6):
            base = nu.conj() * i * q - pu.conj() * p
            for b in bs:
                num = base - b
                n, r = divmod(num, denom)
                if not r.is_zero():
                    continue
                v = (n, p, q)
                if not is_isotropic(v) or not is_reduced(v):
                    continue
                if any(norm_q(w, v) > bound for w in c.vectors):
                    continue
                v = unit_normalize(v)
                if v not in c.key:
                    found.add(v)
    return sorted(found, key=lambda t: tuple((x.norm(), x.re, x.im) for x in reversed(t)))


# transformations between configurations ---------------------------------------
def _as_rat(v):
    return [GaussianRat.coerce(x) for x in v]


def _inverse3(cols: Sequence[Sequence[GaussianRat]]):
    """Inverse of the matrix whose columns are ``cols`` (exact over Q(i))."""
    m = [[cols[c][r] for c in range(3)] for r in range(3)]
    d = det3(m)
    if d.is_zero():
        raise ZeroDivisionError("singular")
    adj = [[None] * 3 for _ in range(3)]
    for r in range(3):
        for c in range(3):
            rows = [x for x in range(3) if x != c]
            cs = [y for y in range(3) if y != r]
            minor = m[rows[0]][cs[0]] * m[rows[1]][cs[1]] - m[rows[0]][cs[1]] * m[rows[1]][cs[0]]
            adj[r][c] = minor if (r + c) % 2 == 0 else -minor
    dinv = GaussianRat.coerce(1) / d
    return [[adj[r][c] * dinv for c in range(3)] for r in range(3)]


def _matmul_rat(a, b):
    return [[a[r][0] * b[0][c] + a[r][1] * b[1][c] + a[r][2] * b[2][c] for c in range(3)] for r in range(3)]


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _orth_complement(a, b):
    # rows a^* J and b^* J; their (bilinear) cross product k satisfies Q(a, k) = Q(b, k) = 0
    ra = [-a[2].conj() * GaussianRat(0, 1), -a[1].conj(), a[0].conj() * GaussianRat(0, 1)]
    rb = [-b[2].conj() * GaussianRat(0, 1), -b[1].conj(), b[0].conj() * GaussianRat(0, 1)]
    return _cross(ra, rb)


def _independent_triple(vs) -> Optional[Tuple[int, int, int]]:
    for t in itertools.combinations(range(len(vs)), 3):
        if not det3([vs[t[0]], vs[t[1]], vs[t[2]]]).is_zero():
            return t
    return None


def _pq_permutations(qs, qd):
    n = len(qs)
    perm = [None] * n
    used = [False] * n

    def rec(i):
        if i == n:
            yield tuple(perm)
            return
        for j in range(n):
            if used[j]:
                continue
            if any(qs[i][k] != qd[j][perm[k]] for k in range(i)):
                continue
            perm[i] = j
            used[j] = True
            yield from rec(i + 1)
            used[j] = False

    yield from rec(0)


def _to_group_element(m) -> Optional[GroupElement]:
    if not all(x.is_integral() for row in m for x in row):
        return None
    g = GroupElement(tuple(tuple(x.to_int() for x in row) for row in m))
    return g if is_member(g.m) else None


def transformations(src: Configuration, dst: Configuration, first: bool = False) -> List[GroupElement]:
    """All group elements mapping ``src`` onto ``dst`` as sets of lines.

    Candidate maps come from bijections preserving |Q|^2 and a choice of unit for the
    first vector (the remaining units are forced by the exact Q values).  On a spanning
    triple the map is solved linearly; for configurations spanning a plane the third
    column is the Q-orthogonal complement, scaled so that the determinant is 1.
    """
    n = len(src)
    if n != len(dst) or n < 2:
        if n < 2:
            raise ValueError("need at least two lines")
        return []
    sv, dv = src.vectors, dst.vectors
    qs = [[q_form(a, b) for b in sv] for a in sv]
    qd = [[q_form(a, b) for b in dv] for a in dv]
    ns = [[x.norm() for x in row] for row in qs]
    nd = [[x.norm() for x in row] for row in qd]
    dim = span_dimension(sv)
    if dim != span_dimension(dv):
        return []
    triple = _independent_triple(sv) if dim == 3 else None
    if dim == 2:
        i1, i2 = 0, 1
        k_src = _orth_complement(_as_rat(sv[i1]), _as_rat(sv[i2]))
    results = []
    seen = set()
    dst_key = dst.key
    for perm in _pq_permutations(ns, nd):
        for u0 in UNITS:
            units = [GaussianRat.coerce(u0)]
            ok = True
            for j in range(1, n):
                # Q(g v_0, g v_j) = conj(u_0) u_j Q(w_0, w_j) must equal Q(v_0, v_j)
                uj = GaussianRat.coerce(u0) * GaussianRat.coerce(qs[0][j]) / qd[perm[0]][perm[j]]
                if uj.norm() != 1 or not uj.is_integral():
                    ok = False
                    break
                units.append(uj)
            if not ok:
                continue
            if any(
                units[a].conj() * units[b] * qd[perm[a]][perm[b]] != qs[a][b]
                for a in range(n) for b in range(a + 1, n)
            ):
                continue
            images = [[units[j] * GaussianRat.coerce(x) for x in dv[perm[j]]] for j in range(n)]
            if dim == 3:
                a, b, c = triple
                src_cols = [_as_rat(sv[a]), _as_rat(sv[b]), _as_rat(sv[c])]
                dst_cols = [images[a], images[b], images[c]]
            else:
                k_dst = _orth_complement(_as_rat(dv[perm[i1]]), _as_rat(dv[perm[i2]]))
                d_src = det3([[_as_rat(sv[i1])[r], _as_rat(sv[i2])[r], k_src[r]] for r in range(3)])
                d_dst = det3([[images[i1][r], images[i2][r], k_dst[r]] for r in range(3)])
                lam = d_src / d_dst
                src_cols = [_as_rat(sv[i1]), _as_rat(sv[i2]), k_src]
                dst_cols = [images[i1], images[i2], [lam * x for x in k_dst]]
            inv = _inverse3(src_cols)
            w = [[dst_cols[c][r] for c in range(3)] for r in range(3)]
            g = _to_group_element(_matmul_rat(w, inv))
            if g is None or g in seen:
                continue
            if frozenset(unit_normalize(g.act(v)) for v in sv) != dst_key:
                continue
            seen.add(g)
            results.append(g)
            if first:
                return results
    return results


def stabilizer(c: Configuration) -> FiniteGroup:
    """The setwise stabilizer of ``c`` in SU(2,1; Z[i])."""
    elems = transformations(c, c)
    group = close_subgroup(elems)
    if group.order != len(elems):
        raise ArithmeticError("stabilizer candidates are not closed under multiplication")
    return FiniteGroup(frozenset(elems), tuple(elems))


# classification -----------------------------------------------------------------
def _fingerprint(c: Configuration):
    qm = q_matrix(c)
    entries = sorted(qm[i][j] for i in range(len(qm)) for j in range(i + 1, len(qm)))
    return len(c), c.span_dimension(), tuple(entries)


_REP_PRINTS = {tag: _fingerprint(rep) for tag, rep in REPRESENTATIVES.items()}


@dataclass(frozen=True)
class Classification:
    tag: ConfigClass
    conjugator: Optional[GroupElement]

    def __iter__(self):
        return iter((self.tag, self.conjugator))


def classify(c: Configuration) -> Classification:
    """Identify the representative set conjugate to ``c`` and a conjugator ``g`` with ``g.c = rep``.

    Candidates are filtered by the |Q|^2 multiset and span dimension, then confirmed by an
    explicit transformation search.  A bounded configuration matching nothing is reported
    as ``Unrecognized``; it is never guessed.
    """
    if len(c) < 2:
        raise ValueError("classification needs at least two lines")
    if is_c_bounded(c, 2):
        pool = [t for t in STRONGLY_ADMISSIBLE if t is not ConfigClass.J8]
    elif is_c_bounded(c, 4) and len(c) == 8:
        pool = [ConfigClass.J8]
    else:
        return Classification(ConfigClass.NOT_BOUNDED, None)
    fp = _fingerprint(c)
    for tag in pool:
        if _REP_PRINTS[tag] != fp:
            continue
        found = transformations(c, REPRESENTATIVES[tag], first=True)
        if found:
            return Classification(tag, found[0])
    return Classification(ConfigClass.UNRECOGNIZED, None)


# incidences ---------------------------------------------------------------------
def _bound_for(tag: ConfigClass) -> int:
    return 4 if tag is ConfigClass.J8 else 2


def _cliques(cands: List[GVec3], size: int, bound: int):
    compat = {
        (a, b): norm_q(cands[a], cands[b]) <= bound
        for a in range(len(cands)) for b in range(a + 1, len(cands))
    }

    def rec(start, chosen):
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for k in range(start, len(cands)):
            if all(compat[(j, k)] for j in chosen):
                chosen.append(k)
                yield from rec(k + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def supersets_of_type(base: Configuration, tag: ConfigClass) -> List[Configuration]:
    """All configurations of type ``tag`` that contain ``base`` (which must contain (1,0,0))."""
    extra = tag.order - len(base)
    if extra <= 0:
        return []
    bound = _bound_for(tag)
    cands = enumerate_extensions(base, bound)
    target = _REP_PRINTS[tag]
    out = []
    for clique in _cliques(cands, extra, bound):
        c = Configuration(base.vectors + tuple(cands[k] for k in clique))
        if _fingerprint(c) != target:
            continue
        if classify(c).tag is tag:
            out.append(c)
    return out


def count_supersets(base: Configuration, tag: ConfigClass) -> int:
    return len(supersets_of_type(base, tag))


def count_subsets(c: Configuration, tag: ConfigClass) -> int:
    """Number of subsets of ``c`` whose type is ``tag``."""
    k = tag.order
    if k > len(c):
        return 0
    total = 0
    target = _REP_PRINTS[tag]
    for idx in itertools.combinations(range(len(c)), k):
        sub = Configuration(tuple(c.vectors[i] for i in idx))
        if _fingerprint(sub) == target and classify(sub).tag is tag:
            total += 1
    return total


@dataclass(frozen=True)
class IncidenceCounts:
    below: int  # faces: supersets of the column representative of the row type
    above: int  # cofaces: subsets of the column representative of the row type


def incidence_counts(row: ConfigClass, col: ConfigClass) -> IncidenceCounts:
    """Both incidence counts for a (row, column) pair of strongly admissible types.

    ``below`` is the number of row-type cells in the boundary of the column cell
    (supersets of the column representative); ``above`` is the number of row-type cells
    whose boundary contains the column cell (subsets of the column representative).
    """
    rep = REPRESENTATIVES[col]
    return IncidenceCounts(below=count_supersets(rep, row), above=count_subsets(rep, row))


# completeness of the classification -------------------------------------------------
def order_two_census(radius: int = 3) -> Dict[ConfigClass, int]:
    """Classify every pair {(1,0,0), v} with |Q|^2 <= 2 for v in a box of the given radius.

    The stabilizer of (1,0,0) moves n and p freely enough that a small box already meets
    every orbit.
    """
    census: Dict[ConfigClass, int] = {}
    box = [GaussianInt(a, b) for a in range(-radius, radius + 1) for b in range(-radius, radius + 1)]
    for q in _gaussians_in_disc(2):
        if q.is_zero():
            continue
        for p in box:
            for n in box:
                v = (n, p, q)
                if not is_isotropic(v) or not is_reduced(v):
                    continue
                tag = classify(Configuration((E1, v))).tag
                census[tag] = census.get(tag, 0) + 1
    return census


def extension_closure() -> Dict[ConfigClass, Dict[ConfigClass, int]]:
    """For each class, classify every one-line extension that stays within its bound.

    The eight 2-bounded classes are closed when every extension lands among them;
    J^8 is maximal when it has no 4-bounded extension at all.
    """
    out: Dict[ConfigClass, Dict[ConfigClass, int]] = {}
    for tag, rep in REPRESENTATIVES.items():
        seen: Dict[ConfigClass, int] = {}
        for v in enumerate_extensions(rep, _bound_for(tag)):
            t = classify(rep.with_vector(v)).tag
            seen[t] = seen.get(t, 0) + 1
        out[tag] = seen
    return out
