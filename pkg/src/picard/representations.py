"""Coefficient modules for the Picard modular group.

A representation stores exact matrices for the named generators.  In ``GaussianField``
mode the module is a Q(i)-vector space and every matrix is kept in realified form
(each entry a+bi becomes the block [[a, -b], [b, a]]), so all exact work happens over Q;
Q(i)-dimensions are half the Q-dimensions.  ``IntegerLattice`` mode holds integer
matrices acting on Z^dim.
"""
from __future__ import annotations

import enum
import random
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import flint

from .gaussian import GaussianInt, GaussianRat
from .group import FiniteGroup, GroupElement, NotFiniteError, Word, close_subgroup, eval_word, parse_word
from . import linalg

__all__ = [
    "Mode",
    "Representation",
    "SubspaceBasis",
    "realify",
    "trivial_rep",
    "standard_rep",
    "symn_rep",
    "symn_matrix",
    "monomials",
    "permutation_rep",
    "direct_sum",
    "tensor_product",
    "conjugate_rep",
    "dual_rep",
    "change_basis",
    "random_representation",
    "fixed_subspace",
    "eigenspace",
    "RELATION_WORDS",
    "GLOBAL_GENERATORS",
    "invariants",
]

GLOBAL_GENERATORS: Tuple[Word, ...] = tuple(parse_word(k) for k in ("e", "w", "t", "s"))

BASE_LETTERS = ("e", "w", "s", "sc", "t")
_XI = parse_word("t w t s w e^3")
RELATION_WORDS: Tuple[Word, ...] = (
    parse_word("e^4"),
    parse_word("w^2 e^-2"),
    parse_word("x^2 s t^-1 e^-1"),
)


class Mode(str, enum.Enum):
    FIELD = "GaussianField"
    LATTICE = "IntegerLattice"


def realify(m: Sequence[Sequence]) -> flint.fmpq_mat:
    """Realified matrix of a Gaussian (integer or rational) matrix."""
    r = len(m)
    c = len(m[0]) if r else 0
    out = flint.fmpq_mat(2 * r, 2 * c)
    for i in range(r):
        for j in range(c):
            z = m[i][j]
            a, b = _parts(z)
            if a:
                out[2 * i, 2 * j] = a
                out[2 * i + 1, 2 * j + 1] = a
            if b:
                out[2 * i, 2 * j + 1] = -b
                out[2 * i + 1, 2 * j] = b
    return out


def _parts(z):
    if isinstance(z, (GaussianInt, GaussianRat)):
        return _q(z.re), _q(z.im)
    if isinstance(z, complex):
        return int(z.real), int(z.imag)
    return _q(z), 0


def _q(x):
    # flint does not take Fraction directly
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return x


def _frac(x):
    return Fraction(int(x.p), int(x.q))


def derealify(m: flint.fmpq_mat) -> List[List[GaussianRat]]:
    """Inverse of :func:`realify` (reads the first column of each 2x2 block)."""
    return [
        [GaussianRat(_frac(m[2 * i, 2 * j]), _frac(m[2 * i + 1, 2 * j])) for j in range(m.ncols() // 2)]
        for i in range(m.nrows() // 2)
    ]


def _realify_vector(v: Sequence) -> List:
    out = []
    for z in v:
        a, b = _parts(z)
        out.extend([a, b])
    return out


@dataclass
class SubspaceBasis:
    """Basis of a submodule, stored as columns of a Q-matrix in the realified ambient space.

    In field mode the column span is stable under multiplication by i; ``dim`` is then the
    Q(i)-dimension.  In lattice mode the columns form a saturated Z-basis.
    """

    real: flint.fmpq_mat
    mode: Mode
    unit_rows: Optional[List[int]] = None  # rows on which ``real`` is the identity, if any

    @property
    def dim(self) -> int:
        k = self.real.ncols()
        return k // 2 if self.mode is Mode.FIELD else k

    def gaussian_columns(self) -> List[List[GaussianRat]]:
        """A Q(i)-basis of the span (field mode)."""
        if self.mode is not Mode.FIELD:
            raise ValueError("Q(i)-basis only in GaussianField mode")
        chosen: List[List[GaussianRat]] = []
        current = 0
        n = self.real.nrows() // 2
        for j in range(self.real.ncols()):
            z = [GaussianRat(_frac(self.real[2 * r, j]), _frac(self.real[2 * r + 1, j])) for r in range(n)]
            trial = chosen + [z]
            rk = linalg.rank(realify([[col[r] for col in trial] for r in range(n)]))
            if rk > current:
                chosen, current = trial, rk
            if current == self.real.ncols():
                break
        return chosen

    def integer_columns(self) -> List[List[int]]:
        return [[int(self.real[i, j].p) for j in range(self.real.ncols())] for i in range(self.real.nrows())]


@dataclass
class Representation:
    """A representation given by exact matrices for the generators e, w, s, sc, t."""

    name: str
    mode: Mode
    dim: int
    generators: Dict[str, flint.fmpq_mat]
    inverses: Dict[str, flint.fmpq_mat] = field(default_factory=dict)
    element_map: Optional[Callable[[GroupElement], flint.fmpq_mat]] = None
    _cache: Dict[str, flint.fmpq_mat] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = self.real_dim
        for k, m in self.generators.items():
            if m.nrows() != n or m.ncols() != n:
                raise ValueError(f"generator {k} has the wrong shape")
            if k not in self.inverses:
                self.inverses[k] = m.inv()
        if self.mode is Mode.LATTICE:
            for k in self.generators:
                for m in (self.generators[k], self.inverses[k]):
                    if any(m[i, j].q != 1 for i in range(n) for j in range(n)):
                        raise ValueError(f"generator {k} is not invertible over Z")

    @property
    def real_dim(self) -> int:
        return 2 * self.dim if self.mode is Mode.FIELD else self.dim

    def matrix(self, word) -> flint.fmpq_mat:
        """rho(word) on the realified ambient space."""
        word = parse_word(word) if isinstance(word, str) else word
        key = str(word)
        m = self._cache.get(key)
        if m is not None:
            return m
        m = linalg.identity(self.real_dim)
        for name, k in word.letters:
            if name == "x":
                step = self.matrix(_XI)
                base = step if k > 0 else step.inv()
            else:
                base = self.generators[name] if k > 0 else self.inverses[name]
            for _ in range(abs(k)):
                m = m * base
        self._cache[key] = m
        return m

    def gaussian_matrix(self, word) -> List[List[GaussianRat]]:
        if self.mode is not Mode.FIELD:
            raise ValueError("GaussianField mode only")
        return derealify(self.matrix(word))

    def relations_hold(self) -> bool:
        one = linalg.identity(self.real_dim)
        return all(self.matrix(w) == one for w in RELATION_WORDS)


# constructions ---------------------------------------------------------------
def trivial_rep(mode: Mode = Mode.LATTICE) -> Representation:
    mode = Mode(mode)
    one = linalg.identity(2 if mode is Mode.FIELD else 1)
    return Representation("trivial", mode, 1, {k: one for k in BASE_LETTERS}, {k: one for k in BASE_LETTERS})


def monomials(n: int) -> List[Tuple[int, int, int]]:
    """Exponent triples (a, b, c) with a + b + c = n in graded-lexicographic order."""
    return [(a, b, n - a - b) for a in range(n, -1, -1) for b in range(n - a, -1, -1)]


def symn_matrix(g, n: int) -> List[List[GaussianInt]]:
    """Matrix of Sym^n(g) on the monomial basis.

    The monomial x^a y^b z^c goes to (g e_1)^a (g e_2)^b (g e_3)^c, expanded; the expansions are
    built degree by degree from the columns of g.
    """
    m = g.m if isinstance(g, GroupElement) else g
    cols = [[(m[r][k].re, m[r][k].im) for r in range(3)] for k in range(3)]
    images: Dict[Tuple[int, int, int], Dict[Tuple[int, int, int], Tuple[int, int]]] = {(0, 0, 0): {(0, 0, 0): (1, 0)}}
    basis = monomials(n)
    for deg in range(1, n + 1):
        for mono in monomials(deg):
            k = next(i for i in range(3) if mono[i])
            prev = list(mono)
            prev[k] -= 1
            poly = images[tuple(prev)]
            out: Dict[Tuple[int, int, int], List[int]] = {}
            for r in range(3):
                cr, ci = cols[k][r]
                if not cr and not ci:
                    continue
                for e, (pr, pi) in poly.items():
                    e2 = (e[0] + (r == 0), e[1] + (r == 1), e[2] + (r == 2))
                    acc = out.setdefault(e2, [0, 0])
                    acc[0] += pr * cr - pi * ci
                    acc[1] += pr * ci + pi * cr
            images[mono] = {e: (a, b) for e, (a, b) in out.items() if a or b}
    index = {mono: i for i, mono in enumerate(basis)}
    mat = [[GaussianInt(0, 0)] * len(basis) for _ in basis]
    for j, mono in enumerate(basis):
        for e, (a, b) in images[mono].items():
            mat[index[e]][j] = GaussianInt(a, b)
    return mat


def symn_rep(n: int, mode: Mode = Mode.FIELD) -> Representation:
    """Sym^n of the standard representation (natural substitution action)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    mode = Mode(mode)
    gens, invs = {}, {}
    for k in BASE_LETTERS:
        g = eval_word(k)
        gens[k] = _to_mode(symn_matrix(g, n), mode)
        invs[k] = _to_mode(symn_matrix(g.inverse(), n), mode)
    dim = len(monomials(n))
    return Representation(
        f"symn:{n}", mode, dim if mode is Mode.FIELD else 2 * dim, gens, invs,
        element_map=lambda g, n=n, mode=mode: _to_mode(symn_matrix(g, n), mode),
    )


def _to_mode(m, mode: Mode) -> flint.fmpq_mat:
    # lattice mode realifies too: Z[i]^d is the rank-2d lattice
    return realify(m)


def standard_rep(mode: Mode = Mode.FIELD) -> Representation:
    """Z[i]^3 with the natural action: dim 3 over Q(i), or the realified rank-6 lattice."""
    rep = symn_rep(1, mode)
    rep.name = "standard"
    return rep


# generic constructions used for randomized checks -------------------------------
def _residue_field(pi: GaussianInt) -> Tuple[int, int]:
    """(p, s) with Z[i]/(pi) = F_p and i -> s; pi must have prime norm."""
    p = pi.norm()
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError("modulus must have prime norm")
    # a + b i = 0 mod pi  =>  i = -a / b
    s = (-pi.re * pow(pi.im, -1, p)) % p
    return p, s


def permutation_rep(pi=GaussianInt(2, 1)) -> Representation:
    """Permutation action on the projective plane over Z[i]/(pi) (a lattice representation)."""
    pi = GaussianInt.coerce(pi)
    p, s = _residue_field(pi)
    points = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                v = (a, b, c)
                if v == (0, 0, 0):
                    continue
                lead = next(x for x in v if x)
                inv = pow(lead, -1, p)
                w = tuple(x * inv % p for x in v)
                if w == v:
                    points.append(v)
    index = {v: i for i, v in enumerate(points)}

    def perm_matrix(g: GroupElement) -> flint.fmpq_mat:
        red = [[(x.re + s * x.im) % p for x in row] for row in g.m]
        out = flint.fmpq_mat(len(points), len(points))
        for j, v in enumerate(points):
            w = [sum(red[r][k] * v[k] for k in range(3)) % p for r in range(3)]
            lead = next(x for x in w if x)
            inv = pow(lead, -1, p)
            w = tuple(x * inv % p for x in w)
            out[index[w], j] = 1
        return out

    gens = {k: perm_matrix(eval_word(k)) for k in BASE_LETTERS}
    invs = {k: perm_matrix(eval_word(k).inverse()) for k in BASE_LETTERS}
    return Representation(f"perm:{pi}", Mode.LATTICE, len(points), gens, invs, element_map=perm_matrix)


def _kron(a: flint.fmpq_mat, b: flint.fmpq_mat) -> flint.fmpq_mat:
    out = flint.fmpq_mat(a.nrows() * b.nrows(), a.ncols() * b.ncols())
    for i in range(a.nrows()):
        for j in range(a.ncols()):
            x = a[i, j]
            if x == 0:
                continue
            for k in range(b.nrows()):
                for l in range(b.ncols()):
                    y = b[k, l]
                    if y != 0:
                        out[i * b.nrows() + k, j * b.ncols() + l] = x * y
    return out


def _block_diag(a: flint.fmpq_mat, b: flint.fmpq_mat) -> flint.fmpq_mat:
    out = flint.fmpq_mat(a.nrows() + b.nrows(), a.ncols() + b.ncols())
    for i in range(a.nrows()):
        for j in range(a.ncols()):
            out[i, j] = a[i, j]
    for i in range(b.nrows()):
        for j in range(b.ncols()):
            out[a.nrows() + i, a.ncols() + j] = b[i, j]
    return out


def _combine(r1: Representation, r2: Representation, op, name: str, dim: int) -> Representation:
    if r1.mode is not r2.mode:
        raise ValueError("modes differ")
    gens = {k: op(r1.generators[k], r2.generators[k]) for k in BASE_LETTERS}
    invs = {k: op(r1.inverses[k], r2.inverses[k]) for k in BASE_LETTERS}
    return Representation(name, r1.mode, dim, gens, invs)


def direct_sum(r1: Representation, r2: Representation) -> Representation:
    return _combine(r1, r2, _block_diag, f"({r1.name}+{r2.name})", r1.dim + r2.dim)


def tensor_product(r1: Representation, r2: Representation) -> Representation:
    """Tensor product over Z (lattice mode only; the realified Q(i) tensor is not Q(i)-linear)."""
    if r1.mode is not Mode.LATTICE or r2.mode is not Mode.LATTICE:
        raise ValueError("tensor products are formed in IntegerLattice mode")
    return _combine(r1, r2, _kron, f"({r1.name}x{r2.name})", r1.dim * r2.dim)


def _conj_matrix(n: int) -> flint.fmpq_mat:
    c = flint.fmpq_mat(n, n)
    for i in range(n):
        c[i, i] = 1 if i % 2 == 0 else -1
    return c


def conjugate_rep(r: Representation) -> Representation:
    """Complex conjugate of a field-mode representation."""
    if r.mode is not Mode.FIELD:
        raise ValueError("GaussianField mode only")
    c = _conj_matrix(r.real_dim)
    gens = {k: c * r.generators[k] * c for k in BASE_LETTERS}
    invs = {k: c * r.inverses[k] * c for k in BASE_LETTERS}
    return Representation(f"conj({r.name})", r.mode, r.dim, gens, invs)


def dual_rep(r: Representation) -> Representation:
    """Contragredient: g acts by the transpose of rho(g^-1)."""
    gens = {k: r.inverses[k].transpose() for k in BASE_LETTERS}
    invs = {k: r.generators[k].transpose() for k in BASE_LETTERS}
    if r.mode is Mode.FIELD:
        # the realified transpose is the conjugate-transpose; conjugate back to stay Q(i)-linear
        c = _conj_matrix(r.real_dim)
        gens = {k: c * m * c for k, m in gens.items()}
        invs = {k: c * m * c for k, m in invs.items()}
    return Representation(f"dual({r.name})", r.mode, r.dim, gens, invs)


def change_basis(r: Representation, p: flint.fmpq_mat) -> Representation:
    """The conjugate representation P rho P^-1 (P must be unimodular in lattice mode)."""
    pinv = p.inv()
    gens = {k: p * r.generators[k] * pinv for k in BASE_LETTERS}
    invs = {k: p * r.inverses[k] * pinv for k in BASE_LETTERS}
    return Representation(f"P.{r.name}", r.mode, r.dim, gens, invs)


def _random_unimodular(rng: random.Random, n: int, gaussian: bool) -> flint.fmpq_mat:
    """Product of random elementary matrices (Gaussian entries realified when ``gaussian``)."""
    size = n
    m = [[GaussianInt(int(i == j), 0) for j in range(size)] for i in range(size)]
    for _ in range(3 * size):
        i, j = rng.sample(range(size), 2) if size > 1 else (0, 0)
        if i == j:
            continue
        c = GaussianInt(rng.randint(-2, 2), rng.randint(-2, 2) if gaussian else 0)
        m[i] = [x + c * y for x, y in zip(m[i], m[j])]
    if gaussian:
        return realify(m)
    return flint.fmpq_mat([[x.re for x in row] for row in m])


def random_representation(rng: random.Random, max_real_dim: int = 40) -> Representation:
    """A random genuine representation built from sums, tensors, conjugates, duals and
    permutation actions, conjugated by a random unimodular change of basis."""
    while True:
        kind = rng.choice(["symsum", "conj", "dual", "perm", "tensor", "permsum"])
        if kind == "symsum":
            a, b = rng.randint(0, 3), rng.randint(0, 2)
            rep = direct_sum(symn_rep(a), symn_rep(b))
        elif kind == "conj":
            rep = conjugate_rep(symn_rep(rng.randint(1, 4)))
        elif kind == "dual":
            rep = direct_sum(dual_rep(symn_rep(rng.randint(1, 3))), conjugate_rep(symn_rep(rng.randint(0, 2))))
        elif kind == "perm":
            rep = permutation_rep(rng.choice([GaussianInt(1, 1), GaussianInt(2, 1), GaussianInt(1, 2)]))
        elif kind == "tensor":
            rep = tensor_product(symn_rep(1, Mode.LATTICE), symn_rep(rng.randint(0, 1), Mode.LATTICE))
        else:
            rep = direct_sum(permutation_rep(GaussianInt(1, 1)), symn_rep(rng.randint(0, 2), Mode.LATTICE))
        if rep.real_dim <= max_real_dim:
            break
    p = _random_unimodular(rng, rep.dim if rep.mode is Mode.FIELD else rep.real_dim, rep.mode is Mode.FIELD)
    out = change_basis(rep, p)
    out.name = f"random[{rep.name}]"
    return out


# fixed and eigen subspaces ---------------------------------------------------------
_FINITE_CACHE: Dict[Tuple[str, ...], FiniteGroup] = {}


def _finite_group(gens: Sequence[Word]) -> FiniteGroup:
    key = tuple(str(g) for g in gens)
    grp = _FINITE_CACHE.get(key)
    if grp is None:
        grp = close_subgroup(list(gens))
        _FINITE_CACHE[key] = grp
    return grp


def _kernel_basis(rep: Representation, stacked: flint.fmpq_mat) -> SubspaceBasis:
    if rep.mode is Mode.FIELD:
        basis, free = linalg.echelon_nullspace(stacked)
        return SubspaceBasis(basis, rep.mode, free)
    rows = [[int(stacked[i, j].p) for j in range(stacked.ncols())] for i in range(stacked.nrows())]
    ker = linalg.integer_kernel(rows, stacked.ncols())
    k = len(ker[0]) if ker else 0
    out = flint.fmpq_mat(stacked.ncols(), k)
    for i in range(stacked.ncols()):
        for j in range(k):
            out[i, j] = ker[i][j]
    return SubspaceBasis(out, rep.mode)


def fixed_subspace(rep: Representation, gens: Iterable, require_finite: bool = True) -> SubspaceBasis:
    """Vectors fixed by the group generated by ``gens``.

    Computed as the kernel of the stacked matrices rho(g) - 1 over the generators; in lattice
    mode the kernel is taken over Z, which yields a saturated basis.  Cell stabilizers must be
    finite (checked by closing the subgroup); pass ``require_finite=False`` for invariants of
    infinite groups such as <e, w, t, s>.
    """
    gens = [parse_word(g) if isinstance(g, str) else g for g in gens]
    if require_finite:
        _finite_group(gens)  # raises NotFiniteError for infinite groups
    n = rep.real_dim
    if not gens:
        return SubspaceBasis(linalg.identity(n), rep.mode, list(range(n)))
    one = linalg.identity(n)
    stacked = linalg.vstack([rep.matrix(g) - one for g in gens])
    return _kernel_basis(rep, stacked)


def eigenspace(rep: Representation, g, lam: int) -> SubspaceBasis:
    """Kernel of rho(g) - lam for lam = +1 or -1."""
    if rep.mode is not Mode.FIELD:
        raise ValueError("eigenspaces are computed in GaussianField mode")
    if lam not in (1, -1):
        raise ValueError("lambda must be +1 or -1")
    g = parse_word(g) if isinstance(g, str) else g
    n = rep.real_dim
    return _kernel_basis(rep, rep.matrix(g) - lam * linalg.identity(n))


def intersection_dim(rep: Representation, conditions: Sequence[Tuple[Word, int]]) -> int:
    """Dimension of the common eigenspace {v : rho(g) v = lam v for every (g, lam)}."""
    n = rep.real_dim
    one = linalg.identity(n)
    stacked = linalg.vstack([rep.matrix(parse_word(g) if isinstance(g, str) else g) - lam * one for g, lam in conditions])
    return _kernel_basis(rep, stacked).dim


def invariants(rep: Representation) -> SubspaceBasis:
    """E fixed by <e, w, t, s>, which is the whole group."""
    return fixed_subspace(rep, GLOBAL_GENERATORS, require_finite=False)
