"""Equivariant cochain complex of the spine and its cohomology.

The complex has one summand per representative cell: C^p is the direct sum of the fixed
submodules E^{Stab(cell)} over the p-cells.  The differential sends the summand of a cell
to the summands of its cofaces: for each boundary record (face, translate word g, sign)
of a (p+1)-cell, the face coordinate vector contributes sign * rho(g) * (face vector).

Two encodings of the differentials are kept: the boundary records shipped in
``data/cells.json`` (consumed by :func:`assemble`) and the hand-written formulas in
:func:`display_differential`.  Tests compare them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from . import linalg
from .group import Word, close_subgroup, parse_word
from .representations import (
    Mode,
    Representation,
    SubspaceBasis,
    eigenspace,
    fixed_subspace,
    intersection_dim,
    invariants,
)

__all__ = [
    "CellDatum",
    "BoundaryRecord",
    "CellData",
    "load_cells",
    "AssembledComplex",
    "CohomologyResult",
    "H3Bounds",
    "assemble",
    "cohomology",
    "h0_identity_check",
    "h3_bounds",
    "display_differential",
    "differential_ranks",
    "euler_characteristic_matches",
    "encodings_agree",
    "trivial_d0_rows",
    "CELL_ORDER",
]

CELL_ORDER: Dict[int, Tuple[str, ...]] = {
    0: ("m", "n", "o", "p", "q", "r"),
    1: ("a", "b", "c", "d", "e", "f", "g", "h", "i"),
    2: ("A", "B", "C", "D", "E", "F", "G"),
    3: ("X", "Y"),
}


@dataclass(frozen=True)
class CellDatum:
    name: str
    dim: int
    stabilizer_gens: Tuple[Word, ...]


@dataclass(frozen=True)
class BoundaryRecord:
    face: str
    word: Word
    sign: int


@dataclass(frozen=True)
class CellData:
    cells: Dict[int, Tuple[CellDatum, ...]]
    boundaries: Dict[str, Tuple[BoundaryRecord, ...]]

    def cell(self, name: str) -> CellDatum:
        for cs in self.cells.values():
            for c in cs:
                if c.name == name:
                    return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "schema": "picard-cells/1",
            "cells": {
                str(d): [{"name": c.name, "stabilizer": [str(w) for w in c.stabilizer_gens]} for c in cs]
                for d, cs in self.cells.items()
            },
            "boundaries": {
                k: [{"face": r.face, "word": str(r.word), "sign": r.sign} for r in recs]
                for k, recs in self.boundaries.items()
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "CellData":
        if data.get("schema") != "picard-cells/1":
            raise ValueError("unknown cell dataset schema")
        cells = {
            int(d): tuple(CellDatum(c["name"], int(d), tuple(parse_word(w) for w in c["stabilizer"])) for c in cs)
            for d, cs in data["cells"].items()
        }
        names = {c.name: c.dim for cs in cells.values() for c in cs}
        bounds = {}
        for k, recs in data["boundaries"].items():
            if k not in names:
                raise ValueError(f"boundary of unknown cell {k}")
            out = []
            for r in recs:
                if names.get(r["face"]) != names[k] - 1:
                    raise ValueError(f"face {r['face']} of {k} has the wrong dimension")
                if r["sign"] not in (1, -1):
                    raise ValueError("signs must be +1 or -1")
                out.append(BoundaryRecord(r["face"], parse_word(r["word"]), int(r["sign"])))
            bounds[k] = tuple(out)
        return cls(cells, bounds)


_DEFAULT: Optional[CellData] = None


def load_cells(path: Optional[str] = None) -> CellData:
    """The shipped dataset, or one read from ``path``."""
    global _DEFAULT
    if path is not None:
        with open(path) as fh:
            return CellData.from_json(json.load(fh))
    if _DEFAULT is None:
        text = resources.files("picard").joinpath("data/cells.json").read_text()
        _DEFAULT = CellData.from_json(json.loads(text))
    return _DEFAULT


# assembly -----------------------------------------------------------------------
@dataclass
class AssembledComplex:
    rep: Representation
    data: CellData
    bases: Dict[int, List[SubspaceBasis]]
    differentials: Dict[int, flint.fmpq_mat]  # D_p : C^p -> C^{p+1}
    # ambient images: (coface, face) -> sum of sign * rho(word) * basis(face)
    images: Dict[Tuple[str, str], flint.fmpq_mat] = field(default_factory=dict)

    def dim(self, p: int) -> int:
        """Rank of C^p over the coefficient ring."""
        return sum(b.dim for b in self.bases.get(p, []))

    def real_dim(self, p: int) -> int:
        return sum(b.real.ncols() for b in self.bases.get(p, []))

    def offsets(self, p: int) -> List[int]:
        out, k = [], 0
        for b in self.bases[p]:
            out.append(k)
            k += b.real.ncols()
        return out

    def to_ambient(self, p: int, x: flint.fmpq_mat) -> List[flint.fmpq_mat]:
        """Split a coordinate column of C^p into ambient vectors, one per cell."""
        out = []
        for b, off in zip(self.bases[p], self.offsets(p)):
            k = b.real.ncols()
            sub = flint.fmpq_mat(k, x.ncols())
            for i in range(k):
                for j in range(x.ncols()):
                    sub[i, j] = x[off + i, j]
            out.append(b.real * sub)
        return out

    def composition_vanishes(self, method: str = "ambient") -> bool:
        """D_{p+1} D_p = 0, exactly.

        ``method="matrix"`` multiplies the coordinate matrices.  ``method="ambient"`` checks
        the same identity after mapping into the ambient module, cell pair by cell pair:
        since every block was verified to satisfy basis * coordinates = image, and the basis
        map is injective, the two checks are equivalent; the ambient one is far cheaper.
        """
        if method == "matrix":
            for p in (0, 1):
                prod = self.differentials[p + 1] * self.differentials[p]
                if prod != flint.fmpq_mat(prod.nrows(), prod.ncols()):
                    return False
            return True
        if method != "ambient":
            raise ValueError("method must be 'ambient' or 'matrix'")
        n = self.rep.real_dim
        for p in (0, 1):
            mids = [c.name for c in self.data.cells[p + 1]]
            for top in self.data.cells[p + 2]:
                for bottom, basis in zip(self.data.cells[p], self.bases[p]):
                    acc = flint.fmpq_mat(n, basis.real.ncols())
                    for rec in self.data.boundaries.get(top.name, ()):
                        img = self.images.get((rec.face, bottom.name))
                        if img is not None:
                            acc = acc + rec.sign * (self.rep.matrix(rec.word) * img)
                    if acc != flint.fmpq_mat(n, basis.real.ncols()):
                        return False
        return True


def _cell_bases(rep: Representation, data: CellData) -> Dict[int, List[SubspaceBasis]]:
    return {
        d: [fixed_subspace(rep, c.stabilizer_gens) for c in data.cells[d]]
        for d in sorted(data.cells)
    }


def assemble(rep: Representation, data: Optional[CellData] = None) -> AssembledComplex:
    """Build the cochain complex with coefficients in ``rep``.

    Every image is re-expressed in the target cell's basis; a non-exact solve (or a
    non-integral one in lattice mode) raises ``ArithmeticError("saturation violated")``.
    """
    data = data or load_cells()
    bases = _cell_bases(rep, data)
    integral = rep.mode is Mode.LATTICE
    diffs: Dict[int, flint.fmpq_mat] = {}
    images: Dict[Tuple[str, str], flint.fmpq_mat] = {}
    for p in sorted(data.cells):
        if p + 1 not in data.cells:
            continue
        src_names = [c.name for c in data.cells[p]]
        rows = []
        for tgt, tb in zip(data.cells[p + 1], bases[p + 1]):
            if tb.unit_rows is not None:
                piv, unit = tb.unit_rows, True
            else:
                piv, unit = (linalg.pivot_rows(tb.real) if tb.real.ncols() else []), False
            blocks = []
            for name, sb in zip(src_names, bases[p]):
                m = flint.fmpq_mat(rep.real_dim, sb.real.ncols())
                hit = False
                for rec in data.boundaries.get(tgt.name, ()):
                    if rec.face == name:
                        m = m + rec.sign * (rep.matrix(rec.word) * sb.real)
                        hit = True
                if hit:
                    images[(tgt.name, name)] = m
                blocks.append(linalg.exact_coordinates(tb.real, piv, m, integral=integral, unit_rows=unit))
            rows.append(linalg.hstack(blocks, nrows=tb.real.ncols()))
        diffs[p] = linalg.vstack(rows, ncols=sum(b.real.ncols() for b in bases[p]))
    top = max(data.cells)
    diffs.setdefault(top, flint.fmpq_mat(0, sum(b.real.ncols() for b in bases[top])))
    return AssembledComplex(rep, data, bases, diffs, images)


# second encoding: the differentials written out term by term ---------------------
def display_differential(rep: Representation, p: int, x: Sequence[flint.fmpq_mat]) -> List[flint.fmpq_mat]:
    """Apply d_p to ambient vectors ``x`` (one per p-cell, in :data:`CELL_ORDER`)."""
    r = rep.matrix
    if p == 0:
        k1, k2, k3, k4, k5, k6 = x
        return [
            -k1 + r("x^2") * k3,
            r("x") * k3 - k5,
            k3 - k5,
            -k3 + r("x") * k3,
            k3 - k4,
            -k2 + k4,
            k1 - k2,
            k4 - k6,
            k3 - k6,
        ]
    if p == 1:
        l1, l2, l3, l4, l5, l6, l7, l8, l9 = x
        return [
            -l1 + r("t e w") * l1 + r("x") * l4,
            l2 - l3 - l4,
            l4 + r("x") * l4 + l5 - r("x^2") * l5,
            -r("s e^2") * l2 + l3 - l5 + r("t s w t s^-1") * l5 - l6 + r("e") * l6,
            l1 - r("x^2") * l5 - l6 + l7,
            -l5 - l8 + l9,
            l4 + l9 - r("x") * l9,
        ]
    if p == 2:
        m1, m2, m3, m4, m5, m6, m7 = x
        one = rep.matrix(Word())
        a = one + r("t e w") + r("t e w t e w")
        b = -one + r("s e w s^-1") - r("s e w s^-1 e w")
        return [
            a * m1 + b * m2 - m3 - r("t s e w^-1") * m3 - m4 + m5 - r("e") * m5,
            -m3 - m6 + r("x^2") * m6 + m7 + r("x") * m7,
        ]
    raise ValueError("p must be 0, 1 or 2")


def encodings_agree(cx: AssembledComplex, rng, trials: int = 3) -> Optional[Tuple[int, int]]:
    """Compare the assembled differentials with :func:`display_differential` on random cochains.

    Returns None when they agree, otherwise ``(p, trial)`` of the first disagreement.
    """
    for p in (0, 1, 2):
        n = cx.real_dim(p)
        for t in range(trials):
            x = flint.fmpq_mat(n, 1, [rng.randint(-5, 5) for _ in range(n)])
            lhs = display_differential(cx.rep, p, cx.to_ambient(p, x))
            rhs = cx.to_ambient(p + 1, cx.differentials[p] * x)
            if any(a != b for a, b in zip(lhs, rhs)):
                return p, t
    return None


def trivial_d0_rows(data: Optional[CellData] = None) -> Dict[str, Dict[str, int]]:
    """Rows of d_0 for the trivial character, read off the boundary records: the
    signed count of each 0-cell in the boundary of each 1-cell."""
    data = data or load_cells()
    rows: Dict[str, Dict[str, int]] = {}
    for c in data.cells[1]:
        row: Dict[str, int] = {}
        for rec in data.boundaries.get(c.name, ()):
            row[rec.face] = row.get(rec.face, 0) + rec.sign
        rows[c.name] = {k: v for k, v in row.items() if v}
    return rows


# cohomology ---------------------------------------------------------------------
@dataclass(frozen=True)
class CohomologyResult:
    mode: Mode
    free_ranks: Tuple[int, ...]
    torsion: Tuple[Tuple[int, ...], ...]

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.free_ranks

    def group_string(self, p: int) -> str:
        """Human-readable form such as ``Z^2`` or ``Z/2`` or ``0``."""
        base = "Z" if self.mode is Mode.LATTICE else "Q(i)"
        parts = []
        r = self.free_ranks[p]
        if r == 1:
            parts.append(base)
        elif r > 1:
            parts.append(f"{base}^{r}")
        parts.extend(f"Z/{t}Z" for t in self.torsion[p])
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return ", ".join(self.group_string(p) for p in range(len(self.free_ranks)))


def _to_integer_rows(m: flint.fmpq_mat) -> List[List[int]]:
    return [[int(x.p) for x in row] for row in m.tolist()]


def _scaled_integer(m: flint.fmpq_mat) -> flint.fmpz_mat:
    """Integer matrix with the same row space (each row cleared of denominators)."""
    if m.nrows() == 0 or m.ncols() == 0:
        return flint.fmpz_mat(m.nrows(), m.ncols())
    num, den = m.numer_denom()
    return num


EXACT_RANK_LIMIT = 1_000_000  # entries; larger differentials use the certified sandwich


def differential_ranks(cx: AssembledComplex, limit: int = EXACT_RANK_LIMIT) -> Dict[int, int]:
    """Exact ranks of all differentials.

    Small matrices get a direct exact rank.  For a large D_p the rank mod a prime is a lower
    bound, and since D_p D_{p-1} = 0 = D_{p+1} D_p (checked exactly here), the exact ranks of
    the neighbours give the upper bound min(n_p - r_{p-1}, n_{p+1} - r_{p+1}).  When the two
    bounds meet the rank is certified; otherwise it is computed exactly.
    """
    d = cx.differentials
    if not cx.composition_vanishes():
        raise ArithmeticError("differentials do not compose to zero")
    ranks: Dict[int, int] = {}
    big = []
    for p, m in d.items():
        if m.nrows() * m.ncols() <= limit:
            ranks[p] = linalg.exact_rank(m)
        else:
            big.append(p)
    for p in big:
        m = d[p]
        low = linalg.rank_mod_prime(m)
        bounds = [m.nrows(), m.ncols()]
        if p - 1 in ranks or p == 0:
            bounds.append(m.ncols() - ranks.get(p - 1, 0))
        if p + 1 in ranks:
            bounds.append(m.nrows() - ranks[p + 1])
        ranks[p] = low if low == min(bounds) else linalg.exact_rank(m)
    return ranks


def cohomology(rep: Representation, cx: Optional[AssembledComplex] = None) -> CohomologyResult:
    """H^p = ker D_p / im D_{p-1}.

    Over Q(i) the dimensions come from exact ranks of the realified differentials (halved).
    Over Z the free rank is dim ker D_p - rank D_{p-1} and the torsion is given by the Smith
    invariant factors of D_{p-1} (the kernel is saturated, so all torsion comes from there).
    """
    cx = cx or assemble(rep)
    top = max(cx.bases)
    ranks = differential_ranks(cx)
    ranks[-1] = 0
    free, tors = [], []
    for p in range(top + 1):
        n = cx.real_dim(p)
        h = n - ranks.get(p, 0) - ranks[p - 1]
        if rep.mode is Mode.FIELD:
            if h % 2:
                raise ArithmeticError("odd real dimension for a Q(i)-vector space")
            free.append(h // 2)
            tors.append(())
        else:
            free.append(h)
            if p == 0 or ranks[p - 1] == 0:
                tors.append(())
            else:
                tors.append(tuple(linalg.invariant_factors(_to_integer_rows(cx.differentials[p - 1]))))
    return CohomologyResult(rep.mode, tuple(free), tuple(tors))


def euler_characteristic_matches(rep: Representation, result: CohomologyResult, cx: AssembledComplex) -> bool:
    chain = sum((-1) ** p * cx.dim(p) for p in cx.bases)
    coh = sum((-1) ** p * r for p, r in enumerate(result.free_ranks))
    return chain == coh


def h0_identity_check(rep: Representation, cx: Optional[AssembledComplex] = None) -> bool:
    """Compare ker D_0 with the invariants of <e, w, t, s> computed directly.

    A kernel vector of D_0 consists of one ambient vector per 0-cell; all of them must
    coincide, and their common value must range over exactly the invariant subspace.
    """
    cx = cx or assemble(rep)
    d0 = cx.differentials[0]
    ker = linalg.rational_nullspace(d0)
    inv = invariants(rep)
    if ker.ncols() != inv.real.ncols():
        return False
    if ker.ncols() == 0:
        return True
    parts = cx.to_ambient(0, ker)
    if any(part != parts[0] for part in parts[1:]):
        return False
    both = linalg.hstack([parts[0], inv.real])
    return linalg.rank(both) == inv.real.ncols() == linalg.rank(parts[0])


@dataclass(frozen=True)
class H3Bounds:
    rank_bound: int
    eigen_bound: int
    actual: int

    @property
    def chain_holds(self) -> bool:
        return self.actual <= self.eigen_bound <= self.rank_bound


def h3_bounds(rep: Representation, result: Optional[CohomologyResult] = None) -> H3Bounds:
    """rank_bound = dim E - dim E^{ew}; eigen_bound = dim(E_+(e) cap E_-(w)); actual = h^3."""
    if rep.mode is not Mode.FIELD:
        raise ValueError("GaussianField mode only")
    result = result or cohomology(rep)
    fixed = fixed_subspace(rep, ["e w"])
    eig = intersection_dim(rep, [(parse_word("e"), 1), (parse_word("w"), -1)])
    return H3Bounds(rep.dim - fixed.dim, eig, result.free_ranks[3])
