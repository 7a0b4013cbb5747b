"""The Picard modular group SU(2,1; Z[i]): named generators, words, finite subgroups."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from math import gcd as igcd
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .gaussian import (
    GMat3,
    GaussianInt,
    J,
    conj_transpose,
    det3,
    identity3,
    mat,
    matmul,
    matvec,
)

__all__ = [
    "GroupElement",
    "Word",
    "FiniteGroup",
    "GroupInvariants",
    "NotFiniteError",
    "GENERATOR_MATRICES",
    "generator",
    "is_member",
    "parse_word",
    "eval_word",
    "close_subgroup",
    "group_invariants",
    "abelian_invariants",
]


class NotFiniteError(ValueError):
    """Raised when a subgroup closure exceeds its cap."""


@dataclass(frozen=True)
class GroupElement:
    """A 3x3 Gaussian-integer matrix in SU(2,1; Z[i])."""

    m: GMat3
    _key: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_key", tuple(c for row in self.m for x in row for c in (x.re, x.im)))

    @classmethod
    def from_matrix(cls, m, check: bool = True) -> "GroupElement":
        g = cls(mat(m) if not isinstance(m[0][0], GaussianInt) else m)
        if check and not is_member(g.m):
            raise ValueError("matrix is not in SU(2,1; Z[i])")
        return g

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(identity3())

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(matmul(self.m, other.m))

    __matmul__ = __mul__

    def inverse(self) -> "GroupElement":
        # g^* J g = J and J^2 = 1 give g^{-1} = J g^* J
        return GroupElement(matmul(matmul(J, conj_transpose(self.m)), J))

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = GroupElement.identity()
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def act(self, v):
        return matvec(self.m, v)

    def is_identity(self) -> bool:
        return self == GroupElement.identity()

    def order(self, cap: int = 10_000) -> int:
        e = GroupElement.identity()
        x, k = self, 1
        while x != e:
            x = x * self
            k += 1
            if k > cap:
                raise NotFiniteError("element order exceeds cap")
        return k

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "GroupElement(" + repr([list(r) for r in self.m]) + ")"


def is_member(m) -> bool:
    """True iff ``m`` preserves the form (m^* J m = J) and has determinant 1."""
    m = mat(m) if not isinstance(m[0][0], GaussianInt) else m
    if det3(m) != 1:
        return False
    return matmul(matmul(conj_transpose(m), J), m) == J


# generators -----------------------------------------------------------------
_BASE = {
    "e": mat([[1j, 0, 0], [0, -1, 0], [0, 0, 1j]]),
    "w": mat([[0, 0, -1], [0, 1, 0], [1, 0, 0]]),
    "s": mat([[1, 1 + 1j, 1j], [0, 1, 1 + 1j], [0, 0, 1]]),
    "sc": mat([[1, 1j * (1 + 1j), 1j], [0, 1, -1j * (1 + 1j)], [0, 0, 1]]),
    "t": mat([[1, 0, 1], [0, 1, 0], [0, 0, 1]]),
}

_ALIASES = {
    "e": "e", "ε": "e", "eps": "e", "epsilon": "e",
    "w": "w",
    "s": "s", "σ": "s", "sigma": "s",
    "sc": "sc", "σ̌": "sc", "sigmacheck": "sc",
    "t": "t", "τ": "t", "tau": "t",
    "x": "x", "ξ": "x", "xi": "x",
}

_PRETTY = {"e": "ε", "w": "w", "s": "σ", "sc": "σ̌", "t": "τ", "x": "ξ"}


@dataclass(frozen=True)
class Word:
    """A product of named generators; letters are applied as a left-to-right matrix product."""

    letters: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        merged: List[List] = []
        for name, k in self.letters:
            name = _ALIASES.get(name)
            if name is None:
                raise ValueError(f"unknown generator in {self.letters!r}")
            k = int(k)
            if merged and merged[-1][0] == name:
                merged[-1][1] += k
            else:
                merged.append([name, k])
            if merged[-1][1] == 0:
                merged.pop()
        object.__setattr__(self, "letters", tuple((n, k) for n, k in merged))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def inverse(self) -> "Word":
        return Word(tuple((n, -k) for n, k in reversed(self.letters)))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(n if k == 1 else f"{n}^{k}" for n, k in self.letters)

    def pretty(self) -> str:
        if not self.letters:
            return "e"
        return "".join(_PRETTY[n] + ("" if k == 1 else f"^{k}") for n, k in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"


_TOKEN = re.compile(r"^([^\s^]+?)(?:\^\(?(-?\d+)\)?)?$")


def parse_word(text: str) -> Word:
    """Parse ``"t w t s w e^3"``; letters e, w, s, sc, t, x, exponents ``^k`` (k may be negative)."""
    text = text.strip()
    if text in ("", "1", "id", "I"):
        return Word()
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m or m.group(1) not in _ALIASES:
            raise ValueError(f"cannot parse word token {tok!r}")
        letters.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
    return Word(tuple(letters))


def _as_word(w) -> Word:
    return parse_word(w) if isinstance(w, str) else w


def generator(name: str) -> GroupElement:
    name = _ALIASES[name]
    if name == "x":
        return eval_word("t w t s w e^3")
    return GroupElement(_BASE[name])


GENERATOR_MATRICES: Dict[str, GMat3] = dict(_BASE)


_GEN_CACHE: Dict[str, GroupElement] = {}


def _gen(name: str) -> GroupElement:
    g = _GEN_CACHE.get(name)
    if g is None:
        g = generator(name)
        _GEN_CACHE[name] = g
    return g


def eval_word(word) -> GroupElement:
    """Evaluate a :class:`Word` (or its string form) to a group element."""
    word = _as_word(word)
    result = GroupElement.identity()
    for name, k in word.letters:
        result = result * (_gen(name) ** k)
    return result


# finite subgroups -------------------------------------------------------------
@dataclass(frozen=True)
class FiniteGroup:
    elements: FrozenSet[GroupElement]
    generators: Tuple[GroupElement, ...] = ()
    generator_words: Tuple[Word, ...] = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def __iter__(self):
        return iter(self.elements)

    def is_abelian(self) -> bool:
        gens = self.generators or tuple(self.elements)
        return all(a * b == b * a for a in gens for b in gens)

    def center(self) -> "FiniteGroup":
        gens = self.generators or tuple(self.elements)
        z = frozenset(g for g in self.elements if all(g * h == h * g for h in gens))
        return FiniteGroup(z)

    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // igcd(a, b), (g.order() for g in self.elements), 1)

    def is_cyclic(self) -> bool:
        return any(g.order() == self.order for g in self.elements)


def close_subgroup(gens: Iterable, cap: int = 10_000) -> FiniteGroup:
    """Closure of ``gens`` (elements or words) under multiplication.

    Raises :class:`NotFiniteError` once more than ``cap`` elements have been produced.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    words, elems = [], []
    for g in gens:
        if isinstance(g, (Word, str)):
            words.append(_as_word(g))
            elems.append(eval_word(g))
        else:
            elems.append(g)
    e = GroupElement.identity()
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in elems:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise NotFiniteError(f"subgroup is not finite within cap {cap}")
                    nxt.append(y)
        frontier = nxt
    return FiniteGroup(frozenset(seen), tuple(elems), tuple(words))


def _prime_factors(n: int) -> List[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(group: FiniteGroup) -> Tuple[int, ...]:
    """Invariant factors (largest first) of a finite abelian group, e.g. (4, 2)."""
    if group.order == 1:
        return ()
    orders = [g.order() for g in group.elements]
    factors: List[int] = []
    for p in _prime_factors(group.order):
        # rank_k = log_p |A[p^k]|; rank_k - rank_{k-1} counts cyclic factors of order >= p^k
        ranks = [0]
        k = 1
        while True:
            size = sum(1 for o in orders if (p**k) % o == 0)
            r = 0
            while size > 1:
                size //= p
                r += 1
            if r == ranks[-1]:
                break
            ranks.append(r)
            k += 1
        at_least = [ranks[j] - ranks[j - 1] for j in range(1, len(ranks))] + [0]
        parts: List[int] = []
        for j in range(len(at_least) - 1):
            parts.extend([p ** (j + 1)] * (at_least[j] - at_least[j + 1]))
        parts.sort(reverse=True)
        width = max(len(factors), len(parts))
        factors = [a * b for a, b in zip(factors + [1] * (width - len(factors)), parts + [1] * (width - len(parts)))]
    return tuple(f for f in factors if f > 1)


def _maximal_elementary_abelian(group: FiniteGroup) -> List[FrozenSet[GroupElement]]:
    e = GroupElement.identity()
    involutions = [g for g in group.elements if g != e and (g * g) == e]
    start = frozenset([e])
    seen = {start}
    stack = [start]
    maximal = []
    while stack:
        h = stack.pop()
        extended = False
        for t in involutions:
            if t in h or any(t * x != x * t for x in h):
                continue
            extended = True
            h2 = h | frozenset(t * x for x in h)
            if h2 not in seen:
                seen.add(h2)
                stack.append(h2)
        if not extended:
            maximal.append(h)
    return maximal


@dataclass(frozen=True)
class GroupInvariants:
    order: int
    exponent: int
    center_structure: Tuple[int, ...]
    max_elem_abelian_class_count: int
    abelian: bool
    cyclic: bool


def group_invariants(group: FiniteGroup) -> GroupInvariants:
    """Order, exponent, center invariant factors and the number of conjugacy classes
    of maximal elementary abelian 2-subgroups."""
    maximal = _maximal_elementary_abelian(group)
    classes = set()
    for h in maximal:
        orbit = frozenset(frozenset(g * x * g.inverse() for x in h) for g in group.elements)
        classes.add(orbit)
    return GroupInvariants(
        order=group.order,
        exponent=group.exponent(),
        center_structure=abelian_invariants(group.center()),
        max_elem_abelian_class_count=len(classes),
        abelian=group.is_abelian(),
        cyclic=group.is_cyclic(),
    )
