"""Kalck-Karmazyn algebras ``K(r, a)`` as finite-dimensional monomial algebras.

``K(r, a)`` is the free algebra on ``z_1..z_l`` modulo monomial relations read
off the dual continued fraction ``r/(r-a) = [c_1, ..., c_l]``:

* ``z_j^{c_j}`` for every ``j``;
* ``z_j z_k`` for ``j < k``;
* ``z_j^{c_j-1} z_{j-1}^{c_{j-1}-2} ... z_{k+1}^{c_{k+1}-2} z_k^{c_k-1}`` for ``j > k``.

A basis is given by the words avoiding every relation as a factor, and there
are exactly ``r`` of them.  Words are stored run-length encoded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Optional, Sequence

from .hjfrac import SingularityType, as_type, dual_fraction


class KKInconsistency(RuntimeError):
    """The word enumeration does not produce exactly ``r`` basis words."""


@total_ordering
@dataclass(frozen=True)
class Word:
    """A monomial as runs ``((generator, exponent), ...)``; generators are 1-based."""

    runs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "Word":
        runs: list[list[int]] = []
        for g in letters:
            if g < 1:
                raise ValueError("generators are numbered from 1")
            if runs and runs[-1][0] == g:
                runs[-1][1] += 1
            else:
                runs.append([g, 1])
        return cls(tuple((g, e) for g, e in runs))

    @classmethod
    def from_runs(cls, runs: Iterable[tuple[int, int]]) -> "Word":
        return cls.from_letters(g for g, e in runs for _ in range(e))

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(g for g, e in self.runs for _ in range(e))

    def __len__(self) -> int:
        return sum(e for _, e in self.runs)

    def __bool__(self) -> bool:
        return bool(self.runs)

    def __mul__(self, other: "Word") -> "Word":
        if not self.runs or not other.runs:
            return self if other.runs == () else other
        a, b = self.runs[-1], other.runs[0]
        if a[0] == b[0]:
            return Word(self.runs[:-1] + ((a[0], a[1] + b[1]),) + other.runs[1:])
        return Word(self.runs + other.runs)

    def __lt__(self, other: "Word") -> bool:
        # shortlex
        return (len(self), self.letters) < (len(other), other.letters)

    def reversed_relabeled(self, l: int) -> "Word":
        """Reverse the word and send ``z_j`` to ``z_{l+1-j}``."""
        return Word(tuple((l + 1 - g, e) for g, e in reversed(self.runs)))

    def endswith(self, factor: "Word") -> bool:
        F, W = factor.runs, self.runs
        k = len(F)
        if k == 0:
            return True
        if k > len(W):
            return False
        if F[0][0] != W[-k][0] or F[0][1] > W[-k][1]:
            return False
        if k == 1:
            return True
        return F[-1] == W[-1] and W[len(W) - k + 1:-1] == F[1:-1]

    def contains(self, factor: "Word") -> bool:
        """Whether ``factor`` occurs as a contiguous subword."""
        F, W = factor.runs, self.runs
        k = len(F)
        if k == 0:
            return True
        if k == 1:
            g, e = F[0]
            return any(h == g and f >= e for h, f in W)
        for t in range(len(W) - k + 1):
            if W[t][0] != F[0][0] or W[t][1] < F[0][1]:
                continue
            last = W[t + k - 1]
            if last[0] != F[-1][0] or last[1] < F[-1][1]:
                continue
            if all(W[t + s] == F[s] for s in range(1, k - 1)):
                return True
        return False

    def render(self, single: bool = False) -> str:
        if not self.runs:
            return "1"
        parts = []
        for g, e in self.runs:
            name = "z" if single else f"z{g}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        return self.render()


ONE = Word()


@dataclass(frozen=True)
class KKPresentation:
    l: int
    cs: tuple[int, ...]
    forbidden: tuple[Word, ...]
    source_type: SingularityType

    def __hash__(self) -> int:
        # the relation list is determined by cs except for custom presentations,
        # which then only collide
        return hash((self.l, self.cs, self.source_type))

    @property
    def dim(self) -> int:
        return self.source_type.r

    def render(self) -> str:
        """Presentation as a string, e.g. ``k<z1,z2>/(z1^4, z2^2, z1*z2, z2*z1^3)``."""
        if self.l == 0:
            return "k"
        if self.l == 1:
            return f"k[z]/z^{self.cs[0]}"
        if all(c == 2 for c in self.cs):
            gens = ",".join(f"z{j}" for j in range(1, self.l + 1))
            return f"k[{gens}]/({gens})^2"
        gens = ",".join(f"z{j}" for j in range(1, self.l + 1))
        return f"k<{gens}>/({', '.join(w.render() for w in self.forbidden)})"

    def relations(self) -> list[str]:
        return [w.render(single=self.l == 1) for w in self.forbidden]

    def to_json(self) -> dict:
        return {
            "generators": self.l,
            "cs": list(self.cs),
            "relations": self.relations(),
            "dim": self.dim,
            "presentation": self.render(),
        }


def forbidden_words(cs: Sequence[int]) -> list[Word]:
    """The relation monomials for dual digits ``cs``, in a fixed order."""
    l = len(cs)
    out = [Word(((j, cs[j - 1]),)) for j in range(1, l + 1)]
    out += [Word(((j, 1), (k, 1))) for j in range(1, l + 1) for k in range(j + 1, l + 1)]
    for j in range(2, l + 1):
        for k in range(j - 1, 0, -1):
            runs = [(j, cs[j - 1] - 1)]
            runs += [(q, cs[q - 1] - 2) for q in range(j - 1, k, -1)]
            runs.append((k, cs[k - 1] - 1))
            out.append(Word.from_runs((g, e) for g, e in runs if e > 0))
    return out


def kk_presentation(t) -> KKPresentation:
    t = as_type(t)
    if t.r == 1:
        return KKPresentation(0, (), (), t)
    cs = tuple(dual_fraction(t))
    return KKPresentation(len(cs), cs, tuple(forbidden_words(cs)), t)


def is_basis_word(p: KKPresentation, w: Word) -> bool:
    return all(g <= p.l for g, _ in w.runs) and not any(w.contains(f) for f in p.forbidden)


def enumerate_words(p: KKPresentation, limit: int) -> list[Word]:
    """Breadth-first list of factor-free words, stopping once ``limit`` is exceeded."""
    # a one-letter extension of a factor-free word can only create a
    # forbidden factor as a suffix; index relations by their last two runs
    powers: dict[int, int] = {}
    tails: dict[tuple, list[Word]] = {}
    for f in p.forbidden:
        if len(f.runs) == 1:
            g, e = f.runs[0]
            powers[g] = min(e, powers.get(g, e))
        elif f.runs:
            tails.setdefault((f.runs[-1], f.runs[-2][0]), []).append(f)
    letters = [Word(((g, 1),)) for g in range(1, p.l + 1)]
    found = [ONE]
    frontier = [ONE]
    while frontier and len(found) <= limit:
        nxt = []
        for w in frontier:
            for g, x in enumerate(letters, 1):
                v = w * x
                last = v.runs[-1]
                if last[1] >= powers.get(g, last[1] + 1):
                    continue
                if len(v.runs) > 1 and any(v.endswith(f) for f in tails.get((last, v.runs[-2][0]), ())):
                    continue
                nxt.append(v)
        found.extend(nxt)
        frontier = nxt
    return sorted(found)


def monomial_basis(p: KKPresentation) -> list[Word]:
    """Shortlex-ordered word basis; raises :class:`KKInconsistency` unless it has ``r`` elements."""
    return list(_basis_cached(p))


_CACHE: dict[KKPresentation, tuple[Word, ...]] = {}
_SETS: dict[KKPresentation, frozenset[Word]] = {}


def _basis_cached(p: KKPresentation) -> tuple[Word, ...]:
    if p not in _CACHE:
        words = enumerate_words(p, p.dim)
        if len(words) != p.dim:
            got = f"at least {len(words)}" if len(words) > p.dim else str(len(words))
            r, a = p.source_type
            raise KKInconsistency(f"relations for type ({r},{a}) give {got} basis words, expected {r}")
        _CACHE[p] = tuple(words)
        _SETS[p] = frozenset(words)
    return _CACHE[p]


def multiply(p: KKPresentation, w1: Word, w2: Word) -> Optional[Word]:
    """Product of two basis words; ``None`` stands for zero."""
    _basis_cached(p)
    basis = _SETS[p]
    for w in (w1, w2):
        if w not in basis:
            raise ValueError(f"{w} is not a basis word")
    v = w1 * w2
    return v if v in basis else None


def is_commutative(p: KKPresentation) -> bool:
    basis = _basis_cached(p)
    members = _SETS[p]
    for i, u in enumerate(basis):
        for v in basis[i + 1:]:
            uv, vu = u * v, v * u
            if uv != vu and (uv in members or vu in members):
                return False
    return True


def opposite_check(t) -> bool:
    """Reversal with relabelling maps the basis of ``K(r,a)`` onto that of ``K(r,a')``."""
    t = as_type(t)
    if t.r == 1:
        raise ValueError("opposite check needs a singular point")
    from .hjfrac import inverse_type

    p = kk_presentation(t)
    q = kk_presentation(inverse_type(t))
    if p.l != q.l:
        return False
    image = {w.reversed_relabeled(p.l) for w in monomial_basis(p)}
    return image == set(monomial_basis(q))


def custom_presentation(t, forbidden: Iterable[Sequence[tuple[int, int]]]) -> KKPresentation:
    """Presentation for type ``t`` with an explicit relation list given as runs.

    Used to test alternative relation tables against the dimension guard.
    """
    t = as_type(t)
    cs = tuple(dual_fraction(t)) if t.r > 1 else ()
    return KKPresentation(len(cs), cs, tuple(Word.from_runs(f) for f in forbidden), t)
