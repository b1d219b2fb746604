"""Monomial ideals in k[x1..xd], stored as exponent-vector data.

A monomial is its exponent tuple; an ideal is the set of its minimal
generators, kept divisibility-minimal and lexicographically sorted so that
equal ideals are structurally equal. The zero ideal has no generators; the
unit ideal's single generator is 1 (the all-zero exponent vector).

Values are immutable once constructed; all operations return fresh objects
and are pure, so everything here is safe to share across threads.

Variable indices in the public API are 1-based (x1..xd), matching the text
grammar; column positions in exponent arrays are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import IdealSyntaxError, UnitIdealError

# Boxes with at most this many cells use the grid route for minimalization
# and intersection; larger problems fall back to pairwise comparisons.
_BOX_CELL_CAP = 1 << 22

# Direct lattice enumeration for Hilbert counting is used below this many
# degree-t points; beyond it, inclusion-exclusion with lcm pruning runs.
_HILBERT_ENUM_CAP = 200_000

# Face enumeration (radical complexes, Krull dimension) works on bitmasks.
MAX_VARIABLES = 20


class Monomial:
    """A monomial x^a, stored as its exponent tuple. Immutable."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if not exps:
            raise ValueError("a monomial needs at least one variable")
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "exponents", exps)

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    @property
    def d(self) -> int:
        return len(self.exponents)

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def divides(self, other: "Monomial") -> bool:
        if other.d != self.d:
            raise ValueError("monomials from different rings")
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        if other.d != self.d:
            raise ValueError("monomials from different rings")
        return Monomial(a + b for a, b in zip(self.exponents, other.exponents))

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash(self.exponents)

    def __str__(self) -> str:
        parts = []
        for j, e in enumerate(self.exponents, start=1):
            if e == 1:
                parts.append(f"x{j}")
            elif e > 1:
                parts.append(f"x{j}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"Monomial({self.exponents!r})"


def _as_rows(d: int, gens) -> np.ndarray:
    rows = []
    for g in gens:
        exps = g.exponents if isinstance(g, Monomial) else tuple(int(e) for e in g)
        if len(exps) != d:
            raise ValueError(f"generator has {len(exps)} exponents, expected {d}")
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be non-negative")
        rows.append(exps)
    if not rows:
        return np.zeros((0, d), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64)


def _minimal_rows(exps: np.ndarray) -> np.ndarray:
    """Divisibility-minimal rows, deduplicated, in ascending lex order."""
    if exps.shape[0] == 0:
        return exps
    exps = np.unique(exps, axis=0)
    m, d = exps.shape
    if m == 1:
        return exps
    maxs = exps.max(axis=0)
    cells = int(np.prod(maxs + 1, dtype=np.int64))
    if m >= 16 and cells <= _BOX_CELL_CAP:
        box = np.zeros(tuple(maxs + 1), dtype=np.uint8)
        box[tuple(exps.T)] = 1
        _kernels.upward_close(box)
        mins = _kernels.minimal_cells(box)
        return np.argwhere(mins != 0).astype(np.int64)
    keep = _kernels.pairwise_minimal(exps)
    return exps[keep]


class MonomialIdeal:
    """A monomial ideal, canonically presented by its minimal generators.

    The generator matrix is frozen after construction; equal ideals have
    byte-identical matrices, so equality and hashing are structural.
    """

    __slots__ = ("d", "_exps")

    def __init__(self, d: int, gens: Iterable = ()):
        if d < 1:
            raise ValueError("need at least one variable")
        exps = _minimal_rows(_as_rows(d, gens))
        exps.setflags(write=False)
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "_exps", exps)

    def __setattr__(self, name, value):
        raise AttributeError("MonomialIdeal is immutable")

    @classmethod
    def _from_minimal_rows(cls, d: int, exps: np.ndarray) -> "MonomialIdeal":
        """Trusted constructor: rows already minimal and lex-sorted."""
        obj = object.__new__(cls)
        exps = np.ascontiguousarray(exps, dtype=np.int64)
        exps.setflags(write=False)
        object.__setattr__(obj, "d", int(d))
        object.__setattr__(obj, "_exps", exps)
        return obj

    @property
    def gens(self) -> tuple[Monomial, ...]:
        return tuple(Monomial(row) for row in self._exps)

    @property
    def num_gens(self) -> int:
        return int(self._exps.shape[0])

    @property
    def exponent_matrix(self) -> np.ndarray:
        """Read-only (num_gens, d) int64 view of the minimal generators."""
        view = self._exps.view()
        view.setflags(write=False)
        return view

    @property
    def is_zero(self) -> bool:
        return self._exps.shape[0] == 0

    @property
    def is_unit(self) -> bool:
        return self._exps.shape[0] == 1 and not self._exps.any()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonomialIdeal)
            and self.d == other.d
            and self._exps.shape == other._exps.shape
            and bool(np.array_equal(self._exps, other._exps))
        )

    def __hash__(self) -> int:
        return hash((self.d, self._exps.shape, self._exps.tobytes()))

    def __contains__(self, mono) -> bool:
        return contains(self, mono)

    def generators_str(self) -> str:
        """Generators in the text-grammar form; '0' and '1' for the extremes."""
        if self.is_zero:
            return "0"
        if self.is_unit:
            return "1"
        return ", ".join(str(g) for g in self.gens)

    def __repr__(self) -> str:
        return f"MonomialIdeal(d={self.d}, <{self.generators_str()}>)"


@dataclass(frozen=True)
class VarDegreeBounds:
    """Per-variable maxima of the minimal generator exponents."""

    rho: tuple[int, ...]


def parse_ideal(text: str, d: int) -> MonomialIdeal:
    """Parse comma/newline-separated generators into an ideal.

    Each generator is a '*'-separated product of factors ``x<i>`` or
    ``x<i>^<e>`` with 1 <= i <= d and e >= 1. The whole input may instead be
    ``0`` (zero ideal), ``1`` (unit ideal), or empty (zero ideal). Spaces
    and tabs are ignored everywhere. Errors carry the offending position.
    """
    if d < 1:
        raise ValueError("need at least one variable")
    stripped = text.strip()
    if stripped in ("", "0"):
        return MonomialIdeal(d)
    if stripped == "1":
        return MonomialIdeal(d, [(0,) * d])

    n = len(text)
    pos = 0

    def skip_blank(include_newlines: bool) -> None:
        nonlocal pos
        chars = " \t\r\n" if include_newlines else " \t"
        while pos < n and text[pos] in chars:
            pos += 1

    def parse_int(kind: str) -> tuple[int, int]:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise IdealSyntaxError(f"expected {kind}", start)
        return int(text[start:pos]), start

    def parse_term() -> list[int]:
        nonlocal pos
        exps = [0] * d
        while True:
            skip_blank(False)
            if pos >= n or text[pos] != "x":
                raise IdealSyntaxError("expected a variable like x1", pos)
            pos += 1
            idx, at = parse_int("variable index")
            if not 1 <= idx <= d:
                raise IdealSyntaxError(
                    f"variable index {idx} out of range 1..{d}", at
                )
            e = 1
            skip_blank(False)
            if pos < n and text[pos] == "^":
                pos += 1
                skip_blank(False)
                e, at_e = parse_int("exponent")
                if e < 1:
                    raise IdealSyntaxError("exponent must be positive", at_e)
            exps[idx - 1] += e
            skip_blank(False)
            if pos < n and text[pos] == "*":
                pos += 1
                continue
            return exps

    gens = []
    while True:
        skip_blank(True)
        if pos >= n:
            break
        gens.append(parse_term())
        skip_blank(False)
        if pos >= n:
            break
        ch = text[pos]
        if ch == ",":
            pos += 1
            skip_blank(True)
            if pos >= n:
                raise IdealSyntaxError("expected a generator after ','", pos)
        elif ch not in "\r\n":
            raise IdealSyntaxError(f"unexpected character {ch!r}", pos)
    return MonomialIdeal(d, gens)


def minimalize(gens: Iterable[Monomial]) -> set[Monomial]:
    """Divisibility-minimal subset generating the same ideal."""
    monos = list(gens)
    if not monos:
        return set()
    d = monos[0].d
    rows = _minimal_rows(_as_rows(d, monos))
    return {Monomial(row) for row in rows}


def contains(I: MonomialIdeal, mono) -> bool:
    """Whether x^a lies in I, i.e. some minimal generator divides it."""
    exps = mono.exponents if isinstance(mono, Monomial) else tuple(int(e) for e in mono)
    if len(exps) != I.d:
        raise ValueError("monomial from a different ring")
    if any(e < 0 for e in exps):
        raise ValueError("exponents must be non-negative")
    if I.is_zero:
        return False
    return bool(np.all(I._exps <= np.asarray(exps, dtype=np.int64), axis=1).any())


def project(I: MonomialIdeal, F: Iterable[int]) -> MonomialIdeal:
    """Image of I under x_j -> 1 for j in F (1-based), reminimalized.

    Monomial membership after projection tests divisibility away from F, so
    this is the localization-style restriction used by degree complexes.
    """
    cols = _validate_vars(I.d, F)
    if not cols or I.is_zero:
        return I
    exps = I._exps.copy()
    exps[:, cols] = 0
    return MonomialIdeal(I.d, exps)


def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """I^n for n >= 1, minimalizing after every multiplication."""
    if n < 1:
        raise ValueError("power requires n >= 1")
    if n == 1 or I.is_zero or I.is_unit:
        return I
    result = I
    for _ in range(n - 1):
        cand = (result._exps[:, None, :] + I._exps[None, :, :]).reshape(-1, I.d)
        result = MonomialIdeal(I.d, cand)
    return result


def _intersect_many(ideals: list[MonomialIdeal]) -> MonomialIdeal:
    d = ideals[0].d
    if any(J.is_zero for J in ideals):
        return MonomialIdeal(d)
    maxs = np.zeros(d, dtype=np.int64)
    for J in ideals:
        maxs = np.maximum(maxs, J._exps.max(axis=0))
    cells = int(np.prod(maxs + 1, dtype=np.int64))
    if cells <= _BOX_CELL_CAP:
        acc = None
        for J in ideals:
            box = np.zeros(tuple(maxs + 1), dtype=np.uint8)
            box[tuple(J._exps.T)] = 1
            _kernels.upward_close(box)
            acc = box if acc is None else acc * box
        rows = np.argwhere(_kernels.minimal_cells(acc) != 0).astype(np.int64)
        return MonomialIdeal._from_minimal_rows(d, rows)
    cur = ideals[0]._exps
    for J in ideals[1:]:
        cand = np.maximum(cur[:, None, :], J._exps[None, :, :]).reshape(-1, d)
        cur = _minimal_rows(cand)
    return MonomialIdeal._from_minimal_rows(d, cur)


def saturate_irrelevant(I: MonomialIdeal) -> MonomialIdeal:
    """Saturation (I : m^infinity) with respect to m = (x1, ..., xd).

    Dividing out all powers of the single variable x_j is exactly
    ``project(I, {j})``, and saturating by m is the intersection of those d
    single-variable saturations: a monomial times every high power of m lands
    in I iff it does so along each variable direction separately.
    """
    if I.is_zero or I.is_unit:
        return I
    parts = [project(I, (j,)) for j in range(1, I.d + 1)]
    return _intersect_many(parts)


def _saturate_by_colon_fixpoint(I: MonomialIdeal) -> MonomialIdeal:
    """Reference saturation: iterate J -> (J : m) until it stabilizes.

    (J : x_j) decrements the j-th exponent of every generator (floored at 0)
    and (J : m) intersects those over j. Kept as an oracle for the one-shot
    projection route used by saturate_irrelevant.
    """
    if I.is_zero or I.is_unit:
        return I
    cur = I
    while True:
        cols = []
        for j in range(cur.d):
            exps = cur._exps.copy()
            exps[:, j] = np.maximum(exps[:, j] - 1, 0)
            cols.append(MonomialIdeal(cur.d, exps))
        nxt = _intersect_many(cols)
        if nxt == cur:
            return cur
        cur = nxt


def radical(I: MonomialIdeal) -> MonomialIdeal:
    """The radical: generators with every positive exponent lowered to 1."""
    if I.is_zero:
        return I
    return MonomialIdeal(I.d, (I._exps > 0).astype(np.int64))


def var_degree_bounds(I: MonomialIdeal) -> VarDegreeBounds:
    """Componentwise maxima rho of the minimal generator exponents."""
    if I.is_zero:
        return VarDegreeBounds(rho=(0,) * I.d)
    return VarDegreeBounds(rho=tuple(int(x) for x in I._exps.max(axis=0)))


def _compositions(t: int, d: int):
    if d == 1:
        yield (t,)
        return
    for first in range(t + 1):
        for rest in _compositions(t - first, d - 1):
            yield (first,) + rest


def _hilbert_enumerate(I: MonomialIdeal, t: int) -> int:
    exps = I._exps
    count = 0
    for comp in _compositions(t, I.d):
        b = np.asarray(comp, dtype=np.int64)
        if not np.all(exps <= b, axis=1).any():
            count += 1
    return count


def _hilbert_inclusion_exclusion(I: MonomialIdeal, t: int) -> int:
    d = I.d
    order = np.argsort(I._exps.sum(axis=1), kind="stable")
    exps = I._exps[order]
    m = exps.shape[0]
    total = 0

    def rec(start: int, lcm: np.ndarray, sign: int) -> None:
        nonlocal total
        total += sign * math.comb(t - int(lcm.sum()) + d - 1, d - 1)
        for j in range(start, m):
            new = np.maximum(lcm, exps[j])
            if int(new.sum()) <= t:
                rec(j + 1, new, -sign)

    rec(0, np.zeros(d, dtype=np.int64), 1)
    return total


def hilbert_function(I: MonomialIdeal, t: int) -> int:
    """Number of monomials of total degree t outside I (a k-basis of (R/I)_t).

    Two routes: direct lattice enumeration when the degree-t slice is small,
    inclusion-exclusion over generator subsets with lcm-degree pruning
    otherwise. They agree; the split is purely about cost.
    """
    if I.is_unit:
        raise UnitIdealError("R/I is the zero ring; Hilbert values are undefined")
    if t < 0:
        return 0
    if I.is_zero:
        return math.comb(t + I.d - 1, I.d - 1)
    if math.comb(t + I.d - 1, I.d - 1) <= _HILBERT_ENUM_CAP:
        return _hilbert_enumerate(I, t)
    return _hilbert_inclusion_exclusion(I, t)


def krull_dimension(I: MonomialIdeal) -> int:
    """dim R/I: the size of the largest subset of variables supporting no
    generator of the radical (the largest face of the radical's complex)."""
    if I.is_unit:
        raise UnitIdealError("R/I is the zero ring; its dimension is undefined")
    if I.d > MAX_VARIABLES:
        raise ValueError(f"face enumeration is capped at d <= {MAX_VARIABLES}")
    if I.is_zero:
        return I.d
    supports = [int(np.sum(1 << np.nonzero(row)[0])) for row in I._exps]
    masks = np.arange(1 << I.d, dtype=np.int64)
    nonface = np.zeros(masks.shape, dtype=bool)
    for s in supports:
        nonface |= (masks & s) == s
    faces = masks[~nonface]
    sizes = np.zeros(faces.shape, dtype=np.int64)
    for k in range(I.d):
        sizes += (faces >> k) & 1
    return int(sizes.max())


def membership_box(I: MonomialIdeal) -> np.ndarray:
    """Up-closed 0/1 box of shape rho+1: box[b] == 1 iff x^b in I.

    Membership of arbitrary exponent vectors reduces to this box by clamping
    each coordinate at rho_j, since no generator exceeds rho_j there.
    """
    rho = np.asarray(var_degree_bounds(I).rho, dtype=np.int64)
    box = np.zeros(tuple(rho + 1), dtype=np.uint8)
    if not I.is_zero:
        box[tuple(I._exps.T)] = 1
        _kernels.upward_close(box)
    return box


def _validate_vars(d: int, F: Iterable[int]) -> list[int]:
    cols = []
    for j in F:
        j = int(j)
        if not 1 <= j <= d:
            raise ValueError(f"variable index {j} out of range 1..{d}")
        cols.append(j - 1)
    return sorted(set(cols))
