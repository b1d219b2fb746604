"""Degree complexes and graded local cohomology tables for monomial quotients.

For a ∈ ℤ^d the graded piece H^i_m(R/I)_a has dimension
dim H~_{i-|G_a|-1}(Δ_a(I)), where G_a is the set of negative coordinates,
a⁺ zeroes them out, and Δ_a(I) consists of the faces F ⊆ [d]∖G_a with
x^{a⁺} outside the projection I_{F∪G_a}. The complex only depends on a
through (G_a, a⁺ clamped at the per-variable generator bounds rho), because
every membership test compares a⁺_j against generator exponents that never
exceed rho_j. That makes the whole module a finite table of degree patterns,
which is what this module computes.

The pattern scan works on an upward-closed membership box: a face probe is
one array lookup at the point with coordinates rho_j on F ∪ G and a⁺_j
elsewhere. Candidate faces are restricted to faces of Δ(I), since every
degree complex is a subcomplex of it.

Pattern evaluations share no mutable state and the assembled table is
independent of evaluation order; everything here is pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import InternalConsistencyError, ResourceCapError, UnitIdealError
from .monomial_core import (
    MonomialIdeal,
    krull_dimension,
    membership_box,
    radical,
    var_degree_bounds,
)
from .simplicial import (
    SimplicialComplex,
    _validate_char,
    _validate_d,
    homology_dim_single,
    stanley_reisner_complex,
)

DEFAULT_PATTERN_CAP = 10_000_000


@dataclass(frozen=True)
class ExtendedDegree:
    """An integer degree extended by +inf (zero module) and -inf (module
    with unbounded negative support, i.e. not finite length)."""

    value: int | float

    def __post_init__(self):
        v = self.value
        if isinstance(v, float) and not math.isinf(v):
            raise ValueError("non-integer finite degree")

    @classmethod
    def finite(cls, v: int) -> "ExtendedDegree":
        return cls(int(v))

    @classmethod
    def pos_inf(cls) -> "ExtendedDegree":
        return cls(math.inf)

    @classmethod
    def neg_inf(cls) -> "ExtendedDegree":
        return cls(-math.inf)

    @property
    def is_finite(self) -> bool:
        return not isinstance(self.value, float)

    def __str__(self) -> str:
        if self.is_finite:
            return str(self.value)
        return "inf" if self.value > 0 else "-inf"


@dataclass(frozen=True)
class DegreePattern:
    """Canonical representative of a ℤ^d-degree class: clamped a⁺ plus the
    negative-support set G (1-based, sorted). a_plus is 0 on G."""

    a_plus: tuple[int, ...]
    G: tuple[int, ...] = ()
    clamped: bool = True

    def __post_init__(self):
        if any(self.a_plus[g - 1] != 0 for g in self.G):
            raise ValueError("a_plus must vanish on G")

    @property
    def total_degree(self) -> int:
        """Total degree |a| of the representative (coordinates -1 on G)."""
        return sum(self.a_plus) - len(self.G)


@dataclass(frozen=True, eq=False)
class CohomologyTable:
    """All nonzero graded dimensions of H^i_m(R/I) over one field.

    ``entries`` maps degree patterns to positive dimensions; a pattern with
    G != 0 stands for infinitely many ℤ^d-degrees (any negative magnitudes
    on G), so ``finite_length`` holds exactly when every stored pattern has
    empty G. ``rho`` records the clamping bounds the scan used; it is an
    annotation derived from the ideal, not part of table identity.
    """

    i: int
    char: int
    entries: dict[DegreePattern, int]
    rho: tuple[int, ...]
    finite_length: bool

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CohomologyTable)
            and self.i == other.i
            and self.char == other.char
            and self.finite_length == other.finite_length
            and self.entries == other.entries
        )

    def sorted_entries(self) -> list[tuple[DegreePattern, int]]:
        return sorted(
            self.entries.items(), key=lambda kv: (len(kv[0].G), kv[0].G, kv[0].a_plus)
        )

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "char": self.char,
            "finite_length": self.finite_length,
            "entries": [
                {"G": list(p.G), "a_plus": list(p.a_plus), "dim": dim}
                for p, dim in self.sorted_entries()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "CohomologyTable":
        entries = {
            DegreePattern(
                a_plus=tuple(int(x) for x in e["a_plus"]),
                G=tuple(int(g) for g in e["G"]),
            ): int(e["dim"])
            for e in data["entries"]
        }
        return cls(
            i=int(data["i"]),
            char=int(data["char"]),
            entries=entries,
            rho=(),
            finite_length=bool(data["finite_length"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "CohomologyTable":
        return cls.from_dict(json.loads(text))


def _require_not_unit(I: MonomialIdeal) -> None:
    if I.is_unit:
        raise UnitIdealError("R/I is the zero ring; no cohomology to compute")


def _require_module(I: MonomialIdeal) -> None:
    _require_not_unit(I)
    if I.is_zero:
        raise ValueError(
            "cohomology tables require a nonzero ideal (R/0 is the whole ring)"
        )


def _validate_i(d: int, i: int) -> int:
    i = int(i)
    if not 0 <= i <= d:
        raise ValueError(f"cohomological degree i={i} out of range 0..{d}")
    return i


def _split_degree(d: int, a: Sequence[int]) -> tuple[np.ndarray, list[int]]:
    a_arr = np.asarray([int(x) for x in a], dtype=np.int64)
    if a_arr.shape != (d,):
        raise ValueError(f"degree vector must have length {d}")
    g_cols = [j for j in range(d) if a_arr[j] < 0]
    return np.maximum(a_arr, 0), g_cols


def degree_complex(I: MonomialIdeal, a: Sequence[int]) -> SimplicialComplex:
    """Δ_a(I): faces F ⊆ [d]∖G_a with x^{a⁺} not in project(I, F ∪ G_a).

    The membership predicate only asks whether some generator divides
    x^{a⁺} away from F ∪ G_a, so each face test is a bitmask check against
    the per-generator set of coordinates where the generator exceeds a⁺.
    Void when the empty face itself fails.
    """
    _require_not_unit(I)
    d = _validate_d(I.d)
    a_plus, g_cols = _split_degree(d, a)
    gmask = 0
    for j in g_cols:
        gmask |= 1 << j
    free_mask = ((1 << d) - 1) ^ gmask
    # generator g rules out face sets S ⊇ {j : g_j > a⁺_j}
    bads = []
    for row in I.exponent_matrix:
        bad = 0
        for j in range(d):
            if row[j] > a_plus[j]:
                bad |= 1 << j
        bads.append(bad)
    faces = []
    s = free_mask
    while True:
        full = s | gmask
        if all(bad & ~full for bad in bads):
            faces.append(s)
        if s == 0:
            break
        s = (s - 1) & free_mask
    if not faces:
        return SimplicialComplex(d, ())
    keep = [m for m in faces if not any(m != f and (m & f) == m for f in faces)]
    return SimplicialComplex(d, keep)


def cohomology_dim_at(
    I: MonomialIdeal, i: int, a: Sequence[int], char: int = 0
) -> int:
    """dim_k H^i_m(R/I)_a = dim H~_{i-|G_a|-1}(Δ_a(I), k); 0 when the
    homology degree drops below -1."""
    _require_not_unit(I)
    d = _validate_d(I.d)
    i = _validate_i(d, i)
    char = _validate_char(char)
    _, g_cols = _split_degree(d, a)
    q = i - len(g_cols) - 1
    if q < -1:
        return 0
    K = degree_complex(I, a)
    if K.is_void:
        return 0
    return homology_dim_single(K.face_masks(), q, char)


def _pattern_count(rho: Sequence[int], d: int, max_g: int) -> int:
    """Number of scanned patterns: sum over |G| <= max_g of the free box
    volume prod_{j not in G} (rho_j + 1), via a subset-size DP."""
    coeffs = [1]
    for j in range(d):
        nxt = [0] * (len(coeffs) + 1)
        for g, val in enumerate(coeffs):
            nxt[g] += val * (rho[j] + 1)
            nxt[g + 1] += val
        coeffs = nxt
    return sum(coeffs[: max_g + 1])


def cohomology_table(
    I: MonomialIdeal,
    i: int,
    char: int = 0,
    pattern_cap: int = DEFAULT_PATTERN_CAP,
) -> CohomologyTable:
    """Scan every degree pattern and collect the nonzero dimensions.

    Subsets G are visited by increasing size then lexicographic order, and
    for each G the clamped a⁺ box is swept in C order. Sizes |G| > i are
    skipped outright: their homology degree i - |G| - 1 is below -1, so
    they contribute nothing and the stored table is unchanged.

    Raises ResourceCapError when the pattern count would exceed
    ``pattern_cap``, and InternalConsistencyError if a nonzero entry sits on
    the clamping boundary (impossible for correct data: local cohomology is
    Artinian, and such a pattern would repeat in unboundedly high degrees).
    """
    _require_module(I)
    d = _validate_d(I.d)
    i = _validate_i(d, i)
    char = _validate_char(char)
    rho = var_degree_bounds(I).rho
    max_g = min(i, d)
    npatterns = _pattern_count(rho, d, max_g)
    if npatterns > pattern_cap:
        raise ResourceCapError(
            f"degree-pattern count {npatterns} for i={i} exceeds the cap "
            f"{pattern_cap}",
            required=npatterns,
            cap=pattern_cap,
        )
    box = membership_box(I)
    all_faces = sorted(stanley_reisner_complex(I).face_masks())
    entries: dict[DegreePattern, int] = {}
    memo: dict[tuple, int] = {}
    for g_size in range(0, max_g + 1):
        q = i - g_size - 1
        for g_combo in combinations(range(d), g_size):
            gmask = 0
            for j in g_combo:
                gmask |= 1 << j
            free_axes = [j for j in range(d) if not gmask >> j & 1]
            # cells beyond dimension q+1 cannot affect H~_q
            cand = [
                f
                for f in all_faces
                if not f & gmask and f.bit_count() <= q + 2
            ]
            face_axes = [
                tuple(j for j in range(d) if f >> j & 1) for f in cand
            ]
            masks = _kernels.scan_face_masks(box, free_axes, list(g_combo), face_axes)
            uniq, inverse = np.unique(masks, axis=0, return_inverse=True)
            inverse = inverse.reshape(-1)
            dims_u = np.zeros(uniq.shape[0], dtype=np.int64)
            for u in range(uniq.shape[0]):
                present = [
                    cand[f]
                    for f in range(len(cand))
                    if uniq[u, f >> 6] >> np.uint64(f & 63) & np.uint64(1)
                ]
                key = (q, tuple(present))
                if key not in memo:
                    memo[key] = homology_dim_single(present, q, char)
                dims_u[u] = memo[key]
            dims_flat = dims_u[inverse]
            hits = np.nonzero(dims_flat)[0]
            if hits.size == 0:
                continue
            sub_shape = tuple(box.shape[j] for j in free_axes)
            coords = np.unravel_index(hits, sub_shape) if free_axes else ()
            for t, flat_idx in enumerate(hits):
                a_plus = [0] * d
                for ax_pos, j in enumerate(free_axes):
                    a_plus[j] = int(coords[ax_pos][t])
                pat = DegreePattern(
                    a_plus=tuple(a_plus),
                    G=tuple(j + 1 for j in g_combo),
                )
                entries[pat] = int(dims_flat[flat_idx])
    for pat in entries:
        g_set = set(pat.G)
        for j in range(d):
            if j + 1 in g_set:
                continue
            if rho[j] >= 1 and pat.a_plus[j] == rho[j]:
                raise InternalConsistencyError(
                    f"nonzero entry at the clamping boundary: pattern "
                    f"{pat} with rho={rho} (i={i}); local cohomology is "
                    f"Artinian, so this indicates a bug"
                )
    finite_length = all(not p.G for p in entries)
    return CohomologyTable(
        i=i, char=char, entries=entries, rho=tuple(rho), finite_length=finite_length
    )


def is_finite_length(
    I: MonomialIdeal, i: int, char: int = 0, pattern_cap: int = DEFAULT_PATTERN_CAP
) -> bool:
    """True when H^i_m(R/I) has finite length (no pattern with G != empty)."""
    return cohomology_table(I, i, char, pattern_cap).finite_length


def table_indeg(table: CohomologyTable) -> ExtendedDegree:
    """Least total degree with a nonzero graded piece, from a computed table."""
    if not table.finite_length:
        return ExtendedDegree.neg_inf()
    if not table.entries:
        return ExtendedDegree.pos_inf()
    return ExtendedDegree.finite(min(sum(p.a_plus) for p in table.entries))


def table_topdeg(table: CohomologyTable) -> ExtendedDegree:
    """Greatest total degree with a nonzero graded piece.

    Within a pattern class the total degree is maximized at coordinates -1
    on G, hence the |a⁺| - |G| formula; the Artinian bound keeps it finite.
    """
    if not table.entries:
        return ExtendedDegree.neg_inf()
    return ExtendedDegree.finite(max(p.total_degree for p in table.entries))


def indeg(
    I: MonomialIdeal, i: int, char: int = 0, pattern_cap: int = DEFAULT_PATTERN_CAP
) -> ExtendedDegree:
    """indeg H^i_m(R/I): -inf when not finite length, +inf when the module
    is zero, else the least |a⁺| over patterns with empty G."""
    return table_indeg(cohomology_table(I, i, char, pattern_cap))


def topdeg(
    I: MonomialIdeal, i: int, char: int = 0, pattern_cap: int = DEFAULT_PATTERN_CAP
) -> ExtendedDegree:
    """topdeg H^i_m(R/I): -inf for the zero module, else max |a⁺| - |G|."""
    return table_topdeg(cohomology_table(I, i, char, pattern_cap))


def regularity(
    I: MonomialIdeal, char: int = 0, pattern_cap: int = DEFAULT_PATTERN_CAP
) -> int:
    """max_i (topdeg H^i_m(R/I) + i) over i with nonzero cohomology.

    Grothendieck vanishing empties every table beyond dim R/I, so the scan
    stops there; non-vanishing at dim R/I itself guarantees a finite answer.
    """
    _require_module(I)
    top = krull_dimension(I)
    best: int | None = None
    for i in range(0, top + 1):
        td = table_topdeg(cohomology_table(I, i, char, pattern_cap))
        if td.is_finite:
            cand = int(td.value) + i
            best = cand if best is None or cand > best else best
    if best is None:
        raise InternalConsistencyError(
            "no nonzero cohomology found for i <= dim R/I; nonvanishing at "
            "dim R/I should be guaranteed"
        )
    return best
