"""Degree complexes, cohomology tables, and the degree invariants."""

import numpy as np
import pytest

from monocoh.errors import ResourceCapError, UnitIdealError
from monocoh.monomial_core import (
    krull_dimension,
    parse_ideal,
    power,
    saturate_irrelevant,
    var_degree_bounds,
)
from monocoh.simplicial import stanley_reisner_complex
from monocoh.takayama import (
    CohomologyTable,
    DegreePattern,
    ExtendedDegree,
    cohomology_dim_at,
    cohomology_table,
    degree_complex,
    indeg,
    is_finite_length,
    regularity,
    table_indeg,
    table_topdeg,
    topdeg,
)

import oracles
from conftest import corpus, cycle_ideal


def entry_map(table: CohomologyTable) -> dict:
    return {(p.G, p.a_plus): dim for p, dim in table.entries.items()}


class TestDegreeComplex:
    def test_at_zero_is_full_complex_over_powers(self, small_corpus):
        for I in small_corpus[:15]:
            K = stanley_reisner_complex(I)
            for n in (1, 2, 3, 4):
                J = power(I, n)
                assert degree_complex(J, (0,) * I.d) == K

    def test_small_positive_degree_keeps_full_complex(self):
        # generators of I^n have degree >= n, so x^a with |a| < n avoids
        # every projection of I^n
        rng = np.random.default_rng(21)
        for I in corpus(77, 8, (2, 3)):
            K = stanley_reisner_complex(I)
            for n in (2, 3, 4):
                J = power(I, n)
                for _ in range(5):
                    a = rng.multinomial(n - 1, [1 / I.d] * I.d)
                    assert degree_complex(J, tuple(int(x) for x in a)) == K

    def test_cycle_witness_complex(self):
        # witness degree (n-d+4, 0, 1, ..., 1, 0); its complex drops exactly
        # the two edges {2,3} and {d-1,d} once n is large enough
        for d, n in ((5, 3), (6, 4), (7, 5)):
            I = cycle_ideal(d)
            J = saturate_irrelevant(power(I, n))
            a = (n - d + 4, 0) + (1,) * (d - 3) + (0,)
            K = degree_complex(J, a)
            expected = {
                tuple(sorted(((i - 1) % d + 1, i % d + 1)))
                for i in range(1, d + 1)
                if i not in (2, d - 1)
            }
            assert set(K.facets) == expected

    def test_void_when_a_plus_inside(self):
        I = parse_ideal("x1*x2", 2)
        assert degree_complex(I, (1, 1)).is_void

    def test_unit_rejected(self):
        with pytest.raises(UnitIdealError):
            degree_complex(parse_ideal("1", 2), (0, 0))

    def test_downward_closed_and_subcomplex(self, small_corpus):
        rng = np.random.default_rng(22)
        for I in small_corpus[:20]:
            full = stanley_reisner_complex(I).face_masks()
            for _ in range(10):
                a = tuple(int(x) for x in rng.integers(-3, 5, size=I.d))
                K = degree_complex(I, a)
                masks = K.face_masks()
                for m in masks:
                    sub = m
                    while sub:
                        sub = (sub - 1) & m
                        assert sub in masks
                assert masks <= full

    def test_pattern_independence(self, small_corpus):
        rng = np.random.default_rng(23)
        pairs = 0
        for I in small_corpus:
            rho = var_degree_bounds(I).rho
            for _ in range(20):
                a = [int(x) for x in rng.integers(-3, 6, size=I.d)]
                b = list(a)
                for j in range(I.d):
                    if a[j] < 0:
                        b[j] = -int(rng.integers(1, 9))
                    elif a[j] >= rho[j]:
                        b[j] = rho[j] + int(rng.integers(0, 7))
                assert degree_complex(I, tuple(a)) == degree_complex(I, tuple(b))
                pairs += 1
        assert pairs >= 1000


class TestDimAt:
    def test_edge_ideal_examples(self):
        I = parse_ideal("x1*x2", 2)
        assert cohomology_dim_at(I, 1, (0, 0), 0) == 1
        for t in (1, 2, 7):
            assert cohomology_dim_at(I, 1, (-t, 0), 0) == 1

    def test_i0_with_negative_support_is_zero(self, small_corpus):
        rng = np.random.default_rng(24)
        for I in small_corpus[:10]:
            a = [int(x) for x in rng.integers(0, 3, size=I.d)]
            a[int(rng.integers(0, I.d))] = -1
            assert cohomology_dim_at(I, 0, tuple(a), 0) == 0

    def test_i_out_of_range(self):
        I = parse_ideal("x1*x2", 2)
        with pytest.raises(ValueError):
            cohomology_dim_at(I, 3, (0, 0), 0)
        with pytest.raises(ValueError):
            cohomology_dim_at(I, -1, (0, 0), 0)

    def test_composite_char_rejected(self):
        I = parse_ideal("x1*x2", 2)
        with pytest.raises(ValueError):
            cohomology_dim_at(I, 1, (0, 0), 4)


class TestTable:
    def test_m_squared_empty(self):
        t = cohomology_table(parse_ideal("x1^2, x1*x2, x2^2", 2), 1, 0)
        assert t.entries == {} and t.finite_length

    def test_edge_ideal_three_entries(self):
        t = cohomology_table(parse_ideal("x1*x2", 2), 1, 0)
        assert entry_map(t) == {
            ((), (0, 0)): 1,
            ((1,), (0, 0)): 1,
            ((2,), (0, 0)): 1,
        }
        assert not t.finite_length

    def test_cycle_powers_finite_length(self):
        I = cycle_ideal(5)
        for n in (1, 2, 3):
            J = saturate_irrelevant(power(I, n))
            assert cohomology_table(J, 1, 0).finite_length

    def test_zero_and_unit_rejected(self):
        with pytest.raises(ValueError):
            cohomology_table(parse_ideal("0", 2), 1, 0)
        with pytest.raises(UnitIdealError):
            cohomology_table(parse_ideal("1", 2), 1, 0)

    def test_agrees_with_dim_at_on_representatives(self, small_corpus):
        # the table must equal pointwise evaluation at one representative
        # per pattern: -1 on G, the clamped a_plus elsewhere
        for I in small_corpus[:8]:
            dim_r = krull_dimension(I)
            for i in range(0, dim_r + 1):
                t = cohomology_table(I, i, 0)
                for pat, dim in t.entries.items():
                    a = list(pat.a_plus)
                    for g in pat.G:
                        a[g - 1] = -1
                    assert cohomology_dim_at(I, i, tuple(a), 0) == dim

    def test_entries_positive_and_consistent_fl(self, small_corpus):
        for I in small_corpus[:20]:
            for i in range(0, I.d + 1):
                t = cohomology_table(I, i, 0)
                assert all(dim > 0 for dim in t.entries.values())
                assert t.finite_length == all(
                    p.G == () for p in t.entries)

    def test_vanishes_above_dimension(self, small_corpus):
        for I in small_corpus[:15]:
            dim_r = krull_dimension(I)
            for i in range(dim_r + 1, I.d + 1):
                assert cohomology_table(I, i, 0).entries == {}

    def test_artinian_bound_holds_on_corpus(self, small_corpus):
        # the hard check lives inside cohomology_table; a violation raises
        for I in small_corpus:
            rho = var_degree_bounds(I).rho
            for i in range(0, I.d + 1):
                t = cohomology_table(I, i, 0)
                for p in t.entries:
                    for j in range(I.d):
                        if (j + 1) not in p.G and rho[j] >= 1:
                            assert p.a_plus[j] < rho[j]

    def test_saturation_invariance_above_zero(self, small_corpus):
        for I in small_corpus[:12]:
            for n in (1, 2):
                J = power(I, n)
                Js = saturate_irrelevant(J)
                if Js.is_unit:
                    continue
                for i in range(1, I.d + 1):
                    assert cohomology_table(J, i, 0) == cohomology_table(Js, i, 0)

    def test_resource_cap(self):
        I = cycle_ideal(5)
        with pytest.raises(ResourceCapError) as exc:
            cohomology_table(power(I, 3), 1, 0, pattern_cap=100)
        assert exc.value.cap == 100
        assert exc.value.required > 100
        assert "i=1" in str(exc.value)

    def test_json_round_trip(self, small_corpus):
        for I in small_corpus[:10]:
            for i in (0, 1, 2):
                t = cohomology_table(I, i, 0)
                assert CohomologyTable.from_json(t.to_json()) == t

    def test_char_matters_for_projective_plane_ideal(self):
        # Stanley-Reisner ideal of the 6-vertex projective plane: its
        # quotient has depth (hence cohomology) depending on char
        from monocoh.simplicial import from_facets, stanley_reisner_ideal
        rp2 = from_facets(6, [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6),
                              (1, 2, 6), (2, 3, 5), (3, 4, 6), (2, 4, 5),
                              (3, 5, 6), (2, 4, 6)])
        I = stanley_reisner_ideal(rp2)
        t0 = cohomology_table(I, 2, 0)
        t2 = cohomology_table(I, 2, 2)
        assert entry_map(t0) == {}
        assert entry_map(t2) == {((), (0,) * 6): 1}


class TestHochsterOracle:
    @pytest.mark.parametrize("char", [0, 2])
    def test_squarefree_tables_match_links(self, squarefree_corpus, char):
        for I in squarefree_corpus:
            for i in range(0, I.d + 1):
                t = cohomology_table(I, i, char)
                assert entry_map(t) == oracles.hochster_table_oracle(I, i, char)


class TestExtendedDegreeInvariants:
    def test_finite_length_examples(self):
        assert not is_finite_length(parse_ideal("x1*x2", 2), 1, 0)
        assert is_finite_length(parse_ideal("x1^2, x1*x2, x2^3", 2), 1, 0)
        assert is_finite_length(
            parse_ideal("x1*x3, x1*x4, x2*x3, x2*x4", 4), 1, 0)

    def test_indeg_examples(self):
        assert indeg(parse_ideal("x1*x2", 2), 1, 0) == ExtendedDegree.neg_inf()
        assert indeg(parse_ideal("x1, x2", 2), 0, 0) == ExtendedDegree.finite(0)
        for n in (3, 4):
            J = saturate_irrelevant(power(cycle_ideal(5), n))
            v = indeg(J, 1, 0)
            assert v.is_finite and n <= v.value <= n + 1

    def test_topdeg_examples(self):
        assert topdeg(parse_ideal("x1*x2", 2), 1, 0) == ExtendedDegree.finite(0)
        assert topdeg(parse_ideal("x1, x2", 2), 1, 0) == ExtendedDegree.neg_inf()
        assert topdeg(parse_ideal("x1, x2", 2), 0, 0) == ExtendedDegree.finite(0)

    def test_regularity_examples(self):
        assert regularity(parse_ideal("x1, x2", 2), 0) == 0
        assert regularity(parse_ideal("x1*x2", 2), 0) == 1
        # frozen regression for the 5-cycle ideal
        assert regularity(cycle_ideal(5), 0) == 2

    def test_principal_resolution_oracle(self):
        # R(-|a|) -> R resolves R/(x^a): reg = |a| - 1
        rng = np.random.default_rng(25)
        for _ in range(10):
            d = int(rng.integers(1, 4))
            a = [int(x) for x in rng.integers(0, 4, size=d)]
            if sum(a) == 0:
                a[0] = 1
            gens = "*".join(
                f"x{j+1}^{e}" for j, e in enumerate(a) if e) or "x1"
            I = parse_ideal(gens, d)
            assert regularity(I, 0) == sum(a) - 1

    def test_indeg_le_topdeg_and_reg_bound(self, small_corpus):
        for I in small_corpus[:20]:
            r = regularity(I, 0)
            for i in range(0, I.d + 1):
                t = cohomology_table(I, i, 0)
                lo, hi = table_indeg(t), table_topdeg(t)
                if lo.is_finite and hi.is_finite:
                    assert lo.value <= hi.value
                if hi.is_finite:
                    assert hi.value + i <= r


class TestDegreePatternType:
    def test_invariant_zero_on_g(self):
        with pytest.raises(ValueError):
            DegreePattern(a_plus=(1, 0), G=(1,))

    def test_total_degree(self):
        p = DegreePattern(a_plus=(0, 2, 0), G=(1,))
        assert p.total_degree == 1  # 2 - |G|
