"""Subspace lattices: counts, order structure, and the geometric-lattice
battery (complements, modularity, covering, dimension law)."""

import pytest

from projlat import (
    AmbientTooLarge,
    check_g_lattice_properties,
    enumerate_subspaces,
    gaussian_binomial,
    parse_field,
    subspace_count_total,
)


def test_counts_match_gaussian_binomials(L32, L23, L34):
    for L, q in ((L32, 2), (L23, 3), (L34, 4)):
        for d in range(L.n + 1):
            assert len(L.dim_index.get(d, [])) == gaussian_binomial(L.n, d, q)
        assert L.size == subspace_count_total(L.n, q)


def test_frozen_small_counts(L22, L32, L42, L33):
    # independent closed-form values, spot-frozen
    assert L22.size == 5  # 0, three lines, plane
    assert L32.size == 16  # 1 + 7 + 7 + 1
    assert L42.size == 67  # 1 + 15 + 35 + 15 + 1
    assert L33.size == 28  # 1 + 13 + 13 + 1


def test_meet_join_against_definitions(L32):
    L = L32
    for i in range(L.size):
        for j in range(L.size):
            m = L.meet_idx(i, j)
            assert L.leq_idx(m, i) and L.leq_idx(m, j)
            jn = L.join_idx(i, j)
            assert L.leq_idx(i, jn) and L.leq_idx(j, jn)
            # meet is the greatest lower bound
            for k in range(L.size):
                if L.leq_idx(k, i) and L.leq_idx(k, j):
                    assert L.leq_idx(k, m)
                if L.leq_idx(i, k) and L.leq_idx(j, k):
                    assert L.leq_idx(jn, k)


def test_atomistic_and_length(L32, L23):
    assert L32.verify_atomistic()
    assert L23.verify_atomistic()
    assert L32.length == 3
    assert L23.length == 2


def test_hyperplane_criterion(L32):
    """Coatoms are exactly the kernels of nonzero linear functionals: there
    are as many as atoms, and every element is a meet of the coatoms above
    it (the dual of atomisticity for a modular complemented lattice)."""
    L = L32
    assert len(L.coatoms) == len(L.atoms)
    for i in range(L.size):
        above = [c for c in L.coatoms if L.leq_idx(i, c)]
        acc = L.top
        for c in above:
            acc = L.meet_idx(acc, c)
        assert acc == i


def test_g_lattice_battery(L22, L32, L23, L33):
    for L in (L22, L32, L23, L33):
        rep = check_g_lattice_properties(L)
        assert rep.passed, rep.checks


def test_complements_exist_and_are_plentiful(L32):
    L = L32
    for i in range(L.size):
        comps = [
            j
            for j in range(L.size)
            if L.meet_idx(i, j) == L.bottom and L.join_idx(i, j) == L.top
        ]
        assert comps, f"element {i} has no complement"
        if i not in (L.bottom, L.top):
            assert len(comps) > 1  # non-uniqueness marks non-distributivity


def test_ambient_guards():
    F = parse_field("5")
    with pytest.raises(AmbientTooLarge):
        enumerate_subspaces(6, F)
    with pytest.raises(ValueError):
        enumerate_subspaces(0, F)
