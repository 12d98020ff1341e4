import pytest

from oracles import orbits_brute

from cyclehom.errors import InvalidGroup, NotAHomomorphism, NotAnAutomorphism
from cyclehom.groups import (FiniteGroup, GroupAction, automorphisms, cyclic, dihedral, direct_product,
                             involutive_automorphisms, inversion, mu, mu_conjugation, quaternion,
                             require_homomorphism, small_groups, symmetric, trivial_action)


@pytest.mark.parametrize(
    "table,axiom",
    [
        ([], "nonempty"),
        ([[0, 1], [1]], "closure"),
        ([[0, 2], [1, 0]], "closure"),
        ([[0, 1], [0, 0]], "associativity"),
        ([[0, 0], [0, 0]], "identity"),
    ],
)
def test_invalid_tables_name_axiom(table, axiom):
    with pytest.raises(InvalidGroup) as exc:
        FiniteGroup(table)
    assert exc.value.axiom == axiom


def test_relabelled_z2_is_valid():
    g = FiniteGroup([[1, 0], [0, 1]])
    assert g.identity == 1


def test_missing_identity_and_inverse():
    # x*y = x is associative with no two-sided identity
    with pytest.raises(InvalidGroup) as exc:
        FiniteGroup([[0, 0], [1, 1]])
    assert exc.value.axiom == "identity"
    # max-semilattice on {0,1}: identity 0 but 1 has no inverse
    with pytest.raises(InvalidGroup) as exc:
        FiniteGroup([[0, 1], [1, 1]])
    assert exc.value.axiom == "inverse"


def test_small_group_library():
    gs = small_groups(8)
    assert len(gs) == 14
    assert sorted(g.n for g in gs) == [1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]
    assert [g.is_abelian() for g in (symmetric(3), dihedral(4), quaternion(), cyclic(6))] == [False, False, False, True]
    assert direct_product(cyclic(2), cyclic(3)).element_order(5) == 6


@pytest.mark.parametrize(
    "g,n_aut,n_inv",
    [
        (cyclic(5), 4, 2),
        (cyclic(8), 4, 4),
        (symmetric(3), 6, 4),
        (dihedral(4), 8, 6),
        (quaternion(), 24, 10),
        (direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)), 168, 22),
    ],
)
def test_automorphism_counts(g, n_aut, n_inv):
    assert len(automorphisms(g)) == n_aut
    assert len(involutive_automorphisms(g)) == n_inv


def test_homomorphism_checks():
    z4, z2 = cyclic(4), cyclic(2)
    assert z4.is_homomorphism_to([0, 1, 0, 1], z2)
    require_homomorphism([0, 2], z2, z4)
    with pytest.raises(NotAHomomorphism):
        require_homomorphism([0, 1], z2, z4)


def test_action_validation():
    g = cyclic(3)
    GroupAction(g, [inversion(g)], gamma_order=2)
    with pytest.raises(NotAnAutomorphism):
        GroupAction(g, [[0, 1, 1]])
    with pytest.raises(NotAnAutomorphism):
        GroupAction(cyclic(4), [[1, 0, 2, 3]])
    with pytest.raises(NotAnAutomorphism):
        GroupAction(cyclic(5), [[0, 2, 4, 1, 3]], gamma_order=2)
    assert trivial_action(g).is_trivial()


def test_mu_conjugation():
    a = mu_conjugation(5)
    assert a.order == 2
    assert a.group.names[1] == "zeta5^1"
    assert orbits_brute(a.generators, 5, 1) == [[(0,)], [(1,), (4,)], [(2,), (3,)]]
