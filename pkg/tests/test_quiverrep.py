import itertools
import random

import pytest

from quiverz.abdiagrams import ABDiagram
from quiverz.exactmat import (
    ExactMatrix,
    FieldSpec,
    hstack,
    identity,
    is_injective,
    jordan_type,
    rank,
    zeros,
)
from quiverz.partitions import Partition, dominates, mu_of, theta_image
from quiverz.quiverrep import (
    FlagPoint,
    QuiverRep,
    act,
    alpha,
    build_from_chain,
    check_relations,
    from_flag_point,
    greedy_chain,
    is_stable,
    is_stable_subspace_criterion,
    nilpotency_degrees,
    random_chain,
    random_group_element,
    sample_flag_point,
    sample_stable,
    theta,
    witness_reducible,
    zero_rep,
)

F = FieldSpec()
F2 = FieldSpec(2)


def P(*parts):
    return Partition(parts)


def same_subspace(X, Y):
    return X.cols == Y.cols and rank(hstack(X, Y)) == X.cols


# --- construction / relations -------------------------------------------------


def test_quiverrep_shape_validation():
    with pytest.raises(ValueError):
        QuiverRep((1, 2), [zeros(1, 2, F)], [zeros(1, 2, F)], F)
    with pytest.raises(ValueError):
        QuiverRep((1, 2), [zeros(2, 1, F)], [], F)
    z = zero_rep((1, 2, 3), F)
    assert z.t == 3
    assert z.A[1].shape == (3, 2)


def test_json_round_trip():
    z = sample_stable((1, 4, 5), F, random.Random(0))
    again = QuiverRep.from_json_dict(z.to_json_dict())
    assert again == z


def test_check_relations():
    assert check_relations(zero_rep((1, 4, 5), F))
    z = sample_stable((1, 4, 5), F, random.Random(1))
    assert check_relations(z)
    bad = QuiverRep(
        (1, 2),
        [ExactMatrix.from_rows([[1], [0]], F)],
        [ExactMatrix.from_rows([[1, 0]], F)],
        F,
    )
    assert not check_relations(bad)  # B1 A1 = [1] != 0


def test_nilpotency_degrees():
    assert nilpotency_degrees(zero_rep((2, 3), F))
    z = sample_stable((1, 2, 5, 8, 12), F, random.Random(2))
    assert nilpotency_degrees(z)
    bad = QuiverRep(
        (1, 2),
        [ExactMatrix.from_rows([[1], [0]], F)],
        [ExactMatrix.from_rows([[1, 0]], F)],
        F,
    )
    with pytest.raises(ValueError, match="relations"):
        nilpotency_degrees(bad)


# --- stability ------------------------------------------------------------------


def test_is_stable_examples():
    z = sample_stable((1, 4, 5), F, random.Random(3))
    assert is_stable(z)
    z1 = build_from_chain(greedy_chain((1, 4, 5)), F)
    assert not is_stable(z1)  # second forward map has a kernel
    assert not is_injective(z1.A[1])
    z0 = zero_rep((1, 2), F)
    assert not is_stable(z0)


def test_stability_subspace_cross_check_tiny():
    """Exhaustive agreement over F_2 at dims (1,2): every variety point."""
    pts = 0
    for a_entries in itertools.product(range(2), repeat=2):
        for b_entries in itertools.product(range(2), repeat=2):
            z = QuiverRep(
                (1, 2),
                [ExactMatrix(2, 1, a_entries, F2)],
                [ExactMatrix(1, 2, b_entries, F2)],
                F2,
            )
            if not check_relations(z):
                continue
            pts += 1
            assert is_stable(z) == is_stable_subspace_criterion(z)
    assert pts == 10


def test_subspace_criterion_requires_relations():
    bad = QuiverRep(
        (1, 2),
        [ExactMatrix.from_rows([[1], [0]], F2)],
        [ExactMatrix.from_rows([[1, 0]], F2)],
        F2,
    )
    with pytest.raises(ValueError):
        is_stable_subspace_criterion(bad)


# --- theta / action ---------------------------------------------------------------


def test_theta_examples():
    assert theta(zero_rep((1, 4, 5), F)).is_zero()
    z1 = build_from_chain(greedy_chain((1, 4, 5)), F)
    assert jordan_type(theta(z1)) == P(3, 2)
    with pytest.raises(ValueError):
        theta(zero_rep((3,), F))


def test_act_identity():
    z = sample_stable((1, 4, 5), F, random.Random(4))
    g = [identity(n, F) for n in (1, 4, 5)]
    assert act(g, z) == z


def test_act_preserves_structure():
    rng = random.Random(5)
    z = sample_stable((1, 4, 5), F, rng)
    g = random_group_element((1, 4, 5), F, rng)
    zg = act(g, z)
    assert check_relations(zg)
    assert is_stable(zg)
    assert jordan_type(theta(zg)) == jordan_type(theta(z))


def test_act_subgroup_fixes_theta_exactly():
    rng = random.Random(6)
    z = sample_stable((1, 2, 5, 8, 12), F, rng)
    th = theta(z)
    for _ in range(100):
        h = random_group_element((1, 2, 5, 8, 12), F, rng, fix_last=True)
        assert theta(act(h, z)) == th
    # a t-1 component tuple is the same subgroup element
    h = random_group_element((1, 2, 5, 8, 12), F, rng, fix_last=True)
    assert act(h[:-1], z) == act(h, z)


def test_act_errors():
    z = zero_rep((1, 2), F)
    with pytest.raises(ValueError, match="invertible"):
        act([zeros(1, 1, F), identity(2, F)], z)
    with pytest.raises(ValueError, match="shape|components"):
        act([identity(2, F), identity(2, F)], z)


# --- sampling ----------------------------------------------------------------------


def test_sample_stable_smallest():
    z = sample_stable((1, 2), F, random.Random(7))
    assert is_injective(z.A[0])
    assert dominates(P(2), jordan_type(theta(z)))


def test_sample_stable_generic_type():
    hits = 0
    for k in range(40):
        z = sample_stable((1, 4, 5), F, random.Random(100 + k))
        if jordan_type(theta(z)) == P(3, 1, 1):
            hits += 1
    assert hits >= 38


def test_sample_stable_bounded_by_mu():
    for d in ((1, 4, 5), (1, 2, 5, 8, 12)):
        for k in range(10):
            z = sample_stable(d, F, random.Random(200 + k))
            assert dominates(mu_of(d), jordan_type(theta(z)))


def test_sample_stable_rejects_non_monotone():
    with pytest.raises(ValueError):
        sample_stable((2, 2), F, random.Random(0))


# --- flags -----------------------------------------------------------------------


def test_flag_point_validation():
    x = sample_flag_point((1, 4, 5), F, random.Random(8))
    x.validate()
    broken = FlagPoint(x.flag, identity(5, F))
    with pytest.raises(ValueError):
        broken.validate()


def test_from_flag_point_zero_endo():
    basis1 = ExactMatrix.from_rows([[1], [0], [0]], F)
    basis2 = ExactMatrix.from_rows([[1, 0], [0, 1], [0, 0]], F)
    x = FlagPoint((basis1, basis2), zeros(3, 3, F))
    z = from_flag_point(x)
    assert all(M.is_zero() for M in z.B)
    assert is_stable(z)


def test_from_flag_point_round_trip():
    rng = random.Random(9)
    for _ in range(10):
        x = sample_flag_point((1, 4, 5), F, rng)
        z = from_flag_point(x)
        assert check_relations(z) and is_stable(z)
        assert theta(z) == x.endo
        assert dominates(mu_of((1, 4, 5)), jordan_type(theta(z)))
        back = alpha(z)
        assert back.endo == x.endo
        for got, want in zip(back.flag, x.flag):
            assert same_subspace(got, want)


def test_alpha_on_plain_flag_construction():
    """With inclusion forward maps the image flag is the coordinate flag."""
    from quiverz.quiverrep import _lowering_endo

    rng = random.Random(10)
    d = (1, 2, 4)
    nt = d[-1]
    basis = [
        ExactMatrix.from_rows(
            [[1 if r == c else 0 for c in range(n)] for r in range(nt)], F
        )
        for n in d[:-1]
    ]
    x = FlagPoint(tuple(basis), _lowering_endo(d, F, rng))
    z = from_flag_point(x)
    got = alpha(z)
    for got_basis, want_basis in zip(got.flag, basis):
        assert same_subspace(got_basis, want_basis)


def test_alpha_errors():
    z1 = build_from_chain(greedy_chain((1, 4, 5)), F)
    with pytest.raises(ValueError, match="stable"):
        alpha(z1)
    bad = QuiverRep(
        (1, 2),
        [ExactMatrix.from_rows([[1], [0]], F)],
        [ExactMatrix.from_rows([[1, 0]], F)],
        F,
    )
    with pytest.raises(ValueError, match="relation"):
        alpha(bad)


# --- chains ---------------------------------------------------------------------


def test_greedy_chain_row_example():
    chain = greedy_chain((1, 4, 5))
    assert chain[0].to_strings() == ["bab", "b", "b"]
    assert chain[1].to_strings() == ["babab", "bab", "a"]
    z = build_from_chain(chain, F)
    assert z.dims == (1, 4, 5)
    assert jordan_type(theta(z)) == P(3, 2)
    assert check_relations(z) and nilpotency_degrees(z)


def test_build_from_chain_single_row():
    z = build_from_chain([ABDiagram.from_strings(["bab"])], F)
    assert z.dims == (1, 2)
    assert jordan_type(theta(z)) == P(2)
    zsplit = build_from_chain([ABDiagram.from_strings(["ab", "b"])], F)
    assert jordan_type(theta(zsplit)) == P(1, 1)


def test_build_from_chain_interface_errors():
    with pytest.raises(ValueError, match="all-ones"):
        build_from_chain([ABDiagram.from_strings(["abab"])], F)
    first = ABDiagram.from_strings(["bab", "b", "b"])  # b-part (2,1,1)
    second = ABDiagram.from_strings(["babab", "abab", "a"])  # a-part (2,2,1)
    with pytest.raises(ValueError, match="interface 1"):
        build_from_chain([first, second], F)
    with pytest.raises(ValueError, match="at least one"):
        build_from_chain([], F)


def test_random_chains_bounded_by_image_type():
    rng = random.Random(11)
    for d in ((1, 4, 5), (1, 2, 5, 8, 12), (2, 4, 6)):
        lam = theta_image(d)
        for _ in range(5):
            z = build_from_chain(random_chain(d, rng), F)
            assert check_relations(z)
            assert dominates(lam, jordan_type(theta(z)))


def test_greedy_chain_realizes_image_type_sweep():
    for r in range(2, 5):
        for d in itertools.combinations(range(1, 9), r):
            z = build_from_chain(greedy_chain(d), F)
            assert jordan_type(theta(z)) == theta_image(d)


def test_chain_bound_boundary_beyond_sweep():
    """The iterated-add image type stops bounding chain points at (4,8,9).

    This explicit chain passes through the intermediate type (2,2,2,1,1),
    strictly below the greedy (2,2,2,2); one added box then yields (3,3,3),
    which strictly dominates the iterated-add value (3,3,2,1).  It is the
    matrix-level face of the monotonicity failure documented in
    test_partitions.test_add_monotonicity_boundary; every strictly monotone
    vector with last entry <= 8 is checked clean by the image sweep."""
    d1 = ABDiagram.from_strings(["bab", "bab", "bab", "ba", "b"])
    d2 = ABDiagram.from_strings(["babab", "babab", "babab", "a", "a"])
    z = build_from_chain([d1, d2], F)
    assert z.dims == (4, 8, 9)
    assert check_relations(z) and nilpotency_degrees(z)
    got = jordan_type(theta(z))
    assert got == P(3, 3, 3)
    assert theta_image((4, 8, 9)) == P(3, 3, 2, 1)
    assert not dominates(theta_image((4, 8, 9)), got)
    assert dominates(got, theta_image((4, 8, 9)))


# --- reducibility -----------------------------------------------------------------


def test_witness_reducible_row_example():
    rep = witness_reducible((1, 4, 5), F, random.Random(12))
    assert rep.verdict == "reducible"
    assert rep.lam == P(3, 2)
    assert rep.mu == P(3, 1, 1)
    kinds = [w["kind"] for w in rep.witnesses]
    assert kinds == ["chain", "stable"]
    z1 = QuiverRep.from_json_dict(rep.witnesses[0]["rep"])
    z2 = QuiverRep.from_json_dict(rep.witnesses[1]["rep"])
    assert check_relations(z1) and check_relations(z2)
    assert jordan_type(theta(z1)) == P(3, 2)
    assert not is_injective(z1.A[1])
    assert is_stable(z2)
    assert rep.to_json_dict()["verdict"] == "reducible"
    assert rep.to_json_dict()["lambda"] == [3, 2]


def test_witness_no_obstruction():
    for d in ((1, 2), (1, 2, 5, 8, 12)):
        rep = witness_reducible(d, F, random.Random(13))
        assert rep.verdict == "no_obstruction"
        assert rep.lam == rep.mu
        assert rep.witnesses == []
    with pytest.raises(ValueError):
        witness_reducible((2, 2), F, random.Random(0))
