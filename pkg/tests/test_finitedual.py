"""Tests for the finite dual engine on presented algebras."""

import pytest

from services.finitedual import (
    AlgebraPresentation,
    GoodSubspace,
    HomogeneousFunctional,
    TruncationError,
    brute_force_min_codim,
    check_good_subspace,
    dual_word_functional,
    enumerate_power_ideals,
    finite_dual,
    finite_truncation,
    functional_from_dict,
    im_p_I_dual,
    kernel_ideal,
    membership,
    sum_of_good,
)
from services.grading import AbelianGroup, Bicharacter, GradingError
from services.gvect import BraidedContext, map_from_columns, tensor_basis, tensor_space
from services.objects import check_object
from utils.ncpoly import parse_polynomial
from utils.scalars import PrimeField, RationalField

Q = RationalField()


def polynomial_ring(domain=Q, relations=(), graded=False) -> AlgebraPresentation:
    if graded:
        group = AbelianGroup(1, ())
        ctx = BraidedContext(group, Bicharacter.trivial(group, domain), domain)
        data = {"name": "k[X]", "generators": [{"name": "X", "degree": "1"}], "relations": list(relations)}
    else:
        ctx = BraidedContext.trivial(domain)
        data = {"name": "k[X]", "generators": [{"name": "X"}], "relations": list(relations)}
    return AlgebraPresentation.from_dict(data, ctx)


def test_geometric_functional_is_a_member_of_codimension_one():
    p = polynomial_ring()
    f = functional_from_dict({"name": "geometric 2", "kind": "geometric", "ratio": "2"}, p)
    assert f((0, 0, 0)) == 8
    result = membership(f, p, 6)
    assert result.member
    assert result.status == "member"
    assert result.codim == 1
    assert [c for _, c in result.trace] == [1] * 6


def test_linear_sequence_needs_codimension_two():
    p = polynomial_ring()
    f = functional_from_dict({"name": "n", "kind": "polynomial", "coefficients": ["0", "1"]}, p)
    result = membership(f, p, 6)
    assert result.trace[:3] == [(1, 0), (2, 2), (3, 2)]
    assert result.codim == 2


def test_fibonacci_recurrence():
    p = polynomial_ring()
    f = functional_from_dict(
        {"name": "fib", "kind": "recurrence", "coefficients": ["1", "1"], "initial": ["0", "1"]}, p
    )
    assert [f((0,) * n) for n in range(7)] == [0, 1, 1, 2, 3, 5, 8]
    assert membership(f, p, 6).codim == 2


def test_factorial_is_not_a_member():
    p = polynomial_ring()
    f = functional_from_dict({"name": "n!", "kind": "factorial"}, p)
    result = membership(f, p, 5)
    assert not result.member
    assert result.status == "not-member-up-to-5"
    assert [c for _, c in result.trace] == [1, 2, 3, 4, 5]
    assert result.to_dict(p)["status"] == "not-member-up-to-5"


@pytest.mark.parametrize("word, length, codim", [("X^3", 3, 4), ("X^2", 2, 3)])
def test_graded_word_duals(word, length, codim):
    p = polynomial_ring(graded=True)
    f = functional_from_dict({"name": f"({word})^*", "degree": str(-length), "values": {word: "1"}}, p)
    result = membership(f, p, 8)
    assert result.trace[0] == (length + 1, codim)
    assert result.codim == codim
    assert len(result.witness.generators(Q)) > 0


def test_kernel_ideal_needs_a_reaching_window():
    p = polynomial_ring(graded=True)
    f = dual_word_functional(p, (0, 0, 0))
    with pytest.raises(TruncationError):
        kernel_ideal(f, p, 2)
    assert kernel_ideal(f, p, 4).codim == 4


def test_kernel_ideal_restriction_matches_smaller_window():
    p = polynomial_ring()
    f = functional_from_dict({"kind": "geometric", "ratio": "3"}, p)
    big = kernel_ideal(f, p, 5)
    assert big.restrict(3, Q).same_span(kernel_ideal(f, p, 3), Q)


def test_dual_word_functional():
    p = polynomial_ring(graded=True)
    f = dual_word_functional(p, (0, 0))
    assert f.name == "(X^2)^*"
    assert f.degree == p.ctx.group.parse_degree("-2")
    assert f((0, 0)) == 1
    assert f((0,)) == 0


def test_inhomogeneous_relation_is_rejected():
    p = polynomial_ring(graded=True)
    with pytest.raises(GradingError):
        AlgebraPresentation(p.ctx, p.names, p.degrees, [parse_polynomial("X^2 - 1", p.names, Q)])


def test_one_generator_kinds_need_one_generator():
    ctx = BraidedContext.trivial(Q)
    p = AlgebraPresentation.from_dict({"generators": [{"name": "X"}, {"name": "Y"}]}, ctx)
    with pytest.raises(ValueError):
        HomogeneousFunctional(p, ctx.group.identity, "factorial")
    f = functional_from_dict({"kind": "character", "images": {"X": "2", "Y": "3"}}, p)
    assert f((0, 1, 1)) == 18


def test_finite_truncation_doubles_until_finite():
    p = polynomial_ring(relations=["X^3"])
    truncation = finite_truncation(p, 2)
    assert truncation.is_finite
    assert truncation.per_length_dims[:4] == [1, 1, 1, 0]
    with pytest.raises(TruncationError):
        finite_truncation(polynomial_ring(), 2)


def test_quotient_dual_is_a_good_subspace():
    p = polynomial_ring()
    ideal = [parse_polynomial("X^2", p.names, Q)]
    good = im_p_I_dual(p, ideal, 8)
    assert good.dim == 2
    assert check_good_subspace(good, 6).passed
    assert check_object(good.coalgebra()).passed


def test_sum_of_good_subspaces():
    p = polynomial_ring()
    square = im_p_I_dual(p, [parse_polynomial("X^2", p.names, Q)], 8)
    cube = im_p_I_dual(p, [parse_polynomial("X^3", p.names, Q)], 8)
    assert sum_of_good([square, square], 8).dim == 2
    merged = sum_of_good([square, cube], 8)
    assert merged.dim == 3
    assert check_good_subspace(merged, 6).passed
    with pytest.raises(ValueError):
        sum_of_good([])


def test_power_ideals():
    p = polynomial_ring()
    family = enumerate_power_ideals(p, codim_bound=3, truncate=8)
    assert [[g.leading_word() for g in gens] for gens in family] == [[(0,)], [(0, 0)], [(0, 0, 0)]]
    finite = polynomial_ring(relations=["X^2"])
    assert [len(gens) for gens in enumerate_power_ideals(finite, codim_bound=6, truncate=8)] == [1, 0]
    ctx = BraidedContext.trivial(Q)
    free = AlgebraPresentation.from_dict({"generators": [{"name": "X"}, {"name": "Y"}]}, ctx)
    assert [len(gens) for gens in enumerate_power_ideals(free, codim_bound=3, truncate=8)] == [2, 4]


def test_finite_dual_of_a_finite_algebra_is_the_full_dual():
    p = polynomial_ring(relations=["X^3"])
    result = finite_dual(p, truncate=8, ideal_family=[[]])
    assert result.merged.dim == 3
    assert result.report.passed
    assert check_object(result.coalgebra).passed
    assert result.to_dict()["family"] == ["()"]


def test_finite_dual_from_member_functionals():
    p = polynomial_ring()
    functionals = [
        functional_from_dict({"name": "geometric 2", "kind": "geometric", "ratio": "2"}, p),
        functional_from_dict({"name": "n!", "kind": "factorial"}, p),
    ]
    result = finite_dual(p, truncate=5, functionals=functionals)
    assert [m.member for m in result.memberships] == [True, False]
    assert result.merged.dim == 1
    assert result.report.passed
    with pytest.raises(ValueError):
        finite_dual(p, truncate=5)


def test_membership_on_a_finite_algebra():
    f3 = PrimeField(3)
    p = polynomial_ring(f3, relations=["X^3"])
    f = dual_word_functional(p, (0,))
    assert membership(f, p, 6).codim == brute_force_min_codim(f, p) == 2


@pytest.mark.parametrize("word, codim", [((), 1), ((0,), 2), ((0, 0), 3)])
def test_brute_force_min_codim(word, codim):
    p = polynomial_ring(PrimeField(3), relations=["X^3"])
    assert brute_force_min_codim(dual_word_functional(p, word), p) == codim


def test_brute_force_needs_a_prime_field():
    p = polynomial_ring(relations=["X^2"])
    with pytest.raises(ValueError):
        brute_force_min_codim(dual_word_functional(p, ()), p)


def test_factorial_codimension_grows_through_twelve():
    p = polynomial_ring()
    f = functional_from_dict({"name": "n!", "kind": "factorial"}, p)
    result = membership(f, p, 12)
    assert not result.member
    assert [c for _, c in result.trace] == list(range(1, 13))


def test_zero_functional_has_codimension_zero():
    p = polynomial_ring()
    f = functional_from_dict({"name": "0", "values": {}}, p)
    result = membership(f, p, 6)
    assert result.member
    assert result.codim == 0


def test_factorial_span_is_not_a_good_subspace():
    p = polynomial_ring()
    f = functional_from_dict({"name": "n!", "kind": "factorial"}, p)
    space = p.ctx.space({p.ctx.group.identity: 1})
    (b,) = space.basis()
    delta = map_from_columns(space, tensor_space(space, space), {b: {tensor_basis(space, space, b, b): Q.one}}, Q)
    good = GoodSubspace(p, space, delta, {b: f}, "span{n!}")
    report = check_good_subspace(good, 6)
    assert not report.passed
    assert "good-object equation" in report.failed_laws()


def test_finite_dual_of_geometric_family_has_group_likes():
    p = polynomial_ring()
    family = [[parse_polynomial(text, p.names, Q)] for text in ("X", "X - 1", "X - 2", "X^2")]
    result = finite_dual(p, truncate=8, ideal_family=family)
    assert result.merged.dim == 4
    assert result.report.passed
    assert result.to_dict()["family"] == ["(X)", "(X - 1)", "(X - 2)", "(X*X)"]
    for good, ratio in zip(result.goods[:3], (0, 1, 2)):
        assert good.dim == 1
        (b,) = good.functionals
        assert good.coproduct(b) == {(b, b): 1}
        assert [good.functionals[b]((0,) * n) for n in range(5)] == [ratio ** n for n in range(5)]


def non_symmetric_square_zero() -> AlgebraPresentation:
    group = AbelianGroup(2)
    q = ((Q.coerce(1), Q.coerce(2)), (Q.coerce(1), Q.coerce(3)))
    ctx = BraidedContext(group, Bicharacter(group, Q, q), Q)
    data = {
        "generators": [{"name": "X", "degree": "1,0"}, {"name": "Y", "degree": "0,1"}],
        "relations": ["X^2", "Y^2", "X*Y - Y*X"],
    }
    return AlgebraPresentation.from_dict(data, ctx)


def test_tau_laws_are_skipped_without_symmetry():
    p = non_symmetric_square_zero()
    good = im_p_I_dual(p, [], 8)
    assert good.dim == 4
    report = check_good_subspace(good, 5)
    assert report.passed, report.to_dict()
    assert report.laws == ["good-object equation", "counit"]
    assert check_good_subspace(im_p_I_dual(polynomial_ring(relations=["X^2"]), [], 8), 5).laws[-1] == "tau unital"


XY = {"X": "1,0", "Y": "0,1"}
SQUARE_ZERO = ["X^2", "Y^2", "X*Y", "Y*X"]

ORACLE_CASES = [
    (2, 0, {"X": ""}, ["X^2"]),
    (2, 0, {"X": ""}, ["X^3"]),
    (2, 0, {"X": ""}, ["X^4"]),
    (2, 0, {"X": ""}, ["X^5"]),
    (3, 0, {"X": ""}, ["X^2"]),
    (3, 0, {"X": ""}, ["X^4"]),
    (2, 1, {"X": "1"}, ["X^6"]),
    (3, 1, {"X": "1"}, ["X^5"]),
    (3, 1, {"X": "1"}, ["X^6"]),
    (2, 2, XY, ["X^2", "Y^2", "X*Y - Y*X"]),
    (3, 2, XY, ["X^2", "Y^2", "X*Y - Y*X"]),
    (3, 2, XY, ["X^2", "Y^2", "X*Y + Y*X"]),
    (2, 2, XY, ["X^2", "Y^2", "Y*X"]),
    (3, 2, XY, ["X^2", "Y^2", "Y*X"]),
    (2, 2, XY, SQUARE_ZERO),
    (2, 2, XY, ["X^2", "Y*X", "Y^3"]),
    (3, 2, XY, ["X^2", "Y*X", "Y^3"]),
    (2, 2, XY, ["X*Y - Y*X", "X^2", "Y^3"]),
    (3, 2, XY, ["X*Y - Y*X", "X^2", "Y^3"]),
    (3, 2, XY, ["X^2", "X*Y", "Y*X", "Y^3"]),
    (2, 1, {"X": "1", "Y": "1"}, SQUARE_ZERO),
    (3, 1, {"X": "1", "Y": "1"}, ["X^2", "Y^2", "X*Y - Y*X"]),
    (
        2, 3, {"X": "1,0,0", "Y": "0,1,0", "Z": "0,0,1"},
        [f"{a}*{b}" for a in "XYZ" for b in "XYZ"],
    ),
]


@pytest.mark.parametrize("p, rank, generators, relations", ORACLE_CASES)
def test_membership_agrees_with_brute_force(p, rank, generators, relations):
    domain = PrimeField(p)
    if rank:
        group = AbelianGroup(rank)
        ctx = BraidedContext(group, Bicharacter.trivial(group, domain), domain)
    else:
        ctx = BraidedContext.trivial(domain)
    data = {"generators": [{"name": n, "degree": d} for n, d in generators.items()], "relations": relations}
    presentation = AlgebraPresentation.from_dict(data, ctx)
    words = finite_truncation(presentation, 8).normal_words()
    assert 1 <= len(words) <= 6
    for word in words:
        f = dual_word_functional(presentation, word)
        result = membership(f, presentation, 8)
        assert result.member, f.name
        assert result.codim == brute_force_min_codim(f, presentation), f.name
