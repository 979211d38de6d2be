import itertools

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.physics.quantum import TensorProduct

from paper_source import paper_contains
from strategies import lie_elements, small_int
from twistlab.liealg import BASIS, LieElement, bracket
from twistlab.matrix import Matrix, MatrixError, nilpotency_index
from twistlab.reps import (
    Representation, RepresentationError, dual_rep, embed, fundamental, kron, mat_exp_nilpotent,
    mat_log_unipotent, permute_legs, rep_by_name, swap_legs, tensor_rep,
)
from twistlab.scalars import S


def to_sym(m: Matrix):
    return sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in m.to_dense()])


def int_matrices(n):
    return st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix.from_dense)


def strictly_upper(n):
    return int_matrices(n).map(lambda m: Matrix.from_dense(
        [[x if j > i else 0 for j, x in enumerate(row)] for i, row in enumerate(m.to_dense())]))


# -- fundamental / dual / tensor

def test_fundamental_examples(fund):
    assert (fund("E13") @ fund("E13")).is_zero()
    assert fund(bracket(LieElement.basis("E12"), LieElement.basis("E23"))) == fund("E13")
    assert fund("H") == Matrix.diag([S(1) / 3, S(1) / 3, S(-2) / 3])
    assert paper_contains(r"[E_{12}, E_{23} ]   =  E_{13}")


def test_dual_examples(fund, dual):
    assert dual("E13") == -Matrix.unit(3, 2, 0)
    assert dual_rep(dual) == fund
    assert dual("H12") == Matrix.diag([-1, 1, 0])


def test_tensor_rep_examples(fund):
    ff = tensor_rep(fund, fund)
    assert ff.dim == 9
    assert nilpotency_index(ff("E13")) == 3
    assert ff.homomorphism_violation() is None


def test_fund_dual_registered():
    fd = rep_by_name("fund*dual")
    assert fd.dim == 9 and fd.homomorphism_violation() is None
    with pytest.raises(RepresentationError):
        rep_by_name("adjoint")


def test_homomorphism_checked_on_construction(fund):
    images = dict(fund.images)
    images["E12"] = Matrix.unit(3, 0, 2)
    with pytest.raises(RepresentationError) as err:
        Representation("broken", 3, images)
    assert err.value.witness is not None


@pytest.mark.parametrize("name", ["fund", "dual", "fund*dual"])
def test_homomorphism_all_pairs(name):
    rho = rep_by_name(name)
    for a, b in itertools.product(BASIS, BASIS):
        x, y = LieElement.basis(a), LieElement.basis(b)
        assert rho(bracket(x, y)) == rho(x) @ rho(y) - rho(y) @ rho(x)


@given(lie_elements(), lie_elements())
def test_dual_is_homomorphism_on_random_elements(x, y):
    rho = rep_by_name("dual")
    assert rho(bracket(x, y)) == rho(x) @ rho(y) - rho(y) @ rho(x)


# -- exp / log

def test_log_of_sigma(fund):
    i = Matrix.identity(3)
    assert mat_log_unipotent(i + fund("E13")) == fund("E13")
    assert mat_exp_nilpotent(Matrix.zeros(3)).is_identity()


def test_log_of_coproduct_sigma(fund):
    i = Matrix.identity(3)
    de = kron(fund("E13"), i) + kron(i, fund("E13"))
    assert (de @ de @ de).is_zero()
    assert mat_log_unipotent(Matrix.identity(9) + de) == de - (de @ de).scale(S(1) / 2)


def test_exp_rejects_non_nilpotent(fund):
    with pytest.raises(MatrixError) as err:
        mat_exp_nilpotent(fund("H12"))
    assert err.value.witness is not None
    with pytest.raises(MatrixError):
        mat_log_unipotent(fund("H12"))


@given(strictly_upper(4))
def test_exp_log_inverse(n):
    u = mat_exp_nilpotent(n)
    assert mat_log_unipotent(u) == n
    assert mat_exp_nilpotent(mat_log_unipotent(Matrix.identity(4) + n)) == Matrix.identity(4) + n


@given(strictly_upper(3))
def test_exp_matches_oracle(n):
    assert to_sym(mat_exp_nilpotent(n)) == to_sym(n).exp()


# -- kron, legs

@given(int_matrices(2), int_matrices(3))
def test_kron_matches_oracle(a, b):
    assert to_sym(kron(a, b)) == TensorProduct(to_sym(a), to_sym(b))


@given(int_matrices(2), int_matrices(2), int_matrices(2))
def test_kron_associative(a, b, c):
    assert kron(kron(a, b), c) == kron(a, kron(b, c))


@given(int_matrices(4))
def test_swap_involution(a):
    assert swap_legs(swap_legs(a)) == a


@given(int_matrices(2), int_matrices(2))
def test_swap_exchanges_factors(a, b):
    assert swap_legs(kron(a, b)) == kron(b, a)


@given(int_matrices(2), int_matrices(2))
def test_embed_places_legs(a, b):
    i = Matrix.identity(2)
    ab = kron(a, b)
    assert embed(ab, "12") == kron(kron(a, b), i)
    assert embed(ab, "13") == kron(kron(a, i), b)
    assert embed(ab, "23") == kron(kron(i, a), b)
    assert embed(ab, "21") == kron(kron(b, a), i)


@given(int_matrices(4), int_matrices(4), st.sampled_from(["12", "13", "23", "21", "31", "32"]))
def test_embed_multiplicative(a, b, legs):
    assert embed(a @ b, legs) == embed(a, legs) @ embed(b, legs)


@given(int_matrices(2), int_matrices(2), int_matrices(2), st.permutations([0, 1, 2]))
def test_permute_legs_moves_factors(a, b, c, perm):
    facs = [a, b, c]
    moved = [None] * 3
    for p in range(3):
        moved[perm[p]] = facs[p]
    assert permute_legs(kron(kron(a, b), c), (2, 2, 2), perm) == kron(kron(*moved[:2]), moved[2])


def test_dimension_mismatch():
    with pytest.raises(MatrixError):
        Matrix.identity(2) @ Matrix.identity(3)
    with pytest.raises(MatrixError):
        swap_legs(Matrix.identity(3))
    with pytest.raises(MatrixError):
        embed(Matrix.identity(4), "14")


def test_json_rendering(fund):
    assert fund("H").to_json()[2][2] == "-2/3"
