import random
from fractions import Fraction

import pytest

import oracles
from factories import random_seed
from scatterdiag import (
    ExtCoeff,
    Flavor,
    LieElement,
    ScatteringDiagram,
    SquareMatrix,
    Wall,
    classical_limit,
    complete,
    is_consistent,
    quantum_lift,
    wall_function_from_log,
)
from scatterdiag.algebra import derivation_normal
from scatterdiag.diagrams import LINE, RAY
from scatterdiag.errors import ConfigurationError, GradeZeroError, UnsupportedOperationError
from scatterdiag.lattice import pair
from scatterdiag.serialize import parse_wall_function
from test_diagrams import two_lines

T = Flavor.tropical()
E2 = Flavor.extended(2)


def extended_seed(n, sign=1, i=1, j=2):
    """w1 = (-t E_ij z^m1, 0) on m1 R; w2 = (0, sum_k z^(k m2)/k t^k d_n2) on m2 R."""
    m1, m2 = (1, 0), (0, 1)
    zero = SquareMatrix.zero(2)
    w1 = Wall((0, 0), m1, LINE, LieElement(E2, n, {(m1, 1): ExtCoeff(-SquareMatrix.elementary(2, i, j))}), m1)
    log2 = LieElement(E2, n, {((0, k), k): ExtCoeff(zero, Fraction(sign, k)) for k in range(1, n + 1)})
    w2 = Wall((0, 0), m2, LINE, log2, m2)
    return ScatteringDiagram(E2, n, (w1, w2))


def test_two_line_tropical_single_ray():
    for n in (2, 4, 6):
        rep = complete(two_lines(n))
        (w,) = rep.added
        assert (w.kind, w.base, w.direction, w.grade) == (RAY, (0, 0), (1, 1), (1, 1))
        assert wall_function_from_log(w.auto)[1] == parse_wall_function("1 + t^2*x*y", n)
        assert oracles.loop_product_is_identity(rep.output)
        assert rep.output.walls[:2] == rep.input.walls


@pytest.mark.parametrize("i, j", [(1, 2), (2, 1), (1, 1)])
def test_extended_example(i, j):
    n = 4
    rep = complete(extended_seed(n, i=i, j=j))
    (w,) = rep.added
    m1, m2 = (1, 0), (0, 1)
    n2 = derivation_normal(m2, E2)
    want = LieElement(E2, n, {((1, 1), 2): ExtCoeff(SquareMatrix.elementary(2, i, j) * pair(m1, n2))})
    assert w.log == want
    assert (w.kind, w.direction, w.grade) == (RAY, (1, 1), (1, 1))
    assert oracles.loop_product_is_identity(rep.output)


def test_extended_example_with_opposite_normal_spawns_family():
    # With d_n2 oriented like the tropical perp the derivation wall behaves as
    # f = (1 - ty)^-1 and the matrix ray is dragged to every m1 + k m2.
    n = 4
    rep = complete(extended_seed(n, sign=-1))
    assert [w.grade for w in rep.added] == [(1, 1), (1, 2), (1, 3)]
    for k, w in enumerate(rep.added, start=1):
        assert w.log.terms == {((1, k), k + 1): ExtCoeff(-SquareMatrix.elementary(2, 1, 2))}


def test_consistent_input_is_fixed_point():
    out = complete(two_lines(4)).output
    rep = complete(out)
    assert rep.added == () and rep.output == out
    single = ScatteringDiagram(T, 3, two_lines(3).walls[:1])
    assert complete(single).added == ()


def test_errors():
    with pytest.raises(ConfigurationError):
        complete(ScatteringDiagram(T, 3))
    d = two_lines(3)
    log = LieElement(T, 3, {((1, -1), 1): 1})
    third = Wall((1, 0), (1, -1), LINE, log, (1, -1))
    with pytest.raises(UnsupportedOperationError):
        complete(d.with_walls(d.walls + (third,)))


def test_grade_zero_is_reported():
    e = SquareMatrix.elementary
    walls = (
        Wall((0, 0), (1, 0), LINE, LieElement(E2, 3, {((1, 0), 1): ExtCoeff(e(2, 1, 2))}), (1, 0)),
        Wall((0, 0), (0, 1), LINE, LieElement(E2, 3, {((0, 1), 1): ExtCoeff(e(2, 2, 1))}), (0, 1)),
        Wall((0, 0), (1, 1), LINE, LieElement(E2, 3, {((-1, -1), 1): ExtCoeff(e(2, 1, 1))}), (-1, -1)),
    )
    with pytest.raises(GradeZeroError):
        complete(ScatteringDiagram(E2, 3, walls))


def test_per_order_defects_increase():
    rep = complete(two_lines(5))
    orders = [n for n, _ in rep.per_order_defects]
    assert orders == sorted(set(orders))
    for n, g in rep.per_order_defects:
        assert g.leading_order() == n


def test_monotone_stability(rng):
    for tag in ("tropical", "quantum"):
        for _ in range(4):
            d = random_seed(Flavor(tag), 5, rng, rng.randint(2, 3))
            hi = complete(d).output.truncate(3)
            lo = complete(d.truncate(3)).output
            assert set(hi.walls) == set(lo.walls)


def test_three_lines_tropical():
    n = 4
    from scatterdiag import log_from_wall_function

    walls = []
    for m in ((1, 0), (0, 1), (1, -1)):
        f = parse_wall_function("1 + t*" + {(1, 0): "x", (0, 1): "y", (1, -1): "x*y^-1"}[m], n)
        walls.append(Wall((0, 0), m, LINE, log_from_wall_function(m, f).log, m))
    rep = complete(ScatteringDiagram(T, n, tuple(walls)))
    assert is_consistent(rep.output).consistent
    assert oracles.loop_product_is_identity(rep.output)
    assert complete(rep.output).added == ()


def test_quantum_classical_compatibility():
    for n in (2, 3, 4):
        trop = two_lines(n)
        quant = ScatteringDiagram(Flavor.quantum(), n, tuple(Wall(w.base, w.direction, w.kind, quantum_lift(w.log), w.grade) for w in trop.walls))
        qout = complete(quant).output
        limit = [Wall(w.base, w.direction, w.kind, classical_limit(w.log), w.grade) for w in qout.walls if classical_limit(w.log).terms]
        classical = ScatteringDiagram(T, n, tuple(limit))
        assert is_consistent(classical).consistent
        assert set(classical.walls) == set(complete(trop).output.walls)


def test_uniqueness_over_processing_order(rng):
    for tag in ("tropical", "quantum"):
        for _ in range(5):
            d = random_seed(Flavor(tag), 4, rng, rng.randint(2, 4))
            a = complete(d).output
            b = complete(d, reverse=True, loop_start=3).output
            assert a.walls == b.walls
