import random
from fractions import Fraction

import pytest

from factories import random_generic_loop, random_seed
from scatterdiag import Flavor, GroupElement, LieElement, Loop, ScatteringDiagram, Wall, complete, crossings, invert, is_consistent, path_ordered_product, singular_set, standard_loop
from scatterdiag.diagrams import LINE, RAY
from scatterdiag.errors import ConfigurationError, DegenerateGradingError, NonGenericPathError, UnsupportedOperationError
from scatterdiag.serialize import load_diagram

T = Flavor.tropical()
SQUARE = Loop(((1, -1), (1, 1), (-1, 1), (-1, -1)))


def line(v, log_terms, n=2, base=(0, 0), flavor=T, grade=None):
    return Wall(base, v, LINE, LieElement(flavor, n, log_terms), grade or v)


def ray(v, log_terms, n=2, base=(0, 0), flavor=T, grade=None):
    return Wall(base, v, RAY, LieElement(flavor, n, log_terms), grade or v)


def two_lines(n=2):
    from scatterdiag import log_from_wall_function
    from scatterdiag.serialize import parse_wall_function

    lx = log_from_wall_function((1, 0), parse_wall_function("1 + t*x", n)).log
    ly = log_from_wall_function((0, 1), parse_wall_function("1 + t*y", n)).log
    return ScatteringDiagram(T, n, (Wall((0, 0), (1, 0), LINE, lx, (1, 0)), Wall((0, 0), (0, 1), LINE, ly, (0, 1))))


def test_wall_validation():
    with pytest.raises(DegenerateGradingError):
        line((0, 0), {((1, 0), 1): 1})
    with pytest.raises(ConfigurationError):
        line((2, 0), {((1, 0), 1): 1}, grade=(1, 0))
    with pytest.raises(ConfigurationError):
        line((1, 0), {}, grade=(1, 0))
    with pytest.raises(ConfigurationError):
        line((1, 0), {((0, 1), 1): 1}, grade=(1, 0))
    with pytest.raises(ConfigurationError):
        line((1, 0), {((-1, 0), 1): 1}, grade=(1, 0))


def test_singular_set_examples():
    assert singular_set(two_lines()) == [(0, 0)]
    d = ScatteringDiagram(T, 2, (ray((1, 1), {((1, 1), 1): 1}, base=(1, 0)),))
    assert singular_set(d) == [(1, 0)]
    d = ScatteringDiagram(T, 2, (line((1, 0), {((1, 0), 1): 1}), line((1, 0), {((1, 0), 1): 1}, base=(0, 1))))
    assert singular_set(d) == []


def test_singular_set_rational():
    d = ScatteringDiagram(T, 2, (line((1, 2), {((1, 2), 1): 1}, base=(Fraction(1, 3), 0)), line((1, -1), {((1, -1), 1): 1})))
    (p,) = singular_set(d)
    assert p == (Fraction(2, 9), Fraction(-2, 9))


def test_crossings_examples():
    d = ScatteringDiagram(T, 2, (line((1, 0), {((1, 0), 1): 1}),))
    c = crossings(d, SQUARE)
    assert len(c) == 2 and {x.sign for x in c} == {1, -1}
    far = Loop(((5, 5), (6, 5), (6, 6), (5, 6)))
    assert crossings(d, far) == []
    c = crossings(two_lines(), SQUARE)
    assert [x.point for x in c] == [(1, 0), (0, 1), (-1, 0), (0, -1)]


def test_path_ordered_product_examples():
    d = ScatteringDiagram(T, 2, (line((1, 0), {((1, 0), 1): 1}),))
    assert path_ordered_product(d, SQUARE).is_identity()
    assert path_ordered_product(ScatteringDiagram(T, 3), SQUARE).is_identity()
    g = path_ordered_product(two_lines(2), SQUARE)
    assert g.log.terms == {((1, 1), 2): -1}


def test_is_consistent_examples():
    d = ScatteringDiagram(T, 2, (line((1, 0), {((1, 0), 1): 1}),))
    assert is_consistent(d).consistent
    res = is_consistent(two_lines(2))
    assert not res.consistent and res.defect.leading_order() == 2
    assert is_consistent(complete(two_lines(4)).output).consistent


def test_non_single_vertex_unsupported():
    d = ScatteringDiagram(T, 2, (line((1, 0), {((1, 0), 1): 1}), line((1, 0), {((1, 0), 1): 1}, base=(0, 1))))
    with pytest.raises(UnsupportedOperationError):
        is_consistent(d)


def test_non_generic_paths():
    d = two_lines()
    with pytest.raises(NonGenericPathError, match="segment 0 runs along wall 0"):
        path_ordered_product(d, Loop(((-1, 0), (1, 0), (0, 1))))
    with pytest.raises(NonGenericPathError, match="vertex 0"):
        path_ordered_product(d, Loop(((0, 0), (1, 1), (-1, 1))))
    with pytest.raises(NonGenericPathError, match="singular point"):
        path_ordered_product(d, Loop(((-1, -1), (1, 1), (-1, 1))))
    with pytest.raises(NonGenericPathError, match="lies on wall 0"):
        path_ordered_product(d, Loop(((2, 0), (1, 1), (-1, 1))))
    r = ScatteringDiagram(T, 2, (ray((1, 0), {((1, 0), 1): 1}, base=(1, 0)),))
    with pytest.raises(NonGenericPathError, match="endpoint"):
        path_ordered_product(r, Loop(((1, -1), (1, 1), (-1, 1))))


def test_ray_only_crossed_past_its_base():
    d = ScatteringDiagram(T, 2, (ray((1, 0), {((1, 0), 1): 1}, base=(2, 0)),))
    assert crossings(d, SQUARE) == []
    assert len(crossings(d, Loop(((3, -1), (3, 1), (1, 1), (1, -1))))) == 1


@pytest.mark.parametrize("tag", ["tropical", "quantum"])
def test_loop_independence(tag):
    rng = random.Random(tag)
    fl = Flavor(tag)
    for _ in range(3):
        out = complete(random_seed(fl, 4, rng, 3)).output
        for _ in range(20):
            assert path_ordered_product(out, random_generic_loop(out, rng)).is_identity()


def test_loop_not_enclosing_vertex_is_identity(rng):
    d = two_lines(4)
    loop = Loop(((1, 1), (3, 1), (3, 3), (1, 3)))
    assert path_ordered_product(d, loop).is_identity()
    # crosses the horizontal line twice, nothing else
    loop = Loop(((5, -1), (7, -1), (7, 1), (5, 1)))
    assert len(crossings(d, loop)) == 2
    assert path_ordered_product(d, loop).is_identity()


def test_orientation_reversal_inverts(rng):
    for tag in ("tropical", "quantum", "extended"):
        fl = Flavor.extended(2) if tag == "extended" else Flavor(tag)
        for _ in range(3):
            d = random_seed(fl, 4, rng, 2 if tag == "extended" else 3)
            loop = random_generic_loop(d, rng)
            fwd = path_ordered_product(d, loop)
            back = path_ordered_product(d, loop.reversed())
            assert back == invert(fwd)
            assert not fwd.is_identity()


def test_crossing_order_stability(rng):
    d = random_seed(T, 4, rng, 3)
    small = standard_loop(d)
    scaled = Loop(tuple((3 * x, 3 * y) for x, y in small.vertices))
    assert [c.index for c in crossings(d, small)] == [c.index for c in crossings(d, scaled)]
    assert path_ordered_product(d, small) == path_ordered_product(d, scaled)


def test_lower_order_product():
    d = two_lines(4)
    assert path_ordered_product(d, SQUARE, order=2).log.terms == {((1, 1), 2): -1}


def test_standard_loop_is_counterclockwise_and_generic(rng):
    for _ in range(5):
        d = random_seed(T, 3, rng, 4)
        loop = standard_loop(d)
        assert loop.orientation == 1
        assert len(crossings(d, loop)) == 8
