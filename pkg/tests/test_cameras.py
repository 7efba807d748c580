import itertools
import random
import warnings
from fractions import Fraction
from math import comb

import pytest

from mvgb.cameras import (
    CameraConfig, collinear_cameras, epipolar_form,
    extend_to_invertible, focal_points, fundamental_matrix, image_transform,
    in_linearly_general_position, is_generic, minimal_multiview_generators,
    multiview_generators, multiview_ideal, multiview_ideal_via_elimination,
    projectively_equal, rescale_cameras, sigma_minor, stacked_camera_matrix,
    toric_cameras, world_transform,
)
from mvgb.exactalg import Matrix, det, eps, rank
from mvgb.groebner import (
    hilbert_value, ideal, ideal_equal, normal_form, reduced_groebner_basis,
)
from mvgb.polyring import Ring, parse_polynomial


def random_config(rng, n):
    while True:
        mats = [[[Fraction(rng.randint(-9, 9)) for _ in range(4)]
                 for _ in range(3)] for _ in range(n)]
        try:
            c = CameraConfig(mats)
        except ValueError:
            continue
        if is_generic(c)[0]:
            return c


def proportional(p, q):
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    m = next(iter(q.terms))
    if m not in p.terms:
        return False
    c = p.terms[m] / q.terms[m]
    return p == q * c


def test_rank3_required():
    with pytest.raises(ValueError):
        CameraConfig([[[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]],
                      [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]])


def test_toric_focal_points_are_coordinate_points():
    c = toric_cameras(4)
    fps = focal_points(c)
    for i, fp in enumerate(fps):
        e = [Fraction(int(k == i)) for k in range(4)]
        assert projectively_equal(fp.coords, e)
    for m in c.matrices:
        assert rank(m) == 3


def test_collinear_focal_points():
    n = 4
    c = collinear_cameras(n)
    for i, fp in enumerate(focal_points(c), start=1):
        expected = (-1, 1, 1, eps(n - i))
        assert projectively_equal(fp.coords, expected)
    # all focal points lie on one line: difference vectors are parallel
    coords = [fp.coords for fp in focal_points(c)]
    for a, b, c3 in itertools.combinations(coords, 3):
        diff1 = [x - y for x, y in zip(a, b)]
        diff2 = [x - y for x, y in zip(a, c3)]
        assert rank(Matrix([diff1, diff2])) <= 1


def test_collinear_rejects_zero():
    with pytest.raises(ValueError):
        collinear_cameras(3, 0)


def test_focal_point_invariant_under_image_transform():
    rng = random.Random(3)
    c = random_config(rng, 2)
    g = Matrix([[Fraction(1), Fraction(2), Fraction(0)],
                [Fraction(0), Fraction(1), Fraction(1)],
                [Fraction(1), Fraction(0), Fraction(1)]])
    assert det(g) != 0
    c2 = image_transform(c, [g, Matrix.identity(3)])
    f1, f2 = focal_points(c), focal_points(c2)
    for a, b in zip(f1, f2):
        assert projectively_equal(a.coords, b.coords)


def test_is_generic():
    rng = random.Random(17)
    c = random_config(rng, 3)
    assert is_generic(c)[0]
    ok, witness = is_generic(toric_cameras(4))
    assert not ok
    cols = witness
    rows = [toric_cameras(4).matrices[g // 3].rows[g % 3] for g in cols]
    assert det(Matrix(rows)) == 0
    # two cameras with equal rowspace are never generic
    g = Matrix([[Fraction(2), Fraction(1), Fraction(0)],
                [Fraction(0), Fraction(1), Fraction(0)],
                [Fraction(1), Fraction(0), Fraction(1)]])
    c2 = CameraConfig([c.matrices[0], g * c.matrices[0]])
    assert not is_generic(c2)[0]


def test_stacked_matrix_shapes():
    rng = random.Random(5)
    c = random_config(rng, 4)
    assert (stacked_camera_matrix(c, (1, 2)).nrows,
            stacked_camera_matrix(c, (1, 2)).ncols) == (6, 6)
    assert (stacked_camera_matrix(c, (1, 2, 3)).nrows,
            stacked_camera_matrix(c, (1, 2, 3)).ncols) == (9, 7)
    assert (stacked_camera_matrix(c, (1, 2, 3, 4)).nrows,
            stacked_camera_matrix(c, (1, 2, 3, 4)).ncols) == (12, 8)
    ext = stacked_camera_matrix(c, (1, 2), extended=True)
    assert (ext.nrows, ext.ncols) == (8, 6)
    with pytest.raises(ValueError):
        stacked_camera_matrix(c, (1,))


def test_sigma_minor_matches_determinant_oracle():
    rng = random.Random(11)
    c = random_config(rng, 3)
    for sigma in [(1, 2), (2, 3), (1, 2, 3)]:
        s = len(sigma)
        A = stacked_camera_matrix(c, sigma)
        subsets = list(itertools.combinations(range(3 * s), s + 4))
        rng.shuffle(subsets)
        for rows in subsets[:6]:
            oracle = det(A.submatrix(rows, range(s + 4)))
            assert sigma_minor(c, sigma, rows) == oracle


def test_minor_counts_and_leading_monomials():
    rng = random.Random(2)
    c = random_config(rng, 3)
    gens = multiview_generators(c)
    assert len(gens) == comb(3, 2) + comb(3, 3) * comb(9, 7)
    from mvgb.monomial import generic_initial_ideal
    from mvgb.polyring import block_order
    o = block_order(c.ring())
    lms = {g.leading_term(o)[1] for g in gens}
    for m in generic_initial_ideal(3).gens:
        assert m in lms


def test_pair_minor_leading_term_is_x_i_x_j():
    rng = random.Random(4)
    c = random_config(rng, 2)
    from mvgb.polyring import block_order, parse_monomial
    p = sigma_minor(c, (1, 2), tuple(range(6)))
    _, lm = p.leading_term(block_order(c.ring()))
    assert lm == parse_monomial(c.ring(), "x1*x2")


def test_collinear_pair_minor_formula():
    n = 4
    c = collinear_cameras(n)
    ring = c.ring()
    for i, j in itertools.combinations(range(1, n + 1), 2):
        p = sigma_minor(c, (i, j), tuple(range(6)), ring)
        quad = parse_polynomial(ring, "x%d*y%d - x%d*y%d" % (i, j, j, i))
        assert p == quad * (eps(n - j) - eps(n - i))


def test_toric_three_camera_ideal():
    c = toric_cameras(3)
    ring = Ring(3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        gens = multiview_generators(c, ring)
    expected = [parse_polynomial(ring, s) for s in (
        "z1*y3 - x1*z3", "z2*x3 - x2*z3", "z1*y2 - y1*z2",
        "x1*y2*x3 - y1*x2*y3")]
    assert ideal_equal(ideal(ring, gens), ideal(ring, expected))


def test_fundamental_matrix_rank_and_toric_pair():
    rng = random.Random(19)
    for _ in range(10):
        c = random_config(rng, 2)
        assert rank(fundamental_matrix(c, 1, 2)) <= 2
    tor = toric_cameras(4)
    F = fundamental_matrix(tor, 1, 2)
    assert F.rows[0][0] == 0
    assert rank(F) <= 2
    ring = Ring(4)
    form = epipolar_form(tor, 1, 2, ring)
    assert proportional(form, parse_polynomial(ring, "z1*y2 - y1*z2"))


def test_epipolar_form_proportional_to_pair_minor():
    rng = random.Random(23)
    for _ in range(5):
        c = random_config(rng, 2)
        assert proportional(epipolar_form(c, 1, 2),
                            sigma_minor(c, (1, 2), tuple(range(6))))


def test_minors_reduce_to_zero_mod_basis():
    rng = random.Random(29)
    for n in (2, 3):
        c = random_config(rng, n)
        I = multiview_ideal(c)
        gb = reduced_groebner_basis(I)
        for g in multiview_generators(c):
            assert normal_form(g, gb).is_zero


def test_ideal_invariance_under_rescaling_and_world_transform():
    rng = random.Random(31)
    c = random_config(rng, 3)
    I = multiview_ideal(c)
    scaled = rescale_cameras(c, [Fraction(2), Fraction(-3), Fraction(5, 7)])
    assert reduced_groebner_basis(I) == \
        reduced_groebner_basis(multiview_ideal(scaled))
    q = Matrix([[Fraction(x) for x in row] for row in
                [[1, 0, 2, 0], [0, 1, 0, 0], [1, 0, 1, 0], [0, 3, 0, 1]]])
    assert det(q) != 0
    moved = world_transform(c, q)
    assert reduced_groebner_basis(I) == \
        reduced_groebner_basis(multiview_ideal(moved))


def test_distinct_configs_have_distinct_ideals():
    rng = random.Random(37)
    a = random_config(rng, 3)
    b = random_config(rng, 3)
    assert reduced_groebner_basis(multiview_ideal(a)) != \
        reduced_groebner_basis(multiview_ideal(b))


def test_linearly_general_position():
    rng = random.Random(41)
    assert in_linearly_general_position(random_config(rng, 4))
    assert not in_linearly_general_position(collinear_cameras(3, Fraction(2)))


def test_extend_to_invertible_toric_gives_permutations():
    c = toric_cameras(4)
    bs = extend_to_invertible(c)
    for i, b in enumerate(bs):
        assert b.rows[0] == [Fraction(int(k == i)) for k in range(4)]
        assert det(b) != 0


def test_elimination_route_matches_minors():
    rng = random.Random(43)
    c = random_config(rng, 2)
    ja = multiview_ideal_via_elimination(c)
    assert hilbert_value(ja, (1, 1)) == 8
    assert ideal_equal(ja, multiview_ideal(c))


def test_coincident_focal_points_drop_hilbert_value():
    rng = random.Random(47)
    c = random_config(rng, 2)
    g = Matrix([[Fraction(1), Fraction(2), Fraction(0)],
                [Fraction(0), Fraction(1), Fraction(1)],
                [Fraction(1), Fraction(0), Fraction(1)]])
    bad = CameraConfig([c.matrices[0], g * c.matrices[0]])
    assert hilbert_value(multiview_ideal_via_elimination(bad), (1, 1)) <= 6


def test_warns_on_coincident_focal_points():
    rng = random.Random(53)
    c = random_config(rng, 2)
    g = Matrix([[Fraction(1), Fraction(1), Fraction(0)],
                [Fraction(0), Fraction(1), Fraction(0)],
                [Fraction(0), Fraction(0), Fraction(1)]])
    bad = CameraConfig([c.matrices[0], g * c.matrices[0]])
    with pytest.warns(RuntimeWarning):
        multiview_generators(bad)


def test_generic_fundamental_matrix_attains_rank_two():
    rng = random.Random(59)
    c = random_config(rng, 2)
    assert rank(fundamental_matrix(c, 1, 2)) == 2
