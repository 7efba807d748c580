"""Camera configurations and their multiview ideals: genericity tests, the
stacked camera-variable matrices and their maximal minors, fundamental
matrices, and the torus-fixed and collinear camera families."""

from __future__ import annotations

import itertools
import warnings
from fractions import Fraction

from .exactalg import Matrix, det, eps, inverse, kernel, rank
from .groebner import IdealPresentation, eliminate
from .polyring import Polynomial, Ring, m_from_pairs

__all__ = [
    "CameraConfig", "FocalPoint", "focal_points", "is_generic",
    "stacked_camera_matrix", "sigma_minor", "multiview_generators",
    "minimal_multiview_generators", "multiview_ideal", "fundamental_matrix",
    "epipolar_form", "toric_cameras", "collinear_cameras",
    "extend_to_invertible", "diagonal_embedding_ideal",
    "multiview_ideal_via_elimination", "in_linearly_general_position",
    "projectively_equal",
]


class CameraConfig:
    """An n-tuple of rank-3 exact 3x4 camera matrices, n >= 2."""

    __slots__ = ("matrices", "_brackets")

    def __init__(self, matrices):
        ms = []
        for m in matrices:
            if not isinstance(m, Matrix):
                m = Matrix(m)
            m = Matrix([[Fraction(e) if isinstance(e, int) else e
                         for e in row] for row in m.rows])
            if (m.nrows, m.ncols) != (3, 4):
                raise ValueError("camera matrices must be 3x4")
            if rank(m) != 3:
                raise ValueError("camera matrix must have rank 3")
            ms.append(m)
        if len(ms) < 2:
            raise ValueError("need at least two cameras")
        self.matrices = tuple(ms)
        self._brackets = {}

    @property
    def n(self):
        return len(self.matrices)

    def ring(self, extended=False):
        return Ring(self.n, extended=extended)

    def bracket(self, rows):
        """Determinant of the 4x4 matrix of camera rows (camera, row), both
        0-based, taken in the listed order."""
        got = self._brackets.get(rows)
        if got is None:
            got = det(Matrix([self.matrices[c].rows[r] for c, r in rows]))
            self._brackets[rows] = got
        return got


class FocalPoint:
    """A projective center of projection: the kernel of one camera matrix."""

    __slots__ = ("camera", "coords")

    def __init__(self, camera, coords):
        self.camera = camera
        self.coords = tuple(coords)

    def __repr__(self):
        return "FocalPoint(%d, (%s))" % (
            self.camera, ":".join(str(c) for c in self.coords))


def projectively_equal(u, v):
    if len(u) != len(v):
        return False
    pivot = next((k for k, x in enumerate(v) if x), None)
    if pivot is None:
        return not any(u)
    if not u[pivot]:
        return False
    c = u[pivot] / v[pivot]
    return all(x == c * y for x, y in zip(u, v))


def focal_points(config):
    """One normalized kernel generator per camera (first nonzero entry 1)."""
    out = []
    for i, m in enumerate(config.matrices, start=1):
        basis = kernel(m)
        if len(basis) != 1:
            raise ValueError("camera %d does not have rank 3" % i)
        v = basis[0]
        pivot = next(x for x in v if x)
        out.append(FocalPoint(i, [x / pivot for x in v]))
    return out


def distinct_focal_points(config):
    fps = focal_points(config)
    for a, b in itertools.combinations(fps, 2):
        if projectively_equal(a.coords, b.coords):
            return False
    return True


def is_generic(config):
    """All 4x4 minors of the stacked 4x3n matrix of camera transposes must be
    nonzero.  Returns (flag, witness); the witness is the column quadruple of
    the first vanishing minor."""
    n = config.n
    for quad in itertools.combinations(range(3 * n), 4):
        rows = tuple((g // 3, g % 3) for g in quad)
        if not config.bracket(rows):
            return False, quad
    return True, None


def extend_to_invertible(config):
    """Extend each camera to an invertible 4x4 matrix by inserting a standard
    basis row on top (the first one that works)."""
    out = []
    for m in config.matrices:
        for k in range(4):
            top = [Fraction(int(j == k)) for j in range(4)]
            cand = Matrix([top] + [list(r) for r in m.rows])
            if det(cand):
                out.append(cand)
                break
        else:
            raise ValueError("camera cannot be extended")
    return out


def stacked_camera_matrix(config, sigma, extended=False):
    """The block matrix pairing camera rows with one variable column per
    camera of sigma: 3s x (s+4) entries, or 4s x (s+4) in the extended case.
    Entries are polynomials."""
    sigma = tuple(sorted(sigma))
    if len(sigma) < 2:
        raise ValueError("sigma needs at least two cameras")
    ring = config.ring(extended)
    letters = ring.letters
    mats = extend_to_invertible(config) if extended else config.matrices
    rpb = len(letters)
    s = len(sigma)
    rows = []
    for b, cam in enumerate(sigma):
        for r in range(rpb):
            row = [Polynomial.constant(ring, e)
                   for e in mats[cam - 1].rows[r]]
            for bb in range(s):
                if bb == b:
                    row.append(Polynomial.variable(ring, letters[r], cam))
                else:
                    row.append(Polynomial.zero(ring))
            rows.append(row)
    return Matrix(rows)


def sigma_minor(config, sigma, rows, ring=None):
    """Maximal minor of the stacked matrix for the given global row subset,
    expanded as a sum of variable products times camera brackets."""
    sigma = tuple(sorted(sigma))
    s = len(sigma)
    if len(rows) != s + 4:
        raise ValueError("need %d rows" % (s + 4))
    ring = ring or config.ring()
    letters = ring.letters
    rows = sorted(rows)
    pos = {r: i for i, r in enumerate(rows)}
    blocks = [[r for r in rows if b * 3 <= r < (b + 1) * 3] for b in range(s)]
    col_sign = sum(range(4, 4 + s)) % 2
    terms = {}
    for choice in itertools.product(*blocks):
        chosen = set(choice)
        remaining = [r for r in rows if r not in chosen]
        bracket_rows = tuple((sigma[r // 3] - 1, r % 3) for r in remaining)
        val = config.bracket(bracket_rows)
        if not val:
            continue
        if (col_sign + sum(pos[r] for r in choice)) % 2:
            val = -val
        mono = m_from_pairs([(ring.var(letters[r % 3], sigma[r // 3]), 1)
                             for r in choice])
        v = terms.get(mono, 0) + val
        if v:
            terms[mono] = v
        else:
            terms.pop(mono, None)
    return Polynomial(ring, terms)


def _sigma_subsets(n):
    for size in range(2, min(n, 4) + 1):
        subsets = itertools.combinations(range(1, n + 1), size)
        yield from sorted(subsets, key=lambda s: tuple(reversed(s)))


def multiview_generators(config, ring=None):
    """All maximal minors of the stacked matrices over 2 <= |sigma| <= 4,
    zero minors dropped; cameras in colex order, row subsets in lex order."""
    if not distinct_focal_points(config):
        warnings.warn("focal points are not pairwise distinct", RuntimeWarning)
    ring = ring or config.ring()
    out = []
    for sigma in _sigma_subsets(config.n):
        s = len(sigma)
        for rows in itertools.combinations(range(3 * s), s + 4):
            p = sigma_minor(config, sigma, rows, ring)
            if p.terms:
                out.append(p)
    return out


def minimal_multiview_generators(config, ring=None):
    """The bilinear generators plus one trilinear minor per camera triple
    (the one dropping the first row of the two larger cameras)."""
    ring = ring or config.ring()
    out = []
    for i, j in itertools.combinations(range(1, config.n + 1), 2):
        out.append(sigma_minor(config, (i, j), tuple(range(6)), ring))
    for trip in itertools.combinations(range(1, config.n + 1), 3):
        rows = [r for r in range(9) if r not in (3, 6)]
        out.append(sigma_minor(config, trip, rows, ring))
    return [p for p in out if p.terms]


def multiview_ideal(config, ring=None):
    ring = ring or config.ring()
    return IdealPresentation(ring, multiview_generators(config, ring))


def fundamental_matrix(config, i, j):
    """The 3x3 matrix of signed camera-row brackets whose bilinear form is the
    epipolar constraint between views i and j."""
    if i == j:
        raise ValueError("need two distinct cameras")
    a, b = i - 1, j - 1

    def br(r1, r2, s1, s2):
        return config.bracket(((a, r1), (a, r2), (b, s1), (b, s2)))

    return Matrix([
        [br(1, 2, 1, 2), -br(0, 2, 1, 2), br(0, 1, 1, 2)],
        [-br(1, 2, 0, 2), br(0, 2, 0, 2), -br(0, 1, 0, 2)],
        [br(1, 2, 0, 1), -br(0, 2, 0, 1), br(0, 1, 0, 1)],
    ])


def epipolar_form(config, i, j, ring=None):
    """The bilinear form p_j^T F p_i as a polynomial."""
    ring = ring or config.ring()
    F = fundamental_matrix(config, i, j)
    letters = ring.letters
    terms = {}
    for a in range(3):
        for b in range(3):
            c = F.rows[a][b]
            if not c:
                continue
            mono = m_from_pairs([(ring.var(letters[a], j), 1),
                                 (ring.var(letters[b], i), 1)])
            v = terms.get(mono, 0) + c
            if v:
                terms[mono] = v
            else:
                terms.pop(mono, None)
    return Polynomial(ring, terms)


def toric_cameras(n=4):
    """The torus-fixed configuration with focal points at the coordinate
    points; prefixes give the smaller cases."""
    if not 2 <= n <= 4:
        raise ValueError("torus-fixed family exists for n = 2, 3, 4")
    a1 = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    a2 = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    a3 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    a4 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
    mats = [a1, a2, a3, a4][:n]
    return CameraConfig([[[Fraction(e) for e in row] for row in m]
                         for m in mats])


def collinear_cameras(n, eps_value=None):
    """The one-parameter collinear family; symbolic over Q(e) by default, or
    specialized at a nonzero rational."""
    if n < 2:
        raise ValueError("need n >= 2")
    if eps_value is not None:
        eps_value = Fraction(eps_value)
        if eps_value == 0:
            raise ValueError("the family degenerates at 0; the limit is "
                             "taken at the ideal level, not the camera level")
    mats = []
    for i in range(1, n + 1):
        if eps_value is None:
            corner = eps(n - i)
        else:
            corner = eps_value ** (n - i)
        mats.append([[1, 1, 0, 0], [1, 0, 1, 0], [corner, 0, 0, 1]])
    return CameraConfig(mats)


def in_linearly_general_position(config):
    """No four focal points coplanar and no three collinear (rank checks)."""
    coords = [fp.coords for fp in focal_points(config)]
    for pair in itertools.combinations(coords, 2):
        if rank(Matrix(list(pair))) < 2:
            return False
    for trip in itertools.combinations(coords, 3):
        if rank(Matrix(list(trip))) < 3:
            return False
    for quad in itertools.combinations(coords, 4):
        if rank(Matrix(list(quad))) < 4:
            return False
    return True


def diagonal_embedding_ideal(config):
    """The ideal of 2x2 minors of the matrix whose i-th column is
    B_i^{-1} (w_i, x_i, y_i, z_i)^T, in the extended ring."""
    ring = config.ring(extended=True)
    letters = ring.letters
    bs = extend_to_invertible(config)
    cols = []
    for i, b in enumerate(bs, start=1):
        binv = inverse(b)
        col = []
        for r in range(4):
            terms = {}
            for k in range(4):
                c = binv.rows[r][k]
                if c:
                    terms[m_from_pairs([(ring.var(letters[k], i), 1)])] = c
            col.append(Polynomial(ring, terms))
        cols.append(col)
    gens = []
    for c1, c2 in itertools.combinations(range(config.n), 2):
        for r1, r2 in itertools.combinations(range(4), 2):
            p = cols[c1][r1] * cols[c2][r2] - cols[c1][r2] * cols[c2][r1]
            if p.terms:
                gens.append(p)
    return IdealPresentation(ring, gens)


def multiview_ideal_via_elimination(config):
    """Eliminate the w block from the diagonal embedding ideal."""
    jb = diagonal_embedding_ideal(config)
    ext = jb.ring
    n = ext.n
    keep = range(n, ext.nvars)
    elim = eliminate(jb, keep)
    base = Ring(n)
    out = []
    for p in elim.generators:
        terms = {tuple((v - n, e) for v, e in m): c for m, c in p.terms.items()}
        out.append(Polynomial(base, terms))
    return IdealPresentation(base, out)


def rescale_cameras(config, scalars):
    return CameraConfig([m * Fraction(c)
                         for m, c in zip(config.matrices, scalars)])


def world_transform(config, q):
    """Right-multiply every camera by an invertible 4x4 matrix."""
    return CameraConfig([m * q for m in config.matrices])


def image_transform(config, gs):
    """Left-multiply camera i by an invertible 3x3 matrix g_i."""
    return CameraConfig([g * m for g, m in zip(gs, config.matrices)])
