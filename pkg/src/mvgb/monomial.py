"""Monomial ideal combinatorics: membership, minimal generators, multigraded
standard-monomial counting, minimal primes, Borel fixedness, facet complexes
with shelling checks, and the named ideals of multiview geometry."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .polyring import (
    Polynomial, Ring, format_monomial, m_deg, m_div, m_divides, m_from_pairs,
    m_lcm, m_mul, m_one, m_squarefree, m_var, block_order,
)

__all__ = [
    "MonomialIdeal", "generic_initial_ideal", "collinear_initial_ideal",
    "multiview_hilbert_function", "standard_monomial_count",
    "standard_count_box", "minimal_primes", "multidegree_support",
    "is_borel_fixed", "FacetComplex", "stanley_reisner_complex", "is_shelling",
    "generic_shelling_order", "relabel", "symmetry_orbits", "ideal_key",
]


def _sort_key(ring):
    order = block_order(ring)

    def key(m):
        return (m_deg(m),) + tuple(-e for e in order.key(m))

    return key


class MonomialIdeal:
    """A monomial ideal given by its canonical minimal generating set."""

    __slots__ = ("ring", "gens")

    def __init__(self, ring, monomials):
        ms = set(monomials)
        if m_one in ms:
            ms = {m_one}
        minimal = [m for m in ms
                   if not any(g != m and m_divides(g, m) for g in ms)]
        minimal.sort(key=_sort_key(ring))
        self.ring = ring
        self.gens = tuple(minimal)

    def __contains__(self, mono):
        return any(m_divides(g, mono) for g in self.gens)

    def is_squarefree(self):
        return all(m_squarefree(g) for g in self.gens)

    def support_masks(self):
        return [sum(1 << v for v, _ in g) for g in self.gens]

    def intersection(self, other):
        if other.ring != self.ring:
            raise ValueError("ideals from different rings")
        return MonomialIdeal(self.ring, [m_lcm(a, b) for a in self.gens
                                         for b in other.gens])

    def polynomials(self):
        return [Polynomial.monomial(self.ring, g) for g in self.gens]

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return (isinstance(other, MonomialIdeal) and self.ring == other.ring
                and self.gens == other.gens)

    def __hash__(self):
        return hash((self.ring, self.gens))

    def __repr__(self):
        return "MonomialIdeal<%s>" % ", ".join(
            format_monomial(self.ring, g) for g in self.gens)


def ideal_key(I):
    """Canonical hashable key, usable for deterministic sorting."""
    return I.gens


def ideal_lines(I):
    return [format_monomial(I.ring, g) for g in I.gens]


# ---------------------------------------------------------------------------
# the named ideals

def generic_initial_ideal(n):
    """Minimal generators x_i x_j, x_i y_j y_k, y_i y_j y_k y_l over distinct
    camera indices: the common initial ideal of generic multiview ideals."""
    if n < 2:
        raise ValueError("need n >= 2")
    ring = Ring(n)
    gens = []
    x = [ring.var("x", i) for i in range(1, n + 1)]
    y = [ring.var("y", i) for i in range(1, n + 1)]
    for i, j in itertools.combinations(range(n), 2):
        gens.append(m_from_pairs([(x[i], 1), (x[j], 1)]))
    for trip in itertools.combinations(range(n), 3):
        for i in trip:
            rest = [t for t in trip if t != i]
            gens.append(m_from_pairs([(x[i], 1)] + [(y[j], 1) for j in rest]))
    for quad in itertools.combinations(range(n), 4):
        gens.append(m_from_pairs([(y[i], 1) for i in quad]))
    return MonomialIdeal(ring, gens)


def collinear_initial_ideal(n):
    """Minimal generators x_i y_j (i<j) and x_i z_j x_k, y_i z_j y_k,
    y_i z_j x_k (i<j<k): the lex initial ideal of the collinear degeneration."""
    if n < 2:
        raise ValueError("need n >= 2")
    ring = Ring(n)
    gens = []
    x = [ring.var("x", i) for i in range(1, n + 1)]
    y = [ring.var("y", i) for i in range(1, n + 1)]
    z = [ring.var("z", i) for i in range(1, n + 1)]
    for i, j in itertools.combinations(range(n), 2):
        gens.append(m_from_pairs([(x[i], 1), (y[j], 1)]))
    for i, j, k in itertools.combinations(range(n), 3):
        gens.append(m_from_pairs([(x[i], 1), (z[j], 1), (x[k], 1)]))
        gens.append(m_from_pairs([(y[i], 1), (z[j], 1), (y[k], 1)]))
        gens.append(m_from_pairs([(y[i], 1), (z[j], 1), (x[k], 1)]))
    return MonomialIdeal(ring, gens)


def multiview_hilbert_function(n, u):
    """binom(u1+...+un+3, 3) - sum_i binom(u_i+2, 3)."""
    if len(u) != n:
        raise ValueError("multidegree length mismatch")
    return comb(sum(u) + 3, 3) - sum(comb(ui + 2, 3) for ui in u)


# ---------------------------------------------------------------------------
# standard monomial counting

def _blocks(ring):
    return [[ring.var(L, i) for L in ring.letters]
            for i in range(1, ring.n + 1)]


def _block_monomials(block, d):
    """All exponent tuples of total degree d on the given block variables."""
    out = []

    def rec(idx, rem, acc):
        if idx == len(block) - 1:
            out.append(acc + [(block[idx], rem)] if rem else list(acc))
            return
        for e in range(rem + 1):
            rec(idx + 1, rem - e, acc + ([(block[idx], e)] if e else []))

    rec(0, d, [])
    return [m_from_pairs(p) for p in out]


def standard_monomial_count(I, u):
    """Number of monomials of multidegree u divisible by no generator of I."""
    ring = I.ring
    if len(u) != ring.n:
        raise ValueError("multidegree length mismatch")
    blocks = _blocks(ring)
    if not I.is_squarefree():
        count = 0
        for combo in itertools.product(
                *[_block_monomials(b, d) for b, d in zip(blocks, u)]):
            m = m_one
            for part in combo:
                m = m_mul(m, part)
            if m not in I:
                count += 1
        return count
    gen_masks = I.support_masks()
    total = 0
    choices = []
    for b, d in zip(blocks, u):
        opts = []
        if d == 0:
            opts.append((0, 1))
        else:
            for k in range(1, min(len(b), d) + 1):
                ways = comb(d - 1, k - 1)
                for sub in itertools.combinations(b, k):
                    opts.append((sum(1 << v for v in sub), ways))
        choices.append(opts)

    def rec(idx, mask, ways):
        nonlocal total
        if idx == len(choices):
            if not any(g & mask == g for g in gen_masks):
                total += ways
            return
        for sub, w in choices[idx]:
            rec(idx + 1, mask | sub, ways * w)

    rec(0, 0, 1)
    return total


def standard_count_box(I, bound=3):
    """Table of standard-monomial counts for every multidegree u <= bound.

    Requires squarefree generators; counts are derived from the census of
    standard support patterns, aggregated by per-block support size.
    """
    ring = I.ring
    if not I.is_squarefree():
        raise ValueError("box counting requires squarefree generators")
    blocks = _blocks(ring)
    gen_masks = I.support_masks()
    n = ring.n
    bsz = len(blocks[0])
    per_block = []
    for b in blocks:
        opts = []
        for k in range(0, bsz + 1):
            for sub in itertools.combinations(b, k):
                opts.append((sum(1 << v for v in sub), k))
        per_block.append(opts)
    size_counts = {}

    def rec(idx, mask, sizes):
        if idx == n:
            if not any(g & mask == g for g in gen_masks):
                key = tuple(sizes)
                size_counts[key] = size_counts.get(key, 0) + 1
            return
        for sub, k in per_block[idx]:
            rec(idx + 1, mask | sub, sizes + [k])

    rec(0, 0, [])
    # contract the size-count tensor against T[u][k] = C(u-1, k-1) per axis
    T = [[1 if (u == 0 and k == 0) else
          (comb(u - 1, k - 1) if 0 < k <= u else 0)
          for k in range(bsz + 1)] for u in range(bound + 1)]
    table = dict(size_counts)
    for axis in range(n):
        new = {}
        for key, cnt in table.items():
            if cnt == 0:
                continue
            for u in range(bound + 1):
                f = T[u][key[axis]]
                if f:
                    nk = key[:axis] + (u,) + key[axis + 1:]
                    new[nk] = new.get(nk, 0) + f * cnt
        table = new
    box = {}
    for u in itertools.product(range(bound + 1), repeat=n):
        box[u] = table.get(u, 0)
    return box


# ---------------------------------------------------------------------------
# minimal primes and facet complexes

def _bits(mask):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def _minimal_transversals(edges):
    """All minimal hitting sets of a list of nonempty bitmask edges."""
    if not edges:
        return [0]
    results = set()

    def rec(cover, banned, remaining):
        if not remaining:
            results.add(cover)
            return
        edge = min(remaining, key=lambda e: bin(e).count("1"))
        local_ban = banned
        for v in _bits(edge & ~banned):
            bit = 1 << v
            rest = [e for e in remaining if not e & bit]
            rec(cover | bit, local_ban, rest)
            local_ban |= bit

    rec(0, 0, list(edges))
    out = []
    for c in sorted(results, key=lambda m: bin(m).count("1")):
        if not any(kept & c == kept for kept in out):
            out.append(c)
    return out


def minimal_primes(I):
    """Minimal primes of a squarefree monomial ideal, each a variable set."""
    if not I.is_squarefree():
        raise ValueError("minimal primes implemented for squarefree ideals")
    if not I.gens:
        return []
    edges = I.support_masks()
    covers = _minimal_transversals(edges)
    primes = [frozenset(_bits(c)) for c in covers]
    return sorted(primes, key=lambda p: (len(p), sorted(p)))


def multidegree_support(I):
    """Multidegree as a multiset of per-camera variable counts, one term per
    minimal prime of minimal codimension."""
    primes = minimal_primes(I)
    if not primes:
        return Counter()
    codim = min(len(p) for p in primes)
    ring = I.ring
    terms = Counter()
    for p in primes:
        if len(p) != codim:
            continue
        vec = [0] * ring.n
        for v in p:
            vec[v % ring.n] += 1
        terms[tuple(vec)] += 1
    return terms


def is_borel_fixed(I):
    """Exchange test: replacing one z_i by y_i or x_i, or one y_i by x_i, in
    any generator must stay in the ideal.  Returns (flag, witness)."""
    ring = I.ring
    if ring.extended:
        raise ValueError("borel test defined for the 3-letter ring")
    for g in I.gens:
        for i in range(1, ring.n + 1):
            moves = [("z", "y"), ("z", "x"), ("y", "x")]
            for frm, to in moves:
                vf, vt = ring.var(frm, i), ring.var(to, i)
                q = m_div(g, m_var(vf))
                if q is None:
                    continue
                m2 = m_mul(q, m_var(vt))
                if m2 not in I:
                    return False, (g, ring.name(vf), ring.name(vt), m2)
    return True, None


@dataclass(frozen=True)
class FacetComplex:
    ring: Ring
    facets: tuple
    labels: tuple

    def as_json(self):
        names = [self.ring.name(v) for v in range(self.ring.nvars)]
        return {
            "vertices": names,
            "facets": [sorted(self.ring.name(v) for v in f)
                       for f in self.facets],
            "labels": list(self.labels),
        }


def _facet_label(ring, facet):
    dims = []
    for i in range(1, ring.n + 1):
        k = sum(1 for L in ring.letters if ring.var(L, i) in facet)
        if k:
            dims.append(k - 1)
    pos = sorted(d for d in dims if d > 0)
    if pos == [1, 1, 1]:
        return "cube"
    if pos == [1, 2]:
        return "prism"
    return None


def stanley_reisner_complex(I):
    """Facets are the complements of the minimal primes."""
    ring = I.ring
    allvars = frozenset(range(ring.nvars))
    facets = tuple(allvars - p for p in minimal_primes(I))
    labels = tuple(_facet_label(ring, f) for f in facets)
    return FacetComplex(ring, facets, labels)


def is_shelling(facets, order=None):
    """Check that the facet sequence is a shelling: every facet after the
    first has a unique minimal face not contained in earlier facets."""
    if isinstance(facets, FacetComplex):
        facets = facets.facets
    facets = [frozenset(f) for f in (order if order is not None else facets)]
    for a, b in itertools.combinations(facets, 2):
        if a <= b or b <= a:
            raise ValueError("facet list contains a containment")
    for j in range(1, len(facets)):
        diffs = []
        for i in range(j):
            d = facets[j] - facets[i]
            diffs.append(sum(1 << v for v in d))
        if len(_minimal_transversals(diffs)) != 1:
            return False
    return True


def generic_shelling_order(n):
    """The facet order of the generic initial ideal induced by listing the
    defining vectors u lexicographically, from (0,1,2,...,2) to (2,...,2,1,0)."""
    ring = Ring(n)
    us = []
    for trip in itertools.combinations(range(n), 3):
        u = [2] * n
        for t in trip:
            u[t] = 1
        us.append(tuple(u))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            u = [2] * n
            u[i] = 0
            u[j] = 1
            us.append(tuple(u))
    us.sort()
    letters = ("x", "y", "z")
    facets = []
    for u in us:
        f = frozenset(ring.var(letters[i - 1], j + 1)
                      for j in range(n) for i in range(1, 4) if i > u[j])
        facets.append(f)
    return facets


# ---------------------------------------------------------------------------
# relabeling symmetry

def relabel(I, camera_perm, letter_perms):
    """Image of the ideal under per-camera letter permutations followed by a
    relabeling of the cameras.

    camera_perm maps old 0-based camera c to camera_perm[c]; letter_perms[c]
    maps old letter slot (0=x, 1=y, 2=z) to its new slot.
    """
    ring = I.ring
    n = ring.n
    new_gens = []
    for g in I.gens:
        pairs = []
        for v, e in g:
            slot, cam = divmod(v, n)
            pairs.append((letter_perms[cam][slot] * n + camera_perm[cam], e))
        new_gens.append(m_from_pairs(pairs))
    return MonomialIdeal(ring, new_gens)


def _group_generators(n):
    """Generators of the wreath-type action: adjacent camera swaps and the
    per-camera letter transpositions (x y) and (y z)."""
    idl = tuple(range(n))
    idp = tuple((0, 1, 2) for _ in range(n))
    gens = []
    for c in range(n - 1):
        perm = list(idl)
        perm[c], perm[c + 1] = perm[c + 1], perm[c]
        gens.append((tuple(perm), idp))
    for c in range(n):
        for swap in ((1, 0, 2), (0, 2, 1)):
            lp = list(idp)
            lp[c] = swap
            gens.append((idl, tuple(lp)))
    return gens


_VAR_PERM_CACHE = {}


def _group_var_perms(n):
    """Variable permutation arrays for the whole group (S3)^n x| S_n."""
    got = _VAR_PERM_CACHE.get(n)
    if got is None:
        perms3 = list(itertools.permutations(range(3)))
        out = []
        for tau in itertools.permutations(range(n)):
            for combo in itertools.product(perms3, repeat=n):
                var_perm = [0] * (3 * n)
                for c in range(n):
                    for slot in range(3):
                        var_perm[slot * n + c] = combo[c][slot] * n + tau[c]
                out.append(tuple(var_perm))
        got = tuple(out)
        _VAR_PERM_CACHE[n] = got
    return got


def canonical_form_key(I):
    """Lexicographically minimal serialized image over the whole group."""
    group = _group_var_perms(I.ring.n)
    if I.is_squarefree():
        if len(group) > 1000 and I.gens:
            return ("sf", _canonical_masks_vectorized(I, group))
        masks = I.support_masks()
        best = None
        for perm in group:
            img = []
            for mask in masks:
                nm = 0
                while mask:
                    b = mask & -mask
                    nm |= 1 << perm[b.bit_length() - 1]
                    mask ^= b
                img.append(nm)
            img.sort()
            key = tuple(img)
            if best is None or key < best:
                best = key
        return ("sf", best)
    best = None
    for perm in group:
        img = sorted(tuple(sorted((perm[v], e) for v, e in g))
                     for g in I.gens)
        key = tuple(img)
        if best is None or key < best:
            best = key
    return ("gen", best)


_POWER_PERM_CACHE = {}


def _canonical_masks_vectorized(I, group):
    import numpy as np

    nv = I.ring.nvars
    pp = _POWER_PERM_CACHE.get(nv)
    if pp is None:
        P = np.array(group, dtype=np.int64)
        pp = (np.int64(1) << P).T  # (nv, |G|): 2^{perm[v]} per group element
        _POWER_PERM_CACHE[nv] = pp
    B = np.zeros((len(I.gens), nv), dtype=np.int64)
    for gi, g in enumerate(I.gens):
        for v, _ in g:
            B[gi, v] = 1
    masks = B @ pp                 # (gens, |G|) remapped support masks
    masks.sort(axis=0)
    order = np.lexsort(masks[::-1])
    return tuple(int(x) for x in masks[:, order[0]])


def symmetry_orbits(ideals, strict=False):
    """Partition a set of monomial ideals into orbits of the action of
    per-camera letter permutations composed with camera relabeling.

    Membership in one orbit is decided by the whole-group canonical form, so
    ideals related only through images outside the input set still land in
    one class.  With strict=True the input set must be closed under the
    action.  Returns (representative, members) pairs sorted by representative
    key; the representative is the member with the smallest key.
    """
    ideals = list(ideals)
    if not ideals:
        return []
    ring = ideals[0].ring
    if strict:
        index = {ideal_key(I) for I in ideals}
        for I in ideals:
            for cp, lp in _group_generators(ring.n):
                if ideal_key(relabel(I, cp, lp)) not in index:
                    raise ValueError("ideal set is not closed under the action")
    groups = {}
    for I in ideals:
        groups.setdefault(canonical_form_key(I), []).append(I)
    orbits = []
    for members in groups.values():
        ms = sorted(members, key=ideal_key)
        orbits.append((ms[0], ms))
    orbits.sort(key=lambda o: ideal_key(o[0]))
    return orbits
