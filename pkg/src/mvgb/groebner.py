"""Buchberger engine over Q and Q(e): reduced bases, normal forms, initial
ideals, ideal equality, elimination, intersection, multigraded Hilbert values,
and term-order families for universal basis checking."""

from __future__ import annotations

import heapq
import itertools
import random
from fractions import Fraction

from .exactalg import EpsRational, _pdiv_exact, _pgcd, _pmul
from .monomial import MonomialIdeal, standard_monomial_count
from .polyring import (
    LexOrder, Polynomial, WeightOrder, elimination_order, m_coprime,
    m_deg, m_div, m_divides, m_lcm, m_mul, m_var, block_order,
)

__all__ = [
    "IdealPresentation", "ideal", "reduced_groebner_basis", "normal_form",
    "initial_ideal", "ideal_equal", "eliminate", "intersect", "hilbert_value",
    "minimal_generators", "is_groebner_basis", "universal_groebner_check",
    "permuted_block_lex_orders", "random_weight_orders",
]


# ---------------------------------------------------------------------------
# raw polynomial dictionaries

def _domain_is_eps(terms):
    return any(isinstance(c, EpsRational) for c in terms.values())


def _content_normalize(terms, key):
    """Scale to a canonical integral form: coprime integer coefficients over
    Q, primitive polynomial coefficients over Q(e); leading sign positive."""
    if not terms:
        return terms
    lead = max(terms, key=key)
    if _domain_is_eps(terms):
        coeffs = {m: c if isinstance(c, EpsRational) else EpsRational(c)
                  for m, c in terms.items()}
        den = (1,)
        for c in coeffs.values():
            den = _pdiv_exact(_pmul(den, c.den), _pgcd(den, c.den))
        nums = {m: _pmul(c.num, _pdiv_exact(den, c.den))
                for m, c in coeffs.items()}
        g = ()
        for v in nums.values():
            g = _pgcd(g, v)
        lead_num = _pdiv_exact(nums[lead], g)
        flip = lead_num[-1] < 0
        out = {}
        for m, v in nums.items():
            v = _pdiv_exact(v, g)
            out[m] = EpsRational(tuple(-x for x in v) if flip else v)
        return out
    den = 1
    num = 0
    for c in terms.values():
        den = den * c.denominator // _igcd(den, c.denominator)
    for c in terms.values():
        num = _igcd(num, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, num)
    if terms[lead] < 0:
        scale = -scale
    return {m: c * scale for m, c in terms.items()}


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _prep(terms, key):
    lm = max(terms, key=key)
    return (lm, terms[lm], terms)


def _nf_dict(p, G, key):
    """Full normal form of the dict p against prepared triples G."""
    p = dict(p)
    out = {}
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        q = None
        for lm, lc, terms in G:
            q = m_div(m, lm)
            if q is not None:
                f = c / lc
                for gm, gc in terms.items():
                    if gm == lm:
                        continue
                    mm = m_mul(gm, q)
                    v = p.get(mm, 0) - f * gc
                    if v:
                        p[mm] = v
                    else:
                        p.pop(mm, None)
                break
        if q is None:
            out[m] = c
    return out


def _spoly(gi, gj, key):
    lmi, lci, ti = gi
    lmj, lcj, tj = gj
    L = m_lcm(lmi, lmj)
    qi, qj = m_div(L, lmi), m_div(L, lmj)
    s = {}
    for m, c in ti.items():
        mm = m_mul(m, qi)
        v = s.get(mm, 0) + c / lci
        if v:
            s[mm] = v
        else:
            s.pop(mm, None)
    for m, c in tj.items():
        mm = m_mul(m, qj)
        v = s.get(mm, 0) - c / lcj
        if v:
            s[mm] = v
        else:
            s.pop(mm, None)
    return s


def _buchberger(gen_dicts, order):
    key = order.key
    G = []
    for t in gen_dicts:
        if t:
            G.append(_prep(_content_normalize(t, key), key))
    G.sort(key=lambda g: (m_deg(g[0]), key(g[0])))
    pairs = []
    pending = set()

    def push_pairs(j):
        for i in range(j):
            L = m_lcm(G[i][0], G[j][0])
            heapq.heappush(pairs, (m_deg(L), key(L), i, j))
            pending.add((i, j))

    for j in range(1, len(G)):
        push_pairs(j)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        lmi, lmj = G[i][0], G[j][0]
        if m_coprime(lmi, lmj):
            continue
        L = m_lcm(lmi, lmj)
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if m_divides(G[k][0], L):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        r = _nf_dict(_spoly(G[i], G[j], key), G, key)
        if r:
            G.append(_prep(_content_normalize(r, key), key))
            push_pairs(len(G) - 1)
    return G


def _reduce_basis(G, key):
    """Minimalize, tail-reduce and make monic; sorted by leading monomial."""
    kept = []
    for g in sorted(G, key=lambda g: (m_deg(g[0]), key(g[0]))):
        if not any(m_divides(h[0], g[0]) for h in kept):
            kept.append(g)
    out = []
    for g in kept:
        others = [h for h in kept if h[0] != g[0]]
        r = _nf_dict(g[2], others, key)
        lm = max(r, key=key)
        lc = r[lm]
        out.append({m: c / lc for m, c in r.items()})
    out.sort(key=lambda t: key(max(t, key=key)))
    return out


# ---------------------------------------------------------------------------
# public interface

class IdealPresentation:
    """An ideal given by generators, with cached reduced bases per order."""

    __slots__ = ("ring", "generators", "_gb")

    def __init__(self, ring, generators):
        gens = []
        for p in generators:
            if isinstance(p, Polynomial):
                if p.ring != ring:
                    raise ValueError("generator from a different ring")
                if p.terms:
                    gens.append(p)
            else:
                raise TypeError("generators must be polynomials")
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = {}

    def reduced_basis(self, order=None):
        order = order or block_order(self.ring)
        sig = order.signature
        got = self._gb.get(sig)
        if got is None:
            dicts = _buchberger([dict(p.terms) for p in self.generators], order)
            out = _reduce_basis(dicts, order.key)
            got = tuple(Polynomial(self.ring, t) for t in out)
            self._gb[sig] = got
        return got

    def __repr__(self):
        return "IdealPresentation<%d generators over %r>" % (
            len(self.generators), self.ring)


def ideal(ring, generators):
    return IdealPresentation(ring, list(generators))


def _as_ideal(I, ring=None):
    if isinstance(I, IdealPresentation):
        return I
    if isinstance(I, MonomialIdeal):
        return IdealPresentation(I.ring, I.polynomials())
    gens = list(I)
    if not gens and ring is None:
        raise ValueError("empty generator list needs an explicit ring")
    return IdealPresentation(ring or gens[0].ring, gens)


def reduced_groebner_basis(I, order=None):
    """The unique reduced basis: monic, auto-reduced, sorted by leading term."""
    return _as_ideal(I).reduced_basis(order)


def normal_form(p, basis, order=None):
    """Remainder of p on division by a Groebner basis for the given order."""
    order = order or block_order(p.ring)
    prepped = [_prep(dict(g.terms), order.key) for g in basis if g.terms]
    return Polynomial(p.ring, _nf_dict(dict(p.terms), prepped, order.key))


def initial_ideal(I, order=None):
    I = _as_ideal(I)
    order = order or block_order(I.ring)
    gb = I.reduced_basis(order)
    return MonomialIdeal(I.ring, [g.leading_term(order)[1] for g in gb])


def ideal_equal(I, J):
    I, J = _as_ideal(I), _as_ideal(J)
    if I.ring != J.ring:
        raise ValueError("ideals from different rings")
    return I.reduced_basis() == J.reduced_basis()


def eliminate(I, keep):
    """Generators of I intersected with the subring on the kept variables."""
    I = _as_ideal(I)
    keep = set(keep)
    eliminated = [v for v in range(I.ring.nvars) if v not in keep]
    order = elimination_order(I.ring, eliminated)
    gb = I.reduced_basis(order)
    out = [g for g in gb
           if all(v in keep for m in g.terms for v, _ in m)]
    return IdealPresentation(I.ring, out)


def intersect(I, J):
    """Intersection via the auxiliary-variable elimination t*I + (1-t)*J."""
    I, J = _as_ideal(I), _as_ideal(J)
    if I.ring != J.ring:
        raise ValueError("ideals from different rings")
    ring = I.ring
    ring2 = ring.with_aux(1)
    tvar = ring2.nvars - 1
    t = Polynomial.monomial(ring2, m_var(tvar))
    gens = [t * p.in_ring(ring2) for p in I.generators]
    gens += [(1 - t) * p.in_ring(ring2) for p in J.generators]
    order = LexOrder(ring2, (tvar,) + tuple(range(ring2.nvars - 1)))
    gb = _reduce_basis(_buchberger([dict(p.terms) for p in gens], order),
                       order.key)
    out = []
    for terms in gb:
        if all(v != tvar for m in terms for v, _ in m):
            out.append(Polynomial(ring, dict(terms)))
    return IdealPresentation(ring, out)


def hilbert_value(I, u):
    """Number of standard monomials of multidegree u: the value at u of the
    multigraded Hilbert function of the quotient by I."""
    if isinstance(I, MonomialIdeal):
        return standard_monomial_count(I, u)
    I = _as_ideal(I)
    if all(len(p.terms) == 1 for p in I.generators):
        mono = MonomialIdeal(I.ring, [next(iter(p.terms))
                                      for p in I.generators])
        return standard_monomial_count(mono, u)
    return standard_monomial_count(initial_ideal(I), u)


def minimal_generators(I):
    """Prune the generator list to an irredundant generating subset."""
    I = _as_ideal(I)
    order = block_order(I.ring)
    gens = sorted(I.generators,
                  key=lambda p: (p.total_degree(),
                                 order.key(p.leading_term(order)[1])))
    kept = list(gens)
    i = 0
    while i < len(kept):
        rest = kept[:i] + kept[i + 1:]
        if rest:
            gb = reduced_groebner_basis(IdealPresentation(I.ring, rest))
            if not normal_form(kept[i], gb):
                kept = rest
                continue
        i += 1
    return kept


# ---------------------------------------------------------------------------
# basis checking and order families

def is_groebner_basis(gens, order, use_chain=True):
    """Does the set reduce all its S-polynomials to zero under the order?

    Returns (flag, witness); the witness is the offending generator pair.
    """
    key = order.key
    G = [_prep(dict(p.terms), key) for p in gens if p.terms]
    done = set()
    idx = sorted(range(len(G)), key=lambda i: (m_deg(G[i][0]), key(G[i][0])))
    for a in range(len(idx)):
        for b in range(a):
            i, j = idx[b], idx[a]
            lmi, lmj = G[i][0], G[j][0]
            if m_coprime(lmi, lmj):
                done.add((min(i, j), max(i, j)))
                continue
            if use_chain:
                L = m_lcm(lmi, lmj)
                skip = False
                for k in range(len(G)):
                    if k in (i, j):
                        continue
                    if m_divides(G[k][0], L):
                        pik = (min(i, k), max(i, k))
                        pjk = (min(j, k), max(j, k))
                        if pik in done and pjk in done:
                            skip = True
                            break
                if skip:
                    done.add((min(i, j), max(i, j)))
                    continue
            if _nf_dict(_spoly(G[i], G[j], key), G, key):
                return False, (i, j)
            done.add((min(i, j), max(i, j)))
    return True, None


def permuted_block_lex_orders(ring):
    """All 6^n block lexicographic orders obtained by permuting each camera's
    three letters independently."""
    if ring.extended or ring.aux:
        raise ValueError("order family defined on the plain 3-letter ring")
    n = ring.n
    perms3 = list(itertools.permutations(range(3)))
    out = []
    for combo in itertools.product(perms3, repeat=n):
        perm = []
        for slot in range(3):
            for i in range(n):
                perm.append(combo[i][slot] * n + i)
        out.append(LexOrder(ring, tuple(perm)))
    return out


def random_weight_orders(ring, count, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        weights = [rng.randint(1, 10 ** 6) for _ in range(ring.nvars)]
        out.append(WeightOrder(ring, weights))
    return out


def _ugc_worker(payload):
    gens, order, use_chain = payload
    return is_groebner_basis(gens, order, use_chain=use_chain)


def universal_groebner_check(gens, orders=None, weight_samples=25, seed=0,
                             use_chain=True, jobs=1):
    """Check the set is a Groebner basis under every order of the family.

    The default family is every block lexicographic order from per-camera
    letter permutations (6^n of them, built only for n <= 3) together with
    weight_samples random weight-generic orders.  A finite family cannot
    exhaust all term orders; for sets of multilinear polynomials whose
    supports are full and which are closed under the per-camera letter
    permutations, the initial monomials under an arbitrary order agree with
    those under one of the permuted block orders, which is why the 6^n family
    is the meaningful one to test exhaustively.

    Returns (flag, witness); on failure the witness records the failing order
    index and generator pair.
    """
    gens = list(gens)
    if orders is None:
        ring = gens[0].ring
        orders = []
        if ring.n <= 3:
            orders.extend(permuted_block_lex_orders(ring))
        orders.extend(random_weight_orders(ring, weight_samples, seed=seed))
    orders = list(orders)
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            payloads = [(gens, o, use_chain) for o in orders]
            for k, (ok, pair) in enumerate(pool.imap(_ugc_worker, payloads)):
                if not ok:
                    pool.terminate()
                    return False, {"order_index": k, "pair": pair}
        return True, None
    for k, order in enumerate(orders):
        ok, pair = is_groebner_basis(gens, order, use_chain=use_chain)
        if not ok:
            return False, {"order_index": k, "pair": pair}
    return True, None
