"""Sidon-set verification and structure analysis.

A subset S of an abelian group is Sidon when x + y = z + w forces
{x, y} = {z, w} as multisets; equivalently no nonzero difference repeats.
Verification tallies the difference multiset into a flat array indexed by
the mixed-radix element encoding, so it is exact and O(|S|^2 + |G|).
"""

from __future__ import annotations

import itertools
import math
import random
from array import array

from .groups import (GroupElement, GroupError, _generates, automorphism_bound,
                     automorphisms, endo_apply)

ORDER_CAP = 1 << 24
EXHAUSTIVE_AUTO_CAP = 2_000_000


class SidonReport:
    """Verdict for one set: Sidon flag, witness quadruple, difference data.

    witness (when present) is a nontrivial quadruple (x, y, z, w) with
    x + y = z + w, canonically ordered within and between pairs.  t_set is
    G \\ (S - S) together with 0 (sorted); energy counts all ordered
    additive quadruples, which equals 2|S|^2 - |S| exactly for Sidon sets.
    """

    def __init__(self, group, size, sidon, witness, energy, t_set):
        self.group = group
        self.size = size
        self.sidon = sidon
        self.witness = witness
        self.energy = energy
        self.t_set = t_set

    @property
    def density_ratio(self):
        return self.size / math.sqrt(self.group.order) if self.group.order else 0.0

    def to_json(self):
        return {
            "sidon": self.sidon,
            "size": self.size,
            "witness": None if self.witness is None else [g.to_json() for g in self.witness],
            "t_set": [g.to_json() for g in self.t_set],
            "energy": self.energy,
            "density_ratio": self.density_ratio,
        }

    def __repr__(self):
        verdict = "sidon" if self.sidon else f"not sidon, witness {self.witness}"
        return f"<SidonReport |S|={self.size} {verdict} energy={self.energy}>"


def _canonical_witness(x, y, z, w):
    a = tuple(sorted((x, y)))
    b = tuple(sorted((z, w)))
    lo, hi = sorted((a, b), key=lambda pr: (pr[0].coords, pr[1].coords))
    return lo + hi


def is_sidon(group, S):
    """Exact Sidon verdict with witness, energy and T-set."""
    n = group.order
    if n > ORDER_CAP:
        raise GroupError(f"group order {n} exceeds verification cap {ORDER_CAP}")
    elems = sorted({group.element(s).coords for s in S})
    elems = [GroupElement(group, c) for c in elems]
    k = len(elems)
    counts = bytearray(n) if k <= 255 else array("q", bytes(8 * n))
    first_pair = {}
    witness = None
    for i in range(k):
        ci = elems[i].coords
        for j in range(k):
            if i == j:
                continue
            d = group.index_of(group.sub_coords(ci, elems[j].coords))
            c = counts[d] + 1
            counts[d] = c
            if c == 1:
                first_pair[d] = (i, j)
            elif witness is None:
                pi, pj = first_pair[d]
                # s_pi - s_pj = s_i - s_j  =>  s_pi + s_j = s_i + s_pj
                witness = _canonical_witness(elems[pi], elems[j], elems[i], elems[pj])
    energy = k * k + sum(c * c for c in counts if c)
    sidon = witness is None
    zero = group.zero
    t_set = [zero] + [GroupElement(group, group.coords_of(idx))
                      for idx in range(1, n) if not counts[idx]]
    return SidonReport(group, k, sidon, witness, energy, t_set)


def counting_bound(n):
    """Largest s with s(s-1) <= n-1."""
    if n < 1:
        raise ValueError("group order must be positive")
    return (1 + math.isqrt(4 * n - 3)) // 2


def is_perfect_difference_set(group, S):
    """Sidon and S - S covers the whole group (T-set is just {0})."""
    rep = is_sidon(group, S)
    return rep.sidon and len(rep.t_set) == 1


# ---------------------------------------------------------------------------
# covering a T-set by subgroups

class CoverResult:
    def __init__(self, cover, conclusive):
        self.cover = cover
        self.conclusive = conclusive

    def __bool__(self):
        return self.cover is not None

    def to_json(self):
        return {
            "cover": None if self.cover is None else
                     [[g.to_json() for g in H] for H in self.cover],
            "conclusive": self.conclusive,
        }


def _closure(group, gens_coords):
    seen = set(gens_coords)
    seen.add((0,) * group.rank)
    frontier = list(seen)
    gens = list(gens_coords) + [group.neg_coords(c) for c in gens_coords]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = group.add_coords(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def subgroup_union_cover(group, T, k_max, lattice_cap=4096, combo_cap=200_000):
    """Try to write T as a union of at most k_max subgroups of the group.

    Every subgroup inside T is a join of cyclic subgroups <t>, t in T, so
    the sublattice {H <= G : H subset T} is enumerated by closing the good
    cyclic pieces under pairwise joins.  For |T| <= 64 the maximal members
    then feed an exact set-cover search; larger T gets the greedy pass
    only, and a greedy miss is reported as inconclusive.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    tcoords = {group.element(t).coords for t in T}
    zero = (0,) * group.rank
    if zero not in tcoords:
        raise GroupError("a T-set always contains 0")

    cyclic = {}
    for t in tcoords:
        H = _closure(group, [t])
        if H <= tcoords:
            cyclic[t] = H
    # an element of any subgroup inside T generates a cyclic subgroup inside T
    coverable = set().union(*cyclic.values()) if cyclic else set()
    if coverable != tcoords:
        return CoverResult(None, True)

    seeds = {H for H in cyclic.values()}
    exhaustive = len(tcoords) <= 64
    if exhaustive:
        lattice = set(seeds)
        frontier = list(seeds)
        while frontier and len(lattice) <= lattice_cap:
            H = frontier.pop()
            for C in seeds:
                if C <= H:
                    continue
                J = _closure(group, H | C)
                if J <= tcoords and J not in lattice:
                    lattice.add(J)
                    frontier.append(J)
        if len(lattice) > lattice_cap:
            exhaustive = False
        else:
            subgroups = [H for H in lattice
                         if not any(H < K for K in lattice if K is not H)]
    if not exhaustive:
        subgroups = sorted(seeds, key=len, reverse=True)

    def as_elements(H):
        return [GroupElement(group, c) for c in sorted(H)]

    # greedy
    chosen, covered = [], set()
    for _ in range(k_max):
        best = max(subgroups, key=lambda H: len(H - covered), default=None)
        if best is None or not (best - covered):
            break
        chosen.append(best)
        covered |= best
        if covered == tcoords:
            return CoverResult([as_elements(H) for H in chosen], True)
    if not exhaustive:
        return CoverResult(None, False)

    # exact search over maximal subgroups
    maxima = sorted(subgroups, key=len, reverse=True)
    for k in range(1, min(k_max, len(maxima)) + 1):
        n_combos = math.comb(len(maxima), k)
        if n_combos > combo_cap:
            return CoverResult(None, False)
        for combo in itertools.combinations(maxima, k):
            u = set()
            for H in combo:
                u |= H
            if u == tcoords:
                return CoverResult([as_elements(H) for H in combo], True)
    return CoverResult(None, True)


# ---------------------------------------------------------------------------
# affine equivalence

class AffineResult:
    """Witness of S2 = phi(S1) + c, or absence thereof.

    images are the coords of phi at the canonical generators; conclusive
    is False when the search was randomized and found nothing.
    """

    def __init__(self, images, translation, conclusive):
        self.images = images
        self.translation = translation
        self.conclusive = conclusive

    def __bool__(self):
        return self.images is not None

    def to_json(self):
        return {
            "automorphism": None if self.images is None else [list(c) for c in self.images],
            "translation": None if self.translation is None else self.translation.to_json(),
            "conclusive": self.conclusive,
        }


def affine_apply(group, images, translation, S):
    c = group.element(translation).coords
    out = set()
    for s in S:
        out.add(group.add_coords(endo_apply(group, images, group.element(s).coords), c))
    return {GroupElement(group, x) for x in out}


def _match_translation(group, images, set1, set2):
    anchor = next(iter(set1))
    img = {endo_apply(group, images, s) for s in set1}
    base = endo_apply(group, images, anchor)
    for s2 in set2:
        c = group.sub_coords(s2, base)
        if {group.add_coords(x, c) for x in img} == set2:
            return c
    return None


def affine_equivalent(group, S1, S2, restarts=20000, seed=0):
    """Search for an automorphism phi and translation c with phi(S1)+c = S2.

    Exhaustive over all automorphisms when the candidate sift is small
    enough; otherwise random restarts, where a miss is inconclusive.
    """
    set1 = {group.element(s).coords for s in S1}
    set2 = {group.element(s).coords for s in S2}
    if len(set1) != len(set2):
        raise GroupError("affine equivalence needs |S1| = |S2|")
    if not set1:
        return AffineResult(tuple(), group.zero, True)

    if automorphism_bound(group) <= EXHAUSTIVE_AUTO_CAP:
        for images in automorphisms(group):
            c = _match_translation(group, images, set1, set2)
            if c is not None:
                return AffineResult(images, GroupElement(group, c), True)
        return AffineResult(None, None, True)

    rng = random.Random(seed)
    steps = [[nj // math.gcd(ni, nj) for nj in group.factors] for ni in group.factors]
    for _ in range(restarts):
        images = tuple(
            tuple(st * rng.randrange(nj // st) for st, nj in zip(steps[i], group.factors))
            for i in range(group.rank))
        if not _generates(group, images):
            continue
        c = _match_translation(group, images, set1, set2)
        if c is not None:
            return AffineResult(images, GroupElement(group, c), True)
    return AffineResult(None, None, False)
