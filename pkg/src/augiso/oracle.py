"""Brute-force reference computations.

Nothing here shares code with the fast paths beyond field arithmetic and
the Dga container: augmentations come from exhaustive assignment, the
homotopy map is extended by literal recursion on the twisted Leibniz rule,
witnesses come from exhausting every dilation tuple and every K
assignment, and ranks come from counting kernel vectors.  Suitable only for
the small corpus.
"""
from __future__ import annotations

import itertools
import math

from .augment import Augmentation
from .dga import LOOP, Dga
from .homotopy import DilatedHomotopy


def _evaluate(vals, word, field):
    acc = field.one
    for x in word:
        acc = acc * vals[x]
    return acc


def _poly_value(dga, vals, poly):
    total = dga.field.zero
    for w, c in poly.terms.items():
        total = total + c * _evaluate(vals, w, dga.field)
    return total


def brute_augmentations(dga: Dga) -> list[Augmentation]:
    """Every assignment of degree-0 chords and loops that kills the differential."""
    fld = dga.field
    variables = dga.augmentation_variables()
    domains = [fld.units() if dga.generators[i].kind == LOOP else fld.elements() for i in variables]
    out = []
    for choice in itertools.product(*domains):
        vals = [fld.zero] * len(dga)
        for i, v in zip(variables, choice):
            vals[i] = v
            if dga.generators[i].kind == LOOP:
                vals[dga.inverse[i]] = v.inv()
        if all(not _poly_value(dga, vals, dga.diff[x]) for x in range(len(dga))):
            out.append(Augmentation(dga, vals))
    return out


def leibniz_k(v1, v2, kmap, word, field):
    """K on a word by K(x.rest) = K(x) e2(rest) + e1(x) K(rest)."""
    if not word:
        return field.zero
    x, rest = word[0], word[1:]
    head = kmap.get(x, field.zero) * _evaluate(v2, rest, field)
    return head + v1[x] * leibniz_k(v1, v2, kmap, rest, field)


def _k_of_poly(dga, v1, v2, kmap, poly):
    total = dga.field.zero
    for w, c in poly.terms.items():
        total = total + c * leibniz_k(v1, v2, kmap, w, dga.field)
    return total


def check_all_generators(dga: Dga, v1, v2, d, kmap) -> bool:
    """d[c] e1(x) + d[r] e2(x) = K(dx) for every generator x, any degree."""
    for x, g in enumerate(dga.generators):
        lhs = d[g.col - 1] * v1[x] + d[g.row - 1] * v2[x]
        if lhs != _k_of_poly(dga, v1, v2, kmap, dga.diff[x]):
            return False
    return True


def brute_witnesses(dga: Dga, eps1, eps2, mode: str = "full", first_only: bool = False):
    """All witnesses (d, K), unnormalized, over every tuple and K assignment."""
    fld = dga.field
    v1, v2 = eps1.values, eps2.values
    negs = [i for i, g in enumerate(dga.generators) if g.is_chord and g.degree == -1]
    tuples = [(fld.one,) * dga.n] if mode == "plain" else itertools.product(fld.units(), repeat=dga.n)
    kspace = [tuple(fld.zero for _ in negs)] if mode == "dilation" else itertools.product(fld.elements(), repeat=len(negs))
    kspace = list(kspace)
    found = []
    for d in tuples:
        for ks in kspace:
            kmap = dict(zip(negs, ks))
            if check_all_generators(dga, v1, v2, d, kmap):
                h = DilatedHomotopy(tuple(d), {dga.generators[b].name: k for b, k in zip(negs, ks)})
                if first_only:
                    return [h]
                found.append(h)
    return found


def brute_iso(dga: Dga, eps1, eps2, mode: str = "full") -> bool:
    return bool(brute_witnesses(dga, eps1, eps2, mode, first_only=True))


def brute_partition(dga: Dga, augs, mode: str = "full") -> list[list[int]]:
    """Connected components of the brute-force relation, by depth-first search."""
    n = len(augs)
    adj = [[j for j in range(n) if j != i and brute_iso(dga, augs[i], augs[j], mode)] for i in range(n)]
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        out.append(sorted(comp))
    return out


def brute_rank(mat, ncols: int, field) -> int:
    """ncols - log_q |kernel|, counting the kernel by enumeration."""
    if not mat or ncols == 0:
        return 0
    count = 0
    for v in itertools.product(field.elements(), repeat=ncols):
        if all(not sum((a * b for a, b in zip(row, v)), field.zero) for row in mat):
            count += 1
    return ncols - round(math.log(count, field.order))


def brute_bilinear_dims(dga: Dga, eps1, eps2) -> dict[int, int]:
    """Bilinearized cohomology dims with coefficients from indicator K maps."""
    fld = dga.field
    v1, v2 = eps1.values, eps2.values
    chords = [i for i, g in enumerate(dga.generators) if g.is_chord]
    degrees = sorted({dga.generators[c].degree for c in chords})
    basis = {d + 1: [c for c in chords if dga.generators[c].degree == d] for d in degrees}

    def matrix(q):
        rows, cols = basis.get(q + 1, []), basis.get(q, [])
        return [[_k_of_poly(dga, v1, v2, {b: fld.one}, dga.diff[e]) for b in cols] for e in rows]

    out = {}
    for q, cols in basis.items():
        r_out = brute_rank(matrix(q), len(cols), fld) if basis.get(q + 1) else 0
        prev = basis.get(q - 1, [])
        r_in = brute_rank(matrix(q - 1), len(prev), fld) if prev else 0
        out[q] = len(cols) - r_out - r_in
    return out
