"""Degree 0 and 1 of the morphism complex Hom(e1, e2), and the
bilinearized chord complex.

Hom^0 has basis ``min_1 .. min_n`` (one minimum per component) and the
duals ``b^v`` of the degree -1 chords.  Hom^1 is spanned by one dual per
declared loop generator and the duals ``e^v`` of the degree-0 chords.  On
Hom^0 the differential is

    m1(sum a_i min_i + sum K_b b^v)
        = sum_loops a_i (1 + e1(t) / e2(t)) t^v
        + sum_e (a_c e1(e) + a_r e2(e) + sum_b c_eb K_b) e^v

where ``c_eb`` are the bilinearized coefficients of ``b`` in ``de``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .dga import Dga
from .homotopy import (
    DilatedHomotopy, _k_by_index, _values, boundary_coefficients, chord_coefficient_matrix, chord_layout, format_kvals, format_tuple,
    parse_tuple_and_k,
)
from .linalg import nullspace, rank


class ChainLawError(ArithmeticError):
    """A bilinearized differential failed to square to zero."""


@dataclass(frozen=True)
class Hom0Element:
    alpha: tuple
    kcoeffs: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Hom0Element):
            return NotImplemented
        if tuple(self.alpha) != tuple(other.alpha):
            return False
        keys = set(self.kcoeffs) | set(other.kcoeffs)
        return all(self.kcoeffs.get(k, 0) == other.kcoeffs.get(k, 0) for k in keys)

    __hash__ = None


@dataclass(frozen=True)
class Hom1Coeffs:
    loop_part: dict = field(default_factory=dict)
    chord_part: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.loop_part and not self.chord_part


@dataclass
class HomComplexSlice:
    """Matrix of m1 : Hom^0 -> Hom^1 with labelled rows and columns."""

    columns: list
    rows: list
    matrix: list


def _m1_terms(dga: Dga, eps1, eps2, a: Hom0Element):
    """Yield ``(is_loop, name, coefficient)`` for the nonzero terms of m1(a)."""
    v1, v2 = _values(eps1), _values(eps2)
    alpha = [dga.field(x) for x in a.alpha]
    kk = _k_by_index(dga, a.kcoeffs)
    one = dga.field.one
    for t in dga.loops():
        g = dga.generators[t]
        c = alpha[g.row - 1] * (one + v1[t] * v2[t].inv())
        if c:
            yield True, g.name, c
    for e, name, c_, r_ in chord_layout(dga):
        c = alpha[c_] * v1[e] + alpha[r_] * v2[e]
        if kk:
            for x, coeff in boundary_coefficients(dga, v1, v2, e).items():
                k = kk.get(x)
                if k is not None:
                    c = c + coeff * k
        if c:
            yield False, name, c


def m1_hom0(dga: Dga, eps1, eps2, a: Hom0Element) -> Hom1Coeffs:
    loop_part, chord_part = {}, {}
    for is_loop, name, c in _m1_terms(dga, eps1, eps2, a):
        (loop_part if is_loop else chord_part)[name] = c
    return Hom1Coeffs(loop_part, chord_part)


def cocycle_test(dga: Dga, eps1, eps2, a: Hom0Element) -> bool:
    for _ in _m1_terms(dga, eps1, eps2, a):
        return False
    return True


def m1_matrix(dga: Dga, eps1, eps2) -> HomComplexSlice:
    v1, v2 = _values(eps1), _values(eps2)
    fld = dga.field
    n = dga.n
    negs = dga.neg_chords()
    cols = [f"min_{i + 1}" for i in range(n)] + [dga.generators[b].name for b in negs]
    rows, mat = [], []
    for t in dga.loops():
        g = dga.generators[t]
        row = [fld.zero] * len(cols)
        row[g.row - 1] = fld.one + v1[t] * v2[t].inv()
        rows.append(g.name)
        mat.append(row)
    chords0 = dga.chords(0)
    cmat = chord_coefficient_matrix(dga, v1, v2, chords0, negs)
    for e, crow in zip(chords0, cmat):
        g = dga.generators[e]
        row = [fld.zero] * n + list(crow)
        row[g.col - 1] = row[g.col - 1] + v1[e]
        row[g.row - 1] = row[g.row - 1] + v2[e]
        rows.append(g.name)
        mat.append(row)
    return HomComplexSlice(cols, rows, mat)


def cocycle_space(dga: Dga, eps1, eps2) -> list[Hom0Element]:
    """A basis of the degree-0 cocycles."""
    sl = m1_matrix(dga, eps1, eps2)
    n = dga.n
    names = sl.columns[n:]
    out = []
    for v in nullspace(sl.matrix, len(sl.columns), dga.field):
        out.append(Hom0Element(tuple(v[:n]), dict(zip(names, v[n:]))))
    return out


def m2_min_action(dga: Dga, side: str, alpha, x: Hom0Element) -> Hom0Element:
    """Product of ``sum alpha_i min_i`` with ``x`` on the given side.

    Minima multiply componentwise.  A chord dual ``b^v`` is scaled by the
    coefficient of the minimum at the component where it meets the other
    factor: ``row(b)`` when the minima act from the left, ``col(b)`` from the
    right.  Long-chord products ``b^v b'^v`` are not part of this map.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    alpha = [dga.field(a) for a in alpha]
    if len(alpha) != dga.n:
        raise ValueError(f"need {dga.n} minimum coefficients")
    new_alpha = tuple(a * b for a, b in zip(alpha, (dga.field(v) for v in x.alpha)))
    kk = _k_by_index(dga, x.kcoeffs)
    kv = {}
    for b in dga.neg_chords():
        g = dga.generators[b]
        end = g.row if side == "left" else g.col
        kv[g.name] = alpha[end - 1] * kk.get(b, dga.field.zero)
    return Hom0Element(new_alpha, kv)


# ---------------------------------------------------------------------------
# bilinearized chord complex


@dataclass
class BilinComplex:
    """``basis[q]``: chords of dga degree q-1.  ``maps[q]``: C^q -> C^(q+1),
    rows indexed by ``basis[q+1]`` and columns by ``basis[q]``."""

    basis: dict
    maps: dict

    def dims(self) -> dict:
        return {q: len(b) for q, b in self.basis.items()}


def bilinearized_complex(dga: Dga, eps1, eps2) -> BilinComplex:
    v1, v2 = _values(eps1), _values(eps2)
    chords = dga.chords()
    if not chords:
        return BilinComplex({}, {})
    degs = sorted({dga.generators[c].degree for c in chords})
    basis = {q: dga.chords(q - 1) for q in range(degs[0] + 1, degs[-1] + 2)}
    maps = {}
    for q in basis:
        if q + 1 in basis:
            maps[q] = chord_coefficient_matrix(dga, v1, v2, basis[q + 1], basis[q])
    return BilinComplex(basis, maps)


def check_chain_law(dga: Dga, cx: BilinComplex) -> None:
    fld = dga.field
    for q in cx.maps:
        if q + 1 not in cx.maps:
            continue
        a, b = cx.maps[q + 1], cx.maps[q]  # a: C^{q+1} -> C^{q+2}, b: C^q -> C^{q+1}
        inner = len(cx.basis[q + 1])
        for i, row in enumerate(a):
            for j in range(len(cx.basis[q])):
                s = fld.zero
                for k in range(inner):
                    s = s + row[k] * b[k][j]
                if s:
                    raise ChainLawError(
                        f"M{q + 1} M{q} != 0 at ({dga.generators[cx.basis[q + 2][i]].name}, "
                        f"{dga.generators[cx.basis[q][j]].name})")


def bilinearized_cohomology_dims(dga: Dga, eps1, eps2) -> dict[int, int]:
    """Dimension of bilinearized cohomology in each Hom-degree."""
    cx = bilinearized_complex(dga, eps1, eps2)
    check_chain_law(dga, cx)
    ranks = {q: rank(m) for q, m in cx.maps.items()}
    return {q: len(b) - ranks.get(q, 0) - ranks.get(q - 1, 0)
            for q, b in sorted(cx.basis.items()) if b}


def poincare_summary(dims: Mapping[int, int]) -> str:
    terms = []
    for q, d in sorted(dims.items()):
        if not d:
            continue
        mono = "1" if q == 0 else "t" if q == 1 else f"t^{q}"
        terms.append(mono if d == 1 and q != 0 else f"{d}" if q == 0 else f"{d}{mono}")
    return " + ".join(terms) if terms else "0"


def serialize_hom0(dga: Dga, a: Hom0Element) -> str:
    return "\n".join([f"alpha = {format_tuple(a.alpha)}"] + format_kvals(dga, a.kcoeffs)) + "\n"


def parse_hom0(dga: Dga, text: str) -> Hom0Element:
    alpha, kv = parse_tuple_and_k(dga, text, "alpha")
    return Hom0Element(alpha, kv)


def as_homotopy(a: Hom0Element):
    """Read a Hom^0 element as candidate data (d, K)."""
    return DilatedHomotopy(tuple(a.alpha), dict(a.kcoeffs))
