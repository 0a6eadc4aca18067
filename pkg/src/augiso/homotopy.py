"""Dilated augmentation homotopies between two augmentations.

A dilated homotopy is a tuple ``d`` of units, one per component, together
with values ``K(b)`` on the degree -1 chords.  ``K`` extends to words by
the twisted Leibniz rule ``K(xy) = K(x) e2(y) + e1(x) K(y)`` and the pair is
a witness when, for every degree-0 chord ``e`` running from component
``c`` to component ``r``,

    d[c] * e1(e) + d[r] * e2(e) + K(de) = 0

and ``e1``, ``e2`` agree on every loop generator.  Conditions on generators
of other degrees hold automatically: both augmentations vanish there, and
``K`` of a word of degree other than -1 is zero because exactly one letter
receives ``K`` and that letter must have degree -1.

With ``d = (1, ..., 1)`` this is an ordinary dga homotopy; with ``K = 0``
it is a pure dilation.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .augment import PASSED, Augmentation, Check
from .dga import Dga, Poly
from .gfield import FieldElem, FieldError, FieldSpec, parse_elem
from .linalg import solve

MODES = ("full", "plain", "dilation")


class HomotopyError(ValueError):
    pass


@dataclass(frozen=True)
class DilatedHomotopy:
    d: tuple
    kvals: dict = field(default_factory=dict)

    @property
    def is_plain(self) -> bool:
        return all(x == 1 for x in self.d)

    @property
    def is_pure_dilation(self) -> bool:
        return not any(self.kvals.values())

    def scaled(self, lam: FieldElem) -> DilatedHomotopy:
        return DilatedHomotopy(tuple(lam * x for x in self.d), {b: lam * v for b, v in self.kvals.items()})

    def __eq__(self, other):
        if not isinstance(other, DilatedHomotopy):
            return NotImplemented
        if tuple(self.d) != tuple(other.d):
            return False
        keys = set(self.kvals) | set(other.kvals)
        return all(self.kvals.get(k, 0) == other.kvals.get(k, 0) for k in keys)

    __hash__ = None


def _values(eps) -> tuple:
    return eps.values if isinstance(eps, Augmentation) else tuple(eps)


def letter_coefficients(dga: Dga, v1: Sequence[FieldElem], v2: Sequence[FieldElem], p: Poly) -> dict[int, FieldElem]:
    """Coefficient of each letter in the bilinearization of ``p``.

    For a letter ``x`` this is the sum over words ``w`` of ``p`` and over
    positions ``t`` with ``w[t] == x`` of ``v1(w[:t]) * v2(w[t+1:])``.
    """
    field = dga.field
    one = field.one
    out: dict[int, FieldElem] = {}
    for w, c in p.terms.items():
        n = len(w)
        suffix = [one] * (n + 1)
        for t in range(n - 1, -1, -1):
            suffix[t] = v2[w[t]] * suffix[t + 1]
        pre = c
        for t in range(n):
            if pre:
                s = suffix[t + 1]
                if s:
                    x = w[t]
                    out[x] = out.get(x, field.zero) + pre * s
            pre = pre * v1[w[t]]
    return {x: v for x, v in out.items() if v}


_CACHE_LIMIT = 20_000


def boundary_coefficients(dga: Dga, v1, v2, e: int) -> dict[int, FieldElem]:
    """``letter_coefficients`` of the boundary of generator ``e``, memoized on the dga.

    Entries are keyed by the identity of the value tuples and keep them
    alive, so a key cannot be reused while its entry exists.
    """
    entry = dga._cache.get((id(v1), id(v2)))
    if entry is None or entry[0] is not v1 or entry[1] is not v2:
        if len(dga._cache) > _CACHE_LIMIT:
            dga._cache.clear()
        entry = dga._cache[(id(v1), id(v2))] = (v1, v2, {})
    per = entry[2]
    hit = per.get(e)
    if hit is None:
        hit = per[e] = letter_coefficients(dga, v1, v2, dga.diff[e])
    return hit


def chord_coefficient_matrix(dga: Dga, v1, v2, rows: Sequence[int], cols: Sequence[int]):
    """Matrix ``c[e][b]`` of bilinearized coefficients of ``b`` in ``de``."""
    zero = dga.field.zero
    mat = []
    for e in rows:
        coeffs = boundary_coefficients(dga, v1, v2, e)
        mat.append([coeffs.get(b, zero) for b in cols])
    return mat


def _k_by_index(dga: Dga, kvals: Mapping) -> dict[int, FieldElem]:
    allowed = dga._lists.get("neg_set")
    if allowed is None:
        allowed = dga._lists["neg_set"] = frozenset(dga.neg_chords())
    out = {}
    for key, v in kvals.items():
        i = dga.gen_index(key) if isinstance(key, str) else key
        if i not in allowed:
            g = dga.generators[i]
            raise HomotopyError(f"K is only defined on degree -1 chords, not on {g.name!r} (degree {g.degree})")
        out[i] = dga.field(v)
    return out


def chord_layout(dga: Dga) -> tuple:
    """``(index, name, col - 1, row - 1)`` for each degree-0 chord, cached."""
    hit = dga._lists.get("layout0")
    if hit is None:
        gens = dga.generators
        hit = dga._lists["layout0"] = tuple((e, gens[e].name, gens[e].col - 1, gens[e].row - 1)
                                            for e in dga.chords(0))
    return hit


def extend_K(dga: Dga, eps1, eps2, kvals: Mapping, p: Poly) -> FieldElem:
    """Value of the twisted-Leibniz extension of ``kvals`` on ``p``."""
    kk = _k_by_index(dga, kvals)
    coeffs = letter_coefficients(dga, _values(eps1), _values(eps2), p)
    total = dga.field.zero
    for x, c in coeffs.items():
        k = kk.get(x)
        if k is not None:
            total = total + c * k
    return total


def is_dilated_homotopy(dga: Dga, eps1, eps2, h: DilatedHomotopy) -> Check:
    """Check the witness conditions; the failing generator is reported."""
    v1, v2 = _values(eps1), _values(eps2)
    if len(h.d) != dga.n:
        raise HomotopyError(f"dilation tuple has {len(h.d)} entries for {dga.n} components")
    kk = _k_by_index(dga, h.kvals)
    d = [dga.field(x) for x in h.d]
    for i, x in enumerate(d):
        if not x:
            return Check(False, None, x, f"d[{i + 1}] is zero")
    for i in dga.loops():
        if v1[i] != v2[i]:
            return Check(False, dga.generators[i].name, v1[i] + v2[i], "augmentations differ on a loop")
    for e, name, c_, r_ in chord_layout(dga):
        total = d[c_] * v1[e] + d[r_] * v2[e]
        for x, c in boundary_coefficients(dga, v1, v2, e).items():
            k = kk.get(x)
            if k is not None:
                total = total + c * k
        if total:
            return Check(False, name, total, "homotopy equation fails")
    return PASSED


def _tuples(field: FieldSpec, n: int, mode: str):
    one = field.one
    if mode == "plain" or n == 1:
        yield (one,) * n
        return
    for rest in itertools.product(field.units(), repeat=n - 1):
        yield (one,) + rest


def find_dilated_homotopy(dga: Dga, eps1, eps2, mode: str = "full") -> DilatedHomotopy | None:
    """Search for a witness, or return None when none exists.

    ``mode`` is ``"full"``, ``"plain"`` (d locked to 1) or ``"dilation"``
    (K locked to 0).  Only tuples with ``d[0] = 1`` are tried, since scaling
    a witness by a unit gives a witness.  For each tuple the conditions are
    linear in the K-values and are solved by elimination; free unknowns are
    set to zero.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    v1, v2 = _values(eps1), _values(eps2)
    for i in dga.loops():
        if v1[i] != v2[i]:
            return None
    field = dga.field
    rows = dga.chords(0)
    cols = dga.neg_chords() if mode != "dilation" else []
    names = [dga.generators[b].name for b in dga.neg_chords()]
    mat = chord_coefficient_matrix(dga, v1, v2, rows, cols)
    ends = [(dga.generators[e].col - 1, dga.generators[e].row - 1) for e in rows]
    for d in _tuples(field, dga.n, mode):
        rhs = [d[c] * v1[e] + d[r] * v2[e] for e, (c, r) in zip(rows, ends)]
        if cols:
            x = solve(mat, rhs, field) if rows else [field.zero] * len(cols)
            if x is None:
                continue
            kv = dict(zip(names, x))
        else:
            if any(rhs):
                continue
            kv = {b: field.zero for b in names}
        return DilatedHomotopy(tuple(d), kv)
    return None


def apply_dilation(dga: Dga, eps, d: Sequence[FieldElem]) -> Augmentation:
    """Rescale chord values by ``d[row] / d[col]``; loops are unchanged."""
    v = _values(eps)
    d = [dga.field(x) for x in d]
    if len(d) != dga.n or not all(d):
        raise HomotopyError("a dilation needs one unit per component")
    out = list(v)
    for i, g in enumerate(dga.generators):
        if g.is_chord and g.row != g.col and v[i]:
            out[i] = d[g.row - 1] * d[g.col - 1].inv() * v[i]
    return Augmentation(dga, out)


def _require(dga, eps1, eps2, h, plain=False):
    if plain and not h.is_plain:
        raise HomotopyError("expected a plain homotopy (d = 1)")
    chk = is_dilated_homotopy(dga, eps1, eps2, h)
    if not chk:
        raise HomotopyError(f"not a valid homotopy: {chk.reason} at {chk.generator}")


def compose_homotopy_dilation(dga: Dga, eps1, eps2, kplain: DilatedHomotopy, d) -> tuple[Augmentation, DilatedHomotopy]:
    """Follow a plain homotopy e1 -> e2 by the dilation ``d``.

    Returns ``(e3, h)`` where ``e3`` is ``e2`` rescaled by ``d[col]/d[row]``
    and ``h = (d, K)`` with ``K(b) = d[col(b)] * kplain(b)`` is a dilated
    homotopy from ``e1`` to ``e3``.
    """
    _require(dga, eps1, eps2, kplain, plain=True)
    d = tuple(dga.field(x) for x in d)
    eps3 = apply_dilation(dga, eps2, [x.inv() for x in d])
    kk = _k_by_index(dga, kplain.kvals)
    kv = {}
    for b in dga.neg_chords():
        name = dga.generators[b].name
        kv[name] = d[dga.generators[b].col - 1] * kk.get(b, dga.field.zero)
    return eps3, DilatedHomotopy(d, kv)


def decompose_dilated_homotopy(dga: Dga, eps1, eps2, h: DilatedHomotopy) -> tuple[Augmentation, DilatedHomotopy, tuple]:
    """Split ``h`` into a plain homotopy e1 -> e_mid and the dilation ``h.d``.

    ``e_mid`` is ``e2`` rescaled by ``d[row]/d[col]``, and the plain
    homotopy has ``K(b) = h.K(b) / d[col(b)]``.  ``compose_homotopy_dilation``
    undoes this.
    """
    _require(dga, eps1, eps2, h)
    d = tuple(dga.field(x) for x in h.d)
    mid = apply_dilation(dga, eps2, d)
    kk = _k_by_index(dga, h.kvals)
    kv = {}
    for b in dga.neg_chords():
        name = dga.generators[b].name
        kv[name] = d[dga.generators[b].col - 1].inv() * kk.get(b, dga.field.zero)
    one = dga.field.one
    return mid, DilatedHomotopy((one,) * dga.n, kv), d


# ---------------------------------------------------------------------------
# text format shared with Hom^0 elements


def format_tuple(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


def format_kvals(dga: Dga, kvals: Mapping) -> list[str]:
    kk = _k_by_index(dga, kvals)
    return [f"K {dga.generators[b].name} = {kk.get(b, dga.field.zero)}" for b in dga.neg_chords()]


def serialize_witness(dga: Dga, h: DilatedHomotopy) -> str:
    return "\n".join([f"d = {format_tuple(h.d)}"] + format_kvals(dga, h.kvals)) + "\n"


def parse_tuple_and_k(dga: Dga, text: str, head: str) -> tuple[tuple, dict]:
    """Parse ``<head> = (x1, ..., xn)`` plus ``K name = elem`` lines."""
    fld = dga.field
    tup = None
    kv: dict[str, FieldElem] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        mt = re.fullmatch(rf"{head}\s*=\s*\((.*)\)", line)
        if mt:
            if tup is not None:
                raise HomotopyError(f"line {lineno}: second '{head}' line")
            try:
                tup = tuple(parse_elem(fld, s) for s in mt.group(1).split(","))
            except FieldError as exc:
                raise HomotopyError(f"line {lineno}: {exc}") from None
            continue
        mt = re.fullmatch(r"K\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)", line)
        if mt:
            name = mt.group(1)
            if name in kv:
                raise HomotopyError(f"line {lineno}: second K value for {name!r}")
            if name not in dga.index:
                raise HomotopyError(f"line {lineno}: unknown generator {name!r}")
            try:
                kv[name] = parse_elem(fld, mt.group(2))
            except FieldError as exc:
                raise HomotopyError(f"line {lineno}: {exc}") from None
            continue
        raise HomotopyError(f"line {lineno}: cannot parse {line!r}")
    if tup is None:
        raise HomotopyError(f"missing '{head} = (...)' line")
    if len(tup) != dga.n:
        raise HomotopyError(f"'{head}' has {len(tup)} entries for {dga.n} components")
    _k_by_index(dga, kv)
    for b in dga.neg_chords():
        kv.setdefault(dga.generators[b].name, fld.zero)
    return tup, kv


def parse_witness(dga: Dga, text: str) -> DilatedHomotopy:
    """Parse a witness; a leading ``ISO`` line (as printed by the CLI) is skipped."""
    lines = text.splitlines()
    if lines and lines[0].strip() == "ISO":
        text = "\n".join(lines[1:])
    d, kv = parse_tuple_and_k(dga, text, "d")
    if not all(d):
        raise HomotopyError("dilation entries must be nonzero")
    return DilatedHomotopy(d, kv)
