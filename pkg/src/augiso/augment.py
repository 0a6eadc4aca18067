"""Augmentations: unital degree-0 dga maps to the ground field."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .dga import LOOP, LOOP_INVERSE, Dga, _as_value_tuple, eval_word
from .gfield import FieldElem, FieldError, parse_elem


class AugmentationError(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    """Outcome of a checker: truthy on success, otherwise names the culprit."""

    ok: bool
    generator: str | None = None
    value: FieldElem | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


PASSED = Check(True)


class Augmentation:
    """Values of an augmentation on every generator of its dga.

    Equality and hashing use the values only; compare augmentations of the
    same dga.
    """

    __slots__ = ("dga", "values")

    def __init__(self, dga: Dga, values):
        self.dga = dga
        self.values = tuple(values)

    @classmethod
    def from_mapping(cls, dga: Dga, assignment: Mapping[str, FieldElem]) -> Augmentation:
        """Build from values on degree-0 chords and loops.

        Loop inverses are filled in, everything else is zero.  Missing keys
        raise ``KeyError``; unknown keys raise ``AugmentationError``.
        """
        field = dga.field
        for name in assignment:
            if name not in dga.index:
                raise AugmentationError(f"unknown generator {name!r}")
            g = dga[name]
            if g.kind == LOOP_INVERSE:
                raise AugmentationError(f"give the value of {name[:-3]!r}, not its inverse")
            if g.degree != 0:
                raise AugmentationError(f"{name!r} has degree {g.degree}; augmentations vanish there")
        vals = [field.zero] * len(dga)
        for i in dga.augmentation_variables():
            name = dga.generators[i].name
            if name not in assignment:
                raise KeyError(f"no value for generator {name!r}")
            vals[i] = field(assignment[name])
        for i in dga.loops():
            if not vals[i]:
                raise AugmentationError(f"loop {dga.generators[i].name!r} needs a nonzero value")
            vals[dga.inverse[i]] = vals[i].inv()
        return cls(dga, vals)

    def __getitem__(self, key) -> FieldElem:
        if isinstance(key, str):
            key = self.dga.gen_index(key)
        return self.values[key]

    def as_dict(self) -> dict[str, FieldElem]:
        return {self.dga.generators[i].name: self.values[i] for i in self.dga.augmentation_variables()}

    def __eq__(self, other):
        if not isinstance(other, Augmentation):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"Augmentation({serialize_augmentation(self)!r})"

    def __str__(self):
        return serialize_augmentation(self)


def is_augmentation(dga: Dga, values) -> Check:
    """Check that ``values`` defines an augmentation of ``dga``."""
    vals = _as_value_tuple(dga, values)
    field = dga.field
    for i, g in enumerate(dga.generators):
        v = vals[i]
        if v.field != field:
            return Check(False, g.name, v, "value lies in another field")
        if g.degree != 0 and v:
            return Check(False, g.name, v, "nonzero value on a generator of nonzero degree")
        if g.kind == LOOP:
            if not v:
                return Check(False, g.name, v, "loop value must be a unit")
            j = dga.inverse[i]
            if vals[j] != v.inv():
                return Check(False, dga.generators[j].name, vals[j], "inverse loop value is not the inverse")
    one = field.one
    for i, g in enumerate(dga.generators):
        total = field.zero
        for w, c in dga.diff[i].terms.items():
            total = total + c * eval_word(vals, w, one)
        if total:
            return Check(False, g.name, total, "augmentation does not kill the differential")
    return PASSED


def _constraints(dga: Dga):
    """Per degree-1 generator: surviving words and the variables they read."""
    var_of = {}
    for i in dga.augmentation_variables():
        var_of[i] = i
        if i in dga.inverse and dga.generators[i].kind == LOOP:
            var_of[dga.inverse[i]] = i
    out = []
    for i, g in enumerate(dga.generators):
        terms = []
        deps = set()
        for w, c in dga.diff[i].items():
            if any(dga.generators[x].degree != 0 for x in w):
                continue
            terms.append((w, c))
            deps.update(var_of[x] for x in w)
        if terms:
            out.append((i, terms, deps))
    return out


def enumerate_augmentations(dga: Dga, limit: int | None = None) -> list[Augmentation]:
    """All augmentations of ``dga`` by backtracking.

    Variables are degree-0 chords (any field value) and loops (units only),
    assigned in generator order with values in ascending bit order.  Each
    relation is tested as soon as every variable it reads is assigned.  With
    ``limit`` set, stop after that many and return what was found so far
    plus one, so callers can tell the limit was exceeded.
    """
    field = dga.field
    variables = dga.augmentation_variables()
    pos = {v: k for k, v in enumerate(variables)}
    checks_at: list[list] = [[] for _ in range(len(variables) + 1)]
    for i, terms, deps in _constraints(dga):
        step = max((pos[d] + 1 for d in deps), default=0)
        checks_at[step].append(terms)
    vals = [field.zero] * len(dga)
    one = field.one
    found: list[Augmentation] = []
    elements = field.elements()
    units = field.units()

    def ok(step):
        for terms in checks_at[step]:
            total = field.zero
            for w, c in terms:
                total = total + c * eval_word(vals, w, one)
            if total:
                return False
        return True

    def rec(k):
        if limit is not None and len(found) > limit:
            return
        if k == len(variables):
            found.append(Augmentation(dga, vals))
            return
        i = variables[k]
        is_loop = dga.generators[i].kind == LOOP
        for v in (units if is_loop else elements):
            vals[i] = v
            if is_loop:
                vals[dga.inverse[i]] = v.inv()
            if ok(k + 1):
                rec(k + 1)
        vals[i] = field.zero
        if is_loop:
            vals[dga.inverse[i]] = field.zero

    if ok(0):
        rec(0)
    return found


def serialize_augmentation(aug: Augmentation) -> str:
    dga = aug.dga
    return " ".join(f"{dga.generators[i].name}={aug.values[i]}" for i in dga.augmentation_variables())


_PAIR = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*([^\s,=]+)")


def parse_augmentation(dga: Dga, text: str) -> Augmentation:
    """Parse ``name=elem`` pairs (whitespace, comma or newline separated)."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    assignment = {}
    consumed = _PAIR.sub("", body)
    if consumed.replace(",", "").strip():
        raise AugmentationError(f"cannot parse augmentation near {consumed.strip()[:20]!r}")
    for name, val in _PAIR.findall(body):
        if name in assignment:
            raise AugmentationError(f"duplicate value for {name!r}")
        try:
            assignment[name] = parse_elem(dga.field, val)
        except FieldError as exc:
            raise AugmentationError(str(exc)) from None
    try:
        aug = Augmentation.from_mapping(dga, assignment)
    except KeyError as exc:
        raise AugmentationError(exc.args[0]) from None
    chk = is_augmentation(dga, aug.values)
    if not chk:
        raise AugmentationError(f"not an augmentation: {chk.reason} at {chk.generator} (value {chk.value})")
    return aug


def load_augmentation(dga: Dga, path) -> Augmentation:
    with open(path, encoding="utf-8") as fh:
        return parse_augmentation(dga, fh.read())
