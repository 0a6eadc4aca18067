"""Partition the augmentations of a dga into isomorphism classes."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .augment import Augmentation, enumerate_augmentations
from .dga import Dga
from .homcx import bilinearized_cohomology_dims
from .homotopy import DilatedHomotopy, find_dilated_homotopy

MAX_AUGMENTATIONS = 20_000

_UNSET = object()

Finder = Callable[..., "DilatedHomotopy | None"]


class FeasibilityError(RuntimeError):
    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(f"more than {limit} augmentations (found at least {count}); refusing to classify")


class UnionFind:
    """Disjoint sets over 0..n-1; the root of a set is its smallest member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values(), key=lambda g: g[0])


@dataclass
class Audit:
    symmetry: list = field(default_factory=list)      # (i, j) decided differently from (j, i)
    transitivity: list = field(default_factory=list)  # (i, j) where relation and partition disagree
    invariance: list = field(default_factory=list)    # (class, member, rep dims, member dims)
    full: bool = False

    @property
    def clean(self) -> bool:
        return not (self.symmetry or self.transitivity or self.invariance)


@dataclass
class IsoClassification:
    dga: Dga
    augmentations: list
    class_id: list
    witnesses: dict
    audits: Audit
    invariants_table: dict
    mode: str = "full"
    dilation_only: dict = field(default_factory=dict)

    @property
    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, c in enumerate(self.class_id):
            out.setdefault(c, []).append(i)
        return [out[c] for c in sorted(out)]

    def partition(self) -> set:
        """The classes as a set of frozensets of augmentations (order free)."""
        return {frozenset(self.augmentations[i] for i in members) for members in self.classes}


def classify(dga: Dga, augmentations: Sequence[Augmentation] | None = None, *, mode: str = "full",
             audit: bool = False, finder: Finder = find_dilated_homotopy,
             limit: int = MAX_AUGMENTATIONS) -> IsoClassification:
    """Classify augmentations up to isomorphism.

    Each augmentation is compared with one representative per existing
    class.  Classes are numbered by their smallest member.  Symmetry,
    transitivity and bilinearized-dimension invariance are re-checked:
    along witness chains by default, over all pairs with ``audit=True``.
    ``finder`` is replaceable so that tests can inject a faulty decider.
    """
    if augmentations is None:
        augmentations = enumerate_augmentations(dga, limit=limit)
    augs = list(augmentations)
    if len(augs) > limit:
        raise FeasibilityError(len(augs), limit)

    uf = UnionFind(len(augs))
    reps: list[int] = []
    witnesses: dict = {}
    for i, eps in enumerate(augs):
        for r in reps:
            w = finder(dga, augs[r], eps, mode)
            witnesses[(r, i)] = w
            if w is not None:
                uf.union(r, i)
                break
        else:
            reps.append(i)
    groups = uf.groups()
    class_id = [0] * len(augs)
    for c, members in enumerate(groups):
        for i in members:
            class_id[i] = c

    report = Audit(full=audit)
    relation = {}

    def decide(i, j):
        if (i, j) not in relation:
            w = witnesses.get((i, j), _UNSET)
            if w is _UNSET:
                w = finder(dga, augs[i], augs[j], mode)
                witnesses[(i, j)] = w
            relation[(i, j)] = w is not None
        return relation[(i, j)]

    if audit:
        pairs = [(i, j) for i in range(len(augs)) for j in range(len(augs))]
    else:
        pairs = []
        for members in groups:
            rep = members[0]
            for m in members[1:]:
                pairs += [(rep, m), (m, rep)]
            pairs += list(zip(members[1:], members[2:]))
            pairs += [(b, a) for a, b in zip(members[1:], members[2:])]
    for i, j in pairs:
        same = class_id[i] == class_id[j]
        if decide(i, j) != same:
            report.transitivity.append((i, j))
    for i, j in pairs:
        if i < j and (j, i) in relation and relation[(i, j)] != relation[(j, i)]:
            report.symmetry.append((i, j))

    invariants: dict[int, dict] = {}
    for c, members in enumerate(groups):
        rep = members[0]
        invariants[c] = bilinearized_cohomology_dims(dga, augs[rep], augs[rep])
        for m in members[1:]:
            dims = bilinearized_cohomology_dims(dga, augs[m], augs[m])
            if dims != invariants[c]:
                report.invariance.append((c, m, invariants[c], dims))

    dilation_only = {}
    for c, members in enumerate(groups):
        rep = members[0]
        dilation_only[c] = all(finder(dga, augs[rep], augs[m], "dilation") is not None for m in members[1:])

    return IsoClassification(dga, augs, class_id, witnesses, report, invariants, mode, dilation_only)


def audit_report(c: IsoClassification) -> str:
    a = c.audits
    lines = [f"classes: {len(c.classes)}  augmentations: {len(c.augmentations)}  "
             f"audit: {'all pairs' if a.full else 'witness chains'}"]
    for i, j in a.symmetry:
        lines.append(f"symmetry violation: ({i}, {j}) and ({j}, {i}) disagree")
    for i, j in a.transitivity:
        verdict = "isomorphic" if c.class_id[i] != c.class_id[j] else "not isomorphic"
        lines.append(f"transitivity violation: ({i}, {j}) decided {verdict} against the partition")
    for cls, m, ref, got in a.invariance:
        lines.append(f"invariance violation: class {cls} member {m} has dims {got}, representative {ref}")
    if a.clean:
        lines.append("no violations")
    return "\n".join(lines)
