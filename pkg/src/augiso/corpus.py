"""The bundled corpus of dgas and its golden outputs.

Goldens are produced only by the brute-force oracles; ``check`` recomputes
everything with the fast paths and compares against both.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import oracle
from .augment import enumerate_augmentations
from .classify import classify
from .dga import load_dga
from .gfield import field_make

CORPUS_DIR = Path(__file__).parent / "corpus"
GOLDEN_FILE = "goldens.json"
FIELDS = (1, 2)  # GF(2) and GF(4)
SCHEMA = 1


class CorpusMismatch(AssertionError):
    pass


@dataclass
class CorpusEntry:
    id: str
    path: Path
    expected: dict

    def load(self, m: int | None = None):
        return load_dga(self.path, field=field_make(m) if m else None)


def entry_ids(directory: Path = CORPUS_DIR) -> list[str]:
    return sorted(p.stem for p in Path(directory).glob("*.dga"))


def load_goldens(directory: Path = CORPUS_DIR) -> dict:
    path = Path(directory) / GOLDEN_FILE
    if not path.exists():
        return {}
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def entries(directory: Path = CORPUS_DIR) -> list[CorpusEntry]:
    goldens = load_goldens(directory).get("entries", {})
    return [CorpusEntry(i, Path(directory) / f"{i}.dga", goldens.get(i, {})) for i in entry_ids(directory)]


def _dims_json(dims: dict) -> dict:
    return {str(q): d for q, d in sorted(dims.items())}


def oracle_summary(dga) -> dict:
    augs = oracle.brute_augmentations(dga)
    parts = oracle.brute_partition(dga, augs)
    return {
        "augmentations": len(augs),
        "classes": len(parts),
        "class_sizes": [len(p) for p in parts],
        "class_bch": [_dims_json(oracle.brute_bilinear_dims(dga, augs[p[0]], augs[p[0]])) for p in parts],
        "augmentation_list": [str(a) for a in augs],
    }


def fast_summary(dga) -> dict:
    augs = enumerate_augmentations(dga)
    c = classify(dga, augs)
    return {
        "augmentations": len(augs),
        "classes": len(c.classes),
        "class_sizes": [len(m) for m in c.classes],
        "class_bch": [_dims_json(c.invariants_table[k]) for k in range(len(c.classes))],
        "augmentation_list": [str(a) for a in augs],
    }


def _compatible(entry: CorpusEntry, m: int) -> bool:
    """Files with explicit g-coefficients only make sense in their own field."""
    try:
        entry.load(m)
    except ValueError:
        return False
    return True


def regen(directory: Path = CORPUS_DIR, write: bool = True) -> dict:
    """Recompute goldens with the oracles and diff against the fast path."""
    out = {"schema": SCHEMA, "entries": {}}
    problems = []
    for entry in entries(directory):
        per_field = {}
        for m in FIELDS:
            if not _compatible(entry, m):
                continue
            dga = entry.load(m)
            want = oracle_summary(dga)
            got = fast_summary(dga)
            if want != got:
                problems.append(f"{entry.id} over GF(2^{m}): oracle {want} != fast path {got}")
            per_field[f"2^{m}"] = want
        out["entries"][entry.id] = per_field
    if problems:
        raise CorpusMismatch("\n".join(problems))
    if write:
        with open(Path(directory) / GOLDEN_FILE, "w", encoding="utf-8") as fh:
            json.dump(out, fh, indent=1, sort_keys=True)
            fh.write("\n")
    return out


def check(directory: Path = CORPUS_DIR, with_oracle: bool = True) -> list[str]:
    """Compare fast-path outputs (and optionally oracles) with the goldens."""
    goldens = load_goldens(directory).get("entries", {})
    problems = []
    for entry in entries(directory):
        if entry.id not in goldens:
            problems.append(f"{entry.id}: no golden")
            continue
        for key, want in goldens[entry.id].items():
            m = int(key.split("^")[1])
            dga = entry.load(m)
            got = fast_summary(dga)
            if got != want:
                problems.append(f"{entry.id} over GF({key}): fast path {got} != golden {want}")
            if with_oracle:
                ref = oracle_summary(dga)
                if ref != want:
                    problems.append(f"{entry.id} over GF({key}): oracle {ref} != golden {want}")
    return problems
