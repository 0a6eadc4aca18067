"""Link-graded semi-free dgas over GF(2^m).

A generator ``x`` carries a degree and a component pair ``(row, col)``: a
chord from component ``col`` to component ``row``.  Words compose when the
column of each letter equals the row of the next.  Loop generators stand
for generators of the fundamental group of a component; each has an
explicit inverse generator named ``t^-1`` and words are kept freely
reduced.

Words are tuples of generator indices; a :class:`Poly` maps words to
nonzero field elements.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .gfield import FieldElem, FieldError, FieldSpec, field_make, format_elem, parse_elem, parse_field_decl

CHORD = "chord"
LOOP = "loop"
LOOP_INVERSE = "loop_inverse"

Word = tuple  # tuple[int, ...]


class DgaParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    row: int
    col: int
    kind: str = CHORD
    energy: Fraction | None = None

    @property
    def is_chord(self) -> bool:
        return self.kind == CHORD

    @property
    def is_loop(self) -> bool:
        return self.kind in (LOOP, LOOP_INVERSE)


class Poly:
    """Finite sum of words with nonzero GF(2^m) coefficients."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: Mapping[Word, FieldElem] | None = None):
        self.field = field
        self.terms: dict = {}
        if terms:
            for w, c in terms.items():
                self.add_term(w, c)

    @classmethod
    def unit(cls, field: FieldSpec) -> Poly:
        return cls(field, {(): field.one})

    @classmethod
    def word(cls, field: FieldSpec, word: Word, coeff: FieldElem | None = None) -> Poly:
        return cls(field, {tuple(word): field.one if coeff is None else coeff})

    def add_term(self, word: Word, coeff: FieldElem) -> None:
        if not coeff:
            return
        old = self.terms.get(word)
        if old is None:
            self.terms[word] = coeff
        else:
            new = old + coeff
            if new:
                self.terms[word] = new
            else:
                del self.terms[word]

    def copy(self) -> Poly:
        p = Poly(self.field)
        p.terms = dict(self.terms)
        return p

    def __add__(self, other: Poly) -> Poly:
        out = self.copy()
        for w, c in other.terms.items():
            out.add_term(w, c)
        return out

    def scale(self, c: FieldElem) -> Poly:
        if not c:
            return Poly(self.field)
        p = Poly(self.field)
        p.terms = {w: c * v for w, v in self.terms.items()}
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self) -> list[tuple[Word, FieldElem]]:
        """Terms in canonical order: word length, then lexicographic indices."""
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __iter__(self) -> Iterator[tuple[Word, FieldElem]]:
        return iter(self.items())

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"Poly({self.items()!r})"


class Dga:
    """A link-graded semi-free dga.  Treat as immutable once built."""

    def __init__(self, field: FieldSpec, n: int, generators: Sequence[Generator],
                 diff: Mapping[int, Poly] | None = None):
        self.field = field
        self.n = n
        self.generators = tuple(generators)
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self.diff = {i: Poly(field) for i in range(len(self.generators))}
        if diff:
            for i, p in diff.items():
                self.diff[i] = p
        self.inverse: dict[int, int] = {}
        for i, g in enumerate(self.generators):
            if g.kind == LOOP:
                j = self.index.get(inverse_name(g.name))
                if j is not None:
                    self.inverse[i] = j
                    self.inverse[j] = i
        self._degrees = tuple(g.degree for g in self.generators)
        self._cache: dict = {}
        self._lists: dict = {}

    # lookups ----------------------------------------------------------------
    def __getitem__(self, key) -> Generator:
        if isinstance(key, str):
            return self.generators[self.index[key]]
        return self.generators[key]

    def __len__(self):
        return len(self.generators)

    def gen_index(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def _memo(self, key, build) -> list[int]:
        hit = self._lists.get(key)
        if hit is None:
            hit = self._lists[key] = tuple(build())
        return list(hit)

    def chords(self, degree: int | None = None) -> list[int]:
        return self._memo(("chords", degree), lambda: (
            i for i, g in enumerate(self.generators)
            if g.kind == CHORD and (degree is None or g.degree == degree)))

    def loops(self) -> list[int]:
        """Declared loop generators (not their inverses)."""
        return self._memo("loops", lambda: (i for i, g in enumerate(self.generators) if g.kind == LOOP))

    def neg_chords(self) -> list[int]:
        """Degree -1 chords in increasing energy (file order when energies are absent)."""
        def build():
            idx = self.chords(-1)
            if idx and all(self.generators[i].energy is not None for i in idx):
                idx.sort(key=lambda i: (self.generators[i].energy, i))
            return idx
        return self._memo("neg", build)

    def augmentation_variables(self) -> list[int]:
        """Generators an augmentation is free to choose: degree-0 chords and loops."""
        return [i for i, g in enumerate(self.generators)
                if (g.kind == CHORD and g.degree == 0) or g.kind == LOOP]

    # words --------------------------------------------------------------------
    def reduce(self, word: Iterable[int]) -> Word:
        inv = self.inverse
        stack: list[int] = []
        for x in word:
            if stack and inv.get(stack[-1]) == x:
                stack.pop()
            else:
                stack.append(x)
        return tuple(stack)

    def concat(self, *words: Word) -> Word:
        out: list[int] = []
        inv = self.inverse
        for w in words:
            for x in w:
                if out and inv.get(out[-1]) == x:
                    out.pop()
                else:
                    out.append(x)
        return tuple(out)

    def word_degree(self, word: Word) -> int:
        d = self._degrees
        return sum(d[x] for x in word)

    def composable(self, word: Word) -> bool:
        g = self.generators
        return all(g[a].col == g[b].row for a, b in zip(word, word[1:]))

    def word_ends(self, word: Word) -> tuple[int, int] | None:
        """(row, col) of a nonempty word; None for the unit word."""
        if not word:
            return None
        return self.generators[word[0]].row, self.generators[word[-1]].col

    def mul(self, p: Poly, q: Poly) -> Poly:
        out = Poly(self.field)
        for u, a in p.terms.items():
            for v, b in q.terms.items():
                out.add_term(self.concat(u, v), a * b)
        return out

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        return ".".join(self.generators[x].name for x in word)

    def format_poly(self, p: Poly) -> str:
        if p.is_zero():
            return "0"
        parts = []
        for w, c in p.items():
            s = self.format_word(w)
            if c != self.field.one:
                s = f"({format_elem(c)})*{s}"
            parts.append(s)
        return " + ".join(parts)

    def __eq__(self, other):
        if not isinstance(other, Dga):
            return NotImplemented
        return (self.field == other.field and self.n == other.n
                and self.generators == other.generators and self.diff == other.diff)

    def __repr__(self):
        return f"<Dga over GF({self.field}) n={self.n} gens={len(self.generators)}>"


def inverse_name(name: str) -> str:
    return name + "^-1"


# ---------------------------------------------------------------------------
# symbolic operations


def leibniz_boundary(dga: Dga, p: Poly) -> Poly:
    """Apply the differential to ``p`` by the (sign-free) Leibniz rule."""
    out = Poly(dga.field)
    diff = dga.diff
    for w, c in p.terms.items():
        for t, x in enumerate(w):
            dx = diff[x]
            if dx.is_zero():
                continue
            pre, post = w[:t], w[t + 1:]
            for v, a in dx.terms.items():
                out.add_term(dga.concat(pre, v, post), c * a)
    return out


def eval_word(values: Sequence[FieldElem], word: Word, one: FieldElem) -> FieldElem:
    acc = one
    for x in word:
        acc = acc * values[x]
        if not acc:
            return acc
    return acc


def eval_map(dga: Dga, values, p: Poly) -> FieldElem:
    """Evaluate the algebra map determined by ``values`` on ``p``.

    ``values`` is either a sequence indexed like ``dga.generators`` or a
    mapping from generator names (or indices) to field elements.
    """
    vals = _as_value_tuple(dga, values)
    one = dga.field.one
    total = dga.field.zero
    for w, c in p.terms.items():
        total = total + c * eval_word(vals, w, one)
    return total


def _as_value_tuple(dga: Dga, values) -> tuple:
    if isinstance(values, Mapping):
        out = []
        for i, g in enumerate(dga.generators):
            if g.name in values:
                out.append(values[g.name])
            elif i in values:
                out.append(values[i])
            else:
                raise KeyError(f"no value for generator {g.name!r}")
        return tuple(out)
    vals = getattr(values, "values", values)
    if len(vals) != len(dga.generators):
        raise KeyError("value sequence does not cover every generator")
    return tuple(vals)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Issue:
    kind: str
    generator: str | None
    detail: str

    def __str__(self):
        who = f" [{self.generator}]" if self.generator else ""
        return f"{self.kind}{who}: {self.detail}"


def dga_validate(dga: Dga) -> list[Issue]:
    """Return every violated invariant; an empty list means the dga is valid."""
    issues: list[Issue] = []
    gens = dga.generators
    names = set()
    for i, g in enumerate(gens):
        if g.name in names:
            issues.append(Issue("duplicate", g.name, "generator name used twice"))
        names.add(g.name)
        if not (1 <= g.row <= dga.n and 1 <= g.col <= dga.n):
            issues.append(Issue("grading", g.name, f"component pair ({g.row},{g.col}) outside 1..{dga.n}"))
        if g.is_loop:
            if g.degree != 0 or g.row != g.col:
                issues.append(Issue("grading", g.name, "loop generators need degree 0 and row = col"))
            if i not in dga.inverse:
                issues.append(Issue("grading", g.name, "loop generator without paired inverse"))
    for i, g in enumerate(gens):
        dx = dga.diff.get(i, Poly(dga.field))
        if g.is_loop:
            if not dx.is_zero():
                issues.append(Issue("grading", g.name, "loop generators must have zero differential"))
            continue
        for w, _ in dx.items():
            ws = dga.format_word(w)
            if w != dga.reduce(w):
                issues.append(Issue("reduction", g.name, f"word {ws} is not freely reduced"))
            if not dga.composable(w):
                issues.append(Issue("composability", g.name, f"word {ws} is not composable"))
                continue
            if dga.word_degree(w) != g.degree - 1:
                issues.append(Issue("grading", g.name,
                                    f"word {ws} has degree {dga.word_degree(w)}, expected {g.degree - 1}"))
            ends = dga.word_ends(w)
            if ends is None:
                if g.row != g.col:
                    issues.append(Issue("grading", g.name, "unit word in the differential of a mixed generator"))
            elif ends != (g.row, g.col):
                issues.append(Issue("grading", g.name,
                                    f"word {ws} runs {ends}, generator runs {(g.row, g.col)}"))
            if g.energy is not None:
                es = [gens[x].energy for x in w if gens[x].is_chord]
                if all(e is not None for e in es) and sum(es, Fraction(0)) >= g.energy:
                    issues.append(Issue("energy", g.name,
                                        f"word {ws} has energy {sum(es, Fraction(0))} >= {g.energy}"))
    for i, g in enumerate(gens):
        dd = leibniz_boundary(dga, dga.diff[i])
        if not dd.is_zero():
            w, c = dd.items()[0]
            issues.append(Issue("d2", g.name, f"d(d {g.name}) = {dga.format_poly(dd)} != 0 "
                                              f"(surviving word {dga.format_word(w)})"))
    return issues


# ---------------------------------------------------------------------------
# text format

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


class _PolyParser:
    def __init__(self, index, field, text, lineno, offset):
        self.index = index
        self.field = field
        self.s = text
        self.pos = 0
        self.lineno = lineno
        self.offset = offset

    def error(self, msg):
        raise DgaParseError(msg, self.lineno, self.offset + self.pos + 1)

    def ws(self):
        while self.pos < len(self.s) and self.s[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        self.ws()
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def parse(self):
        terms = []
        while True:
            terms.append(self.term())
            if self.peek() == "+":
                self.pos += 1
                continue
            if self.peek():
                self.error(f"unexpected {self.peek()!r}")
            return terms

    def term(self):
        col = self.offset + self.pos + 1
        coeff = self.field.one
        if self.peek() == "(":
            end = self.s.find(")", self.pos)
            if end < 0:
                self.error("unclosed '('")
            try:
                coeff = parse_elem(self.field, self.s[self.pos + 1:end])
            except FieldError as exc:
                self.error(str(exc))
            self.pos = end + 1
            if self.peek() != "*":
                self.error("expected '*' after coefficient")
            self.pos += 1
        ch = self.peek()
        if ch in ("0", "1"):
            self.pos += 1
            return (coeff if ch == "1" else self.field.zero), [], col
        letters = [self.letter()]
        while self.peek() == ".":
            self.pos += 1
            letters.append(self.letter())
        return coeff, letters, col

    def letter(self):
        self.ws()
        mt = _NAME.match(self.s, self.pos)
        if mt is None:
            self.error("expected a generator name")
        name = mt.group(0)
        self.pos = mt.end()
        if self.s.startswith("^-1", self.pos):
            self.pos += 3
            name = inverse_name(name)
        if name not in self.index:
            self.error(f"unknown generator {name!r}")
        return self.index[name]


def dga_parse(text: str, field: FieldSpec | None = None) -> Dga:
    """Parse the line-oriented dga format.

    ``field`` overrides the file's ``field`` declaration.  Structural errors
    raise :class:`DgaParseError`; the d^2 = 0 and energy conditions are left
    to :func:`dga_validate`.
    """
    decl_field = None
    n = None
    gens: list[Generator] = []
    energies: dict[str, tuple[Fraction, int]] = {}
    diff_lines: list[tuple[int, str, str, int]] = []
    seen: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        toks = line.split()
        key = toks[0]
        if key == "field":
            if len(toks) != 2:
                raise DgaParseError("expected 'field 2^m'", lineno, 1)
            try:
                decl_field = parse_field_decl(toks[1])
            except FieldError as exc:
                raise DgaParseError(str(exc), lineno, line.find(toks[1]) + 1) from None
        elif key == "components":
            if len(toks) != 2 or not toks[1].isdigit() or int(toks[1]) < 1:
                raise DgaParseError("expected 'components <positive integer>'", lineno, 1)
            n = int(toks[1])
        elif key == "gen":
            if len(toks) != 6:
                raise DgaParseError("expected 'gen name degree row col kind'", lineno, 1)
            _, name, deg, row, col, kind = toks
            if not _NAME.fullmatch(name):
                raise DgaParseError(f"bad generator name {name!r}", lineno, line.find(name) + 1)
            if name in seen:
                raise DgaParseError(f"duplicate generator {name!r}", lineno, line.find(name) + 1)
            try:
                deg_i, row_i, col_i = int(deg), int(row), int(col)
            except ValueError:
                raise DgaParseError("degree, row and col must be integers", lineno, 1) from None
            if kind not in (CHORD, LOOP):
                raise DgaParseError(f"kind must be 'chord' or 'loop', got {kind!r}", lineno,
                                    line.rfind(kind) + 1)
            if kind == LOOP and (deg_i != 0 or row_i != col_i):
                raise DgaParseError("loop generators need degree 0 and row = col", lineno, 1)
            seen[name] = lineno
            gens.append(Generator(name, deg_i, row_i, col_i, kind))
            if kind == LOOP:
                gens.append(Generator(inverse_name(name), 0, row_i, col_i, LOOP_INVERSE))
        elif key == "energy":
            if len(toks) != 3:
                raise DgaParseError("expected 'energy name value'", lineno, 1)
            try:
                val = Fraction(toks[2])
            except (ValueError, ZeroDivisionError):
                raise DgaParseError(f"bad energy {toks[2]!r}", lineno, line.find(toks[2]) + 1) from None
            if val <= 0:
                raise DgaParseError("energies must be positive", lineno, line.find(toks[2]) + 1)
            energies[toks[1]] = (val, lineno)
        elif key == "diff":
            mt = re.match(r"\s*diff\s+([A-Za-z_][A-Za-z0-9_]*)\s*=", line)
            if mt is None:
                raise DgaParseError("expected 'diff name = polynomial'", lineno, 1)
            diff_lines.append((lineno, mt.group(1), line[mt.end():], mt.end()))
        else:
            raise DgaParseError(f"unknown directive {key!r}", lineno, line.find(key) + 1)

    fld = field or decl_field or field_make(1)
    if n is None:
        n = max([max(g.row, g.col) for g in gens], default=1)
    for g in gens:
        if not (1 <= g.row <= n and 1 <= g.col <= n):
            raise DgaParseError(f"generator {g.name!r} has component outside 1..{n}", seen.get(g.name))
    for name, (val, lineno) in energies.items():
        if name not in seen:
            raise DgaParseError(f"energy for unknown generator {name!r}", lineno, 1)
    gens = [Generator(g.name, g.degree, g.row, g.col, g.kind,
                      energies[g.name][0] if g.name in energies and g.kind == CHORD else None)
            for g in gens]
    dga = Dga(fld, n, gens)
    diffs: dict[int, Poly] = {}
    for lineno, name, rhs, offset in diff_lines:
        if name not in dga.index or dga[name].kind == LOOP_INVERSE:
            raise DgaParseError(f"unknown generator {name!r}", lineno, offset)
        gi = dga.index[name]
        if gi in diffs:
            raise DgaParseError(f"second diff line for {name!r}", lineno, 1)
        g = dga.generators[gi]
        parser = _PolyParser(dga.index, fld, rhs, lineno, offset)
        p = Poly(fld)
        for coeff, letters, col in parser.parse():
            word = tuple(letters)
            if not dga.composable(word):
                raise DgaParseError(f"non-composable word {dga.format_word(word)!r}", lineno, col)
            reduced = dga.reduce(word)
            if coeff and dga.word_degree(reduced) != g.degree - 1:
                raise DgaParseError(
                    f"degree mismatch: word {dga.format_word(word)!r} has degree "
                    f"{dga.word_degree(reduced)}, d{name} needs {g.degree - 1}", lineno, col)
            ends = dga.word_ends(reduced)
            if coeff and ends is None and g.row != g.col:
                raise DgaParseError(f"unit word in d{name} of a mixed generator", lineno, col)
            if coeff and ends is not None and ends != (g.row, g.col):
                raise DgaParseError(
                    f"word {dga.format_word(word)!r} runs between components {ends}, "
                    f"but {name} runs {(g.row, g.col)}", lineno, col)
            p.add_term(reduced, coeff)
        if g.kind == LOOP and not p.is_zero():
            raise DgaParseError(f"loop generator {name!r} must have zero differential", lineno, offset)
        diffs[gi] = p
    for i, g in enumerate(dga.generators):
        if g.kind == CHORD and i not in diffs:
            raise DgaParseError(f"missing diff line for chord {g.name!r}", seen[g.name])
    for i, p in diffs.items():
        dga.diff[i] = p
    return dga


def dga_serialize(dga: Dga) -> str:
    lines = [f"field 2^{dga.field.m}", f"components {dga.n}"]
    for g in dga.generators:
        if g.kind != LOOP_INVERSE:
            lines.append(f"gen {g.name} {g.degree} {g.row} {g.col} {g.kind}")
    for g in dga.generators:
        if g.energy is not None:
            lines.append(f"energy {g.name} {g.energy}")
    for i, g in enumerate(dga.generators):
        if g.kind == CHORD:
            lines.append(f"diff {g.name} = {dga.format_poly(dga.diff[i])}")
    return "\n".join(lines) + "\n"


def load_dga(path, field: FieldSpec | None = None) -> Dga:
    with open(path, encoding="utf-8") as fh:
        return dga_parse(fh.read(), field=field)
