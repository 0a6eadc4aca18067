"""Exact arithmetic in the binary fields GF(2^m), 1 <= m <= 16.

Elements are residues of GF(2)[g] modulo a fixed irreducible polynomial,
stored as bit patterns (bit i is the coefficient of g^i).  For every m the
modulus is the irreducible polynomial of lowest Hamming weight whose bit
pattern is numerically smallest among those of that weight; for m = 1 the
modulus is x + 1.  The table is reproduced in the README.

Multiplication goes through discrete log / antilog tables built from the
smallest primitive element of each field, so the choice of modulus does not
need to be primitive.
"""
from __future__ import annotations

import re
from functools import lru_cache

MAX_M = 16


class FieldError(ValueError):
    """Raised for invalid field construction or mixed-field arithmetic."""


def _polymod(a: int, mod: int) -> int:
    dm = mod.bit_length()
    while a.bit_length() >= dm:
        a ^= mod << (a.bit_length() - dm)
    return a


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1 .. deg/2 over GF(2)."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _polymod(poly, q) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(m: int) -> int:
    if not 1 <= m <= MAX_M:
        raise FieldError(f"field exponent m={m} outside 1..{MAX_M}")
    if m == 1:
        return 0b11
    top = 1 << m
    best = None
    for low in range(1, top, 2):
        poly = top | low
        w = bin(poly).count("1")
        if best is not None and w >= best[0]:
            continue
        if is_irreducible(poly):
            best = (w, poly)
    # among minimum weight the numerically smallest was visited first
    return best[1]


class FieldSpec:
    """The field GF(2^m) with its fixed modulus.

    ``field_make`` interns one instance per m; equality is by (m, modulus).
    """

    __slots__ = ("m", "modulus", "order", "_exp", "_log", "_elems", "_powers", "zero", "one")

    def __init__(self, m: int, modulus: int | None = None):
        if not isinstance(m, int) or not 1 <= m <= MAX_M:
            raise FieldError(f"field exponent m={m!r} outside 1..{MAX_M}")
        modulus = default_modulus(m) if modulus is None else modulus
        if modulus.bit_length() - 1 != m or not is_irreducible(modulus):
            raise FieldError(f"modulus {bin(modulus)} is not an irreducible polynomial of degree {m}")
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        self._build_tables()
        # every element is allocated once; arithmetic hands out these instances
        self._elems = tuple(FieldElem(self, b) for b in range(self.order))
        self._powers = tuple(self._elems[b] for b in self._exp)
        self.zero = self._elems[0]
        self.one = self._elems[1]

    def _build_tables(self) -> None:
        q1 = self.order - 1
        for cand in range(1, self.order):
            exp = [0] * q1
            log = [-1] * self.order
            x = 1
            ok = True
            for i in range(q1):
                if log[x] != -1:
                    ok = False
                    break
                exp[i] = x
                log[x] = i
                x = _polymod(_clmul(x, cand), self.modulus)
            if ok:
                self._exp = exp
                self._log = log
                return
        raise AssertionError("no primitive element found")  # unreachable for a field

    # raw integer arithmetic -------------------------------------------------
    def mul_bits(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv_bits(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^%d)" % self.m)
        return self._exp[(-self._log[a]) % (self.order - 1)]

    # element construction ---------------------------------------------------
    def __call__(self, value) -> FieldElem:
        if type(value) is FieldElem and value.field is self:
            return value
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldError("element belongs to another field")
            return value
        if isinstance(value, str):
            return parse_elem(self, value)
        if isinstance(value, int):
            if not 0 <= value < self.order:
                raise FieldError(f"bit pattern {value} out of range for GF(2^{self.m})")
            return self._elems[value]
        raise TypeError(f"cannot coerce {value!r} to a field element")

    @property
    def gen(self) -> FieldElem:
        """The residue class of g."""
        return self._elems[_polymod(0b10, self.modulus)]

    def elements(self) -> list[FieldElem]:
        return list(self._elems)

    def units(self) -> list[FieldElem]:
        return list(self._elems[1:])

    def __repr__(self):
        return f"FieldSpec(2^{self.m}, modulus={format_poly(self.modulus, 'x')})"

    def __str__(self):
        return f"2^{self.m}"

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return self.m == other.m and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.m, self.modulus))

    def __reduce__(self):
        return (field_make, (self.m,))


class FieldElem:
    """An element of GF(2^m); immutable and hashable."""

    __slots__ = ("field", "bits")

    def __init__(self, field: FieldSpec, bits: int):
        self.field = field
        self.bits = bits

    def _check(self, other) -> FieldElem:
        if isinstance(other, int) and other in (0, 1):
            return self.field._elems[other]
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            raise FieldError(f"mixed-field arithmetic: GF(2^{self.field.m}) and GF(2^{other.field.m})")
        return other

    def __add__(self, other):
        if type(other) is FieldElem and other.field is self.field:
            return self.field._elems[self.bits ^ other.bits]
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.field._elems[self.bits ^ other.bits]

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        if type(other) is FieldElem and other.field is self.field:
            a, b = self.bits, other.bits
            f = self.field
            if a == 0 or b == 0:
                return f.zero
            return f._powers[(f._log[a] + f._log[b]) % (f.order - 1)]
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.field._elems[self.field.mul_bits(self.bits, other.bits)]

    __rmul__ = __mul__

    def inv(self) -> FieldElem:
        return self.field._elems[self.field.inv_bits(self.bits)]

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __pow__(self, e: int):
        f = self.field
        if self.bits == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return f.one if e == 0 else f.zero
        q1 = f.order - 1
        return f._powers[(f._log[self.bits] * e) % q1]

    def __bool__(self):
        return self.bits != 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.bits == other.bits and (self.field is other.field or self.field == other.field)
        if isinstance(other, int):
            return self.bits == other and other in (0, 1)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.m, self.bits))

    def __lt__(self, other: FieldElem):
        return self.bits < other.bits

    def __repr__(self):
        return f"FieldElem({format_elem(self)!r}, 2^{self.field.m})"

    def __str__(self):
        return format_elem(self)


@lru_cache(maxsize=None)
def field_make(m: int) -> FieldSpec:
    """Return the (interned) field GF(2^m) with its documented modulus."""
    if not isinstance(m, int) or not 1 <= m <= MAX_M:
        raise FieldError(f"field exponent m={m!r} outside 1..{MAX_M}")
    return FieldSpec(m)


def field_units(spec: FieldSpec) -> list[FieldElem]:
    """All nonzero elements in ascending bit order."""
    return spec.units()


def field_arith(a: FieldElem, b: FieldElem | int | None, op: str) -> FieldElem:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown field operation {op!r}")


def format_poly(bits: int, var: str = "g") -> str:
    if bits == 0:
        return "0"
    parts = []
    for i in range(bits.bit_length() - 1, -1, -1):
        if bits >> i & 1:
            parts.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
    return "+".join(parts)


def format_elem(x: FieldElem) -> str:
    return format_poly(x.bits)


_MONO = re.compile(r"^(?:1|g(?:\^(\d+))?)$")


def parse_elem(spec: FieldSpec, text: str) -> FieldElem:
    """Parse ``0``, ``1``, ``g``, ``g+1``, ``g^3+g+1`` ... and reduce."""
    s = text.replace(" ", "")
    if s == "0":
        return spec.zero
    if not s:
        raise FieldError("empty field element")
    bits = 0
    for mono in s.split("+"):
        mt = _MONO.match(mono)
        if mt is None:
            raise FieldError(f"bad field element {text!r}")
        if mono == "1":
            e = 0
        else:
            e = int(mt.group(1)) if mt.group(1) else 1
        bits ^= 1 << e
    return spec._elems[_polymod(bits, spec.modulus)]


def parse_field_decl(text: str) -> FieldSpec:
    """Parse a ``2^m`` field declaration."""
    mt = re.fullmatch(r"\s*2\s*\^\s*(\d+)\s*", text)
    if mt is None:
        raise FieldError(f"bad field declaration {text!r}; expected 2^m")
    return field_make(int(mt.group(1)))
