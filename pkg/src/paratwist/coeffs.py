"""Fourier coefficient tables, symmetry-aware lookup and formal linear forms."""

from __future__ import annotations

import io
import os
import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, TextIO, Union

from .errors import (
    DuplicateKeyConflict,
    InputError,
    InvalidHeader,
    MissingCoefficient,
    OutsideANplus,
    ParseError,
)
from .qform import HalfIntegralForm, Key, as_form, in_ANplus, normalize_translation, reduced_key


def canonical_key(S, N: int) -> tuple[Key, int]:
    """Canonical lookup key of S at level N, with the determinant sign of the move.

    Level 1 uses full Gauss reduction; higher levels use translations and a
    sign flip only.
    """
    S = as_form(S)
    if not in_ANplus(S, N):
        raise OutsideANplus(f"{S} is not in A({N})^+")
    if N == 1:
        a, b, c, sign = reduced_key(*S.key)
    else:
        a, b, c, sign = normalize_translation(*S.key)
    return (a, b, c), sign


def has_improper_automorphism(key: Key, N: int) -> bool:
    """Whether a canonical class is fixed by some allowed transform of determinant -1.

    For odd weight the symmetry then forces the coefficient to vanish.
    """
    a, b, c = key
    if b == 0 or b == a:
        return True
    return N == 1 and a == c


@lru_cache(maxsize=1 << 16)
def _fraction(num: int, den: int) -> Fraction:
    # the engine produces the same few numerators over and over
    return Fraction(num, den)


def _fmt_key(key) -> str:
    if isinstance(key, tuple):
        return ",".join(map(str, key))
    return str(key)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class LinearForm:
    """A finite formal sum ``sum c_K [K]`` with rational coefficients.

    Keys are canonical form triples (or, for Jacobi unknowns, discriminants).
    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for key, c in items:
            acc[key] = acc.get(key, 0) + Fraction(c)
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def _from_scaled(cls, scaled: Mapping, den: int) -> "LinearForm":
        """Build from integer numerators sharing the denominator ``den``."""
        out = cls.__new__(cls)
        out._terms = {k: _fraction(v, den) for k, v in scaled.items() if v}
        return out

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        return sorted(self._terms.items())

    def support(self) -> list:
        return sorted(self._terms)

    def coefficient(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return type(self)(acc)

    def __neg__(self) -> "LinearForm":
        return self.scale(-1)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + other.scale(-1)

    def scale(self, c) -> "LinearForm":
        c = Fraction(c)
        return type(self)({k: c * v for k, v in self._terms.items()})

    def __mul__(self, c) -> "LinearForm":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def evaluate(self, values: Callable | Mapping, missing_ok: bool = False) -> Fraction:
        """Substitute values for the keys.

        ``values`` is a mapping or a callable raising KeyError on absent keys.
        Every absent key is collected into a single MissingCoefficient unless
        ``missing_ok`` is set, in which case absent keys count as zero.
        """
        get = values.__getitem__ if isinstance(values, Mapping) else values
        total = Fraction(0)
        missing = []
        for k, c in self._terms.items():
            try:
                total += c * get(k)
            except KeyError:
                missing.append(k)
        if missing and not missing_ok:
            raise MissingCoefficient(missing)
        return total

    def substitute(self, expand: Callable[[object], "LinearForm"], cls=None) -> "LinearForm":
        """Replace each key K by the linear form ``expand(K)``."""
        acc: dict = {}
        for k, c in self._terms.items():
            for k2, c2 in expand(k)._terms.items():
                acc[k2] = acc.get(k2, 0) + c * c2
        return (cls or LinearForm)(acc)

    def __repr__(self) -> str:
        if not self._terms:
            return "LinearForm(0)"
        body = " + ".join(f"({v})*a[{_fmt_key(k)}]" for k, v in self.items())
        return f"LinearForm({body})"


def add(L1: LinearForm, L2: LinearForm) -> LinearForm:
    return L1 + L2


def scale(c, L: LinearForm) -> LinearForm:
    return L.scale(c)


def evaluate(L: LinearForm, table: "CoeffTable") -> Fraction:
    return L.evaluate(table.entries)


class CoeffTable:
    """Coefficients a(S) of a level-N, weight-k form on canonical keys."""

    __slots__ = ("N", "k", "_entries")

    def __init__(self, N: int, k: int, entries: Mapping[Key, object] | None = None):
        if not isinstance(N, int) or N < 1:
            raise InputError("level N must be a positive integer")
        if not isinstance(k, int) or k < 1:
            raise InputError("weight k must be a positive integer")
        self.N = N
        self.k = k
        data = {}
        for key, value in (entries or {}).items():
            key = tuple(key)
            canon, _ = canonical_key(key, N)
            if canon != key:
                raise InputError(f"key {_fmt_key(key)} is not canonical (expected {_fmt_key(canon)})")
            value = Fraction(value)
            if value and k % 2 and has_improper_automorphism(key, N):
                raise InputError(
                    f"odd weight forces a({_fmt_key(key)}) = 0, got {value}"
                )
            data[key] = value
        self._entries = data

    @property
    def entries(self) -> dict[Key, Fraction]:
        return dict(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key) -> bool:
        return tuple(key) in self._entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return (self.N, self.k, self._entries) == (other.N, other.k, other._entries)

    def __getitem__(self, key: Key) -> Fraction:
        try:
            return self._entries[key]
        except KeyError:
            raise MissingCoefficient([key]) from None

    def __repr__(self) -> str:
        return f"CoeffTable(N={self.N}, k={self.k}, {len(self)} entries)"


def lookup(table: CoeffTable, S) -> Fraction:
    """a(S) via the symmetry ``a(S[A]) = det(A)^k a(S)``."""
    key, sign = canonical_key(S, table.N)
    value = table[key]
    return -value if sign < 0 and table.k % 2 else value


def lookup_symbolic(S, N: int, k: int) -> LinearForm:
    key, sign = canonical_key(S, N)
    return LinearForm({key: -1 if sign < 0 and k % 2 else 1})


_HEADER = re.compile(r"^N\s*=\s*(\d+)\s+k\s*=\s*(\d+)$")


def _parse_rational(text: str) -> Fraction:
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(text)
    return Fraction(text)


def ingest(source: Union[str, os.PathLike, TextIO]) -> CoeffTable:
    """Read a coefficient file.

    Format: a header line ``N=<int> k=<int>``, then lines
    ``alpha,two_beta,gamma value`` where value is ``num`` or ``num/den``.
    ``#`` starts a comment.  Keys are brought to canonical form on the way in,
    picking up the determinant sign for odd weight.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return _ingest_lines(fh)
    return _ingest_lines(source)


def ingest_text(text: str) -> CoeffTable:
    return _ingest_lines(io.StringIO(text))


def _ingest_lines(lines: Iterable[str]) -> CoeffTable:
    N = k = None
    entries: dict[Key, Fraction] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if N is None:
            m = _HEADER.match(line)
            if not m:
                raise InvalidHeader(f"expected 'N=<int> k=<int>', got {line!r}", lineno)
            N, k = int(m.group(1)), int(m.group(2))
            if N < 1 or k < 1:
                raise InvalidHeader("N and k must be positive", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'a,b,c value', got {line!r}", lineno)
        fields = parts[0].split(",")
        if len(fields) != 3:
            raise ParseError(f"form must have three entries, got {parts[0]!r}", lineno)
        try:
            form = HalfIntegralForm(*(int(f) for f in fields))
            value = _parse_rational(parts[1])
        except (ValueError, InputError):
            raise ParseError(f"cannot parse {line!r}", lineno) from None
        try:
            key, sign = canonical_key(form, N)
        except OutsideANplus as exc:
            raise ParseError(str(exc), lineno) from None
        if sign < 0 and k % 2:
            value = -value
        if key in entries and entries[key] != value:
            raise DuplicateKeyConflict(
                f"conflicting values for {_fmt_key(key)}: {entries[key]} and {value}", lineno
            )
        entries[key] = value
    if N is None:
        raise InvalidHeader("missing header line", None)
    return CoeffTable(N, k, entries)


def emit(table: CoeffTable, stream: TextIO | None = None) -> str:
    """Serialize a table in the ingest format, keys in lexicographic order."""
    out = [f"N={table.N} k={table.k}"]
    for key, value in sorted(table.entries.items()):
        v = str(value.numerator) if value.denominator == 1 else format_rational(value)
        out.append(f"{_fmt_key(key)} {v}")
    text = "\n".join(out) + "\n"
    if stream is not None:
        stream.write(text)
    return text
