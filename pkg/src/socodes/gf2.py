"""Bit-packed GF(2) matrices and exact code-parameter computation.

Rows are stored as Python ints used as bitsets: column ``j`` of a row is
bit ``j``.  Codeword enumeration for the parameter routines is delegated to
:mod:`socodes._accel`, which picks the compiled kernel when it is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from socodes import _accel
from socodes.errors import FormatError, RankDeficient

MAX_ENUM_K = 24


@dataclass(frozen=True)
class BinaryMatrix:
    """A k x n matrix over GF(2); the generated code is its row space."""

    k: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k != len(self.rows):
            raise ValueError(f"expected {self.k} rows, got {len(self.rows)}")
        if self.n < 0:
            raise ValueError("negative column count")
        mask = (1 << self.n) - 1
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise ValueError("row has bits beyond the last column")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]] | Sequence[str]) -> "BinaryMatrix":
        """Build from 0/1 lists or strings like ``"10110"``."""
        if not rows:
            raise ValueError("matrix needs at least one row")
        packed = []
        n = len(rows[0])
        for row in rows:
            if len(row) != n:
                raise ValueError("ragged rows")
            word = 0
            for j, b in enumerate(row):
                if int(b):
                    word |= 1 << j
            packed.append(word)
        return cls(len(packed), n, tuple(packed))

    @classmethod
    def from_columns(cls, k: int, columns: Iterable[int]) -> "BinaryMatrix":
        """Build from column vectors given as ints; bit ``i`` is row ``i``."""
        rows = [0] * k
        n = 0
        for j, col in enumerate(columns):
            if col >> k:
                raise ValueError(f"column {col:#x} does not fit in {k} rows")
            for i in range(k):
                if (col >> i) & 1:
                    rows[i] |= 1 << j
            n = j + 1
        return cls(k, n, tuple(rows))

    @classmethod
    def identity(cls, k: int) -> "BinaryMatrix":
        return cls(k, k, tuple(1 << i for i in range(k)))

    def columns(self) -> list[int]:
        cols = []
        for j in range(self.n):
            c = 0
            for i, r in enumerate(self.rows):
                c |= ((r >> j) & 1) << i
            cols.append(c)
        return cols

    def hstack(self, other: "BinaryMatrix") -> "BinaryMatrix":
        """Concatenate column blocks: ``[self | other]``."""
        if self.k != other.k:
            raise ValueError("row counts differ")
        rows = tuple(a | (b << self.n) for a, b in zip(self.rows, other.rows))
        return BinaryMatrix(self.k, self.n + other.n, rows)

    def gram(self) -> tuple[int, ...]:
        """G G^T over GF(2), one bitset per row."""
        out = []
        for a in self.rows:
            word = 0
            for j, b in enumerate(self.rows):
                word |= ((a & b).bit_count() & 1) << j
            out.append(word)
        return tuple(out)

    def row_strings(self) -> list[str]:
        return ["".join("1" if (r >> j) & 1 else "0" for j in range(self.n)) for r in self.rows]

    def to_text(self) -> str:
        return "\n".join([f"{self.k} {self.n}", *self.row_strings()]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        """Parse the ``k n`` + k bit-lines format; ``#`` lines are skipped."""
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise FormatError("empty matrix text")
        try:
            k, n = (int(x) for x in lines[0].split())
        except ValueError as exc:
            raise FormatError(f"bad header line {lines[0]!r}") from exc
        body = lines[1:]
        if len(body) != k:
            raise FormatError(f"header says {k} rows, found {len(body)}")
        for ln in body:
            if len(ln) != n or set(ln) - {"0", "1"}:
                raise FormatError(f"bad row {ln!r} for n={n}")
        return cls.from_rows(body) if k else cls(0, n, ())

    def save(self, path: str | Path, header: str | None = None) -> None:
        text = self.to_text()
        if header:
            text = f"# {header}\n" + text
        Path(path).write_text(text)

    @classmethod
    def load(cls, path: str | Path) -> "BinaryMatrix":
        return cls.from_text(Path(path).read_text())


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int

    def __str__(self) -> str:
        return f"[{self.n},{self.k},{self.d}]"


def rank(m: BinaryMatrix) -> int:
    """Row-space dimension via elimination on the packed rows."""
    pivots: dict[int, int] = {}
    r = 0
    for row in m.rows:
        while row:
            top = row.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = row
                r += 1
                break
            row ^= p
    return r


def _require_full_rank(m: BinaryMatrix) -> None:
    if m.k > MAX_ENUM_K:
        raise ValueError(f"enumeration limited to k <= {MAX_ENUM_K}")
    if rank(m) != m.k:
        raise RankDeficient(f"rank {rank(m)} < {m.k} rows")


def min_distance(m: BinaryMatrix) -> int:
    """Minimum nonzero codeword weight, by Gray-code enumeration."""
    _require_full_rank(m)
    if m.k == 0:
        return 0
    return _accel.gray_min_weight(m.rows, m.n)


def weight_distribution(m: BinaryMatrix) -> list[int]:
    """``counts[w]`` is the number of codewords of weight ``w``, w = 0..n."""
    _require_full_rank(m)
    return _accel.gray_weight_distribution(m.rows, m.n)


def is_self_orthogonal(m: BinaryMatrix) -> bool:
    return all(g == 0 for g in m.gram())


def is_even_like(m: BinaryMatrix) -> bool:
    return all(r.bit_count() % 2 == 0 for r in m.rows)


def params(m: BinaryMatrix) -> CodeParams:
    return CodeParams(m.n, m.k, min_distance(m))
