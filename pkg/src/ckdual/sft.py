"""Defining matrices and word combinatorics for shifts of finite type.

A shift of finite type over the alphabet {1, ..., n} is described by an n x n
0/1 transition matrix A: the letter j may follow the letter i exactly when
A[i][j] = 1.  Everything downstream (Cuntz-Krieger algebra relations, Fock
space bases, K-theory presentations) is driven by this matrix, so validation
lives here.

Letters are 0-based in all in-memory words and 1-based in every rendered
report, matching the usual generator labels s_1, ..., s_n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd


class MatrixValidationError(ValueError):
    """Base class for defining-matrix rejections."""


class NotSquareError(MatrixValidationError):
    pass


class NonBinaryEntryError(MatrixValidationError):
    pass


class ZeroRowError(MatrixValidationError):
    def __init__(self, index: int):
        super().__init__(f"row {index} is entirely zero")
        self.index = index  # 1-based


class ZeroColumnError(MatrixValidationError):
    def __init__(self, index: int):
        super().__init__(f"column {index} is entirely zero")
        self.index = index  # 1-based


class MatrixFormatError(ValueError):
    """Raised when a matrix file or string cannot be parsed."""


Word = tuple  # tuple of 0-based letters


@dataclass(frozen=True)
class ZeroOneMatrix:
    """A validated n x n 0/1 matrix with no zero row and no zero column."""

    n: int
    rows: tuple

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def transpose(self) -> "ZeroOneMatrix":
        # A zero row of the transpose would be a zero column of self, so the
        # result is valid by construction.
        return ZeroOneMatrix(self.n, tuple(tuple(r[j] for r in self.rows) for j in range(self.n)))

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [list(r) for r in self.rows]}

    def __str__(self) -> str:
        return "\n".join(" ".join(str(e) for e in row) for row in self.rows)


def validate_matrix(raw) -> ZeroOneMatrix:
    """Validate a raw integer matrix as a defining matrix.

    Rejects non-square input, entries outside {0, 1}, and any all-zero row or
    column (indices in errors are 1-based).
    """
    rows = [list(r) for r in raw]
    n = len(rows)
    if n == 0:
        raise NotSquareError("matrix is empty")
    for r in rows:
        if len(r) != n:
            raise NotSquareError(f"expected {n} columns per row, got {len(r)}")
    for r in rows:
        for e in r:
            if not isinstance(e, int) or isinstance(e, bool) or e not in (0, 1):
                raise NonBinaryEntryError(f"entry {e!r} is not 0 or 1")
    for i, r in enumerate(rows):
        if not any(r):
            raise ZeroRowError(i + 1)
    for j in range(n):
        if not any(r[j] for r in rows):
            raise ZeroColumnError(j + 1)
    return ZeroOneMatrix(n, tuple(tuple(r) for r in rows))


def transpose(a: ZeroOneMatrix) -> ZeroOneMatrix:
    return a.transpose()


def _successors(a: ZeroOneMatrix):
    return [tuple(j for j in range(a.n) if a.entry(i, j)) for i in range(a.n)]


def _reachable(succ, start: int) -> set:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in succ[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def is_irreducible(a: ZeroOneMatrix) -> bool:
    """True iff the transition graph is strongly connected."""
    succ = _successors(a)
    if len(_reachable(succ, 0)) != a.n:
        return False
    pred = [tuple(i for i in range(a.n) if a.entry(i, j)) for j in range(a.n)]
    return len(_reachable(pred, 0)) == a.n


def is_aperiodic(a: ZeroOneMatrix) -> bool:
    """True iff some power of the matrix is entrywise positive.

    Checked as strong connectivity plus gcd of cycle lengths equal to 1: with
    BFS levels from any vertex, the period of a strongly connected graph is
    gcd(level[u] + 1 - level[v]) over all edges u -> v.
    """
    if not is_irreducible(a):
        return False
    succ = _successors(a)
    level = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in succ[u]:
                if v not in level:
                    level[v] = level[u] + 1
                    nxt.append(v)
        frontier = nxt
    g = 0
    for u in range(a.n):
        for v in succ[u]:
            g = gcd(g, level[u] + 1 - level[v])
    return abs(g) == 1


def _is_permutation(a: ZeroOneMatrix) -> bool:
    return all(sum(r) == 1 for r in a.rows) and all(
        sum(r[j] for r in a.rows) == 1 for j in range(a.n)
    )


def satisfies_cantor_condition(a: ZeroOneMatrix) -> bool:
    """Decidable surrogate for "the shift space is a Cantor set".

    For irreducible matrices the shift space is a Cantor set exactly when it
    is infinite, i.e. the matrix is not a permutation.  Reducible matrices are
    reported False (unsupported) rather than analyzed further.
    """
    return is_irreducible(a) and not _is_permutation(a)


def is_admissible(a: ZeroOneMatrix, word) -> bool:
    return all(a.entry(word[i], word[i + 1]) == 1 for i in range(len(word) - 1))


def enumerate_words(a: ZeroOneMatrix, m: int) -> list:
    """All admissible words of length exactly m, in lexicographic order.

    Length 0 yields the singleton empty word.
    """
    if m < 0:
        raise ValueError("word length must be >= 0")
    if m == 0:
        return [()]
    succ = _successors(a)
    words = [(i,) for i in range(a.n)]
    for _ in range(m - 1):
        words = [w + (j,) for w in words for j in succ[w[-1]]]
    return words


def count_words(a: ZeroOneMatrix, m: int) -> int:
    """Number of admissible words of length m: the total of all entries of
    the (m-1)-th matrix power for m >= 1, and 1 for m = 0."""
    if m < 0:
        raise ValueError("word length must be >= 0")
    if m == 0:
        return 1
    row_sums = [1] * a.n
    for _ in range(m - 1):
        row_sums = [sum(a.entry(i, j) * row_sums[j] for j in range(a.n)) for i in range(a.n)]
    return sum(row_sums)


def word_str(word) -> str:
    """Render a word with 1-based letters; dot-separated once letters exceed 9."""
    if not word:
        return ""
    letters = [str(i + 1) for i in word]
    return ".".join(letters) if any(i >= 9 for i in word) else "".join(letters)


def parse_matrix_json(text: str) -> ZeroOneMatrix:
    """Parse the JSON matrix format {"n": <int>, "rows": [[0|1, ...], ...]}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or set(obj) != {"n", "rows"}:
        raise MatrixFormatError('expected an object with exactly the keys "n" and "rows"')
    n, rows = obj["n"], obj["rows"]
    if not isinstance(n, int) or not isinstance(rows, list) or len(rows) != n:
        raise MatrixFormatError('"n" must match the number of rows')
    if not all(isinstance(r, list) and len(r) == n for r in rows):
        raise MatrixFormatError(f"every row must be a list of {n} entries")
    return validate_matrix(rows)


def parse_matrix_text(text: str) -> ZeroOneMatrix:
    """Parse the plain-text format: n lines of n space-separated 0/1 digits.

    Trailing whitespace-only lines are tolerated; anything else after the n-th
    row is rejected as garbage.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MatrixFormatError("empty matrix file")
    n = len(lines[0].split())
    if len(lines) != n:
        raise MatrixFormatError(f"expected {n} rows to match {n} columns, got {len(lines)}")
    rows = []
    for line in lines:
        toks = line.split()
        if len(toks) != n:
            raise MatrixFormatError(f"expected {n} entries per row, got {len(toks)}")
        if not all(t in ("0", "1") for t in toks):
            raise MatrixFormatError(f"non-0/1 token in row: {line.strip()!r}")
        rows.append([int(t) for t in toks])
    return validate_matrix(rows)


def load_matrix(path: str) -> ZeroOneMatrix:
    """Load a defining matrix from a JSON or plain-text file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return parse_matrix_json(text)
    return parse_matrix_text(text)
