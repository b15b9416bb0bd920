"""Bit-packed square ±1 matrices with Hadamard verification and .pm I/O.

Encoding: each row is a Python int used as a bit vector; bit j set means
entry -1, clear means +1.  An all-+1 row is the integer 0, so dot products
reduce to popcounts: row_i . row_j = n - 2*popcount(row_i XOR row_j).
"""

from __future__ import annotations

import numpy as np

from .errors import PmParseError, SizeError

try:
    from . import _bitgram
except ImportError:  # compiled kernel is optional
    _bitgram = None

MAX_ORDER_DEFAULT = 1 << 16

# Above this order the verifier switches from per-pair popcounts to an
# exact blocked float32 Gram computation (entries are +-1 and n < 2^24,
# so every partial sum is an exactly representable integer).
_DENSE_VERIFY_THRESHOLD = 192


class PlusMinusMatrix:
    """Immutable square matrix over {+1, -1}."""

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        if n < 1:
            raise ValueError("order must be positive")
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError("row count does not match order")
        mask = (1 << n) - 1
        for r in rows:
            if r < 0 or r > mask:
                raise ValueError("row bits out of range for order")
        self.n = n
        self.rows = rows

    def __setattr__(self, name, value):
        if hasattr(self, "rows"):
            raise AttributeError("PlusMinusMatrix is immutable")
        super().__setattr__(name, value)

    def __eq__(self, other):
        return (
            isinstance(other, PlusMinusMatrix)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"PlusMinusMatrix(order={self.n})"

    def entry(self, i, j):
        return -1 if (self.rows[i] >> j) & 1 else 1

    def row_dot(self, i, j):
        """Integer dot product of rows i and j via popcount."""
        return self.n - 2 * (self.rows[i] ^ self.rows[j]).bit_count()

    @classmethod
    def from_dense(cls, dense):
        """Build from an array-like of +-1 entries."""
        a = np.asarray(dense)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("dense input must be square")
        if not np.isin(a, (-1, 1)).all():
            raise ValueError("entries must be +-1")
        n = a.shape[0]
        bits = np.packbits(a == -1, axis=1, bitorder="little")
        rows = [int.from_bytes(bits[i].tobytes(), "little") for i in range(n)]
        return cls(n, rows)

    def to_dense(self):
        """Dense int8 array of +-1 entries."""
        n = self.n
        nbytes = (n + 7) // 8
        buf = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
        packed = np.frombuffer(buf, dtype=np.uint8).reshape(n, nbytes)
        bits = np.unpackbits(packed, axis=1, bitorder="little")[:, :n]
        return (1 - 2 * bits.astype(np.int8)).astype(np.int8)


def is_hadamard(M: PlusMinusMatrix) -> bool:
    """True iff M * M^T = n * I."""
    n = M.n
    if n <= _DENSE_VERIFY_THRESHOLD:
        rows = M.rows
        half = n // 2
        if n > 1 and n % 2:
            return False
        for i in range(n):
            ri = rows[i]
            for j in range(i + 1, n):
                if (ri ^ rows[j]).bit_count() != half:
                    return False
        return True
    if n % 4:
        return False
    if _bitgram is not None:
        w = (n + 63) // 64
        nbytes = w * 8
        buf = b"".join(r.to_bytes(nbytes, "little") for r in M.rows)
        return bool(_bitgram.all_pairs_half(buf, n, w))
    dense = M.to_dense().astype(np.float32)
    # The Gram matrix is symmetric, so checking blocks of the upper
    # triangle (columns >= lo) covers every row pair once.
    block = max(256, (1 << 27) // n)
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        gram = dense[lo:hi] @ dense[lo:].T
        expected = np.zeros_like(gram)
        expected[np.arange(hi - lo), np.arange(hi - lo)] = n
        if not np.array_equal(gram, expected):
            return False
    return True


def kronecker(A: PlusMinusMatrix, B: PlusMinusMatrix, max_order=None):
    """Kronecker product A (x) B."""
    limit = MAX_ORDER_DEFAULT if max_order is None else max_order
    n = A.n * B.n
    if n > limit:
        raise SizeError(f"order {n} exceeds max_order {limit}")
    nb = B.n
    mask_b = (1 << nb) - 1
    rows = []
    for i in range(A.n):
        arow = A.rows[i]
        for k in range(B.n):
            brow = B.rows[k]
            brow_neg = ~brow & mask_b
            row = 0
            for j in reversed(range(A.n)):
                row = (row << nb) | (brow_neg if (arow >> j) & 1 else brow)
            rows.append(row)
    return PlusMinusMatrix(n, rows)


def normalize(M: PlusMinusMatrix) -> PlusMinusMatrix:
    """Negate rows, then columns, so row 0 and column 0 are all +1."""
    mask = (1 << M.n) - 1
    # Rows whose first entry is -1 get negated: column 0 becomes all +1.
    rows = [r ^ mask if r & 1 else r for r in M.rows]
    # XOR by the new row 0 negates exactly the columns where row 0 is -1;
    # column 0 is untouched because its row-0 bit is already clear.
    top = rows[0]
    return PlusMinusMatrix(M.n, [r ^ top for r in rows])


def write_matrix(M: PlusMinusMatrix, path):
    """Write the `.pm` text form: order line, then n rows of '+'/'-'."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"{M.n}\n")
        for r in M.rows:
            fh.write("".join("-" if (r >> j) & 1 else "+" for j in range(M.n)))
            fh.write("\n")


def read_matrix(path) -> PlusMinusMatrix:
    """Parse a `.pm` file; raises PmParseError with the offending line."""
    with open(path, "r", encoding="ascii", newline="") as fh:
        lines = fh.read().split("\n")
    if not lines or not lines[0]:
        raise PmParseError("missing order header", 1)
    try:
        n = int(lines[0])
    except ValueError:
        raise PmParseError(f"bad order header {lines[0]!r}", 1) from None
    if n < 1:
        raise PmParseError("order must be positive", 1)
    if len(lines) < n + 2 or lines[n + 1 :] != [""] * (len(lines) - n - 1):
        raise PmParseError(
            f"expected {n} rows plus trailing newline", min(len(lines), n + 1)
        )
    rows = []
    for i, line in enumerate(lines[1 : n + 1], start=2):
        if len(line) != n:
            raise PmParseError(f"row length {len(line)} != order {n}", i)
        row = 0
        for j, ch in enumerate(line):
            if ch == "-":
                row |= 1 << j
            elif ch != "+":
                raise PmParseError(f"invalid character {ch!r}", i)
        rows.append(row)
    return PlusMinusMatrix(n, rows)
