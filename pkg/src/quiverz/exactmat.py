"""Dense exact linear algebra over a prime field F_p.

Matrices are immutable values: a shape, a field, and a flat row-major tuple
of residues in [0, p).  Everything is computed with Python integers, so all
results are exact; the default modulus 32003 is large enough that the
desk-scale rank and Jordan-type computations used here behave like the
characteristic-zero ones, while p = 2 keeps exhaustive enumerations small.
"""

from __future__ import annotations

import itertools
from typing import Iterable, List, Optional, Sequence

from quiverz.partitions import Partition, dual

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class FieldSpec:
    """A prime field F_p, p prime (default 32003)."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        self.p = p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self.p == other.p

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.p))

    def __repr__(self) -> str:
        return f"FieldSpec({self.p})"


class ExactMatrix:
    """Dense matrix over F_p; entries stored row-major, reduced mod p."""

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int], field: FieldSpec):
        rows = int(rows)
        cols = int(cols)
        if rows < 0 or cols < 0:
            raise ValueError(f"negative shape ({rows}, {cols})")
        entries = tuple(int(e) % field.p for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.field = field
        self.entries = entries

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], field: FieldSpec, cols: Optional[int] = None
    ) -> "ExactMatrix":
        nrows = len(rows)
        if nrows:
            cols = len(rows[0])
        elif cols is None:
            cols = 0
        flat = [e for row in rows for e in row]
        return cls(nrows, cols, flat, field)

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "p": self.field.p,
            "entries": list(self.entries),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExactMatrix":
        return cls(data["rows"], data["cols"], data["entries"], FieldSpec(data["p"]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.shape == other.shape
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.field.p, self.entries))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols} mod {self.field.p})"


def _require_same_field(X: ExactMatrix, Y: ExactMatrix) -> None:
    if X.field != Y.field:
        raise ValueError(f"field mismatch: {X.field} vs {Y.field}")


def zeros(rows: int, cols: int, field: FieldSpec) -> ExactMatrix:
    return ExactMatrix(rows, cols, [0] * (rows * cols), field)


def identity(n: int, field: FieldSpec) -> ExactMatrix:
    e = [0] * (n * n)
    for i in range(n):
        e[i * n + i] = 1
    return ExactMatrix(n, n, e, field)


def mul(X: ExactMatrix, Y: ExactMatrix) -> ExactMatrix:
    """Exact product mod p."""
    _require_same_field(X, Y)
    if X.cols != Y.rows:
        raise ValueError(f"shape mismatch: {X.shape} times {Y.shape}")
    p = X.field.p
    n, m, k = X.rows, X.cols, Y.cols
    xe, ye = X.entries, Y.entries
    out = [0] * (n * k)
    for i in range(n):
        xi = i * m
        acc = [0] * k
        for l in range(m):
            c = xe[xi + l]
            if c:
                yl = l * k
                for j in range(k):
                    acc[j] += c * ye[yl + j]
        oi = i * k
        for j in range(k):
            out[oi + j] = acc[j] % p
    return ExactMatrix(n, k, out, X.field)


def mat_pow(M: ExactMatrix, k: int) -> ExactMatrix:
    if not M.is_square():
        raise ValueError("power of a non-square matrix")
    out = identity(M.rows, M.field)
    for _ in range(k):
        out = mul(out, M)
    return out


def transpose(M: ExactMatrix) -> ExactMatrix:
    out = [0] * (M.rows * M.cols)
    for i in range(M.rows):
        for j in range(M.cols):
            out[j * M.rows + i] = M.entries[i * M.cols + j]
    return ExactMatrix(M.cols, M.rows, out, M.field)


def hstack(X: ExactMatrix, Y: ExactMatrix) -> ExactMatrix:
    _require_same_field(X, Y)
    if X.rows != Y.rows:
        raise ValueError(f"row mismatch: {X.shape} next to {Y.shape}")
    out = []
    for i in range(X.rows):
        out.extend(X.row(i))
        out.extend(Y.row(i))
    return ExactMatrix(X.rows, X.cols + Y.cols, out, X.field)


def _rref(rows: List[List[int]], p: int, pivot_cols: Optional[int] = None) -> List[int]:
    """In-place reduced row echelon form; returns the pivot column list.

    Pivots are searched only in the first pivot_cols columns; row operations
    always span the full width, so augmented columns ride along."""
    nrows = len(rows)
    width = len(rows[0]) if nrows else 0
    if pivot_cols is None:
        pivot_cols = width
    pivots: List[int] = []
    r = 0
    for c in range(pivot_cols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c] % p, p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] % p:
                f = rows[i][c] % p
                ri, rr = rows[i], rows[r]
                rows[i] = [(ri[j] - f * rr[j]) % p for j in range(width)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(M: ExactMatrix) -> int:
    return len(_rref(M.to_rows(), M.field.p))


def is_injective(M: ExactMatrix) -> bool:
    return rank(M) == M.cols


def kernel_basis(M: ExactMatrix) -> ExactMatrix:
    """Matrix whose columns form a basis of {x : Mx = 0}; cols - rank of them."""
    p = M.field.p
    R = M.to_rows()
    pivots = _rref(R, p)
    pivot_set = set(pivots)
    free = [j for j in range(M.cols) if j not in pivot_set]
    vectors = []
    for f in free:
        v = [0] * M.cols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-R[r][f]) % p
        vectors.append(v)
    out = [0] * (M.cols * len(free))
    for j, v in enumerate(vectors):
        for i in range(M.cols):
            out[i * len(free) + j] = v[i]
    return ExactMatrix(M.cols, len(free), out, M.field)


def inverse(M: ExactMatrix) -> ExactMatrix:
    if not M.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    p = M.field.p
    aug = [list(M.row(i)) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    pivots = _rref(aug, p, pivot_cols=n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return ExactMatrix(n, n, [aug[i][n + j] for i in range(n) for j in range(n)], M.field)


def solve(M: ExactMatrix, C: ExactMatrix, rng=None) -> ExactMatrix:
    """One solution X of X M = C: a particular solution plus, when rng is
    given, a uniformly random combination of homogeneous solutions.

    Raises ValueError("no solution") on an inconsistent system."""
    _require_same_field(M, C)
    if M.cols != C.cols:
        raise ValueError(f"shape mismatch: solving X * {M.shape} = {C.shape}")
    p = M.field.p
    # Transposed system: M^T X^T = C^T, one RHS per row of X.
    Mt = transpose(M)
    Ct = transpose(C)
    aug = [list(Mt.row(i)) + list(Ct.row(i)) for i in range(Mt.rows)]
    pivots = _rref(aug, p, pivot_cols=M.rows)
    for i in range(len(pivots), len(aug)):
        if any(v % p for v in aug[i][M.rows :]):
            raise ValueError("no solution")
    nx = C.rows
    sol = [[0] * M.rows for _ in range(nx)]
    for r, c in enumerate(pivots):
        for j in range(nx):
            sol[j][c] = aug[r][M.rows + j]
    if rng is not None:
        hom = kernel_basis(Mt)  # columns span {y : M^T y = 0}
        for j in range(nx):
            for k in range(hom.cols):
                coeff = rng.randrange(p)
                if coeff:
                    for i in range(M.rows):
                        sol[j][i] = (sol[j][i] + coeff * hom.at(i, k)) % p
    return ExactMatrix(nx, M.rows, [v for row in sol for v in row], M.field)


def random_matrix(rows: int, cols: int, field: FieldSpec, rng) -> ExactMatrix:
    return ExactMatrix(rows, cols, [rng.randrange(field.p) for _ in range(rows * cols)], field)


def random_invertible(n: int, field: FieldSpec, rng) -> ExactMatrix:
    while True:
        M = random_matrix(n, n, field, rng)
        if rank(M) == n:
            return M


def canonical_nilpotent(eta: Partition, field: FieldSpec) -> ExactMatrix:
    """Block-diagonal nilpotent with one shift block per part of eta: basis
    vectors are the boxes of the Young diagram, each mapped to its left
    neighbour and the first column to 0."""
    n = eta.weight
    out = [0] * (n * n)
    offset = 0
    for part in eta.parts:
        for i in range(part - 1):
            out[(offset + i) * n + (offset + i + 1)] = 1
        offset += part
    return ExactMatrix(n, n, out, field)


def is_nilpotent(M: ExactMatrix) -> bool:
    """Nilpotency by repeated squaring up to the dimension."""
    if not M.is_square():
        raise ValueError("nilpotency of a non-square matrix")
    if M.rows == 0:
        return True
    P = M
    k = 1
    while k < M.rows:
        P = mul(P, P)
        k <<= 1
    return P.is_zero()


def jordan_type(N: ExactMatrix) -> Partition:
    """Jordan type of a nilpotent matrix: dual of the kernel-dimension
    increments of its powers."""
    if not is_nilpotent(N):
        raise ValueError("not nilpotent")
    n = N.rows
    if n == 0:
        return Partition()
    increments = []
    P = N
    prev = 0
    while True:
        k = n - rank(P)
        increments.append(k - prev)
        prev = k
        if k == n:
            break
        P = mul(P, N)
    return dual(Partition(increments))


class _EchelonTracker:
    """Incrementally tracked row space for independence tests."""

    def __init__(self, width: int, p: int):
        self.width = width
        self.p = p
        self.pivot_rows: dict = {}

    def _reduce(self, vec: Sequence[int]) -> List[int]:
        v = [x % self.p for x in vec]
        for j in range(self.width):
            if v[j] and j in self.pivot_rows:
                f = v[j]
                row = self.pivot_rows[j]
                v = [(a - f * b) % self.p for a, b in zip(v, row)]
        return v

    def add(self, vec: Sequence[int]) -> bool:
        """Insert vec; True iff it enlarged the span."""
        v = self._reduce(vec)
        lead = next((j for j in range(self.width) if v[j]), None)
        if lead is None:
            return False
        inv = pow(v[lead], self.p - 2, self.p)
        self.pivot_rows[lead] = [(x * inv) % self.p for x in v]
        return True


def jordan_basis(N: ExactMatrix) -> ExactMatrix:
    """Invertible g with g^-1 N g = canonical_nilpotent(jordan_type(N)).

    Chains are grown from the top height down: at height j, new chain tops
    complete ker N^{j-1} plus the images of the longer chains to a basis of
    ker N^j.  The conjugation identity is re-checked before returning."""
    typ = jordan_type(N)
    n = N.rows
    field = N.field
    if n == 0:
        return identity(0, field)
    depth = typ.parts[0]
    kernels = []  # kernels[j] spans ker N^{j+1}
    P = N
    for _ in range(depth):
        kernels.append(kernel_basis(P))
        P = mul(P, N)
    chains: List[List[tuple]] = []  # chain[i] = N^i applied to the top
    for j in range(depth, 0, -1):
        span = _EchelonTracker(n, field.p)
        if j >= 2:
            lower = kernels[j - 2]
            for c in range(lower.cols):
                span.add(lower.column(c))
        for chain in chains:
            span.add(chain[len(chain) - j])
        level = kernels[j - 1]
        for c in range(level.cols):
            vec = level.column(c)
            if span.add(vec):
                chain = [vec]
                for _ in range(j - 1):
                    chain.append(_apply(N, chain[-1]))
                chains.append(chain)
    columns: List[tuple] = []
    for chain in chains:  # built longest first
        columns.extend(reversed(chain))
    out = [0] * (n * n)
    for j, col in enumerate(columns):
        for i in range(n):
            out[i * n + j] = col[i]
    g = ExactMatrix(n, n, out, field)
    assert mul(mul(inverse(g), N), g) == canonical_nilpotent(typ, field)
    return g


def _apply(M: ExactMatrix, vec: Sequence[int]) -> tuple:
    p = M.field.p
    return tuple(
        sum(M.entries[i * M.cols + j] * vec[j] for j in range(M.cols)) % p
        for i in range(M.rows)
    )


def conjugator(N1: ExactMatrix, N2: ExactMatrix) -> ExactMatrix:
    """Invertible g with g N2 g^-1 = N1, for nilpotents of equal Jordan type."""
    _require_same_field(N1, N2)
    t1 = jordan_type(N1)
    t2 = jordan_type(N2)
    if t1 != t2:
        raise ValueError(f"jordan types differ: {t1} vs {t2}")
    g = mul(jordan_basis(N1), inverse(jordan_basis(N2)))
    assert mul(mul(g, N2), inverse(g)) == N1
    return g


def all_subspaces(n: int, field: FieldSpec) -> List[ExactMatrix]:
    """Every subspace of F_p^n, as a matrix whose columns are an RREF basis.

    Exponential in n and p; intended for tiny exhaustive cross-checks."""
    p = field.p
    out = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free_slots = [
                (r, c)
                for r in range(k)
                for c in range(pivots[r] + 1, n)
                if c not in pivots
            ]
            for values in itertools.product(range(p), repeat=len(free_slots)):
                rows = [[0] * n for _ in range(k)]
                for r in range(k):
                    rows[r][pivots[r]] = 1
                for (r, c), v in zip(free_slots, values):
                    rows[r][c] = v
                cols = [0] * (n * k)
                for r in range(k):
                    for c in range(n):
                        cols[c * k + r] = rows[r][c]
                out.append(ExactMatrix(n, k, cols, field))
    return out
