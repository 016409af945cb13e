"""Exact sparse linear algebra over the rationals.

Vectors are sparse ``{column: Fraction}`` dicts with no stored zeros.
Everything is computed by pivoted exact Gaussian elimination over
``fractions.Fraction``; the reduced echelon form of a row space is unique
for a fixed column order, so every result here is deterministic and
independent of row insertion order.

A dense mod-p elimination (numpy) and a dense textbook elimination over
Fraction are provided as independent cross-checks for kernel dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

SparseVec = Dict[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def vec_is_zero(v: SparseVec) -> bool:
    return not v


def vec_scaled(v: SparseVec, c: Fraction) -> SparseVec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_add_scaled(target: SparseVec, src: SparseVec, c: Fraction) -> None:
    """In-place target += c * src, dropping entries that cancel."""
    if not c:
        return
    for k, x in src.items():
        nv = target.get(k, _ZERO) + c * x
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


@dataclass
class SparseMatrix:
    """Row-sparse rational matrix with a fixed column count."""

    col_count: int
    rows: List[SparseVec] = field(default_factory=list)

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def add_row(self, row: SparseVec) -> None:
        """Append a row, stripping explicit zeros (all-zero rows are kept)."""
        clean = {c: v for c, v in row.items() if v}
        if clean and (min(clean) < 0 or max(clean) >= self.col_count):
            raise ValueError("row entry outside column range")
        self.rows.append(clean)

    def multiply(self, v: SparseVec) -> List[Fraction]:
        out = []
        for row in self.rows:
            acc = _ZERO
            for c, x in row.items():
                xv = v.get(c)
                if xv is not None:
                    acc += x * xv
            out.append(acc)
        return out


class _Rref:
    """Incrementally maintained reduced row echelon form of a row space."""

    def __init__(self) -> None:
        self.pivots: Dict[int, SparseVec] = {}  # leading column -> normalized row
        self._users: Dict[int, set] = {}  # column -> leads of pivot rows touching it

    def _register(self, lead: int, row: SparseVec) -> None:
        self.pivots[lead] = row
        for c in row:
            self._users.setdefault(c, set()).add(lead)

    def _unregister(self, lead: int, row: SparseVec) -> None:
        for c in row:
            users = self._users.get(c)
            if users is not None:
                users.discard(lead)

    def insert(self, row: SparseVec) -> Optional[int]:
        """Reduce a row into the form; returns the new pivot column or None."""
        work = self.reduce(row)
        if not work:
            return None
        c = min(work)
        inv = _ONE / work[c]
        if inv != 1:
            work = {k: inv * v for k, v in work.items()}
        # back-substitute into every pivot row containing column c
        for lead in list(self._users.get(c, ())):
            old = self.pivots[lead]
            self._unregister(lead, old)
            vec_add_scaled(old, work, -old[c])
            self._register(lead, old)
        self._register(c, work)
        return c

    def reduce(self, v: SparseVec) -> SparseVec:
        """Residual of v modulo the current row space.

        Every pivot-column entry must be cleared, not just leading ones:
        a row can hit pivot columns beyond its first free column.  Each
        subtraction only introduces entries at free columns, so one pass
        over the hits (rechecked once) settles the residual.
        """
        work = dict(v)
        while True:
            hits = sorted(c for c in work if c in self.pivots)
            if not hits:
                return work
            for c in hits:
                cur = work.get(c)
                if cur:
                    vec_add_scaled(work, self.pivots[c], -cur)

    def sorted_rows(self) -> List[SparseVec]:
        return [dict(self.pivots[c]) for c in sorted(self.pivots)]


@dataclass(frozen=True)
class SpanBasis:
    """Reduced-echelon basis of a subspace of QQ^col_count.

    Rows are sorted by leading column; each leading entry is 1 and is the
    only nonzero entry of the span basis in its column.  This form is unique
    for the subspace, so two equal subspaces produce identical objects.
    """

    col_count: int
    vectors: Tuple[SparseVec, ...]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def reduce(self, v: SparseVec) -> SparseVec:
        work = dict(v)
        by_lead = {min(row): row for row in self.vectors}
        while True:
            hits = sorted(c for c in work if c in by_lead)
            if not hits:
                return work
            for c in hits:
                cur = work.get(c)
                if cur:
                    vec_add_scaled(work, by_lead[c], -cur)

    def contains(self, v: SparseVec) -> bool:
        return not self.reduce(v)

    def contains_all(self, vs: Iterable[SparseVec]) -> bool:
        return all(self.contains(v) for v in vs)


def span_basis(vectors: Iterable[SparseVec], col_count: int) -> SpanBasis:
    """Canonical reduced-echelon basis of the span of the given vectors."""
    rr = _Rref()
    for v in vectors:
        rr.insert(v)
    return SpanBasis(col_count=col_count, vectors=tuple(rr.sorted_rows()))


def rank(m: SparseMatrix) -> int:
    rr = _Rref()
    for row in m.rows:
        rr.insert(row)
    return len(rr.pivots)


def kernel_basis(m: SparseMatrix) -> SpanBasis:
    """Reduced-echelon basis of {v : m v = 0}.

    The kernel is built from the free columns of the RREF of m and then
    re-reduced to its own canonical echelon form, so re-running the
    reduction on the output changes nothing.
    """
    rr = _Rref()
    for row in m.rows:
        rr.insert(row)
    pivots = rr.pivots
    kernel_vecs = []
    for f in range(m.col_count):
        if f in pivots:
            continue
        v: SparseVec = {f: _ONE}
        for lead, prow in pivots.items():
            coeff = prow.get(f)
            if coeff is not None:
                v[lead] = -coeff
        kernel_vecs.append(v)
    return span_basis(kernel_vecs, m.col_count)


def member_of_span(v: SparseVec, basis: SpanBasis) -> bool:
    return basis.contains(v)


def solve_linear(m: SparseMatrix, rhs: Sequence[Fraction]) -> Optional[SparseVec]:
    """One exact solution of m x = rhs with free variables set to 0.

    Returns None when the system is inconsistent.  Deterministic: the
    particular solution depends only on the row space and column order.
    """
    if len(rhs) != m.row_count:
        raise ValueError("rhs length must match row count")
    aug = m.col_count  # extra column carrying -rhs
    rr = _Rref()
    for row, b in zip(m.rows, rhs):
        work = dict(row)
        if b:
            work[aug] = -b
        rr.insert(work)
    if aug in rr.pivots:
        return None
    x: SparseVec = {}
    for lead, prow in rr.pivots.items():
        b = prow.get(aug)
        if b is not None:
            x[lead] = -b
    return x


# -- independent dense cross-checks ----------------------------------------

_DEFAULT_PRIMES = (1_000_003, 1_000_033, 1_000_037)


def _column_components(m: SparseMatrix) -> Tuple[Dict[int, List[int]], Dict[int, List[SparseVec]]]:
    """Partition columns into connected components under shared rows.

    Two columns are connected when some row touches both.  Returns
    (root -> sorted column list, root -> rows living in that component);
    empty rows belong to no component.
    """
    parent = list(range(m.col_count))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for row in m.rows:
        it = iter(row)
        first = next(it, None)
        if first is None:
            continue
        ra = find(first)
        for c in it:
            rb = find(c)
            if rb != ra:
                parent[rb] = ra
    cols_by_root: Dict[int, List[int]] = {}
    for c in range(m.col_count):
        cols_by_root.setdefault(find(c), []).append(c)
    rows_by_root: Dict[int, List[SparseVec]] = {}
    for row in m.rows:
        if row:
            rows_by_root.setdefault(find(next(iter(row))), []).append(row)
    return cols_by_root, rows_by_root


def _exact_matmul_modp(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p without overflow.

    Arguments hold residues in [0, p).  Products are < p^2 < 2^40 for the
    primes used here, so float64 accumulation over inner-dimension chunks
    of 4096 stays below 2^53 and is exact.
    """
    inner = a.shape[1]
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    af = a.astype(np.float64)
    bf = b.astype(np.float64)
    for lo in range(0, inner, 4096):
        hi = min(lo + 4096, inner)
        out = (out + (af[:, lo:hi] @ bf[lo:hi]).astype(np.int64)) % p
    return out


def _component_rank_modp(rows: List[SparseVec], cols: List[int], p: int, block: int = 1024) -> int:
    """Rank over GF(p) of one column-connected block, by dense elimination.

    Maintains a reduced echelon matrix and folds rows in blockwise; each
    block is first cleared against the accumulated pivots with one matrix
    multiply, then swept by plain Gauss-Jordan for fresh pivots.
    """
    colpos = {c: j for j, c in enumerate(cols)}
    ncols = len(cols)
    echelon = np.zeros((0, ncols), dtype=np.int64)
    leads: List[int] = []
    for start in range(0, len(rows), block):
        chunk = rows[start:start + block]
        b = np.zeros((len(chunk), ncols), dtype=np.int64)
        for i, row in enumerate(chunk):
            for c, v in row.items():
                if v.denominator % p == 0:
                    raise ArithmeticError(f"prime {p} divides a denominator")
                b[i, colpos[c]] = (v.numerator * pow(v.denominator, -1, p)) % p
        if leads:
            b = (b - _exact_matmul_modp(b[:, leads], echelon, p)) % p
        pivot_pairs = []
        used = np.zeros(len(chunk), dtype=bool)
        for col in range(ncols):
            nz = np.nonzero((b[:, col] != 0) & ~used)[0]
            if nz.size == 0:
                continue
            i = int(nz[0])
            used[i] = True
            b[i] = (b[i] * pow(int(b[i, col]), -1, p)) % p
            hit = np.nonzero(b[:, col])[0]
            hit = hit[hit != i]
            if hit.size:
                b[hit] = (b[hit] - np.outer(b[hit, col], b[i])) % p
            pivot_pairs.append((col, i))
        if pivot_pairs:
            # rows are fully swept in place, so the final row contents are RREF
            new_leads = [c for c, _ in pivot_pairs]
            new_mat = b[[i for _, i in pivot_pairs]]
            if leads:
                # keep the accumulated matrix fully reduced
                echelon = (echelon - _exact_matmul_modp(echelon[:, new_leads], new_mat, p)) % p
            echelon = np.vstack([echelon, new_mat])
            leads.extend(new_leads)
            order = np.argsort(leads, kind="stable")
            echelon = echelon[order]
            leads = [leads[i] for i in order]
    return len(leads)


def kernel_dimension_dense_modp(m: SparseMatrix, primes: Sequence[int] = _DEFAULT_PRIMES) -> int:
    """Kernel dimension via dense Gauss-Jordan elimination over GF(p).

    Columns are partitioned into connected components first (rank is
    additive across them), then each component is eliminated densely.
    The elimination runs independently for each prime and all answers must
    agree; a disagreement (or a prime dividing one of the denominators)
    raises.  Rank over GF(p) never exceeds the rational rank, so agreement
    with an exact kernel basis whose vectors were verified against the
    matrix certifies the rational kernel dimension outright.
    """
    cols_by_root, rows_by_root = _column_components(m)
    dims = []
    for p in primes:
        rank_p = 0
        for root, cols in cols_by_root.items():
            rows = rows_by_root.get(root)
            if rows:
                rank_p += _component_rank_modp(rows, cols, p)
        dims.append(m.col_count - rank_p)
    if len(set(dims)) != 1:
        raise ArithmeticError(f"mod-p eliminations disagree: {dims}")
    return dims[0]


def kernel_dimension_dense_fraction(m: SparseMatrix) -> int:
    """Kernel dimension via textbook dense elimination over Fraction.

    No sparsity tricks; intended for small matrices as a fully independent
    rational-arithmetic oracle.
    """
    rows = [[_ZERO] * m.col_count for _ in range(m.row_count)]
    for i, row in enumerate(m.rows):
        for c, v in row.items():
            rows[i][c] = v
    rank_q = 0
    for col in range(m.col_count):
        pivot = None
        for i in range(rank_q, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank_q], rows[pivot] = rows[pivot], rows[rank_q]
        inv = _ONE / rows[rank_q][col]
        if inv != 1:
            rows[rank_q] = [x * inv for x in rows[rank_q]]
        prow = rows[rank_q]
        for i in range(len(rows)):
            if i != rank_q and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        rank_q += 1
        if rank_q == len(rows):
            break
    return m.col_count - rank_q
