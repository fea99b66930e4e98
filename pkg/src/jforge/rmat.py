"""R-matrices on labeled two-fold tensor bases, and the braid consistency check.

A TensorMat stores an n^2 x n^2 matrix together with the ordered list of
index pairs labeling its rows and columns.  Keeping the pair order explicit
matters because the 3x3 family is block diagonal only in a grouped order
(pairs touching index 1 first, then the 2x2 sector), not in plain Kronecker
order.  All structural operations (products, conjugation, the Yang-Baxter
residual) convert to Kronecker order internally, so two TensorMats compare
equal exactly when they are the same operator.

Constructors cover the two deformation families used throughout:

* two_param_deformed_r2 / four_param_deformed_r3: standard multiparameter
  deformations, diagonal except for a lower triangular coupling r - 1/r.
* jordanian_r2 / jordanian_r3: their triangular (unipotent) counterparts,
  reached from the deformed family by a singular change of basis (see
  contraction.py).
* twist_2x2 / twist_3x3 / twist_probe_3x3: the unipotent conjugation
  matrices driving that change of basis.
"""

from __future__ import annotations

import time

from . import linalg as L
from .errors import DimensionMismatch
from .field import RF_ONE, RF_ZERO, RatFunc
from .grammar import parse, serialize
from .report import CheckReport

KRON_ORDER_2 = ((1, 1), (1, 2), (2, 1), (2, 2))

# Pairs touching index 1 first, then the 2x2 sector: the order in which the
# 3x3 family is visibly block diagonal (1 + 2 + 2 + 4).
BLOCK_ORDER_3 = (
    (1, 1), (1, 2), (1, 3), (2, 1), (3, 1),
    (2, 2), (2, 3), (3, 2), (3, 3),
)


def kron_order(dim: int) -> tuple:
    return tuple((i, j) for i in range(1, dim + 1) for j in range(1, dim + 1))


class TensorMat:
    """Square matrix on an ordered basis of index pairs."""

    def __init__(self, dim: int, basis: tuple, rows: list):
        basis = tuple(tuple(p) for p in basis)
        if len(basis) != dim * dim or set(basis) != set(kron_order(dim)):
            raise DimensionMismatch("basis must enumerate all index pairs")
        if L.mat_shape(rows) != (dim * dim, dim * dim):
            raise DimensionMismatch("entry grid does not match the basis size")
        self.dim = dim
        self.basis = basis
        self.rows = rows
        self._index = {p: i for i, p in enumerate(basis)}

    # -- access ------------------------------------------------------------
    def entry(self, row_pair, col_pair) -> RatFunc:
        return self.rows[self._index[tuple(row_pair)]][self._index[tuple(col_pair)]]

    def params(self) -> set:
        out = set()
        for row in self.rows:
            for x in row:
                out |= x.variables()
        return out

    # -- reshaping -----------------------------------------------------------
    def in_kron_order(self) -> list:
        """Dense entries with both indices in Kronecker (row-major) order."""
        order = kron_order(self.dim)
        pos = [self._index[p] for p in order]
        return [[self.rows[i][j] for j in pos] for i in pos]

    @classmethod
    def from_kron_order(cls, dim: int, dense: list, basis: tuple) -> "TensorMat":
        order = kron_order(dim)
        where = {p: i for i, p in enumerate(order)}
        pos = [where[tuple(p)] for p in basis]
        rows = [[dense[i][j] for j in pos] for i in pos]
        return cls(dim, basis, rows)

    def reorder(self, basis: tuple) -> "TensorMat":
        return TensorMat.from_kron_order(self.dim, self.in_kron_order(), basis)

    # -- maps ----------------------------------------------------------------
    def map_entries(self, fn) -> "TensorMat":
        return TensorMat(self.dim, self.basis, L.mat_map(self.rows, fn))

    def substitute(self, bindings: dict) -> "TensorMat":
        return self.map_entries(lambda x: x.substitute(bindings))

    def evaluate(self, values: dict) -> list:
        """Dense Fraction matrix in Kronecker order."""
        return [[x.evaluate(values) for x in row] for row in self.in_kron_order()]

    # -- structure -------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, TensorMat):
            return NotImplemented
        return self.dim == other.dim and L.mat_eq(
            self.in_kron_order(), other.in_kron_order()
        )

    def __repr__(self):
        return f"TensorMat(dim={self.dim}, basis={self.basis})"

    # -- serialization -----------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "basis": [list(p) for p in self.basis],
            "entries": [[serialize(x) for x in row] for row in self.rows],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TensorMat":
        rows = [[parse(x) for x in row] for row in data["entries"]]
        return cls(data["dim"], tuple(tuple(p) for p in data["basis"]), rows)


def _zeros(n: int) -> list:
    return [[RF_ZERO] * n for _ in range(n)]


def two_param_deformed_r2() -> TensorMat:
    """4x4 deformed matrix in parameters r, s (Kronecker order).

    Diagonal (r, s, 1/s, r) with the coupling r - 1/r below the diagonal at
    row (2,1), column (1,2).
    """
    r, s = RatFunc.var("r"), RatFunc.var("s")
    rows = _zeros(4)
    order = KRON_ORDER_2
    idx = {p: i for i, p in enumerate(order)}
    diag = {(1, 1): r, (1, 2): s, (2, 1): s ** -1, (2, 2): r}
    for p, v in diag.items():
        rows[idx[p]][idx[p]] = v
    rows[idx[(2, 1)]][idx[(1, 2)]] = r - r ** -1
    return TensorMat(2, order, rows)


def four_param_deformed_r3() -> TensorMat:
    """9x9 deformed matrix in parameters r, s, p, q (grouped block order).

    The grouped order shows the shape: a 1x1 block r on (1,1); diagonal
    blocks diag(1/p, 1/q) and diag(p, q) on the pairs touching index 1, each
    carrying the coupling r - 1/r from column (1,j) to row (j,1); and the
    two-parameter 4x4 family on the 2x2 sector.
    """
    r, s = RatFunc.var("r"), RatFunc.var("s")
    p, q = RatFunc.var("p"), RatFunc.var("q")
    lam = r - r ** -1
    order = BLOCK_ORDER_3
    idx = {pair: i for i, pair in enumerate(order)}
    rows = _zeros(9)
    diag = {
        (1, 1): r,
        (1, 2): p ** -1, (1, 3): q ** -1,
        (2, 1): p, (3, 1): q,
        (2, 2): r, (2, 3): s, (3, 2): s ** -1, (3, 3): r,
    }
    for pair, v in diag.items():
        rows[idx[pair]][idx[pair]] = v
    for low, high in (((2, 1), (1, 2)), ((3, 1), (1, 3)), ((3, 2), (2, 3))):
        rows[idx[low]][idx[high]] = lam
    return TensorMat(3, order, rows)


def jordanian_r2() -> TensorMat:
    """4x4 triangular matrix in parameters m, n (Kronecker order)."""
    m, n = RatFunc.var("m"), RatFunc.var("n")
    one = RF_ONE
    grid = [
        [one, RF_ZERO, RF_ZERO, RF_ZERO],
        [m, one, RF_ZERO, RF_ZERO],
        [-m, RF_ZERO, one, RF_ZERO],
        [m * n, n, -n, one],
    ]
    return TensorMat(2, KRON_ORDER_2, grid)


def jordanian_r3() -> TensorMat:
    """9x9 triangular matrix in parameters m, n, k, p (grouped block order).

    Block diagonal: 1 on (1,1); a 2x2 unipotent-scaled block and its inverse
    on the pairs touching index 1; the triangular 4x4 family on the 2x2
    sector.
    """
    m, n = RatFunc.var("m"), RatFunc.var("n")
    k, p = RatFunc.var("k"), RatFunc.var("p")
    order = BLOCK_ORDER_3
    idx = {pair: i for i, pair in enumerate(order)}
    rows = _zeros(9)
    rows[idx[(1, 1)]][idx[(1, 1)]] = RF_ONE
    # inverse block on ((1,2),(1,3))
    rows[idx[(1, 2)]][idx[(1, 2)]] = p ** -1
    rows[idx[(1, 3)]][idx[(1, 2)]] = -k * p ** -2
    rows[idx[(1, 3)]][idx[(1, 3)]] = p ** -1
    # direct block on ((2,1),(3,1))
    rows[idx[(2, 1)]][idx[(2, 1)]] = p
    rows[idx[(3, 1)]][idx[(2, 1)]] = k
    rows[idx[(3, 1)]][idx[(3, 1)]] = p
    sector = jordanian_r2()
    sub = ((2, 2), (2, 3), (3, 2), (3, 3))
    for a, pa in enumerate(sub):
        for b, pb in enumerate(sub):
            v = sector.rows[a][b]
            if not v.is_zero():
                rows[idx[pa]][idx[pb]] = v
    return TensorMat(3, order, rows)


def twist_2x2() -> list:
    """Unipotent 2x2 change of basis: identity plus eta below the diagonal."""
    eta = RatFunc.var("eta")
    return [[RF_ONE, RF_ZERO], [eta, RF_ONE]]


def twist_3x3() -> list:
    """The 2x2 twist embedded in the lower 2x2 block of a 3x3 identity."""
    eta = RatFunc.var("eta")
    g = L.mat_identity(3)
    g[2][1] = eta
    return g


def twist_probe_3x3() -> list:
    """Deliberately misplaced twist, eta at row 3 column 1; used to show the
    singular limit fails when the twist couples the wrong indices."""
    eta = RatFunc.var("eta")
    g = L.mat_identity(3)
    g[2][0] = eta
    return g


def conjugate(rmat: TensorMat, g: list) -> TensorMat:
    """(g^-1 (x) g^-1) R (g (x) g), preserving the basis order of R."""
    n, m = L.mat_shape(g)
    if n != m or n != rmat.dim:
        raise DimensionMismatch("twist size does not match the matrix")
    gg = L.kron(g, g)
    gi = L.mat_inverse(g)
    gigi = L.kron(gi, gi)
    dense = L.mat_mul(gigi, L.mat_mul(rmat.in_kron_order(), gg))
    return TensorMat.from_kron_order(rmat.dim, dense, rmat.basis)


def _embed(dense: list, dim: int, slots: tuple) -> list:
    """Lift an n^2 x n^2 matrix to n^3 x n^3, acting on two tensor slots."""
    n3 = dim ** 3
    out = [[RF_ZERO] * n3 for _ in range(n3)]
    strides = (dim * dim, dim, 1)
    passive = ({0, 1, 2} - set(slots)).pop()
    for ij in range(dim * dim):
        i, j = divmod(ij, dim)
        for kl in range(dim * dim):
            v = dense[ij][kl]
            if v.is_zero():
                continue
            k, l = divmod(kl, dim)
            for t in range(dim):
                ridx = i * strides[slots[0]] + j * strides[slots[1]] + t * strides[passive]
                cidx = k * strides[slots[0]] + l * strides[slots[1]] + t * strides[passive]
                out[ridx][cidx] = v
    return out


def qybe_residual(rmat: TensorMat) -> list:
    """R12 R13 R23 - R23 R13 R12 on the triple tensor space."""
    dense = rmat.in_kron_order()
    r12 = _embed(dense, rmat.dim, (0, 1))
    r13 = _embed(dense, rmat.dim, (0, 2))
    r23 = _embed(dense, rmat.dim, (1, 2))
    left = L.mat_mul(L.mat_mul(r12, r13), r23)
    right = L.mat_mul(L.mat_mul(r23, r13), r12)
    return L.mat_sub(left, right)


def qybe_holds(rmat: TensorMat) -> bool:
    return L.mat_is_zero(qybe_residual(rmat))


def qybe_check(rmat: TensorMat, name: str = "") -> CheckReport:
    """Full symbolic braid-consistency check with per-entry diagnostics."""
    label = f"qybe:{name}" if name else "qybe"
    report = CheckReport("qybe")
    start = time.perf_counter()
    residual = qybe_residual(rmat)
    bad = []
    for i, row in enumerate(residual):
        for j, v in enumerate(row):
            if not v.is_zero():
                bad.append({"row": i, "col": j, "value": serialize(v)})
                if len(bad) >= 5:
                    break
        if len(bad) >= 5:
            break
    ms = (time.perf_counter() - start) * 1000.0
    report.add(label, not bad, ms=ms, dim=rmat.dim, nonzero_entries=bad)
    return report


def first_nonzero(dense: list) -> tuple:
    """(row, col, value) of the first structurally nonzero entry, or None."""
    for i, row in enumerate(dense):
        for j, v in enumerate(row):
            if not v.is_zero():
                return i, j, v
    return None
