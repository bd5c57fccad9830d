"""Exact integer linear algebra: Smith normal form, lattice kernels, echelon lattices."""

from typing import Dict, List, Mapping, Optional, Sequence, Tuple

Matrix = List[List[int]]
SparseVec = Dict[int, int]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    """Product of two dense integer matrices."""
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append(acc)
    return out


def egcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def sparse_addmul(target: SparseVec, source: Mapping[int, int], c: int) -> None:
    """target += c * source, dropping zeros."""
    if not c:
        return
    for k, v in source.items():
        x = target.get(k, 0) + c * v
        if x:
            target[k] = x
        else:
            target.pop(k, None)


class _Smith:
    """Smith reduction of a dense matrix with optional transform tracking."""

    def __init__(self, m: Sequence[Sequence[int]], ncols: Optional[int] = None,
                 track_u: bool = True, track_v: bool = True):
        self.a = [list(row) for row in m]
        self.rows = len(self.a)
        self.cols = ncols if ncols is not None else (len(self.a[0]) if self.a else 0)
        self.u = identity_matrix(self.rows) if track_u else None
        self.v = identity_matrix(self.cols) if track_v else None
        self.v_inv = identity_matrix(self.cols) if track_v else None
        self._run()

    # elementary operations -------------------------------------------------

    def _row_addmul(self, i: int, t: int, c: int) -> None:
        """row i += c * row t"""
        ai, at = self.a[i], self.a[t]
        for j in range(self.cols):
            if at[j]:
                ai[j] += c * at[j]
        if self.u is not None:
            ui, ut = self.u[i], self.u[t]
            for j in range(self.rows):
                if ut[j]:
                    ui[j] += c * ut[j]

    def _col_addmul(self, j: int, t: int, c: int) -> None:
        """col j += c * col t"""
        for row in self.a:
            if row[t]:
                row[j] += c * row[t]
        if self.v is not None:
            for row in self.v:
                if row[t]:
                    row[j] += c * row[t]
            vj, vt = self.v_inv[j], self.v_inv[t]
            for k in range(self.cols):
                if vj[k]:
                    vt[k] -= c * vj[k]

    def _swap_rows(self, i: int, t: int) -> None:
        if i == t:
            return
        self.a[i], self.a[t] = self.a[t], self.a[i]
        if self.u is not None:
            self.u[i], self.u[t] = self.u[t], self.u[i]

    def _swap_cols(self, j: int, t: int) -> None:
        if j == t:
            return
        for row in self.a:
            row[j], row[t] = row[t], row[j]
        if self.v is not None:
            for row in self.v:
                row[j], row[t] = row[t], row[j]
            self.v_inv[j], self.v_inv[t] = self.v_inv[t], self.v_inv[j]

    def _negate_row(self, t: int) -> None:
        self.a[t] = [-x for x in self.a[t]]
        if self.u is not None:
            self.u[t] = [-x for x in self.u[t]]

    # reduction -------------------------------------------------------------

    def _smallest(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        best_abs = 0
        for i in range(t, self.rows):
            row = self.a[i]
            for j in range(t, self.cols):
                x = row[j]
                if x and (best is None or abs(x) < best_abs):
                    best, best_abs = (i, j), abs(x)
                    if best_abs == 1:
                        return best
        return best

    def _run(self) -> None:
        a = self.a
        for t in range(min(self.rows, self.cols)):
            pos = self._smallest(t)
            if pos is None:
                break
            self._swap_rows(pos[0], t)
            self._swap_cols(pos[1], t)
            while True:
                p = a[t][t]
                for i in range(t + 1, self.rows):
                    if a[i][t]:
                        self._row_addmul(i, t, -(a[i][t] // p))
                for j in range(t + 1, self.cols):
                    if a[t][j]:
                        self._col_addmul(j, t, -(a[t][j] // p))
                # smaller remainder left behind: move it to the pivot
                best = None
                for i in range(t + 1, self.rows):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                        best = (i, None, a[i][t])
                for j in range(t + 1, self.cols):
                    if a[t][j] and (best is None or abs(a[t][j]) < abs(best[2])):
                        best = (None, j, a[t][j])
                if best is not None:
                    if best[0] is not None:
                        self._swap_rows(best[0], t)
                    else:
                        self._swap_cols(best[1], t)
                    continue
                bad = None
                for i in range(t + 1, self.rows):
                    for j in range(t + 1, self.cols):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                self._row_addmul(t, bad, 1)
            if a[t][t] < 0:
                self._negate_row(t)

    def diagonal(self) -> List[int]:
        return [self.a[i][i] for i in range(min(self.rows, self.cols))]


def snf(m: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns (D, U, V) with D = U*M*V."""
    if not m:
        return [], [], identity_matrix(0)
    red = _Smith(m)
    return red.a, red.u, red.v


class EchelonLattice:
    """Integer row-echelon basis of a sublattice of Z^dim built by insertion."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: Dict[int, SparseVec] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Mapping[int, int]) -> SparseVec:
        v = {k: x for k, x in vec.items() if x}
        last = -1
        while True:
            later = [k for k in v if k > last]
            if not later:
                return v
            j = min(later)
            row = self._rows.get(j)
            if row is not None:
                q = v[j] // row[j]
                if q:
                    sparse_addmul(v, row, -q)
            last = j

    def insert(self, vec: Mapping[int, int]) -> bool:
        """Add a vector; returns True if the lattice grew."""
        v = self.reduce(vec)
        grew = False
        while v:
            j = min(v)
            row = self._rows.get(j)
            if row is None:
                if v[j] < 0:
                    v = {k: -x for k, x in v.items()}
                self._rows[j] = v
                return True
            g, s, t = egcd(row[j], v[j])
            new_row: SparseVec = {}
            sparse_addmul(new_row, row, s)
            sparse_addmul(new_row, v, t)
            other: SparseVec = {}
            sparse_addmul(other, v, row[j] // g)
            sparse_addmul(other, row, -(v[j] // g))
            self._rows[j] = new_row
            grew = True
            v = self.reduce(other)
        return grew

    def contains(self, vec: Mapping[int, int]) -> bool:
        return not self.reduce(vec)

    def basis(self) -> List[SparseVec]:
        return [dict(self._rows[k]) for k in sorted(self._rows)]


class LatticeKernel:
    """Kernel lattice of x -> sum_j x_j * col_j in the group Z^r / diag(moduli).

    A modulus of 0 means the coordinate is exact. Columns are dense integer
    lists of length r. Keeps the unimodular transform so that any kernel
    vector can be written in the returned basis.
    """

    def __init__(self, columns: Sequence[Sequence[int]], moduli: Sequence[int]):
        self.ncols = len(columns)
        self.moduli = list(moduli)
        r = len(self.moduli)
        self._columns = [list(c) for c in columns]
        images: List[List[int]] = [list(c) for c in columns]
        combos: List[SparseVec] = [{k: 1} for k in range(self.ncols)]
        self._virtual: Dict[int, int] = {}
        for row, d in enumerate(self.moduli):
            if d:
                idx = len(images)
                self._virtual[row] = idx
                vec = [0] * r
                vec[row] = d
                images.append(vec)
                combos.append({idx: 1})
        inverse: List[SparseVec] = [{k: 1} for k in range(len(images))]
        live = list(range(len(images)))
        pivots: List[int] = []
        for row in range(r):
            active = [k for k in live if images[k][row]]
            while len(active) > 1:
                p = min(active, key=lambda k: abs(images[k][row]))
                pv = images[p][row]
                for k in active:
                    if k == p:
                        continue
                    q = images[k][row] // pv
                    if q:
                        ik, ip = images[k], images[p]
                        for t in range(r):
                            if ip[t]:
                                ik[t] -= q * ip[t]
                        sparse_addmul(combos[k], combos[p], -q)
                        sparse_addmul(inverse[p], inverse[k], q)
                active = [k for k in active if images[k][row]]
            if active:
                live.remove(active[0])
                pivots.append(active[0])
        self._kernel_ids = live
        self._pivot_ids = pivots
        self._inverse = inverse
        self.basis: List[List[int]] = []
        for k in live:
            vec = [0] * self.ncols
            for idx, c in combos[k].items():
                if idx < self.ncols:
                    vec[idx] = c
            self.basis.append(vec)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def solve(self, x: Sequence[int]) -> List[int]:
        """Coordinates of a kernel vector x in the kernel basis."""
        full: SparseVec = {j: v for j, v in enumerate(x) if v}
        for row, idx in self._virtual.items():
            s = sum(x[j] * self._columns[j][row] for j in range(self.ncols))
            d = self.moduli[row]
            if s % d:
                raise ValueError("vector is not in the kernel")
            if s:
                full[idx] = -s // d
        for row, d in enumerate(self.moduli):
            if not d and sum(x[j] * self._columns[j][row] for j in range(self.ncols)):
                raise ValueError("vector is not in the kernel")

        def coord(k: int) -> int:
            return sum(c * full.get(i, 0) for i, c in self._inverse[k].items())

        for k in self._pivot_ids:
            if coord(k):
                raise ValueError("vector is not in the kernel")
        return [coord(k) for k in self._kernel_ids]


def solve_integer(columns: Sequence[Sequence[int]], moduli: Sequence[int],
                  target: Sequence[int]) -> Optional[List[int]]:
    """Some integer x with sum_i x_i * col_i = target in Z^r / diag(moduli), or None."""
    n = len(columns)
    lat = LatticeKernel([list(c) for c in columns] + [[-t for t in target]], moduli)
    combo = [0] * (n + 1)
    acc = 0
    for vec in lat.basis:
        last = vec[n]
        if not last:
            continue
        g, s, t = egcd(acc, last)
        combo = [s * c + t * v for c, v in zip(combo, vec)]
        acc = g
        if acc == 1:
            return combo[:n]
    return None
