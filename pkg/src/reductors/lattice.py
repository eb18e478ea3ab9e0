"""O_v-submodules of coordinatized K-spaces.

Two variants: finitely generated lattices (`FGLattice`, stored by
generator vectors and triangularized into an O_v-basis by valuation
pivoting) and direct sums of cut ideals (`IdealSumLattice`), the only
shape through which the ramified phenomenon is reachable.

Coordinates are always relative to an explicitly labeled K-basis of the
ambient space; no implicit basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, DomainError, NotALatticeError, RankError
from .ordered_group import GroupElement


# ---------------------------------------------------------------------------
# generic exact linear algebra over K


def reduced_row_echelon(rows, field):
    """Reduced row echelon form over K.  Returns (rows, pivot_columns)."""
    work = [list(r) for r in rows]
    pivots = []
    rank = 0
    width = len(work[0]) if work else 0
    for col in range(width):
        pivot_row = None
        for i in range(rank, len(work)):
            if work[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = work[rank][col]
        work[rank] = [x / inv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                m = work[i][col]
                work[i] = [a - m * b for a, b in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
    return work[:rank], pivots


def kernel_of_columns(columns, field):
    """Basis of {c : sum_i c_i * columns[i] = 0}, as coefficient vectors."""
    m = len(columns)
    if m == 0:
        return []
    height = len(columns[0])
    rows = [[columns[j][i] for j in range(m)] for i in range(height)]
    echelon, pivots = reduced_row_echelon(rows, field)
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for f in free:
        vec = [field.zero] * m
        vec[f] = field.one
        for r, p in zip(echelon, pivots):
            vec[p] = -r[f]
        basis.append(vec)
    return basis


def integral_point_basis(rows, field):
    """O_v-basis of span_K(rows) ∩ O_v^width.

    `rows` must be K-linearly independent.  Divisor-pivot elimination:
    the globally minimal-valuation entry is the pivot, so every
    elimination multiplier lies in O_v on both sides; the inverse of the
    accumulated column transform is tracked directly, and its first
    len(rows) rows span the integral points.
    """
    s = len(rows)
    if s == 0:
        return []
    width = len(rows[0])
    B = [list(r) for r in rows]
    R = [[field.one if i == j else field.zero for j in range(width)] for i in range(width)]
    for k in range(s):
        best = None
        for i in range(k, s):
            for j in range(k, width):
                if not B[i][j]:
                    continue
                v = field.value(B[i][j])
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            raise RankError("rows are not K-linearly independent")
        _, bi, bj = best
        if bi != k:
            B[bi], B[k] = B[k], B[bi]
        if bj != k:
            for row in B:
                row[bj], row[k] = row[k], row[bj]
            R[bj], R[k] = R[k], R[bj]
        pivot = B[k][k]
        for i in range(k + 1, s):
            if B[i][k]:
                m = B[i][k] / pivot
                B[i] = [a - m * b for a, b in zip(B[i], B[k])]
        for j in range(k + 1, width):
            if B[k][j]:
                m = B[k][j] / pivot
                for row in B:
                    row[j] = row[j] - m * row[k]
                R[k] = [a + m * b for a, b in zip(R[k], R[j])]
    return [tuple(R[i]) for i in range(s)]


# ---------------------------------------------------------------------------
# cuts


@dataclass(frozen=True)
class Principal:
    """The fractional ideal {x : v(x) >= gamma} = t_gamma O_v."""

    gamma: GroupElement

    def contains(self, field, x) -> bool:
        return field.value(x) >= self.gamma

    def __str__(self):
        return f"principal{self.gamma}"


@dataclass(frozen=True)
class Limit:
    """For rank 2: {x : first coordinate of v(x) >= c}.

    Satisfies m_v * J = J, so it contributes nothing modulo m_v.
    """

    c: int

    def contains(self, field, x) -> bool:
        v = field.value(x)
        return v.is_infinite or v.coords[0] >= self.c

    def __str__(self):
        return f"limit({self.c})"


# ---------------------------------------------------------------------------
# finitely generated lattices


class FGLattice:
    """O_v-span of finitely many vectors in a labeled K-coordinate space."""

    def __init__(self, field, ambient_dim, generators, label="ambient"):
        self.field = field
        self.ambient_dim = int(ambient_dim)
        self.label = label
        gens = []
        for g in generators:
            g = tuple(g)
            if len(g) != self.ambient_dim:
                raise DimensionError(
                    f"generator of length {len(g)} in ambient dim {self.ambient_dim}"
                )
            gens.append(g)
        self.generators = tuple(gens)
        self._basis = None  # rows in pivot-chosen (solve) order
        self._pivots = None
        self._pivot_scales = None
        self._standard = None

    # -- triangular basis ------------------------------------------------------

    def _ensure_basis(self):
        if self._basis is not None:
            return
        field = self.field
        rows = [list(g) for g in self.generators if any(g)]
        basis, pivots, scales = [], [], []
        used = set()
        while rows:
            best = None
            for ri, row in enumerate(rows):
                for ci, entry in enumerate(row):
                    if ci in used or not entry:
                        continue
                    v = field.value(entry)
                    if best is None or v < best[0]:
                        best = (v, ri, ci)
            if best is None:
                break
            val, ri, ci = best
            row = rows.pop(ri)
            scale = field.uniformizer_for(val) / row[ci]
            row = [x * scale for x in row]
            pivot = row[ci]
            nxt = []
            for other in rows:
                if other[ci]:
                    m = other[ci] / pivot
                    other = [a - m * b for a, b in zip(other, row)]
                if any(other):
                    nxt.append(other)
            rows = nxt
            basis.append(tuple(row))
            pivots.append(ci)
            scales.append(pivot)
            used.add(ci)
        self._basis = basis
        self._pivots = pivots
        self._pivot_scales = scales
        one = field.one
        self._standard = len(basis) == self.ambient_dim and all(
            row[p] == one and sum(1 for x in row if x) == 1
            for row, p in zip(basis, pivots)
        )

    @property
    def rank(self) -> int:
        self._ensure_basis()
        return len(self._basis)

    def basis(self):
        """O_v-basis, sorted so pivot positions strictly increase."""
        self._ensure_basis()
        order = sorted(range(len(self._basis)), key=lambda i: self._pivots[i])
        return [self._basis[i] for i in order]

    def basis_pivots(self):
        self._ensure_basis()
        return sorted(self._pivots)

    # -- solving ----------------------------------------------------------------

    def solve(self, x):
        """Coefficients of x on the solve-order basis, or None if x is
        outside the K-span."""
        self._ensure_basis()
        x = list(x)
        if len(x) != self.ambient_dim:
            raise DimensionError("vector has the wrong length")
        if self._standard:
            return list(x)
        coeffs = []
        for row, p, scale in zip(self._basis, self._pivots, self._pivot_scales):
            c = x[p] / scale
            coeffs.append(c)
            if c:
                x = [a - c * b for a, b in zip(x, row)]
        if any(x):
            return None
        return coeffs

    def member(self, x) -> bool:
        coeffs = self.solve(x)
        if coeffs is None:
            return False
        return all(self.field.is_integral(c) for c in coeffs)

    def module_value(self, x) -> GroupElement:
        """min_i v(a_i) over the O_v-basis representation x = sum a_i x_i."""
        coeffs = self.solve(x)
        if coeffs is None:
            raise DomainError("vector lies outside the lattice's K-span")
        return min(
            (self.field.value(c) for c in coeffs),
            default=GroupElement.infinity(self.field.rank),
        )

    def combine(self, coeffs):
        """sum coeffs[i] * solve-order basis row i."""
        self._ensure_basis()
        out = [self.field.zero] * self.ambient_dim
        for c, row in zip(coeffs, self._basis):
            if c:
                out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)

    # -- derived data -------------------------------------------------------------

    def residue_dim(self) -> int:
        """dim over the residue field of M / m_v M (free => rank)."""
        return self.rank

    def is_unramified(self, ambient_dim_expected=None) -> bool:
        expected = self.ambient_dim if ambient_dim_expected is None else ambient_dim_expected
        if self.rank != expected:
            raise NotALatticeError(
                f"K-span has dimension {self.rank}, not {expected}"
            )
        return self.residue_dim() == expected

    def scaled(self, c) -> "FGLattice":
        return FGLattice(
            self.field,
            self.ambient_dim,
            [tuple(c * x for x in g) for g in self.generators],
            label=self.label,
        )

    def padded(self, new_dim: int) -> "FGLattice":
        if new_dim < self.ambient_dim:
            raise DimensionError("cannot pad downwards")
        zero = self.field.zero
        pad = (zero,) * (new_dim - self.ambient_dim)
        return FGLattice(
            self.field, new_dim, [g + pad for g in self.generators], label=self.label
        )

    def spans_same_module(self, other: "FGLattice") -> bool:
        """Two-way membership of the generating sets."""
        return all(other.member(g) for g in self.generators if any(g)) and all(
            self.member(g) for g in other.generators if any(g)
        )

    def __repr__(self):
        return f"FGLattice(dim={self.ambient_dim}, rank={self.rank}, basis={self.label!r})"


# ---------------------------------------------------------------------------
# ideal-sum lattices


class IdealSumLattice:
    """Direct sum of cut ideals along K-independent direction vectors."""

    def __init__(self, field, ambient_dim, summands, label="ambient"):
        self.field = field
        self.ambient_dim = int(ambient_dim)
        self.label = label
        self.summands = tuple((cut, tuple(vec)) for cut, vec in summands)
        for cut, vec in self.summands:
            if len(vec) != self.ambient_dim:
                raise DimensionError("direction vector of the wrong length")
            if isinstance(cut, Limit) and field.rank != 2:
                raise DimensionError("limit cuts need a rank-2 value group")
        dirs = [vec for _, vec in self.summands]
        _, pivots = reduced_row_echelon(dirs, field)
        if len(pivots) != len(dirs):
            raise NotALatticeError("direction vectors are K-linearly dependent")

    def _coordinates(self, x):
        dirs = [vec for _, vec in self.summands]
        cols = list(zip(*dirs)) if dirs else []
        rows = [list(vec) + [xi] for vec, xi in zip(cols, x)]
        echelon, pivots = reduced_row_echelon(rows, self.field)
        last = len(dirs)
        if last in pivots:
            return None  # x outside the span
        coeffs = [self.field.zero] * last
        for r, p in zip(echelon, pivots):
            coeffs[p] = r[last]
        return coeffs

    def member(self, x) -> bool:
        coeffs = self._coordinates(x)
        if coeffs is None:
            return False
        return all(cut.contains(self.field, c) for (cut, _), c in zip(self.summands, coeffs))

    def residue_dim(self) -> int:
        """Principal summands are free of rank one; limit summands satisfy
        m_v J = J and contribute nothing."""
        return sum(1 for cut, _ in self.summands if isinstance(cut, Principal))

    def is_unramified(self, ambient_dim_expected=None) -> bool:
        expected = self.ambient_dim if ambient_dim_expected is None else ambient_dim_expected
        if len(self.summands) != expected:
            raise NotALatticeError(
                f"K-span has dimension {len(self.summands)}, not {expected}"
            )
        return self.residue_dim() == expected

    def __repr__(self):
        cuts = ", ".join(str(cut) for cut, _ in self.summands)
        return f"IdealSumLattice(dim={self.ambient_dim}, [{cuts}])"


# ---------------------------------------------------------------------------
# spec operations (free functions over both variants)


def triangularize(M: FGLattice):
    return M.basis()


def residue_dim(M) -> int:
    return M.residue_dim()


def is_unramified(M, V_dim: int) -> bool:
    return M.is_unramified(V_dim)


def member(x, M) -> bool:
    return M.member(x)


def module_value(x, M: FGLattice) -> GroupElement:
    return M.module_value(x)


def lift_residue_basis(M: FGLattice, residue_vectors):
    """Lift a residue basis of M/m_v M to an O_v-basis of M.

    Residue vectors are coordinates over the residue field relative to
    the residues of M's (pivot-sorted) basis.
    """
    basis = M.basis()
    n = len(basis)
    vectors = [list(rv) for rv in residue_vectors]
    if len(vectors) != n or any(len(rv) != n for rv in vectors):
        raise RankError(f"need {n} residue vectors of length {n}")
    # invertibility over the residue field
    work = [list(rv) for rv in vectors]
    rank = 0
    for col in range(n):
        pivot_row = next((i for i in range(rank, n) if work[i][col]), None)
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = work[rank][col]
        work[rank] = [x / inv for x in work[rank]]
        for i in range(n):
            if i != rank and work[i][col]:
                m = work[i][col]
                work[i] = [a - m * b for a, b in zip(work[i], work[rank])]
        rank += 1
    if rank != n:
        raise RankError("residue vectors do not form a residue basis")
    lifts = []
    zero_vec = [M.field.zero] * M.ambient_dim
    for rv in vectors:
        acc = list(zero_vec)
        for r, b in zip(rv, basis):
            c = M.field.lift(r)
            if c:
                acc = [a + c * x for a, x in zip(acc, b)]
        lifts.append(tuple(acc))
    lifted = FGLattice(M.field, M.ambient_dim, lifts, label=M.label)
    if not lifted.spans_same_module(M):
        raise RankError("lifts do not regenerate the lattice")
    return lifts


def quotient_lattice(M: FGLattice, subspace_vectors, label=None) -> FGLattice:
    """Image of M in V / V', in coordinates on the non-pivot axes of V'."""
    echelon, pivots = reduced_row_echelon(list(subspace_vectors), M.field)
    complement = [c for c in range(M.ambient_dim) if c not in pivots]

    def project(x):
        y = list(x)
        for row, p in zip(echelon, pivots):
            if y[p]:
                m = y[p]
                y = [a - m * b for a, b in zip(y, row)]
        return tuple(y[c] for c in complement)

    return FGLattice(
        M.field,
        len(complement),
        [project(g) for g in M.generators],
        label=label or f"{M.label}/V'",
    )


def intersect_with_subspace(M: FGLattice, subspace_vectors, label=None) -> FGLattice:
    """The O_v-module M ∩ span_K(subspace_vectors)."""
    field = M.field
    M._ensure_basis()
    basis = M._basis
    vrows, _ = reduced_row_echelon(list(subspace_vectors), field)
    if not basis or not vrows:
        return FGLattice(field, M.ambient_dim, [], label=label or M.label)
    columns = [list(b) for b in basis] + [[-x for x in v] for v in vrows]
    kernel = kernel_of_columns(columns, field)
    a_rows = [k[: len(basis)] for k in kernel]
    a_rows = [r for r in a_rows if any(r)]
    integral = integral_point_basis(a_rows, field) if a_rows else []
    gens = [M.combine(c) for c in integral]
    return FGLattice(field, M.ambient_dim, gens, label=label or M.label)


def intersect_lattices(M1: FGLattice, M2: FGLattice, label=None) -> FGLattice:
    """The O_v-module M1 ∩ M2 (same ambient coordinates)."""
    if M1.ambient_dim != M2.ambient_dim:
        raise DimensionError("lattices live in different ambient spaces")
    field = M1.field
    M1._ensure_basis()
    M2._ensure_basis()
    b1, b2 = M1._basis, M2._basis
    if not b1 or not b2:
        return FGLattice(field, M1.ambient_dim, [], label=label or M1.label)
    columns = [list(b) for b in b1] + [[-x for x in v] for v in b2]
    kernel = kernel_of_columns(columns, field)
    rows = [k for k in kernel if any(k)]
    integral = integral_point_basis(rows, field) if rows else []
    gens = [M1.combine(c[: len(b1)]) for c in integral]
    return FGLattice(field, M1.ambient_dim, gens, label=label or M1.label)
