"""Lie algebras over the rationals, given by structure constants.

A ``LieAlgebra`` stores the full structure tensor c[i][j][k] with
``[e_i, e_j] = sum_k c[i][j][k] e_k`` and, optionally, a matrix
realization used for building catalogs and for transpose-based
involutions.  Hand-entered tensors are checked exactly (antisymmetry
and Jacobi) at construction; tensors read off from a realization
inherit both properties from the matrix commutator, so only span
closure is checked there.

Subspaces and subalgebras remember their ambient algebra and their
spanning vectors in ambient coordinates.  All derived data (centers,
derived subalgebras, radicals, Killing forms) is exact.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvariantViolation, NotReductive
from .exact import (
    ONE,
    ZERO,
    IncrementalSpan,
    RatMat,
    Vec,
    kernel,
    rat,
    rref,
    vec,
    vec_is_zero,
    zero_vec,
)


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q with a fixed ordered basis."""

    def __init__(self, structure, realization=None, name: str = "", _validate: bool = True):
        sc = tuple(tuple(tuple(rat(c) for c in row) for row in plane) for plane in structure)
        self.dim = len(sc)
        if any(len(plane) != self.dim or any(len(row) != self.dim for row in plane)
               for plane in sc):
            raise InvariantViolation("structure tensor must be dim x dim x dim")
        self.sc = sc
        self.name = name
        self.realization = None
        if realization is not None:
            self.realization = tuple(m if isinstance(m, RatMat) else RatMat(m)
                                     for m in realization)
            if len(self.realization) != self.dim:
                raise InvariantViolation("one realization matrix per basis element")
        # sparse view: _nz[i][j] lists (k, c) with c != 0
        self._nz = tuple(tuple(tuple((k, c) for k, c in enumerate(row) if c != 0)
                               for row in plane) for plane in sc)
        self._ad_cache: dict[int, RatMat] = {}
        self._killing = None
        self._reductive = None
        self._full = None
        self._realization_coord = None
        if _validate:
            self._validate()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_realization(cls, matrices, name: str = "") -> "LieAlgebra":
        """Build the algebra spanned by the given matrices.

        The span must be closed under commutators; the structure tensor
        is read off by solving exact linear systems.
        """
        mats = [m if isinstance(m, RatMat) else RatMat(m) for m in matrices]
        if not mats:
            raise InvariantViolation("empty basis")
        d = mats[0].nrows
        if any(m.nrows != d or m.ncols != d for m in mats):
            raise InvariantViolation("realization matrices must share one square shape")
        n = len(mats)
        flat_cols = [[m.rows[a][b] for m in mats] for a in range(d) for b in range(d)]
        coord = _Coordinatizer(RatMat(flat_cols), n)
        structure: list[list] = [[zero_vec(n)] * n for _ in range(n)]
        for i, mi in enumerate(mats):
            for j in range(i):
                mj = mats[j]
                comm = mi @ mj - mj @ mi
                flat = tuple(comm.rows[a][b] for a in range(d) for b in range(d))
                c = coord.coords(flat)
                if c is None:
                    raise InvariantViolation(
                        f"span not closed under brackets at basis pair ({i}, {j})")
                structure[i][j] = c
                structure[j][i] = tuple(-e for e in c)
        # commutators of actual matrices satisfy antisymmetry and Jacobi,
        # so the tensor read off here needs no re-validation
        return cls(structure, realization=mats, name=name, _validate=False)

    # -- validation --------------------------------------------------------

    def _validate(self):
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if self.sc[i][j][k] != -self.sc[j][i][k]:
                        raise InvariantViolation(
                            f"antisymmetry fails at c[{i}][{j}][{k}]")
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = [ZERO] * n
                    self._jacobi_term(i, j, k, acc)
                    self._jacobi_term(j, k, i, acc)
                    self._jacobi_term(k, i, j, acc)
                    if any(e != 0 for e in acc):
                        raise InvariantViolation(
                            f"Jacobi identity fails on basis triple ({i}, {j}, {k})")
        if self.realization is not None:
            for i in range(n):
                for j in range(n):
                    comm = (self.realization[i] @ self.realization[j]
                            - self.realization[j] @ self.realization[i])
                    expect = RatMat.zeros(comm.nrows, comm.ncols)
                    for k, c in self._nz[i][j]:
                        expect = expect + self.realization[k].scale(c)
                    if comm != expect:
                        raise InvariantViolation(
                            f"realization commutator disagrees with structure "
                            f"constants at pair ({i}, {j})")

    def _jacobi_term(self, i: int, j: int, k: int, acc: list):
        # acc += [e_i, [e_j, e_k]]
        for m, c in self._nz[j][k]:
            for l, c2 in self._nz[i][m]:
                acc[l] += c * c2

    # -- basic operations ---------------------------------------------------

    def basis_vector(self, i: int) -> Vec:
        return tuple(ONE if j == i else ZERO for j in range(self.dim))

    def bracket(self, x: Vec, y: Vec) -> Vec:
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            nzi = self._nz[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                f = xi * yj
                for k, c in nzi[j]:
                    out[k] += f * c
        return tuple(out)

    def ad(self, x: Vec) -> RatMat:
        """Matrix of y -> [x, y] in the fixed basis."""
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return RatMat.from_cols(cols)

    def ad_basis(self, i: int) -> RatMat:
        if i not in self._ad_cache:
            self._ad_cache[i] = self.ad(self.basis_vector(i))
        return self._ad_cache[i]

    def realize(self, x: Vec) -> RatMat:
        if self.realization is None:
            raise InvariantViolation(f"{self.name or 'algebra'} has no matrix realization")
        out = RatMat.zeros(self.realization[0].nrows, self.realization[0].ncols)
        for i, xi in enumerate(x):
            if xi != 0:
                out = out + self.realization[i].scale(xi)
        return out

    def realization_coords(self, m: RatMat) -> Vec | None:
        """Coordinates of a matrix in the realized basis; None if outside."""
        if self.realization is None:
            raise InvariantViolation(f"{self.name or 'algebra'} has no matrix realization")
        d = self.realization[0].nrows
        if self._realization_coord is None:
            flat_cols = [[mat.rows[a][b] for mat in self.realization]
                         for a in range(d) for b in range(d)]
            self._realization_coord = _Coordinatizer(RatMat(flat_cols), self.dim)
        flat = tuple(m.rows[a][b] for a in range(d) for b in range(d))
        return self._realization_coord.coords(flat)

    def killing_form(self) -> "BilinearForm":
        """Killing form kappa(x, y) = tr(ad x ad y), computed once."""
        if self._killing is None:
            ads = [self.ad_basis(i) for i in range(self.dim)]
            n = self.dim
            gram = []
            for i in range(n):
                a = ads[i]
                row = []
                for j in range(n):
                    b = ads[j]
                    t = ZERO
                    for p in range(n):
                        ap = a.rows[p]
                        for q in range(n):
                            if ap[q] != 0 and b.rows[q][p] != 0:
                                t += ap[q] * b.rows[q][p]
                    row.append(t)
                gram.append(row)
            self._killing = BilinearForm(self, RatMat(gram))
        return self._killing

    def full_subalgebra(self) -> "Subalgebra":
        if self._full is None:
            self._full = Subalgebra(self, [self.basis_vector(i) for i in range(self.dim)],
                                    name=self.name or "g")
        return self._full

    def is_reductive(self) -> bool:
        """Exact test: the radical equals the center."""
        if self._reductive is None:
            g = self.full_subalgebra()
            r = radical(g)
            # the center is an abelian ideal, hence inside the radical;
            # a zero radical therefore forces a zero center
            self._reductive = True if r.dim == 0 else r.same_span(center(g))
        return self._reductive

    def __repr__(self):
        return f"LieAlgebra({self.name or 'unnamed'}, dim={self.dim})"


class _Coordinatizer:
    """Solve columns-of-B coordinates repeatedly via one precomputed elimination."""

    def __init__(self, b: RatMat, ncols: int):
        n = b.nrows
        aug = RatMat([list(b.rows[i]) + list(RatMat.identity(n).rows[i]) for i in range(n)])
        r, pivots = rref(aug)
        if [p for p in pivots if p < ncols] != list(range(ncols)):
            raise InvariantViolation("basis vectors are linearly dependent")
        self.ncols = ncols
        self.nrows = n
        elim = [row[b.ncols:] for row in r.rows]
        # column-sparse view; inputs are typically sparse, so coords costs
        # nnz(v) * nnz(column) instead of a dense n^2 sweep
        self._cols_nz = [tuple((i, elim[i][j]) for i in range(n) if elim[i][j] != 0)
                         for j in range(n)]

    def coords(self, v: Vec) -> Vec | None:
        u = [ZERO] * self.nrows
        for j, vj in enumerate(v):
            if vj == 0:
                continue
            for i, e in self._cols_nz[j]:
                u[i] += vj * e
        if any(e != 0 for e in u[self.ncols:]):
            return None
        return tuple(u[: self.ncols])


class BilinearForm:
    """Symmetric bilinear form on an algebra, stored as a Gram matrix."""

    def __init__(self, algebra: LieAlgebra, gram: RatMat):
        if gram.nrows != algebra.dim or gram.ncols != algebra.dim:
            raise InvariantViolation("Gram matrix shape mismatch")
        if gram != gram.transpose():
            raise InvariantViolation("form is not symmetric")
        self.algebra = algebra
        self.gram = gram

    def value(self, x: Vec, y: Vec) -> Fraction:
        return sum((xi * e for xi, e in zip(x, self.gram.apply(y), strict=True)), ZERO)

    def is_invariant(self, x: Vec, y: Vec, z: Vec) -> bool:
        """Check kappa([x,y],z) + kappa(y,[x,z]) = 0 for given vectors."""
        g = self.algebra
        return self.value(g.bracket(x, y), z) + self.value(y, g.bracket(x, z)) == 0

    def is_positive_definite(self) -> bool:
        """Sylvester criterion: all leading principal minors positive."""
        n = self.gram.nrows
        for k in range(1, n + 1):
            sub = RatMat([row[:k] for row in self.gram.rows[:k]])
            if sub.det() <= 0:
                return False
        return True


class Subspace:
    """Linear subspace of an ambient algebra, basis in ambient coordinates."""

    def __init__(self, algebra: LieAlgebra, basis, name: str = ""):
        self.algebra = algebra
        self.basis: tuple[Vec, ...] = tuple(vec(b) for b in basis)
        self.name = name
        for b in self.basis:
            if len(b) != algebra.dim:
                raise InvariantViolation("basis vector has wrong length")
        self.dim = len(self.basis)
        if self.dim:
            self._coord = _Coordinatizer(RatMat.from_cols(self.basis), self.dim)
        else:
            self._coord = None
        self._span = IncrementalSpan(algebra.dim, self.basis)
        if self._span.rank != self.dim:
            raise InvariantViolation("subspace basis is linearly dependent")

    def contains(self, v: Vec) -> bool:
        return self._span.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def same_span(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains_subspace(other)

    def coords(self, v: Vec) -> Vec | None:
        """Coefficients of v in this basis; None when v is outside."""
        if self._coord is None:
            return None if any(e != 0 for e in v) else ()
        return self._coord.coords(v)

    def coords_strict(self, v: Vec) -> Vec:
        c = self.coords(v)
        if c is None:
            raise InvariantViolation("vector outside subspace")
        return c

    def from_coords(self, c: Vec) -> Vec:
        out = zero_vec(self.algebra.dim)
        for ci, b in zip(c, self.basis, strict=True):
            if ci != 0:
                out = tuple(o + ci * e for o, e in zip(out, b))
        return out

    def restriction_matrix(self, op: RatMat) -> RatMat:
        """Matrix of ``op`` restricted to this subspace, in this basis.

        Raises when the subspace is not invariant under ``op``.
        """
        cols = []
        for b in self.basis:
            image = op.apply(b)
            if not self.contains(image):
                raise InvariantViolation("subspace not invariant under operator")
            cols.append(self.coords_strict(image))
        return RatMat.from_cols(cols) if cols else RatMat.zeros(0, 0)

    def __repr__(self):
        return f"{type(self).__name__}({self.name or '?'}, dim={self.dim})"


class Subalgebra(Subspace):
    """Subspace closed under the bracket; closure is checked exactly."""

    def __init__(self, algebra: LieAlgebra, basis, name: str = ""):
        super().__init__(algebra, basis, name=name)
        for i, bi in enumerate(self.basis):
            for j in range(i + 1, self.dim):
                if not self.contains(algebra.bracket(bi, self.basis[j])):
                    raise InvariantViolation(
                        f"not closed under bracket at basis pair ({i}, {j})")
        self._abstract = None

    def abstract(self) -> LieAlgebra:
        """This subalgebra as a standalone algebra in its own basis."""
        if self._abstract is None:
            g = self.algebra
            if self.dim == g.dim and all(
                    b == g.basis_vector(i) for i, b in enumerate(self.basis)):
                self._abstract = g
            else:
                structure = [[self.coords_strict(g.bracket(bi, bj)) for bj in self.basis]
                             for bi in self.basis]
                self._abstract = LieAlgebra(structure, name=f"{self.name or 'h'}|abstract",
                                            _validate=False)
        return self._abstract


def center(h: Subalgebra) -> Subalgebra:
    """Elements of h commuting with all of h."""
    g = h.algebra
    if h.dim == 0:
        return Subalgebra(g, [], name=f"z({h.name})")
    rows = []
    brackets = [[g.bracket(bi, bj) for bj in h.basis] for bi in h.basis]
    for j in range(h.dim):
        for l in range(g.dim):
            rows.append([brackets[i][j][l] for i in range(h.dim)])
    coeffs = kernel(RatMat(rows, ncols=h.dim))
    return Subalgebra(g, [h.from_coords(c) for c in coeffs], name=f"z({h.name})")


def derived_subalgebra(h: Subalgebra) -> Subalgebra:
    """Span of all brackets [h, h]."""
    g = h.algebra
    span = IncrementalSpan(g.dim)
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            span.add(g.bracket(h.basis[i], h.basis[j]))
    return Subalgebra(g, span.basis(), name=f"[{h.name},{h.name}]")


def radical(h: Subalgebra) -> Subalgebra:
    """Maximal solvable ideal of h.

    Characteristic zero criterion: the radical is the orthogonal
    complement of [h, h] with respect to the Killing form of h itself.
    """
    g = h.algebra
    if h.dim == 0:
        return Subalgebra(g, [], name=f"rad({h.name})")
    habs = h.abstract()
    kappa = habs.killing_form()
    derived = derived_subalgebra(habs.full_subalgebra())
    if derived.dim == 0:
        return Subalgebra(g, h.basis, name=f"rad({h.name})")
    rows = [kappa.gram.apply(d) for d in derived.basis]
    coeffs = kernel(RatMat(rows, ncols=h.dim))
    return Subalgebra(g, [h.from_coords(c) for c in coeffs], name=f"rad({h.name})")


def is_unimodular_pair(g: LieAlgebra, h: Subalgebra) -> bool:
    """Does the homogeneous quotient carry an invariant measure?

    Requires a reductive ambient algebra; then the condition is that the
    adjoint action of h on itself is traceless.
    """
    if not g.is_reductive():
        raise NotReductive(
            f"ambient algebra {g.name or '?'} is not reductive: radical exceeds center")
    for x in h.basis:
        if h.restriction_matrix(g.ad(x)).trace() != 0:
            return False
    return True


def unimodular_trace_witness(g: LieAlgebra, h: Subalgebra) -> Vec | None:
    """A basis element of h whose adjoint trace on h is nonzero, if any."""
    for x in h.basis:
        if h.restriction_matrix(g.ad(x)).trace() != 0:
            return x
    return None


def negative_transpose_involution(g: LieAlgebra) -> RatMat:
    """Coordinate matrix of X -> -X^T on a realized algebra.

    The realized span must be stable under transposition.
    """
    if g.realization is None:
        raise InvariantViolation("negative-transpose involution needs a matrix realization")
    cols = []
    for m in g.realization:
        c = g.realization_coords(-(m.transpose()))
        if c is None:
            raise InvariantViolation("span is not stable under negative transpose")
        cols.append(c)
    return RatMat.from_cols(cols)
