"""Eigenspace gradings by semisimple elements and sl2-triples.

A semisimple element x with rational spectrum splits g into exact
ad-eigenspaces g^lambda; brackets add eigenvalues, giving the
triangular decomposition that drives every decay certificate.  For a
nilpotent u, a deterministic two-step linear solve produces an
sl2-triple (x, u, v) through u, the structural backbone for growth
rates on non-reductive quotients.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    InvariantViolation,
    IrrationalSpectrum,
    NotNilpotent,
    NotSemisimple,
)
from .exact import (
    IncrementalSpan,
    RatMat,
    Vec,
    is_squarefree,
    kernel,
    minimal_polynomial,
    rational_eigen_decomposition,
    solve,
    vec,
    vec_is_zero,
    vec_scale,
    zero_vec,
)
from .lie import LieAlgebra, Subspace, _Coordinatizer


class Grading:
    """Exact decomposition of g into ad-x eigenspaces.

    parts maps each rational eigenvalue to its eigenspace; the pieces
    must fill g, and bracket compatibility
    [g^lambda, g^mu] in g^{lambda+mu} is verified at construction.
    """

    def __init__(self, g: LieAlgebra, x: Vec, parts: dict[Fraction, Subspace]):
        self.algebra = g
        self.x = vec(x)
        self.parts = dict(sorted(parts.items()))
        if sum(p.dim for p in self.parts.values()) != g.dim:
            raise InvariantViolation("eigenspaces do not fill the algebra")
        for lam, p in self.parts.items():
            for b in p.basis:
                if g.bracket(self.x, b) != vec_scale(lam, b):
                    raise InvariantViolation(
                        f"labeled eigenvalue {lam} is not the ad-x eigenvalue")
        self._validate_brackets()
        cols = [b for p in self.parts.values() for b in p.basis]
        self._slices = {}
        lo = 0
        for lam, p in self.parts.items():
            self._slices[lam] = (lo, lo + p.dim)
            lo += p.dim
        self._coord = _Coordinatizer(RatMat.from_cols(cols), g.dim)

    def _validate_brackets(self):
        g = self.algebra
        items = list(self.parts.items())
        for lam, pl in items:
            for mu, pm in items:
                target = self.parts.get(lam + mu)
                for a in pl.basis:
                    for b in pm.basis:
                        br = g.bracket(a, b)
                        if target is not None:
                            if not target.contains(br):
                                raise InvariantViolation(
                                    f"[g^{lam}, g^{mu}] escapes g^{lam + mu}")
                        elif not vec_is_zero(br):
                            raise InvariantViolation(
                                f"[g^{lam}, g^{mu}] nonzero but {lam + mu} "
                                f"is not an eigenvalue")

    def eigenvalues(self) -> list[Fraction]:
        return list(self.parts.keys())

    def part(self, lam) -> Subspace:
        key = Fraction(lam)
        if key in self.parts:
            return self.parts[key]
        return Subspace(self.algebra, [], name=f"g^{key}")

    def _aggregate(self, keep, name: str) -> Subspace:
        basis = [b for lam, p in self.parts.items() if keep(lam) for b in p.basis]
        return Subspace(self.algebra, basis, name=name)

    def positive_part(self) -> Subspace:
        return self._aggregate(lambda lam: lam > 0, "g^+")

    def zero_part(self) -> Subspace:
        return self.part(0)

    def negative_part(self) -> Subspace:
        return self._aggregate(lambda lam: lam < 0, "g^-")

    def nonnegative_part(self) -> Subspace:
        return self._aggregate(lambda lam: lam >= 0, "g^(>=0)")

    def components_of(self, v: Vec) -> dict[Fraction, Vec]:
        """Split v into its eigenvalue components; zero parts omitted."""
        c = self._coord.coords(v)
        out = {}
        for lam, (lo, hi) in self._slices.items():
            if any(e != 0 for e in c[lo:hi]):
                out[lam] = self.parts[lam].from_coords(c[lo:hi])
        return out

    def __repr__(self):
        body = ", ".join(f"{lam}:{p.dim}" for lam, p in self.parts.items())
        return f"Grading({body})"


class SL2Triple:
    """Elements (x, u, v) with [x,u] = 2u, [x,v] = -2v, [u,v] = x."""

    def __init__(self, g: LieAlgebra, x: Vec, u: Vec, v: Vec):
        self.algebra = g
        self.x, self.u, self.v = vec(x), vec(u), vec(v)
        if g.bracket(self.x, self.u) != vec_scale(Fraction(2), self.u):
            raise InvariantViolation("[x, u] != 2u")
        if g.bracket(self.x, self.v) != vec_scale(Fraction(-2), self.v):
            raise InvariantViolation("[x, v] != -2v")
        if g.bracket(self.u, self.v) != self.x:
            raise InvariantViolation("[u, v] != x")

    def __repr__(self):
        return f"SL2Triple(x={self.x}, u={self.u}, v={self.v})"


def grading_of(g: LieAlgebra, x: Vec) -> Grading:
    """Exact eigenspace decomposition of g under ad x.

    Requires ad x semisimple (squarefree minimal polynomial) with fully
    rational spectrum; raises NotSemisimple / IrrationalSpectrum
    otherwise.
    """
    adx = g.ad(x)
    if not is_squarefree(minimal_polynomial(adx)):
        raise NotSemisimple("ad x has a repeated minimal-polynomial factor")
    decomp = rational_eigen_decomposition(adx)
    if decomp.residual:
        raise IrrationalSpectrum("ad x has irrational eigenvalues")
    parts = {lam: Subspace(g, basis, name=f"g^{lam}")
             for lam, basis in decomp.eigenspaces.items()}
    return Grading(g, x, parts)


def is_ad_nilpotent(g: LieAlgebra, u: Vec) -> bool:
    """Does some power of ad u vanish?  Engel bound: dim g powers."""
    m = g.ad(u)
    p = m
    for _ in range(g.dim):
        if p.is_zero():
            return True
        p = p @ m
    return p.is_zero()


def acts_nilpotently(g: LieAlgebra, n) -> bool:
    """Does the subalgebra n act nilpotently on g?

    Computed via the joint lower central series of the module:
    W_0 = g, W_{k+1} = [n, W_k]; nilpotent action iff the series hits
    zero.  This is the honest subalgebra-level test; nilpotency of the
    individual basis actions alone would not suffice.
    """
    current = [g.basis_vector(i) for i in range(g.dim)]
    for _ in range(g.dim + 1):
        if not current:
            return True
        span = IncrementalSpan(g.dim)
        nxt = []
        for b in n.basis:
            for w in current:
                img = g.bracket(b, w)
                if span.add(img):
                    nxt.append(img)
        if len(nxt) >= len(current):
            # series stalled above zero
            return False
        current = nxt
    return not current


def jacobson_morozov(g: LieAlgebra, u: Vec) -> SL2Triple:
    """Complete a nonzero nilpotent u to an sl2-triple (x, u, v).

    Deterministic construction: first solve (ad u)^2 w = -2u and set
    x = [u, w], so that [x, u] = 2u with x in the image of ad u; then
    solve the joint linear system [u, v] = x, [x, v] = -2v for v.  Both
    systems use the rref parametrization with free variables at zero,
    so equal inputs give identical triples.  Solvability is a classical
    theorem for nilpotent u in a reductive algebra; an unsolvable
    system therefore signals corrupted input.
    """
    u = vec(u)
    if vec_is_zero(u):
        raise NotNilpotent("zero element admits no sl2-triple")
    if not is_ad_nilpotent(g, u):
        raise NotNilpotent("element is not ad-nilpotent")
    adu = g.ad(u)
    w = solve(adu @ adu, vec_scale(Fraction(-2), u))
    if w is None:
        raise InvariantViolation("(ad u)^2 w = -2u is unsolvable; input corrupted")
    x = g.bracket(u, w)
    adx = g.ad(x)
    two = RatMat.identity(g.dim).scale(Fraction(2))
    stacked = RatMat([list(r) for r in adu.rows] + [list(r) for r in (adx + two).rows])
    rhs = tuple(x) + zero_vec(g.dim)
    v = solve(stacked, rhs)
    if v is None:
        raise InvariantViolation("triple completion system is unsolvable; input corrupted")
    return SL2Triple(g, x, u, v)


def verify_nonnegative_grading(g: LieAlgebra, n, triple: SL2Triple) -> bool:
    """Does n sit inside the nonnegative part of the triple's grading?

    Checks n in g^+ + g^0 for the grading by triple.x, and the
    companion containment of the centralizer of triple.u.  Both are the
    structural facts that let a nilpotent direction be pushed to
    infinity with controlled volume distortion.

    A triple whose u is missing from the center of n certifies nothing
    and yields False outright.
    """
    if not n.contains(triple.u):
        return False
    if any(not vec_is_zero(g.bracket(triple.u, b)) for b in n.basis):
        return False
    grading = grading_of(g, triple.x)
    nonneg = grading.nonnegative_part()
    if not all(nonneg.contains(b) for b in n.basis):
        return False
    centralizer = kernel(g.ad(triple.u))
    return all(nonneg.contains(z) for z in centralizer)
