"""Reductive-type analysis of a subalgebra and the decay verdict.

Given a reductive ambient algebra g and a subalgebra h, three exact
questions decide how volumes of balls behave at infinity on the
quotient space:

* is the pair unimodular (otherwise no invariant measure exists and the
  question is void),
* is h reductive in g (radical(h) = center(h) and the center acts
  semisimply on g),
* is h stable under a Cartan involution, which yields an invariant
  complement q with [h, q] in q, and detects symmetric pairs via
  [q, q] in h.

The verdict is "holds" exactly when the pair is unimodular and h is
reductive in g; every verdict ships a checkable certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, InvariantViolation, NotReductive
from .exact import (
    Poly,
    RatMat,
    Vec,
    is_squarefree,
    kernel,
    minimal_polynomial,
)
from .lie import (
    BilinearForm,
    LieAlgebra,
    Subalgebra,
    Subspace,
    center,
    is_unimodular_pair,
    negative_transpose_involution,
    radical,
    unimodular_trace_witness,
)

VAI_HOLDS = "holds"
VAI_FAILS = "fails"
VAI_NO_MEASURE = "no-invariant-measure"


class CartanData:
    """A Cartan involution with its eigenspace split and inner product.

    theta must be an involutive automorphism whose twisted Killing
    pairing <x, y> = -kappa(theta x, y) is positive definite; all three
    conditions are verified exactly at construction.
    """

    def __init__(self, g: LieAlgebra, theta: RatMat):
        n = g.dim
        if theta.nrows != n or theta.ncols != n:
            raise InvariantViolation("involution matrix has wrong shape")
        if theta @ theta != RatMat.identity(n):
            raise InvariantViolation("involution does not square to the identity")
        for i in range(n):
            ti = theta.col(i)
            for j in range(i + 1, n):
                lhs = theta.apply(g.bracket(g.basis_vector(i), g.basis_vector(j)))
                if lhs != g.bracket(ti, theta.col(j)):
                    raise InvariantViolation(
                        f"involution is not an automorphism at basis pair ({i}, {j})")
        kappa = g.killing_form()
        gram = RatMat([[-(kappa.value(theta.col(i), g.basis_vector(j)))
                        for j in range(n)] for i in range(n)])
        inner = BilinearForm(g, gram)
        if not inner.is_positive_definite():
            raise InvariantViolation("twisted Killing pairing is not positive definite")
        self.algebra = g
        self.theta = theta
        self.inner = inner
        eye = RatMat.identity(n)
        self.k_part = Subspace(g, kernel(theta - eye), name="k")
        self.p_part = Subspace(g, kernel(theta + eye), name="p")

    @classmethod
    def negative_transpose(cls, g: LieAlgebra) -> "CartanData":
        return cls(g, negative_transpose_involution(g))

    def __repr__(self):
        return (f"CartanData(dim k = {self.k_part.dim}, "
                f"dim p = {self.p_part.dim})")


@dataclass
class ReductivityReport:
    """Exact verdict for one (g, h) pair, with certificates."""

    algebra: str
    subalgebra: str
    unimodular: bool
    reductive_in_g: bool
    vai: str
    certificate: dict | None
    symmetric_pair: bool
    trace_witness: Vec | None = None

    def __post_init__(self):
        expected = (VAI_NO_MEASURE if not self.unimodular
                    else VAI_HOLDS if self.reductive_in_g else VAI_FAILS)
        if self.vai != expected:
            raise InvariantViolation("verdict disagrees with its ingredients")


def is_reductive_in_g(g: LieAlgebra, h: Subalgebra) -> tuple[bool, dict | None]:
    """Is the adjoint action of h on g completely reducible?

    Criterion: radical(h) = center(h), and every basis element of the
    center acts semisimply on g (squarefree minimal polynomial of its
    adjoint matrix).  Center elements commute, so semisimplicity of
    each basis action gives semisimplicity of the whole center action.

    Returns (True, None) or (False, certificate) where the certificate
    names the offending element.
    """
    r = radical(h)
    z = center(h)
    if not r.same_span(z):
        # the center always sits inside the radical, so some radical
        # basis vector escapes the center
        witness = next(b for b in r.basis if not z.contains(b))
        return False, {
            "kind": "radical-witness",
            "element": witness,
            "radical_dim": r.dim,
            "center_dim": z.dim,
        }
    for zv in z.basis:
        mp = minimal_polynomial(g.ad(zv))
        if not is_squarefree(mp):
            return False, {"kind": "center-witness", "element": zv, "minpoly": mp}
    return True, None


def check_theta_stable(g: LieAlgebra, h: Subalgebra,
                       cartan: CartanData) -> tuple[bool, Subspace | None]:
    """Is h preserved by the involution?  If so, split off q = h-perp.

    q is the orthogonal complement under the positive definite twisted
    pairing, so g = h + q is direct; [h, q] in q is then automatic and
    is re-verified exactly here.
    """
    theta = cartan.theta
    if not all(h.contains(theta.apply(b)) for b in h.basis):
        return False, None
    if h.dim == 0:
        return True, Subspace(g, [g.basis_vector(i) for i in range(g.dim)], name="q")
    rows = [cartan.inner.gram.apply(b) for b in h.basis]
    q = Subspace(g, kernel(RatMat(rows, ncols=g.dim)), name="q")
    if h.dim + q.dim != g.dim:
        raise InvariantViolation("complement dimension mismatch")
    for x in h.basis:
        for y in q.basis:
            if not q.contains(g.bracket(x, y)):
                raise InvariantViolation("[h, q] escapes q")
    return True, q


def is_symmetric_pair(g: LieAlgebra, h: Subalgebra, cartan: CartanData) -> bool:
    """Does the invariant complement bracket back into h?"""
    stable, q = check_theta_stable(g, h, cartan)
    if not stable:
        raise InputError("subalgebra is not stable under the given involution")
    for i, x in enumerate(q.basis):
        for y in q.basis[i + 1:]:
            if not h.contains(g.bracket(x, y)):
                return False
    return True


def default_cartan(g: LieAlgebra) -> CartanData | None:
    """Negative-transpose involution when a realization permits one."""
    if g.realization is None:
        return None
    try:
        return CartanData.negative_transpose(g)
    except InvariantViolation:
        return None


def vai_verdict(g: LieAlgebra, h: Subalgebra,
                cartan: CartanData | None = None) -> ReductivityReport:
    """Full verdict: does every smooth vector vanish at infinity?

    holds  -> unimodular and reductive in g; if an involution is
              available and preserves h, a theta-stable certificate
              with the invariant complement is attached.
    fails  -> unimodular but not reductive in g; certificate names the
              offending radical or center element.
    no-invariant-measure -> not unimodular; the question is void and a
              nonzero-trace element is reported.
    """
    if not g.is_reductive():
        raise NotReductive(
            f"ambient algebra {g.name or '?'} is not reductive")
    if cartan is None:
        cartan = default_cartan(g)
    unimodular = is_unimodular_pair(g, h)
    reductive, failure_cert = is_reductive_in_g(g, h)
    if not unimodular:
        vai = VAI_NO_MEASURE
    elif reductive:
        vai = VAI_HOLDS
    else:
        vai = VAI_FAILS

    certificate = None
    symmetric = False
    if cartan is not None:
        stable, q = check_theta_stable(g, h, cartan)
        if stable:
            certificate = {"kind": "theta-stable", "q": q.basis}
            symmetric = is_symmetric_pair(g, h, cartan)
    if vai != VAI_HOLDS and failure_cert is not None:
        certificate = failure_cert

    return ReductivityReport(
        algebra=g.name,
        subalgebra=h.name,
        unimodular=unimodular,
        reductive_in_g=reductive,
        vai=vai,
        certificate=certificate,
        symmetric_pair=symmetric,
        trace_witness=None if unimodular else unimodular_trace_witness(g, h),
    )
