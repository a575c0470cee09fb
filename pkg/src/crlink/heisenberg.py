"""Boundary geometry in Heisenberg coordinates.

The boundary of complex hyperbolic 2-space, minus a point, is modelled by the
Heisenberg group: pairs (z, t) in C x R with the twisted product
(z,t)(z',t') = (z+z', t+t'+2 Im z conj(z')).  The missing point is a genuine
Infinity variant, never a large coordinate.  Points lift to null vectors for
the Hermitian form <z,w> = z1 conj(w3) + z2 conj(w2) + z3 conj(w1) of
signature (2,1); chains (C-circles) are cut out by positive polar vectors;
triples of points carry the angular invariant stored exactly as the triple
Hermitian product.

Everything here is generic over the scalar backend: exact field elements for
certification, machine complex numbers for meshes and sampling.
"""

from __future__ import annotations

import math
from typing import Optional

from .scalars import EXACT, FLOAT, BackendError, Scalar  # noqa: F401


class GeometryError(ValueError):
    """Degenerate input to a geometric operation."""


class CoincidentPointsError(GeometryError):
    """Operation requires pairwise-distinct points."""


class InfinityOperandError(GeometryError):
    """Group operation applied to the point at infinity."""


class ChainInvariantError(GeometryError):
    """Cartan invariant is +-pi/2 (triple on a chain): tangent undefined."""


class HPoint:
    """A boundary point: Infinity, or Finite(z, t) in Heisenberg coordinates."""

    __slots__ = ("z", "t")

    def __init__(self, z: Optional[Scalar], t: Optional[Scalar]):
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "t", t)
        if (z is None) != (t is None):
            raise GeometryError("both coordinates or neither")
        if t is not None and not t.is_real():
            raise GeometryError(f"vertical coordinate must be real, got {t}")

    def __setattr__(self, *a):
        raise AttributeError("HPoint is immutable")

    @classmethod
    def infinity(cls) -> "HPoint":
        return cls(None, None)

    @classmethod
    def exact(cls, z, t) -> "HPoint":
        return cls(Scalar.exact(z), Scalar.exact(t))

    @classmethod
    def inexact(cls, z, t, tol=None) -> "HPoint":
        from .scalars import DEFAULT_FLOAT_TOL

        tol = DEFAULT_FLOAT_TOL if tol is None else tol
        return cls(Scalar.inexact(z, tol), Scalar.inexact(complex(t).real, tol))

    @property
    def is_infinity(self) -> bool:
        return self.z is None

    def to_float(self, tol=None) -> "HPoint":
        if self.is_infinity:
            return self
        from .scalars import DEFAULT_FLOAT_TOL

        tol = DEFAULT_FLOAT_TOL if tol is None else tol
        return HPoint(self.z.to_float(tol), self.t.to_float(tol))

    def coords(self):
        """(Re z, Im z, t) as machine floats; error at infinity."""
        if self.is_infinity:
            raise InfinityOperandError("no coordinates at infinity")
        zc = self.z.to_complex()
        return (zc.real, zc.imag, self.t.to_complex().real)

    def __eq__(self, other):
        if not isinstance(other, HPoint):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.z.eq(other.z) and self.t.eq(other.t)

    def __hash__(self):
        return hash((self.z, self.t))

    def __str__(self):
        if self.is_infinity:
            return "inf"
        return f"({self.z}, {self.t})"

    def __repr__(self):
        return f"HPoint{self}"


INFINITY = HPoint.infinity()


def h_mul(p: HPoint, q: HPoint) -> HPoint:
    """Heisenberg group product of two finite points."""
    if p.is_infinity or q.is_infinity:
        raise InfinityOperandError("group law is defined on finite points")
    z = p.z + q.z
    t = p.t + q.t + 2 * (p.z * q.z.conj()).im()
    return HPoint(z, t)


def h_inv(p: HPoint) -> HPoint:
    if p.is_infinity:
        raise InfinityOperandError("group law is defined on finite points")
    return HPoint(-p.z, -p.t)


class NullVector:
    """Homogeneous coordinates in C^{2,1}; lifts of boundary points are null."""

    __slots__ = ("v1", "v2", "v3")

    def __init__(self, v1: Scalar, v2: Scalar, v3: Scalar):
        if v1.is_zero() and v2.is_zero() and v3.is_zero():
            raise GeometryError("zero vector is not projective")
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)
        object.__setattr__(self, "v3", v3)

    def __setattr__(self, *a):
        raise AttributeError("NullVector is immutable")

    def components(self):
        return (self.v1, self.v2, self.v3)

    def scale(self, factor: Scalar) -> "NullVector":
        return NullVector(self.v1 * factor, self.v2 * factor, self.v3 * factor)

    def conj(self) -> "NullVector":
        return NullVector(self.v1.conj(), self.v2.conj(), self.v3.conj())

    def __repr__(self):
        return f"NullVector({self.v1}, {self.v2}, {self.v3})"


def lift(p: HPoint, like: Optional[Scalar] = None) -> NullVector:
    """Null lift: (z,t) -> ((-|z|^2+it)/2, z, 1); infinity -> (1,0,0).

    `like` fixes the backend of the constant lift of infinity so that mixed
    pairings with float points stay within one backend.
    """
    if p.is_infinity:
        one = like.one_like() if like is not None else Scalar.exact(1)
        zero = like.zero_like() if like is not None else Scalar.exact(0)
        return NullVector(one, zero, zero)
    one = p.z.one_like()
    i = p.z.i_like()
    v1 = (-(p.z.abs2()) + i * p.t) / 2
    return NullVector(v1, p.z, one)


def _scalar_witness(*points: HPoint) -> Optional[Scalar]:
    for p in points:
        if not p.is_infinity:
            return p.z
    return None


def herm(u: NullVector, v: NullVector) -> Scalar:
    """The signature (2,1) Hermitian form <u,v> = u1 conj(v3) + u2 conj(v2) + u3 conj(v1)."""
    return u.v1 * v.v3.conj() + u.v2 * v.v2.conj() + u.v3 * v.v1.conj()


def signature(v: NullVector) -> int:
    """Sign of <v,v>: +1 (positive vector), 0 (null), -1 (negative)."""
    return herm(v, v).re().sign()


def point_from_null(v: NullVector) -> HPoint:
    """The boundary point a null vector represents."""
    if v.v3.is_zero():
        return INFINITY
    z = v.v2 / v.v3
    t = 2 * (v.v1 / v.v3).im()
    return HPoint(z, t)


class TripleProduct:
    """The angular invariant of a point triple, stored exactly.

    `eta` is -<p1,p2><p2,p3><p3,p1> on lifts; the invariant is arg(eta) in
    [-pi/2, pi/2].  Angles are transcendental, so all certification-grade
    comparisons go through eta: two invariants are equal iff
    eta1 * conj(eta2) is a positive real.
    """

    __slots__ = ("eta",)

    def __init__(self, eta: Scalar):
        if eta.is_zero():
            raise GeometryError("vanishing triple product")
        object.__setattr__(self, "eta", eta)

    def __setattr__(self, *a):
        raise AttributeError("TripleProduct is immutable")

    def tan(self) -> Scalar:
        """Exact tangent of the invariant; error when the invariant is +-pi/2."""
        re = self.eta.re()
        if re.is_zero():
            raise ChainInvariantError(
                "invariant is +-pi/2 (triple lies on a chain); tangent undefined"
            )
        return self.eta.im() / re

    def is_right_angle(self) -> bool:
        return self.eta.re().is_zero()

    def angle(self) -> float:
        """Float angle in [-pi/2, pi/2] (for display; never for certification)."""
        e = self.eta.to_complex()
        return math.atan2(e.imag, e.real)

    def same_as(self, other: "TripleProduct") -> bool:
        """Exact equality of invariants: eta1 conj(eta2) real positive."""
        q = self.eta * other.eta.conj()
        return q.im().is_zero() and q.re().sign() > 0

    def opposite_of(self, other: "TripleProduct") -> bool:
        """Exact opposition of invariants: eta1 * eta2 real positive."""
        q = self.eta * other.eta
        return q.im().is_zero() and q.re().sign() > 0

    def __repr__(self):
        return f"TripleProduct(eta={self.eta})"


def cartan(p1: HPoint, p2: HPoint, p3: HPoint) -> TripleProduct:
    """Angular invariant of three pairwise-distinct boundary points."""
    if p1 == p2 or p2 == p3 or p1 == p3:
        raise CoincidentPointsError("angular invariant needs distinct points")
    like = _scalar_witness(p1, p2, p3)
    l1, l2, l3 = lift(p1, like), lift(p2, like), lift(p3, like)
    eta = -(herm(l1, l2) * herm(l2, l3) * herm(l3, l1))
    return TripleProduct(eta)


def cocycle(p1: HPoint, p2: HPoint, p3: HPoint, p4: HPoint) -> float:
    """Alternating sum of the four triple angles, reduced mod 2pi to (-pi, pi].

    Contract: zero (within float tolerance) for any four distinct points.
    """
    total = (
        -cartan(p2, p3, p4).angle()
        + cartan(p1, p3, p4).angle()
        - cartan(p1, p2, p4).angle()
        + cartan(p1, p2, p3).angle()
    )
    twopi = 2 * math.pi
    r = math.fmod(total, twopi)
    if r > math.pi:
        r -= twopi
    elif r <= -math.pi:
        r += twopi
    return r


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


class Chain:
    """A C-circle: vertical line or finite chain, with its polar vector.

    The polar vector is the authoritative datum: a point q lies on the chain
    iff <lift(q), polar> = 0.  Centre/height/radius of finite chains are
    derived views.  Vertical chains consist of all (z0, t) together with
    infinity.
    """

    __slots__ = ("polar", "vertical", "center", "c", "r2")

    def __init__(self, polar: NullVector, vertical: bool, center, c, r2):
        object.__setattr__(self, "polar", polar)
        object.__setattr__(self, "vertical", vertical)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "r2", r2)

    def __setattr__(self, *a):
        raise AttributeError("Chain is immutable")

    @classmethod
    def vertical_line(cls, z0: Scalar) -> "Chain":
        one = z0.one_like()
        polar = NullVector(-z0.conj(), one, z0.zero_like())
        return cls(polar, True, z0, None, None)

    @classmethod
    def finite(cls, center: Scalar, c: Scalar, r2: Scalar) -> "Chain":
        if r2.sign() <= 0:
            raise GeometryError("finite chain needs positive squared radius")
        one = center.one_like()
        i = center.i_like()
        first = (r2 - center.abs2() + i * c) / 2
        polar = NullVector(first, center, one)
        return cls(polar, False, center, c, r2)

    def contains(self, p: HPoint) -> bool:
        if p.is_infinity:
            return self.vertical
        return herm(lift(p), self.polar).is_zero()

    def orthogonality_residual(self, p: HPoint) -> float:
        """Relative float residual of the membership equation (diagnostics)."""
        val = herm(lift(p), self.polar).to_complex()
        scale = max(
            (abs(c.to_complex()) for c in self.polar.components()), default=1.0
        )
        return abs(val) / max(scale, 1.0)

    def __repr__(self):
        if self.vertical:
            return f"Chain(vertical through {self.center})"
        return f"Chain(center={self.center}, c={self.c}, R^2={self.r2})"


def chain_through(p: HPoint, q: HPoint) -> Chain:
    """The unique C-circle through two distinct boundary points."""
    if p == q:
        raise CoincidentPointsError("chain through a repeated point")
    if p.is_infinity:
        return Chain.vertical_line(q.z)
    if q.is_infinity:
        return Chain.vertical_line(p.z)
    dz = p.z - q.z
    if dz.is_zero():
        return Chain.vertical_line(p.z)
    i = p.z.i_like()
    # orthogonality of both lifts to (u, m, 1): linear in conj(m), conj(u)
    rhs = (p.z.abs2() - i * p.t - q.z.abs2() + i * q.t) / 2
    m_conj = rhs / dz
    u_conj = -((-(p.z.abs2()) + i * p.t) / 2) - p.z * m_conj
    m = m_conj.conj()
    u = u_conj.conj()
    r2 = 2 * u.re() + m.abs2()
    c = 2 * u.im()
    if r2.sign() <= 0:
        raise GeometryError("degenerate chain: nonpositive squared radius")
    return Chain.finite(m, c, r2)


def chain_height_at(chain: Chain, z: Scalar) -> Scalar:
    """Vertical coordinate of the chain point over projection z.

    Solves the imaginary part of the membership equation; callers must supply
    a projection on (or near, for the float backend) the projected circle.
    """
    if chain.vertical:
        raise GeometryError("vertical chain is parametrized by height")
    return chain.c - 2 * (z * chain.center.conj()).im()


def chain_point(chain: Chain, direction: Scalar) -> HPoint:
    """The chain point projecting to center + R * direction, |direction| = 1.

    The float backend accepts any unit direction.  The exact backend needs
    the radius in the field; it is supported when R^2 is the square of a
    rational, which covers every fixture chain, and raises otherwise.
    """
    if chain.vertical:
        raise GeometryError("vertical chain has no radial parametrization")
    mod = direction.abs2()
    if chain.polar.v3.backend == FLOAT:
        if abs(mod.to_complex() - 1.0) > math.sqrt(max(direction.tol, 1e-15)):
            raise GeometryError("direction must lie on the unit circle")
        radius = Scalar.inexact(math.sqrt(chain.r2.to_complex().real), direction.tol)
    else:
        if not mod.eq(Scalar.exact(1)):
            raise GeometryError("direction must lie on the unit circle")
        r2 = chain.r2.exact_value()
        if not r2.is_rational():
            raise BackendError(
                "exact radial point needs a rational squared radius; "
                "use the float backend for general chains"
            )
        frac = r2.as_fraction()
        num = math.isqrt(frac.numerator)
        den = math.isqrt(frac.denominator)
        if num * num != frac.numerator or den * den != frac.denominator:
            raise BackendError(
                "squared radius is not a rational square; "
                "use the float backend for general chains"
            )
        from fractions import Fraction

        radius = Scalar.exact(Fraction(num, den))
    z = chain.center + radius * direction
    t = chain_height_at(chain, z)
    return HPoint(z, t)


# ---------------------------------------------------------------------------
# elementary inversions
# ---------------------------------------------------------------------------


def inversion_I(p: HPoint) -> HPoint:
    """The complex inversion (z,t) -> (z/(|z|^2 - it), -t/(|z|^4 + t^2)).

    Swaps the origin and infinity; an involution on the boundary.
    """
    if p.is_infinity:
        return HPoint(Scalar.exact(0), Scalar.exact(0))
    if p.z.is_zero() and p.t.is_zero():
        return INFINITY
    i = p.z.i_like()
    denom = p.z.abs2() - i * p.t
    z = p.z / denom
    t = -p.t / (denom * denom.conj()).re()
    return HPoint(z, t)


def iota_x(p: HPoint) -> HPoint:
    """Inversion in the x-axis: (z,t) -> (conj(z), -t); fixes infinity."""
    if p.is_infinity:
        return INFINITY
    return HPoint(p.z.conj(), -p.t)


def hpoint_from_json(data, backend: str = EXACT, tol=None) -> HPoint:
    """Point syntax of the input grammar: "inf" or {"z": expr, "t": expr}."""
    from .scalars import DEFAULT_FLOAT_TOL, parse_scalar

    tol = DEFAULT_FLOAT_TOL if tol is None else tol
    if data == "inf":
        return INFINITY
    if not isinstance(data, dict) or set(data) - {"z", "t"}:
        raise GeometryError(f"bad point {data!r}: want \"inf\" or {{z, t}}")
    z = parse_scalar(data.get("z", 0), backend, tol)
    t = parse_scalar(data.get("t", 0), backend, tol)
    return HPoint(z, t)


