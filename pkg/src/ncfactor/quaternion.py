"""Generalized quaternion algebras over Q: u^2 = alpha, v^2 = beta, uv = -vu.

Elements are coordinate vectors in the basis {1, u, v, uv}.  The
regular representation used throughout matches the 4x4 matrices of the
linear-matrix gadget exactly: rep(z)[i][j] is the coefficient of basis
element j in z * (basis element i), so rep(u) and rep(v) are literally
M_u and M_v.  With this (row) convention rep reverses products:
rep(z1 * z2) = rep(z2) * rep(z1).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ncfactor.fields import QQ
from ncfactor.matrix import Matrix

SEARCH_MAX_BOUND = 5


class Quaternion:
    """Element a0 + a1*u + a2*v + a3*uv of H(alpha, beta)."""

    __slots__ = ("alpha", "beta", "coords")

    def __init__(self, alpha, beta, coords):
        alpha, beta = Fraction(alpha), Fraction(beta)
        if alpha == 0 or beta == 0:
            raise ValueError("quaternion parameters must be nonzero")
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != 4:
            raise ValueError("need four coordinates")
        self.alpha = alpha
        self.beta = beta
        self.coords = coords

    @classmethod
    def basis(cls, alpha, beta):
        e = lambda i: cls(alpha, beta, tuple(1 if j == i else 0 for j in range(4)))
        return e(0), e(1), e(2), e(3)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return (self.alpha == other.alpha and self.beta == other.beta
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.alpha, self.beta, self.coords))

    def __mul__(self, other):
        return hmul(self, other)

    def __add__(self, other):
        self._check(other)
        return Quaternion(self.alpha, self.beta,
                          tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Quaternion(self.alpha, self.beta, tuple(-c for c in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def _check(self, other):
        if self.alpha != other.alpha or self.beta != other.beta:
            raise ValueError("quaternion parameter mismatch")

    def __repr__(self):
        names = ("", "u", "v", "uv")
        parts = []
        for c, name in zip(self.coords, names):
            if c != 0:
                parts.append("%s%s" % (c, name) if name else str(c))
        return "Quaternion(%s)" % (" + ".join(parts) if parts else "0")


def hmul(z1, z2):
    """Product in H(alpha, beta), expanded through the defining relations."""
    z1._check(z2)
    al, be = z1.alpha, z1.beta
    a0, a1, a2, a3 = z1.coords
    b0, b1, b2, b3 = z2.coords
    return Quaternion(al, be, (
        a0 * b0 + al * a1 * b1 + be * a2 * b2 - al * be * a3 * b3,
        a0 * b1 + a1 * b0 - be * a2 * b3 + be * a3 * b2,
        a0 * b2 + a2 * b0 + al * a1 * b3 - al * a3 * b1,
        a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
    ))


def regular_representation(z):
    """Row i holds the coordinates of z * basis_i; rep(u) = M_u, rep(v) = M_v."""
    basis = Quaternion.basis(z.alpha, z.beta)
    return Matrix(QQ, [hmul(z, b).coords for b in basis])


def mu_matrix(alpha):
    a = Fraction(alpha)
    return Matrix(QQ, [
        [Fraction(0), Fraction(1), Fraction(0), Fraction(0)],
        [a, Fraction(0), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
        [Fraction(0), Fraction(0), a, Fraction(0)],
    ])


def mv_matrix(beta):
    b = Fraction(beta)
    return Matrix(QQ, [
        [Fraction(0), Fraction(0), Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(0), Fraction(-1)],
        [b, Fraction(0), Fraction(0), Fraction(0)],
        [Fraction(0), -b, Fraction(0), Fraction(0)],
    ])


def is_zero_divisor(z):
    """A nonzero z kills some nonzero element iff its regular
    representation is singular."""
    if z.is_zero():
        raise ValueError("zero is not classified as a zero divisor")
    return regular_representation(z).det() == 0


def search_zero_divisor(alpha, beta, bound):
    """Exhaustive scan of integer coordinate vectors with entries in
    [-bound, bound]; returns the first zero divisor found, or None."""
    if bound > SEARCH_MAX_BOUND:
        raise ValueError("search bound capped at %d" % SEARCH_MAX_BOUND)
    for coords in product(range(-bound, bound + 1), repeat=4):
        if coords == (0, 0, 0, 0):
            continue
        z = Quaternion(alpha, beta, coords)
        if is_zero_divisor(z):
            return z
    return None
