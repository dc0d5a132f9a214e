"""Linear matrix factorization over Q.

A linear matrix is L = A0 + sum_i A_i x_i with scalar rational
matrices.  This module provides certificate-checked factorization: the
3x3 algorithm (common eigenvector splits with full 2x2 case analysis),
the 4x4 quaternion gadget, and both directions of the zero-divisor /
factorization translation.

A certificate (P, Q, factors) asserts P*L*Q = product of the factors as
matrices over the free algebra; verification multiplies everything out
symbolically, so degree-2 terms must cancel identically.
"""

from __future__ import annotations

from fractions import Fraction

from ncfactor.errors import FormatError
from ncfactor.fields import QQ
from ncfactor.matrix import Matrix, matvec, rational_roots
from ncfactor.ncpoly import Alphabet, NcPoly
from ncfactor.quaternion import (Quaternion, hmul, is_zero_divisor, mu_matrix,
                                 mv_matrix)


class LinearMatrix:
    """L = A0 + sum A_i x_i, all blocks d x d over Q."""

    __slots__ = ("d", "n", "mats")

    def __init__(self, mats):
        mats = tuple(mats)
        if not mats:
            raise ValueError("need at least the constant matrix A0")
        d = mats[0].nrows
        for m in mats:
            if not m.is_square or m.nrows != d or m.field != QQ:
                raise ValueError("coefficient matrices must be square rational, equal size")
        self.d = d
        self.n = len(mats) - 1
        self.mats = mats

    @property
    def constant(self):
        return self.mats[0]

    def coeff(self, i):
        """A_i for 1 <= i <= n."""
        return self.mats[i]

    @property
    def degree(self):
        return 1 if any(not m.is_zero() for m in self.mats[1:]) else 0

    def lmul(self, p):
        return LinearMatrix([p * m for m in self.mats])

    def rmul(self, q):
        return LinearMatrix([m * q for m in self.mats])

    def conjugate(self, p):
        pinv = p.inverse()
        if pinv is None:
            raise ValueError("conjugation by a singular matrix")
        return LinearMatrix([p * m * pinv for m in self.mats])

    def __eq__(self, other):
        if not isinstance(other, LinearMatrix):
            return NotImplemented
        return self.mats == other.mats

    def __repr__(self):
        return "LinearMatrix(d=%d, n=%d)" % (self.d, self.n)

    def nc_matrix(self):
        """Entries as degree<=1 free-algebra polynomials over x_1..x_n."""
        alphabet = Alphabet.nvars(self.n) if self.n else Alphabet.nvars(1)
        out = []
        for i in range(self.d):
            row = []
            for j in range(self.d):
                terms = [((), self.mats[0][i][j])]
                for k in range(1, self.n + 1):
                    terms.append(((k - 1,), self.mats[k][i][j]))
                row.append(NcPoly(alphabet, QQ, terms))
            out.append(tuple(row))
        return tuple(out)

    def is_unit(self):
        """Invertible over the polynomial ring: invertible constant term and
        nilpotent normalized coefficients (all length-d products vanish)."""
        a0inv = self.constant.inverse()
        if a0inv is None:
            return False
        current = [a0inv * m for m in self.mats[1:] if not (a0inv * m).is_zero()]
        gens = list(current)
        for _ in range(self.d - 1):
            if not current:
                return True
            nxt = []
            for m in current:
                for g in gens:
                    prod = m * g
                    if not prod.is_zero():
                        nxt.append(prod)
            current = nxt
        return not current

    # -- serialization -------------------------------------------------

    def to_text(self):
        lines = ["linmat d=%d n=%d field=Q" % (self.d, self.n)]
        for m in self.mats:
            for row in m.rows:
                lines.append(" ".join(str(x) for x in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("linmat "):
            raise FormatError("missing linmat header")
        head = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
        try:
            d, n = int(head["d"]), int(head["n"])
            if head.get("field", "Q") != "Q":
                raise FormatError("linear matrices are rational only")
        except (KeyError, ValueError) as exc:
            raise FormatError("bad linmat header") from exc
        body = lines[1:]
        if len(body) != (n + 1) * d:
            raise FormatError("expected %d matrix rows, got %d" % ((n + 1) * d, len(body)))
        mats = []
        for b in range(n + 1):
            rows = []
            for i in range(d):
                entries = body[b * d + i].split()
                if len(entries) != d:
                    raise FormatError("bad matrix row %r" % body[b * d + i])
                rows.append([Fraction(x) for x in entries])
            mats.append(Matrix(QQ, rows))
        return cls(mats)


class FactorizationCert:
    """Invertible P, Q and ordered linear factors with P*L*Q = product."""

    __slots__ = ("p", "q", "factors", "unit_flags")

    def __init__(self, p, q, factors, unit_flags):
        factors = tuple(factors)
        unit_flags = tuple(unit_flags)
        if len(factors) != len(unit_flags):
            raise ValueError("one unit flag per factor")
        self.p = p
        self.q = q
        self.factors = factors
        self.unit_flags = unit_flags

    def nontrivial_count(self):
        return sum(1 for flag in self.unit_flags if not flag)

    def __repr__(self):
        return "FactorizationCert(%d factors, %d nontrivial)" % (
            len(self.factors), self.nontrivial_count())

    def to_text(self):
        d = self.p.nrows
        n = max((f.n for f in self.factors), default=0)
        lines = ["cert d=%d n=%d field=Q" % (d, n), "P"]
        lines.extend(" ".join(str(x) for x in row) for row in self.p.rows)
        lines.append("Q")
        lines.extend(" ".join(str(x) for x in row) for row in self.q.rows)
        for factor, flag in zip(self.factors, self.unit_flags):
            lines.append("factor unit=%d" % (1 if flag else 0))
            for m in factor.mats:
                lines.extend(" ".join(str(x) for x in row) for row in m.rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("cert "):
            raise FormatError("missing cert header")
        head = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
        try:
            d, n = int(head["d"]), int(head["n"])
        except (KeyError, ValueError) as exc:
            raise FormatError("bad cert header") from exc

        def read_matrix(pos):
            rows = []
            for i in range(d):
                entries = lines[pos + i].split()
                if len(entries) != d:
                    raise FormatError("bad matrix row %r" % lines[pos + i])
                rows.append([Fraction(x) for x in entries])
            return Matrix(QQ, rows), pos + d

        pos = 1
        if lines[pos] != "P":
            raise FormatError("expected P block")
        p, pos = read_matrix(pos + 1)
        if lines[pos] != "Q":
            raise FormatError("expected Q block")
        q, pos = read_matrix(pos + 1)
        factors, flags = [], []
        while pos < len(lines):
            if not lines[pos].startswith("factor unit="):
                raise FormatError("expected factor block at %r" % lines[pos])
            flags.append(lines[pos].split("=", 1)[1] == "1")
            pos += 1
            mats = []
            for _ in range(n + 1):
                m, pos = read_matrix(pos)
                mats.append(m)
            factors.append(LinearMatrix(mats))
        return cls(p, q, factors, flags)


class Irreducible:
    """Verdict that a linear matrix admits no nontrivial factorization."""

    __slots__ = ("reason",)

    def __init__(self, reason):
        self.reason = reason

    def __repr__(self):
        return "Irreducible(%s)" % self.reason


# -- symbolic matrix products over the free algebra --------------------

def nc_matmul(a, b):
    size = len(a)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = None
            for k in range(size):
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _nc_const(m, alphabet):
    return tuple(tuple(NcPoly.constant(alphabet, QQ, m[i][j])
                       for j in range(m.ncols)) for i in range(m.nrows))


def verify_cert(cert, L):
    """Exact check: P, Q invertible and P*L*Q = product of factors as
    free-algebra matrices (quadratic terms must cancel identically)."""
    if cert.p.nrows != L.d or cert.q.nrows != L.d:
        raise ValueError("certificate dimension mismatch")
    if cert.p.inverse() is None or cert.q.inverse() is None:
        return False
    n = max([L.n] + [f.n for f in cert.factors])
    alphabet = Alphabet.nvars(n) if n else Alphabet.nvars(1)

    def lift(lin):
        padded = list(lin.mats) + [Matrix.zeros(QQ, lin.d, lin.d)] * (n - lin.n)
        return LinearMatrix(padded).nc_matrix()

    lhs = nc_matmul(_nc_const(cert.p, alphabet),
                    nc_matmul(lift(L), _nc_const(cert.q, alphabet)))
    rhs = _nc_const(Matrix.identity(QQ, L.d), alphabet)
    for factor in cert.factors:
        if factor.d != L.d:
            raise ValueError("factor dimension mismatch")
        rhs = nc_matmul(rhs, lift(factor))
    return lhs == rhs


def product_linear(factors):
    """Product of linear matrices that stays linear (degree-2 coefficient
    blocks must vanish pairwise, as in the unit-absorbing block forms)."""
    factors = list(factors)
    if not factors:
        raise ValueError("empty product")
    acc = factors[0]
    for nxt in factors[1:]:
        if acc.d != nxt.d:
            raise ValueError("factor dimension mismatch")
        n = max(acc.n, nxt.n)
        zero = Matrix.zeros(QQ, acc.d, acc.d)
        a = list(acc.mats[1:]) + [zero] * (n - acc.n)
        b = list(nxt.mats[1:]) + [zero] * (n - nxt.n)
        for ai in a:
            for bj in b:
                if not (ai * bj).is_zero():
                    raise ValueError("product of factors is not linear")
        mats = [acc.constant * nxt.constant]
        for i in range(n):
            mats.append(acc.constant * b[i] + a[i] * nxt.constant)
        acc = LinearMatrix(mats)
    return acc


def is_monic(L):
    """Full row rank of [A1|...|An] and full column rank of the stack."""
    if L.n == 0:
        return False
    h = L.mats[1]
    v = L.mats[1]
    for m in L.mats[2:]:
        h = h.hstack(m)
        v = v.vstack(m)
    return h.rank() == L.d and v.rank() == L.d


# -- common eigenvector machinery --------------------------------------

def _scalar_on(a, s):
    """lambda with a*s = lambda*s for the subspace basis matrix s, or None."""
    prod = a * s
    lam = None
    for i in range(s.nrows):
        for j in range(s.ncols):
            if s[i][j] != 0:
                lam = prod[i][j] / s[i][j]
                break
        if lam is not None:
            break
    if lam is None:
        return None
    return lam if prod == s.scale(lam) else None


def _normalize_line(w):
    for c in w:
        if c != 0:
            return tuple(x / c for x in w)
    return None


def common_eigenlines(mats, side="right"):
    """All lines spanned by common eigenvectors of the matrices (one
    representative per all-scalar subspace), each with its eigenvalue
    tuple.  side='left' works with row vectors via transposes."""
    if not mats:
        raise ValueError("need at least one matrix")
    work = [m.transpose() for m in mats] if side == "left" else list(mats)
    d = work[0].nrows
    found = []

    def rec(s, idx):
        pick = None
        for i in range(idx, len(work)):
            if _scalar_on(work[i], s) is None:
                pick = i
                break
        if pick is None:
            found.append(s.col(0))
            return
        a = work[pick]
        for lam, _mult in rational_roots(a.charpoly()):
            shifted = a * s - s.scale(lam)
            kernel = shifted.nullspace()
            if not kernel:
                continue
            cols = [matvec(s, k) for k in kernel]
            rec(Matrix.from_cols(QQ, cols), pick + 1)

    rec(Matrix.identity(QQ, d), 0)

    out = []
    seen = set()
    for w in found:
        w = _normalize_line(w)
        if w is None or w in seen:
            continue
        lams = []
        ok = True
        for m in work:
            lam = _scalar_on(m, Matrix.from_cols(QQ, [w]))
            if lam is None:
                ok = False
                break
            lams.append(lam)
        if ok:
            seen.add(w)
            out.append((w, tuple(lams)))
    out.sort()
    return out


def common_eigenvector(mats, side="right"):
    """First common eigenvector (with eigenvalues), or None; for
    side='left' the vector is a row vector w with w*A_i = lambda_i*w."""
    for m in mats:
        if m.nrows > 3:
            raise ValueError("common eigenvector search capped at dimension 3")
    lines = common_eigenlines(mats, side)
    if not lines:
        return None
    return lines[0]


# -- split/assembly helpers ---------------------------------------------

def _complete_basis(vectors, d):
    """Extend independent vectors to a basis using standard basis vectors."""
    rows = [tuple(v) for v in vectors]
    m = Matrix(QQ, rows) if rows else None
    rank = m.rank() if rows else 0
    assert rank == len(rows), "expected independent vectors"
    for i in range(d):
        if len(rows) == d:
            break
        e = tuple(Fraction(1) if j == i else Fraction(0) for j in range(d))
        cand = Matrix(QQ, rows + [e])
        if cand.rank() == len(rows) + 1:
            rows.append(e)
    assert len(rows) == d
    return rows


def _block(m, r0, r1, c0, c1):
    return Matrix(QQ, [[m[i][j] for j in range(c0, c1)] for i in range(r0, r1)])


def _conj_split(L, p, k):
    """Conjugate L by p and slice into blocks with top-left size k; the
    top-right block must vanish in every coefficient."""
    conj = L.conjugate(p)
    d = L.d
    for m in conj.mats[1:]:
        assert _block(m, 0, k, k, d).is_zero(), "split subspace is not invariant"
    tops = [_block(m, 0, k, 0, k) for m in conj.mats]
    bottoms = [_block(m, k, d, k, d) for m in conj.mats]
    ds = [_block(m, k, d, 0, k) for m in conj.mats[1:]]
    return LinearMatrix(tops), ds, LinearMatrix(bottoms)


def _embed_top(m2, d):
    """2x2 scalar matrix into the top-left of I_d."""
    out = [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
    for i in range(m2.nrows):
        for j in range(m2.ncols):
            out[i][j] = m2[i][j]
    return Matrix(QQ, out)


def _embed_bottom(m2, d):
    out = [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
    off = d - m2.nrows
    for i in range(m2.nrows):
        for j in range(m2.ncols):
            out[off + i][off + j] = m2[i][j]
    return Matrix(QQ, out)


def _place_block(m, d, row0, col0):
    """m copied into a d x d zero matrix at (row0, col0)."""
    rows = [[Fraction(0)] * d for _ in range(d)]
    for i in range(m.nrows):
        for j in range(m.ncols):
            rows[row0 + i][col0 + j] = m[i][j]
    return Matrix(QQ, rows)


def _lift_factor(factor, d, where):
    """Lift a k x k linear factor to d x d: constant block inside an
    identity, coefficient blocks inside zeros."""
    off = 0 if where == "top" else d - factor.d
    rows = [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
    for i in range(factor.d):
        for j in range(factor.d):
            rows[off + i][off + j] = factor.mats[0][i][j]
    mats = [Matrix(QQ, rows)]
    for m in factor.mats[1:]:
        mats.append(_place_block(m, d, off, off))
    return LinearMatrix(mats)


def _diag_factor(block, d, where):
    """diag(A, I) or diag(I, B) as a d x d linear matrix."""
    return _lift_factor(block, d, where)


def _unip_factor(ds, d, k):
    """[[I,0],[D,I]] with D = sum D_i x_i sitting under the top-left k block."""
    mats = [Matrix.identity(QQ, d)]
    for di in ds:
        mats.append(_place_block(di, d, k, 0))
    return LinearMatrix(mats)


def _scalar_line_factor(lams, d, pos):
    """Diagonal factor with 1 + sum lam_i x_i at position pos, 1 elsewhere."""
    mats = [Matrix.identity(QQ, d)]
    for lam in lams:
        rows = [[Fraction(0)] * d for _ in range(d)]
        rows[pos][pos] = lam
        mats.append(Matrix(QQ, rows))
    return LinearMatrix(mats)


def _all_scalar(mats):
    """Per-matrix lambdas when every coefficient matrix is lambda*I."""
    lams = []
    d = mats[0].nrows
    ident = Matrix.identity(QQ, d)
    for m in mats:
        lam = _scalar_on(m, ident)
        if lam is None:
            return None
        lams.append(lam)
    return lams


def _charpoly_witness(L):
    """Index of a coefficient matrix with Q-irreducible characteristic
    polynomial (degree 2 or 3: irreducible iff no rational root)."""
    for i in range(1, L.n + 1):
        m = L.coeff(i)
        if m.is_zero():
            continue
        if not rational_roots(m.charpoly()):
            return i
    return None


def _factor_small(L):
    """Complete factorization data (p, q, factors, flags) for a d<=2
    linear matrix with identity constant term.  Always returns a valid
    certificate decomposition; the factor list may be a single atom."""
    d = L.d
    ident = Matrix.identity(QQ, d)
    if L.degree == 0:
        return ident, ident, [], []
    if d == 1:
        return ident, ident, [L], [False]

    lams = _all_scalar(L.mats[1:])
    if lams is not None:
        # B = diag(1 + sum lam x, 1) * diag(1, 1 + sum lam x)
        return ident, ident, [_scalar_line_factor(lams, 2, 0),
                              _scalar_line_factor(lams, 2, 1)], [False, False]
    if _charpoly_witness(L) is not None:
        return ident, ident, [L], [False]

    best = None
    for w, _lams in common_eigenlines(L.mats[1:], "right"):
        p = _reorder_for_right_line(w, d)
        top, ds, bottom = _conj_split(L, p, d - 1)
        factors, flags = [], []
        if top.degree:
            factors.append(_diag_factor(top, d, "top"))
            flags.append(False)
        if any(not x.is_zero() for x in ds):
            factors.append(_unip_factor(ds, d, d - 1))
            flags.append(True)
        if bottom.degree:
            factors.append(_diag_factor(bottom, d, "bottom"))
            flags.append(False)
        count = sum(1 for f in flags if not f)
        cand = (count, p, factors, flags)
        if best is None or count > best[0]:
            best = cand
        if count == 2:
            break
    if best is None:
        return ident, ident, [L], [False]
    _count, p, factors, flags = best
    return p, p.inverse(), factors, flags


def _reorder_for_right_line(w, d):
    """Invertible p with w spanning the last column of p^-1, so the
    conjugated coefficients are block-lower-triangular with the
    eigen-direction at the bottom."""
    cols = _complete_basis([w], d)
    # place w last
    pinv = Matrix.from_cols(QQ, cols[1:] + [cols[0]])
    return pinv.inverse()


def _left_line_basis_change(w, d):
    """Invertible p whose first row is the left eigenvector w."""
    rows = _complete_basis([w], d)
    return Matrix(QQ, rows)


def factor_3x3(L):
    """The 3x3 factorization algorithm over Q.

    Returns a verified FactorizationCert when L splits into at least two
    nontrivial linear factors, otherwise Irreducible with a reason tag:
    'charpoly-irreducible' (some coefficient has a Q-irreducible
    characteristic polynomial), 'unit-linear-matrix', or
    'exhausted-eigen-search'.
    """
    if L.d != 3:
        raise ValueError("factor_3x3 expects 3x3 linear matrices")
    ident = Matrix.identity(QQ, 3)
    pre = ident
    if L.constant != ident:
        inv = L.constant.inverse()
        if inv is None:
            raise ValueError("constant term must be invertible")
        pre = inv
        L = L.lmul(inv)

    if L.degree == 0 or L.is_unit():
        return Irreducible("unit-linear-matrix")
    witness = _charpoly_witness(L)
    if witness is not None:
        return Irreducible("charpoly-irreducible")

    lams = _all_scalar(L.mats[1:])
    if lams is not None:
        cert = FactorizationCert(pre, ident,
                                 [_scalar_line_factor(lams, 3, pos) for pos in range(3)],
                                 [False, False, False])
        assert verify_cert(cert, LinearMatrix([m for m in _original(L, pre)]))
        return cert

    candidates = []
    for w, _lams in common_eigenlines(L.mats[1:], "right"):
        candidates.append(("right", w))
    for w, _lams in common_eigenlines(L.mats[1:], "left"):
        candidates.append(("left", w))

    original = LinearMatrix(list(_original(L, pre)))
    best = None
    for side, w in candidates:
        if side == "right":
            p = _reorder_for_right_line(w, 3)
            k = 2
        else:
            p = _left_line_basis_change(w, 3)
            k = 1
        top, ds, bottom = _conj_split(L, p, k)
        block = top if k == 2 else bottom
        p2, q2, sub_factors, sub_flags = _factor_small(block)
        factors, flags = [], []
        if k == 2:
            big_p = _embed_top(p2, 3) * p * pre
            big_q = p.inverse() * _embed_top(q2, 3)
            for f, flag in zip(sub_factors, sub_flags):
                factors.append(_lift_factor(f, 3, "top"))
                flags.append(flag)
            moved = [di * q2 for di in ds]
            if any(not x.is_zero() for x in moved):
                factors.append(_unip_factor(moved, 3, 2))
                flags.append(True)
            if bottom.degree:
                factors.append(_diag_factor(bottom, 3, "bottom"))
                flags.append(False)
        else:
            big_p = _embed_bottom(p2, 3) * p * pre
            big_q = p.inverse() * _embed_bottom(q2, 3)
            if top.degree:
                factors.append(_diag_factor(top, 3, "top"))
                flags.append(False)
            moved = [p2 * di for di in ds]
            if any(not x.is_zero() for x in moved):
                factors.append(_unip_factor(moved, 3, 1))
                flags.append(True)
            for f, flag in zip(sub_factors, sub_flags):
                factors.append(_lift_factor(f, 3, "bottom"))
                flags.append(flag)
        cert = FactorizationCert(big_p, big_q, factors, flags)
        count = cert.nontrivial_count()
        assert verify_cert(cert, original), "assembled certificate must verify"
        if best is None or count > best.nontrivial_count():
            best = cert
        if count >= 2:
            break

    if best is not None and best.nontrivial_count() >= 2:
        return best
    return Irreducible("exhausted-eigen-search")


def _original(L, pre):
    """Undo the constant-term normalization: pre * original = normalized L."""
    inv = pre.inverse()
    return [inv * m for m in L.mats]


# -- quaternion gadget ---------------------------------------------------

def quaternion_linmat(alpha, beta):
    """L = I + M_u x + M_v y with the regular-representation matrices."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == 0 or beta == 0:
        raise ValueError("quaternion parameters must be nonzero")
    return LinearMatrix([Matrix.identity(QQ, 4), mu_matrix(alpha), mv_matrix(beta)])


def zdiv_to_factorization(alpha, beta, z):
    """From a zero divisor z to a verified three-factor block certificate.

    The coordinate rows of the left ideal {x*z} are closed under the
    transition of M_u and M_v, so a basis of that ideal (completed to a
    full basis) conjugates L into block-lower-triangular form, which
    splits as diag(A,I) * [[I,0],[D,I]] * diag(I,B).
    """
    if not is_zero_divisor(z):
        raise ValueError("z must be a zero divisor")
    L = quaternion_linmat(alpha, beta)
    basis = Quaternion.basis(alpha, beta)
    rows = []
    for b in basis:
        cand = hmul(b, z).coords
        if rows:
            m = Matrix(QQ, rows + [cand])
            if m.rank() == len(rows):
                continue
        rows.append(cand)
    r = len(rows)
    assert 1 <= r <= 3, "a zero divisor generates a proper nonzero left ideal"
    p = Matrix(QQ, _complete_basis(rows, 4))
    top, ds, bottom = _conj_split(L, p, r)
    factors = [_diag_factor(top, 4, "top")]
    flags = [False]
    if any(not x.is_zero() for x in ds):
        factors.append(_unip_factor(ds, 4, r))
        flags.append(True)
    factors.append(_diag_factor(bottom, 4, "bottom"))
    flags.append(False)
    cert = FactorizationCert(p, p.inverse(), factors, flags)
    assert verify_cert(cert, L), "gadget certificate must verify"
    return cert


def factorization_to_zdiv(alpha, beta, f, g):
    """From a nontrivial factorization L = F*G to a zero divisor pair.

    After normalizing G(0,0) = I the quadratic cancellations force
    F_a * G_b = 0, so W = colspan(G_x) + colspan(G_y) is a proper nonzero
    subspace with M_u W <= W and M_v W <= W.  Its annihilator is the
    coordinate space of a proper left ideal, whose elements have
    linearly dependent left orbits {w, uw, vw, uvw}; the dependency
    coefficients give the complementary zero divisor.
    """
    L = quaternion_linmat(alpha, beta)
    if f.d != 4 or g.d != 4:
        raise ValueError("expected 4x4 factors")
    ident4 = Matrix.identity(QQ, 4)
    cert = FactorizationCert(ident4, ident4, [f, g], [False, False])
    if not verify_cert(cert, L):
        raise ValueError("F*G does not equal the quaternion linear matrix")
    for factor in (f, g):
        if factor.degree == 0 or factor.is_unit():
            raise ValueError("unit factor: the factorization is trivial")

    g0inv = g.constant.inverse()
    assert g0inv is not None, "G(0,0) is invertible since F0*G0 = I"
    fn = f.rmul(g.constant)
    gn = g.lmul(g0inv)
    assert fn.constant == ident4 and gn.constant == ident4
    pad = lambda lin: list(lin.mats[1:]) + [Matrix.zeros(QQ, 4, 4)] * (2 - lin.n)
    fx, fy = pad(fn)
    gx, gy = pad(gn)
    for a in (fx, fy):
        for b_ in (gx, gy):
            assert (a * b_).is_zero(), "degree-2 coefficients must cancel"

    cols = []
    for m in (gx, gy):
        for j in range(4):
            c = m.col(j)
            if any(x != 0 for x in c):
                if cols:
                    probe = Matrix.from_cols(QQ, cols + [c])
                    if probe.rank() == len(cols):
                        continue
                cols.append(c)
    assert cols, "a non-unit right factor has nonzero linear part"
    assert len(cols) < 4, "a non-unit left factor forces a proper subspace"
    w_basis = Matrix.from_cols(QQ, cols)
    for m in (mu_matrix(alpha), mv_matrix(beta)):
        prod = m * w_basis
        joint = w_basis.hstack(prod)
        assert joint.rank() == len(cols), "W must be invariant under M_u and M_v"

    e1 = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    candidates = sorted(cols, key=lambda c: _normalize_line(c) == e1)
    for w in candidates:
        z2 = Quaternion(alpha, beta, w)
        pair = _left_orbit_dependency(z2)
        if pair is not None:
            return pair
    # Fall back to the annihilator of W: the coordinate space of a left
    # ideal, where the orbit dependency always exists.
    perp = Matrix(QQ, [tuple(c) for c in cols]).nullspace()
    for s in perp:
        z2 = Quaternion(alpha, beta, s)
        pair = _left_orbit_dependency(z2)
        if pair is not None:
            return pair
    raise AssertionError("no zero divisor found; the factorization was not nontrivial")


def _left_orbit_dependency(z2):
    """Solve gamma0*w + gamma1*u*w + gamma2*v*w + gamma3*uv*w = 0."""
    basis = Quaternion.basis(z2.alpha, z2.beta)
    orbit = [hmul(b, z2).coords for b in basis]
    kernel = Matrix.from_cols(QQ, orbit).nullspace()
    if not kernel:
        return None
    gamma = kernel[0]
    z1 = Quaternion(z2.alpha, z2.beta, gamma)
    assert not z1.is_zero() and not z2.is_zero()
    assert hmul(z1, z2).is_zero(), "dependency coefficients must annihilate w"
    return z1, z2
