"""Exact linear algebra used throughout the package.

Two kinds of arithmetic appear:

* field arithmetic over Q (fractions.Fraction) or F_p (ints reduced mod p),
  used for span membership, ranks and kernels of coefficient matrices;
* integer arithmetic for Smith normal form, used for homology of chain
  complexes of free abelian groups.

Matrices are plain lists of rows.  Everything here is small (desk scale),
so clarity wins over asymptotics: straight Gaussian elimination and the
textbook Smith reduction with tracked transforms.

Conventions:
* `smith_normal_form(M)` returns (divisors, U, V, D) with U*M*V == D,
  D diagonal, each divisor dividing the next.  The product identity is
  asserted before returning; callers can re-check it cheaply.
* a "vector" is a list of field elements; `solve_in_span` answers the
  question "is t a linear combination of these vectors" exactly.
"""

from __future__ import annotations

from fractions import Fraction


class RationalField:
    """Field operations over Q, elements are Fraction."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of(n):
        return Fraction(n)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return Fraction(1) / a

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Field operations over F_p, elements are ints in [0, p)."""

    def __init__(self, p):
        if p < 2:
            raise ValueError("modulus must be >= 2")
        for d in range(2, int(p**0.5) + 1):
            if p % d == 0:
                raise ValueError("modulus %d is not prime" % p)
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def of(self, n):
        if isinstance(n, Fraction):
            num = n.numerator % self.p
            den = n.denominator % self.p
            if den == 0:
                raise ZeroDivisionError("denominator vanishes mod %d" % self.p)
            return num * pow(den, -1, self.p) % self.p
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()


def rref(rows, field=QQ):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if m[i][c] != field.zero:
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        piv = field.inv(m[r][c])
        m[r] = [field.mul(piv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != field.zero:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows, field=QQ):
    if not rows:
        return 0
    return len(rref(rows, field)[1])


def solve_in_span(vecs, target, field=QQ):
    """Coefficients c with sum(c_i * vecs[i]) == target, or None.

    All vectors must share one length.  Solved by eliminating the matrix
    whose columns are `vecs`, augmented with `target`.
    """
    n = len(target)
    for v in vecs:
        assert len(v) == n
    if all(x == field.zero for x in target):
        return [field.zero] * len(vecs)
    if not vecs:
        return None
    # rows of the augmented system: one per coordinate
    aug = [[vecs[j][i] for j in range(len(vecs))] + [target[i]] for i in range(n)]
    m, pivots = rref(aug, field)
    if len(vecs) in pivots:  # pivot in the augmented column: inconsistent
        return None
    coeffs = [field.zero] * len(vecs)
    for r, c in enumerate(pivots):
        coeffs[c] = m[r][len(vecs)]
    return coeffs


def nullspace(rows, field=QQ):
    """Basis of the right kernel {x : M x = 0}.  Deterministic order."""
    if not rows:
        return []
    ncols = len(rows[0])
    m, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, c in enumerate(pivots):
            v[c] = field.neg(m[r][fc])
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# integer matrices and Smith normal form


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    assert all(len(r) == k for r in a)
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    oi[j] += x * bt[j]
    return out


def transpose(m):
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def smith_normal_form(mat):
    """Smith normal form with transform certificates.

    Returns (divisors, U, V, D) where U*mat*V == D, D is diagonal with
    nonnegative entries d_1 | d_2 | ... and `divisors` lists the nonzero
    diagonal entries.  U and V are products of elementary integer
    operations, hence unimodular.  The certificate product is asserted.
    """
    A = [list(r) for r in mat]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U = identity_matrix(nr)
    V = identity_matrix(nc)

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_add(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def col_add(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def row_negate(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    limit = min(nr, nc)
    while t < limit:
        # deterministic pivot: smallest |entry| in the trailing block,
        # ties by (row, col)
        pivot = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = A[i][j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot != (t, t):
            if pivot[0] != t:
                row_swap(t, pivot[0])
            if pivot[1] != t:
                col_swap(t, pivot[1])
        while True:
            # gcd descent: clear column t then row t; a nonzero remainder
            # becomes the new, strictly smaller pivot
            touched = False
            for i in range(t + 1, nr):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    row_add(i, t, -q)
                    if A[i][t] != 0:
                        row_swap(t, i)
                        touched = True
            for j in range(t + 1, nc):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    col_add(j, t, -q)
                    if A[t][j] != 0:
                        col_swap(t, j)
                        touched = True
            if touched:
                continue
            # pivot must divide the whole trailing block before moving on;
            # this is what makes the diagonal a divisor chain
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if A[i][j] % A[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_negate(t)
        t += 1

    check = mat_mul(mat_mul(U, [list(r) for r in mat]), V)
    assert check == A, "SNF certificate U*M*V != D"
    divisors = []
    for i in range(limit):
        d = A[i][i]
        if d != 0:
            assert d > 0
            if divisors:
                assert d % divisors[-1] == 0, "divisor chain broken"
            divisors.append(d)
        else:
            break
    # everything past the first zero must be zero
    for i in range(len(divisors), limit):
        assert A[i][i] == 0
    return divisors, U, V, A


def integer_rank(mat):
    if not mat or not mat[0]:
        return 0
    return len(smith_normal_form(mat)[0])


def cokernel_structure(mat, ngens):
    """Structure of Z^ngens / column-span(mat) as (free_rank, torsion list).

    `mat` has ngens rows; an empty relation list is allowed.  Torsion is the
    list of invariant factors > 1, in divisor order.
    """
    if not mat or not mat[0]:
        return ngens, []
    assert len(mat) == ngens
    divisors, _, _, _ = smith_normal_form(mat)
    torsion = [d for d in divisors if d > 1]
    return ngens - len(divisors), torsion
