"""Exact arithmetic for F_q (q = p^s) and its extension L = F_{q^n}.

Construction is deterministic: every extension is cut out by the
lexicographically smallest monic irreducible of the right degree, where
coefficient vectors are compared constant term first.  Two towers built
from the same (p, s, n) are therefore identical, and the one built by
:func:`build_tower` is additionally cached and shared.

Elements are plain ints.  An F_q element is the base-p digit encoding of
its coefficient vector over F_p; an element of L is the base-q digit
encoding of its coefficient vector over F_q.  In particular F_q sits
inside L as the ints below q.  Towers precompute discrete-log and
Frobenius tables, so field operations are table lookups; values are
immutable and safe to share across worker processes.
"""

import itertools
from functools import lru_cache

# Largest |L| for which tables are built.  Census code imposes its own,
# smaller limit; this one only has to accommodate the splitting-field
# towers used for torsion computations (and must allow at least 5^4).
MAX_FIELD_ORDER = 8192

# Largest base field F_q; keeps the q x q tables small.
MAX_BASE_ORDER = 128


class SizeBoundError(ValueError):
    """Requested object exceeds the documented enumeration bounds."""


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n):
    """Sorted distinct prime factors of n >= 1."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Minimal polynomial search.  These helpers work on coefficient tuples
# (low degree first, no trailing zeros) over an abstract coefficient
# field given by (add, mul, neg, inv) callables, so the same code finds
# the base polynomial over F_p and the top polynomial over F_q.


def _trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mod(f, g, add, mul, neg, inv):
    """Remainder of f by g (g nonzero) over the given coefficient field."""
    r = list(f)
    dg = len(g) - 1
    inv_lc = inv(g[-1])
    while len(r) - 1 >= dg and r:
        if r[-1] == 0:
            r.pop()
            continue
        k = len(r) - 1 - dg
        coef = mul(r[-1], inv_lc)
        for i in range(dg + 1):
            r[k + i] = add(r[k + i], neg(mul(coef, g[i])))
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def _poly_is_irreducible(f, order, add, mul, neg, inv):
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    d = len(f) - 1
    if d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for tail in itertools.product(range(order), repeat=e):
            g = tail + (1,)
            if not _poly_mod(f, g, add, mul, neg, inv):
                return False
    return True


def _lex_min_irreducible(degree, order, add, mul, neg, inv):
    """Lex-smallest monic irreducible of the given degree.

    Candidates are scanned with the constant coefficient varying slowest,
    which is exactly lexicographic order on coefficient vectors read low
    degree first.
    """
    for tail in itertools.product(range(order), repeat=degree):
        f = tail + (1,)
        if _poly_is_irreducible(f, order, add, mul, neg, inv):
            return f
    raise RuntimeError("no irreducible of degree %d found" % degree)


# ---------------------------------------------------------------------------


class Fq:
    """The field F_q, q = p^s, with full arithmetic tables."""

    def __init__(self, p, s):
        if not is_prime(p):
            raise ValueError("characteristic %r is not prime" % (p,))
        if s < 1:
            raise ValueError("extension degree s must be >= 1")
        q = p ** s
        if q > MAX_BASE_ORDER:
            raise SizeBoundError("base field order %d exceeds %d" % (q, MAX_BASE_ORDER))
        self.p = p
        self.s = s
        self.q = q

        padd = lambda a, b: (a + b) % p
        pmul = lambda a, b: (a * b) % p
        pneg = lambda a: (-a) % p
        pinv = lambda a: pow(a, p - 2, p)
        if s == 1:
            self.min_poly = (0, 1)  # the polynomial x
        else:
            self.min_poly = _lex_min_irreducible(s, p, padd, pmul, pneg, pinv)

        digits = [self._int_to_vec(v) for v in range(q)]
        self._digits = digits

        add = [[0] * q for _ in range(q)]
        for a in range(q):
            da = digits[a]
            for b in range(a, q):
                db = digits[b]
                v = 0
                for i in range(s - 1, -1, -1):
                    v = v * p + (da[i] + db[i]) % p
                add[a][b] = v
                add[b][a] = v
        self.add_table = add
        self.neg_table = [self._vec_to_int([(-d) % p for d in digits[a]]) for a in range(q)]

        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = digits[a]
            for b in range(a, q):
                db = digits[b]
                prod = [0] * (2 * s - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                rem = _poly_mod(_trim(prod), self.min_poly, padd, pmul, pneg, pinv)
                v = self._vec_to_int(rem + (0,) * (s - len(rem)))
                mul[a][b] = v
                mul[b][a] = v
        self.mul_table = mul

        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self.inv_table = inv

    def _int_to_vec(self, v):
        out = []
        for _ in range(self.s):
            out.append(v % self.p)
            v //= self.p
        return tuple(out)

    def _vec_to_int(self, vec):
        v = 0
        for d in reversed(vec):
            v = v * self.p + d
        return v

    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a):
        return self.neg_table[a]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        return self.inv_table[a]

    def pow(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            return 0
        r = 1
        base = a
        while e:
            if e & 1:
                r = self.mul_table[r][base]
            base = self.mul_table[base][base]
            e >>= 1
        return r

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def is_square(self, a):
        if a == 0:
            return True
        if self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def __eq__(self, other):
        return isinstance(other, Fq) and (self.p, self.s) == (other.p, other.s)

    def __hash__(self):
        return hash((Fq, self.p, self.s))

    def __repr__(self):
        return "Fq(p=%d, s=%d)" % (self.p, self.s)


@lru_cache(maxsize=None)
def _build_fq(p, s):
    return Fq(p, s)


class FieldTower:
    """F_q together with L = F_{q^n} and the q-power Frobenius."""

    def __init__(self, fq, n):
        if n < 1:
            raise ValueError("top extension degree must be >= 1")
        order = fq.q ** n
        if order > MAX_FIELD_ORDER:
            raise SizeBoundError(
                "field order %d exceeds the supported bound %d" % (order, MAX_FIELD_ORDER))
        self.fq = fq
        self.p = fq.p
        self.s = fq.s
        self.q = fq.q
        self.n = n
        self.order = order

        if n == 1:
            self.top_min_poly = (0, 1)
        else:
            self.top_min_poly = _lex_min_irreducible(
                n, fq.q, fq.add, fq.mul, fq.neg, fq.inv)

        q = fq.q
        digits = []
        for v in range(order):
            vec = []
            x = v
            for _ in range(n):
                vec.append(x % q)
                x //= q
            digits.append(tuple(vec))
        self._digits = digits

        self._addtab = None
        if order <= 256:
            addq = fq.add_table
            tab = [[0] * order for _ in range(order)]
            for a in range(order):
                da = digits[a]
                for b in range(a, order):
                    db = digits[b]
                    v = 0
                    for i in range(n - 1, -1, -1):
                        v = v * q + addq[da[i]][db[i]]
                    tab[a][b] = v
                    tab[b][a] = v
            self._addtab = tab

        gen = self._find_generator()
        exp = [0] * (order - 1)
        log = [0] * order  # log[0] unused
        x = 1
        for k in range(order - 1):
            exp[k] = x
            log[x] = k
            x = self._raw_mul(x, gen)
        if x != 1:
            raise RuntimeError("generator order mismatch")
        self.generator = gen
        self._exp = exp
        self._log = log

        m1 = fq.neg_table[1]  # -1 as an element of F_q inside L
        self._negtab = [self.mul(a, m1) if m1 != 1 else a for a in range(order)]

        # Frobenius tables: _frob[k][x] = x^(q^k) for 0 <= k < n.
        frob = [list(range(order))]
        for k in range(1, n):
            prev = frob[-1]
            cur = [0] * order
            for x in range(1, order):
                cur[x] = exp[(log[prev[x]] * q) % (order - 1)]
            frob.append(cur)
        self._frob = frob

    # -- construction helpers ------------------------------------------------

    def _raw_mul(self, a, b):
        """Product in L by polynomial multiplication; used before tables exist."""
        fq = self.fq
        n = self.n
        da = self._digits[a]
        db = self._digits[b]
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                row = fq.mul_table[x]
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = fq.add_table[prod[i + j]][row[y]]
        # reduce modulo top_min_poly (monic)
        top = self.top_min_poly
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(n):
                    ti = top[i]
                    if ti:
                        prod[k - n + i] = fq.add_table[prod[k - n + i]][
                            fq.neg_table[fq.mul_table[c][ti]]]
        v = 0
        for i in range(n - 1, -1, -1):
            v = v * self.q + prod[i]
        return v

    def _raw_pow(self, a, e):
        r = 1
        base = a
        while e:
            if e & 1:
                r = self._raw_mul(r, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return r

    def _find_generator(self):
        m = self.order - 1
        if m == 1:
            return 1
        checks = [m // ell for ell in prime_factors(m)]
        for x in range(2, self.order):
            if all(self._raw_pow(x, e) != 1 for e in checks):
                return x
        raise RuntimeError("no multiplicative generator found")

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        t = self._addtab
        if t is not None:
            return t[a][b]
        da = self._digits[a]
        db = self._digits[b]
        addq = self.fq.add_table
        v = 0
        for i in range(self.n - 1, -1, -1):
            v = v * self.q + addq[da[i]][db[i]]
        return v

    def neg(self, a):
        return self._negtab[a]

    def sub(self, a, b):
        return self.add(a, self._negtab[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def frob(self, a, k=1):
        """a^(q^k); the q-power map iterated k times."""
        return self._frob[k % self.n][a]

    def elements(self):
        return range(self.order)

    def units(self):
        return range(1, self.order)

    def vector(self, a):
        """Coefficient vector of a over F_q, low degree first."""
        return self._digits[a]

    def from_vector(self, vec):
        if len(vec) != self.n:
            raise ValueError("expected a length-%d vector" % self.n)
        v = 0
        for d in reversed(vec):
            if not 0 <= d < self.q:
                raise ValueError("coefficient %r out of range for F_%d" % (d, self.q))
            v = v * self.q + d
        return v

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.tower is not self:
                raise ValueError("element belongs to a different tower")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_vector(value))
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError("value %d out of range for a field of order %d"
                             % (value, self.order))
        return FieldElement(self, value)

    def __eq__(self, other):
        return (isinstance(other, FieldTower)
                and (self.p, self.s, self.n) == (other.p, other.s, other.n))

    def __hash__(self):
        return hash((FieldTower, self.p, self.s, self.n))

    def __repr__(self):
        return "FieldTower(p=%d, s=%d, n=%d)" % (self.p, self.s, self.n)


@lru_cache(maxsize=None)
def build_tower(p, s, n):
    """The canonical tower F_p <= F_q <= L for q = p^s, |L| = q^n.

    Repeated calls return the identical cached object.
    """
    return FieldTower(_build_fq(p, s), n)


class FieldElement:
    """An element of L carried with its tower; thin wrapper over the int."""

    __slots__ = ("tower", "value")

    def __init__(self, tower, value):
        self.tower = tower
        self.value = value

    def vector(self):
        return self.tower.vector(self.value)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.tower is not self.tower:
                raise ValueError("elements from different towers")
            return other.value
        return self.tower.element(other).value

    def __add__(self, other):
        return FieldElement(self.tower, self.tower.add(self.value, self._coerce(other)))

    def __sub__(self, other):
        return FieldElement(self.tower, self.tower.sub(self.value, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.tower, self.tower.mul(self.value, self._coerce(other)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, e):
        return FieldElement(self.tower, self.tower.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.tower, self.tower.inv(self.value))

    def frobenius(self, k=1):
        return FieldElement(self.tower, self.tower.frob(self.value, k))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.tower == other.tower and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.tower, self.value))

    def __str__(self):
        return "[%s]" % ",".join(str(d) for d in self.vector())

    def __repr__(self):
        return "FieldElement(%r, %d)" % (self.tower, self.value)

    @classmethod
    def parse(cls, tower, text):
        """Parse '[c0,c1,...]' or a bare integer below the field order."""
        text = text.strip()
        if text.startswith("["):
            if not text.endswith("]"):
                raise ValueError("unterminated vector literal: %r" % text)
            body = text[1:-1].strip()
            parts = [p.strip() for p in body.split(",")] if body else []
            vec = [int(p) for p in parts]
            return tower.element(vec)
        return tower.element(int(text))


# ---------------------------------------------------------------------------
# Exact linear algebra over F_q (small dense systems).


def gauss_solve(fq, rows, rhs):
    """Solve rows * x = rhs over F_q.

    Returns ("unique", x), ("many", x) with one witness, or ("none", None).
    """
    m = len(rows)
    if m == 0:
        return "many", ()
    ncols = len(rows[0])
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, m):
            if aug[i][c]:
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = fq.inv(aug[r][c])
        mrow = fq.mul_table
        aug[r] = [mrow[inv][v] for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                arow = aug[r]
                irow = aug[i]
                for j in range(c, ncols + 1):
                    irow[j] = fq.sub(irow[j], fq.mul(f, arow[j]))
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][ncols]:
            return "none", None
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    status = "unique" if len(pivots) == ncols else "many"
    return status, tuple(x)


def nullspace(fq, rows):
    """Basis of the right null space of the matrix over F_q."""
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, m):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = fq.inv(mat[r][c])
        mat[r] = [fq.mul(inv, v) for v in mat[r]]
        for i in range(m):
            if i != r and mat[i][c]:
                f = mat[i][c]
                for j in range(ncols):
                    mat[i][j] = fq.sub(mat[i][j], fq.mul(f, mat[r][j]))
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = fq.neg(mat[i][fc])
        basis.append(tuple(vec))
    return basis


class FieldEmbedding:
    """The canonical embedding of one tower's L into a larger tower's L.

    The image of the small tower's generator is the root of its defining
    polynomial whose coefficient vector is lexicographically smallest
    (compared low degree first), so the embedding is deterministic.
    """

    def __init__(self, small, big):
        if small.fq is not big.fq and small.fq != big.fq:
            raise ValueError("towers must share the same base field")
        if big.n % small.n != 0:
            raise ValueError("no embedding: %d does not divide %d" % (small.n, big.n))
        self.small = small
        self.big = big
        roots = []
        top = small.top_min_poly
        for x in big.elements():
            acc = 0
            for c in reversed(top):
                acc = big.add(big.mul(acc, x), c)
            if acc == 0:
                roots.append(x)
        if len(roots) != small.n:
            raise RuntimeError("expected %d roots, found %d" % (small.n, len(roots)))
        root = min(roots, key=big.vector)
        self.root = root
        table = [0] * small.order
        for v in range(small.order):
            acc = 0
            for c in reversed(small.vector(v)):
                acc = big.add(big.mul(acc, root), c)
            table[v] = acc
        self._table = table

    def map(self, value):
        return self._table[value]
