"""Exact coefficient domains for Laurent-series fields.

Two backends live here:

* ``GF`` -- the finite field F_{p^d}, with elements stored as little-endian
  coefficient tuples over F_p (d = 1 degenerates to plain residues).
* ``MPoly`` / ``RatFun`` -- multivariate polynomials and reduced rational
  functions over F_p in variables u1..uN, kept in a canonical form so that
  equality is literal comparison.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DivisionByZero


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# GF(p^d)


def _vec_add(a, b, p):
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return tuple((x + y) % p for x, y in zip(a, b))


def _vec_trim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_mulmod(a, b, modulus, p):
    # modulus is monic, little-endian, degree d
    d = len(modulus) - 1
    out = [0] * (len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    # reduce
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if c == 0:
            continue
        out[k] = 0
        for j in range(d + 1):
            out[k - d + j] = (out[k - d + j] - c * modulus[j]) % p
    return tuple(out[:d]) if out else ()


def _poly_pow_mod(a, e, modulus, p):
    result = (1,)
    base = a
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, modulus, p)
        base = _poly_mulmod(base, base, modulus, p)
        e >>= 1
    return result


def _is_irreducible(poly, p):
    """poly: monic little-endian tuple over F_p, degree >= 1."""
    d = len(poly) - 1
    if d == 1:
        return True
    x = (0, 1)
    # x^(p^d) == x mod poly, and x^(p^(d/l)) != x for prime l | d
    xp = _poly_pow_mod(x, p ** d, poly, p)
    if _vec_trim(xp) != _vec_trim(x):
        return False
    dd = d
    for l in range(2, d + 1):
        if dd % l == 0 and is_prime(l):
            sub = _poly_pow_mod(x, p ** (d // l), poly, p)
            diff = _vec_trim(tuple((a - b) % p for a, b in
                                   zip(sub + (0,) * d, x + (0,) * d)))
            if not diff:
                return False
            # gcd(sub - x, poly) must be 1; since poly is a candidate
            # irreducible, a nontrivial common factor shows up as a
            # repeated-root situation.  Cheap check: diff invertible mod poly.
            if _poly_gcd_deg(diff, poly, p) != 0:
                return False
            while dd % l == 0:
                dd //= l
    return True


def _poly_gcd_deg(a, b, p):
    a, b = list(_vec_trim(tuple(a))), list(_vec_trim(tuple(b)))
    while b:
        # a mod b with b made monic
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]
        while len(a) >= len(b) and a:
            if a[-1]:
                c = a[-1]
                off = len(a) - len(b)
                for j, y in enumerate(b):
                    a[off + j] = (a[off + j] - c * y) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1 if a else -1


@lru_cache(maxsize=None)
def _find_irreducible(p: int, d: int):
    """Smallest monic irreducible of degree d over F_p, little-endian."""
    if d == 1:
        return (0, 1)
    # enumerate constant..x^{d-1} coefficient vectors lexicographically
    total = p ** d
    for code in range(total):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % p)
            c //= p
        poly = tuple(coeffs) + (1,)
        if poly[0] == 0:
            continue  # reducible: divisible by x
        if _is_irreducible(poly, p):
            return poly
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class GF:
    """Arithmetic for F_{p^d}.  Elements are little-endian tuples over F_p.

    The integer encoding sum(c_i * p^i) is used for deterministic ordering
    and for compact literals.
    """

    def __init__(self, p: int, d: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if d < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.d = d
        self.order = p ** d
        self.modulus = _find_irreducible(p, d)
        self.zero = ()
        self.one = (1,)

    def from_int(self, n: int):
        if self.d == 1:
            n %= self.p
            return (n,) if n else ()
        digits = []
        n %= self.order
        while n:
            digits.append(n % self.p)
            n //= self.p
        return _vec_trim(tuple(digits))

    def to_int(self, a) -> int:
        return sum(c * self.p ** i for i, c in enumerate(a))

    def is_zero(self, a) -> bool:
        return not a

    def add(self, a, b):
        return _vec_trim(_vec_add(a, b, self.p))

    def neg(self, a):
        return tuple((-c) % self.p for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        return _vec_trim(_poly_mulmod(a, b, self.modulus, self.p))

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero in GF")
        return _vec_trim(_poly_pow_mod(a, self.order - 2, self.modulus, self.p))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if not a:
            return () if e else (1,)
        return _vec_trim(_poly_pow_mod(a, e, self.modulus, self.p))

    def elements(self):
        for n in range(self.order):
            yield self.from_int(n)

    def char_root(self, a):
        """The unique x with x^p = a (p the characteristic)."""
        # x = a^(order/p): (a^(order/p))^p = a^order = a
        return self.pow(a, self.order // self.p)

    def nth_roots(self, a, n: int):
        """All x with x^n = a, sorted by integer encoding."""
        return sorted((x for x in self.elements() if self.pow(x, n) == a),
                      key=self.to_int)


# ---------------------------------------------------------------------------
# Multivariate polynomials over F_p (coefficients of the rational-function
# Laurent field).  Exponent keys are tuples of fixed length nvars.


class MPoly:
    """Polynomial in F_p[u1..uN]; terms stored as {exponent tuple: residue}."""

    __slots__ = ("p", "nvars", "terms")

    def __init__(self, p, nvars, terms=None):
        self.p = p
        self.nvars = nvars
        cleaned = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c:
                    cleaned[tuple(e)] = c
        self.terms = cleaned

    # -- constructors

    @classmethod
    def const(cls, p, nvars, c):
        return cls(p, nvars, {(0,) * nvars: c % p})

    @classmethod
    def var(cls, p, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(p, nvars, {tuple(e): 1})

    # -- predicates

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * self.nvars: 1}

    def is_const(self):
        return not self.terms or set(self.terms) == {(0,) * self.nvars}

    def const_value(self):
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    # -- ring operations

    def _check(self, other):
        if self.p != other.p or self.nvars != other.nvars:
            raise ValueError("mixed polynomial rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = (out.get(e, 0) + c) % self.p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.p, self.nvars, out)

    def __neg__(self):
        return MPoly(self.p, self.nvars,
                     {e: (-c) % self.p for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = (out.get(e, 0) + c1 * c2) % self.p
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly(self.p, self.nvars, out)

    def scale(self, c):
        c %= self.p
        return MPoly(self.p, self.nvars,
                     {e: (v * c) % self.p for e, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, MPoly) and self.p == other.p
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.p, self.nvars, tuple(sorted(self.terms.items()))))

    # -- canonical display

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c))
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"u{i + 1}")
                elif k > 1:
                    factors.append(f"u{i + 1}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __repr__ = __str__

    # -- leading data under lex order (used for canonical normalisation)

    def lead(self):
        e = max(self.terms)
        return e, self.terms[e]

    # -- univariate view in the highest active variable, for gcd recursion

    def _as_univar(self, i):
        """Dict degree -> MPoly in the remaining exponent positions."""
        out = {}
        for e, c in self.terms.items():
            rest = e[:i] + (0,) + e[i + 1:]
            d = e[i]
            out.setdefault(d, {})[rest] = c
        return {d: MPoly(self.p, self.nvars, t) for d, t in out.items()}

    @staticmethod
    def _from_univar(p, nvars, i, coeffs):
        terms = {}
        for d, poly in coeffs.items():
            for e, c in poly.terms.items():
                ee = list(e)
                ee[i] += d
                terms[tuple(ee)] = c
        return MPoly(p, nvars, terms)


def _active_var(a: MPoly, b: MPoly):
    for i in reversed(range(a.nvars)):
        if a.degree_in(i) > 0 or b.degree_in(i) > 0:
            return i
    return None


def mpoly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Gcd in F_p[u...], monic in the lex-leading coefficient."""
    if a.is_zero():
        return _monicize(b)
    if b.is_zero():
        return _monicize(a)
    i = _active_var(a, b)
    if i is None:
        return MPoly.const(a.p, a.nvars, 1)
    ua, ub = a._as_univar(i), b._as_univar(i)
    ca = _content(a.p, a.nvars, ua)
    cb = _content(b.p, b.nvars, ub)
    pa = _exact_div_coeffs(ua, ca)
    pb = _exact_div_coeffs(ub, cb)
    g = _primitive_gcd_univar(a.p, a.nvars, i, pa, pb)
    cg = mpoly_gcd(ca, cb)
    return _monicize(MPoly._from_univar(a.p, a.nvars, i, g) * cg)


def _content(p, nvars, coeffs):
    g = MPoly(p, nvars)
    for poly in coeffs.values():
        g = mpoly_gcd(g, poly)
        if g.is_one():
            break
    return g if not g.is_zero() else MPoly.const(p, nvars, 1)


def _exact_div_coeffs(coeffs, divisor):
    return {d: mpoly_exact_div(poly, divisor) for d, poly in coeffs.items()}


def _primitive_gcd_univar(p, nvars, i, ua, ub):
    """Primitive gcd of two primitive univariate-in-var-i polys."""
    A, B = dict(ua), dict(ub)
    if max(A, default=-1) < max(B, default=-1):
        A, B = B, A
    while B:
        R = _pseudo_rem(p, nvars, A, B)
        if not R:
            break
        # make remainder primitive again
        cr = _content(p, nvars, R)
        R = _exact_div_coeffs(R, cr)
        A, B = B, R
    if not B:
        return A
    return B


def _pseudo_rem(p, nvars, A, B):
    """Pseudo-remainder of A by B (univariate views, dict deg -> MPoly)."""
    da, db = max(A), max(B)
    lb = B[db]
    R = dict(A)
    while R and max(R) >= db:
        dr = max(R)
        lr = R[dr]
        # R := lb*R - lr*x^(dr-db)*B
        newR = {}
        for d, c in R.items():
            newR[d] = c * lb
        for d, c in B.items():
            t = c * lr
            tgt = d + dr - db
            newR[tgt] = (newR.get(tgt, MPoly(p, nvars))) - t
        R = {d: c for d, c in newR.items() if not c.is_zero()}
    return R


def mpoly_exact_div(a: MPoly, b: MPoly) -> MPoly:
    """Exact division a / b; raises if the division leaves a remainder."""
    if b.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if a.is_zero():
        return MPoly(a.p, a.nvars)
    if b.is_const():
        inv = pow(b.const_value(), b.p - 2, b.p)
        return a.scale(inv)
    p, nvars = a.p, a.nvars
    q = {}
    r = MPoly(p, nvars, dict(a.terms))
    be, bc = b.lead()
    bcinv = pow(bc, p - 2, p)
    while not r.is_zero():
        re, rc = r.lead()
        ee = tuple(x - y for x, y in zip(re, be))
        if any(x < 0 for x in ee):
            raise ValueError("inexact polynomial division")
        c = (rc * bcinv) % p
        q[ee] = (q.get(ee, 0) + c) % p
        mono = MPoly(p, nvars, {ee: c})
        r = r - mono * b
    return MPoly(p, nvars, q)


def _monicize(a: MPoly) -> MPoly:
    if a.is_zero():
        return a
    _, c = a.lead()
    return a.scale(pow(c, a.p - 2, a.p))


class RatFun:
    """Reduced rational function over F_p[u1..uN].

    Canonical form: gcd(num, den) = 1 and den is lex-monic, so equality is
    structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly, reduce: bool = True):
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if reduce and not num.is_zero():
            g = mpoly_gcd(num, den)
            if not g.is_one():
                num = mpoly_exact_div(num, g)
                den = mpoly_exact_div(den, g)
        if num.is_zero():
            den = MPoly.const(den.p, den.nvars, 1)
        else:
            _, lc = den.lead()
            if lc != 1:
                inv = pow(lc, den.p - 2, den.p)
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, p, nvars, c):
        return cls(MPoly.const(p, nvars, c), MPoly.const(p, nvars, 1),
                   reduce=False)

    @classmethod
    def var(cls, p, nvars, i):
        return cls(MPoly.var(p, nvars, i), MPoly.const(p, nvars, 1),
                   reduce=False)

    @classmethod
    def from_poly(cls, poly: MPoly):
        return cls(poly, MPoly.const(poly.p, poly.nvars, 1), reduce=False)

    @property
    def p(self):
        return self.num.p

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_one()

    def __add__(self, other):
        return RatFun(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __neg__(self):
        return RatFun(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatFun(self.num * other.num, self.den * other.den)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def __eq__(self, other):
        return (isinstance(other, RatFun) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        ns, ds = str(self.num), str(self.den)
        if " " in ns:
            ns = f"({ns})"
        if " " in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    __repr__ = __str__

    def char_root(self):
        """x with x^p = self, or None.  p is the characteristic here."""
        rn = _poly_char_root(self.num)
        rd = _poly_char_root(self.den)
        if rn is None or rd is None:
            return None
        return RatFun(rn, rd)


def _poly_char_root(a: MPoly):
    p = a.p
    out = {}
    for e, c in a.terms.items():
        if any(k % p for k in e):
            return None
        out[tuple(k // p for k in e)] = c  # c^(1/p) = c over F_p
    return MPoly(p, a.nvars, out)
