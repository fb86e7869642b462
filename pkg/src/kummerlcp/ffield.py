"""Exact arithmetic in GF(p^k) and univariate polynomials over it.

Elements are canonically encoded as integers: an element with coefficient
vector (c_0, ..., c_{k-1}) over GF(p) encodes as enc = sum c_i * p^i, a
bijection onto {0, ..., q-1}.  All field operations work on these integer
encodings; :class:`FieldElement` is a thin operator-overloading wrapper.

For fields of order up to 2^16 a discrete-log table pair is precomputed,
which makes scalar multiplication O(1) and enables vectorized numpy
operations on whole arrays of encodings (used heavily by the linear
algebra in the codes module).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegreeZero, FieldTooLarge, NotPrime, ZeroPolynomial

DEFAULT_ORDER_CAP = 1 << 20
_TABLE_CAP = 1 << 16

#: degree of the zero polynomial
NEG_INF = float("-inf")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# GF(p)[x] helpers on plain coefficient lists (low-to-high), used only for
# the canonical-modulus search and modular reduction inside FieldSpec.
# ---------------------------------------------------------------------------

def _gfp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gfp_rem(a, b, p):
    """Remainder of a modulo monic b over GF(p)."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - db
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - lead * bc) % p
        _gfp_trim(a)
        if not a:
            break
        if len(a) - 1 < db:
            break
    return _gfp_trim(a)


def _gfp_monic_polys(p, deg):
    for enc in range(p ** deg):
        coeffs = []
        v = enc
        for _ in range(deg):
            coeffs.append(v % p)
            v //= p
        yield coeffs + [1]


def _gfp_is_irreducible(poly, p):
    deg = len(poly) - 1
    if poly[0] == 0:  # divisible by x
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for div in _gfp_monic_polys(p, d):
            if not _gfp_rem(poly, div, p):
                return False
    return True


def _canonical_modulus(p, k):
    """Least monic irreducible of degree k, scanning the constant term up."""
    if k == 1:
        return (0, 1)
    for cand in _gfp_monic_polys(p, k):
        if _gfp_is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# Field specification
# ---------------------------------------------------------------------------

class FieldSpec:
    """GF(p^k) with a fixed canonical modulus.

    Immutable after construction; all operations are pure and safe to share
    across workers.  Use :func:`make_field` rather than the constructor.
    """

    def __init__(self, p: int, k: int, order_cap: int = DEFAULT_ORDER_CAP):
        if k < 1:
            raise DegreeZero(f"extension degree must be >= 1, got {k}")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        q = p ** k
        if q > order_cap:
            raise FieldTooLarge(f"field order {q} exceeds cap {order_cap}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = _canonical_modulus(p, k)
        self._pows = tuple(p ** i for i in range(k + 1))
        self._exp = None
        self._log = None
        if q <= _TABLE_CAP:
            self._build_tables()

    # -- encoding helpers --

    def digits(self, enc: int) -> tuple[int, ...]:
        p = self.p
        return tuple((enc // self._pows[i]) % p for i in range(self.k))

    def from_digits(self, digits) -> int:
        return sum((int(d) % self.p) * self._pows[i] for i, d in enumerate(digits))

    # -- scalar ops on encodings --

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out = 0
        for i in range(self.k):
            pw = self._pows[i]
            out += (((a // pw) + (b // pw)) % p) * pw
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return (-a) % p
        out = 0
        for i in range(self.k):
            pw = self._pows[i]
            out += ((-(a // pw)) % p) * pw
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        da = self.digits(a)
        db = self.digits(b)
        p = self.p
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _gfp_rem(prod, list(self.modulus), p)
        return self.from_digits(rem)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) + int(self._log[b])) % (self.q - 1)])
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self._log is not None:
            return int(self._exp[(-int(self._log[a])) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])
        e %= self.q - 1
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base) if result != 1 else base
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        order = self.q - 1
        for f in prime_factors(self.q - 1):
            while order % f == 0 and self.pow(a, order // f) == 1:
                order //= f
        return order

    def _build_tables(self):
        q = self.q
        gen = None
        for cand in range(2, q):
            ok = True
            for f in prime_factors(q - 1):
                if self.pow(cand, (q - 1) // f) == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        if gen is None:  # q == 2
            gen = 1
        exp = np.zeros(max(q - 1, 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_poly(acc, gen)
        self.generator = gen
        self._exp = exp
        self._log = log

    # -- vectorized ops on numpy arrays of encodings --

    def _require_tables(self):
        if self._log is None:
            raise FieldTooLarge(
                f"vectorized operations need discrete-log tables (q <= {_TABLE_CAP})")

    def add_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.k):
            pw = self._pows[i]
            out += (((a // pw) + (b // pw)) % p) * pw
        return out

    def neg_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        p = self.p
        if self.k == 1:
            return (-a) % p
        out = np.zeros(a.shape, dtype=np.int64)
        for i in range(self.k):
            pw = self._pows[i]
            out += ((-(a // pw)) % p) * pw
        return out

    def sub_arr(self, a, b):
        return self.add_arr(a, self.neg_arr(np.asarray(b, dtype=np.int64)))

    def mul_arr(self, a, b):
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        mask = (a != 0) & (b != 0)
        if mask.any():
            la = self._log[a[mask]]
            lb = self._log[b[mask]]
            out[mask] = self._exp[(la + lb) % (self.q - 1)]
        return out

    def inv_arr(self, a):
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero field element")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow_arr(self, a, e: int):
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        mask = a != 0
        out[mask] = self._exp[(self._log[a[mask]] * e) % (self.q - 1)]
        if e == 0:
            out[~mask] = 1
        elif e < 0 and (~mask).any():
            raise ZeroDivisionError("negative power of zero")
        return out

    # -- element factory and iteration --

    def element(self, enc: int) -> "FieldElement":
        if not 0 <= enc < self.q:
            raise ValueError(f"encoding {enc} out of range for GF({self.q})")
        return FieldElement(self, enc)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        return (FieldElement(self, e) for e in range(self.q))

    # -- misc --

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"GF({self.q})"


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int, order_cap: int = DEFAULT_ORDER_CAP) -> FieldSpec:
    """Construct (and cache) GF(p^k) with the canonical modulus."""
    return FieldSpec(p, k, order_cap)


@dataclass(frozen=True)
class FieldElement:
    """A value in GF(p^k), ordered and hashed by its integer encoding."""

    field: FieldSpec
    enc: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements from different fields")
            return other.enc
        if isinstance(other, int):
            # integers embed through the prime subfield
            return other % self.field.p
        return NotImplemented

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.enc)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.enc, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.enc, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.enc))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.enc))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.enc, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.enc, self.field.inv(o)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.enc, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.enc))

    def __bool__(self):
        return self.enc != 0

    def __int__(self):
        return self.enc

    def __lt__(self, other):
        return self.enc < self._coerce(other)

    def __repr__(self):
        return f"GF({self.field.q}):{self.enc}"


# ---------------------------------------------------------------------------
# Polynomials over GF(p^k)
# ---------------------------------------------------------------------------

class Poly:
    """Univariate polynomial with coefficients stored as encodings, low to high.

    Trailing zeros are trimmed; the zero polynomial has degree NEG_INF.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        cs = [c.enc if isinstance(c, FieldElement) else int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, field: FieldSpec, ints) -> "Poly":
        """Build from integer coefficients, reduced into the prime subfield."""
        return cls(field, [int(c) % field.p for c in ints])

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def one(cls, field: FieldSpec) -> "Poly":
        return cls(field, [1])

    @classmethod
    def linear(cls, field: FieldSpec, alpha) -> "Poly":
        """x - alpha."""
        a = alpha.enc if isinstance(alpha, FieldElement) else int(alpha)
        return cls(field, [field.neg(a), 1])

    @classmethod
    def from_roots(cls, field: FieldSpec, roots) -> "Poly":
        out = cls.one(field)
        for r in roots:
            out = out * cls.linear(field, r)
        return out

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coeff(self) -> FieldElement:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return FieldElement(self.field, self.coeffs[-1])

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else 0
            b = other.coeffs[i] if i < len(other.coeffs) else 0
            out.append(F.add(a, b))
        return Poly(F, out)

    def __neg__(self):
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly(F, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c) -> "Poly":
        c = c.enc if isinstance(c, FieldElement) else int(c)
        F = self.field
        return Poly(F, [F.mul(a, c) for a in self.coeffs])

    def __pow__(self, e: int):
        out = Poly.one(self.field)
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lead = F.inv(other.coeffs[-1])
        quot = [0] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            lead = rem[-1]
            if lead:
                factor = F.mul(lead, inv_lead)
                shift = len(rem) - 1 - db
                quot[shift] = factor
                for i, bc in enumerate(other.coeffs):
                    rem[shift + i] = F.sub(rem[shift + i], F.mul(factor, bc))
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(F, quot), Poly(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other) -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.scale(self.field.inv(a.coeffs[-1]))  # monic normalization

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            scalar = i % F.p
            c = self.coeffs[i]
            acc = 0
            for _ in range(scalar):
                acc = F.add(acc, c)
            out.append(acc)
        return Poly(F, out)

    def eval_enc(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def __call__(self, a):
        if isinstance(a, FieldElement):
            return FieldElement(self.field, self.eval_enc(a.enc))
        return self.eval_enc(int(a))

    def eval_arr(self, a):
        F = self.field
        a = np.asarray(a, dtype=np.int64)
        acc = np.zeros(a.shape, dtype=np.int64)
        for c in reversed(self.coeffs):
            acc = F.add_arr(F.mul_arr(acc, a), np.int64(c))
        return acc

    def __repr__(self):
        return f"Poly(GF({self.field.q}), {list(self.coeffs)})"


# ---------------------------------------------------------------------------
# Root extraction and analysis
# ---------------------------------------------------------------------------

def nth_roots(c: FieldElement, n: int) -> list[FieldElement]:
    """All y in the field with y^n = c, sorted by encoding.

    Exhaustive scan; fields are capped small so this is trivially correct.
    """
    F = c.field
    if c.enc == 0:
        return [F.zero()]
    hits = [y for y in range(1, F.q) if F.pow(y, n) == c.enc]
    # power test: nonempty iff c^((q-1)/gcd(n, q-1)) == 1
    g = math.gcd(n, F.q - 1)
    assert bool(hits) == (F.pow(c.enc, (F.q - 1) // g) == 1)
    return [FieldElement(F, y) for y in hits]


@dataclass
class PolyAnalysis:
    roots: list  # (FieldElement, multiplicity) pairs, sorted by encoding
    separable: bool
    leading_coeff: FieldElement


def poly_analyze(f: Poly) -> PolyAnalysis:
    """Roots in the field (with multiplicity) and separability of f.

    Roots by exhaustive evaluation, multiplicity by repeated division,
    separability via gcd(f, f').
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot analyze the zero polynomial")
    F = f.field
    roots = []
    work = f
    for a in range(F.q):
        if f.eval_enc(a) == 0:
            mult = 0
            lin = Poly.linear(F, a)
            while not work.is_zero() and work.eval_enc(a) == 0:
                work = work // lin
                mult += 1
            roots.append((FieldElement(F, a), mult))
    g = f.gcd(f.derivative())
    separable = g.degree <= 0
    return PolyAnalysis(roots=roots, separable=separable, leading_coeff=f.leading_coeff())
