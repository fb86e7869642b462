"""Kummer extensions y^m = a * prod (x - alpha_i)^lambda_i over GF(q).

Provides ramification data and genus, symbolic place classes, divisors,
valuations of monomial functions, the restriction map to the rational
subfield, the combinatorial Riemann-Roch dimension for invariant divisors,
splitting types and the rational-place census.

Curves come in two flavors:

* concrete -- a :class:`~kummerlcp.ffield.FieldSpec` plus branch points
  (alpha_i, lambda_i); supports splitting, census and code construction.
* abstract -- no field at all, only (m, lambdas); supports everything that
  is purely combinatorial (genus, restriction, invariant dimensions).

Conjugate places above a branch point alpha_i are labeled by the d_i-th
roots of the unit c_i = a * prod_{j != i} (alpha_i - alpha_j)^lambda_j,
taken in increasing encoding order; places above x = infinity likewise by
the d_inf-th roots of the leading coefficient a.  The distinguished place
Q_infinity is Infinity(0), the one whose root label has smallest encoding
(equal to 1 for monic curves).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    AbstractField,
    CharDividesM,
    DuplicateBranch,
    GcdViolation,
    InvalidPlace,
    NegativeCoefficient,
    RationalityError,
    UnsupportedRoot,
)
from .ffield import FieldElement, FieldSpec, Poly, make_field, nth_roots, poly_analyze

_KIND_ORDER = {"branch": 0, "infinity": 1, "split": 2}


@dataclass(frozen=True)
class Place:
    """A symbolic place class of the function field.

    kind "branch":   conjugate j above branch point i (0 <= j < d_i)
    kind "infinity": conjugate j above x = infinity   (0 <= j < d_inf)
    kind "split":    rational place (x=a, y=y) with f(a) a nonzero m-th power
    """

    kind: str
    i: int = -1
    j: int = -1
    a: int = -1
    y: int = -1

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.i, self.j, self.a, self.y)

    def to_json(self):
        if self.kind == "branch":
            return {"kind": "branch", "i": self.i, "j": self.j}
        if self.kind == "infinity":
            return {"kind": "infinity", "j": self.j}
        return {"kind": "split", "a": self.a, "y": self.y}

    @staticmethod
    def from_json(obj) -> "Place":
        kind = obj["kind"]
        if kind == "branch":
            return Place("branch", i=obj["i"], j=obj["j"])
        if kind == "infinity":
            return Place("infinity", j=obj["j"])
        return Place("split", a=obj["a"], y=obj["y"])


@dataclass(frozen=True)
class RamificationData:
    d: tuple[int, ...]      # d_i = gcd(m, lambda_i)
    e: tuple[int, ...]      # e_i = m / d_i
    lam_sum: int            # Lambda = sum lambda_i
    d_inf: int              # gcd(m, Lambda)
    e_inf: int              # m / d_inf
    genus: int


class KummerCurve:
    """Immutable model of y^m = a * prod (x - alpha_i)^lambda_i."""

    def __init__(self, field, m, branches, a=1):
        self.m = int(m)
        if self.m < 2:
            raise GcdViolation(f"extension degree m must be >= 2, got {m}")
        if field is None:
            self.field = None
            lambdas = [int(l) for l in branches]
            alphas = None
            a_enc = 1
        else:
            if not isinstance(field, FieldSpec):
                raise TypeError("field must be a FieldSpec or None")
            self.field = field
            alphas = []
            lambdas = []
            for alpha, lam in branches:
                enc = alpha.enc if isinstance(alpha, FieldElement) else int(alpha)
                alphas.append(enc)
                lambdas.append(int(lam))
            if len(set(alphas)) != len(alphas):
                raise DuplicateBranch(f"branch points not distinct: {alphas}")
            if field.p != 0 and self.m % field.p == 0:
                raise CharDividesM(f"char {field.p} divides m={self.m}")
            a_enc = a.enc if isinstance(a, FieldElement) else int(a)
            if a_enc == 0:
                raise GcdViolation("leading coefficient a must be nonzero")
        if not lambdas:
            raise GcdViolation("at least one branch point required")
        if any(not 1 <= l < self.m for l in lambdas):
            raise GcdViolation(f"lambdas must lie in [1, m): {lambdas}")
        if math.gcd(self.m, *lambdas) != 1:
            raise GcdViolation(f"gcd(m, lambdas) != 1 for m={self.m}, {lambdas}")
        self.lambdas = tuple(lambdas)
        self.alphas = tuple(alphas) if alphas is not None else None
        self.a_enc = a_enc
        self.r = len(lambdas)

        d = tuple(math.gcd(self.m, l) for l in lambdas)
        e = tuple(self.m // di for di in d)
        lam_sum = sum(lambdas)
        d_inf = math.gcd(self.m, lam_sum)
        e_inf = self.m // d_inf
        num = (self.m - 1) * (self.r - 1) - sum(di - 1 for di in d) - (d_inf - 1)
        assert num % 2 == 0, "genus formula must divide exactly"
        self.ram = RamificationData(d, e, lam_sum, d_inf, e_inf, num // 2)
        self._labels = {}

    # -- basic properties --

    @property
    def is_abstract(self) -> bool:
        return self.field is None

    @property
    def genus(self) -> int:
        return self.ram.genus

    def _require_field(self):
        if self.is_abstract:
            raise AbstractField("operation requires a concrete field")
        return self.field

    def _require_kummer_rational(self):
        F = self._require_field()
        if (F.q - 1) % self.m != 0:
            raise RationalityError(f"m={self.m} does not divide q-1={F.q - 1}")
        return F

    def f_poly(self) -> Poly:
        """The right-hand side a * prod (x - alpha_i)^lambda_i as a Poly."""
        F = self._require_field()
        out = Poly(F, [self.a_enc])
        for alpha, lam in zip(self.alphas, self.lambdas):
            out = out * (Poly.linear(F, alpha) ** lam)
        return out

    def f_eval(self, a_enc: int) -> int:
        F = self._require_field()
        acc = self.a_enc
        for alpha, lam in zip(self.alphas, self.lambdas):
            acc = F.mul(acc, F.pow(F.sub(a_enc, alpha), lam))
        return acc

    # -- place classes --

    def branch_places(self, i: int) -> list[Place]:
        if not 0 <= i < self.r:
            raise InvalidPlace(f"branch index {i} out of range")
        return [Place("branch", i=i, j=j) for j in range(self.ram.d[i])]

    def infinity_places(self) -> list[Place]:
        return [Place("infinity", j=j) for j in range(self.ram.d_inf)]

    def q_infinity(self) -> Place:
        return Place("infinity", j=0)

    def branch_unit(self, i: int) -> int:
        """c_i = a * prod_{j != i} (alpha_i - alpha_j)^lambda_j (encoding)."""
        F = self._require_field()
        acc = self.a_enc
        for j, (alpha, lam) in enumerate(zip(self.alphas, self.lambdas)):
            if j != i:
                acc = F.mul(acc, F.pow(F.sub(self.alphas[i], alpha), lam))
        return acc

    def conjugate_labels(self, place_kind: str, i: int = -1) -> list[int]:
        """Root labels (encodings, increasing) for branch/infinity conjugates."""
        key = (place_kind, i)
        if key not in self._labels:
            F = self._require_field()
            if place_kind == "infinity":
                roots = nth_roots(FieldElement(F, self.a_enc), self.ram.d_inf)
            else:
                roots = nth_roots(FieldElement(F, self.branch_unit(i)), self.ram.d[i])
            self._labels[key] = [r.enc for r in roots]
        return self._labels[key]

    def validate_place(self, place: Place):
        if place.kind == "branch":
            if not (0 <= place.i < self.r and 0 <= place.j < self.ram.d[place.i]):
                raise InvalidPlace(f"invalid branch place {place}")
        elif place.kind == "infinity":
            if not 0 <= place.j < self.ram.d_inf:
                raise InvalidPlace(f"invalid infinite place {place}")
        elif place.kind == "split":
            F = self._require_field()
            if self.alphas and place.a in self.alphas:
                raise InvalidPlace(f"{place} sits over a branch point")
            if F.pow(place.y, self.m) != self.f_eval(place.a) or place.y == 0:
                raise InvalidPlace(f"{place} does not lie on the curve")
        else:
            raise InvalidPlace(f"unknown place kind {place.kind!r}")

    # -- serialization --

    def to_json(self) -> dict:
        if self.is_abstract:
            return {"abstract": True, "m": self.m, "lambdas": list(self.lambdas)}
        return {
            "field": {"p": self.field.p, "k": self.field.k},
            "m": self.m,
            "a": self.a_enc,
            "branches": [{"alpha": a, "lambda": l}
                         for a, l in zip(self.alphas, self.lambdas)],
        }

    @staticmethod
    def from_json(obj) -> "KummerCurve":
        if obj.get("abstract"):
            return KummerCurve(None, obj["m"], obj["lambdas"])
        F = make_field(obj["field"]["p"], obj["field"]["k"])
        branches = [(b["alpha"], b["lambda"]) for b in obj["branches"]]
        return KummerCurve(F, obj["m"], branches, obj.get("a", 1))

    def __repr__(self):
        base = "abstract" if self.is_abstract else repr(self.field)
        return f"KummerCurve({base}, m={self.m}, lambdas={self.lambdas})"


def make_curve(field, m, branches, a=1) -> KummerCurve:
    """Construct a Kummer curve; pass field=None and a lambda list for abstract."""
    return KummerCurve(field, m, branches, a)


# ---------------------------------------------------------------------------
# Divisors
# ---------------------------------------------------------------------------

class Divisor:
    """Finite formal integer combination of place classes."""

    __slots__ = ("table",)

    def __init__(self, table=None):
        self.table = {}
        if table:
            for place, coeff in (table.items() if isinstance(table, dict) else table):
                if coeff:
                    self.table[place] = self.table.get(place, 0) + int(coeff)
            self.table = {p: c for p, c in self.table.items() if c}

    def coeff(self, place: Place) -> int:
        return self.table.get(place, 0)

    @property
    def degree(self) -> int:
        # all tracked place classes are rational of degree 1
        return sum(self.table.values())

    def support(self):
        return sorted(self.table, key=Place.sort_key)

    def items(self):
        return [(p, self.table[p]) for p in self.support()]

    def __add__(self, other):
        out = dict(self.table)
        for p, c in other.table.items():
            out[p] = out.get(p, 0) + c
        return Divisor(out)

    def __sub__(self, other):
        out = dict(self.table)
        for p, c in other.table.items():
            out[p] = out.get(p, 0) - c
        return Divisor(out)

    def __rmul__(self, scalar: int):
        return Divisor({p: scalar * c for p, c in self.table.items()})

    def __neg__(self):
        return Divisor({p: -c for p, c in self.table.items()})

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.table == other.table

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.table.values())

    def __ge__(self, other):
        return (self - other).is_effective()

    def gcd_min(self, other: "Divisor") -> "Divisor":
        places = set(self.table) | set(other.table)
        return Divisor({p: min(self.coeff(p), other.coeff(p)) for p in places})

    def lmd_max(self, other: "Divisor") -> "Divisor":
        places = set(self.table) | set(other.table)
        return Divisor({p: max(self.coeff(p), other.coeff(p)) for p in places})

    def to_json(self):
        return [{"place": p.to_json(), "coeff": c} for p, c in self.items()]

    @staticmethod
    def from_json(obj) -> "Divisor":
        return Divisor({Place.from_json(e["place"]): e["coeff"] for e in obj})

    def __repr__(self):
        return f"Divisor({self.items()})"


@dataclass(frozen=True)
class InvariantTuple:
    """Coefficient tuple (n_0; n_1, ..., n_r) of an invariant divisor.

    Encodes A = n_0 * div_inf(x)/e_inf + sum n_i * div_0(x - alpha_i)/e_i,
    i.e. coefficient n_0 on each infinite place and n_i on each conjugate
    above alpha_i.
    """

    n0: int
    n: tuple[int, ...]

    def degree(self, curve: KummerCurve) -> int:
        if len(self.n) != curve.r:
            raise ValueError("tuple length does not match curve")
        return self.n0 * curve.ram.d_inf + sum(
            ni * di for ni, di in zip(self.n, curve.ram.d))

    def is_effective(self) -> bool:
        return self.n0 >= 0 and all(ni >= 0 for ni in self.n)

    def to_json(self):
        return {"n0": self.n0, "n": list(self.n)}

    @staticmethod
    def from_json(obj) -> "InvariantTuple":
        return InvariantTuple(int(obj["n0"]), tuple(int(v) for v in obj["n"]))


def invariant_divisor(curve: KummerCurve, tup: InvariantTuple) -> Divisor:
    """Expand an invariant tuple into an explicit place table."""
    table = {}
    for j in range(curve.ram.d_inf):
        table[Place("infinity", j=j)] = tup.n0
    for i, ni in enumerate(tup.n):
        for j in range(curve.ram.d[i]):
            table[Place("branch", i=i, j=j)] = ni
    return Divisor(table)


# ---------------------------------------------------------------------------
# Valuations
# ---------------------------------------------------------------------------

def val_linear(curve: KummerCurve, place: Place, alpha_enc: int) -> int:
    """v_P(x - alpha) at a place class."""
    curve.validate_place(place)
    if place.kind == "infinity":
        return -curve.ram.e_inf
    if place.kind == "branch":
        return curve.ram.e[place.i] if curve.alphas and curve.alphas[place.i] == alpha_enc else 0
    return 1 if place.a == alpha_enc else 0


def val_branch_linear(curve: KummerCurve, place: Place, i: int) -> int:
    """v_P(x - alpha_i) by branch index; works on abstract curves too."""
    curve.validate_place(place)
    if place.kind == "infinity":
        return -curve.ram.e_inf
    if place.kind == "branch":
        return curve.ram.e[i] if place.i == i else 0
    return 0  # split place over a non-branch point


def val_y(curve: KummerCurve, place: Place) -> int:
    """v_P(y)."""
    curve.validate_place(place)
    if place.kind == "infinity":
        return -curve.ram.lam_sum // curve.ram.d_inf
    if place.kind == "branch":
        return curve.lambdas[place.i] // curve.ram.d[place.i]
    return 0


def monomial_valuation(curve: KummerCurve, place: Place, e_x: int, e_y: int) -> int:
    """v_P(x^{e_x} * y^{e_y}), extended additively per factor."""
    if curve.is_abstract and e_x != 0 and place.kind == "branch":
        raise AbstractField("v(x) at a branch place needs concrete branch points")
    v = e_y * val_y(curve, place)
    if e_x:
        v += e_x * val_linear(curve, place, 0) if not curve.is_abstract else (
            e_x * -curve.ram.e_inf if place.kind == "infinity" else 0)
    return v


# ---------------------------------------------------------------------------
# Standard divisors and principal divisors
# ---------------------------------------------------------------------------

def x_pole_divisor(curve: KummerCurve) -> Divisor:
    """div_inf(x) = e_inf * sum of infinite places (degree m)."""
    return Divisor({p: curve.ram.e_inf for p in curve.infinity_places()})


def branch_zero_divisor(curve: KummerCurve, i: int) -> Divisor:
    """div_0(x - alpha_i) = e_i * sum of conjugates above alpha_i (degree m)."""
    return Divisor({p: curve.ram.e[i] for p in curve.branch_places(i)})


def split_zero_divisor(curve: KummerCurve, a_enc: int) -> Divisor:
    """div_0(x - a) for a completely split value a (degree m)."""
    info = splitting_type(curve, a_enc)
    if info.kind != "split":
        raise UnsupportedRoot(f"x = {a_enc} is not completely split")
    return Divisor({p: 1 for p in info.places})


def y_divisor(curve: KummerCurve) -> Divisor:
    """Principal divisor of y."""
    table = {}
    for i in range(curve.r):
        v = curve.lambdas[i] // curve.ram.d[i]
        for p in curve.branch_places(i):
            table[p] = v
    v_inf = -curve.ram.lam_sum // curve.ram.d_inf
    for p in curve.infinity_places():
        table[p] = v_inf
    return Divisor(table)


def principal_divisor(curve: KummerCurve, num: Poly | None, den: Poly | None = None,
                      t: int = 0) -> Divisor:
    """Divisor of b(x) * y^t where b = num/den.

    Every root of num and den must be a branch point or a completely split
    value; other roots have no rational place class to carry them.
    """
    out = t * y_divisor(curve)
    for poly, sign in ((num, 1), (den, -1)):
        if poly is None or poly.degree <= 0:
            if poly is not None and poly.is_zero():
                raise UnsupportedRoot("zero polynomial has no divisor")
            continue
        analysis = poly_analyze(poly)
        total_mult = sum(mult for _, mult in analysis.roots)
        if total_mult != poly.degree:
            raise UnsupportedRoot("polynomial does not split over the base field")
        for root, mult in analysis.roots:
            if curve.alphas and root.enc in curve.alphas:
                i = curve.alphas.index(root.enc)
                d = branch_zero_divisor(curve, i)
            else:
                d = split_zero_divisor(curve, root.enc)
            out = out + (sign * mult) * (d - x_pole_divisor(curve))
    return out


# ---------------------------------------------------------------------------
# Restriction map and invariant Riemann-Roch dimension
# ---------------------------------------------------------------------------

def restrict(curve: KummerCurve, D: Divisor) -> dict:
    """Push a divisor down to the rational subfield.

    Returns a table keyed by ("branch", i), ("split", a) and ("infinity",)
    with value min over P|Q of floor(v_P(D) / e(P|Q)); zero entries dropped.
    """
    out = {}
    touched_branch = {p.i for p in D.table if p.kind == "branch"}
    for i in touched_branch:
        e = curve.ram.e[i]
        val = min(D.coeff(p) // e for p in curve.branch_places(i))
        if val:
            out[("branch", i)] = val
    if any(p.kind == "infinity" for p in D.table):
        e = curve.ram.e_inf
        val = min(D.coeff(p) // e for p in curve.infinity_places())
        if val:
            out[("infinity",)] = val
    split_vals = {p.a for p in D.table if p.kind == "split"}
    for a in split_vals:
        places = [p for p in D.table if p.kind == "split" and p.a == a]
        # unramified: e = 1, but conjugates missing from D count as zero
        val = min(D.coeff(p) for p in places) if len(places) == curve.m else min(
            0, min(D.coeff(p) for p in places))
        if val:
            out[("split", a)] = val
    return out


def rational_degree(rdiv: dict) -> int:
    return sum(rdiv.values())


def rational_ell(rdiv: dict) -> int:
    """dim L(D) on the projective line: deg + 1 if deg >= 0 else 0."""
    deg = rational_degree(rdiv)
    return deg + 1 if deg >= 0 else 0


def _restricted_summand_degree(curve: KummerCurve, n0: int, n, t: int) -> int:
    """deg R(A + div(y^t)) for the invariant tuple (n0; n), in closed form."""
    ram = curve.ram
    m = curve.m
    deg = (n0 * ram.d_inf - t * ram.lam_sum) // m
    for ni, di, lam in zip(n, ram.d, curve.lambdas):
        deg += (ni * di + t * lam) // m
    return deg


def ell_invariant(curve: KummerCurve, A: InvariantTuple, shift_t: int | None = None,
                  allow_negative: bool = False) -> int:
    """dim L(A) for an invariant divisor, by restriction to the subfield.

    With shift_t set, returns only the summand for that power of y.
    """
    if len(A.n) != curve.r:
        raise ValueError("tuple length does not match curve")
    if not allow_negative and not A.is_effective():
        raise NegativeCoefficient(f"tuple {A} is not effective")
    ts = range(curve.m) if shift_t is None else [shift_t]
    total = 0
    for t in ts:
        deg = _restricted_summand_degree(curve, A.n0, A.n, t)
        if deg >= 0:
            total += deg + 1
    return total


def ell_invariant_bulk(curve: KummerCurve, n0: int) -> np.ndarray:
    """dim L(A) for all tuples with the given n0, over the bounded box.

    Returns an integer array of shape (e_1, ..., e_r); entry [n_1, ..., n_r]
    is ell of the tuple (n0; n_1, ..., n_r).  Used as the independent oracle
    in equivalence tests and computed purely from the restriction formula.
    """
    ram = curve.ram
    m = curve.m
    dims = ram.e
    ell = np.zeros(dims, dtype=np.int64)
    for t in range(m):
        deg = np.zeros((), dtype=np.int64)
        for axis, (di, lam, e_i) in enumerate(zip(ram.d, curve.lambdas, ram.e)):
            ni = np.arange(e_i, dtype=np.int64)
            vec = (ni * di + t * lam) // m
            shape = [1] * curve.r
            shape[axis] = e_i
            deg = deg + vec.reshape(shape)
        deg = deg + (n0 * ram.d_inf - t * ram.lam_sum) // m
        ell += np.where(deg >= 0, deg + 1, 0)
    return ell


# ---------------------------------------------------------------------------
# Splitting types and the census
# ---------------------------------------------------------------------------

@dataclass
class SplittingInfo:
    kind: str  # "branch" | "split" | "inert-or-partial"
    places: list


def splitting_type(curve: KummerCurve, a) -> SplittingInfo:
    """Decomposition of the place x = a in the extension."""
    F = curve._require_kummer_rational()
    a_enc = a.enc if isinstance(a, FieldElement) else int(a)
    if curve.alphas and a_enc in curve.alphas:
        i = curve.alphas.index(a_enc)
        return SplittingInfo("branch", curve.branch_places(i))
    fa = curve.f_eval(a_enc)
    if F.pow(fa, (F.q - 1) // curve.m) == 1:
        roots = nth_roots(FieldElement(F, fa), curve.m)
        places = [Place("split", a=a_enc, y=r.enc) for r in roots]
        return SplittingInfo("split", places)
    return SplittingInfo("inert-or-partial", [])


def completely_split_values(curve: KummerCurve) -> list[int]:
    """All a in GF(q) over which the curve splits completely, sorted."""
    F = curve._require_kummer_rational()
    power = (F.q - 1) // curve.m
    out = []
    for a in range(F.q):
        if a in curve.alphas:
            continue
        if F.pow(curve.f_eval(a), power) == 1:
            out.append(a)
    return out


@dataclass
class CensusResult:
    n_rational: int
    is_maximal: bool
    split_count: int  # number of completely split x-values


def census(curve: KummerCurve) -> CensusResult:
    """Count the rational places of the curve over its field."""
    F = curve._require_kummer_rational()
    total = 0
    split_count = 0
    power = (F.q - 1) // curve.m
    for a in range(F.q):
        if a in curve.alphas:
            continue
        fa = curve.f_eval(a)
        if F.pow(fa, power) == 1:
            total += curve.m
            split_count += 1
    for i in range(curve.r):
        total += len(curve.conjugate_labels("branch", i))
    total += len(curve.conjugate_labels("infinity"))
    sq = math.isqrt(F.q)
    is_maximal = sq * sq == F.q and total == F.q + 1 + 2 * curve.genus * sq
    return CensusResult(total, is_maximal, split_count)
