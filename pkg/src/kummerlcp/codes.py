"""Riemann-Roch bases, AG evaluation codes, and complementary pairs.

Handles function spaces L(D) for divisors D of the shape
(invariant part) - delta * Q_infinity with delta in {0, 1}:

* delta = 0: the space splits as a direct sum over powers of y; each summand
  has an explicit rational-subfield basis.
* delta = 1: the subspace of functions with one extra forced zero at
  Q_infinity is cut out as the kernel of a single linear functional that
  evaluates the leading coefficient at Q_infinity in closed form.

On top of that sit generator matrices, exact rank computation over GF(q),
the G/H construction producing complementary pairs of codes from a
non-special divisor of degree g, and exhaustive minimum-distance checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .curve import (
    Divisor,
    InvariantTuple,
    KummerCurve,
    Place,
    invariant_divisor,
    principal_divisor,
    splitting_type,
    val_y,
    x_pole_divisor,
)
from .errors import (
    BezoutFailure,
    DegreeOutOfRange,
    DimensionMismatch,
    LengthMismatch,
    NotNonSpecial,
    PoleAtEvaluationPlace,
    RampPreconditionViolated,
    SRangeEmpty,
    SupportOverlap,
    TooLargeToEnumerate,
    UnsupportedRoot,
    UnsupportedShape,
)
from .ffield import FieldSpec, Poly
from .nonspecial import (
    coeffs_half_double,
    coeffs_half_single,
    coeffs_lambda_two,
    criterion_check,
)

ENUM_CAP = 10**6


# ---------------------------------------------------------------------------
# Basis functions b(x) * y^t and linear combinations of them
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisFunction:
    """The function x^xpow * prod (x - alpha)^(-r) * y^t."""

    t: int
    xpow: int
    factors: tuple  # ((alpha_enc, r), ...) meaning a factor (x - alpha)^(-r)

    def x_degree(self) -> int:
        return self.xpow - sum(r for _, r in self.factors)


@dataclass(frozen=True)
class SpaceElement:
    """A finite linear combination of basis functions."""

    terms: tuple  # ((coeff_enc, BasisFunction), ...)

    @staticmethod
    def single(bf: BasisFunction) -> "SpaceElement":
        return SpaceElement(((1, bf),))


def basis_valuation(curve: KummerCurve, bf: BasisFunction, place: Place) -> int:
    """Exact valuation of a single basis function at a place class."""
    if place.kind == "infinity":
        v = -curve.ram.e_inf * bf.x_degree()
    elif place.kind == "branch":
        alpha = curve.alphas[place.i]
        v = curve.ram.e[place.i] * (1 if alpha == 0 else 0) * bf.xpow
        for a, r in bf.factors:
            if a == alpha:
                v -= curve.ram.e[place.i] * r
    else:
        v = bf.xpow * (1 if place.a == 0 else 0)
        for a, r in bf.factors:
            if a == place.a:
                v -= r
    return v + bf.t * val_y(curve, place)


def element_min_valuation(curve: KummerCurve, elem: SpaceElement,
                          place: Place) -> int:
    """Lower bound on the valuation of a combination: min over its terms."""
    return min(basis_valuation(curve, bf, place) for _, bf in elem.terms)


# ---------------------------------------------------------------------------
# Divisor shape recognition
# ---------------------------------------------------------------------------

def divisor_shape(curve: KummerCurve, D: Divisor):
    """Decompose D as invariant(A) - delta * Q_infinity; raise otherwise.

    Returns (A: InvariantTuple with unbounded nonnegative coefficients,
    delta in {0, 1}).
    """
    if any(p.kind == "split" for p in D.table):
        raise UnsupportedShape("divisor has split-place support")
    n = []
    for i in range(curve.r):
        coeffs = {D.coeff(p) for p in curve.branch_places(i)}
        if len(coeffs) != 1:
            raise UnsupportedShape(f"branch {i} conjugates carry unequal coefficients")
        ni = coeffs.pop()
        if ni < 0:
            raise UnsupportedShape(f"negative coefficient at branch {i}")
        n.append(ni)
    inf = [D.coeff(p) for p in curve.infinity_places()]
    rest = inf[1:]
    if rest:
        if len(set(rest)) != 1:
            raise UnsupportedShape(
                "non-distinguished infinite places carry unequal coefficients")
        n0 = rest[0]
        delta = n0 - inf[0]
    else:
        # single infinite place: delta is ambiguous; prefer delta = 0
        n0, delta = (inf[0], 0) if inf[0] >= 0 else (inf[0] + 1, 1)
    if delta not in (0, 1) or n0 < 0:
        raise UnsupportedShape(
            f"infinite coefficients {inf} are not invariant minus delta*Q_infinity")
    return InvariantTuple(n0, tuple(n)), delta


# ---------------------------------------------------------------------------
# Riemann-Roch bases
# ---------------------------------------------------------------------------

def _summand_basis(curve: KummerCurve, A: InvariantTuple, t: int):
    """Rational basis of the weight-t summand of L(invariant A)."""
    m = curve.m
    ram = curve.ram
    r_fin = [(ni * di + t * lam) // m
             for ni, di, lam in zip(A.n, ram.d, curve.lambdas)]
    r_inf = (A.n0 * ram.d_inf - t * ram.lam_sum) // m
    deg = r_inf + sum(r_fin)
    if deg < 0:
        return []
    factors = tuple((curve.alphas[i], r) for i, r in enumerate(r_fin) if r)
    return [BasisFunction(t, j, factors) for j in range(deg + 1)]


def infinity_functional(curve: KummerCurve, c_inf: int,
                        elem: SpaceElement) -> int:
    """Leading coefficient at Q_infinity of an element of L(A), where A has
    per-place coefficient c_inf at infinity.  The kernel of this map is
    exactly L(A - Q_infinity).
    """
    F = curve.field
    ram = curve.ram
    lam_bar = ram.lam_sum // ram.d_inf
    # x^{a'} y^{b'} with valuation +c_inf at every infinite place:
    # -e_inf * a' - lam_bar * b' = c_inf, solvable since gcd = 1
    g, u, w = _ext_gcd(ram.e_inf, lam_bar)
    if g != 1:
        raise BezoutFailure(
            f"gcd(e_inf, Lambda/d_inf) = {g} != 1")  # impossible by arithmetic
    a1, b1 = -u * c_inf, -w * c_inf
    omega = curve.conjugate_labels("infinity")[0]
    total = 0
    for coeff, bf in elem.terms:
        v = basis_valuation(curve, bf, curve.q_infinity())
        if v < -c_inf:
            raise UnsupportedShape(
                f"term has valuation {v} < {-c_inf} at Q_infinity")
        if v > -c_inf:
            continue
        num = (bf.t + b1) * ram.d_inf
        assert num % curve.m == 0, "zero-valuation monomial exponent mismatch"
        kappa = num // curve.m
        total = F.add(total, F.mul(coeff, F.pow(omega, kappa)))
    return total


def _ext_gcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def rr_basis(curve: KummerCurve, D) -> list[SpaceElement]:
    """Basis of L(D) for D of the shape invariant(A) - delta * Q_infinity.

    Accepts either a Divisor or a pair (InvariantTuple, delta).
    """
    if isinstance(D, Divisor):
        A, delta = divisor_shape(curve, D)
    else:
        A, delta = D
    funcs = []
    for t in range(curve.m):
        funcs.extend(_summand_basis(curve, A, t))
    if delta == 0:
        return [SpaceElement.single(bf) for bf in funcs]
    F = curve.field
    vals = [infinity_functional(curve, A.n0, SpaceElement.single(bf))
            for bf in funcs]
    pivot = next((i for i, v in enumerate(vals) if v), None)
    if pivot is None:
        return [SpaceElement.single(bf) for bf in funcs]
    out = []
    for i, bf in enumerate(funcs):
        if i == pivot:
            continue
        if vals[i] == 0:
            out.append(SpaceElement.single(bf))
        else:
            ratio = F.mul(vals[i], F.inv(vals[pivot]))
            out.append(SpaceElement(((1, bf), (F.neg(ratio), funcs[pivot]))))
    return out


# ---------------------------------------------------------------------------
# Evaluation and linear algebra over GF(q)
# ---------------------------------------------------------------------------

def split_place_list(curve: KummerCurve, a_values) -> list[Place]:
    """All places above the given completely split x-values, sorted."""
    places = []
    for a in sorted(int(v) for v in a_values):
        info = splitting_type(curve, a)
        if info.kind != "split":
            raise UnsupportedRoot(f"x = {a} is not completely split")
        places.extend(sorted(info.places, key=Place.sort_key))
    return places


def eval_element(curve: KummerCurve, elem: SpaceElement, a_arr, y_arr):
    """Evaluate a space element at split places given by parallel enc arrays."""
    F = curve.field
    out = np.zeros(len(a_arr), dtype=np.int64)
    for coeff, bf in elem.terms:
        row = F.pow_arr(a_arr, bf.xpow) if bf.xpow else np.ones(len(a_arr),
                                                               dtype=np.int64)
        for alpha, r in bf.factors:
            base = F.sub_arr(a_arr, alpha)
            if r > 0 and (base == 0).any():
                raise PoleAtEvaluationPlace(
                    f"pole at x = {alpha} among evaluation places")
            row = F.mul_arr(row, F.pow_arr(base, -r))
        if bf.t:
            row = F.mul_arr(row, F.pow_arr(y_arr, bf.t))
        if coeff != 1:
            row = F.mul_arr(row, np.full(len(a_arr), coeff, dtype=np.int64))
        out = F.add_arr(out, row)
    return out


def eval_matrix(curve: KummerCurve, basis: list[SpaceElement],
                places: list[Place]) -> np.ndarray:
    a_arr = np.array([p.a for p in places], dtype=np.int64)
    y_arr = np.array([p.y for p in places], dtype=np.int64)
    return np.vstack([eval_element(curve, e, a_arr, y_arr) for e in basis]) \
        if basis else np.zeros((0, len(places)), dtype=np.int64)


def gf_rank(field: FieldSpec, matrix: np.ndarray) -> int:
    """Rank over GF(q) by vectorized Gaussian elimination."""
    M = np.array(matrix, dtype=np.int64)
    rows, cols = M.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(M[rank:, c])[0]
        if len(pivots) == 0:
            continue
        pr = rank + int(pivots[0])
        M[[rank, pr]] = M[[pr, rank]]
        M[rank] = field.mul_arr(M[rank], np.full(cols, field.inv(int(M[rank, c])),
                                                 dtype=np.int64))
        below = M[rank + 1:, c] != 0
        if below.any():
            idx = np.nonzero(below)[0] + rank + 1
            factors = M[idx, c]
            M[idx] = field.sub_arr(
                M[idx], field.mul_arr(factors[:, None], M[rank][None, :]))
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Codes
# ---------------------------------------------------------------------------

@dataclass
class LinearCode:
    field: FieldSpec
    n: int
    k: int
    gen: np.ndarray                 # k x n matrix of encodings
    divisor_G: Divisor
    designed_distance: int
    basis: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "n": self.n,
            "k": self.k,
            "field": {"p": self.field.p, "k": self.field.k},
            "designed_distance": self.designed_distance,
            "rows": self.gen.tolist(),
        }


def build_code(curve: KummerCurve, G: Divisor, places: list[Place]) -> LinearCode:
    """Evaluation code of L(G) at the given split places."""
    n = len(places)
    if any(p in G.table for p in places):
        raise SupportOverlap("supp(G) meets the evaluation divisor")
    deg = G.degree
    g = curve.genus
    if not 2 * g - 2 < deg < n:
        raise DegreeOutOfRange(f"need 2g-2 < deg(G) < n, got deg={deg}, n={n}")
    basis = rr_basis(curve, G)
    k = deg - g + 1
    if len(basis) != k:
        raise DimensionMismatch(
            f"basis size {len(basis)} != deg - g + 1 = {k}")
    gen = eval_matrix(curve, basis, places)
    if gf_rank(curve.field, gen) != k:
        raise DimensionMismatch("generator matrix rank below ell(G)")
    return LinearCode(curve.field, n, k, gen, G, n - deg, basis)


def lcp_verify(C: LinearCode, E: LinearCode) -> bool:
    """True iff the two codes intersect trivially and span everything."""
    if C.n != E.n or C.field != E.field:
        raise LengthMismatch("codes must share length and field")
    if C.k + E.k != C.n:
        return False
    stacked = np.vstack([C.gen, E.gen])
    return gf_rank(C.field, stacked) == C.n


def min_distance_exact(code: LinearCode, cap: int = ENUM_CAP) -> int:
    """Minimum Hamming weight by exhaustive codeword enumeration."""
    F = code.field
    q, k, n = F.q, code.k, code.n
    if q**k > cap:
        raise TooLargeToEnumerate(f"q^k = {q**k} exceeds cap {cap}")
    best = n
    batch = max(1, min(q**k, 1 << 14))
    total = q**k
    start = 1  # skip the zero message
    while start < total:
        stop = min(start + batch, total)
        msgs = np.arange(start, stop, dtype=np.int64)
        cw = np.zeros((len(msgs), n), dtype=np.int64)
        rest = msgs
        for i in range(k):
            digit = rest % q
            rest = rest // q
            nz = digit != 0
            if nz.any():
                cw[nz] = F.add_arr(cw[nz], F.mul_arr(digit[nz, None],
                                                     code.gen[i][None, :]))
        weights = (cw != 0).sum(axis=1)
        best = min(best, int(weights.min()))
        start = stop
    return best


# ---------------------------------------------------------------------------
# The complementary-pair construction
# ---------------------------------------------------------------------------

@dataclass
class LCPPair:
    C: LinearCode
    E: LinearCode
    s: int
    A: InvariantTuple
    verified: bool
    gcd_identity: bool
    lmd_identity: bool

    def to_json(self):
        return {
            "params_G": {"n": self.C.n, "k": self.C.k,
                         "designed_distance": self.C.designed_distance},
            "params_H": {"n": self.E.n, "k": self.E.k,
                         "designed_distance": self.E.designed_distance},
            "s": self.s,
            "A": self.A.to_json(),
            "verified": self.verified,
            "gcd_identity": self.gcd_identity,
            "lmd_identity": self.lmd_identity,
        }


def s_interval(curve: KummerCurve, n: int, n_phi: int):
    """Open interval of admissible s values for the pair construction."""
    g = curve.genus
    lo = (g - 1) / (curve.m * n_phi)
    hi = (n - g + 1) / (curve.m * n_phi)
    first = math.floor(lo) + 1
    last = math.ceil(hi) - 1
    if first > last:
        raise SRangeEmpty(f"no integer strictly between {lo} and {hi}")
    return first, last


def lcp_build_general(curve: KummerCurve, A: InvariantTuple, phi_indices,
                      split_values, s: int | None = None) -> LCPPair:
    """Build the pair of codes from a non-special degree-g tuple A.

    G = A - Q_inf + (t - s*|phi|) * div_inf(x) and
    H = A - Q_inf + s * div_0(prod_{i in phi} (x - alpha_i)),
    evaluated at the places above the given completely split x-values.
    """
    phi_indices = sorted(set(int(i) for i in phi_indices))
    report = criterion_check(curve, A, mode="cond3")
    if not report.passed:
        raise NotNonSpecial(f"tuple {A} is not non-special of degree g")
    if A.n0 != 0:
        raise NotNonSpecial("the construction requires coefficient 0 at infinity")
    for i in phi_indices:
        if curve.ram.d[i] != 1:
            raise RampPreconditionViolated(
                f"branch {i} (lambda={curve.lambdas[i]}) is not totally ramified")
    places = split_place_list(curve, split_values)
    t = len(set(int(v) for v in split_values))
    n = t * curve.m
    n_phi = len(phi_indices)
    first, last = s_interval(curve, n, n_phi)
    if s is None:
        s = first
    if not first <= s <= last:
        raise SRangeEmpty(f"s={s} outside the admissible range [{first}, {last}]")

    A_div = invariant_divisor(curve, A)
    q_inf = curve.q_infinity()
    base = A_div - Divisor({q_inf: 1})
    G = base + (t - s * n_phi) * x_pole_divisor(curve)
    phi_zero = Divisor({curve.branch_places(i)[0]: curve.m for i in phi_indices})
    H = base + s * phi_zero

    code_G = build_code(curve, G, places)
    code_H = build_code(curve, H, places)
    verified = lcp_verify(code_G, code_H)

    # divisor identities of the construction
    gcd_ok = G.gcd_min(H) == base
    F = curve.field
    phi_poly = Poly.one(F)
    for i in phi_indices:
        phi_poly = phi_poly * Poly.linear(F, curve.alphas[i])
    h_poly = Poly.from_roots(F, sorted(set(int(v) for v in split_values)))
    D_div = Divisor({p: 1 for p in places})
    lhs = G.lmd_max(H) - D_div - base
    rhs = s * principal_divisor(curve, phi_poly) - principal_divisor(curve, h_poly)
    lmd_ok = lhs == rhs and rhs.degree == 0

    return LCPPair(code_G, code_H, s, A, verified, gcd_ok, lmd_ok)


_REGIME_FAMILIES = {
    "half_single": lambda m, r, k: coeffs_half_single(m, r, 0),
    "half_double_N1": lambda m, r, k: coeffs_half_double(m, r, 1),
    "half_double_N2": lambda m, r, k: coeffs_half_double(m, r, 2),
    "lambda_two": lambda m, r, k: coeffs_lambda_two(m, r, 0, k),
}

_REGIME_PATTERNS = {
    "half_single": lambda m, r: [1] * (r - 1) + [m // 2],
    "half_double_N1": lambda m, r: [1] * (r - 2) + [m // 2, m // 2],
    "half_double_N2": lambda m, r: [1] * (r - 2) + [m // 2, m // 2],
    "lambda_two": lambda m, r: [1] * (r - 1) + [2],
}


def lcp_build_regime(curve: KummerCurve, regime: str, split_values=None,
                     s: int | None = None, k: int = 1) -> LCPPair:
    """Pair construction specialized to a lambda-pattern family.

    Picks the non-special tuple A from the matching closed-form family,
    takes Phi over all totally ramified lambda=1 branch points, and runs the
    general construction; the specialized degree formulas are re-checked.
    """
    from .curve import completely_split_values
    from .errors import FormulaMismatch, RegimeViolation

    if regime not in _REGIME_FAMILIES:
        raise RegimeViolation(f"unknown regime {regime!r}")
    m, r = curve.m, curve.r
    if sorted(curve.lambdas) != sorted(_REGIME_PATTERNS[regime](m, r)):
        raise RegimeViolation(
            f"lambda pattern {curve.lambdas} does not match regime {regime!r}")
    tup = _REGIME_FAMILIES[regime](m, r, k)
    # the family orders coefficients ones-first; map them onto curve indices
    ones_idx = [i for i, lam in enumerate(curve.lambdas) if lam == 1]
    special_idx = [i for i, lam in enumerate(curve.lambdas) if lam != 1]
    n_curve = [0] * r
    for i, v in zip(ones_idx, tup.n[:len(ones_idx)]):
        n_curve[i] = v
    for i, v in zip(special_idx, tup.n[len(ones_idx):]):
        n_curve[i] = v
    A = InvariantTuple(tup.n0, tuple(n_curve))

    if split_values is None:
        split_values = completely_split_values(curve)
    pair = lcp_build_general(curve, A, ones_idx, split_values, s)

    n = pair.C.n
    g = curve.genus
    n_phi = len(ones_idx)
    want_G = n - pair.s * m * n_phi + g - 1
    want_H = pair.s * m * n_phi + g - 1
    if pair.C.divisor_G.degree != want_G or pair.E.divisor_G.degree != want_H:
        raise FormulaMismatch(
            f"specialized degrees ({want_G}, {want_H}) disagree with the built "
            f"pair ({pair.C.divisor_G.degree}, {pair.E.divisor_G.degree})")
    return pair
