"""Arbitrary-precision numeric evaluation of the supported series.

Strategy. Each inner alternating factor is split into its limit plus an
oscillating remainder,

    l(k) at n  =  etabar(k) + (-1)**(n-1) * psi_k(n),
    psi_k(n)   =  sum_{i>=1} (-1)**(i-1) / (n+i)**k  >  0,

while non-alternating factors are kept whole. Multiplying out turns the
requested sum into finitely many pieces that are either constant multiples
of zeta values, alternating series (accelerated with the Chebyshev scheme
of Cohen, Rodriguez Villegas and Zagier), or positive series with algebraic
decay at least 1/n**2 (summed by recursive even/odd splitting, each level
contributing one short alternating series). Factor values away from the
cached dense range come from Euler-Maclaurin expansions whose smallest kept
term is checked against the precision target.

Every public evaluation is performed twice at staggered precision and the
two results must agree to the claimed number of digits; a failed agreement
escalates the internal thresholds once and then raises AccelerationError.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import mpmath as mp

from .kernel import (
    GUARD_DIGITS,
    AccelerationError,
    DivergentSumError,
    PrecReal,
    Rational,
    binomial_exact,
    bernoulli_frac,
    mpf_from_fraction,
)
from .sumspec import Factor, SumSpec, parse_sumspec

__all__ = [
    "eval_sum",
    "eval_polylog",
    "eval_series",
    "polylog_moment",
    "eval_I",
    "eval_R",
    "zeta_value",
    "zetabar_value",
    "ln2_value",
    "lihalf_value",
    "euler_gamma_value",
    "DEFAULT_MAX_TERMS",
]

DEFAULT_MAX_TERMS = 10 ** 6
MAX_TERMS_ENV = "EULERSUM_MAX_TERMS"


def _resolve_max_terms(max_terms: int | None) -> int:
    if max_terms is not None:
        return max_terms
    env = os.environ.get(MAX_TERMS_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{MAX_TERMS_ENV} must be an integer, got {env!r}")
    return DEFAULT_MAX_TERMS


class _Budget:
    """Counts series-term evaluations so runaway requests fail loudly."""

    __slots__ = ("remaining",)

    def __init__(self, limit: int):
        self.remaining = limit

    def spend(self, n: int = 1) -> None:
        self.remaining -= n
        if self.remaining < 0:
            raise AccelerationError(
                "term budget exhausted; raise --max-terms or "
                f"{MAX_TERMS_ENV} for this request"
            )


# ---------------------------------------------------------------------------
# Exact asymptotic coefficients.
# ---------------------------------------------------------------------------

_BETA_COEFFS: dict[int, list[Fraction]] = {}


def _beta_coeffs(k: int, upto: int) -> list[Fraction]:
    """Coefficients c_m with psi-series  beta(k,x) ~ sum_m c_m x**-(k+m).

    From beta(k,x) + beta(k,x+1) = x**-k; c_0 = 1/2 and
    2 c_m = -sum_{r<m} c_r (-1)**(m-r) C(k+m-1, m-r).
    """
    coeffs = _BETA_COEFFS.setdefault(k, [Fraction(1, 2)])
    while len(coeffs) <= upto:
        m = len(coeffs)
        acc = Fraction(0)
        for r in range(m):
            acc += coeffs[r] * (-1) ** (m - r) * binomial_exact(k + m - 1, m - r)
        coeffs.append(-acc / 2)
    return coeffs


@functools.lru_cache(maxsize=None)
def _zeta_tail_coeff(k: int, r: int) -> Fraction:
    # B_{2r}/(2r)! times the rising factorial k(k+1)...(k+2r-2).
    rise = math.prod(range(k, k + 2 * r - 1))
    return bernoulli_frac(2 * r) * rise / math.factorial(2 * r)


@functools.lru_cache(maxsize=None)
def _harmonic_tail_coeff(r: int) -> Fraction:
    return bernoulli_frac(2 * r) / (2 * r)


# ---------------------------------------------------------------------------
# Per-precision workspace.
# ---------------------------------------------------------------------------


class _Workspace:
    """Factor evaluators and constants cached for one working precision.

    All mpf values held here were created at `dps` decimal digits; callers
    must only use a workspace under a matching mp.workdps block.
    """

    def __init__(self, dps: int, boost: int = 0):
        self.dps = dps
        self.boost = boost
        self.n_dense = math.ceil((1.5 + 0.5 * boost) * dps) + 32
        self.cvz_factor = 1.35 + 0.25 * boost
        self.ln2 = mp.ln(2)
        self._zeta: dict[int, mp.mpf] = {}
        self._lihalf: dict[int, mp.mpf] = {}
        self._zl_dense: dict[int, list[mp.mpf]] = {}
        self._psi_dense: dict[int, list[mp.mpf]] = {}
        self._beta_mpf: dict[int, list[mp.mpf]] = {}
        self._gamma: mp.mpf | None = None

    # -- asymptotic series -------------------------------------------------

    def _adaptive_tail(self, first_terms: Iterable[mp.mpf],
                       target: mp.mpf, what: str) -> mp.mpf:
        """Sum an asymptotic series until two consecutive terms fall below
        target, insisting the terms are still shrinking at the cutoff.

        Exactly-zero coefficients occur mid-series (every second psi
        coefficient vanishes), so a single small term must not terminate.
        """
        acc = mp.mpf(0)
        prev = mp.inf
        below = 0
        for term in first_terms:
            at = abs(term)
            acc += term
            if at < target:
                below += 1
                if below >= 2:
                    return acc
                continue
            below = 0
            if at > prev:
                raise AccelerationError(
                    f"asymptotic series for {what} bottomed out above the "
                    "precision target"
                )
            prev = at
        raise AccelerationError(f"asymptotic series for {what} ran too long")

    def zeta_tail(self, k: int, a: int | mp.mpf) -> mp.mpf:
        """sum_{j >= a} j**-k for integer a, via Euler-Maclaurin at a."""
        av = mp.mpf(a)
        lead = av ** (1 - k) / (k - 1)
        target = mp.eps * max(abs(lead), mp.mpf(10) ** (-self.dps)) / 16

        def terms():
            inv2 = av ** -2
            power = av ** (1 - k) * inv2
            r = 1
            while r < 4 * self.dps:
                yield mpf_from_fraction(_zeta_tail_coeff(k, r)) * power
                power *= inv2
                r += 1

        corr = self._adaptive_tail(terms(), target, f"zeta tail k={k}")
        return lead + av ** -k / 2 + corr

    def harmonic_large(self, n) -> mp.mpf:
        nv = mp.mpf(n)
        target = mp.eps / 16

        def terms():
            inv2 = nv ** -2
            power = inv2
            r = 1
            while r < 4 * self.dps:
                yield -mpf_from_fraction(_harmonic_tail_coeff(r)) * power
                power *= inv2
                r += 1

        corr = self._adaptive_tail(terms(), target, "harmonic expansion")
        return mp.ln(nv) + self.gamma + 1 / (2 * nv) + corr

    def beta_value(self, k: int, x) -> mp.mpf:
        """beta(k, x) = sum_{i>=0} (-1)**i (x+i)**-k for x >= 1."""
        if x >= math.ceil(1.5 * self.dps) + 10:
            return self._beta_asym(k, x)
        a = lambda i: (mp.mpf(x) + i) ** -k
        return _cvz_sum(a, int(self.cvz_factor * self.dps) + 12)

    def _beta_asym(self, k: int, x) -> mp.mpf:
        xv = mp.mpf(x)
        lead = xv ** -k / 2
        target = mp.eps * abs(lead) / 16
        coeffs = self._beta_mpf.setdefault(k, [])

        def terms():
            invx = 1 / xv
            power = xv ** -k
            m = 0
            while m < 6 * self.dps:
                if m >= len(coeffs):
                    for c in _beta_coeffs(k, m + 15)[len(coeffs):]:
                        coeffs.append(mpf_from_fraction(c))
                yield coeffs[m] * power
                power *= invx
                m += 1

        return self._adaptive_tail(terms(), target, f"psi series k={k}")

    # -- constants -----------------------------------------------------------

    @property
    def gamma(self) -> mp.mpf:
        if self._gamma is None:
            n = self.n_dense
            h = mp.mpf(0)
            for j in range(1, n + 1):
                h += mp.mpf(1) / j
            nv = mp.mpf(n)
            target = mp.eps / 16

            def terms():
                inv2 = nv ** -2
                power = inv2
                r = 1
                while r < 4 * self.dps:
                    yield mpf_from_fraction(_harmonic_tail_coeff(r)) * power
                    power *= inv2
                    r += 1

            corr = self._adaptive_tail(terms(), target, "gamma expansion")
            self._gamma = h - mp.ln(nv) - 1 / (2 * nv) + corr
        return self._gamma

    def zeta(self, k: int) -> mp.mpf:
        if k < 2:
            raise ValueError("zeta needs k >= 2")
        if k not in self._zeta:
            n = self.n_dense
            acc = mp.mpf(0)
            for j in range(n, 0, -1):
                acc += mp.mpf(j) ** -k
            self._zeta[k] = acc + self.zeta_tail(k, n + 1)
        return self._zeta[k]

    def zetabar(self, k: int) -> mp.mpf:
        # alternating zeta; k = 1 is ln 2
        if k < 1:
            raise ValueError("alternating zeta needs k >= 1")
        if k == 1:
            return self.ln2
        return (1 - mp.mpf(2) ** (1 - k)) * self.zeta(k)

    def lihalf(self, k: int) -> mp.mpf:
        if k < 1:
            raise ValueError("polylog order must be >= 1")
        if k not in self._lihalf:
            acc = mp.mpf(0)
            x = mp.mpf(1)
            n = 1
            while True:
                x /= 2
                term = x / mp.mpf(n) ** k
                acc += term
                # geometric tail: remaining < term
                if term < mp.eps * acc / 8 and n > 4:
                    break
                n += 1
            self._lihalf[k] = acc
        return self._lihalf[k]

    # -- factor values -------------------------------------------------------

    def zl(self, k: int, n) -> mp.mpf:
        """Non-alternating inner factor value at n (k = 1: harmonic)."""
        if n <= self.n_dense:
            dense = self._zl_dense.get(k)
            if dense is None:
                dense = [mp.mpf(0)]
                for j in range(1, self.n_dense + 1):
                    dense.append(dense[-1] + mp.mpf(j) ** -k)
                self._zl_dense[k] = dense
            return dense[n]
        if k == 1:
            return self.harmonic_large(n)
        return self.zeta(k) - self.zeta_tail(k, mp.mpf(n) + 1)

    def psi(self, k: int, n) -> mp.mpf:
        """Oscillation amplitude of the alternating factor: beta(k, n+1)."""
        if n <= self.n_dense:
            dense = self._psi_dense.get(k)
            if dense is None:
                top = self.n_dense + 2
                val = self._beta_asym(k, top)
                dense = [mp.mpf(0)] * (self.n_dense + 1)
                for x in range(top - 1, 1, -1):
                    val = mp.mpf(x) ** -k - val
                    if x - 1 <= self.n_dense:
                        dense[x - 1] = val
                self._psi_dense[k] = dense
            return dense[n]
        return self._beta_asym(k, mp.mpf(n) + 1)


_WORKSPACES: dict[tuple[int, int], _Workspace] = {}


def _workspace(dps: int, boost: int = 0) -> _Workspace:
    key = (dps, boost)
    ws = _WORKSPACES.get(key)
    if ws is None:
        ws = _WORKSPACES[key] = _Workspace(dps, boost)
    return ws


# ---------------------------------------------------------------------------
# Alternating series summation.
# ---------------------------------------------------------------------------


def _cvz_sum(a: Callable[[int], mp.mpf], n: int) -> mp.mpf:
    """sum_{k>=0} (-1)**k a(k) by the Chebyshev acceleration scheme.

    Error decays like (3+sqrt(8))**-n for sequences that are moments of a
    measure on [0,1]; callers validate the result independently.
    """
    d = (3 + 2 * mp.sqrt(2)) ** n
    d = (d + 1 / d) / 2
    b = mp.mpf(-1)
    c = -d
    s = mp.mpf(0)
    for k in range(n):
        c = b - c
        s += c * a(k)
        b *= mp.mpf((k + n) * (k - n)) / ((mp.mpf(2 * k + 1) / 2) * (k + 1))
    return s / d


def _alternating_sum(a: Callable[[int], mp.mpf], abs_err: mp.mpf,
                     ws: _Workspace) -> mp.mpf:
    """sum_{k>=0} (-1)**k a(k), |error| <= abs_err.

    Positive decreasing sequences are summed directly when few terms
    suffice (first-omitted-term bound); otherwise the accelerated scheme
    runs with a term count matched to the requested accuracy.
    """
    memo: dict[int, mp.mpf] = {}

    def av(k: int) -> mp.mpf:
        v = memo.get(k)
        if v is None:
            v = memo[k] = a(k)
        return v

    a0, a1 = av(0), av(1)
    scale = max(abs(a0), abs(a1))
    if scale == 0:
        return mp.mpf(0)
    if abs_err <= 0:
        raise ValueError("abs_err must be positive")
    ratio = scale / abs_err
    dn = 1 if ratio <= 1 else min(int(mp.ceil(mp.log10(ratio))) + 1, ws.dps + 8)
    ncvz = int(ws.cvz_factor * dn) + 12
    if a0 >= a1 > 0:
        # plain summation while the sequence keeps decreasing
        cap = 3 * ncvz + 24
        s = mp.mpf(0)
        sign = 1
        prev = mp.inf
        for k in range(cap):
            t = av(k)
            if not (0 < t <= prev):
                break
            s += sign * t
            sign = -sign
            prev = t
            if t <= abs_err:
                return s
    return _cvz_sum(av, ncvz)


# ---------------------------------------------------------------------------
# Piece decomposition of a sum specification.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Piece:
    coeff: object                       # mpf at the workspace precision
    alternating: bool
    zl: tuple[tuple[int, int], ...]     # (order, exponent), kept-whole factors
    psi: tuple[tuple[int, int], ...]    # (order, count), oscillation factors
    power: int


def _pieces(spec: SumSpec, ws: _Workspace) -> list[_Piece]:
    h_factors = tuple((f.order, f.exponent) for f in spec.factors if f.kind == "h")
    l_factors = [(f.order, f.exponent) for f in spec.factors if f.kind == "l"]
    out: list[_Piece] = []

    def rec(i: int, coeff: mp.mpf, parity: int, psi: list[tuple[int, int]]):
        if i == len(l_factors):
            alt = spec.alternating ^ (parity % 2 == 1)
            out.append(_Piece(coeff, alt, h_factors, tuple(psi), spec.power))
            return
        k, e = l_factors[i]
        eta = ws.zetabar(k)
        for c in range(e + 1):
            cf = coeff * binomial_exact(e, c) * eta ** (e - c)
            if c > 0:
                psi.append((k, c))
            rec(i + 1, cf, parity + c, psi)
            if c > 0:
                psi.pop()

    rec(0, mp.mpf(1), 0, [])
    return out


def _term_factory(ws: _Workspace, piece: _Piece,
                  budget: _Budget) -> Callable[[int], mp.mpf]:
    zl, psi, q = piece.zl, piece.psi, piece.power

    def u(n: int) -> mp.mpf:
        budget.spend()
        acc = mp.mpf(n) ** -q
        for k, e in zl:
            acc *= ws.zl(k, n) ** e
        for k, c in psi:
            acc *= ws.psi(k, n) ** c
        return acc

    return u


def _positive_sum(ws: _Workspace, piece: _Piece, u: Callable[[int], mp.mpf],
                  abs_err: mp.mpf) -> mp.mpf:
    """sum_{n>=1} u(n) for positive u decaying at least like n**-2.

    Even/odd splitting: with Alt_L = sum_m (-1)**(m-1) u(2**L m),
    the total is sum_L 2**L Alt_L, stopped once the envelope bound on the
    remaining positive tail 2**M sum_m u(2**M m) is below budget.
    """
    alpha = piece.power + sum(k * c for k, c in piece.psi)
    if alpha < 2:
        raise DivergentSumError("positive part decays too slowly")
    jlog = sum(e for k, e in piece.zl if k == 1)
    cconst = mp.mpf(1)
    for k, e in piece.zl:
        if k >= 2:
            cconst *= ws.zeta(k) ** e
    total = mp.mpf(0)
    max_levels = 7 * ws.dps + 80
    for level in range(max_levels):
        err_l = abs_err / (mp.mpf(2) ** (level + 1) * (level + 1) * (level + 2))
        alt = _alternating_sum(lambda m: u((m + 1) << level), err_l, ws)
        total += mp.mpf(2) ** level * alt
        n0 = 1 << (level + 1)
        ln_n0 = mp.ln(n0)
        # envelope u(n) <= cconst (1+ln n)**jlog n**-alpha needs the
        # envelope decreasing past n0 before the tail bound applies
        if (alpha - 1) * (1 + ln_n0) > 2 * jlog:
            kfac = 1 / ((alpha - 1) * (1 - jlog / ((alpha - 1) * (1 + ln_n0))))
            n0v = mp.mpf(n0)
            env_int = cconst * (1 + ln_n0) ** jlog * n0v ** (1 - alpha) * kfac
            u0 = u(n0)
            remainder = 2 * (n0v * u0 + env_int)
            if remainder <= abs_err / 2:
                return total
    raise AccelerationError("even/odd splitting did not terminate")


def _eval_pieces(spec: SumSpec, ws: _Workspace, budget: _Budget) -> mp.mpf:
    pieces = _pieces(spec, ws)
    abs_target = mp.mpf(10) ** (2 - ws.dps)
    total = mp.mpf(0)
    for piece in pieces:
        per = abs_target / (len(pieces) * max(mp.mpf(1), abs(piece.coeff)))
        if not piece.zl and not piece.psi:
            if piece.alternating:
                val = ws.zetabar(piece.power)
            elif piece.power >= 2:
                val = ws.zeta(piece.power)
            else:
                raise DivergentSumError(str(spec))
        else:
            u = _term_factory(ws, piece, budget)
            if piece.alternating:
                val = _alternating_sum(lambda m: u(m + 1), per, ws)
            else:
                val = _positive_sum(ws, piece, u, per)
        total += piece.coeff * val
    return total


_RAW_CACHE: dict[tuple[str, int, int], mp.mpf] = {}


def _eval_raw(spec: SumSpec, dps: int, budget: _Budget, boost: int) -> mp.mpf:
    key = (str(spec), dps, boost)
    hit = _RAW_CACHE.get(key)
    if hit is not None:
        return hit
    with mp.workdps(dps):
        val = _eval_pieces(spec, _workspace(dps, boost), budget)
    _RAW_CACHE[key] = val
    return val


def _coerce_spec(spec: SumSpec | str) -> SumSpec:
    return parse_sumspec(spec) if isinstance(spec, str) else spec


def eval_sum(spec: SumSpec | str, digits: int = 30,
             max_terms: int | None = None) -> PrecReal:
    """Evaluate the infinite sum described by `spec` to `digits` digits.

    The value is computed independently at two staggered precisions; the
    runs must agree within the claimed accuracy or, after one retry with
    raised internal thresholds, AccelerationError is raised.
    """
    spec = _coerce_spec(spec)
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if not spec.converges():
        raise DivergentSumError(f"{spec} diverges")
    limit = _resolve_max_terms(max_terms)
    last_exc: AccelerationError | None = None
    for boost in (0, 1):
        budget = _Budget(limit)
        try:
            lo = _eval_raw(spec, digits + GUARD_DIGITS, budget, boost)
            hi = _eval_raw(spec, digits + GUARD_DIGITS + 10, budget, boost)
        except AccelerationError as exc:
            last_exc = exc
            continue
        with mp.workdps(digits + GUARD_DIGITS):
            tol = mp.mpf(10) ** (1 - digits) * max(mp.mpf(1), abs(hi))
            if abs(lo - hi) <= tol:
                return PrecReal(hi, digits)
    detail = f" ({last_exc})" if last_exc is not None else ""
    raise AccelerationError(
        f"could not certify {digits} digits for {spec}{detail}"
    ) from last_exc


# ---------------------------------------------------------------------------
# Polylogarithms and weighted variants.
# ---------------------------------------------------------------------------


def _polylog_mpf(p: int, x: mp.mpf, ws: _Workspace) -> mp.mpf:
    if p < 1:
        raise ValueError("polylog order must be >= 1")
    if x == 1:
        if p < 2:
            raise DivergentSumError("polylog of order 1 diverges at 1")
        return ws.zeta(p)
    if x == -1:
        return -ws.zetabar(p)
    if abs(x) > 1:
        raise ValueError("polylog argument must satisfy |x| <= 1")
    if p == 1:
        return -mp.ln(1 - x)
    if abs(x) <= mp.mpf(1) / 2:
        acc = mp.mpf(0)
        xn = mp.mpf(1)
        n = 1
        while True:
            xn *= x
            acc += xn / mp.mpf(n) ** p
            if abs(xn) / (1 - abs(x)) < mp.eps * max(abs(acc), abs(x)) / 8:
                return acc
            n += 1
    if x > 0:
        # square the argument toward the small-|x| range
        return mp.mpf(2) ** (1 - p) * _polylog_mpf(p, x * x, ws) \
            - _polylog_mpf(p, -x, ws)
    ax = -x
    a = lambda k: ax ** (k + 1) / mp.mpf(k + 1) ** p
    return -_cvz_sum(a, int(ws.cvz_factor * ws.dps) + 12)


def eval_polylog(p: int, x, digits: int = 30) -> PrecReal:
    """Polylogarithm of integer order p >= 1 at real x, |x| <= 1."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    dps = digits + GUARD_DIGITS
    with mp.workdps(dps):
        val = _polylog_mpf(p, mp.mpf(_to_mpf_arg(x)), _workspace(dps))
    return PrecReal(val, digits)


def _to_mpf_arg(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def polylog_moment(q: int, x, n: int, digits: int = 30) -> PrecReal:
    """sum_{m>=1} x**(m+n) / (m**q (m+n)), via the polylog closed form."""
    if q < 1 or n < 1:
        raise ValueError("need q >= 1 and n >= 1")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    dps = digits + GUARD_DIGITS
    with mp.workdps(dps):
        xv = _to_mpf_arg(x)
        if not -1 <= xv < 1:
            raise ValueError("argument must lie in [-1, 1)")
        ws = _workspace(dps)
        nv = mp.mpf(n)
        xn = xv ** n
        acc = mp.mpf(0)
        for i in range(1, q):
            acc += (-1) ** (i - 1) * xn * nv ** -i * _polylog_mpf(q + 1 - i, xv, ws)
        sign = (-1) ** q
        acc += sign * nv ** -q * mp.ln(1 - xv) * (xn - 1)
        partial = mp.mpf(0)
        xj = mp.mpf(1)
        for j in range(1, n + 1):
            xj *= xv
            partial += xj / j
        acc -= sign * nv ** -q * partial
    return PrecReal(acc, digits)


# ---------------------------------------------------------------------------
# Double series with the coupled denominator.
# ---------------------------------------------------------------------------


def _harmonic_spec(power: int) -> SumSpec:
    return SumSpec((Factor("h", 1),), power)


def _l1_spec(power: int, alternating: bool = False) -> SumSpec:
    return SumSpec((Factor("l", 1),), power, alternating)


def eval_I(p: int, q: int, x=1, digits: int = 30,
           max_terms: int | None = None) -> PrecReal:
    """sum_{k,m>=1} x**(k+m) / (k**p m**q (k+m)) for -1 <= x <= 1.

    The inner index is resolved exactly by the partial-fraction split of
    1/(m**q (m+k)), leaving polylog products plus a single tail series.
    """
    if p < 1 or q < 1:
        raise ValueError("need p >= 1 and q >= 1")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    w = p + q
    dps = digits + GUARD_DIGITS
    with mp.workdps(dps):
        xv = _to_mpf_arg(x)
        if abs(xv) > 1:
            raise ValueError("argument must satisfy |x| <= 1")
        ws = _workspace(dps)
        if xv == 1:
            acc = mp.mpf(0)
            for j in range(2, q + 1):
                acc += (-1) ** (q - j) * ws.zeta(j) * ws.zeta(w + 1 - j)
            inner = eval_sum(_harmonic_spec(w), digits + 6,
                             max_terms=max_terms)
            acc += (-1) ** (q - 1) * mp.mpf(inner.value)
        elif xv == -1:
            acc = mp.mpf(0)
            for j in range(1, q + 1):
                acc += (-1) ** (q - j) * ws.zetabar(j) * ws.zetabar(w + 1 - j)
            plain = eval_sum(_l1_spec(w), digits + 6, max_terms=max_terms)
            acc += (-1) ** q * (mp.mpf(plain.value) - ws.ln2 * ws.zeta(w))
        else:
            acc = mp.mpf(0)
            for j in range(1, q + 1):
                acc += ((-1) ** (q - j) * _polylog_mpf(j, xv, ws)
                        * _polylog_mpf(w + 1 - j, xv, ws))
            acc += (-1) ** q * _log_tail_series(xv, w, ws)
    return PrecReal(acc, digits)


def _log_tail_series(xv: mp.mpf, w: int, ws: _Workspace) -> mp.mpf:
    """sum_{k>=1} tail_k / k**w with tail_k = sum_{j>k} x**j / j, |x| < 1."""
    ax = abs(xv)
    kmax = int(mp.ceil((ws.dps + 6) * mp.ln(10) / mp.ln(1 / ax))) + 8
    # seed the deepest tail directly, then extend downward exactly
    tail = mp.mpf(0)
    xj = xv ** (kmax + 1)
    j = kmax + 1
    while True:
        tail += xj / j
        if ax ** (j + 1) / (1 - ax) < mp.eps * ax ** (kmax + 1) / 8:
            break
        xj *= xv
        j += 1
    acc = mp.mpf(0)
    xk = xv ** kmax
    for k in range(kmax, 0, -1):
        acc += tail / mp.mpf(k) ** w
        tail += xk / k
        xk /= xv
    return acc


def eval_R(p: int, q: int, digits: int = 30,
           max_terms: int | None = None) -> PrecReal:
    """sum_{k,m>=1} (-1)**m / (k**p m**q (k+m)).

    Same partial-fraction treatment as eval_I, with only the inner index
    carrying the sign.
    """
    if p < 1 or q < 1:
        raise ValueError("need p >= 1 and q >= 1")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    w = p + q
    dps = digits + GUARD_DIGITS
    with mp.workdps(dps):
        ws = _workspace(dps)
        acc = mp.mpf(0)
        for j in range(1, q + 1):
            acc -= (-1) ** (q - j) * ws.zetabar(j) * ws.zeta(w + 1 - j)
        alt = eval_sum(_l1_spec(w, alternating=True), digits + 6,
                       max_terms=max_terms)
        acc += (-1) ** q * (ws.ln2 * ws.zetabar(w) - mp.mpf(alt.value))
    return PrecReal(acc, digits)


# ---------------------------------------------------------------------------
# Generalized inner-weighted series.
# ---------------------------------------------------------------------------


def eval_series(factors: Sequence[tuple[int, Rational]], power: int, z: Rational,
                digits: int = 30, max_terms: int | None = None) -> PrecReal:
    """sum_n (prod_i w_n(l_i, x_i)) z**n / n**power, where
    w_n(l, x) = sum_{j<=n} x**j / j**l.

    Supported: every argument in {1, -1} (delegates to eval_sum); |z| < 1
    with any |x_i| <= 1 (direct summation); and z = +-1 with one factor of
    |x| < 1 (summation order swapped).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    facs = [(int(l), Fraction(x)) for l, x in factors]
    for l, x in facs:
        if l < 1:
            raise ValueError("factor order must be >= 1")
        if abs(x) > 1:
            raise ValueError("factor arguments must satisfy |x| <= 1")
    zf = Fraction(z)
    if abs(zf) > 1:
        raise ValueError("outer argument must satisfy |z| <= 1")

    if abs(zf) == 1 and all(abs(x) == 1 for _, x in facs):
        neg = sum(1 for _, x in facs if x == -1)
        spec = SumSpec(
            tuple(Factor("h" if x == 1 else "l", l) for l, x in facs),
            power,
            alternating=(zf == -1),
        )
        if not spec.converges():
            raise DivergentSumError("series diverges")
        sign = (-1) ** neg * (-1 if zf == -1 else 1)
        inner = eval_sum(spec, digits, max_terms=max_terms)
        with mp.workdps(digits + GUARD_DIGITS):
            return PrecReal(sign * mp.mpf(inner.value), digits)

    dps = digits + GUARD_DIGITS
    if abs(zf) < 1:
        with mp.workdps(dps):
            val = _series_direct(facs, power, zf, _workspace(dps))
        return PrecReal(val, digits)
    if len(facs) == 1 and abs(facs[0][1]) < 1:
        with mp.workdps(dps):
            val = _series_swapped(facs[0], power, zf, _workspace(dps))
        return PrecReal(val, digits)
    if sum(1 for _, x in facs if abs(x) < 1) == 1:
        with mp.workdps(dps):
            val = _series_mixed(facs, power, zf, digits, max_terms,
                                _workspace(dps))
        return PrecReal(val, digits)
    raise ValueError("unsupported argument combination for eval_series")


def _series_direct(facs, power: int, zf: Fraction, ws: _Workspace) -> mp.mpf:
    zv = _to_mpf_arg(zf)
    az = abs(zv)
    d_log = sum(1 for l, _ in facs if l == 1)
    cbound = mp.mpf(1)
    for l, _ in facs:
        if l >= 2:
            cbound *= ws.zeta(l)
    xs = [_to_mpf_arg(x) for _, x in facs]
    partials = [mp.mpf(0)] * len(facs)
    xpow = [mp.mpf(1)] * len(facs)
    acc = mp.mpf(0)
    zn = mp.mpf(1)
    n = 1
    while True:
        term = mp.mpf(n) ** -power
        for i, (l, _) in enumerate(facs):
            xpow[i] *= xs[i]
            partials[i] += xpow[i] / mp.mpf(n) ** l
            term *= partials[i]
        zn *= zv
        acc += term * zn
        if n >= 2 * d_log + 4:
            rho = az * mp.e ** (mp.mpf(d_log) / (n + 1))
            if rho < 1:
                bound = (2 * cbound * (1 + mp.ln(n)) ** d_log
                         * az ** (n + 1) / (1 - rho))
                if bound < mp.eps * max(abs(acc), az) / 8:
                    return acc
        n += 1


def _series_swapped(fac: tuple[int, Fraction], power: int, zf: Fraction,
                    ws: _Workspace) -> mp.mpf:
    l, x = fac
    xv = _to_mpf_arg(x)
    ax = abs(xv)
    if zf == 1 and power < 2:
        raise DivergentSumError("series diverges")
    if ax == 0:
        return mp.mpf(0)
    jmax = int(mp.ceil((ws.dps + 8) * mp.ln(10) / mp.ln(1 / ax))) + 8
    if zf == 1:
        # T(j) = sum_{i>j} i**-power, filled downward from the deep tail
        tails = [mp.mpf(0)] * (jmax + 1)
        tails[jmax] = ws.zeta_tail(power, jmax + 1)
        for j in range(jmax, 0, -1):
            tails[j - 1] = tails[j] + mp.mpf(j) ** -power
        acc = mp.mpf(0)
        xj = mp.mpf(1)
        for j in range(1, jmax + 1):
            xj *= xv
            acc += xj / mp.mpf(j) ** l * tails[j - 1]
        return acc
    # z = -1: sum_{i>=j} (-1)**i i**-power = (-1)**j beta(power, j)
    betas = [mp.mpf(0)] * (jmax + 2)
    betas[jmax + 1] = ws.beta_value(power, jmax + 1)
    for j in range(jmax, 0, -1):
        betas[j] = mp.mpf(j) ** -power - betas[j + 1]
    acc = mp.mpf(0)
    xj = mp.mpf(1)
    for j in range(1, jmax + 1):
        xj *= xv
        acc += xj / mp.mpf(j) ** l * (-1) ** j * betas[j]
    return acc


def _series_mixed(facs, power: int, zf: Fraction, digits: int,
                  max_terms: int | None, ws: _Workspace) -> mp.mpf:
    """z = +-1 with exactly one |x| < 1 factor among +-1 co-factors.

    Splitting w_n(l, x) = Li_l(x) - t_n with t_n = sum_{k>n} x**k/k**l
    reduces the head to the all-unit case; the t_n correction decays
    geometrically, so it is summed directly with tails filled backward.
    """
    idx = next(i for i, (_, x) in enumerate(facs) if abs(x) < 1)
    l0, x0 = facs[idx]
    others = [f for i, f in enumerate(facs) if i != idx]
    if x0 == 0:
        return mp.mpf(0)
    xv = _to_mpf_arg(x0)
    ax = abs(xv)

    neg = sum(1 for _, x in others if x == -1)
    head_spec = SumSpec(
        tuple(Factor("h" if x == 1 else "l", l) for l, x in others),
        power,
        alternating=(zf == -1),
    )
    if not head_spec.converges():
        raise DivergentSumError("series diverges")
    sign = (-1) ** neg * (-1 if zf == -1 else 1)
    head = sign * mp.mpf(eval_sum(head_spec, ws.dps, max_terms=max_terms).value)
    head *= _polylog_mpf(l0, xv, ws)

    # correction: sum_n (prod_others w_n) t_n z**n / n**power
    nmax = int(mp.ceil((ws.dps + 8) * mp.ln(10) / mp.ln(1 / ax))) + 16
    seed_len = nmax + int(mp.ceil(mp.ln(4 / (1 - ax)) / mp.ln(1 / ax))) + 8
    tail = mp.mpf(0)
    xk = xv ** (nmax + 1)
    for k in range(nmax + 1, seed_len + 1):
        tail += xk / mp.mpf(k) ** l0
        xk *= xv
    tails = [mp.mpf(0)] * (nmax + 1)
    tails[nmax] = tail
    for n in range(nmax, 1, -1):
        tails[n - 1] = tails[n] + xv ** n / mp.mpf(n) ** l0
    zv = _to_mpf_arg(zf)
    partials = [mp.mpf(0)] * len(others)
    corr = mp.mpf(0)
    zn = mp.mpf(1)
    for n in range(1, nmax + 1):
        zn *= zv
        term = zn / mp.mpf(n) ** power
        for i, (l, x) in enumerate(others):
            partials[i] += (1 if x == 1 or n % 2 == 0 else -1) / mp.mpf(n) ** l
            term *= partials[i]
        corr -= term * tails[n]
    return head + corr


# ---------------------------------------------------------------------------
# Named constants.
# ---------------------------------------------------------------------------


def _const(digits: int, maker) -> PrecReal:
    if digits < 1:
        raise ValueError("digits must be >= 1")
    dps = digits + GUARD_DIGITS
    with mp.workdps(dps):
        val = maker(_workspace(dps))
    return PrecReal(val, digits)


def zeta_value(k: int, digits: int = 30) -> PrecReal:
    return _const(digits, lambda ws: ws.zeta(k))


def zetabar_value(k: int, digits: int = 30) -> PrecReal:
    return _const(digits, lambda ws: ws.zetabar(k))


def ln2_value(digits: int = 30) -> PrecReal:
    return _const(digits, lambda ws: ws.ln2)


def lihalf_value(k: int, digits: int = 30) -> PrecReal:
    return _const(digits, lambda ws: ws.lihalf(k))


def euler_gamma_value(digits: int = 30) -> PrecReal:
    return _const(digits, lambda ws: ws.gamma)
