"""Numerical Meijer G-function for real positive argument.

Convention::

    G^{m,n}_{p,q}(z | a; b) = 1/(2 pi i) int  prod_{j<=m} Gamma(b_j - s) prod_{j<=n} Gamma(1 - a_j + s)
                                            / (prod_{j>m} Gamma(1 - b_j + s) prod_{j>n} Gamma(a_j - s))  z^s ds

taken along a vertical line ``Re s = c`` with ``max(a_front) - 1 < c < min(b_front)``.
The line integral is evaluated with the trapezoidal rule, which converges
geometrically for integrands analytic in a strip. A convergent residue series
is used as a fallback (and as an independent check in the tests).

:class:`MellinBarnes` turns an integrand written as a product of
``Gamma(a + k t)`` factors with rational ``k`` into a single G-function via the
Gauss multiplication theorem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import optimize, special

from .errors import ContourError, ConvergenceError, DegenerateParameterError, ModeError, ParameterDomainError

__all__ = [
    "MeijerGParams",
    "ContourSpec",
    "MeijerGResult",
    "GammaFactor",
    "MellinBarnes",
    "delta_block",
    "log_gamma_complex",
    "meijer_g",
    "meijer_g_series",
    "leading_residues",
    "halving_check",
]

_EPS = np.finfo(float).eps
_LOG_TAIL = 40.0  # integrand dropped once below exp(-40) of its peak


def log_gamma_complex(s):
    """Principal branch of ``log Gamma(s)``; raises at the poles ``s = 0, -1, ...``."""
    s = np.asarray(s, dtype=complex)
    pole = (s.imag == 0) & (s.real <= 0) & (s.real == np.round(s.real))
    if np.any(pole):
        raise ParameterDomainError(f"log Gamma has a pole at {s[pole].ravel()[0].real:g}")
    out = special.loggamma(s)
    return out[()] if out.ndim == 0 else out


def delta_block(k: int, a: float) -> list[float]:
    """``[a/k, (a+1)/k, ..., (a+k-1)/k]``."""
    if int(k) != k or k < 1:
        raise ParameterDomainError(f"delta_block needs a positive integer k, got {k}")
    k = int(k)
    return [(a + j) / k for j in range(k)]


@dataclass(frozen=True)
class MeijerGParams:
    a_front: tuple[float, ...]
    a_back: tuple[float, ...]
    b_front: tuple[float, ...]
    b_back: tuple[float, ...]
    z: float = float("nan")
    log_z: float | None = None

    def __post_init__(self) -> None:
        for name in ("a_front", "a_back", "b_front", "b_back"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        if self.log_z is None:
            if not (np.isfinite(self.z) and self.z > 0):
                raise ParameterDomainError(f"Meijer G argument must be > 0, got {self.z}")
            object.__setattr__(self, "log_z", math.log(self.z))
        else:
            if not np.isfinite(self.log_z):
                raise ParameterDomainError(f"log of the Meijer G argument must be finite, got {self.log_z}")
            object.__setattr__(self, "z", math.exp(min(self.log_z, 700.0)))

    @property
    def orders(self) -> tuple[int, int, int, int]:
        """``(m, n, p, q)``."""
        n = len(self.a_front)
        m = len(self.b_front)
        return m, n, n + len(self.a_back), m + len(self.b_back)

    @property
    def strip(self) -> tuple[float, float]:
        """Open interval of admissible abscissae ``(max(a_front) - 1, min(b_front))``."""
        lo = max(self.a_front) - 1.0 if self.a_front else -np.inf
        hi = min(self.b_front) if self.b_front else np.inf
        return lo, hi

    @property
    def delta(self) -> float:
        """``m + n - (p + q)/2``; the line integrand decays like ``exp(-pi delta |Im s|)``."""
        m, n, p, q = self.orders
        return m + n - 0.5 * (p + q)

    def log_integrand(self, s):
        """Log of the Mellin-Barnes integrand (without the ``1/(2 pi i)``)."""
        s = np.asarray(s, dtype=complex)
        out = s * self.log_z
        with np.errstate(divide="ignore", invalid="ignore"):
            for b in self.b_front:
                out = out + special.loggamma(b - s)
            for a in self.a_front:
                out = out + special.loggamma(1.0 - a + s)
            for b in self.b_back:
                out = out - special.loggamma(1.0 - b + s)
            for a in self.a_back:
                out = out - special.loggamma(a - s)
        return out


@dataclass(frozen=True)
class ContourSpec:
    """Vertical integration line; ``None`` fields are chosen automatically."""

    path: str = "vertical-line"
    abscissa: float | None = None
    step: float | None = None
    half_extent: float | None = None
    max_nodes: int = 400_000

    def __post_init__(self) -> None:
        if self.path not in ("vertical-line", "shifted"):
            raise ParameterDomainError(f"unknown contour path {self.path!r}")
        if self.max_nodes < 64:
            raise ParameterDomainError("max_nodes must be >= 64")
        if self.step is not None and self.step <= 0:
            raise ParameterDomainError("step must be > 0")


@dataclass(frozen=True)
class MeijerGResult:
    value: float
    error: float
    method: str
    abscissa: float = float("nan")
    step: float = float("nan")
    half_extent: float = float("nan")
    nodes: int = 0
    diagnostics: str = ""

    def __float__(self) -> float:
        return self.value


def _choose_abscissa(g: MeijerGParams) -> float:
    lo, hi = g.strip
    if lo >= hi:
        raise ContourError(
            f"pole families overlap: max(a_front)-1 = {lo:g} >= min(b_front) = {hi:g}"
        )
    if np.isfinite(lo) and np.isfinite(hi):
        w = min(0.05 * (hi - lo), 0.1)
        left, right = lo + w, hi - w
    elif np.isfinite(hi):
        left, right = hi - 60.0, hi - 0.1
    elif np.isfinite(lo):
        left, right = lo + 0.1, lo + 60.0
    else:
        left, right = -30.0, 30.0
    probe = np.array([0.0, 0.25, 0.5, 1.0, 2.0])

    def scale(c: float) -> float:
        v = g.log_integrand(c + 1j * probe).real
        v = v[np.isfinite(v)]
        return float(np.logaddexp.reduce(v)) if v.size else np.inf

    res = optimize.minimize_scalar(scale, bounds=(left, right), method="bounded", options={"xatol": 1e-4})
    c = float(res.x)
    if g.b_front and g.a_front:
        # keep at least 10% of the strip on either side so the step stays reasonable
        margin = 0.1 * (hi - lo)
        c = min(max(c, lo + margin), hi - margin)
    return c


def _half_extent(g: MeijerGParams, c: float, peak: float) -> float:
    y = 1.0
    while y < 2.0**22:
        v = g.log_integrand(np.array([c + 1j * y, c + 1j * 1.5 * y])).real
        if np.all(v < peak - _LOG_TAIL):
            return 1.5 * y
        y *= 2.0
    raise ConvergenceError("Mellin-Barnes integrand does not decay along the contour")


def _trapezoid(g: MeijerGParams, c: float, h: float, y_max: float, max_nodes: int):
    n = int(math.ceil(y_max / h))
    if 2 * n + 1 > max_nodes:
        raise ConvergenceError(
            f"contour needs {2 * n + 1} nodes (> max_nodes={max_nodes}); step={h:g}, extent={y_max:g}"
        )
    j = np.arange(-n, n + 1)
    lg = g.log_integrand(c + 1j * h * j)
    finite = np.isfinite(lg.real)
    lg = np.where(finite, lg, -np.inf + 0j)
    shift = float(np.max(lg.real))
    vals = np.exp(lg - shift)
    return vals, shift, j


def meijer_g(params: MeijerGParams, contour: ContourSpec | None = None, *, rtol: float = 1e-10) -> MeijerGResult:
    """Evaluate a Meijer G-function with an a-posteriori error estimate.

    The error estimate is the change between step ``h`` and ``2h`` plus a
    round-off floor proportional to the integrand's L1 mass on the line. If
    that estimate exceeds ``rtol * |value|`` and a convergent residue series
    exists, the series result is returned instead.
    """
    contour = contour or ContourSpec()
    if params.delta <= 0:
        raise ConvergenceError(
            f"contour integral needs m + n > (p + q)/2 (delta = {params.delta:g}); orders {params.orders}"
        )
    lo, hi = params.strip
    c = contour.abscissa if contour.abscissa is not None else _choose_abscissa(params)
    if not (lo < c < hi):
        raise ContourError(f"abscissa {c:g} does not separate the pole families ({lo:g}, {hi:g})")
    d = min(c - lo, hi - c)
    if contour.step is not None:
        h = contour.step
    else:
        # the trapezoid error is ~exp(-2 pi d / h) times the integrand on the line
        # shifted by d, which carries an extra factor exp(|log z| d)
        d_eff = min(d, 1.0)
        h = 2.0 * math.pi * d_eff / (70.0 + abs(params.log_z) * d_eff)
    peak = float(np.max(params.log_integrand(c + 1j * np.linspace(0.0, 2.0, 9)).real))
    y_max = contour.half_extent if contour.half_extent is not None else _half_extent(params, c, peak)

    vals, shift, j = _trapezoid(params, c, h, y_max, contour.max_nodes)
    scale = math.exp(shift) * h / (2.0 * math.pi)
    total = vals.sum() * scale
    coarse = vals[j % 2 == 0].sum() * 2.0 * scale
    mass = np.abs(vals).sum() * scale
    value = float(total.real)
    err = abs(total.real - coarse.real) + 64.0 * _EPS * mass
    if abs(total.imag) > 1e-8 * abs(value) + 10.0 * err:
        raise ConvergenceError(
            f"contour integral has an imaginary residue {total.imag:.3e} against value {value:.3e}"
        )
    diag = f"orders={params.orders} c={c:.6g} h={h:.4g} Y={y_max:.4g} mass/value={mass / max(abs(value), 1e-300):.3g}"
    result = MeijerGResult(value, err, "contour", c, h, y_max, vals.size, diag)

    if err > rtol * abs(value) and _series_converges(params):
        try:
            ser = meijer_g_series(params)
        except (DegenerateParameterError, ConvergenceError):
            return result
        if ser.error < err:
            return ser
    return result


def halving_check(params: MeijerGParams, result: MeijerGResult) -> tuple[bool, float]:
    """Re-evaluate with half the step; ``ok`` if the change is within ``result.error``."""
    if result.method != "contour":
        return True, 0.0
    finer = meijer_g(
        params,
        ContourSpec(abscissa=result.abscissa, step=result.step / 2.0, half_extent=result.half_extent),
        rtol=np.inf,
    )
    delta = abs(finer.value - result.value)
    return delta <= result.error, delta


def _series_converges(g: MeijerGParams) -> bool:
    m, n, p, q = g.orders
    return m > 0 and (p < q or (p == q and g.log_z < 0.0))


def _signed_lgamma(x: float) -> tuple[float, float]:
    """``(log|Gamma(x)|, sign)``; ``sign = 0`` at a pole."""
    if x <= 0 and x == round(x):
        return np.inf, 0.0
    return float(special.gammaln(x)), float(special.gammasgn(x))


def _check_b_front_distinct(g: MeijerGParams) -> None:
    bs = g.b_front
    for i in range(len(bs)):
        for k in range(i + 1, len(bs)):
            diff = bs[i] - bs[k]
            if abs(diff - round(diff)) < 1e-12:
                raise DegenerateParameterError(
                    f"b parameters {bs[i]:g} and {bs[k]:g} differ by an integer; "
                    "the residues are not simple poles"
                )


def _residue_term(g: MeijerGParams, h: int, k: int) -> tuple[float, float]:
    """``(log|term|, sign)`` of the k-th residue at the h-th right pole family."""
    bh = g.b_front[h]
    logv, sgn = (bh + k) * g.log_z - special.gammaln(k + 1.0), (-1.0) ** k
    for j, bj in enumerate(g.b_front):
        if j != h:
            lv, s = _signed_lgamma(bj - bh - k)
            if s == 0:
                raise DegenerateParameterError(f"Gamma pole from b pair ({bj:g}, {bh:g})")
            logv, sgn = logv + lv, sgn * s
    for aj in g.a_front:
        lv, s = _signed_lgamma(1.0 - aj + bh + k)
        if s == 0:
            raise DegenerateParameterError(f"Gamma pole from a={aj:g}, b={bh:g}")
        logv, sgn = logv + lv, sgn * s
    for bj in g.b_back:
        lv, s = _signed_lgamma(1.0 - bj + bh + k)
        if s == 0:
            return -np.inf, 0.0
        logv, sgn = logv - lv, sgn * s
    for aj in g.a_back:
        lv, s = _signed_lgamma(aj - bh - k)
        if s == 0:
            return -np.inf, 0.0
        logv, sgn = logv - lv, sgn * s
    return logv, sgn


def meijer_g_series(params: MeijerGParams, *, max_terms: int = 4000) -> MeijerGResult:
    """Sum of residues at the right-hand poles ``s = b_h + k``.

    Valid for ``p < q``, or ``p == q`` with ``z < 1``, and pairwise
    non-integer-spaced ``b_front``.
    """
    if not _series_converges(params):
        raise ConvergenceError(f"residue series diverges for orders {params.orders} at z={params.z:g}")
    _check_b_front_distinct(params)
    total = 0.0
    mass = 0.0
    last = np.inf
    for h in range(len(params.b_front)):
        small = 0
        for k in range(max_terms):
            lv, s = _residue_term(params, h, k)
            term = s * math.exp(lv) if s != 0 and lv < 700 else (0.0 if s == 0 or lv == -np.inf else math.copysign(np.inf, s))
            if not np.isfinite(term):
                raise ConvergenceError("residue series term overflowed")
            total += term
            mass += abs(term)
            last = abs(term)
            if k > 3 and last <= 1e-17 * max(abs(total), 1e-300):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
        else:
            raise ConvergenceError(f"residue series not converged after {max_terms} terms (last term {last:.3e})")
    err = 64.0 * _EPS * mass + last
    return MeijerGResult(total, err, "series", diagnostics=f"orders={params.orders} mass/value={mass / max(abs(total), 1e-300):.3g}")


def leading_residues(params: MeijerGParams) -> list[tuple[float, float]]:
    """First residue (``k = 0``) of every right pole family as ``(exponent, value)``.

    The sum of these values is the small-``z`` asymptote of the G-function.
    """
    _check_b_front_distinct(params)
    out = []
    for h, bh in enumerate(params.b_front):
        lv, s = _residue_term(params, h, 0)
        out.append((bh, s * math.exp(lv) if s != 0 else 0.0))
    return out


@dataclass(frozen=True)
class GammaFactor:
    """``Gamma(offset + multiplier * t) ** power`` with ``power`` in ``{+1, -1}``."""

    offset: float
    multiplier: float
    power: int = 1


@dataclass
class MellinBarnes:
    """``sign * exp(log_const) / (2 pi i) int exp(t log_base) prod Gamma(...)^(+-1) dt``."""

    log_const: float
    log_base: float
    factors: list[GammaFactor] = field(default_factory=list)
    sign: float = 1.0
    max_scale: int = 12

    def _scale(self) -> int:
        lam = 1
        for f in self.factors:
            fr = Fraction(f.multiplier).limit_denominator(64)
            if abs(float(fr) - f.multiplier) > 1e-12:
                raise ModeError(f"multiplier {f.multiplier!r} is not a small rational")
            lam = lam * fr.denominator // math.gcd(lam, fr.denominator)
        if lam > self.max_scale:
            raise ModeError(f"Meijer-G form needs scale {lam} > {self.max_scale}")
        return lam

    def to_meijer(self) -> tuple[float, float, MeijerGParams]:
        """Return ``(log_prefactor, sign, params)`` with value ``sign * exp(log_prefactor) * G``."""
        lam = self._scale()
        log_c = self.log_const + math.log(lam)
        log_z = self.log_base * lam
        num_plus, num_minus, den_plus, den_minus = [], [], [], []
        for f in self.factors:
            k = int(round(f.multiplier * lam))
            if k == 0:
                raise ModeError("Gamma factor without the integration variable")
            ak = abs(k)
            # Gauss multiplication: Gamma(a + k t) = (2pi)^((1-|k|)/2) |k|^(a + k t - 1/2) prod_j Gamma((a+j)/|k| + sign(k) t)
            log_c += f.power * (0.5 * (1 - ak) * math.log(2 * math.pi) + (f.offset - 0.5) * math.log(ak))
            log_z += f.power * k * math.log(ak)
            units = delta_block(ak, f.offset)
            if k > 0:
                (num_plus if f.power > 0 else den_plus).extend(units)
            else:
                (num_minus if f.power > 0 else den_minus).extend(units)
        num_plus, den_plus = _cancel(num_plus, den_plus)
        num_minus, den_minus = _cancel(num_minus, den_minus)
        params = MeijerGParams(
            a_front=[1.0 - c for c in num_plus],
            a_back=list(den_minus),
            b_front=list(num_minus),
            b_back=[1.0 - c for c in den_plus],
            log_z=log_z,
        )
        return log_c, self.sign, params

    def evaluate(self, contour: ContourSpec | None = None) -> tuple[float, MeijerGResult, MeijerGParams]:
        """Value of the integral together with the underlying G evaluation."""
        log_c, sign, params = self.to_meijer()
        res = meijer_g(params, contour)
        return sign * math.exp(log_c) * res.value, res, params


def _cancel(num: list[float], den: list[float]) -> tuple[list[float], list[float]]:
    num, den = sorted(num), sorted(den)
    out_num = []
    for v in num:
        hit = next((i for i, w in enumerate(den) if abs(v - w) < 1e-13), None)
        if hit is None:
            out_num.append(v)
        else:
            den.pop(hit)
    return out_num, den
