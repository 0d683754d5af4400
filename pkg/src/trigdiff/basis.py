"""Trigonometric polynomials and exact signal models on (0, 2*pi).

Everything here works in the orthonormal basis

    1/sqrt(2*pi), cos(t)/sqrt(pi), sin(t)/sqrt(pi), ..., cos(nt)/sqrt(pi), sin(nt)/sqrt(pi)

so that the coefficient 2-norm of a :class:`TrigPoly` equals its L2 norm.
Signals come in two flavours: :class:`ExactSignal` (piecewise polynomial plus
global integer-frequency trigonometric terms, everything integrable in closed
form) and :class:`SampledSignal` (uniform samples, handled by trapezoid
quadrature).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi
SQRT_PI = math.sqrt(math.pi)
SQRT_TWO_PI = math.sqrt(TWO_PI)

# Integration by parts of t^m * cos(kt) is exact but we cap the degree so the
# recurrence depth stays small; the highest degree any catalog signal needs is 4.
MAX_PIECE_DEGREE = 6

_INTERVAL_TOL = 1e-12


@dataclass(frozen=True)
class TrigPoly:
    """Element of the degree-n trigonometric space, stored as coefficients.

    ``c0`` multiplies 1/sqrt(2*pi); ``cos_coeffs[k-1]`` and ``sin_coeffs[k-1]``
    multiply cos(kt)/sqrt(pi) and sin(kt)/sqrt(pi).
    """

    c0: float
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    def __post_init__(self):
        cos_arr = np.asarray(self.cos_coeffs, dtype=float)
        sin_arr = np.asarray(self.sin_coeffs, dtype=float)
        object.__setattr__(self, "cos_coeffs", cos_arr)
        object.__setattr__(self, "sin_coeffs", sin_arr)
        if cos_arr.ndim != 1 or sin_arr.ndim != 1 or len(cos_arr) != len(sin_arr):
            raise ValueError("cos and sin coefficient arrays must be 1-d and equally long")
        if not (np.isfinite(self.c0) and np.all(np.isfinite(cos_arr)) and np.all(np.isfinite(sin_arr))):
            raise ValueError("trigonometric coefficients must be finite")

    @property
    def degree(self) -> int:
        return len(self.cos_coeffs)

    @classmethod
    def zero(cls, degree: int) -> "TrigPoly":
        return cls(0.0, np.zeros(degree), np.zeros(degree))

    def norm(self) -> float:
        """L2 norm on (0, 2*pi); Parseval in the orthonormal basis."""
        return math.sqrt(self.c0 ** 2 + float(self.cos_coeffs @ self.cos_coeffs)
                         + float(self.sin_coeffs @ self.sin_coeffs))

    def eval(self, t):
        """Evaluate at scalar or array ``t``."""
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, self.c0 / SQRT_TWO_PI)
        if self.degree:
            k = np.arange(1, self.degree + 1)
            kt = np.multiply.outer(t, k)
            out = out + (np.cos(kt) @ self.cos_coeffs + np.sin(kt) @ self.sin_coeffs) / SQRT_PI
        return out if out.ndim else float(out)

    def to_vector(self) -> np.ndarray:
        """Coefficients in basis order (c0, xi_1, eta_1, ..., xi_n, eta_n)."""
        vec = np.empty(2 * self.degree + 1)
        vec[0] = self.c0
        vec[1::2] = self.cos_coeffs
        vec[2::2] = self.sin_coeffs
        return vec

    @classmethod
    def from_vector(cls, vec) -> "TrigPoly":
        vec = np.asarray(vec, dtype=float)
        if vec.ndim != 1 or len(vec) % 2 != 1:
            raise ValueError("coefficient vector must have odd length 2n+1")
        return cls(float(vec[0]), vec[1::2].copy(), vec[2::2].copy())

    def truncated(self, degree: int) -> "TrigPoly":
        """Project onto the degree-``degree`` space (pad with zeros if larger)."""
        cos = np.zeros(degree)
        sin = np.zeros(degree)
        m = min(degree, self.degree)
        cos[:m] = self.cos_coeffs[:m]
        sin[:m] = self.sin_coeffs[:m]
        return TrigPoly(self.c0, cos, sin)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        n = max(self.degree, other.degree)
        a, b = self.truncated(n), other.truncated(n)
        return TrigPoly(a.c0 + b.c0, a.cos_coeffs + b.cos_coeffs, a.sin_coeffs + b.sin_coeffs)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + (-1.0) * other

    def __rmul__(self, scalar: float) -> "TrigPoly":
        return TrigPoly(scalar * self.c0, scalar * self.cos_coeffs, scalar * self.sin_coeffs)


@dataclass(frozen=True)
class PolyPiece:
    """Polynomial on [lo, hi), coefficients in ascending powers of t."""

    lo: float
    hi: float
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        object.__setattr__(self, "coeffs", arr)
        if not self.lo < self.hi:
            raise ValueError(f"empty piece interval [{self.lo}, {self.hi})")
        if len(arr) - 1 > MAX_PIECE_DEGREE:
            raise ValueError(f"piece polynomial degree {len(arr) - 1} exceeds {MAX_PIECE_DEGREE}")

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        for c in self.coeffs[::-1]:
            out = out * t + c
        return out


@dataclass(frozen=True)
class TrigTerm:
    """amplitude * cos(frequency*t) or amplitude * sin(frequency*t), global on [0, 2*pi]."""

    amplitude: float
    frequency: int
    kind: str

    def __post_init__(self):
        if self.kind not in ("cos", "sin"):
            raise ValueError(f"kind must be 'cos' or 'sin', got {self.kind!r}")
        if int(self.frequency) != self.frequency or self.frequency < 1:
            raise ValueError("trig term frequency must be a positive integer")
        object.__setattr__(self, "frequency", int(self.frequency))


@dataclass(frozen=True)
class ExactSignal:
    """Piecewise polynomial on subintervals of [0, 2*pi] plus global trig terms.

    Pieces must tile [0, 2*pi]; trig frequencies are positive integers so that
    products of trig terms reduce to exact orthogonality relations.
    """

    pieces: tuple = field(default_factory=tuple)
    trig_terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        pieces = tuple(self.pieces) if self.pieces else (PolyPiece(0.0, TWO_PI, np.zeros(1)),)
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "trig_terms", tuple(self.trig_terms))
        if abs(pieces[0].lo) > _INTERVAL_TOL or abs(pieces[-1].hi - TWO_PI) > _INTERVAL_TOL:
            raise ValueError("pieces must cover [0, 2*pi]")
        for left, right in zip(pieces, pieces[1:]):
            if abs(left.hi - right.lo) > _INTERVAL_TOL:
                raise ValueError(f"pieces must tile the interval; gap at t={left.hi}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "ExactSignal":
        return cls()

    @classmethod
    def constant(cls, value: float) -> "ExactSignal":
        return cls.from_polynomial([value])

    @classmethod
    def from_polynomial(cls, coeffs) -> "ExactSignal":
        return cls(pieces=(PolyPiece(0.0, TWO_PI, np.asarray(coeffs, dtype=float)),))

    @classmethod
    def from_pieces(cls, spans) -> "ExactSignal":
        """Build from (lo, hi, coeffs) triples covering [0, 2*pi]."""
        return cls(pieces=tuple(PolyPiece(lo, hi, np.asarray(c, dtype=float)) for lo, hi, c in spans))

    # -- algebra ------------------------------------------------------------

    def plus_trig(self, amplitude: float, frequency: int, kind: str) -> "ExactSignal":
        if amplitude == 0.0:
            return self
        return ExactSignal(self.pieces, self.trig_terms + (TrigTerm(amplitude, frequency, kind),))

    def minus_polynomial(self, coeffs) -> "ExactSignal":
        """Subtract a global polynomial, folded into every piece."""
        sub = np.atleast_1d(np.asarray(coeffs, dtype=float))
        new_pieces = []
        for piece in self.pieces:
            width = max(len(piece.coeffs), len(sub))
            c = np.zeros(width)
            c[:len(piece.coeffs)] = piece.coeffs
            c[:len(sub)] -= sub
            new_pieces.append(PolyPiece(piece.lo, piece.hi, c))
        return ExactSignal(tuple(new_pieces), self.trig_terms)

    def antiderivative(self, times: int = 1) -> "ExactSignal":
        """Return t -> integral from 0 to t, applied ``times``-fold.

        The result vanishes at 0 together with its first ``times``-1
        derivatives, which is exactly the zero-initial-data setting of the
        differentiation pipeline.
        """
        sig = self
        for _ in range(times):
            sig = sig._antiderivative_once()
        return sig

    def _antiderivative_once(self) -> "ExactSignal":
        new_terms = []
        carried_const = 0.0
        for term in self.trig_terms:
            k = term.frequency
            if term.kind == "cos":
                new_terms.append(TrigTerm(term.amplitude / k, k, "sin"))
            else:
                # integral of sin(kt) from 0 picks up the constant 1/k
                new_terms.append(TrigTerm(-term.amplitude / k, k, "cos"))
                carried_const += term.amplitude / k
        new_pieces = []
        acc = 0.0
        for piece in self.pieces:
            anti = np.zeros(len(piece.coeffs) + 1)
            anti[1:] = piece.coeffs / np.arange(1, len(piece.coeffs) + 1)
            offset = acc - _polyval(anti, piece.lo) + carried_const
            anti[0] = offset
            acc = _polyval(anti, piece.hi) - carried_const
            new_pieces.append(PolyPiece(piece.lo, piece.hi, anti))
        return ExactSignal(tuple(new_pieces), tuple(new_terms))

    # -- evaluation ---------------------------------------------------------

    def eval(self, t):
        """Pointwise values; t = 2*pi is assigned to the last piece."""
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        tt = np.atleast_1d(t)
        edges = np.array([p.hi for p in self.pieces[:-1]])
        idx = np.searchsorted(edges, tt, side="right")
        out = np.empty_like(tt)
        for i, piece in enumerate(self.pieces):
            mask = idx == i
            if mask.any():
                out[mask] = piece.eval(tt[mask])
        for term in self.trig_terms:
            fn = np.cos if term.kind == "cos" else np.sin
            out += term.amplitude * fn(term.frequency * tt)
        return float(out[0]) if scalar else out

    def max_frequency(self) -> int:
        return max((term.frequency for term in self.trig_terms), default=0)

    def is_trig_only(self) -> bool:
        """True when the piecewise part is a single global constant.

        Such a signal lies exactly in the trigonometric space of its highest
        frequency, which lets L2 distances against it avoid the cancellation
        of a nearly-zero series tail.
        """
        c0 = self.pieces[0].coeffs[0]
        for piece in self.pieces:
            if piece.coeffs[0] != c0 or np.any(piece.coeffs[1:] != 0.0):
                return False
        return True


@dataclass(frozen=True)
class SampledSignal:
    """Values on the uniform closed grid t_i = 2*pi*i/N, i = 0..N."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", arr)
        if arr.ndim != 1 or len(arr) < 3:
            raise ValueError("need at least 3 samples on [0, 2*pi]")

    @property
    def n_intervals(self) -> int:
        return len(self.samples) - 1

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, TWO_PI, len(self.samples))

    @classmethod
    def from_function(cls, fn, n_intervals: int) -> "SampledSignal":
        t = np.linspace(0.0, TWO_PI, n_intervals + 1)
        return cls(np.asarray(fn(t), dtype=float))

    @classmethod
    def from_csv(cls, path) -> "SampledSignal":
        """Read two-column ``t,value`` CSV on a uniform 0..2*pi inclusive grid."""
        rows = []
        with open(path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                parts = line.split(",")
                if len(parts) != 2:
                    raise ValueError(f"{path}: line {line_no}: expected two columns 't,value'")
                try:
                    rows.append((float(parts[0]), float(parts[1])))
                except ValueError:
                    if line_no == 1:
                        continue  # header row
                    raise ValueError(f"{path}: line {line_no}: non-numeric entry {line!r}") from None
        if len(rows) < 3:
            raise ValueError(f"{path}: need at least 3 data rows")
        t = np.array([r[0] for r in rows])
        v = np.array([r[1] for r in rows])
        h = TWO_PI / (len(t) - 1)
        expected = np.arange(len(t)) * h
        bad = np.argmax(np.abs(t - expected))
        if abs(t[bad] - expected[bad]) > 1e-9 * max(h, 1.0):
            raise ValueError(
                f"{path}: grid is not uniform on [0, 2*pi]: t[{bad}] = {t[bad]!r}, expected {expected[bad]!r}"
            )
        return cls(v)

    def minus_polynomial(self, coeffs) -> "SampledSignal":
        return SampledSignal(self.samples - _polyval(np.atleast_1d(np.asarray(coeffs, float)), self.grid))


# ---------------------------------------------------------------------------
# closed-form integrals
# ---------------------------------------------------------------------------

def _polyval(coeffs, t):
    out = np.zeros_like(np.asarray(t, dtype=float))
    for c in coeffs[::-1]:
        out = out * t + c
    return out


def _poly_trig_integrals(coeffs, lo, hi, ks):
    """Exact (integral of p(t)cos(kt), integral of p(t)sin(kt)) over [lo, hi].

    Uses the integration-by-parts recurrence downward in polynomial degree;
    ``ks`` is an integer array of frequencies >= 1 and the result has one entry
    per frequency.
    """
    ks = np.asarray(ks, dtype=float)
    sin_lo, cos_lo = np.sin(ks * lo), np.cos(ks * lo)
    sin_hi, cos_hi = np.sin(ks * hi), np.cos(ks * hi)
    deg = len(coeffs) - 1
    if deg > MAX_PIECE_DEGREE:
        raise ValueError(f"unsupported polynomial degree {deg} (max {MAX_PIECE_DEGREE})")
    c_prev = (sin_hi - sin_lo) / ks
    s_prev = (cos_lo - cos_hi) / ks
    total_c = coeffs[0] * c_prev
    total_s = coeffs[0] * s_prev
    lo_m, hi_m = 1.0, 1.0
    for m in range(1, deg + 1):
        lo_m *= lo
        hi_m *= hi
        c_m = (hi_m * sin_hi - lo_m * sin_lo) / ks - (m / ks) * s_prev
        s_m = (lo_m * cos_lo - hi_m * cos_hi) / ks + (m / ks) * c_prev
        total_c += coeffs[m] * c_m
        total_s += coeffs[m] * s_m
        c_prev, s_prev = c_m, s_m
    return total_c, total_s


def _poly_integral(coeffs, lo, hi):
    m = np.arange(1, len(coeffs) + 1)
    return float(np.sum(coeffs * (hi ** m - lo ** m) / m))


def _poly_sq_integral(coeffs, lo, hi):
    return _poly_integral(np.convolve(coeffs, coeffs), lo, hi)


def l2_norm_sq(sig: ExactSignal) -> float:
    """Exact squared L2 norm of an ExactSignal on (0, 2*pi)."""
    total = 0.0
    # merge trig terms sharing (frequency, kind) before using orthogonality
    merged: dict = {}
    for term in sig.trig_terms:
        key = (term.frequency, term.kind)
        merged[key] = merged.get(key, 0.0) + term.amplitude
    total += math.pi * sum(a * a for a in merged.values())
    for piece in sig.pieces:
        total += _poly_sq_integral(piece.coeffs, piece.lo, piece.hi)
        for (freq, kind), amp in merged.items():
            if amp == 0.0:
                continue
            c_int, s_int = _poly_trig_integrals(piece.coeffs, piece.lo, piece.hi, np.array([freq]))
            cross = c_int[0] if kind == "cos" else s_int[0]
            total += 2.0 * amp * cross
    return total


def l2_norm(sig: ExactSignal) -> float:
    return math.sqrt(max(l2_norm_sq(sig), 0.0))


# ---------------------------------------------------------------------------
# Fourier coefficients
# ---------------------------------------------------------------------------

def fourier_coeffs_exact(sig: ExactSignal, n: int) -> TrigPoly:
    """Orthogonal projection of ``sig`` onto the degree-``n`` trig space.

    Polynomial pieces are integrated against the basis in closed form; trig
    terms map by orthogonality (they contribute only at their own frequency).
    """
    if n < 0:
        raise ValueError("projection degree must be >= 0")
    c0 = 0.0
    cos = np.zeros(n)
    sin = np.zeros(n)
    ks = np.arange(1, n + 1)
    for piece in sig.pieces:
        c0 += _poly_integral(piece.coeffs, piece.lo, piece.hi) / SQRT_TWO_PI
        if n:
            c_int, s_int = _poly_trig_integrals(piece.coeffs, piece.lo, piece.hi, ks)
            cos += c_int / SQRT_PI
            sin += s_int / SQRT_PI
    for term in sig.trig_terms:
        if term.frequency <= n:
            target = cos if term.kind == "cos" else sin
            target[term.frequency - 1] += term.amplitude * SQRT_PI
    return TrigPoly(c0, cos, sin)


def fourier_coeffs_quadrature(sig: SampledSignal, n: int) -> TrigPoly:
    """Composite-trapezoid Fourier coefficients of a sampled signal.

    Requires at least 2n+2 samples (n_intervals >= 2n+1) so the top frequency
    is resolved. For smooth 2*pi-periodic data the rule is spectrally
    accurate; for non-periodic data the error is O(h^2).
    """
    if n < 0:
        raise ValueError("projection degree must be >= 0")
    N = sig.n_intervals
    if N < 2 * n + 1:
        raise ValueError(f"insufficient resolution: {N} intervals cannot resolve degree {n} (need >= {2 * n + 1})")
    t = sig.grid
    w = np.full(len(t), TWO_PI / N)
    w[0] *= 0.5
    w[-1] *= 0.5
    fw = sig.samples * w
    c0 = float(np.sum(fw)) / SQRT_TWO_PI
    if n == 0:
        return TrigPoly(c0, np.zeros(0), np.zeros(0))
    kt = np.outer(np.arange(1, n + 1), t)
    cos = (np.cos(kt) @ fw) / SQRT_PI
    sin = (np.sin(kt) @ fw) / SQRT_PI
    return TrigPoly(c0, cos, sin)


def l2_error_exact(poly: TrigPoly, exact: ExactSignal) -> float:
    """Exact L2 distance between a trig polynomial and an ExactSignal.

    Expands ||poly||^2 - 2<poly, exact> + ||exact||^2 but groups it as
    (coefficient differences within the poly's space) + (projection tail of
    ``exact``), so that a near-perfect match is not destroyed by cancellation.
    The tail is identically zero when ``exact`` itself lies in that space.
    """
    n = poly.degree
    proj = fourier_coeffs_exact(exact, n)
    in_band_sq = (poly.c0 - proj.c0) ** 2 \
        + float(np.sum((poly.cos_coeffs - proj.cos_coeffs) ** 2)) \
        + float(np.sum((poly.sin_coeffs - proj.sin_coeffs) ** 2))
    if exact.is_trig_only() and exact.max_frequency() <= n:
        tail_sq = 0.0
    else:
        tail_sq = max(l2_norm_sq(exact) - proj.norm() ** 2, 0.0)
    return math.sqrt(in_band_sq + tail_sq)


def sobolev_per_norm(c0: float, cos_coeffs, sin_coeffs, smoothness: float) -> float:
    """Periodic Sobolev norm from a finite coefficient triple.

    Computes sqrt(c0^2 + sum_k (1+k^2)^smoothness (xi_k^2 + eta_k^2)) over the
    supplied frequencies; the caller chooses the cutoff by the array length.
    Truncation underestimates the true norm, which is the conservative
    direction for picking a truncation degree from it.
    """
    if smoothness < 0:
        raise ValueError("smoothness index must be >= 0")
    cos_coeffs = np.asarray(cos_coeffs, dtype=float)
    sin_coeffs = np.asarray(sin_coeffs, dtype=float)
    k = np.arange(1, len(cos_coeffs) + 1)
    weights = (1.0 + k.astype(float) ** 2) ** smoothness
    return math.sqrt(c0 ** 2 + float(np.sum(weights * (cos_coeffs ** 2 + sin_coeffs ** 2))))


def sobolev_norm_of_signal(sig: ExactSignal, smoothness: float, cutoff: int = 100_000) -> float:
    """Periodic Sobolev norm of an ExactSignal, truncated at ``cutoff`` frequencies."""
    coeffs = fourier_coeffs_exact(sig, cutoff)
    return sobolev_per_norm(coeffs.c0, coeffs.cos_coeffs, coeffs.sin_coeffs, smoothness)
