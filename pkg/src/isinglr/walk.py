"""Operator Pauli-walk evaluation of the correlation function, linear in N.

Commuting H' repeatedly with Z_1 only ever produces 2N Pauli strings, ordered
in per-qubit pairs (X_1..X_{j-1} Z_j, X_1..X_{j-1} Y_j).  The iterated
commutator coefficients are walk sums on a graph whose adjacency matrix is
A = 2i A' with A' real, skew-symmetric, tridiagonal, and superdiagonal
alternating (1, J', 1, J', ...).  The correlation function reduces to the
first row of an orthogonal matrix,

    C_k(s) = 2 sqrt( sum_{m >= 2k} r_m^2 ),   r = row 1 of exp(-2 pi s A').

Two evaluation routes are provided and cross-checked:

* eigendecomposition of the equivalent real symmetric tridiagonal matrix
  (phase-conjugating A' by diag(i^m) makes i A' real symmetric), exact
  orthogonality by construction;
* a Bessel-coefficient Chebyshev expansion of the same exponential, used for
  large chains and dense time grids because its cost per time point is linear
  in the chain length.

A third route evaluates the row in arbitrary-precision arithmetic for the
deep tail, where values fall below anything representable in doubles.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.special import jv

from .params import (
    ChainParams,
    PrecisionUnavailableError,
    ValidationError,
    validate_params,
    validate_qubit_index,
)
from .oracle import PauliString


@dataclass(frozen=True)
class RelevantStrings:
    """The ordered closed set of 2N Pauli strings reachable from Z_1."""

    strings: tuple

    def __len__(self):
        return len(self.strings)

    def __getitem__(self, i):
        return self.strings[i]


def relevant_strings(p: ChainParams) -> RelevantStrings:
    """Pairs (X_1..X_{j-1} Z_j, X_1..X_{j-1} Y_j) for j = 1..N, in node order."""
    validate_params(p)
    nq = p.n_qubits
    out = []
    for j in range(1, nq + 1):
        prefix = ["X"] * (j - 1)
        suffix = ["I"] * (nq - j)
        out.append(PauliString(tuple(prefix + ["Z"] + suffix)))
        out.append(PauliString(tuple(prefix + ["Y"] + suffix)))
    return RelevantStrings(tuple(out))


def _superdiagonal(p: ChainParams) -> np.ndarray:
    c = np.empty(p.n_nodes - 1)
    c[0::2] = 1.0
    c[1::2] = p.j_coupling
    return c


@dataclass(frozen=True)
class WalkAdjacency:
    """A' = A / (2i): real, skew-symmetric, tridiagonal walk-graph matrix."""

    n_qubits: int
    coupling: float
    superdiagonal: tuple

    @property
    def n_nodes(self) -> int:
        return 2 * self.n_qubits

    @property
    def matrix(self) -> np.ndarray:
        n = self.n_nodes
        m = np.zeros((n, n))
        c = np.asarray(self.superdiagonal)
        m[np.arange(n - 1), np.arange(1, n)] = c
        m[np.arange(1, n), np.arange(n - 1)] = -c
        m.setflags(write=False)
        return m

    def params(self) -> ChainParams:
        return ChainParams(self.n_qubits, self.coupling)


def build_adjacency(p: ChainParams) -> WalkAdjacency:
    validate_params(p)
    return WalkAdjacency(p.n_qubits, p.j_coupling, tuple(_superdiagonal(p)))


def walk_coefficients(p: ChainParams, n: int) -> np.ndarray:
    """First row of A^n = (2i A')^n: summed weight products of length-n walks.

    Entry m (0-based) is the coefficient of the (m+1)-th relevant string in
    the n-fold iterated commutator of H' with Z_1.  Exact in floats for the
    moderate n these coefficients are useful for (entries are dyadic-rational
    polynomials in J').
    """
    validate_params(p)
    if not isinstance(n, int) or n < 0:
        raise ValidationError(f"walk length must be a nonnegative integer, got {n!r}")
    c = _superdiagonal(p)
    v = np.zeros(p.n_nodes)
    v[0] = 1.0
    for _ in range(n):
        nxt = np.zeros_like(v)
        nxt[1:] += v[:-1] * c
        nxt[:-1] -= v[1:] * c
        v = nxt
    return (2j) ** n * v


@functools.lru_cache(maxsize=32)
def _eig_factor(p: ChainParams):
    """Spectral factorization of i A' via the real symmetric tridiagonal twin.

    Conjugating by diag(i^m) turns i A' into the real symmetric tridiagonal
    matrix with the same superdiagonal, so row 1 of exp(-2 pi s A') is
    Re(i^m sum_j V_0j V_mj e^{2 pi i s lam_j}).
    """
    c = _superdiagonal(p)
    diag = np.zeros(p.n_nodes)
    try:
        lam, vec = scipy.linalg.eigh_tridiagonal(diag, c)
    except np.linalg.LinAlgError:
        # stemr occasionally fails on tightly clustered spectra (large J');
        # the QR driver is slower but unconditionally reliable.
        lam, vec = scipy.linalg.eigh_tridiagonal(diag, c, lapack_driver="stev")
    powers_of_i = np.resize(np.array([1.0, 1.0j, -1.0, -1.0j]), p.n_nodes)
    return lam, vec, vec[0].copy(), powers_of_i


def _rows_eig(p: ChainParams, ss: np.ndarray) -> np.ndarray:
    """exp(-2 pi s A') first rows for each s, shape (n_s, 2N)."""
    lam, vec, v0, phases_i = _eig_factor(p)
    ph = np.exp(2j * np.pi * np.multiply.outer(ss, lam))
    g = (ph * v0) @ vec.T
    return np.real(g * phases_i)


# Chebyshev route: exp(x K) = J_0(x) I + 2 sum_j J_j(x) P_j(K) for real
# skew-symmetric K with spectral radius <= 1, where P_0 = I, P_1 = K and
# P_{j+1} = 2 K P_j + P_{j-1}.  Only the first row of each P_j is kept.

def _cheb_order(y: float) -> int:
    return int(np.ceil(y + 14.0 * max(y, 1.0) ** (1.0 / 3.0) + 40.0))


@functools.lru_cache(maxsize=16)
def _cheb_table(p: ChainParams, j_max: int) -> np.ndarray:
    """First rows of P_0..P_jmax for K = A'/(1+J'), shape (j_max+1, 2N)."""
    n = p.n_nodes
    w = _superdiagonal(p) / (1.0 + p.j_coupling)
    table = np.zeros((j_max + 1, n))
    table[0, 0] = 1.0
    if n > 1:
        table[1, 1] = w[0]
    for j in range(1, j_max):
        u = table[j]
        nxt = np.zeros(n)
        nxt[1:] = u[:-1] * w
        nxt[:-1] -= u[1:] * w
        table[j + 1] = 2.0 * nxt + table[j - 1]
    return table


def _rows_chebyshev(p: ChainParams, ss: np.ndarray) -> np.ndarray:
    """Same rows as _rows_eig, via the Bessel-coefficient expansion."""
    rho = 1.0 + p.j_coupling
    ys = 2.0 * np.pi * ss * rho
    j_max = _cheb_order(float(np.max(ys, initial=0.0)))
    # bucket the table size so nearby grids share one cached table
    j_bucket = 64 * (1 + (j_max - 1) // 64) if j_max > 0 else 64
    table = _cheb_table(p, j_bucket)
    orders = np.arange(j_bucket + 1)
    coeff = jv(orders[None, :], ys[:, None])
    coeff *= (-1.0) ** orders
    coeff[:, 1:] *= 2.0
    return coeff @ table


# Above this node count, dense-grid evaluation switches to the Chebyshev
# route; its per-time cost is linear in the chain length.
_CHEB_MIN_NODES = 128


def exp_first_row(a: WalkAdjacency, s: float) -> np.ndarray:
    """Row 1 of exp(-2 pi s A'); a unit vector since the matrix is orthogonal."""
    if s < 0.0:
        raise ValidationError(f"time must be >= 0, got {s}")
    p = a.params()
    if s == 0.0:
        row = np.zeros(p.n_nodes)
        row[0] = 1.0
        return row
    return _rows_eig(p, np.array([float(s)]))[0]


def _tail_correlations(rows: np.ndarray) -> np.ndarray:
    """C values for every k from exponential rows: 2 sqrt(tail sums of r^2)."""
    tail = np.cumsum((rows ** 2)[:, ::-1], axis=1)[:, ::-1]
    return 2.0 * np.sqrt(tail)


def lr_walk(p: ChainParams, k: int, s: float) -> float:
    """C_k(s) from the walk method: 2 sqrt(sum_{m >= 2k} r_m^2)."""
    validate_params(p)
    validate_qubit_index(p, k)
    if s < 0.0:
        raise ValidationError(f"time must be >= 0, got {s}")
    if s == 0.0:
        return 0.0
    row = _rows_eig(p, np.array([float(s)]))[0]
    return float(2.0 * np.sqrt(np.sum(row[2 * k - 1:] ** 2)))


def lr_walk_grid(p: ChainParams, ks, ss) -> np.ndarray:
    """C_k(s) for qubit list `ks` and time array `ss`, shape (len(ks), len(ss)).

    Picks the evaluation route by problem size: eigendecomposition for short
    chains, the Chebyshev expansion for long ones.
    """
    validate_params(p)
    ks = [validate_qubit_index(p, int(k)) for k in ks]
    ss = np.asarray(ss, dtype=float)
    if ss.ndim != 1:
        raise ValidationError("time grid must be one-dimensional")
    if np.any(ss < 0.0):
        raise ValidationError("times must all be >= 0")
    if p.n_nodes >= _CHEB_MIN_NODES and len(ss) > 1:
        rows = _rows_chebyshev(p, ss)
    else:
        rows = _rows_eig(p, ss)
    c_all = _tail_correlations(rows)          # (n_s, 2N), column m = tail from m
    out = c_all[:, [2 * k - 1 for k in ks]].T
    out[:, ss == 0.0] = 0.0
    return out


# ---------------------------------------------------------------------------
# arbitrary-precision route


def _require_mpmath():
    try:
        import mpmath
    except ImportError as exc:  # pragma: no cover - mpmath ships with scipy
        raise PrecisionUnavailableError(
            "arbitrary-precision evaluation needs the mpmath package") from exc
    return mpmath


def exp_first_row_highprec(p: ChainParams, s: float, digits: int = 60) -> list:
    """Row 1 of exp(-2 pi s A') in big-float arithmetic.

    Taylor evaluation with the time argument scaled into 2^j substeps so the
    step generator has norm <= 1/2, applied repeatedly to the basis row
    vector; working precision carries 10 guard digits.  Returns mpmath floats.
    """
    mp = _require_mpmath()
    validate_params(p)
    if digits < 16:
        raise ValidationError(f"precision must be >= 16 digits, got {digits}")
    if s < 0.0:
        raise ValidationError(f"time must be >= 0, got {s}")
    n = p.n_nodes
    with mp.workdps(digits + 10):
        s_mp = mp.mpf(s)
        c = [mp.mpf(1) if i % 2 == 0 else mp.mpf(p.j_coupling) for i in range(n - 1)]
        bound = 2 * mp.pi * s_mp * (1 + mp.mpf(p.j_coupling))
        steps = 1
        while bound / steps > mp.mpf("0.5"):
            steps *= 2
        w = [2 * mp.pi * (s_mp / steps) * cj for cj in c]

        def times_generator(v):
            # row vector times -2 pi (s/steps) A'
            out = [mp.mpf(0)] * n
            for m in range(n):
                acc = mp.mpf(0)
                if m >= 1:
                    acc -= v[m - 1] * w[m - 1]
                if m + 1 < n:
                    acc += v[m + 1] * w[m]
                out[m] = acc
            return out

        tol = mp.mpf(10) ** (-(digits + 10))
        row = [mp.mpf(0)] * n
        row[0] = mp.mpf(1)
        if s_mp == 0:
            return row
        for _ in range(steps):
            acc = list(row)
            term = list(row)
            order = 1
            while True:
                term = [t / order for t in times_generator(term)]
                for m in range(n):
                    acc[m] += term[m]
                if max(abs(t) for t in term) < tol:
                    break
                order += 1
            row = acc
        return row


def lr_walk_highprec(p: ChainParams, k: int, s: float, digits: int = 60):
    """C_k(s) by the walk method in arbitrary precision; returns an mpmath float.

    Needed wherever the correlation function falls below ~1e-14: double
    precision cannot resolve the tail of the exponential row there.
    """
    mp = _require_mpmath()
    validate_qubit_index(p, k)
    row = exp_first_row_highprec(p, s, digits)
    with mp.workdps(digits + 10):
        tail = mp.fsum(x * x for x in row[2 * k - 1:])
        return +(2 * mp.sqrt(tail))
