"""Floating-point regularization with unitary or orthogonal stages.

The same two-step reduction as the exact path, but every stage
transform is built from singular value decompositions, so the
accumulated transform stays unitary (complex matrices, either
involution) or real orthogonal.  Rank decisions are made against an
explicit tolerance; borderline calls are reported on a warning
channel rather than hidden, because the parameter sequence is
discontinuous in the input.

This path produces the unitarily reduced block pattern, not a block
diagonal direct sum: splitting off the Jordan blocks requires
non-unitary *congruences and lives in the exact modules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import MatrixParseError

COMPLEX_CONJUGATION = "complex-conjugation"
COMPLEX_IDENTITY = "complex-identity"
REAL_IDENTITY = "real-identity"
_MODES = (COMPLEX_CONJUGATION, COMPLEX_IDENTITY, REAL_IDENTITY)

# borderline rank decisions are flagged when a singular value falls
# within this factor of the threshold
_WARN_FACTOR = 10.0


@dataclass(frozen=True)
class FloatMode:
    """Numerical involution choice plus the rank tolerance.

    tol=None means the standard relative rule: each decision uses
    max(rows, cols) * machine epsilon * largest singular value of the
    matrix being ranked.  A fixed tol is absolute.
    """

    mode: str
    tol: float | None = None

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("fixed tolerance must be positive")

    @classmethod
    def complex_conjugation(cls, tol: float | None = None) -> "FloatMode":
        return cls(COMPLEX_CONJUGATION, tol)

    @classmethod
    def complex_identity(cls, tol: float | None = None) -> "FloatMode":
        return cls(COMPLEX_IDENTITY, tol)

    @classmethod
    def real_identity(cls, tol: float | None = None) -> "FloatMode":
        return cls(REAL_IDENTITY, tol)

    @property
    def tol_policy(self) -> str:
        return "fixed" if self.tol is not None else "relative-max-dim"

    @property
    def dtype(self):
        return np.float64 if self.mode == REAL_IDENTITY else np.complex128

    def adjoint(self, a: np.ndarray) -> np.ndarray:
        """The active involution applied to a matrix: conjugate
        transpose under conjugation, plain transpose otherwise."""
        if self.mode == COMPLEX_CONJUGATION:
            return a.conj().T
        return a.T


@dataclass(frozen=True, eq=False)
class FloatStageRecord:
    m_odd: int
    m_even: int
    transform: np.ndarray
    form: np.ndarray
    a_next: np.ndarray
    warnings: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class ReducedForm:
    m: tuple[int, ...]
    transform: np.ndarray
    reduced: np.ndarray
    regular_block: np.ndarray
    warnings: tuple[str, ...]
    mode: FloatMode


def _decide_rank(s: np.ndarray, shape: tuple[int, int], mode: FloatMode,
                 scale: float) -> tuple[int, list[str]]:
    # scale is the largest singular value of the original input, not
    # of the block being ranked: a block that is zero up to rounding
    # still has a tiny nonzero spectrum of its own
    if mode.tol is not None:
        tol = mode.tol
    else:
        tol = max(shape) * np.finfo(np.float64).eps * scale
    r = int(np.count_nonzero(s > tol))
    warnings = [
        f"borderline rank decision: singular value {sv:.6e} within a "
        f"factor of {_WARN_FACTOR:g} of tolerance {tol:.6e}"
        for sv in s
        if tol > 0 and tol / _WARN_FACTOR < sv < tol * _WARN_FACTOR
    ]
    return r, warnings


def _coerce(a, mode: FloatMode) -> np.ndarray:
    a = np.asarray(a, dtype=mode.dtype)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("float path requires a square matrix")
    if a.size and not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


def _embed(t: np.ndarray, n: int, dtype) -> np.ndarray:
    k = t.shape[0]
    out = np.eye(n, dtype=dtype)
    out[:k, :k] = t
    return out


def float_stage(a, mode: FloatMode, scale: float | None = None,
                ) -> FloatStageRecord:
    """One unitary or orthogonal reduction stage.

    Step 1: with A = U S V^H, the rows of U^H A beyond the numerical
    rank vanish, so U^H plays the row-compression transform for every
    mode.  Step 2: an SVD of the coupling block N, with the row order
    reversed, pushes its rank to the bottom rows.  m_odd = 0 signals a
    numerically nonsingular input (nothing to split off).

    scale overrides the reference magnitude for the relative rank
    rule; float_regularize passes the original matrix norm so later,
    smaller stages do not re-zoom into rounding noise.
    """
    a = _coerce(a, mode)
    n = a.shape[0]
    if n == 0:
        empty = np.zeros((0, 0), dtype=mode.dtype)
        return FloatStageRecord(0, 0, np.eye(0, dtype=mode.dtype),
                                empty, empty, ())
    u, s, _ = np.linalg.svd(a)
    if scale is None:
        scale = float(s[0]) if len(s) else 0.0
    r, warnings = _decide_rank(s, a.shape, mode, scale)
    m_odd = n - r
    step1 = u.conj().T
    form1 = step1 @ a @ mode.adjoint(step1)
    n_block = form1[:r, r:]
    u2, s2, _ = np.linalg.svd(n_block)
    m_even, w2 = _decide_rank(s2, n_block.shape, mode, scale)
    warnings += w2
    step2 = u2.conj().T[::-1]  # reversal on top pushes the rank down
    t = _embed(step2, n, mode.dtype) @ step1
    form = t @ a @ mode.adjoint(t)
    rho = r - m_even
    return FloatStageRecord(
        m_odd=m_odd, m_even=m_even, transform=t, form=form,
        a_next=form[:rho, :rho], warnings=tuple(warnings))


def float_regularize(a, mode: FloatMode) -> ReducedForm:
    """Iterate float_stage on the shrinking leading block, composing a
    single unitary (orthogonal) transform, and report the reduced
    block pattern with the parameter sequence."""
    a = _coerce(a, mode)
    n = a.shape[0]
    t_total = np.eye(n, dtype=mode.dtype)
    m: list[int] = []
    warnings: list[str] = []
    scale = float(np.linalg.norm(a, 2)) if n else 0.0
    current = a
    while current.shape[0]:
        rec = float_stage(current, mode, scale)
        warnings.extend(rec.warnings)
        if rec.m_odd == 0:
            break
        m.extend((rec.m_odd, rec.m_even))
        t_total = _embed(rec.transform, n, mode.dtype) @ t_total
        current = rec.a_next
    reduced = t_total @ a @ mode.adjoint(t_total)
    rho = n - sum(m)
    return ReducedForm(
        m=tuple(m), transform=t_total, reduced=reduced,
        regular_block=reduced[:rho, :rho], warnings=tuple(warnings),
        mode=mode)


# -- the reduced block pattern -------------------------------------------------


def block_slices(rho: int, m: tuple[int, ...]) -> list[tuple[int, slice]]:
    """(label, slice) pairs for the diagonal block layout.  Top to
    bottom the blocks are the regular part (label 2*tau + 1) followed
    by m_2tau, ..., m_1 (label = index)."""
    labels = [len(m) + 1] + list(range(len(m), 0, -1))
    sizes = [rho] + list(reversed(m))
    out = []
    start = 0
    for lbl, sz in zip(labels, sizes):
        out.append((lbl, slice(start, start + sz)))
        start += sz
    return out


def _cell_required_zero(a_lbl: int, b_lbl: int, reg: int) -> bool:
    if a_lbl == reg and b_lbl == reg:
        return False
    if a_lbl != reg and b_lbl == a_lbl - 1:
        # the unit-coupling cells: full row rank, never zero
        return False
    if b_lbl % 2 == 1:
        return a_lbl % 2 == 1 or a_lbl > b_lbl
    return a_lbl % 2 == 1 and a_lbl < b_lbl


def required_zero_mask(rho: int, m: tuple[int, ...]) -> np.ndarray:
    """Boolean mask of the cells the reduced pattern forces to zero.
    The unit-coupling blocks on the first block superdiagonal and the
    unconstrained cells are False."""
    n = rho + sum(m)
    mask = np.zeros((n, n), dtype=bool)
    slices = block_slices(rho, m)
    reg = len(m) + 1
    for a_lbl, rs in slices:
        for b_lbl, cs in slices:
            if _cell_required_zero(a_lbl, b_lbl, reg):
                mask[rs, cs] = True
    return mask


def pattern_residual(rf: ReducedForm) -> float:
    """Largest magnitude found in a required-zero cell."""
    rho = rf.reduced.shape[0] - sum(rf.m)
    mask = required_zero_mask(rho, rf.m)
    if not mask.any():
        return 0.0
    return float(np.abs(rf.reduced[mask]).max())


def unitarity_residual(t: np.ndarray) -> float:
    """Max-norm distance of t.conj().T @ t from the identity; the
    check is always with the conjugate transpose, whatever the
    involution, because the stage factors are unitary."""
    n = t.shape[0]
    return float(np.abs(t.conj().T @ t - np.eye(n)).max()) if n else 0.0


# -- text and JSON I/O -----------------------------------------------------------
# Same layout as the exact matrix format, with decimal floating-point
# literals; complex entries use the a+b*i grammar.


def _parse_float_token(tok: str, complex_entries: bool):
    if complex_entries:
        s = tok.replace("*i", "i").replace("*j", "j").replace("i", "j")
        try:
            return complex(s)
        except ValueError:
            raise ValueError(f"invalid complex entry {tok!r}") from None
    try:
        return float(tok)
    except ValueError:
        raise ValueError(f"invalid real entry {tok!r}") from None


def parse_float_matrix(text: str, *, complex_entries: bool) -> np.ndarray:
    import re

    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise MatrixParseError("missing header line", 1, 1)
    header = lines[0].split()
    try:
        rows, cols = int(header[0]), int(header[1])
        if len(header) != 2 or rows < 0 or cols < 0:
            raise ValueError
    except (ValueError, IndexError):
        raise MatrixParseError(
            "header must be two integers: rows cols", 1, 1) from None
    dtype = np.complex128 if complex_entries else np.float64
    out = np.zeros((rows, cols), dtype=dtype)
    for i in range(rows):
        raw = lines[i + 1] if i + 1 < len(lines) else ""
        tokens = list(re.finditer(r"\S+", raw))
        if len(tokens) != cols:
            col = tokens[cols].start() + 1 if len(tokens) > cols else (
                tokens[-1].end() + 1 if tokens else 1)
            raise MatrixParseError(
                f"expected {cols} entries, found {len(tokens)}", i + 2, col)
        for j, t in enumerate(tokens):
            try:
                out[i, j] = _parse_float_token(t.group(), complex_entries)
            except ValueError as exc:
                raise MatrixParseError(str(exc), i + 2, t.start() + 1
                                       ) from None
    for k, extra in enumerate(lines[rows + 1:], start=rows + 2):
        if extra.strip():
            raise MatrixParseError("trailing content after matrix", k, 1)
    return out


def render_float_scalar(x) -> str:
    if isinstance(x, complex) or np.iscomplexobj(x):
        x = complex(x)
        sign = "+" if x.imag >= 0 else "-"
        return f"{x.real!r}{sign}{abs(x.imag)!r}*i"
    return repr(float(x))


def render_float_matrix(a: np.ndarray) -> str:
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    for i in range(a.shape[0]):
        lines.append(" ".join(render_float_scalar(x) for x in a[i]))
    return "\n".join(lines) + "\n"
