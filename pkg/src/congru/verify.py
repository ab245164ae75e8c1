"""Independent cross-checks for the decomposition machinery.

Everything here validates results by a route other than the one that
produced them: Jordan structure from rank sequences of matrix powers,
transforms by direct congruence evaluation, invariants by sampling
random congruences.  The random generators are fully seeded so every
reported failure is replayable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .float_unitary import FloatMode
from .matrix import Matrix, direct_sum, invariants, jordan_block, rank
from .regularize import BlockSum, assemble, regularize
from .scalar import FieldKind, FieldSpec
from .sparse_form import full_decomposition

# spreads consecutive suite indices into unrelated generator seeds
_SEED_STRIDE = 1_000_003


@dataclass(frozen=True)
class RandomSpec:
    """Seeded recipe for one random matrix draw."""

    seed: int
    size: int
    field: FieldSpec
    entry_bound: int = 5

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("size must be nonnegative")
        if self.entry_bound < 1:
            raise ValueError("entry bound must be positive")


def _draw_scalar(rng: random.Random, field: FieldSpec, bound: int):
    re = rng.randint(-bound, bound)
    if field.kind is FieldKind.GAUSSIAN_RATIONAL:
        im = rng.randint(-bound, bound)
        return field.coerce(re) + field.imaginary_unit() * field.coerce(im)
    return field.from_int(re)


def _draw_matrix(rng: random.Random, field: FieldSpec, rows: int, cols: int,
                 bound: int) -> Matrix:
    return Matrix.from_rows(
        field,
        [[_draw_scalar(rng, field, bound) for _ in range(cols)]
         for _ in range(rows)],
        cols=cols)


def _draw_nonsingular(rng: random.Random, field: FieldSpec, n: int,
                      bound: int) -> Matrix:
    while True:
        a = _draw_matrix(rng, field, n, n, bound)
        if a.is_nonsingular():
            return a


def random_matrix(spec: RandomSpec) -> Matrix:
    """Integer-entry random square matrix, entries in
    [-entry_bound, entry_bound] (both components, over Q(i))."""
    rng = random.Random(spec.seed)
    return _draw_matrix(rng, spec.field, spec.size, spec.size,
                        spec.entry_bound)


def random_nonsingular(spec: RandomSpec) -> Matrix:
    """Rejection-sample random_matrix until nonsingular.  The 0 x 0
    matrix is nonsingular by convention, so size 0 returns at once."""
    rng = random.Random(spec.seed)
    return _draw_nonsingular(rng, spec.field, spec.size, spec.entry_bound)


def nilpotent_jordan_oracle(a: Matrix) -> dict[int, int]:
    """Jordan block sizes of a nilpotent matrix from ranks of its
    powers alone: with r_k = rank(a^k), the number of blocks of size k
    is r_{k-1} - 2 r_k + r_{k+1}.  Raises if some power never hits
    zero."""
    if not a.is_square():
        raise ValueError("oracle requires a square matrix")
    n = a.rows
    ranks = [n]
    power = a
    while ranks[-1]:
        ranks.append(rank(power))
        if len(ranks) > n + 1:
            raise ValueError("not nilpotent")
        power = power * a
    ranks.append(0)
    out = {}
    for k in range(1, len(ranks) - 1):
        mult = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
        if mult < 0:
            raise ValueError("not nilpotent")
        if mult:
            out[k] = mult
    return out


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    reason: str = ""


def check_transform(a, x, target, *, mode: FloatMode | None = None,
                    tol: float | None = None) -> CheckReport:
    """Confirm x * a * x.star == target by direct evaluation.

    Exact Matrix triples compare entrywise; float triples (with a mode
    supplying the involution) compare in max norm against tol, default
    1e-9.  A singular x fails regardless of the product."""
    if mode is None:
        if x.rows != x.cols or x.rows != a.rows or a.shape != target.shape:
            raise ValueError("dimension mismatch")
        if not x.is_nonsingular():
            return CheckReport(False, "transform singular")
        got = (x * a) * x.star
        if got == target:
            return CheckReport(True)
        for i in range(got.rows):
            for j in range(got.cols):
                if got[i, j] != target[i, j]:
                    return CheckReport(
                        False,
                        f"mismatch at ({i}, {j}): "
                        f"{a.field.render_scalar(got[i, j])} != "
                        f"{a.field.render_scalar(target[i, j])}")
        return CheckReport(False, "field mismatch")
    a = np.asarray(a, dtype=mode.dtype)
    x = np.asarray(x, dtype=mode.dtype)
    target = np.asarray(target, dtype=mode.dtype)
    if x.shape[0] != x.shape[1] or x.shape[0] != a.shape[0] \
            or a.shape != target.shape:
        raise ValueError("dimension mismatch")
    if np.linalg.matrix_rank(x) < x.shape[0]:
        return CheckReport(False, "transform singular")
    residual = x @ a @ mode.adjoint(x) - target
    worst = float(np.abs(residual).max()) if residual.size else 0.0
    bound = 1e-9 if tol is None else tol
    if worst <= bound:
        return CheckReport(True)
    return CheckReport(False, f"residual {worst:.6e} exceeds {bound:.6e}")


@dataclass(frozen=True)
class SuiteReport:
    total: int
    passed: int
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def invariance_suite(a: Matrix, trials: int, *, seed: int,
                     entry_bound: int = 5) -> SuiteReport:
    """Sample random congruences s * a * s.star and confirm the
    invariant tuple and the regularization parameters never move."""
    base_inv = invariants(a)
    base_reg = regularize(a)
    base = (base_inv, base_reg.tau, base_reg.m)
    failures = []
    for i in range(trials):
        spec = RandomSpec(seed=seed * _SEED_STRIDE + i, size=a.rows,
                          field=a.field, entry_bound=entry_bound)
        s = random_nonsingular(spec)
        b = (s * a) * s.star
        got_reg = regularize(b)
        got = (invariants(b), got_reg.tau, got_reg.m)
        if got != base:
            failures.append(
                f"trial {i}: congruence moved invariants from {base} "
                f"to {got}")
    return SuiteReport(trials, trials - len(failures), tuple(failures))


def roundtrip_suite(trials: int, *, seed: int,
                    entry_bound: int = 5) -> SuiteReport:
    """Build matrices with a known decomposition by congruence-scrambling
    regular + Jordan direct sums, then demand the decomposition
    recovers the block multiset, the regular size, and a verified
    transform.  Trials alternate between the rationals with the
    identity and the Gaussian rationals with conjugation."""
    failures = []
    rational = FieldSpec.rationals()
    gaussian = FieldSpec.gaussian()
    for i in range(trials):
        rng = random.Random(seed * _SEED_STRIDE + i)
        field = rational if i % 2 == 0 else gaussian
        b_size = rng.randint(0, 4)
        sizes: list[int] = []
        budget = 10
        for _ in range(rng.randint(0, 4)):
            if not budget:
                break
            k = rng.randint(1, min(4, budget))
            sizes.append(k)
            budget -= k
        blocks = [_draw_nonsingular(rng, field, b_size, entry_bound)]
        blocks.extend(jordan_block(field, k) for k in sorted(sizes))
        canonical = direct_sum(field, blocks)
        s = _draw_nonsingular(rng, field, canonical.rows, entry_bound)
        a = (s.star * canonical) * s
        want = {k: sizes.count(k) for k in set(sizes)}
        bs, x = full_decomposition(a)
        if dict(bs.jordan_multiplicities) != want:
            failures.append(
                f"trial {i}: block multiset {dict(bs.jordan_multiplicities)}"
                f" != {want}")
            continue
        if bs.regular_part.rows != b_size:
            failures.append(
                f"trial {i}: regular size {bs.regular_part.rows} != "
                f"{b_size}")
            continue
        rep = check_transform(a, x, assemble(BlockSum(
            bs.regular_part, bs.jordan_multiplicities)))
        if not rep.ok:
            failures.append(f"trial {i}: {rep.reason}")
    return SuiteReport(trials, trials - len(failures), tuple(failures))
