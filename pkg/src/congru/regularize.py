"""Regularizing decomposition under *congruence.

A square matrix A over a field with involution is *congruent to a
direct sum of a nonsingular matrix and singular Jordan blocks.  This
module runs the two-step reduction stage until the working block
becomes nonsingular and reads the Jordan multiplicities off the
resulting parameter sequence m_1 >= m_2 >= ... >= m_2tau.

Transform convention: every transform X reported anywhere in this
package acts on the left, X * A * X.star == form.  A statement with
the transform on the other side, S.star * A * S, is recovered with
S = X.star.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .matrix import Matrix, direct_sum, jordan_block, row_echelon_transform


@dataclass(frozen=True)
class StageRecord:
    """One reduction stage.

    transform T satisfies T * A * T.star ==
        [[a_next, b, 0], [c, d, e], [0, 0, 0]]
    with block rows/cols of sizes (n - m_odd - m_even, m_even, m_odd);
    e is m_even x m_odd with independent rows.
    """

    m_odd: int
    m_even: int
    transform: Matrix
    a_next: Matrix
    b: Matrix
    c: Matrix
    d: Matrix
    e: Matrix

    def stage_form(self) -> Matrix:
        """The full block matrix T * A * T.star."""
        field = self.transform.field
        n = self.transform.rows
        rho = self.a_next.rows
        z_top = Matrix.zeros(field, rho, self.m_odd)
        z_bot = Matrix.zeros(field, self.m_odd, n)
        top = Matrix.from_blocks(field, [[self.a_next, self.b, z_top],
                                         [self.c, self.d, self.e]])
        return Matrix.from_blocks(field, [[top], [z_bot]])


@dataclass(frozen=True)
class RegularizationResult:
    tau: int
    m: tuple[int, ...]
    regular_part: Matrix
    stages: tuple[StageRecord, ...]


@dataclass(frozen=True)
class BlockSum:
    """A regular part plus a multiset of singular Jordan block sizes."""

    regular_part: Matrix
    jordan_multiplicities: Mapping[int, int]


def stage(a: Matrix) -> StageRecord:
    """One two-step *congruence stage on a singular square matrix.

    Step 1 compresses the row space: with S from row elimination,
    (S*A)*S.star has its bottom m_odd = nullity(A) rows and columns of
    zeros, leaving [[M, N], [0, 0]].  Step 2 pushes the rank of N to
    the bottom: R*N has zero rows on top and m_even = rank(N)
    independent rows below.  The composed T = (R (+) I) * S produces
    the stage block form.
    """
    if not a.is_square():
        raise ValueError("stage requires a square matrix")
    n = a.rows
    s, r = row_echelon_transform(a, zeros="bottom")
    m_odd = n - r
    if m_odd == 0:
        raise ValueError("stage requires singular input")
    field = a.field
    sa = (s * a) * s.star
    m_block = sa.block(0, r, 0, r)
    n_block = sa.block(0, r, r, n)
    rr, m_even = row_echelon_transform(n_block, zeros="top")
    t = direct_sum(field, [rr, Matrix.identity(field, m_odd)]) * s
    rm = (rr * m_block) * rr.star
    rn = rr * n_block
    rho = r - m_even
    return StageRecord(
        m_odd=m_odd,
        m_even=m_even,
        transform=t,
        a_next=rm.block(0, rho, 0, rho),
        b=rm.block(0, rho, rho, r),
        c=rm.block(rho, r, 0, rho),
        d=rm.block(rho, r, rho, r),
        e=rn.block(rho, r, 0, m_odd),
    )


def regularize(a: Matrix) -> RegularizationResult:
    """Iterate `stage` on the shrinking working block until it is
    nonsingular.  Records every stage; the parameter sequence m is
    guaranteed non-increasing."""
    if not a.is_square():
        raise ValueError("regularize requires a square matrix")
    stages: list[StageRecord] = []
    m: list[int] = []
    work = a
    while not work.is_nonsingular():
        rec = stage(work)
        stages.append(rec)
        m.extend((rec.m_odd, rec.m_even))
        work = rec.a_next
    assert all(m[i] >= m[i + 1] for i in range(len(m) - 1)), \
        "stage parameters must be non-increasing"
    return RegularizationResult(
        tau=len(stages), m=tuple(m), regular_part=work,
        stages=tuple(stages))


def multiplicities(result: RegularizationResult) -> BlockSum:
    """Jordan multiplicities from consecutive differences of the
    parameter sequence: J_k appears m_k - m_{k+1} times."""
    m = result.m
    mult: dict[int, int] = {}
    for k in range(1, len(m) + 1):
        nxt = m[k] if k < len(m) else 0
        count = m[k - 1] - nxt
        if count:
            mult[k] = count
    return BlockSum(regular_part=result.regular_part,
                    jordan_multiplicities=mult)


def assemble(block_sum: BlockSum) -> Matrix:
    """regular_part (+) J_1 blocks (+) J_2 blocks (+) ... in increasing
    size order; the deterministic layout every transform targets."""
    field = block_sum.regular_part.field
    blocks = [block_sum.regular_part]
    for k in sorted(block_sum.jordan_multiplicities):
        count = block_sum.jordan_multiplicities[k]
        if count < 0:
            raise ValueError("negative multiplicity")
        blocks.extend(jordan_block(field, k) for _ in range(count))
    return direct_sum(field, blocks)
