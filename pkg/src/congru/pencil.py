"""Selfadjoint pencil regularization.

A pencil A + lam * A.star is determined by A alone, so the matrix
decomposition does all the work: the transform X that brings A to
(regular block) + (nilpotent Jordan sum) simultaneously brings the
pencil to (B + lam B.star) + sum of J_k + lam J_k^T blocks.  Each
singular pencil summand J_k + lam J_k^T is then permutation-congruent
to a classical Kronecker pair, and the permutation witness is cheap to
write down explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import (
    Matrix,
    direct_sum,
    f_block,
    g_block,
    jordan_block,
    permutation_matrix,
)
from .scalar import FieldSpec
from .sparse_form import full_decomposition


@dataclass(frozen=True)
class SelfadjointPencil:
    a: Matrix

    def __post_init__(self):
        if not self.a.is_square():
            raise ValueError("pencil matrix must be square")

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    def evaluate(self, lam) -> Matrix:
        """The pencil at a concrete parameter value: a + lam * a.star."""
        c = self.a.field.coerce(lam)
        return self.a + self.a.star.scale(c)


def lemma6_permutation(k: int) -> tuple[int, ...]:
    """Index images (0-based) of the permutation that carries a Jordan
    block J_k, by congruence with its permutation matrix, onto the
    anti-diagonal Kronecker layout.

    With f the 1-based map below, the unit J_k entries at (i, i+1)
    land at (f(i), f(i+1)); interleaving odd and even positions puts
    every unit into one of the two off-diagonal corner blocks.
    """
    if k < 2:
        raise ValueError(
            "permutation is defined for blocks of size 2 and up; "
            "a 1x1 block has no unit entries to route")
    f = [0] * (k + 1)
    if k % 2:
        ell = (k + 1) // 2
        f[1] = ell
        for j in range(1, ell):
            f[2 * j] = 2 * ell - j
            f[2 * j + 1] = ell - j
    else:
        ell = k // 2
        for j in range(1, ell + 1):
            f[2 * j - 1] = j
            f[2 * j] = ell + j
    return tuple(v - 1 for v in f[1:])


def permuted_jordan_target(field: FieldSpec, k: int) -> Matrix:
    """The anti-diagonal matrix the permuted Jordan block equals.

    Odd k = 2l-1: corner blocks are the (l-1) x l unit-shift pair,
    [[0, G^T], [F, 0]].  Even k = 2l: [[0, I_l], [J_l, 0]].
    """
    if k < 1:
        raise ValueError("block size must be positive")
    if k % 2:
        ell = (k + 1) // 2
        return Matrix.from_blocks(field, [
            [Matrix.zeros(field, ell, ell), g_block(field, ell).transpose()],
            [f_block(field, ell), Matrix.zeros(field, ell - 1, ell - 1)],
        ])
    ell = k // 2
    return Matrix.from_blocks(field, [
        [Matrix.zeros(field, ell, ell), Matrix.identity(field, ell)],
        [jordan_block(field, ell), Matrix.zeros(field, ell, ell)],
    ])


@dataclass(frozen=True)
class Replacement:
    """Canonical pencil summand for one Jordan size, with the
    permutation witness: witness * J_k * witness.star equals
    constant_part, and the pencil block is
    constant_part + lam * lambda_part."""

    kind: str
    ell: int
    constant_part: Matrix
    lambda_part: Matrix
    witness: Matrix


def replace_block(field: FieldSpec, k: int) -> Replacement:
    if k < 1:
        raise ValueError("block size must be positive")
    if k == 1:
        witness = Matrix.identity(field, 1)
    else:
        images = lemma6_permutation(k)
        # witness rows are indexed by f: row f(b) carries its unit in
        # column b, so build from the inverse image list
        inverse = [0] * k
        for b, a in enumerate(images):
            inverse[a] = b
        witness = permutation_matrix(field, inverse)
    constant = permuted_jordan_target(field, k)
    kind = "fg" if k % 2 else "ji"
    return Replacement(
        kind=kind, ell=(k + 1) // 2, constant_part=constant,
        lambda_part=constant.transpose(), witness=witness)


@dataclass(frozen=True)
class KroneckerBlock:
    size: int
    multiplicity: int
    replacement: Replacement


@dataclass(frozen=True)
class PencilDecomposition:
    pencil: SelfadjointPencil
    transform: Matrix
    regular: Matrix
    kronecker_blocks: tuple[KroneckerBlock, ...]

    def _witness_sum(self) -> Matrix:
        field = self.pencil.field
        blocks = [Matrix.identity(field, self.regular.rows)]
        for kb in self.kronecker_blocks:
            blocks.extend(kb.replacement.witness for _ in
                          range(kb.multiplicity))
        return direct_sum(field, blocks)

    @property
    def replaced_transform(self) -> Matrix:
        """Transform carrying the pencil straight to the replaced
        form: the per-block witnesses stacked on the Jordan
        transform."""
        return self._witness_sum() * self.transform

    def jordan_parts(self) -> tuple[Matrix, Matrix]:
        """Coefficient pair (C, L) of the Jordan-pair presentation:
        transform * pencil(lam) * transform.star == C + lam * L, with
        C the regular part followed by J_k summands ascending and L
        its stars-and-transposes companion."""
        field = self.pencil.field
        cs = [self.regular]
        ls = [self.regular.star]
        for kb in self.kronecker_blocks:
            j = jordan_block(field, kb.size)
            cs.extend(j for _ in range(kb.multiplicity))
            ls.extend(j.transpose() for _ in range(kb.multiplicity))
        return direct_sum(field, cs), direct_sum(field, ls)

    def replaced_parts(self) -> tuple[Matrix, Matrix]:
        """Coefficient pair of the replaced presentation, each Jordan
        summand swapped for its Kronecker pair: replaced_transform
        carries the pencil onto constant + lam * lambda."""
        field = self.pencil.field
        cs = [self.regular]
        ls = [self.regular.star]
        for kb in self.kronecker_blocks:
            rep = kb.replacement
            cs.extend(rep.constant_part for _ in range(kb.multiplicity))
            ls.extend(rep.lambda_part for _ in range(kb.multiplicity))
        return direct_sum(field, cs), direct_sum(field, ls)

    def jordan_form(self, lam) -> Matrix:
        """transform * pencil(lam) * transform.star at a concrete
        parameter value."""
        c, ell = self.jordan_parts()
        return c + ell.scale(self.pencil.field.coerce(lam))

    def replaced_form(self, lam) -> Matrix:
        """Same value under replaced_transform."""
        c, ell = self.replaced_parts()
        return c + ell.scale(self.pencil.field.coerce(lam))


def pencil_regularize(p: SelfadjointPencil) -> PencilDecomposition:
    """Decompose the pencil through the underlying matrix: the
    returned transform X satisfies, for every parameter value lam,
    X * p.evaluate(lam) * X.star == jordan_form(lam)."""
    bs, x = full_decomposition(p.a)
    field = p.field
    blocks = tuple(
        KroneckerBlock(size=k, multiplicity=bs.jordan_multiplicities[k],
                       replacement=replace_block(field, k))
        for k in sorted(bs.jordan_multiplicities))
    return PencilDecomposition(
        pencil=p, transform=x, regular=bs.regular_part,
        kronecker_blocks=blocks)
