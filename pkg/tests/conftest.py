"""Shared strategies for the property tests.

Matrices stay small (side <= 5) so exact elimination keeps hypothesis
runs fast; the acceptance tests cover the larger seeded workloads.
"""

import random

from hypothesis import strategies as st

from congru import FieldKind, FieldSpec, Matrix, direct_sum, jordan_block

RATIONALS = FieldSpec.rationals()
GAUSSIAN_CONJ = FieldSpec.gaussian()
GAUSSIAN_IDENT = FieldSpec.gaussian(conjugation=False)
GF7 = FieldSpec.prime_field(7)

ALL_FIELDS = (RATIONALS, GAUSSIAN_CONJ, GAUSSIAN_IDENT, GF7)

_small = st.integers(-4, 4)


def scalar_strategy(field: FieldSpec):
    if field.kind is FieldKind.GAUSSIAN_RATIONAL:
        return st.builds(
            lambda a, b: field.coerce(a) + field.imaginary_unit()
            * field.coerce(b),
            _small, _small)
    return st.builds(field.from_int, _small)


@st.composite
def square_matrix(draw, field: FieldSpec, min_n: int = 0, max_n: int = 5):
    n = draw(st.integers(min_n, max_n))
    sc = scalar_strategy(field)
    rows = [[draw(sc) for _ in range(n)] for _ in range(n)]
    return Matrix.from_rows(field, rows, cols=n)


@st.composite
def singular_matrix(draw, field: FieldSpec, max_n: int = 5):
    """A square matrix guaranteed singular: one row is forced to a
    scalar multiple of another (or zero for side 1)."""
    a = draw(square_matrix(field, min_n=1, max_n=max_n))
    n = a.rows
    rows = [list(a.row(i)) for i in range(n)]
    if n == 1:
        rows[0] = [field.zero()]
    else:
        i, j = draw(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                    .filter(lambda t: t[0] != t[1]))
        c = draw(scalar_strategy(field))
        rows[i] = [c * x for x in rows[j]]
    return Matrix.from_rows(field, rows, cols=n)


@st.composite
def fielded_square(draw, fields=ALL_FIELDS, max_n: int = 5):
    field = draw(st.sampled_from(fields))
    return draw(square_matrix(field, max_n=max_n))


@st.composite
def m_sequence(draw, max_tau: int = 3, max_m1: int = 4):
    """A valid stage-parameter sequence: even length, non-increasing,
    next-to-last entry positive."""
    tau = draw(st.integers(1, max_tau))
    first = draw(st.integers(1, max_m1))
    seq = [first]
    for _ in range(2 * tau - 2):
        seq.append(draw(st.integers(1, seq[-1])))
    seq.append(draw(st.integers(0, seq[-1])))
    return tuple(seq)


def scrambled_sum(rng: random.Random, field: FieldSpec, b_size: int,
                  jordan_sizes, bound: int = 2):
    """(a, canonical) where a = s.star * canonical * s for a random
    nonsingular integer s, canonical = regular + ascending Jordan
    blocks."""
    from congru.verify import _draw_nonsingular

    blocks = [_draw_nonsingular(rng, field, b_size, bound)]
    blocks.extend(jordan_block(field, k) for k in sorted(jordan_sizes))
    canonical = direct_sum(field, blocks)
    s = _draw_nonsingular(rng, field, canonical.rows, bound)
    return (s.star * canonical) * s, canonical
