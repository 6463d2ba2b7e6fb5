from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from liestoch.ratfunc import (
    PoleError,
    RationalFunction,
    ReconstructionError,
    laurent_coefficients,
    reconstruct_rational,
)

N = RationalFunction.variable()

coeffs = st.lists(st.integers(-9, 9), min_size=1, max_size=4)


@st.composite
def ratfuncs(draw):
    num = draw(coeffs)
    den = draw(coeffs.filter(lambda c: any(c)))
    return RationalFunction(tuple(num), tuple(den))


def _evaluable(fs, x):
    try:
        return [f(x) for f in fs]
    except PoleError:
        return None


@given(ratfuncs(), ratfuncs(), st.integers(-20, 20))
def test_arithmetic_commutes_with_evaluation(f, g, x):
    vals = _evaluable([f, g], x)
    assume(vals is not None)
    fv, gv = vals
    assert (f + g)(x) == fv + gv
    assert (f - g)(x) == fv - gv
    assert (f * g)(x) == fv * gv
    if gv != 0 and g.num:
        q = f / g
        try:
            assert q(x) == fv / gv
        except PoleError:
            pass


@given(ratfuncs(), ratfuncs())
def test_normal_form_is_canonical(f, g):
    if g.num:
        assert (f * g) / g == f
    assert f + 0 == f
    assert f - f == RationalFunction.constant(0)


def test_normalisation():
    f = RationalFunction((2, 2), (4, 4))  # (2N+2)/(4N+4)
    assert f == RationalFunction.constant(Fraction(1, 2))
    assert f.is_constant()
    g = RationalFunction((1,), (-1, -1))
    assert g.den[-1] > 0


def test_pole_raises():
    f = 1 / (N - 3)
    with pytest.raises(PoleError):
        f(3)
    with pytest.raises(PoleError):
        N / (N - N)


def test_factored_output():
    assert (2 / (2 * N + 1)).factored() == "2 / (2*N+1)"
    m4 = (N ** 2 + 12 * N + 6) / (N * (N + 1) * (N + 2) * (N + 3))
    assert "(N+1)*(N+2)*(N+3)" in m4.factored()
    assert (N ** 2 / (2 * (N + 1))).factored() == "N^2 / (2*(N+1))"


def test_reconstruct_examples():
    target = (N ** 2 + 12 * N + 6) / (N * (N + 1) * (N + 2) * (N + 3))
    samples = [(x, target(x)) for x in range(5, 17)]
    assert reconstruct_rational(samples[:11], 2, 4) == target
    const = reconstruct_rational([(x, 1) for x in range(1, 6)], 0, 0)
    assert const == RationalFunction.constant(1)


def test_reconstruct_rejects_wrong_degree_and_holdout_catches_it():
    target = 34 / ((N + 1) * (N + 2) * (N + 3) * (N + 4))
    samples = [(x, target(x)) for x in range(1, 12)]
    with pytest.raises(ReconstructionError):
        reconstruct_rational(samples, 0, 2)
    with pytest.raises(ReconstructionError):
        reconstruct_rational(samples[:3], 0, 4)
    with pytest.raises(ReconstructionError):
        reconstruct_rational([(1, 1), (1, 2), (2, 3), (3, 4), (4, 5)], 0, 1)


@given(ratfuncs())
def test_reconstruct_roundtrip(f):
    pts = []
    x = 1
    while len(pts) < f.deg_num + f.deg_den + 5:
        try:
            pts.append((x, f(x)))
        except PoleError:
            pass
        x += 1
    assert reconstruct_rational(pts, f.deg_num, f.deg_den) == f


def test_laurent_examples():
    s1 = (N - 1) / (N + 1)
    assert laurent_coefficients(s1, 1, 2) == [0, 1]
    s2 = 2 * (N - 1) * (N + 4) / ((N + 3) * (N + 2) * (N + 1))
    assert laurent_coefficients(s2, 2, 4) == [0, 0, 0, 2]
    m2_ai = (N - 1) * (N + 5) / ((N + 1) * (N + 3))
    # unscaled, T_j multiplies N^(1-j): 1 + 0/N - 8/N^2
    assert laurent_coefficients(m2_ai, 1, 3, pre_scale=0) == [1, 0, -8]


def test_laurent_of_zero():
    assert laurent_coefficients(RationalFunction.constant(0), 2, 3) == [0, 0, 0]
