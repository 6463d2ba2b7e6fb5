from fractions import Fraction

import pytest

from liestoch.moments import (
    MomentSpec,
    asymptotic_coefficients,
    chiral_first_moment,
    chiral_first_shifted_moment,
    closed_form,
    direct_contraction,
    exact_moment,
    ray_signature,
)
from liestoch.ratfunc import RationalFunction
from liestoch.targets import target
from liestoch.weingarten import symbolic_N

N = symbolic_N()


def test_exact_examples():
    assert exact_moment(MomentSpec("U", 2, variant="reduced", N=3)) == Fraction(1, 4)
    assert exact_moment(MomentSpec("O", 3, variant="reduced", N=4)) == Fraction(1, 6)
    assert exact_moment(MomentSpec("AII", 4, variant="reduced", N=2)) == Fraction(3, 5)
    assert exact_moment(MomentSpec("U", 1, "singular", "full", N=N)) == 2 * N / (N + 1)


def test_direct_contraction_examples():
    assert direct_contraction("U", 2, N=2) == Fraction(4, 3)
    assert direct_contraction("S", 2, N=2) == Fraction(7, 5)


def test_symplectic_singular_moment_n3():
    # reconstructed first singular moment (2N-1)/(2N+1), full value at N=3
    assert direct_contraction("S", 1, N=3, quantity="singular") == 1 + Fraction(5, 7)


@pytest.mark.xfail(strict=True, reason="reference first singular moment of S does not match the exact sum")
def test_symplectic_singular_matches_reference_value():
    assert direct_contraction("S", 1, N=3, quantity="singular") == 1 + Fraction(22, 14)


@pytest.mark.xfail(strict=True, reason="reference first singular moment of S does not match the exact sum")
def test_symplectic_singular_closed_form_matches_reference():
    assert closed_form("S", 1, "singular") == target("S", "singular", 1)


@pytest.mark.parametrize("ens, kw", [("U", {"N": 4}), ("O", {"N": 5}), ("AI", {"N": 3}),
                                     ("AII", {"N": 2}), ("AIII", {"a": 4, "b": 2}), ("BDI", {"a": 4, "b": 2})])
def test_full_minus_reduced_is_one(ens, kw):
    for n in (1, 2, 3):
        full = exact_moment(MomentSpec(ens, n, variant="full", **kw))
        red = exact_moment(MomentSpec(ens, n, variant="reduced", **kw))
        assert full - red == 1


@pytest.mark.parametrize("ens, n, quantity, kw", [
    ("U", 2, "trace", {"N": 3}),
    ("U", 3, "trace", {"N": 3}),
    ("U", 1, "singular", {"N": 3}),
    ("O", 2, "trace", {"N": 3}),
    ("O", 3, "trace", {"N": 3}),
    ("O", 1, "singular", {"N": 3}),
    ("AI", 2, "trace", {"N": 3}),
    ("AI", 3, "trace", {"N": 2}),
    ("AII", 2, "trace", {"N": 2}),
    ("AIII", 1, "trace", {"a": 2, "b": 1}),
    ("AIII", 2, "trace", {"a": 3, "b": 1}),
    ("BDI", 1, "trace", {"a": 2, "b": 1}),
    ("BDI", 2, "trace", {"a": 2, "b": 2}),
])
def test_tables_agree_with_direct_contraction(ens, n, quantity, kw):
    assert exact_moment(MomentSpec(ens, n, quantity, **kw)) == direct_contraction(ens, n, quantity=quantity, **kw)


def test_symbolic_and_pointwise_agree():
    f = exact_moment(MomentSpec("O", 3, variant="reduced", N=N))
    for x in (3, 4, 7):
        assert f(x) == exact_moment(MomentSpec("O", 3, variant="reduced", N=x))


def test_closed_form_examples():
    assert closed_form("U", 2) == target("U", "trace", 2)
    assert closed_form("U", 5).factored() == "34 / ((N+1)*(N+2)*(N+3)*(N+4))"
    assert closed_form("AI", 1) == target("AI", "trace", 1)
    assert isinstance(closed_form("O", 2), RationalFunction)


def test_closed_form_chiral_needs_alpha():
    with pytest.raises(ValueError):
        closed_form("AIII", 1)


def test_asymptotic_coefficients_unitary():
    assert asymptotic_coefficients("U", 2, 4) == [0, 0, 0, 2]


@pytest.mark.parametrize("family, a, b", [("AIII", 4, 3), ("AIII", 6, 2), ("BDI", 4, 3), ("BDI", 5, 3), ("BDI", 6, 2)])
def test_chiral_first_moment_matches_exact(family, a, b):
    spec = MomentSpec(family, 1, variant="reduced", a=a, b=b)
    assert chiral_first_moment(family, a + b, spec.alpha) == exact_moment(spec)
    shifted = MomentSpec(family, 1, variant="shifted", a=a, b=b)
    assert chiral_first_shifted_moment(family, a + b, spec.alpha) == exact_moment(shifted)


def test_quaternionic_chiral_first_moment_form():
    for x in range(2, 8):
        for alpha in (Fraction(0), Fraction(1, 2), Fraction(1, 3)):
            expect = (4 * x * x * alpha ** 2 - 1) / Fraction(2 * x + 1)
            assert chiral_first_moment("CII", x, alpha) == expect


@pytest.mark.parametrize("n", [1, 2])
def test_chiral_trace_moment_per_dimension_approaches_alpha_power(n):
    alpha = Fraction(1, 2)
    gaps = []
    for x in (40, 80, 160):
        a, b = ray_signature(x, alpha)
        m = exact_moment(MomentSpec("AIII", n, variant="full", a=a, b=b))
        gaps.append(abs(m / x - alpha ** (2 * n)))
    # finite-size gap decays like 1/N
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[0] / gaps[2] > 3


def test_trivial_chiral_signatures():
    assert exact_moment(MomentSpec("AIII", 3, variant="full", a=5, b=0)) == 5
    assert exact_moment(MomentSpec("BDI", 2, variant="reduced", a=0, b=4)) == 3
    assert exact_moment(MomentSpec("AIII", 2, variant="shifted", a=3, b=0)) == 0


def test_ray_signature():
    assert ray_signature(8, Fraction(1, 2)) == (6, 2)
    assert ray_signature(6, Fraction(1, 2)) is None
    assert ray_signature(5, Fraction(0)) is None


@pytest.mark.parametrize("kwargs", [
    dict(ensemble="X", n=1, N=3),
    dict(ensemble="U", n=0, N=3),
    dict(ensemble="U", n=1),
    dict(ensemble="U", n=1, N=3, quantity="det"),
    dict(ensemble="U", n=1, N=3, variant="shifted"),
    dict(ensemble="AIII", n=1, a=2),
    dict(ensemble="AIII", n=1, a=2, b=1, N=4),
    dict(ensemble="BDI", n=1, a=-1, b=2),
    dict(ensemble="AIII", n=1, a=2, b=1, quantity="singular", variant="shifted"),
])
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        MomentSpec(**kwargs)
