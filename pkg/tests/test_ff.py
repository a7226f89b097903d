"""Field core: construction, axioms, tables, roots of unity."""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from permbinom.errors import DivisionByZero, FieldMismatch, NotPrime, NotPrimePower, NotADivisor
from permbinom.ff import construct_field, coset_reps, field_of_order, roots_of_unity
from permbinom.ntheory import prime_power

SMALL_Q = [q for q in range(2, 65) if prime_power(q)]


def _sympy_mul(F, u, v):
    # sympy wants big-endian coefficient lists
    a, b = F.digits(u)[::-1], F.digits(v)[::-1]
    mod = list(F.modulus)[::-1]
    res = gf_rem(gf_mul(a, b, F.p, ZZ), mod, F.p, ZZ)[::-1]
    return sum(int(c) * F.p**i for i, c in enumerate(res))


def test_frozen_modulus_and_generator():
    assert construct_field(7).gen == 3
    F = construct_field(7, 3)
    assert F.modulus == (2, 0, 0, 1)
    assert F.gen == 22
    F = construct_field(5, 2)
    assert F.modulus == (2, 0, 1)
    assert F.gen == 6
    assert construct_field(2, 4).modulus == (1, 1, 0, 0, 1)


@pytest.mark.parametrize("q", SMALL_Q)
def test_modulus_is_first_irreducible(q):
    F = field_of_order(q)
    if F.e == 1:
        return
    mod = list(F.modulus)[::-1]
    assert gf_irreducible_p(mod, F.p, ZZ)
    # every smaller encoding is reducible
    for c in range(F.p**F.e):
        cand = F.digits(c) + [1]
        if tuple(cand) == F.modulus:
            break
        assert not gf_irreducible_p(cand[::-1], F.p, ZZ)


@pytest.mark.parametrize("q", SMALL_Q)
def test_generator_is_smallest_primitive(q):
    F = field_of_order(q)
    assert F.order_of(F.gen) == q - 1
    for u in range(1, F.gen):
        assert F.order_of(u) < q - 1


@pytest.mark.parametrize("q", [q for q in SMALL_Q if q <= 27])
def test_axioms_exhaustive(q):
    F = field_of_order(q)
    els = range(q)
    for u, v in itertools.product(els, els):
        assert F.add(u, v) == F.add(v, u)
        assert F.mul(u, v) == F.mul(v, u)
        assert F.mul(u, v) == _sympy_mul(F, u, v)
        assert F.add(F.sub(u, v), v) == u
    for u in range(1, q):
        assert F.mul(u, F.inv(u)) == 1
        assert F.pow(u, q - 1) == 1


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(SMALL_Q), st.data())
def test_axioms_random(q, data):
    F = field_of_order(q)
    u, v, w = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(u, F.add(v, w)) == F.add(F.mul(u, v), F.mul(u, w))
    assert F.mul(F.mul(u, v), w) == F.mul(u, F.mul(v, w))
    assert F.add(F.add(u, v), w) == F.add(u, F.add(v, w))
    k = data.draw(st.integers(0, 3 * q))
    assert F.pow(u, k) == _pow_naive(F, u, k)


def _pow_naive(F, u, k):
    out = 1
    for _ in range(k):
        out = F.mul(out, u)
    return out


@pytest.mark.parametrize("q", SMALL_Q + [343, 1024, 3125])
def test_tables_consistent(q):
    F = field_of_order(q)
    t = F.tables
    assert sorted(t.exp.tolist()) == list(range(1, q))
    assert all(t.log[t.exp[i]] == i for i in range(q - 1))
    for i in range(0, q - 1, max(1, (q - 1) // 50)):
        one_plus = F.add(1, int(t.exp[i]))
        assert t.zech[i] == (-1 if one_plus == 0 else t.log[one_plus])


def test_vectorised_matches_scalar():
    for q in (49, 64, 81, 343):
        F = field_of_order(q)
        u = np.arange(q)
        v = (u * 7 + 3) % q
        assert F.vadd(u, v).tolist() == [F.add(int(a), int(b)) for a, b in zip(u, v)]
        assert F.vmul(u, v).tolist() == [F.mul(int(a), int(b)) for a, b in zip(u, v)]
        assert F.vpow(u, 11).tolist() == [F.pow(int(a), 11) for a in u]


def test_element_wrapper():
    F = construct_field(5, 2)
    g = F.generator
    assert str(g) == "1,1"
    assert g * g.inverse() == F(1)
    assert (g**24).value == 1
    assert F.from_text("4,4") == F.neg(g.value)
    assert F.encode([1, 1]) == 6 and F.encode(6) == 6
    with pytest.raises(ValueError):
        F.encode(25)
    with pytest.raises(FieldMismatch):
        g + construct_field(7)(1)
    with pytest.raises(DivisionByZero):
        F(0).inverse()


def test_construction_errors():
    with pytest.raises(NotPrime):
        construct_field(9)
    with pytest.raises(NotPrimePower):
        field_of_order(12)


@pytest.mark.parametrize("q", SMALL_Q)
def test_roots_of_unity_and_cosets(q):
    F = field_of_order(q)
    for r in (d for d in range(1, q) if (q - 1) % d == 0):
        mu = [z.value for z in roots_of_unity(F, r)]
        assert len(set(mu)) == r
        assert all(F.pow(z, r) == 1 for z in mu)
        k = (q - 1) // r
        reps = [c.value for c in coset_reps(F, k)]
        # cosets a * (k-th powers) partition F_q^*
        kth = {F.pow(u, k) for u in range(1, q)}
        covered = {F.mul(a, w) for a in reps for w in kth}
        assert len(covered) == q - 1 and len(reps) * len(kth) == q - 1
    with pytest.raises(NotADivisor):
        roots_of_unity(F, q)


def test_roots_of_unity_f7():
    F = construct_field(7)
    assert [z.value for z in roots_of_unity(F, 6)] == [1, 3, 2, 6, 4, 5]
    assert [c.value for c in coset_reps(F, 3)] == [1, 3, 2]


def test_deterministic_across_instances():
    a, b = construct_field(3, 4), type(construct_field(3, 4))(3, 4)
    assert a == b and a.modulus == b.modulus and a.gen == b.gen
    assert (a.tables.zech == b.tables.zech).all()
