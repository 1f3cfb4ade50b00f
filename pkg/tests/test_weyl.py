"""Root systems, Weyl enumeration, and the polynomial identity scans."""

import math

import pytest

from unitals.permgroup import CapExceeded
from unitals.weyl import (
    InexactDivision,
    classical_order_poly,
    is_prime_power,
    lemma_report_to_json,
    order_poly,
    parabolic_index_poly,
    poincare_parabolic,
    poincare_poly,
    poly_add,
    poly_divide_exact,
    poly_eval,
    poly_mul,
    poly_sub,
    prime_powers_upto,
    root_system,
    verify_lemma,
    weyl_enumerate,
)


def test_poly_arithmetic_basics():
    assert poly_mul((1, 1), (1, 1)) == (1, 2, 1)
    assert poly_mul((), (1, 2)) == ()
    assert poly_add((1, 2), (0, -2)) == (1,)
    assert poly_sub((1, 2), (1, 2)) == ()
    assert poly_eval((1, 1, 2), 3) == 1 + 3 + 18
    assert poly_eval((), 5) == 0


def test_poly_divide_exact():
    # (q^4 - 1) / (q^2 - 1) = q^2 + 1
    assert poly_divide_exact((-1, 0, 0, 0, 1), (-1, 0, 1)) == (1, 0, 1)
    with pytest.raises(InexactDivision):
        poly_divide_exact((1, 1, 1), (1, 1))
    with pytest.raises(ZeroDivisionError):
        poly_divide_exact((1, 1), ())


def test_poly_divide_inverts_mul():
    import random

    rng = random.Random(9)

    def random_poly():
        body = [rng.randrange(-3, 4) for _ in range(rng.randrange(4))]
        lead = rng.choice([-2, -1, 1, 2])
        return tuple(body) + (lead,)

    for _ in range(200):
        a, b = random_poly(), random_poly()
        assert poly_divide_exact(poly_mul(a, b), a) == b


@pytest.mark.parametrize(
    "label,rank,n_roots,order",
    [
        ("A", 1, 2, 2),
        ("A", 2, 6, 6),
        ("A", 3, 12, 24),
        ("A", 4, 20, 120),
        ("D", 4, 24, 192),
        ("D", 5, 40, 1920),
        ("D", 7, 84, 322560),
        ("E", 6, 72, 51840),
    ],
)
def test_root_counts_and_group_orders(label, rank, n_roots, order):
    rs = root_system(label, rank)
    assert len(rs.roots) == n_roots
    data = weyl_enumerate(rs)
    assert data.order == order
    assert data.n_positive == n_roots // 2
    # W(1) recovers the order and the distribution is symmetric
    dist = data.length_distribution
    assert sum(dist) == order
    assert dist == dist[::-1]
    assert len(dist) == data.n_positive + 1


def test_type_a_orders_are_factorials():
    for n in range(1, 6):
        assert weyl_enumerate(root_system("A", n)).order == math.factorial(n + 1)


def test_type_d_orders():
    for n in range(3, 7):
        expect = 2 ** (n - 1) * math.factorial(n)
        assert weyl_enumerate(root_system("D", n)).order == expect


def test_root_system_cached():
    assert root_system("A", 4) is root_system("A", 4)


def test_root_system_rejects_bad_input():
    for label, rank in [("B", 2), ("A", 8), ("A", 0), ("D", 2), ("E", 7)]:
        with pytest.raises(ValueError):
            root_system(label, rank)


def test_poincare_poly_small_cases():
    assert poincare_poly(root_system("A", 1)) == (1, 1)
    assert poincare_poly(root_system("A", 2)) == (1, 2, 2, 1)


def test_poincare_factors_as_product_over_degrees():
    # W(q) = prod (q^{d_i} - 1)/(q - 1) with degrees 2,3,4,5 for A4
    w = poincare_poly(root_system("A", 4))
    expect = (1,)
    for d in (2, 3, 4, 5):
        expect = poly_mul(expect, tuple([1] * d))
    assert w == expect


def test_parabolic_of_full_set_is_whole_group():
    rs = root_system("A", 3)
    assert poincare_parabolic(rs, (0, 1, 2)) == poincare_poly(rs)
    assert parabolic_index_poly(rs, (0, 1, 2)) == (1,)


def test_parabolic_of_empty_set_is_trivial():
    rs = root_system("A", 3)
    assert poincare_parabolic(rs, ()) == (1,)
    assert parabolic_index_poly(rs, ()) == poincare_poly(rs)


def test_parabolic_rejects_bad_index():
    with pytest.raises(ValueError):
        poincare_parabolic(root_system("A", 3), (0, 5))


def test_index_poly_a4_point_stabilizer():
    # omitting the second node of A4 leaves A1 x A2
    rs = root_system("A", 4)
    v = parabolic_index_poly(rs, (0, 2, 3))
    assert v == (1, 1, 2, 2, 2, 1, 1)
    assert v == poly_mul((1, 0, 1), (1, 1, 1, 1, 1))
    assert poly_eval(v, 2) == 155
    assert poly_eval(v, 1) == 10  # binomial(5, 2)


def test_index_poly_a4_two_omitted():
    rs = root_system("A", 4)
    v = parabolic_index_poly(rs, (1, 3))
    assert v == poly_mul(poly_mul((1, 0, 1), (1, 1, 1, 1, 1)), (1, 1, 1))
    assert poly_eval(v, 1) == 30


def test_index_poly_d5_end_node():
    rs = root_system("D", 5)
    v = parabolic_index_poly(rs, (0, 1, 2, 3))
    expect = (1,)
    for i in range(1, 5):
        term = [0] * (i + 1)
        term[0] = term[i] = 1
        expect = poly_mul(expect, tuple(term))
    assert v == expect
    assert poly_eval(v, 1) == 16


def test_index_poly_e6_values_at_one():
    rs = root_system("E", 6)
    assert poly_eval(parabolic_index_poly(rs, (1, 2, 3, 4, 5)), 1) == 27
    assert poly_eval(parabolic_index_poly(rs, (0, 1, 3, 4, 5)), 1) == 216
    assert poly_eval(poincare_parabolic(rs, (1, 2, 3, 4, 5)), 1) == 1920


def test_order_poly_a1():
    # q(q^2 - 1) at small prime powers
    rs = root_system("A", 1)
    poly = order_poly(rs)
    for q in (2, 3, 4, 5, 7, 8, 9):
        assert poly_eval(poly, q) == q * (q * q - 1)


def test_order_poly_a2_matches_sl3():
    poly = order_poly(root_system("A", 2))
    for q in (2, 3, 4, 5):
        assert poly_eval(poly, q) == q**3 * (q**2 - 1) * (q**3 - 1)


def test_classical_order_values():
    assert poly_eval(classical_order_poly("sl2"), 8) == 504
    assert poly_eval(classical_order_poly("su3"), 2) == 216
    assert poly_eval(classical_order_poly("su3"), 3) == 6048
    assert poly_eval(classical_order_poly("su3"), 4) == 62400
    assert poly_eval(classical_order_poly("sp4"), 3) == 51840
    with pytest.raises(ValueError):
        classical_order_poly("so5")


def test_is_prime_power():
    assert is_prime_power(2) == (2, 1)
    assert is_prime_power(8) == (2, 3)
    assert is_prime_power(81) == (3, 4)
    assert is_prime_power(97) == (97, 1)
    for n in (0, 1, 6, 12, 100):
        assert is_prime_power(n) is None


def test_prime_powers_upto():
    assert prime_powers_upto(10) == [2, 3, 4, 5, 7, 8, 9]
    assert len(prime_powers_upto(200)) == 60


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        weyl_enumerate(root_system("D", 6), cap=1000)


@pytest.mark.parametrize(
    "case", ["psl5-p2", "psl5-p13", "dm-p5", "dm-p7", "e6-p1", "e6-p3"]
)
def test_verify_lemma_cases_pass(case):
    report = verify_lemma(case, 20)
    assert report.ok
    assert all(flag for _, flag in report.identities)
    assert report.counterexamples == ()
    assert report.scanned_q == tuple(prime_powers_upto(20))
    assert all(report.verdicts)


def test_verify_lemma_reports_are_deterministic():
    a = verify_lemma("dm-p5", 11)
    b = verify_lemma("dm-p5", 11)
    assert a == b
    assert lemma_report_to_json(a) == lemma_report_to_json(b)


def test_dm_reports_carry_reading_notes():
    for case in ("dm-p5", "dm-p7"):
        report = verify_lemma(case, 5)
        assert len(report.notes) == 2
        assert "even-exponent" in report.notes[0]


def test_non_dm_reports_have_no_notes():
    assert verify_lemma("psl5-p2", 5).notes == ()
    assert verify_lemma("e6-p1", 5).notes == ()


def test_verify_lemma_rejects_unknown_case():
    with pytest.raises(ValueError):
        verify_lemma("dm-p9", 10)
    with pytest.raises(ValueError):
        verify_lemma("psl5-p2", 1)


def test_lemma_report_json_shape():
    doc = lemma_report_to_json(verify_lemma("e6-p3", 5))
    assert doc["status"] == "pass"
    assert doc["case"] == "e6-p3"
    assert sorted(doc) == [
        "case",
        "counterexamples",
        "identities",
        "notes",
        "qmax",
        "scanned_q",
        "status",
        "verdicts",
    ]
    assert doc["identities"]["q^2+1-divides-index-poly"] is True


def test_psl5_p2_second_identity():
    # v - 1 factors as q(q^2 + q + 1)(q^3 + q + 1)
    report = verify_lemma("psl5-p2", 5)
    names = [name for name, _ in report.identities]
    assert "v-minus-1-equals-q(q^2+q+1)(q^3+q+1)" in names
