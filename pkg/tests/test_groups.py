import random

from cstriang.groups import closure, group_closure, inverse, mul, schreier_sims_order


def test_mul_and_inverse():
    p = (1, 2, 0)
    assert mul(p, inverse(p)) == (0, 1, 2)


def test_symmetric_group():
    gens = [(1, 0, 2, 3, 4, 5), (1, 2, 3, 4, 5, 0)]
    assert group_closure(gens).order == 720
    assert schreier_sims_order(gens, 6) == 720


def test_closure_cap_falls_back():
    gens = [(1, 0) + tuple(range(2, 10)), (tuple(range(1, 10)) + (0,))]
    assert closure(gens, 10, cap=1000) is None
    grp = group_closure(gens, cap=1000)
    assert grp.order == 3628800 and grp.elements is None


def test_schreier_sims_matches_closure():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(3, 7)
        gens = []
        for _ in range(rng.randint(1, 3)):
            p = list(range(n))
            rng.shuffle(p)
            gens.append(tuple(p))
        assert schreier_sims_order(gens, n) == len(closure(gens, n))


def test_negation_order_two(p648):
    assert group_closure([p648.pairing]).order == 2
