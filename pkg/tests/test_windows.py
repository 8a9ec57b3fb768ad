import itertools
import random

import pytest

from partreg.polys import MultiPoly, parse_poly
from partreg.rings import (
    INTEGERS,
    enum_element,
    from_int,
    gf_poly_domain,
    parse_element,
)
from partreg.windows import (
    Window,
    check_window_l_pr,
    density_window_check,
    disjoint_solutions,
    enumerate_roots,
    enumerate_roots_naive,
    exhaustive_l_pr_oracle,
    max_avoiding_subset,
    semidecide_l_pr,
)

GF2 = gf_poly_domain(2)
GF3 = gf_poly_domain(3)


def pp(domain, text, var_order=None):
    poly, _ = parse_poly(domain, text, var_order=var_order)
    return poly


def zint(n):
    return from_int(INTEGERS, n)


SCHUR = pp(INTEGERS, "x + y - z", var_order=["x", "y", "z"])
AP3 = pp(INTEGERS, "x + y - 2*z", var_order=["x", "y", "z"])


def random_poly(domain, nvars, rng, max_terms=3, max_deg=2, coeff_pool=8):
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        exps = tuple(rng.randrange(max_deg + 1) for _ in range(nvars))
        coeff = enum_element(domain, rng.randrange(1, coeff_pool))
        if not coeff.is_zero():
            terms[exps] = coeff
    if not terms:
        terms[(1,) + (0,) * (nvars - 1)] = enum_element(domain, 1)
    return MultiPoly(domain, nvars, terms)


# ---------------------------------------------------------------------------
# windows
# ---------------------------------------------------------------------------


def test_window_constructors():
    w = Window.interval(INTEGERS, -2, 2)
    assert [x.value for x in w.elements] == [-2, -1, 1, 2]  # 0 is skipped
    p = Window.enumeration_prefix(INTEGERS, 4)
    assert [x.value for x in p.elements] == [1, -1, 2, -2]
    g = Window.enumeration_prefix(GF2, 3)
    assert g.elements == tuple(parse_element(GF2, s) for s in ["1", "t", "t+1"])


def test_window_validation():
    with pytest.raises(ValueError):
        Window.explicit(INTEGERS, [zint(0)])
    with pytest.raises(ValueError):
        Window.explicit(INTEGERS, [zint(1), zint(1)])
    with pytest.raises(ValueError):
        Window.interval(GF2, 1, 5)


# ---------------------------------------------------------------------------
# root enumeration
# ---------------------------------------------------------------------------


def test_schur_roots_in_small_window():
    w = Window.interval(INTEGERS, 1, 4)
    h = enumerate_roots(SCHUR, w)
    values = {tuple(x.value for x in h.value_tuple(t)) for t in h.tuples}
    assert values == {
        (1, 1, 2),
        (1, 2, 3),
        (2, 1, 3),
        (1, 3, 4),
        (3, 1, 4),
        (2, 2, 4),
    }


def test_injective_filters_diagonal_roots():
    w = Window.interval(INTEGERS, 1, 4)
    h = enumerate_roots(AP3, w, injective=True)
    # x = y = z solves x + y - 2z for every x; all such tuples must be gone
    for t in h.tuples:
        assert len(set(t)) == 3


@pytest.mark.parametrize("domain", [INTEGERS, GF2, GF3])
@pytest.mark.parametrize("injective", [False, True])
def test_enumeration_matches_naive_oracle(domain, injective):
    rng = random.Random(51)
    for _ in range(60):
        nvars = rng.randrange(1, 4)
        p = random_poly(domain, nvars, rng)
        window = Window.enumeration_prefix(domain, rng.randrange(2, 7))
        fast = enumerate_roots(p, window, injective)
        slow = enumerate_roots_naive(p, window, injective)
        assert fast.tuples == slow.tuples
        assert fast.edges == slow.edges


def test_enumerate_roots_rejects_constants():
    with pytest.raises(ValueError):
        enumerate_roots(MultiPoly.constant(INTEGERS, 0, zint(1)), Window.interval(INTEGERS, 1, 3))


# ---------------------------------------------------------------------------
# window partition regularity
# ---------------------------------------------------------------------------


def test_schur_boundary():
    colorable = check_window_l_pr(SCHUR, Window.interval(INTEGERS, 1, 4), 2)
    assert colorable.kind == "PartitionColorable"
    assert colorable.coloring == (0, 1, 1, 0)  # {1,4} vs {2,3}
    certified = check_window_l_pr(SCHUR, Window.interval(INTEGERS, 1, 5), 2)
    assert certified.kind == "PartitionCertified"


def test_three_ap_boundary_injective():
    colorable = check_window_l_pr(AP3, Window.interval(INTEGERS, 1, 8), 2, injective=True)
    assert colorable.kind == "PartitionColorable"
    certified = check_window_l_pr(AP3, Window.interval(INTEGERS, 1, 9), 2, injective=True)
    assert certified.kind == "PartitionCertified"


def test_coloring_is_lexicographically_least():
    rng = random.Random(55)
    for _ in range(40):
        p = random_poly(INTEGERS, rng.randrange(2, 4), rng, max_deg=1)
        size = rng.randrange(2, 7)
        window = Window.enumeration_prefix(INTEGERS, size)
        colors = rng.randrange(2, 4)
        cert = check_window_l_pr(p, window, colors)
        edges = enumerate_roots_naive(p, window).edges
        brute = next(
            (
                c
                for c in itertools.product(range(colors), repeat=size)
                if all(len({c[i] for i in e}) > 1 for e in edges)
            ),
            None,
        )
        if cert.kind == "PartitionCertified":
            assert brute is None
        else:
            assert cert.coloring == brute


@pytest.mark.parametrize("domain", [INTEGERS, GF2])
def test_verdict_matches_exhaustive_oracle(domain):
    rng = random.Random(57)
    for _ in range(30):
        p = random_poly(domain, rng.randrange(2, 4), rng, max_deg=1)
        window = Window.enumeration_prefix(domain, rng.randrange(2, 6))
        colors = rng.randrange(1, 4)
        cert = check_window_l_pr(p, window, colors)
        oracle = exhaustive_l_pr_oracle(p, window, colors)
        assert (cert.kind == "PartitionCertified") == (oracle is None)


def test_constant_root_forces_certification():
    # x + y - 2z has the constant root (c, c, c); with it in range no
    # coloring can work, whatever the palette size
    cert = check_window_l_pr(AP3, Window.interval(INTEGERS, 1, 3), 5)
    assert cert.kind == "PartitionCertified"
    assert cert.constant_root is not None


def test_certification_is_monotone_in_prefix_windows():
    for k in range(1, 12):
        cert = check_window_l_pr(SCHUR, Window.enumeration_prefix(INTEGERS, k), 2)
        if cert.kind == "PartitionCertified":
            for bigger in range(k + 1, k + 3):
                later = check_window_l_pr(SCHUR, Window.enumeration_prefix(INTEGERS, bigger), 2)
                assert later.kind == "PartitionCertified"
            break
    else:
        pytest.fail("Schur equation never certified on prefixes up to 11")


def test_semidecide_schur():
    result = semidecide_l_pr(SCHUR, 2, budget=12)
    assert result.status == "certified"
    assert result.certificate.kind == "PartitionCertified"
    assert result.certificate.window.provenance == "prefix:9"


def test_semidecide_exhaustion_is_inconclusive():
    p = pp(INTEGERS, "x - 2*y", var_order=["x", "y"])
    result = semidecide_l_pr(p, 2, budget=6)
    assert result.status == "exhausted"
    assert result.certificate.kind == "PartitionColorable"


def test_semidecide_char2_linear():
    p = pp(GF2, "x + y + z", var_order=["x", "y", "z"])
    result = semidecide_l_pr(p, 1, budget=8)
    assert result.status == "certified"


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------


def test_max_avoiding_subset_matches_brute_force():
    rng = random.Random(61)
    for _ in range(80):
        size = rng.randrange(1, 9)
        edges = sorted(
            {
                tuple(sorted(rng.sample(range(size), rng.randrange(1, min(3, size) + 1))))
                for _ in range(rng.randrange(0, 6))
            }
        )
        got = max_avoiding_subset(size, edges)
        best = 0
        for mask in range(2**size):
            chosen = {i for i in range(size) if mask >> i & 1}
            if all(not set(e) <= chosen for e in edges):
                best = max(best, len(chosen))
        assert len(got) == best
        assert all(not set(e) <= set(got) for e in edges)


def test_three_ap_density_boundary():
    window = Window.interval(INTEGERS, 1, 9)
    certified = density_window_check(AP3, window, "3/5", injective=True)
    assert certified.kind == "DensityCertified"
    assert certified.max_avoider_size == 5
    assert certified.transferable
    avoider = density_window_check(AP3, window, "5/9", injective=True)
    assert avoider.kind == "DensityAvoider"
    assert [window.elements[i].value for i in avoider.avoider] == [1, 3, 4, 8, 9]


def test_density_non_transferable_warns():
    p = pp(INTEGERS, "x + y - z", var_order=["x", "y", "z"])  # not translation invariant
    with pytest.warns(UserWarning):
        cert = density_window_check(p, Window.interval(INTEGERS, 1, 6), "1/2")
    assert cert.transferable is False


def test_density_multiplicative_transfer_requires_homogeneity():
    homogeneous = pp(INTEGERS, "x*y - z^2", var_order=["x", "y", "z"])
    cert = density_window_check(
        homogeneous, Window.interval(INTEGERS, 1, 8), "1/2", mode="multiplicative", injective=True
    )
    assert cert.transferable is True
    inhomogeneous = pp(INTEGERS, "x*y - z", var_order=["x", "y", "z"])
    with pytest.warns(UserWarning):
        cert2 = density_window_check(
            inhomogeneous, Window.interval(INTEGERS, 1, 8), "1/2", mode="multiplicative"
        )
    assert cert2.transferable is False


def test_density_avoider_never_contains_an_edge():
    rng = random.Random(63)
    for _ in range(30):
        p = random_poly(INTEGERS, 2, rng, max_deg=1)
        window = Window.enumeration_prefix(INTEGERS, rng.randrange(2, 8))
        cert = density_window_check(p, window, "1/2", mode="additive") if is_ti(p) else None
        if cert is None or cert.kind != "DensityAvoider":
            continue
        edges = enumerate_roots_naive(p, window).edges
        chosen = set(cert.avoider)
        assert all(not set(e) <= chosen for e in edges)


def is_ti(p):
    from partreg.polys import is_translation_invariant

    return is_translation_invariant(p)


def test_density_delta_validation():
    with pytest.raises(ValueError):
        density_window_check(AP3, Window.interval(INTEGERS, 1, 5), "0")
    with pytest.raises(ValueError):
        density_window_check(AP3, Window.interval(INTEGERS, 1, 5), "3/2")


# ---------------------------------------------------------------------------
# disjoint solutions
# ---------------------------------------------------------------------------


def test_disjoint_schur_solutions():
    window = Window.interval(INTEGERS, 1, 12)
    picked = disjoint_solutions(SCHUR, window, 2, injective=True)
    assert picked is not None and len(picked) == 2
    seen = set()
    for tup in picked:
        assert sum(x.value for x in tup[:2]) == tup[2].value
        values = {x.value for x in tup}
        assert not values & seen
        seen |= values


def test_disjoint_solutions_impossible():
    window = Window.interval(INTEGERS, 1, 3)
    assert disjoint_solutions(SCHUR, window, 2, injective=True) is None
