import random

import pytest

from fsrkit import analysis as A
from fsrkit import fsr as F
from fsrkit import lfsr as L
from fsrkit import reduction as R


def lin(poly):
    return L.lfsr_of(L.parse_poly(poly))


def random_nonsingular(rng, n, fix_zero=False):
    gmask = rng.getrandbits(1 << (n - 1))
    if fix_zero:
        gmask &= ~1
    table = [(s & 1) ^ ((gmask >> (s >> 1)) & 1) for s in range(1 << n)]
    return F.Fsr(n, table=table)


def test_find_subfsrs_of_cubic():
    p1 = lin("x^3 + 1")
    subs = A.find_subfsrs(p1)
    got = {(s.stage, frozenset(str(c) for c in s.cycles)) for s in subs}
    assert got == {(1, frozenset({"0", "1"})),
                   (2, frozenset({"0", "011"})),
                   (2, frozenset({"1", "001"}))}
    # the zero-containing stage-2 entry is the base trinomial register
    base = next(s for s in subs if s.stage == 2 and F.Cycle([0]) in s.cycles)
    assert base.fsr == lin("x^2 + x + 1")


def test_irreducibility_of_trinomial():
    assert A.is_irreducible(lin("x^2 + x + 1"))
    assert not A.is_irreducible(lin("x^3 + 1"))


def test_subfsr_stage_bound():
    with pytest.raises(ValueError):
        A.find_subfsrs(F.Fsr(13, fn=lambda s: (s & 1)))


def test_every_subfsr_cycle_set_is_a_subset():
    rng = random.Random(7)
    for _ in range(25):
        f = random_nonsingular(rng, rng.randint(2, 7))
        cs = F.cycle_structure(f)
        for sub in A.find_subfsrs(f):
            assert sub.cycles <= cs.cycles
            assert F.cycle_structure(sub.fsr).cycles == sub.cycles
            assert sub.stage < f.stage


def test_decompose_with_inner_examples():
    f = F.Fsr(2, table=[0, 1, 0, 1])     # x2 + x0
    one = lin("x + 1")
    h, free = A.decompose_with_inner(f, one)
    assert h == one and free == 0
    h, free = A.decompose_with_inner(lin("x^3 + 1"), one)
    assert h == lin("x^2 + x + 1") and free == 0
    with pytest.raises(ValueError):
        A.decompose_with_inner(one, one)


def test_brute_decomposition():
    rep = A.is_decomposable(F.Fsr(2, table=[0, 1, 0, 1]), "brute")
    assert rep.decomposable and rep.complete
    assert F.product_fsr(rep.outer, rep.inner) == F.Fsr(2, table=[0, 1, 0, 1])
    # the trinomial register of stage 2 is indecomposable
    rep = A.is_decomposable(lin("x^2 + x + 1"), "brute")
    assert not rep.decomposable and rep.complete


def test_brute_refuses_wide_inner():
    with pytest.raises(ValueError):
        A.is_decomposable(F.Fsr(5, table=[s & 1 for s in range(32)]), "brute")
    rep = A.is_decomposable(F.Fsr(5, table=[s & 1 for s in range(32)]),
                            "brute", max_inner_stage=3)
    assert rep.decomposable  # pure cycling register factors readily


def test_guided_preconditions():
    f = F.Fsr(2, table=[1, 0, 0, 1])  # f1(0) = 1
    with pytest.raises(ValueError):
        A.is_decomposable(f, "guided")
    with pytest.raises(ValueError):
        A.is_decomposable(F.Fsr(2, table=[0, 0, 1, 1]), "guided")


def test_brute_and_guided_agree_exhaustively():
    # every nonsingular stage <= 4 register fixing the zero state
    for n in (2, 3, 4):
        for gmask in range(0, 1 << (1 << (n - 1)), 2):
            table = [(s & 1) ^ ((gmask >> (s >> 1)) & 1)
                     for s in range(1 << n)]
            f = F.Fsr(n, table=table)
            b = A.is_decomposable(f, "brute")
            g = A.is_decomposable(f, "guided")
            assert b.decomposable == g.decomposable, (n, gmask)
            if g.decomposable:
                assert F.product_fsr(g.outer, g.inner) == f


def test_product_of_zero_fixing_registers_is_reducible():
    rng = random.Random(13)
    found = 0
    while found < 20:
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        h = random_nonsingular(rng, n, fix_zero=True)
        g = random_nonsingular(rng, m, fix_zero=True)
        prod = F.product_fsr(h, g)
        if not F.is_nonsingular(prod):
            continue
        found += 1
        subs = A.find_subfsrs(prod)
        assert any(s.fsr == g for s in subs), (list(h.table), list(g.table))


def test_join_graph_trivial_when_fields_match():
    base = lin("x^4 + x^2 + 1")
    g = A.cycle_join_graph(base, base, [0] * 16)
    assert g.arcs == []
    assert g.is_acyclic()
    assert all(len(comp) == 1 for comp in g.components())
    assert g.verify_join_identity()


def test_join_graph_precondition_errors():
    base = lin("x^4 + x^2 + 1")
    other = F.Fsr(4, table=[(s ^ (s >> 1)) & 1 for s in range(16)])
    if F.is_nonsingular(other):
        with pytest.raises(ValueError):
            A.cycle_join_graph(base, other, [0] * 16)
    # difference depending on x0: flip the base table at a single state
    tbl = list(base.table)
    tbl[5] ^= 1
    with pytest.raises(ValueError, match="x0"):
        A.cycle_join_graph(base, F.Fsr(4, table=tbl), [0] * 16)
    # marking both members of a conjugate pair
    lam = [0] * 16
    lam[6], lam[7] = 1, 1
    with pytest.raises(ValueError):
        A.cycle_join_graph(base, base, lam)


def _random_join_instance(rng, n):
    """A base register, a toggled register and a valid marking."""
    g = random_nonsingular(rng, n)
    cs = F.cycle_structure(g)
    lam = [0] * (1 << n)
    marked = []
    taken = set()
    for c in cs:
        if rng.random() < 0.6:
            wins = sorted(c.window_ints(n))
            rng.shuffle(wins)
            for v in wins:
                if (v ^ 1) not in taken:
                    lam[v] = 1
                    taken.add(v)
                    marked.append(v)
                    break
    f3 = [0] * (1 << (n - 1))
    for v in marked:
        if rng.random() < 0.7:
            f3[v >> 1] = 1
    table = [g.table[s] ^ f3[s >> 1] for s in range(1 << n)]
    return g, F.Fsr(n, table=table), lam


def test_join_graph_component_identity_random():
    rng = random.Random(19)
    checked = 0
    attempts = 0
    while checked < 100 and attempts < 1000:
        attempts += 1
        n = rng.randint(3, 8)
        base, toggled, lam = _random_join_instance(rng, n)
        graph = A.cycle_join_graph(base, toggled, lam)
        if not graph.is_acyclic():
            continue
        checked += 1
        assert graph.verify_join_identity()
        # every sub-register of the toggled register stays within the base cycles
        if toggled.stage <= 6:
            base_cycles = F.cycle_structure(base).cycles
            for sub in A.find_subfsrs(toggled):
                assert sub.cycles <= base_cycles
    assert checked == 100


def test_dot_export():
    f0 = __import__("fsrkit.circuit", fromlist=["from_bits"]).from_bits([0, 1])
    inst = R.build_irreducibility_fsr(f0, build_circuit=False)
    oracle = R.Alg1Oracle(1)
    base = L.lfsr_of(oracle.family.p2)
    graph = A.cycle_join_graph(base, inst.fsr, oracle.lam_table())
    dot = graph.to_dot()
    assert dot.startswith("digraph cycle_join {")
    assert 'label="acyclic=true"' in dot
    assert dot.count("->") == len(graph.arcs) >= 1
    # at least one arc leaves a short (base-family) cycle
    assert any(a.tail.period in (1, 3) for a in graph.arcs)
