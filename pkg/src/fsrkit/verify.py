"""Named verification suites behind the command-line `verify` command.

Each suite runs a fixed battery of exact checks and reports one line per
assertion; suites are deterministic given the seed.  The heavy sweeps the
test suite runs live in the package tests; these are the desk-scale
versions meant for interactive use and CI.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import analysis, circuit, fsr, lfsr, reduction


@dataclass
class SuiteResult:
    name: str
    lines: list
    ok: bool

    def text(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return "\n".join(self.lines + [f"{self.name}: {status}"]) + "\n"


def _line(lines, ok_all, ok, msg) -> bool:
    lines.append(f"{'ok' if ok else 'FAIL'} {msg}")
    return ok_all and ok


# ---------------------------------------------------------------------------

def suite_lemma7(ell: int) -> SuiteResult:
    """Exact cycle counts of the trinomial family registers."""
    lines = []
    ok = True
    rep = lfsr.family_cycle_counts(ell)
    for name in sorted(rep.counts):
        got = rep.counts[name]
        want = rep.expected[name]
        summary = "+".join(str(got[p]) for p in sorted(got))
        ok = _line(lines, ok, got == want,
                   f"{name}: {summary} cycles {'OK' if got == want else got}")
    ok = ok and rep.ok
    if not rep.ok:
        lines.append("FAIL structural closure (complements / shared cycles)")
    else:
        lines.append("ok complement closure and shared short cycles")
    return SuiteResult(f"lemma7 ell={ell}", lines, ok)


def suite_min_sizes(seed: int = 1) -> SuiteResult:
    """Vertex counts and the integer-minimum behaviour of the min blocks."""
    lines = []
    ok = True
    rng = random.Random(seed)
    for m in range(1, 17):
        g = circuit.gadget_min(m)
        want = (13 * m * m + 37 * m - 44) // 2
        ok = _line(lines, ok, g.size == want, f"min_{m} size {g.size} == {want}")
        if m <= 6:
            pairs = list(range(1 << (2 * m)))
        else:
            pairs = [rng.getrandbits(2 * m) for _ in range(10_000)]
        masks = g.evaluate_batch(pairs)
        good = True
        for j, a in enumerate(pairs):
            got = 0
            for i, mk in enumerate(masks):
                got |= ((mk >> j) & 1) << i
            x, y = a & ((1 << m) - 1), a >> m
            if got != min(x, y):
                good = False
                break
        ok = _line(lines, ok, good,
                   f"min_{m} matches integer minimum on {len(pairs)} pairs")
    lines.append("sizes match (13m^2+37m-44)/2 for m=1..16" if ok else
                 "size or behaviour mismatch")
    return SuiteResult("min-sizes", lines, ok)


def suite_conjprop(ell: int) -> SuiteResult:
    """The five exact facts about the window-difference and parity maps."""
    lines = []
    ok = True
    maps = reduction.Alg2Maps(ell)
    n = 2 * ell + 1
    total = 1 << n
    ones = total - 1
    pi, chi = maps.pi_int, maps.chi
    ltab = reduction._lstep_table(2 * ell, ell)

    ok = _line(lines, ok, all(
        chi(v ^ 1) == chi(v) ^ 1 and chi(v ^ ones) == chi(v) ^ 1
        and pi(v ^ 1) == pi(v) ^ 1 and ltab[pi(v)] == pi(maps.p1_step(v))
        for v in range(total)), "(i) conjugate/complement parity and map commutation")

    good = True
    preim = {}
    for v in range(total):
        preim.setdefault(pi(v), set()).add(v)
    for w in range(1 << (2 * ell)):
        u = 0
        acc = 0
        for j in range(2 * ell):
            acc ^= (w >> j) & 1
            u |= acc << (j + 1)
        if preim.get(w) != {u, u ^ ones}:
            good = False
            break
    ok = _line(lines, ok, good, "(ii) each difference word has the two prefix-parity preimages")

    fam = lfsr.LfsrFamily.for_ell(ell)
    p0_cycles = fsr.cycle_structure(lfsr.lfsr_of(fam.p0))
    p0_side = set()
    for c in p0_cycles:
        p0_side |= c.window_ints(n)
    comp_side = set(range(total)) - p0_side
    ok = _line(lines, ok,
               all(chi(v) == 0 for v in p0_side)
               and all(chi(v) == 1 for v in comp_side),
               "(iii) parity separates the two cycle families")
    ok = _line(lines, ok, all((v ^ 1) in comp_side for v in p0_side),
               "(iv) conjugation crosses to the complement family")
    w0_shift = 2 * ell - 1
    ok = _line(lines, ok, all(
        (maps.p1_step(v) >> 1) == ltab[v >> 1] ^ (chi(v) << w0_shift)
        for v in range(total)), "(v) window of the long step is the short step plus parity")
    return SuiteResult(f"conjprop ell={ell}", lines, ok)


# ---------------------------------------------------------------------------
# instance populations

def all_small_circuits(r: int) -> list:
    """Every r-input truth table as a circuit, r <= 2."""
    if r > 2:
        raise ValueError("exhaustive population is for r <= 2")
    return [circuit.from_bits([(t >> v) & 1 for v in range(1 << r)])
            for t in range(1 << (1 << r))]


def sample_circuits(r: int, count: int, seed: int) -> list:
    """Deterministic mix of satisfiable and unsatisfiable r-input circuits.

    Includes the corner cases the builders special-case: a witness at the
    all-zero input, a witness at the all-ones input, constant-false, and
    contradictions of the shape g AND NOT g.
    """
    rng = random.Random(seed)
    n = 1 << r
    out = []

    def table(bits):
        return circuit.from_bits(bits)

    special = []
    w0 = [0] * n
    w0[0] = 1
    special.append(table(w0))                      # witness at all-zeros
    w1 = [0] * n
    w1[n - 1] = 1
    special.append(table(w1))                      # witness at all-ones
    special.append(table([0] * n))                 # constant false
    b = circuit.Builder(r)
    g = table([rng.randint(0, 1) for _ in range(n)])
    w = b.embed(g, b.inputs())[0]
    special.append(b.build(b.AND(w, b.NOT(w))))    # structural contradiction
    out.extend(special)
    while len(out) < count:
        if rng.random() < 0.3:
            bits = [0] * n                         # more unsatisfiable variety
            c = table(bits)
        else:
            density = rng.choice([0.05, 0.2, 0.5])
            bits = [1 if rng.random() < density else 0 for _ in range(n)]
            c = table(bits)
        out.append(c)
    out = out[:count]
    # make sure both verdicts are represented
    assert any(c.is_satisfiable() is not None for c in out)
    assert any(c.is_satisfiable() is None for c in out)
    return out


def population(r: int, count: int, seed: int) -> list:
    return all_small_circuits(r) if r <= 2 else sample_circuits(r, count, seed)


# ---------------------------------------------------------------------------

def suite_biconditional_irr(r: int, seed: int = 1, count: int = 20) -> SuiteResult:
    """Irreducibility of the built register must match satisfiability."""
    lines = []
    ok = True
    pop = population(r, count, seed)
    agree = 0
    for f0 in pop:
        sat = f0.is_satisfiable() is not None
        inst = reduction.build_irreducibility_fsr(f0, build_circuit=False)
        irr = analysis.is_irreducible(inst.fsr)
        good = irr == sat
        agree += good
        ok = ok and good
        if not good:
            lines.append(f"FAIL r={r} table={f0.truth_table().mask:#x} "
                         f"sat={sat} irreducible={irr}")
    lines.append(f"{agree}/{len(pop)} truth tables consistent")
    return SuiteResult(f"biconditional-irr r={r}", lines, ok)


def suite_biconditional_dec(r: int, seed: int = 1, count: int = 20) -> SuiteResult:
    """Indecomposability of the built register must match satisfiability;
    unsatisfiable inputs must reproduce the linear register bit-exactly."""
    lines = []
    ok = True
    pop = population(r, count, seed)
    agree = 0
    for f0 in pop:
        sat = f0.is_satisfiable() is not None
        inst = reduction.build_indecomposability_fsr(f0, build_circuit=False)
        if inst.stage <= 4:
            rep = analysis.is_decomposable(inst.fsr, "brute")
        else:
            rep = analysis.is_decomposable(inst.fsr, "guided")
        good = rep.decomposable == (not sat)
        if not sat:
            p1f = lfsr.lfsr_of(lfsr.LfsrFamily.for_ell(inst.ell).p1)
            good = good and inst.fsr == p1f
        agree += good
        ok = ok and good
        if not good:
            lines.append(f"FAIL r={r} table={f0.truth_table().mask:#x} "
                         f"sat={sat} decomposable={rep.decomposable}")
    lines.append(f"{agree}/{len(pop)} truth tables consistent")
    return SuiteResult(f"biconditional-dec r={r}", lines, ok)


def suite_lemma11(ell: int, seed: int = 1) -> SuiteResult:
    """Join-graph facts for one satisfiable and one unsatisfiable instance:
    acyclic, long cycles never isolated, short cycles all isolated exactly
    in the unsatisfiable case."""
    lines = []
    ok = True
    r = 2 if ell == 1 else 2 * ell - 1
    rng = random.Random(seed)
    n = 1 << r
    sat_bits = [0] * n
    sat_bits[rng.randrange(n)] = 1
    cases = [("sat", circuit.from_bits(sat_bits)),
             ("unsat", circuit.from_bits([0] * n))]
    oracle = reduction.Alg1Oracle(ell)
    base = lfsr.lfsr_of(oracle.family.p2)
    lam = oracle.lam_table()
    for tag, f0 in cases:
        inst = reduction.build_irreducibility_fsr(f0, build_circuit=False)
        graph = analysis.cycle_join_graph(base, inst.fsr, lam)
        ok = _line(lines, ok, graph.is_acyclic(), f"{tag}: graph acyclic")
        ok = _line(lines, ok, all(not graph.isolated(c) for c in oracle.c6),
                   f"{tag}: every long cycle non-isolated")
        shorts = [c for c in oracle.cycles if oracle.p0_side(c)]
        all_iso = all(graph.isolated(c) for c in shorts)
        ok = _line(lines, ok, all_iso == (tag == "unsat"),
                   f"{tag}: short cycles all isolated iff unsatisfiable")
        ok = _line(lines, ok, graph.verify_join_identity(),
                   f"{tag}: components map one-to-one onto joined cycles")
    return SuiteResult(f"lemma11 ell={ell}", lines, ok)


SUITES = {
    "lemma7": lambda args: suite_lemma7(args.ell),
    "lemma11": lambda args: suite_lemma11(args.ell, args.seed),
    "biconditional-irr": lambda args: suite_biconditional_irr(
        args.r, args.seed, args.count),
    "biconditional-dec": lambda args: suite_biconditional_dec(
        args.r, args.seed, args.count),
    "min-sizes": lambda args: suite_min_sizes(args.seed),
    "conjprop": lambda args: suite_conjprop(args.ell),
}
