"""Builders that turn a Boolean circuit into register instances.

Two translations, each with two cross-checkable implementations of its
toggle field f3 (a direct evaluator of the defining procedure, and a
gate-level circuit assembled from the XOR / equality / minimum gadgets):

* irreducibility form: a 4*ell-stage register, built over the linear
  register of x^(4*ell) + x^(2*ell) + 1, that has a sub-register exactly
  when the input circuit is unsatisfiable;
* indecomposability form: a (2*ell+1)-stage register, built over
  (x+1) * (x^(2*ell) + x^ell + 1), that factors as a cascade exactly when
  the input circuit is unsatisfiable.

Here ell = 3^k with k the least integer at or above log3(r/2) for an
r-input circuit, so r <= 2*ell <= 3r - 1.

The module also exposes the bookkeeping maps the correctness arguments
hinge on (the per-cycle representative state rho, the marking predicates,
and the window-difference and parity maps of the indecomposability form)
together with reference forms of both toggle fields stated in terms of
those maps; the toggle tables and the reference forms must agree
pointwise, and the acceptance suite checks that they do.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitvec import BitVec
from .circuit import Builder, Circuit, TruthTable
from .fsr import Cycle, CycleStructure, Fsr, is_nonsingular
from .lfsr import LfsrFamily

EXHAUSTIVE_ELL_BOUND = 3


def ell_for(r: int) -> tuple:
    """(k, ell): the least k >= 0 with 2 * 3^k >= r, and ell = 3^k."""
    if r < 1:
        raise ValueError("input count must be >= 1")
    k, ell = 0, 1
    while 2 * ell < r:
        k += 1
        ell *= 3
    return k, ell


# ---------------------------------------------------------------------------
# linear-map tables

_lstep_cache = {}


def _lstep_table(width: int, tap: int) -> list:
    """Step table of the one-tap-plus-low-bit linear register x^w+x^tap+1."""
    key = (width, tap)
    tbl = _lstep_cache.get(key)
    if tbl is None:
        top = width - 1
        tbl = [(s >> 1) | (((s & 1) ^ ((s >> tap) & 1)) << top)
               for s in range(1 << width)]
        _lstep_cache[key] = tbl
    return tbl


def _p2_step(ell: int):
    """State map of x^(4*ell) + x^(2*ell) + 1, as table or arithmetic."""
    m = 4 * ell
    if ell <= EXHAUSTIVE_ELL_BOUND:
        return _lstep_table(m, 2 * ell).__getitem__
    top = m - 1
    tap = 2 * ell

    def step(s):
        return (s >> 1) | (((s & 1) ^ ((s >> tap) & 1)) << top)

    return step


def _p0_step(ell: int):
    """State map of x^(2*ell) + x^ell + 1."""
    m = 2 * ell
    if ell <= 9:
        return _lstep_table(m, ell).__getitem__
    top = m - 1

    def step(s, ell=ell):
        return (s >> 1) | (((s & 1) ^ ((s >> ell) & 1)) << top)

    return step


# ---------------------------------------------------------------------------
# the satisfiability-preserving input normalization (indecomposability form)

def f2_table(f0_tt: TruthTable) -> TruthTable:
    """Pin the all-zero input to 0, moving any witness there onto all-ones."""
    r = f0_tt.arity
    n = 1 << r
    bits = f0_tt.bits()
    out = list(bits)
    out[0] = 0
    out[n - 1] = 1 if bits[n - 1] else bits[0]
    return TruthTable.from_bits(out)


def f2_transform(f0: Circuit) -> Circuit:
    """Gate-level form of the normalization; satisfiability-preserving."""
    r = f0.arity
    tt = f0.truth_table()
    c1 = tt[(1 << r) - 1] | tt[0]
    b = Builder(r)
    nz = b.or_chain(b.inputs())
    f0x = b.embed(f0, b.inputs())[0]
    if c1:
        out = b.AND(nz, b.OR(b.and_chain(b.inputs()), f0x))
    else:
        out = b.AND(b.AND(nz, b.NOT(b.and_chain(b.inputs()))), f0x)
    circ = b.build(out)
    assert circ.truth_table() == f2_table(tt)
    return circ


# ---------------------------------------------------------------------------
# semantic toggle fields (direct transcriptions of the build procedures)

def alg1_f3_semantic(ell: int, f0_tt: TruthTable):
    """The irreducibility form's toggle field on (4*ell - 1)-bit inputs."""
    r = f0_tt.arity
    m = 4 * ell
    shift_r = m - r
    span = 6 * ell
    half = 3 * ell
    L = _p2_step(ell)
    f0b = f0_tt.bits()

    def orbit_flag(s):
        # the c/d test for the conjugate of chain state s
        w = s ^ 1
        t = w
        mn = None
        w_half = None
        for j in range(1, span + 1):
            t = L(t)
            if j == half:
                w_half = t
            if mn is None or t < mn:
                mn = t
        return 1 if (w_half == w or t != mn) else 0

    def f3(x: int) -> int:
        u = x << 1
        v = u | 1
        us = [u]
        vs = [v]
        for _ in range(span):
            us.append(L(us[-1]))
            vs.append(L(vs[-1]))
        a_hit = any(f0b[us[i] >> shift_r] for i in range(1, span + 1))
        b_hit = any(f0b[vs[i] >> shift_r] for i in range(1, span + 1))
        cs = [orbit_flag(us[i]) for i in range(1, span + 1)]
        ds = [orbit_flag(vs[i]) for i in range(1, span + 1)]
        u_min = min(us[1:])
        v_min = min(vs[1:])

        def q(chain, mn, flags):
            if not all(flags) or chain[ell] != mn:
                return 0
            t = mn ^ 1
            for _ in range(half):
                t = L(t)
            return 1 if t == mn ^ 1 else 0

        qu = q(us, u_min, cs)
        qv = q(vs, v_min, ds)
        if us[0] == us[half] and us[span] == u_min and a_hit:
            return 1
        if vs[0] == vs[half] and vs[span] == v_min and b_hit:
            return 1
        if us[0] != us[half] and vs[0] != vs[half] and (
                us[span] == u_min or vs[span] == v_min or qu or qv):
            return 1
        return 0

    return f3


def alg2_f3_semantic(ell: int, f2_tt: TruthTable):
    """The indecomposability form's toggle field on 2*ell-bit inputs."""
    r = f2_tt.arity
    m2 = 2 * ell
    shift_r = m2 - r
    span = 3 * ell
    L = _p0_step(ell)
    f2b = f2_tt.bits()
    low = (1 << (m2 - 1)) - 1

    def f3(x: int) -> int:
        u = ((x >> (m2 - 1)) ^ (x >> (ell - 1)) ^ x) & 1
        u |= ((x ^ (x >> 1)) & low) << 1
        hit = 0
        mn = None
        for _ in range(span):
            u = L(u)
            if f2b[u >> shift_r]:
                hit = 1
            if mn is None or u < mn:
                mn = u
        return 1 if (u == mn and hit) else 0

    return f3


# ---------------------------------------------------------------------------
# circuit toggle fields

def _min_tree(b: Builder, words: list) -> list:
    while len(words) > 1:
        nxt = [b.min_word(words[i], words[i + 1])
               for i in range(0, len(words) - 1, 2)]
        if len(words) % 2:
            nxt.append(words[-1])
        words = nxt
    return words[0]


def alg1_f3_circuit(ell: int, f0: Circuit) -> Circuit:
    """Gate-level irreducibility toggle field; one f0 instance per chain step."""
    r = f0.arity
    m = 4 * ell
    span = 6 * ell
    half = 3 * ell
    b = Builder(m - 1)
    x = b.inputs()
    zero = b.const0()
    one = b.const1()

    def lstep(w):
        return w[1:] + [b.xor(w[0], w[2 * ell])]

    us = [[zero] + x]
    vs = [[one] + x]
    for _ in range(span):
        us.append(lstep(us[-1]))
        vs.append(lstep(vs[-1]))
    a_wires = [b.embed(f0, us[i][m - r:])[0] for i in range(1, span + 1)]
    b_wires = [b.embed(f0, vs[i][m - r:])[0] for i in range(1, span + 1)]

    def orbit_flag(state):
        w = [b.NOT(state[0])] + state[1:]
        chain = [w]
        for _ in range(span):
            chain.append(lstep(chain[-1]))
        mn = _min_tree(b, chain[1:])
        fixed = b.equal(chain[half], w)
        moved_min = b.NOT(b.equal(chain[span], mn))
        return b.OR(fixed, moved_min)

    cs = [orbit_flag(us[i]) for i in range(1, span + 1)]
    ds = [orbit_flag(vs[i]) for i in range(1, span + 1)]
    u_min = _min_tree(b, us[1:])
    v_min = _min_tree(b, vs[1:])

    def qflag(chain, mn, flags):
        conj = [b.NOT(mn[0])] + mn[1:]
        t = conj
        for _ in range(half):
            t = lstep(t)
        return b.and_chain([b.and_chain(flags),
                            b.equal(chain[ell], mn),
                            b.equal(t, conj)])

    qu = qflag(us, u_min, cs)
    qv = qflag(vs, v_min, ds)
    u_ret = b.equal(us[0], us[half])
    v_ret = b.equal(vs[0], vs[half])
    u_at_min = b.equal(us[span], u_min)
    v_at_min = b.equal(vs[span], v_min)
    case1 = b.and_chain([u_ret, u_at_min, b.or_chain(a_wires)])
    case2 = b.and_chain([v_ret, v_at_min, b.or_chain(b_wires)])
    case3 = b.and_chain([b.NOT(u_ret), b.NOT(v_ret),
                         b.or_chain([u_at_min, v_at_min, qu, qv])])
    return b.build(b.or_chain([case1, case2, case3]))


def alg2_f3_circuit(ell: int, f2c: Circuit) -> Circuit:
    """Gate-level indecomposability toggle field."""
    r = f2c.arity
    m2 = 2 * ell
    span = 3 * ell
    b = Builder(m2)
    xw = b.inputs()

    def lstep(w):
        return w[1:] + [b.xor(w[0], w[ell])]

    first = b.xor(b.xor(xw[m2 - 1], xw[ell - 1]), xw[0])
    u = [first] + [b.xor(xw[i], xw[i + 1]) for i in range(m2 - 1)]
    chain = [u]
    for _ in range(span):
        chain.append(lstep(chain[-1]))
    hits = [b.embed(f2c, chain[i][m2 - r:])[0] for i in range(1, span + 1)]
    mn = _min_tree(b, chain[1:])
    return b.build(b.AND(b.equal(chain[span], mn), b.or_chain(hits)))


def _wrap_feedback(f3c: Circuit, stage: int, xor_taps: list) -> Circuit:
    """Lift a toggle-field circuit on (x1..x_{stage-1}) to the register's
    feedback on (x0..x_{stage-1}) by XORing in the given taps.

    Reuses the toggle circuit's vertex list, shifted to make room for the
    extra x0 input; each tap costs one five-gate XOR.
    """
    if f3c.arity != stage - 1:
        raise ValueError("toggle field arity must be stage - 1")
    nodes = [("IN", i) for i in range(stage)]
    for nd in f3c.nodes[stage - 1:]:
        if nd[0] == "NOT":
            nodes.append(("NOT", nd[1] + 1))
        else:
            nodes.append((nd[0], nd[1] + 1, nd[2] + 1))

    def xor_append(a, c):
        na = len(nodes)
        nodes.append(("NOT", a))
        nodes.append(("NOT", c))
        nodes.append(("AND", na, c))
        nodes.append(("AND", na + 1, a))
        nodes.append(("OR", na + 2, na + 3))
        return na + 4

    out = f3c.sink + 1
    for tap in xor_taps:
        out = xor_append(tap, out)
    return Circuit(stage, nodes, (out,))


# ---------------------------------------------------------------------------
# instances

@dataclass
class SizeReport:
    """Measured circuit sizes next to the guaranteed ceiling.

    f1_size counts all vertices including inputs; f1_gates excludes the
    inputs.  formula_value is the closed-form vertex count the bound is
    derived from (wiring-dependent, reported for comparison only).
    """

    kind: str
    r: int
    k: int
    ell: int
    f0_size: int
    f3_size: int
    f1_size: int
    f1_gates: int
    bound: int
    bound_ok: bool
    formula_value: int | None

    def lines(self) -> list:
        closed = "n/a" if self.formula_value is None else str(self.formula_value)
        return [
            f"kind={self.kind} r={self.r} k={self.k} ell={self.ell}",
            f"f0-size={self.f0_size}",
            f"f3-size={self.f3_size}",
            f"f1-size={self.f1_size} f1-gates={self.f1_gates}",
            f"size-bound={self.bound} within-bound={self.bound_ok}",
            f"closed-form={closed}",
        ]


@dataclass
class ReductionInstance:
    """One built instance: the register plus both toggle-field forms."""

    kind: str             # "irr" or "dec"
    f0: Circuit
    r: int
    k: int
    ell: int
    fsr: Fsr
    f3_semantic: object   # int -> bit
    f3_table: tuple | None
    f3_circuit: Circuit | None
    f1_circuit: Circuit | None
    size_report: SizeReport | None
    f2_circuit: Circuit | None = None
    f2_table: TruthTable | None = None

    @property
    def stage(self) -> int:
        return self.fsr.stage


def alg1_size_bound(f0_size: int) -> int:
    return 37908 * f0_size ** 4


def alg1_size_formula(ell: int, f0_size: int) -> int:
    return (12 * ell * f0_size + 7488 * ell ** 4 + 4752 * ell ** 3
            - 856 * ell ** 2 + 274 * ell + 69)


def alg2_size_bound(f0_size: int) -> int:
    return 264 * f0_size ** 3


def build_irreducibility_fsr(f0: Circuit, build_circuit: bool = None
                             ) -> ReductionInstance:
    """The 4*ell-stage register that is irreducible iff f0 is satisfiable."""
    r = f0.arity
    k, ell = ell_for(r)
    assert r <= 2 * ell <= 3 * r - 1
    m = 4 * ell
    f0_tt = f0.truth_table()
    f3 = alg1_f3_semantic(ell, f0_tt)
    if build_circuit is None:
        build_circuit = ell <= EXHAUSTIVE_ELL_BOUND

    if ell <= EXHAUSTIVE_ELL_BOUND:
        f3_tab = tuple(f3(x) for x in range(1 << (m - 1)))
        tap = 2 * ell
        table = bytes(((s & 1) ^ ((s >> tap) & 1) ^ f3_tab[s >> 1])
                      for s in range(1 << m))
        fsr = Fsr(m, table=table)
        assert is_nonsingular(fsr)
    else:
        f3_tab = None
        tap = 2 * ell

        def feedback(s, tap=tap, f3=f3):
            return (s & 1) ^ ((s >> tap) & 1) ^ f3(s >> 1)

        fsr = Fsr(m, fn=feedback)

    f3c = f1c = report = None
    if build_circuit:
        f3c = alg1_f3_circuit(ell, f0)
        f1c = _wrap_feedback(f3c, m, [2 * ell, 0])
        bound = alg1_size_bound(f0.size)
        report = SizeReport(
            kind="irr", r=r, k=k, ell=ell, f0_size=f0.size,
            f3_size=f3c.size, f1_size=f1c.size, f1_gates=f1c.gate_count,
            bound=bound, bound_ok=f1c.size < bound,
            formula_value=alg1_size_formula(ell, f0.size))
    return ReductionInstance(kind="irr", f0=f0, r=r, k=k, ell=ell, fsr=fsr,
                             f3_semantic=f3, f3_table=f3_tab, f3_circuit=f3c,
                             f1_circuit=f1c, size_report=report)


def build_indecomposability_fsr(f0: Circuit, build_circuit: bool = None
                                ) -> ReductionInstance:
    """The (2*ell+1)-stage register that is indecomposable iff f0 is
    satisfiable; on unsatisfiable inputs it is exactly the linear register
    of (x+1) * (x^(2*ell) + x^ell + 1)."""
    r = f0.arity
    k, ell = ell_for(r)
    assert r <= 2 * ell <= 3 * r - 1
    stage = 2 * ell + 1
    f2t = f2_table(f0.truth_table())
    f3 = alg2_f3_semantic(ell, f2t)
    if build_circuit is None:
        build_circuit = ell <= EXHAUSTIVE_ELL_BOUND

    if ell <= EXHAUSTIVE_ELL_BOUND:
        f3_tab = tuple(f3(x) for x in range(1 << (stage - 1)))
        table = bytes(((s & 1) ^ ((s >> 1) & 1) ^ ((s >> ell) & 1)
                       ^ ((s >> (ell + 1)) & 1) ^ ((s >> (2 * ell)) & 1)
                       ^ f3_tab[s >> 1])
                      for s in range(1 << stage))
        fsr = Fsr(stage, table=table)
        assert is_nonsingular(fsr)
    else:
        f3_tab = None

        def feedback(s, ell=ell, f3=f3):
            return ((s & 1) ^ ((s >> 1) & 1) ^ ((s >> ell) & 1)
                    ^ ((s >> (ell + 1)) & 1) ^ ((s >> (2 * ell)) & 1)
                    ^ f3(s >> 1))

        fsr = Fsr(stage, fn=feedback)

    f2c = f2_transform(f0)
    f3c = f1c = report = None
    if build_circuit:
        f3c = alg2_f3_circuit(ell, f2c)
        f1c = _wrap_feedback(f3c, stage, [2 * ell, ell + 1, ell, 1, 0])
        bound = alg2_size_bound(f0.size)
        report = SizeReport(
            kind="dec", r=r, k=k, ell=ell, f0_size=f0.size,
            f3_size=f3c.size, f1_size=f1c.size, f1_gates=f1c.gate_count,
            bound=bound, bound_ok=f1c.size <= bound,
            formula_value=None)
    return ReductionInstance(kind="dec", f0=f0, r=r, k=k, ell=ell, fsr=fsr,
                             f3_semantic=f3, f3_table=f3_tab, f3_circuit=f3c,
                             f1_circuit=f1c, size_report=report,
                             f2_circuit=f2c, f2_table=f2t)


# ---------------------------------------------------------------------------
# proof-side bookkeeping for the irreducibility form

class Alg1Oracle:
    """Cycle bookkeeping over the quartic-trinomial linear register.

    Holds, for every cycle of x^(4*ell)+x^(2*ell)+1: its period, least
    window, the long-cycle set, the deferred subset D, the representative
    map rho, and the marking predicate lam built from rho.
    """

    def __init__(self, ell: int):
        if ell > EXHAUSTIVE_ELL_BOUND:
            raise ValueError(f"oracle enumerates 2^(4*ell) states; ell <= "
                             f"{EXHAUSTIVE_ELL_BOUND} only")
        self.ell = ell
        self.family = LfsrFamily.for_ell(ell)
        m = self.m = 4 * ell
        N = 1 << m
        L = _lstep_table(m, 2 * ell)
        cycle_id = [-1] * N
        windows = []   # id -> list of states
        for seed in range(N):
            if cycle_id[seed] >= 0:
                continue
            cid = len(windows)
            orbit = []
            s = seed
            while cycle_id[s] < 0:
                cycle_id[s] = cid
                orbit.append(s)
                s = L[s]
            windows.append(orbit)
        self._cycle_id = cycle_id
        self._windows = windows
        self._period = [len(o) for o in windows]
        self._minw = [min(o) for o in windows]
        self._cycle_obj = [Cycle(s & 1 for s in o) for o in windows]
        self._obj_to_id = {c: i for i, c in enumerate(self._cycle_obj)}
        long_period = 6 * ell

        def short(cid):
            return self._period[cid] != long_period

        # D: least window's conjugate sits on a short cycle, and no window's
        # conjugate is the least window of a long cycle.
        d_ids = set()
        for cid in range(len(windows)):
            if not short(self._cycle_id[self._minw[cid] ^ 1]):
                continue
            blocked = any(
                not short(self._cycle_id[v ^ 1])
                and (v ^ 1) == self._minw[self._cycle_id[v ^ 1]]
                for v in windows[cid])
            if not blocked:
                d_ids.add(cid)
        self._d_ids = d_ids
        rho = []
        for cid in range(len(windows)):
            v = self._minw[cid]
            if cid in d_ids:
                for _ in range(5 * ell):
                    v = L[v]
            rho.append(v)
        self._rho = rho
        rho_set = set(rho)
        self._lam = [1 if (v in rho_set and not short(cycle_id[v ^ 1])) else 0
                     for v in range(N)]

        # the two structural facts about D and rho
        e1_cid = cycle_id[1]
        for cid in d_ids:
            if short(cid):
                raise AssertionError("deferred set contains a short cycle")
            tgt = cycle_id[rho[cid] ^ 1]
            if short(tgt) or tgt in d_ids:
                raise AssertionError("deferred representative's conjugate "
                                     "does not reach a plain long cycle")
        for cid in range(len(windows)):
            if (rho[cid] ^ 1) in rho_set and cid not in (cycle_id[0], e1_cid):
                raise AssertionError("conjugate of a representative is a "
                                     "representative off the zero/unit cycles")

    # -- queries -------------------------------------------------------------

    @property
    def cycles(self) -> CycleStructure:
        return CycleStructure(self._cycle_obj)

    @property
    def c6(self) -> frozenset:
        return frozenset(c for c in self._cycle_obj if c.period == 6 * self.ell)

    @property
    def d_set(self) -> frozenset:
        return frozenset(self._cycle_obj[cid] for cid in self._d_ids)

    def cycle_of(self, v) -> Cycle:
        return self._cycle_obj[self._cycle_id[int(v)]]

    def in_d(self, c: Cycle) -> bool:
        return self._obj_to_id[c] in self._d_ids

    def rho(self, c: Cycle) -> BitVec:
        return BitVec(self._rho[self._obj_to_id[c]], self.m)

    def rho_int(self, c: Cycle) -> int:
        return self._rho[self._obj_to_id[c]]

    def lam(self, v) -> int:
        return self._lam[int(v)]

    def lam_table(self) -> list:
        return list(self._lam)

    def p0_side(self, c: Cycle) -> bool:
        return c.period != 6 * self.ell


def f3_reference_irr(ell: int, f0: Circuit, oracle: Alg1Oracle = None):
    """The three-branch characterization of the irreducibility toggle
    field via rho and the long-cycle set; must agree with the built one."""
    if oracle is None:
        oracle = Alg1Oracle(ell)
    if oracle.ell != ell:
        raise ValueError("oracle built for a different ell")
    r = f0.arity
    m = 4 * ell
    f0b = f0.truth_table().bits()
    shift_r = m - r
    cid_of = oracle._cycle_id
    rho = oracle._rho
    period = oracle._period
    windows = oracle._windows
    long_period = 6 * ell
    hit = [any(f0b[v >> shift_r] for v in windows[cid])
           for cid in range(len(windows))]

    def ref(x: int) -> int:
        for v in (x << 1, (x << 1) | 1):
            cid = cid_of[v]
            if rho[cid] != v:
                continue
            if period[cid] == long_period:
                if period[cid_of[v ^ 1]] == long_period:
                    return 1
            elif hit[cid]:
                return 1
        return 0

    return ref


# ---------------------------------------------------------------------------
# proof-side bookkeeping for the indecomposability form

class Alg2Maps:
    """The window-difference map, the three-tap parity, and the marking
    predicate for the indecomposability form, over (2*ell+1)-bit states."""

    def __init__(self, ell: int):
        if ell > EXHAUSTIVE_ELL_BOUND:
            raise ValueError(f"maps enumerate 2^(2*ell+1) states; ell <= "
                             f"{EXHAUSTIVE_ELL_BOUND} only")
        self.ell = ell
        self.stage = 2 * ell + 1
        self._pi_mask = (1 << (2 * ell)) - 1
        self._L = _lstep_table(2 * ell, ell)

    def pi_int(self, v: int) -> int:
        return (v ^ (v >> 1)) & self._pi_mask

    def pi(self, v) -> BitVec:
        return BitVec(self.pi_int(int(v)), 2 * self.ell)

    def chi(self, v) -> int:
        v = int(v)
        return (v ^ (v >> self.ell) ^ (v >> (2 * self.ell))) & 1

    def lam(self, v) -> int:
        v = int(v)
        if self.chi(v):
            return 0
        w = self.pi_int(v)
        t = w
        mn = None
        for _ in range(3 * self.ell):
            t = self._L[t]
            if mn is None or t < mn:
                mn = t
        return 1 if w == mn else 0

    def lam_table(self) -> list:
        return [self.lam(v) for v in range(1 << self.stage)]

    def p1_step(self, v: int) -> int:
        """State map of the (2*ell+1)-stage linear register."""
        ell = self.ell
        fb = ((v ^ (v >> 1) ^ (v >> ell) ^ (v >> (ell + 1))
               ^ (v >> (2 * ell))) & 1)
        return (v >> 1) | (fb << (2 * ell))


def f3_reference_dec(ell: int, f2_tt: TruthTable, maps: Alg2Maps = None):
    """The marked-representative characterization of the indecomposability
    toggle field; must agree with the built one pointwise."""
    if maps is None:
        maps = Alg2Maps(ell)
    r = f2_tt.arity
    m2 = 2 * ell
    f2b = f2_tt.bits()
    shift_r = m2 - r

    def ref(x: int) -> int:
        y = (((x >> (m2 - 1)) ^ (x >> (ell - 1))) & 1) | (x << 1)
        if not maps.lam(y):
            return 0
        v = y
        while True:
            if f2b[maps.pi_int(v) >> shift_r]:
                return 1
            v = maps.p1_step(v)
            if v == y:
                return 0

    return ref
