"""Feedback shift registers: state maps, cycle structure, products, cascades.

An n-stage register holds state (x0, ..., x_{n-1}) and clocks to
(x1, ..., x_{n-1}, f1(x0, ..., x_{n-1})).  Its characteristic function is
f(x0, ..., xn) = xn ^ f1(x0, ..., x_{n-1}); a register is nonsingular when
the state map is a bijection, equivalently when f1 = x0 ^ g(x1, ..., x_{n-1}).

States are integers under the low-bit-first encoding, so one step is
(s >> 1) | (f1(s) << (n-1)) and the bit shifted out (s & 1) is the output.
Periodic output sequences are kept as Cycle values: the minimal-period bit
string in its lexicographically least rotation.
"""

from __future__ import annotations

import os

from .bitvec import BitVec
from .circuit import Circuit


def state_bound() -> int:
    """Stage cap for full state-space sweeps (env FSRKIT_STATE_BOUND)."""
    return int(os.environ.get("FSRKIT_STATE_BOUND", "24"))


class FsrParseError(ValueError):
    """Raised on malformed register text; carries the offending line number."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


# ---------------------------------------------------------------------------
# cycles

def _least_rotation_index(s) -> int:
    """Booth's algorithm: start of the lexicographically least rotation."""
    n = len(s)
    s2 = s + s
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s2[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s2[k + i + 1]:
            if sj < s2[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != s2[k + i + 1]:
            if sj < s2[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def _minimal_period(bits) -> int:
    p = len(bits)
    for d in range(1, p):
        if p % d == 0 and all(bits[i] == bits[i % d] for i in range(p)):
            return d
    return p


class Cycle:
    """A cyclic bit sequence in canonical form.

    Canonical form is the minimal period's lexicographically least
    rotation; construction reduces and rotates, so equal cyclic sequences
    compare equal.
    """

    __slots__ = ("bits",)

    def __init__(self, bits):
        bits = tuple(int(b) & 1 for b in bits)
        if not bits:
            raise ValueError("empty cycle")
        bits = bits[:_minimal_period(bits)]
        k = _least_rotation_index(bits)
        object.__setattr__(self, "bits", bits[k:] + bits[:k])

    def __setattr__(self, name, val):
        raise AttributeError("Cycle is immutable")

    @classmethod
    def parse(cls, text: str) -> "Cycle":
        return cls(int(ch) for ch in text.strip())

    @property
    def period(self) -> int:
        return len(self.bits)

    def complement(self) -> "Cycle":
        return Cycle(b ^ 1 for b in self.bits)

    def window_ints(self, k: int) -> set:
        """All k-windows (wrapping modulo the period) as integers."""
        if k < 1:
            raise ValueError("window width must be >= 1")
        p = len(self.bits)
        out = set()
        for i in range(p):
            w = 0
            for t in range(k):
                w |= self.bits[(i + t) % p] << t
            out.add(w)
        return out

    def windows(self, k: int) -> frozenset:
        return frozenset(BitVec(w, k) for w in self.window_ints(k))

    def sort_key(self):
        return (len(self.bits), self.bits)

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __str__(self):
        return "".join(str(b) for b in self.bits)

    def __repr__(self):
        return f"Cycle('{self}')"


def windows(cycle: Cycle, k: int) -> frozenset:
    return cycle.windows(k)


def ell_sampling(cycle, ell: int, offset: int = 0) -> BitVec:
    """The stride-ell subsequence of a cyclic bit string, starting at offset.

    Accepts a Cycle (sampled in its canonical rotation) or an explicit bit
    sequence, sampled in the rotation as written; the length must be a
    multiple of the stride.
    """
    if isinstance(cycle, Cycle):
        bits = cycle.bits
    elif isinstance(cycle, str):
        bits = tuple(int(ch) for ch in cycle)
    else:
        bits = tuple(int(b) & 1 for b in cycle)
    p = len(bits)
    if ell < 1 or p % ell != 0:
        raise ValueError(f"length {p} is not a multiple of stride {ell}")
    if not 0 <= offset < p:
        raise ValueError("offset out of range")
    k = p // ell
    return BitVec.from_bits(bits[(offset + j * ell) % p] for j in range(k))


class CycleStructure:
    """A finite set of distinct cycles; typically a partition of B^n."""

    __slots__ = ("cycles",)

    def __init__(self, cycles):
        object.__setattr__(self, "cycles", frozenset(cycles))
        if not self.cycles:
            raise ValueError("empty cycle structure")

    def __setattr__(self, name, val):
        raise AttributeError("CycleStructure is immutable")

    @property
    def total(self) -> int:
        return sum(c.period for c in self.cycles)

    def sorted(self) -> list:
        return sorted(self.cycles, key=Cycle.sort_key)

    def periods(self) -> list:
        return sorted(c.period for c in self.cycles)

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.cycles)

    def __contains__(self, c):
        return c in self.cycles

    def __le__(self, other):
        return self.cycles <= other.cycles

    def __eq__(self, other):
        if not isinstance(other, CycleStructure):
            return NotImplemented
        return self.cycles == other.cycles

    def __hash__(self):
        return hash(self.cycles)

    def format_listing(self) -> str:
        """One cycle per line: period, a space, the canonical bits."""
        return "\n".join(f"{c.period} {c}" for c in self.sorted()) + "\n"

    @classmethod
    def parse_listing(cls, text: str) -> "CycleStructure":
        cycles = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if len(toks) != 2:
                raise FsrParseError("expected 'period bits'", lineno)
            c = Cycle.parse(toks[1])
            if c.period != int(toks[0]):
                raise FsrParseError(
                    f"stated period {toks[0]} != minimal period {c.period}", lineno)
            cycles.append(c)
        return cls(cycles)

    def __repr__(self):
        return f"CycleStructure({self.sorted()!r})"


# ---------------------------------------------------------------------------
# the register itself

class Fsr:
    """An n-stage register given by its feedback logic.

    Backed by a truth table (bytes of length 2^n), a Python callable, or a
    Circuit; the table is materialized on demand for stages within
    state_bound().  Values are immutable in practice: nothing here mutates
    a register after construction.
    """

    __slots__ = ("stage", "_table", "_fn", "circuit")

    def __init__(self, stage: int, table=None, fn=None, circuit: Circuit = None):
        if stage < 1:
            raise ValueError("stage must be >= 1")
        if table is None and fn is None and circuit is None:
            raise ValueError("need a feedback table, callable or circuit")
        if circuit is not None and circuit.arity != stage:
            raise ValueError(f"feedback arity {circuit.arity} != stage {stage}")
        self.stage = stage
        self._fn = fn
        self.circuit = circuit
        if table is not None:
            table = self._coerce_table(stage, table)
        self._table = table

    @staticmethod
    def _coerce_table(stage, table) -> bytes:
        n = 1 << stage
        if isinstance(table, int):
            if not 0 <= table < (1 << n):
                raise ValueError("table mask out of range")
            return bytes((table >> i) & 1 for i in range(n))
        data = bytes(table)
        if len(data) != n:
            raise ValueError(f"table needs {n} entries, got {len(data)}")
        if any(b not in (0, 1) for b in data):
            raise ValueError("table entries must be 0 or 1")
        return data

    @classmethod
    def from_table(cls, stage: int, table) -> "Fsr":
        return cls(stage, table=table)

    @classmethod
    def from_circuit(cls, circuit: Circuit) -> "Fsr":
        return cls(circuit.arity, circuit=circuit)

    @classmethod
    def from_fn(cls, stage: int, fn) -> "Fsr":
        return cls(stage, fn=fn)

    @property
    def table(self) -> bytes:
        """The feedback truth table, materializing it if necessary."""
        if self._table is None:
            if self.stage > state_bound():
                raise ValueError(
                    f"stage {self.stage} exceeds state bound {state_bound()}")
            if self.circuit is not None:
                mask = self.circuit.output_masks(bound=state_bound())[0]
                self._table = bytes(
                    (mask >> i) & 1 for i in range(1 << self.stage))
            else:
                self._table = bytes(
                    self._fn(s) & 1 for s in range(1 << self.stage))
        return self._table

    def table_mask(self) -> int:
        mask = 0
        for i, b in enumerate(self.table):
            mask |= b << i
        return mask

    def feedback_bit(self, s: int) -> int:
        if self._table is not None:
            return self._table[s]
        if self._fn is not None:
            return self._fn(s) & 1
        return self.circuit.evaluate(BitVec(s, self.stage))

    def step_int(self, s: int) -> int:
        return (s >> 1) | (self.feedback_bit(s) << (self.stage - 1))

    def char_bit(self, y: int) -> int:
        """The characteristic function on y in B^{stage+1}."""
        return ((y >> self.stage) & 1) ^ self.feedback_bit(y & ((1 << self.stage) - 1))

    def complement(self) -> "Fsr":
        """The register whose characteristic function is flipped."""
        return Fsr(self.stage, table=bytes(b ^ 1 for b in self.table))

    def __eq__(self, other):
        if not isinstance(other, Fsr):
            return NotImplemented
        return self.stage == other.stage and self.table == other.table

    def __hash__(self):
        return hash((self.stage, self.table))

    def __repr__(self):
        return f"Fsr(stage={self.stage})"


def step(f: Fsr, s: BitVec) -> BitVec:
    """One clock of the state map."""
    if s.width != f.stage:
        raise ValueError(f"state width {s.width} != stage {f.stage}")
    return BitVec(f.step_int(s.value), f.stage)


def is_nonsingular(f: Fsr) -> bool:
    """Bijectivity of the state map, cross-checked against the feedback
    criterion f1(s) ^ f1(s ^ 1) == 1 for every state."""
    if f.stage > state_bound():
        raise ValueError(f"stage {f.stage} exceeds state bound {state_bound()}")
    tbl = f.table
    n = 1 << f.stage
    top = f.stage - 1
    seen = bytearray(n)
    bijective = True
    for s in range(n):
        t = (s >> 1) | (tbl[s] << top)
        if seen[t]:
            bijective = False
            break
        seen[t] = 1
    criterion = all(tbl[s] ^ tbl[s ^ 1] == 1 for s in range(0, n, 2))
    if bijective != criterion:
        raise AssertionError("bijectivity and feedback criterion disagree")
    return bijective


def cycle_structure(f: Fsr) -> CycleStructure:
    """Partition all 2^n states of a nonsingular register into cycles."""
    if f.stage > state_bound():
        raise ValueError(f"stage {f.stage} exceeds state bound {state_bound()}")
    if not is_nonsingular(f):
        raise ValueError("singular register has no cycle partition")
    tbl = f.table
    n = 1 << f.stage
    top = f.stage - 1
    visited = bytearray(n)
    cycles = []
    for seed in range(n):
        if visited[seed]:
            continue
        s = seed
        bits = []
        while not visited[s]:
            visited[s] = 1
            bits.append(s & 1)
            s = (s >> 1) | (tbl[s] << top)
        cycles.append(Cycle(bits))
    return CycleStructure(cycles)


# ---------------------------------------------------------------------------
# building registers from cycle sets

def _union_windows(cycles, k: int) -> set:
    out = set()
    for c in cycles:
        out |= c.window_ints(k)
    return out


def window_injectivity_equiv_check(cycles, m: int) -> tuple:
    """The three equivalent window statements, each computed directly:
    (i) |union of m-windows| equals the period sum,
    (ii) dropping the first bit is injective on the (m+1)-windows,
    (iii) dropping the last bit is injective on the (m+1)-windows.
    """
    cycles = list(cycles)
    total = sum(c.period for c in cycles)
    stmt1 = len(_union_windows(cycles, m)) == total

    wins = _union_windows(cycles, m + 1)
    low_mask = (1 << m) - 1
    stmt2 = len({w >> 1 for w in wins}) == len(wins)
    stmt3 = len({w & low_mask for w in wins}) == len(wins)
    return (stmt1, stmt2, stmt3)


def realizable_as_fsr(cycles, m: int) -> bool:
    """Can this cycle set be exactly the cycle partition of an m-stage
    register?  Needs period sum 2^m and injective window extension."""
    cycles = list(cycles)
    if sum(c.period for c in cycles) != (1 << m):
        return False
    wins = _union_windows(cycles, m + 1)
    return len({w >> 1 for w in wins}) == len(wins)


def fsr_from_cycles(cycles, m: int) -> Fsr:
    """The unique m-stage register whose cycle structure is the given set."""
    cycles = list(cycles)
    if sum(c.period for c in cycles) != (1 << m):
        raise ValueError("period sum is not 2^m")
    table = [None] * (1 << m)
    low_mask = (1 << m) - 1
    for w in _union_windows(cycles, m + 1):
        v = w & low_mask
        b = w >> m
        if table[v] is not None and table[v] != b:
            raise ValueError("cycle set is not realizable: window conflict")
        table[v] = b
    if any(b is None for b in table):
        raise ValueError("cycle set is not realizable: uncovered state")
    return Fsr(m, table=table)


def toggle_feedback(f: Fsr, u: BitVec) -> Fsr:
    """Flip the feedback at the conjugate state pair whose last stage-1
    bits equal u: joins the two cycles through the pair, or splits one."""
    if f.stage < 2:
        raise ValueError("toggle needs stage >= 2")
    if u.width != f.stage - 1:
        raise ValueError(f"selector width {u.width} != stage-1")
    table = bytearray(f.table)
    table[2 * u.value] ^= 1
    table[2 * u.value + 1] ^= 1
    return Fsr(f.stage, table=bytes(table))


# ---------------------------------------------------------------------------
# products and cascades

def product_fsr(f: Fsr, g: Fsr) -> Fsr:
    """The register whose characteristic function is f composed over a
    sliding window of g evaluations; stage is the sum of stages."""
    n, m = f.stage, g.stage
    if n + m > state_bound():
        raise ValueError(f"product stage {n + m} exceeds state bound")
    f1 = f.table
    g1 = g.table
    mask_m = (1 << m) - 1
    table = bytearray(1 << (n + m))
    for x in range(1 << (n + m)):
        z = 0
        for i in range(n):
            z |= (((x >> (i + m)) & 1) ^ g1[(x >> i) & mask_m]) << i
        table[x] = g1[x >> n] ^ f1[z]
    return Fsr(n + m, table=bytes(table))


def simulate_cascade(f: Fsr, g: Fsr) -> CycleStructure:
    """Drive the two-register machine in which f's output bit is XORed
    into g's feedback, over all joint states; collect the cycles of the
    output sequences read off g's low stage."""
    n, m = f.stage, g.stage
    if n + m > 20:
        raise ValueError("cascade sweep capped at 20 joint stages")
    if not (is_nonsingular(f) and is_nonsingular(g)):
        raise ValueError("cascade sweep needs nonsingular registers")
    f1 = f.table
    g1 = g.table
    top_f = n - 1
    top_g = m - 1
    total = 1 << (n + m)
    visited = bytearray(total)
    cycles = set()
    for seed in range(total):
        if visited[seed]:
            continue
        j = seed
        bits = []
        while not visited[j]:
            visited[j] = 1
            x, y = j >> m, j & ((1 << m) - 1)
            bits.append(y & 1)
            y2 = (y >> 1) | ((g1[y] ^ (x & 1)) << top_g)
            x2 = (x >> 1) | (f1[x] << top_f)
            j = (x2 << m) | y2
        cycles.add(Cycle(bits))
    return CycleStructure(cycles)


# ---------------------------------------------------------------------------
# text format

def write_fsr(f: Fsr) -> str:
    """STAGE header plus the feedback table as one 0/1 digit per state."""
    digits = "".join(str(b) for b in f.table)
    return f"STAGE {f.stage}\nFEEDBACK TABLE {digits}\n"


def write_fsr_circuit(f: Fsr) -> str:
    """STAGE header plus the feedback circuit inline."""
    from .circuit import write_circuit
    if f.circuit is None:
        raise ValueError("register has no circuit form")
    return f"STAGE {f.stage}\nFEEDBACK CIRCUIT\n" + write_circuit(f.circuit)


def parse_fsr(text: str, base_dir: str = ".") -> Fsr:
    """Parse the register text format.

    Line 1: ``STAGE n``.  Line 2: either ``FEEDBACK TABLE <digits>`` with
    one 0/1 digit per state, index order, or ``FEEDBACK CIRCUIT [path]``;
    with no path the circuit text follows inline until end of file.
    """
    from .circuit import parse_circuit

    lines = text.splitlines()
    idx = 0
    stage = None
    lineno = 0
    while idx < len(lines):
        lineno = idx + 1
        line = lines[idx].split("#", 1)[0].strip()
        idx += 1
        if not line:
            continue
        toks = line.split()
        if toks[0] != "STAGE" or len(toks) != 2:
            raise FsrParseError("expected 'STAGE n'", lineno)
        try:
            stage = int(toks[1])
        except ValueError:
            raise FsrParseError(f"bad stage {toks[1]!r}", lineno) from None
        if stage < 1:
            raise FsrParseError("stage must be >= 1", lineno)
        break
    if stage is None:
        raise FsrParseError("missing STAGE line", lineno or 1)

    while idx < len(lines):
        lineno = idx + 1
        line = lines[idx].split("#", 1)[0].strip()
        idx += 1
        if not line:
            continue
        toks = line.split()
        if toks[0] != "FEEDBACK" or len(toks) < 2:
            raise FsrParseError("expected a FEEDBACK line", lineno)
        if toks[1] == "TABLE":
            if len(toks) != 3:
                raise FsrParseError("FEEDBACK TABLE takes one digit string", lineno)
            digits = toks[2]
            if len(digits) != (1 << stage):
                raise FsrParseError(
                    f"table needs {1 << stage} digits, got {len(digits)}", lineno)
            if any(ch not in "01" for ch in digits):
                raise FsrParseError("table digits must be 0 or 1", lineno)
            return Fsr(stage, table=[int(ch) for ch in digits])
        if toks[1] == "CIRCUIT":
            if len(toks) == 3:
                path = os.path.join(base_dir, toks[2])
                try:
                    with open(path) as fh:
                        circ = parse_circuit(fh.read())
                except OSError as e:
                    raise FsrParseError(f"cannot read circuit {toks[2]!r}: {e}",
                                        lineno) from None
            elif len(toks) == 2:
                circ = parse_circuit("\n".join(lines[idx:]))
            else:
                raise FsrParseError("FEEDBACK CIRCUIT takes at most one path", lineno)
            if circ.arity != stage:
                raise FsrParseError(
                    f"feedback arity {circ.arity} != stage {stage}", lineno)
            return Fsr(stage, circuit=circ)
        raise FsrParseError(f"unknown feedback kind {toks[1]!r}", lineno)
    raise FsrParseError("missing FEEDBACK line", len(lines) or 1)
