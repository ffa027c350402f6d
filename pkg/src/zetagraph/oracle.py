"""Brute-force ground truth: enumerate reduced cycles and reduced alternating
cycles, list prime equivalence classes, and verify every generating-function
identity at desk scale.

Counting runs through the DFS kernels; class listing is pure Python because it
has to carry actual arc sequences.  Everything is budgeted: the enumeration
aborts with BudgetExceededError after ``budget`` partial extensions
(default 1e7, overridable via the ZETAGRAPH_BUDGET environment variable).

Alternating cycles are handled as (arc sequence, share pattern) pairs encoded
as token lists (arc, share-type-after-arc); rotation acts on tokens, classes
are rotation orbits, and a cycle is prime exactly when its token list has no
proper period.  Share types alternate, so periods are automatically even.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .exactpoly import RationalFn, TruncatedSeries
from .graphs import Digraph, Graph, digraph_matrices, symmetric_digraph

DEFAULT_BUDGET = 10**7

T_SHARE = 0
O_SHARE = 1


class BudgetExceededError(RuntimeError):
    def __init__(self, used):
        super().__init__(f"enumeration budget exhausted after {used} extensions; "
                         f"raise it via the budget argument or ZETAGRAPH_BUDGET")
        self.used = used


def enumeration_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("ZETAGRAPH_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def count_reduced_cycles(g: Graph, k: int, budget: Optional[int] = None) -> int:
    """Number of closed arc sequences of length k with no cyclic backtracking.

    The tail condition is folded into the cyclic constraint: consecutive arcs,
    including the wrap-around pair, are never mutually inverse.
    """
    if k < 1:
        raise ValueError("cycle length must be >= 1")
    budget = enumeration_budget(budget)
    indptr, arcs = g.arcs_by_origin()
    count, used = _kernels.count_closed_nbt(g.terminus, g.origin, g.inv,
                                            indptr, arcs, k, budget)
    if count < 0:
        raise BudgetExceededError(used)
    return int(count)


def count_reduced_alt_cycles(d: Digraph, k: int, budget: Optional[int] = None) -> int:
    """Number of closed reduced alternating walks of length k (0 for odd k).

    Both share patterns (first transition at the shared terminus or at the
    shared origin) are enumerated; adjacent arcs, cyclically, must be distinct,
    which is the no-backtracking plus no-tail condition.
    """
    if k < 1:
        raise ValueError("cycle length must be >= 1")
    if k % 2 == 1:
        return 0
    budget = enumeration_budget(budget)
    byo_indptr, byo_arcs = d.arcs_by_origin()
    byt_indptr, byt_arcs = d.arcs_by_terminus()
    total = 0
    for start_tshare in (True, False):
        count, used = _kernels.count_closed_alt(d.origin, d.terminus,
                                                byo_indptr, byo_arcs,
                                                byt_indptr, byt_arcs,
                                                k, start_tshare, budget)
        if count < 0:
            raise BudgetExceededError(used)
        total += int(count)
    return total


def trace_of_power(m: np.ndarray, k: int) -> int:
    return int(np.trace(np.linalg.matrix_power(m.astype(np.int64), k)))


def cycle_counts_from_reciprocal(recip: RationalFn, kmax: int) -> List[int]:
    """N_1..N_kmax extracted from a reciprocal zeta: N_k = -k [t^k] log(recip).

    Exact rational arithmetic; a non-integer coefficient means the input was
    not a zeta reciprocal, and raises.
    """
    series = TruncatedSeries.from_rationalfn(recip, kmax).log()
    out = []
    for k in range(1, kmax + 1):
        val = -k * series[k]
        if val.denominator != 1:
            raise ValueError(f"log-series coefficient at t^{k} is not an integer")
        out.append(int(val))
    return out


# ---------------------------------------------------------------------------
# explicit sequence listing (pure Python, budgeted)
# ---------------------------------------------------------------------------

def _closed_nbt_sequences(g: Graph, k: int, budget: int):
    """All reduced closed arc sequences of length exactly k."""
    indptr, arcs = g.arcs_by_origin()
    terminus, origin, inv = g.terminus, g.origin, g.inv
    out = []
    used = 0
    seq = [0] * k
    for e0 in range(g.num_arcs):
        used += 1
        if used > budget:
            raise BudgetExceededError(used)
        if k == 1:
            continue  # no self-loops, so no closed length-1 sequences
        seq[0] = e0
        stack = [(1, iter(range(indptr[terminus[e0]], indptr[terminus[e0] + 1])))]
        while stack:
            pos, it = stack[-1]
            advanced = False
            for idx in it:
                f = int(arcs[idx])
                if f == inv[seq[pos - 1]]:
                    continue
                used += 1
                if used > budget:
                    raise BudgetExceededError(used)
                if pos == k - 1:
                    if terminus[f] == origin[e0] and inv[f] != e0:
                        seq[pos] = f
                        out.append(tuple(seq))
                    continue
                seq[pos] = f
                nxt = terminus[f]
                stack.append((pos + 1, iter(range(indptr[nxt], indptr[nxt + 1]))))
                advanced = True
                break
            if not advanced:
                stack.pop()
    return out


def _closed_alt_token_lists(d: Digraph, k: int, budget: int):
    """All reduced closed alternating cycles of length k, as token tuples.

    A token is (arc, share type of the transition that follows it); share
    types alternate around the cycle, so each arc sequence appears once per
    admissible pattern.
    """
    if k % 2 == 1:
        return []
    byo_indptr, byo_arcs = d.arcs_by_origin()
    byt_indptr, byt_arcs = d.arcs_by_terminus()
    origin, terminus = d.origin, d.terminus
    out = []
    used = 0
    seq = [0] * k

    def candidates(prev_arc, share):
        if share == T_SHARE:
            v = terminus[prev_arc]
            return range(byt_indptr[v], byt_indptr[v + 1]), byt_arcs
        v = origin[prev_arc]
        return range(byo_indptr[v], byo_indptr[v + 1]), byo_arcs

    for start_tshare in (True, False):
        def share_of(transition):  # 1-based transition index
            odd = transition % 2 == 1
            return T_SHARE if odd == start_tshare else O_SHARE

        wrap_share = share_of(k)
        for e0 in range(d.m):
            used += 1
            if used > budget:
                raise BudgetExceededError(used)
            seq[0] = e0
            rng, arcpool = candidates(e0, share_of(1))
            stack = [(1, iter(rng), arcpool)]
            while stack:
                pos, it, pool = stack[-1]
                advanced = False
                for idx in it:
                    f = int(pool[idx])
                    if f == seq[pos - 1]:
                        continue
                    used += 1
                    if used > budget:
                        raise BudgetExceededError(used)
                    if pos == k - 1:
                        ok = f != e0
                        if ok:
                            if wrap_share == T_SHARE:
                                ok = terminus[f] == terminus[e0]
                            else:
                                ok = origin[f] == origin[e0]
                        if ok:
                            seq[pos] = f
                            tokens = tuple((seq[i], share_of(i + 1)) for i in range(k))
                            out.append(tokens)
                        continue
                    seq[pos] = f
                    rng2, pool2 = candidates(f, share_of(pos + 1))
                    stack.append((pos + 1, iter(rng2), pool2))
                    advanced = True
                    break
                if not advanced:
                    stack.pop()
    return out


def _min_rotation(seq: tuple) -> tuple:
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def _min_period(seq: tuple) -> int:
    n = len(seq)
    for p in range(1, n):
        if n % p == 0 and seq == seq[p:] + seq[:p]:
            return p
    return n


@dataclass(frozen=True)
class CycleClass:
    """Rotation equivalence class of a reduced cycle (or alternating cycle).

    ``rep`` is the rotation-minimal representative: a tuple of arc indices for
    ordinary cycles, a tuple of (arc, share-type) tokens for alternating ones.
    """

    rep: tuple
    length: int
    kind: str
    prime: bool

    def arc_sequence(self) -> Tuple[int, ...]:
        if self.kind == "reduced-cycle":
            return self.rep
        return tuple(tok[0] for tok in self.rep)


def prime_classes(obj, max_len: int, kind: str = "reduced-cycle",
                  budget: Optional[int] = None,
                  include_non_prime: bool = False) -> List[CycleClass]:
    """All equivalence classes of prime reduced (alternating) cycles of length
    <= max_len, deduplicated by rotation.

    ``obj`` is a Graph for ordinary cycles, a Digraph (or a Graph, which is
    promoted to its symmetric digraph) for alternating ones.
    """
    budget = enumeration_budget(budget)
    classes: List[CycleClass] = []
    if kind == "reduced-cycle":
        if not isinstance(obj, Graph):
            raise TypeError("ordinary reduced cycles are defined on a Graph")
        for k in range(1, max_len + 1):
            seen = set()
            for seq in _closed_nbt_sequences(obj, k, budget):
                canon = _min_rotation(seq)
                if canon in seen:
                    continue
                seen.add(canon)
                prime = _min_period(canon) == k
                if prime or include_non_prime:
                    classes.append(CycleClass(rep=canon, length=k, kind=kind,
                                              prime=prime))
    elif kind == "reduced-alternating-cycle":
        d = symmetric_digraph(obj) if isinstance(obj, Graph) else obj
        for k in range(2, max_len + 1, 2):
            seen = set()
            for tokens in _closed_alt_token_lists(d, k, budget):
                canon = _min_rotation(tokens)
                if canon in seen:
                    continue
                seen.add(canon)
                prime = _min_period(canon) == k
                if prime or include_non_prime:
                    classes.append(CycleClass(rep=canon, length=k, kind=kind,
                                              prime=prime))
    else:
        raise ValueError(f"unknown cycle kind {kind!r}")
    return classes


def euler_truncation(classes: Sequence[CycleClass], order: int) -> TruncatedSeries:
    """Product over prime classes of (1 - t^len)^(-1), truncated at ``order``."""
    result = TruncatedSeries.one(order)
    for cls in classes:
        if not cls.prime:
            continue
        geom = [1 if i % cls.length == 0 else 0 for i in range(order + 1)]
        result = result * TruncatedSeries(geom, order)
    return result


# ---------------------------------------------------------------------------
# cycle <-> alternating cycle correspondence
# ---------------------------------------------------------------------------

def _alt_image_tokens(arc_seq: Tuple[int, ...], inv: np.ndarray, variant: int):
    """Alternating image of a reduced cycle.

    variant 0/1 for even length (invert odd/even positions); odd-length cycles
    have the single doubled image, built by traversing twice with alternating
    inversion.
    """
    ell = len(arc_seq)
    if ell % 2 == 0:
        arcs = [int(inv[a]) if (i % 2 == (1 - variant)) else int(a)
                for i, a in enumerate(arc_seq)]
        start_tshare = variant == 0
    else:
        arcs = [int(inv[arc_seq[i % ell]]) if i % 2 == 1 else int(arc_seq[i % ell])
                for i in range(2 * ell)]
        start_tshare = True
    k = len(arcs)
    tokens = []
    for i in range(k):
        odd = (i + 1) % 2 == 1
        share = T_SHARE if odd == start_tshare else O_SHARE
        tokens.append((arcs[i], share))
    return _min_rotation(tuple(tokens))


@dataclass
class CorrespondenceReport:
    max_len: int
    ok: bool
    pairs: List[dict] = field(default_factory=list)
    cycle_class_counts: Dict[int, int] = field(default_factory=dict)
    alt_class_counts: Dict[int, int] = field(default_factory=dict)
    detail: str = ""


def correspondence_check(g: Graph, max_len: int,
                         budget: Optional[int] = None) -> CorrespondenceReport:
    """Verify the pairing between prime reduced cycles and prime reduced
    alternating cycles of the symmetric digraph.

    ``max_len`` caps the alternating side: even cycle classes up to max_len
    must each yield two alternating classes of the same length, odd classes up
    to max_len//2 one class of doubled length, and together these must exhaust
    all alternating classes of length <= max_len.
    """
    budget = enumeration_budget(budget)
    d = symmetric_digraph(g)
    cyc = prime_classes(g, max_len, "reduced-cycle", budget)
    cyc = [c for c in cyc
           if (c.length % 2 == 0 and c.length <= max_len)
           or (c.length % 2 == 1 and 2 * c.length <= max_len)]
    alt = prime_classes(d, max_len, "reduced-alternating-cycle", budget)
    alt_index = {c.rep: c for c in alt}
    used = set()
    pairs = []
    ok = True
    detail = []
    for c in cyc:
        variants = (0, 1) if c.length % 2 == 0 else (0,)
        images = []
        for var in variants:
            img = _alt_image_tokens(c.rep, g.inv, var)
            images.append(img)
            if img not in alt_index:
                ok = False
                detail.append(f"image of {c.rep} is not a prime alternating class")
            elif img in used:
                ok = False
                detail.append(f"image of {c.rep} was already claimed")
            else:
                used.add(img)
        if len(set(images)) != len(images):
            ok = False
            detail.append(f"images of {c.rep} coincide")
        pairs.append({
            "cycle": list(c.rep),
            "length": c.length,
            "alternating_images": [list(map(list, img)) for img in images],
        })
    if len(used) != len(alt):
        ok = False
        detail.append(
            f"{len(alt) - len(used)} alternating classes have no preimage")
    report = CorrespondenceReport(
        max_len=max_len, ok=ok, pairs=pairs,
        cycle_class_counts=_count_by_length(cyc),
        alt_class_counts=_count_by_length(alt),
        detail="; ".join(detail))
    return report


def _count_by_length(classes):
    out: Dict[int, int] = {}
    for c in classes:
        out[c.length] = out.get(c.length, 0) + 1
    return out


# ---------------------------------------------------------------------------
# alternating walk count matrices and the resolvent identity
# ---------------------------------------------------------------------------

@dataclass
class WalkCountMatrices:
    """Counts of non-backtracking alternating walks per length.

    p[k][u,v] counts walks u -> v of length k starting with an out-edge,
    q[k] those starting with an in-edge; r(k) is the 2n x 2n block assembly
    (diagonal for even k, anti-diagonal for odd k).
    """

    n: int
    kmax: int
    p: List[np.ndarray]
    q: List[np.ndarray]

    def r(self, k: int) -> np.ndarray:
        zero = np.zeros((self.n, self.n), dtype=np.int64)
        if k % 2 == 0:
            return np.block([[self.p[k], zero], [zero, self.q[k]]])
        return np.block([[zero, self.p[k]], [self.q[k], zero]])


def nbtaw_matrices(d: Digraph, kmax: int, budget: Optional[int] = None
                   ) -> WalkCountMatrices:
    """Count matrices p_k, q_k for k = 0..kmax by direct walk enumeration."""
    budget = enumeration_budget(budget)
    byo_indptr, byo_arcs = d.arcs_by_origin()
    byt_indptr, byt_arcs = d.arcs_by_terminus()
    eye = np.eye(d.n, dtype=np.int64)
    if kmax == 0:
        return WalkCountMatrices(n=d.n, kmax=0, p=[eye], q=[eye.copy()])
    pcounts = _kernels.nbtaw_fill(d.origin, d.terminus, byo_indptr, byo_arcs,
                                  byt_indptr, byt_arcs, kmax, True, d.n, budget)
    if pcounts is None:
        raise BudgetExceededError(budget)
    qcounts = _kernels.nbtaw_fill(d.origin, d.terminus, byo_indptr, byo_arcs,
                                  byt_indptr, byt_arcs, kmax, False, d.n, budget)
    if qcounts is None:
        raise BudgetExceededError(budget)
    p = [eye] + [pcounts[k] for k in range(1, kmax + 1)]
    q = [eye.copy()] + [qcounts[k] for k in range(1, kmax + 1)]
    return WalkCountMatrices(n=d.n, kmax=kmax, p=p, q=q)


@dataclass
class ResolventReport:
    order: int
    residual: int

    @property
    def ok(self) -> bool:
        return self.residual == 0


def resolvent_identity_check(d: Digraph, order: int,
                             budget: Optional[int] = None) -> ResolventReport:
    """Check (sum_k t^k r_k) (I - t calA + t^2 (Delta - I)) = (1-t^2) I
    coefficientwise up to ``order``; the residual is the largest absolute
    integer mismatch (0 when the identity holds)."""
    mats = digraph_matrices(d)
    walks = nbtaw_matrices(d, order, budget)
    two_n = 2 * d.n
    eye = np.eye(two_n, dtype=np.int64)
    factor = {0: eye, 1: -mats.cal_a, 2: mats.delta - eye}
    residual = 0
    for j in range(order + 1):
        acc = np.zeros((two_n, two_n), dtype=np.int64)
        for i in range(max(0, j - 2), j + 1):
            acc += walks.r(i) @ factor[j - i]
        if j == 0:
            acc -= eye
        elif j == 2:
            acc += eye
        residual = max(residual, int(np.abs(acc).max()))
    return ResolventReport(order=order, residual=residual)
