"""Order computations by several independent methods, and the exhaustive
search over pairs of horizontal class transpositions."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import lcm

from .errors import InvalidArgument, NotHorizontal
from .graph import DEFAULT_BUDGET, OrderReport, product_order_graph
from .perm import cycle_decomposition, horizontal_product_perm
from .residue import ClassTransposition, ResidueClass, classes_disjoint

ALLOWED_ORDERS = frozenset({1, 2, 3, 4, 6, 12})
METHODS = ("finite", "graph", "trace")

# Pairs whose published order differs from the computed one.
KNOWN_DISCREPANCIES = {
    frozenset({"0(2),1(2)", "0(4),2(4)"}): {
        "published_order": 2,
        "computed_order": 4,
        "note": "listed as a witness for order 2; direct computation gives the 4-cycle (0,1,2,3) mod 4",
    },
}


def discrepancy_note(t1: ClassTransposition, t2: ClassTransposition) -> dict | None:
    return KNOWN_DISCREPANCIES.get(frozenset({str(t1), str(t2)}))


def finite_order(t1: ClassTransposition, t2: ClassTransposition) -> OrderReport:
    """Exact order of a horizontal product via its image in ``S_N``."""
    p = horizontal_product_perm([t1, t2])
    cs = cycle_decomposition(p)
    lengths = cs.lengths + [1] * len(cs.fixed)
    return OrderReport(
        t1, t2, "exact", lcm(1, *cs.lengths), sorted(lengths), [], 0, None, method="finite"
    )


def trace_order(
    t1: ClassTransposition,
    t2: ClassTransposition,
    budget: int = DEFAULT_BUDGET,
    window: int | None = None,
) -> OrderReport:
    """Follow orbits of ``x -> t2(t1(x))`` point by point.

    Horizontal pairs commute with translation by N = lcm of the moduli, so
    tracing ``[0, N)`` is exact.  Otherwise every ``x`` in ``[-window, window]``
    is traced for at most ``budget`` steps.
    """
    if t1.is_horizontal and t2.is_horizontal:
        points = range(lcm(t1.cell_a.modulus, t2.cell_a.modulus))
        window = None
    else:
        if window is None:
            window = max(1, budget // 10)
        points = range(-window, window + 1)
    seen: set[int] = set()
    lengths = []
    open_orbits = 0
    for x in points:
        if x in seen or not (t1.moves(x) or t2.moves(x)):
            continue
        orbit = [x]
        y = t2(t1(x))
        while y != x and len(orbit) < budget:
            orbit.append(y)
            y = t2(t1(y))
        seen.update(orbit)
        if y == x:
            lengths.append(len(orbit))
        else:
            open_orbits += 1
    partial = lcm(1, *lengths)
    if open_orbits:
        return OrderReport(
            t1, t2, "unknown", None, sorted(lengths), [], budget, window,
            method="trace", partial_lcm=partial,
        )
    if window is None or t1 == t2:
        status = "exact"
    else:
        status = "window-exact"
    return OrderReport(t1, t2, status, partial, sorted(lengths), [], budget, window, method="trace")


def compute_order(
    t1: ClassTransposition,
    t2: ClassTransposition,
    method: str,
    budget: int = DEFAULT_BUDGET,
    window: int | None = None,
) -> OrderReport:
    if method == "finite":
        if not (t1.is_horizontal and t2.is_horizontal):
            raise NotHorizontal("the finite method needs two horizontal transpositions")
        report = finite_order(t1, t2)
    elif method == "graph":
        report = product_order_graph(t1, t2, budget, window)
    elif method == "trace":
        report = trace_order(t1, t2, budget, window)
    else:
        raise InvalidArgument(f"unknown method {method!r}; choose from {METHODS}")
    note = discrepancy_note(t1, t2)
    if note is not None:
        report.notes.append(json.dumps(note, sort_keys=True))
    return report


def applicable_methods(t1: ClassTransposition, t2: ClassTransposition) -> tuple[str, ...]:
    if t1.is_horizontal and t2.is_horizontal:
        return METHODS
    return ("graph", "trace")


@dataclass
class CrossCheck:
    primary: OrderReport
    others: list[OrderReport]

    @property
    def certified(self) -> list[OrderReport]:
        return [r for r in [self.primary, *self.others] if r.order is not None]

    @property
    def agree(self) -> bool:
        return len({r.order for r in self.certified}) <= 1


def cross_checked_order(
    t1: ClassTransposition,
    t2: ClassTransposition,
    method: str | None = None,
    budget: int = DEFAULT_BUDGET,
    window: int | None = None,
) -> CrossCheck:
    """Run ``method`` (default: the cheapest exact one) and every other
    applicable method; disagreement among certified answers is reported
    through :attr:`CrossCheck.agree`."""
    methods = applicable_methods(t1, t2)
    if method is None:
        method = methods[0]
    primary = compute_order(t1, t2, method, budget, window)
    others = [compute_order(t1, t2, m, budget, window) for m in methods if m != method]
    return CrossCheck(primary, others)


def horizontal_transpositions(max_modulus: int) -> list[ClassTransposition]:
    """All horizontal class transpositions with modulus in ``[2, max_modulus]``,
    ordered by (modulus, residues)."""
    return [
        ClassTransposition(ResidueClass(r1, n), ResidueClass(r2, n))
        for n in range(2, max_modulus + 1)
        for r1, r2 in combinations(range(n), 2)
    ]


def supports_disjoint(t1: ClassTransposition, t2: ClassTransposition) -> bool:
    return all(
        classes_disjoint(x, y)
        for x in (t1.cell_a, t1.cell_b)
        for y in (t2.cell_a, t2.cell_b)
    )


def _witness_key(t1: ClassTransposition, t2: ClassTransposition):
    # Disjoint supports give the plainest order-2 witness (the factors commute);
    # otherwise prefer small moduli.
    m1, m2 = t1.cell_a.modulus, t2.cell_a.modulus
    return (
        not supports_disjoint(t1, t2),
        max(m1, m2),
        m1,
        m2,
        (t1.cell_a.residue, t1.cell_b.residue),
        (t2.cell_a.residue, t2.cell_b.residue),
    )


@dataclass(frozen=True)
class SearchRecord:
    t1: ClassTransposition
    t2: ClassTransposition
    order: int | None
    status: str
    method: str

    def to_row(self) -> list[str]:
        return [str(self.t1), str(self.t2), "" if self.order is None else str(self.order),
                self.status, self.method]

    def to_json(self) -> dict:
        return {
            "t1": str(self.t1),
            "t2": str(self.t2),
            "order": None if self.order is None else str(self.order),
            "status": self.status,
            "method": self.method,
        }


@dataclass
class SearchResult:
    max_modulus: int
    transpositions: int
    records: list[SearchRecord]
    witnesses: dict[int, tuple[ClassTransposition, ClassTransposition]] = field(default_factory=dict)

    @property
    def realized(self) -> list[int]:
        return sorted(self.witnesses)

    @property
    def violations(self) -> list[SearchRecord]:
        return [r for r in self.records if r.order not in ALLOWED_ORDERS]

    @property
    def discrepancies(self) -> list[dict]:
        out = []
        by_pair = {(str(r.t1), str(r.t2)): r for r in self.records}
        for pair, info in sorted(KNOWN_DISCREPANCIES.items(), key=lambda kv: sorted(kv[0])):
            a, b = sorted(pair)
            rec = by_pair.get((a, b)) or by_pair.get((b, a))
            if rec is not None:
                out.append({"t1": a, "t2": b, "computed_order": rec.order, **info})
        return out

    def summary(self) -> dict:
        return {
            "max_modulus": self.max_modulus,
            "transpositions": self.transpositions,
            "pairs": len(self.records),
            "realized_orders": self.realized,
            "witnesses": {
                str(o): [str(t1), str(t2)] for o, (t1, t2) in sorted(self.witnesses.items())
            },
            "allowed_orders": sorted(ALLOWED_ORDERS),
            "violations": [r.to_json() for r in self.violations],
            "discrepancies": self.discrepancies,
        }


def _orders_for(args) -> list[tuple[int, int, int]]:
    i_lo, i_hi, max_modulus = args
    ts = horizontal_transpositions(max_modulus)
    out = []
    for i in range(i_lo, i_hi):
        for j, t2 in enumerate(ts):
            p = horizontal_product_perm([ts[i], t2])
            out.append((i, j, lcm(1, *cycle_decomposition(p).lengths)))
    return out


def search_horizontal(max_modulus: int = 12, jobs: int = 1) -> SearchResult:
    """Exact orders of ``t1 * t2`` for every ordered pair of horizontal
    transpositions with moduli up to ``max_modulus``."""
    if max_modulus < 2:
        raise InvalidArgument("max_modulus must be >= 2")
    ts = horizontal_transpositions(max_modulus)
    if jobs <= 1:
        triples = _orders_for((0, len(ts), max_modulus))
    else:
        step = -(-len(ts) // jobs)
        chunks = [(lo, min(lo + step, len(ts)), max_modulus) for lo in range(0, len(ts), step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            triples = [x for part in pool.map(_orders_for, chunks) for x in part]
    triples.sort()
    records = []
    witnesses: dict[int, tuple] = {}
    for i, j, order in triples:
        t1, t2 = ts[i], ts[j]
        records.append(SearchRecord(t1, t2, order, "exact", "finite"))
        best = witnesses.get(order)
        if best is None or _witness_key(t1, t2) < _witness_key(*best):
            witnesses[order] = (t1, t2)
    return SearchResult(max_modulus, len(ts), records, witnesses)


CSV_HEADER = ["t1", "t2", "order", "status", "method"]


def records_csv(records: list[SearchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(r.to_row())
    return buf.getvalue()


def result_json(result: SearchResult) -> str:
    doc = {"summary": result.summary(), "records": [r.to_json() for r in result.records]}
    return json.dumps(doc, indent=1) + "\n"
