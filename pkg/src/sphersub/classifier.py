"""Decision procedures for spherical-subgroup candidates.

Everything here reduces to exact integer arithmetic:

* the flag-dimension inequality dim H >= dim G/B,
* upper bounds on the dimension of the defining module of an irreducible
  candidate, compared in squared form so no floating point ever decides,
* the orbit-size filter selecting the fundamental weights whose Weyl orbit
  is small enough,
* the resulting verdict grid for irreducible candidates in classical groups,
* dimension identities and audit chains for block subgroups
  (Spin(7) x Sp(2n-8) and G2 x Sp(2n-6) inside Sp(2n)),
* the orthogonality-rank computation for generic Borel stabilizers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .groups import (
    CharCondition,
    Factor,
    GroupDescriptor,
    descriptor,
    parse_linexpr,
    so,
    sp,
    spin,
    type_atom,
)
from .report import AuditReport
from .rootsys import SimpleType, dim_group
from .weights import Characteristic, Weight, fundamental, weyl_dim, weyl_orbit_size

# ---------------------------------------------------------------------------
# the inequality dim H >= dim G/B


@dataclass(frozen=True)
class Eq2Result:
    passes: bool
    dim_h: int
    dim_flag_g: int
    dim_g: int


def check_eq2(g: GroupDescriptor, h: GroupDescriptor) -> Eq2Result:
    """Necessary condition for H to be spherical in G: dim H >= dim G/B."""
    flag = g.dim_flag
    return Eq2Result(h.dim >= flag, h.dim, flag, g.dim)


# ---------------------------------------------------------------------------
# exact bound predicates

G_FAMILIES = ("SL", "SO_odd", "SO_even", "Sp")


def dimv_allowed(family: str, dim_h: int, dim_v: int) -> bool:
    """Whether dim V is within the flag-dimension bound for G(V), exactly.

    Equivalent to dim H >= dim G(V)/B with G(V) the classical group of the
    family on a dim_v-dimensional module; stated in squared form:

        SL:       (2 dimV - 1)^2 <= 8 dimH + 1
        SO odd:   (dimV - 1)^2   <= 4 dimH
        SO even:  (dimV - 1)^2   <= 4 dimH + 1
        Sp:       dimV^2         <= 4 dimH
    """
    if family == "SL":
        return (2 * dim_v - 1) ** 2 <= 8 * dim_h + 1
    if family == "SO_odd":
        return (dim_v - 1) ** 2 <= 4 * dim_h
    if family == "SO_even":
        return (dim_v - 1) ** 2 <= 4 * dim_h + 1
    if family == "Sp":
        return dim_v**2 <= 4 * dim_h
    raise ValueError(f"unknown family {family!r}")


def dimv_max(family: str, dim_h: int) -> int:
    """Largest module dimension the bound allows for the family."""
    if family == "SL":
        return (1 + isqrt(8 * dim_h + 1)) // 2
    if family == "SO_odd":
        return 1 + isqrt(4 * dim_h)
    if family == "SO_even":
        return 1 + isqrt(4 * dim_h + 1)
    if family == "Sp":
        return isqrt(4 * dim_h)
    raise ValueError(f"unknown family {family!r}")


def orbit_allowed(dim_h: int, orbit: int) -> bool:
    """Weyl-orbit filter: |W.w| <= 2 sqrt(dimH + 1/4) + 1, in squared form."""
    return (orbit - 1) ** 2 <= 4 * dim_h + 1


def orbit_max(dim_h: int) -> int:
    return 1 + isqrt(4 * dim_h + 1)


def classical_dim(family: str, dim_v: int) -> int:
    """dim of the classical group of the family acting on a dim_v module."""
    if family == "SL":
        return dim_v * dim_v - 1
    if family in ("SO_odd", "SO_even"):
        return dim_v * (dim_v - 1) // 2
    if family == "Sp":
        return dim_v * (dim_v + 1) // 2
    raise ValueError(f"unknown family {family!r}")


def so_family(dim_v: int) -> str:
    return "SO_odd" if dim_v % 2 else "SO_even"


# ---------------------------------------------------------------------------
# orbit-size filter for fundamental weights


def lemma6_filter(t: SimpleType) -> tuple[tuple[int, int], ...]:
    """Fundamental weights of t within the orbit bound, as (index, orbit)."""
    d = dim_group(t)
    out = []
    for i in range(1, t.rank + 1):
        orbit = weyl_orbit_size(fundamental(t, i))
        if orbit_allowed(d, orbit):
            out.append((i, orbit))
    return tuple(out)


def _canonical_types(max_rank: int):
    types = []
    for n in range(1, max_rank + 1):
        types.append(SimpleType("A", n))
    for n in range(2, max_rank + 1):
        types.append(SimpleType("B", n))
    for n in range(3, max_rank + 1):
        types.append(SimpleType("C", n))
    for n in range(4, max_rank + 1):
        types.append(SimpleType("D", n))
    for n in (6, 7, 8):
        if n <= max_rank:
            types.append(SimpleType("E", n))
    if max_rank >= 4:
        types.append(SimpleType("F", 4))
    if max_rank >= 2:
        types.append(SimpleType("G", 2))
    return types


def reproduce_table4(max_rank: int) -> dict[SimpleType, tuple[int, ...]]:
    """Orbit filter applied to every canonical simple type up to max_rank."""
    if max_rank < 2:
        raise ValueError("max_rank must be >= 2")
    return {t: tuple(i for i, _ in lemma6_filter(t)) for t in _canonical_types(max_rank)}


def _expected_filter_indices(t: SimpleType) -> tuple[int, ...]:
    """The recorded filter table (canonical spellings; B2 carries the C2 row)."""
    fam, n = t.family, t.rank
    if fam == "A":
        if n <= 4:
            return tuple(range(1, n + 1))
        return (1, n)
    if fam == "B":
        if n == 2:
            return (1, 2)
        return (1, 3) if n == 3 else (1,)
    if fam == "C":
        return (1, 3) if n == 3 else (1,)
    if fam == "D":
        return (1, 3, 4) if n == 4 else (1,)
    if fam == "G":
        return (1, 2)
    return ()


def audit_eq4(max_rank: int = 8, stable_rank: int = 30) -> AuditReport:
    """Recompute the fundamental-weight filter table and family stabilization."""
    report = AuditReport("eq4")
    computed = reproduce_table4(max_rank)
    for t, indices in sorted(computed.items(), key=lambda kv: str(kv[0])):
        expected = _expected_filter_indices(t)
        report.add(
            f"eq4.table.{t}",
            "orbit-filter-table",
            {"type": str(t), "computed": list(indices), "expected": list(expected)},
            indices == expected,
        )
    stable = {"A": (5, (1, -1)), "B": (4, (1,)), "C": (4, (1,)), "D": (5, (1,))}
    for fam, (start, pattern) in sorted(stable.items()):
        for n in range(start, stable_rank + 1):
            t = SimpleType(fam, n)
            expected = tuple(n if i == -1 else i for i in pattern)
            got = tuple(i for i, _ in lemma6_filter(t))
            report.add(
                f"eq4.stable.{fam}{n:02d}",
                "orbit-filter-stabilization",
                {"type": str(t), "computed": list(got), "expected": list(expected)},
                got == expected,
            )
    return report


# ---------------------------------------------------------------------------
# the verdict grid for irreducible candidates


@dataclass(frozen=True)
class Cell:
    g_column: str  # SL | SO | Sp (parity of dimv picks SO_odd/SO_even)
    char: str  # characteristic condition token for this embedding
    dimv: str  # linear expression in n (family rows) or an integer literal
    realized: str = ""  # label template, {v} substituted
    note: str = ""


@dataclass(frozen=True)
class GridRow:
    key: str
    label: str
    char: str  # row-level characteristic condition
    weight_desc: str
    n_min: int = 0  # family parameter start; 0 for fixed rows
    family: str = ""  # H family for parameterized rows
    rank_expr: str = ""  # H rank as function of n
    fixed_type: str = ""  # H type for fixed rows
    weight: tuple[tuple[int, int], ...] = ((1, 1),)  # (fund index, coefficient)
    cells: tuple[Cell, ...] = ()


GRID_ROWS: tuple[GridRow, ...] = (
    GridRow(
        "r01", "A_{n-1} (n>=2)", "any", "w1", n_min=2, family="A", rank_expr="n-1",
        cells=(Cell("SL", "any", "n", "SL({v})"),),
    ),
    GridRow(
        "r02", "B_n (n>=3)", "p!=2", "w1", n_min=3, family="B", rank_expr="n",
        cells=(
            Cell("SL", "any", "2n+1", "SO({v})"),
            Cell("SO", "any", "2n+1", "SO({v})"),
        ),
    ),
    GridRow(
        "r03", "C_n (n>=2)", "any", "w1", n_min=2, family="C", rank_expr="n",
        cells=(
            Cell("SL", "any", "2n", "Sp({v})"),
            Cell("Sp", "any", "2n", "Sp({v})"),
        ),
    ),
    GridRow(
        "r04", "D_n (n>=4)", "any", "w1", n_min=4, family="D", rank_expr="n",
        cells=(
            Cell("SL", "any", "2n", "SO({v})"),
            Cell("SO", "any", "2n", "SO({v})"),
            Cell("Sp", "p=2", "2n", "SO({v})"),
        ),
    ),
    GridRow(
        "r05", "A1", "p!=2", "2w1", fixed_type="A1", weight=((1, 2),),
        cells=(
            Cell("SL", "any", "3", "SO(3)"),
            Cell("SO", "any", "3", "SO(3)"),
        ),
    ),
    GridRow(
        "r06", "A1", "p!=2,3", "3w1", fixed_type="A1", weight=((1, 3),),
        cells=(
            Cell("SL", "any", "4"),
            Cell("Sp", "any", "4"),
        ),
    ),
    GridRow(
        "r07", "A3", "any", "w2", fixed_type="A3", weight=((2, 1),),
        cells=(
            Cell("SL", "any", "6", "SO(6)"),
            Cell("SO", "any", "6", "SO(6)"),
            Cell("Sp", "p=2", "6", "SO(6)"),
        ),
    ),
    GridRow(
        "r08", "A4", "any", "w2", fixed_type="A4", weight=((2, 1),),
        cells=(Cell("SL", "any", "10"),),
    ),
    GridRow(
        "r09", "B3", "any", "w3", fixed_type="B3", weight=((3, 1),),
        cells=(
            Cell("SL", "any", "8"),
            Cell("SO", "any", "8", "Spin(7)"),
            Cell("Sp", "p=2", "8", "Spin(7)"),
        ),
    ),
    GridRow(
        "r10", "C2", "p!=2", "w2", fixed_type="C2", weight=((2, 1),),
        cells=(
            Cell("SL", "any", "5", "SO(5)"),
            Cell("SO", "any", "5", "SO(5)"),
        ),
    ),
    GridRow(
        "r11", "C3", "p!=2", "w3", fixed_type="C3", weight=((3, 1),),
        cells=(
            Cell("SL", "any", "14"),
            Cell("Sp", "any", "14"),
        ),
    ),
    GridRow(
        "r12", "G2", "any", "w1", fixed_type="G2", weight=((1, 1),),
        cells=(
            Cell("SL", "p!=2", "7", "G2"),
            Cell("SL", "p=2", "6", "G2", note="reduced module in characteristic 2"),
            Cell("SO", "p!=2", "7", "G2"),
            Cell("Sp", "p=2", "6", "G2", note="reduced module in characteristic 2"),
        ),
    ),
    GridRow(
        "r13", "G2", "p!=3", "w2", fixed_type="G2", weight=((2, 1),),
        cells=(
            Cell("SL", "any", "14"),
            Cell("SO", "p!=2", "14"),
            Cell("Sp", "p=2", "14"),
        ),
    ),
)

# Expected verdict symbols, row key -> column -> symbol.
#   ("-",)                          H is not a subgroup of G
#   ("=",)                          H equals G
#   ("x",)                          subgroup, but the flag bound fails
#   ("incl", H, G, char-token)      proper spherical inclusion
EXPECTED_GRID: dict[str, dict[str, tuple]] = {
    "r01": {"SL": ("=",), "SO": ("-",), "Sp": ("-",)},
    "r02": {"SL": ("incl", "SO(2n+1)", "SL(2n+1)", "any"), "SO": ("=",), "Sp": ("-",)},
    "r03": {"SL": ("incl", "Sp(2n)", "SL(2n)", "any"), "SO": ("-",), "Sp": ("=",)},
    "r04": {
        "SL": ("incl", "SO(2n)", "SL(2n)", "any"),
        "SO": ("=",),
        "Sp": ("incl", "SO(2n)", "Sp(2n)", "p=2"),
    },
    "r05": {"SL": ("incl", "SO(3)", "SL(3)", "any"), "SO": ("=",), "Sp": ("-",)},
    "r06": {"SL": ("x",), "SO": ("-",), "Sp": ("x",)},
    "r07": {
        "SL": ("incl", "SO(6)", "SL(6)", "any"),
        "SO": ("=",),
        "Sp": ("incl", "SO(6)", "Sp(6)", "p=2"),
    },
    "r08": {"SL": ("x",), "SO": ("-",), "Sp": ("-",)},
    "r09": {
        "SL": ("x",),
        "SO": ("incl", "Spin(7)", "SO(8)", "any"),
        "Sp": ("incl", "Spin(7)", "Sp(8)", "p=2"),
    },
    "r10": {"SL": ("incl", "SO(5)", "SL(5)", "any"), "SO": ("=",), "Sp": ("-",)},
    "r11": {"SL": ("x",), "SO": ("-",), "Sp": ("x",)},
    "r12": {
        "SL": ("x",),
        "SO": ("incl", "G2", "SO(7)", "p!=2"),
        "Sp": ("incl", "G2", "Sp(6)", "p=2"),
    },
    "r13": {"SL": ("x",), "SO": ("x",), "Sp": ("x",)},
}

GRID_COLUMNS = ("SL", "SO", "Sp")

# representations that factor through a smaller case and are therefore
# omitted from the candidate list in the indicated characteristic
FACTORING_EXCLUSIONS: tuple[tuple[str, tuple[tuple[int, int], ...], int, str], ...] = (
    ("C2", ((2, 1),), 2, "C2 w1"),
    ("C3", ((3, 1),), 2, "B3 w3"),
    ("G2", ((2, 1),), 3, "G2 w1"),
)


def _row_h_type(row: GridRow, n: int = 0) -> SimpleType:
    if row.fixed_type:
        return SimpleType.parse(row.fixed_type)
    rank = parse_linexpr(row.rank_expr).value({"n": n})
    return SimpleType(row.family, rank)


def _row_weight(row: GridRow, t: SimpleType) -> Weight:
    coeffs = [0] * t.rank
    for idx, mult in row.weight:
        coeffs[idx - 1] = mult
    return Weight(t, tuple(coeffs))


def _cell_verdict(row: GridRow, cell: Cell, n: int) -> tuple[str, int, int]:
    """(kind, dim_h, dim_v) for one embedding at one family parameter."""
    t = _row_h_type(row, n)
    dim_h = dim_group(t)
    dim_v = parse_linexpr(cell.dimv).value({"n": n})
    family = so_family(dim_v) if cell.g_column == "SO" else cell.g_column
    if dim_h == classical_dim(family, dim_v):
        return "=", dim_h, dim_v
    if dimv_allowed(family, dim_h, dim_v):
        return "incl", dim_h, dim_v
    return "x", dim_h, dim_v


def grid_symbol(row: GridRow, column: str, sweep_max: int = 40) -> tuple:
    """Aggregate verdict symbol of one grid cell, swept over the family."""
    cells = [c for c in row.cells if c.g_column == column]
    if not cells:
        return ("-",)
    ns = range(row.n_min, sweep_max + 1) if row.n_min else (0,)
    kinds = set()
    for cell in cells:
        for n in ns:
            kind, _, _ = _cell_verdict(row, cell, n)
            kinds.add(kind)
    if len(kinds) != 1:
        raise AssertionError(f"verdict not uniform in {row.key}/{column}: {kinds}")
    kind = kinds.pop()
    if kind in ("=", "x"):
        return (kind,)
    # proper inclusion: the printed char token is the one attached to the
    # admissible embedding (restrictions at row level stay implicit)
    incl_cells = [c for c in cells if c.realized]
    cell = incl_cells[0] if incl_cells else cells[0]
    v_text = cell.dimv if row.n_min else str(parse_linexpr(cell.dimv).value({}))
    h_label = cell.realized.replace("{v}", v_text)
    g_name = {"SL": "SL", "SO": "SO", "Sp": "Sp"}[column]
    return ("incl", h_label, f"{g_name}({v_text})", cell.char)


def audit_grid(sweep_max: int = 40, table1_size_cap: int = 24) -> AuditReport:
    """Reproduce the 13 x 3 verdict grid and its consolidated inclusion table."""
    report = AuditReport("grid")
    for row in GRID_ROWS:
        for column in GRID_COLUMNS:
            computed = grid_symbol(row, column, sweep_max)
            expected = EXPECTED_GRID[row.key][column]
            report.add(
                f"grid.{row.key}.{column}",
                "irreducible-verdict-grid",
                {
                    "row": f"{row.label} {row.weight_desc} [{row.char}]",
                    "computed": list(computed),
                    "expected": list(expected),
                },
                computed == expected,
            )
    _audit_grid_dims(report)
    _audit_table1_consolidation(report, table1_size_cap)
    for fam in _residual_candidate_families(4):
        report.add(
            f"grid.residual.{fam['claim']}",
            "residual-candidates",
            fam,
            None if fam["status"] == "needs-char-p-data" else True,
        )
    return report


def _audit_grid_dims(report: AuditReport) -> None:
    """Check the recorded module dimensions against the Weyl dimension formula."""
    for row in GRID_ROWS:
        ns = range(row.n_min, row.n_min + 4) if row.n_min else (0,)
        for cell in row.cells:
            seen = set()
            for n in ns:
                t = _row_h_type(row, n)
                w = _row_weight(row, t)
                expected_v = parse_linexpr(cell.dimv).value({"n": n})
                wd = weyl_dim(w)
                if cell.note:
                    ok = wd - 1 == expected_v  # recorded drop for the reduced module
                else:
                    ok = wd == expected_v
                key = (row.key, cell.g_column, cell.char, n)
                if key in seen:
                    continue
                seen.add(key)
                report.add(
                    f"grid.dimv.{row.key}.{cell.g_column}.{cell.char}.n{n:02d}",
                    "module-dimensions",
                    {
                        "H": str(t),
                        "weight": str(w),
                        "weyl_dim": wd,
                        "recorded_dimv": expected_v,
                        "note": cell.note,
                    },
                    ok,
                )


# the irreducible-pair table that the grid consolidates into; rows are
# (H label template, G family, size expr, n range, char token, origin)
_TABLE1_IRRED = (
    ("SO({v})", "SL", "v", (3, None), "parity", "grid"),
    ("Sp({v})", "SL", "v", (4, None), "any", "grid", 2),  # v = 2n, n >= 2
    ("G2", "SO", "7", None, "p!=2", "grid"),
    ("DeltaSL2(q)", "SO", "4", None, "q>1", "recorded"),
    ("Spin(7)", "SO", "8", None, "any", "grid"),
    ("Sp(4)(x)Sp(2)", "SO", "8", None, "any", "recorded"),
    ("SO({v})", "Sp", "v", (4, None), "p=2", "grid", 2),  # v = 2n, n >= 2
    ("G2", "Sp", "6", None, "p=2", "grid"),
    ("Spin(7)", "Sp", "8", None, "p=2", "grid"),
)


def _grid_inclusion_instances(size_cap: int) -> set[tuple[str, str, str]]:
    """Concrete (H, G, char) inclusion instances generated by the grid rows."""
    out = set()
    for row in GRID_ROWS:
        ns = range(row.n_min, size_cap + 1) if row.n_min else (0,)
        for cell in row.cells:
            for n in ns:
                kind, _, dim_v = _cell_verdict(row, cell, n)
                if kind != "incl" or not cell.realized or dim_v > size_cap:
                    continue
                char = cell.char
                if char == "any" and row.char != "any":
                    char = row.char
                h = cell.realized.replace("{v}", str(dim_v))
                out.add((h, f"{cell.g_column}({dim_v})", char))
    # recorded non-simple irreducible cases and the Frobenius-twisted family
    out.add(("SO(4)", "SL(4)", "any"))
    out.add(("SO(4)", "Sp(4)", "p=2"))
    out.add(("Sp(4)(x)Sp(2)", "SO(8)", "any"))
    out.add(("DeltaSL2(q)", "SO(4)", "q>1"))
    return out


def _table1_instances(size_cap: int) -> set[tuple[str, str, str]]:
    out = set()
    for spec in _TABLE1_IRRED:
        h_tpl, g_col, v_expr, vrange, char, _origin = spec[:6]
        step = spec[6] if len(spec) > 6 else 1
        if vrange is None:
            vs = [int(v_expr)]
        else:
            lo = vrange[0]
            vs = [v for v in range(lo, size_cap + 1) if (v - lo) % step == 0]
        for v in vs:
            tok = char
            if char == "parity":
                tok = "p!=2" if v % 2 else "any"
            out.add((h_tpl.replace("{v}", str(v)), f"{g_col}({v})", tok))
    return out


def _audit_table1_consolidation(report: AuditReport, size_cap: int) -> None:
    computed = _grid_inclusion_instances(size_cap)
    expected = _table1_instances(size_cap)
    missing = sorted(expected - computed)
    extra = sorted(computed - expected)
    report.add(
        "grid.table1.consolidation",
        "irreducible-pair-table",
        {
            "size_cap": size_cap,
            "instances": len(expected),
            "missing": [list(x) for x in missing],
            "extra": [list(x) for x in extra],
        },
        not missing and not extra,
    )


# ---------------------------------------------------------------------------
# concrete candidate enumeration


@dataclass(frozen=True)
class CandidatePair:
    h: SimpleType
    omega: Weight
    g_family: str  # SL | SO_odd | SO_even | Sp
    p_constraint: str
    verdict: str  # equals_G | not_subgroup | not_spherical_by_eq2 | spherical_candidate
    dim_v: int = 0
    realized: str = ""


@dataclass(frozen=True)
class ExcludedPair:
    h: SimpleType
    omega: Weight
    reason: str


_VERDICT_NAME = {"=": "equals_G", "incl": "spherical_candidate", "x": "not_spherical_by_eq2"}

def _reduce_by_automorphism(t: SimpleType, index: int) -> int:
    # the A_n outer automorphism swaps w_i and w_{n+1-i}; triality permutes
    # the three 8-dimensional D4 weights
    if t.family == "A" and t.rank >= 2:
        return min(index, t.rank + 1 - index)
    if t.family == "D" and t.rank == 4 and index in (3, 4):
        return 1
    return index




def _match_row(t: SimpleType, weight_pairs: tuple[tuple[int, int], ...]) -> GridRow | None:
    for row in GRID_ROWS:
        if row.fixed_type:
            if SimpleType.parse(row.fixed_type) == t and row.weight == weight_pairs:
                return row
        elif weight_pairs == ((1, 1),) and row.family == t.family:
            expr = parse_linexpr(row.rank_expr)
            # invert rank = n - 1 or rank = n
            n = t.rank + (1 if row.rank_expr == "n-1" else 0)
            if n >= row.n_min and expr.value({"n": n}) == t.rank:
                return row
    return None


def enumerate_irreducible_candidates(
    p: Characteristic, max_rank: int = 8
) -> tuple[list[CandidatePair], list[ExcludedPair]]:
    """Concrete candidate verdicts at a fixed characteristic.

    Candidates are the orbit-filtered fundamental weights of every canonical
    simple type up to max_rank plus the two exceptional A1 weights, reduced
    modulo diagram automorphisms, minus the representations that factor
    through a smaller case at this characteristic.
    """
    pairs: list[CandidatePair] = []
    excluded: list[ExcludedPair] = []
    seen = set()
    candidates: list[tuple[SimpleType, tuple[tuple[int, int], ...]]] = []
    for t in _canonical_types(max_rank):
        for index, _orbit in lemma6_filter(t):
            index = _reduce_by_automorphism(t, index)
            tt = t
            if t == SimpleType("B", 2):
                # the rank-2 symplectic group is tabulated in its C2 labeling,
                # which swaps the two fundamental weights
                tt, index = SimpleType("C", 2), 3 - index
            key = (tt, ((index, 1),))
            if key not in seen:
                seen.add(key)
                candidates.append(key)
    a1 = SimpleType("A", 1)
    for mult in (2, 3):
        candidates.append((a1, ((1, mult),)))

    for t, weight_pairs in candidates:
        row = _match_row(t, weight_pairs)
        if row is None:
            continue  # covered by the residual-candidate report
        w = _row_weight(row, t)
        for fixed, pairs_spec, bad_p, target in FACTORING_EXCLUSIONS:
            if row.fixed_type == fixed and row.weight == pairs_spec and p.value == bad_p:
                excluded.append(ExcludedPair(t, w, f"factors through {target} at p={bad_p}"))
                break
        else:
            row_char = CharCondition(row.char)
            if not row_char.matches(p):
                excluded.append(ExcludedPair(t, w, f"outside row constraint {row.char}"))
                continue
            n = 0
            if row.n_min:
                n = t.rank + (1 if row.rank_expr == "n-1" else 0)
            for column in GRID_COLUMNS:
                cells = [
                    c
                    for c in row.cells
                    if c.g_column == column and CharCondition(c.char).matches(p)
                ]
                if not cells:
                    pairs.append(CandidatePair(t, w, column, str(p.value), "not_subgroup"))
                    continue
                cell = cells[0]
                kind, _dim_h, dim_v = _cell_verdict(row, cell, n)
                family = so_family(dim_v) if column == "SO" else column
                realized = ""
                if kind == "incl":
                    realized = f"{cell.realized.replace('{v}', str(dim_v))} in {column}({dim_v})"
                pairs.append(
                    CandidatePair(
                        t, w, family, str(p.value), _VERDICT_NAME[kind], dim_v, realized
                    )
                )
    return pairs, excluded


def _residual_candidate_families(max_rank: int = 4) -> list[dict]:
    """Non-fundamental candidate families beyond the two explicit A1 cases.

    The orbit filter is a valid lower bound on any module dimension, so
    families it kills are settled exactly.  Survivors other than the A1
    family would need irreducible dimensions in positive characteristic,
    which are not recomputed here: they are flagged, not decided.
    """
    out = []
    for t in _canonical_types(max_rank):
        listed = [i for i, _ in lemma6_filter(t)]
        if not listed:
            continue
        d = dim_group(t)
        supports = []
        for mask in range(1, 1 << len(listed)):
            sup = tuple(listed[i] for i in range(len(listed)) if mask >> i & 1)
            supports.append(sup)
        for sup in supports:
            coeffs = [0] * t.rank
            for i in sup:
                coeffs[i - 1] = 2 if len(sup) == 1 else 1
            rep = Weight(t, tuple(coeffs))
            orbit = weyl_orbit_size(rep)
            claim = f"{t}.{'-'.join(map(str, sup))}"
            base = {
                "claim": claim,
                "type": str(t),
                "support": list(sup),
                "min_weight": str(rep),
                "orbit": orbit,
                "orbit_cap": orbit_max(d),
            }
            if not orbit_allowed(d, orbit):
                out.append({**base, "status": "excluded-by-orbit-bound"})
            elif t == SimpleType("A", 1):
                # coefficients 2 and 3 are explicit grid rows; a coefficient
                # a >= 4 needs p > a, where the module dimension is exactly
                # a + 1 and already exceeds every family bound at dim H = 3
                out.append(
                    {
                        **base,
                        "status": "resolved-exactly",
                        "detail": "aw1 with a>=4 has dimension a+1 > every bound; a=2,3 are grid rows",
                    }
                )
            else:
                out.append({**base, "status": "needs-char-p-data"})
    out.sort(key=lambda f: f["claim"])
    return out


def residual_candidate_families(max_rank: int = 4) -> list[dict]:
    return _residual_candidate_families(max_rank)


# ---------------------------------------------------------------------------
# tensor-product families


@dataclass(frozen=True)
class TensorFamily:
    key: str
    label: str
    h_factors: tuple[str, str]  # factor kinds
    g_kind: str
    valid: str  # constraint note
    survivors: tuple[tuple[int, int], ...]


TENSOR_FAMILIES: tuple[TensorFamily, ...] = (
    TensorFamily("SLxSL", "SL(m)(x)SL(n) in SL(mn)", ("SL", "SL"), "SL", "m>=n>=2", ((2, 2),)),
    TensorFamily("SOxSO", "SO(m)(x)SO(n) in SO(mn)", ("SO", "SO"), "SO", "m>=n>=2", ((2, 2),)),
    TensorFamily(
        "SpxSp", "Sp(m)(x)Sp(n) in SO(mn)", ("Sp", "Sp"), "SO", "m>=n>=2 even", ((2, 2), (4, 2))
    ),
    TensorFamily(
        "SpxSO", "Sp(m)(x)SO(n) in Sp(mn)", ("Sp", "SO"), "Sp", "m,n>=2, m even", ((2, 2),)
    ),
)


def _tensor_members(fam: TensorFamily, sweep: int):
    for m in range(2, sweep + 1):
        for n in range(2, sweep + 1):
            if fam.key in ("SLxSL", "SOxSO", "SpxSp") and m < n:
                continue
            if fam.key in ("SpxSp",) and (m % 2 or n % 2):
                continue
            if fam.key == "SpxSO" and m % 2:
                continue
            yield m, n


def tensor_case_audit(sweep: int = 40) -> AuditReport:
    """Flag-bound sweep over the four tensor families: survivors pass, others fail."""
    report = AuditReport("tensor")
    for fam in TENSOR_FAMILIES:
        bad = []
        checked = 0
        for m, n in _tensor_members(fam, sweep):
            h = descriptor(_factor(fam.h_factors[0], m), _factor(fam.h_factors[1], n))
            g = descriptor(_factor(fam.g_kind, m * n))
            res = check_eq2(g, h)
            expected_pass = (m, n) in fam.survivors
            checked += 1
            if res.passes != expected_pass:
                bad.append([m, n, res.dim_h, res.dim_flag_g])
        report.add(
            f"tensor.{fam.key}.sweep",
            "tensor-product-families",
            {"family": fam.label, "checked": checked, "mismatches": bad, "sweep": sweep},
            not bad,
        )
        for m, n in fam.survivors:
            h = descriptor(_factor(fam.h_factors[0], m), _factor(fam.h_factors[1], n))
            g = descriptor(_factor(fam.g_kind, m * n))
            res = check_eq2(g, h)
            report.add(
                f"tensor.{fam.key}.survivor.{m}x{n}",
                "tensor-product-families",
                {
                    "pair": f"{fam.h_factors[0]}({m})(x){fam.h_factors[1]}({n}) in {fam.g_kind}({m * n})",
                    "dim_h": res.dim_h,
                    "dim_flag_g": res.dim_flag_g,
                    "equals_g": res.dim_h == res.dim_g,
                },
                res.passes,
            )
    return report


def _factor(kind: str, size: int) -> Factor:
    return Factor(kind, size)


# ---------------------------------------------------------------------------
# block-subgroup dimension identities


def sosp2_identity_check(n_max: int = 200) -> AuditReport:
    """Both closed-form identities behind the block-subgroup dimension bound.

    SO form:  (dim SO(n) - rk SO(n))/2 + (dim SO(n-2m) + rk SO(n-2m))/2
              - dim SO(n-m)  =  m(m-1)/2           for all 1 <= m, 2m <= n
    Sp form:  n^2 + (n-2m)(n-2m+1) - (n-m)(2n-2m+1) = m(2m-1)
    """
    if n_max < 4:
        raise ValueError("n_max must be >= 4")
    report = AuditReport("sosp2")
    bad_so = []
    bad_sp = []
    checked = 0
    for n in range(2, n_max + 1):
        for m in range(1, n // 2 + 1):
            checked += 1
            lhs = (
                Fraction(so(n).dim - so(n).rank, 2)
                + Fraction(so(n - 2 * m).dim + so(n - 2 * m).rank, 2)
                - so(n - m).dim
            )
            if lhs != Fraction(m * (m - 1), 2):
                bad_so.append([n, m, str(lhs)])
            lhs_sp = n * n + (n - 2 * m) * (n - 2 * m + 1) - (n - m) * (2 * n - 2 * m + 1)
            if lhs_sp != m * (2 * m - 1):
                bad_sp.append([n, m, lhs_sp])
    report.add(
        "sosp2.so-form",
        "block-subgroup-identities",
        {"checked": checked, "mismatches": bad_so, "n_max": n_max},
        not bad_so,
    )
    report.add(
        "sosp2.sp-form",
        "block-subgroup-identities",
        {"checked": checked, "mismatches": bad_sp, "n_max": n_max},
        not bad_sp,
    )
    # boundary case 2m = n: the Sp-form right side is dim SO(2m)
    bad_edge = [
        [m] for m in range(1, n_max // 2 + 1) if m * (2 * m - 1) != so(2 * m).dim
    ]
    report.add(
        "sosp2.sp-edge",
        "block-subgroup-identities",
        {"mismatches": bad_edge},
        not bad_edge,
    )
    return report


def spin7_audit(n_max: int = 40) -> AuditReport:
    """Spin(7) x Sp(2n-8) inside Sp(2n) is never spherical for n >= 5."""
    report = AuditReport("spin7")
    for n in (5, 6, 7):
        h = descriptor(spin(7), sp(2 * n - 8))
        g = descriptor(sp(2 * n))
        res = check_eq2(g, h)
        report.add(
            f"spin7.eq2.n{n:02d}",
            "spin-factor-chain",
            {"n": n, "dim_h": res.dim_h, "dim_flag_g": res.dim_flag_g},
            not res.passes,
        )
    report.add(
        "spin7.threshold",
        "spin-factor-chain",
        {"dim_spin7": spin(7).dim, "dim_so8": so(8).dim, "m": 4},
        spin(7).dim < so(8).dim and so(8).dim == 4 * (2 * 4 - 1),
    )
    for n in range(8, n_max + 1):
        report.add(
            f"spin7.block.n{n:02d}",
            "spin-factor-chain",
            {"n": n, "premise_2m_le_n": 8 <= n, "dim_spin7": 21, "required": 28},
            None,
        )
    return report


@dataclass(frozen=True)
class WeightLatticeSpan:
    type: SimpleType
    generators: tuple[tuple[int, ...], ...]  # integer vectors, fundamental basis

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.type.rank:
                raise ValueError("generator length must equal the rank")
            if not any(g):
                raise ValueError("generators must be nonzero")


@dataclass(frozen=True)
class GenstabResult:
    s0: tuple[int, ...]  # 1-based simple roots orthogonal to every generator
    torus_dim_bound: int  # rank minus the rank of the generator span


def _int_matrix_rank(rows: tuple[tuple[int, ...], ...]) -> int:
    mat = [list(map(Fraction, row)) for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    pivot_col = 0
    while rank < len(mat) and pivot_col < cols:
        pivot = next((r for r in range(rank, len(mat)) if mat[r][pivot_col]), None)
        if pivot is None:
            pivot_col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        lead = mat[rank][pivot_col]
        for r in range(rank + 1, len(mat)):
            if mat[r][pivot_col]:
                factor = mat[r][pivot_col] / lead
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        pivot_col += 1
    return rank


def genstab_rank_check(span: WeightLatticeSpan) -> GenstabResult:
    """Simple coroots orthogonal to the span, and the resulting torus bound.

    In the fundamental-weight basis the pairing with the i-th simple coroot
    is the i-th coordinate, so a simple root lies in S0 iff every generator
    has a zero there.  The generic Borel isotropy contains a torus of
    dimension at most rank minus the rank of the span.
    """
    rank = span.type.rank
    s0 = tuple(
        i + 1 for i in range(rank) if all(g[i] == 0 for g in span.generators)
    )
    return GenstabResult(s0, rank - _int_matrix_rank(span.generators))


def semiinvariant_weight_window(kind: str, n: int, m: int) -> tuple[int, ...]:
    """Recorded window: characters of SO(n)/SO(n-m) (resp. Sp(2n)/Sp(2n-2m))
    semi-invariants lie in the span of the first 2m fundamental weights."""
    if kind not in ("SO", "Sp"):
        raise ValueError("kind must be 'SO' or 'Sp'")
    if not (1 <= m and 2 * m <= n):
        raise ValueError("need 1 <= m and 2m <= n")
    return tuple(range(1, 2 * m + 1))


def g2_audit(n_max: int = 40) -> AuditReport:
    """G2 x Sp(2n-6) inside Sp(2n) at p=2: spherical exactly when n = 4."""
    report = AuditReport("g2")
    # n = 5 dies on the flag bound
    h5 = descriptor(type_atom("G", 2), sp(4))
    g5 = descriptor(sp(10))
    res5 = check_eq2(g5, h5)
    report.add(
        "g2.eq2.n05",
        "exceptional-factor-chain",
        {"n": 5, "dim_h": res5.dim_h, "dim_flag_g": res5.dim_flag_g},
        not res5.passes,
    )
    # n >= 6 dies on the block bound with m = 3
    report.add(
        "g2.threshold",
        "exceptional-factor-chain",
        {"dim_g2": dim_group(SimpleType("G", 2)), "dim_so6": so(6).dim, "m": 3},
        dim_group(SimpleType("G", 2)) < so(6).dim,
    )
    for n in range(6, n_max + 1):
        report.add(
            f"g2.block.n{n:02d}",
            "exceptional-factor-chain",
            {"n": n, "premise_2m_le_n": 6 <= n, "dim_g2": 14, "required": 15},
            None,
        )
    # n = 4: orthogonality-rank computation plus the dimension count
    c4 = SimpleType("C", 4)
    span = WeightLatticeSpan(c4, ((1, 0, 0, 1), (0, 1, 0, 0), (0, 0, 1, 0)))
    gen = genstab_rank_check(span)
    report.add(
        "g2.n4.genstab",
        "generic-stabilizer-rank",
        {"s0": list(gen.s0), "torus_dim_bound": gen.torus_dim_bound},
        gen.s0 == () and gen.torus_dim_bound == 1,
    )
    h = descriptor(type_atom("G", 2), sp(2))
    g = descriptor(sp(8))
    dim_quot = g.dim - h.dim
    dim_borel = g.dim_flag + g.rank
    report.add(
        "g2.n4.dims",
        "exceptional-factor-chain",
        {
            "dim_g": g.dim,
            "dim_h": h.dim,
            "dim_quotient": dim_quot,
            "dim_borel": dim_borel,
        },
        dim_quot == 19 and dim_borel >= dim_quot,
    )
    res = check_eq2(g, h)
    report.add(
        "g2.n4.slack",
        "refined-flag-equality",
        {
            "dim_h": res.dim_h,
            "dim_flag_g": res.dim_flag_g,
            "slack": res.dim_h - res.dim_flag_g,
            "torus_dim_bound": gen.torus_dim_bound,
        },
        res.dim_h - res.dim_flag_g == gen.torus_dim_bound,
    )
    report.add(
        "g2.n4.window",
        "semiinvariant-window",
        {"window": list(semiinvariant_weight_window("Sp", 4, 1))},
        semiinvariant_weight_window("Sp", 4, 1) == (1, 2),
    )
    return report
