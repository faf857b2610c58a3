"""Constructive synthesis of an algebra and interpretation satisfying Core.

A well-formed graph meeting the four graphic constraints (theme relevance,
no self-attack, no null pointer, known ordinary statement) plus one
interpretability condition on relation themes (below) always admits an
interpretation satisfying all eight core constraints.  The construction:

* one block of fresh propositions per theme, so the per-theme subalgebras
  are pairwise disjoint apart from 0 and 1;
* inside block j, a strictly increasing chain ``x[j][1] < ... < x[j][N]``
  with ``N = n + n*m + m`` (n ordinary statements, m themes), where
  ``x[j][i]`` is the join of the first i block propositions;
* each statement owns one chain index (ordinary statements first, then
  statement pointers by referenced theme, then summary pointers), and its
  aspects for theme j are the chain tail from its index (a singleton for
  summary pointers);
* multi-theme aspect sets are unions of the single-theme ones, via the
  interpretation's union default (explicit rows for summary pointers, which
  never default);
* every non-empty theme set gets the full carrier as its aspect row.  A
  tighter choice would be the subalgebra generated by the theme's blocks,
  but those carriers are doubly exponential and nothing in Core
  distinguishes them from the full carrier, which stays representable.

Distinct statements get distinct chain indices, so effective aspects along
any relation differ and, lying in a common chain per block, stay comparable;
this is what makes attack and support typings satisfiable at every theme
subset of the relation.

One genuine precondition beyond the four graphic constraints: every theme
typing a relation must be interpretable at both endpoints (for an ordinary
statement, one of its own themes; for a pointer, also the referenced theme,
intersected with the target's themes).  Otherwise the vacuous-interpretation
and proper-range constraints force one endpoint's aspects empty at that
theme while attack-as-attack demands them non-empty, so *no* algebra and
interpretation exist; synthesis reports that instead of looping.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import Algebra, Element, mk_algebra, sup_set
from .errors import (
    CapExceeded,
    CoreUnsatisfiableError,
    GraphicPreconditionError,
    ModelError,
    SynthesisError,
)
from .model import UNION, AspectSet, Interpretation, Model, Statement, validate_wellformed
from .constraints import all_violations, check_core, check_graphic

SYNTHESIS_PROP_CAP = 20


def aspect_support(model: Model, stmt: Statement) -> frozenset[str]:
    """Themes at which the statement can carry aspects under Core."""
    own = model.themes_of(stmt.id)
    if not stmt.is_pointer:
        return own
    widened = own | {stmt.ref_theme}
    if stmt.is_summary_pointer:
        return widened
    return widened & model.themes_of(stmt.ref_target)


@dataclass(frozen=True)
class SynthesizedWitness:
    algebra: Algebra
    interpretation: Interpretation
    #: Formula strings per explicit statement row, for writing model files.
    statement_formulas: dict[tuple[frozenset[str], str], list[str]]


def synthesize_core_witness(
    model: Model, *, max_props: int = SYNTHESIS_PROP_CAP
) -> SynthesizedWitness:
    """Build and self-verify a Core-satisfying algebra and interpretation."""
    graphic = check_graphic(model)
    failed = sorted(cid for cid in ("tr", "nsa", "nnp", "kos") if graphic[cid])
    if failed:
        raise GraphicPreconditionError(failed)
    problems = validate_wellformed(model)
    if problems:
        raise ModelError(
            "model is not well-formed: " + "; ".join(v.detail for v in problems[:3])
        )

    themes = list(model.themes)
    m = len(themes)
    ordinary = list(model.ordinary_ids())
    n = len(ordinary)

    supports = {s.id: aspect_support(model, s) for s in model.statements}
    for r in model.relations:
        for t in sorted(r.themes & set(themes)):
            for endpoint in (r.source, r.target):
                if t not in supports[endpoint]:
                    raise CoreUnsatisfiableError(
                        f"relation {r.pair} is typed with theme {t!r}, which statement "
                        f"{endpoint} cannot carry aspects for; vacuous-interpretation and "
                        "proper-range then force its aspects empty there while "
                        "attack-as-attack demands them non-empty, so no interpretation "
                        "can satisfy Core"
                    )

    if m == 0:
        algebra = mk_algebra(["w1_1"])
        interp = Interpretation(algebra, {}, {}, UNION)
        return SynthesizedWitness(algebra, interp, {})

    chain_len = n + n * m + m
    total_props = m * chain_len
    if total_props > max_props:
        raise CapExceeded(
            f"witness needs {total_props} propositions "
            f"({m} themes x chain length {chain_len}), above the cap {max_props}"
        )

    prop_names = [f"w{j}_{i}" for j in range(1, m + 1) for i in range(1, chain_len + 1)]
    algebra = mk_algebra(prop_names, max_props=max_props)

    # chain[j][i] = w{j}_1 | ... | w{j}_i  (1-based i); strictly increasing in i
    chain: dict[int, dict[int, Element]] = {}
    chain_formula: dict[int, dict[int, str]] = {}
    for j in range(1, m + 1):
        chain[j], chain_formula[j] = {}, {}
        acc: list[Element] = []
        names: list[str] = []
        for i in range(1, chain_len + 1):
            acc.append(algebra.prop(f"w{j}_{i}"))
            names.append(f"w{j}_{i}")
            chain[j][i] = sup_set(algebra, acc)
            chain_formula[j][i] = " | ".join(names)

    ordinary_index = {sid: i + 1 for i, sid in enumerate(ordinary)}
    theme_index = {t: j + 1 for j, t in enumerate(themes)}

    def chain_index(stmt: Statement) -> int:
        if not stmt.is_pointer:
            return ordinary_index[stmt.id]
        l = theme_index[stmt.ref_theme]
        if stmt.is_summary_pointer:
            return n + n * m + l
        return n + (l - 1) * n + ordinary_index[stmt.ref_target]

    statement_rows: dict[tuple[frozenset[str], str], AspectSet] = {}
    statement_formulas: dict[tuple[frozenset[str], str], list[str]] = {}

    def row_for(stmt: Statement, theme: str) -> tuple[AspectSet, list[str]]:
        j = theme_index[theme]
        start = chain_index(stmt)
        indices = [start] if stmt.is_summary_pointer else list(range(start, chain_len + 1))
        elements = frozenset(chain[j][i] for i in indices)
        return AspectSet(algebra, elements), [chain_formula[j][i] for i in indices]

    for stmt in model.statements:
        eligible = sorted(supports[stmt.id] & set(themes), key=theme_index.get)
        for t in eligible:
            key = (frozenset([t]), stmt.id)
            statement_rows[key], statement_formulas[key] = row_for(stmt, t)
        if stmt.is_summary_pointer and eligible:
            # summary pointers never default across theme sets: spell out unions
            for size in range(2, m + 1):
                for combo in combinations(themes, size):
                    chosen = [t for t in combo if t in eligible]
                    if not chosen:
                        continue
                    key = (frozenset(combo), stmt.id)
                    merged = AspectSet(algebra)
                    formulas: list[str] = []
                    for t in chosen:
                        row, fs = row_for(stmt, t)
                        merged = merged.union(row)
                        formulas.extend(fs)
                    statement_rows[key] = merged
                    statement_formulas[key] = formulas

    theme_rows = {}
    for size in range(1, m + 1):
        for combo in combinations(themes, size):
            theme_rows[frozenset(combo)] = AspectSet(algebra, full=True)

    interp = Interpretation(algebra, theme_rows, statement_rows, UNION)

    leftover = all_violations(check_core(model, interp, max_themes=max(12, m)))
    if leftover:
        raise SynthesisError(
            "synthesized interpretation failed self-verification: "
            + "; ".join(v.detail for v in leftover[:5])
        )
    return SynthesizedWitness(algebra, interp, statement_formulas)
