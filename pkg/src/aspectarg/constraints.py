"""Constraint checkers: graphic, core, exact-region, das/nwci, fresh-aspect.

Every checker is a pure function from a model (and, for the semantic
constraints, an interpretation) to violation witnesses.  Universal
quantifications over theme sets are exhaustive subset enumerations, guarded
by a configurable cap.  ``recheck`` re-verifies a single violation from its
witness record alone, which keeps every reported fallacy independently
auditable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .algebra import Element, inf_set, is_subalgebra
from .errors import CapExceeded
from .formulas import render_element
from .model import (
    ATTACK,
    SUPPORT,
    AspectSet,
    Interpretation,
    Model,
    Violation,
    _lookup_maybe_missing,
    effective_aspect,
    lookup,
)
from .statements_sets import contains_redundancy, statements_sets

GRAPHIC_IDS = ("tr", "nnp", "nsa", "kos", "nss")
CORE_IDS = ("aass", "i", "vi", "bat", "pr", "mat", "manss", "ss")
EXACT_REGION_IDS = ("esr", "ensr", "eos")
FRESH_ASPECT_IDS = ("faD", "faW")

CORE = "core"
E = "E"
DAS = "das"
NWCI = "nwci"
F = "F"
ALPHA_GROUPS = (CORE, E, DAS, NWCI, F)

MAX_THEMES = 12


def _theme_subsets(themes: Iterable[str], max_themes: int) -> list[frozenset[str]]:
    ts = tuple(themes)
    if len(ts) > max_themes:
        raise CapExceeded(
            f"{len(ts)} themes exceed the enumeration cap {max_themes}; "
            "raise it explicitly if the model really is this large"
        )
    out: list[frozenset[str]] = []
    for n in range(len(ts) + 1):
        for combo in combinations(ts, n):
            out.append(frozenset(combo))
    return out


def _tkey(themes: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(themes))


def _render(e: Element | None, index=None) -> str:
    return "<absent>" if e is None else render_element(e, preferred=index, max_atoms=8)


# ---------------------------------------------------------------------------
# Graphic constraints: conditions on the typed graph alone.
# ---------------------------------------------------------------------------


def check_graphic(model: Model) -> dict[str, list[Violation]]:
    """Check tr, nnp, nsa, kos and nss; keys are present even when clean."""
    out: dict[str, list[Violation]] = {cid: [] for cid in GRAPHIC_IDS}

    for r in model.relations:
        shared = r.themes & model.themes_of(r.source) & model.themes_of(r.target)
        if not shared:
            out["tr"].append(
                Violation(
                    "tr",
                    relation=r.pair,
                    detail=f"relation {r.pair} shares no theme with both endpoints",
                )
            )
        if r.source == r.target and ATTACK in r.rel_types and r.themes:
            out["nsa"].append(
                Violation("nsa", relation=r.pair, detail=f"attack-typed self-loop on {r.source}")
            )

    for s in model.statements:
        if not s.is_pointer:
            continue
        t = s.ref_theme
        if s.is_summary_pointer:
            inhabited = any(t in model.themes_of(other.id) for other in model.statements)
            if not inhabited:
                out["nnp"].append(
                    Violation(
                        "nnp",
                        (s.id,),
                        detail=f"summary pointer {s.id} references theme {t!r} "
                        "which no statement inhabits",
                    )
                )
        else:
            target_in_graph = model.has_statement(s.ref_target) and not model.statement(
                s.ref_target
            ).is_pointer
            if not (target_in_graph and t in model.themes_of(s.ref_target)):
                out["nnp"].append(
                    Violation(
                        "nnp",
                        (s.id,),
                        detail=f"pointer {s.id} references {s.ref_target!r} in theme {t!r}, "
                        "but no such ordinary statement exists there",
                    )
                )
            # kos ranges over targets present in the graph, whether or not
            # the pointer's reference theme reaches them
            if target_in_graph and not model.themes_of(s.id) <= model.themes_of(s.ref_target):
                extra = sorted(model.themes_of(s.id) - model.themes_of(s.ref_target))
                out["kos"].append(
                    Violation(
                        "kos",
                        (s.id,),
                        detail=f"pointer {s.id} typed with {extra} "
                        f"beyond the themes of its target {s.ref_target}",
                    )
                )

    attack_rels = [r for r in model.relations if ATTACK in r.rel_types]
    support_pairs = {
        (r.source, r.target): r.themes for r in model.relations if SUPPORT in r.rel_types
    }
    for r in attack_rels:
        if SUPPORT in r.rel_types:
            out["nss"].append(
                Violation(
                    "nss",
                    relation=r.pair,
                    detail=f"relation {r.pair} typed both attack and support",
                )
            )
        s1, s2 = r.pair
        for s in model.statements:
            up1, up2 = support_pairs.get((s.id, s1)), support_pairs.get((s.id, s2))
            if up1 is not None and up2 is not None and up1 & up2:
                out["nss"].append(
                    Violation(
                        "nss",
                        (s.id,),
                        relation=r.pair,
                        theme_set=_tkey(up1 & up2),
                        detail=f"{s.id} supports both ends of attack {r.pair} "
                        f"for shared themes {sorted(up1 & up2)}",
                    )
                )
            dn1, dn2 = support_pairs.get((s1, s.id)), support_pairs.get((s2, s.id))
            if dn1 is not None and dn2 is not None and dn1 & dn2:
                out["nss"].append(
                    Violation(
                        "nss",
                        (s.id,),
                        relation=r.pair,
                        theme_set=_tkey(dn1 & dn2),
                        detail=f"{s.id} is supported by both ends of attack {r.pair} "
                        f"for shared themes {sorted(dn1 & dn2)}",
                    )
                )
    for vs in out.values():
        vs.sort(key=Violation.sort_key)
    return out


# ---------------------------------------------------------------------------
# Core constraints on the interpretation.
# ---------------------------------------------------------------------------


def check_core(
    model: Model,
    interp: Interpretation,
    max_themes: int = MAX_THEMES,
    formula_index=None,
) -> dict[str, list[Violation]]:
    """Check aass, i, vi, bat, pr, mat, manss and ss."""
    out: dict[str, list[Violation]] = {cid: [] for cid in CORE_IDS}
    subsets = _theme_subsets(model.themes, max_themes)
    algebra = interp.algebra

    for r in model.relations:
        rel_themes = r.themes & set(model.themes)
        for t_set in _theme_subsets(sorted(rel_themes), max_themes):
            if not t_set:
                continue
            u = effective_aspect(interp, model, t_set, r.source)
            v = effective_aspect(interp, model, t_set, r.target)
            if ATTACK in r.rel_types and (u is None or v is None or u == v):
                out["aass"].append(
                    Violation(
                        "aass",
                        relation=r.pair,
                        theme_set=_tkey(t_set),
                        rel_type=ATTACK,
                        detail=f"attack {r.pair} at {_tkey(t_set)}: effective aspects "
                        f"{_render(u, formula_index)} vs {_render(v, formula_index)} "
                        "must both exist and differ",
                    )
                )
            if SUPPORT in r.rel_types and (
                u is None or v is None or not u.comparable(v)
            ):
                out["aass"].append(
                    Violation(
                        "aass",
                        relation=r.pair,
                        theme_set=_tkey(t_set),
                        rel_type=SUPPORT,
                        detail=f"support {r.pair} at {_tkey(t_set)}: effective aspects "
                        f"{_render(u, formula_index)} vs {_render(v, formula_index)} "
                        "must both exist and be comparable",
                    )
                )

    for t_set in subsets:
        omega = interp.omega_row(t_set)
        for s in model.statements:
            if not lookup(interp, model, t_set, s.id).issubset(omega):
                out["i"].append(
                    Violation(
                        "i",
                        (s.id,),
                        theme_set=_tkey(t_set),
                        detail=f"aspects of {s.id} at {_tkey(t_set)} are not all aspects "
                        "of the theme set",
                    )
                )
        if not omega.is_empty and not omega.full:
            if not is_subalgebra(omega.elements, algebra):
                out["bat"].append(
                    Violation(
                        "bat",
                        theme_set=_tkey(t_set),
                        detail=f"theme aspects at {_tkey(t_set)} are not a subalgebra "
                        "(missing 0/1 or not closed under not/and/or)",
                    )
                )

    for s in model.statements:
        row = lookup(interp, model, frozenset(), s.id)
        if not row.is_empty:
            out["vi"].append(
                Violation(
                    "vi",
                    (s.id,),
                    theme_set=(),
                    detail=f"{s.id} has aspects for the empty theme set",
                )
            )

    for s in model.statements:
        s_themes = model.themes_of(s.id)
        for t_set in subsets:
            row = lookup(interp, model, t_set, s.id)
            if row.is_empty:
                continue
            if not s.is_pointer:
                bound = lookup(interp, model, t_set & s_themes, s.id)
            elif s.is_summary_pointer:
                bound = lookup(interp, model, t_set & (s_themes | {s.ref_theme}), s.id)
            else:
                bound = _lookup_maybe_missing(
                    interp, model, t_set & (s_themes | {s.ref_theme}), s.ref_target
                )
            if not row.issubset(bound):
                out["pr"].append(
                    Violation(
                        "pr",
                        (s.id,),
                        theme_set=_tkey(t_set),
                        detail=f"aspects of {s.id} at {_tkey(t_set)} exceed the proper-range "
                        "bound from its own themes"
                        + ("" if not s.is_statement_pointer else f" and target {s.ref_target}"),
                    )
                )

    for t2 in subsets:
        for t in sorted(t2):
            t1 = t2 - {t}
            if not interp.omega_row(t1).issubset(interp.omega_row(t2)):
                out["mat"].append(
                    Violation(
                        "mat",
                        theme_set=_tkey(t1),
                        theme_set2=_tkey(t2),
                        detail=f"theme aspects shrink from {_tkey(t1)} to {_tkey(t2)}",
                    )
                )
            for s in model.statements:
                if s.is_summary_pointer:
                    continue
                if not lookup(interp, model, t1, s.id).issubset(lookup(interp, model, t2, s.id)):
                    out["manss"].append(
                        Violation(
                            "manss",
                            (s.id,),
                            theme_set=_tkey(t1),
                            theme_set2=_tkey(t2),
                            detail=f"aspects of {s.id} shrink from {_tkey(t1)} to {_tkey(t2)}",
                        )
                    )

    for s in model.statements:
        own = sorted(model.themes_of(s.id) & set(model.themes))
        for t_set in _theme_subsets(own, max_themes):
            row = lookup(interp, model, t_set, s.id)
            if row.is_empty:
                continue
            eff = inf_set(algebra, iter(row))
            if eff.is_bottom or eff.is_top:
                which = "inconsistent (0)" if eff.is_bottom else "trivial (1)"
                out["ss"].append(
                    Violation(
                        "ss",
                        (s.id,),
                        theme_set=_tkey(t_set),
                        detail=f"{s.id} effectively touches upon the {which} aspect "
                        f"at {_tkey(t_set)}",
                    )
                )
    for vs in out.values():
        vs.sort(key=Violation.sort_key)
    return out


# ---------------------------------------------------------------------------
# Exact common region constraints (context immunity).
# ---------------------------------------------------------------------------


def check_exact_region(
    model: Model, interp: Interpretation, max_themes: int = MAX_THEMES
) -> dict[str, list[Violation]]:
    """Check esr, ensr and eos over every pair of theme sets."""
    out: dict[str, list[Violation]] = {cid: [] for cid in EXACT_REGION_IDS}
    subsets = _theme_subsets(model.themes, max_themes)
    for i1, t1 in enumerate(subsets):
        for t2 in subsets[i1 + 1 :]:
            common = interp.omega_row(t1).intersection(interp.omega_row(t2))
            if common.is_empty:
                continue
            for s in model.statements:
                left = lookup(interp, model, t1, s.id).intersection(common)
                right = lookup(interp, model, t2, s.id).intersection(common)
                if left != right:
                    if s.is_summary_pointer:
                        cid = "esr"
                    elif s.is_statement_pointer:
                        cid = "ensr"
                    else:
                        cid = "eos"
                    out[cid].append(
                        Violation(
                            cid,
                            (s.id,),
                            theme_set=_tkey(t1),
                            theme_set2=_tkey(t2),
                            detail=f"aspects of {s.id} differ between {_tkey(t1)} and "
                            f"{_tkey(t2)} inside their common theme region",
                        )
                    )
    for vs in out.values():
        vs.sort(key=Violation.sort_key)
    return out


# ---------------------------------------------------------------------------
# das and nwci: sharpened attack/support semantics.
# ---------------------------------------------------------------------------


def _relation_theme_cases(model: Model, r, max_themes: int):
    rel_themes = r.themes & set(model.themes)
    for t_set in _theme_subsets(sorted(rel_themes), max_themes):
        if t_set:
            yield t_set


def check_das(
    model: Model,
    interp: Interpretation,
    max_themes: int = MAX_THEMES,
    formula_index=None,
) -> list[Violation]:
    """Attacks must be incomparable, supports equal, per relation and theme set.

    Pairs with an absent effective aspect are skipped here; aass already
    reports those.
    """
    out: list[Violation] = []
    for r in model.relations:
        for t_set in _relation_theme_cases(model, r, max_themes):
            u = effective_aspect(interp, model, t_set, r.source)
            v = effective_aspect(interp, model, t_set, r.target)
            if u is None or v is None:
                continue
            if ATTACK in r.rel_types and u.comparable(v):
                out.append(
                    Violation(
                        "das",
                        relation=r.pair,
                        theme_set=_tkey(t_set),
                        rel_type=ATTACK,
                        detail=f"attack {r.pair} at {_tkey(t_set)}: "
                        f"{_render(u, formula_index)} is comparable with "
                        f"{_render(v, formula_index)}, so this is weakening/strengthening, "
                        "not a distinct attack",
                    )
                )
            if SUPPORT in r.rel_types and u != v:
                out.append(
                    Violation(
                        "das",
                        relation=r.pair,
                        theme_set=_tkey(t_set),
                        rel_type=SUPPORT,
                        detail=f"support {r.pair} at {_tkey(t_set)}: "
                        f"{_render(u, formula_index)} differs from {_render(v, formula_index)}, "
                        "so the claimed support is not an affirmation",
                    )
                )
    out.sort(key=Violation.sort_key)
    return out


def check_nwci(
    model: Model,
    interp: Interpretation,
    max_themes: int = MAX_THEMES,
    formula_index=None,
) -> list[Violation]:
    """No weakened contradictions and no incomparable alternatives on attacks."""
    out: list[Violation] = []
    for r in model.relations:
        if ATTACK not in r.rel_types:
            continue
        for t_set in _relation_theme_cases(model, r, max_themes):
            u = effective_aspect(interp, model, t_set, r.source)
            v = effective_aspect(interp, model, t_set, r.target)
            if u is None or v is None:
                continue
            if ~v < u:
                out.append(
                    Violation(
                        "nwci",
                        relation=r.pair,
                        theme_set=_tkey(t_set),
                        rel_type=ATTACK,
                        detail=f"attack {r.pair} at {_tkey(t_set)}: "
                        f"{_render(u, formula_index)} strictly above the complement of "
                        f"{_render(v, formula_index)} is a weakened contradiction",
                    )
                )
            if not u.comparable(v) and not u.comparable(~v):
                out.append(
                    Violation(
                        "nwci",
                        relation=r.pair,
                        theme_set=_tkey(t_set),
                        rel_type=ATTACK,
                        detail=f"attack {r.pair} at {_tkey(t_set)}: "
                        f"{_render(u, formula_index)} is incomparable with both "
                        f"{_render(v, formula_index)} and its complement",
                    )
                )
    out.sort(key=Violation.sort_key)
    return out


# ---------------------------------------------------------------------------
# Fresh aspect constraints (no redundancy in statements-sets).
# ---------------------------------------------------------------------------


def check_fresh_aspects(
    model: Model,
    interp: Interpretation,
    max_themes: int = MAX_THEMES,
    formula_index=None,
) -> dict[str, list[Violation]]:
    """Check faD and faW: no statements-set may contain redundancy."""
    del max_themes  # quantification here is over statements and their themes
    out: dict[str, list[Violation]] = {cid: [] for cid in FRESH_ASPECT_IDS}
    for s in model.statements:
        for t in sorted(model.themes_of(s.id) & set(model.themes)):
            for rel in (ATTACK, SUPPORT):
                widths, depths = statements_sets(model, s.id, t, rel)
                for cid, sets in (("faW", widths), ("faD", depths)):
                    for sset in sets:
                        witness = contains_redundancy(interp, model, t, sset.members)
                        if witness is None:
                            continue
                        shared = "{" + ", ".join(
                            sorted(
                                render_element(e, preferred=formula_index, max_atoms=8)
                                for e in witness.shared
                            )
                        ) + "}"
                        out[cid].append(
                            Violation(
                                cid,
                                (s.id, witness.first, witness.second),
                                theme_set=(t,),
                                rel_type=rel,
                                detail=f"{witness.first} and {witness.second} share the minimal "
                                f"representation {shared} in the {sset.kind}-statements-set "
                                f"of {s.id} for theme {t}",
                            )
                        )
    for vs in out.values():
        vs.sort(key=Violation.sort_key)
    return out


# ---------------------------------------------------------------------------
# Relation-kind taxonomy.
# ---------------------------------------------------------------------------

AFFIRMATION = "affirmation"
WEAKENING = "weakening"
STRENGTHENING = "strengthening"
CONTRARY = "contrary"
WEAKENED_CONTRADICTION = "weakened_contradiction"
INCOMPARABLE_ALTERNATIVE = "incomparable_alternative"
UNDEFINED = "undefined"


def classify_relation(
    interp: Interpretation, model: Model, themes: Iterable[str], relation
) -> frozenset[str]:
    """Semantic labels for a relation, given the theme set to evaluate under.

    ``u`` is the effective aspect of the source (the attacker/supporter),
    ``v`` of the target.  Labels overlap by design; the set is never empty,
    and is exactly ``{"undefined"}`` when either effective aspect is absent.
    """
    u = effective_aspect(interp, model, themes, relation.source)
    v = effective_aspect(interp, model, themes, relation.target)
    if u is None or v is None:
        return frozenset([UNDEFINED])
    labels = set()
    if u == v:
        labels.add(AFFIRMATION)
    if u < v:
        labels.add(STRENGTHENING)
    if v < u:
        labels.add(WEAKENING)
    if u <= ~v:
        labels.add(CONTRARY)
    if ~v < u:
        labels.add(WEAKENED_CONTRADICTION)
    if not u.comparable(v) and not u.comparable(~v):
        labels.add(INCOMPARABLE_ALTERNATIVE)
    return frozenset(labels)


# ---------------------------------------------------------------------------
# Normal forms.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalFormVerdict:
    alpha: frozenset[str]
    normal: bool
    violations: tuple[Violation, ...]


def run_group(
    model: Model,
    interp: Interpretation,
    group: str,
    max_themes: int = MAX_THEMES,
    formula_index=None,
) -> dict[str, list[Violation]]:
    """Violations of one constraint group, keyed by constraint id."""
    if group == CORE:
        return check_core(model, interp, max_themes, formula_index)
    if group == E:
        return check_exact_region(model, interp, max_themes)
    if group == DAS:
        return {"das": check_das(model, interp, max_themes, formula_index)}
    if group == NWCI:
        return {"nwci": check_nwci(model, interp, max_themes, formula_index)}
    if group == F:
        return check_fresh_aspects(model, interp, max_themes, formula_index)
    raise ValueError(f"unknown constraint group {group!r}")


def classify_normal_form(
    model: Model,
    interp: Interpretation,
    alpha: Iterable[str],
    max_themes: int = MAX_THEMES,
    formula_index=None,
) -> NormalFormVerdict:
    """Whether the model is alpha-normal with respect to the interpretation."""
    chosen = frozenset(alpha)
    unknown = chosen - set(ALPHA_GROUPS)
    if unknown:
        raise ValueError(f"unknown constraint groups: {sorted(unknown)}")
    if CORE not in chosen:
        raise ValueError("alpha must contain the core constraint group")
    violations: list[Violation] = []
    for group in ALPHA_GROUPS:  # fixed order keeps reports deterministic
        if group in chosen:
            for vs in run_group(model, interp, group, max_themes, formula_index).values():
                violations.extend(vs)
    violations.sort(key=Violation.sort_key)
    return NormalFormVerdict(chosen, not violations, tuple(violations))


# ---------------------------------------------------------------------------
# Witness re-verification.
# ---------------------------------------------------------------------------


def recheck(model: Model, interp: Interpretation | None, violation: Violation) -> bool:
    """Re-establish a violation from its witness record alone."""
    cid = violation.constraint
    t_set = frozenset(violation.theme_set or ())

    if cid in GRAPHIC_IDS:
        fresh = check_graphic(model)[cid]
        return any(_same_witness(v, violation) for v in fresh)

    if interp is None:
        return False
    if cid in ("aass", "das", "nwci"):
        rel = next(r for r in model.relations if r.pair == violation.relation)
        u = effective_aspect(interp, model, t_set, rel.source)
        v = effective_aspect(interp, model, t_set, rel.target)
        if cid == "aass":
            if violation.rel_type == ATTACK:
                return u is None or v is None or u == v
            return u is None or v is None or not u.comparable(v)
        if u is None or v is None:
            return False
        if cid == "das":
            return u.comparable(v) if violation.rel_type == ATTACK else u != v
        return (~v < u) or (not u.comparable(v) and not u.comparable(~v))
    if cid == "i":
        sid = violation.statements[0]
        return not lookup(interp, model, t_set, sid).issubset(interp.omega_row(t_set))
    if cid == "vi":
        return not lookup(interp, model, frozenset(), violation.statements[0]).is_empty
    if cid == "bat":
        omega = interp.omega_row(t_set)
        return not omega.is_empty and not omega.full and not is_subalgebra(
            omega.elements, interp.algebra
        )
    if cid == "pr":
        return any(
            _same_witness(v, violation) for v in check_core(model, interp)["pr"]
        )
    if cid in ("mat", "manss"):
        t2 = frozenset(violation.theme_set2 or ())
        if cid == "mat":
            return not interp.omega_row(t_set).issubset(interp.omega_row(t2))
        sid = violation.statements[0]
        return not lookup(interp, model, t_set, sid).issubset(lookup(interp, model, t2, sid))
    if cid == "ss":
        sid = violation.statements[0]
        row = lookup(interp, model, t_set, sid)
        if row.is_empty:
            return False
        eff = inf_set(interp.algebra, iter(row))
        return eff.is_bottom or eff.is_top
    if cid in EXACT_REGION_IDS:
        t2 = frozenset(violation.theme_set2 or ())
        common = interp.omega_row(t_set).intersection(interp.omega_row(t2))
        sid = violation.statements[0]
        left = lookup(interp, model, t_set, sid).intersection(common)
        right = lookup(interp, model, t2, sid).intersection(common)
        return left != right
    if cid in FRESH_ASPECT_IDS:
        anchor, s1, s2 = violation.statements
        (t,) = violation.theme_set
        widths, depths = statements_sets(model, anchor, t, violation.rel_type)
        candidates = widths if cid == "faW" else depths
        for sset in candidates:
            if {s1, s2} <= sset.members:
                witness = contains_redundancy(interp, model, t, [s1, s2])
                if witness is not None:
                    return True
        return False
    raise ValueError(f"cannot recheck constraint {cid!r}")


def _same_witness(a: Violation, b: Violation) -> bool:
    return (
        a.constraint == b.constraint
        and a.statements == b.statements
        and a.relation == b.relation
        and a.theme_set == b.theme_set
        and a.theme_set2 == b.theme_set2
    )


def all_violations(groups: Mapping[str, list[Violation]]) -> list[Violation]:
    out: list[Violation] = []
    for vs in groups.values():
        out.extend(vs)
    out.sort(key=Violation.sort_key)
    return out
