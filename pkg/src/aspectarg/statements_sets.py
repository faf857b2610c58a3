"""Width- and depth-statements-sets, minimal representations, redundancy.

A width-statements-set of an anchor statement collects, for one theme and one
relation type, every statement attacking/supporting the anchor directly; it is
unique.  A depth-statements-set is a maximal simple path of same-typed,
same-themed relations ending at the anchor; there can be several.  Redundancy
holds of a statement set when two members share a minimal representation: a
minimal subset of their aspect sets with the same infimum, i.e. the formal
trace of saying the same thing twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import Element, inf_set
from .errors import CapExceeded
from .model import Interpretation, Model, lookup

#: Largest aspect set we will search for minimal representations (2**cap subsets).
MINREP_CAP = 16


@dataclass(frozen=True)
class StatementsSet:
    kind: str  # "width" | "depth"
    anchor: str
    theme: str
    rel: str  # "attack" | "support"
    members: frozenset[str]
    path: tuple[str, ...] = ()  # witnessing order, depth sets only


def width_statements_set(model: Model, s: str, t: str, rel: str) -> StatementsSet:
    """The unique width-statements-set of ``s`` for theme ``t`` and type ``rel``.

    The anchor itself is a distinguished member; every other member must have
    a ``rel``-typed, ``t``-typed relation to the anchor, with ``t`` on both
    endpoints.
    """
    members = {s}
    if t in model.themes_of(s):
        for r in model.relations_into(s):
            if r.source == s:
                continue
            if rel in r.rel_types and t in r.themes and t in model.themes_of(r.source):
                members.add(r.source)
    return StatementsSet("width", s, t, rel, frozenset(members))


def depth_statements_sets(model: Model, s: str, t: str, rel: str) -> list[StatementsSet]:
    """All maximal depth-statements-sets of ``s`` for theme ``t`` and type ``rel``.

    Enumerates simple paths ending at ``s`` in the subgraph of ``rel``-typed,
    ``t``-typed relations between ``t``-typed statements, then keeps the
    set-maximal ones.
    """
    if t not in model.themes_of(s):
        return [StatementsSet("depth", s, t, rel, frozenset([s]), (s,))]
    eligible_edges: dict[str, list[str]] = {}
    for r in model.relations:
        if rel not in r.rel_types or t not in r.themes:
            continue
        if t not in model.themes_of(r.source) or t not in model.themes_of(r.target):
            continue
        eligible_edges.setdefault(r.target, []).append(r.source)

    paths: list[tuple[str, ...]] = []

    def extend(path: tuple[str, ...]) -> None:
        paths.append(path)
        head = path[0]
        for pred in sorted(eligible_edges.get(head, ())):
            if pred not in path:
                extend((pred,) + path)

    extend((s,))
    sets = {frozenset(p): p for p in paths}  # last witnessing order wins; any is fine
    maximal = [
        members
        for members in sets
        if not any(members < other for other in sets)
    ]
    out = [StatementsSet("depth", s, t, rel, members, sets[members]) for members in maximal]
    out.sort(key=lambda ss: sorted(ss.members))
    return out


def statements_sets(
    model: Model, s: str, t: str, rel: str
) -> tuple[list[StatementsSet], list[StatementsSet]]:
    """Width- and depth-statements-sets of ``s`` with respect to ``t`` and ``rel``."""
    return [width_statements_set(model, s, t, rel)], depth_statements_sets(model, s, t, rel)


def minimal_representations_of(
    algebra, elements: Iterable[Element], cap: int = MINREP_CAP
) -> list[frozenset[Element]]:
    """All inclusion-minimal subsets with the same infimum as the whole set."""
    elems = sorted(set(elements), key=lambda e: e.mask)
    if len(elems) > cap:
        raise CapExceeded(
            f"aspect set of size {len(elems)} exceeds the minimal-representation cap {cap}"
        )
    target = inf_set(algebra, elems)
    n = len(elems)
    found: list[frozenset[Element]] = []
    # Breadth-first by subset size: the first hits at each size are minimal
    # unless they contain a smaller hit.
    for size in range(0, n + 1):
        for bits in range(1 << n):
            if bin(bits).count("1") != size:
                continue
            subset = [elems[i] for i in range(n) if (bits >> i) & 1]
            if inf_set(algebra, subset) != target:
                continue
            fs = frozenset(subset)
            if not any(prev < fs for prev in found):
                found.append(fs)
    return found


def minimal_representations(
    interp: Interpretation, model: Model, themes: Iterable[str], s: str, cap: int = MINREP_CAP
) -> list[frozenset[Element]]:
    """Minimal representations of the aspect set of ``s`` for a theme set."""
    aspects = lookup(interp, model, themes, s)
    return minimal_representations_of(interp.algebra, iter(aspects), cap=cap)


@dataclass(frozen=True)
class RedundancyWitness:
    first: str
    second: str
    shared: frozenset[Element]


def contains_redundancy(
    interp: Interpretation,
    model: Model,
    t: str,
    statement_ids: Iterable[str],
    cap: int = MINREP_CAP,
) -> RedundancyWitness | None:
    """A witness pair sharing a minimal representation for theme ``{t}``, if any.

    The defining order compares representations of the statements' aspect sets
    at one theme set; the singleton ``{t}`` of the enclosing statements-set is
    used.
    """
    ids = sorted(set(statement_ids))
    reps = {
        sid: set(minimal_representations(interp, model, [t], sid, cap=cap)) for sid in ids
    }
    for i, s1 in enumerate(ids):
        for s2 in ids[i + 1 :]:
            shared = reps[s1] & reps[s2]
            if shared:
                return RedundancyWitness(s1, s2, min(shared, key=lambda fs: sorted(e.mask for e in fs)))
    return None
