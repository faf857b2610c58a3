"""Theme aspect argumentation models: typed graphs plus interpretation tables.

A model is a finite statement graph where every statement carries one or more
themes and every relation carries attack/support types plus themes drawn from
its endpoints.  The interpretation maps (theme set, statement) and
(theme set, omega) to sets of algebra elements; omega rows describe the
aspects of the theme set itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .algebra import Algebra, Element, inf_set
from .errors import ModelError, UnknownIdError

ATTACK = "attack"
SUPPORT = "support"
REL_TYPES = (ATTACK, SUPPORT)

#: Reserved name for the interpretation's theme rows in lookups and files.
OMEGA = "@omega"
#: Reserved target marker for pointers to a theme's summary.
SUMMARY = "@summary"

UNION = "union"
EMPTY = "empty"


@dataclass(frozen=True)
class Statement:
    """An ordinary statement, or a pointer into a theme.

    A pointer has ``ref_theme`` set; ``ref_target`` then names the ordinary
    statement it refers to, or is ``None`` for a pointer to the theme's
    summary.  Pointer targets need not exist in the graph; the no-null-pointer
    check is what detects dangling ones.
    """

    id: str
    ref_theme: str | None = None
    ref_target: str | None = None

    @property
    def is_pointer(self) -> bool:
        return self.ref_theme is not None

    @property
    def is_summary_pointer(self) -> bool:
        return self.ref_theme is not None and self.ref_target is None

    @property
    def is_statement_pointer(self) -> bool:
        return self.ref_theme is not None and self.ref_target is not None


@dataclass(frozen=True)
class Relation:
    source: str
    target: str
    rel_types: frozenset[str]
    themes: frozenset[str]

    @property
    def pair(self) -> tuple[str, str]:
        return (self.source, self.target)


@dataclass
class Model:
    """The typed argumentation graph.  Treated as immutable after construction."""

    themes: tuple[str, ...]
    statements: tuple[Statement, ...]
    statement_themes: dict[str, frozenset[str]]
    relations: tuple[Relation, ...]

    def __post_init__(self) -> None:
        self._by_id = {s.id: s for s in self.statements}

    @classmethod
    def build(
        cls,
        themes: Iterable[str],
        statements: Iterable[Statement],
        statement_themes: dict[str, Iterable[str]],
        relations: Iterable[Relation],
    ) -> "Model":
        """Normalise inputs; duplicate (source, target) relations are merged."""
        stmts = tuple(statements)
        if len({s.id for s in stmts}) != len(stmts):
            raise ModelError("duplicate statement ids")
        merged: dict[tuple[str, str], Relation] = {}
        for r in relations:
            prev = merged.get(r.pair)
            if prev is None:
                merged[r.pair] = r
            else:
                merged[r.pair] = Relation(
                    r.source, r.target, prev.rel_types | r.rel_types, prev.themes | r.themes
                )
        return cls(
            tuple(themes),
            stmts,
            {sid: frozenset(ts) for sid, ts in statement_themes.items()},
            tuple(merged.values()),
        )

    def statement(self, sid: str) -> Statement:
        try:
            return self._by_id[sid]
        except KeyError:
            raise UnknownIdError(f"unknown statement id {sid!r}") from None

    def has_statement(self, sid: str) -> bool:
        return sid in self._by_id

    def themes_of(self, sid: str) -> frozenset[str]:
        return self.statement_themes.get(sid, frozenset())

    def ordinary_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.statements if not s.is_pointer)

    def relations_into(self, sid: str) -> tuple[Relation, ...]:
        return tuple(r for r in self.relations if r.target == sid)

    def used_themes(self) -> frozenset[str]:
        used: set[str] = set()
        for ts in self.statement_themes.values():
            used |= ts
        for r in self.relations:
            used |= r.themes
        return frozenset(used) & frozenset(self.themes)


@dataclass(frozen=True)
class AspectSet:
    """A finite set of algebra elements; ``full`` marks the whole carrier.

    The full carrier of a k-proposition algebra has 2**2**k members, far too
    many to materialise beyond tiny k, so "ALL" rows stay symbolic.  Explicit
    sets that happen to enumerate the entire carrier are normalised to full.
    """

    algebra: Algebra
    elements: frozenset[Element] = frozenset()
    full: bool = False

    def __post_init__(self) -> None:
        # beyond k = 4 the carrier cannot be enumerated, so only small
        # algebras need the explicit-set-that-is-actually-full normalisation
        if (
            not self.full
            and self.algebra.k <= 4
            and len(self.elements) == self.algebra.carrier_size
        ):
            object.__setattr__(self, "full", True)
            object.__setattr__(self, "elements", frozenset())

    @property
    def is_empty(self) -> bool:
        return not self.full and not self.elements

    def contains(self, e: Element) -> bool:
        return self.full or e in self.elements

    def issubset(self, other: "AspectSet") -> bool:
        if other.full:
            return True
        if self.full:
            return False  # a full carrier never fits in a non-full set
        return self.elements <= other.elements

    def intersection(self, other: "AspectSet") -> "AspectSet":
        if self.full:
            return other
        if other.full:
            return self
        return AspectSet(self.algebra, self.elements & other.elements)

    def union(self, other: "AspectSet") -> "AspectSet":
        if self.full or other.full:
            return AspectSet(self.algebra, full=True)
        return AspectSet(self.algebra, self.elements | other.elements)

    def __iter__(self) -> Iterator[Element]:
        if self.full:
            yield from self.algebra.elements()
        else:
            yield from self.elements

    def size(self) -> int:
        return self.algebra.carrier_size if self.full else len(self.elements)


def empty_aspects(algebra: Algebra) -> AspectSet:
    return AspectSet(algebra)


ThemeSet = frozenset


def canon(themes: Iterable[str]) -> frozenset[str]:
    return frozenset(themes)


@dataclass
class Interpretation:
    """The interpretation function as explicit rows plus a defaulting rule.

    ``theme_aspects`` holds the omega rows (aspects of a theme set) and is
    never defaulted across theme sets: a missing row is the empty set.
    ``statement_aspects`` rows for multi-theme sets default, under
    ``default_mode='union'``, to the union of the singleton rows, except for
    summary pointers, whose aspects are context-dependent and therefore only
    ever explicit.  The empty theme set defaults to the empty aspect set.
    """

    algebra: Algebra
    theme_aspects: dict[frozenset[str], AspectSet] = field(default_factory=dict)
    statement_aspects: dict[tuple[frozenset[str], str], AspectSet] = field(default_factory=dict)
    default_mode: str = UNION

    def omega_row(self, themes: frozenset[str]) -> AspectSet:
        return self.theme_aspects.get(frozenset(themes), empty_aspects(self.algebra))


def lookup(
    interp: Interpretation, model: Model, themes: Iterable[str], s: str
) -> AspectSet:
    """The aspect set of statement ``s`` (or :data:`OMEGA`) for a theme set."""
    t = canon(themes)
    for th in t:
        if th not in model.themes:
            raise UnknownIdError(f"unknown theme id {th!r}")
    if s == OMEGA:
        return interp.omega_row(t)
    stmt = model.statement(s)
    explicit = interp.statement_aspects.get((t, s))
    if explicit is not None:
        return explicit
    if not t or len(t) == 1 or interp.default_mode == EMPTY or stmt.is_summary_pointer:
        return empty_aspects(interp.algebra)
    out = empty_aspects(interp.algebra)
    for th in t:
        out = out.union(lookup(interp, model, frozenset([th]), s))
    return out


def _lookup_maybe_missing(
    interp: Interpretation, model: Model, themes: Iterable[str], s: str
) -> AspectSet:
    # Pointer targets may name statements outside the graph; those carry no
    # aspects (they are typed with the empty theme set).
    if s != OMEGA and not model.has_statement(s):
        return empty_aspects(interp.algebra)
    return lookup(interp, model, themes, s)


def effective_aspect(
    interp: Interpretation, model: Model, themes: Iterable[str], s: str
) -> Element | None:
    """Infimum of the looked-up aspect set, or ``None`` when the set is empty."""
    aspects = lookup(interp, model, themes, s)
    if aspects.is_empty:
        return None
    return inf_set(interp.algebra, iter(aspects))


@dataclass(frozen=True)
class Violation:
    """A constraint violation with enough context to re-verify it.

    ``statements`` lists the offending statement id(s), ``relation`` the
    offending edge when one is involved, and ``theme_set`` the theme subset
    the check was instantiated at.  ``detail`` is a human-readable account
    including the offending aspects where relevant.
    """

    constraint: str
    statements: tuple[str, ...] = ()
    relation: tuple[str, str] | None = None
    theme_set: tuple[str, ...] | None = None
    theme_set2: tuple[str, ...] | None = None
    rel_type: str | None = None
    detail: str = ""

    def sort_key(self) -> tuple:
        return (
            self.constraint,
            self.statements,
            self.relation or ("", ""),
            self.theme_set or (),
            self.theme_set2 or (),
            self.rel_type or "",
            self.detail,
        )


WELLFORMED = "wf"


def validate_wellformed(model: Model) -> list[Violation]:
    """Check the well-formedness conditions on the typed graph itself."""
    out: list[Violation] = []
    declared = set(model.themes)
    if len(declared) != len(model.themes):
        out.append(Violation(WELLFORMED, detail="duplicate theme ids"))
    for th in model.themes:
        if not th:
            out.append(Violation(WELLFORMED, detail="empty theme id"))
    ids = {s.id for s in model.statements}
    for s in model.statements:
        if not s.id:
            out.append(Violation(WELLFORMED, detail="empty statement id"))
        ts = model.themes_of(s.id)
        if not ts:
            out.append(Violation(WELLFORMED, (s.id,), detail=f"statement {s.id} untyped (no themes)"))
        unknown = ts - declared
        if unknown:
            out.append(
                Violation(
                    WELLFORMED,
                    (s.id,),
                    detail=f"statement {s.id} typed with undeclared themes {sorted(unknown)}",
                )
            )
        if s.is_pointer:
            if s.ref_theme not in declared:
                out.append(
                    Violation(
                        WELLFORMED,
                        (s.id,),
                        detail=f"pointer {s.id} references undeclared theme {s.ref_theme!r}",
                    )
                )
            if s.is_statement_pointer and s.ref_target in ids:
                target = model.statement(s.ref_target)
                if target.is_pointer:
                    out.append(
                        Violation(
                            WELLFORMED,
                            (s.id,),
                            detail=f"pointer {s.id} targets pointer {s.ref_target}; "
                            "pointers must reference ordinary statements",
                        )
                    )
    seen_refs: dict[tuple[str, str | None], str] = {}
    for s in model.statements:
        if not s.is_pointer:
            continue
        ref = (s.ref_theme, s.ref_target)
        if ref in seen_refs:
            what = "summary" if s.ref_target is None else f"statement {s.ref_target!r}"
            out.append(
                Violation(
                    WELLFORMED,
                    (seen_refs[ref], s.id),
                    detail=f"{seen_refs[ref]} and {s.id} both point to {what} of theme "
                    f"{s.ref_theme!r}; a pointer statement is identified by its reference",
                )
            )
        else:
            seen_refs[ref] = s.id
    for sid in model.statement_themes:
        if sid not in ids:
            out.append(Violation(WELLFORMED, (sid,), detail=f"typing for unknown statement {sid}"))
    for r in model.relations:
        pair = r.pair
        if r.source not in ids or r.target not in ids:
            out.append(
                Violation(WELLFORMED, relation=pair, detail=f"relation {pair} endpoint missing")
            )
            continue
        if not r.rel_types:
            out.append(
                Violation(WELLFORMED, relation=pair, detail=f"relation {pair} has no attack/support type")
            )
        if not r.rel_types <= set(REL_TYPES):
            out.append(
                Violation(
                    WELLFORMED,
                    relation=pair,
                    detail=f"relation {pair} has unknown types {sorted(r.rel_types - set(REL_TYPES))}",
                )
            )
        if not r.themes:
            out.append(Violation(WELLFORMED, relation=pair, detail=f"relation {pair} has no themes"))
        endpoint_themes = model.themes_of(r.source) | model.themes_of(r.target)
        stray = r.themes - endpoint_themes
        if stray:
            out.append(
                Violation(
                    WELLFORMED,
                    relation=pair,
                    detail=f"relation {pair} typed with themes {sorted(stray)} "
                    "outside the themes of its endpoints",
                )
            )
    out.sort(key=Violation.sort_key)
    return out
