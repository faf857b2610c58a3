"""Shared test helpers: independent oracles and random generators.

The oracles here deliberately re-derive results from first principles
(truth tables, subset enumeration, permutation search) so they share no code
path with the implementations they check.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

from aspectarg.algebra import Algebra, Element, mk_algebra
from aspectarg.formulas import And, Atom, Const, Iff, Implies, Not, Or
from aspectarg.model import (
    ATTACK,
    SUPPORT,
    AspectSet,
    Interpretation,
    Model,
    Relation,
    Statement,
)

# ---------------------------------------------------------------------------
# Truth-table oracle for the formula language.
# ---------------------------------------------------------------------------


def eval_bool(expr, assignment: dict[str, bool]) -> bool:
    if isinstance(expr, Atom):
        return assignment[expr.name]
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Not):
        return not eval_bool(expr.operand, assignment)
    if isinstance(expr, And):
        return eval_bool(expr.left, assignment) and eval_bool(expr.right, assignment)
    if isinstance(expr, Or):
        return eval_bool(expr.left, assignment) or eval_bool(expr.right, assignment)
    if isinstance(expr, Implies):
        return (not eval_bool(expr.left, assignment)) or eval_bool(expr.right, assignment)
    if isinstance(expr, Iff):
        return eval_bool(expr.left, assignment) == eval_bool(expr.right, assignment)
    raise TypeError(expr)


def truth_table_element(expr, algebra: Algebra) -> Element:
    """Evaluate an expression by brute-force truth table."""
    mask = 0
    for m in range(algebra.n_minterms):
        assignment = {name: bool((m >> i) & 1) for i, name in enumerate(algebra.props)}
        if eval_bool(expr, assignment):
            mask |= 1 << m
    return Element(algebra, mask)


def random_expr(rng: random.Random, names: list[str], depth: int = 3):
    if depth == 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.1:
            return Const(rng.random() < 0.5)
        return Atom(rng.choice(names))
    kind = rng.choice(["not", "and", "or", "implies", "iff"])
    if kind == "not":
        return Not(random_expr(rng, names, depth - 1))
    left = random_expr(rng, names, depth - 1)
    right = random_expr(rng, names, depth - 1)
    return {"and": And, "or": Or, "implies": Implies, "iff": Iff}[kind](left, right)


# ---------------------------------------------------------------------------
# Brute-force statements-sets oracles.
# ---------------------------------------------------------------------------


def oracle_width_sets(model: Model, s: str, t: str, rel: str) -> list[frozenset[str]]:
    """Maximal sets per the width definition, anchor membership excepted."""
    edges = {r.pair: r for r in model.relations}
    ids = [st.id for st in model.statements]

    def qualifies(members: frozenset[str]) -> bool:
        if s not in members:
            return False
        for other in members - {s}:
            r = edges.get((other, s))
            if r is None or rel not in r.rel_types or t not in r.themes:
                return False
            if t not in model.themes_of(other) or t not in model.themes_of(s):
                return False
        return True

    qualifying = [
        frozenset(c) | {s}
        for n in range(len(ids) + 1)
        for c in combinations(ids, n)
        if qualifies(frozenset(c) | {s})
    ]
    qualifying = list(set(qualifying))
    return [q for q in qualifying if not any(q < other for other in qualifying)]


def oracle_depth_sets(model: Model, s: str, t: str, rel: str) -> list[frozenset[str]]:
    """Maximal sets per the depth definition, by permutation search."""
    edges = {r.pair: r for r in model.relations}
    ids = [st.id for st in model.statements]

    def is_path(order: tuple[str, ...]) -> bool:
        if order[-1] != s:
            return False
        for sid in order:
            if t not in model.themes_of(sid):
                return False
        for a, b in zip(order, order[1:]):
            r = edges.get((a, b))
            if r is None or rel not in r.rel_types or t not in r.themes:
                return False
        return True

    def qualifies(members: frozenset[str]) -> bool:
        return any(is_path(order) for order in permutations(members))

    qualifying = [
        frozenset(c) | {s}
        for n in range(len(ids) + 1)
        for c in combinations(ids, n)
        if s in (set(c) | {s}) and qualifies(frozenset(c) | {s})
    ]
    qualifying = list(set(qualifying))
    return [q for q in qualifying if not any(q < other for other in qualifying)]


# ---------------------------------------------------------------------------
# Brute-force Dung semantics oracle.
# ---------------------------------------------------------------------------


def oracle_dung(args: frozenset[str], attacks: frozenset[tuple[str, str]]) -> dict:
    items = sorted(args)
    subsets = [
        frozenset(c) for n in range(len(items) + 1) for c in combinations(items, n)
    ]

    def conflict_free(s):
        return not any((a, b) in attacks for a in s for b in s)

    def defended(s, a):
        return all(
            any((c, b) in attacks for c in s) for (b, tgt) in attacks if tgt == a
        )

    cf = [s for s in subsets if conflict_free(s)]
    adm = [s for s in cf if all(defended(s, a) for a in s)]
    comp = [s for s in adm if all((a in s) == True for a in args if defended(s, a))]
    grounded = [s for s in comp if all(s <= other for other in comp)]
    assert len(grounded) == 1, "grounded extension must be the least complete"
    return {
        "grounded": frozenset(grounded),
        "complete": frozenset(comp),
        "preferred": frozenset(s for s in adm if not any(s < o for o in adm)),
        "stable": frozenset(
            s for s in cf if all(any((a, b) in attacks for a in s) for b in args - s)
        ),
        "naive": frozenset(s for s in cf if not any(s < o for o in cf)),
    }


# ---------------------------------------------------------------------------
# Random model generators.
# ---------------------------------------------------------------------------


def _nonempty_sample(rng: random.Random, pool: list[str]) -> set[str]:
    return set(rng.sample(pool, rng.randint(1, len(pool))))


def aspect_support_of(model: Model, stmt: Statement) -> frozenset[str]:
    own = model.themes_of(stmt.id)
    if not stmt.is_pointer:
        return own
    widened = own | {stmt.ref_theme}
    if stmt.is_summary_pointer:
        return widened
    if not model.has_statement(stmt.ref_target):
        return frozenset()
    return widened & model.themes_of(stmt.ref_target)


def random_graphic_safe_model(
    rng: random.Random,
    max_themes: int = 2,
    max_ordinary: int = 2,
    max_pointers: int = 2,
    max_relations: int = 3,
) -> Model:
    """A well-formed model satisfying tr, nsa, nnp and kos by construction,
    with relation themes interpretable at both endpoints."""
    themes = [f"t{i + 1}" for i in range(rng.randint(1, max_themes))]
    statements: list[Statement] = []
    st_themes: dict[str, set[str]] = {}
    for i in range(rng.randint(1, max_ordinary)):
        sid = f"a{i + 1}"
        statements.append(Statement(sid))
        st_themes[sid] = _nonempty_sample(rng, themes)
    ordinaries = [s.id for s in statements]
    used_refs: set[tuple[str, str | None]] = set()
    for i in range(rng.randint(0, max_pointers)):
        kind = rng.choice(["stmt", "summary"])
        sid = f"p{i + 1}"
        if kind == "stmt":
            target = rng.choice(ordinaries)
            target_themes = sorted(st_themes[target])
            ref = rng.choice(target_themes)
            if (ref, target) in used_refs:
                continue  # a pointer statement is identified by its reference
            used_refs.add((ref, target))
            statements.append(Statement(sid, ref_theme=ref, ref_target=target))
            st_themes[sid] = _nonempty_sample(rng, target_themes)
        else:
            inhabited = sorted({t for ts in st_themes.values() for t in ts})
            ref = rng.choice(inhabited)
            if (ref, None) in used_refs:
                continue
            used_refs.add((ref, None))
            statements.append(Statement(sid, ref_theme=ref, ref_target=None))
            st_themes[sid] = _nonempty_sample(rng, themes)

    model = Model.build(themes, statements, st_themes, [])
    supports = {s.id: aspect_support_of(model, s) for s in statements}

    relations: list[Relation] = []
    for _ in range(rng.randint(0, max_relations)):
        s1, s2 = rng.choice(statements), rng.choice(statements)
        shared_pi = st_themes[s1.id] & st_themes[s2.id]
        pool = (
            supports[s1.id]
            & supports[s2.id]
            & (st_themes[s1.id] | st_themes[s2.id])
        )
        if not shared_pi & pool:
            continue
        base = rng.choice(sorted(shared_pi & pool))
        rel_themes = {base} | set(
            rng.sample(sorted(pool), rng.randint(0, len(pool)))
        )
        if s1.id == s2.id:
            types = {SUPPORT}
        else:
            types = rng.choice([{ATTACK}, {SUPPORT}, {ATTACK, SUPPORT}])
        relations.append(Relation(s1.id, s2.id, frozenset(types), frozenset(rel_themes)))
    return Model.build(themes, statements, st_themes, relations)


def random_model_any(rng: random.Random, max_themes: int = 2) -> Model:
    """A well-formed model that may violate tr, nsa, nnp or kos.

    Summary pointers always reference inhabited themes; the degenerate
    uninhabited-summary corner is covered by a dedicated test instead
    (see test_synthesis.py).
    """
    themes = [f"t{i + 1}" for i in range(rng.randint(1, max_themes))]
    statements: list[Statement] = []
    st_themes: dict[str, set[str]] = {}
    for i in range(rng.randint(1, 2)):
        sid = f"a{i + 1}"
        statements.append(Statement(sid))
        st_themes[sid] = _nonempty_sample(rng, themes)
    ordinaries = [s.id for s in statements]
    used_refs: set[tuple[str, str | None]] = set()
    for i in range(rng.randint(0, 2)):
        sid = f"p{i + 1}"
        if rng.random() < 0.5:
            if rng.random() < 0.4:  # dangling target: nnp violation
                target = "missing"
                ref = rng.choice(themes)
            else:
                target = rng.choice(ordinaries)
                ref = (
                    rng.choice(sorted(st_themes[target]))
                    if rng.random() < 0.7
                    else rng.choice(themes)
                )
            if (ref, target) in used_refs:
                continue
            used_refs.add((ref, target))
            statements.append(Statement(sid, ref_theme=ref, ref_target=target))
            st_themes[sid] = _nonempty_sample(rng, themes)  # may violate kos
        else:
            inhabited = sorted({t for ts in st_themes.values() for t in ts})
            ref = rng.choice(inhabited)
            if (ref, None) in used_refs:
                continue
            used_refs.add((ref, None))
            statements.append(Statement(sid, ref_theme=ref, ref_target=None))
            st_themes[sid] = _nonempty_sample(rng, themes)
    relations: list[Relation] = []
    for _ in range(rng.randint(0, 3)):
        s1, s2 = rng.choice(statements), rng.choice(statements)
        pool = sorted(st_themes[s1.id] | st_themes[s2.id])
        rel_themes = _nonempty_sample(rng, pool)
        types = rng.choice([{ATTACK}, {SUPPORT}, {ATTACK, SUPPORT}])
        relations.append(Relation(s1.id, s2.id, frozenset(types), frozenset(rel_themes)))
    return Model.build(themes, statements, st_themes, relations)


def random_total_interpretation(
    rng: random.Random, model: Model, algebra: Algebra
) -> Interpretation:
    """Random tables assigning every statement aspects for each of its themes.

    Totality reflects the intended use of interpretations (every statement
    touches upon something); it is what makes graphic defects observable
    through the core constraints.
    """
    nonzero = list(range(1, algebra.carrier_size))
    rows: dict[tuple[frozenset[str], str], AspectSet] = {}
    for s in model.statements:
        for t in model.themes_of(s.id):
            masks = rng.sample(nonzero, rng.randint(1, 2))
            rows[(frozenset([t]), s.id)] = AspectSet(
                algebra, frozenset(Element(algebra, m) for m in masks)
            )
    theme_rows: dict[frozenset[str], AspectSet] = {}
    subsets = [
        frozenset(c)
        for n in range(1, len(model.themes) + 1)
        for c in combinations(model.themes, n)
    ]
    if rng.random() < 0.75:
        for t_set in subsets:
            theme_rows[t_set] = AspectSet(algebra, full=True)
    else:
        e = Element(algebra, rng.choice(nonzero))
        small = frozenset({algebra.bottom, algebra.top, e, ~e})
        for t_set in subsets:
            theme_rows[t_set] = rng.choice(
                [AspectSet(algebra, full=True), AspectSet(algebra, small)]
            )
    return Interpretation(algebra, theme_rows, rows)


# ---------------------------------------------------------------------------
# Block-structured instances satisfying Core + E by construction.
# ---------------------------------------------------------------------------


def block_instance(rng: random.Random, m: int | None = None):
    """A (model, interpretation) pair satisfying Core and the exact-region
    constraints: one proposition block per theme, per-theme aspect rows of
    non-extremal block elements, theme rows equal to generated subalgebras,
    unions across themes.  Optional support edges join statements with equal
    rows (affirmations), keeping attack-as-attack non-vacuous."""
    m = m if m is not None else rng.choice([2, 3])
    block_size = 2 if m == 2 else 1
    themes = [f"t{j + 1}" for j in range(m)]
    props = [f"w{j + 1}_{i + 1}" for j in range(m) for i in range(block_size)]
    algebra = mk_algebra(props)
    block_bits = {
        themes[j]: [algebra.props.index(f"w{j + 1}_{i + 1}") for i in range(block_size)]
        for j in range(m)
    }

    def subalgebra_over(theme_set: frozenset[str]) -> AspectSet:
        allowed = sorted(bit for t in theme_set for bit in block_bits[t])
        if len(allowed) == algebra.k:
            return AspectSet(algebra, full=True)
        # one cylinder per assignment of the allowed bits; the subalgebra's
        # members are exactly the unions of cylinders
        cylinders = []
        for pattern in range(1 << len(allowed)):
            mask = 0
            for minterm in range(algebra.n_minterms):
                if all(
                    ((minterm >> bit) & 1) == ((pattern >> idx) & 1)
                    for idx, bit in enumerate(allowed)
                ):
                    mask |= 1 << minterm
            cylinders.append(mask)
        members = set()
        for bits in range(1 << len(cylinders)):
            mask = 0
            for idx, cyl in enumerate(cylinders):
                if (bits >> idx) & 1:
                    mask |= cyl
            members.add(Element(algebra, mask))
        return AspectSet(algebra, frozenset(members))

    single_subalgebras = {t: subalgebra_over(frozenset([t])) for t in themes}

    def block_row(theme: str) -> AspectSet:
        sub = single_subalgebras[theme]
        non_extremal = sorted(
            (e for e in sub.elements if not e.is_bottom and not e.is_top),
            key=lambda e: e.mask,
        )
        base = rng.choice(non_extremal)
        above = [e for e in non_extremal if base <= e]
        chosen = {base} | set(rng.sample(above, rng.randint(0, len(above))))
        return AspectSet(algebra, frozenset(chosen))

    statements: list[Statement] = []
    st_themes: dict[str, set[str]] = {}
    for i in range(rng.randint(1, 2)):
        sid = f"a{i + 1}"
        statements.append(Statement(sid))
        st_themes[sid] = _nonempty_sample(rng, themes)
    ordinaries = [s.id for s in statements]
    if rng.random() < 0.5:
        target = rng.choice(ordinaries)
        ref = rng.choice(sorted(st_themes[target]))
        statements.append(Statement("p1", ref_theme=ref, ref_target=target))
        st_themes["p1"] = _nonempty_sample(rng, sorted(st_themes[target]))
    if rng.random() < 0.4:
        inhabited = sorted({t for ts in st_themes.values() for t in ts})
        statements.append(Statement("c1", ref_theme=rng.choice(inhabited), ref_target=None))
        st_themes["c1"] = _nonempty_sample(rng, themes)

    # affirmation support edge between the two ordinary statements, sometimes
    relations: list[Relation] = []
    affirm_pair: tuple[str, str] | None = None
    if rng.random() < 0.5 and len(ordinaries) >= 2:
        shared = st_themes[ordinaries[0]] & st_themes[ordinaries[1]]
        if shared:
            affirm_pair = (ordinaries[0], ordinaries[1])
            relations.append(
                Relation(*affirm_pair, frozenset({SUPPORT}), frozenset(shared))
            )

    model = Model.build(themes, statements, st_themes, relations)
    supports = {s.id: aspect_support_of(model, s) for s in statements}

    rows: dict[tuple[frozenset[str], str], AspectSet] = {}
    for s in statements:
        if s.is_statement_pointer:
            continue
        for t in sorted(supports[s.id]):
            rows[(frozenset([t]), s.id)] = block_row(t)
    if affirm_pair is not None:
        first, second = affirm_pair
        for t in sorted(st_themes[first] & st_themes[second]):
            rows[(frozenset([t]), second)] = rows[(frozenset([t]), first)]
    for s in statements:
        if s.is_statement_pointer:
            for t in sorted(supports[s.id]):
                rows[(frozenset([t]), s.id)] = rows[(frozenset([t]), s.ref_target)]
    # summary pointers never default: write their unions out explicitly
    for s in statements:
        if not s.is_summary_pointer:
            continue
        for n in range(2, m + 1):
            for combo in combinations(themes, n):
                t_set = frozenset(combo)
                chosen = sorted(t_set & supports[s.id])
                if not chosen:
                    continue
                merged = AspectSet(algebra)
                for t in chosen:
                    merged = merged.union(rows[(frozenset([t]), s.id)])
                rows[(t_set, s.id)] = merged

    theme_rows = {
        frozenset(c): subalgebra_over(frozenset(c))
        for n in range(1, m + 1)
        for c in combinations(themes, n)
    }
    interp = Interpretation(algebra, theme_rows, rows)
    return model, interp
