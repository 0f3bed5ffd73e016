"""Compilation of past-present programs into extended formulas.

Three translations are provided, all evaluated classically over total
traces:

* `completion`: one biconditional per alphabet atom gathering the
  supporting rule bodies, initial rules guarded by `I`, dynamic rules by
  `not I`; headless initial/dynamic rules and all final rules are
  carried over as constraints.
* `loop_formulas`: for every loop of a section graph, the loop
  disjunction implies its external support, the dynamic schema wrapped
  in `wnext_always`.
* `program_as_ltlf`: the rules themselves read as formulas.

Emission is canonical and unsimplified; `simplify` applies a fixed set
of truth-constant rewrites when shorter output is wanted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import MixedSection, UnknownAtom
from .syntax import (
    Always, And, Atom, AtomRef, CORE_TRUE, ExtFormula, FALSUM, FINAL_CONST,
    Falsum, Iff, Implies, INITIAL_CONST, INITIAL_EXPANSION, Not, Or,
    PastFormula, Previous, Program, Rule, RuleKind, Since, Trigger, Verum,
    VERUM, WeakNextAlways, head_disjunction, or_chain,
)
from .depgraph import DEFAULT_SCC_CAP, dependency_graph, enumerate_loops

__all__ = [
    "support_transform", "external_support", "completion_atom", "completion",
    "loop_formulas", "program_as_ltlf", "simplify", "CompilationUnit",
    "compile_unit",
]


def support_transform(f: PastFormula, loop: Iterable[Atom]) -> PastFormula:
    """Strike the loop atoms out of the positive present part of f.

    Atoms in the loop become false; negated and previous subformulas are
    left untouched; since and trigger are unfolded one step so that only
    their present part is transformed.  The unfolded trigger keeps its
    past part under a weak previous (`prev ... or initially`): at the
    first point a trigger reduces to its right argument alone, and only
    the weak form preserves that, mirroring how the boundary value flips
    when conjunction and disjunction swap roles.  The since clause keeps
    the strong previous, whose conjoined unfolding is already exact.
    """
    loop = frozenset(loop)

    def walk(g):
        tp = type(g)
        if tp is AtomRef:
            return FALSUM if g.name in loop else g
        if tp is Falsum or tp is Not or tp is Previous:
            return g
        if tp is And:
            return And(walk(g.lhs), walk(g.rhs))
        if tp is Or:
            return Or(walk(g.lhs), walk(g.rhs))
        if tp is Trigger:
            return And(walk(g.rhs),
                       Or(walk(g.lhs), Or(Previous(g), INITIAL_EXPANSION)))
        if tp is Since:
            return Or(walk(g.rhs), And(walk(g.lhs), Previous(g)))
        raise ValueError(f"not a core past formula: {g!r}")

    return walk(f)


def _support_term(rule: Rule, excluded: frozenset[Atom],
                  body: PastFormula) -> PastFormula:
    term = body
    for atom in rule.head:
        if atom not in excluded:
            term = And(term, Not(AtomRef(atom)))
    return term


def external_support(rules: Sequence[Rule], loop: Iterable[Atom]) -> PastFormula:
    """External support formula of an atom set over a single-section rule set.

    Disjunction, in source order, over the rules whose head meets the
    loop, of the transformed body conjoined with the negations of the
    head atoms outside the loop; false when no rule qualifies.
    """
    if len({r.kind for r in rules}) > 1:
        raise MixedSection("external support needs rules from one section")
    loop = frozenset(loop)
    disjuncts = [
        _support_term(r, loop, support_transform(r.body, loop))
        for r in sorted(rules, key=lambda r: r.source_index)
        if loop.intersection(r.head)
    ]
    return or_chain(disjuncts, FALSUM)


def completion_atom(p: Program, atom: Atom) -> ExtFormula:
    """The completion biconditional of one alphabet atom.

    The right-hand side disjoins the initial supports (guarded by `I`)
    and the dynamic supports (guarded by `not I`), in source order; a
    section with no supporting rule contributes false, and an atom with
    no supporting rule at all gets a plain false.
    """
    if atom not in p.alphabet:
        raise UnknownAtom(f"{atom!r} is not in the program alphabet")
    initial_parts = [
        And(INITIAL_CONST, _support_term(r, frozenset((atom,)), r.body))
        for r in p.initial if atom in r.head
    ]
    dynamic_parts = [
        And(Not(INITIAL_CONST), _support_term(r, frozenset((atom,)), r.body))
        for r in p.dynamic if atom in r.head
    ]
    if not initial_parts and not dynamic_parts:
        rhs: ExtFormula = FALSUM
    else:
        rhs = Or(or_chain(initial_parts, FALSUM),
                 or_chain(dynamic_parts, FALSUM))
    return Always(Iff(AtomRef(atom), rhs))


def _constraint_formula(rule: Rule) -> ExtFormula:
    if rule.kind is RuleKind.FINAL:
        return Always(Implies(FINAL_CONST, Implies(rule.body, FALSUM)))
    if rule.kind is RuleKind.DYNAMIC:
        return WeakNextAlways(Implies(rule.body, FALSUM))
    return Implies(rule.body, FALSUM)


def completion(p: Program) -> list[ExtFormula]:
    """Temporal completion: atom biconditionals, then carried constraints."""
    out = [completion_atom(p, atom) for atom in sorted(p.alphabet)]
    out.extend(_constraint_formula(r) for r in p.rules
               if r.kind is not RuleKind.FINAL and not r.head)
    out.extend(_constraint_formula(r) for r in p.final)
    return out


def _rule_formula(rule: Rule) -> ExtFormula:
    if rule.kind is RuleKind.FINAL:
        return Always(Implies(FINAL_CONST, Implies(rule.body, FALSUM)))
    head = head_disjunction(rule)
    # Facts print as their bare head; `true -> h` adds nothing.
    if rule.body == CORE_TRUE or type(rule.body) is Verum:
        core: ExtFormula = head
    else:
        core = Implies(rule.body, head)
    if rule.kind is RuleKind.DYNAMIC:
        return WeakNextAlways(core)
    return core


def program_as_ltlf(p: Program) -> list[ExtFormula]:
    """The rules themselves read classically, in source order."""
    return [_rule_formula(r) for r in p.rules]


def loop_formulas(p: Program, unitary: bool = False,
                  scc_cap: int = DEFAULT_SCC_CAP) -> list[ExtFormula]:
    """One formula per loop: initial loops first, then dynamic loops.

    Loops come out in canonical order; each formula states that the loop
    disjunction implies the external support of the loop within its own
    section.
    """
    out: list[ExtFormula] = []
    for rules, section in ((p.initial, RuleKind.INITIAL),
                           (p.dynamic, RuleKind.DYNAMIC)):
        graph = dependency_graph(rules, p.alphabet, section)
        for loop in enumerate_loops(graph, unitary, scc_cap):
            atoms = or_chain([AtomRef(a) for a in sorted(loop.atoms)], FALSUM)
            body = Implies(atoms, external_support(rules, loop.atoms))
            if section is RuleKind.DYNAMIC:
                out.append(WeakNextAlways(body))
            else:
                out.append(body)
    return out


# ---------------------------------------------------------------------------
# Simplification
# ---------------------------------------------------------------------------

def simplify(f: ExtFormula) -> ExtFormula:
    """Apply the truth-constant rewrites, bottom-up, to a fixpoint.

    Only these rules are used (plus their mirror images): false-and
    collapses, true-and drops, false-or drops, true-or collapses,
    not-false and not-true flip.  Everything else is preserved, so the
    result stays semantically equivalent connective by connective.
    """
    tp = type(f)
    if tp is Not:
        arg = simplify(f.arg)
        if type(arg) is Falsum:
            return VERUM
        if type(arg) is Verum:
            return FALSUM
        return f if arg is f.arg else Not(arg)
    if tp is And:
        lhs = simplify(f.lhs)
        rhs = simplify(f.rhs)
        if type(lhs) is Falsum or type(rhs) is Falsum:
            return FALSUM
        if type(lhs) is Verum:
            return rhs
        if type(rhs) is Verum:
            return lhs
        return f if lhs is f.lhs and rhs is f.rhs else And(lhs, rhs)
    if tp is Or:
        lhs = simplify(f.lhs)
        rhs = simplify(f.rhs)
        if type(lhs) is Verum or type(rhs) is Verum:
            return VERUM
        if type(lhs) is Falsum:
            return rhs
        if type(rhs) is Falsum:
            return lhs
        return f if lhs is f.lhs and rhs is f.rhs else Or(lhs, rhs)
    if tp in (Previous, Always, WeakNextAlways):
        arg = simplify(f.arg)
        return f if arg is f.arg else tp(arg)
    if tp in (Since, Trigger, Implies, Iff):
        lhs = simplify(f.lhs)
        rhs = simplify(f.rhs)
        return f if lhs is f.lhs and rhs is f.rhs else tp(lhs, rhs)
    return f


# ---------------------------------------------------------------------------
# Aggregated compilation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompilationUnit:
    """Everything the compiler can say about one program.

    `provenance` maps each emitted formula to the labels of its sources
    (an atom, a rule index or a loop); identical formulas share an
    entry.
    """

    completion: tuple[ExtFormula, ...]
    loop_formulas: tuple[ExtFormula, ...]
    program_formulas: tuple[ExtFormula, ...]
    provenance: dict = field(compare=False)


def compile_unit(p: Program, unitary: bool = False,
                 scc_cap: int = DEFAULT_SCC_CAP) -> CompilationUnit:
    """Compile a program and record where each formula came from."""
    provenance: dict[ExtFormula, tuple[str, ...]] = {}

    def record(formula: ExtFormula, label: str) -> ExtFormula:
        labels = provenance.get(formula, ())
        if label not in labels:
            provenance[formula] = labels + (label,)
        return formula

    comp = []
    for atom in sorted(p.alphabet):
        comp.append(record(completion_atom(p, atom), f"atom {atom}"))
    for rule in p.rules:
        if rule.kind is not RuleKind.FINAL and not rule.head:
            comp.append(record(_constraint_formula(rule),
                               f"rule {rule.source_index}"))
    for rule in p.final:
        comp.append(record(_constraint_formula(rule),
                           f"rule {rule.source_index}"))

    loops = []
    for rules, section in ((p.initial, RuleKind.INITIAL),
                           (p.dynamic, RuleKind.DYNAMIC)):
        graph = dependency_graph(rules, p.alphabet, section)
        for loop in enumerate_loops(graph, unitary, scc_cap):
            atoms = or_chain([AtomRef(a) for a in sorted(loop.atoms)], FALSUM)
            body = Implies(atoms, external_support(rules, loop.atoms))
            formula = WeakNextAlways(body) if section is RuleKind.DYNAMIC else body
            label = f"{section.value} loop {{{', '.join(sorted(loop.atoms))}}}"
            loops.append(record(formula, label))

    prog = [record(_rule_formula(r), f"rule {r.source_index}") for r in p.rules]
    return CompilationUnit(tuple(comp), tuple(loops), tuple(prog), provenance)
