"""Parse and validate the PDDL subset used by the embedded game corpus.

Supported: `:strips`, `:typing`, `:equality`, `:conditional-effects`,
`:universal-preconditions`, `:negative-preconditions`, `either` types,
domain `:constants`, and `;` comments. Everything else (numeric fluents,
durative actions, derived predicates, ...) is rejected with an
`unsupported-construct` diagnostic.

Grammar notes enforced here:
  * `or` may appear in preconditions and goals only;
  * `when` may appear in effects only and cannot nest inside another `when`;
  * effect leaves are literals (atoms or negated atoms);
  * every variable must be bound by the action parameters or an enclosing
    `forall`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import errors as E
from .ast import (
    ROOT_TYPE,
    ActionSchema,
    And,
    Atom,
    DomainAst,
    Eq,
    Forall,
    Formula,
    LinkedTask,
    Not,
    Or,
    PredicateDecl,
    ProblemAst,
    TypedName,
    TypeRef,
    When,
)
from .reader import SAtom, SList, SNode, read_one

SUPPORTED_REQUIREMENTS = frozenset(
    {
        ":strips",
        ":typing",
        ":equality",
        ":conditional-effects",
        ":universal-preconditions",
        ":negative-preconditions",
    }
)


@dataclass
class _Builder:
    diagnostics: list = field(default_factory=list)

    def diag(self, code: str, message: str, node: SNode | None = None) -> None:
        line = node.line if node is not None else 0
        col = node.col if node is not None else 0
        self.diagnostics.append(E.Diagnostic(code, message, line, col))

    def fail_if_dirty(self) -> None:
        if self.diagnostics:
            raise E.PddlError(self.diagnostics)


def _expect_atom(b: _Builder, node: SNode, what: str) -> str | None:
    if isinstance(node, SAtom):
        return node.text
    b.diag(E.SYNTAX, f"expected {what}", node)
    return None


def _type_ref(b: _Builder, node: SNode) -> TypeRef:
    if isinstance(node, SAtom):
        return node.text
    if node.items and isinstance(node.items[0], SAtom) and node.items[0].text == "either":
        members = []
        for item in node.items[1:]:
            name = _expect_atom(b, item, "type name inside (either ...)")
            if name is not None:
                members.append(name)
        if members:
            return tuple(members)
        b.diag(E.SYNTAX, "(either ...) needs at least one type", node)
        return ROOT_TYPE
    head = node.items[0].text if node.items and isinstance(node.items[0], SAtom) else "()"
    b.diag(E.UNSUPPORTED, f"'{head}' is not a supported type expression", node)
    return ROOT_TYPE


def _typed_names(b: _Builder, items: tuple, *, variables: bool, where: str) -> tuple:
    """Parse a PDDL typed list ``n1 n2 - t n3 ...`` into TypedName entries."""
    out: list[TypedName] = []
    pending: list[tuple[str, SNode]] = []
    i = 0
    while i < len(items):
        node = items[i]
        if isinstance(node, SAtom) and node.text == "-":
            i += 1
            if i >= len(items):
                b.diag(E.SYNTAX, f"type expected after '-' in {where}", node)
                break
            tref = _type_ref(b, items[i])
            out.extend(TypedName(name, tref) for name, _ in pending)
            pending = []
        elif isinstance(node, SAtom):
            name = node.text
            if variables and not name.startswith("?"):
                b.diag(E.SYNTAX, f"variable expected in {where}, got '{name}'", node)
            elif not variables and name.startswith("?"):
                b.diag(E.SYNTAX, f"name expected in {where}, got variable '{name}'", node)
            else:
                pending.append((name, node))
        else:
            b.diag(E.SYNTAX, f"name expected in {where}", node)
        i += 1
    out.extend(TypedName(name, ROOT_TYPE) for name, _ in pending)
    return tuple(out)


# -- formulas -----------------------------------------------------------------

_NUMERIC_HEADS = {"increase", "decrease", "assign", "scale-up", "scale-down"}


@dataclass
class _FormulaCtx:
    b: _Builder
    kind: str  # "pre" | "eff" | "goal"
    predicates: dict | None  # name -> PredicateDecl, when known
    constants: frozenset
    bound: frozenset
    owner: str  # action or problem name, for messages
    in_when: bool = False

    def with_bound(self, extra) -> "_FormulaCtx":
        return _FormulaCtx(
            self.b, self.kind, self.predicates, self.constants,
            self.bound | frozenset(extra), self.owner, self.in_when,
        )

    def inside_when(self) -> "_FormulaCtx":
        return _FormulaCtx(
            self.b, self.kind, self.predicates, self.constants,
            self.bound, self.owner, True,
        )


def _check_term(ctx: _FormulaCtx, name: str, node: SNode) -> None:
    if name.startswith("?"):
        if name not in ctx.bound:
            if ctx.kind == "goal":
                ctx.b.diag(E.UNBOUND_VARIABLE, f"free variable '{name}' in goal", node)
            else:
                ctx.b.diag(
                    E.UNBOUND_VARIABLE,
                    f"variable '{name}' not bound in action '{ctx.owner}'",
                    node,
                )
    elif ctx.kind != "goal" and name not in ctx.constants:
        ctx.b.diag(
            E.UNDECLARED_CONSTANT,
            f"'{name}' is not a declared constant (action '{ctx.owner}')",
            node,
        )


def _atom(ctx: _FormulaCtx, node: SList) -> Atom:
    head = node.items[0].text  # caller guarantees an SAtom head
    args = []
    for item in node.items[1:]:
        name = _expect_atom(ctx.b, item, "atom argument")
        if name is None:
            continue
        _check_term(ctx, name, item)
        args.append(name)
    if ctx.predicates is not None:
        decl = ctx.predicates.get(head)
        if decl is None:
            ctx.b.diag(E.UNDECLARED_PREDICATE, f"predicate '{head}' is not declared", node)
        elif decl.arity != len(args):
            ctx.b.diag(
                E.ARITY_MISMATCH,
                f"predicate '{head}' expects {decl.arity} arguments, got {len(args)}",
                node,
            )
    return Atom(head, tuple(args))


def _formula(ctx: _FormulaCtx, node: SNode) -> Formula:
    if isinstance(node, SAtom):
        ctx.b.diag(E.SYNTAX, f"expected a formula, got '{node.text}'", node)
        return And()
    if not node.items:
        ctx.b.diag(E.SYNTAX, "expected a formula, got '()'", node)
        return And()
    head_node = node.items[0]
    if not isinstance(head_node, SAtom):
        ctx.b.diag(E.SYNTAX, "formula head must be a symbol", node)
        return And()
    head = head_node.text

    if head == "and":
        return And(tuple(_formula(ctx, item) for item in node.items[1:]))

    if head == "or":
        if ctx.kind == "eff":
            ctx.b.diag(E.UNSUPPORTED, "'or' is not allowed in effects", node)
        return Or(tuple(_formula(ctx, item) for item in node.items[1:]))

    if head == "not":
        if len(node.items) != 2:
            ctx.b.diag(E.SYNTAX, "'not' takes exactly one formula", node)
            return And()
        body = _formula(ctx, node.items[1])
        if ctx.kind == "eff" and not isinstance(body, Atom):
            ctx.b.diag(E.UNSUPPORTED, "effects may negate atoms only", node)
        return Not(body)

    if head == "forall":
        if len(node.items) != 3 or not isinstance(node.items[1], SList):
            ctx.b.diag(E.SYNTAX, "'forall' takes (vars) and one body formula", node)
            return And()
        vars_ = _typed_names(ctx.b, node.items[1].items, variables=True, where="forall")
        inner = ctx.with_bound(v.name for v in vars_)
        return Forall(vars_, _formula(inner, node.items[2]))

    if head == "when":
        if ctx.kind != "eff":
            ctx.b.diag(E.UNSUPPORTED, "'when' is only allowed in effects", node)
            return And()
        if ctx.in_when:
            ctx.b.diag(E.UNSUPPORTED, "'when' cannot nest inside another 'when'", node)
            return And()
        if len(node.items) != 3:
            ctx.b.diag(E.SYNTAX, "'when' takes a condition and an effect", node)
            return And()
        cond_ctx = _FormulaCtx(
            ctx.b, "pre", ctx.predicates, ctx.constants, ctx.bound, ctx.owner
        )
        return When(_formula(cond_ctx, node.items[1]), _formula(ctx.inside_when(), node.items[2]))

    if head == "=":
        if ctx.kind == "eff":
            ctx.b.diag(E.UNSUPPORTED, "'=' is not allowed in effects", node)
            return And()
        if len(node.items) != 3:
            ctx.b.diag(E.SYNTAX, "'=' takes exactly two arguments", node)
            return And()
        terms = []
        for item in node.items[1:]:
            name = _expect_atom(ctx.b, item, "'=' argument")
            if name is None:
                return And()
            _check_term(ctx, name, item)
            terms.append(name)
        return Eq(terms[0], terms[1])

    if head in _NUMERIC_HEADS or head in {"exists", "imply", "preference"}:
        ctx.b.diag(E.UNSUPPORTED, f"'{head}' is outside the supported subset", node)
        return And()

    return _atom(ctx, node)


# -- domains ------------------------------------------------------------------


def parse_domain(text: str) -> DomainAst:
    """Parse a domain; raises PddlError carrying all collected diagnostics."""
    b = _Builder()
    root = read_one(text)
    items = root.items if isinstance(root, SList) else ()
    if (
        len(items) < 2
        or not isinstance(items[0], SAtom)
        or items[0].text != "define"
        or not isinstance(items[1], SList)
        or len(items[1].items) != 2
        or not isinstance(items[1].items[0], SAtom)
        or items[1].items[0].text != "domain"
        or not isinstance(items[1].items[1], SAtom)
    ):
        b.diag(E.SYNTAX, "expected (define (domain NAME) ...)", root)
        b.fail_if_dirty()
    name = items[1].items[1].text

    requirements: list[str] = []
    types: tuple = ()
    constants: tuple = ()
    predicates: list[PredicateDecl] = []
    action_nodes: list[SList] = []

    for section in items[2:]:
        if not isinstance(section, SList) or not section.items or not isinstance(section.items[0], SAtom):
            b.diag(E.SYNTAX, "expected a (:section ...) form", section)
            continue
        head = section.items[0].text
        if head == ":requirements":
            for item in section.items[1:]:
                flag = _expect_atom(b, item, "requirement flag")
                if flag is None:
                    continue
                if flag not in SUPPORTED_REQUIREMENTS:
                    b.diag(E.UNSUPPORTED, f"requirement '{flag}' is not supported", item)
                else:
                    requirements.append(flag)
        elif head == ":types":
            types = _typed_names(b, section.items[1:], variables=False, where=":types")
        elif head == ":constants":
            constants = _typed_names(b, section.items[1:], variables=False, where=":constants")
        elif head == ":predicates":
            for item in section.items[1:]:
                if not isinstance(item, SList) or not item.items or not isinstance(item.items[0], SAtom):
                    b.diag(E.SYNTAX, "expected (name ?v ...) predicate declaration", item)
                    continue
                params = _typed_names(b, item.items[1:], variables=True, where="predicate parameters")
                seen = set()
                for p in params:
                    if p.name in seen:
                        b.diag(E.DUPLICATE_NAME, f"duplicate parameter '{p.name}'", item)
                    seen.add(p.name)
                predicates.append(PredicateDecl(item.items[0].text, params))
        elif head == ":action":
            action_nodes.append(section)
        else:
            b.diag(E.UNSUPPORTED, f"section '{head}' is not supported", section)

    pred_table: dict[str, PredicateDecl] = {}
    for decl in predicates:
        if decl.name in pred_table:
            b.diag(E.DUPLICATE_NAME, f"duplicate predicate '{decl.name}'")
        pred_table[decl.name] = decl

    const_names = frozenset(c.name for c in constants)
    actions: list[ActionSchema] = []
    action_names: set[str] = set()
    for node in action_nodes:
        act = _parse_action(b, node, pred_table, const_names)
        if act is None:
            continue
        if act.name in action_names:
            b.diag(E.DUPLICATE_NAME, f"duplicate action '{act.name}'", node)
        action_names.add(act.name)
        actions.append(act)

    b.fail_if_dirty()
    return DomainAst(
        name=name,
        requirements=frozenset(requirements),
        types=types,
        constants=constants,
        predicates=tuple(predicates),
        actions=tuple(actions),
    )


def _parse_action(
    b: _Builder, node: SList, predicates: dict, constants: frozenset
) -> ActionSchema | None:
    if len(node.items) < 2 or not isinstance(node.items[1], SAtom):
        b.diag(E.SYNTAX, "expected (:action NAME ...)", node)
        return None
    name = node.items[1].text
    params: tuple = ()
    precondition: Formula = And()
    effect: Formula = And()
    i = 2
    while i < len(node.items):
        key_node = node.items[i]
        key = _expect_atom(b, key_node, "action keyword")
        if key is None or i + 1 >= len(node.items):
            b.diag(E.SYNTAX, f"dangling keyword in action '{name}'", key_node)
            break
        value = node.items[i + 1]
        if key == ":parameters":
            if isinstance(value, SList):
                params = _typed_names(b, value.items, variables=True, where=":parameters")
                seen = set()
                for p in params:
                    if p.name in seen:
                        b.diag(E.DUPLICATE_NAME, f"duplicate parameter '{p.name}' in '{name}'", value)
                    seen.add(p.name)
            else:
                b.diag(E.SYNTAX, ":parameters expects a (...) list", value)
        elif key == ":precondition":
            ctx = _FormulaCtx(b, "pre", predicates, constants, frozenset(p.name for p in params), name)
            precondition = _formula(ctx, value)
        elif key == ":effect":
            ctx = _FormulaCtx(b, "eff", predicates, constants, frozenset(p.name for p in params), name)
            effect = _formula(ctx, value)
        else:
            b.diag(E.UNSUPPORTED, f"action keyword '{key}' is not supported", key_node)
        i += 2
    return ActionSchema(name, params, precondition, effect)


# -- problems -----------------------------------------------------------------


def parse_problem(text: str) -> ProblemAst:
    """Parse a problem; cross-checks against a domain happen in `link`."""
    b = _Builder()
    root = read_one(text)
    items = root.items if isinstance(root, SList) else ()
    if (
        len(items) < 2
        or not isinstance(items[0], SAtom)
        or items[0].text != "define"
        or not isinstance(items[1], SList)
        or len(items[1].items) != 2
        or not isinstance(items[1].items[0], SAtom)
        or items[1].items[0].text != "problem"
        or not isinstance(items[1].items[1], SAtom)
    ):
        b.diag(E.SYNTAX, "expected (define (problem NAME) ...)", root)
        b.fail_if_dirty()
    name = items[1].items[1].text

    domain_name = ""
    objects: tuple = ()
    init: list[Atom] = []
    goal: Formula | None = None

    for section in items[2:]:
        if not isinstance(section, SList) or not section.items or not isinstance(section.items[0], SAtom):
            b.diag(E.SYNTAX, "expected a (:section ...) form", section)
            continue
        head = section.items[0].text
        if head == ":domain":
            if len(section.items) == 2 and isinstance(section.items[1], SAtom):
                domain_name = section.items[1].text
            else:
                b.diag(E.SYNTAX, "expected (:domain NAME)", section)
        elif head == ":requirements":
            for item in section.items[1:]:
                flag = _expect_atom(b, item, "requirement flag")
                if flag is not None and flag not in SUPPORTED_REQUIREMENTS:
                    b.diag(E.UNSUPPORTED, f"requirement '{flag}' is not supported", item)
        elif head == ":objects":
            objects = _typed_names(b, section.items[1:], variables=False, where=":objects")
            seen = set()
            for o in objects:
                if o.name in seen:
                    b.diag(E.DUPLICATE_OBJECT, f"duplicate object '{o.name}'", section)
                seen.add(o.name)
        elif head == ":init":
            for item in section.items[1:]:
                if not isinstance(item, SList) or not item.items or not isinstance(item.items[0], SAtom):
                    b.diag(E.SYNTAX, "init entries must be ground atoms", item)
                    continue
                if item.items[0].text in {"not", "="} | _NUMERIC_HEADS:
                    b.diag(E.UNSUPPORTED, f"'{item.items[0].text}' is not allowed in :init", item)
                    continue
                args = []
                ok = True
                for arg in item.items[1:]:
                    arg_name = _expect_atom(b, arg, "atom argument")
                    if arg_name is None:
                        ok = False
                        continue
                    if arg_name.startswith("?"):
                        b.diag(E.SYNTAX, f"init atom must be ground, found '{arg_name}'", arg)
                        ok = False
                    args.append(arg_name)
                if ok:
                    init.append(Atom(item.items[0].text, tuple(args)))
        elif head == ":goal":
            if len(section.items) != 2:
                b.diag(E.SYNTAX, "expected (:goal FORMULA)", section)
                continue
            ctx = _FormulaCtx(b, "goal", None, frozenset(), frozenset(), name)
            goal = _formula(ctx, section.items[1])
        else:
            b.diag(E.UNSUPPORTED, f"section '{head}' is not supported in problems", section)

    if not domain_name:
        b.diag(E.SYNTAX, "problem is missing its (:domain ...) section", root)
    if goal is None:
        b.diag(E.SYNTAX, "problem is missing its (:goal ...) section", root)
    b.fail_if_dirty()
    assert goal is not None
    return ProblemAst(name, domain_name, objects, frozenset(init), goal)


# -- linking ------------------------------------------------------------------


def link(domain: DomainAst, problem: ProblemAst) -> LinkedTask:
    """Cross-validate a domain/problem pair; raises PddlError on mismatch.

    Link diagnostics carry position 0:0 because they are computed from the
    ASTs, after source positions are gone.
    """
    b = _Builder()
    if problem.domain_name != domain.name:
        b.diag(
            E.DOMAIN_NAME_MISMATCH,
            f"problem names domain '{problem.domain_name}', expected '{domain.name}'",
        )
        b.fail_if_dirty()

    known_types = domain.known_types()
    term_types: dict[str, str] = {}
    for c in domain.constants:
        term_types[c.name] = c.type if isinstance(c.type, str) else ROOT_TYPE
    for o in problem.objects:
        if o.name in term_types:
            b.diag(E.DUPLICATE_OBJECT, f"object '{o.name}' collides with a domain constant")
        otype = o.type if isinstance(o.type, str) else ROOT_TYPE
        if otype not in known_types:
            b.diag(E.TYPE_ERROR, f"object '{o.name}' has unknown type '{otype}'")
        term_types[o.name] = otype

    def check_atom(atom: Atom, where: str) -> None:
        decl = domain.predicate(atom.name)
        if decl is None:
            b.diag(E.UNDECLARED_PREDICATE, f"predicate '{atom.name}' in {where} is not declared")
            return
        if decl.arity != len(atom.args):
            b.diag(
                E.ARITY_MISMATCH,
                f"predicate '{atom.name}' in {where} expects {decl.arity} arguments, got {len(atom.args)}",
            )
            return
        for arg, param in zip(atom.args, decl.params):
            if arg.startswith("?"):
                continue  # forall-bound goal variable, typed at grounding
            argt = term_types.get(arg)
            if argt is None:
                b.diag(E.UNDECLARED_OBJECT, f"'{arg}' in {where} is not a declared object")
            elif not domain.matches_type(argt, param.type):
                b.diag(
                    E.TYPE_ERROR,
                    f"'{arg}' has type '{argt}' but '{atom.name}' expects '{_type_str(param.type)}'",
                )

    for atom in sorted(problem.init, key=str):
        check_atom(atom, "init")

    def walk_goal(f: Formula) -> None:
        if isinstance(f, Atom):
            check_atom(f, "goal")
        elif isinstance(f, Eq):
            for term in (f.left, f.right):
                if not term.startswith("?") and term not in term_types:
                    b.diag(E.UNDECLARED_OBJECT, f"'{term}' in goal is not a declared object")
        elif isinstance(f, Not):
            walk_goal(f.body)
        elif isinstance(f, (And, Or)):
            for part in f.parts:
                walk_goal(part)
        elif isinstance(f, Forall):
            walk_goal(f.body)

    walk_goal(problem.goal)
    b.fail_if_dirty()
    return LinkedTask(domain, problem)


def _type_str(ref: TypeRef) -> str:
    if isinstance(ref, tuple):
        return "(either " + " ".join(ref) + ")"
    return ref
