"""Syntax of the multi-agent epistemic probability language.

The core language is built from primitive propositions, negation,
conjunction, linear probability comparisons

    a1*Pr_j(f1) + ... + ak*Pr_j(fk) >= b

with exact rational coefficients (one agent j per comparison), and a
common-belief operator over a nonempty group of agents.  Indexed
propositions ``p@i`` ("agent i's reading of p") extend the core for the
unambiguous target language of the translation module.

On top of the core there are surface abbreviations: ``true``/``false``,
disjunction, implication, biconditional, individual belief ``Bj f``
(probability one), and iterated group belief ``E{..}^k f``.  ``expand``
removes all abbreviations; ``parse`` and ``print_formula`` convert between
text and ASTs and are mutually inverse on ASTs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FormulaSyntaxError, UnknownAgent

__all__ = [
    "Prop", "IndexedProp", "Not", "And", "ProbTerm", "ProbGe", "CB",
    "Or", "Implies", "Iff", "TrueF", "FalseF", "B", "EB",
    "Formula", "SurfaceFormula",
    "parse", "print_formula", "expand", "is_propositional", "subformulas",
    "propositions", "agents_in",
]


# --- AST ---

def _cache_hash(cls):
    """Wrap the dataclass hash so each node hashes its subtree once."""
    computed = cls.__hash__

    def cached(self):
        try:
            return object.__getattribute__(self, "_hash_cache")
        except AttributeError:
            value = computed(self)
            object.__setattr__(self, "_hash_cache", value)
            return value

    cls.__hash__ = cached
    return cls


@_cache_hash
@dataclass(frozen=True)
class Prop:
    name: str


@_cache_hash
@dataclass(frozen=True)
class IndexedProp:
    name: str
    agent: int

    def __post_init__(self):
        if self.agent < 1:
            raise UnknownAgent("agent index must be positive: %r" % (self.agent,))


@_cache_hash
@dataclass(frozen=True)
class Not:
    arg: "SurfaceFormula"


@_cache_hash
@dataclass(frozen=True)
class And:
    left: "SurfaceFormula"
    right: "SurfaceFormula"


@_cache_hash
@dataclass(frozen=True)
class ProbTerm:
    """One summand ``coeff * Pr_agent(arg)`` of a probability comparison."""

    coeff: Fraction
    agent: int
    arg: "SurfaceFormula"

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.agent < 1:
            raise UnknownAgent("agent index must be positive: %r" % (self.agent,))


@_cache_hash
@dataclass(frozen=True)
class ProbGe:
    """``a1*Pr_j(f1) + ... + ak*Pr_j(fk) >= bound`` with one shared agent j."""

    terms: tuple
    bound: Fraction

    def __post_init__(self):
        terms = tuple(
            t if isinstance(t, ProbTerm) else ProbTerm(*t) for t in self.terms
        )
        if not terms:
            raise ValueError("probability comparison needs at least one term")
        if len({t.agent for t in terms}) != 1:
            raise ValueError("all terms of one probability comparison must "
                             "name the same agent")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "bound", Fraction(self.bound))

    @property
    def agent(self) -> int:
        return self.terms[0].agent


@_cache_hash
@dataclass(frozen=True)
class CB:
    """Common belief among a nonempty group of agents."""

    group: frozenset
    arg: "SurfaceFormula"

    def __post_init__(self):
        group = frozenset(int(i) for i in self.group)
        if not group:
            raise ValueError("common-belief group must be nonempty")
        if min(group) < 1:
            raise UnknownAgent("agent index must be positive: %r" % (min(group),))
        object.__setattr__(self, "group", group)


# Surface abbreviations.

@_cache_hash
@dataclass(frozen=True)
class Or:
    left: "SurfaceFormula"
    right: "SurfaceFormula"


@_cache_hash
@dataclass(frozen=True)
class Implies:
    left: "SurfaceFormula"
    right: "SurfaceFormula"


@_cache_hash
@dataclass(frozen=True)
class Iff:
    left: "SurfaceFormula"
    right: "SurfaceFormula"


@_cache_hash
@dataclass(frozen=True)
class TrueF:
    pass


@_cache_hash
@dataclass(frozen=True)
class FalseF:
    pass


@_cache_hash
@dataclass(frozen=True)
class B:
    """Individual belief: ``B(j, f)`` abbreviates ``Pr_j(f) >= 1``."""

    agent: int
    arg: "SurfaceFormula"

    def __post_init__(self):
        if self.agent < 1:
            raise UnknownAgent("agent index must be positive: %r" % (self.agent,))


@_cache_hash
@dataclass(frozen=True)
class EB:
    """Iterated group belief: everybody in ``group`` believes, ``power`` deep."""

    group: frozenset
    power: int
    arg: "SurfaceFormula"

    def __post_init__(self):
        group = frozenset(int(i) for i in self.group)
        if not group:
            raise ValueError("group-belief group must be nonempty")
        if min(group) < 1:
            raise UnknownAgent("agent index must be positive: %r" % (min(group),))
        if self.power < 1:
            raise ValueError("group-belief power must be >= 1")
        object.__setattr__(self, "group", group)


Formula = Union[Prop, IndexedProp, Not, And, ProbGe, CB]
SurfaceFormula = Union[Formula, Or, Implies, Iff, TrueF, FalseF, B, EB]

_CORE_TYPES = (Prop, IndexedProp, Not, And, ProbGe, CB)


def _children(f):
    if isinstance(f, (Not, B, EB, CB)):
        return (f.arg,)
    if isinstance(f, (And, Or, Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, ProbGe):
        return tuple(t.arg for t in f.terms)
    return ()


# --- Parser ---

_TOKEN_RE = re.compile(
    r"\s+|(?P<nat>[0-9]+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><->|->|>=|<=|[-&|!(){},^@*+/=<>])"
)

_B_RE = re.compile(r"^B([0-9]+)$")
_PR_RE = re.compile(r"^Pr([0-9]+)$")


class _Parser:
    """Recursive-descent parser for the grammar below (whitespace free-form).

    formula := iff
    iff     := imp ("<->" imp)*                  (left associative)
    imp     := or ("->" or)*                     (right associative)
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "!" unary | "B" NAT unary
             | "E" "{" natlist "}" ("^" NAT)? unary
             | "CB" "{" natlist "}" unary | atom
    atom    := IDENT | IDENT "@" NAT | "true" | "false"
             | "(" formula ")" | probcmp
    probcmp := linterm (">="|"<="|"="|">"|"<") rational
    linterm := signedterm ("+" signedterm)*
    signedterm := (rational "*")? "Pr" NAT "(" formula ")"
    rational   := ("-")? NAT ("/" NAT)?
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise FormulaSyntaxError(pos, {"token"}, text[pos])
            if m.lastgroup is not None:
                self.tokens.append((m.lastgroup, m.group(), pos))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.pos = 0

    def _peek(self, ahead=0):
        i = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[i]

    def _next(self):
        tok = self.tokens[self.pos]
        if tok[0] != "end":
            self.pos += 1
        return tok

    def _fail(self, expected):
        kind, text, offset = self._peek()
        found = text if kind != "end" else "end of input"
        raise FormulaSyntaxError(offset, expected, found)

    def _expect_op(self, op):
        kind, text, _ = self._peek()
        if kind != "op" or text != op:
            self._fail({repr(op)})
        return self._next()

    def _nat(self, what="number"):
        kind, text, _ = self._peek()
        if kind != "nat":
            self._fail({what})
        self._next()
        return int(text)

    def _agent(self):
        _, text, offset = self._peek()
        n = self._nat("agent index")
        if n < 1:
            raise UnknownAgent("agent index must be positive at offset %d: %s"
                               % (offset, text))
        return n

    def parse(self):
        f = self._formula()
        if self._peek()[0] != "end":
            self._fail({"end of input", "operator"})
        return f

    def _formula(self):
        return self._iff()

    def _iff(self):
        left = self._imp()
        while self._peek()[:2] == ("op", "<->"):
            self._next()
            left = Iff(left, self._imp())
        return left

    def _imp(self):
        parts = [self._or()]
        while self._peek()[:2] == ("op", "->"):
            self._next()
            parts.append(self._or())
        f = parts[-1]
        for left in reversed(parts[:-1]):
            f = Implies(left, f)
        return f

    def _or(self):
        left = self._and()
        while self._peek()[:2] == ("op", "|"):
            self._next()
            left = Or(left, self._and())
        return left

    def _and(self):
        left = self._unary()
        while self._peek()[:2] == ("op", "&"):
            self._next()
            left = And(left, self._unary())
        return left

    def _unary(self):
        kind, text, offset = self._peek()
        if kind == "op" and text == "!":
            self._next()
            return Not(self._unary())
        if kind == "ident":
            m = _B_RE.match(text)
            if m:
                self._next()
                agent = int(m.group(1))
                if agent < 1:
                    raise UnknownAgent(
                        "agent index must be positive at offset %d: %s"
                        % (offset, text))
                return B(agent, self._unary())
            if text in ("E", "CB") and self._peek(1)[:2] == ("op", "{"):
                self._next()
                group = self._natlist()
                if text == "CB":
                    return CB(group, self._unary())
                power = 1
                if self._peek()[:2] == ("op", "^"):
                    self._next()
                    power = self._nat("power")
                    if power < 1:
                        raise FormulaSyntaxError(offset, {"power >= 1"},
                                                 str(power))
                return EB(group, power, self._unary())
        return self._atom()

    def _atom(self):
        kind, text, offset = self._peek()
        if kind == "op" and text == "(":
            self._next()
            f = self._formula()
            self._expect_op(")")
            return f
        if kind == "nat" or (kind == "op" and text == "-"):
            return self._probcmp()
        if kind == "ident":
            if text == "true":
                self._next()
                return TrueF()
            if text == "false":
                self._next()
                return FalseF()
            if _PR_RE.match(text):
                if self._peek(1)[:2] == ("op", "("):
                    return self._probcmp()
                self._fail({"'('"})
            self._next()
            if self._peek()[:2] == ("op", "@"):
                self._next()
                return IndexedProp(text, self._agent())
            return Prop(text)
        self._fail({"formula"})

    def _natlist(self):
        self._expect_op("{")
        agents = {self._agent()}
        while self._peek()[:2] == ("op", ","):
            self._next()
            agents.add(self._agent())
        self._expect_op("}")
        return frozenset(agents)

    def _rational(self):
        sign = 1
        if self._peek()[:2] == ("op", "-"):
            self._next()
            sign = -1
        _, _, offset = self._peek()
        num = self._nat("rational")
        den = 1
        if self._peek()[:2] == ("op", "/"):
            self._next()
            den = self._nat("denominator")
            if den == 0:
                raise FormulaSyntaxError(offset, {"nonzero denominator"}, "0")
        return Fraction(sign * num, den)

    def _signedterm(self):
        kind, text, _ = self._peek()
        coeff = Fraction(1)
        if kind == "nat" or (kind == "op" and text == "-"):
            coeff = self._rational()
            self._expect_op("*")
        kind, text, offset = self._peek()
        m = _PR_RE.match(text) if kind == "ident" else None
        if m is None:
            self._fail({"'Pr<agent>('"})
        self._next()
        agent = int(m.group(1))
        if agent < 1:
            raise UnknownAgent("agent index must be positive at offset %d: %s"
                               % (offset, text))
        self._expect_op("(")
        arg = self._formula()
        self._expect_op(")")
        return ProbTerm(coeff, agent, arg), offset

    def _probcmp(self):
        first, _ = self._signedterm()
        terms = [first]
        while self._peek()[:2] == ("op", "+"):
            self._next()
            term, offset = self._signedterm()
            if term.agent != first.agent:
                raise FormulaSyntaxError(
                    offset, {"Pr%d term (one agent per comparison)" % first.agent},
                    "Pr%d" % term.agent)
            terms.append(term)
        kind, op, _ = self._peek()
        if kind != "op" or op not in (">=", "<=", "=", ">", "<"):
            self._fail({"comparison operator"})
        self._next()
        bound = self._rational()
        terms = tuple(terms)
        negated = tuple(ProbTerm(-t.coeff, t.agent, t.arg) for t in terms)
        if op == ">=":
            return ProbGe(terms, bound)
        if op == "<=":
            return ProbGe(negated, -bound)
        if op == "=":
            return And(ProbGe(terms, bound), ProbGe(negated, -bound))
        if op == ">":
            return Not(ProbGe(negated, -bound))
        return Not(ProbGe(terms, bound))  # "<"


def parse(text: str) -> SurfaceFormula:
    """Parse formula text into its AST.

    Comparisons other than ``>=`` are sugar and desugar immediately:
    ``t = b`` to ``t >= b & -t >= -b``, ``t > b`` to ``!(-t >= -b)``,
    ``t <= b`` to ``-t >= -b`` and ``t < b`` to ``!(t >= b)``.
    """
    return _Parser(text).parse()


# --- Printer ---

# Grammar levels used to decide parenthesisation; higher binds tighter.
_IFF, _IMP, _OR, _AND, _UNARY, _ATOM = 10, 20, 30, 40, 50, 70
_PROBCMP = 5  # always parenthesised inside anything else


def _group_text(group) -> str:
    return "{%s}" % ",".join(str(i) for i in sorted(group))


def _render(f, sugar: bool):
    if sugar and isinstance(f, ProbGe) and len(f.terms) == 1 \
            and f.terms[0].coeff == 1 and f.bound == 1:
        return _render(B(f.agent, f.terms[0].arg), sugar)
    if isinstance(f, Prop):
        return f.name, _ATOM
    if isinstance(f, IndexedProp):
        return "%s@%d" % (f.name, f.agent), _ATOM
    if isinstance(f, TrueF):
        return "true", _ATOM
    if isinstance(f, FalseF):
        return "false", _ATOM
    if isinstance(f, Not):
        return "!" + _wrap(f.arg, _UNARY, sugar), _UNARY
    if isinstance(f, B):
        return "B%d%s" % (f.agent, _modal_arg(f.arg, sugar)), _UNARY
    if isinstance(f, EB):
        power = "^%d" % f.power if f.power != 1 else ""
        return "E%s%s%s" % (_group_text(f.group), power,
                            _modal_arg(f.arg, sugar)), _UNARY
    if isinstance(f, CB):
        return "CB%s%s" % (_group_text(f.group), _modal_arg(f.arg, sugar)), _UNARY
    if isinstance(f, And):
        return "%s & %s" % (_wrap(f.left, _AND, sugar),
                            _wrap(f.right, _UNARY, sugar)), _AND
    if isinstance(f, Or):
        return "%s | %s" % (_wrap(f.left, _OR, sugar),
                            _wrap(f.right, _AND, sugar)), _OR
    if isinstance(f, Implies):
        return "%s -> %s" % (_wrap(f.left, _OR, sugar),
                             _wrap(f.right, _IMP, sugar)), _IMP
    if isinstance(f, Iff):
        return "%s <-> %s" % (_wrap(f.left, _IFF, sugar),
                              _wrap(f.right, _IMP, sugar)), _IFF
    if isinstance(f, ProbGe):
        parts = []
        for t in f.terms:
            factor = "" if t.coeff == 1 else "%s*" % t.coeff
            parts.append("%sPr%d(%s)" % (factor, t.agent, _wrap(t.arg, 0, sugar)))
        return "%s >= %s" % (" + ".join(parts), f.bound), _PROBCMP
    raise TypeError("not a formula: %r" % (f,))


def _wrap(f, need, sugar):
    text, level = _render(f, sugar)
    return "(" + text + ")" if level < need else text


def _modal_arg(f, sugar):
    text, level = _render(f, sugar)
    if level < _UNARY:
        return "(" + text + ")"
    return " " + text


def print_formula(f: SurfaceFormula, sugar_beliefs: bool = False) -> str:
    """Render a formula as canonical text; ``parse`` inverts it exactly.

    With ``sugar_beliefs`` set, single-term probability-one comparisons are
    rendered in the ``Bj f`` form; the text then parses back to the sugared
    AST, which expands to the original.
    """
    return _wrap(f, 0, sugar_beliefs)


# --- Abbreviation expansion and syntactic utilities ---

def _first_plain_prop(f):
    if isinstance(f, Prop):
        return f.name
    for child in _children(f):
        name = _first_plain_prop(child)
        if name is not None:
            return name
    return None


def expand(f: SurfaceFormula, tautology_prop: str = None) -> Formula:
    """Remove all surface abbreviations, yielding a core formula.

    ``Bj f`` becomes ``Pr_j(f) >= 1``; ``E{G}^k f`` unfolds to the k-fold
    conjunction of individual beliefs; or/implies/iff desugar classically.
    ``true`` becomes "t or not t" for a designated proposition t: the one
    supplied, else the first proposition occurring in the formula, else
    ``p``.  Evaluation always supplies the structure's first declared
    proposition.  Expansion is idempotent.
    """
    if tautology_prop is None:
        tautology_prop = _first_plain_prop(f) or "p"

    def ex(g):
        if isinstance(g, (Prop, IndexedProp)):
            return g
        if isinstance(g, Not):
            return Not(ex(g.arg))
        if isinstance(g, And):
            return And(ex(g.left), ex(g.right))
        if isinstance(g, ProbGe):
            return ProbGe(tuple(ProbTerm(t.coeff, t.agent, ex(t.arg))
                                for t in g.terms), g.bound)
        if isinstance(g, CB):
            return CB(g.group, ex(g.arg))
        if isinstance(g, Or):
            return Not(And(Not(ex(g.left)), Not(ex(g.right))))
        if isinstance(g, Implies):
            return Not(And(ex(g.left), Not(ex(g.right))))
        if isinstance(g, Iff):
            left, right = ex(g.left), ex(g.right)
            return And(Not(And(left, Not(right))), Not(And(right, Not(left))))
        if isinstance(g, TrueF):
            t = Prop(tautology_prop)
            return Not(And(Not(t), Not(Not(t))))
        if isinstance(g, FalseF):
            return Not(ex(TrueF()))
        if isinstance(g, B):
            return ProbGe((ProbTerm(Fraction(1), g.agent, ex(g.arg)),),
                          Fraction(1))
        if isinstance(g, EB):
            body = ex(g.arg)
            for _ in range(g.power):
                believed = [
                    ProbGe((ProbTerm(Fraction(1), j, body),), Fraction(1))
                    for j in sorted(g.group)
                ]
                acc = believed[0]
                for nxt in believed[1:]:
                    acc = And(acc, nxt)
                body = acc
            return body
        raise TypeError("not a formula: %r" % (g,))

    return ex(f)


def is_propositional(f: SurfaceFormula) -> bool:
    """True iff the formula is built from propositions by boolean connectives
    only (no probability comparisons, no common belief, no indexed
    propositions)."""
    if isinstance(f, (ProbGe, CB, B, EB, IndexedProp)):
        return False
    return all(is_propositional(c) for c in _children(f))


def subformulas(f: SurfaceFormula) -> list:
    """Post-order list of the distinct subformulas, the formula itself last."""
    out = []
    seen = set()

    def walk(g):
        for child in _children(g):
            walk(child)
        if g not in seen:
            seen.add(g)
            out.append(g)

    walk(f)
    return out


def propositions(f: SurfaceFormula) -> frozenset:
    """Proposition names as written, indexed ones in their ``p@i`` form."""
    out = set()
    for g in subformulas(f):
        if isinstance(g, Prop):
            out.add(g.name)
        elif isinstance(g, IndexedProp):
            out.add("%s@%d" % (g.name, g.agent))
    return frozenset(out)


def agents_in(f: SurfaceFormula) -> frozenset:
    """Every agent index the formula mentions."""
    out = set()
    for g in subformulas(f):
        if isinstance(g, ProbGe):
            out.update(t.agent for t in g.terms)
        elif isinstance(g, (CB, EB)):
            out.update(g.group)
        elif isinstance(g, B):
            out.add(g.agent)
        elif isinstance(g, IndexedProp):
            out.add(g.agent)
    return frozenset(out)
