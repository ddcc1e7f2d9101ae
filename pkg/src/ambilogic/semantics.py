"""Truth evaluation under the five modes.

The judgment is "formula f holds at state w according to agent i".  All
modes share the clauses for propositions (the interpreting agent's
reading), negation and conjunction; they differ in how a probability
comparison about agent j is read:

* outermost: j's cell measure is applied to the arguments as read by the
  outer agent i;
* innermost: j's cell measure is applied to the arguments as read by j
  himself (truth is then agent-independent for such formulas);
* the two signal ("-ai") variants condition j's explicit prior on a
  reader's interpretation of j's current signal formula instead of using
  the cell measure directly;
* common: one shared interpretation, the classical case; this is also the
  only mode in which indexed propositions ``p@i`` may appear.

Common belief is the conjunction of all finite iterations of "everybody in
the group believes"; it is decided by one labeled reachability pass, and
``eb_k`` provides the finite iterations independently as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import formula as fm
from .errors import (
    MissingSignals,
    ModePrereqMissing,
    UndefinedConditional,
    UnknownAgent,
    UnknownProp,
    UnknownState,
)
from .modes import EvalMode
from .reporting import Report
from .structure import (
    Structure,
    conditional_targets,
    is_common_interpretation,
    prop_extension,
    validate_signals,
    _A5_KINDS,
)

__all__ = [
    "EvalMode", "EvalQuery", "Evaluator",
    "evaluate", "extension", "common_belief_set", "eb_k", "valid_in_model",
]


@dataclass(frozen=True)
class EvalQuery:
    """One evaluation judgment: formula at (structure, state, agent, mode)."""

    structure: Structure
    state: str
    agent: int
    formula: object
    mode: EvalMode

    def run(self) -> bool:
        return evaluate(self.structure, self.state, self.agent,
                        self.formula, self.mode)

    def describe(self) -> dict:
        return {
            "state": self.state,
            "agent": self.agent,
            "formula": fm.print_formula(self.formula),
            "mode": self.mode.value,
        }


class Evaluator:
    """Memoizing evaluator bound to one structure.

    Extensions are cached per (formula, mode, interpreting agent); in the
    innermost modes probability and common-belief formulas are cached
    agent-independently since their truth does not depend on the outer
    agent.  Instances are cheap; reuse one per structure in hot loops.
    """

    def __init__(self, m: Structure):
        self.m = m
        self._universe = m.universe
        self._ext = {}
        self._succ = {}
        self._sig_event = {}
        self._mode_checked = {}
        self._expanded = {}
        self._query_checked = set()

    # -- preconditions --

    def _require_mode(self, mode: EvalMode) -> None:
        if mode in self._mode_checked:
            problem = self._mode_checked[mode]
            if problem:
                raise ModePrereqMissing(problem)
            return
        problem = None
        if mode is EvalMode.COMMON and not is_common_interpretation(self.m):
            problem = ("common mode needs a common interpretation; "
                       "agents disagree on some proposition")
        elif mode.is_ai:
            if self.m.signals is None:
                raise MissingSignals("mode %s needs per-state signals" % mode)
            if self.m.priors is None:
                problem = "mode %s needs explicit priors" % mode
            else:
                report = validate_signals(self.m)
                relevant = (report.entries
                            if mode is EvalMode.OUTERMOST_AI
                            else [v for v in report.entries
                                  if v.kind in _A5_KINDS])
                if relevant:
                    problem = ("mode %s needs valid signals: %s"
                               % (mode, "; ".join(v.message
                                                  for v in relevant)))
        self._mode_checked[mode] = problem
        if problem:
            raise ModePrereqMissing(problem)

    def _check_query(self, f, mode: EvalMode) -> None:
        key = (f, mode is EvalMode.COMMON)
        if key in self._query_checked:
            return
        for agent in fm.agents_in(f):
            if agent not in self.m.agents:
                raise UnknownAgent("formula mentions agent %d, structure has "
                                   "1..%d" % (agent, self.m.n_agents))
        declared = set(self.m.props)
        for name in fm.propositions(f):
            if name not in declared:
                raise UnknownProp("proposition %r not declared" % name)
        if mode is not EvalMode.COMMON:
            for g in fm.subformulas(f):
                if isinstance(g, fm.IndexedProp):
                    raise ModePrereqMissing(
                        "indexed propositions only evaluate in common mode")
        self._query_checked.add(key)

    # -- public API --

    def evaluate(self, state: str, agent: int, f, mode: EvalMode) -> bool:
        if state not in self._universe:
            raise UnknownState("state %r not declared" % state)
        return state in self.extension(agent, f, mode)

    def extension(self, agent: int, f, mode: EvalMode) -> frozenset:
        if agent not in self.m.agents:
            raise UnknownAgent("agent %d not in 1..%d"
                               % (agent, self.m.n_agents))
        self._require_mode(mode)
        self._check_query(f, mode)
        return self._ext_core(agent, self._expand(f), mode)

    def common_belief_set(self, group, f, mode: EvalMode,
                          outer: int) -> frozenset:
        self._require_mode(mode)
        self._check_query(f, mode)
        group = frozenset(group)
        for i in group | {outer}:
            if i not in self.m.agents:
                raise UnknownAgent("agent %d not in 1..%d"
                                   % (i, self.m.n_agents))
        return self._cb_set(group, self._expand(f), mode, outer)

    def eb_k(self, group, f, k: int, mode: EvalMode, outer: int) -> frozenset:
        """Extension of the k-fold "everybody in the group believes".

        Computed by iterating the probability-one clause on sets, never by
        the reachability pass, so it can serve as an independent oracle for
        ``common_belief_set``.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        self._require_mode(mode)
        self._check_query(f, mode)
        group = frozenset(group)
        if not group:
            raise ValueError("group must be nonempty")
        for i in group | {outer}:
            if i not in self.m.agents:
                raise UnknownAgent("agent %d not in 1..%d"
                                   % (i, self.m.n_agents))
        core = self._expand(f)
        if mode.innermost_scope:
            cur = None
            for level in range(k):
                if level == 0:
                    sets = [
                        self._prob_one_states(
                            j, self._ext_core(j, core, mode), mode, outer)
                        for j in group
                    ]
                else:
                    sets = [self._prob_one_states(j, cur, mode, outer)
                            for j in group]
                cur = frozenset.intersection(*sets)
        else:
            cur = self._ext_core(outer, core, mode)
            for _ in range(k):
                cur = frozenset.intersection(
                    *[self._prob_one_states(j, cur, mode, outer)
                      for j in group])
        return cur

    # -- internals --

    def _expand(self, f):
        core = self._expanded.get(f)
        if core is None:
            core = fm.expand(f, self.m.props[0])
            self._expanded[f] = core
        return core

    def _ext_core(self, agent: int, f, mode: EvalMode) -> frozenset:
        if mode is EvalMode.COMMON:
            agent_key = None
        elif mode.innermost_scope and isinstance(f, (fm.ProbGe, fm.CB)):
            agent_key = None
        else:
            agent_key = agent
        key = (f, mode, agent_key)
        cached = self._ext.get(key)
        if cached is not None:
            return cached
        if isinstance(f, fm.Prop):
            try:
                out = self.m.interpretations[agent][f.name]
            except KeyError:
                raise UnknownProp("agent %d does not interpret %r"
                                  % (agent, f.name))
        elif isinstance(f, fm.IndexedProp):
            name = "%s@%d" % (f.name, f.agent)
            try:
                out = self.m.interpretations[agent][name]
            except KeyError:
                raise UnknownProp("agent %d does not interpret %r"
                                  % (agent, name))
        elif isinstance(f, fm.Not):
            out = self._universe - self._ext_core(agent, f.arg, mode)
        elif isinstance(f, fm.And):
            out = (self._ext_core(agent, f.left, mode)
                   & self._ext_core(agent, f.right, mode))
        elif isinstance(f, fm.ProbGe):
            out = self._prob_extension(agent, f, mode)
        elif isinstance(f, fm.CB):
            out = self._cb_set(f.group, f.arg, mode, agent)
        else:
            raise TypeError("expand() the formula before evaluation: %r"
                            % (f,))
        self._ext[key] = out
        return out

    def _prob_extension(self, agent: int, f, mode: EvalMode) -> frozenset:
        m = self.m
        j = f.agent
        reader = j if mode.innermost_scope else agent
        args = [(t.coeff, self._ext_core(reader, t.arg, mode))
                for t in f.terms]
        out = set()
        if mode.is_ai:
            for state in m.states:
                event = self._signal_targets(j, state, mode, agent)
                denom = m.prior_mass(j, event)
                value = sum(
                    (coeff * m.prior_mass(j, ext & event) / denom
                     for coeff, ext in args), Fraction(0))
                if value >= f.bound:
                    out.add(state)
        else:
            for cell, cb in zip(m.partitions[j], m.beliefs[j]):
                value = sum((coeff * cb.measure(ext & cell)
                             for coeff, ext in args), Fraction(0))
                if value >= f.bound:
                    out |= cell
        return frozenset(out)

    def _signal_targets(self, j: int, state: str, mode: EvalMode,
                        outer: int) -> frozenset:
        """Conditioning event for agent j's signal at a state, as read by
        the mode's reader; raises when it carries no prior mass."""
        m = self.m
        reader = j if mode is EvalMode.INNERMOST_AI else outer
        key = (j, state, reader)
        event = self._sig_event.get(key)
        if event is None:
            sig = m.signals.get(j, {}).get(state)
            if sig is None:
                raise MissingSignals("agent %d has no signal at state %s"
                                     % (j, state))
            event = prop_extension(m, reader, sig)
            self._sig_event[key] = event
        if m.prior_mass(j, event) == 0:
            sig = m.signals[j][state]
            raise UndefinedConditional(j, state, fm.print_formula(sig), event)
        return event

    def _prob_one_states(self, j: int, target: frozenset, mode: EvalMode,
                         outer: int) -> frozenset:
        """States where agent j assigns probability one to ``target``."""
        m = self.m
        out = set()
        if mode.is_ai:
            for state in m.states:
                event = self._signal_targets(j, state, mode, outer)
                if m.prior_mass(j, target & event) == m.prior_mass(j, event):
                    out.add(state)
        else:
            for cell, cb in zip(m.partitions[j], m.beliefs[j]):
                if cb._point is not None:
                    ok = cb.believes(target)
                else:
                    ok = cb.measure(target & cell) == 1
                if ok:
                    out |= cell
        return frozenset(out)

    def _successors(self, state: str, j: int, mode: EvalMode,
                    outer: int) -> frozenset:
        """States agent j considers possible from ``state``, computed lazily
        so that undefined conditionals only surface when actually reached."""
        outer_key = outer if mode is EvalMode.OUTERMOST_AI else None
        key = (state, j, mode, outer_key)
        cached = self._succ.get(key)
        if cached is not None:
            return cached
        m = self.m
        if mode.is_ai:
            out = conditional_targets(m, mode, outer, j, state)
        else:
            out = m.cell_beliefs(j, state).support()
        self._succ[key] = out
        return out

    def _cb_set(self, group, f, mode: EvalMode, outer: int) -> frozenset:
        """States where the group's common belief in f holds.

        Walk the labeled belief graph: common belief holds at w iff every
        (state, last edge label j) pair reachable from w by one or more
        edges passes the end check, which reads f with the outer agent in
        the outermost-style modes and with j in the innermost-style modes.
        """
        if not group:
            raise ValueError("common-belief group must be nonempty")
        passes = {}

        def end_check(target, label):
            key = (target, label)
            got = passes.get(key)
            if got is None:
                reader = label if mode.innermost_scope else outer
                got = target in self._ext_core(reader, f, mode)
                passes[key] = got
            return got

        result = set()
        for start in self.m.states:
            ok = True
            seen_states = {start}
            seen_pairs = set()
            frontier = [start]
            while frontier and ok:
                s = frontier.pop()
                for j in group:
                    for t in self._successors(s, j, mode, outer):
                        if (t, j) not in seen_pairs:
                            seen_pairs.add((t, j))
                            if not end_check(t, j):
                                ok = False
                                break
                        if t not in seen_states:
                            seen_states.add(t)
                            frontier.append(t)
                    if not ok:
                        break
            if ok:
                result.add(start)
        return frozenset(result)


def evaluate(m: Structure, state: str, agent: int, f, mode: EvalMode,
             evaluator: Evaluator = None) -> bool:
    """Does f hold at ``state`` according to ``agent`` under ``mode``?"""
    ev = evaluator if evaluator is not None else Evaluator(m)
    return ev.evaluate(state, agent, f, mode)


def extension(m: Structure, agent: int, f, mode: EvalMode,
              evaluator: Evaluator = None) -> frozenset:
    """All states where f holds according to ``agent`` under ``mode``."""
    ev = evaluator if evaluator is not None else Evaluator(m)
    return ev.extension(agent, f, mode)


def common_belief_set(m: Structure, group, f, mode: EvalMode,
                      outer: int = 1, evaluator: Evaluator = None) -> frozenset:
    """States where the group commonly believes f."""
    ev = evaluator if evaluator is not None else Evaluator(m)
    return ev.common_belief_set(group, f, mode, outer)


def eb_k(m: Structure, group, f, k: int, mode: EvalMode,
         outer: int = 1, evaluator: Evaluator = None) -> frozenset:
    """Extension of the k-fold "everybody believes", the finite oracle for
    common belief."""
    ev = evaluator if evaluator is not None else Evaluator(m)
    return ev.eb_k(group, f, k, mode, outer)


def valid_in_model(m: Structure, f, mode: EvalMode) -> Report:
    """Check whether f holds at every state according to every agent; the
    report carries the first failing (state, agent) pair otherwise."""
    report = Report()
    ev = Evaluator(m)
    for state in m.states:
        for agent in m.agents:
            if not ev.evaluate(state, agent, f, mode):
                report.add(
                    "not-valid",
                    "fails at state %s according to agent %d" % (state, agent),
                    state=state, agent=agent,
                    formula=fm.print_formula(f), mode=mode.value)
                return report
    return report
