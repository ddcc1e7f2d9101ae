"""Finite epistemic probability structures and their validation.

A structure holds a finite state space, one information partition per
agent, one probability space per partition cell (an algebra given by atoms
plus an exact rational mass per atom), one interpretation of the primitive
propositions per agent, and optionally per-agent priors over the whole
state space and per-state propositional signal formulas describing the
cells.

All arithmetic is exact; floating point is rejected in structure files.
Structures are immutable after construction and safe to share.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from fractions import Fraction

from . import formula as fm
from .errors import (
    CoreInvalid,
    MissingSignals,
    ModelFormatError,
    ModePrereqMissing,
    NotMeasurable,
    NotPropositional,
    UndefinedConditional,
    UnknownAgent,
    UnknownProp,
    UnknownState,
)
from .modes import EvalMode
from .reporting import Report

__all__ = [
    "CellBeliefs", "Structure",
    "validate_core", "validate_signals", "generate_priors",
    "prop_extension", "reachable", "belief_edges",
    "is_common_interpretation", "has_identical_priors",
    "load_structure", "loads_structure", "structure_from_dict",
    "structure_to_dict", "dump_structure", "dumps_structure",
]

# Names the formula grammar cannot express as plain propositions.
_RESERVED_NAME = re.compile(r"^(B|Pr)[0-9]+$|^(E|CB|true|false)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(@[0-9]+)?$")


@dataclass(frozen=True)
class CellBeliefs:
    """Probability space of one partition cell.

    ``atoms`` partition the cell and generate the measurable sets; the mass
    of a measurable event is the sum of its atoms' masses.  With singleton
    atoms (the powerset algebra) every event is measurable and point masses
    are cached for speed.
    """

    states: frozenset
    atoms: tuple
    masses: tuple

    def __post_init__(self):
        support = frozenset().union(
            *(atom for atom, mass in zip(self.atoms, self.masses)
              if mass > 0)) if self.atoms else frozenset()
        point = None
        if all(len(atom) == 1 for atom in self.atoms):
            point = {min(atom): mass
                     for atom, mass in zip(self.atoms, self.masses)}
        object.__setattr__(self, "_support", support)
        object.__setattr__(self, "_point", point)

    def support(self) -> frozenset:
        """Union of the atoms that carry positive mass."""
        return self._support

    def believes(self, event: frozenset) -> bool:
        """Mass-one test; equivalent to ``measure(event & states) == 1``
        whenever that measure is defined."""
        return self._support <= event

    def measure(self, event: frozenset) -> Fraction:
        """Mass of ``event``; the event must be a union of atoms."""
        if self._point is not None:
            return sum((self._point[s] for s in event if s in self._point),
                       Fraction(0))
        total = Fraction(0)
        for atom, mass in zip(self.atoms, self.masses):
            if atom <= event:
                total += mass
            elif atom & event:
                raise NotMeasurable(
                    "event {%s} cuts across atom {%s}"
                    % (", ".join(sorted(event)), ", ".join(sorted(atom))))
        return total


def singleton_cell(states, masses) -> CellBeliefs:
    """Cell with the powerset algebra: one atom per state."""
    names = sorted(masses)
    return CellBeliefs(
        states=frozenset(states),
        atoms=tuple(frozenset([s]) for s in names),
        masses=tuple(Fraction(masses[s]) for s in names),
    )


@dataclass(frozen=True, eq=False)
class Structure:
    """Immutable multi-agent epistemic probability structure.

    ``partitions[i]`` and ``beliefs[i]`` are aligned cell-by-cell, which
    hard-wires that all states of a cell share one probability space.
    """

    n_agents: int
    states: tuple
    props: tuple
    partitions: dict
    beliefs: dict
    interpretations: dict
    priors: dict = None
    signals: dict = None

    def __post_init__(self):
        if self.n_agents < 1:
            raise ModelFormatError("need at least one agent")
        if not self.states or len(set(self.states)) != len(self.states):
            raise ModelFormatError("states must be nonempty and unique")
        if not self.props or len(set(self.props)) != len(self.props):
            raise ModelFormatError("propositions must be nonempty and unique")
        for name in self.props:
            if not _NAME.match(name) or _RESERVED_NAME.match(name):
                raise ModelFormatError("unusable proposition name: %r" % name)
        for label, mapping in (("partitions", self.partitions),
                               ("beliefs", self.beliefs),
                               ("interpretations", self.interpretations)):
            if set(mapping) != set(self.agents):
                raise ModelFormatError("%s must cover agents 1..%d exactly"
                                       % (label, self.n_agents))
        for i in self.agents:
            if len(self.partitions[i]) != len(self.beliefs[i]):
                raise ModelFormatError(
                    "agent %d: %d cells but %d belief entries"
                    % (i, len(self.partitions[i]), len(self.beliefs[i])))
        index = {}
        for i in self.agents:
            for ci, cell in enumerate(self.partitions[i]):
                for s in cell:
                    index.setdefault((i, s), ci)
        object.__setattr__(self, "_cell_index", index)

    @property
    def agents(self) -> range:
        return range(1, self.n_agents + 1)

    @property
    def universe(self) -> frozenset:
        return frozenset(self.states)

    def cell_index(self, agent: int, state: str) -> int:
        try:
            return self._cell_index[(agent, state)]
        except KeyError:
            raise UnknownState("state %r not in any cell of agent %d"
                               % (state, agent))

    def cell_of(self, agent: int, state: str) -> frozenset:
        return self.partitions[agent][self.cell_index(agent, state)]

    def cell_beliefs(self, agent: int, state: str) -> CellBeliefs:
        return self.beliefs[agent][self.cell_index(agent, state)]

    def prior_mass(self, agent: int, event) -> Fraction:
        if self.priors is None:
            raise ModePrereqMissing("structure has no priors")
        nu = self.priors[agent]
        return sum((nu.get(s, Fraction(0)) for s in event), Fraction(0))

    def replace(self, **kw) -> "Structure":
        return replace(self, **kw)


# --- Validation ---

def validate_core(m: Structure) -> Report:
    """Check the base soundness assumptions; violations become report entries.

    Checked: every partition covers the state space with disjoint nonempty
    cells; every cell's atoms partition exactly that cell; masses are
    nonnegative and sum to one per cell; every agent can measure every
    agent's cells within his own cells; every agent's propositions are
    measurable within his own cells; interpretations cover all declared
    propositions; priors, when present, are probability measures.
    """
    report = Report()
    universe = m.universe
    for i in m.agents:
        seen = set()
        for ci, cell in enumerate(m.partitions[i]):
            if not cell:
                report.add("partition-empty-cell",
                           "agent %d has an empty cell" % i, agent=i, cell=ci)
            overlap = seen & cell
            if overlap:
                report.add("partition-overlap",
                           "agent %d: state(s) %s in two cells"
                           % (i, sorted(overlap)), agent=i,
                           states=sorted(overlap))
            seen |= cell
            if not cell <= universe:
                report.add("partition-cover",
                           "agent %d: cell mentions unknown states %s"
                           % (i, sorted(cell - universe)), agent=i, cell=ci)
        if seen != universe:
            report.add("partition-cover",
                       "agent %d: partition misses states %s"
                       % (i, sorted(universe - seen)), agent=i,
                       states=sorted(universe - seen))

    for i in m.agents:
        for ci, (cell, cb) in enumerate(zip(m.partitions[i], m.beliefs[i])):
            covered = set()
            bad_atoms = False
            for atom in cb.atoms:
                if not atom or not atom <= cell or (covered & atom):
                    bad_atoms = True
                covered |= atom
            if bad_atoms or covered != cell or cb.states != cell:
                report.add("cell-sample-space",
                           "agent %d cell %d: atoms do not partition the cell"
                           % (i, ci), agent=i, cell=ci)
                continue
            if any(mass < 0 for mass in cb.masses):
                report.add("measure-negative",
                           "agent %d cell %d has a negative mass" % (i, ci),
                           agent=i, cell=ci)
            total = sum(cb.masses, Fraction(0))
            if total != 1:
                report.add("measure-sum",
                           "agent %d cell %d masses sum to %s, not 1"
                           % (i, ci, total), agent=i, cell=ci,
                           total=str(total))

    # Cross-agent cells and own propositions must be measurable in each cell.
    for i in m.agents:
        for ci, (cell, cb) in enumerate(zip(m.partitions[i], m.beliefs[i])):
            if cb.states != cell:
                continue
            for j in m.agents:
                if j == i:
                    continue
                for cj, other in enumerate(m.partitions[j]):
                    try:
                        cb.measure(other & cell)
                    except NotMeasurable:
                        report.add(
                            "cell-measurability",
                            "agent %d cell %d cannot measure agent %d's "
                            "cell %d" % (i, ci, j, cj),
                            agent=i, cell=ci, other_agent=j, other_cell=cj)
            for p in m.props:
                ext = m.interpretations[i].get(p)
                if ext is None:
                    continue
                try:
                    cb.measure(ext & cell)
                except NotMeasurable:
                    report.add(
                        "prop-measurability",
                        "agent %d cannot measure proposition %s in the cell "
                        "of %s" % (i, p, min(cell)),
                        agent=i, state=min(cell), prop=p)

    for i in m.agents:
        for p in m.props:
            ext = m.interpretations[i].get(p)
            if ext is None:
                report.add("interpretation-missing",
                           "agent %d does not interpret %s" % (i, p),
                           agent=i, prop=p)
            elif not ext <= universe:
                report.add("interpretation-range",
                           "agent %d maps %s to unknown states %s"
                           % (i, p, sorted(ext - universe)), agent=i, prop=p)

    if m.priors is not None:
        for i in m.agents:
            nu = m.priors.get(i)
            if nu is None:
                report.add("prior-missing", "agent %d has no prior" % i,
                           agent=i)
                continue
            if any(v < 0 for v in nu.values()):
                report.add("prior-negative",
                           "agent %d prior has a negative mass" % i, agent=i)
            total = sum(nu.values(), Fraction(0))
            if total != 1:
                report.add("prior-sum",
                           "agent %d prior sums to %s, not 1" % (i, total),
                           agent=i, total=str(total))
            if not set(nu) <= universe:
                report.add("prior-range",
                           "agent %d prior mentions unknown states" % i,
                           agent=i)
    return report


_CORE_KINDS = {
    "partition-empty-cell", "partition-overlap", "partition-cover",
    "cell-sample-space", "measure-negative", "measure-sum",
    "cell-measurability",
}


def validate_signals(m: Structure) -> Report:
    """Check the signal assumptions; violations become report entries.

    For every agent and state there must be a propositional signal formula
    whose extension under the owner's interpretation is exactly the owner's
    cell.  Additionally, for every ordered pair of agents, the signal
    extensions under the other agent's interpretation must form a partition
    of the state space containing each state in its own signal's extension
    (this stronger condition is what outermost signal semantics relies on).
    """
    if m.signals is None:
        raise MissingSignals("structure declares no signals")
    report = Report()
    exts = {}  # (owner, state, reader) -> frozenset
    for i in m.agents:
        per_agent = m.signals.get(i, {})
        for s in m.states:
            sig = per_agent.get(s)
            if sig is None:
                report.add("signal-missing",
                           "agent %d has no signal at state %s" % (i, s),
                           agent=i, state=s)
                continue
            if not fm.is_propositional(sig):
                report.add("signal-not-propositional",
                           "agent %d's signal at %s is not propositional"
                           % (i, s), agent=i, state=s,
                           signal=fm.print_formula(sig))
                continue
            for j in m.agents:
                exts[(i, s, j)] = prop_extension(m, j, sig)

    for i in m.agents:
        for s in m.states:
            ext = exts.get((i, s, i))
            if ext is None:
                continue
            cell = m.cell_of(i, s)
            if ext != cell:
                report.add(
                    "signal-cell",
                    "agent %d's signal at %s denotes {%s}, not his cell {%s}"
                    % (i, s, ", ".join(sorted(ext)), ", ".join(sorted(cell))),
                    agent=i, state=s, extension=sorted(ext))

    universe = m.universe
    for i in m.agents:
        for j in m.agents:
            got_all = all((i, s, j) in exts for s in m.states)
            if not got_all:
                continue
            for s in m.states:
                if s not in exts[(i, s, j)]:
                    report.add(
                        "signal-membership",
                        "state %s lies outside agent %d's reading of agent "
                        "%d's signal there" % (s, j, i),
                        owner=i, reader=j, state=s)
            blocks = {exts[(i, s, j)] for s in m.states}
            covered = set()
            disjoint = True
            for block in blocks:
                if covered & block:
                    disjoint = False
                covered |= block
            if not disjoint or covered != universe or frozenset() in blocks:
                report.add(
                    "signal-partition",
                    "agent %d's readings of agent %d's signals do not "
                    "partition the state space" % (j, i),
                    owner=i, reader=j,
                    blocks=sorted(sorted(b) for b in blocks))
    return report


_A5_KINDS = {"signal-missing", "signal-not-propositional", "signal-cell"}


def generate_priors(m: Structure) -> dict:
    """Derive per-agent priors whose cell conditionals reproduce the beliefs.

    With N cells in an agent's partition, each cell receives prior mass 1/N
    distributed over its atoms in proportion to the cell's own measure (and
    uniformly over the states inside an atom).  Every cell then has positive
    prior mass and conditioning the prior on a cell returns that cell's
    measure exactly.
    """
    core = validate_core(m)
    blocking = [v for v in core.entries if v.kind in _CORE_KINDS]
    if blocking:
        raise CoreInvalid("structure fails core checks: %s"
                          % "; ".join(v.message for v in blocking))
    priors = {}
    for i in m.agents:
        cells = m.partitions[i]
        share = Fraction(1, len(cells))
        nu = {s: Fraction(0) for s in m.states}
        for cb in m.beliefs[i]:
            for atom, mass in zip(cb.atoms, cb.masses):
                per_state = share * mass / len(atom)
                for s in atom:
                    nu[s] += per_state
        priors[i] = nu
    return priors


# --- Queries ---

def prop_extension(m: Structure, agent: int, f) -> frozenset:
    """States where a propositional formula holds under one agent's
    interpretation."""
    if agent not in m.agents:
        raise UnknownAgent("agent %d not in 1..%d" % (agent, m.n_agents))
    if not fm.is_propositional(f):
        raise NotPropositional("not a propositional formula: %s"
                               % fm.print_formula(f))
    universe = m.universe

    def ext(g):
        if isinstance(g, fm.Prop):
            try:
                return m.interpretations[agent][g.name]
            except KeyError:
                raise UnknownProp("proposition %r not declared" % g.name)
        if isinstance(g, fm.Not):
            return universe - ext(g.arg)
        if isinstance(g, fm.And):
            return ext(g.left) & ext(g.right)
        if isinstance(g, fm.Or):
            return ext(g.left) | ext(g.right)
        if isinstance(g, fm.Implies):
            return (universe - ext(g.left)) | ext(g.right)
        if isinstance(g, fm.Iff):
            left, right = ext(g.left), ext(g.right)
            return (left & right) | (universe - left - right)
        if isinstance(g, fm.TrueF):
            return universe
        if isinstance(g, fm.FalseF):
            return frozenset()
        raise NotPropositional("not a propositional formula: %r" % (g,))

    return ext(f)


def reachable(m: Structure, group, state: str) -> frozenset:
    """States linked to ``state`` by chains through the cells of agents in
    ``group``."""
    group = frozenset(group)
    if not group:
        raise ValueError("group must be nonempty")
    for i in group:
        if i not in m.agents:
            raise UnknownAgent("agent %d not in 1..%d" % (i, m.n_agents))
    if state not in m.universe:
        raise UnknownState("state %r not declared" % state)
    seen = {state}
    frontier = [state]
    while frontier:
        s = frontier.pop()
        for i in group:
            for t in m.cell_of(i, s):
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
    return frozenset(seen)


def _signal_formula(m: Structure, agent: int, state: str):
    if m.signals is None:
        raise MissingSignals("structure declares no signals")
    sig = m.signals.get(agent, {}).get(state)
    if sig is None:
        raise MissingSignals("agent %d has no signal at state %s"
                             % (agent, state))
    return sig


def conditional_targets(m: Structure, mode: EvalMode, outer: int,
                        j: int, state: str) -> frozenset:
    """States that agent ``j`` gives positive posterior mass from ``state``
    under a signal mode: the prior is conditioned on the reader's
    interpretation of j's signal there (reader is j itself in the innermost
    signal mode, the outer agent otherwise)."""
    if m.priors is None:
        raise ModePrereqMissing("signal modes need explicit priors")
    sig = _signal_formula(m, j, state)
    reader = j if mode is EvalMode.INNERMOST_AI else outer
    event = prop_extension(m, reader, sig)
    if m.prior_mass(j, event) == 0:
        raise UndefinedConditional(j, state, fm.print_formula(sig), event)
    nu = m.priors[j]
    return frozenset(s for s in event if nu.get(s, Fraction(0)) > 0)


def belief_edges(m: Structure, mode: EvalMode, outer: int, j: int) -> frozenset:
    """The pairs (state, state') where agent ``j`` considers state' possible.

    In the non-signal modes these are the pairs whose target carries
    positive mass in the source's cell measure (the union of positive-mass
    atoms, which for singleton atoms is exactly positive point mass).  In
    the signal modes the target must carry positive prior mass inside the
    conditioning event of ``conditional_targets``.
    """
    if j not in m.agents:
        raise UnknownAgent("agent %d not in 1..%d" % (j, m.n_agents))
    edges = set()
    if mode.is_ai:
        for s in m.states:
            for t in conditional_targets(m, mode, outer, j, s):
                edges.add((s, t))
    else:
        for cell, cb in zip(m.partitions[j], m.beliefs[j]):
            support = cb.support()
            for s in cell:
                for t in support:
                    edges.add((s, t))
    return frozenset(edges)


def is_common_interpretation(m: Structure) -> bool:
    """True iff all agents interpret every proposition identically."""
    first = m.interpretations[1]
    return all(
        m.interpretations[i].get(p) == first.get(p)
        for i in m.agents for p in m.props
    )


def has_identical_priors(m: Structure) -> bool:
    """True iff priors are present and all agents share the same one."""
    if m.priors is None:
        return False
    first = m.priors[1]
    universe = m.states
    return all(
        m.priors[i].get(s, Fraction(0)) == first.get(s, Fraction(0))
        for i in m.agents for s in universe
    )


# --- Serialization (JSON, exact rationals as strings) ---

def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ModelFormatError("%s: floating point or boolean rejected, "
                               "use \"num/den\" strings" % where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ModelFormatError("%s: bad rational %r" % (where, value))
    raise ModelFormatError("%s: bad rational %r" % (where, value))


def _reject_float(text):
    raise ModelFormatError("floating point rejected: %s" % text)


def structure_from_dict(data: dict) -> Structure:
    if not isinstance(data, dict):
        raise ModelFormatError("structure file must be a JSON object")
    try:
        n = int(data["agents"])
        states = tuple(data["states"])
        props = tuple(data["props"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError("missing or bad agents/states/props: %s" % exc)
    state_set = set(states)

    def check_states(names, where):
        out = frozenset(names)
        for s in out:
            if s not in state_set:
                raise ModelFormatError("%s: unknown state %r" % (where, s))
        return out

    def agent_map(key, required=True):
        block = data.get(key)
        if block is None:
            if required:
                raise ModelFormatError("missing %r block" % key)
            return None
        out = {}
        for k, v in block.items():
            try:
                i = int(k)
            except ValueError:
                raise ModelFormatError("%s: bad agent key %r" % (key, k))
            out[i] = v
        return out

    partitions = {}
    for i, cells in (agent_map("partitions") or {}).items():
        partitions[i] = tuple(
            check_states(cell, "partitions[%d]" % i) for cell in cells)

    beliefs = {}
    for i, cells in (agent_map("beliefs") or {}).items():
        if i not in partitions or len(cells) != len(partitions[i]):
            raise ModelFormatError(
                "beliefs[%d] must list one entry per partition cell" % i)
        built = []
        for ci, spec in enumerate(cells):
            where = "beliefs[%d][%d]" % (i, ci)
            cell = partitions[i][ci]
            if not isinstance(spec, dict) or "measure" not in spec:
                raise ModelFormatError("%s: need a measure map" % where)
            if "atoms" in spec and spec["atoms"] is not None:
                atoms = tuple(check_states(a, where) for a in spec["atoms"])
                masses = []
                for idx in range(len(atoms)):
                    raw = spec["measure"].get(str(idx))
                    if raw is None:
                        raise ModelFormatError(
                            "%s: measure missing atom index %d" % (where, idx))
                    masses.append(_rational(raw, where))
                built.append(CellBeliefs(frozenset(cell), atoms,
                                         tuple(masses)))
            else:
                measure = {}
                for s in cell:
                    raw = spec["measure"].get(s, 0)
                    measure[s] = _rational(raw, where)
                extra = set(spec["measure"]) - set(cell)
                if extra:
                    raise ModelFormatError("%s: measure names states outside "
                                           "the cell: %s" % (where, sorted(extra)))
                built.append(singleton_cell(cell, measure))
        beliefs[i] = tuple(built)

    interpretations = {}
    for i, per_prop in (agent_map("interpretations") or {}).items():
        interpretations[i] = {
            p: check_states(ss, "interpretations[%d][%s]" % (i, p))
            for p, ss in per_prop.items()
        }

    priors = None
    raw_priors = agent_map("priors", required=False)
    if raw_priors is not None:
        priors = {}
        for i, nu in raw_priors.items():
            out = {}
            for s, v in nu.items():
                if s not in state_set:
                    raise ModelFormatError("priors[%d]: unknown state %r"
                                           % (i, s))
                out[s] = _rational(v, "priors[%d][%s]" % (i, s))
            priors[i] = out

    signals = None
    raw_signals = agent_map("signals", required=False)
    if raw_signals is not None:
        signals = {}
        for i, per_state in raw_signals.items():
            out = {}
            for s, text in per_state.items():
                if s not in state_set:
                    raise ModelFormatError("signals[%d]: unknown state %r"
                                           % (i, s))
                out[s] = fm.parse(text)
            signals[i] = out

    return Structure(
        n_agents=n, states=states, props=props, partitions=partitions,
        beliefs=beliefs, interpretations=interpretations, priors=priors,
        signals=signals,
    )


def loads_structure(text: str) -> Structure:
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ModelFormatError("bad JSON: %s" % exc)
    return structure_from_dict(data)


def load_structure(path) -> Structure:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_structure(fh.read())


def _all_singleton(cb: CellBeliefs) -> bool:
    return all(len(a) == 1 for a in cb.atoms)


def structure_to_dict(m: Structure) -> dict:
    data = {
        "agents": m.n_agents,
        "states": list(m.states),
        "props": list(m.props),
        "partitions": {
            str(i): [sorted(cell) for cell in m.partitions[i]]
            for i in m.agents
        },
        "interpretations": {
            str(i): {p: sorted(m.interpretations[i][p]) for p in m.props
                     if p in m.interpretations[i]}
            for i in m.agents
        },
    }
    beliefs = {}
    for i in m.agents:
        cells = []
        for cb in m.beliefs[i]:
            if _all_singleton(cb):
                cells.append({"measure": {
                    min(atom): str(mass)
                    for atom, mass in zip(cb.atoms, cb.masses)
                }})
            else:
                cells.append({
                    "atoms": [sorted(a) for a in cb.atoms],
                    "measure": {str(idx): str(mass)
                                for idx, mass in enumerate(cb.masses)},
                })
        beliefs[str(i)] = cells
    data["beliefs"] = beliefs
    if m.priors is not None:
        data["priors"] = {
            str(i): {s: str(v) for s, v in sorted(m.priors[i].items())}
            for i in m.agents
        }
    if m.signals is not None:
        data["signals"] = {
            str(i): {s: fm.print_formula(sig)
                     for s, sig in sorted(m.signals[i].items())}
            for i in m.agents
        }
    return data


def dumps_structure(m: Structure) -> str:
    return json.dumps(structure_to_dict(m), indent=2, sort_keys=True)


def dump_structure(m: Structure, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_structure(m))
        fh.write("\n")
