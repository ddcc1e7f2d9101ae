"""Randomized verification campaigns over generated structures.

Each check replays one proved equivalence on freshly generated inputs, so
any failure is an implementation bug; the first counterexample is recorded
with enough context (serialized structure, query, both truth values) to be
re-run in isolation.  Campaigns are deterministic given their seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import formula as fm
from .generators import (
    GenBounds,
    formula_corpus,
    random_core_formula,
    random_signal_structure,
    random_structure,
)
from .modes import EvalMode
from .semantics import Evaluator
from .structure import (
    Structure,
    generate_priors,
    structure_to_dict,
    validate_core,
    validate_signals,
)
from .transforms import (
    TransformClaim,
    disjoint_copies,
    fix_interpretation,
    label_partitions,
    StateMap,
    verify_transform_equivalence,
)
from .translation import verify_theorem2

__all__ = ["Campaign", "CampaignReport", "CheckResult", "run_campaign",
           "CHECK_NAMES"]

CHECK_NAMES = (
    "thm1-ab", "thm1-ac", "thm1-da", "thm2-in", "thm2-ou",
    "prop1", "mode-agreement", "inai-eq-in", "cb-oracle",
)


@dataclass(frozen=True)
class Campaign:
    seed: int = 0
    trials: int = 100
    bounds: GenBounds = field(default_factory=GenBounds)
    checks: tuple = CHECK_NAMES
    naive_cb: bool = False  # testing hook: corrupt the innermost translation

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        unknown = set(self.checks) - set(CHECK_NAMES)
        if unknown:
            raise ValueError("unknown checks: %s" % ", ".join(sorted(unknown)))


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    failures: int = 0
    first_counterexample: dict = None
    elapsed_s: float = 0.0

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "first_counterexample": self.first_counterexample,
            "elapsed_s": self.elapsed_s,
        }


@dataclass
class CampaignReport:
    campaign: Campaign
    results: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.failures == 0 for r in self.results.values())

    def to_dict(self) -> dict:
        return {
            "seed": self.campaign.seed,
            "trials": self.campaign.trials,
            "bounds": {
                "max_states": self.campaign.bounds.max_states,
                "max_agents": self.campaign.bounds.max_agents,
                "max_props": self.campaign.bounds.max_props,
                "max_depth": self.campaign.bounds.max_depth,
            },
            "ok": self.ok,
            "checks": {name: r.to_dict()
                       for name, r in sorted(self.results.items())},
        }


def _counterexample(m: Structure, report, extra=None) -> dict:
    out = {"structure": structure_to_dict(m)}
    if report is not None and report.entries:
        first = report.entries[0]
        out["mismatch"] = first.to_dict()
    if extra:
        out.update(extra)
    return out


def _check_thm1_ab(rng, bounds, _hook):
    m = random_structure(rng, bounds)
    agent = rng.randint(1, m.n_agents)
    fixed = fix_interpretation(m, agent)
    corpus = formula_corpus(rng, m, 4, bounds.max_depth)
    report = verify_transform_equivalence(
        m, fixed, StateMap({s: (s, None) for s in m.states}), corpus,
        TransformClaim("fix-interpretation", agent=agent))
    return report.ok, None if report.ok else _counterexample(m, report)


def _check_thm1_ac(rng, bounds, _hook):
    m = random_structure(rng, bounds)
    copies, state_map = disjoint_copies(m)
    corpus = formula_corpus(rng, m, 4, bounds.max_depth)
    report = verify_transform_equivalence(
        m, copies, state_map, corpus, TransformClaim("disjoint-copies"))
    return report.ok, None if report.ok else _counterexample(m, report)


def _check_thm1_da(rng, bounds, _hook):
    m = random_structure(rng, bounds, common=True)
    state = rng.choice(m.states)
    labelled, _ = label_partitions(m, state)
    corpus = formula_corpus(rng, m, 4, bounds.max_depth, props=m.props)
    report = verify_transform_equivalence(
        m, labelled, None, corpus,
        TransformClaim("label-partitions", base_state=state))
    if not validate_core(labelled).ok or not validate_signals(labelled).ok:
        return False, _counterexample(labelled, None,
                                      {"reason": "labelled structure invalid"})
    return report.ok, None if report.ok else _counterexample(m, report)


def _check_thm2(direction):
    def check(rng, bounds, hook):
        m = random_structure(rng, bounds)
        corpus = formula_corpus(rng, m, 4, bounds.max_depth)
        report = verify_theorem2(m, corpus, directions=(direction,),
                                 naive_cb=hook and direction == "in")
        return report.ok, None if report.ok else _counterexample(m, report)
    return check


def _check_prop1(rng, bounds, _hook):
    m = random_structure(rng, bounds)
    priors = generate_priors(m)
    for i in m.agents:
        nu = priors[i]
        total = sum(nu.values(), Fraction(0))
        if total != 1:
            return False, _counterexample(m, None, {
                "reason": "prior of agent %d sums to %s" % (i, total)})
        for cell, cb in zip(m.partitions[i], m.beliefs[i]):
            cell_mass = sum((nu[s] for s in cell), Fraction(0))
            if cell_mass <= 0:
                return False, _counterexample(m, None, {
                    "reason": "cell of agent %d got prior mass %s"
                              % (i, cell_mass)})
            for atom, mass in zip(cb.atoms, cb.masses):
                atom_mass = sum((nu[s] for s in atom), Fraction(0))
                if atom_mass / cell_mass != mass:
                    return False, _counterexample(m, None, {
                        "reason": "conditional of agent %d differs on atom %s"
                                  % (i, sorted(atom))})
    return True, None


def _check_mode_agreement(rng, bounds, _hook):
    m = random_structure(rng, bounds, common=True)
    corpus = formula_corpus(rng, m, 4, bounds.max_depth)
    ev = Evaluator(m)
    for f in corpus:
        for s in m.states:
            for i in m.agents:
                values = {
                    mode.value: ev.evaluate(s, i, f, mode)
                    for mode in (EvalMode.COMMON, EvalMode.OUTERMOST,
                                 EvalMode.INNERMOST)
                }
                if len(set(values.values())) != 1:
                    return False, _counterexample(m, None, {
                        "query": {"state": s, "agent": i,
                                  "formula": fm.print_formula(f)},
                        "values": values})
    return True, None


def _check_inai_eq_in(rng, bounds, _hook):
    m = random_signal_structure(rng, bounds)
    corpus = formula_corpus(rng, m, 4, bounds.max_depth,
                            props=m.props[:bounds.max_props])
    ev = Evaluator(m)
    for f in corpus:
        for s in m.states:
            for i in m.agents:
                inner = ev.evaluate(s, i, f, EvalMode.INNERMOST)
                inner_ai = ev.evaluate(s, i, f, EvalMode.INNERMOST_AI)
                if inner != inner_ai:
                    return False, _counterexample(m, None, {
                        "query": {"state": s, "agent": i,
                                  "formula": fm.print_formula(f)},
                        "values": {"in": inner, "in-ai": inner_ai}})
    return True, None


def _check_cb_oracle(rng, bounds, _hook):
    m = random_structure(rng, bounds)
    group = frozenset(rng.sample(range(1, m.n_agents + 1),
                                 rng.randint(1, m.n_agents)))
    f = random_core_formula(rng, list(m.props), m.n_agents,
                            rng.randint(0, max(1, bounds.max_depth - 2)))
    mode = rng.choice([EvalMode.OUTERMOST, EvalMode.INNERMOST])
    outer = rng.randint(1, m.n_agents)
    ev = Evaluator(m)
    via_graph = ev.common_belief_set(group, f, mode, outer)
    bound = len(m.states) * len(group) + 1
    via_iteration = m.universe
    for k in range(1, bound + 1):
        via_iteration &= ev.eb_k(group, f, k, mode, outer)
    if via_graph != via_iteration:
        return False, _counterexample(m, None, {
            "query": {"group": sorted(group), "mode": mode.value,
                      "outer": outer, "formula": fm.print_formula(f)},
            "values": {"reachability": sorted(via_graph),
                       "iterated": sorted(via_iteration)}})
    return True, None


_CHECK_FNS = {
    "thm1-ab": _check_thm1_ab,
    "thm1-ac": _check_thm1_ac,
    "thm1-da": _check_thm1_da,
    "thm2-in": _check_thm2("in"),
    "thm2-ou": _check_thm2("ou"),
    "prop1": _check_prop1,
    "mode-agreement": _check_mode_agreement,
    "inai-eq-in": _check_inai_eq_in,
    "cb-oracle": _check_cb_oracle,
}


def run_campaign(campaign: Campaign) -> CampaignReport:
    """Run the selected checks for the given number of trials each.

    Each trial is seeded from (campaign seed, check name, trial index), so
    reports are reproducible and independent of check order.
    """
    report = CampaignReport(campaign)
    for name in campaign.checks:
        fn = _CHECK_FNS[name]
        result = CheckResult(name)
        started = time.perf_counter()
        for trial in range(campaign.trials):
            rng = random.Random("%d/%s/%d" % (campaign.seed, name, trial))
            ok, counterexample = fn(rng, campaign.bounds, campaign.naive_cb)
            result.trials += 1
            if not ok:
                result.failures += 1
                if result.first_counterexample is None:
                    counterexample = dict(counterexample or {})
                    counterexample["trial"] = trial
                    result.first_counterexample = counterexample
        result.elapsed_s = round(time.perf_counter() - started, 6)
        report.results[name] = result
    return report
