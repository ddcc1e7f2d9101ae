"""Independent brute-force evaluator used to re-derive expected values.

Direct clause-by-clause recursion: no memoization, no reachability pass.
Common belief is checked as the conjunction of the iterated "everybody
believes" up to the saturation bound |states| * |group| + 1, each level
computed by literally unfolding the belief operator.  Exponential, so only
for very small structures.
"""

from fractions import Fraction

from ambilogic import formula as fm
from ambilogic.structure import prop_extension


def eval_brute(m, state, agent, f, mode):
    return _ev(m, state, agent, fm.expand(f, m.props[0]), mode)


def _reader(mode, agent, j):
    return j if mode.innermost_scope else agent


def _conditioning_event(m, mode, agent, j, state):
    sig = m.signals[j][state]
    return prop_extension(m, _reader(mode, agent, j), sig)


def _prob_of(m, mode, agent, j, state, ext):
    if mode.is_ai:
        event = _conditioning_event(m, mode, agent, j, state)
        denom = m.prior_mass(j, event)
        assert denom > 0, "brute oracle hit an undefined conditional"
        return m.prior_mass(j, ext & event) / denom
    cell = m.cell_of(j, state)
    return m.cell_beliefs(j, state).measure(ext & cell)


def _ev(m, state, agent, f, mode):
    if isinstance(f, fm.Prop):
        return state in m.interpretations[agent][f.name]
    if isinstance(f, fm.IndexedProp):
        return state in m.interpretations[agent]["%s@%d" % (f.name, f.agent)]
    if isinstance(f, fm.Not):
        return not _ev(m, state, agent, f.arg, mode)
    if isinstance(f, fm.And):
        return (_ev(m, state, agent, f.left, mode)
                and _ev(m, state, agent, f.right, mode))
    if isinstance(f, fm.ProbGe):
        j = f.agent
        value = Fraction(0)
        for t in f.terms:
            reader = _reader(mode, agent, j)
            ext = frozenset(s for s in m.states
                            if _ev(m, s, reader, t.arg, mode))
            value += t.coeff * _prob_of(m, mode, agent, j, state, ext)
        return value >= f.bound
    if isinstance(f, fm.CB):
        bound = len(m.states) * len(f.group) + 1
        return all(_eb(m, state, agent, f.group, f.arg, k, mode)
                   for k in range(1, bound + 1))
    raise TypeError("not a core formula: %r" % (f,))


def _eb(m, state, agent, group, arg, k, mode):
    for j in sorted(group):
        reader = _reader(mode, agent, j)
        if k == 1:
            ext = frozenset(s for s in m.states
                            if _ev(m, s, reader, arg, mode))
        else:
            ext = frozenset(s for s in m.states
                            if _eb(m, s, reader, group, arg, k - 1, mode))
        if _prob_of(m, mode, agent, j, state, ext) != 1:
            return False
    return True
