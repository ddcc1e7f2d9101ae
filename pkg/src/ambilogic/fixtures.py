"""Small hand-built structures used throughout tests and demos."""

from __future__ import annotations

from fractions import Fraction

from . import formula as fm
from .structure import Structure, singleton_cell

HALF = Fraction(1, 2)
ONE = Fraction(1)


def m_red() -> Structure:
    """Two states; agent 1 knows the state, agent 2 does not; the single
    proposition p is read differently: agent 1 sees it true only at w1,
    agent 2 everywhere."""
    return Structure(
        n_agents=2,
        states=("w1", "w2"),
        props=("p",),
        partitions={
            1: (frozenset({"w1"}), frozenset({"w2"})),
            2: (frozenset({"w1", "w2"}),),
        },
        beliefs={
            1: (singleton_cell({"w1"}, {"w1": ONE}),
                singleton_cell({"w2"}, {"w2": ONE})),
            2: (singleton_cell({"w1", "w2"}, {"w1": HALF, "w2": HALF}),),
        },
        interpretations={
            1: {"p": frozenset({"w1"})},
            2: {"p": frozenset({"w1", "w2"})},
        },
    )


def m_ck() -> Structure:
    """Common-interpretation variant of ``m_red``: everyone uses agent 1's
    reading of p."""
    base = m_red()
    shared = {"p": frozenset({"w1"})}
    return base.replace(interpretations={1: dict(shared), 2: dict(shared)})


def m_sig() -> Structure:
    """``m_red`` extended with a signal proposition s that both agents read
    as {w1}; agent 1's signals are s at w1 and !s at w2, agent 2's signal is
    the tautology s | !s everywhere.  Uniform priors."""
    uniform = {"w1": HALF, "w2": HALF}
    return Structure(
        n_agents=2,
        states=("w1", "w2"),
        props=("p", "s"),
        partitions={
            1: (frozenset({"w1"}), frozenset({"w2"})),
            2: (frozenset({"w1", "w2"}),),
        },
        beliefs={
            1: (singleton_cell({"w1"}, {"w1": ONE}),
                singleton_cell({"w2"}, {"w2": ONE})),
            2: (singleton_cell({"w1", "w2"}, dict(uniform)),),
        },
        interpretations={
            1: {"p": frozenset({"w1"}), "s": frozenset({"w1"})},
            2: {"p": frozenset({"w1", "w2"}), "s": frozenset({"w1"})},
        },
        priors={1: dict(uniform), 2: dict(uniform)},
        signals={
            1: {"w1": fm.parse("s"), "w2": fm.parse("!s")},
            2: {"w1": fm.parse("s | !s"), "w2": fm.parse("s | !s")},
        },
    )


def m_ai() -> Structure:
    """Neither agent can distinguish the two states; agent 1's signals s and
    t both denote his whole cell to him, but agent 2 reads s as {a} and t as
    {b}.  Under the outermost signal mode agent 2 therefore thinks agent 1
    learned the state; under the innermost signal mode she does not."""
    uniform = {"a": HALF, "b": HALF}
    whole = frozenset({"a", "b"})
    return Structure(
        n_agents=2,
        states=("a", "b"),
        props=("p", "s", "t"),
        partitions={1: (whole,), 2: (whole,)},
        beliefs={
            1: (singleton_cell(whole, dict(uniform)),),
            2: (singleton_cell(whole, dict(uniform)),),
        },
        interpretations={
            1: {"p": frozenset({"a"}), "s": whole, "t": whole},
            2: {"p": frozenset({"a"}), "s": frozenset({"a"}),
                "t": frozenset({"b"})},
        },
        priors={1: dict(uniform), 2: dict(uniform)},
        signals={
            1: {"a": fm.parse("s"), "b": fm.parse("t")},
            2: {"a": fm.parse("s | !s"), "b": fm.parse("s | !s")},
        },
    )
