import json
from fractions import Fraction

import pytest

from ambilogic import formula as fm
from ambilogic.errors import (
    CoreInvalid,
    MissingSignals,
    ModelFormatError,
    NotMeasurable,
    NotPropositional,
    UndefinedConditional,
    UnknownAgent,
)
from ambilogic.fixtures import m_ai, m_red, m_sig
from ambilogic.modes import EvalMode
from ambilogic.structure import (
    CellBeliefs,
    Structure,
    belief_edges,
    dumps_structure,
    generate_priors,
    has_identical_priors,
    is_common_interpretation,
    loads_structure,
    prop_extension,
    reachable,
    singleton_cell,
    structure_to_dict,
    validate_core,
    validate_signals,
)

HALF = Fraction(1, 2)
ONE = Fraction(1)


def coarse_atom_structure(p_ext_1=frozenset({"w1"})):
    """Agent 1's single cell has the trivial algebra {cell}; agent 2 has
    the powerset one."""
    cell = frozenset({"w1", "w2"})
    return Structure(
        n_agents=2,
        states=("w1", "w2"),
        props=("p",),
        partitions={1: (cell,), 2: (cell,)},
        beliefs={
            1: (CellBeliefs(cell, (cell,), (ONE,)),),
            2: (singleton_cell(cell, {"w1": HALF, "w2": HALF}),),
        },
        interpretations={
            1: {"p": p_ext_1},
            2: {"p": frozenset({"w1"})},
        },
    )


def test_validate_core_fixtures_clean():
    for m in (m_red(), m_sig(), m_ai()):
        report = validate_core(m)
        assert report.ok, str(report)


def test_validate_core_flags_unmeasurable_proposition():
    m = coarse_atom_structure()
    report = validate_core(m)
    kinds = report.kinds()
    assert "prop-measurability" in kinds
    witness = [v for v in report.entries if v.kind == "prop-measurability"][0]
    assert witness.context["agent"] == 1
    assert witness.context["prop"] == "p"
    assert witness.context["state"] == "w1"
    # with p read as the whole cell the violation disappears
    ok = coarse_atom_structure(p_ext_1=frozenset({"w1", "w2"}))
    assert "prop-measurability" not in validate_core(ok).kinds()


def test_coarse_algebra_blocks_cross_agent_events_only_at_eval():
    # agent 1's trivial algebra satisfies every core check when he reads p
    # as his whole cell, yet agent 2's finer reading of p is not measurable
    # for him, which only surfaces when an outermost query needs it
    from ambilogic.modes import EvalMode
    from ambilogic.semantics import evaluate
    m = coarse_atom_structure(p_ext_1=frozenset({"w1", "w2"}))
    assert validate_core(m).ok
    assert evaluate(m, "w1", 1, fm.parse("Pr1(p) >= 1"), EvalMode.OUTERMOST)
    with pytest.raises(NotMeasurable):
        evaluate(m, "w1", 2, fm.parse("Pr1(p) >= 1/2"), EvalMode.OUTERMOST)


def test_validate_core_flags_unmeasurable_other_cell():
    cell = frozenset({"w1", "w2"})
    m = Structure(
        n_agents=2,
        states=("w1", "w2"),
        props=("p",),
        partitions={1: (cell,), 2: (frozenset({"w1"}), frozenset({"w2"}))},
        beliefs={
            1: (CellBeliefs(cell, (cell,), (ONE,)),),
            2: (singleton_cell({"w1"}, {"w1": ONE}),
                singleton_cell({"w2"}, {"w2": ONE})),
        },
        interpretations={1: {"p": cell}, 2: {"p": cell}},
    )
    assert "cell-measurability" in validate_core(m).kinds()


def test_validate_core_flags_bad_measure_sum():
    bad = m_red().replace(beliefs={
        1: m_red().beliefs[1],
        2: (singleton_cell({"w1", "w2"},
                           {"w1": Fraction(49, 100), "w2": HALF}),),
    })
    report = validate_core(bad)
    assert "measure-sum" in report.kinds()


def test_validate_core_flags_partition_problems():
    m = m_red()
    bad = m.replace(partitions={
        1: (frozenset({"w1"}),),  # misses w2
        2: m.partitions[2],
    }, beliefs={
        1: (m.beliefs[1][0],),
        2: m.beliefs[2],
    })
    assert "partition-cover" in validate_core(bad).kinds()


def test_validate_signals_fixtures():
    assert validate_signals(m_sig()).ok
    assert validate_signals(m_ai()).ok


def test_validate_signals_flags_broken_cross_reading():
    m = m_sig()
    broken = m.replace(interpretations={
        1: m.interpretations[1],
        2: {"p": m.interpretations[2]["p"], "s": frozenset({"w1", "w2"})},
    })
    report = validate_signals(broken)
    assert not report.ok
    assert "signal-partition" in report.kinds()


def test_validate_signals_flags_wrong_cell():
    m = m_sig()
    swapped = m.replace(signals={
        1: {"w1": fm.parse("!s"), "w2": fm.parse("s")},
        2: m.signals[2],
    })
    assert "signal-cell" in validate_signals(swapped).kinds()


def test_validate_signals_requires_signals():
    with pytest.raises(MissingSignals):
        validate_signals(m_red())


def test_validate_signals_rejects_probability_signal():
    m = m_sig()
    bad = m.replace(signals={
        1: {"w1": fm.parse("Pr1(s) >= 1"), "w2": fm.parse("!s")},
        2: m.signals[2],
    })
    assert "signal-not-propositional" in validate_signals(bad).kinds()


def test_generate_priors_m_red():
    priors = generate_priors(m_red())
    uniform = {"w1": HALF, "w2": HALF}
    assert priors[1] == uniform  # two singleton cells, point masses
    assert priors[2] == uniform  # one cell, already uniform


def test_generate_priors_uniform_point_masses():
    cells = (frozenset({"a"}), frozenset({"b"}), frozenset({"c"}))
    m = Structure(
        n_agents=1, states=("a", "b", "c"), props=("p",),
        partitions={1: cells},
        beliefs={1: tuple(singleton_cell(c, {min(c): ONE}) for c in cells)},
        interpretations={1: {"p": frozenset({"a"})}},
    )
    priors = generate_priors(m)
    assert priors[1] == {s: Fraction(1, 3) for s in "abc"}


def test_generate_priors_reproduces_cell_measures():
    m = m_red()
    priors = generate_priors(m)
    for i in m.agents:
        for cell, cb in zip(m.partitions[i], m.beliefs[i]):
            cell_mass = sum(priors[i][s] for s in cell)
            assert cell_mass == Fraction(1, len(m.partitions[i]))
            for atom, mass in zip(cb.atoms, cb.masses):
                atom_mass = sum(priors[i][s] for s in atom)
                assert atom_mass / cell_mass == mass


def test_generate_priors_requires_core_validity():
    bad = m_red().replace(beliefs={
        1: m_red().beliefs[1],
        2: (singleton_cell({"w1", "w2"}, {"w1": HALF, "w2": HALF * HALF}),),
    })
    with pytest.raises(CoreInvalid):
        generate_priors(bad)


def test_prop_extension():
    m = m_red()
    assert prop_extension(m, 1, fm.parse("p")) == frozenset({"w1"})
    assert prop_extension(m, 2, fm.parse("p")) == frozenset({"w1", "w2"})
    assert prop_extension(m, 1, fm.parse("p & !p")) == frozenset()
    assert prop_extension(m, 1, fm.parse("true")) == m.universe
    with pytest.raises(NotPropositional):
        prop_extension(m, 1, fm.parse("Pr1(p) >= 1"))


def test_reachable():
    m = m_red()
    assert reachable(m, {1, 2}, "w1") == frozenset({"w1", "w2"})
    assert reachable(m, {1}, "w1") == frozenset({"w1"})
    assert reachable(m, {2}, "w2") == frozenset({"w1", "w2"})
    with pytest.raises(UnknownAgent):
        reachable(m, {3}, "w1")


def test_reachable_monotone_and_idempotent():
    m = m_sig()
    small = reachable(m, {1}, "w1")
    big = reachable(m, {1, 2}, "w1")
    assert small <= big
    for s in big:
        assert reachable(m, {1, 2}, s) == big


def test_belief_edges_plain_modes():
    m = m_red()
    complete = {(a, b) for a in ("w1", "w2") for b in ("w1", "w2")}
    assert belief_edges(m, EvalMode.INNERMOST, 1, 2) == complete
    assert belief_edges(m, EvalMode.OUTERMOST, 1, 1) == {
        ("w1", "w1"), ("w2", "w2")}


def test_belief_edges_signal_modes():
    m = m_ai()
    assert belief_edges(m, EvalMode.OUTERMOST_AI, 2, 1) == {
        ("a", "a"), ("b", "b")}
    complete = {(a, b) for a in ("a", "b") for b in ("a", "b")}
    assert belief_edges(m, EvalMode.INNERMOST_AI, 1, 1) == complete


def test_belief_edges_undefined_conditional():
    m = m_ai()
    skewed = m.replace(priors={
        1: {"a": ONE, "b": Fraction(0)},
        2: {"a": ONE, "b": Fraction(0)},
    })
    # agent 2 reads agent 1's signal at b as {b}, which has prior mass 0
    with pytest.raises(UndefinedConditional):
        belief_edges(skewed, EvalMode.OUTERMOST_AI, 2, 1)


def test_cell_constancy_of_edges():
    # within one cell all states share the same successor set
    for m in (m_red(), m_sig(), m_ai()):
        for mode in (EvalMode.INNERMOST, EvalMode.OUTERMOST):
            for j in m.agents:
                edges = belief_edges(m, mode, 1, j)
                succ = {}
                for a, b in edges:
                    succ.setdefault(a, set()).add(b)
                for cell in m.partitions[j]:
                    per_cell = {frozenset(succ.get(s, set())) for s in cell}
                    assert len(per_cell) == 1


def test_is_common_interpretation():
    m = m_red()
    assert not is_common_interpretation(m)
    shared = m.replace(interpretations={
        1: dict(m.interpretations[1]),
        2: dict(m.interpretations[1]),
    })
    assert is_common_interpretation(shared)


def test_has_identical_priors():
    m = m_red()
    assert not has_identical_priors(m)
    assert has_identical_priors(m.replace(priors=generate_priors(m)))
    lopsided = m.replace(priors={
        1: {"w1": ONE, "w2": Fraction(0)},
        2: {"w1": HALF, "w2": HALF},
    })
    assert not has_identical_priors(lopsided)


# --- serialization ---

def test_json_roundtrip_fixtures():
    for m in (m_red(), m_sig(), m_ai()):
        text = dumps_structure(m)
        again = loads_structure(text)
        assert structure_to_dict(again) == structure_to_dict(m)


def test_json_roundtrip_coarse_atoms():
    m = coarse_atom_structure(p_ext_1=frozenset({"w1", "w2"}))
    again = loads_structure(dumps_structure(m))
    assert structure_to_dict(again) == structure_to_dict(m)
    assert again.beliefs[1][0].atoms == (frozenset({"w1", "w2"}),)


def test_loader_rejects_floats():
    blob = structure_to_dict(m_red())
    text = dumps_structure(m_red()).replace('"1/2"', "0.5")
    assert "0.5" in text
    with pytest.raises(ModelFormatError):
        loads_structure(text)
    # also as a prior value
    blob["priors"] = {"1": {"w1": 0.5, "w2": "1/2"},
                      "2": {"w1": "1/2", "w2": "1/2"}}
    with pytest.raises(ModelFormatError):
        loads_structure(json.dumps(blob))


def test_loader_rejects_bad_json_and_unknown_names():
    with pytest.raises(ModelFormatError):
        loads_structure("{not json")
    blob = structure_to_dict(m_red())
    blob["partitions"]["1"] = [["w1"], ["nope"]]
    with pytest.raises(ModelFormatError):
        loads_structure(json.dumps(blob))


def test_loader_rejects_reserved_prop_names():
    blob = structure_to_dict(m_red())
    blob["props"] = ["B1"]
    blob["interpretations"] = {"1": {"B1": ["w1"]}, "2": {"B1": ["w1"]}}
    with pytest.raises(ModelFormatError):
        loads_structure(json.dumps(blob))


def test_structure_requires_aligned_cells():
    m = m_red()
    with pytest.raises(ModelFormatError):
        m.replace(beliefs={1: m.beliefs[1], 2: ()})
