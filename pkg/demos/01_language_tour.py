"""Tour of the formula language: parsing, printing, abbreviations.

Run with:  python3 demos/01_language_tour.py
"""

from ambilogic import expand, is_propositional, parse, print_formula, subformulas

texts = [
    "p",
    "!p & (q | r)",
    "2/3*Pr1(p) + 1/3*Pr1(q) >= 1/2",
    "Pr2(p) = 1/2",
    "B1 p",
    "E{1,2}^2 p",
    "CB{1,2}(B1 p & B2 !p)",
    "p@1 <-> p@2",
]

print("== parse and print round-trips ==")
for text in texts:
    f = parse(text)
    printed = print_formula(f)
    assert parse(printed) == f
    print("%-40s -> %s" % (text, printed))

print()
print("== abbreviation expansion ==")
for text in ["B2 p", "E{1,2} p", "Pr1(p) > 1/2", "true"]:
    core = expand(parse(text), tautology_prop="p")
    print("%-16s -> %s" % (text, print_formula(core)))

print()
print("== syntactic predicates ==")
for text in ["!(p & q)", "Pr1(p) >= 1", "p@2"]:
    print("%-16s propositional: %s" % (text, is_propositional(parse(text))))

print()
print("== distinct subformulas of CB{1,2}(B1 p & B2 !p), post-order ==")
for g in subformulas(parse("CB{1,2}(B1 p & B2 !p)")):
    print("  ", print_formula(g))
