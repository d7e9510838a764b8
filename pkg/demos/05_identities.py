"""The combinatorial identities behind nonsingularity.

Exhaustive exact checks of the Stirling generating function, the
rearrangement lemma, the δ_{nr} evaluation and the signed couple sum.  The
sign-reversing pairing of couples is run as written; it breaks whenever the
last part of b is 1, which the last lines show.
"""
from powerproduct.identities import (
    involution,
    Couple,
    sweep_couples,
    sweep_delta,
    sweep_gf,
    sweep_involution,
    sweep_rearrangement,
)

for rep in (sweep_gf(8, 12), sweep_rearrangement(7), sweep_delta(7), sweep_couples(5)):
    print(f"{rep.identity:<14} passed={rep.passed}  cases={rep.checked}")

rep = sweep_involution(5)
print(f"{rep.identity:<14} passed={rep.passed}  cases={rep.checked}")
for note in rep.notes[:3]:
    print("   ", note)

x = Couple(3, (2, 1), frozenset({1, 2}), (1, 1, 2))
y = involution(x)
print(f"\n{sorted(x.S)}, {x.theta} -> {sorted(y.S)}, {y.theta}; image valid: {y.is_valid()}")
