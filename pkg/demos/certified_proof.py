"""Search for an equivalence and replay its certificate.

    python3 demos/certified_proof.py
"""

from threepage.rewrite.prover import Budget, RuleSet, parse_certificate, prove_equivalent, replay
from threepage.rewrite.suites import lemma3_targets
from threepage.rewrite.tactics import LocalProofs, prove_by_plan
from threepage.words import Alphabet, parse_word

r = prove_equivalent(parse_word("b0 d0"), parse_word(""), Budget(4, 10000))
print(r)
text = r.certificate.to_text()
print(text)
# the text form is enough to check the proof again
print("replays:", replay(parse_word("b0 d0"), parse_certificate(text)) == parse_word(""))

# a commutation target proved from the normal form of the moved word
t = next(t for t in lemma3_targets(3) if t.name == "11" and dict(t.params)["l"] == 2)
lp = LocalProofs(RuleSet(Alphabet((3,)), t.mode), t.mode)
v = prove_by_plan(t.u, t.v, t.plan, lp)
print(t.label, "->", type(v).__name__, len(v.certificate), "base moves, replays:",
      v.certificate.check())
