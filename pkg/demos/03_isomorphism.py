"""Deciding R ≅ R' from a spec file.

Loads demos/specs/iso.spec and demos/specs/negative.spec, runs the staged
pipeline and prints the verdict together with its certificate.
"""

import pathlib

from gradedpi import parse_spec, pipeline, same_identities_upto

here = pathlib.Path(__file__).parent / "specs"

sf = parse_spec((here / "iso.spec").read_text())
m1, m2 = sf.model("R1"), sf.model("R2")
v = pipeline(m1, m2, 2)
print("R1 vs R2:", v.final)
print("  coarse models:", v.stages["coarse_specs"])
w = v.witness
print(f"  witness: shift {w.shift.coords}, corrections {[h.coords for h in w.corrections]}, sigma {w.permutation}")
print("  re-verified:", w.verify(m1.spec, m2.spec, m1.division.support()))

neg = parse_spec((here / "negative.spec").read_text())
v = pipeline(neg.model("P"), neg.model("Q"), 2)
print("\nP vs Q:", v.final)
print("  reason:", v.invariant["reason"], "at signature", v.invariant["signature"])
cmp = same_identities_upto(neg.algebra("P"), neg.algebra("Q"), 2)
print("  kernel dimensions there:", cmp.to_json()["kernel_dimensions"])
