"""The same questions through the command-line front end.

Equivalent shell session:

    gradedpi capelli-rank demos/specs/capelli.spec M
    gradedpi support demos/specs/support.spec R
    gradedpi iso demos/specs/iso.spec R1 R2 --json
"""

import io
import json
import pathlib

from gradedpi.cli import run

specs = pathlib.Path(__file__).parent / "specs"

for argv in (
    ["capelli-rank", specs / "capelli.spec", "M"],
    ["support", specs / "support.spec", "R"],
    ["id-compare", specs / "support.spec", "Rq", "Uq", "--max-degree", "2"],
):
    out = io.StringIO()
    code = run([str(a) for a in argv], stdout=out)
    print("$ gradedpi", " ".join(str(a).replace(str(specs.parent.parent) + "/", "") for a in argv), f"   (exit {code})")
    print(out.getvalue())

out = io.StringIO()
run(["iso", str(specs / "iso.spec"), "R1", "R2", "--json"], stdout=out)
print("JSON witness:", json.loads(out.getvalue())["result"]["witness"])
