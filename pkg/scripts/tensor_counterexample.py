#!/usr/bin/env python3
"""Why the Cartesian product cannot carry the interleaving structure.

Builds the tensor of two copies of the walking-arrow 2-category, shows the
two interleavings of a pair of 1-cells are distinct normal-form words, and
that their images in the Cartesian product collapse to the same pair.  Then
reruns the same comparison through the CLI on a generated document.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from dblkit import zoo
from dblkit.graytensor import (
    Letter,
    compare_interleavings,
    two_category_tensor_context,
)

DOC = """
twocategory Arrow {
  objects P Q
  onecell a : P -> Q
}

tensor AA {
  left Arrow
  right Arrow
  cap 4
}
"""


def main() -> int:
    a = zoo.walking_arrow_two_category()
    ctx = two_category_tensor_context(a, a)
    w1 = ctx.normalize((0, 0), (Letter("L", 2), Letter("R", 2)))
    w2 = ctx.normalize((0, 0), (Letter("R", 2), Letter("L", 2)))
    print("first interleaving: ", ctx.describe(w1))
    print("second interleaving:", ctx.describe(w2))
    tensor, cartesian = compare_interleavings(a, a, 2, 2)
    print(f"tensor verdict:     {tensor}")
    print(f"cartesian verdict:  {cartesian}")

    with tempfile.TemporaryDirectory() as tmp:
        doc = Path(tmp) / "demo.dbl"
        doc.write_text(DOC)
        for extra in ([], ["--cartesian"]):
            cmd = [
                sys.executable,
                "-m",
                "dblkit.cli",
                "compare",
                str(doc),
                "AA",
                "--start",
                "P,P",
                *extra,
                "L:a R:a",
                "R:a L:a",
            ]
            proc = subprocess.run(cmd, capture_output=True, text=True)
            mode = "cartesian" if extra else "tensor"
            print(f"cli ({mode}): {proc.stdout.strip()} [exit {proc.returncode}]")
    return 0 if (tensor, cartesian) == ("distinct", "equal") else 1


if __name__ == "__main__":
    sys.exit(main())
