"""Write one trace file per subcommand into a directory, for the determinism check."""

import sys
from pathlib import Path

from turingcat.cli import main

STREAM = "# toy\n+ 0 = 0\n- 1 = 0\n+ forall m. m = m\ntail:\n+ 1 + 1 = 2\n- 0 = 0\n"
PROGRAM = "Lloop: DECJZ 0 Ldone\nINC 1\nINC 1\nJMP Lloop\nLdone: HALT 1\n"


def drive(out: Path, seed: int) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / "toy.stream").write_text(STREAM)
    (out / "double.rm").write_text(PROGRAM)
    (out / "axioms.txt").write_text("a\na -> b\nb -> c\n")
    s, common = str(out / "toy.stream"), ["--seed", str(seed)]
    runs = {
        "run": ["run", "--program", str(out / "double.rm"), "--input", "21"],
        "encode": ["encode", "--encoding", "pair(list(nat),sum(nat,pm))", "--sample", "50"],
        "stabilize": ["stabilize", "--stream", s, "--horizon", "60"],
        "dio": ["dio", "--poly", "x^2 + 1", "--poly", "x - 3", "--horizon", "200", "--every"],
        "closure": ["closure", "--axioms", str(out / "axioms.txt"), "--steps", "60"],
        "spec": ["spec", "--enumerator", s, "--horizon", "60"],
        "goedel": ["goedel", "--enumerator", s, "--emit", "certificate"],
        "eval": ["eval", "--sentence", "forall x < 7. exists y < 15. y = x + x"],
    }
    for name, argv in runs.items():
        code = main(argv + common + ["--output", str(out / f"{name}.tsv")])
        (out / f"{name}.exit").write_text(f"{code}\n")


if __name__ == "__main__":
    drive(Path(sys.argv[1]), int(sys.argv[2]))
