"""The five-phase pipeline end to end, on both verdict sides.

The UNSAT side uses a 2-coloring instance for 3-term arithmetic
progressions over 1..9 (small enough to brute force, structurally like
the flagship problem) and validates the merged proof against the
original formula.  The SAT side runs the Pythagorean encoding at
n = 1000 and checks the resulting partition.
"""

from triplesat import pipeline
from triplesat.cnf import Formula
from triplesat.encoder import check_partition


def ap3(n):
    clauses = []
    for d in range(1, n):
        for a in range(1, n + 1 - 2 * d):
            progression = (a, a + d, a + 2 * d)
            clauses.append(progression)
            clauses.append(tuple(-x for x in progression))
    return Formula(clauses, n)


print("-- UNSAT: no 2-coloring of 1..9 avoids monochromatic 3-term APs")
result = pipeline.run(pipeline.PipelineConfig(formula=ap3(9), cutoff="depth:3"))
print("verdict: %s over %d cubes" % (result.verdict, len(result.report.cube_stats)))
print("merged proof: %d lines, checker accepted: %s"
      % (len(result.proof), bool(result.check)))

print()
print("-- SAT: triple-free partition of 1..1000")
result = pipeline.run(pipeline.PipelineConfig(n=1000, cutoff="depth:4"))
model = dict(result.model)
for var in range(1, 1001):
    model.setdefault(var, False)
print("verdict: %s, partition valid: %s"
      % (result.verdict, check_partition(1000, model) is None))
for phase, seconds in result.report.phase_times.items():
    print("  %-10s %7.2fs" % (phase, seconds))

print()
print("per-cube statistics (first rows):")
print("\n".join(pipeline.per_cube_csv(result.report).splitlines()[:5]))
