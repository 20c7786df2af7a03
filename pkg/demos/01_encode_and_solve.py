"""Encode a small Pythagorean-triple instance and solve it directly.

Every n up to 7824 admits a triple-free 2-partition, so the solver
should report SAT and the partition checker should find no
monochromatic triple.
"""

from triplesat import cdcl
from triplesat.encoder import check_partition, encode, enumerate_triples

n = 200

triples = enumerate_triples(n)
print("range 1..%d contains %d Pythagorean triples" % (n, len(triples)))
print("first few:", triples[:5])

formula = encode(n)
print("encoding: %d clauses over %d declared variables"
      % (len(formula.clauses), formula.num_vars))

result = cdcl.solve(formula)
print("verdict: %s after %d conflicts / %d decisions"
      % (result.verdict, result.conflicts, result.decisions))

model = dict(result.model)
for var in range(1, n + 1):
    model.setdefault(var, False)
violation = check_partition(n, model)
print("partition check:", "valid" if violation is None else violation)

positive = sorted(v for v in range(1, n + 1) if model[v])
print("positive part has %d of %d integers" % (len(positive), n))
