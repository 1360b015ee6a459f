"""
Running the relation suite
==========================

Leibniz, niceness, the perversity bounds, Cartan and the Adem relations,
checked on every complex of the built-in corpus.  Same report as
``perverse-squares verify``.
"""

import time

from perverse_squares.corpus import corpus
from perverse_squares.relations import format_report, verify_complex

start = time.perf_counter()
results = []
for name, k in corpus():
    results += verify_complex(name, k, seed=0, pairs=50)
print(format_report(results))
print(f"{time.perf_counter() - start:.1f}s")
