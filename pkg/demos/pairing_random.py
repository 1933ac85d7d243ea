"""Time-sharing over terminal pairs on random connected networks."""

import sys
import time

from sumnet import catalog
from sumnet.capacity import report
from sumnet.codec import verify_linear
from sumnet.schemes import scheme_pairing

seeds = range(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
for m, n in ((4, 4), (5, 4), (5, 5), (3, 6)):
    for seed in seeds:
        net = catalog.random_connected(m, n, seed)
        start = time.perf_counter()
        code = scheme_pairing(net, "gf2", seed=seed)
        secs = time.perf_counter() - start
        rep = report(net)
        print(f"{net.name:>20}  ({code.k},{code.l})  rate {str(code.rate):>4}  "
              f"bounds [{rep.lower}, {rep.upper}]  verified {verify_linear(net, code)}  "
              f"{secs:.2f}s")
