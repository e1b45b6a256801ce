"""Compare the closed-form, connector and third-rank-oracle routes for the
drilling and bending densities over the corpus, and sweep the oracle's
finite-difference step.

    python3 scripts/route_agreement_sweep.py --probes 20
"""

import argparse

import numpy as np

from neutral_modes.corpus import entries
from neutral_modes.energetics import bending_density, drilling_density, third_rank_oracle
from neutral_modes.verification import pair_probes

STEPS = (1e-3, 1e-4, 1e-5, 1e-6)


def rel(a, b):
    return abs(a - b) / (abs(b) + 1e-4)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--probes", type=int, default=20)
    args = p.parse_args(argv)
    print(f"{'pair':22s} {'connector':>10s} " + " ".join(f"{'h=' + format(s, '.0e'):>10s}" for s in STEPS))
    for e in entries():
        d = e.build()
        conn, orc = 0.0, np.zeros(len(STEPS))
        for w in pair_probes(d, args.probes):
            wd, wb = drilling_density(d, w), bending_density(d, w)
            conn = max(conn, rel(drilling_density(d, w, "connector"), wd),
                       rel(bending_density(d, w, "connector"), wb))
            for k, s in enumerate(STEPS):
                o = third_rank_oracle(d, w, step=s)
                orc[k] = max(orc[k], rel(o.w_d, wd), rel(o.w_b, wb))
        print(f"{e.name:22s} {conn:10.2e} " + " ".join(f"{x:10.2e}" for x in orc))


if __name__ == "__main__":
    main()
