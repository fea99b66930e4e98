"""Regenerate the committed fixtures under fixtures/.

Each fixture freezes a value the library derives rather than copies:
the twist-conjugated two-parameter matrix, the contracted triangular
matrix, the exploratory probe-twist limit record, the derived relation
table, the solved block inverse, and the convention resolution scores.
Run from the repository root:

    python3 tools/make_fixtures.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from jforge.contraction import contraction_report, probe_divergence, standard_schedule
from jforge.freealg import nc_str
from jforge.grammar import serialize
from jforge.rmat import (
    conjugate,
    four_param_deformed_r3,
    jordanian_r2,
    jordanian_r3,
    twist_2x2,
    twist_3x3,
    twist_probe_3x3,
    two_param_deformed_r2,
)
from jforge.rtt import DerivedAlgebra, resolve_convention

OUT = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def dump(name: str, payload: dict):
    path = os.path.join(OUT, name)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print("wrote", os.path.relpath(path))


def main():
    dump("rq2_conjugated_by_g.json",
         conjugate(two_param_deformed_r2(), twist_2x2()).to_dict())

    schedule = standard_schedule()
    result, report = contraction_report(
        four_param_deformed_r3(), twist_3x3(), schedule, jordanian_r3())
    assert report.passed, report.to_text()
    dump("rj3_contracted.json", result.to_dict())

    records = probe_divergence(four_param_deformed_r3(), twist_probe_3x3(),
                               schedule)
    dump("gprime_probe.json", {"note": "no target asserted",
                               "records": records})

    alg = DerivedAlgebra()
    table = alg.system.to_dict()
    table["convention"] = alg.convention
    dump("relation_table_rj3.json", table)

    assert alg.block_inv is not None
    gens = alg.system.generators
    dump("t_inverse.json", {
        "entries": [[nc_str(e, gens) for e in row] for row in alg.block_inv],
        "record": alg.block_inv_record,
    })

    winner, scores = resolve_convention()
    dump("convention_resolution.json", {"winner": winner, "scores": scores})


if __name__ == "__main__":
    main()
