"""Regenerate src/rankecp/data/moduli.json.

Each entry is the monic primitive polynomial with the smallest encoding
(see rankecp.fields.first_primitive_polynomial). Keys are
``<field label>/<degree>``; a label is the prime for a prime field and
``<base label>[<modulus coeffs>]`` for an extension.
"""
import json
import sys
from pathlib import Path

from rankecp.fields import PrimeField, ExtensionField, first_primitive_polynomial, _field_label

LIMIT = 1 << 16


def main(out: Path):
    table = {}

    def add(F, d):
        f = first_primitive_polynomial(F, d)
        table[f"{_field_label(F)}/{d}"] = list(f)
        return f

    bases = {}
    for p in (2, 3, 5, 7, 11, 13):
        P = PrimeField(p)
        bases[p] = P
        e = 2
        while p ** e <= 16:
            bases[p ** e] = ExtensionField(P, add(P, e))
            e += 1
    for q, F in sorted(bases.items()):
        m = 2
        while q ** m <= LIMIT:
            f = add(F, m)
            if q ** (2 * m) <= LIMIT:
                E = ExtensionField(F, f)
                s = 2
                while q ** (m * s) <= LIMIT:
                    add(E, s)
                    s += 1
            m += 1
    out.write_text(json.dumps({"rule": "first_primitive", "moduli": table}, indent=1, sort_keys=True) + "\n")
    print(f"{len(table)} entries -> {out}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("src/rankecp/data/moduli.json"))
