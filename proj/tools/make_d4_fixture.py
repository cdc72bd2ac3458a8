"""Write the D4 quartic field fixture used by the datastore tests.

Every D4 quartic field with |disc| <= BOUND, one JSON object per line in the
remote record schema. Class groups come from PARI's bnfinit (GRH-conditional).
Needs cypari2 with PARI >= 2.15 (for nflist).

    python3 tools/make_d4_fixture.py 50000 > tests/fixtures/d4_quartic_50000.jsonl
"""

import json
import sys

import cypari2

pari = cypari2.Pari()
pari.allocatemem(1 << 30, silent=True)


INFO = pari("""(pol) -> my(nf = nfinit(pol), bnf = bnfinit(pol));
    [nf.disc, nf.sign, bnf.cyc, apply(s -> nfdisc(s[1]), nfsubfields(pol, 2))]""")


def records(bound):
    out = []
    for pol in pari.nflist(pari("[4,3]"), [1, bound]):
        pol = pari.polredabs(pol)
        disc, sign, cyc, quad = INFO(pol)
        disc = int(disc)
        out.append({
            "disc_abs": abs(disc),
            "disc_sign": 1 if disc > 0 else -1,
            "degree": 4,
            "r2": int(sign[1]),
            "r1": int(sign[0]),
            "galois_label": "4T3",
            "class_group": [int(c) for c in cyc],
            "subfield_discs": sorted(int(q) for q in quad),
            "coeffs": [int(c) for c in pari.Vecrev(pol)],
        })
    out.sort(key=lambda r: (r["r1"], r["disc_abs"], r["coeffs"]))
    index = {}
    for r in out:
        key = (r["r1"], r["disc_abs"])
        index[key] = index.get(key, 0) + 1
        r["label"] = "4.%d.%d.%d" % (r["r1"], r["disc_abs"], index[key])
    out.sort(key=lambda r: (r["disc_abs"], r["label"]))
    return out


def main():
    bound = int(sys.argv[1]) if len(sys.argv) > 1 else 50000
    for r in records(bound):
        print(json.dumps(r, separators=(",", ":")))


if __name__ == "__main__":
    main()
