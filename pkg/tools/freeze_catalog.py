"""Regenerate the built-in catalog files with oracle-computed expected values.

Run from the repository root: ``python3 tools/freeze_catalog.py``.  Expected
values come from ``tests/oracles.py`` (sympy ranks, no package code) or from
closed forms; the package itself is never consulted.
"""

import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402

sys.path.insert(0, str(ROOT / "src"))
from leibniz_homology.catalog import dumps  # noqa: E402  (formatting only)

OUT = ROOT / "src" / "leibniz_homology" / "data"
ORACLE = "sympy rank oracle"


def antisym(pairs):
    out = {}
    for (i, j), vec in pairs.items():
        out[(i, j)] = vec
        out[(j, i)] = {k: str(-Fraction(v)) for k, v in vec.items()}
    return out


SL2 = antisym({(1, 2): {2: "2"}, (1, 3): {3: "-2"}, (2, 3): {1: "1"}})


def shift(brackets, by):
    return {(i + by, j + by): {k + by: v for k, v in vec.items()} for (i, j), vec in brackets.items()}


def unit(n, *ks):
    return ["1" if m + 1 in ks else "0" for m in range(n)]


ENTRIES = []


def entry(name, field, dim, brackets, basis=None, ideals=None, extension=None, description=""):
    ENTRIES.append(dict(name=name, field=field, dim=dim, brackets=brackets, basis=basis,
                        ideals=ideals or {}, extension=extension, description=description))


for n in range(1, 5):
    entry(f"abelian-{n}-q", "Q", n, {}, description=f"abelian algebra of dimension {n}")
for n in range(1, 4):
    entry(f"abelian-{n}-f2", "F2", n, {}, description=f"abelian algebra of dimension {n}")

for fld in ("Q", "F2"):
    entry(f"cyclic-2-{fld.lower()}", fld, 2, {(1, 1): {2: "1"}},
          ideals={"commutator": [unit(2, 2)]}, extension={"ideal": "commutator"},
          description="[e1,e1] = e2; non-split central extension of the line by itself")

entry("solvable-2-q", "Q", 2, {(1, 1): {2: "1"}, (2, 1): {2: "1"}},
      ideals={"commutator": [unit(2, 2)]},
      extension={"ideal": "commutator", "splitting": [["1", "-1"]]},
      description="[e1,e1] = e2, [e2,e1] = e2; split by e1 - e2")
entry("representation-2-q", "Q", 2, {(2, 1): {2: "1"}},
      ideals={"commutator": [unit(2, 2)]},
      extension={"ideal": "commutator", "splitting": [unit(2, 1)]},
      description="[e2,e1] = e2 only; non-Lie, split by e1")
entry("nullfiliform-3-q", "Q", 3, {(1, 1): {2: "1"}, (2, 1): {3: "1"}},
      ideals={"center": [unit(3, 3)]}, extension={"ideal": "center"},
      description="[e_i,e_1] = e_(i+1)")
entry("nullfiliform-4-q", "Q", 4, {(1, 1): {2: "1"}, (2, 1): {3: "1"}, (3, 1): {4: "1"}},
      ideals={"center": [unit(4, 4)]}, extension={"ideal": "center"},
      description="[e_i,e_1] = e_(i+1)")
entry("affine-2-q", "Q", 2, antisym({(1, 2): {2: "1"}}), basis=["x", "y"],
      ideals={"derived": [unit(2, 2)]}, extension={"ideal": "derived", "splitting": [unit(2, 1)]},
      description="non-abelian 2-dimensional Lie algebra [x,y] = y")
for fld in ("Q", "F2"):
    entry(f"heisenberg-3-{fld.lower()}", fld, 3, antisym({(1, 2): {3: "1"}}), basis=["x", "y", "z"],
          ideals={"center": [unit(3, 3)]}, extension={"ideal": "center"},
          description="Heisenberg algebra; central extension by its center")
entry("heisenberg-3-plus-line-q", "Q", 4, antisym({(1, 2): {3: "1"}}), basis=["x", "y", "z", "w"],
      ideals={"heisenberg": [unit(4, 1), unit(4, 2), unit(4, 3)], "center": [unit(4, 3), unit(4, 4)]},
      extension={"ideal": "heisenberg", "splitting": [unit(4, 4)]},
      description="h3 plus a line, split over the line")
entry("heisenberg-5-q", "Q", 5, antisym({(1, 2): {5: "1"}, (3, 4): {5: "1"}}),
      basis=["x1", "y1", "x2", "y2", "z"], ideals={"center": [unit(5, 5)]},
      extension={"ideal": "center"}, description="5-dimensional Heisenberg algebra")
entry("filiform-4-q", "Q", 4, antisym({(1, 2): {3: "1"}, (1, 3): {4: "1"}}),
      ideals={"center": [unit(4, 4)]}, extension={"ideal": "center"},
      description="4-dimensional filiform Lie algebra")
entry("sl2-q", "Q", 3, SL2, basis=["h", "e", "f"], description="simple, perfect")
entry("sl2-plus-sl2-q", "Q", 6, {**SL2, **shift(SL2, 3)}, basis=["h1", "e1", "f1", "h2", "e2", "f2"],
      ideals={"first": [unit(6, 1), unit(6, 2), unit(6, 3)]},
      extension={"ideal": "first", "splitting": [unit(6, 4), unit(6, 5), unit(6, 6)]},
      description="perfect; split over the second summand")
entry("cyclic-plus-sl2-q", "Q", 5, {(1, 1): {2: "1"}, **shift(SL2, 2)},
      basis=["a", "b", "h", "e", "f"],
      ideals={"sl2": [unit(5, 3), unit(5, 4), unit(5, 5)]},
      extension={"ideal": "sl2", "splitting": [unit(5, 1), unit(5, 2)]},
      description="non-Lie, neither nilpotent nor perfect")


def zero_based(brackets):
    return {(i - 1, j - 1): {k - 1: v for k, v in vec.items()} for (i, j), vec in brackets.items()}


def expected(e):
    n, p = e["dim"], 0 if e["field"] == "Q" else int(e["field"][1:])
    br = zero_based(e["brackets"])
    hl = oracles.loday_homology_dims(n, br, 3, p)
    nab = n - oracles.commutator_dim(n, br, p)
    out = {
        "HL1": {"value": hl[1], "source": ORACLE},
        "HL2": {"value": hl[2], "source": ORACLE},
        "HL3": {"value": hl[3], "source": ORACLE},
        "tensor_square": {"value": oracles.tensor_square_dim(n, br, p), "source": ORACLE},
        "exterior_square": {"value": oracles.exterior_square_dim(n, br, p), "source": ORACLE},
        "gamma_abelianization": {"value": nab * (nab + 1) // 2, "source": "closed form r(r+1)/2"},
    }
    if not br:
        out["lie_exterior_square"] = {"value": n * (n - 1) // 2, "source": "closed form n(n-1)/2"}
    return out


def document(e):
    doc = {"schema": "leibniz-algebra/1", "name": e["name"]}
    if e["description"]:
        doc["description"] = e["description"]
    doc["field"] = e["field"]
    doc["dim"] = e["dim"]
    doc["basis"] = e["basis"] or [f"e{k + 1}" for k in range(e["dim"])]
    doc["brackets"] = [{"i": i, "j": j, "coeffs": [[k, v] for k, v in sorted(vec.items())]}
                       for (i, j), vec in sorted(e["brackets"].items())]
    if e["ideals"]:
        doc["ideals"] = e["ideals"]
    if e["extension"]:
        doc["extension"] = e["extension"]
    doc["expected"] = expected(e)
    return doc


def main():
    for old in OUT.glob("*.json"):
        old.unlink()
    for pos, e in enumerate(ENTRIES):
        path = OUT / f"{pos:02d}-{e['name']}.json"
        path.write_text(dumps(document(e)), encoding="utf-8")
        print(path.name)


if __name__ == "__main__":
    main()
