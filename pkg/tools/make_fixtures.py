"""Regenerate the bundled instance fixtures (src/skewmorita/fixtures/*.json)."""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "skewmorita" / "fixtures"
ZETA3 = {"zeta": 3, "power": 1}


def dihedral10():
    # element c^a t^s has index a + 5 s, so the coset reps of {e, t} are the powers of c
    def idx(a, s):
        return a % 5 + 5 * s

    names = ["e", "c", "c^2", "c^3", "c^4", "t", "c*t", "c^2*t", "c^3*t", "c^4*t"]
    mul = [[idx(a + (-1) ** s * b, s + t & 1) for b, t in [(k % 5, k // 5) for k in range(10)]]
           for a, s in [(k % 5, k // 5) for k in range(10)]]
    action = [[((-1) ** s * i + a) % 5 for i in range(5)] for a, s in [(k % 5, k // 5) for k in range(10)]]
    arrows = sorted({(i, (i + 1) % 5) for i in range(5)} | {(i, (i - 1) % 5) for i in range(5)})
    lab = lambda i, j: f"x{i}{j}"  # noqa: E731
    return {
        "name": "d10",
        "group": {"order": 10, "mul": mul, "names": names},
        "vertex_action": action,
        "arrows": [{"label": lab(i, j), "source": i, "target": j} for i, j in arrows],
        "arrow_action": {
            "c": {lab(i, j): lab((i + 1) % 5, (j + 1) % 5) for i, j in arrows},
            "t": {lab(i, j): [-1, lab(-i % 5, -j % 5)] for i, j in arrows},
        },
        "potential": [
            {"cycle": ["x01", "x12", "x23", "x34", "x40"], "coeff": 1},
            {"cycle": ["x04", "x43", "x32", "x21", "x10"], "coeff": -1},
        ],
    }


def trivial():
    return {
        "name": "trivial",
        "group": {"mul": [[0]], "names": ["e"]},
        "vertex_action": [[0, 1, 2]],
        "arrows": [
            {"label": "a", "source": 0, "target": 1},
            {"label": "d", "source": 0, "target": 1},
            {"label": "b", "source": 1, "target": 2},
            {"label": "c", "source": 2, "target": 0},
            {"label": "l", "source": 1, "target": 1},
        ],
        "arrow_action": {"e": {x: x for x in "adbcl"}},
        "potential": [
            {"cycle": ["a", "b", "c"], "coeff": 1},
            {"cycle": ["d", "b", "c"], "coeff": -1},
            {"cycle": ["l", "l", "l"], "coeff": ["1", "3"]},
        ],
    }


def z2swap():
    return {
        "name": "z2swap",
        "group": {"mul": [[0, 1], [1, 0]], "names": ["e", "s"]},
        "vertex_action": {"s": [1, 0]},
        "arrows": [{"label": "a", "source": 0, "target": 1}, {"label": "b", "source": 1, "target": 0}],
        "arrow_action": {"s": {"a": "b", "b": "a"}},
        "potential": [{"cycle": ["a", "b"], "coeff": 1}],
    }


def z2mixed():
    return {
        "name": "z2mixed",
        "group": {"mul": [[0, 1], [1, 0]], "names": ["e", "s"]},
        "vertex_action": {"s": [1, 0, 2]},
        "arrows": [
            {"label": "a", "source": 0, "target": 1},
            {"label": "b", "source": 1, "target": 0},
            {"label": "c", "source": 0, "target": 2},
            {"label": "d", "source": 1, "target": 2},
            {"label": "e", "source": 2, "target": 0},
            {"label": "f", "source": 2, "target": 1},
            {"label": "l", "source": 2, "target": 2},
        ],
        "arrow_action": {"s": {"a": "b", "b": "a", "c": "d", "d": "c", "e": "f", "f": "e", "l": [-1, "l"]}},
        "potential": [
            {"cycle": ["a", "b"], "coeff": 1},
            {"cycle": ["c", "e"], "coeff": 1},
            {"cycle": ["d", "f"], "coeff": 1},
            {"cycle": ["c", "l", "e"], "coeff": 1},
            {"cycle": ["d", "l", "f"], "coeff": -1},
        ],
    }


def z6():
    return {
        "name": "z6",
        "group": {"mul": [[(a + b) % 6 for b in range(6)] for a in range(6)],
                  "names": ["e", "g", "g^2", "g^3", "g^4", "g^5"]},
        "vertex_action": {"g": [1, 0]},
        "arrows": [
            {"label": "a", "source": 0, "target": 1},
            {"label": "a2", "source": 0, "target": 1},
            {"label": "b", "source": 1, "target": 0},
            {"label": "b2", "source": 1, "target": 0},
            {"label": "l0", "source": 0, "target": 0},
            {"label": "l1", "source": 1, "target": 1},
        ],
        "arrow_action": {"g": {
            "a": "b", "b": [ZETA3, "a"], "a2": "b2", "b2": "a2",
            "l0": "l1", "l1": [{"zeta": 3, "power": 2}, "l0"],
        }},
        "potential": [
            {"cycle": ["a2", "b2"], "coeff": 1},
            {"cycle": ["l0", "l0", "l0"], "coeff": 1},
            {"cycle": ["l1", "l1", "l1"], "coeff": 1},
            {"cycle": ["a", "b", "l0", "l0"], "coeff": 1},
            {"cycle": ["b", "a", "l1", "l1"], "coeff": ZETA3},
        ],
    }


def z3nonmono():
    return {
        "name": "z3nonmono",
        "group": {"mul": [[(a + b) % 3 for b in range(3)] for a in range(3)], "names": ["e", "r", "r^2"]},
        "vertex_action": {"r": [0]},
        "arrows": [{"label": "a", "source": 0, "target": 0}, {"label": "b", "source": 0, "target": 0}],
        "arrow_action": {"r": {"a": "b", "b": [[-1, "a"], [-1, "b"]]}},
        "potential": [{"cycle": ["a", "b"], "coeff": 1}, {"cycle": ["b", "a"], "coeff": -1}],
    }


def s3():
    std = {"r": [[0, -1], [1, -1]], "s": [[0, 1], [1, 0]]}
    return {
        "name": "s3",
        "group": {"generators": {"r": [1, 2, 0], "s": [1, 0, 2]}},
        "vertex_action": {"r": [0], "s": [0]},
        "arrows": [{"label": "a", "source": 0, "target": 0}, {"label": "b", "source": 0, "target": 0}],
        "arrow_action": {"r": {"a": "b", "b": [[-1, "a"], [-1, "b"]]}, "s": {"a": "b", "b": "a"}},
        "irreps": {"0": [
            {"label": "triv", "matrices": {"r": [[1]], "s": [[1]]}},
            {"label": "sign", "matrices": {"r": [[1]], "s": [[-1]]}},
            {"label": "std", "matrices": std},
        ]},
        "potential": [{"cycle": ["a", "b"], "coeff": 1}, {"cycle": ["b", "a"], "coeff": -1}],
    }


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for make in (dihedral10, trivial, z2swap, z2mixed, z6, z3nonmono, s3):
        doc = make()
        (OUT / f"{doc['name']}.json").write_text(json.dumps(doc, indent=1) + "\n")
        print("wrote", doc["name"])
