#!/usr/bin/env python3
"""Dense reference computation of reduced cobar Ext for the sample presentations.

Independent of the C++ code: builds Omega^i = (C_+)^{(x) i} explicitly with
Fractions, restricts to each internal weight, and takes ranks by plain Gaussian
elimination. Prints expected tables as JSON; tests/test_cli compares the CLI
against samples/expected.json, which this script regenerates:

    python3 samples/oracle.py > samples/expected.json
"""

import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

HERE = Path(__file__).resolve().parent


class Field:
    def __init__(self, spec):
        self.p = None
        if isinstance(spec, dict):
            self.p = spec["prime"]
        elif spec.startswith("GF("):
            self.p = int(spec[3:-1])

    def norm(self, x):
        x = Fraction(x)
        if self.p is None:
            return x
        return Fraction(x.numerator * pow(x.denominator, -1, self.p) % self.p)

    def inv(self, x):
        return 1 / x if self.p is None else Fraction(pow(int(x), -1, self.p))


def scalar(f, s):
    return f.norm(Fraction(s) if isinstance(s, str) else s)


def rank(f, rows):
    rows = [list(r) for r in rows if any(r)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        iv = f.inv(rows[r][c])
        rows[r] = [f.norm(x * iv) for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                m = rows[k][c]
                rows[k] = [f.norm(a - m * b) for a, b in zip(rows[k], rows[r])]
        r += 1
    return r


def monomials(m, j):
    if m == 1:
        return [(j,)]
    return [(a,) + rest for a in range(j, -1, -1) for rest in monomials(m - 1, j - a)]


def words(m, j):
    return list(itertools.product(range(m), repeat=j))


def graded_to_finite(doc):
    """Basis, weights and comultiplication of a graded construction or explicit components."""
    f = Field(doc["field"])
    D = doc["bound"]
    if "construction" in doc:
        c = doc["construction"]
        m = c["m"]
        if c["type"] == "tensor":
            basis = [(j, w) for j in range(D + 1) for w in words(m, j)]
            index = {b: i for i, b in enumerate(basis)}
            comul = [[(index[(p, w[:p])], index[(len(w) - p, w[p:])], Fraction(1)) for p in range(len(w) + 1)]
                     for (_, w) in basis]
            return f, [j for j, _ in basis], comul
        if c["type"] == "symmetric":
            # dual of the polynomial ring: x^a -> sum over a = b + c of x^b (x) x^c
            basis = [(j, a) for j in range(D + 1) for a in monomials(m, j)]
            index = {b: i for i, b in enumerate(basis)}
            comul = []
            for (j, a) in basis:
                terms = []
                for b in itertools.product(*[range(x + 1) for x in a]):
                    cc = tuple(x - y for x, y in zip(a, b))
                    terms.append((index[(sum(b), b)], index[(sum(cc), cc)], Fraction(1)))
                comul.append(terms)
            return f, [j for j, _ in basis], comul
        if c["type"] == "quadratic_dual":
            return quadratic_dual(f, m, c["relations"], D)
        raise SystemExit("unknown construction")
    dims = doc["dims"]
    offs = [sum(dims[:j]) for j in range(D + 1)]
    n = sum(dims)
    comul = [[] for _ in range(n)]
    for comp in doc["components"]:
        j, p, q = comp["j"], comp["p"], comp["q"]
        for r, row in enumerate(comp["matrix"]):
            a, b = divmod(r, dims[q])
            for t, x in enumerate(row):
                x = scalar(f, x)
                if x:
                    comul[offs[j] + t].append((offs[p] + a, offs[q] + b, x))
    weights = [j for j in range(D + 1) for _ in range(dims[j])]
    return f, weights, comul


def quadratic_dual(f, m, relations, D):
    """Subcoalgebra of Ten(V) annihilated by the ideal (R): in degree j, the
    tensors w with <u r v, w> = 0 for every relation r and words u, v."""
    basis_by_deg = []
    for j in range(D + 1):
        ws = words(m, j)
        idx = {w: i for i, w in enumerate(ws)}
        cons = []
        for r in relations:
            for s in range(j - 1):
                for u in words(m, s):
                    for v in words(m, j - 2 - s):
                        row = [Fraction(0)] * len(ws)
                        for k, x in enumerate(r):
                            if x:
                                row[idx[u + divmod(k, m) + v]] += scalar(f, x)
                        cons.append(row)
        vecs, free = nullspace(f, cons, len(ws))
        basis_by_deg.append((ws, vecs, free))
    # comultiplication by deconcatenation, re-expressed in the chosen bases
    basis, weights = [], []
    for j, (ws, vecs, _) in enumerate(basis_by_deg):
        for v in vecs:
            basis.append((j, v))
            weights.append(j)
    offs, o = [], 0
    for ws, vecs, _ in basis_by_deg:
        offs.append(o)
        o += len(vecs)
    comul = []
    for j, v in basis:
        ws = basis_by_deg[j][0]
        terms = []
        for p in range(j + 1):
            q = j - p
            wp, bp, fp = basis_by_deg[p]
            wq, bq, fq = basis_by_deg[q]
            # the split tensor lies in bp (x) bq; read coordinates at free positions
            tensor = {}
            for k, w in enumerate(ws):
                if v[k]:
                    tensor[(w[:p], w[p:])] = v[k]
            for a in range(len(bp)):
                for b in range(len(bq)):
                    coeff = tensor.get((wp[fp[a]], wq[fq[b]]), Fraction(0))
                    if coeff:
                        terms.append((offs[p] + a, offs[q] + b, coeff))
        comul.append(terms)
    return f, weights, comul


def nullspace(f, rows, n):
    rows = [list(r) for r in rows]
    pivots, r = [], 0
    for c in range(n):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        iv = f.inv(rows[r][c])
        rows[r] = [f.norm(x * iv) for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                m = rows[k][c]
                rows[k] = [f.norm(a - m * b) for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    out = []
    # basis vector k is 1 at free[k] and 0 at the other free columns
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = f.norm(-rows[i][fc])
        out.append(v)
    return out, free


def load_finite(doc):
    f = Field(doc["field"])
    comul = [[(l, r, scalar(f, x)) for l, r, x in terms] for terms in doc["comul"]]
    return f, doc.get("grading", [0] * doc["dim"]), comul, doc["grouplike"]


def cobar_ext(f, weights, comul, g, imax, jmax):
    n = len(weights)
    red = [i for i in range(n) if i != g]
    table = {}
    # reduced comultiplication on C_+: drop terms touching g
    dbar = {t: [(l, r, x) for l, r, x in comul[t] if l != g and r != g] for t in red}

    def cells(i, j):
        return [w for w in itertools.product(red, repeat=i) if sum(weights[t] for t in w) == j]

    def diff(i, j):
        src, tgt = cells(i, j), cells(i + 1, j)
        ti = {w: k for k, w in enumerate(tgt)}
        rows = [[Fraction(0)] * len(src) for _ in tgt]
        for c, w in enumerate(src):
            for s in range(i):
                sign = -1 if s % 2 else 1
                for l, r, x in dbar[w[s]]:
                    nw = w[:s] + (l, r) + w[s + 1:]
                    rows[ti[nw]][c] = f.norm(rows[ti[nw]][c] + sign * x)
        return rows, len(src), len(tgt)

    for i in range(imax + 1):
        for j in range(jmax + 1):
            dim = len(cells(i, j))
            if dim == 0:
                continue
            out, _, _ = diff(i, j)
            rin = rank(f, diff(i - 1, j)[0]) if i > 0 else 0
            d = dim - rank(f, out) - rin
            if d:
                table[f"{i},{j}"] = d
    return table


def main():
    cases = [
        ("c2.json", 5, 5),
        ("c3.json", 5, 7),
        ("c3_gf5.json", 4, 6),
        ("square_zero.json", 3, 3),
        ("sym2_d4.json", 3, 4),
        ("ten2_d2.json", 4, 2),
        ("quad_xy_dual_d4.json", 3, 4),
    ]
    out = {}
    for name, imax, jmax in cases:
        doc = json.loads((HERE / name).read_text())
        if doc["kind"] == "finite":
            f, weights, comul, g = load_finite(doc)
        else:
            f, weights, comul = graded_to_finite(doc)
            g = 0
        out[name] = {"imax": imax, "jmax": jmax, "entries": cobar_ext(f, weights, comul, g, imax, jmax)}
    json.dump(out, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
