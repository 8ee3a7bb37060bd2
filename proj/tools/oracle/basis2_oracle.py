#!/usr/bin/env python3
"""Oracle for the theta/z/a/b PBW basis via the recursive module action.

States are (m, n, d, p) with d in {0,1}; the module action of the letters
t(heta), x, y, z is implemented exactly as in the inductive construction,
with the (x+y) straightening corrected per the basis1 oracle resolution.

Every frozen vector is cross-checked against the independent basis1 route:
the word is multiplied out in the first basis through the change of
variables, and the basis2 normal form is expanded back into the first
basis; both must agree identically as rational functions of q.
"""

import json
import random
import sys
from pathlib import Path

import sympy as sp

sys.path.insert(0, str(Path(__file__).resolve().parent))
from basis1_oracle import (  # noqa: E402
    ONE, add, cov_elems, equal, esum, laurent_dict, mul, q, scale,
)

Elem2 = dict  # (m, n, d, p) -> sympy expr

TWO_Q = q + 1 / q  # [2]_q
BRACE2 = q**2 + q**-2  # {2}_q
D = q - 1 / q


def add2(dst, mono, coeff):
    c = dst.get(mono, sp.Integer(0)) + coeff
    c = sp.cancel(c)
    if c == 0:
        dst.pop(mono, None)
    else:
        dst[mono] = c


def scale2(e, c):
    out = {}
    for m, v in e.items():
        add2(out, m, c * v)
    return out


def esum2(*es):
    out = {}
    for e in es:
        for m, v in e.items():
            add2(out, m, v)
    return out


def act_mono(letter, mono) -> Elem2:
    m, n, d, p = mono
    if letter == "t":
        return {(m + 1, n, d, p): sp.Integer(1)}
    if m > 0:
        rest = (m - 1, n, d, p)
        if letter == "z":
            return esum2(
                act("t", act_mono("z", rest)),
                act_mono("x", rest),
                scale2(act_mono("y", rest), -1),
            )
        if letter == "x":
            return esum2(
                scale2(act("t", act_mono("x", rest)), q**-2),
                scale2(act_mono("z", rest), TWO_Q / q),
                {mono: -1 / q},
            )
        if letter == "y":
            return esum2(
                scale2(act("t", act_mono("y", rest)), q**2),
                scale2(act_mono("z", rest), -q * TWO_Q),
                {mono: q},
            )
    if letter == "z":
        return {(0, n + 1, d, p): sp.Integer(1)}
    if n > 0:
        rest = (0, n - 1, d, p)
        if letter == "x":
            return esum2(
                scale2(act("z", act_mono("x", rest)), q**2),
                scale2(act_mono("z", rest), q),
            )
        if letter == "y":
            return esum2(
                scale2(act("z", act_mono("y", rest)), q**-2),
                scale2(act_mono("z", rest), -1 / q),
            )
    if d == 0:
        if letter == "x":
            return {(0, 0, 0, p + 1): D / 2, (0, 0, 1, p): -sp.Rational(1, 2)}
        if letter == "y":
            return {(0, 0, 0, p + 1): D / 2, (0, 0, 1, p): sp.Rational(1, 2)}
    # d == 1, m == n == 0: split through the sum/difference straightenings
    # (x+y) a b^p = (q-q^-1) a b^(p+1) - 2(q^2-q^-2) z^2 b^p   [corrected]
    # (y-x) a b^p = (q-q^-1)^2 b^(p+2) + 4 b^(p+1) + 2{2}_q z^2 b^p
    s: Elem2 = {(0, 0, 1, p + 1): D, (0, 2, 0, p): -2 * (q**2 - q**-2)}
    a: Elem2 = {
        (0, 0, 0, p + 2): D**2,
        (0, 0, 0, p + 1): sp.Integer(4),
        (0, 2, 0, p): 2 * BRACE2,
    }
    if letter == "x":
        return esum2(scale2(s, sp.Rational(1, 2)), scale2(a, -sp.Rational(1, 2)))
    if letter == "y":
        return esum2(scale2(s, sp.Rational(1, 2)), scale2(a, sp.Rational(1, 2)))
    raise ValueError(letter)


def act(letter, e: Elem2) -> Elem2:
    out = {}
    for mono, coeff in e.items():
        for m2, c2 in act_mono(letter, mono).items():
            add2(out, m2, coeff * c2)
    return out


def act_a(e: Elem2) -> Elem2:
    return esum2(act("y", e), scale2(act("x", e), -1))


def act_b(e: Elem2) -> Elem2:
    return esum2(
        scale2(act("x", act("y", e)), -1),
        scale2(act("z", act("z", e)), -(q**2)),
    )


V0: Elem2 = {(0, 0, 0, 0): sp.Integer(1)}


def word_elem2(word: str) -> Elem2:
    e = V0
    for letter in reversed(word):
        e = act(letter, e)
    return e


def act_basis2_mono(mono, e: Elem2) -> Elem2:
    """Apply theta^m z^n a^d b^p as operators to an element."""
    m, n, d, p = mono
    for _ in range(p):
        e = act_b(e)
    for _ in range(d):
        e = act_a(e)
    for _ in range(n):
        e = act("z", e)
    for _ in range(m):
        e = act("t", e)
    return e


def basis2_mono_in_basis1(mono, x, y, z, a, b):
    m, n, d, p = mono
    e = ONE
    for _ in range(p):
        e = mul(b, e)
    for _ in range(d):
        e = mul(a, e)
    for _ in range(n):
        e = mul(z, e)
    th = {(1, 0, 0): sp.Integer(1)}
    for _ in range(m):
        e = mul(th, e)
    return e


def elem2_in_basis1(e2: Elem2, x, y, z, a, b):
    out = {}
    for mono, c in e2.items():
        for m1, c1 in basis2_mono_in_basis1(mono, x, y, z, a, b).items():
            add(out, m1, c * c1)
    return out


def word_in_basis1(word, x, y, z, a, b):
    table = {"x": x, "y": y, "z": z, "t": {(1, 0, 0): sp.Integer(1)}}
    e = ONE
    for letter in reversed(word):
        e = mul(table[letter], e)
    return e


def check_mndp(x, y, z, a, b) -> None:
    monos = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
             (2, 1, 1, 1), (1, 2, 0, 2), (0, 3, 1, 0), (3, 0, 0, 1), (1, 1, 1, 2)]
    for mono in monos:
        got = act_basis2_mono(mono, V0)
        assert list(got.keys()) == [mono] and sp.cancel(got[mono] - 1) == 0, mono
    print("mndp property verified on sample monomials")


def main() -> None:
    x, y, z, a, b = cov_elems()
    check_mndp(x, y, z, a, b)

    rng = random.Random(424242)
    words = ["x", "y", "z", "t", "xy", "yx", "xz", "zx", "yz", "zy", "xt", "yt",
             "zt", "xx", "yy", "xxy", "xyzt", "tzyx", "xxyy", "ttxy"]
    while len(words) < 45:
        w = "".join(rng.choice("txyz") for _ in range(rng.randint(3, 7)))
        if w not in words:
            words.append(w)

    frozen_words = []
    for w in words:
        nf2 = word_elem2(w)
        # cross-check against the independent basis1 route
        lhs = word_in_basis1(w, x, y, z, a, b)
        rhs = elem2_in_basis1(nf2, x, y, z, a, b)
        assert equal(lhs, rhs), f"basis1 cross-check failed for word {w}"
        entry = [
            {"m": m, "n": n, "d": d, "p": p, "coeff": laurent_dict(c)}
            for (m, n, d, p), c in sorted(nf2.items())
        ]
        frozen_words.append({"word": w, "nf": entry})
    print(f"froze and cross-checked {len(frozen_words)} words")

    prods = []
    monos = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
             (1, 1, 0, 0), (0, 1, 1, 0), (2, 0, 0, 1), (0, 2, 1, 1), (1, 0, 1, 0)]
    for _ in range(12):
        l = monos[rng.randrange(len(monos))]
        r = monos[rng.randrange(len(monos))]
        nf2 = act_basis2_mono(l, act_basis2_mono(r, V0))
        lhs = mul(
            basis2_mono_in_basis1(l, x, y, z, a, b),
            basis2_mono_in_basis1(r, x, y, z, a, b),
        )
        assert equal(lhs, elem2_in_basis1(nf2, x, y, z, a, b)), (l, r)
        prods.append({
            "left": list(l), "right": list(r),
            "nf": [
                {"m": m, "n": n, "d": d, "p": p, "coeff": laurent_dict(c)}
                for (m, n, d, p), c in sorted(nf2.items())
            ],
        })
    print(f"froze and cross-checked {len(prods)} monomial products")

    conv = []
    for q0 in (sp.Integer(2), sp.Rational(3, 2)):
        entries = []
        for mono in monos:
            e1 = basis2_mono_in_basis1(mono, x, y, z, a, b)
            ent = []
            for (m1, n, m2), c in sorted(e1.items()):
                v = sp.nsimplify(sp.cancel(c).subs(q, q0))
                v = sp.Rational(v)
                ent.append({"m1": m1, "n": n, "m2": m2, "coeff": [str(v.p), str(v.q)]})
            entries.append({"mono": list(mono), "basis1": ent})
        conv.append({"q": [str(sp.Rational(q0).p), str(sp.Rational(q0).q)], "entries": entries})

    data = {
        "coeff_format": "Laurent polynomial in q, {exponent: [num, den]}",
        "words": frozen_words,
        "products": prods,
        "to_basis1_at_q": conv,
    }
    out = Path(__file__).resolve().parents[2] / "tests" / "data" / "basis2_vectors.json"
    out.write_text(json.dumps(data, indent=1, sort_keys=True))
    print(f"wrote {out}")


if __name__ == "__main__":
    sys.setrecursionlimit(10000)
    main()
